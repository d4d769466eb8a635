//! Serializable report sections for each verification suite.

use serde::Serialize;

use crate::cayley::{
    build_cayley, cayley_homology_check, enumerate_finite_monoid, CayleyReport, Enumeration, FiniteMonoid, Side,
};
use crate::error::Result;
use crate::graded::{mu_kernel_freeness_check, DegreeReport, GradedContext, MuKernelReport};
use crate::presentation::{AlgebraPresentation, Homogeneity, MonoidPresentation, Presentation};
use crate::squier::{edge_embedding_check, exact_slice_summary, truncated_sequence, EmbeddingReport, SliceSummary};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    NotCertified,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationInfo {
    pub kind: &'static str,
    pub generators: Vec<String>,
    pub relations: Vec<String>,
    pub homogeneity: &'static str,
    pub degrees: Option<Vec<usize>>,
}

impl PresentationInfo {
    pub fn new(p: &Presentation) -> Self {
        let relations = match p {
            Presentation::Algebra(a) => a.relations().iter().map(|r| r.to_text(a.alphabet())).collect(),
            Presentation::Monoid(m) => m
                .relations()
                .iter()
                .map(|(l, r)| format!("{} = {}", m.alphabet().format_word(l), m.alphabet().format_word(r)))
                .collect(),
        };
        let h = p.homogeneity();
        Self {
            kind: p.kind(),
            generators: p.alphabet().names().to_vec(),
            relations,
            homogeneity: h.label(),
            degrees: match h {
                Homogeneity::Graded(d) => Some(d),
                _ => None,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedSection {
    /// Relations of the algebra presentation actually checked.
    pub algebra_relations: Vec<String>,
    pub max_degree: usize,
    pub degrees: Vec<DegreeReport>,
    pub mu_kernel: Vec<MuKernelReport>,
    pub status: Status,
    pub first_failure: Option<String>,
}

pub fn graded_section(p: &AlgebraPresentation, max_degree: usize) -> Result<GradedSection> {
    let ctx = GradedContext::new(p, max_degree)?;
    let degrees = ctx.reports()?;
    let mu_kernel: Vec<MuKernelReport> =
        (0..=max_degree).map(|d| mu_kernel_freeness_check(p.alphabet().len(), d)).collect();
    let first_failure = degrees
        .iter()
        .find(|r| !r.passed())
        .map(|r| {
            let c = &r.checks;
            let failed: Vec<&str> = [
                ("bd_exact", c.bd_exact),
                ("pgs_exact", c.pgs_exact),
                ("connecting", c.connecting),
                ("containment", c.containment),
                ("five_term", c.five_term),
            ]
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| *name)
            .collect();
            let d = &r.dims;
            format!(
                "degree {}: {} failed (J={}, A={}, H={}, D={}, pi2={}, kerBeta={})",
                r.degree,
                failed.join(", "),
                d.j,
                d.a,
                d.h,
                d.d,
                d.pi2,
                d.ker_beta
            )
        })
        .or_else(|| {
            mu_kernel.iter().find(|m| !m.pass).map(|m| {
                format!(
                    "free kernel degree {}: rank phi {} vs ker mu {} (source {})",
                    m.degree, m.rank_phi, m.ker_mu_dim, m.source_dim
                )
            })
        });
    Ok(GradedSection {
        algebra_relations: p.relations().iter().map(|r| r.to_text(p.alphabet())).collect(),
        max_degree,
        status: if first_failure.is_some() { Status::Fail } else { Status::Pass },
        degrees,
        mu_kernel,
        first_failure,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheckRow {
    pub length: usize,
    pub betti: usize,
    pub pi2: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquierSection {
    pub max_length: usize,
    /// `certified` for exact length slices, `truncated, not certified` otherwise.
    pub certification: &'static str,
    pub slices: Vec<SliceSummary>,
    pub cross_check: Vec<CrossCheckRow>,
    pub embedding: EmbeddingReport,
    pub status: Status,
    pub first_failure: Option<String>,
}

/// Length slices of the Squier complex; exact and cross-checked against the
/// bimodule `π₂` (up to `max_degree`) when `p` is length-homogeneous.
pub fn squier_section(p: &MonoidPresentation, max_length: usize, max_degree: usize) -> Result<SquierSection> {
    let embedding = edge_embedding_check(p, max_length)?;
    let mut first_failure = None;
    if !embedding.pass {
        first_failure = Some(format!(
            "edge embedding at L={}: {} of {} cells mismatch",
            max_length, embedding.mismatches, embedding.cells
        ));
    }
    if !p.is_length_homogeneous() {
        let slices = truncated_sequence(p, max_length)?;
        let status = if first_failure.is_some() { Status::Fail } else { Status::NotCertified };
        return Ok(SquierSection {
            max_length,
            certification: "truncated, not certified",
            slices,
            cross_check: Vec::new(),
            embedding,
            status,
            first_failure,
        });
    }

    let slices: Vec<SliceSummary> = (0..=max_length).map(|n| exact_slice_summary(p, n)).collect::<Result<_>>()?;
    if first_failure.is_none() {
        first_failure = slices
            .iter()
            .find(|s| !s.torsion.is_empty())
            .map(|s| format!("length {}: torsion {:?} in H1", s.length, s.torsion));
    }
    let bound = max_length.min(max_degree);
    let alg = crate::presentation::monoid_to_algebra(p);
    let ctx = GradedContext::new(&alg, bound)?;
    let mut cross_check = Vec::with_capacity(bound + 1);
    for s in slices.iter().take(bound + 1) {
        let pi2 = ctx.pi2_component(s.length)?.dim;
        cross_check.push(CrossCheckRow { length: s.length, betti: s.betti, pi2, agree: pi2 == s.betti });
    }
    if first_failure.is_none() {
        first_failure = cross_check
            .iter()
            .find(|r| !r.agree)
            .map(|r| format!("length {}: H1 betti {} but pi2 dimension {}", r.length, r.betti, r.pi2));
    }
    Ok(SquierSection {
        max_length,
        certification: "certified",
        slices,
        cross_check,
        embedding,
        status: if first_failure.is_some() { Status::Fail } else { Status::Pass },
        first_failure,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CayleySection {
    /// `enumeration` or `table`.
    pub source: &'static str,
    pub max_length: usize,
    pub stabilized: bool,
    pub message: Option<String>,
    pub size: Option<usize>,
    pub elements: Vec<String>,
    pub left: Option<CayleyReport>,
    pub two_sided: Option<CayleyReport>,
    pub status: Status,
    pub first_failure: Option<String>,
}

pub fn cayley_section(p: &MonoidPresentation, max_length: usize, table: Option<FiniteMonoid>) -> Result<CayleySection> {
    let source = if table.is_some() { "table" } else { "enumeration" };
    let m = match table {
        Some(m) => m,
        None => match enumerate_finite_monoid(p, max_length) {
            Enumeration::Stabilized(m) => m,
            Enumeration::NotStabilized { max_len, reason } => {
                return Ok(CayleySection {
                    source,
                    max_length,
                    stabilized: false,
                    message: Some(format!("not stabilized at L={max_len}: {reason}")),
                    size: None,
                    elements: Vec::new(),
                    left: None,
                    two_sided: None,
                    status: Status::NotCertified,
                    first_failure: None,
                })
            }
        },
    };
    let left = cayley_homology_check(&m, &build_cayley(&m, p, Side::Left)?)?;
    let two = cayley_homology_check(&m, &build_cayley(&m, p, Side::TwoSided)?)?;
    let first_failure = [("left", &left), ("two-sided", &two)].iter().find(|(_, r)| !r.pass).map(|(side, r)| {
        format!(
            "{side} Cayley complex: H0 rank {}, H1 betti {}, torsion {:?}, components match {}",
            r.h0_rank, r.h1.betti, r.h1.torsion, r.components_match
        )
    });
    Ok(CayleySection {
        source,
        max_length,
        stabilized: true,
        message: None,
        size: Some(m.size()),
        elements: m.elements.iter().map(|w| p.alphabet().format_word(w)).collect(),
        left: Some(left),
        two_sided: Some(two),
        status: if first_failure.is_some() { Status::Fail } else { Status::Pass },
        first_failure,
    })
}
