//! Degree-by-degree construction of the relation bimodule `J/J²`, the
//! homotopy bimodule `π₂ = H/D`, and the maps between them, for a graded
//! algebra presentation.
//!
//! Everything lives in finite-dimensional homogeneous components. The free
//! algebra component `KX*_d` is indexed by word rank; `A_d = KX*_d / J_d` is
//! indexed by the canonical-order words that are not pivots of an echelon
//! basis of `J_d`, and products in `A` are re-reduced through that echelon.

mod basis;
mod checks;
mod tensor;

use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, subspace_quotient, Echelon, QMatrix, QVec, QuotientSpace, Q};
use crate::presentation::AlgebraPresentation;
use crate::words::{count_words, Word};

pub use basis::{TensorBasis, TensorLabel, TensorShape};
pub use checks::{
    mu_kernel_freeness_check, BergmanDicksReport, ConnectingReport, DegreeChecks, DegreeDims, DegreeReport,
    MuKernelReport, PgsReport,
};
pub use tensor::{bracket, FrElement, FrLabel};

/// A homogeneous element of `KX*` as `(word rank, coefficient)` pairs.
type RankPoly = Vec<(usize, Q)>;

struct Level {
    j: Echelon,
    jsq: Echelon,
    jcube: Echelon,
    /// `J²_d` untagged, then `J_d` tagged: tagged rows are a basis of `(J/J²)_d`.
    j_mod_jsq: Echelon,
    /// `J³_d` untagged, then `J²_d` tagged.
    jsq_mod_jcube: Echelon,
    /// Word ranks of the coset representatives of `A_d`.
    a_reps: Vec<usize>,
    /// Image of each word of length `d` in `A_d` coordinates.
    coset: Vec<QVec>,
    fr: TensorBasis,
    alpha: QMatrix,
    h: Vec<QVec>,
}

/// Spanning data for `D_d` and `(JH + HJ)_d`.
#[derive(Clone, Debug)]
pub struct DComponent {
    pub degree: usize,
    pub span: Vec<QVec>,
    pub echelon: Echelon,
    pub jh_hj: Echelon,
    /// `D_d ⊆ H_d`.
    pub inside_h: bool,
    /// `(JH + HJ)_d ⊆ D_d`.
    pub jh_hj_inside_d: bool,
}

impl DComponent {
    pub fn dim(&self) -> usize {
        self.echelon.rank()
    }
}

/// Summary of one homogeneous component.
#[derive(Clone, Debug)]
pub struct DegreeComponent {
    pub degree: usize,
    pub j_basis: Vec<QVec>,
    pub jsq_basis: Vec<QVec>,
    pub jcube_basis: Vec<QVec>,
    pub a_dim: usize,
    pub a_reps: Vec<Word>,
    pub fr_dim: usize,
    pub h_basis: Vec<QVec>,
    pub d_span: Vec<QVec>,
    pub d_dim: usize,
    pub pi2_dim: usize,
}

/// All homogeneous components of a graded presentation up to a degree bound.
pub struct GradedContext {
    pres: AlgebraPresentation,
    n: usize,
    rel_degrees: Vec<usize>,
    rel_terms: Vec<RankPoly>,
    max_degree: usize,
    levels: Vec<Level>,
}

impl GradedContext {
    pub fn new(pres: &AlgebraPresentation, max_degree: usize) -> Result<Self> {
        let rel_degrees = pres
            .degrees()
            .ok_or_else(|| Error::NotGraded("every relation must be homogeneous for the graded pipeline".into()))?;
        if rel_degrees.contains(&0) {
            return Err(Error::NotGraded("a relation of degree 0 makes the algebra trivial".into()));
        }
        let n = pres.alphabet().len();
        let rel_terms =
            pres.relations().iter().map(|r| r.terms().map(|(w, c)| (w.rank(n), c.clone())).collect()).collect();
        let mut ctx = Self {
            pres: pres.clone(),
            n,
            rel_degrees,
            rel_terms,
            max_degree,
            levels: Vec::with_capacity(max_degree + 1),
        };
        for d in 0..=max_degree {
            let level = ctx.build_level(d);
            ctx.levels.push(level);
        }
        Ok(ctx)
    }

    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.pres
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn relation_degrees(&self) -> &[usize] {
        &self.rel_degrees
    }

    fn pow(&self, k: usize) -> usize {
        count_words(self.n, k)
    }

    fn words_dim(&self, d: usize) -> usize {
        self.pow(d)
    }

    fn level(&self, d: usize) -> Result<&Level> {
        self.levels.get(d).ok_or_else(|| Error::Index(format!("degree {d} exceeds the bound {}", self.max_degree)))
    }

    /// `x · y` for homogeneous `x` of degree `_xd` and `y` of degree `yd`, by rank.
    fn concat_poly(&self, x: &[(usize, Q)], y: &[(usize, Q)], yd: usize) -> RankPoly {
        let shift = self.pow(yd);
        let mut out = Vec::with_capacity(x.len() * y.len());
        for (a, ca) in x {
            for (b, cb) in y {
                out.push((a * shift + b, ca * cb));
            }
        }
        out
    }

    fn word_poly(rank: usize) -> RankPoly {
        vec![(rank, num_traits::One::one())]
    }

    /// Spanning set `{ b · rᵢ · w }` of `J^m_d` with `b` running over a basis
    /// of `J^{m-1}` (all words when `m = 1`).
    fn power_span(&self, m: usize, d: usize) -> Vec<QVec> {
        let mut out = Vec::new();
        for (i, &e) in self.rel_degrees.iter().enumerate() {
            if e > d {
                continue;
            }
            for a in 0..=d - e {
                let rest = d - e - a;
                let lefts: Vec<RankPoly> = match m {
                    1 => (0..self.pow(a)).map(Self::word_poly).collect(),
                    2 => rows_as_polys(&self.levels[a].j),
                    _ => rows_as_polys(&self.levels[a].jsq),
                };
                for b in &lefts {
                    let br = self.concat_poly(b, &self.rel_terms[i], e);
                    for w in 0..self.pow(rest) {
                        let p = self.concat_poly(&br, &Self::word_poly(w), rest);
                        out.push(QVec::from_pairs(p));
                    }
                }
            }
        }
        out
    }

    fn build_level(&self, d: usize) -> Level {
        let dim = self.words_dim(d);
        let outer: Vec<usize> = (0..=d).map(|p| self.pow(p)).collect();
        let fr = TensorBasis::new(TensorShape::FreeRelation, d, &outer, &self.rel_degrees);

        let alpha_cols: Vec<QVec> = fr
            .labels()
            .map(|l| {
                let e = self.rel_degrees[l.middle];
                let ur = self.concat_poly(&Self::word_poly(l.left), &self.rel_terms[l.middle], e);
                QVec::from_pairs(self.concat_poly(&ur, &Self::word_poly(l.right), l.right_deg))
            })
            .collect();
        let alpha = QMatrix::from_columns(dim, alpha_cols).expect("α columns lie in KX*_d");
        let j = Echelon::from_vectors(dim, alpha.columns());
        let h = kernel_basis(&alpha);

        // Lower levels are complete, so J² and J³ spans can use their bases.
        let jsq_span = self.power_span(2, d);
        let jcube_span = self.power_span(3, d);
        let jsq = Echelon::from_vectors(dim, &jsq_span);
        let jcube = Echelon::from_vectors(dim, &jcube_span);

        let mut j_mod_jsq = Echelon::from_vectors(dim, &jsq.basis());
        for v in j.basis() {
            j_mod_jsq.insert_tagged(&v);
        }
        let mut jsq_mod_jcube = Echelon::from_vectors(dim, &jcube.basis());
        for v in jsq.basis() {
            jsq_mod_jcube.insert_tagged(&v);
        }

        let a_reps = j.free_columns();
        let mut pos = vec![usize::MAX; dim];
        for (k, &w) in a_reps.iter().enumerate() {
            pos[w] = k;
        }
        let coset = (0..dim)
            .map(|w| if pos[w] != usize::MAX { QVec::unit(pos[w]) } else { j.reduce(&QVec::unit(w)).remap(|c| pos[c]) })
            .collect();

        Level { j, jsq, jcube, j_mod_jsq, jsq_mod_jcube, a_reps, coset, fr, alpha, h }
    }

    /// Reduced basis of `(J^m)_d` for `m ∈ {1, 2, 3}`.
    pub fn ideal_power_component(&self, m: usize, d: usize) -> Result<Vec<QVec>> {
        let l = self.level(d)?;
        match m {
            1 => Ok(l.j.basis()),
            2 => Ok(l.jsq.basis()),
            3 => Ok(l.jcube.basis()),
            _ => Err(Error::Index(format!("ideal power {m} (only 1, 2, 3 are tracked)"))),
        }
    }

    /// `dim A_d` and the coset-representative words.
    pub fn algebra_component(&self, d: usize) -> Result<(usize, Vec<Word>)> {
        let l = self.level(d)?;
        let reps = l.a_reps.iter().map(|&r| Word::from_rank(r, d, self.n)).collect();
        Ok((l.a_reps.len(), reps))
    }

    pub fn a_dim(&self, d: usize) -> usize {
        self.levels[d].a_reps.len()
    }

    fn a_dims(&self, d: usize) -> Vec<usize> {
        (0..=d).map(|p| self.a_dim(p)).collect()
    }

    pub fn fr_basis(&self, d: usize) -> Result<&TensorBasis> {
        Ok(&self.level(d)?.fr)
    }

    pub fn alpha_matrix(&self, d: usize) -> Result<&QMatrix> {
        Ok(&self.level(d)?.alpha)
    }

    /// Basis of `H_d = ker α_d` in `(F_R)_d` coordinates.
    pub fn homotopy_kernel(&self, d: usize) -> Result<Vec<QVec>> {
        Ok(self.level(d)?.h.clone())
    }

    /// Coordinates of a word (by rank) in `A_p`.
    fn coset(&self, p: usize, rank: usize) -> &QVec {
        &self.levels[p].coset[rank]
    }

    fn rep_rank(&self, p: usize, k: usize) -> usize {
        self.levels[p].a_reps[k]
    }

    /// Expands a degree-free element of `KX* ⊗ KR ⊗ KX*` into `(F_R)_d`
    /// coordinates; terms of other degrees are an error.
    pub fn fr_vector(&self, d: usize, x: &FrElement) -> Result<QVec> {
        let fr = &self.level(d)?.fr;
        let mut pairs = Vec::with_capacity(x.len());
        for ((u, i, v), c) in x.terms() {
            if u.len() + self.rel_degrees[*i] + v.len() != d {
                return Err(Error::Index(format!("tensor term of wrong degree for degree {d}")));
            }
            pairs.push((fr.index(u.len(), *i, u.rank(self.n), v.rank(self.n)), c.clone()));
        }
        Ok(QVec::from_pairs(pairs))
    }

    /// The bracket `[rᵢ, u, rⱼ]` in its homogeneous component.
    pub fn bracket_vector(&self, i: usize, u: &Word, j: usize) -> Result<(usize, QVec)> {
        let b = bracket(&self.pres, i, u, j)?;
        let d = self.rel_degrees[i] + u.len() + self.rel_degrees[j];
        Ok((d, self.fr_vector(d, &b)?))
    }

    /// `p · x` for homogeneous `p ∈ KX*_a` (rank form) and `x ∈ (F_R)_b`.
    fn fr_left_mul(&self, a: usize, p: &[(usize, Q)], b: usize, x: &QVec) -> QVec {
        let (src, dst) = (&self.levels[b].fr, &self.levels[a + b].fr);
        let mut pairs = Vec::new();
        for (idx, c) in x.entries() {
            let l = src.label(*idx);
            let shift = self.pow(l.left_deg);
            for (w, cw) in p {
                pairs.push((dst.index(a + l.left_deg, l.middle, w * shift + l.left, l.right), c * cw));
            }
        }
        QVec::from_pairs(pairs)
    }

    /// `x · p` for `x ∈ (F_R)_b` and homogeneous `p ∈ KX*_a`.
    fn fr_right_mul(&self, b: usize, x: &QVec, a: usize, p: &[(usize, Q)]) -> QVec {
        let (src, dst) = (&self.levels[b].fr, &self.levels[a + b].fr);
        let shift = self.pow(a);
        let mut pairs = Vec::new();
        for (idx, c) in x.entries() {
            let l = src.label(*idx);
            for (w, cw) in p {
                pairs.push((dst.index(l.left_deg, l.middle, l.left, l.right * shift + w), c * cw));
            }
        }
        QVec::from_pairs(pairs)
    }

    /// Degree-`d` spanning vectors `v·[rᵢ,u,rⱼ]·w` of `D`, plus `(JH + HJ)_d`
    /// and both containment checks.
    pub fn d_component(&self, d: usize) -> Result<DComponent> {
        let level = self.level(d)?;
        let fr = &level.fr;
        let dim = fr.len();
        let k = self.rel_degrees.len();
        let mut span = Vec::new();
        for i in 0..k {
            for j in 0..k {
                let (ei, ej) = (self.rel_degrees[i], self.rel_degrees[j]);
                if ei + ej > d {
                    continue;
                }
                let rest = d - ei - ej;
                for lv in 0..=rest {
                    for lu in 0..=rest - lv {
                        let lw = rest - lv - lu;
                        for v in 0..self.pow(lv) {
                            for u in 0..self.pow(lu) {
                                for w in 0..self.pow(lw) {
                                    span.push(self.bracket_span_vector(fr, i, j, (lv, v), (lu, u), (lw, w)));
                                }
                            }
                        }
                    }
                }
            }
        }
        let echelon = Echelon::from_vectors(dim, &span);
        let h_echelon = Echelon::from_vectors(dim, &level.h);
        let inside_h = span.iter().all(|x| h_echelon.contains(x));

        let mut jh_hj = Echelon::new(dim);
        for (i, &e) in self.rel_degrees.iter().enumerate() {
            if e > d {
                continue;
            }
            for b in 0..=d - e {
                let a = d - e - b;
                for h in &self.levels[b].h {
                    for u in 0..self.pow(a) {
                        let ur = self.concat_poly(&Self::word_poly(u), &self.rel_terms[i], e);
                        jh_hj.insert(&self.fr_left_mul(a + e, &ur, b, h));
                        let ru = self.concat_poly(&self.rel_terms[i], &Self::word_poly(u), a);
                        jh_hj.insert(&self.fr_right_mul(b, h, a + e, &ru));
                    }
                }
            }
        }
        let jh_hj_inside_d = jh_hj.basis().iter().all(|x| echelon.contains(x));
        Ok(DComponent { degree: d, span, echelon, jh_hj, inside_h, jh_hj_inside_d })
    }

    /// `v · [rᵢ, u, rⱼ] · w`, words given as `(length, rank)`.
    fn bracket_span_vector(
        &self,
        fr: &TensorBasis,
        i: usize,
        j: usize,
        v: (usize, usize),
        u: (usize, usize),
        w: (usize, usize),
    ) -> QVec {
        let (ei, ej) = (self.rel_degrees[i], self.rel_degrees[j]);
        let mut pairs = Vec::new();
        // v ⊗ r̄ᵢ ⊗ u rⱼ w
        let urj = self.concat_poly(&Self::word_poly(u.1), &self.rel_terms[j], ej);
        for (t, c) in self.concat_poly(&urj, &Self::word_poly(w.1), w.0) {
            pairs.push((fr.index(v.0, i, v.1, t), c));
        }
        // − v rᵢ u ⊗ r̄ⱼ ⊗ w
        let vri = self.concat_poly(&Self::word_poly(v.1), &self.rel_terms[i], ei);
        for (t, c) in self.concat_poly(&vri, &Self::word_poly(u.1), u.0) {
            pairs.push((fr.index(v.0 + ei + u.0, j, t, w.1), -c));
        }
        QVec::from_pairs(pairs)
    }

    /// `π₂(P)_d = H_d / D_d`.
    pub fn pi2_component(&self, d: usize) -> Result<QuotientSpace> {
        let level = self.level(d)?;
        let dc = self.d_component(d)?;
        subspace_quotient(level.fr.len(), &level.h, &dc.span)
    }

    pub fn component(&self, d: usize) -> Result<DegreeComponent> {
        let level = self.level(d)?;
        let dc = self.d_component(d)?;
        let (a_dim, a_reps) = self.algebra_component(d)?;
        let pi2 = subspace_quotient(level.fr.len(), &level.h, &dc.span)?;
        Ok(DegreeComponent {
            degree: d,
            j_basis: level.j.basis(),
            jsq_basis: level.jsq.basis(),
            jcube_basis: level.jcube.basis(),
            a_dim,
            a_reps,
            fr_dim: level.fr.len(),
            h_basis: level.h.clone(),
            d_dim: dc.dim(),
            d_span: dc.span,
            pi2_dim: pi2.dim,
        })
    }

    /// `α` applied to an `(F_R)_d` vector, in `KX*_d` coordinates.
    pub fn apply_alpha(&self, d: usize, x: &QVec) -> Result<QVec> {
        Ok(self.level(d)?.alpha.mul_vec(x))
    }

    /// Image of a word (given by rank, of length `p`) times the basis vectors of `A`.
    fn a_product(&self, p: usize, a: usize, q: usize, b: usize) -> QVec {
        let w = self.rep_rank(p, a) * self.pow(q) + self.rep_rank(q, b);
        self.coset(p + q, w).clone()
    }
}

fn rows_as_polys(e: &Echelon) -> Vec<RankPoly> {
    e.basis().into_iter().map(|v| v.entries().to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, Presentation};

    pub(crate) fn ctx(src: &str, max: usize) -> GradedContext {
        let p = match parse_presentation(src).unwrap() {
            Presentation::Algebra(a) => a,
            Presentation::Monoid(m) => crate::presentation::monoid_to_algebra(&m),
        };
        GradedContext::new(&p, max).unwrap()
    }

    const COMM: &str = "kind: algebra\ngenerators: x y\nrelation: x y - y x";
    const SQUARE: &str = "kind: algebra\ngenerators: x\nrelation: x x";

    #[test]
    fn ideal_dimensions() {
        let c = ctx(COMM, 4);
        assert_eq!(c.ideal_power_component(1, 2).unwrap().len(), 1);
        // 8 monomials minus 4 commutative monomials of degree 3
        assert_eq!(c.ideal_power_component(1, 3).unwrap().len(), 4);
        let s = ctx(SQUARE, 5);
        assert_eq!(s.ideal_power_component(2, 4).unwrap().len(), 1);
        assert_eq!(s.ideal_power_component(2, 3).unwrap().len(), 0);
        assert!(s.ideal_power_component(4, 3).is_err());
    }

    #[test]
    fn algebra_dimensions() {
        let c = ctx(COMM, 8);
        for d in 0..=8 {
            assert_eq!(c.algebra_component(d).unwrap().0, d + 1);
        }
        let s = ctx(SQUARE, 3);
        assert_eq!(s.algebra_component(2).unwrap().0, 0);
        assert_eq!(s.algebra_component(0).unwrap(), (1, vec![Word::empty()]));
        assert!(s.algebra_component(4).is_err());
    }

    #[test]
    fn homotopy_kernel_of_square() {
        let s = ctx(SQUARE, 4);
        assert_eq!(s.homotopy_kernel(2).unwrap().len(), 0);
        let h3 = s.homotopy_kernel(3).unwrap();
        assert_eq!(h3.len(), 1);
        // spanned by x ⊗ r̄ ⊗ 1 − 1 ⊗ r̄ ⊗ x
        let fr = s.fr_basis(3).unwrap();
        let a = fr.index(0, 0, 0, 0);
        let b = fr.index(1, 0, 0, 0);
        assert_eq!(h3[0].get(a), -h3[0].get(b));
        assert_eq!(s.homotopy_kernel(4).unwrap().len(), 2);
    }

    #[test]
    fn d_dimensions_of_square() {
        let s = ctx(SQUARE, 5);
        assert_eq!(s.d_component(3).unwrap().dim(), 0);
        assert_eq!(s.d_component(4).unwrap().dim(), 1);
        let d5 = s.d_component(5).unwrap();
        assert_eq!(d5.dim(), 3);
        assert!(d5.inside_h && d5.jh_hj_inside_d);
        assert_eq!(s.homotopy_kernel(5).unwrap().len(), 3);
    }

    #[test]
    fn pi2_dimensions() {
        let s = ctx(SQUARE, 5);
        let dims: Vec<usize> = (0..=5).map(|d| s.pi2_component(d).unwrap().dim).collect();
        assert_eq!(dims, vec![0, 0, 0, 1, 1, 0]);
        let c = ctx(COMM, 6);
        for d in 0..=6 {
            assert_eq!(c.pi2_component(d).unwrap().dim, 0, "degree {d}");
        }
    }

    #[test]
    fn brackets_lie_in_h() {
        let c = ctx(COMM, 5);
        let x = Word::from_letters(vec![0]);
        let (d, v) = c.bracket_vector(0, &x, 0).unwrap();
        assert_eq!(d, 5);
        assert_eq!(v.nnz(), 4);
        assert!(c.apply_alpha(d, &v).unwrap().is_zero());
    }

    #[test]
    fn inhomogeneous_rejected() {
        let p = match parse_presentation("kind: algebra\ngenerators: x\nrelation: x x x - x x").unwrap() {
            Presentation::Algebra(a) => a,
            _ => unreachable!(),
        };
        assert!(matches!(GradedContext::new(&p, 3), Err(Error::NotGraded(_))));
    }
}
