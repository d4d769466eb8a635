//! Per-degree exactness checks on top of [`GradedContext`].

use num_traits::One;
use serde::Serialize;

use super::{GradedContext, TensorBasis, TensorShape};
use crate::error::Result;
use crate::linalg::{kernel_basis, rank, Echelon, QMatrix, QVec, Q};
use crate::words::count_words;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuKernelReport {
    pub alphabet_size: usize,
    pub degree: usize,
    /// `dim (KX* ⊗ KX ⊗ KX*)_d`
    pub source_dim: usize,
    /// `dim (KX* ⊗ KX*)_d`
    pub pair_dim: usize,
    pub rank_mu: usize,
    pub rank_phi: usize,
    pub ker_mu_dim: usize,
    pub composite_zero: bool,
    pub pass: bool,
}

/// Checks that `u⊗x⊗v ↦ ux⊗v − u⊗xv` is injective in degree `d` with image
/// exactly `ker μ_d`, for the free algebra on `n` letters.
pub fn mu_kernel_freeness_check(n: usize, d: usize) -> MuKernelReport {
    let outer: Vec<usize> = (0..=d).map(|p| count_words(n, p)).collect();
    let src = TensorBasis::new(TensorShape::FreeGenerator, d, &outer, &vec![1; n]);
    let pair = TensorBasis::new(TensorShape::FreePair, d, &outer, &[0]);
    let one = Q::one();

    let mu_cols: Vec<QVec> = pair.labels().map(|l| QVec::unit(l.left * outer[l.right_deg] + l.right)).collect();
    let mu = QMatrix::from_columns(outer[d], mu_cols).expect("μ columns in range");
    let phi_cols: Vec<QVec> = src
        .labels()
        .map(|l| {
            let x = l.middle;
            let ux = l.left * n + x;
            let xv = x * outer[l.right_deg] + l.right;
            QVec::from_pairs([
                (pair.index(l.left_deg + 1, 0, ux, l.right), one.clone()),
                (pair.index(l.left_deg, 0, l.left, xv), -one.clone()),
            ])
        })
        .collect();
    let phi = QMatrix::from_columns(pair.len(), phi_cols).expect("φ columns in range");

    let rank_mu = rank(&mu);
    let rank_phi = rank(&phi);
    let composite_zero = mu.mul(&phi).map(|m| m.is_zero()).unwrap_or(false);
    let ker_mu_dim = pair.len() - rank_mu;
    MuKernelReport {
        alphabet_size: n,
        degree: d,
        source_dim: src.len(),
        pair_dim: pair.len(),
        rank_mu,
        rank_phi,
        ker_mu_dim,
        composite_zero,
        pass: composite_zero && rank_phi == src.len() && rank_phi == ker_mu_dim,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BergmanDicksReport {
    pub degree: usize,
    /// `dim (J/J²)_d`
    pub relation_module_dim: usize,
    /// `dim (A ⊗ KX ⊗ A)_d`
    pub axa_dim: usize,
    /// `dim (A ⊗ A)_d`
    pub aa_dim: usize,
    pub a_dim: usize,
    pub rank_d2: usize,
    pub rank_d1: usize,
    pub rank_mu: usize,
    /// The derivation kills `(J²)_d`, so `d₂` is defined on `J/J²`.
    pub well_defined: bool,
    pub composites_zero: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PgsReport {
    pub degree: usize,
    /// `dim (A ⊗ KR ⊗ A)_d`
    pub ara_dim: usize,
    pub relation_module_dim: usize,
    pub rank_beta: usize,
    pub ker_beta_dim: usize,
    pub pi2_dim: usize,
    /// `rank` of `H_d → (A ⊗ KR ⊗ A)_d`.
    pub rank_rho_h: usize,
    pub rho_kills_d: bool,
    pub beta_rho_zero: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectingReport {
    pub degree: usize,
    pub symbols: usize,
    pub images_in_h: bool,
    /// `dim span(∂ images ∪ (JH+HJ)_d)`
    pub image_dim: usize,
    pub d_dim: usize,
    pub jh_hj_dim: usize,
    pub spans_d: bool,
    /// Combinations of symbols lying in `J³` are sent into `JH + HJ`.
    pub well_defined: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeDims {
    #[serde(rename = "J")]
    pub j: usize,
    #[serde(rename = "Jsq")]
    pub jsq: usize,
    #[serde(rename = "Jcube")]
    pub jcube: usize,
    #[serde(rename = "A")]
    pub a: usize,
    #[serde(rename = "FR")]
    pub fr: usize,
    #[serde(rename = "H")]
    pub h: usize,
    #[serde(rename = "D")]
    pub d: usize,
    pub pi2: usize,
    #[serde(rename = "kerBeta")]
    pub ker_beta: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeChecks {
    pub bd_exact: bool,
    pub pgs_exact: bool,
    pub connecting: bool,
    pub containment: bool,
    pub five_term: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub dims: DegreeDims,
    pub checks: DegreeChecks,
    pub verdict: &'static str,
}

impl DegreeReport {
    pub fn passed(&self) -> bool {
        let c = &self.checks;
        c.bd_exact && c.pgs_exact && c.connecting && c.containment && c.five_term
    }
}

fn matrix(rows: usize, cols: Vec<QVec>) -> QMatrix {
    QMatrix::from_columns(rows, cols).expect("columns in range")
}

impl GradedContext {
    fn algebra_basis(&self, shape: TensorShape, d: usize) -> TensorBasis {
        let middle: Vec<usize> = match shape {
            TensorShape::AlgebraPair => vec![0],
            TensorShape::AlgebraGenerator => vec![1; self.n],
            TensorShape::AlgebraRelation => self.rel_degrees.clone(),
            _ => unreachable!("free shapes are built elsewhere"),
        };
        TensorBasis::new(shape, d, &self.a_dims(d), &middle)
    }

    /// `π(left) ⊗ m ⊗ π(right)` for words given by rank, accumulated into `out`.
    fn push_outer(
        &self,
        out: &mut Vec<(usize, Q)>,
        basis: &TensorBasis,
        (p, left): (usize, usize),
        middle: usize,
        (q, right): (usize, usize),
        c: &Q,
    ) {
        let l = self.coset(p, left);
        let r = self.coset(q, right);
        for (k, a) in l.entries() {
            for (m, b) in r.entries() {
                out.push((basis.index(p, middle, *k, *m), c * a * b));
            }
        }
    }

    /// The derivation `x₁…x_m ↦ Σ π(x₁…x_{i−1}) ⊗ xᵢ ⊗ π(x_{i+1}…x_m)` on a
    /// degree-`d` vector of `KX*_d`.
    fn derivation(&self, axa: &TensorBasis, d: usize, v: &QVec) -> QVec {
        let mut out = Vec::new();
        for (w, c) in v.entries() {
            for i in 0..d {
                let tail = self.pow(d - i - 1);
                let prefix = w / (tail * self.n);
                let letter = (w / tail) % self.n;
                let suffix = w % tail;
                self.push_outer(&mut out, axa, (i, prefix), letter, (d - i - 1, suffix), c);
            }
        }
        QVec::from_pairs(out)
    }

    pub fn relation_module_dim(&self, d: usize) -> Result<usize> {
        Ok(self.level(d)?.j_mod_jsq.tagged_count())
    }

    pub fn bergman_dicks_check(&self, d: usize) -> Result<BergmanDicksReport> {
        let level = self.level(d)?;
        let aa = self.algebra_basis(TensorShape::AlgebraPair, d);
        let axa = self.algebra_basis(TensorShape::AlgebraGenerator, d);
        let a_dim = self.a_dim(d);

        let mu_cols = aa.labels().map(|l| self.a_product(l.left_deg, l.left, l.right_deg, l.right)).collect();
        let mu = matrix(a_dim, mu_cols);

        let d1_cols = axa
            .labels()
            .map(|l| {
                let (p, q, x) = (l.left_deg, l.right_deg, l.middle);
                let mut out = Vec::new();
                let ax = self.rep_rank(p, l.left) * self.n + x;
                for (k, c) in self.coset(p + 1, ax).entries() {
                    out.push((aa.index(p + 1, 0, *k, l.right), c.clone()));
                }
                let xb = x * self.pow(q) + self.rep_rank(q, l.right);
                for (k, c) in self.coset(q + 1, xb).entries() {
                    out.push((aa.index(p, 0, l.left, *k), -c.clone()));
                }
                QVec::from_pairs(out)
            })
            .collect();
        let d1 = matrix(aa.len(), d1_cols);

        let d2_cols: Vec<QVec> = level.j_mod_jsq.tagged_basis().iter().map(|v| self.derivation(&axa, d, v)).collect();
        let jj = d2_cols.len();
        let d2 = matrix(axa.len(), d2_cols);
        let well_defined = level.jsq.basis().iter().all(|v| self.derivation(&axa, d, v).is_zero());

        let composites_zero = mu.mul(&d1)?.is_zero() && d1.mul(&d2)?.is_zero();
        let (rank_mu, rank_d1, rank_d2) = (rank(&mu), rank(&d1), rank(&d2));
        let pass = well_defined
            && composites_zero
            && rank_mu == a_dim
            && rank_d1 == aa.len() - rank_mu
            && rank_d2 == axa.len() - rank_d1
            && rank_d2 == jj;
        Ok(BergmanDicksReport {
            degree: d,
            relation_module_dim: jj,
            axa_dim: axa.len(),
            aa_dim: aa.len(),
            a_dim,
            rank_d2,
            rank_d1,
            rank_mu,
            well_defined,
            composites_zero,
            pass,
        })
    }

    /// `ρ: (F_R)_d → (A ⊗ KR ⊗ A)_d`, `u ⊗ r̄ᵢ ⊗ v ↦ π(u) ⊗ r̄ᵢ ⊗ π(v)`.
    fn rho(&self, ara: &TensorBasis, d: usize, x: &QVec) -> QVec {
        let fr = &self.levels[d].fr;
        let mut out = Vec::new();
        for (idx, c) in x.entries() {
            let l = fr.label(*idx);
            self.push_outer(&mut out, ara, (l.left_deg, l.left), l.middle, (l.right_deg, l.right), c);
        }
        QVec::from_pairs(out)
    }

    pub fn pgs_check(&self, d: usize) -> Result<PgsReport> {
        let level = self.level(d)?;
        let ara = self.algebra_basis(TensorShape::AlgebraRelation, d);
        let jj = level.j_mod_jsq.tagged_count();

        let beta_cols = ara
            .labels()
            .map(|l| {
                let e = self.rel_degrees[l.middle];
                let a = Self::word_poly(self.rep_rank(l.left_deg, l.left));
                let b = Self::word_poly(self.rep_rank(l.right_deg, l.right));
                let ar = self.concat_poly(&a, &self.rel_terms[l.middle], e);
                let arb = QVec::from_pairs(self.concat_poly(&ar, &b, l.right_deg));
                level.j_mod_jsq.tagged_coords(&arb)
            })
            .collect();
        let beta = matrix(jj, beta_cols);
        let rank_beta = rank(&beta);
        let ker_beta_dim = ara.len() - rank_beta;

        let dc = self.d_component(d)?;
        let pi2_dim = level.h.len() - dc.dim();
        let rho_h: Vec<QVec> = level.h.iter().map(|h| self.rho(&ara, d, h)).collect();
        let rho_kills_d = dc.span.iter().all(|x| self.rho(&ara, d, x).is_zero());
        let beta_rho_zero = rho_h.iter().all(|v| beta.mul_vec(v).is_zero());
        let rank_rho_h = Echelon::from_vectors(ara.len(), &rho_h).rank();

        let pass = rank_beta == jj
            && ker_beta_dim == pi2_dim
            && rho_kills_d
            && beta_rho_zero
            && rank_rho_h == ker_beta_dim
            && level.h.len() - rank_rho_h == dc.dim();
        Ok(PgsReport {
            degree: d,
            ara_dim: ara.len(),
            relation_module_dim: jj,
            rank_beta,
            ker_beta_dim,
            pi2_dim,
            rank_rho_h,
            rho_kills_d,
            beta_rho_zero,
            pass,
        })
    }

    pub fn connecting_map_check(&self, d: usize) -> Result<ConnectingReport> {
        let level = self.level(d)?;
        let dc = self.d_component(d)?;
        let fr_dim = level.fr.len();
        let h_echelon = Echelon::from_vectors(fr_dim, &level.h);
        let k = self.rel_degrees.len();

        // Symbols w·rᵢ·u·rⱼ·v; their products span (J²)_d.
        let mut products = Vec::new();
        let mut images = Vec::new();
        for i in 0..k {
            for j in 0..k {
                let (ei, ej) = (self.rel_degrees[i], self.rel_degrees[j]);
                if ei + ej > d {
                    continue;
                }
                let rest = d - ei - ej;
                for lw in 0..=rest {
                    for lu in 0..=rest - lw {
                        let lv = rest - lw - lu;
                        for w in 0..self.pow(lw) {
                            for u in 0..self.pow(lu) {
                                for v in 0..self.pow(lv) {
                                    let wri = self.concat_poly(&Self::word_poly(w), &self.rel_terms[i], ei);
                                    let wriu = self.concat_poly(&wri, &Self::word_poly(u), lu);
                                    let wriurj = self.concat_poly(&wriu, &self.rel_terms[j], ej);
                                    let prod = self.concat_poly(&wriurj, &Self::word_poly(v), lv);
                                    products.push(QVec::from_pairs(prod));
                                    images.push(self.bracket_span_vector(&level.fr, i, j, (lw, w), (lu, u), (lv, v)));
                                }
                            }
                        }
                    }
                }
            }
        }

        let images_in_h = images.iter().all(|x| h_echelon.contains(x));
        let mut combined = dc.jh_hj.clone();
        for x in &images {
            combined.insert(x);
        }
        let spans_d = combined.rank() == dc.dim() && combined.basis().iter().all(|x| dc.echelon.contains(x));

        let jsq_dim = level.jsq_mod_jcube.tagged_count();
        let coords: Vec<QVec> = products.iter().map(|p| level.jsq_mod_jcube.tagged_coords(p)).collect();
        let well_defined = kernel_basis(&matrix(jsq_dim, coords)).iter().all(|combo| {
            let mut acc = QVec::zero();
            for (s, c) in combo.entries() {
                acc = acc.add_scaled(c, &images[*s]);
            }
            dc.jh_hj.contains(&acc)
        });

        Ok(ConnectingReport {
            degree: d,
            symbols: images.len(),
            images_in_h,
            image_dim: combined.rank(),
            d_dim: dc.dim(),
            jh_hj_dim: dc.jh_hj.rank(),
            spans_d,
            well_defined,
            pass: images_in_h && spans_d && well_defined,
        })
    }

    /// `rᵢ·h − 1⊗r̄ᵢ⊗α(h) ∈ D` for every basis vector `h` of `H` and every
    /// relation fitting in degree `d`.
    pub fn reduction_identity_holds(&self, d: usize) -> Result<bool> {
        let dc = self.d_component(d)?;
        let fr = &self.level(d)?.fr;
        for (i, &e) in self.rel_degrees.iter().enumerate() {
            if e > d {
                continue;
            }
            let b = d - e;
            for h in &self.levels[b].h {
                let left = self.fr_left_mul(e, &self.rel_terms[i], b, h);
                let alpha = self.levels[b].alpha.mul_vec(h);
                let correction =
                    QVec::from_pairs(alpha.entries().iter().map(|(w, c)| (fr.index(0, i, 0, *w), c.clone())));
                if !dc.echelon.contains(&left.sub(&correction)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `dim π₂ − dim(A⊗KR⊗A) + dim(A⊗KX⊗A) − dim(A⊗A) + dim A` in degree `d`.
    pub fn five_term_defect(&self, d: usize) -> Result<i64> {
        let _ = self.level(d)?;
        let pi2 = self.pi2_component(d)?.dim as i64;
        let ara = self.algebra_basis(TensorShape::AlgebraRelation, d).len() as i64;
        let axa = self.algebra_basis(TensorShape::AlgebraGenerator, d).len() as i64;
        let aa = self.algebra_basis(TensorShape::AlgebraPair, d).len() as i64;
        Ok(pi2 - ara + axa - aa + self.a_dim(d) as i64)
    }

    pub fn degree_report(&self, d: usize) -> Result<DegreeReport> {
        let level = self.level(d)?;
        let dc = self.d_component(d)?;
        let bd = self.bergman_dicks_check(d)?;
        let pgs = self.pgs_check(d)?;
        let conn = self.connecting_map_check(d)?;
        let five = self.five_term_defect(d)? == 0;
        let dims = DegreeDims {
            j: level.j.rank(),
            jsq: level.jsq.rank(),
            jcube: level.jcube.rank(),
            a: self.a_dim(d),
            fr: level.fr.len(),
            h: level.h.len(),
            d: dc.dim(),
            pi2: pgs.pi2_dim,
            ker_beta: pgs.ker_beta_dim,
        };
        let nested = level.jcube.basis().iter().all(|v| level.jsq.contains(v))
            && level.jsq.basis().iter().all(|v| level.j.contains(v));
        let checks = DegreeChecks {
            bd_exact: bd.pass,
            pgs_exact: pgs.pass,
            connecting: conn.pass,
            containment: dc.inside_h && dc.jh_hj_inside_d && nested,
            five_term: five,
        };
        let mut report = DegreeReport { degree: d, dims, checks, verdict: "pass" };
        if !report.passed() {
            report.verdict = "fail";
        }
        Ok(report)
    }

    pub fn reports(&self) -> Result<Vec<DegreeReport>> {
        (0..=self.max_degree).map(|d| self.degree_report(d)).collect()
    }
}
