//! Dense brute-force oracles. Nothing here shares code with the sparse
//! pipeline beyond parsing and word/polynomial types.

#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::Rng;
use relbimod::linalg::ZMatrix;
use relbimod::presentation::{parse_presentation, AlgebraPresentation, MonoidPresentation, Presentation};
use relbimod::{NcPoly, Word};

pub type Q = BigRational;
pub type Z = BigInt;

pub fn algebra(src: &str) -> AlgebraPresentation {
    match parse_presentation(src).unwrap() {
        Presentation::Algebra(a) => a,
        Presentation::Monoid(m) => relbimod::presentation::monoid_to_algebra(&m),
    }
}

pub fn monoid(src: &str) -> MonoidPresentation {
    match parse_presentation(src).unwrap() {
        Presentation::Monoid(m) => m,
        _ => panic!("expected a monoid presentation"),
    }
}

/// Rank of a list of dense rows by plain Gauss–Jordan over Q.
pub fn dense_rank(rows: &[Vec<Q>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

fn all_words(n: usize, d: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..n as u32).map(move |x| {
                    let mut v = w.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

fn words_upto(n: usize, d: usize) -> Vec<Vec<u32>> {
    (0..=d).flat_map(|k| all_words(n, k)).collect()
}

fn poly_terms(p: &NcPoly) -> Vec<(Vec<u32>, Q)> {
    p.terms().map(|(w, c)| (w.letters().to_vec(), c.clone())).collect()
}

fn mul(a: &[(Vec<u32>, Q)], b: &[(Vec<u32>, Q)]) -> Vec<(Vec<u32>, Q)> {
    let mut out = Vec::new();
    for (u, x) in a {
        for (v, y) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            out.push((w, x * y));
        }
    }
    out
}

fn word_poly(w: &[u32]) -> Vec<(Vec<u32>, Q)> {
    vec![(w.to_vec(), Q::one())]
}

/// Dense coordinates over an explicit label list.
struct Indexer<L: std::hash::Hash + Eq + Clone> {
    pos: HashMap<L, usize>,
    len: usize,
}

impl<L: std::hash::Hash + Eq + Clone> Indexer<L> {
    fn new(labels: Vec<L>) -> Self {
        let len = labels.len();
        Self { pos: labels.into_iter().enumerate().map(|(i, l)| (l, i)).collect(), len }
    }

    fn dense(&self, terms: &[(L, Q)]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.len];
        for (l, c) in terms {
            v[self.pos[l]] += c;
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleDims {
    pub j: usize,
    pub jsq: usize,
    pub jcube: usize,
    pub a: usize,
    pub fr: usize,
    pub h: usize,
    pub d: usize,
    pub pi2: usize,
    pub ker_beta: usize,
    pub relation_module: usize,
    /// `dim (A ⊗ KR ⊗ A)_d` from the dense `A` dimensions.
    pub ara: usize,
}

/// Every dimension of the degree-`deg` component, from full monomial spans.
pub fn oracle_dims(p: &AlgebraPresentation, deg: usize) -> OracleDims {
    let n = p.alphabet().len();
    let rels: Vec<Vec<(Vec<u32>, Q)>> = p.relations().iter().map(poly_terms).collect();
    let rdeg: Vec<usize> = rels.iter().map(|r| r[0].0.len()).collect();
    let monos = Indexer::new(all_words(n, deg));

    // J^m_d from all products u₀ r u₁ r … r u_m
    let power = |m: usize| -> usize {
        let mut partial: Vec<Vec<(Vec<u32>, Q)>> = words_upto(n, deg).iter().map(|w| word_poly(w)).collect();
        for _ in 0..m {
            let mut next = Vec::new();
            for a in &partial {
                let la = a[0].0.len();
                for (i, r) in rels.iter().enumerate() {
                    if la + rdeg[i] > deg {
                        continue;
                    }
                    let ar = mul(a, r);
                    for w in words_upto(n, deg - la - rdeg[i]) {
                        next.push(mul(&ar, &word_poly(&w)));
                    }
                }
            }
            partial = next;
        }
        let rows: Vec<Vec<Q>> = partial.iter().filter(|p| p[0].0.len() == deg).map(|p| monos.dense(p)).collect();
        dense_rank(&rows)
    };
    let (j, jsq, jcube) = (power(1), power(2), power(3));

    // F_R labels (u, i, v)
    let mut fr_labels = Vec::new();
    for (i, &e) in rdeg.iter().enumerate() {
        if e > deg {
            continue;
        }
        for a in 0..=deg - e {
            for u in all_words(n, a) {
                for v in all_words(n, deg - e - a) {
                    fr_labels.push((u.clone(), i, v));
                }
            }
        }
    }
    let fr = Indexer::new(fr_labels.clone());
    let alpha_rows: Vec<Vec<Q>> =
        fr_labels.iter().map(|(u, i, v)| monos.dense(&mul(&mul(&word_poly(u), &rels[*i]), &word_poly(v)))).collect();
    let h = fr_labels.len() - dense_rank(&alpha_rows);

    // D from v·[rᵢ,u,rⱼ]·w
    let mut d_rows = Vec::new();
    for (i, &ei) in rdeg.iter().enumerate() {
        for (jj, &ej) in rdeg.iter().enumerate() {
            if ei + ej > deg {
                continue;
            }
            let rest = deg - ei - ej;
            for a in 0..=rest {
                for b in 0..=rest - a {
                    for v in all_words(n, a) {
                        for u in all_words(n, b) {
                            for w in all_words(n, rest - a - b) {
                                let mut terms = Vec::new();
                                for (t, c) in mul(&mul(&word_poly(&u), &rels[jj]), &word_poly(&w)) {
                                    terms.push(((v.clone(), i, t), c));
                                }
                                for (t, c) in mul(&mul(&word_poly(&v), &rels[i]), &word_poly(&u)) {
                                    terms.push(((t, jj, w.clone()), -c));
                                }
                                d_rows.push(fr.dense(&terms));
                            }
                        }
                    }
                }
            }
        }
    }
    let d = dense_rank(&d_rows);
    // every spanning vector of D must lie in H
    for row in &d_rows {
        let img: Vec<(Vec<u32>, Q)> = fr_labels
            .iter()
            .zip(row)
            .filter(|(_, c)| !c.is_zero())
            .flat_map(|((u, i, v), c)| {
                mul(&mul(&word_poly(u), &rels[*i]), &word_poly(v)).into_iter().map(move |(w, x)| (w, x * c))
            })
            .collect();
        assert!(monos.dense(&img).iter().all(Zero::is_zero), "oracle: bracket outside H");
    }

    // (J F_R + F_R J)_d
    let mut jf_rows = Vec::new();
    for (i, &e) in rdeg.iter().enumerate() {
        if e > deg {
            continue;
        }
        for (k, &f) in rdeg.iter().enumerate() {
            if e + f > deg {
                continue;
            }
            let rest = deg - e - f;
            for a in 0..=rest {
                for b in 0..=rest - a {
                    for x in all_words(n, a) {
                        for y in all_words(n, b) {
                            for z in all_words(n, rest - a - b) {
                                // (x r_k y) ⊗ r̄ᵢ ⊗ z and z ⊗ r̄ᵢ ⊗ (x r_k y)
                                let xry = mul(&mul(&word_poly(&x), &rels[k]), &word_poly(&y));
                                let left: Vec<_> =
                                    xry.iter().map(|(t, c)| ((t.clone(), i, z.clone()), c.clone())).collect();
                                let right: Vec<_> =
                                    xry.iter().map(|(t, c)| ((z.clone(), i, t.clone()), c.clone())).collect();
                                jf_rows.push(fr.dense(&left));
                                jf_rows.push(fr.dense(&right));
                            }
                        }
                    }
                }
            }
        }
    }
    let jf = dense_rank(&jf_rows);
    let relation_module = j - jsq;
    let ker_beta = fr_labels.len() - relation_module - jf;

    let adims: Vec<usize> = (0..=deg).map(|k| oracle_dims_a(p, k)).collect();
    let mut ara = 0;
    for &e in &rdeg {
        if e <= deg {
            for a in 0..=deg - e {
                ara += adims[a] * adims[deg - e - a];
            }
        }
    }
    OracleDims {
        j,
        jsq,
        jcube,
        a: n.pow(deg as u32) - j,
        fr: fr_labels.len(),
        h,
        d,
        pi2: h - d,
        ker_beta,
        relation_module,
        ara,
    }
}

/// `dim A_k` from the dense span of `u r v`.
pub fn oracle_dims_a(p: &AlgebraPresentation, k: usize) -> usize {
    let n = p.alphabet().len();
    let monos = Indexer::new(all_words(n, k));
    let mut rows = Vec::new();
    for r in p.relations() {
        let r = poly_terms(r);
        let e = r[0].0.len();
        if e > k {
            continue;
        }
        for a in 0..=k - e {
            for u in all_words(n, a) {
                for v in all_words(n, k - e - a) {
                    rows.push(monos.dense(&mul(&mul(&word_poly(&u), &r), &word_poly(&v))));
                }
            }
        }
    }
    n.pow(k as u32) - dense_rank(&rows)
}

pub fn word(letters: &[u32]) -> Word {
    Word::from_letters(letters.to_vec())
}

/// Determinant by cofactor expansion.
pub fn cofactor_det(m: &[Vec<Z>]) -> Z {
    let n = m.len();
    if n == 0 {
        return Z::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = Z::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Z>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Rank and invariant factors from determinantal divisors: `d_k` is the gcd
/// of all `k×k` minors and the `k`-th factor is `d_k / d_{k-1}`.
pub fn determinantal_invariants(m: &[Vec<Z>], rows: usize, cols: usize) -> (usize, Vec<Z>) {
    let mut prev = Z::one();
    let mut factors = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = Z::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<Z>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
                g = g.gcd(&cofactor_det(&minor));
            }
        }
        if g.is_zero() {
            break;
        }
        factors.push((&g / &prev).abs());
        prev = g;
    }
    (factors.len(), factors)
}

// random integer complexes and matrices

pub fn from_dense(d: &[Vec<Z>], rows: usize, cols: usize) -> ZMatrix {
    let mut t = Vec::new();
    for (i, row) in d.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                t.push((i, j, v.clone()));
            }
        }
    }
    ZMatrix::from_triplets(rows, cols, t).unwrap()
}

pub fn matmul(a: &[Vec<Z>], b: &[Vec<Z>], n: usize, k: usize, m: usize) -> Vec<Vec<Z>> {
    let mut out = vec![vec![Z::zero(); m]; n];
    for i in 0..n {
        for j in 0..m {
            for t in 0..k {
                out[i][j] += &a[i][t] * &b[t][j];
            }
        }
    }
    out
}

/// A random unimodular matrix and its inverse, as products of elementary moves.
pub fn unimodular(rng: &mut StdRng, n: usize) -> (Vec<Vec<Z>>, Vec<Vec<Z>>) {
    let id = |n: usize| -> Vec<Vec<Z>> {
        (0..n).map(|i| (0..n).map(|j| if i == j { Z::one() } else { Z::zero() }).collect()).collect()
    };
    let (mut u, mut inv) = (id(n), id(n));
    if n < 2 {
        return (u, inv);
    }
    for _ in 0..rng.gen_range(0..6) {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let c = Z::from(rng.gen_range(-2..=2));
        // u ← E u with E = I + c·e_ij; inv ← inv E⁻¹
        for col in 0..n {
            let add = &c * &u[j][col];
            u[i][col] += add;
        }
        for row in inv.iter_mut() {
            let sub = &c * &row[i];
            row[j] -= sub;
        }
    }
    (u, inv)
}

pub struct Case {
    pub d_out: ZMatrix,
    pub d_in: ZMatrix,
    pub betti: usize,
    pub torsion: Vec<Z>,
}

/// `C₂ → C₁ → C₀` built in normal form and conjugated by unimodular bases.
pub fn random_complex(rng: &mut StdRng, n2: usize, n1: usize, n0: usize) -> Case {
    let r_in = rng.gen_range(0..=n2.min(n1));
    let r_out = rng.gen_range(0..=(n1 - r_in).min(n0));
    let mut din = vec![vec![Z::zero(); n2]; n1];
    let mut dout = vec![vec![Z::zero(); n1]; n0];
    let mut factors = Vec::new();
    for k in 0..r_in {
        let f = Z::from(rng.gen_range(1..=4));
        din[k][k] = f.clone();
        factors.push(f);
    }
    for k in 0..r_out {
        dout[k][r_in + k] = Z::from(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    let (u1, u1_inv) = unimodular(rng, n1);
    let (u2, _) = unimodular(rng, n2);
    let (u0, _) = unimodular(rng, n0);
    let din = matmul(&matmul(&u1, &din, n1, n1, n2), &u2, n1, n2, n2);
    let dout = matmul(&matmul(&u0, &dout, n0, n0, n1), &u1_inv, n0, n1, n1);
    let mut torsion: Vec<Z> = Vec::new();
    // the diagonal need not be a divisibility chain; normalize by gcd/lcm
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            let (g, l) = (factors[i].gcd(&factors[j]), factors[i].lcm(&factors[j]));
            factors[i] = g;
            factors[j] = l;
        }
    }
    torsion.extend(factors.into_iter().filter(|f| !f.is_one()));
    Case { d_out: from_dense(&dout, n0, n1), d_in: from_dense(&din, n1, n2), betti: n1 - r_in - r_out, torsion }
}

pub fn random_sparse(rng: &mut StdRng, rows: usize, cols: usize, density: f64) -> ZMatrix {
    let mut t = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                let v: i64 = rng.gen_range(-6..=6);
                if v != 0 {
                    t.push((i, j, Z::from(v)));
                }
            }
        }
    }
    ZMatrix::from_triplets(rows, cols, t).unwrap()
}
