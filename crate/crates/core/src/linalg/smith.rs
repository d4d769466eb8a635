//! Integer Smith normal form invariants and cellular homology.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{rank_z, ZMatrix, Z};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmithResult {
    pub rank: usize,
    /// Positive invariant factors, each dividing the next.
    #[serde(serialize_with = "super::serialize_ints")]
    pub invariant_factors: Vec<Z>,
}

impl SmithResult {
    pub fn torsion(&self) -> Vec<Z> {
        self.invariant_factors.iter().filter(|f| !f.is_one()).cloned().collect()
    }
}

pub fn smith_invariants(m: &ZMatrix) -> SmithResult {
    let mut rows: Vec<BTreeMap<usize, Z>> = vec![BTreeMap::new(); m.rows()];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols()];
    for (r, c, v) in m.triplets() {
        rows[r].insert(c, v);
        col_rows[c].insert(r);
    }
    let mut alive: BTreeSet<usize> = (0..m.rows()).filter(|&r| !rows[r].is_empty()).collect();
    let mut units = 0usize;

    // Unit pivots first, chosen by Markowitz cost so fill stays low.
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in &alive {
            let rn = rows[r].len();
            for (c, v) in &rows[r] {
                if v.abs().is_one() {
                    let cost = (rn - 1) * (col_rows[*c].len() - 1);
                    if best.is_none_or(|(b, _, _)| cost < b) {
                        best = Some((cost, r, *c));
                    }
                }
            }
            if best.is_some_and(|(b, _, _)| b == 0) {
                break;
            }
        }
        let Some((_, pr, pc)) = best else { break };
        let pivot_row = rows[pr].clone();
        let u = pivot_row[&pc].clone();
        let others: Vec<usize> = col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
        for r in others {
            let factor = &rows[r][&pc] * &u;
            for (c, v) in &pivot_row {
                let e = rows[r].entry(*c).or_insert_with(Z::zero);
                *e -= &factor * v;
                if e.is_zero() {
                    rows[r].remove(c);
                    col_rows[*c].remove(&r);
                } else {
                    col_rows[*c].insert(r);
                }
            }
            if rows[r].is_empty() {
                alive.remove(&r);
            }
        }
        for c in pivot_row.keys() {
            col_rows[*c].remove(&pr);
        }
        rows[pr].clear();
        alive.remove(&pr);
        units += 1;
    }

    let cols: Vec<usize> = {
        let s: BTreeSet<usize> = alive.iter().flat_map(|&r| rows[r].keys().copied()).collect();
        s.into_iter().collect()
    };
    let col_pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, c)| (*c, k)).collect();
    let mut dense: Vec<Vec<Z>> = alive
        .iter()
        .map(|&r| {
            let mut row = vec![Z::zero(); cols.len()];
            for (c, v) in &rows[r] {
                row[col_pos[c]] = v.clone();
            }
            row
        })
        .collect();
    let mut factors = vec![Z::one(); units];
    factors.extend(dense_diagonal(&mut dense));
    normalize_chain(&mut factors);
    SmithResult { rank: factors.len(), invariant_factors: factors }
}

/// Diagonalizes by gcd pivoting, always moving the smallest nonzero entry to the pivot.
fn dense_diagonal(a: &mut [Vec<Z>]) -> Vec<Z> {
    let nr = a.len();
    let nc = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        let Some((pi, pj)) = smallest_nonzero(a, t, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..nr {
                if a[i][t].is_zero() {
                    continue;
                }
                let qt = a[i][t].div_floor(&a[t][t]);
                for j in t..nc {
                    let s = &qt * &a[t][j];
                    a[i][j] -= s;
                }
                dirty |= !a[i][t].is_zero();
            }
            for j in t + 1..nc {
                if a[t][j].is_zero() {
                    continue;
                }
                let qt = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let s = &qt * &row[t];
                    row[j] -= s;
                }
                dirty |= !a[t][j].is_zero();
            }
            if !dirty {
                break;
            }
            // a remainder is now smaller than the pivot; bring the minimum of the cross in
            let mut best = (t, t);
            for i in t..nr {
                if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..nc {
                if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn smallest_nonzero(a: &[Vec<Z>], r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(r0) {
        for (j, v) in row.iter().enumerate().skip(c0) {
            if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Turns any positive diagonal into the divisibility chain via pairwise gcd/lcm.
fn normalize_chain(d: &mut [Z]) {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Homology {
    pub betti: usize,
    #[serde(serialize_with = "super::serialize_ints")]
    pub torsion: Vec<Z>,
}

/// Homology at the middle of `C_{k+1} --d_in--> C_k --d_out--> C_{k-1}`.
///
/// Torsion is read off the invariant factors of `d_in`; `ker d_out` is a
/// direct summand of `C_k`, so this equals the torsion relative to it.
pub fn homology_at(d_out: &ZMatrix, d_in: &ZMatrix) -> Result<Homology> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::Shape(format!("d_out has {} columns but d_in has {} rows", d_out.cols(), d_in.rows())));
    }
    let comp = d_out.mul(d_in)?;
    if let Some(column) = (0..comp.cols()).find(|&j| !comp.column(j).is_empty()) {
        return Err(Error::NonzeroComposite { column });
    }
    let r_out = rank_z(d_out);
    let snf = smith_invariants(d_in);
    Ok(Homology { betti: d_out.cols() - r_out - snf.rank, torsion: snf.torsion() })
}
