use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{QVec, Q};

#[derive(Clone, Debug)]
struct Row {
    vec: QVec,
    tag: Option<usize>,
}

/// Incrementally built row-echelon basis of a subspace of `Q^dim`.
///
/// Each stored row has leading coefficient 1 at its pivot column and no
/// entries before it. Rows may carry a tag; tagged rows act as the chosen
/// basis of a quotient `U/W` when `W` is inserted untagged first.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: BTreeMap<usize, Row>,
    tagged: usize,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: BTreeMap::new(), tagged: 0 }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a QVec>>(dim: usize, vs: I) -> Self {
        let mut e = Self::new(dim);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of tagged rows, i.e. the dimension of the quotient they span.
    pub fn tagged_count(&self) -> usize {
        self.tagged
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Columns without a pivot, ascending.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.dim).filter(|c| !self.rows.contains_key(c)).collect()
    }

    pub fn basis(&self) -> Vec<QVec> {
        self.rows.values().map(|r| r.vec.clone()).collect()
    }

    /// Rows carrying a tag, ordered by tag.
    pub fn tagged_basis(&self) -> Vec<QVec> {
        let mut t: Vec<(usize, &QVec)> = self.rows.values().filter_map(|r| r.tag.map(|t| (t, &r.vec))).collect();
        t.sort_by_key(|(k, _)| *k);
        t.into_iter().map(|(_, v)| v.clone()).collect()
    }

    /// Sweeps `v` against the rows; returns `(pivot, coefficient)` pairs with
    /// `v_in = Σ coef·row + v_out`, and `v_out` vanishing at every pivot.
    fn sweep(&self, v: &mut [Q]) -> Vec<(usize, Q)> {
        let mut used = Vec::new();
        for c in 0..self.dim {
            if v[c].is_zero() {
                continue;
            }
            if let Some(row) = self.rows.get(&c) {
                let coef = v[c].clone();
                for (j, a) in row.vec.entries() {
                    v[*j] -= &coef * a;
                }
                used.push((c, coef));
            }
        }
        used
    }

    /// Canonical representative of `v` modulo the span (supported on free columns).
    pub fn reduce(&self, v: &QVec) -> QVec {
        let mut d = v.to_dense(self.dim);
        self.sweep(&mut d);
        QVec::from_dense(&d)
    }

    pub fn contains(&self, v: &QVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Residual and the coefficients on tagged rows.
    pub fn decompose(&self, v: &QVec) -> (QVec, Vec<(usize, Q)>) {
        let mut d = v.to_dense(self.dim);
        let used = self.sweep(&mut d);
        let coords = used.into_iter().filter_map(|(p, c)| self.rows[&p].tag.map(|t| (t, c))).collect();
        (QVec::from_dense(&d), coords)
    }

    /// Coordinates of `v` in the tagged quotient basis, as a vector indexed by tag.
    pub fn tagged_coords(&self, v: &QVec) -> QVec {
        QVec::from_pairs(self.decompose(v).1)
    }

    /// Inserts `v`; returns its new pivot when `v` was independent.
    pub fn insert(&mut self, v: &QVec) -> Option<usize> {
        self.insert_row(v, false)
    }

    /// Inserts `v` as a tagged row; returns the tag when independent.
    pub fn insert_tagged(&mut self, v: &QVec) -> Option<usize> {
        self.insert_row(v, true).map(|p| self.rows[&p].tag.expect("tagged"))
    }

    fn insert_row(&mut self, v: &QVec, tagged: bool) -> Option<usize> {
        if v.is_zero() {
            return None;
        }
        let r = self.reduce(v);
        let (pivot, lead) = r.entries().first().cloned()?;
        let normalized = if lead.is_one() { r } else { r.scale(&lead.recip()) };
        let tag = if tagged {
            self.tagged += 1;
            Some(self.tagged - 1)
        } else {
            None
        };
        self.rows.insert(pivot, Row { vec: normalized, tag });
        Some(pivot)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn v(pairs: &[(usize, i64)]) -> QVec {
        QVec::from_pairs(pairs.iter().map(|(i, c)| (*i, q(*c))))
    }

    #[test]
    fn reduction_is_canonical() {
        let mut e = Echelon::new(3);
        e.insert(&v(&[(0, 1), (1, 1)]));
        e.insert(&v(&[(1, 1), (2, 1)]));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.free_columns(), vec![2]);
        // x0 ≡ -x1 ≡ x2 modulo the span
        assert_eq!(e.reduce(&v(&[(0, 1)])), v(&[(2, 1)]));
        assert!(e.contains(&v(&[(0, 1), (2, -1)])));
        assert_eq!(e.insert(&v(&[(0, 2), (1, 4), (2, 2)])), None);
    }

    #[test]
    fn tagged_quotient_coordinates() {
        // W = span{e0}, U = span{e0, e1 + e2}
        let mut e = Echelon::new(3);
        e.insert(&v(&[(0, 1)]));
        assert_eq!(e.insert_tagged(&v(&[(0, 5), (1, 1), (2, 1)])), Some(0));
        assert_eq!(e.tagged_count(), 1);
        let (res, coords) = e.decompose(&v(&[(0, 7), (1, 3), (2, 3)]));
        assert!(res.is_zero());
        assert_eq!(coords, vec![(0, q(3))]);
    }
}
