//! Sparse exact linear algebra over the rationals and the integers.
//!
//! Matrices are stored column-major as sparse columns. Every matrix built by
//! the verification modules is paired with [`OrderedBasis`] labels for its
//! rows and columns.

mod echelon;
mod rank;
mod smith;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use echelon::Echelon;
pub use rank::{kernel_basis, rank, rank_z, subspace_quotient, QuotientSpace};
pub use smith::{homology_at, smith_invariants, Homology, SmithResult};

pub type Q = BigRational;
pub type Z = BigInt;

/// Serializes integers as JSON numbers when they fit in `i64`, else as decimal strings.
pub(crate) fn serialize_ints<S: serde::Serializer>(v: &[Z], s: S) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        match z.to_i64() {
            Some(n) => seq.serialize_element(&n)?,
            None => seq.serialize_element(&z.to_string())?,
        }
    }
    seq.end()
}

pub fn q(n: i64) -> Q {
    Q::from_integer(Z::from(n))
}

/// Parses `n` or `n/m` with optional sign.
pub fn parse_rational(s: &str) -> Option<Q> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let valid = |t: &str| {
        let t = t.strip_prefix('-').unwrap_or(t);
        !t.is_empty() && t.chars().all(|c| c.is_ascii_digit())
    };
    if !valid(num) || !valid(den) {
        return None;
    }
    let n: Z = num.parse().ok()?;
    let d: Z = den.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

/// A sparse rational vector: strictly increasing indices, no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QVec {
    entries: Vec<(usize, Q)>,
}

impl QVec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(i: usize) -> Self {
        Self { entries: vec![(i, Q::one())] }
    }

    /// Sums duplicate indices and drops zeros.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Q)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (i, c) in pairs {
            *acc.entry(i).or_insert_with(Q::zero) += c;
        }
        Self { entries: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn from_dense(v: &[Q]) -> Self {
        Self { entries: v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect() }
    }

    pub fn to_dense(&self, dim: usize) -> Vec<Q> {
        let mut v = vec![Q::zero(); dim];
        for (i, c) in &self.entries {
            v[*i] = c.clone();
        }
        v
    }

    pub fn entries(&self) -> &[(usize, Q)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |(j, _)| *j) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    pub fn scale(&self, s: &Q) -> QVec {
        if s.is_zero() {
            return QVec::zero();
        }
        Self { entries: self.entries.iter().map(|(i, c)| (*i, c * s)).collect() }
    }

    /// `self + s · other`.
    pub fn add_scaled(&self, s: &Q, other: &QVec) -> QVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, s * y));
                        b.next();
                    } else {
                        let v = x + s * y;
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, s * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { entries: out }
    }

    pub fn sub(&self, other: &QVec) -> QVec {
        self.add_scaled(&-Q::one(), other)
    }

    pub fn add(&self, other: &QVec) -> QVec {
        self.add_scaled(&Q::one(), other)
    }

    pub fn remap<F: Fn(usize) -> usize>(&self, f: F) -> QVec {
        QVec::from_pairs(self.entries.iter().map(|(i, c)| (f(*i), c.clone())))
    }
}

/// An ordered list of distinct labels with reverse lookup.
#[derive(Clone, Debug)]
pub struct OrderedBasis<L: Ord + Clone> {
    labels: Vec<L>,
    index: BTreeMap<L, usize>,
}

impl<L: Ord + Clone> OrderedBasis<L> {
    pub fn new(labels: Vec<L>) -> Self {
        let mut index = BTreeMap::new();
        for (i, l) in labels.iter().enumerate() {
            let prev = index.insert(l.clone(), i);
            assert!(prev.is_none(), "basis labels must be distinct");
        }
        Self { labels, index }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &L {
        &self.labels[i]
    }

    pub fn index_of(&self, l: &L) -> Option<usize> {
        self.index.get(l).copied()
    }

    pub fn expect_index(&self, l: &L) -> usize {
        self.index_of(l).expect("label not in basis")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<QVec>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![QVec::zero(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, columns: (0..n).map(QVec::unit).collect() }
    }

    pub fn from_columns(rows: usize, columns: Vec<QVec>) -> Result<Self> {
        for (j, c) in columns.iter().enumerate() {
            if c.max_index().is_some_and(|m| m >= rows) {
                return Err(Error::Shape(format!("column {j} has an entry beyond row {rows}")));
            }
        }
        Ok(Self { rows, cols: columns.len(), columns })
    }

    /// Rejects out-of-range or repeated positions; explicit zeros are dropped.
    pub fn from_triplets(rows: usize, cols: usize, triplets: Vec<(usize, usize, Q)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let mut per_col: Vec<Vec<(usize, Q)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Shape(format!("entry ({r}, {c}) outside {rows}x{cols}")));
            }
            if !seen.insert((r, c)) {
                return Err(Error::Shape(format!("duplicate entry at ({r}, {c})")));
            }
            per_col[c].push((r, v));
        }
        let columns = per_col.into_iter().map(QVec::from_pairs).collect();
        Ok(Self { rows, cols, columns })
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        let columns = (0..nc).map(|j| QVec::from_pairs((0..nr).map(|i| (i, q(rows[i][j]))))).collect();
        Self { rows: nr, cols: nc, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &QVec {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[QVec] {
        &self.columns
    }

    pub fn triplets(&self) -> Vec<(usize, usize, Q)> {
        let mut t: Vec<_> = self
            .columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.entries().iter().map(move |(i, v)| (*i, j, v.clone())))
            .collect();
        t.sort_by_key(|e| (e.0, e.1));
        t
    }

    pub fn transpose(&self) -> QMatrix {
        let mut per_col: Vec<Vec<(usize, Q)>> = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.entries() {
                per_col[*i].push((j, v.clone()));
            }
        }
        QMatrix { rows: self.cols, cols: self.rows, columns: per_col.into_iter().map(QVec::from_pairs).collect() }
    }

    pub fn mul_vec(&self, v: &QVec) -> QVec {
        let mut acc = QVec::zero();
        for (j, c) in v.entries() {
            acc = acc.add_scaled(c, &self.columns[*j]);
        }
        acc
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = other.columns.iter().map(|c| self.mul_vec(c)).collect();
        Ok(QMatrix { rows: self.rows, cols: other.cols, columns })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(QVec::is_zero)
    }

    /// `rows cols` header followed by `r c value` lines in row-major order.
    pub fn dump(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            let _ = writeln!(s, "{r} {c} {v}");
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, Z)>>,
}

impl ZMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, columns: (0..n).map(|i| vec![(i, Z::one())]).collect() }
    }

    pub fn from_triplets(rows: usize, cols: usize, triplets: Vec<(usize, usize, Z)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let mut per_col: Vec<Vec<(usize, Z)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Shape(format!("entry ({r}, {c}) outside {rows}x{cols}")));
            }
            if !seen.insert((r, c)) {
                return Err(Error::Shape(format!("duplicate entry at ({r}, {c})")));
            }
            if !v.is_zero() {
                per_col[c].push((r, v));
            }
        }
        for col in &mut per_col {
            col.sort_by_key(|(r, _)| *r);
        }
        Ok(Self { rows, cols, columns: per_col })
    }

    /// Builds a matrix from columns given as unsorted `(row, value)` lists;
    /// repeated rows within a column are summed.
    pub fn from_column_sums(rows: usize, columns: Vec<Vec<(usize, Z)>>) -> Self {
        let columns = columns
            .into_iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Z> = BTreeMap::new();
                for (r, v) in col {
                    assert!(r < rows, "row index out of range");
                    *acc.entry(r).or_insert_with(Z::zero) += v;
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect::<Vec<_>>();
        Self { rows, cols: columns.len(), columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, Vec::len);
        let columns =
            (0..nc).map(|j| (0..nr).filter(|&i| rows[i][j] != 0).map(|i| (i, Z::from(rows[i][j]))).collect()).collect();
        Self { rows: nr, cols: nc, columns }
    }

    pub fn to_dense(&self) -> Vec<Vec<Z>> {
        let mut d = vec![vec![Z::zero(); self.cols]; self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c {
                d[*i][j] = v.clone();
            }
        }
        d
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> &[(usize, Z)] {
        &self.columns[j]
    }

    pub fn triplets(&self) -> Vec<(usize, usize, Z)> {
        let mut t: Vec<_> =
            self.columns.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v.clone()))).collect();
        t.sort_by_key(|e| (e.0, e.1));
        t
    }

    pub fn to_q(&self) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            columns: self
                .columns
                .iter()
                .map(|c| QVec { entries: c.iter().map(|(i, v)| (*i, Q::from_integer(v.clone()))).collect() })
                .collect(),
        }
    }

    pub fn mul(&self, other: &ZMatrix) -> Result<ZMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, Z> = BTreeMap::new();
                for (k, b) in col {
                    for (i, a) in &self.columns[*k] {
                        *acc.entry(*i).or_insert_with(Z::zero) += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(ZMatrix { rows: self.rows, cols: other.cols, columns })
    }

    /// Restriction to the given rows and columns (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ZMatrix {
        let row_pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(k, r)| (*r, k)).collect();
        let columns = cols
            .iter()
            .map(|&j| {
                let mut c: Vec<(usize, Z)> =
                    self.columns[j].iter().filter_map(|(i, v)| row_pos.get(i).map(|k| (*k, v.clone()))).collect();
                c.sort_by_key(|(k, _)| *k);
                c
            })
            .collect();
        ZMatrix { rows: rows.len(), cols: cols.len(), columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn dump(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for (r, c, v) in self.triplets() {
            let _ = writeln!(s, "{r} {c} {v}");
        }
        s
    }
}
