use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Echelon, QMatrix, QVec, ZMatrix, Q, Z};
use crate::error::{Error, Result};

type ZVec = Vec<(usize, Z)>;

fn make_primitive(v: &mut ZVec) {
    let g = v.iter().fold(Z::zero(), |g, (_, a)| g.gcd(a));
    if !g.is_zero() && !g.is_one() {
        for (_, a) in v.iter_mut() {
            *a /= &g;
        }
    }
}

/// `a·v − b·w` on sorted sparse vectors, zeros dropped.
fn combine(a: &Z, v: &ZVec, b: &Z, w: &ZVec) -> ZVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        let take = match (v.get(i), w.get(j)) {
            (Some((p, _)), Some((q, _))) => p.cmp(q),
            (Some(_), None) => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Greater,
        };
        match take {
            std::cmp::Ordering::Less => {
                out.push((v[i].0, a * &v[i].1));
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push((w[j].0, -(b * &w[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let x = a * &v[i].1 - b * &w[j].1;
                if !x.is_zero() {
                    out.push((v[i].0, x));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Fraction-free integer echelon: rows are primitive integer vectors keyed by pivot.
fn integer_rank(mut vectors: Vec<ZVec>) -> usize {
    vectors.sort_by_key(Vec::len);
    let mut rows: BTreeMap<usize, ZVec> = BTreeMap::new();
    for mut v in vectors {
        make_primitive(&mut v);
        while let Some((lead, a)) = v.first().cloned() {
            match rows.get(&lead) {
                Some(row) => {
                    let b = &row[0].1;
                    let g = a.gcd(b);
                    v = combine(&(b / &g), &v, &(&a / &g), row);
                    make_primitive(&mut v);
                }
                None => {
                    if a.is_negative() {
                        for (_, x) in v.iter_mut() {
                            *x = -x.clone();
                        }
                    }
                    rows.insert(lead, v);
                    break;
                }
            }
        }
    }
    rows.len()
}

fn column_to_integers(c: &QVec) -> ZVec {
    let l = c.entries().iter().fold(Z::one(), |l, (_, x)| l.lcm(x.denom()));
    c.entries().iter().map(|(i, x)| (*i, x.numer() * (&l / x.denom()))).collect()
}

/// Rank over the rationals by fraction-free elimination, sparsest columns first.
pub fn rank(m: &QMatrix) -> usize {
    integer_rank(m.columns().iter().map(column_to_integers).collect())
}

pub fn rank_z(m: &ZMatrix) -> usize {
    integer_rank((0..m.cols()).map(|j| m.column(j).to_vec()).collect())
}

/// Basis of the right null space. Columns are eliminated left to right while
/// tracking their combinations; a column that reduces to zero yields a kernel vector.
pub fn kernel_basis(m: &QMatrix) -> Vec<QVec> {
    let dim = m.rows();
    let mut rows: BTreeMap<usize, (QVec, BTreeMap<usize, Q>)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for j in 0..m.cols() {
        let mut img = m.column(j).to_dense(dim);
        let mut combo: BTreeMap<usize, Q> = BTreeMap::new();
        combo.insert(j, Q::one());
        for c in 0..dim {
            if img[c].is_zero() {
                continue;
            }
            if let Some((row, rc)) = rows.get(&c) {
                let coef = img[c].clone();
                for (i, a) in row.entries() {
                    img[*i] -= &coef * a;
                }
                for (k, a) in rc {
                    *combo.entry(*k).or_insert_with(Q::zero) -= &coef * a;
                }
            }
        }
        combo.retain(|_, v| !v.is_zero());
        let residual = QVec::from_dense(&img);
        match residual.entries().first().cloned() {
            None => kernel.push(QVec::from_pairs(combo)),
            Some((pivot, lead)) => {
                let inv = lead.recip();
                let combo = combo.into_iter().map(|(k, v)| (k, v * &inv)).collect();
                rows.insert(pivot, (residual.scale(&inv), combo));
            }
        }
    }
    kernel
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpace {
    pub dim: usize,
    /// Vectors of `U` whose classes form a basis of `span U / span W`.
    pub representatives: Vec<QVec>,
}

/// `span(U) / span(W)`, after checking `span(W) ⊆ span(U)`.
pub fn subspace_quotient(ambient: usize, u: &[QVec], w: &[QVec]) -> Result<QuotientSpace> {
    let eu = Echelon::from_vectors(ambient, u);
    if let Some(k) = w.iter().position(|x| !eu.contains(x)) {
        return Err(Error::Containment { witness: k });
    }
    let mut ew = Echelon::from_vectors(ambient, w);
    let representatives: Vec<QVec> = u.iter().filter(|x| ew.insert(x).is_some()).cloned().collect();
    Ok(QuotientSpace { dim: representatives.len(), representatives })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use proptest::prelude::*;

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&QMatrix::identity(3)), 3);
        assert_eq!(rank(&QMatrix::zeros(4, 7)), 0);
        assert_eq!(rank(&QMatrix::from_dense(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&QMatrix::identity(4)).is_empty());
        let k = kernel_basis(&QMatrix::from_dense(&[vec![1, 1]]));
        assert_eq!(k, vec![QVec::from_pairs(vec![(0, q(-1)), (1, q(1))])]);
        assert_eq!(kernel_basis(&QMatrix::zeros(2, 3)).len(), 3);
    }

    #[test]
    fn quotient_examples() {
        let e = |i| QVec::unit(i);
        assert_eq!(subspace_quotient(2, &[e(0), e(1)], &[e(0)]).unwrap().dim, 1);
        assert_eq!(subspace_quotient(2, &[e(0), e(1)], &[e(1), e(0)]).unwrap().dim, 0);
        assert_eq!(subspace_quotient(3, &[e(0)], &[e(0), e(2)]), Err(Error::Containment { witness: 1 }));
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(prop_oneof![4 => Just(0i64), 1 => -3i64..4], c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(d in arb_matrix()) {
            let m = QMatrix::from_dense(&d);
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
        }

        #[test]
        fn kernel_satisfies_rank_nullity(d in arb_matrix()) {
            let m = QMatrix::from_dense(&d);
            let k = kernel_basis(&m);
            prop_assert_eq!(k.len(), m.cols() - rank(&m));
            for v in &k {
                prop_assert!(m.mul_vec(v).is_zero());
            }
            prop_assert_eq!(Echelon::from_vectors(m.cols(), &k).rank(), k.len());
        }
    }
}
