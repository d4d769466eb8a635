mod common;

use common::{cofactor_det, dense_rank, determinantal_invariants, from_dense, random_complex, random_sparse, Q, Z};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use relbimod::linalg::{homology_at, kernel_basis, rank, rank_z, smith_invariants, QMatrix};

#[test]
fn homology_matches_oracles_on_small_complexes() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut checked = 0;
    for total in 0..=12usize {
        for n1 in 0..=total {
            for n2 in 0..=total - n1 {
                let n0 = total - n1 - n2;
                for _ in 0..3 {
                    let case = random_complex(&mut rng, n2, n1, n0);
                    assert!(case.d_out.mul(&case.d_in).unwrap().is_zero());
                    let h = homology_at(&case.d_out, &case.d_in).unwrap();
                    assert_eq!((h.betti, &h.torsion), (case.betti, &case.torsion), "sizes {n2} {n1} {n0}");
                    // independent oracle: determinantal divisors
                    let (r_out, _) = determinantal_invariants(&case.d_out.to_dense(), n0, n1);
                    let (r_in, inv) = determinantal_invariants(&case.d_in.to_dense(), n1, n2);
                    let tors: Vec<Z> = inv.into_iter().filter(|f| !f.is_one()).collect();
                    assert_eq!((h.betti, h.torsion), (n1 - r_out - r_in, tors));
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn smith_chain_on_random_sparse_matrices() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..1000 {
        let (r, c) = (rng.gen_range(0..9), rng.gen_range(0..9));
        let m = random_sparse(&mut rng, r, c, 0.3);
        let s = smith_invariants(&m);
        assert_eq!(s.rank, s.invariant_factors.len());
        assert_eq!(s.rank, rank_z(&m));
        assert!(s.invariant_factors.iter().all(|f| f.is_positive()));
        for w in s.invariant_factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]), "{:?}", s.invariant_factors);
        }
        if r <= 5 && c <= 5 {
            let (rk, inv) = determinantal_invariants(&m.to_dense(), r, c);
            assert_eq!((s.rank, s.invariant_factors), (rk, inv));
        }
    }
}

#[test]
fn smith_product_is_determinant_for_3x3() {
    let mut rng = StdRng::seed_from_u64(3);
    let mut seen = 0;
    while seen < 300 {
        let d: Vec<Vec<Z>> = (0..3).map(|_| (0..3).map(|_| Z::from(rng.gen_range(-9..=9))).collect()).collect();
        let det = cofactor_det(&d);
        if det.is_zero() {
            continue;
        }
        let s = smith_invariants(&from_dense(&d, 3, 3));
        let prod = s.invariant_factors.iter().fold(Z::one(), |a, b| a * b);
        assert_eq!(prod, det.abs());
        seen += 1;
    }
}

fn random_q(rng: &mut StdRng, rows: usize, cols: usize) -> (QMatrix, Vec<Vec<Q>>) {
    let mut dense = vec![vec![Q::zero(); cols]; rows];
    let mut t = Vec::new();
    for (i, row) in dense.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            if rng.gen_bool(0.35) {
                let v = Q::new(Z::from(rng.gen_range(-5..=5)), Z::from(rng.gen_range(1..=3)));
                if !v.is_zero() {
                    *x = v.clone();
                    t.push((i, j, v));
                }
            }
        }
    }
    (QMatrix::from_triplets(rows, cols, t).unwrap(), dense)
}

#[test]
fn rank_and_kernel_match_dense_elimination() {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..300 {
        let (r, c) = (rng.gen_range(0..8), rng.gen_range(0..8));
        let (m, dense) = random_q(&mut rng, r, c);
        let rk = dense_rank(&dense);
        assert_eq!(rank(&m), rk);
        assert_eq!(rank(&m.transpose()), rk);
        let ker = kernel_basis(&m);
        assert_eq!(ker.len(), c - rk);
        assert!(ker.iter().all(|v| m.mul_vec(v).is_zero()));
        let kd: Vec<Vec<Q>> = ker.iter().map(|v| v.to_dense(c)).collect();
        assert_eq!(dense_rank(&kd), ker.len());
    }
}
