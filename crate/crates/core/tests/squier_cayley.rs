mod common;

use common::{algebra, monoid, oracle_dims, word};
use proptest::prelude::*;
use relbimod::cayley::{
    build_cayley, cayley_homology_check, enumerate_finite_monoid, parse_table, Enumeration, FiniteMonoid, Side,
};
use relbimod::presentation::monoid_to_algebra;
use relbimod::squier::{build_slice, edge_embedding_check, slice_h1_total};

const COMMUTATIVE: &str = "kind: monoid\ngenerators: x y\nrelation: x y = y x\n";
const COMMUTATIVE3: &str =
    "kind: monoid\ngenerators: x y z\nrelation: x y = y x\nrelation: x z = z x\nrelation: y z = z y\n";
const PLACTIC_LIKE: &str = "kind: monoid\ngenerators: x y\nrelation: x x y = x y x\n";
const CUBE_SQUARE: &str = "kind: monoid\ngenerators: x\nrelation: x x x = x x\n";
const IDEMPOTENT: &str = "kind: monoid\ngenerators: x\nrelation: x x = x\n";

fn stabilized(src: &str, l: usize) -> FiniteMonoid {
    match enumerate_finite_monoid(&monoid(src), l) {
        Enumeration::Stabilized(m) => m,
        Enumeration::NotStabilized { reason, .. } => panic!("{reason}"),
    }
}

#[test]
fn slice_betti_equals_oracle_pi2() {
    for (src, max) in [(COMMUTATIVE, 6), (COMMUTATIVE3, 4), (PLACTIC_LIKE, 6)] {
        let p = monoid(src);
        let alg = monoid_to_algebra(&p);
        for n in 0..=max {
            let h = slice_h1_total(&p, n).unwrap();
            assert!(h.torsion.is_empty(), "{src} n={n}");
            assert_eq!(h.betti, oracle_dims(&alg, n).pi2, "{src} n={n}");
        }
    }
}

#[test]
fn commutative_slice_values() {
    let p = monoid(COMMUTATIVE);
    for n in 0..=6 {
        assert_eq!(slice_h1_total(&p, n).unwrap().betti, 0);
    }
    // three commuting generators: a free bimodule on one cube in degree 3,
    // so degree 4 is M₁⊗M₀ ⊕ M₀⊗M₁ of rank 3 + 3
    let p3 = monoid(COMMUTATIVE3);
    assert_eq!(slice_h1_total(&p3, 3).unwrap().betti, 1);
    assert_eq!(slice_h1_total(&p3, 4).unwrap().betti, 6);
    assert_eq!(oracle_dims(&algebra(COMMUTATIVE3), 4).pi2, 6);
}

#[test]
fn edge_embedding_on_both_monoids() {
    for src in [COMMUTATIVE, IDEMPOTENT, CUBE_SQUARE, PLACTIC_LIKE] {
        let p = monoid(src);
        for l in 0..=5 {
            let r = edge_embedding_check(&p, l).unwrap();
            assert!(r.pass, "{src} L={l}: {} of {}", r.mismatches, r.cells);
        }
    }
    assert!(edge_embedding_check(&monoid(COMMUTATIVE), 5).unwrap().cells > 0);
}

#[test]
fn cayley_values() {
    let m = stabilized(CUBE_SQUARE, 8);
    assert_eq!(m.size(), 3);
    let p = monoid(CUBE_SQUARE);
    let left = cayley_homology_check(&m, &build_cayley(&m, &p, Side::Left).unwrap()).unwrap();
    assert_eq!((left.vertices, left.edges, left.cells, left.pi2_rank), (3, 3, 3, 2));
    assert!(left.pass && left.h1.betti == 0 && left.h0_rank == 1);
    let two = cayley_homology_check(&m, &build_cayley(&m, &p, Side::TwoSided).unwrap()).unwrap();
    assert_eq!((two.vertices, two.edges, two.cells, two.h0_rank, two.pi2_rank), (9, 9, 9, 3, 6));
    let mut sizes: Vec<usize> = two.components.iter().map(|c| c.vertices).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, [1, 2, 6]);
    assert!(two.pass && two.components_match && two.note == "H1-verified");

    let m = stabilized(IDEMPOTENT, 8);
    assert_eq!(m.size(), 2);
    let p = monoid(IDEMPOTENT);
    for side in [Side::Left, Side::TwoSided] {
        assert!(cayley_homology_check(&m, &build_cayley(&m, &p, side).unwrap()).unwrap().pass);
    }
    assert!(matches!(enumerate_finite_monoid(&monoid(COMMUTATIVE), 8), Enumeration::NotStabilized { .. }));
}

#[test]
fn table_import_agrees_with_enumeration() {
    let p = monoid(CUBE_SQUARE);
    let text =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/cube_square.table")).unwrap();
    let t = parse_table(&text, &p).unwrap();
    let e = stabilized(CUBE_SQUARE, 8);
    assert_eq!(t.elements, e.elements);
    assert_eq!(t.table, e.table);
    assert_eq!(parse_table(&e.to_table_text(), &p).unwrap().table, e.table);
    // a table satisfying the relation of a different monoid is refused
    assert!(parse_table("size 2\n0 1\n1 0\n", &p).is_err());
}

#[test]
fn squier_components_match_cayley_classes() {
    for src in [CUBE_SQUARE, IDEMPOTENT] {
        let p = monoid(src);
        let m = stabilized(src, 8);
        let s = build_slice(&p, 6);
        let verts = &s.graph.vertices;
        for a in 0..verts.len() {
            for b in 0..verts.len() {
                let same = s.component[a] == s.component[b];
                assert_eq!(same, m.eval(&verts[a]) == m.eval(&verts[b]), "{src}");
            }
        }
    }
}

proptest! {
    #[test]
    fn eval_is_a_homomorphism(a in proptest::collection::vec(0u32..1, 0..9),
                              b in proptest::collection::vec(0u32..1, 0..9)) {
        let m = stabilized(CUBE_SQUARE, 8);
        let mut ab = a.clone();
        ab.extend(&b);
        prop_assert_eq!(m.eval(&word(&ab)), m.mul(m.eval(&word(&a)), m.eval(&word(&b))));
    }

    #[test]
    fn commutative_slice_components_are_multisets(n in 0usize..6) {
        let s = build_slice(&monoid(COMMUTATIVE), n);
        let count = |w: &relbimod::Word| w.letters().iter().filter(|&&c| c == 0).count() + 100 * w.len();
        for (a, wa) in s.graph.vertices.iter().enumerate() {
            for (b, wb) in s.graph.vertices.iter().enumerate() {
                prop_assert_eq!(s.component[a] == s.component[b], count(wa) == count(wb));
            }
        }
    }
}
