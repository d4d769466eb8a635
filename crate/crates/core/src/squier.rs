//! Derivation graphs and Squier complexes of monoid presentations, truncated
//! by word length, with integral `H₁` per connected component.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{bracket, FrElement};
use crate::linalg::{homology_at, Homology, ZMatrix, Q, Z};
use crate::presentation::{monoid_to_algebra, MonoidPresentation};
use crate::unionfind::UnionFind;
use crate::words::{occurrences, words_of_length, words_up_to, Alphabet, Word};

/// An edge `(u, i, v): u ℓᵢ v → u rᵢ v`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub u: Word,
    pub rel: usize,
    pub v: Word,
    pub source: usize,
    pub target: usize,
}

/// A 2-cell `(u, i, v, j, w)` recording the independent rewrites of
/// `u ℓᵢ v ℓⱼ w`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub u: Word,
    pub i: usize,
    pub v: Word,
    pub j: usize,
    pub w: Word,
}

#[derive(Clone, Debug)]
pub struct DerivationGraph {
    pub max_len: usize,
    pub vertices: Vec<Word>,
    index: BTreeMap<Word, usize>,
    pub edges: Vec<Edge>,
    edge_index: BTreeMap<(Word, usize, Word), usize>,
}

impl DerivationGraph {
    pub fn vertex_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn edge_index(&self, u: &Word, rel: usize, v: &Word) -> Option<usize> {
        self.edge_index.get(&(u.clone(), rel, v.clone())).copied()
    }
}

#[derive(Clone, Debug)]
pub struct SquierSlice {
    pub graph: DerivationGraph,
    pub cells: Vec<Cell>,
    /// Component id of each vertex: the index of the smallest vertex in it.
    pub component: Vec<usize>,
}

/// Builds the slice on an explicit vertex set; edges and cells are kept
/// only when every word they touch is a vertex.
fn build_on(p: &MonoidPresentation, vertices: Vec<Word>, max_len: usize) -> SquierSlice {
    let index: BTreeMap<Word, usize> = vertices.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
    let rels = p.relations();

    let mut edges = Vec::new();
    for (s, word) in vertices.iter().enumerate() {
        for (i, (l, r)) in rels.iter().enumerate() {
            for (u, v) in occurrences(word, l) {
                if let Some(&t) = index.get(&Word::concat3(&u, r, &v)) {
                    edges.push(Edge { u, rel: i, v, source: s, target: t });
                }
            }
        }
    }
    let edge_index = edges.iter().enumerate().map(|(k, e)| ((e.u.clone(), e.rel, e.v.clone()), k)).collect();
    let graph = DerivationGraph { max_len, vertices, index, edges, edge_index };

    let mut cells = Vec::new();
    for word in &graph.vertices {
        for (i, (li, ri)) in rels.iter().enumerate() {
            for (u, rest) in occurrences(word, li) {
                for (j, (lj, rj)) in rels.iter().enumerate() {
                    for (v, w) in occurrences(&rest, lj) {
                        let corners = [
                            Word::concat3(&u, ri, &Word::concat3(&v, lj, &w)),
                            Word::concat3(&u, li, &Word::concat3(&v, rj, &w)),
                            Word::concat3(&u, ri, &Word::concat3(&v, rj, &w)),
                        ];
                        if corners.iter().all(|c| graph.index.contains_key(c)) {
                            cells.push(Cell { u: u.clone(), i, v, j, w });
                        }
                    }
                }
            }
        }
    }

    // vertices are in canonical order, so each root is the smallest word of its component
    let mut uf = UnionFind::new(graph.vertices.len());
    for e in &graph.edges {
        uf.union(e.source, e.target);
    }
    let component = uf.roots();
    SquierSlice { graph, cells, component }
}

/// All words of length at most `max_len`, with every edge and 2-cell whose
/// words fit in that bound.
pub fn build_slice(p: &MonoidPresentation, max_len: usize) -> SquierSlice {
    build_on(p, words_up_to(p.alphabet().len(), max_len), max_len)
}

/// Words of length exactly `n`; a union of full components when `p` is
/// length-homogeneous.
pub fn build_exact_slice(p: &MonoidPresentation, n: usize) -> Result<SquierSlice> {
    if !p.is_length_homogeneous() {
        return Err(Error::NotLengthHomogeneous);
    }
    Ok(build_on(p, words_of_length(p.alphabet().len(), n), n))
}

impl SquierSlice {
    /// Vertex `u ℓᵢ v ℓⱼ w` where both rewrites start.
    pub fn cell_source(&self, p: &MonoidPresentation, c: &Cell) -> usize {
        let rels = p.relations();
        let word = Word::concat3(&c.u, &rels[c.i].0, &Word::concat3(&c.v, &rels[c.j].0, &c.w));
        self.graph.vertex_index(&word).expect("cell corners are vertices")
    }

    fn cell_boundary(&self, p: &MonoidPresentation, c: &Cell) -> Vec<(usize, i64)> {
        let rels = p.relations();
        let (li, ri) = (&rels[c.i].0, &rels[c.i].1);
        let (lj, rj) = (&rels[c.j].0, &rels[c.j].1);
        let e = |u: Word, k: usize, v: Word| {
            self.graph.edge_index(&u, k, &v).expect("cell boundary edges are in the slice")
        };
        vec![
            (e(c.u.clone(), c.i, Word::concat3(&c.v, lj, &c.w)), 1),
            (e(c.u.clone(), c.i, Word::concat3(&c.v, rj, &c.w)), -1),
            (e(Word::concat3(&c.u, ri, &c.v), c.j, c.w.clone()), 1),
            (e(Word::concat3(&c.u, li, &c.v), c.j, c.w.clone()), -1),
        ]
    }

    /// `(d₂, d₁)`, with `d₁ · d₂ = 0` verified.
    pub fn boundary_matrices(&self, p: &MonoidPresentation) -> Result<(ZMatrix, ZMatrix)> {
        let nv = self.graph.vertices.len();
        let d1 = ZMatrix::from_column_sums(
            nv,
            self.graph.edges.iter().map(|e| vec![(e.target, Z::one()), (e.source, -Z::one())]).collect(),
        );
        let d2 = ZMatrix::from_column_sums(
            self.graph.edges.len(),
            self.cells
                .iter()
                .map(|c| self.cell_boundary(p, c).into_iter().map(|(k, s)| (k, Z::from(s))).collect())
                .collect(),
        );
        let comp = d1.mul(&d2)?;
        if let Some(column) = (0..comp.cols()).find(|&j| !comp.column(j).is_empty()) {
            return Err(Error::NonzeroComposite { column });
        }
        Ok((d2, d1))
    }

    /// Sorted component ids.
    pub fn components(&self) -> Vec<usize> {
        let mut c = self.component.clone();
        c.sort_unstable();
        c.dedup();
        c
    }

    /// `(d₁, d₂)` restricted to one component.
    fn restricted(&self, p: &MonoidPresentation, comp: usize) -> Result<(ZMatrix, ZMatrix)> {
        let (d2, d1) = self.boundary_matrices(p)?;
        let verts: Vec<usize> = (0..self.graph.vertices.len()).filter(|&v| self.component[v] == comp).collect();
        let edges: Vec<usize> =
            (0..self.graph.edges.len()).filter(|&e| self.component[self.graph.edges[e].source] == comp).collect();
        let cells: Vec<usize> =
            (0..self.cells.len()).filter(|&c| self.component[self.cell_source(p, &self.cells[c])] == comp).collect();
        Ok((d1.submatrix(&verts, &edges), d2.submatrix(&edges, &cells)))
    }

    /// `H₁` of the component containing `basepoint`.
    pub fn component_h1(&self, p: &MonoidPresentation, basepoint: &Word) -> Result<Homology> {
        let v = self
            .graph
            .vertex_index(basepoint)
            .ok_or_else(|| Error::UnknownBasepoint(p.alphabet().format_word(basepoint)))?;
        let (d1, d2) = self.restricted(p, self.component[v])?;
        homology_at(&d1, &d2)
    }

    /// `H₁` of the whole slice.
    pub fn total_h1(&self, p: &MonoidPresentation) -> Result<Homology> {
        let (d2, d1) = self.boundary_matrices(p)?;
        homology_at(&d1, &d2)
    }

    /// `vertex | edge-label | vertex` lines followed by the cell list.
    pub fn dump(&self, alphabet: &Alphabet) -> String {
        let f = |w: &Word| alphabet.format_word(w);
        let mut s = String::new();
        for e in &self.graph.edges {
            let _ = writeln!(
                s,
                "{} | ({}, {}, {}) | {}",
                f(&self.graph.vertices[e.source]),
                f(&e.u),
                e.rel,
                f(&e.v),
                f(&self.graph.vertices[e.target])
            );
        }
        for c in &self.cells {
            let _ = writeln!(s, "cell ({}, {}, {}, {}, {})", f(&c.u), c.i, f(&c.v), c.j, f(&c.w));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SliceSummary {
    pub length: usize,
    pub vertices: usize,
    pub edges: usize,
    pub cells: usize,
    pub components: usize,
    pub betti: usize,
    #[serde(serialize_with = "crate::linalg::serialize_ints")]
    pub torsion: Vec<Z>,
    pub certified: bool,
}

fn summarize(p: &MonoidPresentation, s: &SquierSlice, length: usize, certified: bool) -> Result<SliceSummary> {
    let h = s.total_h1(p)?;
    Ok(SliceSummary {
        length,
        vertices: s.graph.vertices.len(),
        edges: s.graph.edges.len(),
        cells: s.cells.len(),
        components: s.components().len(),
        betti: h.betti,
        torsion: h.torsion,
        certified,
    })
}

/// Exact integral `H₁` of the length-`n` part of the Squier complex.
pub fn slice_h1_total(p: &MonoidPresentation, n: usize) -> Result<Homology> {
    build_exact_slice(p, n)?.total_h1(p)
}

pub fn exact_slice_summary(p: &MonoidPresentation, n: usize) -> Result<SliceSummary> {
    summarize(p, &build_exact_slice(p, n)?, n, true)
}

/// `H₁` of the truncations at `L = 0, …, max_len`. Only meaningful as data
/// when `p` is not length-homogeneous; nothing is certified.
pub fn truncated_sequence(p: &MonoidPresentation, max_len: usize) -> Result<Vec<SliceSummary>> {
    (0..=max_len).map(|l| summarize(p, &build_slice(p, l), l, false)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub max_len: usize,
    pub cells: usize,
    pub mismatches: usize,
    pub pass: bool,
}

/// `ι(d₂ c) = −u·[rᵢ−ℓᵢ, v, rⱼ−ℓⱼ]·w` for every 2-cell `c = (u,i,v,j,w)` of
/// the length-`max_len` slice.
pub fn edge_embedding_check(p: &MonoidPresentation, max_len: usize) -> Result<EmbeddingReport> {
    let s = build_slice(p, max_len);
    let alg = monoid_to_algebra(p);
    let mut mismatches = 0;
    for c in &s.cells {
        let mut lhs = FrElement::zero();
        for (k, sign) in s.cell_boundary(p, c) {
            let e = &s.graph.edges[k];
            lhs.add_term((e.u.clone(), e.rel, e.v.clone()), Q::from_integer(Z::from(sign)));
        }
        let rhs = bracket(&alg, c.i, &c.v, c.j)?.sandwich(&c.u, &c.w).neg();
        if lhs != rhs {
            mismatches += 1;
        }
    }
    Ok(EmbeddingReport { max_len, cells: s.cells.len(), mismatches, pass: mismatches == 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, Presentation};

    fn monoid(src: &str) -> MonoidPresentation {
        match parse_presentation(src).unwrap() {
            Presentation::Monoid(m) => m,
            _ => unreachable!(),
        }
    }

    const COMM: &str = "kind: monoid\ngenerators: x y\nrelation: x y = y x";
    const IDEM: &str = "kind: monoid\ngenerators: x\nrelation: x x = x";

    #[test]
    fn length_two_components() {
        let p = monoid(COMM);
        let s = build_slice(&p, 2);
        assert_eq!(s.graph.vertices.len(), 7);
        assert_eq!(s.graph.edges.len(), 1);
        // ε, x, y, xx, xy~yx, yy
        assert_eq!(s.components().len(), 6);
        let xy = p.alphabet().parse_word("x y").unwrap();
        let yx = p.alphabet().parse_word("y x").unwrap();
        let (a, b) = (s.graph.vertex_index(&xy).unwrap(), s.graph.vertex_index(&yx).unwrap());
        assert_eq!(s.component[a], s.component[b]);
        assert_eq!(s.component[b], a);
    }

    #[test]
    fn xxyy_component() {
        let p = monoid(COMM);
        let s = build_slice(&p, 4);
        let base = p.alphabet().parse_word("x x y y").unwrap();
        let c = s.component[s.graph.vertex_index(&base).unwrap()];
        let verts = s.component.iter().filter(|&&k| k == c).count();
        let edges = s.graph.edges.iter().filter(|e| s.component[e.source] == c).count();
        assert_eq!((verts, edges), (6, 6));
        assert_eq!(s.cells.iter().filter(|cl| s.component[s.cell_source(&p, cl)] == c).count(), 1);
        let h = s.component_h1(&p, &base).unwrap();
        assert_eq!(h, Homology { betti: 0, torsion: vec![] });
        let t = build_slice(&p, 3);
        let h = t.component_h1(&p, &p.alphabet().parse_word("x x y").unwrap()).unwrap();
        assert_eq!(h.betti, 0);
    }

    #[test]
    fn empty_slice_and_errors() {
        let p = monoid(COMM);
        let s = build_slice(&p, 0);
        assert_eq!((s.graph.vertices.len(), s.graph.edges.len(), s.cells.len()), (1, 0, 0));
        let (d2, _) = s.boundary_matrices(&p).unwrap();
        assert_eq!(d2.cols(), 0);
        let xyx = p.alphabet().parse_word("x y x").unwrap();
        assert!(matches!(s.component_h1(&p, &xyx), Err(Error::UnknownBasepoint(_))));
        assert_eq!(slice_h1_total(&monoid(IDEM), 2), Err(Error::NotLengthHomogeneous));
    }

    #[test]
    fn single_edge_boundary() {
        let p = monoid(COMM);
        let s = build_exact_slice(&p, 2).unwrap();
        let (_, d1) = s.boundary_matrices(&p).unwrap();
        let e = &s.graph.edges[0];
        assert_eq!(p.alphabet().format_word(&s.graph.vertices[e.source]), "x y");
        let dense = d1.to_dense();
        assert_eq!((dense[e.target][0].clone(), dense[e.source][0].clone()), (Z::one(), -Z::one()));
    }

    #[test]
    fn commutative_slices_are_acyclic() {
        let p = monoid(COMM);
        for n in 0..=5 {
            assert_eq!(slice_h1_total(&p, n).unwrap(), Homology { betti: 0, torsion: vec![] });
        }
    }

    #[test]
    fn embedding_identity() {
        assert!(edge_embedding_check(&monoid(COMM), 4).unwrap().pass);
        let r = edge_embedding_check(&monoid(IDEM), 4).unwrap();
        assert!(r.cells > 0 && r.pass);
    }
}
