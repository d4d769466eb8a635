//! Finite monoids from presentations and their one- and two-sided Cayley
//! complexes.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{homology_at, rank_z, Homology, ZMatrix, Z};
use crate::presentation::MonoidPresentation;
use crate::unionfind::UnionFind;
use crate::words::{occurrences, words_up_to, Word};

/// A finite monoid with elements indexed by their shortlex-least
/// representative words; element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMonoid {
    pub elements: Vec<Word>,
    pub table: Vec<Vec<usize>>,
    /// Element represented by each generator.
    pub generators: Vec<usize>,
}

impl FiniteMonoid {
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn eval(&self, w: &Word) -> usize {
        w.letters().iter().fold(0, |m, &x| self.table[m][self.generators[x as usize]])
    }

    /// Exhaustive associativity and identity check.
    pub fn is_monoid(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| self.table[0][a] == a && self.table[a][0] == a)
            && (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| self.table[self.table[a][b]][c] == self.table[a][self.table[b][c]]))
            })
    }

    pub fn violated_relation(&self, p: &MonoidPresentation) -> Option<usize> {
        p.relations().iter().position(|(l, r)| self.eval(l) != self.eval(r))
    }

    /// Builds a monoid from a multiplication table and generator images,
    /// re-indexing elements by shortlex-least representative.
    pub fn from_table(table: Vec<Vec<usize>>, generators: Vec<usize>, p: &MonoidPresentation) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Table("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(Error::Table("rows must have `size` entries below `size`".into()));
        }
        if generators.len() != p.alphabet().len() {
            return Err(Error::Table(format!(
                "{} generator images for {} generators",
                generators.len(),
                p.alphabet().len()
            )));
        }
        if generators.iter().any(|&g| g >= n) {
            return Err(Error::Table("generator image out of range".into()));
        }
        let raw = FiniteMonoid { elements: vec![Word::empty(); n], table, generators };
        if !raw.is_monoid() {
            return Err(Error::Table("table is not an associative monoid with identity 0".into()));
        }

        // breadth-first search visits words in shortlex order
        let mut reps: Vec<Option<Word>> = vec![None; n];
        reps[0] = Some(Word::empty());
        let mut queue = VecDeque::from([(0usize, Word::empty())]);
        while let Some((m, w)) = queue.pop_front() {
            for (x, &g) in raw.generators.iter().enumerate() {
                let t = raw.table[m][g];
                if reps[t].is_none() {
                    let wx = w.concat(&Word::from_letters(vec![x as u32]));
                    reps[t] = Some(wx.clone());
                    queue.push_back((t, wx));
                }
            }
        }
        if reps.iter().any(Option::is_none) {
            return Err(Error::Table("the generators do not generate the table".into()));
        }
        let reps: Vec<Word> = reps.into_iter().map(Option::unwrap).collect();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| reps[a].cmp(&reps[b]));
        let mut new_of = vec![0; n];
        for (k, &old) in order.iter().enumerate() {
            new_of[old] = k;
        }
        let table = order.iter().map(|&a| order.iter().map(|&b| new_of[raw.table[a][b]]).collect()).collect();
        let m = FiniteMonoid {
            elements: order.iter().map(|&a| reps[a].clone()).collect(),
            table,
            generators: raw.generators.iter().map(|&g| new_of[g]).collect(),
        };
        if let Some(index) = m.violated_relation(p) {
            return Err(Error::RelationViolated { index });
        }
        Ok(m)
    }

    /// `size n`, then `n` rows, then a `generators:` line.
    pub fn to_table_text(&self) -> String {
        let mut s = format!("size {}\n", self.size());
        for row in &self.table {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            let _ = writeln!(s, "{}", cells.join(" "));
        }
        let gens: Vec<String> = self.generators.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "generators: {}", gens.join(" "));
        s
    }
}

/// Reads the table format. Without a `generators:` line, generator `k` is
/// element `k + 1`.
pub fn parse_table(text: &str, p: &MonoidPresentation) -> Result<FiniteMonoid> {
    let mut lines = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Table("missing `size n` line".into()))?;
    let n: usize = header
        .strip_prefix("size")
        .and_then(|r| r.trim().parse().ok())
        .ok_or_else(|| Error::Table(format!("expected `size n`, got `{header}`")))?;
    let parse_row = |l: &str| -> Result<Vec<usize>> {
        l.split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Table(format!("not an element index: `{t}`"))))
            .collect()
    };
    let mut table = Vec::with_capacity(n);
    let mut generators = None;
    for l in lines {
        if let Some(rest) = l.strip_prefix("generators:") {
            if generators.is_some() {
                return Err(Error::Table("repeated `generators:` line".into()));
            }
            generators = Some(parse_row(rest)?);
        } else {
            table.push(parse_row(l)?);
        }
    }
    if table.len() != n {
        return Err(Error::Table(format!("expected {n} rows, found {}", table.len())));
    }
    let generators = generators.unwrap_or_else(|| (1..=p.alphabet().len()).collect());
    FiniteMonoid::from_table(table, generators, p)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumeration {
    Stabilized(FiniteMonoid),
    NotStabilized { max_len: usize, reason: String },
}

/// Classes of words of length `≤ bound` under rewriting in both directions,
/// as (class representatives in canonical order, class of each word).
struct Closure {
    reps: Vec<Word>,
    class_of: BTreeMap<Word, usize>,
}

fn closure(p: &MonoidPresentation, bound: usize) -> Closure {
    let words = words_up_to(p.alphabet().len(), bound);
    let index: BTreeMap<&Word, usize> = words.iter().enumerate().map(|(k, w)| (w, k)).collect();
    let mut uf = UnionFind::new(words.len());
    for (k, w) in words.iter().enumerate() {
        for (l, r) in p.relations() {
            for (u, v) in occurrences(w, l) {
                if let Some(&t) = index.get(&Word::concat3(&u, r, &v)) {
                    uf.union(k, t);
                }
            }
        }
    }
    let mut reps = Vec::new();
    let mut root_class = BTreeMap::new();
    let mut class_of = BTreeMap::new();
    for (k, w) in words.iter().enumerate() {
        let root = uf.find(k);
        let c = *root_class.entry(root).or_insert_with(|| {
            reps.push(w.clone());
            reps.len() - 1
        });
        class_of.insert(w.clone(), c);
    }
    Closure { reps, class_of }
}

/// `right[m][x] = class(rep(m)·x)` when every representative is shorter than the bound.
fn right_action(p: &MonoidPresentation, c: &Closure, bound: usize) -> Option<Vec<Vec<usize>>> {
    if c.reps.iter().any(|w| w.len() >= bound) {
        return None;
    }
    let n = p.alphabet().len();
    Some(
        c.reps
            .iter()
            .map(|w| (0..n).map(|x| c.class_of[&w.concat(&Word::from_letters(vec![x as u32]))]).collect())
            .collect(),
    )
}

/// Bounded congruence closure with a two-level stabilization test; a
/// returned monoid has been re-verified against the presentation.
pub fn enumerate_finite_monoid(p: &MonoidPresentation, max_len: usize) -> Enumeration {
    let not = |reason: &str| Enumeration::NotStabilized { max_len, reason: reason.to_string() };
    if max_len < 2 {
        return not("length bound below 2");
    }
    let hi = closure(p, max_len);
    let lo = closure(p, max_len - 1);
    let Some(right) = right_action(p, &hi, max_len) else {
        return not("some class has no representative shorter than the bound");
    };
    match right_action(p, &lo, max_len - 1) {
        Some(r) if r == right && lo.reps == hi.reps => {}
        _ => return not("class structure differs between the last two bounds"),
    }

    let size = hi.reps.len();
    let n = p.alphabet().len();
    let table: Vec<Vec<usize>> = (0..size)
        .map(|a| (0..size).map(|b| hi.reps[b].letters().iter().fold(a, |m, &x| right[m][x as usize])).collect())
        .collect();
    let generators: Vec<usize> = (0..n).map(|x| right[0][x]).collect();
    let m = FiniteMonoid { elements: hi.reps.clone(), table, generators };
    let consistent = (0..size).all(|a| (0..n).all(|x| m.table[a][m.generators[x]] == right[a][x]))
        && (0..size).all(|a| m.eval(&m.elements[a]) == a);
    if !consistent || !m.is_monoid() || m.violated_relation(p).is_some() {
        return not("induced table fails re-verification");
    }
    Enumeration::Stabilized(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    TwoSided,
}

/// Cells are labelled by element/generator/relation index tuples:
/// left `[m]`, `[m, x]`, `[m, i]`; two-sided `[m, m']`, `[m, x, m']`, `[m, i, m']`.
#[derive(Clone, Debug)]
pub struct CayleyComplex {
    pub side: Side,
    pub cells0: Vec<Vec<usize>>,
    pub cells1: Vec<Vec<usize>>,
    pub cells2: Vec<Vec<usize>>,
    /// Tail vertex of each edge.
    pub tails: Vec<usize>,
    /// Common start vertex of the two boundary paths of each 2-cell.
    pub bases: Vec<usize>,
    pub d2: ZMatrix,
    pub d1: ZMatrix,
}

pub fn build_cayley(m: &FiniteMonoid, p: &MonoidPresentation, side: Side) -> Result<CayleyComplex> {
    if let Some(index) = m.violated_relation(p) {
        return Err(Error::RelationViolated { index });
    }
    let size = m.size();
    let n = p.alphabet().len();
    let rels = p.relations();
    let one = Z::one();
    match side {
        Side::Left => {
            let edge = |a: usize, x: usize| a * n + x;
            let cells0 = (0..size).map(|a| vec![a]).collect();
            let cells1: Vec<Vec<usize>> = (0..size).flat_map(|a| (0..n).map(move |x| vec![a, x])).collect();
            let cells2: Vec<Vec<usize>> = (0..size).flat_map(|a| (0..rels.len()).map(move |i| vec![a, i])).collect();
            let d1 = ZMatrix::from_column_sums(
                size,
                cells1
                    .iter()
                    .map(|c| vec![(m.table[c[0]][m.generators[c[1]]], one.clone()), (c[0], -one.clone())])
                    .collect(),
            );
            let path = |start: usize, w: &Word, sign: &Z, out: &mut Vec<(usize, Z)>| {
                let mut cur = start;
                for &x in w.letters() {
                    out.push((edge(cur, x as usize), sign.clone()));
                    cur = m.table[cur][m.generators[x as usize]];
                }
            };
            let d2 = ZMatrix::from_column_sums(
                cells1.len(),
                cells2
                    .iter()
                    .map(|c| {
                        let mut col = Vec::new();
                        path(c[0], &rels[c[1]].1, &one, &mut col);
                        path(c[0], &rels[c[1]].0, &-one.clone(), &mut col);
                        col
                    })
                    .collect(),
            );
            let tails = cells1.iter().map(|c| c[0]).collect();
            let bases = cells2.iter().map(|c| c[0]).collect();
            Ok(CayleyComplex { side, cells0, cells1, cells2, tails, bases, d2, d1 })
        }
        Side::TwoSided => {
            let vertex = |a: usize, b: usize| a * size + b;
            let edge = |a: usize, x: usize, b: usize| (a * n + x) * size + b;
            let cells0 = (0..size).flat_map(|a| (0..size).map(move |b| vec![a, b])).collect();
            let cells1: Vec<Vec<usize>> =
                (0..size).flat_map(|a| (0..n).flat_map(move |x| (0..size).map(move |b| vec![a, x, b]))).collect();
            let cells2: Vec<Vec<usize>> = (0..size)
                .flat_map(|a| (0..rels.len()).flat_map(move |i| (0..size).map(move |b| vec![a, i, b])))
                .collect();
            // (a, x, b): (a, x·b) → (a·x, b)
            let d1 = ZMatrix::from_column_sums(
                size * size,
                cells1
                    .iter()
                    .map(|c| {
                        let g = m.generators[c[1]];
                        vec![
                            (vertex(m.table[c[0]][g], c[2]), one.clone()),
                            (vertex(c[0], m.table[g][c[2]]), -one.clone()),
                        ]
                    })
                    .collect(),
            );
            // letter k of w sits on the edge (a·w_{<k}, w_k, w_{>k}·b)
            let path = |a: usize, w: &Word, b: usize, sign: &Z, out: &mut Vec<(usize, Z)>| {
                let letters = w.letters();
                for k in 0..letters.len() {
                    let left = m.table[a][m.eval(&w.prefix(k))];
                    let right = m.table[m.eval(&w.suffix_from(k + 1))][b];
                    out.push((edge(left, letters[k] as usize, right), sign.clone()));
                }
            };
            let d2 = ZMatrix::from_column_sums(
                cells1.len(),
                cells2
                    .iter()
                    .map(|c| {
                        let mut col = Vec::new();
                        path(c[0], &rels[c[1]].1, c[2], &one, &mut col);
                        path(c[0], &rels[c[1]].0, c[2], &-one.clone(), &mut col);
                        col
                    })
                    .collect(),
            );
            let tails = cells1.iter().map(|c| vertex(c[0], m.table[m.generators[c[1]]][c[2]])).collect();
            let bases = cells2.iter().map(|c| vertex(c[0], m.table[m.eval(&rels[c[1]].0)][c[2]])).collect();
            Ok(CayleyComplex { side, cells0, cells1, cells2, tails, bases, d2, d1 })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    /// Smallest vertex index in the component.
    pub id: usize,
    /// For two-sided complexes, the product `m·m'` shared by its vertices.
    pub product: Option<usize>,
    pub vertices: usize,
    pub edges: usize,
    pub cells: usize,
    pub h1: Homology,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CayleyReport {
    pub side: Side,
    pub vertices: usize,
    pub edges: usize,
    pub cells: usize,
    pub h0_rank: usize,
    pub h1: Homology,
    /// `rank ker d₂`
    pub pi2_rank: usize,
    /// `rank d₂`, the image in `C₁`.
    pub relation_term_rank: usize,
    pub components: Vec<ComponentReport>,
    /// Two-sided: components are in bijection with `M` via `(m, m') ↦ m·m'`.
    pub components_match: bool,
    pub euler_consistent: bool,
    /// Chain-level tooling certifies `H₁ = 0`, not simple connectivity.
    pub note: &'static str,
    pub pass: bool,
}

fn components(c: &CayleyComplex) -> Vec<usize> {
    let mut uf = UnionFind::new(c.cells0.len());
    for j in 0..c.d1.cols() {
        if let [(a, _), (b, _)] = c.d1.column(j) {
            uf.union(*a, *b);
        }
    }
    uf.roots()
}

pub fn cayley_homology_check(m: &FiniteMonoid, c: &CayleyComplex) -> Result<CayleyReport> {
    let (nv, ne, nf) = (c.cells0.len(), c.cells1.len(), c.cells2.len());
    let h0 = homology_at(&ZMatrix::zeros(0, nv), &c.d1)?;
    let h1 = homology_at(&c.d1, &c.d2)?;
    let rank_d2 = rank_z(&c.d2);
    let pi2_rank = nf - rank_d2;

    let comp = components(c);
    let mut ids = comp.clone();
    ids.sort_unstable();
    ids.dedup();
    let mut reports = Vec::with_capacity(ids.len());
    for &id in &ids {
        let verts: Vec<usize> = (0..nv).filter(|&v| comp[v] == id).collect();
        let edges: Vec<usize> = (0..ne).filter(|&e| comp[c.tails[e]] == id).collect();
        let cells: Vec<usize> = (0..nf).filter(|&k| comp[c.bases[k]] == id).collect();
        let h1 = homology_at(&c.d1.submatrix(&verts, &edges), &c.d2.submatrix(&edges, &cells))?;
        let product = match c.side {
            Side::TwoSided => Some(m.mul(c.cells0[id][0], c.cells0[id][1])),
            Side::Left => None,
        };
        reports.push(ComponentReport {
            id,
            product,
            vertices: verts.len(),
            edges: edges.len(),
            cells: cells.len(),
            h1,
        });
    }

    let components_match = match c.side {
        Side::Left => ids.len() == 1,
        Side::TwoSided => {
            let mut by_product: BTreeMap<usize, usize> = BTreeMap::new();
            let mut ok = true;
            for (v, label) in c.cells0.iter().enumerate() {
                let prod = m.mul(label[0], label[1]);
                ok &= *by_product.entry(prod).or_insert(comp[v]) == comp[v];
            }
            ok && by_product.len() == m.size() && ids.len() == m.size()
        }
    };
    let expected_h0 = match c.side {
        Side::Left => 1,
        Side::TwoSided => m.size(),
    };
    let euler_consistent = nf as i64 - ne as i64 + nv as i64 == pi2_rank as i64 - h1.betti as i64 + h0.betti as i64;
    let h1_zero = h1.betti == 0 && h1.torsion.is_empty();
    let pass = h1_zero
        && h0.torsion.is_empty()
        && h0.betti == expected_h0
        && components_match
        && euler_consistent
        && reports.iter().all(|r| r.h1.betti == 0 && r.h1.torsion.is_empty());
    Ok(CayleyReport {
        side: c.side,
        vertices: nv,
        edges: ne,
        cells: nf,
        h0_rank: h0.betti,
        h1,
        pi2_rank,
        relation_term_rank: rank_d2,
        components: reports,
        components_match,
        euler_consistent,
        note: "H1-verified",
        pass,
    })
}
