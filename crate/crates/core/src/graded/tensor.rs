use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::Result;
use crate::freealg::NcPoly;
use crate::linalg::Q;
use crate::presentation::AlgebraPresentation;
use crate::words::Word;

/// A basis element `u ⊗ r̄ᵢ ⊗ v` of `KX* ⊗ KR ⊗ KX*`.
pub type FrLabel = (Word, usize, Word);

/// A finitely supported element of `KX* ⊗ KR ⊗ KX*`, independent of grading.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrElement {
    terms: BTreeMap<FrLabel, Q>,
}

impl FrElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, label: FrLabel, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(label) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FrLabel, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FrElement) -> FrElement {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> FrElement {
        FrElement { terms: self.terms.iter().map(|(l, c)| (l.clone(), -c)).collect() }
    }

    /// `left · self · right` for words acting on the outer tensor factors.
    pub fn sandwich(&self, left: &Word, right: &Word) -> FrElement {
        FrElement {
            terms: self.terms.iter().map(|((u, i, v), c)| ((left.concat(u), *i, v.concat(right)), c.clone())).collect(),
        }
    }

    pub fn left_mul(&self, p: &NcPoly) -> FrElement {
        let mut out = FrElement::zero();
        for (w, a) in p.terms() {
            for ((u, i, v), c) in &self.terms {
                out.add_term((w.concat(u), *i, v.clone()), a * c);
            }
        }
        out
    }

    pub fn right_mul(&self, p: &NcPoly) -> FrElement {
        let mut out = FrElement::zero();
        for (w, a) in p.terms() {
            for ((u, i, v), c) in &self.terms {
                out.add_term((u.clone(), *i, v.concat(w)), a * c);
            }
        }
        out
    }

    /// `α(u ⊗ r̄ ⊗ v) = u r v`.
    pub fn alpha(&self, p: &AlgebraPresentation) -> NcPoly {
        let mut out = NcPoly::zero();
        for ((u, i, v), c) in &self.terms {
            out = out.add(&p.relations()[*i].sandwich(u, v).scale(c));
        }
        out
    }
}

/// `1 ⊗ r̄ᵢ ⊗ u rⱼ − rᵢ u ⊗ r̄ⱼ ⊗ 1`, expanded over tensor monomials.
pub fn bracket(p: &AlgebraPresentation, i: usize, u: &Word, j: usize) -> Result<FrElement> {
    let ri = p.relation(i)?;
    let rj = p.relation(j)?;
    let mut out = FrElement::zero();
    for (w, c) in rj.terms() {
        out.add_term((Word::empty(), i, u.concat(w)), c.clone());
    }
    for (w, c) in ri.terms() {
        out.add_term((w.concat(u), j, Word::empty()), -c.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, Presentation};

    fn alg(src: &str) -> AlgebraPresentation {
        match parse_presentation(src).unwrap() {
            Presentation::Algebra(a) => a,
            _ => unreachable!(),
        }
    }

    #[test]
    fn bracket_of_square() {
        let p = alg("kind: algebra\ngenerators: x\nrelation: x x");
        let b = bracket(&p, 0, &Word::empty(), 0).unwrap();
        let xx = p.alphabet().parse_word("x x").unwrap();
        let mut expected = FrElement::zero();
        expected.add_term((Word::empty(), 0, xx.clone()), crate::linalg::q(1));
        expected.add_term((xx, 0, Word::empty()), crate::linalg::q(-1));
        assert_eq!(b, expected);
        assert!(b.alpha(&p).is_zero());
    }

    #[test]
    fn bracket_of_commutator() {
        let p = alg("kind: algebra\ngenerators: x y\nrelation: x y - y x");
        let x = p.alphabet().parse_word("x").unwrap();
        let b = bracket(&p, 0, &x, 0).unwrap();
        assert_eq!(b.len(), 4);
        assert!(b.terms().all(|((u, _, v), _)| u.len() + 2 + v.len() == 5));
        assert!(b.alpha(&p).is_zero());
        assert!(bracket(&p, 1, &x, 0).is_err());
    }
}
