//! The free associative algebra over the rationals.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{parse_rational, Q};
use crate::words::{Alphabet, Word, UNIT_TOKEN};

/// A finitely supported rational combination of words. No stored coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NcPoly {
    terms: BTreeMap<Word, Q>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomogeneousDegree {
    Zero,
    Degree(usize),
    Inhomogeneous,
}

impl NcPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), Q::one())
    }

    pub fn monomial(w: Word, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, Q::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Q)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &Q) -> NcPoly {
        if s.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, c)| (w.clone(), c * s)).collect() }
    }

    /// Bilinear extension of word concatenation.
    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    /// `u · self · v` for words `u`, `v`.
    pub fn sandwich(&self, u: &Word, v: &Word) -> NcPoly {
        NcPoly { terms: self.terms.iter().map(|(w, c)| (Word::concat3(u, w, v), c.clone())).collect() }
    }

    pub fn homogeneous_degree(&self) -> HomogeneousDegree {
        let mut lens = self.terms.keys().map(Word::len);
        match lens.next() {
            None => HomogeneousDegree::Zero,
            Some(d) if lens.all(|l| l == d) => HomogeneousDegree::Degree(d),
            Some(_) => HomogeneousDegree::Inhomogeneous,
        }
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    /// Parses `+`/`-` separated terms, each an optional integer or `a/b`
    /// coefficient followed by space-separated generator tokens (`1` is the unit).
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<NcPoly> {
        let normalized = text.replace('−', "-");
        let mut tokens: Vec<String> = Vec::new();
        for raw in normalized.split_whitespace() {
            let mut cur = String::new();
            for ch in raw.chars() {
                if ch == '+' || ch == '-' {
                    if !cur.is_empty() {
                        tokens.push(std::mem::take(&mut cur));
                    }
                    tokens.push(ch.to_string());
                } else {
                    cur.push(ch);
                }
            }
            if !cur.is_empty() {
                tokens.push(cur);
            }
        }
        if tokens.is_empty() {
            return Err(malformed("empty polynomial"));
        }

        let mut poly = NcPoly::zero();
        let mut i = 0;
        let mut first = true;
        while i < tokens.len() {
            let mut sign = Q::one();
            if tokens[i] == "+" || tokens[i] == "-" {
                if tokens[i] == "-" {
                    sign = -sign;
                }
                i += 1;
            } else if !first {
                return Err(malformed("missing operator between terms"));
            }
            first = false;
            let start = i;
            while i < tokens.len() && tokens[i] != "+" && tokens[i] != "-" {
                i += 1;
            }
            let term: Vec<&str> = tokens[start..i].iter().map(String::as_str).collect();
            if term.is_empty() {
                return Err(malformed("dangling sign"));
            }
            let (coef, word_toks) = match parse_rational(term[0]) {
                Some(c) if term.len() > 1 || term[0] != UNIT_TOKEN => (c, &term[1..]),
                _ => (Q::one(), &term[..]),
            };
            let w = if word_toks.is_empty() { Word::empty() } else { alphabet.word_from_tokens(word_toks)? };
            poly.add_term(w, sign * coef);
        }
        Ok(poly)
    }

    pub fn to_text(&self, alphabet: &Alphabet) -> String {
        self.render(alphabet, "−")
    }

    /// Rendering accepted by the presentation parser (ASCII minus).
    pub fn to_source(&self, alphabet: &Alphabet) -> String {
        self.render(alphabet, "-")
    }

    fn render(&self, alphabet: &Alphabet, minus: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => out.push_str(minus),
                (0, false) => {}
                (_, true) => out.push_str(&format!(" {minus} ")),
                (_, false) => out.push_str(" + "),
            }
            let mag = c.abs();
            let word = alphabet.format_word(w);
            if mag.is_one() {
                out.push_str(&word);
            } else if w.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                out.push_str(&format!("{mag} {word}"));
            }
        }
        out
    }
}

fn malformed(msg: &str) -> Error {
    Error::Parse { line: 0, msg: format!("malformed polynomial: {msg}") }
}

impl fmt::Display for NcPoly {
    /// Index-form words; see [`NcPoly::to_text`] for generator names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}·{w}")).collect();
        f.write_str(&parts.join(" + "))
    }
}
