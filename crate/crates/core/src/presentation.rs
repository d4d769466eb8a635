//! Algebra and monoid presentations, their text format, and conversion.
//!
//! ```text
//! # commutative monoid on two generators
//! kind: monoid
//! generators: x y
//! relation: x y = y x
//! ```
//!
//! Algebra relations are polynomials (`relation: x y - 2 y x`); monoid
//! relations are word pairs with `1` standing for the empty word. The order
//! of `relation:` lines fixes the relation indices used everywhere else.

use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::freealg::{HomogeneousDegree, NcPoly};
use crate::linalg::Q;
use crate::words::{Alphabet, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    alphabet: Alphabet,
    relations: Vec<NcPoly>,
}

impl AlgebraPresentation {
    pub fn new(alphabet: Alphabet, relations: Vec<NcPoly>) -> Result<Self> {
        for (i, r) in relations.iter().enumerate() {
            if r.is_zero() {
                return Err(Error::Parse { line: 0, msg: format!("relation {i} is the zero polynomial") });
            }
            if !r.terms().all(|(w, _)| alphabet.contains(w)) {
                return Err(Error::Index(format!("relation {i} uses a letter outside the alphabet")));
            }
        }
        Ok(Self { alphabet, relations })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }

    pub fn relation(&self, i: usize) -> Result<&NcPoly> {
        self.relations.get(i).ok_or_else(|| Error::Index(format!("relation {i} of {}", self.relations.len())))
    }

    /// Per-relation degrees when every relation is homogeneous.
    pub fn degrees(&self) -> Option<Vec<usize>> {
        self.relations
            .iter()
            .map(|r| match r.homogeneous_degree() {
                HomogeneousDegree::Degree(d) => Some(d),
                _ => None,
            })
            .collect()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        match self.degrees() {
            Some(ds) => Homogeneity::Graded(ds),
            None => Homogeneity::Inhomogeneous,
        }
    }

    pub fn to_source(&self) -> String {
        let mut s = String::from("kind: algebra\n");
        s.push_str(&format!("generators: {}\n", self.alphabet.names().join(" ")));
        for r in &self.relations {
            s.push_str(&format!("relation: {}\n", r.to_source(&self.alphabet)));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPresentation {
    alphabet: Alphabet,
    relations: Vec<(Word, Word)>,
}

impl MonoidPresentation {
    pub fn new(alphabet: Alphabet, relations: Vec<(Word, Word)>) -> Result<Self> {
        for (i, (l, r)) in relations.iter().enumerate() {
            if l == r {
                return Err(Error::Parse { line: 0, msg: format!("trivial relation {i}: both sides are equal") });
            }
            if !alphabet.contains(l) || !alphabet.contains(r) {
                return Err(Error::Index(format!("relation {i} uses a letter outside the alphabet")));
            }
        }
        Ok(Self { alphabet, relations })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn is_length_homogeneous(&self) -> bool {
        self.relations.iter().all(|(l, r)| l.len() == r.len())
    }

    pub fn homogeneity(&self) -> Homogeneity {
        if self.is_length_homogeneous() {
            Homogeneity::LengthHomogeneous
        } else {
            Homogeneity::Inhomogeneous
        }
    }

    pub fn to_source(&self) -> String {
        let mut s = String::from("kind: monoid\n");
        s.push_str(&format!("generators: {}\n", self.alphabet.names().join(" ")));
        for (l, r) in &self.relations {
            s.push_str(&format!("relation: {} = {}\n", self.alphabet.format_word(l), self.alphabet.format_word(r)));
        }
        s
    }
}

/// The algebra presentation with relation `r − ℓ` for each pair `(ℓ, r)`.
pub fn monoid_to_algebra(p: &MonoidPresentation) -> AlgebraPresentation {
    let relations =
        p.relations.iter().map(|(l, r)| NcPoly::word(r.clone()).sub(&NcPoly::monomial(l.clone(), Q::one()))).collect();
    AlgebraPresentation { alphabet: p.alphabet.clone(), relations }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    Algebra(AlgebraPresentation),
    Monoid(MonoidPresentation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Graded(Vec<usize>),
    LengthHomogeneous,
    Inhomogeneous,
}

impl Homogeneity {
    pub fn label(&self) -> &'static str {
        match self {
            Homogeneity::Graded(_) => "graded",
            Homogeneity::LengthHomogeneous => "length-homogeneous",
            Homogeneity::Inhomogeneous => "inhomogeneous",
        }
    }
}

impl Presentation {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Presentation::Algebra(p) => p.alphabet(),
            Presentation::Monoid(p) => p.alphabet(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Presentation::Algebra(_) => "algebra",
            Presentation::Monoid(_) => "monoid",
        }
    }

    pub fn homogeneity(&self) -> Homogeneity {
        match self {
            Presentation::Algebra(p) => p.homogeneity(),
            Presentation::Monoid(p) => p.homogeneity(),
        }
    }

    /// The graded algebra presentation the bimodule pipeline runs on, if any.
    pub fn graded_algebra(&self) -> Option<AlgebraPresentation> {
        match self {
            Presentation::Algebra(p) => p.degrees().map(|_| p.clone()),
            Presentation::Monoid(p) if p.is_length_homogeneous() => Some(monoid_to_algebra(p)),
            Presentation::Monoid(_) => None,
        }
    }

    pub fn to_source(&self) -> String {
        match self {
            Presentation::Algebra(p) => p.to_source(),
            Presentation::Monoid(p) => p.to_source(),
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_source())
    }
}

fn at(line: usize, e: Error) -> Error {
    match e {
        Error::Parse { msg, .. } => Error::Parse { line, msg },
        Error::UnknownGenerator(g) => Error::Parse { line, msg: format!("unknown generator `{g}`") },
        Error::Alphabet(msg) => Error::Parse { line, msg },
        other => other,
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut kind: Option<(usize, String)> = None;
    let mut generators: Option<(usize, Vec<String>)> = None;
    let mut relations: Vec<(usize, String)> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once(':')
            .ok_or_else(|| Error::Parse { line, msg: format!("expected `key: value`, got `{content}`") })?;
        let value = value.trim();
        match key.trim() {
            "kind" => {
                if kind.is_some() {
                    return Err(Error::Parse { line, msg: "repeated `kind`".into() });
                }
                kind = Some((line, value.to_string()));
            }
            "generators" => {
                if generators.is_some() {
                    return Err(Error::Parse { line, msg: "repeated `generators`".into() });
                }
                generators = Some((line, value.split_whitespace().map(str::to_string).collect()));
            }
            "relation" => relations.push((line, value.to_string())),
            other => return Err(Error::Parse { line, msg: format!("unknown key `{other}`") }),
        }
    }

    let (kind_line, kind) = kind.ok_or_else(|| Error::Parse { line: 0, msg: "missing `kind`".into() })?;
    let (gen_line, names) = generators.ok_or_else(|| Error::Parse { line: 0, msg: "missing `generators`".into() })?;
    let alphabet = Alphabet::new(&names).map_err(|e| at(gen_line, e))?;

    match kind.as_str() {
        "algebra" => {
            let mut rels = Vec::with_capacity(relations.len());
            for (line, src) in &relations {
                if src.contains('=') {
                    return Err(Error::Parse {
                        line: *line,
                        msg: "algebra relations are polynomials, not equations".into(),
                    });
                }
                let p = NcPoly::parse(src, &alphabet).map_err(|e| at(*line, e))?;
                if p.is_zero() {
                    return Err(Error::Parse { line: *line, msg: "zero relation".into() });
                }
                rels.push(p);
            }
            Ok(Presentation::Algebra(AlgebraPresentation { alphabet, relations: rels }))
        }
        "monoid" => {
            let mut rels = Vec::with_capacity(relations.len());
            for (line, src) in &relations {
                let (l, r) = src
                    .split_once('=')
                    .ok_or_else(|| Error::Parse { line: *line, msg: "expected `word = word`".into() })?;
                if l.trim().is_empty() || r.trim().is_empty() || r.contains('=') {
                    return Err(Error::Parse { line: *line, msg: "expected `word = word`".into() });
                }
                let l = alphabet.parse_word(l).map_err(|e| at(*line, e))?;
                let r = alphabet.parse_word(r).map_err(|e| at(*line, e))?;
                if l == r {
                    return Err(Error::Parse { line: *line, msg: "trivial relation".into() });
                }
                rels.push((l, r));
            }
            Ok(Presentation::Monoid(MonoidPresentation { alphabet, relations: rels }))
        }
        other => Err(Error::Parse { line: kind_line, msg: format!("unknown kind `{other}`") }),
    }
}
