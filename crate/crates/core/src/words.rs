//! Generator alphabets and words of the free monoid.
//!
//! Words hold generator indices only; the symbol text lives in [`Alphabet`].
//! The canonical order on words is length first, then lexicographic by
//! generator index, and every basis in the crate is indexed in that order.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Token reserved for the empty word in presentation files.
pub const UNIT_TOKEN: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for name in names {
            let name = name.as_ref();
            if name.is_empty() {
                return Err(Error::Alphabet("empty generator name".into()));
            }
            if name == UNIT_TOKEN {
                return Err(Error::Alphabet("`1` is reserved for the empty word".into()));
            }
            if name.chars().any(|c| c.is_whitespace() || "+-−=#/".contains(c)) {
                return Err(Error::Alphabet(format!("generator `{name}` contains a reserved character")));
            }
            if name.chars().all(|c| c.is_ascii_digit()) {
                return Err(Error::Alphabet(format!("generator `{name}` is numeric")));
            }
            if out.iter().any(|n| n == name) {
                return Err(Error::Alphabet(format!("duplicate generator `{name}`")));
            }
            out.push(name.to_string());
        }
        Ok(Self { names: out })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, letter: u32) -> &str {
        &self.names[letter as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }

    pub fn letter(&self, name: &str) -> Result<Word> {
        self.index_of(name)
            .map(|i| Word::from_letters(vec![i]))
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Parses space-separated generator tokens; `1` alone is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        self.word_from_tokens(&tokens)
    }

    pub fn word_from_tokens(&self, tokens: &[&str]) -> Result<Word> {
        if tokens == [UNIT_TOKEN] {
            return Ok(Word::empty());
        }
        let mut letters = Vec::with_capacity(tokens.len());
        for tok in tokens {
            let i = self.index_of(tok).ok_or_else(|| Error::UnknownGenerator(tok.to_string()))?;
            letters.push(i);
        }
        Ok(Word::from_letters(letters))
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.letters().iter().all(|&l| (l as usize) < self.names.len())
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return UNIT_TOKEN.to_string();
        }
        w.letters().iter().map(|&l| self.name(l)).collect::<Vec<_>>().join(" ")
    }
}

/// An element of the free monoid: a finite sequence of generator indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<u32>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn concat3(a: &Word, b: &Word, c: &Word) -> Word {
        let mut v = Vec::with_capacity(a.len() + b.len() + c.len());
        v.extend_from_slice(&a.0);
        v.extend_from_slice(&b.0);
        v.extend_from_slice(&c.0);
        Word(v)
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn prefix(&self, len: usize) -> Word {
        self.slice(0, len)
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        self.slice(start, self.len())
    }

    /// Position of this word among all words of its length over `n` letters.
    pub fn rank(&self, n: usize) -> usize {
        self.0.iter().fold(0usize, |acc, &l| acc * n + l as usize)
    }

    /// Inverse of [`Word::rank`].
    pub fn from_rank(mut rank: usize, len: usize, n: usize) -> Word {
        let mut letters = vec![0u32; len];
        for slot in letters.iter_mut().rev() {
            *slot = (rank % n) as u32;
            rank /= n;
        }
        Word(letters)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Index form, e.g. `0.1.1`; use [`Alphabet::format_word`] for names.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

/// Number of words of length `d` over `n` letters.
pub fn count_words(n: usize, d: usize) -> usize {
    n.checked_pow(d as u32).expect("word count overflows usize")
}

/// All words of length `d` in canonical order.
pub fn enumerate_words(alphabet: &Alphabet, d: usize) -> Vec<Word> {
    words_of_length(alphabet.len(), d)
}

pub fn words_of_length(n: usize, d: usize) -> Vec<Word> {
    if n == 0 {
        return if d == 0 { vec![Word::empty()] } else { Vec::new() };
    }
    (0..count_words(n, d)).map(|r| Word::from_rank(r, d, n)).collect()
}

/// All words of length at most `max_len`, in canonical order.
pub fn words_up_to(n: usize, max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(|d| words_of_length(n, d)).collect()
}

pub fn concat(u: &Word, v: &Word) -> Word {
    u.concat(v)
}

/// Every factorization `w = u · pattern · v`, ordered by `|u|`.
///
/// Overlapping occurrences are all reported. An empty pattern occurs at
/// every split point of `w`.
pub fn occurrences(w: &Word, pattern: &Word) -> Vec<(Word, Word)> {
    let (wl, pl) = (w.len(), pattern.len());
    if pl > wl {
        return Vec::new();
    }
    (0..=wl - pl).filter(|&i| w.0[i..i + pl] == pattern.0[..]).map(|i| (w.prefix(i), w.suffix_from(i + pl))).collect()
}
