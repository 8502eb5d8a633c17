//! Signed words over the generators of a defining graph.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::graph::DefiningGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new() -> Self {
        Word(Vec::new())
    }

    pub fn from_gens(gens: &[usize]) -> Self {
        Word(gens.iter().map(|&g| Letter::pos(g)).collect())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::new();
        for _ in 0..n.unsigned_abs() {
            out.extend(&base);
        }
        out
    }

    /// Cancels adjacent `x x^{-1}` pairs.
    pub fn freely_reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn support(&self) -> GenSet {
        GenSet::from_indices(self.0.iter().map(|l| l.gen))
    }

    /// Exponent sum per generator.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for l in &self.0 {
            v[l.gen] += if l.inverse { -1 } else { 1 };
        }
        v
    }

    /// Parses `s t s^{-1}`, `s^-1`, `s^{3}`; `e` or an empty string is the identity.
    pub fn parse(graph: &DefiningGraph, text: &str) -> Result<Word> {
        let mut out = Word::new();
        for tok in text.split_whitespace() {
            if tok == "e" || tok == "ε" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                None => (tok, 1i64),
                Some((name, e)) => {
                    let e = e.trim_start_matches('{').trim_end_matches('}');
                    let e: i64 = e
                        .parse()
                        .map_err(|_| Error::Parse { line: 1, msg: format!("bad exponent in `{tok}`") })?;
                    (name, e)
                }
            };
            let gen = graph.index_of(name)?;
            out.extend(&Word::letter(Letter::pos(gen)).pow(exp));
        }
        Ok(out)
    }

    pub fn display<'a>(&'a self, graph: &'a DefiningGraph) -> WordDisplay<'a> {
        WordDisplay { word: self, graph }
    }

    pub fn render(&self, graph: &DefiningGraph) -> String {
        self.display(graph).to_string()
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    graph: &'a DefiningGraph,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("e");
        }
        for (k, l) in self.word.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.graph.name(l.gen))?;
            if l.inverse {
                f.write_str("^{-1}")?;
            }
        }
        Ok(())
    }
}

/// All freely reduced words of length exactly `len` over the letters of `gens`,
/// in ShortLex order (generator index, positive before inverse).
pub fn reduced_words_of_length(gens: GenSet, len: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = gens.iter().flat_map(|g| [Letter::pos(g), Letter::neg(g)]).collect();
    let mut layer = vec![Word::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &alphabet {
                if w.0.last() == Some(&l.inv()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        layer = next;
    }
    layer
}

/// All freely reduced words of length `<= max_len`, shortest first.
pub fn reduced_words_up_to(gens: GenSet, max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(|k| reduced_words_of_length(gens, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        let g = DefiningGraph::parse("s t 3").unwrap();
        let w = Word::parse(&g, "s t s^{-1} t^-1 s^2").unwrap();
        assert_eq!(w.len(), 6);
        assert_eq!(w.render(&g), "s t s^{-1} t^{-1} s s");
        assert_eq!(Word::parse(&g, "e").unwrap(), Word::new());
        assert!(Word::parse(&g, "x").is_err());
        assert_eq!(Word::new().render(&g), "e");
    }

    #[test]
    fn inverse_and_reduction() {
        let w = Word(vec![Letter::pos(0), Letter::neg(1)]);
        assert_eq!(w.concat(&w.inverse()).freely_reduced(), Word::new());
        assert_eq!(w.pow(-2).len(), 4);
    }

    #[test]
    fn counts_reduced_words() {
        // 4 letters, branching 3 after the first.
        assert_eq!(reduced_words_of_length(GenSet::full(2), 3).len(), 4 * 3 * 3);
        assert_eq!(reduced_words_up_to(GenSet::full(2), 2).len(), 1 + 4 + 12);
    }
}
