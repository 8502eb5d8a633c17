//! Word problem for FC-type Artin groups.
//!
//! A non-spherical `A_Y` splits along the first non-adjacent pair `(a, b)` as
//! `A_{Y∖a} ∗_{A_{Y∖{a,b}}} A_{Y∖b}`; spherical pieces are Garside leaves.
//! Elements at a split node are stored as `c · r_1 ⋯ r_n` with `c` in the
//! edge group and the `r_i` canonical right coset representatives taken from
//! alternating factors. Representatives are `ρ_Z(h)^{-1} h` for the
//! retraction `ρ_Z` onto the edge group.

use rustc_hash::FxHashMap as HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::garside::{ArtinElement, GarsideGroup};
use crate::genset::GenSet;
use crate::graph::DefiningGraph;
use crate::retraction::Retraction;
use crate::word::{Letter, Word};

/// Which factor of a split a syllable comes from: 0 is `A_{Y∖a}`, 1 is `A_{Y∖b}`.
pub type Factor = u8;

/// Normal form of an element; the node it lives at is implicit.
///
/// Each form carries a word for itself, built bottom-up, so rendering is a copy.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FcWord {
    Leaf {
        element: ArtinElement,
        word: Word,
    },
    Split {
        carry: Box<FcWord>,
        syllables: Vec<(Factor, FcWord)>,
        word: Word,
    },
}

impl FcWord {
    fn split(carry: FcWord, syllables: Vec<(Factor, FcWord)>) -> FcWord {
        let mut word = carry.word().clone();
        for (_, r) in &syllables {
            word.extend(r.word());
        }
        FcWord::Split {
            carry: Box::new(carry),
            syllables,
            word,
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            FcWord::Leaf { element, .. } => element.is_identity(),
            FcWord::Split { carry, syllables, .. } => syllables.is_empty() && carry.is_identity(),
        }
    }

    /// A word representing the element, read off the form.
    pub fn word(&self) -> &Word {
        match self {
            FcWord::Leaf { word, .. } | FcWord::Split { word, .. } => word,
        }
    }
}

/// Shape of the decomposition, for display and export.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AmalgamTree {
    Leaf {
        subset: GenSet,
    },
    Split {
        subset: GenSet,
        pair: (usize, usize),
        left: Box<AmalgamTree>,
        right: Box<AmalgamTree>,
        edge: Box<AmalgamTree>,
    },
}

impl AmalgamTree {
    pub fn subset(&self) -> GenSet {
        match self {
            AmalgamTree::Leaf { subset } | AmalgamTree::Split { subset, .. } => *subset,
        }
    }

    pub fn leaves(&self) -> Vec<GenSet> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_leaves(&self, out: &mut Vec<GenSet>) {
        match self {
            AmalgamTree::Leaf { subset } => out.push(*subset),
            AmalgamTree::Split { left, right, edge, .. } => {
                left.collect_leaves(out);
                right.collect_leaves(out);
                edge.collect_leaves(out);
            }
        }
    }
}

#[derive(Debug)]
enum Node {
    Leaf(Arc<GarsideGroup>),
    Split {
        pair: (usize, usize),
        left: GenSet,
        right: GenSet,
        edge: GenSet,
    },
}

/// An FC-type Artin group with its full decomposition.
#[derive(Debug)]
pub struct FcGroup {
    graph: DefiningGraph,
    nodes: HashMap<GenSet, Node>,
    retraction: Retraction,
}

impl FcGroup {
    pub fn new(graph: &DefiningGraph) -> Result<Self> {
        if !graph.is_fc_type() {
            return Err(Error::NotFcType);
        }
        let mut nodes = HashMap::default();
        build(graph, graph.all(), &mut nodes)?;
        Ok(Self {
            graph: graph.clone(),
            nodes,
            retraction: Retraction::new(graph),
        })
    }

    pub fn graph(&self) -> &DefiningGraph {
        &self.graph
    }

    pub fn retraction(&self) -> &Retraction {
        &self.retraction
    }

    pub fn tree(&self) -> AmalgamTree {
        self.tree_at(self.graph.all())
    }

    fn tree_at(&self, y: GenSet) -> AmalgamTree {
        match &self.nodes[&y] {
            Node::Leaf(_) => AmalgamTree::Leaf { subset: y },
            Node::Split { pair, left, right, edge } => AmalgamTree::Split {
                subset: y,
                pair: *pair,
                left: Box::new(self.tree_at(*left)),
                right: Box::new(self.tree_at(*right)),
                edge: Box::new(self.tree_at(*edge)),
            },
        }
    }

    /// Garside structure of a spherical subset reached by the decomposition.
    pub fn leaf_group(&self, y: GenSet) -> Option<&Arc<GarsideGroup>> {
        match self.nodes.get(&y) {
            Some(Node::Leaf(g)) => Some(g),
            _ => None,
        }
    }

    pub fn identity(&self) -> FcWord {
        self.identity_at(self.graph.all())
    }

    fn identity_at(&self, y: GenSet) -> FcWord {
        match &self.nodes[&y] {
            Node::Leaf(g) => FcWord::Leaf {
                element: g.identity(),
                word: Word::new(),
            },
            Node::Split { edge, .. } => FcWord::split(self.identity_at(*edge), Vec::new()),
        }
    }

    fn check_word(&self, word: &Word) -> Result<()> {
        match word.letters().iter().find(|l| l.gen >= self.graph.len()) {
            Some(l) => Err(Error::LetterOutsideAmbient(l.gen.to_string())),
            None => Ok(()),
        }
    }

    pub fn normal_form(&self, word: &Word) -> Result<FcWord> {
        self.check_word(word)?;
        Ok(self.normalize_at(self.graph.all(), word))
    }

    fn normalize_at(&self, y: GenSet, word: &Word) -> FcWord {
        let mut f = self.identity_at(y);
        for &l in word.letters().iter().rev() {
            f = self.left_mul_at(y, l, f);
        }
        f
    }

    /// `ℓ · f` for a letter of the ambient set.
    pub fn left_mul_letter(&self, l: Letter, f: &FcWord) -> Result<FcWord> {
        self.check_word(&Word::letter(l))?;
        Ok(self.left_mul_at(self.graph.all(), l, f.clone()))
    }

    fn left_mul_at(&self, y: GenSet, l: Letter, f: FcWord) -> FcWord {
        debug_assert!(y.contains(l.gen));
        match (&self.nodes[&y], f) {
            (Node::Leaf(g), FcWord::Leaf { mut element, .. }) => {
                g.mul_letter_left(l, &mut element).expect("letter inside leaf");
                let word = g.to_short_word(&element);
                FcWord::Leaf { element, word }
            }
            (Node::Split { pair, left, right, edge }, FcWord::Split { carry, mut syllables, .. }) => {
                if edge.contains(l.gen) {
                    return FcWord::split(self.left_mul_at(*edge, l, *carry), syllables);
                }
                let side: Factor = if l.gen == pair.1 { 0 } else { 1 };
                let factor = if side == 0 { *left } else { *right };
                // h = ℓ c r_1 (r_1 only if it sits in the same factor).
                let mut prefix = Word::letter(l);
                prefix.extend(carry.word());
                let mut h = prefix.clone();
                let mut base = None;
                if syllables.first().map(|s| s.0) == Some(side) {
                    let (_, r) = syllables.remove(0);
                    h.extend(r.word());
                    base = Some(r);
                }
                let pi = self.retraction.retract(*edge, &h);
                let mut rep = base.unwrap_or_else(|| self.identity_at(factor));
                for &x in pi.inverse().concat(&prefix).freely_reduced().letters().iter().rev() {
                    rep = self.left_mul_at(factor, x, rep);
                }
                if !rep.is_identity() {
                    syllables.insert(0, (side, rep));
                }
                FcWord::split(self.normalize_at(*edge, &pi), syllables)
            }
            _ => unreachable!("form does not match node"),
        }
    }

    /// A word representing the form.
    pub fn render(&self, f: &FcWord) -> Word {
        f.word().clone()
    }

    pub fn multiply(&self, a: &FcWord, b: &FcWord) -> FcWord {
        let y = self.graph.all();
        let mut out = b.clone();
        for &l in self.render(a).letters().iter().rev() {
            out = self.left_mul_at(y, l, out);
        }
        out
    }

    pub fn invert(&self, a: &FcWord) -> FcWord {
        self.normalize_at(self.graph.all(), &self.render(a).inverse())
    }

    /// `h x h^{-1}`.
    pub fn conjugate(&self, h: &FcWord, x: &FcWord) -> FcWord {
        self.multiply(&self.multiply(h, x), &self.invert(h))
    }

    pub fn equal_words(&self, w1: &Word, w2: &Word) -> Result<bool> {
        Ok(self.normal_form(w1)? == self.normal_form(w2)?)
    }

    /// Whether the element lies in the standard parabolic `A_X`, for any `X ⊆ S`.
    pub fn member(&self, f: &FcWord, x: GenSet) -> Result<bool> {
        if !x.is_subset(self.graph.all()) {
            return Err(Error::NotASubset);
        }
        let w = self.render(f);
        let p = self.retraction.retract(x, &w);
        Ok(self.normalize_at(self.graph.all(), &p) == *f)
    }

    /// Smallest `X` with the element in `A_X`.
    pub fn support(&self, f: &FcWord) -> GenSet {
        let mut x = self.graph.all();
        for g in self.graph.all().iter() {
            let smaller = x.without(g);
            if self.member(f, smaller).expect("subset of S") {
                x = smaller;
            }
        }
        x
    }

    /// Canonical element of the left coset `f A_X`.
    pub fn left_coset_rep(&self, f: &FcWord, x: GenSet) -> FcWord {
        let w = self.retraction.left_coset_word(x, &self.render(f));
        self.normalize_at(self.graph.all(), &w)
    }

    /// Canonical element of the right coset `A_X f`.
    pub fn right_coset_rep(&self, f: &FcWord, x: GenSet) -> FcWord {
        let w = self.retraction.right_coset_word(x, &self.render(f));
        self.normalize_at(self.graph.all(), &w)
    }

    /// Nested bracket form; leaves use the Garside serialization.
    pub fn serialize(&self, f: &FcWord) -> String {
        let mut out = String::new();
        self.serialize_at(self.graph.all(), f, &mut out);
        out
    }

    fn serialize_at(&self, y: GenSet, f: &FcWord, out: &mut String) {
        match (&self.nodes[&y], f) {
            (Node::Leaf(g), FcWord::Leaf { element, .. }) => out.push_str(&g.serialize(element, &self.graph)),
            (Node::Split { left, right, edge, .. }, FcWord::Split { carry, syllables, .. }) => {
                out.push('[');
                self.serialize_at(*edge, carry, out);
                for (side, r) in syllables {
                    let _ = write!(out, " ; {}:", if *side == 0 { 'L' } else { 'R' });
                    self.serialize_at(if *side == 0 { *left } else { *right }, r, out);
                }
                out.push(']');
            }
            _ => unreachable!("form does not match node"),
        }
    }
}

fn build(graph: &DefiningGraph, y: GenSet, nodes: &mut HashMap<GenSet, Node>) -> Result<()> {
    if nodes.contains_key(&y) {
        return Ok(());
    }
    if graph.is_finite_type(y)? {
        nodes.insert(y, Node::Leaf(Arc::new(GarsideGroup::new(graph, y)?)));
        return Ok(());
    }
    let pair = y
        .iter()
        .flat_map(|a| y.iter().filter(move |&b| b > a).map(move |b| (a, b)))
        .find(|&(a, b)| !graph.adjacent(a, b))
        .ok_or(Error::NotFcType)?;
    let (left, right) = (y.without(pair.0), y.without(pair.1));
    let edge = left.intersection(right);
    for z in [left, right, edge] {
        build(graph, z, nodes)?;
    }
    nodes.insert(y, Node::Split { pair, left, right, edge });
    Ok(())
}
