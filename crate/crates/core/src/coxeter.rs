//! Coxeter groups through their exact reflection representation.
//!
//! [`ReflectionRep`] acts on the span of the simple roots of the whole
//! defining graph and works for finite and infinite Coxeter groups alike.
//! [`FiniteCoxeterGroup`] enumerates a spherical `W_T` into indexed tables
//! (multiplication by generators on either side, lengths, descents, ShortLex
//! words) which the Garside engine uses as its set of simple elements.

use std::collections::HashMap;

use serde::Serialize;

use crate::cyclotomic::{Cyc, CyclotomicRing};
use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::graph::DefiningGraph;
use crate::word::Word;

/// Enumeration guard; exceeding it signals a misclassified subset.
pub const ENUMERATION_CUTOFF: usize = 1_000_000;

/// Square matrix over ℤ[ζ_N], row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    dim: usize,
    entries: Vec<Cyc>,
}

impl Mat {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyc {
        &self.entries[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Cyc) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Cyc> {
        (0..self.dim).map(|i| self.get(i, j).clone()).collect()
    }
}

/// The standard (Tits) reflection representation on a basis of simple roots.
#[derive(Clone, Debug)]
pub struct ReflectionRep {
    ring: CyclotomicRing,
    /// `form[i][j] = 2B(α_i, α_j)`, restricted to the chosen basis.
    form: Vec<Vec<Cyc>>,
}

impl ReflectionRep {
    pub fn new(graph: &DefiningGraph) -> Self {
        let ring = graph.ring();
        let form = graph.bilinear_form(&ring);
        Self { ring, form }
    }

    /// Representation of `W_T` on the span of `{α_t : t ∈ T}`.
    pub fn restricted(graph: &DefiningGraph, t: GenSet) -> Self {
        let full = Self::new(graph);
        let idx: Vec<usize> = t.iter().collect();
        let form = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| full.form[i][j].clone()).collect())
            .collect();
        Self { ring: full.ring, form }
    }

    pub fn ring(&self) -> &CyclotomicRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.form.len()
    }

    pub fn identity(&self) -> Mat {
        let n = self.dim();
        let mut entries = vec![self.ring.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = self.ring.from_int(1);
        }
        Mat { dim: n, entries }
    }

    /// `m · s_i`: column j becomes `col_j - 2B_ij col_i`, column i is negated.
    pub fn mul_gen_right(&self, m: &Mat, i: usize) -> Mat {
        let r = &self.ring;
        let mut out = m.clone();
        let col_i = m.column(i);
        for j in 0..self.dim() {
            if j == i {
                for (row, v) in col_i.iter().enumerate() {
                    out.set(row, j, r.neg(v));
                }
                continue;
            }
            let c = &self.form[i][j];
            if c.is_zero() {
                continue;
            }
            for (row, v) in col_i.iter().enumerate() {
                let nv = r.sub(m.get(row, j), &r.mul(c, v));
                out.set(row, j, nv);
            }
        }
        out
    }

    /// `s_i · m`: row i becomes `-row_i - Σ_{j≠i} 2B_ij row_j`.
    pub fn mul_gen_left(&self, i: usize, m: &Mat) -> Mat {
        let r = &self.ring;
        let mut out = m.clone();
        for col in 0..self.dim() {
            let mut acc = r.neg(m.get(i, col));
            for j in 0..self.dim() {
                if j != i && !self.form[i][j].is_zero() {
                    acc = r.sub(&acc, &r.mul(&self.form[i][j], m.get(j, col)));
                }
            }
            out.set(i, col, acc);
        }
        out
    }

    /// `w(α_j)` written in the simple-root basis.
    pub fn image_of_root(&self, m: &Mat, j: usize) -> Vec<Cyc> {
        m.column(j)
    }

    /// Whether `w s_j` is shorter than `w`, i.e. `w(α_j)` is a negative root.
    pub fn is_right_descent(&self, m: &Mat, j: usize) -> bool {
        let root = self.image_of_root(m, j);
        root.iter().map(|c| self.ring.sign(c)).any(|s| s < 0)
    }
}

/// Index of an element in an enumerated finite Coxeter group.
pub type CoxIndex = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An enumerated finite Coxeter group `W_T`.
#[derive(Debug)]
pub struct FiniteCoxeterGroup {
    subset: GenSet,
    /// Global generator indices, in declaration order; local index = position.
    gens: Vec<usize>,
    words: Vec<Vec<u8>>,
    lengths: Vec<u32>,
    right: Vec<CoxIndex>,
    left: Vec<CoxIndex>,
    right_desc: Vec<u64>,
    left_desc: Vec<u64>,
    inverse: Vec<CoxIndex>,
    matrices: Vec<Mat>,
    longest: CoxIndex,
}

impl FiniteCoxeterGroup {
    pub fn enumerate(graph: &DefiningGraph, t: GenSet) -> Result<Self> {
        Self::enumerate_with_cutoff(graph, t, ENUMERATION_CUTOFF)
    }

    pub fn enumerate_with_cutoff(graph: &DefiningGraph, t: GenSet, cutoff: usize) -> Result<Self> {
        if !graph.is_finite_type(t)? {
            return Err(Error::NotSpherical(graph.format_set(t)));
        }
        Self::enumerate_unchecked(graph, t, cutoff)
    }

    /// Breadth-first enumeration without the finiteness pre-check.
    pub(crate) fn enumerate_unchecked(graph: &DefiningGraph, t: GenSet, cutoff: usize) -> Result<Self> {
        let rep = ReflectionRep::restricted(graph, t);
        let gens: Vec<usize> = t.iter().collect();
        let k = gens.len();
        let mut index: HashMap<Mat, CoxIndex> = HashMap::new();
        let mut matrices = vec![rep.identity()];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut lengths = vec![0u32];
        index.insert(rep.identity(), 0);
        let mut right: Vec<CoxIndex> = Vec::new();
        // Layers are processed in ShortLex order of their words, so the first
        // discovery of an element gives its ShortLex-minimal reduced word.
        let mut frontier: Vec<CoxIndex> = vec![0];
        let mut right_tmp: HashMap<(CoxIndex, usize), CoxIndex> = HashMap::new();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &w in &frontier {
                for s in 0..k {
                    let m = rep.mul_gen_right(&matrices[w as usize], s);
                    let idx = match index.get(&m) {
                        Some(&i) => i,
                        None => {
                            if matrices.len() >= cutoff {
                                return Err(Error::EnumerationCutoff(cutoff));
                            }
                            let i = matrices.len() as CoxIndex;
                            let mut word = words[w as usize].clone();
                            word.push(s as u8);
                            words.push(word);
                            lengths.push(lengths[w as usize] + 1);
                            index.insert(m.clone(), i);
                            matrices.push(m);
                            next.push(i);
                            i
                        }
                    };
                    right_tmp.insert((w, s), idx);
                }
            }
            frontier = next;
        }
        let n = matrices.len();
        right.resize(n * k, 0);
        for ((w, s), v) in right_tmp {
            right[w as usize * k + s] = v;
        }
        let mut left = vec![0; n * k];
        for w in 0..n {
            for s in 0..k {
                let m = rep.mul_gen_left(s, &matrices[w]);
                left[w * k + s] = index[&m];
            }
        }
        let mut right_desc = vec![0u64; n];
        let mut left_desc = vec![0u64; n];
        for w in 0..n {
            for s in 0..k {
                if lengths[right[w * k + s] as usize] < lengths[w] {
                    right_desc[w] |= 1 << s;
                }
                if lengths[left[w * k + s] as usize] < lengths[w] {
                    left_desc[w] |= 1 << s;
                }
            }
        }
        let longest = (0..n).max_by_key(|&w| lengths[w]).unwrap() as CoxIndex;
        let mut group = Self {
            subset: t,
            gens,
            words,
            lengths,
            right,
            left,
            right_desc,
            left_desc,
            inverse: Vec::new(),
            matrices,
            longest,
        };
        group.inverse = (0..n as CoxIndex)
            .map(|w| {
                group.words[w as usize]
                    .iter()
                    .rev()
                    .fold(0, |acc, &s| group.right[acc as usize * k + s as usize])
            })
            .collect();
        Ok(group)
    }

    pub fn subset(&self) -> GenSet {
        self.subset
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn local_index(&self, global: usize) -> Option<usize> {
        self.gens.iter().position(|&g| g == global)
    }

    pub fn identity(&self) -> CoxIndex {
        0
    }

    pub fn longest_element(&self) -> CoxIndex {
        self.longest
    }

    pub fn length(&self, w: CoxIndex) -> u32 {
        self.lengths[w as usize]
    }

    /// ShortLex-minimal reduced word in local generator indices.
    pub fn local_word(&self, w: CoxIndex) -> &[u8] {
        &self.words[w as usize]
    }

    /// ShortLex-minimal reduced word in global generator indices.
    pub fn word(&self, w: CoxIndex) -> Word {
        Word::from_gens(&self.words[w as usize].iter().map(|&s| self.gens[s as usize]).collect::<Vec<_>>())
    }

    pub fn matrix(&self, w: CoxIndex) -> &Mat {
        &self.matrices[w as usize]
    }

    pub fn generator(&self, local: usize) -> CoxIndex {
        self.right[local]
    }

    pub fn mul_gen_right(&self, w: CoxIndex, local: usize) -> CoxIndex {
        self.right[w as usize * self.rank() + local]
    }

    pub fn mul_gen_left(&self, local: usize, w: CoxIndex) -> CoxIndex {
        self.left[w as usize * self.rank() + local]
    }

    pub fn multiply(&self, a: CoxIndex, b: CoxIndex) -> CoxIndex {
        self.words[b as usize]
            .iter()
            .fold(a, |acc, &s| self.mul_gen_right(acc, s as usize))
    }

    pub fn inverse(&self, w: CoxIndex) -> CoxIndex {
        self.inverse[w as usize]
    }

    /// Descent set as a mask over local generator indices.
    pub fn descent_mask(&self, w: CoxIndex, side: Side) -> u64 {
        match side {
            Side::Left => self.left_desc[w as usize],
            Side::Right => self.right_desc[w as usize],
        }
    }

    /// Descent set as global generators.
    pub fn descents(&self, w: CoxIndex, side: Side) -> GenSet {
        self.local_mask_to_set(self.descent_mask(w, side))
    }

    pub fn local_mask_to_set(&self, mask: u64) -> GenSet {
        GenSet::from_indices((0..self.rank()).filter(|s| mask >> s & 1 == 1).map(|s| self.gens[s]))
    }

    pub fn set_to_local_mask(&self, set: GenSet) -> u64 {
        set.iter()
            .filter_map(|g| self.local_index(g))
            .fold(0, |acc, s| acc | 1 << s)
    }

    /// Generators occurring in any reduced word of `w`.
    pub fn support(&self, w: CoxIndex) -> GenSet {
        GenSet::from_indices(self.words[w as usize].iter().map(|&s| self.gens[s as usize]))
    }

    /// Image of a signed word under `A_T → W_T`; signs are ignored.
    pub fn coxeter_image(&self, word: &Word) -> Result<CoxIndex> {
        word.letters().iter().try_fold(self.identity(), |acc, l| {
            let s = self
                .local_index(l.gen)
                .ok_or_else(|| Error::LetterOutsideAmbient(l.gen.to_string()))?;
            Ok(self.mul_gen_right(acc, s))
        })
    }

    /// Right multiplication table by generators, for oracle dumps.
    pub fn table_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Row {
            word: Vec<usize>,
            length: u32,
            right: Vec<CoxIndex>,
        }
        let rows: Vec<Row> = (0..self.order() as CoxIndex)
            .map(|w| Row {
                word: self.word(w).letters().iter().map(|l| l.gen).collect(),
                length: self.length(w),
                right: (0..self.rank()).map(|s| self.mul_gen_right(w, s)).collect(),
            })
            .collect();
        serde_json::json!({ "generators": self.gens, "elements": rows })
    }
}
