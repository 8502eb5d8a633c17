//! Retractions `ρ_X : A → A_X` onto standard parabolic subgroups.
//!
//! Reading a word left to right, we track the minimal representative `ū` of
//! the coset `W_X ū` of the prefix read so far. A letter `s^ε` with
//! `ū s ū^{-1} = t ∈ X` contributes `t^ε`; any other letter moves `ū` to `ū s`.
//! The map is well defined on group elements and satisfies
//! `ρ_X(h g) = h ρ_X(g)` for `h ∈ A_X`, which is all the coset code relies on.

use rustc_hash::FxHashMap as HashMap;
use std::sync::RwLock;

use crate::genset::GenSet;
use crate::graph::DefiningGraph;
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug)]
enum Step {
    /// `ū s ū^{-1} = t ∈ X`: emit `t`, stay.
    Emit(usize),
    /// Move to the state `ū s`.
    Move(u32),
}

/// Minimal coset representatives discovered so far, with cached transitions.
/// A state is the matrix of `ū` in the reflection representation, stored as
/// flat power-basis coordinates: column `j`, row `i`, coordinate `k` at
/// `(j * n + i) * d + k`.
#[derive(Debug)]
struct CosetAutomaton {
    states: Vec<Vec<i128>>,
    index: HashMap<Vec<i128>, u32>,
    steps: Vec<Vec<Option<Step>>>,
}

pub struct Retraction {
    n: usize,
    d: usize,
    /// `mult[s * n + j]`: multiplication by `2B(α_s, α_j)` as a `d × d` matrix.
    mult: Vec<Option<Vec<i128>>>,
    automata: RwLock<HashMap<GenSet, CosetAutomaton>>,
}

impl std::fmt::Debug for Retraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Retraction").field("rank", &self.n).finish()
    }
}

fn checked(v: Option<i128>) -> i128 {
    v.expect("cyclotomic coefficient overflow")
}

impl Retraction {
    pub fn new(graph: &DefiningGraph) -> Self {
        let ring = graph.ring();
        let form = graph.bilinear_form(&ring);
        let n = graph.len();
        let mut mult = Vec::with_capacity(n * n);
        for s in 0..n {
            for j in 0..n {
                let c = &form[s][j];
                mult.push((s != j && !c.is_zero()).then(|| ring.multiplication_matrix(c)));
            }
        }
        Self {
            n,
            d: ring.dim(),
            mult,
            automata: RwLock::new(HashMap::default()),
        }
    }

    fn identity_state(&self) -> Vec<i128> {
        let (n, d) = (self.n, self.d);
        let mut v = vec![0; n * n * d];
        for j in 0..n {
            v[(j * n + j) * d] = 1;
        }
        v
    }

    fn new_automaton(&self) -> CosetAutomaton {
        let id = self.identity_state();
        CosetAutomaton {
            states: vec![id.clone()],
            index: HashMap::from_iter([(id, 0)]),
            steps: vec![vec![None; self.n]],
        }
    }

    /// Index `t` with `ū(α_s) = ±α_t`, if the image is a simple root up to sign.
    fn simple_image(&self, m: &[i128], s: usize) -> Option<usize> {
        let (n, d) = (self.n, self.d);
        let col = &m[s * n * d..(s + 1) * n * d];
        let mut hit = None;
        for i in 0..n {
            let c = &col[i * d..(i + 1) * d];
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            if hit.is_some() || c[0].abs() != 1 || c[1..].iter().any(|&x| x != 0) {
                return None;
            }
            hit = Some(i);
        }
        hit
    }

    /// `ū s`: column `s` is negated, column `j` loses `2B_sj` times column `s`.
    fn mul_gen_right(&self, m: &[i128], s: usize) -> Vec<i128> {
        let (n, d) = (self.n, self.d);
        let mut out = m.to_vec();
        let col_s = &m[s * n * d..(s + 1) * n * d];
        for (k, v) in col_s.iter().enumerate() {
            out[s * n * d + k] = -v;
        }
        for j in 0..n {
            let Some(mat) = &self.mult[s * n + j] else { continue };
            for i in 0..n {
                let x = &col_s[i * d..(i + 1) * d];
                if x.iter().all(|&v| v == 0) {
                    continue;
                }
                let base = (j * n + i) * d;
                for r in 0..d {
                    let mut acc = 0i128;
                    for (c, &xv) in x.iter().enumerate() {
                        if xv != 0 {
                            acc = checked(acc.checked_add(checked(mat[r * d + c].checked_mul(xv))));
                        }
                    }
                    out[base + r] = checked(out[base + r].checked_sub(acc));
                }
            }
        }
        out
    }

    fn compute_step(&self, x: GenSet, aut: &mut CosetAutomaton, state: u32, s: usize) -> Step {
        let m = &aut.states[state as usize];
        let step = match self.simple_image(m, s) {
            Some(t) if x.contains(t) => Step::Emit(t),
            _ => {
                let next = self.mul_gen_right(m, s);
                let id = match aut.index.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = aut.states.len() as u32;
                        aut.index.insert(next.clone(), id);
                        aut.states.push(next);
                        aut.steps.push(vec![None; self.n]);
                        id
                    }
                };
                Step::Move(id)
            }
        };
        aut.steps[state as usize][s] = Some(step);
        step
    }

    /// `ρ_X(word)` as a word over `X`.
    pub fn retract(&self, x: GenSet, word: &Word) -> Word {
        let letters = word.letters();
        let mut out = Word::new();
        let mut state = 0u32;
        let mut pos = 0;
        {
            let guard = self.automata.read().expect("retraction lock");
            if let Some(aut) = guard.get(&x) {
                while pos < letters.len() {
                    let l = letters[pos];
                    match aut.steps[state as usize][l.gen] {
                        Some(Step::Emit(t)) => out.push(Letter { gen: t, inverse: l.inverse }),
                        Some(Step::Move(n)) => state = n,
                        None => break,
                    }
                    pos += 1;
                }
            }
        }
        if pos == letters.len() {
            return out;
        }
        let mut guard = self.automata.write().expect("retraction lock");
        let aut = guard.entry(x).or_insert_with(|| self.new_automaton());
        for &l in &letters[pos..] {
            let step = match aut.steps[state as usize][l.gen] {
                Some(step) => step,
                None => self.compute_step(x, aut, state, l.gen),
            };
            match step {
                Step::Emit(t) => out.push(Letter { gen: t, inverse: l.inverse }),
                Step::Move(n) => state = n,
            }
        }
        out
    }

    /// A word for the canonical element `ρ_X(g)^{-1} g` of the right coset `A_X g`.
    pub fn right_coset_word(&self, x: GenSet, word: &Word) -> Word {
        self.retract(x, word).inverse().concat(word)
    }

    /// A word for the canonical element `g ρ_X(g^{-1})` of the left coset `g A_X`.
    pub fn left_coset_word(&self, x: GenSet, word: &Word) -> Word {
        word.concat(&self.retract(x, &word.inverse()))
    }
}
