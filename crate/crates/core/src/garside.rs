//! Garside structure of spherical Artin groups.
//!
//! Simple elements are the positive lifts of elements of `W_T`, stored as
//! indices into an enumerated [`FiniteCoxeterGroup`]. An element is kept in
//! left-greedy normal form `Δ^p x_1 … x_l` with every `x_i ∉ {e, Δ}` and
//! `R(x_i) ⊇ L(x_{i+1})` for consecutive factors.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coxeter::{CoxIndex, FiniteCoxeterGroup, Side};
use crate::error::{Error, Result};
use crate::genset::GenSet;
use crate::graph::DefiningGraph;
use crate::word::{Letter, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArtinElement {
    ambient: GenSet,
    power: i64,
    simples: Vec<CoxIndex>,
}

impl ArtinElement {
    pub fn ambient(&self) -> GenSet {
        self.ambient
    }

    /// Exponent of Δ (the infimum).
    pub fn power(&self) -> i64 {
        self.power
    }

    pub fn simples(&self) -> &[CoxIndex] {
        &self.simples
    }

    pub fn canonical_length(&self) -> usize {
        self.simples.len()
    }

    /// Supremum `p + l`.
    pub fn sup(&self) -> i64 {
        self.power + self.simples.len() as i64
    }

    pub fn is_identity(&self) -> bool {
        self.power == 0 && self.simples.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.power >= 0
    }
}

/// A spherical Artin group `A_T` with its enumerated Coxeter quotient.
#[derive(Debug)]
pub struct GarsideGroup {
    cox: FiniteCoxeterGroup,
    tau: Vec<CoxIndex>,
    center_exponent: u32,
    words: Vec<Word>,
}

impl GarsideGroup {
    pub fn new(graph: &DefiningGraph, t: GenSet) -> Result<Self> {
        let cox = FiniteCoxeterGroup::enumerate(graph, t)?;
        let w0 = cox.longest_element();
        let tau: Vec<CoxIndex> = (0..cox.order() as CoxIndex)
            .map(|x| cox.multiply(cox.multiply(w0, x), w0))
            .collect();
        let trivial = (0..cox.rank()).all(|s| tau[cox.generator(s) as usize] == cox.generator(s));
        let words = (0..cox.order() as CoxIndex).map(|x| cox.word(x)).collect();
        Ok(Self {
            words,
            cox,
            tau,
            center_exponent: if trivial { 1 } else { 2 },
        })
    }

    pub fn coxeter(&self) -> &FiniteCoxeterGroup {
        &self.cox
    }

    pub fn ambient(&self) -> GenSet {
        self.cox.subset()
    }

    fn w0(&self) -> CoxIndex {
        self.cox.longest_element()
    }

    pub fn identity(&self) -> ArtinElement {
        ArtinElement {
            ambient: self.ambient(),
            power: 0,
            simples: Vec::new(),
        }
    }

    /// `Δ_T`, the least common multiple of the atoms.
    pub fn delta(&self) -> ArtinElement {
        self.delta_pow(1)
    }

    pub fn delta_pow(&self, p: i64) -> ArtinElement {
        ArtinElement {
            ambient: self.ambient(),
            // The trivial group has Δ = e.
            power: if self.cox.rank() == 0 { 0 } else { p },
            simples: Vec::new(),
        }
    }

    /// The diagram automorphism `x ↦ Δ^{-1} x Δ` on simples.
    pub fn tau(&self, x: CoxIndex) -> CoxIndex {
        self.tau[x as usize]
    }

    fn tau_pow(&self, x: CoxIndex, p: i64) -> CoxIndex {
        if p.rem_euclid(2) == 1 {
            self.tau(x)
        } else {
            x
        }
    }

    /// Smallest `k` with `Δ^k` central: 1 when τ fixes every atom, else 2.
    pub fn center_exponent(&self) -> u32 {
        self.center_exponent
    }

    /// `Δ_T^k` for the center exponent `k`.
    pub fn z_standard(&self) -> ArtinElement {
        self.delta_pow(self.center_exponent as i64)
    }

    pub fn atom(&self, global: usize) -> Result<ArtinElement> {
        let mut e = self.identity();
        self.mul_letter_right(&mut e, Letter::pos(global))?;
        Ok(e)
    }

    pub fn simple(&self, x: CoxIndex) -> ArtinElement {
        let mut e = self.identity();
        self.push_simple(&mut e, x);
        e
    }

    fn local(&self, l: Letter) -> Result<usize> {
        self.cox
            .local_index(l.gen)
            .ok_or_else(|| Error::LetterOutsideAmbient(l.gen.to_string()))
    }

    /// Moves atoms from `b` into `a` until `L(b) ⊆ R(a)`.
    fn left_weight(&self, mut a: CoxIndex, mut b: CoxIndex) -> (CoxIndex, CoxIndex) {
        loop {
            let movable = self.cox.descent_mask(b, Side::Left) & !self.cox.descent_mask(a, Side::Right);
            if movable == 0 {
                return (a, b);
            }
            let s = movable.trailing_zeros() as usize;
            a = self.cox.mul_gen_right(a, s);
            b = self.cox.mul_gen_left(s, b);
        }
    }

    fn tidy(&self, e: &mut ArtinElement) {
        let w0 = self.w0();
        let id = self.cox.identity();
        let lead = e.simples.iter().take_while(|&&x| x == w0).count();
        if lead > 0 {
            e.simples.drain(..lead);
            e.power += lead as i64;
        }
        while e.simples.last() == Some(&id) {
            e.simples.pop();
        }
        debug_assert!(self.is_normal(e), "normal form invariant violated");
    }

    /// Right multiplication by a simple.
    fn push_simple(&self, e: &mut ArtinElement, x: CoxIndex) {
        if x == self.cox.identity() {
            return;
        }
        e.simples.push(x);
        let mut i = e.simples.len() - 1;
        while i > 0 {
            let (a, b) = (e.simples[i - 1], e.simples[i]);
            let (na, nb) = self.left_weight(a, b);
            if na == a {
                break;
            }
            e.simples[i - 1] = na;
            e.simples[i] = nb;
            i -= 1;
        }
        self.tidy(e);
    }

    /// Left multiplication by a simple placed after `Δ^p`, i.e. `Δ^p y x_1 … x_l`.
    fn prepend_simple(&self, e: &mut ArtinElement, y: CoxIndex) {
        if y == self.cox.identity() {
            return;
        }
        e.simples.insert(0, y);
        for i in 0..e.simples.len() - 1 {
            let (a, b) = (e.simples[i], e.simples[i + 1]);
            let (na, nb) = self.left_weight(a, b);
            if na == a {
                break;
            }
            e.simples[i] = na;
            e.simples[i + 1] = nb;
        }
        // Identities can sit in the middle only transiently; drop them all.
        let id = self.cox.identity();
        e.simples.retain(|&x| x != id);
        self.tidy(e);
    }

    fn apply_tau_to_factors(&self, e: &mut ArtinElement, p: i64) {
        if p.rem_euclid(2) == 1 {
            for x in &mut e.simples {
                *x = self.tau[*x as usize];
            }
        }
    }

    /// `e ← e · x^{-1}` for a simple `x`: `x^{-1} = Δ^{-1} (w0 x^{-1})`.
    fn push_inverse_simple(&self, e: &mut ArtinElement, x: CoxIndex) {
        if x == self.cox.identity() {
            return;
        }
        let c = self.cox.multiply(self.w0(), self.cox.inverse(x));
        self.apply_tau_to_factors(e, 1);
        e.power -= 1;
        self.push_simple(e, c);
    }

    /// `e ← x^{-1} · e` for a simple `x`: `x^{-1} = (x^{-1} w0) Δ^{-1}`.
    fn prepend_inverse_simple(&self, e: &mut ArtinElement, x: CoxIndex) {
        if x == self.cox.identity() {
            return;
        }
        let c = self.cox.multiply(self.cox.inverse(x), self.w0());
        e.power -= 1;
        let moved = self.tau_pow(c, e.power);
        self.prepend_simple(e, moved);
    }

    pub fn mul_letter_right(&self, e: &mut ArtinElement, l: Letter) -> Result<()> {
        let s = self.local(l)?;
        let x = self.cox.generator(s);
        if l.inverse {
            self.push_inverse_simple(e, x);
        } else {
            self.push_simple(e, x);
        }
        Ok(())
    }

    pub fn mul_letter_left(&self, l: Letter, e: &mut ArtinElement) -> Result<()> {
        let s = self.local(l)?;
        let x = self.cox.generator(s);
        if l.inverse {
            self.prepend_inverse_simple(e, x);
        } else {
            let moved = self.tau_pow(x, e.power);
            self.prepend_simple(e, moved);
        }
        Ok(())
    }

    /// Left-greedy normal form of a signed word.
    pub fn normal_form(&self, word: &Word) -> Result<ArtinElement> {
        let mut e = self.identity();
        for &l in word.letters() {
            self.mul_letter_right(&mut e, l)?;
        }
        Ok(e)
    }

    fn check(&self, a: &ArtinElement) -> Result<()> {
        if a.ambient == self.ambient() {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn multiply(&self, a: &ArtinElement, b: &ArtinElement) -> Result<ArtinElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = a.clone();
        self.apply_tau_to_factors(&mut out, b.power);
        out.power += b.power;
        for &y in &b.simples {
            self.push_simple(&mut out, y);
        }
        Ok(out)
    }

    pub fn invert(&self, a: &ArtinElement) -> Result<ArtinElement> {
        self.check(a)?;
        let mut out = self.identity();
        for &x in a.simples.iter().rev() {
            self.push_inverse_simple(&mut out, x);
        }
        self.apply_tau_to_factors(&mut out, a.power);
        out.power -= a.power;
        Ok(out)
    }

    pub fn equal(&self, a: &ArtinElement, b: &ArtinElement) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(a == b)
    }

    pub fn conjugate(&self, h: &ArtinElement, x: &ArtinElement) -> Result<ArtinElement> {
        self.multiply(&self.multiply(h, x)?, &self.invert(h)?)
    }

    /// Atoms `s` with `s ≤ a`, as a mask of local indices.
    fn left_atoms(&self, a: &ArtinElement) -> u64 {
        if a.power > 0 {
            (1u64 << self.cox.rank()) - 1
        } else if a.power == 0 {
            a.simples.first().map_or(0, |&x| self.cox.descent_mask(x, Side::Left))
        } else {
            0
        }
    }

    /// Whether `a ≤ b` in the prefix order.
    pub fn divides_left(&self, a: &ArtinElement, b: &ArtinElement) -> Result<bool> {
        Ok(self.multiply(&self.invert(a)?, b)?.is_positive())
    }

    /// Greatest common left divisor of two positive elements.
    pub fn left_gcd(&self, a: &ArtinElement, b: &ArtinElement) -> Result<ArtinElement> {
        self.check(a)?;
        self.check(b)?;
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::NotPositive);
        }
        let (mut a, mut b) = (a.clone(), b.clone());
        let mut g = self.identity();
        loop {
            let common = self.left_atoms(&a) & self.left_atoms(&b);
            if common == 0 {
                return Ok(g);
            }
            let s = common.trailing_zeros() as usize;
            let x = self.cox.generator(s);
            self.push_simple(&mut g, x);
            self.prepend_inverse_simple(&mut a, x);
            self.prepend_inverse_simple(&mut b, x);
        }
    }

    /// Greatest common right divisor of two positive elements.
    pub fn right_gcd(&self, a: &ArtinElement, b: &ArtinElement) -> Result<ArtinElement> {
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::NotPositive);
        }
        let (mut a, mut b) = (a.clone(), b.clone());
        let mut g = self.identity();
        'outer: loop {
            for s in 0..self.cox.rank() {
                let x = self.cox.generator(s);
                let mut a2 = a.clone();
                self.push_inverse_simple(&mut a2, x);
                if !a2.is_positive() {
                    continue;
                }
                let mut b2 = b.clone();
                self.push_inverse_simple(&mut b2, x);
                if !b2.is_positive() {
                    continue;
                }
                a = a2;
                b = b2;
                self.mul_letter_left(Letter::pos(self.cox.gens()[s]), &mut g)?;
                continue 'outer;
            }
            return Ok(g);
        }
    }

    /// Least common left multiple: `Δ^N · rgcd(a^{-1}Δ^N, b^{-1}Δ^N)^{-1}`.
    pub fn left_lcm(&self, a: &ArtinElement, b: &ArtinElement) -> Result<ArtinElement> {
        self.check(a)?;
        self.check(b)?;
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::NotPositive);
        }
        let n = a.sup().max(b.sup()).max(0);
        let top = self.delta_pow(n);
        let ca = self.multiply(&self.invert(a)?, &top)?;
        let cb = self.multiply(&self.invert(b)?, &top)?;
        let r = self.right_gcd(&ca, &cb)?;
        self.multiply(&top, &self.invert(&r)?)
    }

    /// Generators occurring in a positive element.
    fn positive_support(&self, a: &ArtinElement) -> GenSet {
        debug_assert!(a.is_positive());
        let mut s = if a.power > 0 { self.ambient() } else { GenSet::EMPTY };
        for &x in &a.simples {
            s = s.union(self.cox.support(x));
        }
        s
    }

    /// Left-orthogonal fraction: positive `u, v` with `a = u^{-1} v` and `gcd(u, v) = e`.
    pub fn fraction(&self, a: &ArtinElement) -> Result<(ArtinElement, ArtinElement)> {
        self.check(a)?;
        if a.is_positive() {
            return Ok((self.identity(), a.clone()));
        }
        let u0 = self.delta_pow(-a.power);
        let v0 = ArtinElement {
            ambient: a.ambient,
            power: 0,
            simples: a.simples.clone(),
        };
        let g = self.left_gcd(&u0, &v0)?;
        let gi = self.invert(&g)?;
        Ok((self.multiply(&gi, &u0)?, self.multiply(&gi, &v0)?))
    }

    /// Smallest `X ⊆ T` with `a ∈ A_X`.
    ///
    /// The support of the orthogonal fraction `u^{-1} v` does not depend on
    /// the representative.
    pub fn support(&self, a: &ArtinElement) -> Result<GenSet> {
        let (u, v) = self.fraction(a)?;
        Ok(self.positive_support(&u).union(self.positive_support(&v)))
    }

    /// Whether `a ∈ A_X` for a standard parabolic `X ⊆ T`.
    pub fn standard_parabolic_membership(&self, a: &ArtinElement, x: GenSet) -> Result<bool> {
        if !x.is_subset(self.ambient()) {
            return Err(Error::NotASubset);
        }
        Ok(self.support(a)?.is_subset(x))
    }

    pub fn is_normal(&self, e: &ArtinElement) -> bool {
        let w0 = self.w0();
        let id = self.cox.identity();
        e.simples.iter().all(|&x| x != w0 && x != id)
            && e.simples.windows(2).all(|p| {
                let r = self.cox.descent_mask(p[0], Side::Right);
                let l = self.cox.descent_mask(p[1], Side::Left);
                l & !r == 0
            })
    }

    /// The normal form read off as a word: `Δ^p` first, then the simples.
    pub fn to_word(&self, e: &ArtinElement) -> Word {
        let mut w = self.words[self.w0() as usize].pow(e.power);
        for &x in &e.simples {
            w.extend(&self.words[x as usize]);
        }
        w
    }

    /// A shorter word for the same element: `Δ^{-1} x_1` is rewritten as
    /// `y^{-1}` with `x_1 y = Δ`.
    pub fn to_short_word(&self, e: &ArtinElement) -> Word {
        if e.power >= 0 || e.simples.is_empty() {
            return self.to_word(e);
        }
        let mut w = self.words[self.w0() as usize].pow(e.power + 1);
        let x1 = e.simples[0];
        let y = self.cox.multiply(self.cox.inverse(x1), self.w0());
        w.extend(&self.words[y as usize].inverse());
        for &x in &e.simples[1..] {
            w.extend(&self.words[x as usize]);
        }
        w
    }

    /// `D^p|w1|w2|…` with each `wi` a ShortLex word.
    pub fn serialize(&self, e: &ArtinElement, graph: &DefiningGraph) -> String {
        let mut out = format!("D^{}", e.power);
        for &x in &e.simples {
            out.push('|');
            out.push_str(&self.cox.word(x).render(graph));
        }
        out
    }

    pub fn display<'a>(&'a self, e: &'a ArtinElement, graph: &'a DefiningGraph) -> impl fmt::Display + 'a {
        struct D<'a>(&'a GarsideGroup, &'a ArtinElement, &'a DefiningGraph);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0.serialize(self.1, self.2))
            }
        }
        D(self, e, graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(text: &str) -> (DefiningGraph, GarsideGroup) {
        let g = DefiningGraph::parse(text).unwrap();
        let gg = GarsideGroup::new(&g, g.all()).unwrap();
        (g, gg)
    }

    fn nf(g: &DefiningGraph, gg: &GarsideGroup, w: &str) -> ArtinElement {
        gg.normal_form(&Word::parse(g, w).unwrap()).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let (g, gg) = setup("s t 3");
        assert_eq!(gg.serialize(&nf(&g, &gg, "s t s t"), &g), "D^1|t");
        assert!(nf(&g, &gg, "s s^{-1}").is_identity());
        // s^{-1} = Δ^{-1}·(Δ s^{-1}) and Δ s^{-1} = st.
        let si = nf(&g, &gg, "s^{-1}");
        assert_eq!(gg.serialize(&si, &g), "D^-1|s t");
        let back = gg.normal_form(&gg.to_word(&si)).unwrap();
        assert_eq!(back, si);
        assert_eq!(gg.multiply(&si, &nf(&g, &gg, "s")).unwrap(), gg.identity());
    }

    #[test]
    fn multiply_invert_equal_examples() {
        let (g, gg) = setup("s t 3");
        let a = nf(&g, &gg, "s t s");
        let b = nf(&g, &gg, "t^{-1} s^{-1} t^{-1}");
        assert!(gg.multiply(&a, &b).unwrap().is_identity());
        assert_eq!(gg.invert(&gg.delta()).unwrap(), gg.delta_pow(-1));
        assert!(gg.equal(&nf(&g, &gg, "s t s t"), &gg.multiply(&gg.delta(), &nf(&g, &gg, "t")).unwrap()).unwrap());
    }

    #[test]
    fn left_multiplication_matches_right() {
        let (g, gg) = setup("a b 3\nb c 4\na c 2");
        for text in ["a b^{-1} c a", "c^{-1} c^{-1} b a b", "b^{-1} a^{-1} c^{-1} b"] {
            let w = Word::parse(&g, text).unwrap();
            let mut left = gg.identity();
            for &l in w.letters().iter().rev() {
                gg.mul_letter_left(l, &mut left).unwrap();
            }
            assert_eq!(left, gg.normal_form(&w).unwrap(), "{text}");
        }
    }

    #[test]
    fn lattice_examples() {
        let (g, gg) = setup("s t 3");
        let s = nf(&g, &gg, "s");
        let t = nf(&g, &gg, "t");
        assert!(gg.left_gcd(&s, &t).unwrap().is_identity());
        assert_eq!(gg.left_lcm(&s, &t).unwrap(), gg.delta());
        let st = nf(&g, &gg, "s t");
        let sts = nf(&g, &gg, "s t s");
        assert_eq!(gg.left_gcd(&st, &sts).unwrap(), st);
        assert_eq!(gg.left_gcd(&nf(&g, &gg, "s^{-1}"), &s), Err(Error::NotPositive));
    }

    #[test]
    fn delta_tau_center() {
        let (g, gg) = setup("s t 2");
        assert_eq!(gg.to_word(&gg.delta()).render(&g), "s t");
        assert_eq!(gg.center_exponent(), 1);
        let (g, gg) = setup("s t 3");
        assert_eq!(gg.center_exponent(), 2);
        let w = gg.coxeter();
        let s = w.generator(0);
        assert_eq!(gg.tau(s), w.generator(1));
        assert_eq!(gg.serialize(&gg.z_standard(), &g), "D^2");
        let (g, gg) = setup("s");
        assert_eq!(gg.to_word(&gg.z_standard()).render(&g), "s");
        assert_eq!(gg.center_exponent(), 1);
    }

    #[test]
    fn membership_examples() {
        let (g, gg) = setup("s t 3");
        let x = g.all();
        assert!(gg.standard_parabolic_membership(&nf(&g, &gg, "s t s"), x).unwrap());
        assert!(!gg
            .standard_parabolic_membership(&nf(&g, &gg, "t s t^{-1}"), GenSet::singleton(0))
            .unwrap());
        assert!(gg.standard_parabolic_membership(&gg.identity(), GenSet::EMPTY).unwrap());
        assert!(!gg
            .standard_parabolic_membership(&nf(&g, &gg, "t s^{-2} t^{-1} t"), GenSet::singleton(0))
            .unwrap_or(false));
        assert!(!gg
            .standard_parabolic_membership(&nf(&g, &gg, "t s^{-2} t^{-1}"), GenSet::singleton(0))
            .unwrap());
        assert!(gg
            .standard_parabolic_membership(&nf(&g, &gg, "t t^{-1} s^{-3}"), GenSet::singleton(0))
            .unwrap());
        assert!(gg.standard_parabolic_membership(&gg.identity(), GenSet(0b100)).is_err());
    }
}
