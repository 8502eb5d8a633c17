//! Spherical parabolic subgroups `g A_X g^{-1}`, keyed by their central
//! element `z_P = g Δ_X^k g^{-1}`.
//!
//! For reducible `X` the central element is taken componentwise,
//! `∏ Δ_{X_i}^{k_i}`; the components of a parabolic are intrinsic, so the key
//! still determines the subgroup.

use std::fmt;
use std::hash::{Hash, Hasher};

use rustc_hash::FxHashMap as HashMap;
use serde::Serialize;
use serde_json::json;

use crate::error::{Error, Result};
use crate::fc::{FcGroup, FcWord};
use crate::garside::GarsideGroup;
use crate::genset::GenSet;
use crate::graph::DefiningGraph;
use crate::par;
use crate::word::{reduced_words_up_to, Letter, Word};

#[derive(Clone, Debug)]
pub struct Parabolic {
    conjugator: Word,
    standard: GenSet,
    irreducible: bool,
    z: FcWord,
    key: String,
}

impl PartialEq for Parabolic {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Parabolic {}

impl Hash for Parabolic {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl Parabolic {
    /// A canonical word for the conjugator `g`.
    pub fn conjugator(&self) -> &Word {
        &self.conjugator
    }

    pub fn standard_part(&self) -> GenSet {
        self.standard
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn z(&self) -> &FcWord {
        &self.z
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn rank(&self) -> usize {
        self.standard.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.standard.is_empty()
    }
}

/// Which clause of the commuting-centers criterion a witness exhibits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdjacencyKind {
    Equal,
    Inclusion,
    CommuteDisjoint,
}

impl fmt::Display for AdjacencyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdjacencyKind::Equal => "equal",
            AdjacencyKind::Inclusion => "inclusion",
            AdjacencyKind::CommuteDisjoint => "commute-disjoint",
        })
    }
}

/// `h` with `h^{-1} P h = A_X` and `h^{-1} Q h = A_Y` in one of the allowed configurations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardWitness {
    pub kind: AdjacencyKind,
    pub conjugator: Word,
    pub x: GenSet,
    pub y: GenSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjacency {
    /// `z_P z_Q = z_Q z_P`.
    pub centers_commute: bool,
    pub equal: bool,
    pub witness: Option<StandardWitness>,
}

impl Adjacency {
    /// Distinct vertices joined by an edge.
    pub fn adjacent(&self) -> bool {
        self.centers_commute && !self.equal
    }
}

#[derive(Clone, Debug)]
pub struct MinimalParabolic {
    pub parabolic: Parabolic,
    /// Number of searched parabolics containing the element.
    pub containing: usize,
    /// Those among them that do not contain the result (should be zero).
    pub violations: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionCertificate {
    /// Generators of the result lie in both inputs.
    pub containment: bool,
    /// Every sampled common element lies in the result.
    pub saturation: bool,
    /// `Some` when both inputs were standard; then the result is exact.
    pub standard_fast_path: Option<bool>,
    pub budget: usize,
    pub sampled_common: usize,
    pub candidates: usize,
}

impl IntersectionCertificate {
    pub fn passed(&self) -> bool {
        self.containment && self.saturation && self.standard_fast_path != Some(false)
    }
}

#[derive(Clone, Debug)]
pub struct Intersection {
    pub parabolic: Parabolic,
    pub certificate: IntersectionCertificate,
}

/// Search limits for [`ParabolicCalculus::minimal_parabolic`].
#[derive(Clone, Debug)]
pub struct MinimalSearch {
    pub conjugator_bound: usize,
    /// Extra conjugators `g`; words `g·w` with `|w| ≤ conjugator_bound` are searched too.
    pub seeds: Vec<Word>,
}

impl Default for MinimalSearch {
    fn default() -> Self {
        Self {
            conjugator_bound: 2,
            seeds: Vec::new(),
        }
    }
}

/// Parabolic subgroup calculus over an FC-type Artin group.
#[derive(Debug)]
pub struct ParabolicCalculus {
    fc: FcGroup,
    spherical: Vec<GenSet>,
    z_words: HashMap<GenSet, Word>,
    standard_by_z: HashMap<FcWord, GenSet>,
}

impl ParabolicCalculus {
    pub fn new(graph: &DefiningGraph) -> Result<Self> {
        let fc = FcGroup::new(graph)?;
        let spherical = graph.spherical_subsets();
        let mut z_words = HashMap::default();
        let mut standard_by_z = HashMap::default();
        for &x in &spherical {
            let mut w = Word::new();
            for comp in graph.decompose(x)?.irreducible_components {
                let g = GarsideGroup::new(graph, comp)?;
                w.extend(&g.to_word(&g.z_standard()));
            }
            standard_by_z.insert(fc.normal_form(&w)?, x);
            z_words.insert(x, w);
        }
        Ok(Self {
            fc,
            spherical,
            z_words,
            standard_by_z,
        })
    }

    pub fn fc(&self) -> &FcGroup {
        &self.fc
    }

    pub fn graph(&self) -> &DefiningGraph {
        self.fc.graph()
    }

    pub fn spherical_subsets(&self) -> &[GenSet] {
        &self.spherical
    }

    pub fn is_spherical(&self, x: GenSet) -> bool {
        self.z_words.contains_key(&x)
    }

    /// Nonempty, proper, irreducible spherical subsets: the standard vertices of CP.
    pub fn standard_vertices(&self) -> Vec<GenSet> {
        let all = self.graph().all();
        self.spherical
            .iter()
            .copied()
            .filter(|&x| !x.is_empty() && x != all && self.graph().is_irreducible(x))
            .collect()
    }

    pub fn form(&self, w: &Word) -> Result<FcWord> {
        self.fc.normal_form(w)
    }

    /// `h^{-1} f h`.
    pub fn conjugate_form(&self, h: &Word, f: &FcWord) -> FcWord {
        let w = h.inverse().concat(f.word()).concat(h);
        self.fc.normal_form(&w).expect("letters of the ambient group")
    }

    pub fn make(&self, g: &Word, x: GenSet) -> Result<Parabolic> {
        let zw = self
            .z_words
            .get(&x)
            .ok_or_else(|| Error::NotSpherical(self.graph().format_set(x)))?;
        let gf = self.fc.normal_form(g)?;
        let conjugator = self.fc.left_coset_rep(&gf, x).word().clone();
        let z = self.fc.normal_form(&conjugator.concat(zw).concat(&conjugator.inverse()))?;
        let key = self.fc.serialize(&z);
        Ok(Parabolic {
            conjugator,
            standard: x,
            irreducible: !x.is_empty() && self.graph().is_irreducible(x),
            z,
            key,
        })
    }

    pub fn standard(&self, x: GenSet) -> Result<Parabolic> {
        self.make(&Word::new(), x)
    }

    /// Parses `g;{x,y}` (`e` for the identity conjugator) or just `{x,y}`.
    pub fn parse(&self, text: &str) -> Result<Parabolic> {
        let (g, x) = match text.split_once(';') {
            Some((g, x)) => (Word::parse(self.graph(), g)?, x),
            None => (Word::new(), text),
        };
        self.make(&g, self.graph().parse_set(x.trim())?)
    }

    pub fn display(&self, p: &Parabolic) -> String {
        format!(
            "{};{}",
            p.conjugator.render(self.graph()),
            self.graph().format_set(p.standard)
        )
    }

    /// `g x g^{-1}` for `x ∈ X`.
    pub fn generators(&self, p: &Parabolic) -> Vec<Word> {
        p.standard
            .iter()
            .map(|x| p.conjugator.concat(&Word::letter(Letter::pos(x))).concat(&p.conjugator.inverse()))
            .collect()
    }

    pub fn member(&self, alpha: &FcWord, p: &Parabolic) -> bool {
        let beta = self.conjugate_form(&p.conjugator, alpha);
        self.fc.member(&beta, p.standard).expect("subset of S")
    }

    pub fn member_word(&self, alpha: &Word, p: &Parabolic) -> Result<bool> {
        Ok(self.member(&self.fc.normal_form(alpha)?, p))
    }

    /// `Q ⊆ P`.
    pub fn contains(&self, p: &Parabolic, q: &Parabolic) -> bool {
        self.generators(q)
            .iter()
            .all(|w| self.member_word(w, p).expect("ambient letters"))
    }

    /// `h P h^{-1}`.
    pub fn conjugate(&self, h: &Word, p: &Parabolic) -> Parabolic {
        self.make(&h.concat(&p.conjugator), p.standard)
            .expect("standard part already spherical")
    }

    /// The standard subset `Y` with `h^{-1} P h = A_Y`, if there is one.
    pub fn standardize(&self, p: &Parabolic, h: &Word) -> Option<GenSet> {
        self.standard_by_z.get(&self.conjugate_form(h, &p.z)).copied()
    }

    /// First `h` in ShortLex order with `h^{-1} z_P h = z_Q` and `|h| ≤ bound`.
    pub fn is_conjugate(&self, p: &Parabolic, q: &Parabolic, bound: usize) -> Option<Word> {
        if p.standard.len() != q.standard.len() {
            return None;
        }
        let words = reduced_words_up_to(self.graph().all(), bound);
        par::find_map_first(&words, |h| (self.conjugate_form(h, &p.z) == q.z).then(|| h.clone()))
    }

    /// Vertices of the complex are proper, irreducible and nontrivial.
    pub fn check_vertex(&self, p: &Parabolic) -> Result<()> {
        if p.is_trivial() || !p.irreducible {
            return Err(Error::InvalidParabolic("irreducible and nontrivial"));
        }
        if p.standard == self.graph().all() {
            return Err(Error::InvalidParabolic("proper"));
        }
        Ok(())
    }

    pub fn centers_commute(&self, p: &Parabolic, q: &Parabolic) -> bool {
        self.fc.multiply(&p.z, &q.z) == self.fc.multiply(&q.z, &p.z)
    }

    /// Commuting-centers test plus, when it holds, a bounded search for a
    /// simultaneous standardizing conjugator.
    pub fn is_adjacent(&self, p: &Parabolic, q: &Parabolic, witness_bound: usize) -> Result<Adjacency> {
        self.check_vertex(p)?;
        self.check_vertex(q)?;
        let centers_commute = self.centers_commute(p, q);
        let equal = p == q;
        let witness = if centers_commute {
            self.standard_witness(p, q, witness_bound)
        } else {
            None
        };
        Ok(Adjacency {
            centers_commute,
            equal,
            witness,
        })
    }

    fn classify(&self, x: GenSet, y: GenSet) -> Option<AdjacencyKind> {
        if x == y {
            Some(AdjacencyKind::Equal)
        } else if x.is_subset(y) || y.is_subset(x) {
            Some(AdjacencyKind::Inclusion)
        } else if x.intersection(y).is_empty() && x.iter().all(|a| y.iter().all(|b| self.graph().commute(a, b))) {
            Some(AdjacencyKind::CommuteDisjoint)
        } else {
            None
        }
    }

    /// Searches `h ∈ {w, g_P w, g_Q w : |w| ≤ bound}` with both `h^{-1}Ph`
    /// and `h^{-1}Qh` standard and in an allowed configuration.
    pub fn standard_witness(&self, p: &Parabolic, q: &Parabolic, bound: usize) -> Option<StandardWitness> {
        let candidates = self.witness_candidates(p, q, bound);
        par::find_map_first(&candidates, |h| {
            let x = self.standardize(p, h)?;
            let y = self.standardize(q, h)?;
            self.classify(x, y).map(|kind| StandardWitness {
                kind,
                conjugator: h.clone(),
                x,
                y,
            })
        })
    }

    fn witness_candidates(&self, p: &Parabolic, q: &Parabolic, bound: usize) -> Vec<Word> {
        let short = reduced_words_up_to(self.graph().all(), bound);
        let mut out: Vec<Word> = Vec::new();
        for base in [&p.conjugator, &q.conjugator, &Word::new()] {
            for w in &short {
                let h = base.concat(w).freely_reduced();
                if !out.contains(&h) {
                    out.push(h);
                }
            }
        }
        out
    }

    /// [`Self::standard_witness`] for many pairs, standardizing each distinct
    /// `(parabolic, h)` once.
    pub fn standard_witnesses(&self, pairs: &[(Parabolic, Parabolic)], bound: usize) -> Vec<Option<StandardWitness>> {
        let per_pair: Vec<Vec<Word>> = par::map(pairs, |(p, q)| self.witness_candidates(p, q, bound));
        let mut jobs: Vec<(&Parabolic, &Word)> = Vec::new();
        let mut slot: HashMap<(&str, &Word), usize> = HashMap::default();
        for ((p, q), hs) in pairs.iter().zip(&per_pair) {
            for h in hs {
                for r in [p, q] {
                    slot.entry((r.key.as_str(), h)).or_insert_with(|| {
                        jobs.push((r, h));
                        jobs.len() - 1
                    });
                }
            }
        }
        let standard: Vec<Option<GenSet>> = par::map(&jobs, |&(r, h)| self.standardize(r, h));
        pairs
            .iter()
            .zip(&per_pair)
            .map(|((p, q), hs)| {
                hs.iter().find_map(|h| {
                    let x = standard[slot[&(p.key.as_str(), h)]]?;
                    let y = standard[slot[&(q.key.as_str(), h)]]?;
                    self.classify(x, y).map(|kind| StandardWitness {
                        kind,
                        conjugator: h.clone(),
                        x,
                        y,
                    })
                })
            })
            .collect()
    }

    /// Smallest spherical standard subset containing `h^{-1} α h`, if any.
    fn spherical_support(&self, alpha: &FcWord, h: &Word) -> Option<GenSet> {
        let x = self.fc.support(&self.conjugate_form(h, alpha));
        self.is_spherical(x).then_some(x)
    }

    fn search_conjugators(&self, search: &MinimalSearch) -> Vec<Word> {
        let short = reduced_words_up_to(self.graph().all(), search.conjugator_bound);
        let mut out: Vec<Word> = short.clone();
        for seed in &search.seeds {
            for w in &short {
                let h = seed.concat(w).freely_reduced();
                if !out.contains(&h) {
                    out.push(h);
                }
            }
        }
        out
    }

    /// The smallest spherical parabolic containing `α` found by searching
    /// conjugators, certified against every searched parabolic containing `α`.
    pub fn minimal_parabolic(
        &self,
        alpha: &FcWord,
        witness: Option<&Parabolic>,
        search: &MinimalSearch,
    ) -> Result<MinimalParabolic> {
        let mut search = search.clone();
        if let Some(p) = witness {
            if !self.member(alpha, p) {
                return Err(Error::NoWitness);
            }
            search.seeds.push(p.conjugator.clone());
        }
        // Re-seed from the best candidate until the rank stops dropping.
        let mut found: Vec<(Word, GenSet)> = Vec::new();
        let mut best: Option<(Word, GenSet)> = None;
        loop {
            let hs = self.search_conjugators(&search);
            for hit in par::filter_map(&hs, |h| self.spherical_support(alpha, h).map(|x| (h.clone(), x))) {
                if !found.contains(&hit) {
                    found.push(hit);
                }
            }
            let next = found
                .iter()
                .min_by(|a, b| (a.1.len(), a.0.len(), &a.0).cmp(&(b.1.len(), b.0.len(), &b.0)))
                .cloned()
                .ok_or(Error::NoWitness)?;
            let improved = best.as_ref().is_none_or(|b| next.1.len() < b.1.len());
            let rep = self.make(&next.0, next.1)?.conjugator;
            best = Some(next);
            if !improved || search.seeds.contains(&rep) {
                break;
            }
            search.seeds.push(rep);
        }
        let (h, x) = best.expect("nonempty search");
        let parabolic = self.make(&h, x)?;
        let violations = par::filter_map(&found, |(h, y)| {
            let r = self.make(h, *y).expect("spherical");
            (!self.contains(&r, &parabolic)).then_some(())
        })
        .len();
        Ok(MinimalParabolic {
            parabolic,
            containing: found.len(),
            violations,
        })
    }

    /// Elements `g w g^{-1}` with `w` a reduced word over `X` of length `≤ radius`.
    fn sample_ball(&self, p: &Parabolic, radius: usize) -> Vec<FcWord> {
        let words = reduced_words_up_to(p.standard, radius);
        let mut out = par::map(&words, |w| {
            let full = p.conjugator.concat(w).concat(&p.conjugator.inverse());
            self.fc.normal_form(&full).expect("ambient letters")
        });
        out.sort();
        out.dedup();
        out
    }

    /// Certified-bounded intersection `P ∩ Q`.
    pub fn intersect(&self, p: &Parabolic, q: &Parabolic, budget: usize) -> Result<Intersection> {
        if p.conjugator.is_empty() && q.conjugator.is_empty() {
            let r = self.standard(p.standard.intersection(q.standard))?;
            let containment = self.contains(p, &r) && self.contains(q, &r);
            return Ok(Intersection {
                parabolic: r,
                certificate: IntersectionCertificate {
                    containment,
                    saturation: true,
                    standard_fast_path: Some(containment),
                    budget,
                    sampled_common: 0,
                    candidates: 1,
                },
            });
        }
        let mut common: Vec<FcWord> = Vec::new();
        for (a, b) in [(p, q), (q, p)] {
            let ball = self.sample_ball(a, budget);
            common.extend(par::filter_map(&ball, |f| self.member(f, b).then(|| f.clone())));
        }
        common.sort();
        common.dedup();
        common.retain(|f| !f.is_identity());

        // Candidates: minimal parabolics of common elements and of pairwise products.
        let mut elements = common.clone();
        let few: Vec<&FcWord> = common.iter().take(8).collect();
        for (i, a) in few.iter().enumerate() {
            for b in &few[i + 1..] {
                let ab = self.fc.multiply(a, b);
                if !ab.is_identity() {
                    elements.push(ab);
                }
            }
        }
        elements.sort();
        elements.dedup();
        let search = MinimalSearch {
            conjugator_bound: 1,
            seeds: vec![p.conjugator.clone(), q.conjugator.clone()],
        };
        let mut candidates: Vec<Parabolic> = par::filter_map(&elements, |f| {
            self.minimal_parabolic(f, None, &search).ok().map(|m| m.parabolic)
        });
        candidates.sort_by(|a, b| a.key.cmp(&b.key));
        candidates.dedup();
        let n_candidates = candidates.len();
        let passing: Vec<Parabolic> = candidates
            .into_iter()
            .filter(|r| self.contains(p, r) && self.contains(q, r))
            .collect();
        // ⊆-maximal: highest rank, then the one containing the most other candidates.
        let parabolic = passing
            .iter()
            .map(|r| {
                let covered = passing.iter().filter(|o| self.contains(r, o)).count();
                (r.rank(), covered, std::cmp::Reverse(r.key.clone()), r)
            })
            .max_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)))
            .map(|t| t.3.clone());
        let parabolic = match parabolic {
            Some(r) => r,
            None => self.standard(GenSet::EMPTY)?,
        };
        let containment = self.contains(p, &parabolic) && self.contains(q, &parabolic);
        let saturation = common.iter().all(|f| self.member(f, &parabolic));
        Ok(Intersection {
            parabolic,
            certificate: IntersectionCertificate {
                containment,
                saturation,
                standard_fast_path: None,
                budget,
                sampled_common: common.len(),
                candidates: n_candidates,
            },
        })
    }

    /// `h x h^{-1} ∈ A_X` and `h^{-1} x h ∈ A_X` for every `x ∈ X`.
    pub fn is_normalizer(&self, h: &Word, x: GenSet) -> Result<bool> {
        if !self.is_spherical(x) {
            return Err(Error::NotSpherical(self.graph().format_set(x)));
        }
        for g in x.iter() {
            let l = Word::letter(Letter::pos(g));
            for w in [h.concat(&l).concat(&h.inverse()), h.inverse().concat(&l).concat(h)] {
                if !self.fc.member(&self.fc.normal_form(&w)?, x)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self, p: &Parabolic) -> serde_json::Value {
        let g = self.graph();
        json!({
            "key": p.key,
            "conjugator": p.conjugator.render(g),
            "standard_part": g.set_names(p.standard),
            "irreducible": p.irreducible,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn calc(text: &str) -> ParabolicCalculus {
        ParabolicCalculus::new(&DefiningGraph::parse(text).unwrap()).unwrap()
    }

    fn w(c: &ParabolicCalculus, text: &str) -> Word {
        Word::parse(c.graph(), text).unwrap()
    }

    fn p(c: &ParabolicCalculus, text: &str) -> Parabolic {
        c.parse(text).unwrap()
    }

    #[test]
    fn make_examples() {
        let c = calc("s t 3");
        assert_eq!(p(&c, "{s}").z().word().render(c.graph()), "s");
        let q = p(&c, "s;{t}");
        assert_eq!(q.z(), &c.form(&w(&c, "s t s^{-1}")).unwrap());
        assert_eq!(p(&c, "s t s;{s}"), p(&c, "{t}"));
        assert_ne!(p(&c, "{s}"), p(&c, "{t}"));
        assert!(c.parse("{s,t,u}").is_err());
        let f2 = calc("s\nt");
        assert!(matches!(f2.parse("{s,t}"), Err(Error::NotSpherical(_))));
    }

    #[test]
    fn key_ignores_inner_conjugators() {
        let c = calc("s t 3\nt u 3");
        let base = p(&c, "u s^{-1};{s,t}");
        for inner in reduced_words_up_to(base.standard_part(), 3) {
            let q = c.make(&w(&c, "u s^{-1}").concat(&inner), base.standard_part()).unwrap();
            assert_eq!(q, base);
        }
    }

    #[test]
    fn member_examples() {
        let c = calc("s t 3");
        assert!(c.member_word(&w(&c, "s"), &p(&c, "{s}")).unwrap());
        assert!(c.member_word(&w(&c, "s t s^{-1}"), &p(&c, "s;{t}")).unwrap());
        let f2 = calc("s\nt");
        assert!(!f2.member_word(&w(&f2, "t"), &p(&f2, "{s}")).unwrap());
    }

    #[test]
    fn conjugacy_examples() {
        let c = calc("s t 3");
        let s = p(&c, "{s}");
        let h = w(&c, "s t^{-1}");
        assert_eq!(c.conjugate(&h, &c.conjugate(&h.inverse(), &s)), s);
        let found = c.is_conjugate(&s, &p(&c, "{t}"), 3).unwrap();
        // (ts)^{-1} s (ts) = t; Δ works as well.
        assert_eq!(found.render(c.graph()), "t s");
        let delta = w(&c, "s t s");
        assert_eq!(c.conjugate_form(&delta, s.z()), *p(&c, "{t}").z());
        let f2 = calc("s\nt");
        assert!(f2.is_conjugate(&p(&f2, "{s}"), &p(&f2, "{t}"), 5).is_none());
    }

    #[test]
    fn adjacency_examples() {
        let c = calc("s t 3\nt u 3\ns u 2");
        let a = c.is_adjacent(&p(&c, "{s}"), &p(&c, "{s,t}"), 1).unwrap();
        assert!(a.adjacent());
        assert_eq!(a.witness.unwrap().kind, AdjacencyKind::Inclusion);
        let b = c.is_adjacent(&p(&c, "{s}"), &p(&c, "{u}"), 1).unwrap();
        assert!(b.adjacent());
        assert_eq!(b.witness.unwrap().kind, AdjacencyKind::CommuteDisjoint);
        let n = c.is_adjacent(&p(&c, "{s}"), &p(&c, "{t}"), 1).unwrap();
        assert!(!n.adjacent());
        assert!(c.is_adjacent(&p(&c, "{s}"), &p(&c, "{s,t,u}"), 1).is_err());
        let e = c.is_adjacent(&p(&c, "t;{s}"), &p(&c, "t;{s}"), 1).unwrap();
        assert!(e.equal && !e.adjacent());
    }

    #[test]
    fn adjacency_is_symmetric_and_equivariant() {
        let c = ParabolicCalculus::new(&catalog::get("path3").unwrap()).unwrap();
        let verts: Vec<Parabolic> = c.standard_vertices().into_iter().map(|x| c.standard(x).unwrap()).collect();
        let hs = reduced_words_up_to(c.graph().all(), 1);
        for a in &verts {
            for b in &verts {
                let ab = c.is_adjacent(a, b, 1).unwrap().adjacent();
                assert_eq!(ab, c.is_adjacent(b, a, 1).unwrap().adjacent());
                for h in &hs {
                    let (ha, hb) = (c.conjugate(h, a), c.conjugate(h, b));
                    assert_eq!(ab, c.is_adjacent(&ha, &hb, 1).unwrap().adjacent());
                }
            }
        }
    }

    #[test]
    fn batch_witnesses_match_single() {
        let c = ParabolicCalculus::new(&catalog::get("star4").unwrap()).unwrap();
        let verts: Vec<Parabolic> = c.standard_vertices().into_iter().map(|x| c.standard(x).unwrap()).collect();
        let mut pairs = Vec::new();
        for h in reduced_words_up_to(c.graph().all(), 1) {
            for a in &verts {
                for b in &verts {
                    pairs.push((a.clone(), c.conjugate(&h, b)));
                }
            }
        }
        let batch = c.standard_witnesses(&pairs, 1);
        for ((a, b), w) in pairs.iter().zip(batch) {
            assert_eq!(w, c.standard_witness(a, b, 1));
        }
    }

    #[test]
    fn minimal_parabolic_examples() {
        let c = calc("s t 3");
        let search = MinimalSearch::default();
        let m = c.minimal_parabolic(&c.form(&w(&c, "s")).unwrap(), None, &search).unwrap();
        assert_eq!(m.parabolic, p(&c, "{s}"));
        let m = c.minimal_parabolic(&c.form(&w(&c, "s t s^{-1}")).unwrap(), None, &search).unwrap();
        assert_eq!(m.parabolic, p(&c, "s;{t}"));
        assert_eq!(m.violations, 0);
        let d2 = c.form(&w(&c, "s t s s t s")).unwrap();
        let m = c.minimal_parabolic(&d2, None, &search).unwrap();
        assert_eq!(m.parabolic, p(&c, "{s,t}"));
        let again = c.minimal_parabolic(m.parabolic.z(), None, &search).unwrap();
        assert_eq!(again.parabolic, m.parabolic);
    }

    #[test]
    fn intersection_examples() {
        let c = ParabolicCalculus::new(&catalog::get("path3").unwrap()).unwrap();
        let r = c.intersect(&p(&c, "{s,t}"), &p(&c, "{t,u}"), 4).unwrap();
        assert_eq!(r.parabolic, p(&c, "{t}"));
        assert_eq!(r.certificate.standard_fast_path, Some(true));
        let q = p(&c, "s;{t}");
        let r = c.intersect(&q, &q, 2).unwrap();
        assert_eq!(r.parabolic, q);
        assert!(r.certificate.passed());
        let r = c.intersect(&p(&c, "{s,t}"), &q, 3).unwrap();
        assert_eq!(r.parabolic, q);
        assert!(r.certificate.passed());
    }

    #[test]
    fn normalizer_examples() {
        let c = calc("s t 3\nt u 3");
        let st = c.graph().parse_set("{s,t}").unwrap();
        assert!(c.is_normalizer(&w(&c, "s t s"), st).unwrap());
        assert!(!c.is_normalizer(&w(&c, "s"), GenSet::singleton(1)).unwrap());
        assert!(c.is_normalizer(p(&c, "{s,t}").z().word(), st).unwrap());
        assert!(c.is_normalizer(&w(&c, "u"), GenSet::singleton(2)).unwrap());
    }
}
