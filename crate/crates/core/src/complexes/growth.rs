//! Word-metric growth with respect to a bounded normalizer generating set:
//! words that normalize some proper irreducible spherical standard parabolic.

use rustc_hash::FxHashMap as HashMap;

use crate::error::{Error, Result};
use crate::fc::{FcGroup, FcWord};
use crate::graph::DefiningGraph;
use crate::par;
use crate::parabolic::ParabolicCalculus;
use crate::word::{reduced_words_up_to, Word};

/// Shortest word (first in ShortLex) of each nontrivial element of length at
/// most `length_bound` normalizing some standard vertex. Closed under inverses.
pub fn normalizer_generators(pc: &ParabolicCalculus, length_bound: usize) -> Result<Vec<Word>> {
    let targets = pc.standard_vertices();
    let words: Vec<Word> = reduced_words_up_to(pc.graph().all(), length_bound)
        .into_iter()
        .filter(|w| !w.is_empty())
        .collect();
    let hits = par::filter_map(&words, |w| {
        targets
            .iter()
            .any(|&x| pc.is_normalizer(w, x).expect("spherical standard vertex"))
            .then(|| w.clone())
    });
    let fc = pc.fc();
    let mut seen: HashMap<FcWord, ()> = HashMap::default();
    let mut out = Vec::new();
    for w in hits {
        let f = fc.normal_form(&w)?;
        if !f.is_identity() && seen.insert(f, ()).is_none() {
            out.push(w);
        }
    }
    for w in out.clone() {
        let inv = fc.normal_form(&w.inverse())?;
        if seen.insert(inv, ()).is_none() {
            out.push(w.inverse());
        }
    }
    Ok(out)
}

/// Product of all generators in declared order.
pub fn default_target(graph: &DefiningGraph) -> Word {
    Word::from_gens(&(0..graph.len()).collect::<Vec<_>>())
}

/// How a distance was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Abelianized lower bound met by a greedy factorization.
    Bounds,
    Search,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowthRow {
    pub n: usize,
    pub distance: usize,
    pub nodes_expanded: usize,
    pub method: Method,
}

/// `d(ε, target^n)` in the Cayley graph of `gens`, for `n = 1..=horizon`.
/// Each search stops with an error once it has visited `node_budget` elements.
pub fn cayley_growth(
    fc: &FcGroup,
    target: &Word,
    gens: &[Word],
    horizon: usize,
    node_budget: usize,
) -> Result<Vec<GrowthRow>> {
    (1..=horizon)
        .map(|n| {
            let power = target.pow(n as i64);
            let goal = fc.normal_form(&power)?;
            let lower = abelian_lower_bound(fc.graph(), gens, &power);
            if let Some(upper) = greedy_factorization(fc, gens, &power) {
                if upper == lower {
                    return Ok(GrowthRow {
                        n,
                        distance: upper,
                        nodes_expanded: 0,
                        method: Method::Bounds,
                    });
                }
            }
            let (distance, nodes_expanded) = word_distance(fc, gens, &goal, node_budget)?;
            Ok(GrowthRow {
                n,
                distance,
                nodes_expanded,
                method: Method::Search,
            })
        })
        .collect()
}

pub fn to_csv(rows: &[GrowthRow]) -> String {
    let mut out = String::from("n,distance,nodes_expanded\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.n, r.distance, r.nodes_expanded));
    }
    out
}

/// Generators joined by an odd label share an image in the abelianization.
fn abelian_classes(graph: &DefiningGraph) -> Vec<usize> {
    let mut class: Vec<usize> = (0..graph.len()).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            c[x] = find(c, c[x]);
        }
        c[x]
    }
    for (a, b, m) in graph.edges() {
        if m % 2 == 1 {
            let (ra, rb) = (find(&mut class, a), find(&mut class, b));
            class[ra] = rb;
        }
    }
    (0..graph.len()).map(|x| find(&mut class, x)).collect()
}

fn abelian_norm(classes: &[usize], w: &Word) -> i64 {
    let mut sums = vec![0i64; classes.len()];
    for l in w.letters() {
        sums[classes[l.gen]] += if l.inverse { -1 } else { 1 };
    }
    sums.iter().map(|x| x.abs()).sum()
}

/// Each generator moves the abelianized ℓ¹ norm by at most its own norm.
pub fn abelian_lower_bound(graph: &DefiningGraph, gens: &[Word], w: &Word) -> usize {
    let classes = abelian_classes(graph);
    let step = gens.iter().map(|g| abelian_norm(&classes, g)).max().unwrap_or(0);
    let total = abelian_norm(&classes, w);
    if step == 0 {
        return 0;
    }
    ((total + step - 1) / step) as usize
}

/// Cuts `w` left to right into the longest pieces equal to a generator.
pub fn greedy_factorization(fc: &FcGroup, gens: &[Word], w: &Word) -> Option<usize> {
    let forms: HashMap<FcWord, ()> = gens
        .iter()
        .map(|g| (fc.normal_form(g).expect("ambient letters"), ()))
        .collect();
    let longest = gens.iter().map(Word::len).max().unwrap_or(0);
    let letters = w.letters();
    let (mut pos, mut pieces) = (0, 0);
    while pos < letters.len() {
        let cut = (1..=longest.min(letters.len() - pos)).rev().find(|&k| {
            let piece = Word(letters[pos..pos + k].to_vec());
            forms.contains_key(&fc.normal_form(&piece).expect("ambient letters"))
        })?;
        pos += cut;
        pieces += 1;
    }
    Some(pieces)
}

fn left_mul(fc: &FcGroup, g: &Word, x: &FcWord) -> FcWord {
    g.letters()
        .iter()
        .rev()
        .fold(x.clone(), |f, &l| fc.left_mul_letter(l, &f).expect("ambient letter"))
}

/// Bidirectional breadth-first search, always growing the smaller frontier by
/// one full level. Returns the distance and the number of expanded nodes.
pub fn word_distance(fc: &FcGroup, gens: &[Word], goal: &FcWord, node_budget: usize) -> Result<(usize, usize)> {
    if goal.is_identity() {
        return Ok((0, 0));
    }
    let mut sides: [HashMap<FcWord, usize>; 2] = [HashMap::default(), HashMap::default()];
    sides[0].insert(fc.identity(), 0);
    sides[1].insert(goal.clone(), 0);
    let mut frontiers = [vec![fc.identity()], vec![goal.clone()]];
    let mut levels = [0usize; 2];
    let mut expanded = 0;
    loop {
        let k = usize::from(frontiers[1].len() < frontiers[0].len());
        if frontiers[k].is_empty() {
            return Err(Error::Invalid("generators do not reach the target".into()));
        }
        expanded += frontiers[k].len();
        let found = par::map(&frontiers[k], |x| gens.iter().map(|g| left_mul(fc, g, x)).collect::<Vec<_>>());
        levels[k] += 1;
        let mut best: Option<usize> = None;
        let mut next = Vec::new();
        for y in found.into_iter().flatten() {
            if let Some(&d) = sides[1 - k].get(&y) {
                let total = levels[k] + d;
                best = Some(best.map_or(total, |b| b.min(total)));
            }
            if !sides[k].contains_key(&y) {
                sides[k].insert(y.clone(), levels[k]);
                next.push(y);
            }
        }
        if let Some(d) = best {
            return Ok((d, expanded));
        }
        if sides[0].len() + sides[1].len() > node_budget {
            return Err(Error::BudgetExhausted(format!("{node_budget} nodes")));
        }
        frontiers[k] = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn free_group_generators() {
        let g = catalog::get("f2").unwrap();
        let pc = ParabolicCalculus::new(&g).unwrap();
        let mut gens: Vec<String> = normalizer_generators(&pc, 2).unwrap().iter().map(|w| w.render(&g)).collect();
        gens.sort();
        assert_eq!(
            gens,
            ["s", "s s", "s^{-1}", "s^{-1} s^{-1}", "t", "t t", "t^{-1}", "t^{-1} t^{-1}"]
        );
    }

    #[test]
    fn free_group_distances() {
        let g = catalog::get("f2").unwrap();
        let pc = ParabolicCalculus::new(&g).unwrap();
        let gens = normalizer_generators(&pc, 2).unwrap();
        let rows = cayley_growth(pc.fc(), &default_target(&g), &gens, 4, 1_000_000).unwrap();
        assert_eq!(rows.iter().map(|r| r.distance).collect::<Vec<_>>(), [2, 4, 6, 8]);
        assert!(rows.iter().all(|r| r.method == Method::Search));
        assert!(to_csv(&rows).starts_with("n,distance,nodes_expanded\n1,2,"));
    }

    #[test]
    fn cycle_is_certified_by_bounds() {
        let g = catalog::get("cycle5").unwrap();
        let pc = ParabolicCalculus::new(&g).unwrap();
        let gens = normalizer_generators(&pc, 2).unwrap();
        let rows = cayley_growth(pc.fc(), &default_target(&g), &gens, 6, 100_000).unwrap();
        assert_eq!(rows.iter().map(|r| r.distance).collect::<Vec<_>>(), [3, 5, 8, 10, 13, 15]);
        assert_eq!(rows[0].method, Method::Bounds);
        let goal = pc.fc().normal_form(&default_target(&g)).unwrap();
        assert_eq!(word_distance(pc.fc(), &gens, &goal, 100_000).unwrap().0, 3);
    }

    #[test]
    fn identity_and_budget() {
        let g = catalog::get("f2").unwrap();
        let pc = ParabolicCalculus::new(&g).unwrap();
        let gens = normalizer_generators(&pc, 1).unwrap();
        assert_eq!(word_distance(pc.fc(), &gens, &pc.fc().identity(), 10).unwrap(), (0, 0));
        let far = pc.fc().normal_form(&default_target(&g).pow(5)).unwrap();
        assert!(matches!(word_distance(pc.fc(), &gens, &far, 20), Err(Error::BudgetExhausted(_))));
    }
}
