use std::collections::HashMap;

use fc_artin::catalog;
use fc_artin::coxeter::{Mat, ReflectionRep};
use fc_artin::fc::FcGroup;
use fc_artin::garside::GarsideGroup;
use fc_artin::word::reduced_words_up_to;
use fc_artin::{DefiningGraph, GenSet, Letter, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_word(rng: &mut impl Rng, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word((0..len)
        .map(|_| Letter {
            gen: rng.gen_range(0..n),
            inverse: rng.gen_bool(0.5),
        })
        .collect())
}

/// `s t s …` with `m` letters.
fn braid_side(a: usize, b: usize, m: u32) -> Word {
    Word::from_gens(&(0..m).map(|k| if k % 2 == 0 { a } else { b }).collect::<Vec<_>>())
}

/// Inserts a random defining relator (or its inverse) at a random position.
fn perturb(rng: &mut impl Rng, g: &DefiningGraph, w: &Word) -> Word {
    let edges: Vec<(usize, usize, u32)> = g.edges();
    let rel = if edges.is_empty() || rng.gen_bool(0.3) {
        let s = rng.gen_range(0..g.len());
        Word(vec![Letter::pos(s), Letter::neg(s)])
    } else {
        let (a, b, m) = edges[rng.gen_range(0..edges.len())];
        let r = braid_side(a, b, m).concat(&braid_side(b, a, m).inverse());
        if rng.gen_bool(0.5) {
            r.inverse()
        } else {
            r
        }
    };
    let pos = rng.gen_range(0..=w.len());
    let mut v = w.0[..pos].to_vec();
    v.extend_from_slice(&rel.0);
    v.extend_from_slice(&w.0[pos..]);
    Word(v)
}

fn coxeter_matrix(rep: &ReflectionRep, w: &Word) -> Mat {
    w.letters().iter().fold(rep.identity(), |m, l| rep.mul_gen_right(&m, l.gen))
}

/// Exponent sums per class of generators joined by odd labels.
fn abelianization(g: &DefiningGraph, w: &Word) -> Vec<i64> {
    let n = g.len();
    let mut class: Vec<usize> = (0..n).collect();
    fn find(c: &mut Vec<usize>, x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for (a, b, m) in g.edges() {
        if m % 2 == 1 {
            let (ra, rb) = (find(&mut class, a), find(&mut class, b));
            class[ra] = rb;
        }
    }
    let mut sums = vec![0; n];
    for (gen, e) in w.exponent_sums(n).into_iter().enumerate() {
        let r = find(&mut class, gen);
        sums[r] += e;
    }
    sums
}

#[test]
fn random_consistency_on_catalog() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, g) in catalog::catalog() {
        let fc = FcGroup::new(&g).unwrap();
        let rep = ReflectionRep::new(&g);
        for _ in 0..1000 {
            let w = random_word(&mut rng, g.len(), 8);
            let f = fc.normal_form(&w).unwrap();
            assert!(fc.normal_form(&w.concat(&w.inverse())).unwrap().is_identity(), "{name}");
            assert_eq!(fc.normal_form(&fc.render(&f)).unwrap(), f, "{name}: not idempotent");

            let u = random_word(&mut rng, g.len(), 4);
            let v = random_word(&mut rng, g.len(), 4);
            let (u2, v2) = (perturb(&mut rng, &g, &u), perturb(&mut rng, &g, &v));
            assert!(fc.equal_words(&u.concat(&v), &u2.concat(&v2)).unwrap(), "{name}");

            let w2 = perturb(&mut rng, &g, &w);
            assert_eq!(fc.normal_form(&w2).unwrap(), f, "{name}");
            assert_eq!(coxeter_matrix(&rep, &w), coxeter_matrix(&rep, &w2));
            assert_eq!(abelianization(&g, &w), abelianization(&g, &w2));
        }
    }
}

#[test]
fn equal_forms_have_equal_quotients() {
    let g = catalog::get("path3").unwrap();
    let fc = FcGroup::new(&g).unwrap();
    let rep = ReflectionRep::new(&g);
    let mut seen: HashMap<_, Word> = HashMap::new();
    for w in reduced_words_up_to(g.all(), 4) {
        let f = fc.normal_form(&w).unwrap();
        if let Some(prev) = seen.get(&f) {
            assert_eq!(coxeter_matrix(&rep, prev), coxeter_matrix(&rep, &w));
            assert_eq!(abelianization(&g, prev), abelianization(&g, &w));
        } else {
            seen.insert(f, w);
        }
    }
}

#[test]
fn leaves_agree_with_garside() {
    for name in ["path3", "cycle5"] {
        let g = catalog::get(name).unwrap();
        let fc = FcGroup::new(&g).unwrap();
        let leaf = GenSet::from_indices([0, 1]);
        let gg = GarsideGroup::new(&g, leaf).unwrap();
        let words = reduced_words_up_to(leaf, 6);
        let mut by_fc: HashMap<_, usize> = HashMap::new();
        let mut by_garside: HashMap<_, usize> = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            let a = *by_fc.entry(fc.normal_form(w).unwrap()).or_insert(i);
            let b = *by_garside.entry(gg.normal_form(w).unwrap()).or_insert(i);
            assert_eq!(a, b, "{name}: {}", w.render(&g));
        }
    }
}

#[test]
fn membership_matches_support() {
    let g = catalog::get("cycle5").unwrap();
    let fc = FcGroup::new(&g).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let x = GenSet(rng.gen_range(0..32));
        let w = random_word(&mut rng, 5, 6);
        let inside: Word = Word(w.0.iter().copied().filter(|l| x.contains(l.gen)).collect());
        let f = fc.normal_form(&inside).unwrap();
        assert!(fc.member(&f, x).unwrap());
        assert!(fc.support(&f).is_subset(x));
    }
}
