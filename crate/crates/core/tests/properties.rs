use std::sync::OnceLock;

use fc_artin::parabolic::{Parabolic, ParabolicCalculus};
use fc_artin::{catalog, GenSet, Letter, Word};
use proptest::prelude::*;

fn calculi() -> &'static [ParabolicCalculus] {
    static CELL: OnceLock<Vec<ParabolicCalculus>> = OnceLock::new();
    CELL.get_or_init(|| {
        ["path3", "a3", "cycle5", "star4", "product"]
            .iter()
            .map(|n| ParabolicCalculus::new(&catalog::get(n).unwrap()).unwrap())
            .collect()
    })
}

fn word(raw: &[(usize, bool)], within: GenSet) -> Word {
    let gens: Vec<usize> = within.iter().collect();
    if gens.is_empty() {
        return Word::new();
    }
    Word(raw
        .iter()
        .map(|&(g, inverse)| Letter { gen: gens[g % gens.len()], inverse })
        .collect())
        .freely_reduced()
}

fn raw_word(max: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..8, any::<bool>()), 0..=max)
}

fn vertex(pc: &ParabolicCalculus, pick: usize) -> GenSet {
    let v = pc.standard_vertices();
    v[pick % v.len()]
}

fn conj(pc: &ParabolicCalculus, g: &Word, x: GenSet) -> Parabolic {
    pc.make(g, x).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    /// Keys depend only on the subgroup: `g A_X g^{-1} = g u A_X u^{-1} g^{-1}` for `u ∈ A_X`.
    #[test]
    fn key_ignores_coset_representative(k in 0usize..5, pick in 0usize..16, g in raw_word(3), u in raw_word(3)) {
        let pc = &calculi()[k];
        let x = vertex(pc, pick);
        let g = word(&g, pc.graph().all());
        let u = word(&u, x);
        let a = conj(pc, &g, x);
        let b = conj(pc, &g.concat(&u), x);
        prop_assert_eq!(a.key(), b.key());
        prop_assert_eq!(a.conjugator(), b.conjugator());
    }

    /// Equal keys mean mutual containment; containment of equal-rank subgroups means equal keys.
    #[test]
    fn key_soundness(k in 0usize..5, p1 in 0usize..16, p2 in 0usize..16, g in raw_word(2), h in raw_word(2)) {
        let pc = &calculi()[k];
        let all = pc.graph().all();
        let a = conj(pc, &word(&g, all), vertex(pc, p1));
        let b = conj(pc, &word(&h, all), vertex(pc, p2));
        let both = pc.contains(&a, &b) && pc.contains(&b, &a);
        prop_assert_eq!(a.key() == b.key(), both);
    }

    #[test]
    fn adjacency_is_symmetric(k in 0usize..5, p1 in 0usize..16, p2 in 0usize..16, g in raw_word(2), h in raw_word(2)) {
        let pc = &calculi()[k];
        let all = pc.graph().all();
        let a = conj(pc, &word(&g, all), vertex(pc, p1));
        let b = conj(pc, &word(&h, all), vertex(pc, p2));
        let ab = pc.is_adjacent(&a, &b, 1).unwrap();
        let ba = pc.is_adjacent(&b, &a, 1).unwrap();
        prop_assert_eq!(ab.centers_commute, ba.centers_commute);
        prop_assert_eq!(ab.adjacent(), ba.adjacent());
        prop_assert_eq!(ab.equal, ba.equal);
    }

    /// Conjugation by `h` acts on keys and preserves commuting centers.
    #[test]
    fn adjacency_is_equivariant(k in 0usize..5, p1 in 0usize..16, p2 in 0usize..16, g in raw_word(2), h in raw_word(3)) {
        let pc = &calculi()[k];
        let all = pc.graph().all();
        let g = word(&g, all);
        let h = word(&h, all);
        let (x, y) = (vertex(pc, p1), vertex(pc, p2));
        let a = conj(pc, &Word::new(), x);
        let b = conj(pc, &g, y);
        let ha = pc.conjugate(&h, &a);
        prop_assert_eq!(&ha, &conj(pc, &h, x));
        let hb = pc.conjugate(&h, &b);
        prop_assert_eq!(&hb, &conj(pc, &h.concat(&g), y));
        prop_assert_eq!(pc.centers_commute(&a, &b), pc.centers_commute(&ha, &hb));
    }

    /// Normal forms are invariant under inserting `v v^{-1}` and under multiplying by inverses.
    #[test]
    fn normal_form_is_stable(k in 0usize..5, w in raw_word(6), v in raw_word(3), cut in 0usize..7) {
        let pc = &calculi()[k];
        let all = pc.graph().all();
        let w = word(&w, all);
        let v = word(&v, all);
        let cut = cut.min(w.len());
        let padded = Word(w.letters()[..cut].to_vec()).concat(&v).concat(&v.inverse()).concat(&Word(w.letters()[cut..].to_vec()));
        let fc = pc.fc();
        prop_assert_eq!(fc.normal_form(&w).unwrap(), fc.normal_form(&padded).unwrap());
        prop_assert!(fc.normal_form(&w.concat(&w.inverse())).unwrap().is_identity());
        let f = fc.normal_form(&w).unwrap();
        prop_assert_eq!(fc.normal_form(f.word()).unwrap(), f);
    }
}
