use num_bigint::BigInt;
use proptest::prelude::*;
use raag_core::coalgebra::{cohom_to_graph_hom, is_cohomomorphism};
use raag_core::oracle::{bf_is_a_phi, small_graphs};
use raag_core::{
    a_on_hom, canonical_coalgebra, compose_homs, enumerate_homs, raag_of_graph, AcGroup, AcWord, Graph, Group,
    GroupHandle, GroupHom, Syllable, Word,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus(max_vertices: usize) -> Vec<(&'static str, Graph)> {
    small_graphs().into_iter().filter(|(_, g)| g.len() <= max_vertices).collect()
}

fn random_word(rng: &mut ChaCha8Rng, g: &Graph, max_len: usize) -> Word {
    if g.is_empty() {
        return Word::identity(g);
    }
    let n = rng.gen_range(0..=max_len);
    let s = (0..n)
        .map(|_| Syllable::new(rng.gen_range(0..g.len()), if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    Word::from_syllables(g, s).unwrap().canonical_form()
}

fn random_ac_word(rng: &mut ChaCha8Rng, h: &GroupHandle, symbols: usize) -> AcWord<Word> {
    let acg = AcGroup::new(h.clone());
    let letters = (0..symbols)
        .map(|_| {
            let k: i64 = if rng.gen_bool(0.5) { rng.gen_range(1..=2) } else { -rng.gen_range(1..=2) };
            (random_word(rng, h.graph(), 3), BigInt::from(k))
        })
        .collect();
    acg.word(letters).unwrap()
}

#[test]
fn canonical_coalgebras_satisfy_the_axioms() {
    for (name, g) in corpus(5) {
        let c = canonical_coalgebra(&g);
        assert!(c.check_coalgebra().is_coalgebra(), "{name}");
        assert!(c.check_counit().unwrap().holds(), "{name}");
        assert!(c.check_coassociativity().unwrap().holds(), "{name}");
    }
}

#[test]
fn comonad_counit_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (_, g) in corpus(4) {
        let h = raag_of_graph(&g);
        let acg = AcGroup::new(h.clone());
        let acacg = AcGroup::new(acg.clone());
        for _ in 0..20 {
            let x = acg.canonical(&random_ac_word(&mut rng, &h, 4));
            let d = acg.delta(&x);
            // ε_{ACG} ∘ δ = 1
            assert!(acg.equals(&acacg.epsilon(&d), &x).unwrap());
            // ACε ∘ δ = 1
            assert!(acg.equals(&d.map_symbols(|s| acg.epsilon(s)), &x).unwrap());
        }
    }
}

#[test]
fn comonad_coassociativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (_, g) in corpus(4) {
        let h = raag_of_graph(&g);
        let acg = AcGroup::new(h.clone());
        let acacg = AcGroup::new(acg.clone());
        let ac3 = AcGroup::new(acacg.clone());
        for _ in 0..10 {
            let x = acg.canonical(&random_ac_word(&mut rng, &h, 3));
            let d = acg.delta(&x);
            let lhs = acacg.delta(&d);
            let rhs = d.map_symbols(|s| acg.delta(s));
            assert!(ac3.equals(&lhs, &rhs).unwrap());
        }
    }
}

#[test]
fn counit_is_a_natural_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (_, src) in corpus(3) {
        for (_, dst) in corpus(3) {
            let homs = enumerate_homs(&src, &dst).unwrap();
            let (hs, hd) = (raag_of_graph(&src), raag_of_graph(&dst));
            let (acs, acd) = (AcGroup::new(hs.clone()), AcGroup::new(hd.clone()));
            for phi in homs.iter().take(6) {
                let f = a_on_hom(phi);
                for _ in 0..5 {
                    let x = random_ac_word(&mut rng, &hs, 3);
                    let y = random_ac_word(&mut rng, &hs, 3);
                    let mapped = acs.map_hom(&f, &x).unwrap();
                    assert_eq!(acd.epsilon(&mapped), f.apply(&acs.epsilon(&x)));
                    let xy = acs.multiply(&x, &y);
                    assert_eq!(acs.epsilon(&xy), hs.multiply(&acs.epsilon(&x), &acs.epsilon(&y)));
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn ac_equality_ignores_unrelated_symbols(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = small_graphs().into_iter().find(|(n, _)| *n == "square").unwrap().1;
        let h = raag_of_graph(&g);
        let acg = AcGroup::new(h.clone());
        let x = random_ac_word(&mut rng, &h, 4);
        let z = random_ac_word(&mut rng, &h, 3);
        let padded = x.concat(&z).concat(&z.inverse());
        prop_assert!(acg.equals(&x, &padded).unwrap());
        prop_assert_eq!(acg.canonical(&padded), acg.canonical(&x));
        let y = random_ac_word(&mut rng, &h, 4);
        let direct = acg.equals(&x, &y).unwrap();
        prop_assert_eq!(direct, acg.equals(&padded, &y.concat(&z.inverse()).concat(&z)).unwrap());
    }
}

/// Random homomorphisms `A(src) → A(dst)` with short generator images.
fn random_group_homs(
    rng: &mut ChaCha8Rng,
    src: &Graph,
    dst: &Graph,
    count: usize,
) -> Vec<GroupHom<GroupHandle, GroupHandle>> {
    let (hs, hd) = (raag_of_graph(src), raag_of_graph(dst));
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < count * 50 {
        attempts += 1;
        let images: Vec<Word> = (0..src.len())
            .map(|_| {
                if rng.gen_bool(0.5) && !dst.is_empty() {
                    Word::generator_index(dst, rng.gen_range(0..dst.len()))
                } else {
                    random_word(rng, dst, 2)
                }
            })
            .collect();
        if let Ok(f) = GroupHom::new(&hs, &hd, images) {
            out.push(f);
        }
    }
    out
}

#[test]
fn cohomomorphisms_are_exactly_the_graph_homs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (_, src) in corpus(3) {
        for (_, dst) in corpus(3) {
            let (cs, cd) = (canonical_coalgebra(&src), canonical_coalgebra(&dst));
            for phi in enumerate_homs(&src, &dst).unwrap() {
                let f = a_on_hom(&phi);
                assert!(is_cohomomorphism(&f, &cs, &cd).unwrap().holds());
                assert_eq!(cohom_to_graph_hom(&f, &cs, &cd).unwrap(), Some(phi));
            }
            for f in random_group_homs(&mut rng, &src, &dst, 40) {
                let accepted = is_cohomomorphism(&f, &cs, &cd).unwrap().holds();
                let matched = bf_is_a_phi(&f, &src, &dst).unwrap();
                assert_eq!(accepted, matched.is_some(), "{f:?}");
            }
        }
    }
}

#[test]
fn cohomomorphisms_compose() {
    let graphs = corpus(3);
    for (_, a) in &graphs {
        for (_, b) in &graphs {
            for (_, c) in &graphs {
                let ab = enumerate_homs(a, b).unwrap();
                let bc = enumerate_homs(b, c).unwrap();
                for phi in ab.iter().take(3) {
                    for psi in bc.iter().take(3) {
                        let composite = a_on_hom(phi).then(&a_on_hom(psi)).unwrap();
                        let (ca, cc) = (canonical_coalgebra(a), canonical_coalgebra(c));
                        assert!(is_cohomomorphism(&composite, &ca, &cc).unwrap().holds());
                        let expected = compose_homs(phi, psi).unwrap();
                        assert_eq!(cohom_to_graph_hom(&composite, &ca, &cc).unwrap(), Some(expected));
                    }
                }
            }
        }
    }
}
