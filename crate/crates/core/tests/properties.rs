mod common;

use std::sync::OnceLock;

use common::*;
use hyperbck::construct::{coequalizer, equalizer, product, Congruence, Provenance};
use hyperbck::enumerate::{are_isomorphic, canonical_code, canonical_model, enumerate_fuzzy_assignments, models_up_to};
use hyperbck::format::{parse_structure, render_structure, Structure};
use hyperbck::fuzzy::{alpha_cut, cut_levels, restrict, standard_grid, validate_fuzzy};
use hyperbck::morphism::{enumerate_fuzzy_homs, enumerate_homs, is_fuzzy_hom};
use hyperbck::{Carrier, FuzzyHom, FuzzyHyperBCK, HyperBCK, Subset};
use proptest::prelude::*;
use proptest::sample::Index;

fn models() -> &'static [HyperBCK] {
    static M: OnceLock<Vec<HyperBCK>> = OnceLock::new();
    M.get_or_init(|| models_up_to(3).unwrap())
}

fn arb_table(max_n: usize) -> impl Strategy<Value = HyperBCK> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(1..(1u128 << n), n * n).prop_map(move |bits| {
            HyperBCK::new(
                Carrier::numbered(n).unwrap(),
                bits.into_iter().map(Subset::from_bits).collect(),
            )
            .unwrap()
        })
    })
}

fn arb_model() -> impl Strategy<Value = HyperBCK> {
    any::<Index>().prop_map(|i| i.get(models()).clone())
}

fn arb_fuzzy() -> impl Strategy<Value = FuzzyHyperBCK> {
    (arb_model(), any::<Index>()).prop_map(|(m, i)| {
        let all = enumerate_fuzzy_assignments(&m, &standard_grid());
        i.get(&all).clone()
    })
}

fn arb_subset(n: usize) -> impl Strategy<Value = Subset> {
    (1..(1u128 << n)).prop_map(Subset::from_bits)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn set_star_is_monotone(alg in arb_table(4), a in 1..16u128, b in 1..16u128, c in 0..16u128, d in 0..16u128) {
        let full = alg.full().bits();
        let (a, b) = (Subset::from_bits(a & full), Subset::from_bits(b & full));
        prop_assume!(!a.is_empty() && !b.is_empty());
        let (a2, b2) = (a.union(Subset::from_bits(c & full)), b.union(Subset::from_bits(d & full)));
        let small = alg.set_star(a, b).unwrap();
        prop_assert!(small.is_subset_of(alg.set_star(a2, b2).unwrap()));
        let naive = Naive::of(&alg);
        let expected: Set = naive.star(&a.iter().collect(), &b.iter().collect());
        prop_assert_eq!(small.iter().collect::<Set>(), expected);
    }

    #[test]
    fn set_order_widens_right_and_narrows_left(alg in arb_table(4), a in 1..16u128, b in 1..16u128, extra in 0..16u128) {
        let full = alg.full().bits();
        let (a, b) = (Subset::from_bits(a & full), Subset::from_bits(b & full));
        prop_assume!(!a.is_empty() && !b.is_empty());
        if alg.set_order(a, b).unwrap() {
            prop_assert!(alg.set_order(a, b.union(Subset::from_bits(extra & full))).unwrap());
            let first = Subset::singleton(a.first().unwrap());
            prop_assert!(alg.set_order(first, b).unwrap());
        }
    }

    #[test]
    fn early_exit_matches_full_report(alg in arb_table(3), strict in any::<bool>()) {
        prop_assert_eq!(alg.satisfies_axioms(strict), alg.validate(strict).passed());
    }

    #[test]
    fn relabelling_preserves_validity_and_canonical_form(alg in arb_table(3), rot in 0..3usize) {
        let n = alg.len();
        let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        let p = alg.permuted(&perm).unwrap();
        prop_assert_eq!(p.validate(false).violations().len(), alg.validate(false).violations().len());
        prop_assert_eq!(canonical_code(&p), canonical_code(&alg));
        prop_assert!(are_isomorphic(&canonical_model(&alg).unwrap(), &p));
    }

    #[test]
    fn subalgebras_of_models_are_models(alg in arb_model(), bits in 1..8u128) {
        let s = Subset::from_bits(bits & alg.full().bits()).with(alg.zero());
        if alg.is_subalgebra(s).unwrap() {
            let sub = alg.subalgebra(s).unwrap();
            prop_assert!(sub.validate(false).passed());
            let inc = hyperbck::Hom::inclusion(&alg, s).unwrap();
            prop_assert!(inc.is_injective());
        }
    }

    #[test]
    fn low_cuts_are_fuzzy_subalgebras(f in arb_fuzzy(), i in any::<Index>()) {
        let levels = cut_levels(&f);
        let alpha = *i.get(&levels);
        let zero = f.alg().zero();
        prop_assert!(alpha <= f.mu(zero));
        let cut = alpha_cut(&f, alpha);
        prop_assert!(cut.contains(zero));
        prop_assert!(f.alg().is_subalgebra(cut).unwrap());
        let r = restrict(&f, cut).unwrap();
        prop_assert!(validate_fuzzy(&r).passed());
    }

    #[test]
    fn structures_round_trip_with_arbitrary_labels(f in arb_fuzzy(), names in prop::collection::hash_set("[a-zA-Z_][a-zA-Z0-9_ ]{0,4}", 3)) {
        let names: Vec<String> = names.into_iter().collect();
        let carrier = Carrier::new(names[..f.len()].to_vec(), f.alg().zero()).unwrap();
        let alg = HyperBCK::new(carrier, f.alg().table().to_vec()).unwrap();
        let s = Structure::Fuzzy(FuzzyHyperBCK::new(alg, f.memberships().to_vec()).unwrap());
        let text = render_structure(&s);
        prop_assert_eq!(parse_structure(&text).unwrap(), s);
    }

    #[test]
    fn hom_enumeration_matches_brute_force(a in arb_model(), b in arb_model()) {
        let found: Vec<Vec<usize>> = enumerate_homs(&a, &b).iter().map(|h| h.map().to_vec()).collect();
        let (na, nb) = (Naive::of(&a), Naive::of(&b));
        let brute: Vec<Vec<usize>> = all_maps(a.len(), b.len()).into_iter().filter(|m| na.is_hom(m, &nb)).collect();
        prop_assert_eq!(found, brute);
    }

    #[test]
    fn fuzzy_homs_compose(a in arb_fuzzy(), b in arb_fuzzy(), c in arb_fuzzy()) {
        for f in enumerate_fuzzy_homs(&a, &b) {
            for g in enumerate_fuzzy_homs(&b, &c) {
                let h = f.then(&g).unwrap();
                prop_assert!(is_fuzzy_hom(h.hom(), &a, &c).unwrap());
                prop_assert!(naive_is_hom(&h));
            }
        }
        prop_assert!(enumerate_fuzzy_homs(&a, &a).contains(&FuzzyHom::identity(&a)));
    }

    #[test]
    fn products_of_models_are_fuzzy_models(a in arb_fuzzy(), b in arb_fuzzy()) {
        let p = product(&[a.clone(), b.clone()]).unwrap();
        prop_assert_eq!(p.object.len(), a.len() * b.len());
        prop_assert!(p.object.alg().validate(false).passed());
        prop_assert!(validate_fuzzy(&p.object).passed());
        for leg in &p.legs {
            prop_assert!(naive_is_hom(&leg.arrow));
            prop_assert!(leg.arrow.hom().is_surjective());
        }
    }

    #[test]
    fn self_pairs_have_trivial_limits(a in arb_fuzzy(), b in arb_fuzzy()) {
        for f in enumerate_fuzzy_homs(&a, &b) {
            let e = equalizer(&f, &f).unwrap();
            prop_assert_eq!(&e.object, &a);
            let q = coequalizer(&f, &f, 5).unwrap();
            let Provenance::Coequalizer { rho, .. } = &q.provenance else { unreachable!() };
            prop_assert_eq!(rho, &Congruence::discrete(b.alg()));
        }
    }

    #[test]
    fn congruence_meet_is_the_greatest_common_refinement(alg in arb_model(), x in any::<Index>(), y in any::<Index>()) {
        let parts = hyperbck::construct::partitions(alg.len());
        let a = Congruence::from_labels(alg.clone(), x.get(&parts)).unwrap();
        let b = Congruence::from_labels(alg.clone(), y.get(&parts)).unwrap();
        let m = a.meet(&b).unwrap();
        prop_assert!(m.refines(&a) && m.refines(&b));
        for p in &parts {
            let c = Congruence::from_labels(alg.clone(), p).unwrap();
            if c.refines(&a) && c.refines(&b) {
                prop_assert!(c.refines(&m));
            }
        }
    }

    #[test]
    fn subset_bitsets_behave_like_sets(a in arb_subset(7), b in arb_subset(7)) {
        let (sa, sb): (Set, Set) = (a.iter().collect(), b.iter().collect());
        prop_assert_eq!(a.union(b).iter().collect::<Set>(), sa.union(&sb).copied().collect::<Set>());
        prop_assert_eq!(a.intersection(b).iter().collect::<Set>(), sa.intersection(&sb).copied().collect::<Set>());
        prop_assert_eq!(a.is_subset_of(b), sa.is_subset(&sb));
        prop_assert_eq!(a.len(), sa.len());
    }
}

fn naive_is_hom(h: &FuzzyHom) -> bool {
    Naive::of(h.source().alg()).is_hom(h.map(), &Naive::of(h.target().alg()))
        && naive_fuzzy_map(h.map(), h.source(), h.target())
}
