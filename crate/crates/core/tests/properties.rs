//! Randomized structural properties, driven by proptest over seeded samples
//! from a small family of posets.

use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use orbitmesy::dynamics::{
    orbit_size_via_deflation, promote, promote_inverse, promotion_orbit, sliding_subposet, swap,
    SlideDirection,
};
use orbitmesy::examples::ten_element_poset;
use orbitmesy::labeling::{sample_inc, IncLabeling};
use orbitmesy::poset::Poset;

fn poset_family(index: usize) -> Arc<Poset> {
    match index {
        0 => Arc::new(Poset::zigzag(1)),
        1 => Arc::new(Poset::zigzag(2)),
        2 => Arc::new(Poset::zigzag(3)),
        3 => Arc::new(Poset::zigzag(4)),
        4 => Arc::new(Poset::zigzag(5)),
        5 => Arc::new(Poset::zigzag(6)),
        6 => Arc::new(Poset::chain(3)),
        7 => Arc::new(Poset::chain(5)),
        _ => ten_element_poset(),
    }
}

fn sampled(index: usize, extra: u32, seed: u64) -> IncLabeling {
    let poset = poset_family(index);
    let q = poset.longest_chain_len() + extra;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_inc(&poset, q, &mut rng).unwrap()
}

fn arb_labeling() -> impl Strategy<Value = IncLabeling> {
    (0usize..9, 0u32..6, any::<u64>()).prop_map(|(i, extra, seed)| sampled(i, extra, seed))
}

/// Restricted to zig-zags small enough that a brute orbit walk stays cheap.
fn arb_small_zigzag_labeling() -> impl Strategy<Value = IncLabeling> {
    (0usize..5, 0u32..5, any::<u64>()).prop_map(|(i, extra, seed)| sampled(i, extra, seed))
}

/// Even zig-zags, where the canonical order-reversing involution exists.
fn arb_self_dual_labeling() -> impl Strategy<Value = IncLabeling> {
    (prop_oneof![Just(1usize), Just(3), Just(5), Just(8)], 0u32..5, any::<u64>())
        .prop_map(|(i, extra, seed)| sampled(i, extra, seed))
}

proptest! {
    #[test]
    fn promotion_round_trips(f in arb_labeling()) {
        prop_assert_eq!(&promote_inverse(&promote(&f)), &f);
        prop_assert_eq!(&promote(&promote_inverse(&f)), &f);
    }

    #[test]
    fn promotion_rotates_content(f in arb_labeling()) {
        prop_assert_eq!(promote(&f).content(), f.content().rotated(1));
        prop_assert_eq!(promote_inverse(&f).content().rotated(1), f.content());
    }

    #[test]
    fn deflation_packs_and_inflation_undoes_it(f in arb_labeling()) {
        let packed = f.deflate();
        prop_assert!(packed.is_packed());
        prop_assert_eq!(&packed.deflate(), &packed);
        prop_assert_eq!(&IncLabeling::inflate(&packed, &f.content()).unwrap(), &f);
    }

    #[test]
    fn content_period_divides_q(f in arb_labeling()) {
        let content = f.content();
        let period = content.period();
        prop_assert_eq!(content.len() % period, 0);
        prop_assert_eq!(content.rotated(period), content);
    }

    #[test]
    fn orbit_size_formula_matches_brute_walk(f in arb_small_zigzag_labeling()) {
        let orbit = promotion_orbit(&f).unwrap();
        prop_assert_eq!(orbit_size_via_deflation(&f).unwrap(), orbit.size());
    }

    #[test]
    fn swap_battery_on_self_dual_posets(f in arb_self_dual_labeling()) {
        let kappa = f.poset().canonical_involution().unwrap();
        let swapped = swap(&f, &kappa);
        prop_assert_eq!(&swap(&swapped, &kappa), &f);
        prop_assert_eq!(swapped.content(), f.content().reversed());
        prop_assert_eq!(swapped.deflate(), swap(&f.deflate(), &kappa));
        prop_assert_eq!(&swap(&promote_inverse(&f), &kappa), &promote(&swapped));
        let forward = sliding_subposet(&swapped, SlideDirection::Forward);
        let mapped: Vec<Vec<usize>> = sliding_subposet(&f, SlideDirection::Inverse)
            .layers()
            .iter()
            .map(|layer| {
                let mut v: Vec<usize> = layer.iter().map(|&x| kappa.apply(x)).collect();
                v.sort_unstable();
                v
            })
            .collect();
        prop_assert_eq!(forward.layers(), mapped.as_slice());
    }

    #[test]
    fn rowmotion_permutes_ideals(index in 0usize..9) {
        let poset = poset_family(index);
        let ideals = poset.order_ideals();
        let mut images: Vec<_> = ideals
            .iter()
            .map(|&i| poset.rowmotion(i).unwrap())
            .collect();
        images.sort();
        prop_assert_eq!(images, ideals);
    }

    #[test]
    fn dual_ideal_is_an_involution(
        index in prop_oneof![Just(1usize), Just(3), Just(5), Just(6), Just(7), Just(8)],
    ) {
        let poset = poset_family(index);
        let kappa = poset.canonical_involution().unwrap();
        for ideal in poset.order_ideals() {
            let dual = poset.dual_ideal(&kappa, ideal).unwrap();
            prop_assert_eq!(poset.dual_ideal(&kappa, dual).unwrap(), ideal);
        }
    }
}
