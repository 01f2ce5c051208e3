use std::collections::BTreeSet;
use std::sync::Arc;

use omega_nerve::adc::simplex_complex;
use omega_nerve::nerves::*;
use omega_nerve::simplicial::{fiber_product, representable};
use proptest::prelude::*;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn automorphisms_permute_solutions(k in 2usize..=7, n in 1usize..=2, p in 0usize..=3, pick in 0usize..8) {
        let m = MonoidSpec::cyclic(k).unwrap();
        let set = functor_labelings(&Arc::new(simplex_complex(p)), &m, n, Mode::Equality).unwrap();
        let autos = m.automorphisms();
        let a = &autos[pick % autos.len()];
        let rows: BTreeSet<Vec<i64>> = set.rows.iter().cloned().collect();
        let moved: BTreeSet<Vec<i64>> = set.rows.iter().map(|r| r.iter().map(|&v| a[v as usize]).collect()).collect();
        prop_assert_eq!(rows, moved);
    }

    #[test]
    fn kmn_counts_are_cocycle_counts(k in 2usize..=4, n in 1usize..=2, d in 1usize..=4) {
        // over a group, n-cocycles of Δ^p are as many as (n-1)-cochains modulo cocycles
        let nerve = kmn_nerve(&MonoidSpec::cyclic(k).unwrap(), n, d).unwrap();
        for p in 0..=d {
            prop_assert_eq!(nerve.object.count(p), k.pow(binom(p, n) as u32));
        }
    }

    #[test]
    fn window_slices_are_monotone_tuples(hi in 0i64..=3, d in 1usize..=4) {
        let s = slice_nerve(&MonoidSpec::window(0, hi).unwrap(), 1, d).unwrap();
        for p in 0..=d {
            prop_assert_eq!(s.object.count(p), binom(hi as usize + 1 + p, p + 1));
        }
    }

    #[test]
    fn homomorphisms_induce_simplicial_maps(k in 2usize..=6, c in 0usize..6) {
        let m = MonoidSpec::cyclic(k).unwrap();
        let nerve = kmn_nerve(&m, 1, 3).unwrap();
        let h: Vec<i64> = (0..k).map(|x| ((x * c) % k) as i64).collect();
        let f = homomorphism_map(&nerve, &nerve, &h).unwrap();
        let is_unit = (1..k).any(|u| (u * c) % k == 1);
        prop_assert_eq!(f.is_isomorphism(), is_unit);
    }
}

#[test]
fn cylinder_fibers_recover_coslices_and_slices() {
    for k in [2, 3] {
        let cyl = cylinder_nerve(&MonoidSpec::cyclic(k).unwrap(), 1, 3).unwrap();
        let star = representable(cyl.base.object.clone(), 0, 0).unwrap();
        let over0 = fiber_product(&cyl.pi0, &star).unwrap();
        let over1 = fiber_product(&cyl.pi1, &star).unwrap();
        // arrows out of ∗ and arrows into ∗: both k^(p+1) strings
        let expected: Vec<usize> = (0..=3).map(|p| k.pow(p as u32 + 1)).collect();
        assert_eq!(over0.object.counts(), expected);
        assert_eq!(over1.object.counts(), expected);
    }
}

#[test]
fn cylinder_end_projections_are_split() {
    // constant cylinders (all (01)⊗(i) labelled e) give a section of both ends
    let cyl = cylinder_nerve(&MonoidSpec::cyclic(3).unwrap(), 1, 2).unwrap();
    for p in 0..=2 {
        assert!(cyl.base.object.count(p) <= cyl.nerve.object.count(p));
    }
    let surjective = |f: &omega_nerve::simplicial::SimplicialMap| {
        (0..=2).all(|p| {
            (0..f.target().count(p)).all(|y| (0..f.source().count(p)).any(|x| f.apply(p, x) == y))
        })
    };
    assert!(surjective(&cyl.pi0) && surjective(&cyl.pi1));
}

#[test]
fn level_two_cylinder_counts() {
    let c = cylinder_nerve(&MonoidSpec::cyclic(2).unwrap(), 2, 2).unwrap();
    assert_eq!(c.nerve.object.count(1), 2);
    // cylinder(2) at level 2: (0)⊗(012), (1)⊗(012), (01)⊗(ij), constrained at (01)⊗(012)
    assert_eq!(c.nerve.object.count(2), 2usize.pow(4));
}
