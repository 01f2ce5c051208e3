use std::sync::Arc;

use omega_nerve::nerves::*;
use omega_nerve::simplicial::{homology, sset_from_json, sset_to_json, HomologyGroup};

fn z(k: usize) -> MonoidSpec {
    MonoidSpec::cyclic(k).unwrap()
}

#[test]
fn kmn_level_one_is_the_classical_nerve_through_degree_four() {
    for k in [2, 3, 4] {
        let m = z(k);
        let kmn = kmn_nerve(&m, 1, 4).unwrap();
        let classical = Arc::new(classical_nerve(
            &FiniteCategorySpec::one_object(&m).unwrap(),
            4,
        ));
        assert_eq!(kmn.object.counts(), classical.counts());
        let f = kmn_to_classical(&kmn, &classical).unwrap();
        assert!(f.is_isomorphism());
    }
}

#[test]
fn eilenberg_mac_lane_z2_level_two() {
    let m = z(2);
    let kmn = kmn_nerve(&m, 2, 5).unwrap();
    let dk = dold_kan_em(&m, 2, 5).unwrap();
    let h = homology(&kmn.object, 3).unwrap().groups;
    let expected = vec![
        HomologyGroup::free(1),
        HomologyGroup::free(0),
        HomologyGroup::with_torsion(0, &[2]),
        HomologyGroup::free(0),
    ];
    assert_eq!(h, expected);
    assert_eq!(homology(&dk, 3).unwrap().groups, expected);
    // both are reduced with 2^(C(p,2)) simplices in degree p
    assert_eq!(kmn.object.counts(), dk.counts());
}

#[test]
fn z3_level_one_homology_matches_dold_kan() {
    let m = z(3);
    let a = homology(&kmn_nerve(&m, 1, 4).unwrap().object, 3).unwrap();
    let b = homology(&dold_kan_em(&m, 1, 4).unwrap(), 3).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.groups[1], HomologyGroup::with_torsion(0, &[3]));
}

#[test]
fn slice_is_the_window_poset_and_the_comma() {
    let w = MonoidSpec::window(0, 2).unwrap();
    let slice = slice_nerve(&w, 1, 4).unwrap();
    let poset = FiniteCategorySpec::window_poset(&w).unwrap();
    let nerve = Arc::new(classical_nerve(&poset, 4));
    assert_eq!(slice.object.counts(), nerve.counts());
    assert!(slice_to_poset(&slice, &poset, &nerve)
        .unwrap()
        .is_isomorphism());

    let cyl = cylinder_nerve(&w, 1, 4).unwrap();
    let comma = under_slice(&cyl).unwrap();
    assert_eq!(comma.object.counts(), slice.object.counts());
    // the comma simplex determines x_i = label of (01)⊗(i)
    let forget = slice_projection(&slice, &cyl.base).unwrap();
    let to_slice = under_slice_to_slice(&comma, &cyl, &slice).unwrap();
    assert!(to_slice.is_isomorphism());
    assert!(forget
        .compose(&to_slice)
        .unwrap()
        .first_difference(&comma.p2)
        .is_none());
}

#[test]
fn asphericity_of_windows() {
    for k in 0..=3 {
        let s = slice_nerve(&MonoidSpec::window(0, k).unwrap(), 1, 3).unwrap();
        let h = homology(&s.object, 2).unwrap().groups;
        assert_eq!(
            h,
            vec![
                HomologyGroup::free(1),
                HomologyGroup::free(0),
                HomologyGroup::free(0)
            ],
            "[0,{k}]"
        );
    }
}

#[test]
fn coslice_fibers_of_the_cylinder() {
    // the fiber of π_0 over the base point is ∗↓BM, whose p-simplices are
    // the strings x_0, …, x_p of arrows out of ∗
    for k in [2, 3] {
        let cyl = cylinder_nerve(&z(k), 1, 3).unwrap();
        let a = under_slice(&cyl).unwrap();
        let expected: Vec<usize> = (0..=3).map(|p| k.pow(p as u32 + 1)).collect();
        assert_eq!(a.object.counts(), expected);
        // and its homology is that of a point
        let h = homology(&a.object, 2).unwrap().groups;
        assert_eq!(h[0], HomologyGroup::free(1));
        assert!(h[1].is_zero() && h[2].is_zero());
    }
}

#[test]
fn emitted_nerves_round_trip() {
    let n = kmn_nerve(&z(2), 2, 4).unwrap();
    let j = sset_to_json(&n.object);
    let back = sset_from_json(&serde_json::from_str(&j.to_string()).unwrap()).unwrap();
    assert_eq!(homology(&back, 3).unwrap(), homology(&n.object, 3).unwrap());
}

#[test]
fn hom_endo_shifts() {
    for (k, n) in [(2, 2), (3, 2), (2, 3)] {
        assert!(hom_endo(&z(k), n).unwrap().isomorphic);
    }
}
