use std::sync::Arc;

use omega_nerve::operator::Monotone;
use omega_nerve::simplicial::*;
use proptest::prelude::*;

fn monotone(len: usize, target: usize) -> impl Strategy<Value = Monotone> {
    prop::collection::vec(0..=target, len).prop_map(move |mut v| {
        v.sort_unstable();
        Monotone::new(v, target).unwrap()
    })
}

fn fixing_zero(len: usize, target: usize) -> impl Strategy<Value = Monotone> {
    monotone(len, target).prop_map(move |t| {
        let mut v = t.values().to_vec();
        v[0] = 0;
        Monotone::new(v, target).unwrap()
    })
}

/// `θ : [a] → [c]`, `θ' : [b] → [c]` and a cone leg `α : [w] → [a]`.
fn cospan() -> impl Strategy<Value = (Monotone, Monotone, Monotone)> {
    (0usize..=2, 0usize..=2, 0usize..=2, 0usize..=2)
        .prop_flat_map(|(a, b, c, w)| (monotone(a + 1, c), monotone(b + 1, c), monotone(w + 1, a)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fiber_products_are_limits((theta, theta2, alpha) in cospan(), d in 1usize..=3) {
        let f = simplex_map(&theta, d);
        let g = retarget(simplex_map(&theta2, d), f.target());
        let w = alpha.source();
        // a second leg β with θ'β = θα, if one exists
        let beta = Monotone::all(w, theta2.source()).into_iter().find(|b| theta2.compose(b) == theta.compose(&alpha));
        prop_assume!(beta.is_some());
        let a = retarget(simplex_map(&alpha, d), f.source());
        let b = retarget_source(retarget(simplex_map(&beta.unwrap(), d), g.source()), a.source());
        let fp = fiber_product(&f, &g).unwrap();
        let lift = fp.lift(&a, &b).unwrap();
        prop_assert_eq!(fp.left.compose(&lift).unwrap(), a);
        prop_assert_eq!(fp.right.compose(&lift).unwrap(), b);
        // projections jointly mono: simplices are determined by their images
        for p in 0..=d {
            let mut seen = std::collections::HashSet::new();
            for x in 0..fp.object.count(p) {
                prop_assert!(seen.insert((fp.left.apply(p, x), fp.right.apply(p, x))));
            }
        }
    }

    #[test]
    fn fiber_products_of_vertex_retracts(
        m in prop::array::uniform3(0usize..=3),
        seeds in prop::array::uniform2(prop::collection::vec(0usize..=3, 4)),
    ) {
        let theta: Vec<Monotone> = (0..2)
            .map(|k| {
                let mut v: Vec<usize> = seeds[k][..=m[k]].iter().map(|&x| x.min(m[2])).collect();
                v.sort_unstable();
                v[0] = 0;
                Monotone::new(v, m[2]).unwrap()
            })
            .collect();
        let t = vertex_instance(m, [&theta[0], &theta[1]], 3).unwrap();
        prop_assert!(check_sdr(&t).unwrap());
        prop_assert_eq!(homology(t.a(), 2).unwrap(), homology(t.b(), 2).unwrap());
    }

    #[test]
    fn homotopy_k_endpoints(m in 0usize..=4, d in 1usize..=3) {
        let k = homotopy_k(m, d);
        let dm = k.target().clone();
        prop_assert_eq!(k.compose(&end_inclusion(dm.clone(), 1)).unwrap(), SimplicialMap::identity(dm.clone()));
        let zero = SimplicialMap::from_fn(dm.clone(), dm.clone(), |_, _| Ok(0)).unwrap();
        prop_assert_eq!(k.compose(&end_inclusion(dm, 0)).unwrap(), zero);
    }

    #[test]
    fn fixing_zero_strategy_is_monotone(t in fixing_zero(3, 2)) {
        prop_assert_eq!(t.apply(0), 0);
    }
}

fn retarget(f: SimplicialMap, target: &Arc<SimplicialTruncation>) -> SimplicialMap {
    SimplicialMap::new(f.source().clone(), target.clone(), f.levels().to_vec()).unwrap()
}

fn retarget_source(f: SimplicialMap, source: &Arc<SimplicialTruncation>) -> SimplicialMap {
    SimplicialMap::new(source.clone(), f.target().clone(), f.levels().to_vec()).unwrap()
}

#[test]
fn homology_is_invariant_under_the_interval() {
    let interval = standard_simplex(1, 3);
    for x in [
        boundary_of_simplex(2, 3),
        boundary_of_simplex(3, 3),
        standard_simplex(2, 3),
        point(3),
    ] {
        let p = product(&x, &interval).unwrap();
        assert_eq!(
            homology(&p, 2).unwrap().groups,
            homology(&x, 2).unwrap().groups
        );
    }
}

#[test]
fn fiber_scan_verdicts() {
    let x = Arc::new(boundary_of_simplex(2, 3));
    let dm = Arc::new(standard_simplex(2, 3));
    let xy = Arc::new(product(&x, &dm).unwrap());
    let (_, proj) = SimplicialMap::projections(xy, x, dm).unwrap();
    assert_eq!(fiber_scan(&proj, 2).unwrap().verdict, "proxy-pass");
    let v0 = representable(Arc::new(standard_simplex(1, 2)), 0, 0).unwrap();
    assert_eq!(fiber_scan(&v0, 1).unwrap().verdict, "proxy-fail");
}
