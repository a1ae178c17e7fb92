use proptest::prelude::*;
use qdesign::eur::{
    bound_ket, bound_ras, compare_bounds, dist_px, dist_py, index_coincidence, q_alpha, renyi_entropy,
    solve_px, theorem1_bounds, BoundParams,
};
use qdesign::qcore::{dirichlet_uniform, rng_for};

fn ic_floor(l: usize, a: u32) -> f64 {
    (l as f64).powi(1 - a as i32)
}

/// Interior IC value for `(L, a)` at fraction `t` of the admissible range.
fn ic_at(l: usize, a: u32, t: f64) -> f64 {
    let lo = ic_floor(l, a);
    lo + (1.0 - lo) * t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn boundary_distributions_hit_the_ic(l in 2usize..40, a in 2u32..6, t in 0.0f64..1.0) {
        let c = ic_at(l, a, t);
        let px = dist_px(l, a, c).unwrap();
        let py = dist_py(a, c).unwrap();
        prop_assert!((index_coincidence(px.probs(), a) - c).abs() <= 1e-12 * c.max(1e-3));
        prop_assert!((index_coincidence(py.probs(), a) - c).abs() <= 1e-12 * c.max(1e-3));
        prop_assert!(px.len() == l);
    }

    #[test]
    fn random_distributions_lie_in_the_sandwich(
        seed in any::<u64>(),
        l in 2usize..30,
        a in 2u32..6,
        alpha in prop_oneof![0.3f64..20.0, Just(1.0), Just(f64::INFINITY)],
    ) {
        let p = dirichlet_uniform(l, &mut rng_for(seed, 0));
        let c = index_coincidence(&p, a);
        let iv = theorem1_bounds(l, a, c, alpha).unwrap();
        let h = renyi_entropy(&p, alpha).unwrap();
        prop_assert!(iv.lower <= iv.upper + 1e-12);
        prop_assert!(h >= iv.lower - 1e-9, "h = {h} below {}", iv.lower);
        prop_assert!(h <= iv.upper + 1e-9, "h = {h} above {}", iv.upper);
    }

    #[test]
    fn bound_chain_is_ordered(l in 2usize..30, a in 2u32..6, t in 0.0f64..=1.0, extra in 0.0f64..10.0) {
        let c = ic_at(l, a, t);
        let alpha = a as f64 + extra;
        let r = compare_bounds(BoundParams::new(l, a, alpha, c).unwrap(), 1).unwrap();
        let (q1, q2, ras, ket) = (r.q1.unwrap(), r.q2.unwrap(), r.q_ras.unwrap(), r.q_ket.unwrap());
        prop_assert!(q1 >= q2 - 1e-10 && q2 >= ras - 1e-10 && ras >= ket - 1e-10);
    }

    #[test]
    fn renyi_entropy_decreases_in_alpha(seed in any::<u64>(), l in 2usize..20, a1 in 0.1f64..10.0, da in 0.01f64..10.0) {
        let p = dirichlet_uniform(l, &mut rng_for(seed, 1));
        let h1 = renyi_entropy(&p, a1).unwrap();
        let h2 = renyi_entropy(&p, a1 + da).unwrap();
        prop_assert!(h2 <= h1 + 1e-12);
        prop_assert!(renyi_entropy(&p, f64::INFINITY).unwrap() <= h2 + 1e-12);
    }

    #[test]
    fn q_alpha_approaches_min_entropy_bound(l in 2usize..30, a in 2u32..6, t in 0.0f64..1.0) {
        let c = ic_at(l, a, t);
        let inf = q_alpha(l, a, c, f64::INFINITY).unwrap();
        let big = q_alpha(l, a, c, 1e7).unwrap();
        prop_assert!((inf - big).abs() < 1e-4 * (1.0 + inf.abs()));
        // -ln p of the one-large distribution is its min-entropy.
        let p = solve_px(l, a, c).unwrap().p;
        prop_assert!((inf + p.ln()).abs() < 1e-14);
    }

    #[test]
    fn four_bounds_coincide_at_alpha_equal_a(l in 2usize..30, a in 2u32..6, t in 0.0f64..=1.0) {
        let c = ic_at(l, a, t);
        let alpha = a as f64;
        let expected = c.ln() / (1.0 - alpha);
        let r = compare_bounds(BoundParams::new(l, a, alpha, c).unwrap(), 1).unwrap();
        for q in [r.q1, r.q2, r.q_ras, r.q_ket] {
            prop_assert!((q.unwrap() - expected).abs() < 1e-10);
        }
    }

    /// For `α >= a` every bound must sit below the entropy of any
    /// distribution with the same IC.
    #[test]
    fn q_alpha_is_a_lower_bound_for_samples(seed in any::<u64>(), l in 2usize..20, a in 2u32..5, extra in 0.0f64..8.0) {
        let p = dirichlet_uniform(l, &mut rng_for(seed, 2));
        let c = index_coincidence(&p, a);
        let alpha = a as f64 + extra;
        let h = renyi_entropy(&p, alpha).unwrap();
        prop_assert!(q_alpha(l, a, c, alpha).unwrap() <= h + 1e-9);
        prop_assert!(bound_ras(l, a, c, alpha).unwrap() <= h + 1e-9);
        prop_assert!(bound_ket(l, a, c, alpha).unwrap() <= h + 1e-9);
    }
}

#[test]
fn q_alpha_is_midpoint_convex_in_log_ic() {
    for (l, a) in [(2usize, 2u32), (12, 3), (24, 2)] {
        for alpha in [a as f64 + 0.5, 6.0, 12.0] {
            let lo = ic_floor(l, a).ln();
            let n = 40;
            let q = |s: f64| q_alpha(l, a, s.exp().min(1.0), alpha).unwrap();
            for k in 1..n - 1 {
                let s0 = lo * (k - 1) as f64 / n as f64;
                let s2 = lo * (k + 1) as f64 / n as f64;
                let s1 = 0.5 * (s0 + s2);
                assert!(q(s1) <= 0.5 * (q(s0) + q(s2)) + 1e-10, "L={l} a={a} alpha={alpha} k={k}");
            }
        }
    }
}

#[test]
fn pure_entropy_extremes_match_closed_forms() {
    // Uniform over L and a point mass, computed without the library.
    for l in [2usize, 5, 24] {
        let u = vec![1.0 / l as f64; l];
        for alpha in [0.5, 1.0, 2.0, 7.0, f64::INFINITY] {
            assert!((renyi_entropy(&u, alpha).unwrap() - (l as f64).ln()).abs() < 1e-13);
        }
        let mut delta = vec![0.0; l];
        delta[0] = 1.0;
        assert!(renyi_entropy(&delta, 3.0).unwrap().abs() < 1e-15);
    }
}
