use horseshoe::cx::{c, sup_dist, C64};
use horseshoe::henon::{
    code_orbit_e, filtration_radius, henon_step, hov_threshold, orbit_multipliers, per_n, seed_orbit_1d,
    solve_periodic_orbit, CyclicOrbit, Direction, HenonParams,
};
use horseshoe::symbolic::{all_words, CyclicWord};
use proptest::prelude::*;

/// Complex parameters with `|a|` at least 1.5 times the HOV threshold.
fn hov_params() -> impl Strategy<Value = HenonParams> {
    (0.0..0.4f64, 0.0..std::f64::consts::TAU, 1.5..3.0f64, 0.0..std::f64::consts::TAU).prop_map(
        |(rb, tb, scale, ta)| {
            let b = C64::from_polar(rb, tb);
            HenonParams::new(C64::from_polar(scale * hov_threshold(b), ta), b)
        },
    )
}

fn word(max_len: usize) -> impl Strategy<Value = CyclicWord> {
    prop::collection::vec(0u8..2, 1..=max_len).prop_map(|v| CyclicWord::new(v).unwrap())
}

fn solve(p: HenonParams, w: &CyclicWord) -> CyclicOrbit {
    let seed = seed_orbit_1d(p.a, w).unwrap();
    solve_periodic_orbit(p, w.len(), &seed).unwrap()
}

fn scale(o: &CyclicOrbit) -> f64 {
    1.0 + o.y.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn solved_orbits_satisfy_the_recurrence(p in hov_params(), w in word(6)) {
        let o = solve(p, &w);
        let n = o.period();
        let r = filtration_radius(p);
        for k in 0..n {
            let (prev, cur, next) = (o.y[(k + n - 1) % n], o.y[k], o.y[(k + 1) % n]);
            let defect = (next - (cur * cur + p.a - p.b * prev)).norm();
            prop_assert!(defect <= 1e-9 * scale(&o), "defect {defect:e}");
            prop_assert!(cur.norm() <= r, "|y| = {} > R = {r}", cur.norm());
        }
        let mut z = o.point(0);
        for k in 1..=n {
            z = henon_step(p, z, Direction::Forward).unwrap();
            let want = o.point(k);
            prop_assert!((z.0 - want.0).norm().max((z.1 - want.1).norm()) <= 1e-8 * scale(&o));
        }
    }

    #[test]
    fn conjugation_conjugates_orbits(p in hov_params(), w in word(6)) {
        let seed = seed_orbit_1d(p.a, &w).unwrap();
        let o = solve_periodic_orbit(p, w.len(), &seed).unwrap();
        let conj_seed: Vec<C64> = seed.iter().map(|z| z.conj()).collect();
        let oc = solve_periodic_orbit(p.conj(), w.len(), &conj_seed).unwrap();
        prop_assert!(sup_dist(&o.conj().y, &oc.y) <= 1e-10 * scale(&o));
    }

    #[test]
    fn orbits_are_pseudo_orbits_of_the_quadratic_map(p in hov_params(), w in word(6)) {
        let o = solve(p, &w);
        let n = o.period();
        let bound = filtration_radius(p) * p.b.norm() + 1e-9 * scale(&o);
        for k in 0..n {
            let jump = (o.y[(k + 1) % n] - (o.y[k] * o.y[k] + p.a)).norm();
            prop_assert!(jump <= bound, "jump {jump} > {bound}");
        }
    }

    #[test]
    fn multiplier_product_is_b_to_the_n(p in hov_params(), w in word(6)) {
        let o = solve(p, &w);
        let m = orbit_multipliers(&o).multipliers;
        let want = p.b.powu(o.period() as u32);
        let err = (m[0] * m[1] - want).norm();
        prop_assert!(err <= 1e-8, "err {err:e}, b^N = {want}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn per_n_round_trips_through_e_codes(a in -10.0..-3.2f64, b in -0.25..0.25f64, n in 1usize..=4) {
        prop_assume!(b.abs() > 1e-3);
        let p = HenonParams::new(c(a, 0.0), c(b, 0.0));
        prop_assume!(p.a.norm() > hov_threshold(p.b));
        let orbits = per_n(p, n).unwrap();
        prop_assert_eq!(orbits.len(), 1 << n);
        for (o, w) in orbits.iter().zip(all_words(2, n)) {
            prop_assert_eq!(&o.word, &w);
            prop_assert_eq!(code_orbit_e(&o.orbit).unwrap(), w);
        }
    }
}
