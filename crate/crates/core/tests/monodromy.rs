use std::f64::consts::PI;

use horseshoe::continuation::{hat_loop_report, monodromy, monodromy_with, ContinuationOptions, ParamPath};
use horseshoe::cx::{c, real};
use horseshoe::henon::{hov_threshold, region_member_2d, HenonParams, Region2D};
use horseshoe::symbolic::CodePermutation;
use proptest::prelude::*;

const N: usize = 4;

fn base() -> HenonParams {
    HenonParams::real(-6.0, 0.2)
}

/// Loops at the basepoint that stay inside HOV.
#[derive(Clone, Debug)]
enum LoopSpec {
    /// `a`-circle of radius `r` through the basepoint.
    A { r: f64, reverse: bool },
    /// `b`-circle of radius `s` through the basepoint.
    B { s: f64, reverse: bool },
    /// Triangle `base → p → q → base` in the half-plane `Re a ≤ −5`.
    Triangle { p: (f64, f64, f64, f64), q: (f64, f64, f64, f64) },
}

impl LoopSpec {
    fn path(&self) -> ParamPath {
        let path = match *self {
            Self::A { r, .. } => ParamPath::circle_a(real(r - 6.0), r, real(0.2), PI, 48),
            Self::B { s, .. } => ParamPath::circle_b(real(-6.0), real(0.2 - s), s, 0.0, 32),
            Self::Triangle { p, q } => {
                let at = |(ar, ai, br, bi): (f64, f64, f64, f64)| HenonParams::new(c(ar, ai), c(br, bi));
                ParamPath::closed_loop(vec![base(), at(p), at(q)]).unwrap()
            }
        };
        match *self {
            Self::A { reverse: true, .. } | Self::B { reverse: true, .. } => path.reversed(),
            _ => path,
        }
    }
}

fn loop_spec() -> impl Strategy<Value = LoopSpec> {
    let corner = (-9.0..-5.0f64, -3.0..3.0f64, 0.05..0.3f64, -0.1..0.1f64);
    prop_oneof![
        (6.0..9.0f64, any::<bool>()).prop_map(|(r, reverse)| LoopSpec::A { r, reverse }),
        (0.05..0.25f64, any::<bool>()).prop_map(|(s, reverse)| LoopSpec::B { s, reverse }),
        (corner.clone(), corner).prop_map(|(p, q)| LoopSpec::Triangle { p, q }),
    ]
}

fn rho(path: &ParamPath) -> CodePermutation {
    assert!(path.waypoints().iter().all(|p| region_member_2d(Region2D::Hov, *p)));
    monodromy(base(), path, N).unwrap().permutation
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn monodromy_is_an_anti_homomorphism(g1 in loop_spec(), g2 in loop_spec()) {
        let (p1, p2) = (g1.path(), g2.path());
        let (r1, r2) = (rho(&p1), rho(&p2));
        for r in [&r1, &r2] {
            prop_assert!(r.commutes_with_shift() && r.preserves_primitive_period());
            prop_assert!(r.order() <= 2);
        }
        let r12 = rho(&p1.concat(&p2).unwrap());
        prop_assert_eq!(r12, r2.compose(&r1).unwrap());
    }

    #[test]
    fn conjugate_loop_has_the_same_monodromy(g in loop_spec()) {
        let path = g.path();
        prop_assert_eq!(rho(&path), rho(&path.conj()));
    }

    #[test]
    fn halving_the_step_keeps_the_permutation(g in loop_spec()) {
        let path = g.path();
        let opts = ContinuationOptions::default();
        let fine = ContinuationOptions { max_step: opts.max_step / 2.0, initial_step: opts.initial_step / 2.0, ..opts };
        let coarse = monodromy_with(base(), &path, N, &opts).unwrap();
        let refined = monodromy_with(base(), &path, N, &fine).unwrap();
        prop_assert_eq!(coarse.permutation, refined.permutation);
    }
}

/// Upper semicircle of radius 6 to the positive axis, then a straight leg
/// to a real target.
fn path_to(a: f64, b: f64) -> ParamPath {
    let target = HenonParams::real(a, b);
    if a < 0.0 {
        return ParamPath::segment(base(), target).unwrap();
    }
    let arc = ParamPath::arc_a(real(0.0), 6.0, real(0.2), PI, 0.0, 32);
    if arc.end().distance(&target) < 1e-12 {
        return arc;
    }
    arc.concat(&ParamPath::segment(arc.end(), target).unwrap()).unwrap()
}

fn real_target() -> impl Strategy<Value = (f64, f64)> {
    (prop_oneof![-9.0..-4.0f64, 4.5..9.0f64], 0.05..0.3f64)
        .prop_filter("in HOV", |&(a, b)| a.abs() > hov_threshold(real(b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn hat_loops_are_involutions(t in real_target()) {
        let r = hat_loop_report(base(), &path_to(t.0, t.1), N).unwrap();
        prop_assert!(r.order == 1 || r.order == 2);
        prop_assert_eq!(r.order == 1, r.real_orbits == r.total_orbits);
        prop_assert!(r.consistent);
    }

    #[test]
    fn equal_involutions_over_type1_targets_agree_on_real_counts(s in real_target(), t in real_target()) {
        let r = hat_loop_report(base(), &path_to(s.0, s.1), N).unwrap();
        let q = hat_loop_report(base(), &path_to(t.0, t.1), N).unwrap();
        let conjugate = r.permutation.cycle_type() == q.permutation.cycle_type();
        if conjugate && r.real_type == q.real_type && r.real_type == horseshoe::scanner::RealType::Type1 {
            prop_assert_eq!(r.real_orbits, q.real_orbits);
        }
    }
}
