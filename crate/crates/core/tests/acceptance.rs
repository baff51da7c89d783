//! Acceptance criteria 1–12. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails. Arguments that are not flags select
//! criteria by number or by a substring of the name.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use horseshoe::continuation::{hat_loop_report, monodromy, theorem5_check, ParamPath};
use horseshoe::cx::{c, real, sup_dist, C64};
use horseshoe::henon::{
    code_orbit_e, hov_threshold, orbit_multipliers, per_n, region_member_2d, solve_periodic_orbit,
    w2_slack, HenonParams, Region2D,
};
use horseshoe::one_dim::{critical_green_h, region_member_1d, theta_loop_integral, Region1D};
use horseshoe::scanner::{
    classify_parameter, recheck_witness, scan_window, ClassifierOptions, RealType, ScanWindow,
    Verdict, Witness,
};
use horseshoe::symbolic::{
    all_words, apply_block_code, code_bijectivity, theorem2_report, word, CodePermutation,
    CyclicWord, SlidingBlockCode,
};

type Outcome = Result<String, String>;
type Criterion = (u8, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed<T>(limit: Duration, what: &str, f: impl FnOnce() -> T) -> Result<(T, Duration), String> {
    let t = Instant::now();
    let out = f();
    let dt = t.elapsed();
    ensure(dt < limit, || format!("{what} took {dt:.2?}, limit {limit:.0?}"))?;
    Ok((out, dt))
}

/// `y_n = x_{n+2} + x_n (1 + x_{n+1}) x_{n+3}` over ℤ/2, read cyclically.
fn brown_oracle(x: &[u8]) -> Vec<u8> {
    let n = x.len();
    (0..n)
        .map(|i| {
            let at = |k: usize| x[(i + k) % n];
            (at(2) + at(0) * (1 + at(1)) * at(3)) % 2
        })
        .collect()
}

fn flip(w: &CyclicWord) -> CyclicWord {
    CyclicWord::new(w.symbols().iter().map(|s| 1 - s).collect()).unwrap()
}

fn is_swap(p: &CodePermutation, n: usize) -> bool {
    let words = all_words(2, n);
    p.len() == words.len() && words.iter().all(|w| p.apply(w) == Some(&flip(w)))
}

fn base() -> HenonParams {
    HenonParams::real(-6.0, 0.2)
}

fn a_circle() -> ParamPath {
    ParamPath::circle_a(real(0.0), 6.0, real(0.2), PI, 64)
}

fn b_circle() -> ParamPath {
    ParamPath::circle_b(real(-6.0), real(0.0), 0.2, 0.0, 64)
}

fn c1_brown_values() -> Outcome {
    let f = SlidingBlockCode::brown();
    let ((x, y), dt) = timed(Duration::from_millis(1), "two applications", || {
        (
            apply_block_code(&f, &word("0001")).unwrap(),
            apply_block_code(&f, &word("0011")).unwrap(),
        )
    })?;
    ensure(x == word("0100"), || format!("F(0001) = {x}"))?;
    ensure(y == word("1101"), || format!("F(0011) = {y}"))?;
    for n in 4..=10 {
        for w in all_words(2, n) {
            let got = apply_block_code(&f, &w).unwrap();
            ensure(got.symbols() == brown_oracle(w.symbols()).as_slice(), || {
                format!("F({w}) = {got}, oracle disagrees")
            })?;
        }
    }
    Ok(format!("F(0001)=0100, F(0011)=1101 in {dt:.1?}; oracle agrees up to length 10"))
}

fn c2_theorem2() -> Outcome {
    let (r, dt) = timed(Duration::from_secs(1), "theorem2_report", theorem2_report)?;
    let r = r.map_err(|e| e.to_string())?;
    ensure(r.assertions.len() == 5, || format!("{} assertions", r.assertions.len()))?;
    if let Some(a) = r.assertions.iter().find(|a| !a.passed) {
        return Err(format!("assertion {} failed at {:?}", a.name, a.witness));
    }
    ensure(r.listing_matches, || "lifted P4 differs from X ∪ Y".into())?;
    let set = |v: &[CyclicWord]| v.iter().map(ToString::to_string).collect::<BTreeSet<_>>();
    let want = |s: [&str; 3]| s.iter().map(|x| x.to_string()).collect::<BTreeSet<_>>();
    ensure(set(&r.pi_g_x) == want(["0012", "1200", "2121"]), || format!("π_G X = {:?}", set(&r.pi_g_x)))?;
    ensure(set(&r.pi_g_y) == want(["0120", "1212", "2001"]), || format!("π_G Y = {:?}", set(&r.pi_g_y)))?;
    ensure(r.passed(), || "report not passed".into())?;
    Ok(format!("five assertions hold, π_G X and π_G Y match, {dt:.1?}"))
}

fn c3_brown_bijective() -> Outcome {
    let f = SlidingBlockCode::brown();
    let (b, dt) = timed(Duration::from_secs(10), "code_bijectivity", || code_bijectivity(&f))?;
    ensure(b.injective && b.surjective, || format!("{b:?}"))?;
    for n in 1..=12 {
        let images: BTreeSet<Vec<u8>> = all_words(2, n).iter().map(|w| brown_oracle(w.symbols())).collect();
        ensure(images.len() == 1 << n, || format!("oracle F not injective on period {n}"))?;
    }
    Ok(format!("(true, true) in {dt:.1?}; oracle permutes every Per_n, n <= 12"))
}

fn c4_theta() -> Outcome {
    let (v, dt) = timed(Duration::from_secs(5), "theta_loop_integral", || theta_loop_integral(3.0, 2048))?;
    let v = v.map_err(|e| e.to_string())?;
    let rel = (v - TAU).abs() / TAU;
    ensure(rel < 0.01, || format!("theta = {v}, relative error {rel:.3e}"))?;
    Ok(format!("theta = {v:.9}, relative error {rel:.1e}, {dt:.1?}"))
}

fn c5_monodromy() -> Outcome {
    let (r, da) = timed(Duration::from_secs(60), "a-circle", || monodromy(base(), &a_circle(), 4))?;
    let r = r.map_err(|e| e.to_string())?;
    ensure(is_swap(&r.permutation, 4), || format!("a-circle gives {}", r.permutation))?;
    let (s, db) = timed(Duration::from_secs(60), "b-circle", || monodromy(base(), &b_circle(), 4))?;
    let s = s.map_err(|e| e.to_string())?;
    ensure(s.permutation.is_identity() && s.permutation.len() == 16, || {
        format!("b-circle gives {}", s.permutation)
    })?;
    Ok(format!("a-circle = swap ({da:.1?}), b-circle = identity ({db:.1?})"))
}

fn c6_anti_homomorphism() -> Outcome {
    let (g1, g2) = (a_circle(), b_circle());
    let rho = |p: &ParamPath| monodromy(base(), p, 4).map(|r| r.permutation).map_err(|e| e.to_string());
    let (r1, r2) = (rho(&g1)?, rho(&g2)?);
    let r12 = rho(&g1.concat(&g2).map_err(|e| e.to_string())?)?;
    let r21 = rho(&g2.concat(&g1).map_err(|e| e.to_string())?)?;
    let r11 = rho(&g1.concat(&g1).map_err(|e| e.to_string())?)?;
    ensure(r12 == r2.compose(&r1).unwrap(), || format!("ρ(γ1γ2) = {r12}"))?;
    ensure(r21 == r1.compose(&r2).unwrap(), || format!("ρ(γ2γ1) = {r21}"))?;
    ensure(r11 == r1.compose(&r1).unwrap(), || format!("ρ(γ1γ1) = {r11}"))?;
    Ok("ρ(γ1γ2) = ρ(γ2)∘ρ(γ1) for γ1γ2, γ2γ1 and γ1γ1".into())
}

/// `f(x, y) = (x² + a − b y, x)`.
fn henon(p: HenonParams, (x, y): (C64, C64)) -> (C64, C64) {
    (x * x + p.a - p.b * y, x)
}

fn c7_per_n() -> Outcome {
    let p = base();
    let (res, dt) = timed(Duration::from_secs(60), "per_N for N <= 6", || {
        (1..=6).map(|n| per_n(p, n)).collect::<Vec<_>>()
    })?;
    for (k, orbits) in res.into_iter().enumerate() {
        let n = k + 1;
        let orbits = orbits.map_err(|e| e.to_string())?;
        ensure(orbits.len() == 1 << n, || format!("N = {n}: {} points", orbits.len()))?;
        for (i, o) in orbits.iter().enumerate() {
            let info = orbit_multipliers(&o.orbit);
            ensure(info.margin > 0.0 && info.unstable == 1, || format!("{}: {info:?}", o.word))?;
            let z0 = (o.orbit.y[1 % n], o.orbit.y[0]);
            let zn = (0..n).fold(z0, |z, _| henon(p, z));
            let err = (zn.0 - z0.0).norm().max((zn.1 - z0.1).norm());
            ensure(err < 1e-8 * (1.0 + z0.0.norm()), || format!("{}: f^{n} moves it by {err:e}", o.word))?;
            for q in &orbits[..i] {
                let d = sup_dist(&o.orbit.y, &q.orbit.y);
                ensure(d > 1e-6, || format!("{} and {} coincide", o.word, q.word))?;
            }
        }
        let codes: BTreeSet<CyclicWord> = orbits
            .iter()
            .map(|o| code_orbit_e(&o.orbit))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        ensure(codes == all_words(2, n).into_iter().collect(), || format!("N = {n}: E-codes not all words"))?;
    }
    Ok(format!("2^N distinct saddle points for N <= 6, E-coding bijective, {dt:.1?}"))
}

fn c8_hat_loops() -> Outcome {
    let seg = ParamPath::segment(base(), HenonParams::real(-5.0, 0.2)).unwrap();
    let r = hat_loop_report(base(), &seg, 4).map_err(|e| e.to_string())?;
    ensure(r.permutation.is_identity() && r.permutation.len() == 16, || format!("segment gives {}", r.permutation))?;
    ensure(r.real_type == RealType::Type1, || format!("(-5, 0.2) is {}", r.real_type))?;
    let arc = ParamPath::arc_a(real(0.0), 6.0, real(0.2), PI, 0.0, 32);
    let s = hat_loop_report(base(), &arc, 4).map_err(|e| e.to_string())?;
    ensure(is_swap(&s.permutation, 4), || format!("semicircle gives {}", s.permutation))?;
    ensure(s.order == 2 && s.involution, || format!("order {}", s.order))?;
    ensure(s.real_type == RealType::Type2, || format!("(6, 0.2) is {}", s.real_type))?;
    Ok("segment: identity, type1; upper semicircle: C, order 2, type2".into())
}

fn c9_three_box_loop() -> Outcome {
    let path = ParamPath::circle_a(real(-2.3), 0.02, real(0.05), PI, 32);
    let (r, dt) = timed(Duration::from_secs(120), "theorem5_check", || theorem5_check(&path, 4))?;
    let r = r.map_err(|e| e.to_string())?;
    ensure(r.passed, || format!("failed at {:?}", r.witness))?;
    ensure(r.permutation.is_identity() && r.permutation.len() == 16, || format!("permutation {}", r.permutation))?;
    for o in &r.orbits {
        ensure(o.start == o.end && !o.start.is_empty(), || format!("{}: {:?} -> {:?}", o.word, o.start, o.end))?;
    }
    Ok(format!("identity, 𝒢-codes constant on all 16 points, {dt:.1?}"))
}

fn c10_regions() -> Outcome {
    ensure(region_member_1d(Region1D::W1, real(-2.0)), || "-2 not in W1".into())?;
    ensure(!region_member_1d(Region1D::W1, real(-0.5)), || "-0.5 in W1".into())?;
    ensure(!region_member_1d(Region1D::W1, real(-1.0)), || "-1 in W1".into())?;
    ensure(region_member_1d(Region1D::W1, real(-1.0 - 1e-9)), || "just left of -1 not in W1".into())?;
    ensure(hov_threshold(real(0.0)) == 2.0, || format!("threshold at b = 0 is {}", hov_threshold(real(0.0))))?;
    let tiny = 1e-12;
    ensure(region_member_2d(Region2D::Hov, HenonParams::real(-2.0 - 1e-6, tiny)), || "left of -2 not HOV".into())?;
    ensure(!region_member_2d(Region2D::Hov, HenonParams::real(-2.0 + 1e-6, tiny)), || "right of -2 HOV".into())?;
    ensure(region_member_1d(Region1D::Hov1, real(-2.0 - 1e-12)) && !region_member_1d(Region1D::Hov1, real(-2.0)), || {
        "1-D HOV boundary not at -2".into()
    })?;
    Ok("W1 ∋ -2, ∌ -0.5, ∌ -1; HOV boundary at b = 0 is a = -2".into())
}

fn c11_scanner() -> Outcome {
    let window = ScanWindow::new(real(0.2), (-2.6, -1.0), (-0.7, 0.7), (200, 175)).unwrap();
    let (grid, dt) = timed(Duration::from_secs(600), "200x175 scan", || scan_window(&window))?;
    let grid = grid.map_err(|e| e.to_string())?;
    let dark = grid.count(Verdict::NotHorseshoe);
    let light = grid.count(Verdict::HorseshoeEvidence) + grid.count(Verdict::HorseshoeHov);
    ensure(dark > 0 && light > 0, || format!("{dark} dark, {light} light"))?;
    let (w, h) = (window.width, window.height);
    for j in 0..h {
        for i in 0..w {
            let (p, q) = (grid.get(i, j).verdict, grid.get(i, h - 1 - j).verdict);
            ensure(p == q, || format!("pixel ({i}, {j}) is {p}, mirror is {q}"))?;
        }
    }
    let big = ScanWindow::new(real(0.2), (-4.0, -1.5), (-1.0, 1.0), (25, 20)).unwrap();
    let g = scan_window(&big).map_err(|e| e.to_string())?;
    let mut hov = 0;
    for j in 0..big.height {
        for i in 0..big.width {
            let a = big.pixel_center(i, j);
            let is_hov = g.get(i, j).verdict == Verdict::HorseshoeHov;
            ensure(is_hov == (a.norm() > 2.0 * 1.2f64.powi(2)), || format!("a = {a}: {}", g.get(i, j).verdict))?;
            hov += is_hov as usize;
        }
    }
    let p = HenonParams::real(-1.2, 0.05);
    let opts = ClassifierOptions::default();
    let cls = classify_parameter(p, &opts);
    ensure(cls.verdict == Verdict::NotHorseshoe, || format!("(-1.2, 0.05) is {}", cls.verdict))?;
    ensure(matches!(cls.witness, Witness::Attractor { .. }), || format!("witness {}", cls.witness.kind()))?;
    ensure(recheck_witness(p, &cls, &opts), || "attractor witness does not recheck".into())?;
    Ok(format!(
        "{dark} dark / {light} light, mirror symmetric, scan {dt:.1?}; {hov} HOV pixels exactly where |a| > 2.88; (-1.2, 0.05) attracting"
    ))
}

fn c12_conjugation() -> Outcome {
    let samples = [c(-2.3, 0.0), c(-1.2, 0.5), c(-1.7, 0.31), c(0.3, 0.6), c(-3.5, 2.0), c(-0.75, 0.1)];
    for &a in &samples {
        for r in [Region1D::Hov1, Region1D::W1, Region1D::M] {
            ensure(region_member_1d(r, a) == region_member_1d(r, a.conj()), || format!("{r} at {a}"))?;
        }
        let (h, hc) = (critical_green_h(a).value, critical_green_h(a.conj()).value);
        ensure((h - hc).abs() <= 1e-8, || format!("h({a}) = {h}, h(conj) = {hc}"))?;
        for b in [c(0.05, 0.0), c(0.1, 0.05)] {
            let p = HenonParams::new(a, b);
            for r in [Region2D::Hov, Region2D::W2] {
                ensure(region_member_2d(r, p) == region_member_2d(r, p.conj()), || format!("{r:?} at {p}"))?;
            }
            let (s, sc) = (w2_slack(p), w2_slack(p.conj()));
            ensure(match (s, sc) {
                (Some(x), Some(y)) => (x - y).abs() <= 1e-8,
                (None, None) => true,
                _ => false,
            }, || format!("W2 slack at {p}: {s:?} vs {sc:?}"))?;
        }
    }

    let p = HenonParams::new(c(-5.0, 1.5), c(0.2, 0.1));
    let (o, oc) = (per_n(p, 4).map_err(|e| e.to_string())?, per_n(p.conj(), 4).map_err(|e| e.to_string())?);
    for x in &o {
        let conj: Vec<C64> = x.orbit.y.iter().map(|z| z.conj()).collect();
        let best = oc.iter().map(|y| sup_dist(&conj, &y.orbit.y)).fold(f64::INFINITY, f64::min);
        ensure(best <= 1e-8, || format!("{}: conjugate orbit missing (distance {best:e})", x.word))?;
        let direct = solve_periodic_orbit(p.conj(), 4, &conj).map_err(|e| e.to_string())?;
        ensure(sup_dist(&direct.y, &conj) <= 1e-8, || format!("{}: solve(conj) moved", x.word))?;
    }

    let b = c(0.2, 0.05);
    let w = ScanWindow::new(b, (-2.6, -1.0), (-0.7, 0.7), (16, 14)).unwrap();
    let wc = ScanWindow::new(b.conj(), (-2.6, -1.0), (-0.7, 0.7), (16, 14)).unwrap();
    let (g, gc) = (scan_window(&w).map_err(|e| e.to_string())?, scan_window(&wc).map_err(|e| e.to_string())?);
    for j in 0..w.height {
        for i in 0..w.width {
            let (v, vc) = (g.get(i, j).verdict, gc.get(i, w.height - 1 - j).verdict);
            ensure(v == vc, || format!("pixel ({i}, {j}) at b = {b}: {v} vs {vc}"))?;
        }
    }
    Ok("regions, h, W2 slack, Per_4 orbits and a complex-b scan are conjugation equivariant".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "Brown automorphism values", c1_brown_values),
        (2, "period-4 obstruction report", c2_theorem2),
        (3, "Brown automorphism bijective", c3_brown_bijective),
        (4, "theta loop integral", c4_theta),
        (5, "HOV loop monodromy", c5_monodromy),
        (6, "monodromy anti-homomorphism", c6_anti_homomorphism),
        (7, "Per_N completeness", c7_per_n),
        (8, "hat loop dichotomy", c8_hat_loops),
        (9, "three-box loop codes", c9_three_box_loop),
        (10, "region boundaries", c10_regions),
        (11, "scanner properties", c11_scanner),
        (12, "conjugation invariance", c12_conjugation),
    ];
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let selected = |k: u8, name: &str| {
        filters.is_empty()
            || filters.iter().any(|f| f == &k.to_string() || name.contains(f.as_str()) || "acceptance".contains(f.as_str()))
    };
    let mut failed = 0;
    for (k, name, f) in criteria {
        if !selected(k, name) {
            continue;
        }
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {k:>2} {tag} [{:>8.2?}] {name}: {detail}", t.elapsed());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
