//! One-variable regions, the three-box cover and the Green function of the
//! critical value.

use horseshoe::cx::{c, real};
use horseshoe::one_dim::{
    critical_green_h, estimate_epsilon, fixed_points_1d, region_member_1d, theta_loop_integral,
    BoxSystem1D, Region1D,
};

pub fn main() {
    for a in [real(-6.0), real(-2.3), real(-1.5), c(-1.2, 0.5), real(0.2)] {
        let member: Vec<String> = [Region1D::Hov1, Region1D::W1, Region1D::M]
            .iter()
            .map(|r| format!("{r}={}", region_member_1d(*r, a)))
            .collect();
        let eps = estimate_epsilon(a).map_or("-".to_string(), |e| format!("{e:.4}"));
        println!("a = {a:<12} {}  epsilon {eps}  H {:.5}", member.join(" "), critical_green_h(a).value);
    }
    let bx = BoxSystem1D::new(real(-2.3));
    let (alpha, beta) = fixed_points_1d(real(-2.3)).unwrap();
    println!("boxes at a = -2.3: R = {:.4}, phi = {:.4}, alpha = {alpha:.4}, beta = {beta:.4}", bx.radius(), bx.phi());
    for r in [2.5, 3.0, 5.0] {
        let theta = theta_loop_integral(r, 1024).unwrap();
        println!("theta over |a| = {r}: {theta:.8} (2π = {:.8})", std::f64::consts::TAU);
    }
}
