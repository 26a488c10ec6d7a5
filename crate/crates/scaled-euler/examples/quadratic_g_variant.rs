//! The variant f = rho^2/2, g = -rho^2: wave curves become straight lines
//! u - u0 = (rho - rho0)(eps -/+ sqrt(eps^2 + eps)) and the intermediate
//! density blows up like 1/sqrt(eps) (so sqrt(eps) rho* stabilizes).
//!
//! ```bash
//! cargo run --example quadratic_g_variant
//! ```

use scaled_euler::riemann::solve_two_shock;
use scaled_euler::wave_curves::{quadratic_g_shock_loci, Family};
use scaled_euler::{FluxModel, RiemannData, State};

fn main() {
    // closed-form locus point: anchor (1, 1), eps = 1, u = 0 on family 1
    let anchor = State { u: 1.0, rho: 1.0 };
    let rho = quadratic_g_shock_loci(&anchor, 1.0, 0.0, Family::One);
    println!("family-1 locus through (1, 1) at eps = 1, u = 0: rho = {rho:.12} (= 2 + sqrt(2))\n");

    let data = RiemannData::new(State { u: 1.0, rho: 1.0 }, State { u: -1.0, rho: 1.0 }).unwrap();
    println!("two-shock sweep, symmetric data:");
    println!(
        "{:>10} {:>16} {:>16} {:>16}",
        "eps", "u*", "rho*", "sqrt(eps) rho*"
    );
    for k in 1..=7 {
        let eps = 10f64.powi(-k);
        let m = FluxModel::quadratic_g(eps).unwrap();
        let (mid, fan) = solve_two_shock(&m, &data).unwrap();
        fan.validate().unwrap();
        println!(
            "{eps:>10.0e} {:>16.8e} {:>16.8e} {:>16.10}",
            mid.u_star,
            mid.rho_star,
            eps.sqrt() * mid.rho_star
        );
    }
    println!("\nsqrt(eps) rho* settles at (u_l - u_r)/2: the same delta shock forms, reached");
    println!("through straight-line wave curves instead of the curved ones of g = -rho");
}
