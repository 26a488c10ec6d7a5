//! Build and sample the exact self-similar solution of one Riemann problem
//! at a fixed scaling parameter.
//!
//! ```bash
//! cargo run --example solve_riemann
//! ```

use scaled_euler::riemann::{solve_two_shock, Segment};
use scaled_euler::{FluxModel, RiemannData, State};

fn main() {
    let eps = 1e-3;
    let m = FluxModel::brio(eps).unwrap();
    let data = RiemannData::new(State { u: 1.0, rho: 1.0 }, State { u: -1.0, rho: 1.0 }).unwrap();

    let (mid, fan) = solve_two_shock(&m, &data).unwrap();
    println!("two-shock solution at eps = {eps}");
    println!(
        "intermediate state: u* = {:.8e}, rho* = {:.8e}",
        mid.u_star, mid.rho_star
    );
    println!(
        "(the density blows up like 1/sqrt(eps): eps * rho*^2 = {:.4})",
        eps * mid.rho_star * mid.rho_star
    );

    println!("\nwave structure in xi = x/t:");
    for seg in &fan.segments {
        match seg {
            Segment::Constant {
                state,
                xi_lo,
                xi_hi,
            } => {
                println!("  constant on ({xi_lo:+.4e}, {xi_hi:+.4e}]: {state}")
            }
            Segment::Shock { family, speed, .. } => {
                println!("  {family:?}-shock at xi = {speed:+.8e}")
            }
            _ => {}
        }
    }

    let t = 1.0;
    println!("\nprofile at t = {t}:");
    println!("{:>12} {:>14} {:>14}", "x", "u", "rho");
    let speeds = fan.wave_speeds();
    let width = speeds[1] - speeds[0];
    for k in -4..=4 {
        let x = (speeds[0] + 0.5 * width + k as f64 * width) * t;
        let s = fan.sample(x, t);
        println!("{x:>12.5} {:>14.6e} {:>14.6e}", s.u, s.rho);
    }
    println!(
        "\nbetween the shocks the density plateau carries the mass that will \
         concentrate on x = (u_l+u_r)/2 t as eps -> 0"
    );
}
