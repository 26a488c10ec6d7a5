//! The two non-shock data classes: equal velocities degenerate to a
//! contact discontinuity, diverging velocities open a vacuum.
//!
//! ```bash
//! cargo run --example vacuum_and_contact
//! ```

use scaled_euler::limit::{closed_form_limit, CaseLimit};
use scaled_euler::riemann::solve;
use scaled_euler::{FluxModel, RiemannData, State};

fn main() {
    // equal velocities: rarefaction + shock at finite eps, contact in the limit
    let contact = RiemannData::new(State { u: 0.0, rho: 2.0 }, State { u: 0.0, rho: 1.0 }).unwrap();
    println!("u_l = u_r = 0, rho: 2 -> 1");
    println!("{:>10} {:>16} {:>16}", "eps", "u*", "rho*");
    for k in [2, 3, 4, 5, 6] {
        let m = FluxModel::brio(10f64.powi(-k)).unwrap();
        let fan = solve(&m, &contact).unwrap();
        let mid = fan.plateau().unwrap();
        println!(
            "{:>10.0e} {:>16.8e} {:>16.8e}",
            m.epsilon(),
            mid.u_star,
            mid.rho_star
        );
    }
    if let CaseLimit::Contact(c) = closed_form_limit(&contact) {
        println!(
            "limit: contact at x = {} t carrying the density jump {} -> {}\n",
            c.speed, c.rho_left, c.rho_right
        );
    }

    // diverging velocities: two rarefactions around a vacuum
    let vac_data =
        RiemannData::new(State { u: -1.0, rho: 1.0 }, State { u: 1.0, rho: 1.0 }).unwrap();
    let m = FluxModel::brio(1e-4).unwrap();
    let fan = solve(&m, &vac_data).unwrap();
    println!("u: -1 -> +1 at eps = 1e-4 ({})", fan.case);
    println!("wave speeds (fan edges): {:?}", fan.wave_speeds());
    println!("\nprofile at t = 1 (inside the vacuum u = x/t, rho = 0):");
    println!("{:>8} {:>12} {:>12}", "x", "u", "rho");
    for k in -5..=5 {
        let x = 0.24 * k as f64;
        let s = fan.sample(x, 1.0);
        println!("{x:>8.2} {:>12.6} {:>12.3e}", s.u, s.rho);
    }
    if let CaseLimit::Vacuum(v) = closed_form_limit(&vac_data) {
        println!(
            "\nlimit: vacuum on u_l t < x < u_r t = ({}, {}) t, velocity ramp x/t across it",
            v.u_left, v.u_right
        );
    }
}
