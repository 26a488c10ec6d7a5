//! Sweep the scaling parameter toward zero for two-shock data and watch
//! the solution converge to a delta shock: the intermediate velocity tends
//! to (u_l+u_r)/2, the concentration 2 eps (f(rho*) - f(rho_l)) to
//! (u_l-u_r)^2/4, and the inter-shock mass to the delta weight
//! (u_l-u_r)(rho_l+rho_r) t / 2.
//!
//! ```bash
//! cargo run --example delta_shock_sweep
//! ```

use scaled_euler::limit::{
    closed_form_limit, default_eps_sweep, extrapolate_limit, spike_mass_check, sweep, CaseLimit,
};
use scaled_euler::{FluxModel, RiemannData, State};

fn main() {
    let data = RiemannData::new(State { u: 2.0, rho: 1.0 }, State { u: 0.0, rho: 3.0 }).unwrap();
    let template = FluxModel::brio(1.0).unwrap();

    let result = sweep(&template, &data, &default_eps_sweep()).unwrap();
    print!("{}", result.to_csv());

    let report = extrapolate_limit(&result.records, &data).unwrap();
    let exact = match closed_form_limit(&data) {
        CaseLimit::DeltaShock(d) => d,
        _ => unreachable!(),
    };
    println!("\nextrapolated vs closed form:");
    println!(
        "  line slope      {:+.8e}  vs  {:+.8e}",
        report.limit.c_slope, exact.c_slope
    );
    println!(
        "  line velocity   {:+.8e}  vs  {:+.8e}   (order {:.2}, converged: {})",
        report.limit.u_on_line, exact.u_on_line, report.u_star.order, report.u_star.converged
    );
    println!(
        "  concentration   {:+.8e}  vs  {:+.8e}   (order {:.2})",
        report.limit.l, exact.l, report.l.order
    );
    println!(
        "  weight slope    {:+.8e}  vs  {:+.8e}   (order {:.2})",
        report.limit.weight_slope, exact.weight_slope, report.weight.order
    );

    let mass = spike_mass_check(&result.records, &data, 1.0);
    println!(
        "\ninter-shock mass at t = 1 against d(1) = {}:",
        mass.target
    );
    for row in &mass.rows {
        println!(
            "  eps = {:>8.1e}: mass {:.6}  (rel deviation {:.2e})",
            row.epsilon, row.mass, row.rel_deviation
        );
    }
}
