//! Eigenstructure of the scaled system: characteristic speeds, the
//! hyperbolicity gap, and the genuine-nonlinearity signs.
//!
//! ```bash
//! cargo run --example eigenstructure_report
//! ```

use scaled_euler::{FluxModel, State};

fn main() {
    let eps = 0.1;
    let m = FluxModel::brio(eps).unwrap();

    println!("Brio flux at eps = {eps}: hypothesis check and eigenstructure\n");
    let report = m.validate_hypotheses(100.0, 64);
    println!(
        "f' > 0 and f' strictly increasing on (0, 100]: {}",
        if report.pass { "pass" } else { "FAIL" }
    );

    println!("\nstate (u, rho)      lambda1      lambda2      gap        gap at rho=0 is eps");
    for (u, rho) in [(0.0, 1.0), (1.0, 2.0), (-0.5, 0.25), (2.0, 0.0)] {
        let s = State { u, rho };
        let (l1, l2) = m.eigenvalues(&s);
        println!(
            "({u:+.2}, {rho:.2})      {l1:+.6}    {l2:+.6}    {:.6}",
            l2 - l1
        );
    }

    let grid: Vec<State> = (1..=4)
        .flat_map(|i| {
            (0..4).map(move |j| State {
                u: -2.0 + 1.1 * j as f64,
                rho: 0.5 * i as f64,
            })
        })
        .collect();
    let gnl = m.check_genuine_nonlinearity(&grid);
    println!(
        "\ngenuine nonlinearity on a {}-state grid: {}",
        gnl.entries.len(),
        if gnl.all_genuinely_nonlinear {
            "field 1 strictly compressive, field 2 strictly expansive"
        } else {
            "VIOLATED"
        }
    );
    let e = &gnl.entries[0];
    println!(
        "example at {}: grad(lambda1).r1 = {:+.4e}, grad(lambda2).r2 = {:+.4e}",
        e.state, e.dlambda1_dot_r1, e.dlambda2_dot_r2
    );

    // a flux that violates convexity is caught by sampling
    let linear = FluxModel::custom(eps, |r| r, |_| 1.0).unwrap();
    let bad = linear.validate_hypotheses(10.0, 32);
    println!(
        "\nlinear f(rho) = rho rejected: {:?}",
        bad.first_violation.map(|(rho, _, kind)| (rho, kind))
    );
}
