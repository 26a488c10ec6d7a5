//! Verify the delta-shock limit against the measure-valued weak
//! formulation with a battery of mollifier bumps, then demonstrate the
//! battery's detection power on perturbed candidates.
//!
//! ```bash
//! cargo run --example weak_form_check
//! ```

use scaled_euler::limit::{closed_form_limit, CaseLimit};
use scaled_euler::weak_form::{
    residual_rho, residual_scale, residual_u, run_battery, standard_battery, MeasureSolution,
};
use scaled_euler::{RiemannData, State};

fn main() {
    let data = RiemannData::new(State { u: 1.0, rho: 1.0 }, State { u: -1.0, rho: 1.0 }).unwrap();
    let dl = match closed_form_limit(&data) {
        CaseLimit::DeltaShock(d) => d,
        _ => unreachable!(),
    };
    let sol = MeasureSolution::delta(&dl);
    let bumps = standard_battery(42, 12, dl.c_slope);

    println!(
        "delta-shock limit: line x = {} t, weight d(t) = {} t\n",
        dl.c_slope, dl.weight_slope
    );
    println!(
        "{:>4} {:>22} {:>22} {:>14}",
        "bump", "velocity residual", "density residual", "tolerance"
    );
    for (i, r) in run_battery(&sol, &data, &bumps).iter().enumerate() {
        println!(
            "{i:>4} {:>22.3e} {:>22.3e} {:>14.3e}",
            r.residual_u,
            r.residual_rho,
            1e-8 * r.scale
        );
    }

    println!("\ndetection power (max |residual| / tolerance over the battery):");
    let mutants = [
        ("true solution", MeasureSolution::delta(&dl)),
        (
            "shock line moved 5%",
            MeasureSolution::delta_with(&dl, dl.c_slope + 0.1, dl.weight_slope, dl.u_on_line),
        ),
        (
            "weight slope * 1.05",
            MeasureSolution::delta_with(&dl, dl.c_slope, 1.05 * dl.weight_slope, dl.u_on_line),
        ),
        (
            "line velocity + 0.1",
            MeasureSolution::delta_with(&dl, dl.c_slope, dl.weight_slope, dl.u_on_line + 0.1),
        ),
    ];
    for (name, candidate) in &mutants {
        let mut worst: f64 = 0.0;
        for phi in &bumps {
            let tol = 1e-8 * residual_scale(phi, &data);
            worst = worst
                .max(residual_u(candidate, &data, phi).abs() / tol)
                .max(residual_rho(candidate, &data, phi).abs() / tol);
        }
        println!("  {name:<22} {worst:>12.3e}");
    }
    println!("\na candidate is accepted only when every bump stays below tolerance");
}
