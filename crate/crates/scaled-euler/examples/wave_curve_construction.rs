//! Shock loci and rarefaction curves through an anchor state: monotone
//! inversion by bisection, Rankine-Hugoniot residuals, Lax admissibility,
//! and the quadrature of the rarefaction velocity against a closed form.
//!
//! ```bash
//! cargo run --example wave_curve_construction
//! ```

use scaled_euler::wave_curves::{
    rarefaction_u_of_rho, rh_residual, shock_speed, Family, ShockLocusPoint,
};
use scaled_euler::{FluxModel, State};

fn main() {
    let m = FluxModel::brio(0.01).unwrap();
    let anchor = State { u: 1.0, rho: 1.0 };

    println!("1-shock locus through (1, 1), eps = 0.01 (u drops, rho grows):");
    println!(
        "{:>8} {:>14} {:>16} {:>12} {:>12}",
        "u", "rho_1(u)", "speed", "|RH_1|", "|RH_2|"
    );
    for k in 1..=4 {
        let u = 1.0 - 0.5 * k as f64;
        let p = ShockLocusPoint::family1_from_left(&m, &anchor, u).unwrap();
        let s = shock_speed(&m, Family::One, &p.left, &p.right).unwrap();
        let (r1, r2) = rh_residual(&m, &p.left, &p.right, p.speed);
        println!(
            "{u:>8.2} {:>14.8} {:>16.8e} {:>12.2e} {:>12.2e}",
            p.right.rho,
            s,
            r1.abs(),
            r2.abs()
        );
    }

    println!("\n2-shock locus through (1, 1) (forward branch, rho shrinks):");
    for k in 1..=3 {
        let u = 1.0 - 0.03 * k as f64;
        let p = ShockLocusPoint::family2_from_left(&m, &anchor, u).unwrap();
        println!(
            "  u = {u:.2}: rho_2(u) = {:.8}, speed = {:.6e}",
            p.right.rho, p.speed
        );
    }
    // this branch meets rho = 0 at a finite velocity drop; beyond it there
    // is no admissible state and the solver says so
    let err = ShockLocusPoint::family2_from_left(&m, &anchor, 0.85).unwrap_err();
    println!("  u = 0.85: {err}");

    // rarefaction velocity vs the closed-form antiderivative at eps = 1
    // int (sqrt(1+4x^2)-1)/(2x) dx
    //   = sqrt(1+4x^2)/2 + ln((sqrt(1+4x^2)-1)/(sqrt(1+4x^2)+1))/4 - ln(x)/2
    let unit = FluxModel::brio(1.0).unwrap();
    let a = State { u: 0.0, rho: 1.0 };
    let closed = |x: f64| {
        let w = (1.0 + 4.0 * x * x).sqrt();
        0.5 * w + 0.25 * ((w - 1.0) / (w + 1.0)).ln() - 0.5 * x.ln()
    };
    println!("\n1-rarefaction through (0, 1) at eps = 1 vs the closed form:");
    println!(
        "{:>8} {:>18} {:>18} {:>10}",
        "rho", "quadrature", "closed form", "diff"
    );
    for rho in [0.8, 0.5, 0.25, 0.1] {
        let u = rarefaction_u_of_rho(&unit, Family::One, &a, rho).unwrap();
        let exact = closed(1.0) - closed(rho);
        println!(
            "{rho:>8.2} {u:>18.12} {exact:>18.12} {:>10.1e}",
            (u - exact).abs()
        );
    }
}
