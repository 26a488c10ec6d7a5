//! Property tests for the structural invariants of the wave-curve and
//! solver layers.

use proptest::prelude::*;
use scaled_euler::flux::{FluxModel, State};
use scaled_euler::riemann::{solve_two_shock, RiemannData};
use scaled_euler::wave_curves::{
    lax_admissible, rh_residual, shock1_rho_given_u, shock2_rho_given_u, ShockLocusPoint,
};

fn brio(eps: f64) -> FluxModel {
    FluxModel::brio(eps).unwrap()
}

/// The quadratic relation both locus branches must satisfy.
fn quadratic_relation(m: &FluxModel, l: &State, r: &State) -> f64 {
    let eps = m.epsilon();
    let du = l.u - r.u;
    du * du + (2.0 * eps * (r.rho - l.rho) / (l.rho + r.rho)) * du
        - 2.0 * eps * (l.rho - r.rho) * (m.f(l.rho) - m.f(r.rho)) / (l.rho + r.rho)
}

proptest! {
    #[test]
    fn shock_locus_points_satisfy_quadratic_relation_and_lax(
        log_eps in -5.0..-1.0f64,
        u0 in -2.0..2.0f64,
        rho0 in 0.1..5.0f64,
        drop in 1e-3..2.0f64,
        family_one in proptest::bool::ANY,
    ) {
        let m = brio(10f64.powf(log_eps));
        let anchor = State { u: u0, rho: rho0 };
        let point = if family_one {
            ShockLocusPoint::family1_from_left(&m, &anchor, u0 - drop).unwrap()
        } else {
            ShockLocusPoint::family2_from_right(&m, &anchor, u0 + drop).unwrap()
        };
        let q = quadratic_relation(&m, &point.left, &point.right);
        prop_assert!(q.abs() <= 1e-10 * (1.0 + drop * drop));
        prop_assert!(lax_admissible(&m, point.family, &point.left, &point.right, point.speed));
        let (r1, r2) = rh_residual(&m, &point.left, &point.right, point.speed);
        let scale = point.left.u.abs().max(point.right.u.abs()).max(1.0);
        prop_assert!(r1.abs() <= 1e-10 * scale && r2.abs() <= 1e-10 * scale);
    }

    #[test]
    fn locus_parameterizations_are_strictly_monotone(
        log_eps in -5.0..-1.0f64,
        u0 in -1.0..1.0f64,
        rho0 in 0.2..4.0f64,
        d1 in 1e-2..1.0f64,
        d2 in 1e-2..1.0f64,
    ) {
        let m = brio(10f64.powf(log_eps));
        let anchor = State { u: u0, rho: rho0 };
        let (da, db) = (d1.min(d2), d1.max(d2) + 1e-3);
        // family 1: rho*1 strictly decreasing in u
        let rho_a = shock1_rho_given_u(&m, &anchor, u0 - da).unwrap();
        let rho_b = shock1_rho_given_u(&m, &anchor, u0 - db).unwrap();
        prop_assert!(rho_b > rho_a);
        // family 2 (reversed orientation): rho*2 strictly increasing in u
        let rho_c = shock2_rho_given_u(&m, &anchor, u0 + da).unwrap();
        let rho_d = shock2_rho_given_u(&m, &anchor, u0 + db).unwrap();
        prop_assert!(rho_d > rho_c);
    }

    #[test]
    fn one_shock_speed_decreases_as_the_jump_grows(
        log_eps in -4.0..-1.0f64,
        u0 in -1.0..1.0f64,
        rho0 in 0.2..4.0f64,
        d1 in 1e-2..1.0f64,
        extra in 1e-2..1.0f64,
    ) {
        let m = brio(10f64.powf(log_eps));
        let anchor = State { u: u0, rho: rho0 };
        let small = ShockLocusPoint::family1_from_left(&m, &anchor, u0 - d1).unwrap();
        let large = ShockLocusPoint::family1_from_left(&m, &anchor, u0 - d1 - extra).unwrap();
        prop_assert!(large.speed < small.speed);
    }

    #[test]
    fn eigen_residual_stays_at_round_off(
        log_eps in -6.0..0.0f64,
        u in -5.0..5.0f64,
        rho in 0.05..10.0f64,
    ) {
        let m = brio(10f64.powf(log_eps));
        let s = State { u, rho };
        let a = m.jacobian(&s);
        let pair = m.eigen(&s).unwrap();
        let norm_a = a.iter().flatten().map(|x| x.abs()).fold(0.0f64, f64::max);
        for (lambda, r) in [(pair.lambda1, pair.r1), (pair.lambda2, pair.r2)] {
            let res0 = a[0][0] * r[0] + a[0][1] * r[1] - lambda * r[0];
            let res1 = a[1][0] * r[0] + a[1][1] * r[1] - lambda * r[1];
            let norm_r = (r[0] * r[0] + r[1] * r[1]).sqrt();
            prop_assert!((res0 * res0 + res1 * res1).sqrt() / norm_r <= 1e-12 * norm_a.max(1.0));
        }
        prop_assert!(pair.lambda1 < pair.lambda2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn two_shock_solutions_bracket_and_sample_self_similarly(
        // eps <= 1e-3 keeps every datum in the box below the existence
        // threshold (the locus climb du/sqrt(eps) exceeds any density gap)
        log_eps in -5.0..-3.0f64,
        du in 0.2..3.0f64,
        mid_u in -1.0..1.0f64,
        rho_l in 0.3..3.0f64,
        rho_r in 0.3..3.0f64,
        x in -0.5..0.5f64,
        t in 0.1..2.0f64,
        k in 0.2..5.0f64,
    ) {
        let m = brio(10f64.powf(log_eps));
        let d = RiemannData::new(
            State { u: mid_u + du / 2.0, rho: rho_l },
            State { u: mid_u - du / 2.0, rho: rho_r },
        ).unwrap();
        let (mid, fan) = solve_two_shock(&m, &d).unwrap();
        prop_assert!(mid.u_star > d.right.u && mid.u_star < d.left.u);
        prop_assert!(mid.rho_star > d.left.rho.max(d.right.rho));
        let speeds = fan.wave_speeds();
        prop_assert!(speeds[0] < speeds[1]);
        let a = fan.sample(x, t);
        let b = fan.sample(k * x, k * t);
        prop_assert!((a.u - b.u).abs() <= 1e-9 * (1.0 + a.u.abs()));
        prop_assert!((a.rho - b.rho).abs() <= 1e-8 * (1.0 + a.rho));
    }
}
