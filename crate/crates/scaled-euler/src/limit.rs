//! Vanishing-scale sweeps and the limit objects they converge to.
//!
//! For two-shock data the intermediate density blows up like
//! `1/sqrt(eps)` while the two shock lines collapse onto `x = c t` with
//! `c = (u_l + u_r)/2`; the mass caught between them,
//! `(s_2 - s_1) t rho*`, converges to the delta weight
//! `d(t) = (u_l - u_r)(rho_l + rho_r) t / 2`, and the quantity
//! `2 eps (f(rho*) - f(rho_l))` converges to the concentration value
//! `l = (u_l - u_r)^2 / 4`. Equal-velocity data degenerate to a contact
//! discontinuity at `x = u_l t`; `u_l < u_r` opens a vacuum between the
//! data velocities.
//!
//! `sweep` records one row per `eps` (skipping, with a notice, any `eps`
//! above the existence threshold); `extrapolate_limit` fits an empirical
//! convergence order per column — no rate is assumed a priori — and
//! Richardson-extrapolates; `closed_form_limit` provides the exact target.

use crate::error::{Error, Result};
use crate::flux::FluxModel;
use crate::riemann::{classify, solve_two_shock, CaseTag, RiemannData};
use serde::Serialize;

/// The default sweep grid `eps = 1e-1 .. 1e-7` (decade steps).
pub fn default_eps_sweep() -> Vec<f64> {
    (1..=7).map(|k| 10f64.powi(-k)).collect()
}

/// Per-epsilon record of a two-shock solve.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepRecord {
    pub epsilon: f64,
    pub u_star: f64,
    pub rho_star: f64,
    pub s1: f64,
    pub s2: f64,
    /// `2 eps (f(rho*) - f(rho_l))`, the concentration estimate.
    pub l_estimate: f64,
    /// `(s2 - s1) rho*`, the delta-weight slope estimate `d(t)/t`.
    pub weight_estimate: f64,
}

/// An epsilon that was skipped, with the solver message.
#[derive(Debug, Clone)]
pub struct SweepSkip {
    pub epsilon: f64,
    pub reason: String,
}

/// Result of an epsilon sweep: records in the requested (decreasing)
/// epsilon order plus notices for skipped entries.
#[derive(Debug, Clone)]
pub struct Sweep {
    pub records: Vec<SweepRecord>,
    pub skipped: Vec<SweepSkip>,
}

impl Sweep {
    /// Fixed-order CSV with full 17-significant-digit values, so identical
    /// configurations produce byte-identical files.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("epsilon,u_star,rho_star,s1,s2,l_estimate,weight_estimate\n");
        for r in &self.records {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                r.epsilon, r.u_star, r.rho_star, r.s1, r.s2, r.l_estimate, r.weight_estimate
            ));
        }
        out
    }
}

/// Run the two-shock solver across a decreasing `eps` list.
///
/// Solver failures (epsilon above the existence threshold) become
/// [`SweepSkip`] notices; the sweep itself never aborts. Records are
/// reproducible bit-for-bit: all tolerances are fixed.
pub fn sweep(m_template: &FluxModel, data: &RiemannData, eps_list: &[f64]) -> Result<Sweep> {
    if classify(data) != CaseTag::TwoShock {
        return Err(Error::NotTwoShock);
    }
    if eps_list.is_empty() || eps_list.windows(2).any(|w| w[1] >= w[0]) || eps_list[0] <= 0.0 {
        return Err(Error::Config(
            "eps list must be positive and strictly decreasing".into(),
        ));
    }
    let mut records = Vec::with_capacity(eps_list.len());
    let mut skipped = Vec::new();
    for &eps in eps_list {
        let m = m_template.with_epsilon(eps)?;
        match solve_two_shock(&m, data) {
            Ok((mid, fan)) => {
                let speeds = fan.wave_speeds();
                let rho_star = mid.rho_star;
                // compensated form once f(rho*) dwarfs f(rho_l)
                let l_estimate = if rho_star > 1e10 {
                    let f_star = m.f(rho_star);
                    2.0 * eps * f_star * (1.0 - m.f(data.left.rho) / f_star)
                } else {
                    2.0 * eps * (m.f(rho_star) - m.f(data.left.rho))
                };
                records.push(SweepRecord {
                    epsilon: eps,
                    u_star: mid.u_star,
                    rho_star,
                    s1: speeds[0],
                    s2: speeds[1],
                    l_estimate,
                    weight_estimate: (speeds[1] - speeds[0]) * rho_star,
                });
            }
            Err(e) => skipped.push(SweepSkip {
                epsilon: eps,
                reason: e.to_string(),
            }),
        }
    }
    Ok(Sweep { records, skipped })
}

/// The delta-shock limit of a two-shock family: piecewise-constant fields
/// away from the line `x = c_slope * t`, on which the density carries the
/// weight `d(t) = weight_slope * t` and the velocity takes `u_on_line`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DeltaShockLimit {
    pub c_slope: f64,
    pub u_left: f64,
    pub u_right: f64,
    pub rho_left: f64,
    pub rho_right: f64,
    pub weight_slope: f64,
    pub l: f64,
    pub u_on_line: f64,
}

impl DeltaShockLimit {
    /// Closed forms: `c = (u_l+u_r)/2`, `w = (u_l-u_r)(rho_l+rho_r)/2`,
    /// `l = (u_l-u_r)^2/4`, `u_on_line = (u_l+u_r)/2`.
    pub fn closed_form(data: &RiemannData) -> Self {
        let du = data.left.u - data.right.u;
        let mean = 0.5 * (data.left.u + data.right.u);
        DeltaShockLimit {
            c_slope: mean,
            u_left: data.left.u,
            u_right: data.right.u,
            rho_left: data.left.rho,
            rho_right: data.right.rho,
            weight_slope: 0.5 * du * (data.left.rho + data.right.rho),
            l: 0.25 * du * du,
            u_on_line: mean,
        }
    }
}

/// Contact-discontinuity limit of the equal-velocity case: both densities
/// persist on either side of `x = speed * t`, `u` is constant.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ContactLimit {
    pub speed: f64,
    pub u: f64,
    pub rho_left: f64,
    pub rho_right: f64,
}

/// Vacuum limit of the `u_l < u_r` case: `u = u_l | x/t | u_r` and
/// `rho = rho_l | 0 | rho_r` across the wedge `u_l t < x < u_r t`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct VacuumLimit {
    pub u_left: f64,
    pub u_right: f64,
    pub rho_left: f64,
    pub rho_right: f64,
}

/// The `eps -> 0` limit object for each data class.
#[derive(Debug, Clone, Copy, Serialize)]
#[serde(tag = "case", rename_all = "kebab-case")]
pub enum CaseLimit {
    DeltaShock(DeltaShockLimit),
    Contact(ContactLimit),
    Vacuum(VacuumLimit),
}

/// The closed-form limit object for the given Riemann data.
pub fn closed_form_limit(data: &RiemannData) -> CaseLimit {
    match classify(data) {
        CaseTag::TwoShock => CaseLimit::DeltaShock(DeltaShockLimit::closed_form(data)),
        CaseTag::TwoRarefactionVacuum => CaseLimit::Vacuum(VacuumLimit {
            u_left: data.left.u,
            u_right: data.right.u,
            rho_left: data.left.rho,
            rho_right: data.right.rho,
        }),
        _ => CaseLimit::Contact(ContactLimit {
            speed: data.left.u,
            u: data.left.u,
            rho_left: data.left.rho,
            rho_right: data.right.rho,
        }),
    }
}

/// One Richardson-extrapolated column.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Extrapolated {
    pub value: f64,
    /// Empirically fitted convergence order (from the last difference triple).
    pub order: f64,
    /// False when successive differences fail to contract by >= 1.2.
    pub converged: bool,
}

/// Extrapolated limits of the sweep columns, assembled into a
/// [`DeltaShockLimit`].
#[derive(Debug, Clone, Serialize)]
pub struct ExtrapolationReport {
    pub limit: DeltaShockLimit,
    pub u_star: Extrapolated,
    pub l: Extrapolated,
    pub weight: Extrapolated,
    pub s1: Extrapolated,
    pub s2: Extrapolated,
}

/// Richardson extrapolation with an empirically fitted order.
///
/// No convergence rate in `eps` is assumed; the order comes from the last
/// difference triple, `p = ln(d_k/d_{k+1}) / ln(eps_k/eps_{k+1})`, and the
/// flag records whether the differences contract by at least 1.2 throughout.
fn richardson(eps: &[f64], y: &[f64]) -> Extrapolated {
    let n = y.len();
    debug_assert!(n >= 3 && eps.len() == n);
    let diffs: Vec<f64> = (0..n - 1).map(|k| y[k] - y[k + 1]).collect();
    let mut converged = true;
    for k in 0..diffs.len() - 1 {
        if diffs[k + 1] == 0.0 {
            continue;
        }
        if (diffs[k] / diffs[k + 1]).abs() < 1.2 {
            converged = false;
        }
    }
    let (da, db) = (diffs[n - 3], diffs[n - 2]);
    if db == 0.0 || da == 0.0 || da.signum() != db.signum() {
        // differences vanished or alternate: take the last value as-is
        return Extrapolated {
            value: y[n - 1],
            order: f64::NAN,
            converged,
        };
    }
    let ratio = eps[n - 2] / eps[n - 3]; // < 1 on a decreasing grid
    let order = (da / db).ln() / (1.0 / ratio).ln();
    let rp = ratio.powf(order);
    let value = y[n - 1] - db * rp / (1.0 - rp);
    Extrapolated {
        value,
        order,
        converged,
    }
}

/// Extrapolate the sweep columns to `eps -> 0` and package the result as a
/// [`DeltaShockLimit`] (constant side states come from the data).
pub fn extrapolate_limit(
    records: &[SweepRecord],
    data: &RiemannData,
) -> Result<ExtrapolationReport> {
    if classify(data) != CaseTag::TwoShock {
        return Err(Error::NotTwoShock);
    }
    if records.len() < 3 {
        return Err(Error::TooFewRecords {
            need: 3,
            got: records.len(),
        });
    }
    let eps: Vec<f64> = records.iter().map(|r| r.epsilon).collect();
    let col = |get: fn(&SweepRecord) -> f64| -> Vec<f64> { records.iter().map(get).collect() };
    let u_star = richardson(&eps, &col(|r| r.u_star));
    let l = richardson(&eps, &col(|r| r.l_estimate));
    let weight = richardson(&eps, &col(|r| r.weight_estimate));
    let s1 = richardson(&eps, &col(|r| r.s1));
    let s2 = richardson(&eps, &col(|r| r.s2));
    let limit = DeltaShockLimit {
        c_slope: 0.5 * (s1.value + s2.value),
        u_left: data.left.u,
        u_right: data.right.u,
        rho_left: data.left.rho,
        rho_right: data.right.rho,
        weight_slope: weight.value,
        l: l.value,
        u_on_line: u_star.value,
    };
    Ok(ExtrapolationReport {
        limit,
        u_star,
        l,
        weight,
        s1,
        s2,
    })
}

/// One row of a spike-mass audit at time `t`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpikeMassRow {
    pub epsilon: f64,
    /// Exact mass between the shocks, `(s2 - s1) t rho*`.
    pub mass: f64,
    pub rel_deviation: f64,
}

/// Mass audit of the inter-shock spike against the closed-form delta weight.
#[derive(Debug, Clone, Serialize)]
pub struct SpikeMassReport {
    pub t: f64,
    /// `d(t) = (u_l - u_r)(rho_l + rho_r) t / 2`.
    pub target: f64,
    pub rows: Vec<SpikeMassRow>,
}

/// Compare the exact inter-shock mass with the delta weight `d(t)` per
/// sweep record; the deviation trend to 0 is reported, not asserted.
pub fn spike_mass_check(records: &[SweepRecord], data: &RiemannData, t: f64) -> SpikeMassReport {
    assert!(t > 0.0);
    let target = DeltaShockLimit::closed_form(data).weight_slope * t;
    let rows = records
        .iter()
        .map(|r| {
            let mass = (r.s2 - r.s1) * t * r.rho_star;
            SpikeMassRow {
                epsilon: r.epsilon,
                mass,
                rel_deviation: (mass - target).abs() / target.abs().max(f64::MIN_POSITIVE),
            }
        })
        .collect();
    SpikeMassReport { t, target, rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flux::State;
    use approx::assert_abs_diff_eq;

    fn data(ul: f64, rl: f64, ur: f64, rr: f64) -> RiemannData {
        RiemannData::new(State { u: ul, rho: rl }, State { u: ur, rho: rr }).unwrap()
    }

    fn symmetric_sweep() -> (RiemannData, Sweep) {
        let d = data(1.0, 1.0, -1.0, 1.0);
        let m = FluxModel::brio(1.0).unwrap();
        let s = sweep(&m, &d, &default_eps_sweep()).unwrap();
        (d, s)
    }

    #[test]
    fn sweep_columns_approach_their_limits() {
        let (_, s) = symmetric_sweep();
        assert_eq!(s.records.len(), 7);
        assert!(s.skipped.is_empty());
        let last = s.records.last().unwrap();
        assert!(last.u_star.abs() < 1e-4);
        assert_abs_diff_eq!(last.l_estimate, 1.0, epsilon = 1e-3);
        assert_abs_diff_eq!(last.weight_estimate, 2.0, epsilon = 1e-3);
        assert!(last.s1.abs() < 1e-3 && last.s2.abs() < 1e-3);
        // epsilon column strictly decreasing, all entries finite
        for w in s.records.windows(2) {
            assert!(w[1].epsilon < w[0].epsilon);
        }
        assert!(s
            .records
            .iter()
            .all(|r| r.u_star.is_finite() && r.rho_star.is_finite()));
    }

    #[test]
    fn sweep_requires_two_shock_data() {
        let d = data(0.0, 2.0, 0.0, 1.0);
        let m = FluxModel::brio(1.0).unwrap();
        assert!(matches!(
            sweep(&m, &d, &default_eps_sweep()),
            Err(Error::NotTwoShock)
        ));
    }

    #[test]
    fn sweep_skips_oversized_epsilon_with_notice() {
        // with rho_l >> rho_r and a gentle velocity jump, a large eps keeps
        // the reversed 2-locus below rho_l and no intermediate state exists
        let d = data(0.1, 2.0, -0.1, 1.0);
        let m = FluxModel::brio(1.0).unwrap();
        let s = sweep(&m, &d, &[10.0, 1e-2, 1e-3, 1e-4]).unwrap();
        assert_eq!(s.skipped.len(), 1);
        assert_eq!(s.skipped[0].epsilon, 10.0);
        assert_eq!(s.records.len(), 3);
    }

    #[test]
    fn sweep_csv_is_deterministic_and_fixed_order() {
        let (_, s) = symmetric_sweep();
        let a = s.to_csv();
        let b = s.to_csv();
        assert_eq!(a, b);
        assert!(a.starts_with("epsilon,u_star,rho_star,s1,s2,l_estimate,weight_estimate\n"));
        assert_eq!(a.lines().count(), 8);
    }

    #[test]
    fn extrapolation_hits_closed_forms() {
        let (d, s) = symmetric_sweep();
        let report = extrapolate_limit(&s.records, &d).unwrap();
        let exact = DeltaShockLimit::closed_form(&d);
        assert_abs_diff_eq!(report.limit.u_on_line, exact.u_on_line, epsilon = 1e-3);
        assert_abs_diff_eq!(report.limit.l, exact.l, epsilon = 1e-3);
        assert_abs_diff_eq!(
            report.limit.weight_slope,
            exact.weight_slope,
            epsilon = 2e-3
        );
        assert_abs_diff_eq!(report.limit.c_slope, exact.c_slope, epsilon = 1e-3);
        assert!(report.l.converged && report.weight.converged);
    }

    #[test]
    fn extrapolation_on_asymmetric_data() {
        let d = data(2.0, 1.0, 0.0, 3.0);
        let m = FluxModel::brio(1.0).unwrap();
        let s = sweep(&m, &d, &default_eps_sweep()).unwrap();
        let report = extrapolate_limit(&s.records, &d).unwrap();
        let exact = DeltaShockLimit::closed_form(&d);
        assert_abs_diff_eq!(exact.weight_slope, 4.0, epsilon = 1e-14);
        assert_abs_diff_eq!(report.limit.weight_slope, 4.0, epsilon = 4.0 * 1e-3);
        assert_abs_diff_eq!(report.limit.u_on_line, 1.0, epsilon = 1e-3);
        assert_abs_diff_eq!(report.limit.c_slope, 1.0, epsilon = 1e-3);
    }

    #[test]
    fn extrapolation_needs_three_records() {
        let (d, s) = symmetric_sweep();
        assert!(matches!(
            extrapolate_limit(&s.records[..2], &d),
            Err(Error::TooFewRecords { .. })
        ));
    }

    #[test]
    fn extrapolation_rejects_degenerate_velocity_data() {
        let (_, s) = symmetric_sweep();
        let degenerate = data(0.7, 1.0, 0.7, 2.0);
        assert!(matches!(
            extrapolate_limit(&s.records, &degenerate),
            Err(Error::NotTwoShock)
        ));
    }

    #[test]
    fn closed_form_covers_all_cases() {
        match closed_form_limit(&data(1.0, 1.0, -1.0, 1.0)) {
            CaseLimit::DeltaShock(dl) => {
                assert_eq!(dl.c_slope, 0.0);
                assert_eq!(dl.weight_slope, 2.0);
                assert_eq!(dl.l, 1.0);
                assert_eq!(dl.u_on_line, 0.0);
            }
            _ => panic!("expected a delta-shock limit"),
        }
        match closed_form_limit(&data(0.0, 2.0, 0.0, 1.0)) {
            CaseLimit::Contact(c) => {
                assert_eq!(c.speed, 0.0);
                assert_eq!((c.rho_left, c.rho_right), (2.0, 1.0));
            }
            _ => panic!("expected a contact limit"),
        }
        match closed_form_limit(&data(-1.0, 1.0, 1.0, 1.0)) {
            CaseLimit::Vacuum(v) => {
                assert_eq!((v.u_left, v.u_right), (-1.0, 1.0));
            }
            _ => panic!("expected a vacuum limit"),
        }
    }

    #[test]
    fn weight_positivity_tracks_velocity_ordering() {
        let w =
            |ul: f64, ur: f64| DeltaShockLimit::closed_form(&data(ul, 1.0, ur, 2.0)).weight_slope;
        assert!(w(1.0, -1.0) > 0.0);
        assert!(w(3.0, 1.0) > 0.0);
        assert_eq!(w(1.0, 1.0), 0.0);
    }

    #[test]
    fn closed_form_scale_covariance() {
        let base = DeltaShockLimit::closed_form(&data(2.0, 1.0, -1.0, 3.0));
        let k = 2.5;
        let scaled = DeltaShockLimit::closed_form(&data(k * 2.0, 1.0, -k, 3.0));
        assert_abs_diff_eq!(scaled.c_slope, k * base.c_slope, epsilon = 1e-12);
        assert_abs_diff_eq!(scaled.u_on_line, k * base.u_on_line, epsilon = 1e-12);
        assert_abs_diff_eq!(scaled.l, k * k * base.l, epsilon = 1e-12);
        assert_abs_diff_eq!(scaled.weight_slope, k * base.weight_slope, epsilon = 1e-12);
    }

    #[test]
    fn spike_mass_matches_delta_weight() {
        let (d, s) = symmetric_sweep();
        let report = spike_mass_check(&s.records, &d, 1.0);
        assert_abs_diff_eq!(report.target, 2.0, epsilon = 1e-14);
        let last = report.rows.last().unwrap();
        assert!(
            last.rel_deviation < 0.01,
            "deviation {}",
            last.rel_deviation
        );
        // linear in t
        let report2 = spike_mass_check(&s.records, &d, 2.0);
        assert_abs_diff_eq!(
            report2.rows.last().unwrap().mass,
            2.0 * last.mass,
            epsilon = 1e-12
        );
        // coarse epsilon deviates more than fine epsilon eventually
        assert!(report.rows[0].rel_deviation > last.rel_deviation);
    }

    #[test]
    fn shock_interval_collapses_onto_the_line() {
        let (d, s) = symmetric_sweep();
        let c = 0.5 * (d.left.u + d.right.u);
        let t = 1.0;
        let first = &s.records[0];
        let last = s.records.last().unwrap();
        let a = |r: &SweepRecord| (c - r.s1) * t;
        let b = |r: &SweepRecord| (r.s2 - c) * t;
        assert!(a(last) > 0.0 && b(last) > 0.0);
        assert!(a(last) < a(first) && b(last) < b(first));
        assert!(a(last) < 1e-3 && b(last) < 1e-3);
    }
}
