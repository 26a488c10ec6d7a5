//! Flux models for the scaled system
//!
//! ```text
//! u_t + (u^2/2 + eps*f(rho))_x = 0
//! rho_t + (u*rho + eps*g(rho))_x = 0
//! ```
//!
//! The coefficient matrix of the quasilinear form is
//!
//! ```text
//! A(u, rho) = | u        eps*f'(rho)   |
//!             | rho      u + eps*g'(rho) |
//! ```
//!
//! with eigenvalues `u + eps*g'/2 -/+ sqrt(eps^2 g'^2 + 4 eps rho f') / 2`
//! and eigenvectors `((lambda_i - u - eps*g') / rho, 1)`. For `g = -rho`
//! this reduces to `lambda_{1,2} = u - eps/2 -/+ sqrt(4 eps rho f' + eps^2)/2`,
//! so the system is strictly hyperbolic for `rho > 0` and the gap equals
//! `eps` at the vacuum. Both characteristic fields are genuinely nonlinear
//! whenever `f' > 0` and `f'' > 0`.
//!
//! `f` is treated as a black box: a pair of callables `(f, f')` with an
//! optional second derivative. Hypothesis checks are sampling-based, not
//! symbolic. `g` is restricted to the two analyzed forms (`-rho`, `-rho^2`);
//! the quadratic form is only admitted together with `f = rho^2/2`.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// A point `(u, rho)` in phase space. Densities are nonnegative; `rho = 0`
/// is admitted (vacuum states need it) but eigenvector queries there fail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    pub u: f64,
    pub rho: f64,
}

impl State {
    pub fn new(u: f64, rho: f64) -> Result<Self> {
        if !rho.is_finite() || !u.is_finite() || rho < 0.0 {
            return Err(Error::NegativeDensity { rho });
        }
        Ok(State { u, rho })
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(u = {:.6}, rho = {:.6})", self.u, self.rho)
    }
}

/// The admitted forms of the density-flux correction `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GKind {
    /// `g(rho) = -rho` (any linear decreasing g reduces to this).
    Linear,
    /// `g(rho) = -rho^2`, analyzed together with `f(rho) = rho^2/2`.
    Quadratic,
}

type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Clone)]
enum PressureLaw {
    /// `f(rho) = rho^2 / 2` — the Brio pressure term.
    QuadraticHalf,
    /// User-supplied callables.
    Custom {
        f: ScalarFn,
        f_prime: ScalarFn,
        f_second: Option<ScalarFn>,
    },
    /// Cubic Hermite interpolant through `(rho, f, f')` samples, extended
    /// linearly beyond the table with the endpoint slopes.
    Table(Arc<FluxTable>),
}

/// Sampled pressure law: nodes `rho[i]` (strictly increasing) with values
/// `f[i]` and slopes `fp[i]`; evaluated by monotone cubic Hermite pieces.
#[derive(Debug, Clone)]
pub struct FluxTable {
    pub rho: Vec<f64>,
    pub f: Vec<f64>,
    pub fp: Vec<f64>,
}

impl FluxTable {
    pub fn new(rho: Vec<f64>, f: Vec<f64>, fp: Vec<f64>) -> Result<Self> {
        if rho.len() < 2 || rho.len() != f.len() || rho.len() != fp.len() {
            return Err(Error::Config(
                "flux table needs >= 2 rows of (rho, f, f')".into(),
            ));
        }
        if rho.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config(
                "flux table rho column must be strictly increasing".into(),
            ));
        }
        Ok(FluxTable { rho, f, fp })
    }

    fn segment(&self, x: f64) -> usize {
        match self.rho.binary_search_by(|r| r.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(self.rho.len() - 2),
            Err(i) => i.clamp(1, self.rho.len() - 1) - 1,
        }
    }

    fn eval(&self, x: f64) -> (f64, f64) {
        let n = self.rho.len();
        if x <= self.rho[0] {
            return (self.f[0] + self.fp[0] * (x - self.rho[0]), self.fp[0]);
        }
        if x >= self.rho[n - 1] {
            return (
                self.f[n - 1] + self.fp[n - 1] * (x - self.rho[n - 1]),
                self.fp[n - 1],
            );
        }
        let i = self.segment(x);
        let h = self.rho[i + 1] - self.rho[i];
        let t = (x - self.rho[i]) / h;
        let (f0, f1, d0, d1) = (self.f[i], self.f[i + 1], self.fp[i], self.fp[i + 1]);
        let h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
        let h10 = t * (1.0 - t) * (1.0 - t);
        let h01 = t * t * (3.0 - 2.0 * t);
        let h11 = t * t * (t - 1.0);
        let value = h00 * f0 + h * (h10 * d0 + h11 * d1) + h01 * f1;
        let dh00 = 6.0 * t * (t - 1.0);
        let dh10 = (1.0 - t) * (1.0 - 3.0 * t);
        let dh01 = -dh00;
        let dh11 = t * (3.0 * t - 2.0);
        let deriv = (dh00 * f0 + dh01 * f1) / h + dh10 * d0 + dh11 * d1;
        (value, deriv)
    }
}

/// The scaled flux pair `(u^2/2 + eps*f(rho), u*rho + eps*g(rho))`.
///
/// Immutable after construction; cheap to clone and safe to share.
#[derive(Clone)]
pub struct FluxModel {
    epsilon: f64,
    g_kind: GKind,
    law: PressureLaw,
}

impl fmt::Debug for FluxModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FluxModel")
            .field("epsilon", &self.epsilon)
            .field("g_kind", &self.g_kind)
            .field(
                "f",
                &match &self.law {
                    PressureLaw::QuadraticHalf => "rho^2/2",
                    PressureLaw::Custom { .. } => "custom",
                    PressureLaw::Table(_) => "table",
                },
            )
            .finish()
    }
}

impl FluxModel {
    /// The Brio instance: `f = rho^2/2`, `g = -rho`.
    pub fn brio(epsilon: f64) -> Result<Self> {
        Self::check_epsilon(epsilon)?;
        Ok(FluxModel {
            epsilon,
            g_kind: GKind::Linear,
            law: PressureLaw::QuadraticHalf,
        })
    }

    /// The quadratic-g variant: `f = rho^2/2`, `g = -rho^2`.
    pub fn quadratic_g(epsilon: f64) -> Result<Self> {
        Self::check_epsilon(epsilon)?;
        Ok(FluxModel {
            epsilon,
            g_kind: GKind::Quadratic,
            law: PressureLaw::QuadraticHalf,
        })
    }

    /// A custom pressure law with `g = -rho`. The second derivative is
    /// optional; convexity is then checked by divided differences.
    pub fn custom<F, FP>(epsilon: f64, f: F, f_prime: FP) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        FP: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::check_epsilon(epsilon)?;
        Ok(FluxModel {
            epsilon,
            g_kind: GKind::Linear,
            law: PressureLaw::Custom {
                f: Arc::new(f),
                f_prime: Arc::new(f_prime),
                f_second: None,
            },
        })
    }

    /// As [`FluxModel::custom`] with an explicit second derivative.
    pub fn custom_with_second<F, FP, FS>(
        epsilon: f64,
        f: F,
        f_prime: FP,
        f_second: FS,
    ) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        FP: Fn(f64) -> f64 + Send + Sync + 'static,
        FS: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::check_epsilon(epsilon)?;
        Ok(FluxModel {
            epsilon,
            g_kind: GKind::Linear,
            law: PressureLaw::Custom {
                f: Arc::new(f),
                f_prime: Arc::new(f_prime),
                f_second: Some(Arc::new(f_second)),
            },
        })
    }

    /// A table-backed pressure law with `g = -rho`.
    pub fn from_table(epsilon: f64, table: FluxTable) -> Result<Self> {
        Self::check_epsilon(epsilon)?;
        Ok(FluxModel {
            epsilon,
            g_kind: GKind::Linear,
            law: PressureLaw::Table(Arc::new(table)),
        })
    }

    fn check_epsilon(epsilon: f64) -> Result<()> {
        if !epsilon.is_finite() || epsilon <= 0.0 {
            return Err(Error::NonPositiveEpsilon { epsilon });
        }
        Ok(())
    }

    /// Same model at a different scaling parameter.
    pub fn with_epsilon(&self, epsilon: f64) -> Result<Self> {
        Self::check_epsilon(epsilon)?;
        let mut m = self.clone();
        m.epsilon = epsilon;
        Ok(m)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn g_kind(&self) -> GKind {
        self.g_kind
    }

    /// True for the Brio instance (`f = rho^2/2`, `g = -rho`), to which the
    /// explicit entropy pair is hard-bound.
    pub fn is_brio(&self) -> bool {
        self.g_kind == GKind::Linear && matches!(self.law, PressureLaw::QuadraticHalf)
    }

    pub fn f(&self, rho: f64) -> f64 {
        match &self.law {
            PressureLaw::QuadraticHalf => 0.5 * rho * rho,
            PressureLaw::Custom { f, .. } => f(rho),
            PressureLaw::Table(t) => t.eval(rho).0,
        }
    }

    pub fn f_prime(&self, rho: f64) -> f64 {
        match &self.law {
            PressureLaw::QuadraticHalf => rho,
            PressureLaw::Custom { f_prime, .. } => f_prime(rho),
            PressureLaw::Table(t) => t.eval(rho).1,
        }
    }

    /// Second derivative when the law provides one.
    pub fn f_second(&self, rho: f64) -> Option<f64> {
        match &self.law {
            PressureLaw::QuadraticHalf => Some(1.0),
            PressureLaw::Custom { f_second, .. } => f_second.as_ref().map(|fs| fs(rho)),
            PressureLaw::Table(_) => None,
        }
    }

    pub fn g(&self, rho: f64) -> f64 {
        match self.g_kind {
            GKind::Linear => -rho,
            GKind::Quadratic => -rho * rho,
        }
    }

    pub fn g_prime(&self, rho: f64) -> f64 {
        match self.g_kind {
            GKind::Linear => -1.0,
            GKind::Quadratic => -2.0 * rho,
        }
    }

    /// The flux map `(u^2/2 + eps*f(rho), u*rho + eps*g(rho))`.
    pub fn flux(&self, s: &State) -> [f64; 2] {
        [
            0.5 * s.u * s.u + self.epsilon * self.f(s.rho),
            s.u * s.rho + self.epsilon * self.g(s.rho),
        ]
    }

    /// The coefficient matrix `A(u, rho)` of the quasilinear form.
    pub fn jacobian(&self, s: &State) -> [[f64; 2]; 2] {
        [
            [s.u, self.epsilon * self.f_prime(s.rho)],
            [s.rho, s.u + self.epsilon * self.g_prime(s.rho)],
        ]
    }

    /// Characteristic speeds `lambda_1 <= lambda_2`, defined for `rho >= 0`
    /// (continuous extension at the vacuum).
    pub fn eigenvalues(&self, s: &State) -> (f64, f64) {
        let eps = self.epsilon;
        let gp = self.g_prime(s.rho);
        let half_gap = 0.5 * (eps * eps * gp * gp + 4.0 * eps * s.rho * self.f_prime(s.rho)).sqrt();
        let center = s.u + 0.5 * eps * gp;
        (center - half_gap, center + half_gap)
    }

    /// Eigenvalues with right eigenvectors; `rho = 0` is rejected because
    /// the eigenvector components contain `1/rho`.
    pub fn eigen(&self, s: &State) -> Result<EigenPair> {
        if s.rho <= 0.0 {
            return Err(Error::DegenerateEigenvector);
        }
        let (lambda1, lambda2) = self.eigenvalues(s);
        let a22 = s.u + self.epsilon * self.g_prime(s.rho);
        Ok(EigenPair {
            lambda1,
            lambda2,
            r1: [(lambda1 - a22) / s.rho, 1.0],
            r2: [(lambda2 - a22) / s.rho, 1.0],
        })
    }

    /// Signs of the directional derivatives of each characteristic speed
    /// along its own eigenvector, by centered finite differences.
    ///
    /// Genuine nonlinearity of the scaled system means field 1 is strictly
    /// negative and field 2 strictly positive at every state with rho > 0.
    pub fn check_genuine_nonlinearity(&self, grid: &[State]) -> GenuineNonlinearityReport {
        let mut entries = Vec::with_capacity(grid.len());
        for s in grid {
            let pair = self
                .eigen(s)
                .expect("genuine-nonlinearity grid states must have rho > 0");
            let d1 = self.directional_derivative(s, &pair.r1, 1);
            let d2 = self.directional_derivative(s, &pair.r2, 2);
            entries.push(GnlSample {
                state: *s,
                dlambda1_dot_r1: d1,
                dlambda2_dot_r2: d2,
                genuinely_nonlinear: d1 < 0.0 && d2 > 0.0,
            });
        }
        let all = entries.iter().all(|e| e.genuinely_nonlinear);
        GenuineNonlinearityReport {
            entries,
            all_genuinely_nonlinear: all,
        }
    }

    fn directional_derivative(&self, s: &State, r: &[f64; 2], family: u8) -> f64 {
        let norm = (r[0] * r[0] + r[1] * r[1]).sqrt();
        let dir = [r[0] / norm, r[1] / norm];
        let scale = s.u.abs().max(s.rho).max(1.0);
        // keep rho positive on both sides of the stencil
        let mut h = 1e-6 * scale;
        if dir[1].abs() > 0.0 {
            h = h.min(0.5 * s.rho / dir[1].abs());
        }
        let lam = |st: State| {
            let (l1, l2) = self.eigenvalues(&st);
            if family == 1 {
                l1
            } else {
                l2
            }
        };
        let plus = State {
            u: s.u + h * dir[0],
            rho: s.rho + h * dir[1],
        };
        let minus = State {
            u: s.u - h * dir[0],
            rho: s.rho - h * dir[1],
        };
        (lam(plus) - lam(minus)) / (2.0 * h)
    }

    /// Sampling check of the structural hypotheses on `f`: positivity and
    /// strict monotonicity of `f'` on a log-uniform grid in `(0, rho_max]`,
    /// plus positivity of `f''` where the law provides it.
    ///
    /// Violations are reported, not thrown.
    pub fn validate_hypotheses(&self, rho_max: f64, n: usize) -> HypothesisReport {
        assert!(rho_max > 0.0 && n >= 3, "need rho_max > 0 and n >= 3");
        let lo = rho_max * 1e-8;
        let ratio = (rho_max / lo).powf(1.0 / (n as f64 - 1.0));
        let mut samples = Vec::with_capacity(n);
        let mut x = lo;
        for _ in 0..n {
            samples.push(x.min(rho_max));
            x *= ratio;
        }
        let mut prev: Option<(f64, f64)> = None;
        for &rho in &samples {
            let fp = self.f_prime(rho);
            if fp.is_nan() || fp <= 0.0 {
                return HypothesisReport::fail(rho, fp, HypothesisViolation::NonPositiveSlope);
            }
            if let Some((_, fp_prev)) = prev {
                if fp <= fp_prev {
                    return HypothesisReport::fail(
                        rho,
                        fp,
                        HypothesisViolation::SlopeNotIncreasing,
                    );
                }
            }
            if let Some(fs) = self.f_second(rho) {
                if fs.is_nan() || fs <= 0.0 {
                    return HypothesisReport::fail(rho, fs, HypothesisViolation::NonConvex);
                }
            }
            prev = Some((rho, fp));
        }
        HypothesisReport {
            pass: true,
            samples: n,
            first_violation: None,
        }
    }
}

/// Characteristic pair at a state: speeds and right eigenvector directions
/// (direction only; no particular normalization is guaranteed).
#[derive(Debug, Clone, Copy)]
pub struct EigenPair {
    pub lambda1: f64,
    pub lambda2: f64,
    pub r1: [f64; 2],
    pub r2: [f64; 2],
}

/// Per-state genuine-nonlinearity sample.
#[derive(Debug, Clone, Copy)]
pub struct GnlSample {
    pub state: State,
    pub dlambda1_dot_r1: f64,
    pub dlambda2_dot_r2: f64,
    pub genuinely_nonlinear: bool,
}

/// Report of [`FluxModel::check_genuine_nonlinearity`].
#[derive(Debug, Clone)]
pub struct GenuineNonlinearityReport {
    pub entries: Vec<GnlSample>,
    pub all_genuinely_nonlinear: bool,
}

/// What a hypothesis check found wrong.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypothesisViolation {
    NonPositiveSlope,
    SlopeNotIncreasing,
    NonConvex,
}

/// Result of [`FluxModel::validate_hypotheses`]; a failure carries the first
/// violating sample.
#[derive(Debug, Clone)]
pub struct HypothesisReport {
    pub pass: bool,
    pub samples: usize,
    pub first_violation: Option<(f64, f64, HypothesisViolation)>,
}

impl HypothesisReport {
    fn fail(rho: f64, value: f64, kind: HypothesisViolation) -> Self {
        HypothesisReport {
            pass: false,
            samples: 0,
            first_violation: Some((rho, value, kind)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Generic 2x2 eigenvalue oracle via trace and determinant.
    fn eig2(a: [[f64; 2]; 2]) -> (f64, f64) {
        let tr = a[0][0] + a[1][1];
        let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
        (0.5 * (tr - disc), 0.5 * (tr + disc))
    }

    #[test]
    fn state_rejects_negative_density() {
        assert!(State::new(0.0, -1.0).is_err());
        assert!(State::new(0.0, 0.0).is_ok());
        assert!(State::new(0.0, f64::NAN).is_err());
    }

    #[test]
    fn model_rejects_nonpositive_epsilon() {
        assert!(FluxModel::brio(0.0).is_err());
        assert!(FluxModel::brio(-0.1).is_err());
        assert!(FluxModel::brio(1e-12).is_ok());
    }

    #[test]
    fn jacobian_brio_direct_substitution() {
        let m = FluxModel::brio(1.0).unwrap();
        let a = m.jacobian(&State { u: 0.0, rho: 1.0 });
        assert_eq!(a, [[0.0, 1.0], [1.0, -1.0]]);
    }

    #[test]
    fn jacobian_vacuum_zeroes_off_diagonal() {
        let m = FluxModel::brio(0.5).unwrap();
        let a = m.jacobian(&State { u: 2.0, rho: 0.0 });
        assert_eq!(a, [[2.0, 0.0], [0.0, 1.5]]);
    }

    #[test]
    fn jacobian_matches_flux_finite_differences() {
        // (1, 0.2; 2, 0.9) at eps = 0.1, checked against centered differences
        // of the flux map.
        let m = FluxModel::brio(0.1).unwrap();
        let s = State { u: 1.0, rho: 2.0 };
        let a = m.jacobian(&s);
        assert_abs_diff_eq!(a[0][0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(a[0][1], 0.2, epsilon = 1e-14);
        assert_abs_diff_eq!(a[1][0], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(a[1][1], 0.9, epsilon = 1e-14);

        let h = 1e-6;
        for (col, delta) in [(0usize, [h, 0.0]), (1usize, [0.0, h])] {
            let plus = m.flux(&State {
                u: s.u + delta[0],
                rho: s.rho + delta[1],
            });
            let minus = m.flux(&State {
                u: s.u - delta[0],
                rho: s.rho - delta[1],
            });
            for row in 0..2 {
                let fd = (plus[row] - minus[row]) / (2.0 * h);
                assert_abs_diff_eq!(a[row][col], fd, epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn eigen_matches_generic_solver_and_closed_form() {
        let m = FluxModel::brio(1.0).unwrap();
        let s = State { u: 0.0, rho: 1.0 };
        let pair = m.eigen(&s).unwrap();
        // lambda = -1/2 -/+ sqrt(5)/2
        assert_abs_diff_eq!(pair.lambda1, -(1.0 + 5f64.sqrt()) / 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(pair.lambda2, (5f64.sqrt() - 1.0) / 2.0, epsilon = 1e-14);
        let (o1, o2) = eig2(m.jacobian(&s));
        assert_abs_diff_eq!(pair.lambda1, o1, epsilon = 1e-12);
        assert_abs_diff_eq!(pair.lambda2, o2, epsilon = 1e-12);
    }

    #[test]
    fn eigenvalues_at_vacuum() {
        let m = FluxModel::brio(0.7).unwrap();
        let (l1, l2) = m.eigenvalues(&State { u: 2.0, rho: 0.0 });
        assert_abs_diff_eq!(l1, 2.0 - 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(l2, 2.0, epsilon = 1e-15);
        assert!(m.eigen(&State { u: 2.0, rho: 0.0 }).is_err());
    }

    #[test]
    fn eigenvalues_collapse_to_u_as_epsilon_vanishes() {
        let s = State { u: 3.0, rho: 5.0 };
        for eps in [1e-2, 1e-6, 1e-10, 1e-14] {
            let m = FluxModel::brio(eps).unwrap();
            let (l1, l2) = m.eigenvalues(&s);
            let bound = 0.5 * eps + 0.5 * (4.0 * eps * s.rho * s.rho + eps * eps).sqrt();
            assert!((l1 - s.u).abs() <= bound + 1e-15);
            assert!((l2 - s.u).abs() <= bound + 1e-15);
        }
    }

    #[test]
    fn strict_hyperbolicity_gap() {
        let m = FluxModel::brio(0.3).unwrap();
        let s = State { u: -1.0, rho: 2.5 };
        let (l1, l2) = m.eigenvalues(&s);
        let expected = (4.0 * 0.3 * s.rho * s.rho + 0.09).sqrt();
        assert_abs_diff_eq!(l2 - l1, expected, epsilon = 1e-14);
        let (v1, v2) = m.eigenvalues(&State { u: -1.0, rho: 0.0 });
        assert_abs_diff_eq!(v2 - v1, 0.3, epsilon = 1e-15);
    }

    #[test]
    fn eigen_residual_on_random_states() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let eps = 10f64.powf(rng.gen_range(-6.0..0.0));
            let m = FluxModel::brio(eps).unwrap();
            let s = State {
                u: rng.gen_range(-5.0..5.0),
                rho: rng.gen_range(0.1..10.0),
            };
            let a = m.jacobian(&s);
            let pair = m.eigen(&s).unwrap();
            let norm_a = a.iter().flatten().map(|x| x.abs()).fold(0.0, f64::max);
            for (lambda, r) in [(pair.lambda1, pair.r1), (pair.lambda2, pair.r2)] {
                let res0 = a[0][0] * r[0] + a[0][1] * r[1] - lambda * r[0];
                let res1 = a[1][0] * r[0] + a[1][1] * r[1] - lambda * r[1];
                let norm_r = (r[0] * r[0] + r[1] * r[1]).sqrt();
                let res = (res0 * res0 + res1 * res1).sqrt() / norm_r;
                assert!(
                    res <= 1e-12 * norm_a.max(1.0),
                    "eigen residual {res} too large at eps={eps}, {s}"
                );
            }
        }
    }

    #[test]
    fn genuine_nonlinearity_brio_reference_state() {
        let m = FluxModel::brio(1.0).unwrap();
        let report = m.check_genuine_nonlinearity(&[State { u: 0.0, rho: 1.0 }]);
        let e = &report.entries[0];
        assert!(e.dlambda1_dot_r1 < 0.0);
        assert!(e.dlambda2_dot_r2 > 0.0);
        assert!(report.all_genuinely_nonlinear);
    }

    #[test]
    fn genuine_nonlinearity_random_grid_small_epsilon() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let grid: Vec<State> = (0..100)
            .map(|_| State {
                u: rng.gen_range(-5.0..5.0),
                rho: rng.gen_range(0.1..10.0),
            })
            .collect();
        let m = FluxModel::brio(1e-6).unwrap();
        let report = m.check_genuine_nonlinearity(&grid);
        assert!(report.all_genuinely_nonlinear);
    }

    #[test]
    fn genuine_nonlinearity_quadratic_g() {
        let m = FluxModel::quadratic_g(0.1).unwrap();
        let report = m.check_genuine_nonlinearity(&[State { u: 1.0, rho: 1.0 }]);
        let e = &report.entries[0];
        // both fields have grad lambda . r = -/+ 2 sqrt(eps^2 + eps) along
        // r = (eps -/+ sqrt(eps^2 + eps), 1); the report normalizes r.
        let root = (0.1f64 * 0.1 + 0.1).sqrt();
        let norm1 = ((0.1 - root).powi(2) + 1.0).sqrt();
        let norm2 = ((0.1 + root).powi(2) + 1.0).sqrt();
        assert_abs_diff_eq!(e.dlambda1_dot_r1, -2.0 * root / norm1, epsilon = 1e-5);
        assert_abs_diff_eq!(e.dlambda2_dot_r2, 2.0 * root / norm2, epsilon = 1e-5);
        assert!(report.all_genuinely_nonlinear);
    }

    #[test]
    fn hypotheses_brio_pass() {
        let m = FluxModel::brio(1.0).unwrap();
        assert!(m.validate_hypotheses(100.0, 64).pass);
    }

    #[test]
    fn hypotheses_linear_f_fails() {
        let m = FluxModel::custom(1.0, |r| r, |_| 1.0).unwrap();
        let report = m.validate_hypotheses(10.0, 16);
        assert!(!report.pass);
        let (_, _, kind) = report.first_violation.unwrap();
        assert_eq!(kind, HypothesisViolation::SlopeNotIncreasing);
    }

    #[test]
    fn hypotheses_quartic_passes() {
        let m = FluxModel::custom(1.0, |r| r.powi(4), |r| 4.0 * r.powi(3)).unwrap();
        assert!(m.validate_hypotheses(10.0, 32).pass);
    }

    #[test]
    fn table_law_reproduces_quadratic() {
        let rho: Vec<f64> = (0..=20).map(|i| i as f64 * 0.25).collect();
        let f: Vec<f64> = rho.iter().map(|r| 0.5 * r * r).collect();
        let fp: Vec<f64> = rho.clone();
        let table = FluxTable::new(rho, f, fp).unwrap();
        let m = FluxModel::from_table(0.5, table).unwrap();
        // cubic Hermite is exact on quadratics
        assert_abs_diff_eq!(m.f(1.37), 0.5 * 1.37 * 1.37, epsilon = 1e-13);
        assert_abs_diff_eq!(m.f_prime(3.91), 3.91, epsilon = 1e-12);
        assert!(m.validate_hypotheses(5.0, 32).pass);
    }
}
