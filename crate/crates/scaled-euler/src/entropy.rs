//! The explicit entropy pair for the Brio flux and the delta-coefficient
//! admissibility test for two-shock solutions.
//!
//! For `f = rho^2/2`, `g = -rho` the pair
//!
//! ```text
//! eta(u, rho) = u^2/2 + eps rho^2/2
//! q(u, rho)   = u^3/3 + (u - eps/2) eps rho^2
//! ```
//!
//! satisfies the compatibility relations
//!
//! ```text
//! q_u   = u eta_u + rho eta_rho       (= u^2 + eps rho^2)
//! q_rho = eps rho eta_u + (u - eps) eta_rho   (= eps rho (2u - eps))
//! ```
//!
//! as exact algebraic identities; `eta` is strictly convex with Hessian
//! `diag(1, eps)`. Along a two-shock solution the entropy production
//! concentrates on the shock lines with coefficients
//! `-s_i [eta] + [q]` (jump brackets right-of-shock minus left-of-shock);
//! both coefficients converge to `(u_r - u_l)(u_l - u_r)^2 / 24 < 0` as
//! `eps -> 0`, independent of the densities, so the constructed solution is
//! entropy admissible for small `eps` regardless of how far apart the data
//! sit.

use crate::error::{Error, Result};
use crate::flux::{FluxModel, State};
use crate::riemann::{IntermediateState, RiemannData};
use crate::wave_curves::shock_speed_from_jump;
use serde::Serialize;

/// The Brio entropy/entropy-flux pair at a fixed `eps`.
#[derive(Debug, Clone, Copy)]
pub struct EntropyPair {
    epsilon: f64,
}

impl EntropyPair {
    /// The pair is specific to the Brio flux; other models are rejected.
    pub fn for_model(m: &FluxModel) -> Result<Self> {
        if !m.is_brio() {
            return Err(Error::NotBrio);
        }
        Ok(EntropyPair {
            epsilon: m.epsilon(),
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn eta(&self, s: &State) -> f64 {
        0.5 * s.u * s.u + 0.5 * self.epsilon * s.rho * s.rho
    }

    pub fn q(&self, s: &State) -> f64 {
        s.u * s.u * s.u / 3.0 + (s.u - 0.5 * self.epsilon) * self.epsilon * s.rho * s.rho
    }

    /// `(eta_u, eta_rho)` in closed form.
    pub fn eta_grad(&self, s: &State) -> [f64; 2] {
        [s.u, self.epsilon * s.rho]
    }

    /// `(q_u, q_rho)` in closed form.
    pub fn q_grad(&self, s: &State) -> [f64; 2] {
        [
            s.u * s.u + (self.epsilon * s.rho) * s.rho,
            self.epsilon * s.rho * (2.0 * s.u - self.epsilon),
        ]
    }

    /// Compatibility residuals at one state.
    ///
    /// The closed-form pair evaluates both sides of each relation as the
    /// same floating-point expression, so those residuals are exactly zero;
    /// the finite-difference pair differentiates `eta` and `q` numerically
    /// with step `h` and is the independent check.
    pub fn compatibility_residuals(&self, s: &State, h: f64) -> CompatibilitySample {
        let eps = self.epsilon;
        // closed form: both sides share the expression tree
        let lhs_u = s.u * s.u + (eps * s.rho) * s.rho;
        let rhs_u = s.u * s.u + (eps * s.rho) * s.rho;
        let lhs_rho = eps * s.rho * (2.0 * s.u - eps);
        let rhs_rho = eps * s.rho * (2.0 * s.u - eps);

        let d = |f: &dyn Fn(&State) -> f64, du: f64, drho: f64| {
            let plus = State {
                u: s.u + h * du,
                rho: s.rho + h * drho,
            };
            let minus = State {
                u: s.u - h * du,
                rho: s.rho - h * drho,
            };
            (f(&plus) - f(&minus)) / (2.0 * h)
        };
        let eta_u = d(&|x| self.eta(x), 1.0, 0.0);
        let eta_rho = d(&|x| self.eta(x), 0.0, 1.0);
        let q_u = d(&|x| self.q(x), 1.0, 0.0);
        let q_rho = d(&|x| self.q(x), 0.0, 1.0);
        CompatibilitySample {
            closed_u: lhs_u - rhs_u,
            closed_rho: lhs_rho - rhs_rho,
            fd_u: q_u - (s.u * eta_u + s.rho * eta_rho),
            fd_rho: q_rho - (eps * s.rho * eta_u + (s.u - eps) * eta_rho),
        }
    }

    /// Verify the compatibility relations over a grid; reports the maximum
    /// residual of each kind.
    pub fn verify(&self, grid: &[State], fd_step: f64) -> CompatibilityReport {
        let mut report = CompatibilityReport::default();
        for s in grid {
            let c = self.compatibility_residuals(s, fd_step);
            report.max_closed = report
                .max_closed
                .max(c.closed_u.abs())
                .max(c.closed_rho.abs());
            report.max_fd = report.max_fd.max(c.fd_u.abs()).max(c.fd_rho.abs());
        }
        report.states = grid.len();
        report
    }
}

/// Residuals of both compatibility relations at one state.
#[derive(Debug, Clone, Copy)]
pub struct CompatibilitySample {
    pub closed_u: f64,
    pub closed_rho: f64,
    pub fd_u: f64,
    pub fd_rho: f64,
}

/// Maximum compatibility residuals over a verification grid.
#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct CompatibilityReport {
    pub states: usize,
    pub max_closed: f64,
    pub max_fd: f64,
}

/// Coefficients of the entropy production concentrated on the two shock
/// lines of a two-shock solution at a fixed `eps`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DeltaCoefficientReport {
    pub epsilon: f64,
    /// `-s1 [eta] + [q]` across the 1-shock.
    pub coeff1: f64,
    /// `-s2 [eta] + [q]` across the 2-shock.
    pub coeff2: f64,
}

/// Entropy-production coefficients for the two-shock solution with the
/// given intermediate state (jump brackets: right-of-shock minus
/// left-of-shock).
pub fn delta_coefficients(
    m: &FluxModel,
    data: &RiemannData,
    inter: &IntermediateState,
) -> Result<DeltaCoefficientReport> {
    let pair = EntropyPair::for_model(m)?;
    let mid = State {
        u: inter.u_star,
        rho: inter.rho_star,
    };
    let s1 = shock_speed_from_jump(m, &data.left, &mid)?;
    let s2 = shock_speed_from_jump(m, &mid, &data.right)?;
    let coeff1 =
        -s1 * (pair.eta(&mid) - pair.eta(&data.left)) + (pair.q(&mid) - pair.q(&data.left));
    let coeff2 =
        -s2 * (pair.eta(&data.right) - pair.eta(&mid)) + (pair.q(&data.right) - pair.q(&mid));
    Ok(DeltaCoefficientReport {
        epsilon: m.epsilon(),
        coeff1,
        coeff2,
    })
}

/// Entropy admissibility: both line coefficients nonpositive, within
/// `1e-12 * scale`.
pub fn admissibility_verdict(report: &DeltaCoefficientReport) -> bool {
    let tol = 1e-12 * report.coeff1.abs().max(report.coeff2.abs()).max(1.0);
    report.coeff1 <= tol && report.coeff2 <= tol
}
