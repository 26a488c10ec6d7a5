//! Numerical verification of the measure-valued weak formulation.
//!
//! A candidate limit `(u, rho)` — bounded Borel `u`, Radon measure
//! `rho = rho_ac dx dt + d(t) delta_{x = c t}` — is a weak solution when,
//! for every smooth compactly supported test function `phi`,
//!
//! ```text
//! R_u   = ∬ (u phi_t + (u^2/2) phi_x) dx dt + ∫ u0 phi(x, 0) dx      = 0
//! R_rho = ∬ (phi_t + u phi_x) rho_ac dx dt
//!         + ∫ d(t) (phi_t + u_line phi_x)(c t, t) dt
//!         + ∫ rho0 phi(x, 0) dx                                      = 0
//! ```
//!
//! with `u_line = (u_l + u_r)/2` on the shock line, which is where the
//! measure charges. Residuals are evaluated by tensor-product adaptive
//! quadrature over the bump support, split along the known discontinuity
//! rays `x = xi t` so every sub-cell integrand is smooth.
//!
//! The velocity identity is also evaluated with `u phi_x` in place of
//! `(u^2/2) phi_x` (see [`residual_u_literal`]); that variant is reported
//! alongside the conservative form — it vanishes only for constant `u` —
//! rather than silently replacing it.

use crate::limit::{CaseLimit, ContactLimit, DeltaShockLimit, VacuumLimit};
use crate::quad;
use crate::riemann::RiemannData;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Quadrature budget per residual; an order of magnitude below the
/// acceptance scale `1e-8 * ||phi||_C1 * |data|`.
const QUAD_TOL: f64 = 1e-10;

/// The standard mollifier bump `a * exp(-1/(1 - r^2))` on the ellipse
/// `r^2 = ((x-x0)/rx)^2 + ((t-t0)/rt)^2 < 1`, with exact partials.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TestFunction {
    pub x0: f64,
    pub t0: f64,
    pub rx: f64,
    pub rt: f64,
    pub amplitude: f64,
}

impl TestFunction {
    pub fn new(x0: f64, t0: f64, rx: f64, rt: f64) -> Self {
        assert!(rx > 0.0 && rt > 0.0);
        TestFunction {
            x0,
            t0,
            rx,
            rt,
            amplitude: 1.0,
        }
    }

    pub fn scaled(mut self, amplitude: f64) -> Self {
        self.amplitude = amplitude;
        self
    }

    fn r2(&self, x: f64, t: f64) -> f64 {
        let a = (x - self.x0) / self.rx;
        let b = (t - self.t0) / self.rt;
        a * a + b * b
    }

    pub fn value(&self, x: f64, t: f64) -> f64 {
        let r2 = self.r2(x, t);
        if r2 >= 1.0 {
            0.0
        } else {
            self.amplitude * (-1.0 / (1.0 - r2)).exp()
        }
    }

    pub fn dx(&self, x: f64, t: f64) -> f64 {
        let r2 = self.r2(x, t);
        if r2 >= 1.0 {
            0.0
        } else {
            let w = 1.0 - r2;
            self.value(x, t) * (-2.0 * (x - self.x0) / (self.rx * self.rx)) / (w * w)
        }
    }

    pub fn dt(&self, x: f64, t: f64) -> f64 {
        let r2 = self.r2(x, t);
        if r2 >= 1.0 {
            0.0
        } else {
            let w = 1.0 - r2;
            self.value(x, t) * (-2.0 * (t - self.t0) / (self.rt * self.rt)) / (w * w)
        }
    }

    /// `sup|phi| + sup|phi_x| + sup|phi_t|`; the 1D mollifier has
    /// `sup|g| = e^{-1}` and `sup|g'| ~ 0.4436`, scaled by the radii.
    pub fn c1_norm(&self) -> f64 {
        const SUP_G: f64 = 0.36787944117144233; // e^{-1}
        const SUP_DG: f64 = 0.44363342941554605;
        self.amplitude.abs() * (SUP_G + SUP_DG / self.rx + SUP_DG / self.rt)
    }
}

/// How the velocity behaves on one wedge of the similarity half-plane.
#[derive(Debug, Clone, Copy)]
pub enum URegion {
    Const(f64),
    /// `u(x, t) = x/t` (vacuum fan).
    Similarity,
}

/// One wedge `xi_lo < x/t < xi_hi` carrying a velocity and an absolutely
/// continuous density value.
#[derive(Debug, Clone, Copy)]
pub struct Piece {
    pub xi_lo: f64,
    pub xi_hi: f64,
    pub u: URegion,
    pub rho: f64,
}

/// Line mass `d(t) = weight_slope * t` on `x = speed * t`, transported with
/// the solution's stated line velocity.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LineMass {
    pub speed: f64,
    pub weight_slope: f64,
    pub u_on_line: f64,
}

/// A candidate measure-valued solution: wedges of constant (or `x/t`)
/// velocity and constant density around a center `x = x_offset`, plus an
/// optional singular line mass along `x = x_offset + speed * t`.
#[derive(Debug, Clone)]
pub struct MeasureSolution {
    pub pieces: Vec<Piece>,
    pub singular: Option<LineMass>,
    pub x_offset: f64,
}

impl MeasureSolution {
    /// The field layout of a closed-form limit object.
    pub fn from_limit(limit: &CaseLimit) -> Self {
        match limit {
            CaseLimit::DeltaShock(d) => Self::delta(d),
            CaseLimit::Contact(c) => Self::contact(c),
            CaseLimit::Vacuum(v) => Self::vacuum(v),
        }
    }

    pub fn delta(d: &DeltaShockLimit) -> Self {
        MeasureSolution {
            pieces: vec![
                Piece {
                    xi_lo: f64::NEG_INFINITY,
                    xi_hi: d.c_slope,
                    u: URegion::Const(d.u_left),
                    rho: d.rho_left,
                },
                Piece {
                    xi_lo: d.c_slope,
                    xi_hi: f64::INFINITY,
                    u: URegion::Const(d.u_right),
                    rho: d.rho_right,
                },
            ],
            singular: Some(LineMass {
                speed: d.c_slope,
                weight_slope: d.weight_slope,
                u_on_line: d.u_on_line,
            }),
            x_offset: 0.0,
        }
    }

    /// Delta-shock layout with explicit line parameters; the mutant factory
    /// for detection-power checks.
    pub fn delta_with(d: &DeltaShockLimit, speed: f64, weight_slope: f64, u_on_line: f64) -> Self {
        let mut sol = Self::delta(&DeltaShockLimit {
            c_slope: speed,
            weight_slope,
            u_on_line,
            ..*d
        });
        sol.singular = Some(LineMass {
            speed,
            weight_slope,
            u_on_line,
        });
        sol
    }

    pub fn contact(c: &ContactLimit) -> Self {
        MeasureSolution {
            pieces: vec![
                Piece {
                    xi_lo: f64::NEG_INFINITY,
                    xi_hi: c.speed,
                    u: URegion::Const(c.u),
                    rho: c.rho_left,
                },
                Piece {
                    xi_lo: c.speed,
                    xi_hi: f64::INFINITY,
                    u: URegion::Const(c.u),
                    rho: c.rho_right,
                },
            ],
            singular: None,
            x_offset: 0.0,
        }
    }

    pub fn vacuum(v: &VacuumLimit) -> Self {
        MeasureSolution {
            pieces: vec![
                Piece {
                    xi_lo: f64::NEG_INFINITY,
                    xi_hi: v.u_left,
                    u: URegion::Const(v.u_left),
                    rho: v.rho_left,
                },
                Piece {
                    xi_lo: v.u_left,
                    xi_hi: v.u_right,
                    u: URegion::Similarity,
                    rho: 0.0,
                },
                Piece {
                    xi_lo: v.u_right,
                    xi_hi: f64::INFINITY,
                    u: URegion::Const(v.u_right),
                    rho: v.rho_right,
                },
            ],
            singular: None,
            x_offset: 0.0,
        }
    }

    /// The same solution translated by `dx` (data jump at `x = dx`).
    pub fn shifted(mut self, dx: f64) -> Self {
        self.x_offset += dx;
        self
    }

    pub fn u_at(&self, x: f64, t: f64) -> f64 {
        let xi = (x - self.x_offset) / t;
        for p in &self.pieces {
            if xi <= p.xi_hi {
                return match p.u {
                    URegion::Const(u) => u,
                    URegion::Similarity => xi,
                };
            }
        }
        match self.pieces.last().unwrap().u {
            URegion::Const(u) => u,
            URegion::Similarity => xi,
        }
    }

    pub fn rho_at(&self, x: f64, t: f64) -> f64 {
        let xi = (x - self.x_offset) / t;
        for p in &self.pieces {
            if xi <= p.xi_hi {
                return p.rho;
            }
        }
        self.pieces.last().unwrap().rho
    }

    /// Similarity slopes of all field discontinuities (piece boundaries and
    /// the singular line), for quadrature domain splitting.
    fn ray_slopes(&self) -> Vec<f64> {
        let mut slopes: Vec<f64> = self
            .pieces
            .iter()
            .flat_map(|p| [p.xi_lo, p.xi_hi])
            .filter(|x| x.is_finite())
            .collect();
        if let Some(line) = &self.singular {
            slopes.push(line.speed);
        }
        slopes.sort_by(|a, b| a.partial_cmp(b).unwrap());
        slopes.dedup();
        slopes
    }
}

/// Tolerance scale for residual verdicts:
/// `||phi||_C1 * max(1, |u|, rho)^2` over the data.
pub fn residual_scale(phi: &TestFunction, data: &RiemannData) -> f64 {
    let mag = data
        .left
        .u
        .abs()
        .max(data.right.u.abs())
        .max(data.left.rho)
        .max(data.right.rho)
        .max(1.0);
    phi.c1_norm() * mag * mag
}

/// Space-time integral of `integrand` over the bump support, with the inner
/// (space) integral split at the discontinuity rays and the outer (time)
/// integral split where the rays cross the support box.
fn space_time_integral<F: Fn(f64, f64) -> f64>(
    sol: &MeasureSolution,
    phi: &TestFunction,
    integrand: F,
) -> f64 {
    let t_lo = (phi.t0 - phi.rt).max(1e-300);
    let t_hi = phi.t0 + phi.rt;
    if t_hi <= t_lo {
        return 0.0;
    }
    let (x_lo, x_hi) = (phi.x0 - phi.rx, phi.x0 + phi.rx);
    let slopes = sol.ray_slopes();
    // outer breakpoints: times at which a ray enters or leaves the box
    let mut t_breaks = Vec::new();
    for &s in &slopes {
        if s != 0.0 {
            for edge in [x_lo, x_hi] {
                let t = (edge - sol.x_offset) / s;
                if t > t_lo && t < t_hi {
                    t_breaks.push(t);
                }
            }
        }
    }
    let inner = |t: f64| {
        let x_breaks: Vec<f64> = slopes.iter().map(|s| sol.x_offset + s * t).collect();
        quad::integrate_with_breakpoints(
            |x| integrand(x, t),
            x_lo,
            x_hi,
            &x_breaks,
            QUAD_TOL / 50.0,
        )
        .value
    };
    quad::integrate_with_breakpoints(inner, t_lo, t_hi, &t_breaks, QUAD_TOL).value
}

/// Initial-data term `∫ w0(x) phi(x, 0) dx`, nonzero only when the bump
/// support meets `t = 0`.
fn initial_term<W: Fn(f64) -> f64>(phi: &TestFunction, split_at: f64, w0: W) -> f64 {
    if phi.t0 - phi.rt >= 0.0 {
        return 0.0;
    }
    let (x_lo, x_hi) = (phi.x0 - phi.rx, phi.x0 + phi.rx);
    quad::integrate_with_breakpoints(
        |x| w0(x) * phi.value(x, 0.0),
        x_lo,
        x_hi,
        &[split_at],
        QUAD_TOL,
    )
    .value
}

/// Velocity residual in conservative form:
/// `∬ (u phi_t + (u^2/2) phi_x) + ∫ u0 phi(x, 0)`.
pub fn residual_u(sol: &MeasureSolution, data: &RiemannData, phi: &TestFunction) -> f64 {
    let bulk = space_time_integral(sol, phi, |x, t| {
        let u = sol.u_at(x, t);
        u * phi.dt(x, t) + 0.5 * u * u * phi.dx(x, t)
    });
    bulk + initial_term(phi, sol.x_offset, |x| {
        if x < sol.x_offset {
            data.left.u
        } else {
            data.right.u
        }
    })
}

/// Velocity residual with the non-conservative `u phi_x` term. Reported for
/// comparison; it is nonzero for any solution with a genuine velocity jump.
pub fn residual_u_literal(sol: &MeasureSolution, data: &RiemannData, phi: &TestFunction) -> f64 {
    let bulk = space_time_integral(sol, phi, |x, t| {
        let u = sol.u_at(x, t);
        u * phi.dt(x, t) + u * phi.dx(x, t)
    });
    bulk + initial_term(phi, sol.x_offset, |x| {
        if x < sol.x_offset {
            data.left.u
        } else {
            data.right.u
        }
    })
}

/// Density residual:
/// `∬ (phi_t + u phi_x) rho_ac + ∫ d(t)(phi_t + u_line phi_x)|_line + ∫ rho0 phi(x, 0)`.
pub fn residual_rho(sol: &MeasureSolution, data: &RiemannData, phi: &TestFunction) -> f64 {
    let bulk = space_time_integral(sol, phi, |x, t| {
        (phi.dt(x, t) + sol.u_at(x, t) * phi.dx(x, t)) * sol.rho_at(x, t)
    });
    let singular = match &sol.singular {
        None => 0.0,
        Some(line) => {
            let t_lo = (phi.t0 - phi.rt).max(1e-300);
            let t_hi = phi.t0 + phi.rt;
            quad::integrate(
                |t| {
                    let x = sol.x_offset + line.speed * t;
                    line.weight_slope * t * (phi.dt(x, t) + line.u_on_line * phi.dx(x, t))
                },
                t_lo,
                t_hi,
                QUAD_TOL,
            )
            .value
        }
    };
    bulk + singular
        + initial_term(phi, sol.x_offset, |x| {
            if x < sol.x_offset {
                data.left.rho
            } else {
                data.right.rho
            }
        })
}

/// Residuals of one bump against one candidate solution.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BumpResult {
    pub phi: TestFunction,
    pub residual_u: f64,
    pub residual_u_literal: f64,
    pub residual_rho: f64,
    pub scale: f64,
}

/// A battery of bumps: `n - 4` seeded random bumps over the wave region
/// plus four deterministic ones — two straddling the singular/central line
/// off-center (a bump centered exactly on the line has `phi_x = 0` there
/// and is blind to line-velocity errors), two straddling `t = 0`
/// (exercising the initial-data terms).
pub fn standard_battery(seed: u64, n: usize, center_slope: f64) -> Vec<TestFunction> {
    assert!(n >= 4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bumps = vec![
        TestFunction::new(center_slope * 0.6 + 0.17, 0.6, 0.45, 0.25),
        TestFunction::new(center_slope * 1.2 - 0.3, 1.2, 0.8, 0.5),
        TestFunction::new(-1.1, 0.05, 0.35, 0.2),
        TestFunction::new(1.3, 0.1, 0.5, 0.25),
    ];
    for _ in 0..n - 4 {
        bumps.push(TestFunction::new(
            rng.gen_range(-1.6..1.6),
            rng.gen_range(0.25..1.6),
            rng.gen_range(0.25..0.9),
            rng.gen_range(0.15..0.6),
        ));
    }
    bumps
}

/// Evaluate a whole battery against a candidate solution.
pub fn run_battery(
    sol: &MeasureSolution,
    data: &RiemannData,
    bumps: &[TestFunction],
) -> Vec<BumpResult> {
    bumps
        .iter()
        .map(|phi| BumpResult {
            phi: *phi,
            residual_u: residual_u(sol, data, phi),
            residual_u_literal: residual_u_literal(sol, data, phi),
            residual_rho: residual_rho(sol, data, phi),
            scale: residual_scale(phi, data),
        })
        .collect()
}
