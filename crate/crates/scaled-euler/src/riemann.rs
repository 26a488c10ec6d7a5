//! Exact self-similar Riemann solutions at fixed `eps`.
//!
//! Three data classes occur:
//!
//! - `u_l > u_r`: two Lax shocks. The intermediate state is the unique
//!   intersection of the strictly decreasing 1-locus through the left state
//!   with the strictly increasing (reversed) 2-locus through the right
//!   state; it exists for every `eps` below a data-dependent threshold,
//!   which is not computed a priori — a failed bracket is returned as a
//!   typed error instead.
//! - `u_l = u_r`: a rarefaction and a shock (order set by the density
//!   ordering), or a constant when the densities also agree.
//! - `u_l < u_r`: two rarefactions around a vacuum, for `eps` small enough
//!   that the fan edges do not overlap. Inside the vacuum `u(x, t) = x/t`
//!   and `rho = 0`.
//!
//! A solution is an ordered list of [`Segment`]s in the similarity variable
//! `xi = x/t`; sampling locates `xi` and, inside rarefaction fans, inverts
//! the strictly monotone fan speed `lambda(rho)` by bisection along the wave
//! curve. On segment boundaries sampling returns the limit from the left.

use crate::error::{Error, Result};
use crate::flux::{FluxModel, State};
use crate::roots::bisect;
use crate::wave_curves::{
    self, lambda_on_rarefaction, lax_admissible, rarefaction_u_of_rho, rh_residual,
    shock1_rho_given_u, shock2_rho_given_u, shock_speed_from_jump, vacuum_edge_u, Family,
};

/// Riemann initial data: `left` for `x < 0`, `right` for `x > 0`.
#[derive(Debug, Clone, Copy)]
pub struct RiemannData {
    pub left: State,
    pub right: State,
}

impl RiemannData {
    /// Both densities must be positive; vacuum appears only inside
    /// solutions, not in admissible data.
    pub fn new(left: State, right: State) -> Result<Self> {
        if left.rho <= 0.0 {
            return Err(Error::NegativeDensity { rho: left.rho });
        }
        if right.rho <= 0.0 {
            return Err(Error::NegativeDensity { rho: right.rho });
        }
        Ok(RiemannData { left, right })
    }
}

/// Structure of the solution, decided by the velocity jump (and by the
/// density ordering when the velocities agree).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    TwoShock,
    RarefactionShock,
    ShockRarefaction,
    TwoRarefactionVacuum,
    Constant,
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            CaseTag::TwoShock => "two-shock",
            CaseTag::RarefactionShock => "rarefaction-shock",
            CaseTag::ShockRarefaction => "shock-rarefaction",
            CaseTag::TwoRarefactionVacuum => "two-rarefaction-vacuum",
            CaseTag::Constant => "constant",
        };
        f.write_str(name)
    }
}

/// Case selection by the sign of `u_l - u_r`, then by density ordering.
pub fn classify(data: &RiemannData) -> CaseTag {
    if data.left.u > data.right.u {
        CaseTag::TwoShock
    } else if data.left.u < data.right.u {
        CaseTag::TwoRarefactionVacuum
    } else if data.left.rho == data.right.rho {
        CaseTag::Constant
    } else if data.right.rho < data.left.rho {
        CaseTag::RarefactionShock
    } else {
        CaseTag::ShockRarefaction
    }
}

/// The constant state between the two waves, with the `eps` it was built at.
#[derive(Debug, Clone, Copy)]
pub struct IntermediateState {
    pub u_star: f64,
    pub rho_star: f64,
    pub epsilon: f64,
}

/// One piece of a self-similar solution. Constant, rarefaction and vacuum
/// segments own half-open `xi` intervals `(xi_lo, xi_hi]`; shocks are
/// zero-width markers sitting between them at their speed.
#[derive(Debug, Clone)]
pub enum Segment {
    Constant {
        state: State,
        xi_lo: f64,
        xi_hi: f64,
    },
    Shock {
        family: Family,
        speed: f64,
        left: State,
        right: State,
    },
    Rarefaction {
        family: Family,
        xi_lo: f64,
        xi_hi: f64,
        /// Data-exact state the wave curve is anchored at.
        anchor: State,
        /// Density bracket [lo, hi] swept by the fan.
        rho_lo: f64,
        rho_hi: f64,
    },
    Vacuum {
        xi_lo: f64,
        xi_hi: f64,
    },
}

/// An exact self-similar solution: ordered segments plus the model and data
/// they were built from. Immutable and shareable; sampling is reentrant.
#[derive(Debug, Clone)]
pub struct WaveFan {
    pub case: CaseTag,
    pub segments: Vec<Segment>,
    pub data: RiemannData,
    model: FluxModel,
}

/// Dispatch on [`classify`].
pub fn solve(m: &FluxModel, data: &RiemannData) -> Result<WaveFan> {
    match classify(data) {
        CaseTag::TwoShock => solve_two_shock(m, data).map(|(_, fan)| fan),
        CaseTag::TwoRarefactionVacuum => solve_two_rarefaction(m, data),
        _ => solve_equal_u(m, data),
    }
}

/// Two-shock solution for `u_l > u_r`.
///
/// The outer root-find bisects `h(u) = rho*1(u) - rho*2(u)` on `[u_r, u_l]`;
/// strict monotonicity of both branches makes the root simple and unique.
/// When `eps` is too large the endpoint signs are wrong and a
/// [`Error::NoIntersection`] reports them.
pub fn solve_two_shock(m: &FluxModel, data: &RiemannData) -> Result<(IntermediateState, WaveFan)> {
    if data.left.u <= data.right.u {
        return Err(Error::NotTwoShock);
    }
    let (ul, ur) = (data.left.u, data.right.u);
    let rho1 = |u: f64| shock1_rho_given_u(m, &data.left, u);
    let rho2 = |u: f64| shock2_rho_given_u(m, &data.right, u);

    let h_at_ul = data.left.rho - rho2(ul)?;
    let h_at_ur = rho1(ur)? - data.right.rho;
    if h_at_ul >= 0.0 || h_at_ur <= 0.0 {
        return Err(Error::NoIntersection {
            epsilon: m.epsilon(),
            sign_at_ur: h_at_ur.signum(),
            sign_at_ul: h_at_ul.signum(),
        });
    }
    let h = |u: f64| {
        rho1(u).expect("1-locus is bounded inside the bracket")
            - rho2(u).expect("2-locus is bounded inside the bracket")
    };
    let u_star = bisect(h, ur, ul, 200);
    let rho_star = 0.5 * (rho1(u_star)? + rho2(u_star)?);
    let mid = State {
        u: u_star,
        rho: rho_star,
    };
    let s1 = shock_speed_from_jump(m, &data.left, &mid)?;
    let s2 = shock_speed_from_jump(m, &mid, &data.right)?;
    let segments = vec![
        Segment::Constant {
            state: data.left,
            xi_lo: f64::NEG_INFINITY,
            xi_hi: s1,
        },
        Segment::Shock {
            family: Family::One,
            speed: s1,
            left: data.left,
            right: mid,
        },
        Segment::Constant {
            state: mid,
            xi_lo: s1,
            xi_hi: s2,
        },
        Segment::Shock {
            family: Family::Two,
            speed: s2,
            left: mid,
            right: data.right,
        },
        Segment::Constant {
            state: data.right,
            xi_lo: s2,
            xi_hi: f64::INFINITY,
        },
    ];
    let fan = WaveFan {
        case: CaseTag::TwoShock,
        segments,
        data: *data,
        model: m.clone(),
    };
    fan.validate()?;
    Ok((
        IntermediateState {
            u_star,
            rho_star,
            epsilon: m.epsilon(),
        },
        fan,
    ))
}

/// Solution for `u_l = u_r`: constant, rarefaction-then-shock
/// (`rho_r < rho_l`) or shock-then-rarefaction (`rho_l < rho_r`).
///
/// The intermediate density is the intersection of the decreasing
/// rarefaction branch with the increasing shock branch on the compact
/// interval between the data densities; the endpoint sign change is
/// guaranteed, so this solve cannot fail for valid inputs.
pub fn solve_equal_u(m: &FluxModel, data: &RiemannData) -> Result<WaveFan> {
    assert_eq!(
        data.left.u, data.right.u,
        "solve_equal_u needs matching velocities"
    );
    let (left, right) = (data.left, data.right);

    if left.rho == right.rho {
        return Ok(WaveFan {
            case: CaseTag::Constant,
            segments: vec![Segment::Constant {
                state: left,
                xi_lo: f64::NEG_INFINITY,
                xi_hi: f64::INFINITY,
            }],
            data: *data,
            model: m.clone(),
        });
    }

    if right.rho < left.rho {
        // travel down the 1-rarefaction from the left state, then jump to
        // the right state by a 2-shock
        let u1 = |rho: f64| rarefaction_u_of_rho(m, Family::One, &left, rho).unwrap();
        let u2 = |rho: f64| right.u + wave_curves::shock_u_of_rho(m, Family::Two, &right, rho);
        let h = |rho: f64| u1(rho) - u2(rho);
        debug_assert!(h(right.rho) > 0.0 && h(left.rho) < 0.0);
        let rho_star = bisect(h, right.rho, left.rho, 200);
        let mid = State {
            u: u2(rho_star),
            rho: rho_star,
        };
        let (l1_left, _) = m.eigenvalues(&left);
        let (l1_mid, _) = m.eigenvalues(&mid);
        let s2 = shock_speed_from_jump(m, &mid, &right)?;
        let segments = vec![
            Segment::Constant {
                state: left,
                xi_lo: f64::NEG_INFINITY,
                xi_hi: l1_left,
            },
            Segment::Rarefaction {
                family: Family::One,
                xi_lo: l1_left,
                xi_hi: l1_mid,
                anchor: left,
                rho_lo: rho_star,
                rho_hi: left.rho,
            },
            Segment::Constant {
                state: mid,
                xi_lo: l1_mid,
                xi_hi: s2,
            },
            Segment::Shock {
                family: Family::Two,
                speed: s2,
                left: mid,
                right,
            },
            Segment::Constant {
                state: right,
                xi_lo: s2,
                xi_hi: f64::INFINITY,
            },
        ];
        let fan = WaveFan {
            case: CaseTag::RarefactionShock,
            segments,
            data: *data,
            model: m.clone(),
        };
        fan.validate()?;
        Ok(fan)
    } else {
        // jump down from the left state by a 1-shock, then ride the
        // 2-rarefaction into the right state
        let u1 = |rho: f64| left.u + wave_curves::shock_u_of_rho(m, Family::One, &left, rho);
        let u2 = |rho: f64| rarefaction_u_of_rho(m, Family::Two, &right, rho).unwrap();
        let h = |rho: f64| u1(rho) - u2(rho);
        debug_assert!(h(left.rho) > 0.0 && h(right.rho) < 0.0);
        let rho_star = bisect(h, left.rho, right.rho, 200);
        let mid = State {
            u: u1(rho_star),
            rho: rho_star,
        };
        let s1 = shock_speed_from_jump(m, &left, &mid)?;
        let (_, l2_mid) = m.eigenvalues(&mid);
        let (_, l2_right) = m.eigenvalues(&right);
        let segments = vec![
            Segment::Constant {
                state: left,
                xi_lo: f64::NEG_INFINITY,
                xi_hi: s1,
            },
            Segment::Shock {
                family: Family::One,
                speed: s1,
                left,
                right: mid,
            },
            Segment::Constant {
                state: mid,
                xi_lo: s1,
                xi_hi: l2_mid,
            },
            Segment::Rarefaction {
                family: Family::Two,
                xi_lo: l2_mid,
                xi_hi: l2_right,
                anchor: right,
                rho_lo: rho_star,
                rho_hi: right.rho,
            },
            Segment::Constant {
                state: right,
                xi_lo: l2_right,
                xi_hi: f64::INFINITY,
            },
        ];
        let fan = WaveFan {
            case: CaseTag::ShockRarefaction,
            segments,
            data: *data,
            model: m.clone(),
        };
        fan.validate()?;
        Ok(fan)
    }
}

/// Two rarefactions around a vacuum for `u_l < u_r`.
///
/// The left fan rides the 1-curve from the left state down to the vacuum at
/// `u*_1 = u_1(0)`; the right fan rides the 2-curve from the right state down
/// to its (regularized) vacuum edge `u*_2`. In between `u(x,t) = x/t` and
/// `rho = 0` — the entropy choice for the decoupled velocity equation.
/// Overlapping edges (`u_1(0) >= u*_2`, i.e. `eps` too large) are an error.
pub fn solve_two_rarefaction(m: &FluxModel, data: &RiemannData) -> Result<WaveFan> {
    assert!(
        data.left.u < data.right.u,
        "two-rarefaction case needs u_l < u_r"
    );
    let (left, right) = (data.left, data.right);
    let u1_edge = vacuum_edge_u(m, Family::One, &left);
    let u2_edge = vacuum_edge_u(m, Family::Two, &right);
    if u1_edge >= u2_edge {
        return Err(Error::FanOverlap {
            epsilon: m.epsilon(),
            u1_edge,
            u2_edge,
        });
    }
    let (l1_left, _) = m.eigenvalues(&left);
    let (l1_vac, _) = m.eigenvalues(&State {
        u: u1_edge,
        rho: 0.0,
    });
    let (_, l2_vac) = m.eigenvalues(&State {
        u: u2_edge,
        rho: 0.0,
    });
    let (_, l2_right) = m.eigenvalues(&right);
    // positive floor for the family-2 fan inversion; the sampled density at
    // the vacuum edge collapses to this scale only as xi -> xi_lo
    let rho_floor = right.rho * 1e-100;
    let segments = vec![
        Segment::Constant {
            state: left,
            xi_lo: f64::NEG_INFINITY,
            xi_hi: l1_left,
        },
        Segment::Rarefaction {
            family: Family::One,
            xi_lo: l1_left,
            xi_hi: l1_vac,
            anchor: left,
            rho_lo: 0.0,
            rho_hi: left.rho,
        },
        Segment::Vacuum {
            xi_lo: l1_vac,
            xi_hi: l2_vac,
        },
        Segment::Rarefaction {
            family: Family::Two,
            xi_lo: l2_vac,
            xi_hi: l2_right,
            anchor: right,
            rho_lo: rho_floor,
            rho_hi: right.rho,
        },
        Segment::Constant {
            state: right,
            xi_lo: l2_right,
            xi_hi: f64::INFINITY,
        },
    ];
    let fan = WaveFan {
        case: CaseTag::TwoRarefactionVacuum,
        segments,
        data: *data,
        model: m.clone(),
    };
    fan.validate()?;
    Ok(fan)
}

impl WaveFan {
    pub fn epsilon(&self) -> f64 {
        self.model.epsilon()
    }

    pub fn model(&self) -> &FluxModel {
        &self.model
    }

    /// The constant state between the two waves, when the case has one.
    pub fn plateau(&self) -> Option<IntermediateState> {
        self.segments.iter().find_map(|seg| match seg {
            Segment::Constant {
                state,
                xi_lo,
                xi_hi,
            } if xi_lo.is_finite() && xi_hi.is_finite() => Some(IntermediateState {
                u_star: state.u,
                rho_star: state.rho,
                epsilon: self.model.epsilon(),
            }),
            _ => None,
        })
    }

    /// Speeds of the genuine waves, left to right (shock speeds and
    /// rarefaction edge speeds).
    pub fn wave_speeds(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for seg in &self.segments {
            match seg {
                Segment::Shock { speed, .. } => out.push(*speed),
                Segment::Rarefaction { xi_lo, xi_hi, .. } | Segment::Vacuum { xi_lo, xi_hi } => {
                    out.push(*xi_lo);
                    out.push(*xi_hi);
                }
                Segment::Constant { .. } => {}
            }
        }
        out
    }

    /// Sample the solution at physical coordinates `(x, t)`, `t > 0`.
    pub fn sample(&self, x: f64, t: f64) -> State {
        assert!(t > 0.0, "self-similar sampling needs t > 0");
        self.sample_xi(x / t)
    }

    /// Sample at the similarity coordinate `xi = x/t`. Segment boundaries
    /// resolve to the limit from the left.
    pub fn sample_xi(&self, xi: f64) -> State {
        for seg in &self.segments {
            match seg {
                Segment::Constant {
                    state,
                    xi_lo,
                    xi_hi,
                } => {
                    if (*xi_lo < xi || xi_lo.is_infinite()) && xi <= *xi_hi {
                        return *state;
                    }
                }
                Segment::Vacuum { xi_lo, xi_hi } => {
                    if *xi_lo < xi && xi <= *xi_hi {
                        return State { u: xi, rho: 0.0 };
                    }
                }
                Segment::Rarefaction {
                    family,
                    xi_lo,
                    xi_hi,
                    anchor,
                    rho_lo,
                    rho_hi,
                } => {
                    if *xi_lo < xi && xi <= *xi_hi {
                        return self.invert_fan(*family, anchor, *rho_lo, *rho_hi, xi);
                    }
                }
                Segment::Shock { .. } => {}
            }
        }
        // beyond the last finite edge
        if xi <= self.first_edge() {
            self.data.left
        } else {
            self.data.right
        }
    }

    fn first_edge(&self) -> f64 {
        self.segments
            .iter()
            .find_map(|s| match s {
                Segment::Constant { xi_hi, .. } => Some(*xi_hi),
                _ => None,
            })
            .unwrap_or(0.0)
    }

    /// Solve `lambda_family(rho) = xi` along the wave curve; the fan speed
    /// is strictly monotone in `rho`, so bisection applies. Round-off at the
    /// fan edges resolves to the nearer bracket endpoint.
    fn invert_fan(
        &self,
        family: Family,
        anchor: &State,
        rho_lo: f64,
        rho_hi: f64,
        xi: f64,
    ) -> State {
        let m = &self.model;
        let g = |rho: f64| lambda_on_rarefaction(m, family, anchor, rho).unwrap() - xi;
        let (glo, ghi) = (g(rho_lo), g(rho_hi));
        let rho = if glo == 0.0 {
            rho_lo
        } else if ghi == 0.0 {
            rho_hi
        } else if glo.signum() == ghi.signum() {
            if glo.abs() < ghi.abs() {
                rho_lo
            } else {
                rho_hi
            }
        } else {
            bisect(g, rho_lo, rho_hi, 200)
        };
        let u = rarefaction_u_of_rho(m, family, anchor, rho).unwrap();
        State { u, rho }
    }

    /// Structural invariants: contiguous nondecreasing segment intervals,
    /// Lax-admissible shocks with tiny Rankine-Hugoniot residuals, and
    /// data states on the outside.
    pub fn validate(&self) -> Result<()> {
        let mut cursor = f64::NEG_INFINITY;
        for seg in &self.segments {
            let (lo, hi) = match seg {
                Segment::Constant { xi_lo, xi_hi, .. } => (*xi_lo, *xi_hi),
                Segment::Rarefaction { xi_lo, xi_hi, .. } => (*xi_lo, *xi_hi),
                Segment::Vacuum { xi_lo, xi_hi } => (*xi_lo, *xi_hi),
                Segment::Shock {
                    speed,
                    left,
                    right,
                    family,
                } => {
                    let (r1, r2) = rh_residual(&self.model, left, right, *speed);
                    let scale = left.u.abs().max(right.u.abs()).max(1.0);
                    if r1.abs() > 1e-10 * scale || r2.abs() > 1e-10 * scale {
                        return Err(Error::OffLocus {
                            s_formula: *speed,
                            s_jump: *speed,
                        });
                    }
                    if !lax_admissible(&self.model, *family, left, right, *speed) {
                        return Err(Error::OffLocus {
                            s_formula: *speed,
                            s_jump: *speed,
                        });
                    }
                    (*speed, *speed)
                }
            };
            let slack = 1e-9 * (1.0 + cursor.abs().min(1e6));
            if cursor.is_finite() && lo < cursor - slack {
                return Err(Error::Config(format!(
                    "wave fan segments out of order: {lo} < {cursor}"
                )));
            }
            cursor = cursor.max(hi);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn brio(eps: f64) -> FluxModel {
        FluxModel::brio(eps).unwrap()
    }

    fn data(ul: f64, rl: f64, ur: f64, rr: f64) -> RiemannData {
        RiemannData::new(State { u: ul, rho: rl }, State { u: ur, rho: rr }).unwrap()
    }

    #[test]
    fn classification_covers_all_cases() {
        assert_eq!(classify(&data(1.0, 1.0, -1.0, 1.0)), CaseTag::TwoShock);
        assert_eq!(
            classify(&data(0.0, 2.0, 0.0, 1.0)),
            CaseTag::RarefactionShock
        );
        assert_eq!(
            classify(&data(0.0, 1.0, 0.0, 2.0)),
            CaseTag::ShockRarefaction
        );
        assert_eq!(
            classify(&data(-1.0, 1.0, 1.0, 1.0)),
            CaseTag::TwoRarefactionVacuum
        );
        assert_eq!(classify(&data(0.5, 1.0, 0.5, 1.0)), CaseTag::Constant);
    }

    #[test]
    fn two_shock_symmetric_brio() {
        let m = brio(1e-4);
        let d = data(1.0, 1.0, -1.0, 1.0);
        let (mid, fan) = solve_two_shock(&m, &d).unwrap();
        assert!(mid.u_star > -1.0 && mid.u_star < 1.0);
        assert!(mid.u_star.abs() < 1e-3);
        // eps * rho*^2 approaches (u_l - u_r)^2 / 4 = 1
        assert_abs_diff_eq!(1e-4 * mid.rho_star * mid.rho_star, 1.0, epsilon = 0.05);
        assert!(mid.rho_star > 1.0);
        assert_eq!(fan.case, CaseTag::TwoShock);
    }

    #[test]
    fn two_shock_intermediate_velocity_tends_to_mean() {
        let d = data(1.0, 1.0, -1.0, 1.0);
        let mut prev = f64::INFINITY;
        for eps in [1e-2, 1e-4, 1e-6] {
            let (mid, _) = solve_two_shock(&brio(eps), &d).unwrap();
            assert!(mid.u_star.abs() < prev);
            prev = mid.u_star.abs();
        }
        assert!(prev < 2e-6);
    }

    #[test]
    fn two_shock_concentration_value() {
        // 2 eps (f(rho*) - f(rho_l)) -> (u_l - u_r)^2 / 4 = 1
        let m = brio(1e-5);
        let d = data(2.0, 1.0, 0.0, 3.0);
        let (mid, _) = solve_two_shock(&m, &d).unwrap();
        let l = 2.0 * 1e-5 * (m.f(mid.rho_star) - m.f(1.0));
        assert_abs_diff_eq!(l, 1.0, epsilon = 0.02);
    }

    #[test]
    fn two_shock_rejects_wrong_ordering() {
        let m = brio(1e-3);
        assert!(matches!(
            solve_two_shock(&m, &data(-1.0, 1.0, 1.0, 1.0)),
            Err(Error::NotTwoShock)
        ));
    }

    #[test]
    fn two_shock_shock_speeds_ordered_and_admissible() {
        let m = brio(1e-3);
        let d = data(2.0, 1.0, 0.0, 3.0);
        let (_, fan) = solve_two_shock(&m, &d).unwrap();
        let speeds: Vec<f64> = fan.wave_speeds();
        assert_eq!(speeds.len(), 2);
        assert!(speeds[0] < speeds[1]);
        fan.validate().unwrap();
    }

    #[test]
    fn two_shock_sampling_hits_plateau_and_tails() {
        let m = brio(1e-4);
        let d = data(1.0, 1.0, -1.0, 1.0);
        let (mid, fan) = solve_two_shock(&m, &d).unwrap();
        let far_left = fan.sample(-10.0, 1.0);
        assert_eq!((far_left.u, far_left.rho), (1.0, 1.0));
        let far_right = fan.sample(10.0, 1.0);
        assert_eq!((far_right.u, far_right.rho), (-1.0, 1.0));
        let speeds = fan.wave_speeds();
        let between = fan.sample_xi(0.5 * (speeds[0] + speeds[1]));
        assert_abs_diff_eq!(between.u, mid.u_star, epsilon = 1e-14);
        assert_abs_diff_eq!(between.rho, mid.rho_star, epsilon = 1e-10);
    }

    #[test]
    fn equal_density_gives_constant_solution() {
        let m = brio(0.01);
        let d = data(0.5, 1.5, 0.5, 1.5);
        let fan = solve_equal_u(&m, &d).unwrap();
        assert_eq!(fan.case, CaseTag::Constant);
        let s = fan.sample(0.3, 0.7);
        assert_eq!((s.u, s.rho), (0.5, 1.5));
    }

    #[test]
    fn rarefaction_shock_case_structure() {
        let m = brio(0.01);
        let d = data(0.0, 2.0, 0.0, 1.0);
        let fan = solve_equal_u(&m, &d).unwrap();
        assert_eq!(fan.case, CaseTag::RarefactionShock);
        let mid = fan.plateau().unwrap();
        assert!(mid.rho_star > 1.0 && mid.rho_star < 2.0);
        assert!(mid.u_star > 0.0, "plateau velocity sits above u_l here");
        fan.validate().unwrap();
    }

    #[test]
    fn equal_u_intermediate_velocity_converges_to_u_l() {
        let d = data(0.0, 2.0, 0.0, 1.0);
        let mut prev = f64::INFINITY;
        for eps in [1e-2, 1e-4, 1e-6] {
            let fan = solve_equal_u(&brio(eps), &d).unwrap();
            let mid = fan.plateau().unwrap();
            assert!(mid.u_star.abs() < prev);
            prev = mid.u_star.abs();
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn shock_rarefaction_case_structure() {
        let m = brio(0.01);
        let d = data(0.0, 1.0, 0.0, 2.0);
        let fan = solve_equal_u(&m, &d).unwrap();
        assert_eq!(fan.case, CaseTag::ShockRarefaction);
        let mid = fan.plateau().unwrap();
        assert!(mid.rho_star > 1.0 && mid.rho_star < 2.0);
        assert!(mid.u_star < 0.0);
        fan.validate().unwrap();
    }

    #[test]
    fn fan_interior_matches_characteristic_speed() {
        let m = brio(0.01);
        let d = data(0.0, 2.0, 0.0, 1.0);
        let fan = solve_equal_u(&m, &d).unwrap();
        let (xi_lo, xi_hi) = fan
            .segments
            .iter()
            .find_map(|s| match s {
                Segment::Rarefaction { xi_lo, xi_hi, .. } => Some((*xi_lo, *xi_hi)),
                _ => None,
            })
            .unwrap();
        let xi = 0.5 * (xi_lo + xi_hi);
        let s = fan.sample_xi(xi);
        let (l1, _) = m.eigenvalues(&s);
        assert_abs_diff_eq!(l1, xi, epsilon = 1e-10);
    }

    #[test]
    fn vacuum_case_structure_and_sampling() {
        let m = brio(1e-4);
        let d = data(-1.0, 1.0, 1.0, 1.0);
        let fan = solve_two_rarefaction(&m, &d).unwrap();
        assert_eq!(fan.case, CaseTag::TwoRarefactionVacuum);
        // interior of the vacuum: u = x/t, rho = 0
        for xi in [-0.9, -0.3, 0.0, 0.4, 0.9] {
            let s = fan.sample(xi * 2.0, 2.0);
            assert_eq!(s.rho, 0.0);
            assert_abs_diff_eq!(s.u, xi, epsilon = 1e-14);
        }
        // fan edges approach the data velocities as eps -> 0
        let edges: Vec<f64> = fan
            .segments
            .iter()
            .find_map(|s| match s {
                Segment::Vacuum { xi_lo, xi_hi } => Some(vec![*xi_lo, *xi_hi]),
                _ => None,
            })
            .unwrap();
        assert!((edges[0] - (-1.0)).abs() < 1e-2);
        assert!((edges[1] - 1.0).abs() < 1e-2);
    }

    #[test]
    fn vacuum_case_rejects_large_epsilon() {
        // at eps = 2 the fans swallow each other for this data
        let m = brio(2.0);
        let d = data(-0.05, 1.0, 0.05, 1.0);
        assert!(matches!(
            solve_two_rarefaction(&m, &d),
            Err(Error::FanOverlap { .. })
        ));
    }

    #[test]
    fn sampling_is_self_similar() {
        let m = brio(0.01);
        let d = data(1.0, 1.0, -1.0, 1.0);
        let fan = solve(&m, &d).unwrap();
        for (x, t, k) in [(0.01, 0.5, 3.0), (-0.2, 1.0, 0.25), (0.001, 0.1, 10.0)] {
            let a = fan.sample(x, t);
            let b = fan.sample(k * x, k * t);
            assert_abs_diff_eq!(a.u, b.u, epsilon = 1e-11);
            assert_abs_diff_eq!(a.rho, b.rho, epsilon = 1e-9);
        }
    }

    #[test]
    fn boundary_sampling_uses_left_limit() {
        let m = brio(1e-3);
        let d = data(1.0, 1.0, -1.0, 1.0);
        let (_, fan) = solve_two_shock(&m, &d).unwrap();
        let speeds = fan.wave_speeds();
        let at_s1 = fan.sample_xi(speeds[0]);
        assert_eq!((at_s1.u, at_s1.rho), (1.0, 1.0));
        let mid = fan.plateau().unwrap();
        let at_s2 = fan.sample_xi(speeds[1]);
        assert_abs_diff_eq!(at_s2.rho, mid.rho_star, epsilon = 1e-12);
    }

    #[test]
    fn rarefaction_fan_edges_meet_their_constants() {
        let m = brio(0.02);
        let d = data(0.0, 1.0, 0.0, 2.0);
        let fan = solve_equal_u(&m, &d).unwrap();
        let mid = fan.plateau().unwrap();
        let (xi_lo, xi_hi) = fan
            .segments
            .iter()
            .find_map(|s| match s {
                Segment::Rarefaction { xi_lo, xi_hi, .. } => Some((*xi_lo, *xi_hi)),
                _ => None,
            })
            .unwrap();
        let just_inside_lo = fan.sample_xi(xi_lo + 1e-11 * xi_lo.abs().max(1.0));
        assert_abs_diff_eq!(just_inside_lo.rho, mid.rho_star, epsilon = 1e-6);
        let at_hi = fan.sample_xi(xi_hi);
        assert_abs_diff_eq!(at_hi.rho, 2.0, epsilon = 1e-9);
    }

    #[test]
    fn quadratic_g_two_shock_solves() {
        let m = FluxModel::quadratic_g(1e-4).unwrap();
        let d = data(1.0, 1.0, -1.0, 1.0);
        let (mid, fan) = solve_two_shock(&m, &d).unwrap();
        // sqrt(eps) * rho* stabilizes near (u_l - u_r)/2 = 1
        assert_abs_diff_eq!(1e-4f64.sqrt() * mid.rho_star, 1.0, epsilon = 0.05);
        fan.validate().unwrap();
    }
}
