//! Shock loci, rarefaction curves, shock speeds and admissibility.
//!
//! Eliminating the speed from the Rankine-Hugoniot conditions of the scaled
//! system gives the quadratic relation
//!
//! ```text
//! (du)^2 + (2 eps (rho_r - rho_l)/(rho_l + rho_r)) du
//!        - 2 eps (rho_l - rho_r)(f(rho_l) - f(rho_r))/(rho_l + rho_r) = 0
//! ```
//!
//! whose two branches are the admissible shock loci through an anchor state
//! (with `g = -rho`):
//!
//! ```text
//! family 1:  u - u0 = (rho - rho0)/(rho + rho0) * [eps - S],  rho > rho0
//! family 2:  u - u0 = (rho - rho0)/(rho + rho0) * [eps + S],  rho < rho0
//! S = sqrt(eps^2 + 2 eps (rho + rho0)(f(rho) - f(rho0))/(rho - rho0))
//! ```
//!
//! Family 1 is strictly decreasing and family 2 strictly increasing in the
//! `u` parameterization, so each locus inversion is a bisection on a
//! monotone function. Rarefaction curves integrate
//! `du/drho = (eps -/+ sqrt(4 eps rho f' + eps^2)) / (2 rho)`; the family-1
//! integrand extends continuously to the vacuum (limit `-f'(0+)`), while the
//! family-2 integrand carries a non-integrable `eps/(2 rho)` component whose
//! antiderivative is split off in closed form.
//!
//! For `f = rho^2/2`, `g = -rho^2` both wave families degenerate to straight
//! lines `u - u0 = (rho - rho0)(eps -/+ sqrt(eps^2 + eps))` and everything
//! here is closed-form.

use crate::error::{Error, Result};
use crate::flux::{FluxModel, GKind, State};
use crate::quad;
use crate::roots::bisect;

/// Default cap for the expanding upper bracket of locus inversions.
pub const DEFAULT_RHO_CAP: f64 = 1e12;

/// Quadrature tolerance for rarefaction-curve integrals.
const RAREFACTION_TOL: f64 = 1e-12;

/// Wave family of a shock or rarefaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    One,
    Two,
}

impl Family {
    fn sign(self) -> f64 {
        match self {
            Family::One => -1.0,
            Family::Two => 1.0,
        }
    }
}

/// Secant slope of `f` with a derivative fallback at coincident arguments.
fn chord(m: &FluxModel, a: f64, b: f64) -> f64 {
    if (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0) {
        m.f_prime(0.5 * (a + b))
    } else {
        (m.f(a) - m.f(b)) / (a - b)
    }
}

/// `sqrt(eps^2 + 2 eps (a + b) chord(a, b))`, the root shared by the locus
/// and speed formulas. The argument is >= eps^2 because `f` is increasing.
fn locus_root(m: &FluxModel, a: f64, b: f64) -> f64 {
    let eps = m.epsilon();
    (eps * eps + 2.0 * eps * (a + b) * chord(m, a, b))
        .max(0.0)
        .sqrt()
}

/// For `g = -rho^2`: the constant slope of the straight-line wave curves.
fn quadratic_slope(epsilon: f64, family: Family) -> f64 {
    epsilon + family.sign() * (epsilon * epsilon + epsilon).sqrt()
}

/// `u - anchor.u` along the shock locus of `family` through `anchor`,
/// evaluated at density `rho`.
pub fn shock_u_of_rho(m: &FluxModel, family: Family, anchor: &State, rho: f64) -> f64 {
    match m.g_kind() {
        GKind::Linear => {
            let s = locus_root(m, rho, anchor.rho);
            (rho - anchor.rho) / (rho + anchor.rho) * (m.epsilon() + family.sign() * s)
        }
        GKind::Quadratic => (rho - anchor.rho) * quadratic_slope(m.epsilon(), family),
    }
}

/// The unique `rho >= anchor.rho` on the 1-shock locus through `anchor`
/// at velocity `u <= anchor.u` (bisection on the strictly decreasing
/// parameterization, expanding the upper bracket up to `rho_cap`).
pub fn shock1_rho_given_u(m: &FluxModel, anchor: &State, u: f64) -> Result<f64> {
    shock1_rho_given_u_with_cap(m, anchor, u, DEFAULT_RHO_CAP)
}

pub fn shock1_rho_given_u_with_cap(
    m: &FluxModel,
    anchor: &State,
    u: f64,
    rho_cap: f64,
) -> Result<f64> {
    assert!(
        anchor.rho > 0.0,
        "1-shock locus needs a positive anchor density"
    );
    assert!(
        u <= anchor.u,
        "1-shock locus is parameterized on u <= anchor.u"
    );
    if u == anchor.u {
        return Ok(anchor.rho);
    }
    let du = u - anchor.u;
    if m.g_kind() == GKind::Quadratic {
        return Ok(anchor.rho + du / quadratic_slope(m.epsilon(), Family::One));
    }
    let target = |rho: f64| shock_u_of_rho(m, Family::One, anchor, rho) - du;
    let mut hi = anchor.rho * 2.0;
    while target(hi) > 0.0 {
        hi *= 2.0;
        if hi > rho_cap {
            return Err(Error::BracketExhausted { rho_cap, du });
        }
    }
    Ok(bisect(target, anchor.rho, hi, 200))
}

/// The density on the 2-shock locus through `anchor` at velocity `u`.
///
/// The single strictly increasing parameterization covers both uses:
/// `u <= anchor.u` walks the forward branch (`rho <= anchor.rho`, the anchor
/// is the left state), while `u >= anchor.u` walks the reversed branch
/// (`rho >= anchor.rho`, the anchor is the right state) used to build the
/// intermediate state of two-shock solutions.
pub fn shock2_rho_given_u(m: &FluxModel, anchor: &State, u: f64) -> Result<f64> {
    shock2_rho_given_u_with_cap(m, anchor, u, DEFAULT_RHO_CAP)
}

pub fn shock2_rho_given_u_with_cap(
    m: &FluxModel,
    anchor: &State,
    u: f64,
    rho_cap: f64,
) -> Result<f64> {
    assert!(
        anchor.rho > 0.0,
        "2-shock locus needs a positive anchor density"
    );
    if u == anchor.u {
        return Ok(anchor.rho);
    }
    let du = u - anchor.u;
    if m.g_kind() == GKind::Quadratic {
        let rho = anchor.rho + du / quadratic_slope(m.epsilon(), Family::Two);
        if rho < 0.0 {
            let du_max = -anchor.rho * quadratic_slope(m.epsilon(), Family::Two);
            return Err(Error::LocusLeavesDomain { du, du_max });
        }
        return Ok(rho);
    }
    let target = |rho: f64| shock_u_of_rho(m, Family::Two, anchor, rho) - du;
    if du < 0.0 {
        // forward branch: the locus meets rho = 0 at a finite velocity drop
        let du_max = shock_u_of_rho(m, Family::Two, anchor, 0.0);
        if du < du_max {
            return Err(Error::LocusLeavesDomain { du, du_max });
        }
        Ok(bisect(target, 0.0, anchor.rho, 200))
    } else {
        let mut hi = anchor.rho * 2.0;
        while target(hi) < 0.0 {
            hi *= 2.0;
            if hi > rho_cap {
                return Err(Error::BracketExhausted { rho_cap, du });
            }
        }
        Ok(bisect(target, anchor.rho, hi, 200))
    }
}

/// Shock speed from the jump form of the second Rankine-Hugoniot relation,
/// `s = [u rho + eps g(rho)] / [rho]`. Exact for any pair with a density
/// jump; this is the form used to assemble wave fans.
pub fn shock_speed_from_jump(m: &FluxModel, left: &State, right: &State) -> Result<f64> {
    if left.rho == right.rho {
        return Err(Error::DegenerateShock);
    }
    let eps = m.epsilon();
    Ok(
        (left.u * left.rho - right.u * right.rho + eps * (m.g(left.rho) - m.g(right.rho)))
            / (left.rho - right.rho),
    )
}

/// Shock speed from the closed formula
/// `s = (u_l + u_r)/2 - eps/2 -/+ S/2` (for `g = -rho`), cross-checked
/// against the jump form; disagreement beyond `1e-8` means the input pair
/// is off-locus and is reported as an error.
pub fn shock_speed(m: &FluxModel, family: Family, left: &State, right: &State) -> Result<f64> {
    if left.rho == right.rho {
        return Err(Error::DegenerateShock);
    }
    let eps = m.epsilon();
    let s_formula = match m.g_kind() {
        GKind::Linear => {
            0.5 * (left.u + right.u) - 0.5 * eps
                + 0.5 * family.sign() * locus_root(m, left.rho, right.rho)
        }
        GKind::Quadratic => {
            0.5 * (left.u + right.u)
                + 0.5 * eps * (left.rho + right.rho) / quadratic_slope(eps, family)
        }
    };
    let s_jump = shock_speed_from_jump(m, left, right)?;
    if (s_formula - s_jump).abs() > 1e-8 * s_formula.abs().max(1.0) {
        return Err(Error::OffLocus { s_formula, s_jump });
    }
    Ok(s_formula)
}

/// Rankine-Hugoniot residual of a candidate discontinuity:
/// `r_i = s [U_i] - [F_i(U)]` componentwise, with `[h] = h_left - h_right`.
pub fn rh_residual(m: &FluxModel, left: &State, right: &State, s: f64) -> (f64, f64) {
    let fl = m.flux(left);
    let fr = m.flux(right);
    (
        s * (left.u - right.u) - (fl[0] - fr[0]),
        s * (left.rho - right.rho) - (fl[1] - fr[1]),
    )
}

/// Lax admissibility of a discontinuity, with the default slack
/// `delta = 1e-12 * max(1, |s|)` on the strict inequalities:
///
/// - family 1: `s < lambda1(left)`, `lambda1(right) < s < lambda2(right)`;
/// - family 2: `s > lambda2(right)`, `lambda1(left) < s < lambda2(left)`.
pub fn lax_admissible(m: &FluxModel, family: Family, left: &State, right: &State, s: f64) -> bool {
    lax_admissible_with_slack(m, family, left, right, s, 1e-12 * s.abs().max(1.0))
}

/// [`lax_admissible`] with an explicit slack on the strict inequalities.
pub fn lax_admissible_with_slack(
    m: &FluxModel,
    family: Family,
    left: &State,
    right: &State,
    s: f64,
    delta: f64,
) -> bool {
    let (l1_l, l2_l) = m.eigenvalues(left);
    let (l1_r, l2_r) = m.eigenvalues(right);
    match family {
        Family::One => s < l1_l + delta && l1_r - delta < s && s < l2_r + delta,
        Family::Two => s > l2_r - delta && l1_l - delta < s && s < l2_l + delta,
    }
}

/// A discontinuity on an admissible shock locus, carrying both end states,
/// the speed, and the family. Construction verifies the Rankine-Hugoniot
/// residual (to 1e-10) and the Lax inequalities.
#[derive(Debug, Clone, Copy)]
pub struct ShockLocusPoint {
    pub left: State,
    pub right: State,
    pub speed: f64,
    pub family: Family,
}

impl ShockLocusPoint {
    pub fn new(m: &FluxModel, family: Family, left: State, right: State) -> Result<Self> {
        let speed = shock_speed_from_jump(m, &left, &right)?;
        let (r1, r2) = rh_residual(m, &left, &right, speed);
        let scale = left.u.abs().max(right.u.abs()).max(1.0);
        if r1.abs() > 1e-10 * scale || r2.abs() > 1e-10 * scale {
            let s_formula = shock_speed(m, family, &left, &right).unwrap_or(speed);
            return Err(Error::OffLocus {
                s_formula,
                s_jump: speed,
            });
        }
        if !lax_admissible(m, family, &left, &right, speed) {
            return Err(Error::OffLocus {
                s_formula: speed,
                s_jump: speed,
            });
        }
        Ok(ShockLocusPoint {
            left,
            right,
            speed,
            family,
        })
    }

    /// 1-shock with the anchor as left state, parameterized by `u <= anchor.u`.
    pub fn family1_from_left(m: &FluxModel, anchor: &State, u: f64) -> Result<Self> {
        let rho = shock1_rho_given_u(m, anchor, u)?;
        Self::new(m, Family::One, *anchor, State { u, rho })
    }

    /// 2-shock with the anchor as left state, parameterized by `u <= anchor.u`.
    pub fn family2_from_left(m: &FluxModel, anchor: &State, u: f64) -> Result<Self> {
        let rho = shock2_rho_given_u(m, anchor, u)?;
        Self::new(m, Family::Two, *anchor, State { u, rho })
    }

    /// 2-shock with the anchor as right state, parameterized by `u >= anchor.u`.
    pub fn family2_from_right(m: &FluxModel, anchor: &State, u: f64) -> Result<Self> {
        let rho = shock2_rho_given_u(m, anchor, u)?;
        Self::new(m, Family::Two, State { u, rho }, *anchor)
    }
}

/// The bounded part of the rarefaction integrand,
/// `(sqrt(eps^2 + 4 eps xi f'(xi)) - eps) / (2 xi)`, written in the
/// cancellation-free form `2 eps f' / (eps + sqrt(...))` which extends
/// continuously to the vacuum with limit `f'(0+)`.
fn rarefaction_kernel(m: &FluxModel, xi: f64) -> f64 {
    let eps = m.epsilon();
    let fp = m.f_prime(xi);
    let root = (eps * eps + 4.0 * eps * xi * fp).sqrt();
    2.0 * eps * fp / (eps + root)
}

/// Velocity along the rarefaction curve of `family` through `anchor`,
/// evaluated at density `rho`.
///
/// Family 1 is integrable on all of `[0, inf)`. The family-2 curve contains
/// the exact term `eps * ln(rho / anchor.rho)`, so evaluation at `rho = 0`
/// is a domain error ([`Error::NonIntegrableEndpoint`]); vacuum fans use the
/// regularized edge value from [`vacuum_edge_u`] instead.
pub fn rarefaction_u_of_rho(
    m: &FluxModel,
    family: Family,
    anchor: &State,
    rho: f64,
) -> Result<f64> {
    assert!(rho >= 0.0, "rarefaction curves live in rho >= 0");
    if rho == anchor.rho {
        return Ok(anchor.u);
    }
    if m.g_kind() == GKind::Quadratic {
        return Ok(anchor.u + (rho - anchor.rho) * quadratic_slope(m.epsilon(), family));
    }
    match family {
        Family::One => {
            let q = quad::integrate(
                |xi| rarefaction_kernel(m, xi),
                rho,
                anchor.rho,
                RAREFACTION_TOL,
            );
            Ok(anchor.u + q.value)
        }
        Family::Two => {
            if rho == 0.0 || anchor.rho == 0.0 {
                return Err(Error::NonIntegrableEndpoint);
            }
            let q = quad::integrate(
                |xi| rarefaction_kernel(m, xi),
                anchor.rho,
                rho,
                RAREFACTION_TOL,
            );
            Ok(anchor.u + q.value + m.epsilon() * (rho / anchor.rho).ln())
        }
    }
}

/// Velocity at the vacuum end (`rho = 0`) of a rarefaction curve.
///
/// Family 1 is the convergent improper limit of the curve. The family-2
/// improper limit diverges like `eps * ln rho`; the value returned here
/// excludes exactly that component (the convergent remainder), which is the
/// edge convention for two-rarefaction vacuum fans: it tends to `anchor.u`
/// as `eps -> 0` at the same rate as the family-1 edge.
pub fn vacuum_edge_u(m: &FluxModel, family: Family, anchor: &State) -> f64 {
    if m.g_kind() == GKind::Quadratic {
        return anchor.u - anchor.rho * quadratic_slope(m.epsilon(), family);
    }
    let q = quad::integrate(
        |xi| rarefaction_kernel(m, xi),
        0.0,
        anchor.rho,
        RAREFACTION_TOL,
    );
    match family {
        Family::One => anchor.u + q.value,
        Family::Two => anchor.u - q.value,
    }
}

/// Characteristic speed of `family` along its rarefaction curve through
/// `anchor`, as a function of the curve parameter `rho` (> 0 for family 2).
///
/// Genuine nonlinearity makes this strictly monotone in `rho`, which is what
/// fan sampling inverts.
pub fn lambda_on_rarefaction(
    m: &FluxModel,
    family: Family,
    anchor: &State,
    rho: f64,
) -> Result<f64> {
    let u = rarefaction_u_of_rho(m, family, anchor, rho)?;
    let (l1, l2) = m.eigenvalues(&State { u, rho });
    Ok(match family {
        Family::One => l1,
        Family::Two => l2,
    })
}

/// Closed-form shock loci for `f = rho^2/2`, `g = -rho^2`:
/// `rho = anchor.rho + (u - anchor.u)/(eps -/+ sqrt(eps^2 + eps))`.
pub fn quadratic_g_shock_loci(anchor: &State, epsilon: f64, u: f64, family: Family) -> f64 {
    assert!(
        u <= anchor.u,
        "closed-form loci are parameterized on u <= anchor.u"
    );
    anchor.rho + (u - anchor.u) / quadratic_slope(epsilon, family)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn brio(eps: f64) -> FluxModel {
        FluxModel::brio(eps).unwrap()
    }

    /// Left side of the quadratic relation that both locus branches satisfy.
    fn quadratic_relation(m: &FluxModel, l: &State, r: &State) -> f64 {
        let eps = m.epsilon();
        let du = l.u - r.u;
        du * du + (2.0 * eps * (r.rho - l.rho) / (l.rho + r.rho)) * du
            - 2.0 * eps * (l.rho - r.rho) * (m.f(l.rho) - m.f(r.rho)) / (l.rho + r.rho)
    }

    #[test]
    fn shock1_anchor_velocity_returns_anchor_density() {
        let m = brio(0.01);
        let anchor = State { u: 1.0, rho: 1.0 };
        assert_eq!(shock1_rho_given_u(&m, &anchor, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn shock1_substitution_reproduces_velocity_drop() {
        let m = brio(0.01);
        let anchor = State { u: 1.0, rho: 1.0 };
        let rho = shock1_rho_given_u(&m, &anchor, 0.0).unwrap();
        assert!(rho > 1.0);
        let du = shock_u_of_rho(&m, Family::One, &anchor, rho);
        assert_abs_diff_eq!(du, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn shock1_parameterization_is_decreasing() {
        let m = brio(0.01);
        let anchor = State { u: 1.0, rho: 1.0 };
        let rho_a = shock1_rho_given_u(&m, &anchor, 0.0).unwrap();
        let rho_b = shock1_rho_given_u(&m, &anchor, -1.0).unwrap();
        assert!(rho_b > rho_a);
    }

    #[test]
    fn shock2_reversed_branch_is_increasing() {
        // anchor (-1, 1) as right state, parameterized on [u_r, inf)
        let m = brio(0.05);
        let anchor = State { u: -1.0, rho: 1.0 };
        let mut prev = 1.0;
        for k in 1..=8 {
            let u = -1.0 + 0.5 * k as f64;
            let rho = shock2_rho_given_u(&m, &anchor, u).unwrap();
            assert!(rho > prev, "rho*2 must increase along u");
            prev = rho;
        }
    }

    #[test]
    fn shock2_forward_branch_hits_residual_tolerance() {
        let m = brio(0.1);
        let anchor = State { u: 0.0, rho: 2.0 };
        let point = ShockLocusPoint::family2_from_left(&m, &anchor, -0.5).unwrap();
        let (r1, r2) = rh_residual(&m, &point.left, &point.right, point.speed);
        assert!(r1.abs() <= 1e-10 && r2.abs() <= 1e-10);
        assert!(point.right.rho < 2.0);
    }

    #[test]
    fn shock2_forward_branch_leaves_domain() {
        let m = brio(0.1);
        let anchor = State { u: 0.0, rho: 2.0 };
        // the forward 2-locus reaches rho = 0 at a finite velocity drop
        let du_max = shock_u_of_rho(&m, Family::Two, &anchor, 0.0);
        let err = shock2_rho_given_u(&m, &anchor, du_max - 0.1).unwrap_err();
        assert!(matches!(err, Error::LocusLeavesDomain { .. }));
    }

    #[test]
    fn both_loci_satisfy_quadratic_relation() {
        let m = brio(0.02);
        let anchor = State { u: 0.5, rho: 1.5 };
        for u in [0.4, 0.0, -1.0, -3.0] {
            let p1 = ShockLocusPoint::family1_from_left(&m, &anchor, u).unwrap();
            assert!(quadratic_relation(&m, &p1.left, &p1.right).abs() <= 1e-10);
        }
        for u in [0.45, 0.3] {
            let p2 = ShockLocusPoint::family2_from_left(&m, &anchor, u).unwrap();
            assert!(quadratic_relation(&m, &p2.left, &p2.right).abs() <= 1e-10);
        }
    }

    #[test]
    fn shock_speed_formulas_agree_and_satisfy_lax() {
        let m = brio(0.01);
        let anchor = State { u: 1.0, rho: 1.0 };
        let p = ShockLocusPoint::family1_from_left(&m, &anchor, 0.0).unwrap();
        let s = shock_speed(&m, Family::One, &p.left, &p.right).unwrap();
        let s_jump = shock_speed_from_jump(&m, &p.left, &p.right).unwrap();
        assert_abs_diff_eq!(s, s_jump, epsilon = 1e-10);
        let (l1_left, _) = m.eigenvalues(&p.left);
        assert!(s < l1_left, "1-shock must run slower than lambda1(left)");
        assert!(lax_admissible(&m, Family::One, &p.left, &p.right, s));
    }

    #[test]
    fn shock_speed_rejects_equal_densities() {
        let m = brio(0.01);
        let a = State { u: 1.0, rho: 1.0 };
        let b = State { u: 0.0, rho: 1.0 };
        assert!(matches!(
            shock_speed(&m, Family::One, &a, &b),
            Err(Error::DegenerateShock)
        ));
    }

    #[test]
    fn shock_speed_detects_off_locus_pairs() {
        let m = brio(0.01);
        let anchor = State { u: 1.0, rho: 1.0 };
        let p = ShockLocusPoint::family1_from_left(&m, &anchor, 0.0).unwrap();
        let off = State {
            u: p.right.u,
            rho: p.right.rho + 0.5,
        };
        assert!(matches!(
            shock_speed(&m, Family::One, &p.left, &off),
            Err(Error::OffLocus { .. })
        ));
    }

    #[test]
    fn rh_residual_zero_for_identical_states() {
        let m = brio(0.3);
        let s = State { u: 0.7, rho: 2.0 };
        let (r1, r2) = rh_residual(&m, &s, &s, 123.0);
        assert_eq!((r1, r2), (0.0, 0.0));
    }

    #[test]
    fn rh_residual_grows_linearly_in_perturbation() {
        let m = brio(0.05);
        let anchor = State { u: 1.0, rho: 1.0 };
        let p = ShockLocusPoint::family1_from_left(&m, &anchor, -0.5).unwrap();
        let res = |drho: f64| {
            let right = State {
                u: p.right.u,
                rho: p.right.rho + drho,
            };
            let (r1, r2) = rh_residual(&m, &p.left, &right, p.speed);
            (r1 * r1 + r2 * r2).sqrt()
        };
        let r_small = res(0.05);
        let r_big = res(0.10);
        assert!(r_small > 1e-6);
        assert_abs_diff_eq!(r_big / r_small, 2.0, epsilon = 0.2);
    }

    #[test]
    fn lax_rejects_reversed_and_degenerate_pairs() {
        let m = brio(0.01);
        let anchor = State { u: 1.0, rho: 1.0 };
        let p = ShockLocusPoint::family1_from_left(&m, &anchor, 0.0).unwrap();
        assert!(!lax_admissible(&m, Family::One, &p.right, &p.left, p.speed));
        let s = State { u: 0.5, rho: 1.0 };
        assert!(!lax_admissible(&m, Family::One, &s, &s, 0.5 - 0.005));
    }

    #[test]
    fn rarefaction_at_anchor_is_identity() {
        let m = brio(1.0);
        let anchor = State { u: 0.3, rho: 1.0 };
        assert_eq!(
            rarefaction_u_of_rho(&m, Family::One, &anchor, 1.0).unwrap(),
            0.3
        );
    }

    #[test]
    fn rarefaction_matches_closed_form_antiderivative() {
        // Brio, eps = 1, family 1 through (0, 1):
        // u(rho) = int_rho^1 (sqrt(1 + 4 xi^2) - 1) / (2 xi) dxi, and
        // int (sqrt(1+4x^2)-1)/(2x) dx
        //   = sqrt(1+4x^2)/2 + ln((sqrt(1+4x^2)-1)/(sqrt(1+4x^2)+1))/4 - ln(x)/2.
        let antiderivative = |x: f64| {
            let w = (1.0 + 4.0 * x * x).sqrt();
            0.5 * w + 0.25 * ((w - 1.0) / (w + 1.0)).ln() - 0.5 * x.ln()
        };
        let expected = antiderivative(1.0) - antiderivative(0.5);
        let m = brio(1.0);
        let anchor = State { u: 0.0, rho: 1.0 };
        let u = rarefaction_u_of_rho(&m, Family::One, &anchor, 0.5).unwrap();
        assert_abs_diff_eq!(u, expected, epsilon = 1e-12);
        assert!(u > 0.25 && u < 0.28);
    }

    #[test]
    fn rarefaction_velocity_shift_vanishes_with_epsilon() {
        let anchor = State { u: 0.0, rho: 1.0 };
        let mut prev = f64::INFINITY;
        for eps in [1e-2, 1e-4, 1e-6] {
            let m = brio(eps);
            let u = rarefaction_u_of_rho(&m, Family::One, &anchor, 0.5).unwrap();
            assert!(u > 0.0 && u < prev, "u must decrease to 0 monotonically");
            prev = u;
        }
        assert!(prev < 1e-3);
    }

    #[test]
    fn rarefaction_family2_rejects_vacuum_endpoint() {
        let m = brio(0.01);
        let anchor = State { u: 1.0, rho: 1.0 };
        assert!(matches!(
            rarefaction_u_of_rho(&m, Family::Two, &anchor, 0.0),
            Err(Error::NonIntegrableEndpoint)
        ));
    }

    #[test]
    fn rarefaction_monotonicity_along_curves() {
        let m = brio(0.3);
        let anchor = State { u: 0.0, rho: 2.0 };
        // family 1: du/drho < 0; family 2: du/drho > 0
        let mut prev1 = f64::NEG_INFINITY;
        let mut prev2 = f64::NEG_INFINITY;
        for k in 1..=10 {
            let rho = 0.2 * k as f64;
            let u1 = rarefaction_u_of_rho(&m, Family::One, &anchor, rho).unwrap();
            let u2 = rarefaction_u_of_rho(&m, Family::Two, &anchor, rho).unwrap();
            if k > 1 {
                assert!(u1 < prev1);
                assert!(u2 > prev2);
            }
            prev1 = u1;
            prev2 = u2;
        }
    }

    #[test]
    fn quadrature_is_stable_under_tightening() {
        let m = brio(1e-3);
        let anchor = State { u: 0.0, rho: 4.0 };
        let loose = rarefaction_u_of_rho(&m, Family::One, &anchor, 0.1).unwrap();
        let q = quad::integrate(|xi| rarefaction_kernel(&m, xi), 0.1, 4.0, 1e-14);
        assert_abs_diff_eq!(loose, q.value, epsilon = 1e-10 * loose.abs().max(1.0));
    }

    #[test]
    fn vacuum_edges_straddle_the_anchor() {
        let m = brio(1e-4);
        let left = State { u: -1.0, rho: 1.0 };
        let right = State { u: 1.0, rho: 1.0 };
        let u1 = vacuum_edge_u(&m, Family::One, &left);
        let u2 = vacuum_edge_u(&m, Family::Two, &right);
        assert!(u1 > -1.0 && u1 < -0.98);
        assert!(u2 < 1.0 && u2 > 0.98);
    }

    #[test]
    fn quadratic_g_worked_example() {
        // anchor (1,1), eps = 1, u = 0, family 1: rho = 2 + sqrt(2)
        let anchor = State { u: 1.0, rho: 1.0 };
        let rho = quadratic_g_shock_loci(&anchor, 1.0, 0.0, Family::One);
        assert_abs_diff_eq!(rho, 2.0 + std::f64::consts::SQRT_2, epsilon = 1e-12);
        assert_eq!(quadratic_g_shock_loci(&anchor, 1.0, 1.0, Family::One), 1.0);
    }

    #[test]
    fn quadratic_g_density_blows_up_like_inverse_sqrt_epsilon() {
        let anchor = State { u: 1.0, rho: 1.0 };
        let mut prev_scaled = None;
        for eps in [1e-4, 1e-6, 1e-8] {
            let rho = quadratic_g_shock_loci(&anchor, eps, 0.0, Family::One);
            let scaled = eps.sqrt() * rho;
            if let Some(p) = prev_scaled {
                let ratio: f64 = scaled / p;
                assert!((ratio - 1.0).abs() < 0.05, "sqrt(eps)*rho must stabilize");
            }
            prev_scaled = Some(scaled);
        }
    }
}
