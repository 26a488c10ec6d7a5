//! Adaptive Gauss-Legendre quadrature.
//!
//! A 12-point Gauss rule is applied per panel; the error indicator compares
//! the whole-panel estimate against the sum over two half panels, and panels
//! are bisected until the indicator falls below the local tolerance budget.
//! Nodes and weights are generated once by Newton iteration on P_12, so no
//! coefficient tables are embedded.

use std::sync::OnceLock;

const GAUSS_N: usize = 12;
const MAX_DEPTH: u32 = 52;

/// Value and accumulated error indicator of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quad {
    pub value: f64,
    pub error: f64,
}

fn legendre_rule() -> &'static [(f64, f64); GAUSS_N] {
    static RULE: OnceLock<[(f64, f64); GAUSS_N]> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GAUSS_N;
        let mut rule = [(0.0, 0.0); GAUSS_N];
        for (i, slot) in rule.iter_mut().enumerate() {
            // Chebyshev-like initial guess, then Newton on P_n.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre_and_derivative(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-17 {
                    break;
                }
            }
            let (_, dp) = legendre_and_derivative(n, x);
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            *slot = (x, w);
        }
        rule
    })
}

/// P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn gauss_panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = 0.0;
    for &(x, w) in legendre_rule() {
        acc += w * f(mid + half * x);
    }
    acc * half
}

/// Integrate `f` over `[a, b]` (orientation-aware) to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Quad {
    if a == b {
        return Quad {
            value: 0.0,
            error: 0.0,
        };
    }
    if a > b {
        let q = integrate(f, b, a, tol);
        return Quad {
            value: -q.value,
            error: q.error,
        };
    }
    let mut value = 0.0;
    let mut error = 0.0;
    adaptive(&f, a, b, tol.max(1e-300), 0, &mut value, &mut error);
    Quad { value, error }
}

fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
    value: &mut f64,
    error: &mut f64,
) {
    let whole = gauss_panel(f, a, b);
    let mid = 0.5 * (a + b);
    let left = gauss_panel(f, a, mid);
    let right = gauss_panel(f, mid, b);
    let split = left + right;
    let err = (split - whole).abs();
    if err <= tol || depth >= MAX_DEPTH || mid <= a || mid >= b {
        *value += split;
        *error += err;
    } else {
        adaptive(f, a, mid, 0.5 * tol, depth + 1, value, error);
        adaptive(f, mid, b, 0.5 * tol, depth + 1, value, error);
    }
}

/// Integrate with forced panel boundaries at the interior `breaks`.
///
/// Used when the integrand is only piecewise smooth and the kink locations
/// are known (shock lines, fan edges); each smooth piece then converges at
/// the full Gauss rate.
pub fn integrate_with_breakpoints<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: f64,
) -> Quad {
    if a == b {
        return Quad {
            value: 0.0,
            error: 0.0,
        };
    }
    if a > b {
        let q = integrate_with_breakpoints(f, b, a, breaks, tol);
        return Quad {
            value: -q.value,
            error: q.error,
        };
    }
    let mut cuts: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|x| *x > a && *x < b)
        .collect();
    cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    cuts.dedup();
    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(a);
    edges.extend(cuts);
    edges.push(b);
    let n = (edges.len() - 1) as f64;
    let mut value = 0.0;
    let mut error = 0.0;
    for pair in edges.windows(2) {
        let q = integrate(&f, pair[0], pair[1], tol / n);
        value += q.value;
        error += q.error;
    }
    Quad { value, error }
}
