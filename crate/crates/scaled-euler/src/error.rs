//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by solvers and model constructors.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A state was constructed with a negative or non-finite density.
    #[error("invalid state: rho = {rho} (must be finite and >= 0)")]
    NegativeDensity { rho: f64 },

    /// A model was constructed with a non-positive scaling parameter.
    #[error("invalid model: epsilon = {epsilon} (must be finite and > 0)")]
    NonPositiveEpsilon { epsilon: f64 },

    /// The quadratic-g model is only defined together with f(rho) = rho^2/2.
    #[error("the quadratic g variant requires f(rho) = rho^2/2")]
    QuadraticGNeedsQuadraticF,

    /// Eigenvectors contain 1/rho and are undefined at the vacuum.
    #[error("eigenvectors are degenerate at rho = 0")]
    DegenerateEigenvector,

    /// A bracketing search for a shock-locus root exceeded the density cap.
    #[error("shock locus bracket expansion exceeded rho_cap = {rho_cap} (target u drop {du})")]
    BracketExhausted { rho_cap: f64, du: f64 },

    /// The requested point on a 2-shock locus would need a negative density.
    #[error("2-shock locus leaves rho >= 0: requested u drop {du} exceeds limit {du_max}")]
    LocusLeavesDomain { du: f64, du_max: f64 },

    /// The two shock-locus branches do not intersect at this epsilon.
    #[error(
        "no intermediate state at epsilon = {epsilon}: rho1-rho2 has signs \
         ({sign_at_ur:+}) at u_r and ({sign_at_ul:+}) at u_l, expected (+) and (-)"
    )]
    NoIntersection {
        epsilon: f64,
        sign_at_ur: f64,
        sign_at_ul: f64,
    },

    /// Two-rarefaction construction failed because the fans overlap.
    #[error(
        "rarefaction fans overlap at epsilon = {epsilon}: left edge u = {u1_edge}, \
         right edge u = {u2_edge} (epsilon too large for this data)"
    )]
    FanOverlap {
        epsilon: f64,
        u1_edge: f64,
        u2_edge: f64,
    },

    /// The two shock-speed formulas disagree, so the input pair is off-locus.
    #[error("shock speed formulas disagree: {s_formula} vs {s_jump} (pair is off-locus)")]
    OffLocus { s_formula: f64, s_jump: f64 },

    /// Equal left/right densities make the jump-form speed formula degenerate.
    #[error("degenerate shock: left and right densities are equal")]
    DegenerateShock,

    /// Family-2 rarefaction curves are not integrable down to rho = 0.
    #[error("family-2 rarefaction curve diverges at rho = 0 (integrand ~ eps/rho)")]
    NonIntegrableEndpoint,

    /// The requested operation needs the Brio flux f(rho) = rho^2/2, g(rho) = -rho.
    #[error("operation is defined for the Brio flux only")]
    NotBrio,

    /// A sampled point lies outside the parameterized range of a table-backed flux.
    #[error("flux table queried at rho = {rho}, outside [{lo}, {hi}]")]
    TableRange { rho: f64, lo: f64, hi: f64 },

    /// The post-step wave speed exceeded the CFL assumption.
    #[error("CFL violation: post-step max speed {found} exceeds dt assumption {assumed} by >5%")]
    CflViolation { assumed: f64, found: f64 },

    /// A wave reached the finite-volume domain boundary before t_end.
    #[error("wave reached the domain boundary near x = {x} before t_end")]
    DomainOverflow { x: f64 },

    /// The finite-volume spike probe was asked to run under-resolved.
    #[error(
        "spike probe under-resolved: {cells_in_gap:.1} cells across the inter-shock gap, need >= 8"
    )]
    UnderResolved { cells_in_gap: f64 },

    /// Scenario/configuration errors (bad keys, unparseable values).
    #[error("config error: {0}")]
    Config(String),

    /// Not enough sweep records for the requested analysis.
    #[error("need at least {need} sweep records, got {got}")]
    TooFewRecords { need: usize, got: usize },

    /// The operation requires data classified as a two-shock case.
    #[error("operation requires u_l > u_r (two-shock data)")]
    NotTwoShock,

    /// I/O failures while reading config or writing outputs.
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
