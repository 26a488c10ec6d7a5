//! Exact Riemann solver and vanishing-scale limit analysis for the scaled
//! Euler system of compressible fluid flow
//!
//! ```text
//! u_t + (u^2/2 + eps*f(rho))_x = 0
//! rho_t + (u*rho + eps*g(rho))_x = 0
//! ```
//!
//! with a convex pressure-like term `f` (f' > 0, f'' > 0) and a decreasing
//! `g` (either g = -rho or g = -rho^2). For `eps > 0` the system is strictly
//! hyperbolic and genuinely nonlinear in both fields; as `eps -> 0` it
//! degenerates to the one-dimensional model of large-scale structure
//! formation, whose Riemann solutions concentrate mass on a shock line
//! (a delta shock), open a vacuum, or reduce to a contact discontinuity.
//!
//! The crate provides:
//!
//! - [`flux`]: flux models, Jacobians, eigenstructure, hypothesis checks;
//! - [`wave_curves`]: admissible shock loci, rarefaction curves, shock
//!   speeds, Rankine-Hugoniot residuals and Lax admissibility predicates;
//! - [`riemann`]: exact self-similar solutions for all Riemann data at
//!   fixed `eps`, with pointwise sampling;
//! - [`limit`]: eps-sweeps, Richardson extrapolation, and the closed-form
//!   eps -> 0 limit objects (delta shock, contact, vacuum);
//! - [`entropy`]: the explicit entropy pair for the Brio flux and the
//!   delta-coefficient admissibility test for two-shock solutions;
//! - [`weak_form`]: numerical verification of the measure-valued weak
//!   formulation against smooth compactly supported test functions;
//! - [`fv`]: an independent Lax-Friedrichs finite-volume oracle;
//! - [`scenario`]: batch configuration and the command-line front end.
//!
//! Every solver is a pure function of its inputs; models and wave fans are
//! immutable after construction and safe to share across threads.

pub mod entropy;
mod error;
pub mod flux;
pub mod fv;
pub mod limit;
pub mod quad;
pub mod riemann;
mod roots;
pub mod scenario;
pub mod wave_curves;
pub mod weak_form;

pub use error::{Error, Result};
pub use flux::{EigenPair, FluxModel, GKind, State};
pub use riemann::{CaseTag, IntermediateState, RiemannData, WaveFan};
