//! Independent finite-volume oracle: first-order conservative global
//! Lax-Friedrichs on the conserved pair `(u, rho)` with physical flux
//! `(u^2/2 + eps f(rho), u rho + eps g(rho))`.
//!
//! The velocity equation is already in divergence form, so `u` is evolved
//! as a conserved quantity. The scheme is deliberately diffusive: the exact
//! solver is the reference, so independence from the code under test
//! matters more than sharpness. Boundaries are outflow (copied ghost
//! cells); Riemann data is constant far-field within the simulated window,
//! and a wave reaching the boundary is an error, not a silent bias.
//!
//! Density undershoots below `-1e-12` never happen with this flux; small
//! negative round-off is clipped to zero and counted in the snapshot
//! diagnostics.

use crate::error::{Error, Result};
use crate::flux::{FluxModel, State};
use crate::riemann::{classify, solve, solve_two_shock, CaseTag, RiemannData, WaveFan};
use serde::Serialize;

/// Uniform 1D grid with a Courant number for time-step selection.
#[derive(Debug, Clone, Copy)]
pub struct Grid1D {
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    pub cfl: f64,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_cells: usize, cfl: f64) -> Result<Self> {
        let span_ok = x_max > x_min;
        let cfl_ok = cfl > 0.0 && cfl < 1.0;
        if !span_ok || n_cells < 16 || !cfl_ok {
            return Err(Error::Config(format!(
                "invalid grid: [{x_min}, {x_max}] with {n_cells} cells, cfl {cfl} \
                 (need x_max > x_min, n_cells >= 16, cfl in (0,1))"
            )));
        }
        Ok(Grid1D {
            x_min,
            x_max,
            n_cells,
            cfl,
        })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.n_cells as f64
    }

    pub fn center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx()
    }

    fn refined(&self, factor: usize) -> Grid1D {
        Grid1D {
            n_cells: self.n_cells * factor,
            ..*self
        }
    }
}

/// Cell averages at one time level.
#[derive(Debug, Clone)]
pub struct FieldSnapshot {
    pub t: f64,
    pub u_cells: Vec<f64>,
    pub rho_cells: Vec<f64>,
    /// Number of density cells clipped to zero so far (diagnostic).
    pub clip_events: usize,
}

impl FieldSnapshot {
    /// Cell-centered projection of Riemann data at `t = 0`.
    pub fn from_riemann(data: &RiemannData, grid: &Grid1D) -> Self {
        let mut u = Vec::with_capacity(grid.n_cells);
        let mut rho = Vec::with_capacity(grid.n_cells);
        for i in 0..grid.n_cells {
            let s = if grid.center(i) < 0.0 {
                data.left
            } else {
                data.right
            };
            u.push(s.u);
            rho.push(s.rho);
        }
        FieldSnapshot {
            t: 0.0,
            u_cells: u,
            rho_cells: rho,
            clip_events: 0,
        }
    }

    pub fn total_mass(&self, grid: &Grid1D) -> f64 {
        self.rho_cells.iter().sum::<f64>() * grid.dx()
    }

    /// `x,u,rho` rows with full-precision values.
    pub fn to_csv(&self, grid: &Grid1D) -> String {
        let mut out = String::from("x,u,rho\n");
        for i in 0..grid.n_cells {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e}\n",
                grid.center(i),
                self.u_cells[i],
                self.rho_cells[i]
            ));
        }
        out
    }

    fn max_speed(&self, m: &FluxModel) -> f64 {
        let mut alpha: f64 = 0.0;
        for i in 0..self.u_cells.len() {
            let (l1, l2) = m.eigenvalues(&State {
                u: self.u_cells[i],
                rho: self.rho_cells[i].max(0.0),
            });
            alpha = alpha.max(l1.abs()).max(l2.abs());
        }
        alpha
    }
}

/// One conservative Lax-Friedrichs step with `dt = cfl * dx / max|lambda|`.
///
/// Total density is conserved to round-off before boundary outflow; the
/// post-step wave speed is re-audited and a >5% excess over the CFL
/// assumption is an error.
pub fn step(m: &FluxModel, snap: &FieldSnapshot, grid: &Grid1D) -> Result<FieldSnapshot> {
    let alpha = snap.max_speed(m).max(1e-12);
    step_with_dt(m, snap, grid, grid.cfl * grid.dx() / alpha, alpha)
}

fn step_with_dt(
    m: &FluxModel,
    snap: &FieldSnapshot,
    grid: &Grid1D,
    dt: f64,
    alpha: f64,
) -> Result<FieldSnapshot> {
    let n = grid.n_cells;
    let dx = grid.dx();
    let nu = dt / dx;
    // fluxes at cells, with copied ghost values at both ends
    let cell_flux = |i: isize| -> [f64; 2] {
        let j = i.clamp(0, n as isize - 1) as usize;
        m.flux(&State {
            u: snap.u_cells[j],
            rho: snap.rho_cells[j],
        })
    };
    let cell = |i: isize| -> [f64; 2] {
        let j = i.clamp(0, n as isize - 1) as usize;
        [snap.u_cells[j], snap.rho_cells[j]]
    };
    let interface_flux = |i: isize| -> [f64; 2] {
        // global Lax-Friedrichs: 0.5 (F_i + F_{i+1}) - (alpha/2)(U_{i+1} - U_i)
        let fl = cell_flux(i);
        let fr = cell_flux(i + 1);
        let ul = cell(i);
        let ur = cell(i + 1);
        [
            0.5 * (fl[0] + fr[0]) - 0.5 * alpha * (ur[0] - ul[0]),
            0.5 * (fl[1] + fr[1]) - 0.5 * alpha * (ur[1] - ul[1]),
        ]
    };
    let mut u_next = Vec::with_capacity(n);
    let mut rho_next = Vec::with_capacity(n);
    let mut clip_events = snap.clip_events;
    let mut left_flux = interface_flux(-1);
    for i in 0..n {
        let right_flux = interface_flux(i as isize);
        u_next.push(snap.u_cells[i] - nu * (right_flux[0] - left_flux[0]));
        let mut rho = snap.rho_cells[i] - nu * (right_flux[1] - left_flux[1]);
        if rho < 0.0 {
            debug_assert!(
                rho > -1e-12,
                "density undershoot {rho} beyond clip tolerance"
            );
            rho = 0.0;
            clip_events += 1;
        }
        rho_next.push(rho);
        left_flux = right_flux;
    }
    let next = FieldSnapshot {
        t: snap.t + dt,
        u_cells: u_next,
        rho_cells: rho_next,
        clip_events,
    };
    let post_alpha = next.max_speed(m);
    if post_alpha * dt / dx > grid.cfl * 1.05 {
        return Err(Error::CflViolation {
            assumed: alpha,
            found: post_alpha,
        });
    }
    Ok(next)
}

/// March the Riemann data to `t_end`, final step trimmed to land exactly.
/// Errors with [`Error::DomainOverflow`] if a wave contaminates the
/// outermost cells.
pub fn run_until(
    m: &FluxModel,
    data: &RiemannData,
    grid: &Grid1D,
    t_end: f64,
) -> Result<FieldSnapshot> {
    assert!(t_end > 0.0);
    let mut snap = FieldSnapshot::from_riemann(data, grid);
    while snap.t < t_end {
        let alpha = snap.max_speed(m).max(1e-12);
        let dt = (grid.cfl * grid.dx() / alpha).min(t_end - snap.t);
        snap = step_with_dt(m, &snap, grid, dt, alpha)?;
    }
    let edge_tol = 1e-8 * (1.0 + data.left.u.abs() + data.left.rho);
    if (snap.u_cells[0] - data.left.u).abs() > edge_tol
        || (snap.rho_cells[0] - data.left.rho).abs() > edge_tol
    {
        return Err(Error::DomainOverflow { x: grid.x_min });
    }
    let n = grid.n_cells;
    if (snap.u_cells[n - 1] - data.right.u).abs() > edge_tol
        || (snap.rho_cells[n - 1] - data.right.rho).abs() > edge_tol
    {
        return Err(Error::DomainOverflow { x: grid.x_max });
    }
    Ok(snap)
}

/// Piecewise-linear tabulation of a rarefaction fan profile in `xi`,
/// built once per comparison so cell averaging does not re-run the
/// fan inversion per query.
struct FanTable {
    xi: Vec<f64>,
    u: Vec<f64>,
    rho: Vec<f64>,
}

impl FanTable {
    fn build(
        m: &FluxModel,
        family: crate::wave_curves::Family,
        anchor: &State,
        rho_lo: f64,
        rho_hi: f64,
    ) -> FanTable {
        use crate::wave_curves::rarefaction_u_of_rho;
        const POINTS: usize = 2048;
        // geometric spacing once the bracket spans orders of magnitude
        // (family-2 fans reaching toward the vacuum), uniform otherwise
        let geometric = rho_lo > 0.0 && rho_hi / rho_lo > 1e3;
        let mut rhos: Vec<f64> = (0..=POINTS)
            .map(|j| {
                let s = j as f64 / POINTS as f64;
                if geometric {
                    rho_lo * (rho_hi / rho_lo).powf(s)
                } else {
                    rho_lo + (rho_hi - rho_lo) * s
                }
            })
            .collect();
        if family == crate::wave_curves::Family::One {
            rhos.reverse(); // xi ascends as rho descends on family 1
        }
        let mut xi = Vec::with_capacity(rhos.len());
        let mut u = Vec::with_capacity(rhos.len());
        let mut rho_col = Vec::with_capacity(rhos.len());
        for &r in &rhos {
            let uu = if family == crate::wave_curves::Family::Two && r == 0.0 {
                unreachable!("family-2 tables keep rho > 0")
            } else {
                rarefaction_u_of_rho(m, family, anchor, r).expect("fan table stays on the curve")
            };
            let (l1, l2) = m.eigenvalues(&State { u: uu, rho: r });
            xi.push(match family {
                crate::wave_curves::Family::One => l1,
                crate::wave_curves::Family::Two => l2,
            });
            u.push(uu);
            rho_col.push(r);
        }
        FanTable {
            xi,
            u,
            rho: rho_col,
        }
    }

    /// Exact integrals of the piecewise-linear interpolants over
    /// `[a, b]` in `xi` (clipped to the table range).
    fn integrate(&self, a: f64, b: f64) -> (f64, f64) {
        let lo = a.max(self.xi[0]);
        let hi = b.min(*self.xi.last().unwrap());
        if hi <= lo {
            return (0.0, 0.0);
        }
        let at = |x: f64| -> (f64, f64) {
            let j = match self.xi.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
                Ok(j) => return (self.u[j], self.rho[j]),
                Err(j) => j.clamp(1, self.xi.len() - 1),
            };
            let w = (x - self.xi[j - 1]) / (self.xi[j] - self.xi[j - 1]);
            (
                self.u[j - 1] + w * (self.u[j] - self.u[j - 1]),
                self.rho[j - 1] + w * (self.rho[j] - self.rho[j - 1]),
            )
        };
        let mut int_u = 0.0;
        let mut int_rho = 0.0;
        let mut x_prev = lo;
        let (mut u_prev, mut r_prev) = at(lo);
        let j_start = self.xi.partition_point(|v| *v <= lo);
        for j in j_start..self.xi.len() {
            if self.xi[j] >= hi {
                break;
            }
            let w = self.xi[j] - x_prev;
            int_u += 0.5 * w * (u_prev + self.u[j]);
            int_rho += 0.5 * w * (r_prev + self.rho[j]);
            x_prev = self.xi[j];
            u_prev = self.u[j];
            r_prev = self.rho[j];
        }
        let (u_hi, r_hi) = at(hi);
        let w = hi - x_prev;
        int_u += 0.5 * w * (u_prev + u_hi);
        int_rho += 0.5 * w * (r_prev + r_hi);
        (int_u, int_rho)
    }
}

/// Cell averages of the exact solution on a grid at time `t`, computed
/// segment by segment: constants and the `x/t` vacuum integrate in closed
/// form, fans through their tabulated profiles.
pub fn exact_cell_averages(fan: &WaveFan, grid: &Grid1D, t: f64) -> (Vec<f64>, Vec<f64>) {
    use crate::riemann::Segment;
    let m = fan.model();
    let tables: Vec<Option<FanTable>> = fan
        .segments
        .iter()
        .map(|seg| match seg {
            Segment::Rarefaction {
                family,
                anchor,
                rho_lo,
                rho_hi,
                ..
            } => Some(FanTable::build(m, *family, anchor, *rho_lo, *rho_hi)),
            _ => None,
        })
        .collect();
    let dx = grid.dx();
    let mut u_out = Vec::with_capacity(grid.n_cells);
    let mut rho_out = Vec::with_capacity(grid.n_cells);
    for i in 0..grid.n_cells {
        let a = (grid.x_min + i as f64 * dx) / t;
        let b = (grid.x_min + (i + 1) as f64 * dx) / t;
        let mut int_u = 0.0;
        let mut int_rho = 0.0;
        for (seg, table) in fan.segments.iter().zip(&tables) {
            match seg {
                Segment::Constant {
                    state,
                    xi_lo,
                    xi_hi,
                } => {
                    let lo = a.max(*xi_lo);
                    let hi = b.min(*xi_hi);
                    if hi > lo {
                        int_u += state.u * (hi - lo);
                        int_rho += state.rho * (hi - lo);
                    }
                }
                Segment::Vacuum { xi_lo, xi_hi } => {
                    let lo = a.max(*xi_lo);
                    let hi = b.min(*xi_hi);
                    if hi > lo {
                        // u = xi inside the vacuum
                        int_u += 0.5 * (hi * hi - lo * lo);
                    }
                }
                Segment::Rarefaction { xi_lo, xi_hi, .. } => {
                    let lo = a.max(*xi_lo);
                    let hi = b.min(*xi_hi);
                    if hi > lo {
                        let (iu, irho) = table.as_ref().unwrap().integrate(lo, hi);
                        int_u += iu;
                        int_rho += irho;
                    }
                }
                Segment::Shock { .. } => {}
            }
        }
        // xi-integral back to the x-average over the cell
        u_out.push(int_u * t / dx);
        rho_out.push(int_rho * t / dx);
    }
    (u_out, rho_out)
}

/// Discrete L1 distances between a snapshot and the cell-averaged exact
/// solution at the same time.
pub fn l1_distance(snap: &FieldSnapshot, fan: &WaveFan, grid: &Grid1D) -> (f64, f64) {
    let (u_exact, rho_exact) = exact_cell_averages(fan, grid, snap.t);
    let dx = grid.dx();
    let mut du = 0.0;
    let mut drho = 0.0;
    for i in 0..grid.n_cells {
        du += (snap.u_cells[i] - u_exact[i]).abs() * dx;
        drho += (snap.rho_cells[i] - rho_exact[i]).abs() * dx;
    }
    (du, drho)
}

/// One refinement level of a comparison run.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CompareRow {
    pub n_cells: usize,
    pub l1_u: f64,
    pub l1_rho: f64,
}

/// Refinement study of the scheme against the exact sampler: three grids
/// (n, 2n, 4n) and the empirical orders between consecutive levels.
#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub t_end: f64,
    pub rows: Vec<CompareRow>,
    /// `log2` ratios of combined L1 errors between consecutive levels.
    pub orders: Vec<f64>,
}

/// Run the oracle on `grid`, `2x` and `4x` refinements and measure L1
/// distances to the exact solution at `t_end`.
pub fn run_compare(
    m: &FluxModel,
    data: &RiemannData,
    grid: &Grid1D,
    t_end: f64,
) -> Result<CompareReport> {
    let fan = solve(m, data)?;
    let mut rows = Vec::with_capacity(3);
    for factor in [1usize, 2, 4] {
        let g = grid.refined(factor);
        let snap = run_until(m, data, &g, t_end)?;
        let (l1_u, l1_rho) = l1_distance(&snap, &fan, &g);
        rows.push(CompareRow {
            n_cells: g.n_cells,
            l1_u,
            l1_rho,
        });
    }
    let orders = rows
        .windows(2)
        .map(|w| {
            let coarse = w[0].l1_u + w[0].l1_rho;
            let fine = w[1].l1_u + w[1].l1_rho;
            (coarse / fine).log2()
        })
        .collect();
    Ok(CompareReport {
        t_end,
        rows,
        orders,
    })
}

/// Mass audit of the density spike that forms between the two shocks of a
/// two-shock solution at small `eps`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpikeReport {
    pub t_end: f64,
    /// Window half-width around the shock line, `5 (s2 - s1) t_end`.
    pub window_half_width: f64,
    /// Density mass in the window in excess of the ambient background.
    pub window_mass: f64,
    /// Closed-form delta weight `d(t_end)`.
    pub target: f64,
    pub rel_deviation: f64,
    pub clip_events: usize,
}

/// Integrate the density over a window of width `10 (s2 - s1) t_end`
/// centered on the shock line and compare the excess over the background
/// (`rho_l` left of the line, `rho_r` right of it) with the delta weight
/// `d(t_end) = (u_l - u_r)(rho_l + rho_r) t_end / 2`.
///
/// Spike resolution demands at least 8 cells across the inter-shock gap;
/// coarser configurations are refused.
pub fn spike_probe(
    m: &FluxModel,
    data: &RiemannData,
    grid: &Grid1D,
    t_end: f64,
) -> Result<SpikeReport> {
    if classify(data) != CaseTag::TwoShock {
        return Err(Error::NotTwoShock);
    }
    let (_, fan) = solve_two_shock(m, data)?;
    let speeds = fan.wave_speeds();
    let gap = (speeds[1] - speeds[0]) * t_end;
    let cells_in_gap = gap / grid.dx();
    if cells_in_gap < 8.0 {
        return Err(Error::UnderResolved { cells_in_gap });
    }
    let c_slope = 0.5 * (data.left.u + data.right.u);
    let center = c_slope * t_end;
    let half_width = 5.0 * gap;
    let snap = run_until(m, data, grid, t_end)?;
    let dx = grid.dx();
    let mut mass = 0.0;
    for i in 0..grid.n_cells {
        let x = grid.center(i);
        if (x - center).abs() <= half_width {
            let background = if x < center {
                data.left.rho
            } else {
                data.right.rho
            };
            mass += (snap.rho_cells[i] - background) * dx;
        }
    }
    let target = 0.5 * (data.left.u - data.right.u) * (data.left.rho + data.right.rho) * t_end;
    Ok(SpikeReport {
        t_end,
        window_half_width: half_width,
        window_mass: mass,
        target,
        rel_deviation: (mass - target).abs() / target.abs().max(f64::MIN_POSITIVE),
        clip_events: snap.clip_events,
    })
}
