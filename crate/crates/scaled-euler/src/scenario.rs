//! Batch front end: scenario configuration, subcommand dispatch, and
//! deterministic CSV/JSON emission for external plotting.
//!
//! A scenario is a flat key-value namespace populated from an optional
//! config file (`key = value` lines, `#` comments) and then overridden by
//! `--key value` flags; flags win. Unknown keys are rejected with the line
//! or flag that carried them. Identical configurations produce
//! byte-identical outputs: every algorithm downstream is deterministic and
//! floating-point values are printed with 17 significant digits.
//!
//! Exit codes: 0 success, 1 configuration/validation failure, 2 solver
//! error.

use crate::entropy::{admissibility_verdict, delta_coefficients, EntropyPair};
use crate::error::{Error, Result};
use crate::flux::{FluxModel, FluxTable, State};
use crate::fv::{run_compare, run_until, spike_probe, FieldSnapshot, Grid1D};
use crate::limit::{
    closed_form_limit, default_eps_sweep, extrapolate_limit, spike_mass_check, sweep, CaseLimit,
    ExtrapolationReport,
};
use crate::riemann::{classify, solve, solve_two_shock, CaseTag, RiemannData, Segment};
use crate::weak_form::{
    residual_rho, residual_scale, residual_u, residual_u_literal, run_battery, standard_battery,
    MeasureSolution,
};
use serde::Serialize;
use std::fmt::Write as _;

const HELP: &str = "\
scaled-euler — exact Riemann solutions and vanishing-scale limits for the
scaled Euler system  u_t + (u^2/2 + eps f(rho))_x = 0,
                     rho_t + (u rho + eps g(rho))_x = 0.

USAGE:
    scaled-euler <SUBCOMMAND> [--config FILE] [--key value]...

SUBCOMMANDS:
    validate-flux   check f' > 0, f'' > 0 by sampling and report genuine
                    nonlinearity of both characteristic fields
    solve           build the exact wave fan at a fixed eps and sample it
    sweep           solve across an eps list; emit the sweep CSV
    limit           extrapolate the sweep to eps -> 0 and emit the limit
                    object as JSON
    entropy         entropy-production coefficients of the two shock lines
                    across the eps list, with the admissibility verdict
    weak-residual   verify the closed-form limit against a battery of smooth
                    bumps; also runs the perturbed mutants
    fv-compare      refinement study of the finite-volume oracle against the
                    exact sampler (plus a spike mass probe for two-shock data)
    fv-snapshot     march the finite-volume oracle to t-end and emit the
                    cell averages as `x,u,rho` CSV
    all             full pipeline on one scenario
    help            this text

CONFIGURATION KEYS (file `key = value` lines and/or `--key value` flags;
flags win; unknown keys are rejected):
    flux        brio | quadratic-g | table:<path>     (default brio)
                table files: rows `rho f fprime`, strictly increasing rho
    ul, rhol    left state  (default 1.0, 1.0; rhol > 0)
    ur, rhor    right state (default -1.0, 1.0; rhor > 0)
    eps         scaling parameter for fixed-eps commands (default 1e-4)
    eps-list    comma-separated decreasing list for sweeps
                (default 1e-1,...,1e-7)
    t           sampling/report time > 0 (default 1.0)
    samples     sample points printed by `solve` (default 9)
    x-min,x-max finite-volume domain (default -1.5, 1.5)
    n-cells     coarsest finite-volume resolution (default 400)
    cfl         Courant number in (0,1) (default 0.9)
    t-end       finite-volume end time (default 0.5)
    rho-max     hypothesis-check density range (default 100)
    hyp-samples hypothesis-check sample count (default 64)
    bump-seed   RNG seed of the weak-form bump battery (default 42)
    bump-count  bumps in the battery, >= 4 (default 20)
    weak-tol    weak-form pass tolerance, scaled by ||phi||_C1 and the data
                magnitude (default 1e-8)
    out         output file (default stdout)

OUTPUT COLUMNS (all quantities dimensionless; velocities in units of u):
    sweep CSV `epsilon,u_star,rho_star,s1,s2,l_estimate,weight_estimate`:
        epsilon          scaling parameter of the row
        u_star, rho_star intermediate state between the two shocks
        s1, s2           1- and 2-shock speeds; both tend to (u_l+u_r)/2
        l_estimate       2 eps (f(rho*) - f(rho_l)); tends to (u_l-u_r)^2/4
        weight_estimate  (s2-s1) rho*, the delta-weight slope d(t)/t;
                         tends to (u_l-u_r)(rho_l+rho_r)/2
    fv snapshot CSV `x,u,rho`: cell center, velocity and density averages
    limit JSON keys `c_slope,u_left,u_right,rho_left,rho_right,
                     weight_slope,l,u_on_line,case`:
        c_slope      slope of the discontinuity line x = c t
        weight_slope d(t)/t of the singular density part (0 when absent)
        l            concentration value lim 2 eps (f(rho*) - f(rho_l))
        u_on_line    velocity carried by the line (null when no line)
";

/// Parsed, validated scenario configuration.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub flux: String,
    pub ul: f64,
    pub rhol: f64,
    pub ur: f64,
    pub rhor: f64,
    pub eps: f64,
    pub eps_list: Vec<f64>,
    pub t: f64,
    pub samples: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub n_cells: usize,
    pub cfl: f64,
    pub t_end: f64,
    pub rho_max: f64,
    pub hyp_samples: usize,
    pub bump_seed: u64,
    pub bump_count: usize,
    pub weak_tol: f64,
    pub out: Option<String>,
}

impl Default for Scenario {
    fn default() -> Self {
        Scenario {
            flux: "brio".into(),
            ul: 1.0,
            rhol: 1.0,
            ur: -1.0,
            rhor: 1.0,
            eps: 1e-4,
            eps_list: default_eps_sweep(),
            t: 1.0,
            samples: 9,
            x_min: -1.5,
            x_max: 1.5,
            n_cells: 400,
            cfl: 0.9,
            t_end: 0.5,
            rho_max: 100.0,
            hyp_samples: 64,
            bump_seed: 42,
            bump_count: 20,
            weak_tol: 1e-8,
            out: None,
        }
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("key `{key}`: cannot parse `{value}`")))
}

impl Scenario {
    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "flux" => self.flux = value.to_string(),
            "ul" => self.ul = parse_num(key, value)?,
            "rhol" => self.rhol = parse_num(key, value)?,
            "ur" => self.ur = parse_num(key, value)?,
            "rhor" => self.rhor = parse_num(key, value)?,
            "eps" => self.eps = parse_num(key, value)?,
            "eps-list" => {
                let mut list = Vec::new();
                for part in value.split(',') {
                    list.push(parse_num(key, part.trim())?);
                }
                self.eps_list = list;
            }
            "t" => self.t = parse_num(key, value)?,
            "samples" => self.samples = parse_num(key, value)?,
            "x-min" => self.x_min = parse_num(key, value)?,
            "x-max" => self.x_max = parse_num(key, value)?,
            "n-cells" => self.n_cells = parse_num(key, value)?,
            "cfl" => self.cfl = parse_num(key, value)?,
            "t-end" => self.t_end = parse_num(key, value)?,
            "rho-max" => self.rho_max = parse_num(key, value)?,
            "hyp-samples" => self.hyp_samples = parse_num(key, value)?,
            "bump-seed" => self.bump_seed = parse_num(key, value)?,
            "bump-count" => self.bump_count = parse_num(key, value)?,
            "weak-tol" => self.weak_tol = parse_num(key, value)?,
            "out" => self.out = Some(value.to_string()),
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Parse a config file body; `#` starts a comment, keys use
    /// `key = value` or `key value` form.
    pub fn apply_config(&mut self, text: &str) -> Result<()> {
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = match line.split_once('=') {
                Some((k, v)) => (k.trim(), v.trim()),
                None => line
                    .split_once(char::is_whitespace)
                    .map(|(k, v)| (k.trim(), v.trim()))
                    .ok_or_else(|| {
                        Error::Config(format!("line {}: expected `key = value`", idx + 1))
                    })?,
            };
            self.set(key, value)
                .map_err(|e| Error::Config(format!("line {}: {e}", idx + 1)))?;
        }
        Ok(())
    }

    /// Validate and build the flux model at the scenario's fixed eps.
    pub fn model(&self) -> Result<FluxModel> {
        self.model_at(self.eps)
    }

    pub fn model_at(&self, eps: f64) -> Result<FluxModel> {
        match self.flux.as_str() {
            "brio" => FluxModel::brio(eps),
            "quadratic-g" => FluxModel::quadratic_g(eps),
            other => {
                if let Some(path) = other.strip_prefix("table:") {
                    let text = std::fs::read_to_string(path)?;
                    let mut rho = Vec::new();
                    let mut f = Vec::new();
                    let mut fp = Vec::new();
                    for (idx, raw) in text.lines().enumerate() {
                        let line = raw.split('#').next().unwrap_or("").trim();
                        if line.is_empty() {
                            continue;
                        }
                        let cols: Vec<&str> = line
                            .split([',', ' ', '\t'])
                            .filter(|s| !s.is_empty())
                            .collect();
                        if cols.len() != 3 {
                            return Err(Error::Config(format!(
                                "flux table line {}: expected `rho f fprime`",
                                idx + 1
                            )));
                        }
                        rho.push(parse_num("rho", cols[0])?);
                        f.push(parse_num("f", cols[1])?);
                        fp.push(parse_num("fprime", cols[2])?);
                    }
                    FluxModel::from_table(eps, FluxTable::new(rho, f, fp)?)
                } else {
                    Err(Error::Config(format!(
                        "unknown flux `{other}` (expected brio, quadratic-g or table:<path>)"
                    )))
                }
            }
        }
    }

    pub fn data(&self) -> Result<RiemannData> {
        RiemannData::new(
            State::new(self.ul, self.rhol)?,
            State::new(self.ur, self.rhor)?,
        )
    }

    pub fn grid(&self) -> Result<Grid1D> {
        Grid1D::new(self.x_min, self.x_max, self.n_cells, self.cfl)
    }
}

/// Entry point used by the binary: parse, dispatch, map errors to exit
/// codes (1 validation, 2 solver).
pub fn run(args: &[String]) -> i32 {
    match dispatch(args) {
        Ok(output) => {
            print!("{output}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_)
                | Error::Io(_)
                | Error::NegativeDensity { .. }
                | Error::NonPositiveEpsilon { .. }
                | Error::QuadraticGNeedsQuadraticF
                | Error::NotBrio => 1,
                _ => 2,
            }
        }
    }
}

fn dispatch(args: &[String]) -> Result<String> {
    let Some(cmd) = args.first() else {
        return Ok(HELP.to_string());
    };
    if cmd == "help" || cmd == "--help" || cmd == "-h" {
        return Ok(HELP.to_string());
    }
    let scenario = parse_flags(&args[1..])?;
    let body = match cmd.as_str() {
        "validate-flux" => cmd_validate_flux(&scenario)?,
        "solve" => cmd_solve(&scenario)?,
        "sweep" => cmd_sweep(&scenario)?,
        "limit" => cmd_limit(&scenario)?,
        "entropy" => cmd_entropy(&scenario)?,
        "weak-residual" => cmd_weak_residual(&scenario)?,
        "fv-compare" => cmd_fv_compare(&scenario)?,
        "fv-snapshot" => fv_snapshot_csv(&scenario)?,
        "all" => cmd_all(&scenario)?,
        other => {
            return Err(Error::Config(format!(
                "unknown subcommand `{other}` (try `help`)"
            )))
        }
    };
    match &scenario.out {
        None => Ok(body),
        Some(path) => {
            std::fs::write(path, &body)?;
            Ok(format!("wrote {path}\n"))
        }
    }
}

fn parse_flags(args: &[String]) -> Result<Scenario> {
    let mut scenario = Scenario::default();
    // config file first, then flag overrides in order
    let mut overrides: Vec<(String, String)> = Vec::new();
    let mut iter = args.iter();
    while let Some(arg) = iter.next() {
        let key = arg
            .strip_prefix("--")
            .ok_or_else(|| Error::Config(format!("expected `--key`, got `{arg}`")))?;
        let value = iter
            .next()
            .ok_or_else(|| Error::Config(format!("flag `--{key}` is missing its value")))?;
        if key == "config" {
            let text = std::fs::read_to_string(value)?;
            scenario.apply_config(&text)?;
        } else {
            overrides.push((key.to_string(), value.to_string()));
        }
    }
    for (key, value) in &overrides {
        scenario.set(key, value)?;
    }
    Ok(scenario)
}

fn fmt_state(s: &State) -> String {
    format!("u = {:.10e}, rho = {:.10e}", s.u, s.rho)
}

fn cmd_validate_flux(sc: &Scenario) -> Result<String> {
    let m = sc.model()?;
    let report = m.validate_hypotheses(sc.rho_max, sc.hyp_samples.max(3));
    let mut out = String::new();
    writeln!(out, "flux: {}  eps = {:.10e}", sc.flux, sc.eps).unwrap();
    if let Some((rho, value, kind)) = &report.first_violation {
        writeln!(
            out,
            "hypotheses: FAIL at rho = {rho:.10e} (value {value:.10e}, {kind:?})"
        )
        .unwrap();
        return Err(Error::Config(format!(
            "flux hypotheses violated at rho = {rho}: {kind:?}"
        )));
    }
    writeln!(
        out,
        "hypotheses: pass ({} log-spaced samples on (0, {}])",
        report.samples, sc.rho_max
    )
    .unwrap();
    let grid: Vec<State> = (1..=5)
        .flat_map(|i| {
            (0..3).map(move |j| State {
                u: -2.0 + 1.2 * j as f64,
                rho: 0.2 * i as f64 * i as f64,
            })
        })
        .collect();
    let gnl = m.check_genuine_nonlinearity(&grid);
    writeln!(
        out,
        "genuine nonlinearity: {} ({} states probed)",
        if gnl.all_genuinely_nonlinear {
            "both fields"
        } else {
            "VIOLATED"
        },
        gnl.entries.len()
    )
    .unwrap();
    for e in gnl.entries.iter().take(3) {
        writeln!(
            out,
            "  at {}: field-1 slope {:.6e}, field-2 slope {:.6e}",
            fmt_state(&e.state),
            e.dlambda1_dot_r1,
            e.dlambda2_dot_r2
        )
        .unwrap();
    }
    if !gnl.all_genuinely_nonlinear {
        return Err(Error::Config("genuine nonlinearity violated".into()));
    }
    Ok(out)
}

fn cmd_solve(sc: &Scenario) -> Result<String> {
    let m = sc.model()?;
    let data = sc.data()?;
    let fan = solve(&m, &data)?;
    let mut out = String::new();
    writeln!(out, "case: {}", fan.case).unwrap();
    writeln!(out, "eps: {:.10e}", m.epsilon()).unwrap();
    if let Some(mid) = fan.plateau() {
        writeln!(
            out,
            "intermediate state: u* = {:.16e}, rho* = {:.16e}",
            mid.u_star, mid.rho_star
        )
        .unwrap();
    }
    writeln!(out, "segments:").unwrap();
    for seg in &fan.segments {
        match seg {
            Segment::Constant {
                state,
                xi_lo,
                xi_hi,
            } => {
                writeln!(
                    out,
                    "  constant   xi in ({xi_lo:.6e}, {xi_hi:.6e}]  {}",
                    fmt_state(state)
                )
                .unwrap();
            }
            Segment::Shock { family, speed, .. } => {
                writeln!(out, "  shock      family {family:?} at xi = {speed:.16e}").unwrap();
            }
            Segment::Rarefaction {
                family,
                xi_lo,
                xi_hi,
                ..
            } => {
                writeln!(
                    out,
                    "  rarefaction family {family:?} xi in ({xi_lo:.16e}, {xi_hi:.16e}]"
                )
                .unwrap();
            }
            Segment::Vacuum { xi_lo, xi_hi } => {
                writeln!(out, "  vacuum     xi in ({xi_lo:.16e}, {xi_hi:.16e}]").unwrap();
            }
        }
    }
    // sample across the wave span at time t
    let speeds = fan.wave_speeds();
    let (lo, hi) = if speeds.is_empty() {
        (-1.0, 1.0)
    } else {
        let w = (speeds[speeds.len() - 1] - speeds[0]).max(1e-3);
        (speeds[0] - 0.25 * w, speeds[speeds.len() - 1] + 0.25 * w)
    };
    writeln!(out, "samples at t = {}:", sc.t).unwrap();
    writeln!(out, "x,u,rho").unwrap();
    let n = sc.samples.max(2);
    for i in 0..n {
        let xi = lo + (hi - lo) * i as f64 / (n - 1) as f64;
        let x = xi * sc.t;
        let s = fan.sample(x, sc.t);
        writeln!(out, "{:.16e},{:.16e},{:.16e}", x, s.u, s.rho).unwrap();
    }
    Ok(out)
}

fn cmd_sweep(sc: &Scenario) -> Result<String> {
    let m = sc.model()?;
    let data = sc.data()?;
    let result = sweep(&m, &data, &sc.eps_list)?;
    let mut out = result.to_csv();
    for skip in &result.skipped {
        out.push_str(&format!(
            "# skipped epsilon = {:.10e}: {}\n",
            skip.epsilon, skip.reason
        ));
    }
    Ok(out)
}

#[derive(Serialize)]
struct LimitJson {
    c_slope: Option<f64>,
    u_left: f64,
    u_right: f64,
    rho_left: f64,
    rho_right: f64,
    weight_slope: f64,
    l: f64,
    u_on_line: Option<f64>,
    case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    extrapolation: Option<ExtrapolationReport>,
}

fn cmd_limit(sc: &Scenario) -> Result<String> {
    let data = sc.data()?;
    let closed = closed_form_limit(&data);
    let json = match closed {
        CaseLimit::DeltaShock(_) => {
            let m = sc.model()?;
            let swept = sweep(&m, &data, &sc.eps_list)?;
            let report = extrapolate_limit(&swept.records, &data)?;
            LimitJson {
                c_slope: Some(report.limit.c_slope),
                u_left: report.limit.u_left,
                u_right: report.limit.u_right,
                rho_left: report.limit.rho_left,
                rho_right: report.limit.rho_right,
                weight_slope: report.limit.weight_slope,
                l: report.limit.l,
                u_on_line: Some(report.limit.u_on_line),
                case: "delta-shock".into(),
                extrapolation: Some(report),
            }
            .finish()
        }
        CaseLimit::Contact(c) => LimitJson {
            c_slope: Some(c.speed),
            u_left: c.u,
            u_right: c.u,
            rho_left: c.rho_left,
            rho_right: c.rho_right,
            weight_slope: 0.0,
            l: 0.0,
            u_on_line: Some(c.u),
            case: "contact".into(),
            extrapolation: None,
        }
        .finish(),
        CaseLimit::Vacuum(v) => LimitJson {
            c_slope: None,
            u_left: v.u_left,
            u_right: v.u_right,
            rho_left: v.rho_left,
            rho_right: v.rho_right,
            weight_slope: 0.0,
            l: 0.0,
            u_on_line: None,
            case: "vacuum".into(),
            extrapolation: None,
        }
        .finish(),
    };
    Ok(json)
}

impl LimitJson {
    fn finish(self) -> String {
        let mut s = serde_json::to_string_pretty(&self).expect("limit JSON serializes");
        s.push('\n');
        s
    }
}

fn cmd_entropy(sc: &Scenario) -> Result<String> {
    let data = sc.data()?;
    let mut out = String::from("epsilon,coeff1,coeff2,admissible\n");
    for &eps in &sc.eps_list {
        let m = sc.model_at(eps)?;
        let pair = EntropyPair::for_model(&m)?;
        let _ = pair; // constructed to enforce the Brio restriction early
        match solve_two_shock(&m, &data) {
            Ok((mid, _)) => {
                let report = delta_coefficients(&m, &data, &mid)?;
                out.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e},{}\n",
                    eps,
                    report.coeff1,
                    report.coeff2,
                    admissibility_verdict(&report)
                ));
            }
            Err(e) => out.push_str(&format!("# skipped epsilon = {eps:.10e}: {e}\n")),
        }
    }
    let limit = {
        let du = sc.ul - sc.ur;
        (sc.ur - sc.ul) * du * du / 24.0
    };
    out.push_str(&format!("# coefficient limit: {limit:.16e}\n"));
    Ok(out)
}

fn cmd_weak_residual(sc: &Scenario) -> Result<String> {
    let data = sc.data()?;
    let closed = closed_form_limit(&data);
    let sol = MeasureSolution::from_limit(&closed);
    let center = match &closed {
        CaseLimit::DeltaShock(d) => d.c_slope,
        CaseLimit::Contact(c) => c.speed,
        CaseLimit::Vacuum(v) => 0.5 * (v.u_left + v.u_right),
    };
    let bumps = standard_battery(sc.bump_seed, sc.bump_count.max(4), center);
    let results = run_battery(&sol, &data, &bumps);
    let mut out =
        String::from("bump,x0,t0,rx,rt,residual_u,residual_u_literal,residual_rho,scale,pass\n");
    let mut max_ratio: f64 = 0.0;
    for (i, r) in results.iter().enumerate() {
        let tol = sc.weak_tol * r.scale;
        let pass = r.residual_u.abs() <= tol && r.residual_rho.abs() <= tol;
        max_ratio = max_ratio
            .max(r.residual_u.abs() / tol)
            .max(r.residual_rho.abs() / tol);
        out.push_str(&format!(
            "{},{:.6e},{:.6e},{:.6e},{:.6e},{:.16e},{:.16e},{:.16e},{:.16e},{}\n",
            i,
            r.phi.x0,
            r.phi.t0,
            r.phi.rx,
            r.phi.rt,
            r.residual_u,
            r.residual_u_literal,
            r.residual_rho,
            r.scale,
            pass
        ));
    }
    out.push_str(&format!(
        "# max residual/tolerance ratio over battery: {max_ratio:.6e}\n"
    ));
    if let CaseLimit::DeltaShock(d) = &closed {
        // detection power of the battery against perturbed solutions
        let mutants = [
            (
                "speed+5%",
                MeasureSolution::delta_with(
                    d,
                    d.c_slope + 0.05 * (sc.ul - sc.ur).abs(),
                    d.weight_slope,
                    d.u_on_line,
                ),
            ),
            (
                "weight+5%",
                MeasureSolution::delta_with(d, d.c_slope, d.weight_slope * 1.05, d.u_on_line),
            ),
            (
                "line-u+0.1",
                MeasureSolution::delta_with(d, d.c_slope, d.weight_slope, d.u_on_line + 0.1),
            ),
        ];
        for (name, mutant) in &mutants {
            let mut worst: f64 = 0.0;
            for phi in &bumps {
                let tol = sc.weak_tol * residual_scale(phi, &data);
                worst = worst
                    .max(residual_u(mutant, &data, phi).abs() / tol)
                    .max(residual_rho(mutant, &data, phi).abs() / tol);
            }
            out.push_str(&format!(
                "# mutant {name}: max residual/tolerance = {worst:.6e} (detected: {})\n",
                worst >= 10.0
            ));
        }
        let phi = &bumps[0];
        out.push_str(&format!(
            "# literal velocity form on bump 0 (reported, not gated): {:.16e}\n",
            residual_u_literal(&sol, &data, phi)
        ));
    }
    Ok(out)
}

fn cmd_fv_compare(sc: &Scenario) -> Result<String> {
    let m = sc.model()?;
    let data = sc.data()?;
    let grid = sc.grid()?;
    let report = run_compare(&m, &data, &grid, sc.t_end)?;
    let mut out = String::from("n_cells,l1_u,l1_rho\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{:.16e},{:.16e}\n",
            row.n_cells, row.l1_u, row.l1_rho
        ));
    }
    for (i, order) in report.orders.iter().enumerate() {
        out.push_str(&format!("# empirical order level {i}: {order:.6}\n"));
    }
    if classify(&data) == CaseTag::TwoShock {
        match spike_probe(&m, &data, &grid, sc.t_end) {
            Ok(probe) => out.push_str(&format!(
                "# spike probe: window mass {:.10e} vs delta weight {:.10e} (rel dev {:.3e}, {} clipped cells)\n",
                probe.window_mass, probe.target, probe.rel_deviation, probe.clip_events
            )),
            Err(e) => out.push_str(&format!("# spike probe skipped: {e}\n")),
        }
    }
    Ok(out)
}

fn cmd_all(sc: &Scenario) -> Result<String> {
    let mut out = String::new();
    out.push_str("== validate-flux ==\n");
    out.push_str(&cmd_validate_flux(sc)?);
    out.push_str("\n== solve ==\n");
    out.push_str(&cmd_solve(sc)?);
    let data = sc.data()?;
    if classify(&data) == CaseTag::TwoShock {
        out.push_str("\n== sweep ==\n");
        out.push_str(&cmd_sweep(sc)?);
        out.push_str("\n== limit ==\n");
        out.push_str(&cmd_limit(sc)?);
        if sc.flux == "brio" {
            out.push_str("\n== entropy ==\n");
            out.push_str(&cmd_entropy(sc)?);
        }
        out.push_str("\n== spike mass ==\n");
        let m = sc.model()?;
        let swept = sweep(&m, &data, &sc.eps_list)?;
        let report = spike_mass_check(&swept.records, &data, sc.t);
        out.push_str("epsilon,mass,rel_deviation\n");
        for row in &report.rows {
            out.push_str(&format!(
                "{:.16e},{:.16e},{:.16e}\n",
                row.epsilon, row.mass, row.rel_deviation
            ));
        }
    } else {
        out.push_str("\n== limit ==\n");
        out.push_str(&cmd_limit(sc)?);
    }
    out.push_str("\n== weak-residual ==\n");
    out.push_str(&cmd_weak_residual(sc)?);
    out.push_str("\n== fv-compare ==\n");
    out.push_str(&cmd_fv_compare(sc)?);
    Ok(out)
}

/// Export one finite-volume snapshot (used by examples and tests).
pub fn fv_snapshot_csv(sc: &Scenario) -> Result<String> {
    let m = sc.model()?;
    let data = sc.data()?;
    let grid = sc.grid()?;
    let snap: FieldSnapshot = run_until(&m, &data, &grid, sc.t_end)?;
    Ok(snap.to_csv(&grid))
}
