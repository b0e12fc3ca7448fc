use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde_json::{json, Value};

use crate::lab::table::{float, Table};
use crate::lab::{
    boost_check, evolve, field_mismatch, fourth_order_residual, measure_dispersion, nr_limit_study, particle_branch, BoostKind, Equation,
    Grid1D, LabError, Packet, PhysicalParams, WaveState,
};
use crate::solver::{derive_galilean, derive_lorentz, derive_rotation, Derivation, SolverError};

use super::config::Config;
use super::CliError;

/// A file body before the manifest is attached.
#[derive(Clone, Debug, PartialEq)]
pub enum Body {
    Json(Value),
    Text(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub body: Body,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct JobOutput {
    pub artifacts: Vec<Artifact>,
    pub summary: Vec<String>,
    /// Quantitative failures; empty means pass.
    pub failures: Vec<String>,
}

impl JobOutput {
    fn json(&mut self, name: String, v: Value) {
        self.artifacts.push(Artifact { name, body: Body::Json(v) });
    }

    fn text(&mut self, name: String, t: String) {
        self.artifacts.push(Artifact { name, body: Body::Text(t) });
    }

    fn expect(&mut self, ok: bool, what: String) {
        self.summary.push(format!("{} {what}", if ok { "PASS" } else { "FAIL" }));
        if !ok {
            self.failures.push(what);
        }
    }
}

pub const VERIFY_CHECKS: [&str; 4] = ["boost", "dispersion", "nr-limit", "squared-op"];

const PHYSICS: [&str; 6] = ["n", "length", "m", "hbar", "c", "potential"];

/// Keys accepted by each config-driven command.
pub fn allowed_keys(command: &str) -> Vec<&'static str> {
    let extra: &[&'static str] = match command {
        "dispersion" => &["equation", "k", "samples", "tolerance"],
        "boost" => &["equation", "v", "beta", "sigma", "x0", "t", "tolerance", "match_tolerance"],
        "nr-limit" => &["c_list", "sigma", "k0", "t", "slope", "slope_tolerance"],
        "squared-op" => &["sigma", "k0", "times", "h", "omega", "tolerance", "field_tolerance"],
        "simulate" => &["equation", "sigma", "x0", "k0", "t", "frames"],
        _ => &[],
    };
    PHYSICS.iter().chain(extra).copied().collect()
}

fn lab(e: LabError) -> CliError {
    match e {
        LabError::Degenerate { .. } => CliError::Failure(e.to_string()),
        _ => CliError::Usage(e.to_string()),
    }
}

fn grid(c: &Config) -> Result<Grid1D, CliError> {
    Grid1D::new(c.f64_or("length", 32.0 * PI)?, c.usize_or("n", 1024)?).map_err(lab)
}

fn params(c: &Config) -> Result<PhysicalParams, CliError> {
    Ok(PhysicalParams {
        m: c.f64_or("m", 1.0)?,
        hbar: c.f64_or("hbar", 1.0)?,
        c: c.f64_or("c", 10.0)?,
        potential: c.f64_or("potential", 0.0)?,
        v: 0.0,
    })
}

fn equation(c: &Config, default: &str) -> Result<Equation, CliError> {
    c.str_or("equation", default).parse().map_err(|_| c.reject("equation", "equation must be schrodinger, klein_gordon or lcse"))
}

fn derivations(symmetry: &str, order: u32) -> Result<Vec<Derivation>, CliError> {
    let unsupported = |e: SolverError| match e {
        SolverError::UnsupportedOrder { .. } => CliError::Usage(e.to_string()),
        other => CliError::Failure(other.to_string()),
    };
    match (symmetry, order) {
        ("rotation", _) => Ok(vec![derive_rotation(order).map_err(unsupported)?]),
        ("galilean", _) => Ok(vec![derive_galilean(order).map_err(unsupported)?]),
        ("lorentz", 2) => {
            let l = derive_lorentz().map_err(unsupported)?;
            Ok(vec![l.klein_gordon, l.lcse])
        }
        ("lorentz", _) => Err(CliError::Usage(format!("lorentz supports order 2 only, not {order}"))),
        _ => Err(CliError::Usage(format!("unknown symmetry {symmetry:?}"))),
    }
}

pub fn derive(symmetry: &str, order: u32) -> Result<JobOutput, CliError> {
    let ders = derivations(symmetry, order)?;
    let mut out = JobOutput::default();
    let stem = format!("derive-{symmetry}-{order}");
    let mut reports = Vec::new();
    let mut trace = String::new();
    for d in &ders {
        let r = &d.report;
        let values: BTreeMap<&str, String> = d.values.iter().map(|(k, v)| (k.as_str(), v.to_string())).collect();
        reports.push(json!({ "report": r, "values": values }));
        if !trace.is_empty() {
            trace.push('\n');
        }
        trace.push_str(&r.to_text());
        out.summary.push(format!("{}: {}", r.pipeline, r.verdict));
        if let Some(eq) = &r.final_equation {
            out.summary.push(format!("  {eq}"));
        }
        let dangling = r.dangling_citations();
        out.expect(r.reproduced() && dangling.is_empty(), format!("{} reproduces every closed form", r.pipeline));
    }
    out.json(format!("{stem}.json"), json!({ "reports": reports }));
    out.text(format!("{stem}.txt"), trace);
    Ok(out)
}

fn verify_dispersion(c: &Config) -> Result<JobOutput, CliError> {
    let g = grid(c)?;
    let p = params(c)?;
    let eqs: Vec<Equation> = match c.str_or("equation", "all") {
        "all" => Equation::ALL.to_vec(),
        _ => vec![equation(c, "all")?],
    };
    let ks = c.list_or("k", &(0..=8).map(f64::from).collect::<Vec<_>>())?;
    let samples = c.usize_or("samples", 4)?;
    let tol = c.f64_or("tolerance", 1e-8)?;
    let mut out = JobOutput::default();
    let mut table = Table::new(&["equation", "k", "branch", "omega_measured", "omega_analytic", "error"]);
    let mut worst = serde_json::Map::new();
    for eq in eqs {
        let mut max_error = 0.0f64;
        for r in measure_dispersion(eq, &p, g, &ks, samples).map_err(lab)? {
            table.push(vec![
                eq.name().into(),
                float(r.k),
                r.branch.name().into(),
                float(r.omega_measured),
                float(r.omega_analytic),
                float(r.error),
            ]);
            max_error = max_error.max(r.error);
            out.expect(
                r.error < tol,
                format!("{eq} k = {} {} branch: ω = {} vs {} (error {:e} < {tol:e})", r.k, r.branch.name(), r.omega_measured, r.omega_analytic, r.error),
            );
        }
        worst.insert(eq.name().into(), json!(max_error));
    }
    out.text("verify-dispersion.csv".into(), table.to_csv());
    out.json("verify-dispersion.json".into(), json!({ "tolerance": tol, "max_error": worst }));
    Ok(out)
}

fn verify_boost(c: &Config) -> Result<JobOutput, CliError> {
    let g = grid(c)?;
    let mut p = params(c)?;
    let eq = equation(c, "schrodinger")?;
    let t = c.f64_or("t", 1.0)?;
    let (kind, packet, default_tol) = match eq {
        Equation::Schrodinger => (
            BoostKind::Galilean,
            Packet::Gaussian {
                sigma: c.f64_or("sigma", 1.0)?,
                x0: c.f64_or("x0", 0.0)?,
            },
            1e-6,
        ),
        Equation::Lcse => (BoostKind::Lorentz, Packet::RestFrame, 1e-8),
        Equation::KleinGordon => return Err(c.reject("equation", "boost checks cover schrodinger and lcse")),
    };
    p.v = match (c.text("v"), c.text("beta")) {
        (Some(_), Some(_)) => return Err(c.reject("beta", "give v or beta, not both")),
        (_, Some(_)) => c.f64_or("beta", 0.0)? * p.c,
        _ => c.f64_or("v", if eq == Equation::Lcse { 0.3 * p.c } else { 1.0 })?,
    };
    let tol = c.f64_or("tolerance", default_tol)?;
    let r = boost_check(eq, packet, &p, kind, g, t).map_err(lab)?;
    let mut out = JobOutput::default();
    out.expect(r.max_residual < tol, format!("{eq} S-frame residual {:e} < {tol:e}", r.max_residual));
    let l2_tol = if eq == Equation::Schrodinger { tol } else { 1e-6 };
    out.expect(r.l2_discrepancy < l2_tol, format!("{eq} L2 discrepancy to direct evolution {:e} < {l2_tol:e}", r.l2_discrepancy));
    if let (Some(wm), Some(we), Some(km), Some(ke)) = (r.omega_measured, r.omega_expected, r.k_measured, r.k_expected) {
        let mt = c.f64_or("match_tolerance", 1e-10)?;
        let rel = |a: f64, b: f64| if b == 0.0 { a.abs() } else { (a - b).abs() / b.abs() };
        out.expect(rel(wm, we) < mt, format!("ω = {wm} matches (γ−1)mc²/ħ = {we} to {mt:e}"));
        out.expect(rel(km, ke) < mt, format!("k = {km} matches γmv/ħ = {ke} to {mt:e}"));
    }
    out.text("verify-boost.csv".into(), Table::boost(&r).to_csv());
    out.json("verify-boost.json".into(), serde_json::to_value(&r).expect("report serializes"));
    Ok(out)
}

fn verify_nr_limit(c: &Config) -> Result<JobOutput, CliError> {
    let g = grid(c)?;
    let p = params(c)?;
    let cs = c.list_or("c_list", &[10.0, 20.0, 40.0, 80.0])?;
    let packet = WaveState::gaussian(g, 0.0, c.f64_or("sigma", 2.0)?, c.f64_or("k0", 1.0)?);
    let study = nr_limit_study(&cs, &packet, &p, c.f64_or("t", 1.0)?).map_err(lab)?;
    let target = c.f64_or("slope", -2.0)?;
    let tol = c.f64_or("slope_tolerance", 0.2)?;
    let mut out = JobOutput::default();
    for w in study.rows.windows(2) {
        out.expect(w[1].error <= w[0].error, format!("error at c = {} ({:e}) ≤ error at c = {} ({:e})", w[1].c, w[1].error, w[0].c, w[0].error));
    }
    out.expect((study.slope - target).abs() <= tol, format!("log-log slope {} within {target} ± {tol}", study.slope));
    out.text("verify-nr-limit.csv".into(), Table::limit(&study).to_csv());
    out.json("verify-nr-limit.json".into(), serde_json::to_value(&study).expect("study serializes"));
    Ok(out)
}

fn verify_squared(c: &Config) -> Result<JobOutput, CliError> {
    let g = grid(c)?;
    let p = params(c)?;
    let packet = WaveState::gaussian(g, 0.0, c.f64_or("sigma", 1.0)?, c.f64_or("k0", 0.0)?);
    let times = c.list_or("times", &[0.0, 0.25, 0.5, 0.75, 1.0])?;
    let tol = c.f64_or("tolerance", 1e-8)?;
    let rows = fourth_order_residual(&packet, &p, &times, c.f64_or("h", 2e-3)?).map_err(lab)?;
    let mut out = JobOutput::default();
    for r in &rows {
        out.expect(r.residual < tol, format!("|Ŝ²Ψ|/‖Ψ‖ at t = {} is {:e} < {tol:e}", r.t, r.residual));
    }
    let field = field_mismatch(g, &p, c.f64_or("omega", 0.7)?).map_err(lab)?;
    let ft = c.f64_or("field_tolerance", 1e-9)?;
    out.expect(field.predicted_error < ft, format!("V = cos x: Ŝ² + covariant operator equals −(ħ²/m)V′∂x − (ħ²/2m)V″ to {:e}", field.predicted_error));
    out.expect(field.gradient_term > ft, format!("V = cos x: the ∇V·∇ term is present (max {:e})", field.gradient_term));
    out.text("verify-squared-op.csv".into(), Table::fourth_order(&rows).to_csv());
    out.json("verify-squared-op.json".into(), json!({ "rows": rows, "field_mismatch": field }));
    Ok(out)
}

pub fn verify(check: &str, c: &Config) -> Result<JobOutput, CliError> {
    match check {
        "dispersion" => verify_dispersion(c),
        "boost" => verify_boost(c),
        "nr-limit" => verify_nr_limit(c),
        "squared-op" => verify_squared(c),
        _ => Err(CliError::Usage(format!("unknown check {check:?} (expected one of {})", VERIFY_CHECKS.join(", ")))),
    }
}

/// Evolve a Gaussian and dump snapshots at `t·j/frames` for `j = 0..=frames`.
pub fn simulate(c: &Config) -> Result<JobOutput, CliError> {
    let g = grid(c)?;
    let p = params(c)?;
    let eq = equation(c, "schrodinger")?;
    let t = c.f64_or("t", 1.0)?;
    let frames = c.usize_or("frames", 1)?.max(1);
    let start = WaveState::gaussian(g, c.f64_or("x0", 0.0)?, c.f64_or("sigma", 1.0)?, c.f64_or("k0", 0.0)?);
    let start = if eq.second_order() { particle_branch(eq, &start, &p).map_err(lab)? } else { start };
    let mut table = Table::new(&["t", "x", "re", "im"]);
    let mut norms = Vec::new();
    for f in 0..=frames {
        let tf = t * f as f64 / frames as f64;
        let s = evolve(eq, &start, &p, tf).map_err(lab)?;
        for (x, z) in g.xs().into_iter().zip(&s.values) {
            table.push(vec![float(tf), float(x), float(z.re), float(z.im)]);
        }
        norms.push(json!({ "t": float(tf), "norm": float(s.norm()) }));
    }
    let mut out = JobOutput::default();
    out.summary.push(format!("{eq}: {} frames of {} points", frames + 1, g.len()));
    if eq == Equation::Schrodinger {
        let n0 = start.norm();
        let drift = evolve(eq, &start, &p, t).map_err(lab)?.norm() / n0 - 1.0;
        out.expect(drift.abs() < 1e-12, format!("norm drift {drift:e}"));
    }
    out.text(format!("simulate-{eq}.csv"), table.to_csv());
    out.json(format!("simulate-{eq}.json"), json!({ "norms": norms }));
    Ok(out)
}
