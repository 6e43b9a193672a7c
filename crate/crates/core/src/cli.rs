//! Batch experiment driver. A run reads a JSON scenario, performs one
//! computation and writes `<out>/<command>.csv` and `<out>/<command>.json`.
//!
//! CSV columns are always `n, c0 .. c{d-1}, l1, l1_bound, flags`; the JSON
//! summary echoes the resolved scenario under `config`.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bochner::{
    bif_from_separable, bint, bint_sf, bint_vs_lintp, dominated_convergence_run, ApproxParams,
    BifWitness, DominatedParams, VecFn, MAX_RESOLUTION,
};
use crate::error::Error;
use crate::lebesgue::{lint_p_simple, MAX_DEPTH};
use crate::separability::{weak_sep_check, DenseKind, DenseSeq};
use crate::simple_fn::SimpleFn;
use crate::spaces::{IndexFn, MSet, MeasureSpace};
use crate::vectors::{VSpace, Vector};

#[derive(Debug, Parser)]
#[command(
    name = "bochner",
    version,
    about = "Run Bochner integration experiments from JSON scenarios"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub overrides: Overrides,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Exact integral of a simple function.
    IntegrateSf,
    /// Convergence table of the nearest-point approximations.
    Approx,
    /// Limit integral with its stabilization index and error bound.
    Bint,
    /// Integral of the norm, computed as a Bochner and as a Lebesgue integral.
    CompareLebesgue,
    /// Integrals along a dominated scaled family.
    Dominated,
    /// Weak separability check of the dense sequence against random samples.
    SepCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::IntegrateSf => "integrate-sf",
            Command::Approx => "approx",
            Command::Bint => "bint",
            Command::CompareLebesgue => "compare-lebesgue",
            Command::Dominated => "dominated",
            Command::SepCheck => "sep-check",
        }
    }
}

/// Command-line values that take precedence over the scenario file.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    #[arg(long, global = true, value_name = "FILE")]
    pub scenario: Option<PathBuf>,
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    #[arg(long, global = true)]
    pub depth: Option<u32>,
    #[arg(long, global = true)]
    pub resolution: Option<u32>,
    #[arg(long = "n-max", global = true)]
    pub n_max: Option<usize>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{0}")]
    Numeric(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 1,
        }
    }
}

fn config(e: impl std::fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

/// Catalog of integrands.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Integrand {
    /// The same vector everywhere.
    Constant {
        value: Vector,
    },
    /// `x ↦ (x, 1 − x)` on `[0, 1)`.
    LinearPair,
    /// `x ↦ x` on `[0, 1)`.
    Identity,
    Indicator {
        set: MSet,
        value: Vector,
    },
    /// One value per atom of a finite space. Zero values share the last part.
    Table {
        values: Vec<Vector>,
    },
    Simple {
        which: IndexFn,
        val: Vec<Vector>,
        max_which: usize,
    },
    /// `f_n = (1 + 1/(n + 1))·base`, dominated by `2‖base‖`, with limit `base`.
    ScaledFamily {
        base: Box<Integrand>,
    },
}

impl Integrand {
    /// The function as a simple function, when it is one.
    pub fn simple(&self, space: &Arc<MeasureSpace>) -> Result<SimpleFn, CliError> {
        let sf = match self {
            Integrand::Constant { value } => {
                SimpleFn::indicator(space.clone(), &space.whole(), value.clone())
            }
            Integrand::Indicator { set, value } => {
                SimpleFn::indicator(space.clone(), set, value.clone())
            }
            Integrand::Table { values } => {
                let first = values
                    .first()
                    .ok_or_else(|| config("function.values is empty"))?;
                let mut val = values.clone();
                val.push(first.space().zero());
                SimpleFn::new(
                    space.clone(),
                    IndexFn::Table((0..values.len()).collect()),
                    val,
                    values.len(),
                )
                .map(|sf| sf.remove_zeros())
            }
            Integrand::Simple {
                which,
                val,
                max_which,
            } => SimpleFn::new(space.clone(), which.clone(), val.clone(), *max_which),
            other => {
                return Err(config(format!(
                    "function kind {} is not a simple function",
                    other.kind()
                )))
            }
        };
        sf.map_err(|e| config(format!("function: {e}")))
    }

    pub fn resolve(&self, space: &Arc<MeasureSpace>) -> Result<VecFn, CliError> {
        let on_interval = |kind: &str| {
            if space.is_interval() {
                Ok(())
            } else {
                Err(config(format!(
                    "function kind {kind} needs the interval space"
                )))
            }
        };
        let f = match self {
            Integrand::LinearPair => {
                on_interval("linear-pair")?;
                VecFn::lipschitz(
                    VSpace::RVec(2),
                    |x| Vector::rvec(&[x, 1.0 - x]).expect("finite"),
                    std::f64::consts::SQRT_2,
                    vec![],
                )
            }
            Integrand::Identity => {
                on_interval("identity")?;
                VecFn::lipschitz(
                    VSpace::Real,
                    |x| Vector::real(x).expect("finite"),
                    1.0,
                    vec![],
                )
            }
            Integrand::ScaledFamily { .. } => {
                return Err(config("scaled-family is only accepted by dominated"))
            }
            _ => Ok(VecFn::Simple(self.simple(space)?)),
        };
        f.map_err(|e| config(format!("function: {e}")))
    }

    fn kind(&self) -> &'static str {
        match self {
            Integrand::Constant { .. } => "constant",
            Integrand::LinearPair => "linear-pair",
            Integrand::Identity => "identity",
            Integrand::Indicator { .. } => "indicator",
            Integrand::Table { .. } => "table",
            Integrand::Simple { .. } => "simple",
            Integrand::ScaledFamily { .. } => "scaled-family",
        }
    }
}

/// A complete experiment description. Everything except `space` has a default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub space: MeasureSpace,
    #[serde(default)]
    pub function: Option<Integrand>,
    /// Carrier for `sep-check`; defaults to the function's.
    #[serde(default)]
    pub carrier: Option<VSpace>,
    #[serde(default)]
    pub dense: DenseKind,
    #[serde(default = "defaults::eps")]
    pub eps: f64,
    #[serde(default = "defaults::depth")]
    pub depth: u32,
    #[serde(default = "defaults::resolution")]
    pub resolution: u32,
    #[serde(default = "defaults::n_max")]
    pub n_max: usize,
    #[serde(default = "defaults::window")]
    pub window: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "defaults::probes")]
    pub probes: usize,
    #[serde(default = "defaults::pw_eps")]
    pub pw_eps: f64,
    /// Indices of the family integrated by `dominated`.
    #[serde(default = "defaults::ns")]
    pub ns: Vec<usize>,
    /// Required distance to the limit integral at the last index of `ns`.
    #[serde(default = "defaults::limit_tol")]
    pub limit_tol: f64,
    /// Closed-form value that `dominated` reports distances to.
    #[serde(default)]
    pub reference: Option<Vector>,
    #[serde(default = "defaults::samples")]
    pub samples: usize,
    /// `sep-check` draws samples uniformly from `[-r, r]` per coordinate.
    #[serde(default = "defaults::sample_radius")]
    pub sample_radius: f64,
    #[serde(default = "defaults::out")]
    pub out: PathBuf,
}

mod defaults {
    use std::path::PathBuf;

    pub fn eps() -> f64 {
        1e-3
    }
    pub fn depth() -> u32 {
        12
    }
    pub fn resolution() -> u32 {
        10
    }
    pub fn n_max() -> usize {
        4096
    }
    pub fn window() -> usize {
        4
    }
    pub fn probes() -> usize {
        1000
    }
    pub fn pw_eps() -> f64 {
        1e-2
    }
    pub fn ns() -> Vec<usize> {
        vec![0, 1, 2, 4, 9, 19, 49, 99, 199]
    }
    pub fn limit_tol() -> f64 {
        5e-3
    }
    pub fn samples() -> usize {
        1000
    }
    pub fn sample_radius() -> f64 {
        10.0
    }
    pub fn out() -> PathBuf {
        PathBuf::from("out")
    }
}

impl Scenario {
    /// Parses a scenario; errors name the offending field path.
    pub fn from_json(text: &str) -> Result<Scenario, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let sc: Scenario = serde_path_to_error::deserialize(de)
            .map_err(|e| config(format!("{}: {}", e.path(), e.inner())))?;
        sc.validate()?;
        Ok(sc)
    }

    pub fn load(path: &Path) -> Result<Scenario, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| config(format!("cannot read {}: {e}", path.display())))?;
        Scenario::from_json(&text)
    }

    pub fn apply(&mut self, o: &Overrides) -> Result<(), CliError> {
        if let Some(out) = &o.out {
            self.out = out.clone();
        }
        if let Some(eps) = o.eps {
            self.eps = eps;
        }
        if let Some(depth) = o.depth {
            self.depth = depth;
        }
        if let Some(resolution) = o.resolution {
            self.resolution = resolution;
        }
        if let Some(n_max) = o.n_max {
            self.n_max = n_max;
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = [
            ("eps", self.eps),
            ("pw_eps", self.pw_eps),
            ("limit_tol", self.limit_tol),
            ("sample_radius", self.sample_radius),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(config(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        let counts = [
            ("n_max", self.n_max),
            ("window", self.window),
            ("probes", self.probes),
            ("samples", self.samples),
            ("ns", self.ns.len()),
        ];
        for (name, v) in counts {
            if v == 0 {
                return Err(config(format!("{name} must be positive")));
            }
        }
        if !(1..=MAX_RESOLUTION).contains(&self.resolution) {
            return Err(config(format!(
                "resolution must lie in 1..={MAX_RESOLUTION}, got {}",
                self.resolution
            )));
        }
        if !(1..=MAX_DEPTH).contains(&self.depth) {
            return Err(config(format!(
                "depth must lie in 1..={MAX_DEPTH}, got {}",
                self.depth
            )));
        }
        Ok(())
    }

    pub fn approx_params(&self) -> ApproxParams {
        ApproxParams {
            n_max: self.n_max,
            resolution: self.resolution,
            depth: self.depth,
            probes: self.probes,
            seed: self.seed,
            pw_eps: self.pw_eps,
        }
    }

    fn space_arc(&self) -> Arc<MeasureSpace> {
        Arc::new(self.space.clone())
    }

    fn function(&self) -> Result<&Integrand, CliError> {
        self.function
            .as_ref()
            .ok_or_else(|| config("this command needs a function"))
    }
}

/// Result of a run whose artifacts were written.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub summary: String,
    pub passed: bool,
    pub csv: PathBuf,
    pub json: PathBuf,
}

/// Loads the scenario named on the command line and runs the subcommand.
pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let path = cli
        .overrides
        .scenario
        .as_ref()
        .ok_or_else(|| config("--scenario <FILE> is required"))?;
    let mut sc = Scenario::load(path)?;
    sc.apply(&cli.overrides)?;
    execute(cli.command, &sc)
}

/// Runs one subcommand and writes its artifacts. A failed check still writes
/// them and is reported through [`Outcome::passed`].
pub fn execute(cmd: Command, sc: &Scenario) -> Result<Outcome, CliError> {
    let report = match cmd {
        Command::IntegrateSf => integrate_sf(sc)?,
        Command::Approx => approx(sc)?,
        Command::Bint => bint_cmd(sc)?,
        Command::CompareLebesgue => compare_lebesgue(sc)?,
        Command::Dominated => dominated(sc)?,
        Command::SepCheck => sep_check(sc)?,
    };
    fs::create_dir_all(&sc.out)
        .map_err(|e| config(format!("cannot create {}: {e}", sc.out.display())))?;
    let csv = sc.out.join(format!("{}.csv", cmd.name()));
    let json = sc.out.join(format!("{}.json", cmd.name()));
    write_csv(&csv, report.dim, &report.rows)?;
    let summary = json!({
        "command": cmd.name(),
        "config": sc,
        "passed": report.passed,
        "result": report.result,
    });
    let text = serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n";
    fs::write(&json, text).map_err(|e| config(format!("cannot write {}: {e}", json.display())))?;
    Ok(Outcome {
        summary: report.line,
        passed: report.passed,
        csv,
        json,
    })
}

struct Report {
    dim: usize,
    rows: Vec<Row>,
    result: Value,
    line: String,
    passed: bool,
}

#[derive(Default)]
struct Row {
    n: Option<usize>,
    components: Vec<f64>,
    l1: Option<f64>,
    l1_bound: Option<f64>,
    flags: Vec<&'static str>,
}

fn write_csv(path: &Path, dim: usize, rows: &[Row]) -> Result<(), CliError> {
    let io = |e: csv::Error| config(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    let mut header = vec!["n".to_string()];
    header.extend((0..dim).map(|i| format!("c{i}")));
    header.extend(["l1", "l1_bound", "flags"].map(String::from));
    w.write_record(&header).map_err(io)?;
    let cell = |x: Option<f64>| x.map_or_else(String::new, |v| v.to_string());
    for r in rows {
        let mut rec = vec![r.n.map_or_else(String::new, |n| n.to_string())];
        rec.extend(r.components.iter().map(|c| c.to_string()));
        rec.push(cell(r.l1));
        rec.push(cell(r.l1_bound));
        rec.push(r.flags.join(";"));
        w.write_record(&rec).map_err(io)?;
    }
    w.flush()
        .map_err(|e| config(format!("cannot write {}: {e}", path.display())))
}

fn integrate_sf(sc: &Scenario) -> Result<Report, CliError> {
    let f = sc.function()?.simple(&sc.space_arc())?;
    let value = bint_sf(&f)?;
    let norm = lint_p_simple(&f.norm())?;
    Ok(Report {
        dim: value.coords().len(),
        rows: vec![Row {
            n: Some(f.max_which()),
            components: value.coords().to_vec(),
            l1: Some(norm.to_f64()),
            l1_bound: Some(0.0),
            flags: vec!["integrable"],
        }],
        line: format!(
            "integral = {:?}, integral of the norm = {norm}",
            value.coords()
        ),
        result: json!({ "value": value, "max_which": f.max_which(), "norm_integral": norm }),
        passed: true,
    })
}

fn witness(sc: &Scenario) -> Result<BifWitness, CliError> {
    let space = sc.space_arc();
    let f = sc.function()?.resolve(&space)?;
    let u = DenseSeq::builtin(f.carrier(), sc.dense, true);
    Ok(bif_from_separable(space, f, &u, &sc.approx_params())?)
}

fn checkpoint_rows(bf: &BifWitness, stable_from: Option<usize>) -> Vec<Row> {
    bf.checkpoints()
        .iter()
        .map(|c| {
            let mut flags = vec![if c.integrable {
                "integrable"
            } else {
                "not-integrable"
            }];
            if stable_from.is_some_and(|s| c.n >= s) {
                flags.push("stable");
            }
            Row {
                n: Some(c.n),
                components: c.integral.coords().to_vec(),
                l1: Some(c.l1.value.to_f64()),
                l1_bound: Some(c.l1.upper()),
                flags,
            }
        })
        .collect()
}

fn witness_summary(bf: &BifWitness, eps: f64) -> Value {
    let converged = bf
        .probes()
        .iter()
        .filter(|p| p.converged_at.is_some())
        .count();
    json!({
        "n_max": bf.n_max(),
        "norm_integral": bf.norm_integral(),
        "final_l1": bf.last().l1,
        "l1_below_eps_at": bf.l1_below(eps),
        "misclassified_measure": bf.misclassified_measure(),
        "resolution_slack": bf.resolution_slack(),
        "probes": bf.probes().len(),
        "probes_converged": converged,
        "max_domination_excess": bf.max_domination_excess(),
    })
}

fn approx(sc: &Scenario) -> Result<Report, CliError> {
    let bf = witness(sc)?;
    let last = bf.last();
    Ok(Report {
        dim: bf.carrier().dim(),
        rows: checkpoint_rows(&bf, None),
        line: format!(
            "n = {}: integral {:?}, l1 = {} (certified <= {:e})",
            last.n,
            last.integral.coords(),
            last.l1.value,
            last.l1.upper()
        ),
        result: witness_summary(&bf, sc.eps),
        passed: true,
    })
}

fn bint_cmd(sc: &Scenario) -> Result<Report, CliError> {
    let bf = witness(sc)?;
    let est = bint(&bf, sc.eps, sc.window)?;
    let mut result = witness_summary(&bf, sc.eps);
    result["bint"] = json!(est);
    result["value"] = json!(est.value.coords());
    Ok(Report {
        dim: bf.carrier().dim(),
        rows: checkpoint_rows(&bf, Some(est.stable_from)),
        line: format!(
            "bint = {:?} +- {:e} (n = {}, stable from {})",
            est.value.coords(),
            est.error_bound,
            est.n,
            est.stable_from
        ),
        result,
        passed: true,
    })
}

fn compare_lebesgue(sc: &Scenario) -> Result<Report, CliError> {
    let space = sc.space_arc();
    let g = sc.function()?.resolve(&space)?.norm();
    let cmp = bint_vs_lintp(space, &g, &sc.approx_params(), sc.eps, sc.window)?;
    let verdict = if cmp.ok { "ok" } else { "mismatch" };
    Ok(Report {
        dim: 1,
        rows: vec![Row {
            n: Some(cmp.bint.n),
            components: cmp.bint.value.coords().to_vec(),
            l1: Some(cmp.lint.value.to_f64()),
            l1_bound: Some(cmp.tolerance),
            flags: vec![if cmp.exact { "exact" } else { "bounded" }, verdict],
        }],
        line: format!(
            "bochner {} vs lebesgue {} (+- {:e}): difference {:e}, {verdict}",
            cmp.bint.value.coords()[0],
            cmp.lint.value,
            cmp.lint.error_bound,
            cmp.difference
        ),
        passed: cmp.ok,
        result: json!(cmp),
    })
}

fn dominated(sc: &Scenario) -> Result<Report, CliError> {
    let space = sc.space_arc();
    let base = match sc.function()? {
        Integrand::ScaledFamily { base } => base.resolve(&space)?,
        other => {
            return Err(config(format!(
                "dominated needs a scaled-family function, got {}",
                other.kind()
            )))
        }
    };
    let g = base.scal(2.0).norm();
    let family = |n: usize| Ok(base.scal(1.0 + 1.0 / (n as f64 + 1.0)));
    let u = DenseSeq::builtin(base.carrier(), sc.dense, true);
    let params = DominatedParams {
        approx: sc.approx_params(),
        ns: sc.ns.clone(),
        eps: sc.limit_tol,
        bint_eps: sc.eps,
        window: sc.window,
        ..DominatedParams::default()
    };
    let rep = dominated_convergence_run(
        space,
        family,
        Some(base.clone()),
        &g,
        &u,
        sc.reference.as_ref(),
        &params,
    )?;
    let rows = rep
        .rows
        .iter()
        .map(|r| Row {
            n: Some(r.n),
            components: r.bint.coords().to_vec(),
            l1: Some(r.diff_to_limit),
            l1_bound: Some(r.error_bound),
            flags: if r.diff_to_limit < sc.limit_tol {
                vec!["within-tol"]
            } else {
                vec![]
            },
        })
        .collect();
    let last = rep.rows.last().expect("ns is nonempty");
    Ok(Report {
        dim: base.carrier().dim(),
        rows,
        line: format!(
            "limit integral {:?}; at n = {} the distance is {:e} ({})",
            rep.limit.value.coords(),
            last.n,
            last.diff_to_limit,
            if rep.converged {
                "converged"
            } else {
                "not converged"
            }
        ),
        passed: rep.converged,
        result: json!(rep),
    })
}

/// Uniform samples from `[-r, r]^d`.
pub fn sample_box(carrier: VSpace, count: usize, radius: f64, seed: u64) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let coords: Vec<f64> = (0..carrier.dim())
                .map(|_| rng.gen_range(-radius..=radius))
                .collect();
            Vector::new(carrier, &coords).expect("finite coordinates")
        })
        .collect()
}

fn sep_check(sc: &Scenario) -> Result<Report, CliError> {
    let carrier = match (sc.carrier, &sc.function) {
        (Some(c), _) => c,
        (None, Some(f)) => f.resolve(&sc.space_arc())?.carrier(),
        (None, None) => return Err(config("sep-check needs a carrier or a function")),
    };
    let u = DenseSeq::builtin(carrier, sc.dense, true);
    let samples = sample_box(carrier, sc.samples, sc.sample_radius, sc.seed);
    let rep = weak_sep_check(&u, &samples, sc.eps, sc.n_max)?;
    let rows = samples
        .iter()
        .zip(&rep.hits)
        .map(|(x, hit)| Row {
            n: *hit,
            components: x.coords().to_vec(),
            l1: hit.map(|k| u.get(k).dist_unchecked(x)),
            l1_bound: Some(sc.eps),
            flags: vec![if hit.is_some() { "hit" } else { "miss" }],
        })
        .collect();
    let misses = rep.hits.iter().filter(|h| h.is_none()).count();
    Ok(Report {
        dim: carrier.dim(),
        rows,
        line: match rep.worst_index {
            Some(w) if rep.ok => format!("all {} samples hit; worst index {w}", samples.len()),
            _ => format!(
                "{misses} of {} samples missed within {} terms",
                samples.len(),
                sc.n_max
            ),
        },
        passed: rep.ok,
        result: json!({ "ok": rep.ok, "worst_index": rep.worst_index, "misses": misses }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_paths_in_errors() {
        let err = Scenario::from_json(r#"{"space": {"space": "finite", "masses": [1, -1]}}"#)
            .unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("masses[1]"), "{err}");

        let err = Scenario::from_json(r#"{"space": {"space": "interval"}, "eps": 0}"#).unwrap_err();
        assert!(err.to_string().contains("eps"));

        let err = Scenario::from_json(
            r#"{"space": {"space": "interval"}, "function": {"kind": "cubic"}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("function"), "{err}");

        let err =
            Scenario::from_json(r#"{"space": {"space": "interval"}, "n_maxx": 3}"#).unwrap_err();
        assert!(err.to_string().contains("n_maxx"), "{err}");
    }

    #[test]
    fn catalog_round_trips() {
        let text = r#"{
            "space": {"space": "finite", "masses": [0.5, "inf"]},
            "function": {"kind": "scaled-family", "base": {"kind": "table", "values": [
                {"carrier": "real", "coords": [2]}, {"carrier": "real", "coords": [0]}]}}
        }"#;
        let sc = Scenario::from_json(text).unwrap();
        let back = serde_json::to_string(&sc).unwrap();
        assert_eq!(Scenario::from_json(&back).unwrap(), sc);
    }

    #[test]
    fn kinds_and_spaces() {
        let finite = Arc::new(MeasureSpace::finite(&[1.0, 2.0]).unwrap());
        assert!(Integrand::LinearPair.resolve(&finite).is_err());
        assert!(Integrand::Identity.simple(&finite).is_err());
        let c = Integrand::Constant {
            value: Vector::real(3.0).unwrap(),
        };
        assert_eq!(
            bint_sf(&c.simple(&finite).unwrap()).unwrap().coords(),
            &[9.0]
        );
        let t = Integrand::Table {
            values: vec![Vector::real(1.0).unwrap(), Vector::real(-4.0).unwrap()],
        };
        assert_eq!(
            bint_sf(&t.simple(&finite).unwrap()).unwrap().coords(),
            &[-7.0]
        );
    }

    #[test]
    fn samples_are_reproducible() {
        let a = sample_box(VSpace::RVec(3), 50, 2.0, 9);
        assert_eq!(a, sample_box(VSpace::RVec(3), 50, 2.0, 9));
        assert!(a
            .iter()
            .flat_map(|v| v.coords().to_vec())
            .all(|c| c.abs() <= 2.0));
    }
}
