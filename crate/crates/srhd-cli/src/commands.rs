//! The `run`, `sweep`, `compare` and `reference` commands.

use std::path::{Path, PathBuf};

use srhd::cases::{CaseSpec, ReferencePolicy};
use srhd::diagnostics::error_table;
use srhd::grid_solver::Scheme;
use srhd::reference_llf::{l1_distance, llf_solve, restrict, LlfConfig};
use srhd::run::{accuracy_sweep, exact_error, run_case, RunOutput};
use srhd::state::Prim;
use srhd::{Error, Result};

use crate::config::{DtRuleSpec, RunConfig};
use crate::output::{write_entropy, write_errors, write_snapshot_index, write_solution, write_table};

/// Files written by a command and a human-readable summary.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Artifacts {
    pub files: Vec<PathBuf>,
    pub summary: Vec<String>,
}

impl Artifacts {
    fn extend(&mut self, other: Artifacts) {
        self.files.extend(other.files);
        self.summary.extend(other.summary);
    }
}

fn case_tag(spec: &CaseSpec) -> String {
    format!("{}_{}", spec.id, spec.eos.name())
}

/// File prefix `case_eos_scheme_integrator`.
pub fn run_prefix(cfg: &RunConfig, spec: &CaseSpec, scheme: Scheme) -> String {
    format!("{}_{}_{}", case_tag(spec), scheme, cfg.time_integrator)
}

fn prepare_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))
}

/// Entropy-trace tolerance for counting increases: a few rounding errors
/// of the initial total.
fn trace_tolerance(out: &RunOutput) -> f64 {
    1e-12 * out.trace.balanced.first().map_or(1.0, |e| e.abs().max(1.0))
}

fn run_scheme(cfg: &RunConfig, scheme: Scheme) -> Result<(Artifacts, RunOutput)> {
    let spec = cfg.case_spec()?;
    let opts = cfg.run_options(scheme, DtRuleSpec::Cfl);
    let out = run_case(&spec, &opts)?;
    prepare_dir(&cfg.output_dir)?;
    let prefix = run_prefix(cfg, &spec, scheme);
    let dir = &cfg.output_dir;
    let mut art = Artifacts::default();

    let solution = dir.join(format!("{prefix}.csv"));
    write_solution(&solution, &out.grid, &out.eos, &out.prims)?;
    art.files.push(solution);
    if !out.snapshots.is_empty() {
        let mut index = Vec::with_capacity(out.snapshots.len());
        for (k, snap) in out.snapshots.iter().enumerate() {
            let name = format!("{prefix}_snap{k:04}.csv");
            let path = dir.join(&name);
            write_solution(&path, &out.grid, &out.eos, &snap.prims)?;
            art.files.push(path);
            index.push((snap.t, name));
        }
        let path = dir.join(format!("{prefix}_snapshots.csv"));
        write_snapshot_index(&path, &index)?;
        art.files.push(path);
    }
    let entropy = dir.join(format!("{prefix}_entropy.csv"));
    write_entropy(&entropy, &out.trace)?;
    art.files.push(entropy);

    art.summary.push(format!(
        "{prefix}: t = {}, {} steps ({} rejected), balanced entropy drift {:.3e}, {} increases",
        out.t,
        out.steps,
        out.rejected_steps,
        out.trace.max_relative_drift(),
        out.trace.increases(trace_tolerance(&out)),
    ));
    if cfg.reference {
        art.extend(reference_comparison(cfg, &spec, &prefix, &out)?);
    }
    Ok((art, out))
}

fn reference_comparison(cfg: &RunConfig, spec: &CaseSpec, prefix: &str, out: &RunOutput) -> Result<Artifacts> {
    let dir = &cfg.output_dir;
    let mut art = Artifacts::default();
    match spec.reference {
        ReferencePolicy::Exact => {
            let norms = exact_error(spec, out)?;
            let path = dir.join(format!("{prefix}_errors.csv"));
            write_errors(&path, &error_table(&[(spec.nx, norms)]))?;
            art.files.push(path);
            let g = &out.grid;
            let mut exact: Vec<Prim> = Vec::with_capacity(g.cells());
            for j in 0..g.ny {
                for i in 0..g.nx {
                    exact.push(spec.exact(g.x(i), g.y(j), out.t).expect("exact policy has a solution"));
                }
            }
            let path = dir.join(format!("{prefix}_exact.csv"));
            write_solution(&path, g, &out.eos, &exact)?;
            art.files.push(path);
            art.summary.push(format!("{prefix}: l1 = {:.4e}, l2 = {:.4e}", norms.l1, norms.l2));
        }
        ReferencePolicy::Llf if spec.dim == 1 => {
            let (files, reference) = write_reference(cfg, spec)?;
            art.files.extend(files);
            let restricted = restrict(&reference.densities(), spec.nx)?;
            let l1 = l1_distance(&out.densities(), &restricted, out.grid.dx)?;
            let path = dir.join(format!("{prefix}_reference_l1.csv"));
            let header = ["N", "reference_N", "l1"].map(String::from).to_vec();
            write_table(&path, &header, &[vec![spec.nx as f64, reference.grid.nx as f64, l1]])?;
            art.files.push(path);
            art.summary.push(format!("{prefix}: l1 distance to the {}-cell reference = {l1:.4e}", reference.grid.nx));
        }
        _ => art.summary.push(format!("{prefix}: case {} has no reference solution", spec.id)),
    }
    Ok(art)
}

fn write_reference(cfg: &RunConfig, spec: &CaseSpec) -> Result<(Vec<PathBuf>, RunOutput)> {
    let config = LlfConfig::refined(spec, cfg.refinement)?;
    let reference = llf_solve(spec, &config)?;
    prepare_dir(&cfg.output_dir)?;
    let stem = format!("{}_llf{}", case_tag(spec), config.nx);
    let solution = cfg.output_dir.join(format!("{stem}.csv"));
    write_solution(&solution, &reference.grid, &reference.eos, &reference.prims)?;
    let entropy = cfg.output_dir.join(format!("{stem}_entropy.csv"));
    write_entropy(&entropy, &reference.trace)?;
    Ok((vec![solution, entropy], reference))
}

/// Runs the configured scheme once.
pub fn run(cfg: &RunConfig) -> Result<Artifacts> {
    run_scheme(cfg, cfg.scheme).map(|(art, _)| art)
}

/// Accuracy study against the closed-form solution.
pub fn sweep(cfg: &RunConfig) -> Result<Artifacts> {
    let spec = cfg.case_spec()?;
    if spec.reference != ReferencePolicy::Exact {
        return Err(Error::Config(format!("case {} has no closed-form solution to sweep against", spec.id)));
    }
    let ns = cfg.ns.clone().unwrap_or_else(|| if spec.dim == 1 { vec![10, 20, 40, 80, 160] } else { vec![10, 20, 40] });
    if ns.is_empty() || ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Config(format!("ns must be a nonempty increasing list, got {ns:?}")));
    }
    let opts = cfg.run_options(cfg.scheme, DtRuleSpec::Power(None));
    let rows = accuracy_sweep(&spec, &opts, &ns)?;
    prepare_dir(&cfg.output_dir)?;
    let prefix = run_prefix(cfg, &spec, cfg.scheme);
    let path = cfg.output_dir.join(format!("{prefix}_errors.csv"));
    write_errors(&path, &rows)?;
    let order = |o: Option<f64>| o.map_or_else(|| "-".to_string(), |x| format!("{x:.2}"));
    let mut summary = vec![format!("{prefix}: N, l1 error, order, l2 error, order")];
    for r in &rows {
        summary.push(format!("{:>6} {:.4e} {:>6} {:.4e} {:>6}", r.n, r.l1, order(r.l1_order), r.l2, order(r.l2_order)));
    }
    Ok(Artifacts { files: vec![path], summary })
}

/// Runs every configured scheme on the same case and writes an aligned
/// table of the final fields next to each run's own outputs.
pub fn compare(cfg: &RunConfig) -> Result<Artifacts> {
    let schemes = cfg.comparison_schemes();
    let mut art = Artifacts::default();
    let mut outputs = Vec::with_capacity(schemes.len());
    for &s in &schemes {
        let (a, out) = run_scheme(cfg, s)?;
        art.extend(a);
        outputs.push(out);
    }
    if schemes.len() > 1 {
        let spec = cfg.case_spec()?;
        let grid = outputs[0].grid;
        let fields: &[&str] = if grid.dim == 1 { &["rho", "v1", "p"] } else { &["rho", "v1", "v2", "p"] };
        let mut header: Vec<String> = if grid.dim == 1 { vec!["x".into()] } else { vec!["x".into(), "y".into()] };
        for s in &schemes {
            header.extend(fields.iter().map(|f| format!("{f}_{s}")));
        }
        let rows: Vec<Vec<f64>> = (0..grid.cells())
            .map(|k| {
                let (i, j) = (k % grid.nx, k / grid.nx);
                let mut row = if grid.dim == 1 { vec![grid.x(i)] } else { vec![grid.x(i), grid.y(j)] };
                for out in &outputs {
                    let p = out.prims[k];
                    row.push(p.rho);
                    row.push(p.v[0]);
                    if grid.dim == 2 {
                        row.push(p.v[1]);
                    }
                    row.push(p.p);
                }
                row
            })
            .collect();
        let path = cfg.output_dir.join(format!("{}_{}_compare.csv", case_tag(&spec), cfg.time_integrator));
        write_table(&path, &header, &rows)?;
        art.files.push(path);
    }
    Ok(art)
}

/// Fine-grid first-order reference solution in the solution schema.
pub fn reference(cfg: &RunConfig) -> Result<Artifacts> {
    let spec = cfg.case_spec()?;
    let (files, out) = write_reference(cfg, &spec)?;
    let summary = vec![format!("{} llf reference: {} cells, {} steps, t = {}", spec.id, out.grid.nx, out.steps, out.t)];
    Ok(Artifacts { files, summary })
}
