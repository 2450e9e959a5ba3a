//! Run configuration: a flat `key = value` file plus command-line overrides.

use std::path::{Path, PathBuf};

use srhd::cases::{case, CaseId, CaseSpec};
use srhd::dissipation::DissipationMode;
use srhd::eos::Eos;
use srhd::grid_solver::Scheme;
use srhd::reference_llf::MIN_REFINEMENT;
use srhd::run::{DtRule, RunOptions};
use srhd::timeint::Integrator;
use srhd::{Error, Result};

/// Every accepted key.
pub const KEYS: [&str; 17] = [
    "case",
    "eos",
    "gamma",
    "scheme",
    "schemes",
    "dissipation",
    "time_integrator",
    "cfl",
    "nx",
    "ny",
    "t_final",
    "dt_rule",
    "output_dir",
    "output_every",
    "reference",
    "refinement",
    "ns",
];

/// Coefficient of the power time-step rule `Δt = c Δxˢ` when no `cfl` is given.
pub const POWER_COEFFICIENT: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DtRuleSpec {
    Cfl,
    /// Power rule with an explicit exponent, or the scheme's accuracy
    /// exponent when `None`.
    Power(Option<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum OutputEvery {
    /// Final state only, plus any snapshot times built into the case.
    Final,
    Steps(usize),
    Times(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub case: CaseId,
    pub eos: Option<Eos>,
    pub scheme: Scheme,
    /// Schemes for `compare`; empty means just `scheme`.
    pub schemes: Vec<Scheme>,
    pub dissipation: DissipationMode,
    pub time_integrator: Integrator,
    pub cfl: Option<f64>,
    pub nx: Option<usize>,
    pub ny: Option<usize>,
    pub t_final: Option<f64>,
    /// `None` means the command's default: CFL for runs, power for sweeps.
    pub dt_rule: Option<DtRuleSpec>,
    pub output_dir: PathBuf,
    pub output_every: OutputEvery,
    pub reference: bool,
    pub refinement: usize,
    /// Resolutions of an accuracy sweep; `None` uses the default ladder.
    pub ns: Option<Vec<usize>>,
}

/// One `key = value` entry with the line it came from (0 for overrides).
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

fn config_error(line: usize, msg: impl std::fmt::Display) -> Error {
    if line == 0 {
        Error::Config(format!("override: {msg}"))
    } else {
        Error::Config(format!("line {line}: {msg}"))
    }
}

fn split_entry(text: &str, line: usize) -> Result<Entry> {
    let (k, v) = text
        .split_once('=')
        .ok_or_else(|| config_error(line, format!("expected key = value, got '{}'", text.trim())))?;
    let key = k.trim().to_ascii_lowercase();
    if !KEYS.contains(&key.as_str()) {
        return Err(config_error(line, format!("unknown key '{key}'; valid keys are {}", KEYS.join(", "))));
    }
    Ok(Entry { key, value: v.trim().to_string(), line })
}

/// Parses config text; `#` starts a comment and blank lines are skipped.
pub fn parse_entries(text: &str) -> Result<Vec<Entry>> {
    let mut entries: Vec<Entry> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let entry = split_entry(line, i + 1)?;
        if let Some(prev) = entries.iter().find(|e| e.key == entry.key) {
            return Err(config_error(i + 1, format!("key '{}' already set on line {}", entry.key, prev.line)));
        }
        entries.push(entry);
    }
    Ok(entries)
}

/// Parses `key=value` overrides given on the command line.
pub fn parse_overrides(args: &[String]) -> Result<Vec<Entry>> {
    args.iter().map(|a| split_entry(a, 0)).collect()
}

fn number<T: std::str::FromStr>(e: &Entry) -> Result<T> {
    e.value.parse().map_err(|_| config_error(e.line, format!("{} = '{}' is not a valid number", e.key, e.value)))
}

fn positive(e: &Entry) -> Result<f64> {
    let x: f64 = number(e)?;
    if !(x > 0.0 && x.is_finite()) {
        return Err(config_error(e.line, format!("{} must be positive, got {x}", e.key)));
    }
    Ok(x)
}

/// Accepts a decimal or a fraction such as `5/3`.
fn fraction(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((a, b)) => Some(a.trim().parse::<f64>().ok()? / b.trim().parse::<f64>().ok()?),
        None => s.trim().parse().ok(),
    }
}

fn list<T>(e: &Entry, item: impl Fn(&str) -> Result<T>) -> Result<Vec<T>> {
    e.value.split(',').map(str::trim).filter(|s| !s.is_empty()).map(item).collect()
}

fn dt_rule(e: &Entry) -> Result<DtRuleSpec> {
    let v = e.value.to_ascii_lowercase();
    if v == "cfl" {
        return Ok(DtRuleSpec::Cfl);
    }
    if v == "power" {
        return Ok(DtRuleSpec::Power(None));
    }
    let inner = v.strip_prefix("power(").and_then(|r| r.strip_suffix(')'));
    match inner.and_then(fraction) {
        Some(s) if s > 0.0 && s.is_finite() => Ok(DtRuleSpec::Power(Some(s))),
        _ => Err(config_error(e.line, format!("dt_rule = '{}': expected cfl, power or power(<s>)", e.value))),
    }
}

fn output_every(e: &Entry) -> Result<OutputEvery> {
    let v = e.value.to_ascii_lowercase();
    if v == "final" {
        return Ok(OutputEvery::Final);
    }
    if let Some(n) = v.strip_prefix("steps:") {
        return match n.trim().parse::<usize>() {
            Ok(k) if k > 0 => Ok(OutputEvery::Steps(k)),
            _ => Err(config_error(
                e.line,
                format!("output_every = '{}': step count must be a positive integer", e.value),
            )),
        };
    }
    if let Some(ts) = v.strip_prefix("times:") {
        let times = ts
            .split(',')
            .map(|t| t.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| config_error(e.line, format!("output_every = '{}': bad time list", e.value)))?;
        if times.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
            return Err(config_error(e.line, "output times must be positive"));
        }
        return Ok(OutputEvery::Times(times));
    }
    Err(config_error(e.line, format!("output_every = '{}': expected final, steps:<n> or times:<t1,t2,...>", e.value)))
}

impl RunConfig {
    /// Builds a validated configuration from file entries followed by
    /// overrides, later entries winning.
    pub fn from_entries(entries: &[Entry]) -> Result<RunConfig> {
        let mut last: Vec<&Entry> = Vec::new();
        for e in entries {
            last.retain(|x| x.key != e.key);
            last.push(e);
        }
        let get = |k: &str| last.iter().copied().find(|e| e.key == k);

        let case_entry = get("case").ok_or_else(|| Error::Config("missing required key 'case'".into()))?;
        let case_id = CaseId::from_name(&case_entry.value).map_err(|e| config_error(case_entry.line, e))?;
        let wrap =
            |e: &Entry, r: Error| config_error(e.line, r.to_string().trim_start_matches("configuration error: "));

        let gamma = get("gamma").map(positive).transpose()?;
        let eos = match (get("eos"), gamma) {
            (Some(e), g) => Some(Eos::from_name(&e.value, g).map_err(|r| wrap(e, r))?),
            (None, Some(g)) => match case(case_id).eos {
                Eos::Ideal { .. } => Some(Eos::ideal(g)?),
                other => {
                    return Err(Error::Config(format!(
                        "gamma only applies to the ideal eos, but case {case_id} uses {other}"
                    )))
                }
            },
            (None, None) => None,
        };
        if eos.is_some() && case_id == CaseId::Isentropic {
            return Err(Error::Config("the isentropic case is defined for the ideal eos with gamma 5/3 only".into()));
        }

        let scheme = match get("scheme") {
            Some(e) => Scheme::from_name(&e.value).map_err(|r| wrap(e, r))?,
            None => Scheme::Es5,
        };
        let schemes = match get("schemes") {
            Some(e) => list(e, |s| Scheme::from_name(s).map_err(|r| wrap(e, r)))?,
            None => Vec::new(),
        };
        let dissipation = match get("dissipation") {
            Some(e) => DissipationMode::from_name(&e.value).map_err(|r| wrap(e, r))?,
            None => DissipationMode::default(),
        };
        let time_integrator = match get("time_integrator") {
            Some(e) => Integrator::from_name(&e.value).map_err(|r| wrap(e, r))?,
            None => Integrator::default(),
        };
        let cfl = get("cfl").map(positive).transpose()?;
        let nx = get("nx").map(number::<usize>).transpose()?;
        let ny = get("ny").map(number::<usize>).transpose()?;
        let t_final = match get("t_final") {
            Some(e) => {
                let t: f64 = number(e)?;
                if !(t >= 0.0 && t.is_finite()) {
                    return Err(config_error(e.line, format!("t_final must be nonnegative, got {t}")));
                }
                Some(t)
            }
            None => None,
        };
        let dt_rule = get("dt_rule").map(dt_rule).transpose()?;
        let output_dir = get("output_dir").map(|e| PathBuf::from(&e.value)).unwrap_or_else(|| PathBuf::from("out"));
        let output_every = get("output_every").map(output_every).transpose()?.unwrap_or(OutputEvery::Final);
        let reference = match get("reference") {
            Some(e) => match e.value.to_ascii_lowercase().as_str() {
                "on" => true,
                "off" => false,
                other => return Err(config_error(e.line, format!("reference = '{other}': expected on or off"))),
            },
            None => false,
        };
        let refinement = match get("refinement") {
            Some(e) => {
                let r: usize = number(e)?;
                if r < MIN_REFINEMENT {
                    return Err(config_error(e.line, format!("refinement must be at least {MIN_REFINEMENT}, got {r}")));
                }
                r
            }
            None => MIN_REFINEMENT,
        };
        let ns = get("ns")
            .map(|e| list(e, |s| s.parse::<usize>().map_err(|_| config_error(e.line, format!("bad resolution '{s}'")))))
            .transpose()?;

        let cfg = RunConfig {
            case: case_id,
            eos,
            scheme,
            schemes,
            dissipation,
            time_integrator,
            cfl,
            nx,
            ny,
            t_final,
            dt_rule,
            output_dir,
            output_every,
            reference,
            refinement,
            ns,
        };
        cfg.case_spec()?.grid()?;
        Ok(cfg)
    }

    /// Reads a config file and applies overrides.
    pub fn load(path: Option<&Path>, overrides: &[String]) -> Result<RunConfig> {
        let mut entries = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
                parse_entries(&text)?
            }
            None => Vec::new(),
        };
        entries.extend(parse_overrides(overrides)?);
        RunConfig::from_entries(&entries)
    }

    /// The case with EOS, resolution and CFL overrides applied.
    pub fn case_spec(&self) -> Result<CaseSpec> {
        let mut spec = case(self.case);
        if let Some(eos) = self.eos {
            spec = spec.with_eos(eos);
        }
        if self.nx.is_some() || self.ny.is_some() {
            if spec.dim == 1 && self.ny.is_some_and(|n| n != 1) {
                return Err(Error::Config(format!("case {} is one-dimensional; ny does not apply", self.case)));
            }
            let nx = self.nx.unwrap_or(spec.nx);
            spec = spec.with_resolution(nx, self.ny);
        }
        if let Some(c) = self.cfl {
            spec.cfl = c;
        }
        if let Some(t) = self.t_final {
            spec.t_final = t;
        }
        Ok(spec)
    }

    /// Solver options for one scheme, with `default_rule` used when no
    /// `dt_rule` was configured.
    pub fn run_options(&self, scheme: Scheme, default_rule: DtRuleSpec) -> RunOptions {
        let rule = match self.dt_rule.unwrap_or(default_rule) {
            DtRuleSpec::Cfl => None,
            DtRuleSpec::Power(s) => Some(DtRule::Power {
                coefficient: self.cfl.unwrap_or(POWER_COEFFICIENT),
                exponent: s.unwrap_or_else(|| scheme.accuracy_power()),
            }),
        };
        let mut opts = RunOptions::new(scheme).with_mode(self.dissipation).with_integrator(self.time_integrator);
        opts.dt_rule = rule;
        opts.t_final = self.t_final;
        match &self.output_every {
            OutputEvery::Final => {}
            OutputEvery::Steps(k) => opts.snapshot_every = Some(*k),
            OutputEvery::Times(ts) => opts.snapshot_times = Some(ts.clone()),
        }
        opts
    }

    /// Schemes to compare: `schemes` if given, otherwise `scheme` alone.
    pub fn comparison_schemes(&self) -> Vec<Scheme> {
        if self.schemes.is_empty() {
            vec![self.scheme]
        } else {
            self.schemes.clone()
        }
    }
}
