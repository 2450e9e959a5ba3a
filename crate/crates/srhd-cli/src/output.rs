//! CSV writers with fixed headers and 17 significant digits.

use std::io::Write;
use std::path::Path;

use srhd::diagnostics::{EntropyTrace, ErrorRow};
use srhd::eos::Eos;
use srhd::grid_solver::Grid;
use srhd::state::{prim_to_cons, Prim};
use srhd::{Error, Result};

pub const SOLUTION_1D_HEADER: [&str; 7] = ["x", "rho", "v1", "p", "D", "m1", "E"];
pub const SOLUTION_2D_HEADER: [&str; 6] = ["x", "y", "rho", "v1", "v2", "p"];
pub const ERRORS_HEADER: [&str; 5] = ["N", "l1", "l1_order", "l2", "l2_order"];

/// Scientific notation with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn csv_error(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

fn write_rows<W: Write>(out: W, path: &Path, header: &[String], rows: impl Iterator<Item = Vec<String>>) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(|e| csv_error(path, e))?;
    for row in rows {
        w.write_record(&row).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| csv_error(path, e))
}

fn write_file(path: &Path, header: &[String], rows: impl Iterator<Item = Vec<String>>) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|e| csv_error(path, e))?;
    write_rows(std::io::BufWriter::new(file), path, header, rows)
}

fn strings(h: &[&str]) -> Vec<String> {
    h.iter().map(|s| s.to_string()).collect()
}

/// Solution field: `x,rho,v1,p,D,m1,E` in 1D and `x,y,rho,v1,v2,p` in 2D,
/// row-major over `(j, i)`.
pub fn write_solution(path: &Path, grid: &Grid, eos: &Eos, prims: &[Prim]) -> Result<()> {
    if prims.len() != grid.cells() {
        return Err(Error::Config(format!("{} states for a grid of {} cells", prims.len(), grid.cells())));
    }
    if grid.dim == 1 {
        let rows = prims.iter().enumerate().map(|(i, p)| {
            let u: [f64; 3] = prim_to_cons(eos, p);
            [grid.x(i), p.rho, p.v[0], p.p, u[0], u[1], u[2]].map(fmt_f64).to_vec()
        });
        write_file(path, &strings(&SOLUTION_1D_HEADER), rows)
    } else {
        let rows = prims.iter().enumerate().map(|(k, p)| {
            let (i, j) = (k % grid.nx, k / grid.nx);
            [grid.x(i), grid.y(j), p.rho, p.v[0], p.v[1], p.p].map(fmt_f64).to_vec()
        });
        write_file(path, &strings(&SOLUTION_2D_HEADER), rows)
    }
}

/// Entropy trace: `t,total_entropy` plus `gamma_n` for relaxation runs.
pub fn write_entropy(path: &Path, trace: &EntropyTrace) -> Result<()> {
    let mut header = strings(&["t", "total_entropy"]);
    if trace.has_gamma() {
        header.push("gamma_n".into());
    }
    let rows = (0..trace.len()).map(|k| {
        let mut row = vec![fmt_f64(trace.t[k]), fmt_f64(trace.total[k])];
        if trace.has_gamma() {
            row.push(fmt_f64(trace.gamma[k]));
        }
        row
    });
    write_file(path, &header, rows)
}

/// Accuracy table: `N,l1,l1_order,l2,l2_order`; the first order is empty.
pub fn write_errors(path: &Path, rows: &[ErrorRow]) -> Result<()> {
    let body = rows
        .iter()
        .map(|r| vec![r.n.to_string(), fmt_f64(r.l1), fmt_opt(r.l1_order), fmt_f64(r.l2), fmt_opt(r.l2_order)]);
    write_file(path, &strings(&ERRORS_HEADER), body)
}

/// Snapshot index: `index,t,file`.
pub fn write_snapshot_index(path: &Path, entries: &[(f64, String)]) -> Result<()> {
    let rows = entries.iter().enumerate().map(|(k, (t, f))| vec![k.to_string(), fmt_f64(*t), f.clone()]);
    write_file(path, &strings(&["index", "t", "file"]), rows)
}

/// Any table of numbers with a caller-chosen header.
pub fn write_table(path: &Path, header: &[String], rows: &[Vec<f64>]) -> Result<()> {
    write_file(path, header, rows.iter().map(|r| r.iter().copied().map(fmt_f64).collect()))
}
