//! Shared helpers for the property suites.
#![allow(dead_code, clippy::needless_range_loop)]

pub mod suites;
pub mod tables;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use srhd::eos::Eos;
use srhd::state::Prim;

pub const EOSES: [Eos; 4] = [Eos::Ideal { gamma: 5.0 / 3.0 }, Eos::Rc, Eos::Ip, Eos::Tm];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

/// Random admissible state with `|v| ≤ 0.99`, `θ ∈ [1e-3, 1e3]` and
/// `ρ ∈ [1e-2, 1e2]`; `dim = 1` leaves `v₂ = 0`.
pub fn random_prim(rng: &mut ChaCha8Rng, dim: usize) -> Prim {
    let rho = log_uniform(rng, 1e-2, 1e2);
    let theta = log_uniform(rng, 1e-3, 1e3);
    let speed = 0.99 * rng.gen::<f64>().sqrt();
    let v = if dim == 1 {
        [if rng.gen::<bool>() { speed } else { -speed }, 0.0]
    } else {
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        [speed * phi.cos(), speed * phi.sin()]
    };
    Prim { rho, v, p: rho * theta }
}

/// Like [`random_prim`] but with `|v| = 0.99` exactly.
pub fn luminal_prim(rng: &mut ChaCha8Rng, dim: usize) -> Prim {
    let mut p = random_prim(rng, dim);
    let s = p.speed_sq().sqrt();
    if s == 0.0 {
        p.v = [0.99, 0.0];
    } else {
        p.v = [0.99 * p.v[0] / s, 0.99 * p.v[1] / s];
    }
    p
}

pub fn max_abs(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Directory of the stored reference fixtures.
pub fn data_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("data")
}

/// Reads a two-column `x,rho` profile written by [`write_profile`].
pub fn read_profile(path: &std::path::Path) -> Vec<(f64, f64)> {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    text.lines()
        .skip(1)
        .map(|l| {
            let (x, r) = l.split_once(',').expect("two columns");
            (x.parse().unwrap(), r.parse().unwrap())
        })
        .collect()
}

pub fn write_profile(path: &std::path::Path, xs: &[f64], rhos: &[f64]) {
    let mut text = String::from("x,rho\n");
    for (x, r) in xs.iter().zip(rhos) {
        text.push_str(&format!("{x:.16e},{r:.16e}\n"));
    }
    std::fs::write(path, text).unwrap();
}

/// Relative tolerance of golden snapshot comparisons.
pub const GOLDEN_RTOL: f64 = 1e-6;

/// A golden snapshot: output time and block-averaged density.
pub type GoldenSnapshot = (f64, Vec<f64>);

/// Averages a row-major `nx × ny` field over `bx × by` equal blocks.
pub fn block_means(field: &[f64], nx: usize, ny: usize, bx: usize, by: usize) -> Vec<f64> {
    assert!(nx.is_multiple_of(bx) && ny.is_multiple_of(by), "{nx}x{ny} does not split into {bx}x{by} blocks");
    let (sx, sy) = (nx / bx, ny / by);
    let mut out = vec![0.0; bx * by];
    for j in 0..ny {
        for i in 0..nx {
            out[(j / sy) * bx + i / sx] += field[j * nx + i];
        }
    }
    out.iter().map(|s| s / (sx * sy) as f64).collect()
}

/// Snapshots and final state of a two-dimensional run, block averaged.
pub fn golden_snapshots(out: &srhd::run::RunOutput, bx: usize, by: usize) -> Vec<GoldenSnapshot> {
    let (nx, ny) = (out.grid.nx, out.grid.ny);
    let rho = |prims: &[Prim]| -> Vec<f64> { prims.iter().map(|p| p.rho).collect() };
    let mut snaps: Vec<GoldenSnapshot> =
        out.snapshots.iter().map(|s| (s.t, block_means(&rho(&s.prims), nx, ny, bx, by))).collect();
    snaps.push((out.t, block_means(&rho(&out.prims), nx, ny, bx, by)));
    snaps
}

pub fn write_golden(path: &std::path::Path, snaps: &[GoldenSnapshot]) {
    let mut text = String::from("t,block,rho\n");
    for (t, blocks) in snaps {
        for (k, r) in blocks.iter().enumerate() {
            text.push_str(&format!("{t:.16e},{k},{r:.16e}\n"));
        }
    }
    std::fs::write(path, text).unwrap();
}

pub fn read_golden(path: &std::path::Path) -> Vec<GoldenSnapshot> {
    let text = std::fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let mut snaps: Vec<GoldenSnapshot> = Vec::new();
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let (t, r): (f64, f64) = (cols[0].parse().unwrap(), cols[2].parse().unwrap());
        match snaps.last_mut() {
            Some((last, blocks)) if *last == t => blocks.push(r),
            _ => snaps.push((t, vec![r])),
        }
    }
    snaps
}

/// Largest relative deviation of `snaps` from `golden`; infinite when the
/// output times or block counts differ.
pub fn golden_deviation(snaps: &[GoldenSnapshot], golden: &[GoldenSnapshot]) -> f64 {
    if snaps.len() != golden.len() {
        return f64::INFINITY;
    }
    let mut worst = 0.0f64;
    for ((t, a), (tg, b)) in snaps.iter().zip(golden) {
        if (t - tg).abs() > 1e-12 * tg.abs().max(1.0) || a.len() != b.len() {
            return f64::INFINITY;
        }
        for (x, y) in a.iter().zip(b) {
            worst = worst.max((x - y).abs() / y.abs().max(f64::MIN_POSITIVE));
        }
    }
    worst
}

/// Two-dimensional qualitative cases with the grid and block layout used for
/// golden snapshots at the given scale.
pub fn two_d_golden_cases(coarse: bool) -> Vec<(srhd::cases::CaseId, usize, usize, usize, usize)> {
    use srhd::cases::CaseId::*;
    let (r, bx, by) = if coarse { (2, 13, 6) } else { (1, 13, 6) };
    vec![
        (Rp2d1, 100 / r, 100 / r, 10, 10),
        (Rp2d2, 100 / r, 100 / r, 10, 10),
        (Rp2d3, 100 / r, 100 / r, 10, 10),
        (ShockBubbleLight, 130 / r, 36 / r, bx, by),
        (ShockBubbleHeavy, 130 / r, 36 / r, bx, by),
    ]
}

pub fn golden_path(id: srhd::cases::CaseId, nx: usize, ny: usize) -> std::path::PathBuf {
    data_dir().join(format!("golden_{id}_{nx}x{ny}.csv"))
}

/// Density `l¹` distance of a run to the stored LLF reference.
pub fn reference_l1(id: srhd::cases::CaseId, out: &srhd::run::RunOutput) -> f64 {
    let r: Vec<f64> = read_profile(&data_dir().join(format!("llf_{id}.csv"))).iter().map(|p| p.1).collect();
    srhd::reference_llf::l1_distance(&out.densities(), &r, out.grid.dx).unwrap()
}

/// Pinned `l¹` thresholds to the LLF references, per case.
pub fn shock_thresholds() -> Vec<(String, f64)> {
    let path = data_dir().join("shock_l1_thresholds.csv");
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    text.lines()
        .skip(1)
        .map(|l| {
            let cols: Vec<&str> = l.split(',').collect();
            (cols[0].to_string(), cols[2].parse().unwrap())
        })
        .collect()
}

pub fn shock_threshold(id: srhd::cases::CaseId) -> f64 {
    let name = id.to_string();
    shock_thresholds().into_iter().find(|(c, _)| *c == name).map(|(_, t)| t).expect("pinned threshold")
}

/// One-dimensional discontinuous cases compared against LLF references.
pub const SHOCK_CASES: [srhd::cases::CaseId; 6] = {
    use srhd::cases::CaseId::*;
    [Rp1, Rp2, Rp3, Rp4, DensityPert, Blast]
};

/// Factor between the measured `l¹` distance and its pinned threshold.
pub const SHOCK_THRESHOLD_FACTOR: f64 = 1.25;

/// The shock-capturing configuration: ES5 with Rusanov-type dissipation and
/// SSP-RK3 at the case CFL number and resolution.
pub fn shock_run(id: srhd::cases::CaseId) -> srhd::Result<srhd::run::RunOutput> {
    let opts = srhd::run::RunOptions::new(srhd::grid_solver::Scheme::Es5);
    srhd::run::run_case(&srhd::cases::case(id), &opts)
}

/// The golden two-dimensional configuration: ES5 with SSP-RK3 at the given
/// grid, snapshots at the case output times.
pub fn two_d_run(id: srhd::cases::CaseId, nx: usize, ny: usize) -> srhd::Result<srhd::run::RunOutput> {
    let c = srhd::cases::case(id).with_resolution(nx, Some(ny));
    srhd::run::run_case(&c, &srhd::run::RunOptions::new(srhd::grid_solver::Scheme::Es5))
}
