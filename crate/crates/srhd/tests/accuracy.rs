//! Convergence on the smooth cases at the coarser resolutions against the
//! published error tables.

mod common;

use common::tables::{compare, order_range, SMOOTH1D_EC6_SSP, SMOOTH1D_ES5_RRK, SMOOTH2D_EC6_RC};
use srhd::cases::{case, CaseId};
use srhd::grid_solver::Scheme;
use srhd::run::{accuracy_sweep, DtRule, RunOptions};
use srhd::timeint::Integrator;

fn sweep(id: CaseId, scheme: Scheme, integrator: Integrator, ns: &[usize]) -> Vec<srhd::diagnostics::ErrorRow> {
    let opts = RunOptions::new(scheme).with_integrator(integrator).with_dt_rule(DtRule::accuracy(scheme));
    accuracy_sweep(&case(id), &opts, ns).unwrap()
}

#[test]
fn ec6_one_dimensional_errors_match() {
    let rows = sweep(CaseId::Smooth1d, Scheme::Ec6, Integrator::SspRk3, &[10, 20, 40]);
    let check = compare(&rows, &SMOOTH1D_EC6_SSP.first(3));
    assert!(check.within(1.05, 0.01), "{check:?} {rows:?}");
}

#[test]
fn es5_with_relaxation_converges_at_fifth_order() {
    let rows = sweep(CaseId::Smooth1d, Scheme::Es5, Integrator::Rrk3, &[10, 20, 40, 80]);
    let check = compare(&rows, &SMOOTH1D_ES5_RRK.first(4));
    assert!(check.within(2.0, 0.3), "{check:?} {rows:?}");
}

#[test]
fn ec4_converges_at_fourth_order() {
    let rows = sweep(CaseId::Smooth1d, Scheme::Ec4, Integrator::SspRk3, &[10, 20, 40, 80]);
    let (lo, hi) = order_range(&rows);
    assert!(lo >= 3.7 && hi <= 4.2, "orders {lo}..{hi}: {rows:?}");
}

#[test]
fn ec6_two_dimensional_errors_match() {
    let rows = sweep(CaseId::Smooth2d, Scheme::Ec6, Integrator::SspRk3, &[10, 20]);
    let check = compare(&rows, &SMOOTH2D_EC6_RC.first(2));
    assert!(check.within(1.05, 0.01), "{check:?} {rows:?}");
}
