//! Fully discrete entropy behaviour: conservation with relaxation for the
//! entropy-conservative scheme, monotone decay for the entropy-stable ones
//! on Riemann problems, and growth episodes for the non-ES comparison flux.

mod common;

use srhd::cases::{case, CaseId};
use srhd::diagnostics::EntropyTrace;
use srhd::grid_solver::Scheme;
use srhd::run::{run_case, RunOptions};
use srhd::timeint::Integrator;

fn trace(id: CaseId, scheme: Scheme, integrator: Integrator) -> EntropyTrace {
    let out = run_case(&case(id), &RunOptions::new(scheme).with_integrator(integrator))
        .unwrap_or_else(|e| panic!("{id} {scheme} {integrator}: {e}"));
    out.trace
}

#[test]
fn ec6_with_relaxation_conserves_entropy() {
    for id in [CaseId::Smooth1d, CaseId::Isentropic] {
        let drift = trace(id, Scheme::Ec6, Integrator::Rrk3).max_relative_drift();
        assert!(drift < 1e-10, "{id}: relative drift {drift:e}");
    }
}

#[test]
fn entropy_stable_schemes_decay_monotonically_on_riemann_problems() {
    for id in [CaseId::Rp2, CaseId::Rp3, CaseId::Rp4] {
        for scheme in [Scheme::Es5, Scheme::Es4] {
            let tr = trace(id, scheme, Integrator::Rrk3);
            assert!(tr.is_non_increasing(0.0), "{id} {scheme}: largest increase {:e}", tr.max_increase());
        }
    }
}

#[test]
fn non_es_flux_produces_entropy_while_es5_does_not() {
    let non_es = trace(CaseId::Isentropic, Scheme::NonEs5Rf, Integrator::SspRk3);
    let es = trace(CaseId::Isentropic, Scheme::Es5, Integrator::SspRk3);
    assert!(non_es.increases(0.0) > 0);
    assert!(es.is_non_increasing(0.0), "largest increase {:e}", es.max_increase());
}
