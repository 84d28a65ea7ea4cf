//! Acceptance gate: one test per criterion, each printing a single
//! pass/fail line (visible under `cargo test --test acceptance -- --nocapture`)
//! and failing the build if the criterion does not hold.

use std::time::Instant;

use trijac::report::Check;
use trijac::triangle::TriParams;
use trijac::verify;

/// Relative tolerance for quadrature orthogonality of the bivariate basis.
const TOL_ORTHOGONALITY: f64 = 1e-10;
/// Relative tolerance for pointwise reconstruction through the connection.
const TOL_RECONSTRUCT: f64 = 1e-10;
/// Absolute tolerance for connection-matrix orthogonality defects.
const TOL_MATRIX_ORTH: f64 = 1e-12;
/// Absolute tolerance for symmetry of the norm-conjugated generator matrices.
const TOL_HERMITICITY: f64 = 1e-10;

const SEED: u64 = 0x7261_6361;

/// The three bivariate parameter sets the float suites run over.
fn float_sets() -> [(&'static str, TriParams<f64>); 3] {
    [
        ("unit", TriParams::new(0.0, 0.0, 0.0)),
        ("integer", TriParams::new(1.0, 2.0, 3.0)),
        ("generic", TriParams::new(0.5, 0.3, 1.7)),
    ]
}

fn report(criterion: &str, checks: &[Check], started: Instant) {
    let failed: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
    let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
    eprintln!(
        "acceptance {criterion}: {verdict} ({} checks, {:.2}s)",
        checks.len(),
        started.elapsed().as_secs_f64()
    );
    assert!(
        failed.is_empty(),
        "{criterion}: {} of {} checks failed; first: {} ({})",
        failed.len(),
        checks.len(),
        failed[0].id,
        failed[0].detail
    );
}

#[test]
fn criterion_1_exact_algebra_certification() {
    let t = Instant::now();
    let mut checks = verify::run_algebra(SEED, 5, 6).unwrap();
    checks.extend(verify::run_subalgebras(SEED, 5).unwrap());
    report("1 exact algebra certification", &checks, t);
}

#[test]
fn criterion_2_univariate_bispectrality() {
    let t = Instant::now();
    let checks = verify::run_univariate(SEED, 5, 8).unwrap();
    report("2 univariate bispectrality", &checks, t);
}

#[test]
fn criterion_3_bivariate_orthogonality() {
    let t = Instant::now();
    let mut checks = Vec::new();
    for (label, p) in float_sets() {
        checks.extend(verify::run_orthogonality(&p, label, 6, 24, TOL_ORTHOGONALITY).unwrap());
    }
    report("3 bivariate orthogonality", &checks, t);
}

#[test]
fn criterion_4_racah_certification() {
    let t = Instant::now();
    let checks = verify::run_racah(6).unwrap();
    report("4 discrete-family certification", &checks, t);
}

#[test]
fn criterion_5_connection_reconstruction() {
    let t = Instant::now();
    let mut checks = Vec::new();
    for (label, p) in float_sets() {
        checks.extend(
            verify::run_connection(
                &p,
                label,
                SEED,
                6,
                10,
                10,
                TOL_RECONSTRUCT,
                TOL_MATRIX_ORTH,
            )
            .unwrap(),
        );
    }
    report("5 connection reconstruction", &checks, t);
}

#[test]
fn criterion_6_intertwining() {
    let t = Instant::now();
    let checks = verify::run_intertwine(SEED, 6).unwrap();
    report("6 realization intertwining", &checks, t);
}

#[test]
fn criterion_7_symmetry_coherence() {
    let t = Instant::now();
    let checks = verify::run_group_coherence(6).unwrap();
    report("7 triangle-symmetry coherence", &checks, t);
}

#[test]
fn criterion_8_hermiticity() {
    let t = Instant::now();
    let checks = verify::run_hermiticity(SEED, 5, 24, TOL_HERMITICITY).unwrap();
    report("8 hermiticity", &checks, t);
}
