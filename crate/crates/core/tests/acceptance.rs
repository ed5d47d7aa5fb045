//! Acceptance criteria 1–8. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::{Command, Output};

use biwave::cli::{run_verify, Report, Suite};

const SEED: u64 = 7;

/// `(check name, tolerance, minimum cases)`.
type Expect = (&'static str, f64, usize);

struct Outcome {
    pass: bool,
    detail: String,
}

fn judge(report: &Report, suite: &str, expected: &[Expect]) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for &(name, tol, min_cases) in expected {
        match report.get(suite, name) {
            Some(c) => {
                let ok = c.max_residual <= tol && c.cases >= min_cases && c.tolerance == tol;
                pass &= ok;
                parts.push(format!("{name}={:.2e}/{tol:.0e} (n={})", c.max_residual, c.cases));
            }
            None => {
                pass = false;
                parts.push(format!("{name}=missing"));
            }
        }
    }
    Outcome { pass, detail: parts.join(", ") }
}

fn algebra() -> Outcome {
    let r = run_verify(Suite::Algebra, 1000, SEED, None);
    judge(
        &r,
        "algebra",
        &[
            ("associativity", 1e-12, 1000),
            ("commutator_twice_cross", 1e-12, 1000),
            ("jacobi", 1e-12, 1000),
            ("conjugate_reverses_products", 1e-12, 1000),
            ("norm_law_real_quaternions", 1e-12, 1000),
            ("pseudonorm_law_selfconjugated", 1e-12, 1000),
            ("inverse_round_trip", 1e-10, 900),
        ],
    )
}

fn transforms() -> Outcome {
    let r = run_verify(Suite::Transforms, 1000, SEED, None);
    judge(
        &r,
        "transforms",
        &[
            ("poincare_pseudonorm", 1e-12, 1000),
            ("rotor_closed_form", 1e-12, 1000),
            ("boost_v06_example", 1e-14, 1),
            ("rotor_composition_action", 1e-12, 1000),
        ],
    )
}

fn diffops() -> Outcome {
    let r = run_verify(Suite::Diffops, 100, SEED, None);
    judge(
        &r,
        "diffops",
        &[
            ("matrix_vs_algebra", 1e-12, 100),
            ("operator_product_symbol", 0.0, 2),
            ("factorization_on_monomials", 1e-12, 40),
            ("factorization_order_minus_two", 0.2, 2),
        ],
    )
}

fn fundamental(r: &Report) -> Outcome {
    judge(
        r,
        "waves",
        &[
            ("wave_fundamental_solution", 1e-3, 3),
            ("kgfsh_fundamental_solution", 1e-3, 3),
            ("constant_source_retarded", 1e-8, 1),
        ],
    )
}

fn kirchhoff(r: &Report) -> Outcome {
    judge(r, "waves", &[("kirchhoff_plane_wave", 1e-3, 125), ("maxwell_pulse_residual", 1e-2, 2)])
}

fn shock(waves: &Report, physics: &Report) -> Outcome {
    let a = judge(waves, "waves", &[("shock_constraint_kernel", 1e-12, 100)]);
    let b = judge(physics, "physics", &[("em_shock_front", 1e-12, 100), ("em_longitudinal_rejected", 0.0, 100)]);
    Outcome { pass: a.pass && b.pass, detail: format!("{}, {}", a.detail, b.detail) }
}

fn spinors(physics: &Report) -> Outcome {
    judge(
        physics,
        "physics",
        &[
            ("xi_spinor_norms", 1e-12, 100),
            ("omega_spinor_norms", 1e-12, 100),
            ("xi_spinor_dirac_residual", 1e-10, 100),
            ("omega_spinor_residual", 1e-10, 100),
            ("xi_spinor_energy_impulse", 1e-12, 100),
        ],
    )
}

fn biwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biwave")).args(args).output().expect("spawn biwave")
}

fn cli_determinism() -> Outcome {
    let args = ["verify", "--suite", "all", "--seed", "7", "--n", "500"];
    let a = biwave(&args);
    let b = biwave(&args);
    let identical = a.stdout == b.stdout && !a.stdout.is_empty();
    let ok_code = a.status.code() == Some(0) && b.status.code() == Some(0);
    let tampered = biwave(&["verify", "--suite", "algebra", "--n", "50", "--tol", "1e-30"]).status.code();
    let usage = biwave(&["verify", "--suite", "nope"]).status.code();
    let missing = biwave(&["solve", "--kind", "biwave", "--config", "/nonexistent/config.json"]).status.code();
    let pass = identical && ok_code && tampered == Some(1) && usage == Some(2) && missing == Some(2);
    Outcome {
        pass,
        detail: format!(
            "identical={identical} ({} bytes), exit codes: run={:?} tol=1e-30->{tampered:?} bad-suite->{usage:?} missing-config->{missing:?}",
            a.stdout.len(),
            a.status.code()
        ),
    }
}

fn main() {
    let waves = run_verify(Suite::Waves, 100, SEED, None);
    let physics = run_verify(Suite::Physics, 100, SEED, None);
    let results = [
        ("1 algebra", algebra()),
        ("2 transforms", transforms()),
        ("3 diffops", diffops()),
        ("4 fundamental solutions", fundamental(&waves)),
        ("5 kirchhoff", kirchhoff(&waves)),
        ("6 shock fronts", shock(&waves, &physics)),
        ("7 spinors", spinors(&physics)),
        ("8 cli determinism", cli_determinism()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
