//! Acceptance gate: one check per criterion, each delegating to the
//! verification suites at the stated sizes and bounds. Prints one line per
//! criterion; run with `cargo test --test acceptance -- --nocapture` to see
//! them all.

use std::time::{Duration, Instant};

use qdouble_core::report::SuiteReport;
use qdouble_core::suites::{run_suite, SuiteParams};

fn params(n: usize, degree: usize) -> SuiteParams {
    SuiteParams { n, degree, seed: 0 }
}

struct Criterion {
    label: &'static str,
    reports: Vec<SuiteReport>,
    elapsed: Duration,
    budget: Option<Duration>,
}

fn run(label: &'static str, budget: Option<Duration>, specs: &[(&str, usize, usize)]) -> Criterion {
    let start = Instant::now();
    let reports = specs
        .iter()
        .map(|(suite, n, degree)| run_suite(suite, &params(*n, *degree)).expect("known suite"))
        .collect();
    Criterion {
        label,
        reports,
        elapsed: start.elapsed(),
        budget,
    }
}

fn assess(c: &Criterion) -> bool {
    let mut ok = true;
    let mut parts = Vec::new();
    for r in &c.reports {
        let (p, f, s) = r.counts();
        if !r.passed() {
            ok = false;
            for chk in &r.checks {
                if chk.status == qdouble_core::report::Status::Fail {
                    eprintln!("    [{} N={}] {}: {}", r.suite, r.n, chk.name, chk.detail);
                }
            }
        }
        parts.push(format!("{} N={}: {p}p/{f}f/{s}s", r.suite, r.n));
    }
    let mut time_note = format!("{:.2?}", c.elapsed);
    if let Some(b) = c.budget {
        if c.elapsed > b {
            ok = false;
            time_note = format!("{:.2?} exceeds budget {:.2?}", c.elapsed, b);
        } else {
            time_note = format!("{:.2?} within {:.2?}", c.elapsed, b);
        }
    }
    println!(
        "{}: {} ({}; {})",
        c.label,
        if ok { "PASS" } else { "FAIL" },
        parts.join("; "),
        time_note
    );
    ok
}

#[test]
fn acceptance() {
    let criteria = vec![
        run(
            "criterion 01 yang-baxter for the braiding matrix",
            Some(Duration::from_secs(5)),
            &[("yang_baxter", 2, 4), ("yang_baxter", 3, 4)],
        ),
        run(
            "criterion 02 coquasitriangularity axioms",
            None,
            &[("cqt_axioms", 2, 4), ("cqt_axioms", 3, 4)],
        ),
        run(
            "criterion 03 determinant pairs as the counit",
            None,
            &[
                ("det_grouplike_central", 2, 4),
                ("det_grouplike_central", 3, 4),
            ],
        ),
        run(
            "criterion 04 hopf axioms of the localized algebra",
            None,
            &[("hopf_axioms_glq", 2, 4), ("hopf_axioms_glq", 3, 4)],
        ),
        run(
            "criterion 05 generator value tables",
            None,
            &[("functional_tables", 2, 4), ("functional_tables", 3, 4)],
        ),
        run(
            "criterion 06 presentations verified to degree 4",
            Some(Duration::from_secs(600)),
            &[
                ("borel_presentation", 2, 4),
                ("uqext_presentation", 2, 4),
                ("borel_presentation", 3, 4),
                ("uqext_presentation", 3, 4),
            ],
        ),
        run(
            "criterion 07 pairing tables",
            None,
            &[("pairing_tables", 2, 4), ("pairing_tables", 3, 4)],
        ),
        run(
            "criterion 08 coinner formulas and splitting identities",
            None,
            &[("gamma_identities", 2, 3)],
        ),
        run(
            "criterion 09 double axioms and projections",
            None,
            &[("double_axioms", 2, 3), ("projection", 2, 3)],
        ),
        run(
            "criterion 10 closed forms against the pairing formulas",
            None,
            &[("braided_crosscheck", 2, 3), ("braided_crosscheck", 3, 3)],
        ),
        run(
            "criterion 11 yetter-drinfeld and braided hopf axioms",
            None,
            &[("yd_axioms", 2, 3), ("braided_hopf_axioms", 2, 3)],
        ),
        run(
            "criterion 12 yang-baxter operators of the module",
            None,
            &[("qybe_adjoint", 2, 4), ("qybe_adjoint", 3, 4)],
        ),
        run(
            "criterion 13 transmutation",
            None,
            &[("transmutation", 2, 4)],
        ),
    ];
    let mut all = true;
    for c in &criteria {
        all &= assess(c);
    }
    // criterion 10 additionally requires a complete verdict table: every
    // operation/generator cell must have produced a verdict
    for r in criteria
        .iter()
        .find(|c| c.label.contains("criterion 10"))
        .expect("present")
        .reports
        .iter()
    {
        let expected_cells = {
            let n = r.n;
            let action_kinds = 2 * n + 2 * (n - 1);
            action_kinds + n * n /* coaction */ + n * n /* mul rows */
                + n * n /* comul */ + n * n /* antipode */
        };
        assert_eq!(
            r.checks.len(),
            expected_cells,
            "incomplete verdict table at N = {}",
            r.n
        );
        assert!(
            r.checks
                .iter()
                .all(|c| c.status != qdouble_core::report::Status::Skipped),
            "verdict table contains skipped cells at N = {}",
            r.n
        );
    }
    assert!(all, "acceptance criteria failed; see lines above");
}
