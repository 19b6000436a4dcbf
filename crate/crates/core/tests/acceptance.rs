//! The nine acceptance criteria at full scale. Prints one line per criterion
//! and exits with status 1 if any fails.

use std::process::ExitCode;
use std::time::Duration;

use grodiag::suites::{self, SuiteReport};

const SEED: u64 = 20240601;

struct Criterion {
    number: usize,
    title: &'static str,
    budget: Duration,
    run: fn() -> SuiteReport,
}

fn criteria() -> Vec<Criterion> {
    let secs = Duration::from_secs;
    vec![
        Criterion {
            number: 1,
            title: "Mobius inversion equals classical diagram (200 complexes, degrees 0-2)",
            budget: secs(120),
            run: || suites::mobius_matches_classical(SEED, 200),
        },
        Criterion {
            number: 2,
            title: "positivity (1000 modules per backend)",
            budget: secs(60),
            run: || suites::positivity(SEED, 1000),
        },
        Criterion {
            number: 3,
            title: "rank function is order reversing (1000 nested pairs)",
            budget: secs(60),
            run: || suites::order_reversing(SEED, 1000),
        },
        Criterion {
            number: 4,
            title: "corner-sum identity (1000 boxes)",
            budget: secs(60),
            run: || suites::corner_sums(SEED, 1000),
        },
        Criterion {
            number: 5,
            title: "box mass under interleaving (200 interleaved pairs)",
            budget: secs(120),
            run: || suites::interleaved_box_mass(SEED, 200),
        },
        Criterion {
            number: 6,
            title: "bottleneck solver equals oracle (500 pairs per backend)",
            budget: secs(120),
            run: || suites::bottleneck_vs_oracle(SEED, 500),
        },
        Criterion {
            number: 7,
            title: "stability (200 perturbations) and worked diagrams",
            budget: secs(120),
            run: || suites::stability(SEED, 200),
        },
        Criterion {
            number: 8,
            title: "interpolation endpoints and Lipschitz bound (50 pairs)",
            budget: secs(180),
            run: || suites::interpolation(SEED, 50),
        },
        Criterion {
            number: 9,
            title: "finite abelian golden case",
            budget: secs(1),
            run: suites::finab_golden,
        },
    ]
}

fn main() -> ExitCode {
    let mut failed = 0;
    for c in criteria() {
        let report = (c.run)();
        let status = if report.passed() { "PASS" } else { "FAIL" };
        let over = if report.elapsed > c.budget {
            format!(" (over the {}s budget)", c.budget.as_secs())
        } else {
            String::new()
        };
        println!(
            "criterion {} {status}: {} [{}/{} cases, {:.2}s{over}]",
            c.number,
            c.title,
            report.cases - report.failed,
            report.cases,
            report.elapsed.as_secs_f64()
        );
        for msg in &report.failures {
            println!("    {msg}");
        }
        if !report.passed() {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("all 9 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 9 criteria failed");
        ExitCode::FAILURE
    }
}
