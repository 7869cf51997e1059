//! One PASS/FAIL line per acceptance criterion. Runs as a plain binary so the
//! lines are always shown; exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use bicensus::diag::ratio_trend_check;
use bicensus::verify::{
    bg2_suite, bicycle_residual_check, class_sums_suite, closed_form_suite, complete_fixture_check,
    diagonal_chain_suite, fixtures_suite, identities_suite, oracle_suite, partial_fraction_suite,
    pde_suite, unicycle_asymptotic_check,
};
use bicensus::{Check, Report};

fn merge(name: &str, parts: Vec<Report>) -> Report {
    let mut rep = Report::new(name);
    for p in parts {
        rep.extend(p);
    }
    rep
}

fn single(name: &str, checks: Vec<Check>) -> Report {
    let mut rep = Report::new(name);
    for c in checks {
        rep.push(c);
    }
    rep
}

type Criterion = (&'static str, &'static str, fn() -> Report);

const CRITERIA: [Criterion; 10] = [
    ("1", "census = brute force for r+s <= 8, all q", || {
        oracle_suite(8)
    }),
    (
        "2",
        "diagonal census reproduces the reference N_bi(n,1) and N_bi(n,2) tables",
        fixtures_suite,
    ),
    (
        "3",
        "closed form = census = PDE solver for k = 1..4 at truncation 12",
        || merge("three-route", vec![closed_form_suite(12), pde_suite(12)]),
    ),
    ("4", "series identities at truncation 10", || {
        identities_suite(10)
    }),
    (
        "5",
        "diagonal chain: w_n, convolution powers, unicycle formula, Abel identity",
        diagonal_chain_suite,
    ),
    ("6", "three forms of F2(x,x) agree to truncation 30", || {
        partial_fraction_suite(30)
    }),
    (
        "7",
        "sum of the nine J_B = F2 at truncation 12; class sums of a_3, b_3",
        || merge("bg2", vec![bg2_suite(12), class_sums_suite()]),
    ),
    (
        "8a",
        "N_bi(2000,1) within 5% of sqrt(pi/8) n^(n-1/2)",
        || single("8a", vec![unicycle_asymptotic_check(2000)]),
    ),
    ("8b", "second-order bicycle residual at n=400", || {
        single("8b", vec![bicycle_residual_check(400)])
    }),
    ("8c", "N_bi(n,2)/N(n,2) trend on 5 <= n <= 11", || {
        single("8c", vec![complete_fixture_check(8), ratio_trend_check()])
    }),
];

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (id, what, run) in CRITERIA {
        if !filter.is_empty() && !filter.iter().any(|f| f == id) {
            continue;
        }
        let start = Instant::now();
        let rep = run();
        let secs = start.elapsed().as_secs_f64();
        let tag = if rep.all_passed() { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {id}: {what} [{} checks, {secs:.1}s]",
            rep.checks.len()
        );
        for c in &rep.checks {
            if !c.passed || c.detail.is_some() {
                let mark = if c.passed { "ok" } else { "failed" };
                println!(
                    "    {mark}: {} ({})",
                    c.name,
                    c.detail.as_deref().unwrap_or("")
                );
            }
        }
        if !rep.all_passed() {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
