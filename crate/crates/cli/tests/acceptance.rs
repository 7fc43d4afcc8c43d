//! One line per acceptance criterion at its stated tolerance.

use udw_cli::validate::run_acceptance;
use udw_core::matrix_elements::EvalOptions;

#[test]
fn acceptance() {
    let results = run_acceptance(&EvalOptions::default());
    for r in &results {
        println!("{}", r.line());
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.pass).map(|r| r.id.as_str()).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
