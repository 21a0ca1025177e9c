//! Release gate: runs every acceptance criterion at its stated tolerance
//! and prints one pass/fail line per criterion.

use atomlab::validation::acceptance_criteria;

#[test]
fn acceptance_criteria_pass() {
    let results = acceptance_criteria();
    let mut failures = Vec::new();
    for result in &results {
        let status = if result.passed { "PASS" } else { "FAIL" };
        println!("{status} {} - {}", result.name, result.detail);
        if !result.passed {
            failures.push(result.name.clone());
        }
    }
    assert!(
        failures.is_empty(),
        "failed criteria: {}",
        failures.join(", ")
    );
}
