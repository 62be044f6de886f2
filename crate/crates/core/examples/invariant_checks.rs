// The invariant suite that `lambda-fluor --check` runs.
//
//     cargo run --example invariant_checks

use lambda_fluor::checks;

fn main() {
    for c in checks::run_checks(2024, 100) {
        println!(
            "{} {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        );
    }
}
