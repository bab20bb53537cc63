//! Every bound the toolkit knows how to evaluate, instantiated for a handful
//! of groups and cross-checked for mutual consistency: exhaustive searches,
//! chain reductions through subgroup towers, transfers from progression-free
//! maxima, and the classical closed-form families.
//!
//! Run with `cargo run --release --example bound_report`.

use zslab::bounds::bounds_report;
use zslab::group::parse_group;

const BUDGET: u64 = 2_000_000;

fn main() {
    for literal in ["Z6", "Z3^2", "Z12", "Z9xZ3"] {
        let group = parse_group(literal).expect("literal parses");
        let report = bounds_report(&group, BUDGET).expect("group is in range");
        println!("{} (order {}, exponent {})", group, group.order(), group.exponent());
        for entry in &report.entries {
            let strict = if entry.strict { " (strict)" } else { "" };
            let partial = if entry.exhaustive { "" } else { " [budget-limited]" };
            let value = match entry.integer {
                Some(v) => v.to_string(),
                None => format!("{:.4}", entry.value),
            };
            println!(
                "  {}: {:<5} {:>9}  via {}{}{}",
                entry.quantity, entry.kind.to_string(), value, entry.source, strict, partial
            );
        }
        println!("  all rows mutually consistent: {}\n", report.consistent);
        assert!(report.consistent);
    }
}
