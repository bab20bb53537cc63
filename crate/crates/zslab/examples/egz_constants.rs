//! Exhaustive computation of the zero-sum constants s(G) and g(G) for small
//! groups, together with the extremal objects that pin the values down.
//!
//! Run with `cargo run --release --example egz_constants`.

use zslab::group::parse_group;
use zslab::zerosum::{g_exact, s_exact};

const BUDGET: u64 = 100_000_000;

fn main() {
    println!("group      s(G)  g(G)  |G|+exp-1");
    for literal in ["Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z2^2", "Z3^2", "Z2^3", "Z9"] {
        let group = parse_group(literal).expect("literal parses");
        let s = s_exact(&group, BUDGET).expect("group is small enough");
        let g = g_exact(&group, BUDGET).expect("group is small enough");
        assert!(s.exhaustive() && g.exhaustive(), "budget too small");
        println!(
            "{:<10} {:<5} {:<5} {}",
            group.literal(),
            s.value,
            g.value,
            group.order() + group.exponent() - 1
        );
    }

    // The searches return certificates: a longest sequence with no zero-sum
    // subsequence of length exp(G), and a largest set with no distinct
    // zero-sum subset of that size. Both re-verify from scratch.
    let group = parse_group("Z3^2").expect("literal parses");
    let s = s_exact(&group, BUDGET).expect("search fits in budget");
    let cert = s.certificate;
    println!("\nextremal sequence for s(Z3^2) = {}:", s.value);
    for item in cert.object.items() {
        print!(" {item}");
    }
    println!();
    println!("certificate re-verifies: {}", cert.reverify().expect("well-formed"));

    let g = g_exact(&group, BUDGET).expect("search fits in budget");
    let cert = g.certificate;
    println!("\nextremal set for g(Z3^2) = {}:", g.value);
    for item in cert.object.items() {
        print!(" {item}");
    }
    println!();
    println!("certificate re-verifies: {}", cert.reverify().expect("well-formed"));
}
