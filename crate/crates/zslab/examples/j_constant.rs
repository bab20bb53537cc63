//! The Ellenberg–Gijswijt envelope: r(F_p^n) grows at most like (J(p)·p)^n,
//! where J(p) minimizes a one-dimensional function that golden-section search
//! handles directly. This prints J(p) for small odd primes and compares the
//! envelope against exact progression-free maxima.
//!
//! Run with `cargo run --release --example j_constant`.

use zslab::apfree::r_exact;
use zslab::bounds::{j_constant, r_upper, DEFAULT_J_TOL, J_BRACKET};

fn main() {
    println!("p     J(p)");
    let mut last = 1.0_f64;
    for p in [3_u64, 5, 7, 11, 13, 17, 19, 23] {
        let j = j_constant(p, DEFAULT_J_TOL).expect("odd prime");
        println!("{:<5} {:.9}", p, j);
        assert!(j <= last, "J is non-increasing in p");
        assert!(j >= J_BRACKET.0 && j <= J_BRACKET.1);
        last = j;
    }

    println!("\nspace    exact  envelope (J(p)p)^n");
    for (p, n) in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2)] {
        let exact = r_exact(p, n, 200_000_000).expect("small space");
        assert!(exact.exhaustive);
        let envelope = r_upper(p, n).expect("odd prime");
        println!("F_{p}^{n}    {:<6} {:.4}", exact.value, envelope);
        assert!((exact.value as f64) <= envelope);
    }
}
