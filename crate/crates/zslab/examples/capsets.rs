//! Largest progression-free subsets of F_p^n: exact branch-and-bound values,
//! an independent brute-force cross-check, and the product construction that
//! gives lower bounds in higher dimension.
//!
//! Run with `cargo run --release --example capsets`.

use zslab::apfree::{is_ap_free, product_construction, r_exact, r_naive};

const BUDGET: u64 = 200_000_000;

fn main() {
    println!("space    r(F_p^n)  witness");
    for (p, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1), (5, 2)] {
        let result = r_exact(p, n, BUDGET).expect("space is small enough");
        assert!(result.exhaustive, "budget too small for p={p}, n={n}");
        let members: Vec<String> =
            result.witness.members().iter().map(|m| m.to_string()).collect();
        println!("F_{p}^{n}    {:<9} {{{}}}", result.value, members.join(", "));
        assert!(is_ap_free(&result.witness));

        // The naive checker enumerates all subsets, so it only reaches tiny
        // spaces, but it shares no code with the branch-and-bound search.
        if p.pow(n) <= 27 {
            assert_eq!(r_naive(p, n).expect("space fits"), result.value);
        }
    }

    // Products of progression-free sets are progression-free, which turns the
    // 4-point cap in F_3^2 into a 16-point cap in F_3^4.
    let cap = r_exact(3, 2, BUDGET).expect("small space").witness;
    let product = product_construction(&cap, &cap).expect("same prime");
    println!(
        "\nproduct of the {}-cap with itself: {} points in F_3^4, progression-free: {}",
        cap.len(),
        product.len(),
        is_ap_free(&product)
    );
}
