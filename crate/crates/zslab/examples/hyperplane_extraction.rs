//! The hyperplane dichotomy behind the g(F_p^n) ≤ 2p·r(F_p^{n-1}) bound: any
//! point set either contains many progressions through one center (which
//! yields a distinct zero-sum witness) or some affine hyperplane carries a
//! large progression-free part.
//!
//! Run with `cargo run --release --example hyperplane_extraction`.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use zslab::apfree::PointSet;
use zslab::extractor::{
    expectation_check, extract_apfree, g_bound_via_extraction, ExtractionMode, ExtractionOutcome,
};
use zslab::group::parse_group;

fn main() {
    let group = parse_group("F5^2").expect("literal parses");
    let mut rng = StdRng::seed_from_u64(7);

    // Sample a random 10-point subset of F_5^2.
    let mut indices: Vec<u64> = (0..group.order()).collect();
    indices.shuffle(&mut rng);
    indices.truncate(10);
    let set = PointSet::from_indices(group.clone(), &indices).expect("indices in range");

    // Averaged over all affine hyperplanes, the number of points on a plane
    // and the number of progressions inside it match two exact closed forms.
    let identity = expectation_check(&set).expect("elementary group, n >= 2");
    println!(
        "E[points on plane] = {} (predicted {})",
        identity.mean_x1, identity.predicted_x1
    );
    println!(
        "E[progressions in plane] = {} (predicted {})",
        identity.mean_x2, identity.predicted_x2
    );
    assert!(identity.holds());

    // Exhaustive extraction: scan for a heavy center first, otherwise pick
    // the best plane and delete one point per surviving progression.
    match extract_apfree(&set, ExtractionMode::Exhaustive).expect("valid input") {
        ExtractionOutcome::ZeroSum { center, witness } => {
            println!(
                "heavy center {center} gives witness {}",
                serde_json::to_string(&witness).expect("serializes")
            );
        }
        ExtractionOutcome::ApFreePart { hyperplane, x1, x2, part, deleted } => {
            println!(
                "best plane carries {x1} points and {x2} progressions; \
                 kept {} progression-free points after {} deletions",
                part.len(),
                deleted.len()
            );
            println!("plane: {}", serde_json::to_string(&hyperplane).expect("serializes"));
            // The guarantee: more than |A| / (2p) points survive.
            assert!(2 * 5 * part.len() as u64 > set.len() as u64);
        }
    }

    // The same machinery run end to end on exact data reproduces the bound
    // g(F_3^2) <= 6 * r(F_3^1).
    let check = g_bound_via_extraction(3, 2, 10_000_000).expect("small spaces");
    println!(
        "g(F_3^2) = {} <= {} = 2*3*r(F_3^1): {}",
        check.g_value, check.bound, check.holds
    );
    assert!(check.conclusive);
}
