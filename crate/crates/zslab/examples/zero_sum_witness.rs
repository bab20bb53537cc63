//! Constructive zero-sum hunting: take a long random sequence over a
//! composite group, reduce it through subgroup/quotient layers, and read off
//! a verified zero-sum subsequence of length exp(G) plus the full reduction
//! trace that explains where it came from.
//!
//! Run with `cargo run --release --example zero_sum_witness`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use zslab::egz::{required_length, solve_general, ExactSOracle, SolveOutcome};
use zslab::group::parse_group;
use zslab::zerosum::GSequence;

fn main() {
    let group = parse_group("Z12").expect("literal parses");
    let mut oracle = ExactSOracle::new(100_000_000);

    // The solver guarantees a witness once the sequence is at least this
    // long; for Z12 the guarantee kicks in at 23 items.
    let needed = required_length(&group, &mut oracle).expect("base constants fit in budget");
    println!("group {group}: witness guaranteed at length {needed}");

    let mut rng = StdRng::seed_from_u64(2026);
    let order = group.order();
    let items: Vec<_> = (0..needed)
        .map(|_| group.index_to_element(rng.gen_range(0..order)).expect("index in range"))
        .collect();
    let seq = GSequence::new(group.clone(), items).expect("items belong to the group");

    match solve_general(&seq, &mut oracle).expect("sequence is long enough") {
        SolveOutcome::Solved { witness, trace } => {
            println!("witness: {}", serde_json::to_string(&witness).expect("serializes"));
            assert!(witness.verify_with_length(&seq, group.exponent() as usize));
            assert!(trace.verify(&seq).expect("trace is well-formed"));
            println!("trace:   {}", serde_json::to_string(&trace).expect("serializes"));
        }
        SolveOutcome::NoWitness { .. } => unreachable!("length guarantee rules this out"),
    }

    // Below the guaranteed length the solver falls back to a direct search
    // and either finds a witness anyway or proves that none exists.
    let short = GSequence::from_indices(group.clone(), &[1, 1, 2, 5]).expect("indices in range");
    match solve_general(&short, &mut oracle).expect("tiny search") {
        SolveOutcome::Solved { .. } => println!("short sequence: solved anyway"),
        SolveOutcome::NoWitness { certificate } => {
            println!(
                "short sequence: no witness, certificate re-verifies: {}",
                certificate.reverify().expect("well-formed")
            );
        }
    }
}
