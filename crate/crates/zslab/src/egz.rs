//! Constructive zero-sum solving over any finite abelian group by recursive
//! reduction.
//!
//! The engine peels a group apart until only elementary abelian base cases
//! remain, where the subsequence DP of [`crate::zerosum`] does the finding:
//!
//! * **Sylow step** — split off the Sylow component of the largest prime as
//!   the subgroup `H`, with the remaining components as the quotient.
//! * **p-group step** — inside a Sylow component, use `H = pG` with
//!   `G/pG ≅ F_p^n`.
//!
//! Each step repeatedly extracts disjoint blocks of `exp(G/H)` items whose
//! image in the quotient sums to zero, pushes the block sums into `H`, and
//! solves the shorter `H`-sequence recursively. The recursion is driven by a
//! pluggable [`SOracle`] supplying (upper bounds on) the base-case constants
//! s(F_p^n), which determine how many input items the whole cascade needs.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::group::{canonicalize, AbelianGroup, GroupElement, PgroupSplit};
use crate::zerosum::{
    find_zero_sum_subsequence, s_exact, CertificateClaim, CertificateObject,
    ExtremalCertificate, GSequence, Witness,
};
use crate::{Error, Result};

/// Supplier of a length `L` such that every sequence of `L` elements of
/// `group` contains a zero-sum subsequence of length `exp(group)` — the
/// exact constant s(group) or any valid upper bound for it.
pub trait SOracle {
    fn s_upper(&mut self, group: &AbelianGroup) -> Result<u64>;
}

/// [`SOracle`] backed by the exhaustive multiset search, memoized. Errors
/// rather than returning anything unproven when the node budget runs out.
pub struct ExactSOracle {
    budget: u64,
    cache: HashMap<String, u64>,
}

impl ExactSOracle {
    pub fn new(budget: u64) -> Self {
        ExactSOracle { budget, cache: HashMap::new() }
    }
}

impl SOracle for ExactSOracle {
    fn s_upper(&mut self, group: &AbelianGroup) -> Result<u64> {
        if let Some(&v) = self.cache.get(&group.literal()) {
            return Ok(v);
        }
        let res = s_exact(group, self.budget)?;
        if !res.exhaustive() {
            return Err(Error::Internal(format!(
                "exact oracle budget exhausted on s({group})"
            )));
        }
        self.cache.insert(group.literal(), res.value);
        Ok(res.value)
    }
}

/// Which reduction a trace level used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionKind {
    /// Subgroup `pG` inside a p-group, quotient `F_p^n`.
    PGroup,
    /// Sylow component of the largest prime as subgroup, the rest as
    /// quotient.
    Sylow,
}

/// Replayable account of how a witness was assembled. `Base` levels hold a
/// direct DP witness; `Quotient` levels hold the extracted blocks, their
/// sums pushed into the subgroup, and the sub-solution over those sums.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum ReductionTrace {
    Base {
        group: AbelianGroup,
        indices: Vec<usize>,
    },
    Quotient {
        kind: ReductionKind,
        group: AbelianGroup,
        subgroup: AbelianGroup,
        quotient: AbelianGroup,
        /// Disjoint index blocks into the level's sequence, each of length
        /// `exp(quotient)` with quotient image summing to zero.
        blocks: Vec<Vec<usize>>,
        /// The block sums, pushed into the subgroup; the sequence the next
        /// level solves.
        h_items: Vec<GroupElement>,
        h_trace: Box<ReductionTrace>,
    },
}

impl ReductionTrace {
    /// Indices into the original sequence selected by the whole cascade,
    /// sorted ascending; always `exp(G)` of them.
    pub fn final_indices(&self) -> Vec<usize> {
        match self {
            ReductionTrace::Base { indices, .. } => {
                let mut v = indices.clone();
                v.sort_unstable();
                v
            }
            ReductionTrace::Quotient { blocks, h_trace, .. } => {
                let mut v: Vec<usize> = h_trace
                    .final_indices()
                    .into_iter()
                    .flat_map(|b| blocks[b].iter().copied())
                    .collect();
                v.sort_unstable();
                v
            }
        }
    }

    /// Replays every level against `seq`: blocks disjoint, of the right
    /// length, with zero quotient image and the claimed subgroup sums;
    /// recursively the same for the sub-trace; and the selected indices form
    /// a zero-sum subsequence of length `exp(G)`.
    pub fn verify(&self, seq: &GSequence) -> Result<bool> {
        if !self.verify_level(seq)? {
            return Ok(false);
        }
        let indices = self.final_indices();
        if indices.len() as u64 != seq.group().exponent() {
            return Ok(false);
        }
        let sum = seq.group().sum(indices.iter().map(|&i| &seq.items()[i]))?;
        Ok(sum == seq.group().identity())
    }

    fn verify_level(&self, seq: &GSequence) -> Result<bool> {
        match self {
            ReductionTrace::Base { group, indices } => {
                if group != seq.group() {
                    return Ok(false);
                }
                let distinct: HashSet<usize> = indices.iter().copied().collect();
                Ok(distinct.len() == indices.len()
                    && indices.iter().all(|&i| i < seq.len()))
            }
            ReductionTrace::Quotient { kind, group, subgroup, quotient, blocks, h_items, h_trace } => {
                if group != seq.group() {
                    return Ok(false);
                }
                let view = match SplitView::for_group(group, *kind) {
                    Ok(v) => v,
                    Err(_) => return Ok(false),
                };
                if view.subgroup() != subgroup || view.quotient() != quotient {
                    return Ok(false);
                }
                if blocks.len() != h_items.len() {
                    return Ok(false);
                }
                let exp_q = quotient.exponent() as usize;
                let mut seen = HashSet::new();
                for (block, h) in blocks.iter().zip(h_items) {
                    if block.len() != exp_q
                        || block.iter().any(|&i| i >= seq.len() || !seen.insert(i))
                    {
                        return Ok(false);
                    }
                    let sum = group.sum(block.iter().map(|&i| &seq.items()[i]))?;
                    match view.h_part(&sum) {
                        Ok(part) if part == *h => {}
                        _ => return Ok(false),
                    }
                }
                let h_seq = GSequence::new(subgroup.clone(), h_items.clone())?;
                h_trace.verify(&h_seq)
            }
        }
    }
}

/// What [`solve_general`] produced.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum SolveOutcome {
    Solved {
        witness: Witness,
        trace: ReductionTrace,
    },
    /// Exhaustive DP proved no witness exists; the input itself certifies a
    /// lower bound for s(G).
    NoWitness { certificate: ExtremalCertificate },
}

/// Number of input items the recursive solver demands before it guarantees
/// a witness: the oracle value on elementary groups, and
/// `exp(G/H)·(L(H) − 1) + L(G/H)` up the reduction chain.
pub fn required_length(group: &AbelianGroup, oracle: &mut dyn SOracle) -> Result<u64> {
    if group.elementary_form().is_some() {
        return oracle.s_upper(group);
    }
    if group.p_group_prime().is_some() {
        let split = group.p_subgroup_quotient()?;
        let h = split.subgroup.as_ref().expect("non-elementary p-group has pG ≠ 0");
        let q = &split.quotient;
        return Ok(q.exponent() * (required_length(h, oracle)? - 1) + oracle.s_upper(q)?);
    }
    let (rest, last, _) = sylow_rest_last(group)?;
    Ok(rest.exponent() * (required_length(&last, oracle)? - 1) + required_length(&rest, oracle)?)
}

/// Splits a multi-prime group into all Sylow components except the last
/// (`rest`), the component of the largest prime (`last`), and the factor
/// position where the two meet.
fn sylow_rest_last(group: &AbelianGroup) -> Result<(AbelianGroup, AbelianGroup, usize)> {
    let factors = group.factors();
    let p_last = factors.last().expect("groups are nontrivial").prime;
    let split_at = factors
        .iter()
        .position(|f| f.prime == p_last)
        .expect("last prime occurs");
    if split_at == 0 {
        return Err(Error::InvalidInput(format!(
            "{group} has a single Sylow component; nothing to split"
        )));
    }
    let values: Vec<u64> = factors.iter().map(|f| f.value()).collect();
    let rest = canonicalize(&values[..split_at])?;
    let last = canonicalize(&values[split_at..])?;
    Ok((rest, last, split_at))
}

/// Uniform view of one reduction step: how to project to the quotient and
/// how to read a zero-quotient element as a subgroup element.
enum SplitView {
    PGroup(PgroupSplit),
    Sylow { rest: AbelianGroup, last: AbelianGroup, split_at: usize },
}

impl SplitView {
    fn for_group(group: &AbelianGroup, kind: ReductionKind) -> Result<SplitView> {
        match kind {
            ReductionKind::PGroup => {
                let split = group.p_subgroup_quotient()?;
                if split.subgroup.is_none() {
                    return Err(Error::InvalidInput(format!(
                        "{group} is elementary abelian; solve it directly"
                    )));
                }
                Ok(SplitView::PGroup(split))
            }
            ReductionKind::Sylow => {
                if group.p_group_prime().is_some() {
                    return Err(Error::InvalidInput(format!(
                        "{group} has a single Sylow component; nothing to split"
                    )));
                }
                let (rest, last, split_at) = sylow_rest_last(group)?;
                Ok(SplitView::Sylow { rest, last, split_at })
            }
        }
    }

    fn kind(&self) -> ReductionKind {
        match self {
            SplitView::PGroup(_) => ReductionKind::PGroup,
            SplitView::Sylow { .. } => ReductionKind::Sylow,
        }
    }

    fn subgroup(&self) -> &AbelianGroup {
        match self {
            SplitView::PGroup(split) => split.subgroup.as_ref().expect("checked in for_group"),
            SplitView::Sylow { last, .. } => last,
        }
    }

    fn quotient(&self) -> &AbelianGroup {
        match self {
            SplitView::PGroup(split) => &split.quotient,
            SplitView::Sylow { rest, .. } => rest,
        }
    }

    fn project(&self, x: &GroupElement) -> Result<GroupElement> {
        match self {
            SplitView::PGroup(split) => split.project(x),
            SplitView::Sylow { split_at, .. } => {
                Ok(GroupElement::new(x.coords[..*split_at].to_vec()))
            }
        }
    }

    /// Reads an element with zero quotient image as a subgroup element;
    /// errors if the image is not zero.
    fn h_part(&self, x: &GroupElement) -> Result<GroupElement> {
        match self {
            SplitView::PGroup(split) => split.h_preimage(x)?.ok_or_else(|| {
                Error::Internal("block sum is not divisible by p".into())
            }),
            SplitView::Sylow { split_at, .. } => {
                if x.coords[..*split_at].iter().any(|&c| c != 0) {
                    return Err(Error::Internal(
                        "block sum has nonzero small-prime part".into(),
                    ));
                }
                Ok(GroupElement::new(x.coords[*split_at..].to_vec()))
            }
        }
    }
}

/// Base case: a direct DP witness of length `exp(G) = p` over an elementary
/// abelian group, as a one-level trace. The caller must supply enough items
/// (an [`SOracle`] value); a miss signals that the guarantee was violated.
pub fn solve_base(seq: &GSequence) -> Result<(Witness, ReductionTrace)> {
    let group = seq.group();
    if group.elementary_form().is_none() {
        return Err(Error::InvalidInput(format!(
            "{group} is not elementary abelian; use solve_general"
        )));
    }
    let e = group.exponent() as usize;
    let found = if seq.len() < e { None } else { find_zero_sum_subsequence(seq, e)? };
    match found {
        Some(witness) => {
            let Witness::ZeroSumSubsequence { ref indices } = witness else {
                unreachable!("the subsequence DP only emits index witnesses")
            };
            let trace = ReductionTrace::Base { group: group.clone(), indices: clone_sorted(indices) };
            Ok((witness, trace))
        }
        None => Err(Error::Internal(format!(
            "no zero-sum of length {e} in {} items over {group}; the length \
             guarantee of the caller was not met",
            seq.len()
        ))),
    }
}

fn clone_sorted(indices: &[usize]) -> Vec<usize> {
    let mut v = indices.to_vec();
    v.sort_unstable();
    v
}

/// One reduction level: extract `L(H)` disjoint zero-quotient blocks, solve
/// the block-sum sequence over the subgroup recursively, and pull the
/// sub-witness back through the blocks. Errors with `SequenceTooShort` when
/// fewer than `exp(G/H)·(L(H) − 1) + L(G/H)` items are supplied.
pub fn solve_via_quotient(
    seq: &GSequence,
    kind: ReductionKind,
    oracle: &mut dyn SOracle,
) -> Result<(Witness, ReductionTrace)> {
    let group = seq.group();
    let view = SplitView::for_group(group, kind)?;
    let h = view.subgroup().clone();
    let q = view.quotient().clone();
    let blocks_needed = required_length(&h, oracle)?;
    let exp_q = q.exponent();
    let needed = exp_q * (blocks_needed - 1) + required_length(&q, oracle)?;
    if (seq.len() as u64) < needed {
        return Err(Error::SequenceTooShort { required: needed as usize, actual: seq.len() });
    }

    let mut alive: Vec<usize> = (0..seq.len()).collect();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut h_items: Vec<GroupElement> = Vec::new();
    for _ in 0..blocks_needed {
        let projected: Vec<GroupElement> = alive
            .iter()
            .map(|&i| view.project(&seq.items()[i]))
            .collect::<Result<_>>()?;
        let pseq = GSequence::new(q.clone(), projected)?;
        let witness = find_zero_sum_subsequence(&pseq, exp_q as usize)?.ok_or_else(|| {
            Error::Internal(format!(
                "the {} remaining items must still contain a length-{exp_q} \
                 zero-sum over {q}; the supplied oracle over-promised",
                alive.len()
            ))
        })?;
        let Witness::ZeroSumSubsequence { indices } = witness else {
            unreachable!("the subsequence DP only emits index witnesses")
        };
        let block: Vec<usize> = indices.iter().map(|&i| alive[i]).collect();
        let sum = group.sum(block.iter().map(|&i| &seq.items()[i]))?;
        h_items.push(view.h_part(&sum)?);
        // `indices` ascends, so walk both lists once to drop the block
        let mut cut = indices.iter().copied().peekable();
        alive = alive
            .into_iter()
            .enumerate()
            .filter(|&(pos, _)| {
                if cut.peek() == Some(&pos) {
                    cut.next();
                    false
                } else {
                    true
                }
            })
            .map(|(_, i)| i)
            .collect();
        blocks.push(block);
    }

    let h_seq = GSequence::new(h.clone(), h_items.clone())?;
    let (h_witness, h_trace) = solve_guaranteed(&h_seq, oracle)?;
    let Witness::ZeroSumSubsequence { indices: h_indices } = h_witness else {
        unreachable!("recursive levels only emit index witnesses")
    };
    let mut indices: Vec<usize> = h_indices
        .iter()
        .flat_map(|&b| blocks[b].iter().copied())
        .collect();
    indices.sort_unstable();
    debug_assert_eq!(indices.len() as u64, group.exponent());
    let trace = ReductionTrace::Quotient {
        kind: view.kind(),
        group: group.clone(),
        subgroup: h,
        quotient: q,
        blocks,
        h_items,
        h_trace: Box::new(h_trace),
    };
    Ok((Witness::ZeroSumSubsequence { indices }, trace))
}

/// Recursive engine behind [`solve_general`]; precondition
/// `seq.len() ≥ required_length(G)`.
fn solve_guaranteed(seq: &GSequence, oracle: &mut dyn SOracle) -> Result<(Witness, ReductionTrace)> {
    let group = seq.group();
    if group.elementary_form().is_some() {
        solve_base(seq)
    } else if group.p_group_prime().is_some() {
        solve_via_quotient(seq, ReductionKind::PGroup, oracle)
    } else {
        solve_via_quotient(seq, ReductionKind::Sylow, oracle)
    }
}

/// Finds a zero-sum subsequence of length `exp(G)` in `seq`, constructively
/// when `seq` is long enough for the reduction cascade and by direct DP
/// otherwise. A `NoWitness` outcome carries an exhaustive-search
/// certificate, so it is a proof, not a shrug.
pub fn solve_general(seq: &GSequence, oracle: &mut dyn SOracle) -> Result<SolveOutcome> {
    let group = seq.group();
    let e = group.exponent() as usize;
    if seq.len() >= e && (seq.len() as u64) >= required_length(group, oracle)? {
        let (witness, trace) = solve_guaranteed(seq, oracle)?;
        return Ok(SolveOutcome::Solved { witness, trace });
    }
    let found = if seq.len() < e { None } else { find_zero_sum_subsequence(seq, e)? };
    match found {
        Some(witness) => {
            let Witness::ZeroSumSubsequence { ref indices } = witness else {
                unreachable!("the subsequence DP only emits index witnesses")
            };
            let trace =
                ReductionTrace::Base { group: group.clone(), indices: clone_sorted(indices) };
            Ok(SolveOutcome::Solved { witness, trace })
        }
        None => Ok(SolveOutcome::NoWitness {
            certificate: ExtremalCertificate {
                group: group.clone(),
                object: CertificateObject::Sequence(seq.items().to_vec()),
                claim: CertificateClaim::NoZeroSumSubsequence { length: e },
                exhaustive: true,
            },
        }),
    }
}

/// What lifting a sequence over F_p^n into F_p^{n+1} produced.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LiftOutcome {
    /// Some value occurs p times; those positions sum to p·x = 0 already.
    RepeatZeroSum { witness: Witness },
    /// All multiplicities are < p: the items become the distinct points
    /// (x, j) of F_p^{n+1}, j the occurrence number of x at that position.
    Lifted { points: crate::apfree::PointSet },
}

/// Trades repetition for dimension: a sequence over F_p^n either repeats
/// some value p times (an immediate zero-sum) or embeds injectively into
/// F_p^{n+1} by tagging each item with its occurrence count so far.
pub fn lift_sequence(seq: &GSequence) -> Result<LiftOutcome> {
    let (p, n) = seq
        .group()
        .elementary_form()
        .ok_or_else(|| Error::InvalidInput(format!("{} is not of the form F_p^n", seq.group())))?;
    let mut occurrences: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    let mut lifted: Vec<GroupElement> = Vec::new();
    for (i, x) in seq.items().iter().enumerate() {
        let positions = occurrences.entry(x.coords.clone()).or_default();
        let mut coords = x.coords.clone();
        coords.push(positions.len() as u64);
        lifted.push(GroupElement::new(coords));
        positions.push(i);
        if positions.len() as u64 == p {
            return Ok(LiftOutcome::RepeatZeroSum {
                witness: Witness::ZeroSumSubsequence { indices: positions.clone() },
            });
        }
    }
    let points =
        crate::apfree::PointSet::new(AbelianGroup::elementary(p, n + 1)?, lifted)?;
    Ok(LiftOutcome::Lifted { points })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const BUDGET: u64 = 500_000_000;

    fn oracle() -> ExactSOracle {
        ExactSOracle::new(BUDGET)
    }

    fn seq(literal: &str, indices: &[u64]) -> GSequence {
        let group = parse_group(literal).unwrap();
        GSequence::from_indices(group, indices).unwrap()
    }

    fn constant(literal: &str, indices: &[u64], count: usize) -> GSequence {
        seq(literal, &vec![indices[0]; count])
    }

    #[test]
    fn required_length_reference_values() {
        let mut oracle = oracle();
        for (literal, expect) in [
            ("Z3", 5),
            ("Z9", 17),
            ("Z6", 11),
            ("Z12", 23),
            ("Z6^2", 21),
            ("Z9xZ3", 21),
        ] {
            let group = parse_group(literal).unwrap();
            assert_eq!(required_length(&group, &mut oracle).unwrap(), expect, "{literal}");
        }
    }

    #[test]
    fn required_length_dominates_exact_constant() {
        let mut oracle = oracle();
        for literal in ["Z2", "Z3", "Z4", "Z5", "Z6", "Z9", "Z2^2", "Z3^2"] {
            let group = parse_group(literal).unwrap();
            let exact = s_exact(&group, BUDGET).unwrap();
            assert!(exact.exhaustive());
            assert!(
                required_length(&group, &mut oracle).unwrap() >= exact.value,
                "{literal}"
            );
        }
    }

    #[test]
    fn exact_oracle_caches_and_refuses_budget_misses() {
        let mut o = ExactSOracle::new(BUDGET);
        let g = parse_group("F3^2").unwrap();
        assert_eq!(o.s_upper(&g).unwrap(), 9);
        assert_eq!(o.s_upper(&g).unwrap(), 9);
        let mut starved = ExactSOracle::new(3);
        assert!(starved.s_upper(&parse_group("Z9").unwrap()).is_err());
    }

    #[test]
    fn solve_base_finds_and_reports() {
        let s = seq("Z3", &[0, 1, 2, 0]);
        let (w, trace) = solve_base(&s).unwrap();
        assert!(w.verify_with_length(&s, 3));
        assert_eq!(trace.final_indices(), vec![0, 1, 2]);
        assert!(trace.verify(&s).unwrap());

        // guarantee violated: short all-ones input has no length-3 zero-sum
        assert!(solve_base(&seq("Z3", &[1, 1])).is_err());
        // wrong shape
        assert!(solve_base(&seq("Z9", &[1, 1, 1])).is_err());
    }

    #[test]
    fn pgroup_step_on_homocyclic_nine() {
        let s = constant("Z9", &[1], 17);
        let mut o = oracle();
        let (w, trace) = solve_via_quotient(&s, ReductionKind::PGroup, &mut o).unwrap();
        assert!(w.verify_with_length(&s, 9));
        assert!(trace.verify(&s).unwrap());
        match &trace {
            ReductionTrace::Quotient { kind, subgroup, quotient, blocks, h_items, .. } => {
                assert_eq!(*kind, ReductionKind::PGroup);
                assert_eq!(subgroup.literal(), "Z3");
                assert_eq!(quotient.literal(), "Z3");
                assert_eq!(blocks.len(), 5);
                assert!(blocks.iter().all(|b| b.len() == 3));
                // every block of three 1s sums to 3 = embed(1)
                assert!(h_items.iter().all(|h| h.coords == [1]));
            }
            _ => panic!("expected a quotient level"),
        }
        assert_eq!(w, Witness::ZeroSumSubsequence { indices: (0..9).collect() });
    }

    #[test]
    fn sylow_step_on_z6() {
        let s = constant("Z6", &[5], 11); // index 5 = (1,2) ↔ residue 5
        let mut o = oracle();
        let (w, trace) = solve_via_quotient(&s, ReductionKind::Sylow, &mut o).unwrap();
        assert!(w.verify_with_length(&s, 6));
        assert!(trace.verify(&s).unwrap());
        match &trace {
            ReductionTrace::Quotient { kind, subgroup, quotient, blocks, .. } => {
                assert_eq!(*kind, ReductionKind::Sylow);
                assert_eq!(subgroup.literal(), "Z3");
                assert_eq!(quotient.literal(), "Z2");
                assert_eq!(blocks.len(), 5);
                assert!(blocks.iter().all(|b| b.len() == 2));
            }
            _ => panic!("expected a quotient level"),
        }
    }

    #[test]
    fn quotient_step_rejects_wrong_shapes_and_short_input() {
        let mut o = oracle();
        // elementary: no p-group step available
        assert!(
            solve_via_quotient(&constant("Z3", &[1], 9), ReductionKind::PGroup, &mut o).is_err()
        );
        // single Sylow component: no Sylow step available
        assert!(
            solve_via_quotient(&constant("Z9", &[1], 20), ReductionKind::Sylow, &mut o).is_err()
        );
        // ten items < 11 required
        match solve_via_quotient(&constant("Z6", &[1], 10), ReductionKind::Sylow, &mut o) {
            Err(Error::SequenceTooShort { required: 11, actual: 10 }) => {}
            other => panic!("expected SequenceTooShort, got {other:?}"),
        }
    }

    #[test]
    fn general_solver_random_battery() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut o = oracle();
        for literal in ["Z6", "Z9", "Z12", "Z6^2", "Z9xZ3"] {
            let group = parse_group(literal).unwrap();
            let len = required_length(&group, &mut o).unwrap();
            for _ in 0..40 {
                let indices: Vec<u64> =
                    (0..len).map(|_| rng.gen_range(0..group.order())).collect();
                let s = GSequence::from_indices(group.clone(), &indices).unwrap();
                match solve_general(&s, &mut o).unwrap() {
                    SolveOutcome::Solved { witness, trace } => {
                        assert!(witness.verify_with_length(&s, group.exponent() as usize));
                        assert!(trace.verify(&s).unwrap());
                        let Witness::ZeroSumSubsequence { indices } = &witness else {
                            panic!("solver emits index witnesses")
                        };
                        assert_eq!(*indices, trace.final_indices());
                    }
                    SolveOutcome::NoWitness { .. } => {
                        panic!("{literal}: guaranteed-length input must be solved")
                    }
                }
            }
        }
    }

    #[test]
    fn short_inputs_fall_back_to_direct_search() {
        let mut o = oracle();
        // solvable below the guarantee: six copies of (1,1) in Z6 = Z2xZ3
        let s = constant("Z6", &[5], 6);
        match solve_general(&s, &mut o).unwrap() {
            SolveOutcome::Solved { witness, trace } => {
                assert!(witness.verify_with_length(&s, 6));
                assert!(matches!(trace, ReductionTrace::Base { .. }));
                assert!(trace.verify(&s).unwrap());
            }
            _ => panic!("six copies of a generator sum to zero"),
        }

        // provably unsolvable: the certificate must survive re-verification
        let s = seq("Z3", &[1, 1, 2, 2]);
        match solve_general(&s, &mut o).unwrap() {
            SolveOutcome::NoWitness { certificate } => {
                assert!(certificate.exhaustive);
                assert!(certificate.reverify().unwrap());
            }
            _ => panic!("[1,1,2,2] has no length-3 zero-sum mod 3"),
        }

        // vacuously unsolvable: fewer items than exp(G)
        let s = seq("Z5", &[1]);
        assert!(matches!(
            solve_general(&s, &mut o).unwrap(),
            SolveOutcome::NoWitness { .. }
        ));
    }

    #[test]
    fn lift_dichotomy_reference_cases() {
        // three 1s over F_3: repeat branch
        match lift_sequence(&seq("Z3", &[1, 1, 1])).unwrap() {
            LiftOutcome::RepeatZeroSum { witness } => {
                assert_eq!(witness, Witness::ZeroSumSubsequence { indices: vec![0, 1, 2] });
            }
            _ => panic!("three repeats of 1 form a zero-sum"),
        }

        // [1,1,2] over F_3 lifts to {(1,0),(1,1),(2,0)} in F_3^2
        match lift_sequence(&seq("Z3", &[1, 1, 2])).unwrap() {
            LiftOutcome::Lifted { points } => {
                assert_eq!(points.group().literal(), "Z3^2");
                let coords: Vec<Vec<u64>> =
                    points.members().iter().map(|m| m.coords.clone()).collect();
                assert_eq!(coords, vec![vec![1, 0], vec![1, 1], vec![2, 0]]);
            }
            _ => panic!("multiplicities are below 3"),
        }

        assert!(lift_sequence(&seq("Z9", &[1, 1])).is_err());
    }

    #[test]
    fn lift_preserves_length_on_random_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let group = parse_group("F3^2").unwrap();
        for _ in 0..50 {
            let len = rng.gen_range(0..7);
            let indices: Vec<u64> = (0..len).map(|_| rng.gen_range(0..9)).collect();
            let s = GSequence::from_indices(group.clone(), &indices).unwrap();
            match lift_sequence(&s).unwrap() {
                LiftOutcome::RepeatZeroSum { witness } => {
                    assert!(witness.verify_with_length(&s, 3))
                }
                LiftOutcome::Lifted { points } => assert_eq!(points.len(), s.len()),
            }
        }
    }

    #[test]
    fn trace_serde_round_trip() {
        let s = constant("Z6", &[5], 11);
        let mut o = oracle();
        let SolveOutcome::Solved { trace, .. } = solve_general(&s, &mut o).unwrap() else {
            panic!("guaranteed length")
        };
        let json = serde_json::to_string(&trace).unwrap();
        assert!(json.contains("\"step\":\"quotient\""));
        assert!(json.contains("\"kind\":\"sylow\""));
        let back: ReductionTrace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, trace);
        assert!(back.verify(&s).unwrap());
    }
}
