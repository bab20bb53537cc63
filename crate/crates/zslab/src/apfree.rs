//! Three-term arithmetic progressions (APs): enumeration and centered-AP
//! counting over any finite abelian group, the centered-AP zero-sum builder,
//! exact r(F_p^n) — the largest AP-free subset size (cap sets for p = 3) —
//! via branch-and-bound, a deliberately naive cross-check oracle, and the
//! product and hyperplane-bijection constructions.
//!
//! An AP is a set {x, y, z} of three distinct elements with x + z = 2y; y is
//! the middle term. One set can admit several middles (in F_3 every element
//! of a line is a middle), so the canonical internal form is (middle,
//! unordered endpoint pair) and set-level queries deduplicate.

use serde::{Deserialize, Serialize};

use crate::extractor::Hyperplane;
use crate::group::{is_prime, AbelianGroup, GroupElement};
use crate::zerosum::Witness;
use crate::{Error, Result};

/// Branch-and-bound r searches use u128 point masks; this caps p^n.
pub const MAX_R_POINTS: u64 = 128;

/// The naive oracle enumerates every AP-free subset; keep it small.
pub const MAX_NAIVE_POINTS: u64 = 32;

/// A set of distinct group elements, kept sorted by canonical index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointSet {
    group: AbelianGroup,
    members: Vec<GroupElement>,
}

impl PointSet {
    pub fn new(group: AbelianGroup, mut members: Vec<GroupElement>) -> Result<Self> {
        let mut keys = Vec::with_capacity(members.len());
        for x in &members {
            keys.push(group.element_to_index(x)?);
        }
        keys.sort_unstable();
        if keys.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("point set has repeated members".into()));
        }
        members.sort_by_key(|x| group.element_to_index(x).expect("validated above"));
        Ok(PointSet { group, members })
    }

    pub fn from_indices(group: AbelianGroup, indices: &[u64]) -> Result<Self> {
        let members = indices
            .iter()
            .map(|&i| group.index_to_element(i))
            .collect::<Result<Vec<_>>>()?;
        PointSet::new(group, members)
    }

    /// The whole group as a point set.
    pub fn full(group: AbelianGroup) -> Self {
        let members = group.elements().collect();
        PointSet { group, members }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn members(&self) -> &[GroupElement] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.members.binary_search_by_key(
            &self.group.element_to_index(x).unwrap_or(u64::MAX),
            |m| self.group.element_to_index(m).expect("members validated"),
        )
        .is_ok()
    }

    /// Copy of the set with one member removed (no-op if absent).
    pub fn without(&self, x: &GroupElement) -> PointSet {
        let members = self.members.iter().filter(|m| *m != x).cloned().collect();
        PointSet { group: self.group.clone(), members }
    }
}

/// An AP with its designated middle term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApTriple {
    pub x: GroupElement,
    pub y: GroupElement,
    pub z: GroupElement,
}

impl ApTriple {
    pub fn new(
        group: &AbelianGroup,
        x: GroupElement,
        y: GroupElement,
        z: GroupElement,
    ) -> Result<Self> {
        if x == y || y == z || x == z {
            return Err(Error::InvalidInput("AP points must be pairwise distinct".into()));
        }
        let lhs = group.add(&x, &z)?;
        let rhs = group.scale(2, &y)?;
        if lhs != rhs {
            return Err(Error::InvalidInput(format!("{x} + {z} ≠ 2·{y}")));
        }
        Ok(ApTriple { x, y, z })
    }

    /// The three points as a set, sorted by canonical index.
    pub fn as_set(&self, group: &AbelianGroup) -> [GroupElement; 3] {
        let mut v = [self.x.clone(), self.y.clone(), self.z.clone()];
        v.sort_by_key(|e| group.element_to_index(e).expect("validated"));
        v
    }
}

/// Every AP whose three points lie in `a`, listed once per valid middle term
/// (one geometric set may appear up to three times). Endpoints are ordered
/// by canonical index.
pub fn enumerate_aps(a: &PointSet) -> Vec<ApTriple> {
    let group = a.group();
    // doubled[i] = members y of a with index(2y) = i
    let mut doubled: std::collections::HashMap<u64, Vec<&GroupElement>> =
        std::collections::HashMap::new();
    for y in a.members() {
        let two_y = group.scale(2, y).expect("member valid");
        doubled
            .entry(group.element_to_index(&two_y).expect("element valid"))
            .or_default()
            .push(y);
    }
    let mut out = Vec::new();
    for (i, x) in a.members().iter().enumerate() {
        for z in &a.members()[i + 1..] {
            let s = group.add(x, z).expect("members valid");
            let key = group.element_to_index(&s).expect("element valid");
            if let Some(middles) = doubled.get(&key) {
                for &y in middles {
                    if y != x && y != z {
                        out.push(ApTriple { x: x.clone(), y: y.clone(), z: z.clone() });
                    }
                }
            }
        }
    }
    out
}

/// The APs of `a` deduplicated to point sets (each sorted by index, list
/// sorted), i.e. the count the probabilistic argument calls T.
pub fn ap_sets(a: &PointSet) -> Vec<[GroupElement; 3]> {
    let group = a.group();
    let mut keyed: Vec<([u64; 3], [GroupElement; 3])> = enumerate_aps(a)
        .into_iter()
        .map(|t| {
            let set = t.as_set(group);
            let key = [
                group.element_to_index(&set[0]).expect("valid"),
                group.element_to_index(&set[1]).expect("valid"),
                group.element_to_index(&set[2]).expect("valid"),
            ];
            (key, set)
        })
        .collect();
    keyed.sort_by_key(|(k, _)| *k);
    keyed.dedup_by_key(|(k, _)| *k);
    keyed.into_iter().map(|(_, set)| set).collect()
}

pub fn is_ap_free(a: &PointSet) -> bool {
    enumerate_aps(a).is_empty()
}

/// Unordered pairs {a, b} ⊆ A \ {x} with a + b = 2x and a ≠ b: the APs with
/// middle term x. Two such pairs sharing one endpoint share both (b = 2x − a
/// is determined), so the returned pairs are pairwise disjoint. Each pair is
/// (smaller index, larger index); the list is sorted by first index.
pub fn aps_centered_at(a: &PointSet, x: &GroupElement) -> Result<Vec<(GroupElement, GroupElement)>> {
    if !a.contains(x) {
        return Err(Error::InvalidInput(format!("{x} is not a member of the set")));
    }
    let group = a.group();
    let two_x = group.scale(2, x)?;
    let mut out = Vec::new();
    for m in a.members() {
        if m == x {
            continue;
        }
        let partner = group.sub(&two_x, m)?;
        if partner == *m || partner == *x || !a.contains(&partner) {
            continue;
        }
        // keep each unordered pair once, from its smaller endpoint
        if group.element_to_index(m)? < group.element_to_index(&partner)? {
            out.push((m.clone(), partner));
        }
    }
    Ok(out)
}

/// The centered-AP zero-sum construction over F_p^n, p odd: if x has at
/// least (p−1)/2 APs centered on it, then x together with the first
/// (p−1)/2 endpoint pairs gives p pairwise-distinct members of A summing to
/// ((p−1)/2)·2x + x = p·x = 0.
pub fn zero_sum_from_centered_aps(a: &PointSet, x: &GroupElement) -> Result<Option<Witness>> {
    let (p, _) = a
        .group()
        .elementary_form()
        .ok_or_else(|| Error::InvalidInput(format!("{} is not of the form F_p^n", a.group())))?;
    if p == 2 {
        return Err(Error::InvalidInput("centered-AP construction needs odd p".into()));
    }
    let pairs = aps_centered_at(a, x)?;
    let need = (p as usize - 1) / 2;
    if pairs.len() < need {
        return Ok(None);
    }
    let mut elements = Vec::with_capacity(p as usize);
    elements.push(x.clone());
    for (a, b) in &pairs[..need] {
        elements.push(a.clone());
        elements.push(b.clone());
    }
    Ok(Some(Witness::DistinctZeroSumSet { elements }))
}

/// Result of an exact r search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RSearchResult {
    pub value: u64,
    pub witness: PointSet,
    pub exhaustive: bool,
    pub nodes: u64,
}

/// Computes r(F_p^n) exactly: maximum independent set in the 3-uniform
/// hypergraph whose edges are the AP sets, by include/exclude
/// branch-and-bound over points sorted by descending AP-degree. For p = 2
/// there are no APs at all (x + z = 2y forces x = z), so r = 2^n without
/// search.
pub fn r_exact(p: u64, n: u32, budget: u64) -> Result<RSearchResult> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be ≥ 1".into()));
    }
    let points = p
        .checked_pow(n)
        .filter(|&v| v <= MAX_R_POINTS)
        .ok_or_else(|| Error::GroupTooLarge(format!("r search needs p^n ≤ {MAX_R_POINTS}")))?;
    let group = AbelianGroup::elementary(p, n as usize)?;
    if p == 2 {
        return Ok(RSearchResult {
            value: points,
            witness: PointSet::full(group),
            exhaustive: true,
            nodes: 0,
        });
    }

    let full = PointSet::full(group.clone());
    let sets = ap_sets(&full);
    let n_pts = points as usize;
    let idx = |e: &GroupElement| group.element_to_index(e).expect("valid") as usize;

    // pair_masks[v]: for each AP set containing v, the mask of its other two
    // points; v can be included iff no such pair is already fully chosen.
    let mut pair_masks: Vec<Vec<u128>> = vec![Vec::new(); n_pts];
    let mut degree = vec![0u32; n_pts];
    for set in &sets {
        let ids = [idx(&set[0]), idx(&set[1]), idx(&set[2])];
        for (slot, &v) in ids.iter().enumerate() {
            let others: Vec<usize> =
                ids.iter().enumerate().filter(|&(j, _)| j != slot).map(|(_, &u)| u).collect();
            pair_masks[v].push((1u128 << others[0]) | (1u128 << others[1]));
            degree[v] += 1;
        }
    }
    let mut order: Vec<usize> = (0..n_pts).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degree[v]), v));

    struct Bb<'a> {
        order: &'a [usize],
        pair_masks: &'a [Vec<u128>],
        budget: u64,
        nodes: u64,
        out_of_budget: bool,
        best_size: u32,
        best_mask: u128,
    }

    impl Bb<'_> {
        fn dfs(&mut self, pos: usize, chosen: u128, size: u32) {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.out_of_budget = true;
                return;
            }
            if size > self.best_size {
                self.best_size = size;
                self.best_mask = chosen;
            }
            if pos == self.order.len()
                || size + (self.order.len() - pos) as u32 <= self.best_size
            {
                return;
            }
            let v = self.order[pos];
            let feasible =
                self.pair_masks[v].iter().all(|&pm| chosen & pm != pm);
            if feasible {
                self.dfs(pos + 1, chosen | (1u128 << v), size + 1);
                if self.out_of_budget {
                    return;
                }
            }
            self.dfs(pos + 1, chosen, size);
        }
    }

    let mut bb = Bb {
        order: &order,
        pair_masks: &pair_masks,
        budget,
        nodes: 0,
        out_of_budget: false,
        best_size: 0,
        best_mask: 0,
    };
    bb.dfs(0, 0, 0);

    let indices: Vec<u64> =
        (0..n_pts as u64).filter(|&i| bb.best_mask >> i & 1 == 1).collect();
    let witness = PointSet::from_indices(group, &indices)?;
    debug_assert!(is_ap_free(&witness));
    Ok(RSearchResult {
        value: bb.best_size as u64,
        witness,
        exhaustive: !bb.out_of_budget,
        nodes: bb.nodes,
    })
}

/// Independent oracle for r(F_p^n): a plain exhaustive DFS over AP-free
/// subsets in index order, re-deriving every AP membership test from raw
/// group arithmetic. Shares no tables, ordering heuristics, or bounds with
/// [`r_exact`] — only the problem statement.
pub fn r_naive(p: u64, n: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    p.checked_pow(n)
        .filter(|&v| v <= MAX_NAIVE_POINTS)
        .ok_or_else(|| Error::GroupTooLarge(format!("naive oracle needs p^n ≤ {MAX_NAIVE_POINTS}")))?;
    let group = AbelianGroup::elementary(p, n as usize)?;
    let elems: Vec<GroupElement> = group.elements().collect();

    fn extends_ap_free(group: &AbelianGroup, chosen: &[GroupElement], x: &GroupElement) -> bool {
        for (i, a) in chosen.iter().enumerate() {
            for b in &chosen[i + 1..] {
                // does {a, b, x} contain an AP in any middle assignment?
                let ab = group.add(a, b).unwrap();
                let ax = group.add(a, x).unwrap();
                let bx = group.add(b, x).unwrap();
                if ab == group.scale(2, x).unwrap()
                    || ax == group.scale(2, b).unwrap()
                    || bx == group.scale(2, a).unwrap()
                {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(group: &AbelianGroup, elems: &[GroupElement], pos: usize, chosen: &mut Vec<GroupElement>, best: &mut u64) {
        *best = (*best).max(chosen.len() as u64);
        if pos == elems.len() {
            return;
        }
        if extends_ap_free(group, chosen, &elems[pos]) {
            chosen.push(elems[pos].clone());
            dfs(group, elems, pos + 1, chosen, best);
            chosen.pop();
        }
        dfs(group, elems, pos + 1, chosen, best);
    }

    let mut best = 0;
    dfs(&group, &elems, 0, &mut Vec::new(), &mut best);
    Ok(best)
}

/// Cartesian product of AP-free sets (coordinates concatenated). Over F_p
/// the product of AP-free sets is AP-free, giving the classical
/// r(F_p^{m+k}) ≥ r(F_p^m)·r(F_p^k) lower-bound construction.
pub fn product_construction(a: &PointSet, b: &PointSet) -> Result<PointSet> {
    let (pa, na) = a
        .group()
        .elementary_form()
        .ok_or_else(|| Error::InvalidInput(format!("{} is not of the form F_p^n", a.group())))?;
    let (pb, nb) = b
        .group()
        .elementary_form()
        .ok_or_else(|| Error::InvalidInput(format!("{} is not of the form F_p^n", b.group())))?;
    if pa != pb {
        return Err(Error::InvalidInput(format!("mismatched primes {pa} and {pb}")));
    }
    if !is_ap_free(a) || !is_ap_free(b) {
        return Err(Error::InvalidInput("product construction needs AP-free inputs".into()));
    }
    let group = AbelianGroup::elementary(pa, na + nb)?;
    let mut members = Vec::with_capacity(a.len() * b.len());
    for u in a.members() {
        for v in b.members() {
            let mut coords = u.coords.clone();
            coords.extend_from_slice(&v.coords);
            members.push(GroupElement::new(coords));
        }
    }
    PointSet::new(group, members)
}

/// Transfers a subset of a hyperplane V ⊆ F_p^n to F_p^{n−1} through the
/// canonical affine bijection (dropping the pivot coordinate of V's normal;
/// membership in V determines it). Affine bijections preserve x + z = 2y in
/// both directions, so A is AP-free iff its image is.
pub fn hyperplane_transfer(v: &Hyperplane, a: &PointSet) -> Result<PointSet> {
    let (p, n) = a
        .group()
        .elementary_form()
        .ok_or_else(|| Error::InvalidInput(format!("{} is not of the form F_p^n", a.group())))?;
    if (p, n) != (v.prime(), v.dim()) {
        return Err(Error::InvalidInput("hyperplane and point set live in different spaces".into()));
    }
    if n < 2 {
        return Err(Error::InvalidInput("transfer needs dimension ≥ 2".into()));
    }
    let pivot = v.pivot();
    let mut members = Vec::with_capacity(a.len());
    for x in a.members() {
        if !v.contains(x) {
            return Err(Error::InvalidInput(format!("{x} does not lie on the hyperplane")));
        }
        let coords = x
            .coords
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != pivot)
            .map(|(_, &c)| c)
            .collect();
        members.push(GroupElement::new(coords));
    }
    PointSet::new(AbelianGroup::elementary(p, n - 1)?, members)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extractor::enumerate_hyperplanes;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64, n: usize) -> AbelianGroup {
        AbelianGroup::elementary(p, n).unwrap()
    }

    fn set(group: &AbelianGroup, indices: &[u64]) -> PointSet {
        PointSet::from_indices(group.clone(), indices).unwrap()
    }

    fn random_subset(group: &AbelianGroup, rng: &mut ChaCha8Rng) -> PointSet {
        let mut indices: Vec<u64> = (0..group.order()).collect();
        indices.shuffle(rng);
        let keep = rng.gen_range(0..=group.order()) as usize;
        PointSet::from_indices(group.clone(), &indices[..keep]).unwrap()
    }

    #[test]
    fn point_set_rejects_duplicates_and_sorts() {
        let g = f(3, 2);
        assert!(PointSet::from_indices(g.clone(), &[1, 1]).is_err());
        let s = PointSet::from_indices(g.clone(), &[8, 0, 4]).unwrap();
        let back: Vec<u64> =
            s.members().iter().map(|m| g.element_to_index(m).unwrap()).collect();
        assert_eq!(back, [0, 4, 8]);
    }

    #[test]
    fn full_line_has_every_middle() {
        let aps = enumerate_aps(&PointSet::full(f(3, 1)));
        assert_eq!(aps.len(), 3);
        let middles: Vec<u64> = aps.iter().map(|t| t.y.coords[0]).collect();
        let mut sorted = middles.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, [0, 1, 2]);
        assert_eq!(ap_sets(&PointSet::full(f(3, 1))).len(), 1);
    }

    #[test]
    fn square_corners_are_ap_free() {
        let g = f(3, 2);
        let corners = PointSet::new(
            g,
            vec![
                GroupElement::new(vec![0, 0]),
                GroupElement::new(vec![0, 1]),
                GroupElement::new(vec![1, 0]),
                GroupElement::new(vec![1, 1]),
            ],
        )
        .unwrap();
        assert!(enumerate_aps(&corners).is_empty());
        assert!(is_ap_free(&corners));
    }

    #[test]
    fn no_aps_exist_in_characteristic_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 1..=4 {
            for _ in 0..10 {
                let a = random_subset(&f(2, n), &mut rng);
                assert!(enumerate_aps(&a).is_empty());
            }
        }
    }

    #[test]
    fn ap_triple_constructor_validates() {
        let g = f(5, 1);
        let e = |i: u64| GroupElement::new(vec![i]);
        assert!(ApTriple::new(&g, e(0), e(1), e(2)).is_ok());
        assert!(ApTriple::new(&g, e(0), e(2), e(1)).is_err());
        assert!(ApTriple::new(&g, e(0), e(0), e(0)).is_err());
    }

    #[test]
    fn affine_maps_preserve_ap_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for group in [f(3, 2), f(5, 2)] {
            let p = group.factors()[0].prime;
            for _ in 0..20 {
                let a = random_subset(&group, &mut rng);
                let c = rng.gen_range(1..p) as i64;
                let t = group.index_to_element(rng.gen_range(0..group.order())).unwrap();
                let image: Vec<GroupElement> = a
                    .members()
                    .iter()
                    .map(|x| group.add(&group.scale(c, x).unwrap(), &t).unwrap())
                    .collect();
                let image = PointSet::new(group.clone(), image).unwrap();
                assert_eq!(ap_sets(&a).len(), ap_sets(&image).len());
                assert_eq!(is_ap_free(&a), is_ap_free(&image));
            }
        }
    }

    #[test]
    fn centered_pairs_spec_cases() {
        let line = PointSet::full(f(3, 1));
        let pairs = aps_centered_at(&line, &GroupElement::new(vec![1])).unwrap();
        assert_eq!(pairs, vec![(GroupElement::new(vec![0]), GroupElement::new(vec![2]))]);

        let f5 = PointSet::full(f(5, 1));
        let pairs = aps_centered_at(&f5, &GroupElement::new(vec![0])).unwrap();
        assert_eq!(
            pairs,
            vec![
                (GroupElement::new(vec![1]), GroupElement::new(vec![4])),
                (GroupElement::new(vec![2]), GroupElement::new(vec![3])),
            ]
        );

        let g = f(3, 2);
        let free = set(&g, &[0, 1, 3, 4]);
        for x in free.members() {
            assert!(aps_centered_at(&free, x).unwrap().is_empty());
        }
        assert!(aps_centered_at(&free, &GroupElement::new(vec![2, 2])).is_err());
    }

    #[test]
    fn centered_pairs_are_pairwise_disjoint_and_count_middles() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for group in [f(3, 2), f(5, 1), f(5, 2), f(7, 1)] {
            for _ in 0..20 {
                let a = random_subset(&group, &mut rng);
                let mut centered_total = 0;
                for x in a.members() {
                    let pairs = aps_centered_at(&a, x).unwrap();
                    centered_total += pairs.len();
                    let mut seen = std::collections::HashSet::new();
                    for (u, v) in &pairs {
                        assert!(seen.insert(u.clone()), "pair endpoints overlap");
                        assert!(seen.insert(v.clone()), "pair endpoints overlap");
                    }
                }
                // every AP listed by middle corresponds to one centered pair
                assert_eq!(centered_total, enumerate_aps(&a).len());
            }
        }
    }

    #[test]
    fn centered_zero_sum_spec_cases() {
        let line = PointSet::full(f(3, 1));
        let w = zero_sum_from_centered_aps(&line, &GroupElement::new(vec![1]))
            .unwrap()
            .unwrap();
        assert!(w.verify_with_length(
            &crate::zerosum::GSequence::from_indices(f(3, 1), &[0, 1, 2]).unwrap(),
            3
        ));

        let f5 = PointSet::full(f(5, 1));
        let w = zero_sum_from_centered_aps(&f5, &GroupElement::new(vec![0]))
            .unwrap()
            .unwrap();
        match &w {
            Witness::DistinctZeroSumSet { elements } => {
                let ids: Vec<u64> = elements.iter().map(|e| e.coords[0]).collect();
                assert_eq!(ids, [0, 1, 4, 2, 3]);
            }
            _ => panic!("wrong witness kind"),
        }

        // a single centered AP is not enough for p = 5
        let g = f(5, 2);
        let sparse = PointSet::new(
            g,
            vec![
                GroupElement::new(vec![0, 0]),
                GroupElement::new(vec![1, 0]),
                GroupElement::new(vec![4, 0]),
            ],
        )
        .unwrap();
        assert!(zero_sum_from_centered_aps(&sparse, &GroupElement::new(vec![0, 0]))
            .unwrap()
            .is_none());

        assert!(zero_sum_from_centered_aps(
            &PointSet::full(f(2, 2)),
            &GroupElement::new(vec![0, 0])
        )
        .is_err());
    }

    #[test]
    fn r_exact_small_values() {
        for (p, n, expect) in [(3, 1, 2), (3, 2, 4), (5, 1, 2)] {
            let r = r_exact(p, n, 100_000_000).unwrap();
            assert_eq!(r.value, expect, "r(F_{p}^{n})");
            assert!(r.exhaustive);
            assert_eq!(r.witness.len() as u64, expect);
            assert!(is_ap_free(&r.witness));
        }
    }

    #[test]
    fn r_exact_shortcircuits_characteristic_two() {
        let r = r_exact(2, 4, 10).unwrap();
        assert_eq!(r.value, 16);
        assert!(r.exhaustive);
        assert_eq!(r.nodes, 0);
        assert!(is_ap_free(&r.witness));
    }

    #[test]
    fn r_exact_rejects_bad_input() {
        assert!(r_exact(4, 2, 10).is_err());
        assert!(r_exact(3, 0, 10).is_err());
        assert!(r_exact(5, 4, 10).is_err());
    }

    #[test]
    fn naive_oracle_agrees_with_branch_and_bound() {
        for (p, n) in [(2, 1), (2, 3), (3, 1), (3, 2), (5, 1)] {
            assert_eq!(
                r_naive(p, n).unwrap(),
                r_exact(p, n, 100_000_000).unwrap().value,
                "oracle mismatch at p={p}, n={n}"
            );
        }
    }

    #[test]
    fn product_construction_multiplies_sizes() {
        let a = set(&f(3, 1), &[0, 1]);
        let b = set(&f(3, 1), &[0, 1]);
        let prod = product_construction(&a, &b).unwrap();
        assert_eq!(prod.len(), 4);
        assert_eq!(prod.group(), &f(3, 2));
        assert!(is_ap_free(&prod));

        let single = set(&f(3, 1), &[2]);
        let copy = product_construction(&a, &single).unwrap();
        assert_eq!(copy.len(), a.len());
        assert!(is_ap_free(&copy));

        let a5 = set(&f(5, 1), &[0, 1]);
        let prod5 = product_construction(&a5, &a5).unwrap();
        assert_eq!(prod5.len(), 4);
        assert!(is_ap_free(&prod5));

        assert!(product_construction(&PointSet::full(f(3, 1)), &a).is_err());
        assert!(product_construction(&a, &a5).is_err());
    }

    #[test]
    fn hyperplane_transfer_is_bijective_and_preserves_aps() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (p, n) in [(3u64, 2u32), (3, 3), (5, 2)] {
            let planes = enumerate_hyperplanes(p, n).unwrap();
            for v in planes.iter().take(6) {
                let on_v: Vec<GroupElement> = v.points().collect();
                assert_eq!(on_v.len() as u64, p.pow(n - 1));
                let a = PointSet::new(f(p, n as usize), on_v.clone()).unwrap();
                let image = hyperplane_transfer(v, &a).unwrap();
                // bijective on V: the image fills F_p^{n−1}
                assert_eq!(image.len() as u64, p.pow(n - 1));

                // AP sets correspond exactly under the transfer
                for _ in 0..5 {
                    let mut pick: Vec<GroupElement> = on_v.clone();
                    pick.shuffle(&mut rng);
                    let keep = rng.gen_range(0..=pick.len());
                    let sub = PointSet::new(f(p, n as usize), pick[..keep].to_vec()).unwrap();
                    let sub_image = hyperplane_transfer(v, &sub).unwrap();
                    assert_eq!(sub.len(), sub_image.len());
                    assert_eq!(ap_sets(&sub).len(), ap_sets(&sub_image).len());
                }
            }
        }
    }

    #[test]
    fn hyperplane_transfer_rejects_points_off_plane() {
        let planes = enumerate_hyperplanes(3, 2).unwrap();
        let v = &planes[0];
        let g = f(3, 2);
        let off: Vec<GroupElement> = g.elements().filter(|x| !v.contains(x)).take(1).collect();
        let a = PointSet::new(g, off).unwrap();
        assert!(hyperplane_transfer(v, &a).is_err());

        let empty = PointSet::new(f(3, 2), vec![]).unwrap();
        assert_eq!(hyperplane_transfer(v, &empty).unwrap().len(), 0);
    }
}
