//! Zero-sum subsequence search: an exact DP witness finder plus extremal
//! searches computing s(G) and g(G).
//!
//! s(G) is the smallest s such that every sequence of s elements of G (with
//! repetition allowed) contains a zero-sum subsequence of length exactly
//! exp(G); g(G) is the set analogue, asking for exp(G) *distinct* elements
//! summing to zero inside every large enough subset. Both are computed by
//! maximizing the extremal objects instead: a longest sequence / largest
//! subset with **no** such zero-sum selection, whose size plus one is the
//! constant.

use serde::{Deserialize, Serialize};

use crate::group::{AbelianGroup, GroupElement};
use crate::{Error, Result};

/// Exhaustive searches precompute an order × order index-addition table; this
/// caps the group order they accept.
pub const MAX_SEARCH_ORDER: u64 = 1024;

/// Soft memory limit for the witness DP table, in bytes.
const MAX_DP_BYTES: usize = 1 << 30;

/// An ordered sequence of group elements, duplicates allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSequence {
    group: AbelianGroup,
    items: Vec<GroupElement>,
}

impl GSequence {
    pub fn new(group: AbelianGroup, items: Vec<GroupElement>) -> Result<Self> {
        for x in &items {
            if !group.contains(x) {
                return Err(Error::InvalidElement(format!("{x} is not an element of {group}")));
            }
        }
        Ok(GSequence { group, items })
    }

    /// Builds a sequence from canonical element indices (test/CLI shorthand).
    pub fn from_indices(group: AbelianGroup, indices: &[u64]) -> Result<Self> {
        let items = indices
            .iter()
            .map(|&i| group.index_to_element(i))
            .collect::<Result<Vec<_>>>()?;
        Ok(GSequence { group, items })
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn items(&self) -> &[GroupElement] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// True when no two items are equal, i.e. the sequence is a set.
    pub fn is_set(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.items.iter().all(|x| seen.insert(x))
    }

    pub fn sum(&self) -> GroupElement {
        self.group.sum(&self.items).expect("items validated on construction")
    }
}

/// A verified-checkable zero-sum selection.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Positions into a sequence whose items sum to the identity.
    ZeroSumSubsequence { indices: Vec<usize> },
    /// Pairwise-distinct elements summing to the identity.
    DistinctZeroSumSet { elements: Vec<GroupElement> },
}

impl Witness {
    /// Number of selected items.
    pub fn len(&self) -> usize {
        match self {
            Witness::ZeroSumSubsequence { indices } => indices.len(),
            Witness::DistinctZeroSumSet { elements } => elements.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Structural check against the sequence (or set) the witness points
    /// into: indices distinct and in range (resp. elements distinct and
    /// members), and the selection sums to the identity. Length-m claims are
    /// checked with [`verify_with_length`](Self::verify_with_length).
    pub fn verify(&self, seq: &GSequence) -> bool {
        let group = seq.group();
        match self {
            Witness::ZeroSumSubsequence { indices } => {
                let mut seen = std::collections::HashSet::new();
                if !indices.iter().all(|&i| i < seq.len() && seen.insert(i)) {
                    return false;
                }
                let sum = group
                    .sum(indices.iter().map(|&i| &seq.items()[i]))
                    .expect("indices validated");
                sum == group.identity()
            }
            Witness::DistinctZeroSumSet { elements } => {
                let mut seen = std::collections::HashSet::new();
                if !elements.iter().all(|x| group.contains(x) && seen.insert(x)) {
                    return false;
                }
                if !elements.iter().all(|x| seq.items().contains(x)) {
                    return false;
                }
                match group.sum(elements) {
                    Ok(sum) => sum == group.identity(),
                    Err(_) => false,
                }
            }
        }
    }

    /// [`verify`](Self::verify) plus an exact length requirement (exp(G)
    /// when certifying s/g properties).
    pub fn verify_with_length(&self, seq: &GSequence, m: usize) -> bool {
        self.len() == m && self.verify(seq)
    }
}

/// A set of achievable partial sums, one bit per group index.
#[derive(Clone, PartialEq, Eq)]
struct SumSet {
    words: Vec<u64>,
}

impl SumSet {
    fn empty(order: usize) -> Self {
        SumSet { words: vec![0; order.div_ceil(64)] }
    }

    fn singleton_identity(order: usize) -> Self {
        let mut s = SumSet::empty(order);
        s.insert(0);
        s
    }

    fn insert(&mut self, idx: usize) {
        self.words[idx / 64] |= 1 << (idx % 64);
    }

    fn contains(&self, idx: usize) -> bool {
        self.words[idx / 64] >> (idx % 64) & 1 == 1
    }

    /// Adds `{ s + x : s ∈ other }` where `shift[s]` is the index of `s + x`.
    fn union_shifted(&mut self, other: &SumSet, shift: &[u32]) {
        for (wi, &word) in other.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let s = wi * 64 + bits.trailing_zeros() as usize;
                self.insert(shift[s] as usize);
                bits &= bits - 1;
            }
        }
    }
}

/// Precomputed index addition: `row(x)[s]` is the index of `element(x) +
/// element(s)`.
struct AddTable {
    order: usize,
    t: Vec<u32>,
}

impl AddTable {
    fn build(group: &AbelianGroup) -> Result<AddTable> {
        if group.order() > MAX_SEARCH_ORDER {
            return Err(Error::GroupTooLarge(format!(
                "exhaustive search needs order ≤ {MAX_SEARCH_ORDER}, got {}",
                group.order()
            )));
        }
        let order = group.order() as usize;
        let elems: Vec<GroupElement> = group.elements().collect();
        let mut t = vec![0u32; order * order];
        for (x, ex) in elems.iter().enumerate() {
            for (s, es) in elems.iter().enumerate() {
                let sum = group.add(ex, es)?;
                t[x * order + s] = group.element_to_index(&sum)? as u32;
            }
        }
        Ok(AddTable { order, t })
    }

    fn row(&self, x: usize) -> &[u32] {
        &self.t[x * self.order..(x + 1) * self.order]
    }
}

/// Finds a zero-sum subsequence of length exactly `m`, or proves none
/// exists. Exact: a suffix DP over (position, chosen count) marks every
/// achievable partial sum, then a forward walk reconstructs the
/// lexicographically smallest index set (take whenever the suffix can still
/// complete).
pub fn find_zero_sum_subsequence(seq: &GSequence, m: usize) -> Result<Option<Witness>> {
    if m < 1 || m > seq.len() {
        return Err(Error::InvalidInput(format!(
            "subsequence length {m} out of range 1..={}",
            seq.len()
        )));
    }
    let group = seq.group();
    let order = group.order() as usize;
    let n = seq.len();
    let words = order.div_ceil(64);
    if (n + 1) * (m + 1) * words * 8 > MAX_DP_BYTES {
        return Err(Error::GroupTooLarge(format!(
            "DP table for length {n} over {group} exceeds the memory cap"
        )));
    }

    // reach[i][j] = sums achievable by exactly j items of the suffix i..n.
    let mut reach: Vec<Vec<SumSet>> = vec![vec![SumSet::empty(order); m + 1]; n + 2];
    reach[n][0] = SumSet::singleton_identity(order);
    for i in (0..n).rev() {
        let mut shift = vec![0u32; order];
        for (s, slot) in shift.iter_mut().enumerate() {
            let es = group.index_to_element(s as u64)?;
            let sum = group.add(&es, &seq.items()[i])?;
            *slot = group.element_to_index(&sum)? as u32;
        }
        for j in 0..=m {
            let mut row = reach[i + 1][j].clone();
            if j > 0 {
                row.union_shifted(&reach[i + 1][j - 1], &shift);
            }
            reach[i][j] = row;
        }
    }
    if !reach[0][m].contains(0) {
        return Ok(None);
    }

    let mut indices = Vec::with_capacity(m);
    let mut partial = group.identity();
    let mut need = m;
    for i in 0..n {
        if need == 0 {
            break;
        }
        let with_item = group.add(&partial, &seq.items()[i])?;
        let rest = group.neg(&with_item)?;
        if reach[i + 1][need - 1].contains(group.element_to_index(&rest)? as usize) {
            indices.push(i);
            partial = with_item;
            need -= 1;
        }
    }
    debug_assert_eq!(need, 0, "DP said feasible but reconstruction failed");
    Ok(Some(Witness::ZeroSumSubsequence { indices }))
}

/// Finds `m` pairwise-distinct elements of the set summing to zero (the
/// g-side analogue of [`find_zero_sum_subsequence`]). The input must be a
/// set.
pub fn find_distinct_zero_sum_set(set: &GSequence, m: usize) -> Result<Option<Witness>> {
    if !set.is_set() {
        return Err(Error::InvalidInput("input contains repeated elements".into()));
    }
    if m > set.len() {
        return Ok(None);
    }
    if m < 1 {
        return Err(Error::InvalidInput("selection length must be ≥ 1".into()));
    }
    // Distinct positions of a set are distinct elements, so the subsequence
    // finder already solves this.
    match find_zero_sum_subsequence(set, m)? {
        Some(Witness::ZeroSumSubsequence { indices }) => {
            let elements = indices.iter().map(|&i| set.items()[i].clone()).collect();
            Ok(Some(Witness::DistinctZeroSumSet { elements }))
        }
        Some(Witness::DistinctZeroSumSet { .. }) => unreachable!(),
        None => Ok(None),
    }
}

/// What an extremal search claims about its certificate object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateClaim {
    /// No zero-sum subsequence of the given length exists in the object.
    NoZeroSumSubsequence { length: usize },
    /// No `length` pairwise-distinct members of the object sum to zero.
    NoDistinctZeroSumSet { length: usize },
}

/// The extremal object itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "items", rename_all = "kebab-case")]
pub enum CertificateObject {
    Sequence(Vec<GroupElement>),
    Set(Vec<GroupElement>),
}

impl CertificateObject {
    pub fn items(&self) -> &[GroupElement] {
        match self {
            CertificateObject::Sequence(items) | CertificateObject::Set(items) => items,
        }
    }
}

/// A zero-sum-free object together with the claim it certifies. When
/// `exhaustive` is true the surrounding search proved the object maximal;
/// otherwise it is only a best-known example (a valid lower-bound witness).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalCertificate {
    pub group: AbelianGroup,
    pub object: CertificateObject,
    pub claim: CertificateClaim,
    pub exhaustive: bool,
}

impl ExtremalCertificate {
    /// Re-runs the exact finder against the object and confirms the claim.
    pub fn reverify(&self) -> Result<bool> {
        let seq = GSequence::new(self.group.clone(), self.object.items().to_vec())?;
        match self.claim {
            CertificateClaim::NoZeroSumSubsequence { length } => {
                if length > seq.len() {
                    return Ok(true);
                }
                Ok(find_zero_sum_subsequence(&seq, length)?.is_none())
            }
            CertificateClaim::NoDistinctZeroSumSet { length } => {
                Ok(find_distinct_zero_sum_set(&seq, length)?.is_none())
            }
        }
    }
}

/// Result of an extremal search: the constant (or a lower bound for it when
/// the budget ran out), the extremal certificate, and the node count.
#[derive(Debug, Clone)]
pub struct SearchResult {
    pub value: u64,
    pub certificate: ExtremalCertificate,
    pub nodes: u64,
}

impl SearchResult {
    pub fn exhaustive(&self) -> bool {
        self.certificate.exhaustive
    }
}

/// Shared state of the two extremal searches.
struct Search<'a> {
    group: &'a AbelianGroup,
    e: usize,
    order: usize,
    add: AddTable,
    max_mult: u32,
    budget: u64,
    nodes: u64,
    out_of_budget: bool,
    best_len: usize,
    best_counts: Vec<u32>,
    counts: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(group: &'a AbelianGroup, max_mult: u32, budget: u64) -> Result<Self> {
        Ok(Search {
            group,
            e: group.exponent() as usize,
            order: group.order() as usize,
            add: AddTable::build(group)?,
            max_mult,
            budget,
            nodes: 0,
            out_of_budget: false,
            best_len: 0,
            best_counts: vec![0; group.order() as usize],
            counts: vec![0; group.order() as usize],
        })
    }

    /// Adds one copy of element `x` to the selection DP, or reports `None`
    /// when that completes a zero-sum of length e. `dp[j]` holds the sums of
    /// all exactly-j sub-selections.
    fn extend(&self, dp: &[SumSet], x: usize) -> Option<Vec<SumSet>> {
        let shift = self.add.row(x);
        let mut next = dp.to_vec();
        for j in (1..=self.e).rev() {
            let (lower, upper) = next.split_at_mut(j);
            upper[0].union_shifted(&lower[j - 1], shift);
        }
        if next[self.e].contains(0) {
            None
        } else {
            Some(next)
        }
    }

    fn record(&mut self, len: usize) {
        if len > self.best_len {
            self.best_len = len;
            self.best_counts.copy_from_slice(&self.counts);
        }
    }

    fn dfs(&mut self, pos: usize, dp: &[SumSet], len: usize) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.out_of_budget = true;
            return;
        }
        self.record(len);
        if pos == self.order {
            return;
        }
        // Even taking every remaining element at full multiplicity cannot
        // beat the incumbent.
        if len + (self.order - pos) * self.max_mult as usize <= self.best_len {
            return;
        }
        let mut dps: Vec<Vec<SumSet>> = Vec::with_capacity(self.max_mult as usize);
        while (dps.len() as u32) < self.max_mult {
            let base = dps.last().map_or(dp, |v| v.as_slice());
            match self.extend(base, pos) {
                Some(next) => dps.push(next),
                None => break,
            }
        }
        // Greedy: largest multiplicity first reaches long selections early,
        // which tightens the pruning bound.
        for c in (0..=dps.len()).rev() {
            if self.out_of_budget {
                return;
            }
            self.counts[pos] = c as u32;
            let child = if c == 0 { dp } else { dps[c - 1].as_slice() };
            self.dfs(pos + 1, child, len + c);
        }
        self.counts[pos] = 0;
    }

    fn best_items(&self) -> Vec<GroupElement> {
        let mut items = Vec::with_capacity(self.best_len);
        for (i, &c) in self.best_counts.iter().enumerate() {
            let x = self.group.index_to_element(i as u64).expect("index in range");
            for _ in 0..c {
                items.push(x.clone());
            }
        }
        items
    }

    fn run(&mut self) {
        let mut dp = vec![SumSet::empty(self.order); self.e + 1];
        dp[0] = SumSet::singleton_identity(self.order);
        self.dfs(0, &dp, 0);
    }
}

/// Computes s(G) exactly: the DFS maximizes a sequence with no zero-sum
/// subsequence of length exp(G), walking elements in canonical index order
/// with per-element multiplicity at most exp(G) − 1 (exp(G) copies of any x
/// already sum to zero) and pruning any branch whose selection DP completes
/// a zero-sum. If the node budget runs out, the returned value is the best
/// known lower bound and the certificate is flagged non-exhaustive.
pub fn s_exact(group: &AbelianGroup, budget: u64) -> Result<SearchResult> {
    let mut search = Search::new(group, group.exponent() as u32 - 1, budget)?;
    search.run();
    let exhaustive = !search.out_of_budget;
    let value = search.best_len as u64 + 1;
    let certificate = ExtremalCertificate {
        group: group.clone(),
        object: CertificateObject::Sequence(search.best_items()),
        claim: CertificateClaim::NoZeroSumSubsequence { length: search.e },
        exhaustive,
    };
    Ok(SearchResult { value, certificate, nodes: search.nodes })
}

/// Computes g(G) exactly: like [`s_exact`] but over subsets (multiplicity at
/// most 1) and distinct-element zero-sums. When the whole group contains no
/// exp(G) distinct elements summing to zero the question is vacuous for
/// every subset, so g(G) = |G| + 1 with the full group as certificate.
pub fn g_exact(group: &AbelianGroup, budget: u64) -> Result<SearchResult> {
    let e = group.exponent() as usize;
    let full = GSequence::new(group.clone(), group.elements().collect())?;
    if e > full.len() || find_distinct_zero_sum_set(&full, e)?.is_none() {
        let certificate = ExtremalCertificate {
            group: group.clone(),
            object: CertificateObject::Set(full.items().to_vec()),
            claim: CertificateClaim::NoDistinctZeroSumSet { length: e },
            exhaustive: true,
        };
        return Ok(SearchResult { value: group.order() + 1, certificate, nodes: 0 });
    }

    let mut search = Search::new(group, 1, budget)?;
    search.run();
    let exhaustive = !search.out_of_budget;
    let value = search.best_len as u64 + 1;
    let certificate = ExtremalCertificate {
        group: group.clone(),
        object: CertificateObject::Set(search.best_items()),
        claim: CertificateClaim::NoDistinctZeroSumSet { length: e },
        exhaustive,
    };
    Ok(SearchResult { value, certificate, nodes: search.nodes })
}
