//! Finite abelian groups in canonical prime-power form.
//!
//! A group is stored as its invariant factorization into cyclic groups of
//! prime-power order, sorted by (prime ascending, exponent descending), so
//! `[12, 12]` canonicalizes to `Z4^2 x Z3^2`. Elements are mixed-radix
//! coordinate vectors with one residue per cyclic factor; the **leftmost
//! factor is the most significant digit** in the index encoding.
//!
//! Group literals: `Z6`, `Z6^2`, `Z3xZ9`, and `F3^4` (sugar for `(Z/3Z)^4`;
//! the `F` form requires a prime base). Products chain with `x`.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Index arithmetic (and therefore every exhaustive search) is limited to
/// this order.
pub const MAX_ORDER: u64 = 1 << 31;

/// One cyclic factor of prime-power order `prime^exp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub prime: u64,
    pub exp: u32,
}

impl Factor {
    pub fn value(&self) -> u64 {
        self.prime.pow(self.exp)
    }
}

/// A non-trivial finite abelian group, canonically decomposed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<Factor>,
    order: u64,
    exponent: u64,
}

/// An element, one residue per cyclic factor (`coords[i] < factors[i]`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

impl GroupElement {
    pub fn new(coords: Vec<u64>) -> Self {
        GroupElement { coords }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The p-part of a group: all factors whose order is a power of `prime`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowComponent {
    pub prime: u64,
    pub group: AbelianGroup,
    /// Number of cyclic factors of the component.
    pub cyclic_count: usize,
    pub exponent: u64,
}

pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Splits each order by CRT into prime-power cyclic factors and sorts them
/// canonically. The isomorphism class of the product is preserved.
pub fn canonicalize(orders: &[u64]) -> Result<AbelianGroup> {
    if orders.is_empty() {
        return Err(Error::InvalidInput("group must be non-trivial".into()));
    }
    let mut factors = Vec::new();
    for &k in orders {
        if k < 2 {
            return Err(Error::InvalidInput(format!("cyclic order {k} < 2")));
        }
        for (prime, exp) in factorize(k) {
            factors.push(Factor { prime, exp });
        }
    }
    factors.sort_by(|a, b| a.prime.cmp(&b.prime).then(b.exp.cmp(&a.exp)));
    let mut order: u64 = 1;
    for f in &factors {
        order = order
            .checked_mul(f.value())
            .filter(|&o| o <= MAX_ORDER)
            .ok_or_else(|| Error::GroupTooLarge(format!("order exceeds {MAX_ORDER}")))?;
    }
    let mut exponent = 1;
    for f in &factors {
        // canonical order puts the largest power of each prime first
        if exponent % f.prime != 0 {
            exponent *= f.value();
        }
    }
    Ok(AbelianGroup { factors, order, exponent })
}

impl AbelianGroup {
    /// `(Z/kZ)^n`.
    pub fn homocyclic(k: u64, n: usize) -> Result<AbelianGroup> {
        if n == 0 {
            return Err(Error::InvalidInput("group must be non-trivial".into()));
        }
        canonicalize(&vec![k; n])
    }

    /// `Z/kZ`.
    pub fn cyclic(k: u64) -> Result<AbelianGroup> {
        canonicalize(&[k])
    }

    /// `F_p^n`; `p` must be prime.
    pub fn elementary(p: u64, n: usize) -> Result<AbelianGroup> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        AbelianGroup::homocyclic(p, n)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// lcm of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(vec![0; self.factors.len()])
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.coords.len() == self.factors.len()
            && x.coords.iter().zip(&self.factors).all(|(&c, f)| c < f.value())
    }

    fn check(&self, x: &GroupElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::InvalidElement(format!("{x} is not an element of {self}")))
        }
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        self.check(y)?;
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .zip(&self.factors)
            .map(|((&a, &b), f)| (a + b) % f.value())
            .collect();
        Ok(GroupElement::new(coords))
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        let coords = x
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&a, f)| (f.value() - a) % f.value())
            .collect();
        Ok(GroupElement::new(coords))
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        let ny = self.neg(y)?;
        self.add(x, &ny)
    }

    /// `c · x` for any signed integer `c`.
    pub fn scale(&self, c: i64, x: &GroupElement) -> Result<GroupElement> {
        self.check(x)?;
        let coords = x
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&a, f)| {
                let q = f.value();
                let c_mod = c.rem_euclid(q as i64) as u64;
                (c_mod * a) % q
            })
            .collect();
        Ok(GroupElement::new(coords))
    }

    /// Sum of a slice of elements.
    pub fn sum<'a, I: IntoIterator<Item = &'a GroupElement>>(&self, xs: I) -> Result<GroupElement> {
        let mut acc = self.identity();
        for x in xs {
            acc = self.add(&acc, x)?;
        }
        Ok(acc)
    }

    /// Mixed-radix decoding; the leftmost factor is most significant.
    pub fn index_to_element(&self, i: u64) -> Result<GroupElement> {
        if i >= self.order {
            return Err(Error::InvalidIndex(format!("{i} >= order {}", self.order)));
        }
        let mut rem = i;
        let mut coords = vec![0; self.factors.len()];
        for (slot, f) in coords.iter_mut().zip(&self.factors).rev() {
            let q = f.value();
            *slot = rem % q;
            rem /= q;
        }
        Ok(GroupElement::new(coords))
    }

    /// Inverse of [`index_to_element`](Self::index_to_element).
    pub fn element_to_index(&self, x: &GroupElement) -> Result<u64> {
        self.check(x)?;
        let mut i = 0u64;
        for (&c, f) in x.coords.iter().zip(&self.factors) {
            i = i * f.value() + c;
        }
        Ok(i)
    }

    /// All elements in canonical index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.index_to_element(i).expect("index in range"))
    }

    /// `Some(p)` when every factor is a power of the same prime `p`.
    pub fn p_group_prime(&self) -> Option<u64> {
        let p = self.factors[0].prime;
        self.factors.iter().all(|f| f.prime == p).then_some(p)
    }

    /// `Some((p, n))` when the group is `F_p^n`.
    pub fn elementary_form(&self) -> Option<(u64, usize)> {
        let p = self.factors[0].prime;
        self.factors
            .iter()
            .all(|f| f.prime == p && f.exp == 1)
            .then_some((p, self.factors.len()))
    }

    /// `Some((k, n))` when the group is `(Z/kZ)^n`; cyclic groups report
    /// `n = 1`.
    pub fn homocyclic_form(&self) -> Option<(u64, usize)> {
        let mut k = 1u64;
        let mut n = None;
        let mut i = 0;
        while i < self.factors.len() {
            let f = self.factors[i];
            let mut j = i;
            while j < self.factors.len() && self.factors[j].prime == f.prime {
                if self.factors[j].exp != f.exp {
                    return None;
                }
                j += 1;
            }
            match n {
                None => n = Some(j - i),
                Some(n) if n != j - i => return None,
                _ => {}
            }
            k *= f.value();
            i = j;
        }
        n.map(|n| (k, n))
    }

    /// Splits into Sylow components, one per distinct prime, ordered by
    /// prime. The component orders multiply to `order(G)` and the component
    /// exponents multiply to `exp(G)`.
    pub fn sylow_split(&self) -> Vec<SylowComponent> {
        let mut out: Vec<SylowComponent> = Vec::new();
        for &f in &self.factors {
            match out.last_mut() {
                Some(c) if c.prime == f.prime => {
                    let mut factors = c.group.factors.clone();
                    factors.push(f);
                    c.group = AbelianGroup {
                        factors,
                        order: c.group.order * f.value(),
                        exponent: c.group.exponent,
                    };
                    c.cyclic_count += 1;
                }
                _ => out.push(SylowComponent {
                    prime: f.prime,
                    group: AbelianGroup {
                        factors: vec![f],
                        order: f.value(),
                        exponent: f.value(),
                    },
                    cyclic_count: 1,
                    exponent: f.value(),
                }),
            }
        }
        out
    }

    /// For a p-group, the subgroup `H = pG` together with the quotient
    /// `G/H ≅ F_p^n`. See [`PgroupSplit`].
    pub fn p_subgroup_quotient(&self) -> Result<PgroupSplit> {
        let prime = self
            .p_group_prime()
            .ok_or_else(|| Error::InvalidInput(format!("{self} is not a p-group")))?;
        let kept: Vec<usize> = (0..self.factors.len())
            .filter(|&i| self.factors[i].exp >= 2)
            .collect();
        let subgroup = if kept.is_empty() {
            None
        } else {
            let orders: Vec<u64> =
                kept.iter().map(|&i| prime.pow(self.factors[i].exp - 1)).collect();
            Some(canonicalize(&orders)?)
        };
        let quotient = AbelianGroup::homocyclic(prime, self.factors.len())?;
        Ok(PgroupSplit { source: self.clone(), prime, subgroup, quotient, kept })
    }

    /// Canonical literal, e.g. `Z4^2xZ3^2`.
    pub fn literal(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let q = self.factors[i].value();
            let mut j = i;
            while j < self.factors.len() && self.factors[j].value() == q {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z{q}"));
            } else {
                parts.push(format!("Z{q}^{}", j - i));
            }
            i = j;
        }
        parts.join("x")
    }
}

/// `Display` is the canonical literal; groups also serialize as that string.
impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.literal())
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        parse_group(&s).map_err(D::Error::custom)
    }
}

/// The `H = pG` split of a p-group `G` with factors `p^{a_1} ≥ … ≥ p^{a_n}`:
/// `H ≅ Π Z/p^{a_i−1}Z` over the factors with `a_i ≥ 2` (the rest vanish),
/// and `G/H ≅ F_p^n` via coordinate-wise reduction mod `p`.
#[derive(Debug, Clone)]
pub struct PgroupSplit {
    pub source: AbelianGroup,
    pub prime: u64,
    /// `pG`; `None` when `G` is elementary abelian.
    pub subgroup: Option<AbelianGroup>,
    /// `G/pG ≅ F_p^n` with `n` the number of cyclic factors of `G`.
    pub quotient: AbelianGroup,
    /// Source factor positions with `a_i ≥ 2`, in order.
    kept: Vec<usize>,
}

impl PgroupSplit {
    /// Projection `G → G/pG`: every coordinate reduced mod `p`.
    pub fn project(&self, x: &GroupElement) -> Result<GroupElement> {
        self.source.check(x)?;
        Ok(GroupElement::new(x.coords.iter().map(|&c| c % self.prime).collect()))
    }

    /// Embedding `H → G` sending `h` to `p·(lift of h)`; `project ∘ embed`
    /// is zero.
    pub fn embed(&self, h: &GroupElement) -> Result<GroupElement> {
        let sub = self
            .subgroup
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("subgroup pG is trivial".into()))?;
        sub.check(h)?;
        let mut coords = vec![0u64; self.source.num_factors()];
        for (hc, &i) in h.coords.iter().zip(&self.kept) {
            coords[i] = hc * self.prime;
        }
        Ok(GroupElement::new(coords))
    }

    /// The unique `H`-preimage of a `G`-element all of whose coordinates are
    /// divisible by `p`, or `None` otherwise.
    pub fn h_preimage(&self, x: &GroupElement) -> Result<Option<GroupElement>> {
        self.source.check(x)?;
        if x.coords.iter().any(|&c| c % self.prime != 0) {
            return Ok(None);
        }
        Ok(Some(GroupElement::new(
            self.kept.iter().map(|&i| x.coords[i] / self.prime).collect(),
        )))
    }
}

fn parse_term(term: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidInput(format!("cannot parse group term '{term}'"));
    let rest = term.strip_prefix(['Z', 'F']).ok_or_else(bad)?;
    let (base_str, power) = match rest.split_once('^') {
        Some((b, e)) => (b, e.parse::<usize>().map_err(|_| bad())?),
        None => (rest, 1),
    };
    let base: u64 = base_str.parse().map_err(|_| bad())?;
    if base < 2 || power == 0 {
        return Err(bad());
    }
    if term.starts_with('F') && !is_prime(base) {
        return Err(Error::InvalidInput(format!("F{base}: {base} is not prime")));
    }
    Ok(vec![base; power])
}

/// Parses a group literal such as `Z6^2`, `Z3xZ9`, or `F3^4` into canonical
/// form.
pub fn parse_group(s: &str) -> Result<AbelianGroup> {
    let mut orders = Vec::new();
    for term in s.split('x') {
        orders.extend(parse_term(term.trim())?);
    }
    canonicalize(&orders)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(orders: &[u64]) -> AbelianGroup {
        canonicalize(orders).unwrap()
    }

    fn values(group: &AbelianGroup) -> Vec<u64> {
        group.factors().iter().map(|f| f.value()).collect()
    }

    #[test]
    fn canonicalize_splits_by_crt() {
        assert_eq!(values(&g(&[6])), [2, 3]);
        assert_eq!(values(&g(&[12, 12])), [4, 4, 3, 3]);
        assert_eq!(values(&g(&[9, 3])), [9, 3]);
    }

    #[test]
    fn canonicalize_is_idempotent_and_input_order_independent() {
        let a = g(&[12, 12]);
        let b = g(&[4, 3, 12]);
        assert_eq!(a, b);
        assert_eq!(canonicalize(&values(&a)).unwrap(), a);
    }

    #[test]
    fn canonicalize_rejects_bad_orders() {
        assert!(canonicalize(&[]).is_err());
        assert!(canonicalize(&[1]).is_err());
        assert!(canonicalize(&[0, 3]).is_err());
    }

    #[test]
    fn exponent_is_lcm_of_factors() {
        assert_eq!(g(&[3, 3]).exponent(), 3);
        assert_eq!(g(&[2, 3, 4]).exponent(), 12);
        assert_eq!(g(&[9, 3]).exponent(), 9);
        assert!(g(&[9, 3]).order() >= g(&[9, 3]).exponent());
    }

    #[test]
    fn element_arithmetic() {
        let g33 = g(&[3, 3]);
        let sum = g33
            .add(&GroupElement::new(vec![1, 2]), &GroupElement::new(vec![2, 2]))
            .unwrap();
        assert_eq!(sum.coords, [0, 1]);

        let g5 = g(&[5]);
        let killed = g5.scale(5, &GroupElement::new(vec![3])).unwrap();
        assert_eq!(killed, g5.identity());

        let g43 = g(&[4, 3]);
        let neg = g43.neg(&GroupElement::new(vec![1, 2])).unwrap();
        assert_eq!(neg.coords, [3, 1]);
    }

    #[test]
    fn arithmetic_rejects_mismatched_coords() {
        let g33 = g(&[3, 3]);
        let short = GroupElement::new(vec![1]);
        assert!(matches!(g33.add(&short, &short), Err(Error::InvalidElement(_))));
        assert!(g33.neg(&GroupElement::new(vec![3, 0])).is_err());
    }

    #[test]
    fn exponent_kills_every_element() {
        for group in [g(&[4, 3]), g(&[9, 3]), g(&[2, 2, 5])] {
            let e = group.exponent() as i64;
            for x in group.elements() {
                assert_eq!(group.scale(e, &x).unwrap(), group.identity());
            }
        }
    }

    #[test]
    fn index_element_round_trip() {
        let g33 = g(&[3, 3]);
        assert_eq!(g33.index_to_element(0).unwrap().coords, [0, 0]);
        assert_eq!(g33.index_to_element(8).unwrap().coords, [2, 2]);
        // leftmost factor most significant: 4 = 1*3 + 1 over [2,3]
        assert_eq!(g(&[2, 3]).index_to_element(4).unwrap().coords, [1, 1]);
        assert!(g33.index_to_element(9).is_err());

        for group in [g(&[2, 3]), g(&[9, 3]), g(&[4, 4, 3])] {
            for i in 0..group.order() {
                let x = group.index_to_element(i).unwrap();
                assert_eq!(group.element_to_index(&x).unwrap(), i);
            }
        }
    }

    #[test]
    fn sylow_split_partitions_by_prime() {
        let comps = g(&[2, 3]).sylow_split();
        assert_eq!(comps.len(), 2);
        assert_eq!((comps[0].prime, comps[0].cyclic_count), (2, 1));
        assert_eq!((comps[1].prime, comps[1].cyclic_count), (3, 1));

        let comps = g(&[12, 12]).sylow_split();
        assert_eq!(comps.len(), 2);
        assert_eq!(values(&comps[0].group), [4, 4]);
        assert_eq!(values(&comps[1].group), [3, 3]);
        assert_eq!(comps[0].cyclic_count, 2);
        assert_eq!(comps[1].cyclic_count, 2);

        let comps = g(&[9, 3]).sylow_split();
        assert_eq!(comps.len(), 1);
        assert_eq!(values(&comps[0].group), [9, 3]);
        assert_eq!(comps[0].cyclic_count, 2);

        for group in [g(&[12, 12]), g(&[8, 9, 5]), g(&[30])] {
            let comps = group.sylow_split();
            let order: u64 = comps.iter().map(|c| c.group.order()).product();
            let exp: u64 = comps.iter().map(|c| c.exponent).product();
            assert_eq!(order, group.order());
            assert_eq!(exp, group.exponent());
        }
    }

    #[test]
    fn p_subgroup_quotient_of_z9() {
        let split = g(&[9]).p_subgroup_quotient().unwrap();
        assert_eq!(values(split.subgroup.as_ref().unwrap()), [3]);
        assert_eq!(values(&split.quotient), [3]);
        assert_eq!(
            split.project(&GroupElement::new(vec![7])).unwrap().coords,
            [1]
        );
        assert_eq!(
            split.embed(&GroupElement::new(vec![1])).unwrap().coords,
            [3]
        );
    }

    #[test]
    fn p_subgroup_quotient_elementary_case_is_trivial() {
        let split = g(&[3, 3]).p_subgroup_quotient().unwrap();
        assert!(split.subgroup.is_none());
        assert_eq!(values(&split.quotient), [3, 3]);
    }

    #[test]
    fn p_subgroup_quotient_of_z9xz3() {
        let group = g(&[9, 3]);
        let split = group.p_subgroup_quotient().unwrap();
        let h = split.subgroup.as_ref().unwrap();
        assert_eq!(values(h), [3]);
        assert_eq!(values(&split.quotient), [3, 3]);
        // Lemma hypotheses: |H|·|G/H| = |G| and exp(H)·exp(G/H) = exp(G).
        assert_eq!(h.order() * split.quotient.order(), group.order());
        assert_eq!(h.exponent() * split.quotient.exponent(), group.exponent());

        // embed ∘ project is zero and every all-divisible element has a
        // unique H-preimage
        for x in h.elements() {
            let lifted = split.embed(&x).unwrap();
            assert_eq!(split.project(&lifted).unwrap(), split.quotient.identity());
            assert_eq!(split.h_preimage(&lifted).unwrap().unwrap(), x);
        }
        assert!(split
            .h_preimage(&GroupElement::new(vec![1, 0]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn p_subgroup_quotient_rejects_mixed_group() {
        assert!(g(&[6]).p_subgroup_quotient().is_err());
    }

    #[test]
    fn homocyclic_and_elementary_detection() {
        assert_eq!(g(&[6, 6]).homocyclic_form(), Some((6, 2)));
        assert_eq!(g(&[12]).homocyclic_form(), Some((12, 1)));
        assert_eq!(g(&[9, 3]).homocyclic_form(), None);
        assert_eq!(g(&[4, 3, 3]).homocyclic_form(), None);
        assert_eq!(g(&[3, 3]).elementary_form(), Some((3, 2)));
        assert_eq!(g(&[9, 3]).elementary_form(), None);
        assert_eq!(g(&[9, 3]).p_group_prime(), Some(3));
        assert_eq!(g(&[6]).p_group_prime(), None);
    }

    #[test]
    fn literals_parse_and_round_trip() {
        assert_eq!(parse_group("Z6^2").unwrap(), g(&[6, 6]));
        assert_eq!(parse_group("Z3xZ9").unwrap(), g(&[9, 3]));
        assert_eq!(parse_group("F3^4").unwrap(), g(&[3, 3, 3, 3]));
        assert_eq!(parse_group("Z5").unwrap(), g(&[5]));
        assert!(parse_group("F4^2").is_err());
        assert!(parse_group("Z1").is_err());
        assert!(parse_group("Q8").is_err());
        assert!(parse_group("Z3^0").is_err());

        for group in [g(&[6, 6]), g(&[9, 3]), g(&[2, 2, 5]), g(&[7])] {
            assert_eq!(parse_group(&group.literal()).unwrap(), group);
        }
        assert_eq!(g(&[12, 12]).literal(), "Z4^2xZ3^2");
    }

    #[test]
    fn group_serde_as_literal() {
        let group = g(&[9, 3]);
        let json = serde_json::to_string(&group).unwrap();
        assert_eq!(json, "\"Z9xZ3\"");
        let back: AbelianGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back, group);
    }
}
