//! Hyperplane extraction over F_p^n: the constructive dichotomy "either a
//! zero-sum witness of p distinct elements, or a large AP-free subset of a
//! hyperplane".
//!
//! Given A ⊆ F_p^n with no point carrying many centered APs, scoring every
//! affine hyperplane V by X1 − X2 (points of A on V minus APs of A inside V)
//! and keeping the argmax must beat the average |A|/p − X2-mean, which works
//! out to more than |A|/(2p). Deleting one element per surviving AP then
//! leaves an AP-free B ⊆ A ∩ V with |B| ≥ X1 − X2. Enumerating all
//! hyperplanes replaces the random choice — the method of conditional
//! expectations in its simplest form.

use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::apfree::{ap_sets, aps_centered_at, zero_sum_from_centered_aps, ApTriple, PointSet};
use crate::group::{is_prime, AbelianGroup, GroupElement};
use crate::zerosum::Witness;
use crate::{Error, Result};

/// Hyperplane enumeration iterates all p^n candidate normals.
const MAX_ENUM_POINTS: u64 = 1 << 20;

/// An affine hyperplane ⟨normal, v⟩ = offset in F_p^n, with the normal
/// canonicalized so its first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperplane {
    prime: u64,
    normal: Vec<u64>,
    offset: u64,
}

impl Hyperplane {
    pub fn new(prime: u64, normal: Vec<u64>, offset: u64) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::InvalidInput(format!("{prime} is not prime")));
        }
        if offset >= prime || normal.iter().any(|&c| c >= prime) {
            return Err(Error::InvalidInput("coordinates must be reduced mod p".into()));
        }
        match normal.iter().find(|&&c| c != 0) {
            Some(1) => Ok(Hyperplane { prime, normal, offset }),
            Some(_) => Err(Error::InvalidInput(
                "normal must be canonical: first nonzero coordinate 1".into(),
            )),
            None => Err(Error::InvalidInput("normal must be nonzero".into())),
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &[u64] {
        &self.normal
    }

    pub fn offset(&self) -> u64 {
        self.offset
    }

    /// Position of the leading 1 in the normal; membership determines this
    /// coordinate from the others.
    pub fn pivot(&self) -> usize {
        self.normal.iter().position(|&c| c == 1).expect("normal is canonical")
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.coords.len() == self.normal.len()
            && x.coords
                .iter()
                .zip(&self.normal)
                .map(|(&v, &c)| v * c % self.prime)
                .sum::<u64>()
                % self.prime
                == self.offset
    }

    /// The p^{n−1} points of the hyperplane: free coordinates run through
    /// F_p^{n−1} in mixed-radix order, the pivot coordinate is solved for.
    pub fn points(&self) -> impl Iterator<Item = GroupElement> + '_ {
        let p = self.prime;
        let n = self.normal.len();
        let pivot = self.pivot();
        (0..p.pow(n as u32 - 1)).map(move |mut i| {
            let mut coords = vec![0u64; n];
            for j in (0..n).rev() {
                if j != pivot {
                    coords[j] = i % p;
                    i /= p;
                }
            }
            let dot: u64 = coords
                .iter()
                .zip(&self.normal)
                .map(|(&v, &c)| v * c % p)
                .sum::<u64>()
                % p;
            coords[pivot] = (self.offset + p - dot) % p;
            GroupElement::new(coords)
        })
    }
}

/// All affine hyperplanes of F_p^n: (p^n − 1)/(p − 1) canonical normals
/// times p offsets, in (normal index, offset) order. Every point lies on
/// exactly (p^n − 1)/(p − 1) of them.
pub fn enumerate_hyperplanes(p: u64, n: u32) -> Result<Vec<Hyperplane>> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be ≥ 1".into()));
    }
    let points = p
        .checked_pow(n)
        .filter(|&v| v <= MAX_ENUM_POINTS)
        .ok_or_else(|| Error::GroupTooLarge(format!("enumeration needs p^n ≤ {MAX_ENUM_POINTS}")))?;
    let mut out = Vec::new();
    for idx in 1..points {
        let mut normal = vec![0u64; n as usize];
        let mut rem = idx;
        for j in (0..n as usize).rev() {
            normal[j] = rem % p;
            rem /= p;
        }
        if *normal.iter().find(|&&c| c != 0).expect("idx ≥ 1") != 1 {
            continue;
        }
        for offset in 0..p {
            out.push(Hyperplane { prime: p, normal: normal.clone(), offset });
        }
    }
    Ok(out)
}

/// X1 = |A ∩ V| and X2 = number of AP sets of A lying entirely inside V.
pub fn score_hyperplane(a: &PointSet, v: &Hyperplane) -> (u64, u64) {
    score_with_sets(a, &ap_sets(a), v)
}

fn score_with_sets(a: &PointSet, sets: &[[GroupElement; 3]], v: &Hyperplane) -> (u64, u64) {
    let x1 = a.members().iter().filter(|m| v.contains(m)).count() as u64;
    let x2 = sets
        .iter()
        .filter(|set| set.iter().all(|m| v.contains(m)))
        .count() as u64;
    (x1, x2)
}

/// Both sides of the exact first-moment identities: direct rational averages
/// of X1 and X2 over every hyperplane, next to the predictions |A|/p and
/// T·(1/p)·(p^{n−1}−1)/(p^n−1) (T = AP-set count). The two sides agree
/// exactly — every point lies on the same number of hyperplanes, and every
/// AP is collinear so its containment probability only depends on the flat
/// count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectationIdentity {
    pub mean_x1: Rational64,
    pub mean_x2: Rational64,
    pub predicted_x1: Rational64,
    pub predicted_x2: Rational64,
}

impl ExpectationIdentity {
    pub fn holds(&self) -> bool {
        self.mean_x1 == self.predicted_x1 && self.mean_x2 == self.predicted_x2
    }
}

pub fn expectation_check(a: &PointSet) -> Result<ExpectationIdentity> {
    let (p, n) = a
        .group()
        .elementary_form()
        .ok_or_else(|| Error::InvalidInput(format!("{} is not of the form F_p^n", a.group())))?;
    if n < 2 {
        return Err(Error::InvalidInput("expectation check needs dimension ≥ 2".into()));
    }
    let planes = enumerate_hyperplanes(p, n as u32)?;
    let sets = ap_sets(a);
    let (mut sum_x1, mut sum_x2) = (0i64, 0i64);
    for v in &planes {
        let (x1, x2) = score_with_sets(a, &sets, v);
        sum_x1 += x1 as i64;
        sum_x2 += x2 as i64;
    }
    let count = planes.len() as i64;
    let pn = p.pow(n as u32) as i64;
    let pn1 = p.pow(n as u32 - 1) as i64;
    Ok(ExpectationIdentity {
        mean_x1: Rational64::new(sum_x1, count),
        mean_x2: Rational64::new(sum_x2, count),
        predicted_x1: Rational64::new(a.len() as i64, p as i64),
        predicted_x2: Rational64::new(sets.len() as i64 * (pn1 - 1), p as i64 * (pn - 1)),
    })
}

/// How [`extract_apfree`] chooses its hyperplane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractionMode {
    /// Scan every hyperplane and keep the first argmax of X1 − X2.
    Exhaustive,
    /// Score `samples` seeded-uniform hyperplane draws and keep the best.
    Randomized { samples: usize, seed: u64 },
}

/// Result of the dichotomy.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ExtractionOutcome {
    /// Some point carried ≥ (p−1)/2 centered APs, so the centered-AP
    /// construction already yields p distinct elements of A summing to zero.
    ZeroSum { center: GroupElement, witness: Witness },
    /// AP-free B ⊆ A ∩ V after deleting one element per surviving AP;
    /// |B| ≥ X1 − X2, and in exhaustive mode |B| > |A|/(2p).
    ApFreePart {
        hyperplane: Hyperplane,
        x1: u64,
        x2: u64,
        part: PointSet,
        deleted: Vec<(ApTriple, GroupElement)>,
    },
}

/// Runs the dichotomy on A ⊆ F_p^n (p odd, n ≥ 2). The zero-sum branch is
/// checked eagerly; otherwise the best hyperplane is selected per `mode` and
/// APs inside A ∩ V are destroyed by repeatedly deleting the element
/// covering the most survivors (ties to the smallest canonical index).
pub fn extract_apfree(a: &PointSet, mode: ExtractionMode) -> Result<ExtractionOutcome> {
    let (p, n) = a
        .group()
        .elementary_form()
        .ok_or_else(|| Error::InvalidInput(format!("{} is not of the form F_p^n", a.group())))?;
    if p == 2 {
        return Err(Error::InvalidInput("extraction needs odd p".into()));
    }
    if n < 2 {
        return Err(Error::InvalidInput("extraction needs dimension ≥ 2".into()));
    }

    for x in a.members() {
        if aps_centered_at(a, x)?.len() >= (p as usize - 1) / 2 {
            let witness = zero_sum_from_centered_aps(a, x)?
                .expect("centered count was just checked");
            return Ok(ExtractionOutcome::ZeroSum { center: x.clone(), witness });
        }
    }

    let planes = enumerate_hyperplanes(p, n as u32)?;
    let sets = ap_sets(a);
    let score_of = |v: &Hyperplane| {
        let (x1, x2) = score_with_sets(a, &sets, v);
        (x1 as i64 - x2 as i64, x1, x2)
    };
    let (best, x1, x2) = match mode {
        ExtractionMode::Exhaustive => {
            let mut best: Option<(i64, &Hyperplane, u64, u64)> = None;
            for v in &planes {
                let (score, x1, x2) = score_of(v);
                if best.is_none_or(|(s, ..)| score > s) {
                    best = Some((score, v, x1, x2));
                }
            }
            let (_, v, x1, x2) = best.expect("hyperplane list is never empty");
            (v.clone(), x1, x2)
        }
        ExtractionMode::Randomized { samples, seed } => {
            if samples == 0 {
                return Err(Error::InvalidInput("sample count must be ≥ 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best: Option<(i64, usize, u64, u64)> = None;
            for _ in 0..samples {
                let i = rng.gen_range(0..planes.len());
                let (score, x1, x2) = score_of(&planes[i]);
                if best.is_none_or(|(s, ..)| score > s) {
                    best = Some((score, i, x1, x2));
                }
            }
            let (_, i, x1, x2) = best.expect("at least one sample");
            (planes[i].clone(), x1, x2)
        }
    };

    // Delete one element per surviving AP of A ∩ V, greediest cover first.
    let group = a.group().clone();
    let mut part: Vec<GroupElement> = a
        .members()
        .iter()
        .filter(|m| best.contains(m))
        .cloned()
        .collect();
    let mut surviving: Vec<[GroupElement; 3]> = sets
        .iter()
        .filter(|set| set.iter().all(|m| best.contains(m)))
        .cloned()
        .collect();
    let mut deleted = Vec::new();
    while !surviving.is_empty() {
        let victim = part
            .iter()
            .max_by_key(|m| {
                let cover = surviving.iter().filter(|set| set.contains(m)).count();
                // ties to the smallest canonical index: iteration is sorted,
                // and max_by_key keeps the first among equals only with a
                // strict comparison, so invert the index
                (cover, std::cmp::Reverse(group.element_to_index(m).expect("valid")))
            })
            .expect("surviving APs live inside part")
            .clone();
        let killed = surviving
            .iter()
            .find(|set| set.contains(&victim))
            .expect("victim covers at least one AP")
            .clone();
        deleted.push((triple_with_canonical_middle(&group, &killed)?, victim.clone()));
        part.retain(|m| *m != victim);
        surviving.retain(|set| !set.contains(&victim));
    }
    let part = PointSet::new(group, part)?;

    // The selection argument guarantees more than |A|/(2p) survivors in
    // exhaustive mode (all centered counts are < (p−1)/2 here); a miss would
    // mean a bug, not a sharp input.
    if mode == ExtractionMode::Exhaustive && !a.is_empty() && 2 * p * part.len() as u64 <= a.len() as u64
    {
        return Err(Error::Internal(format!(
            "extraction kept {} of {} points, below the |A|/(2p) guarantee",
            part.len(),
            a.len()
        )));
    }
    Ok(ExtractionOutcome::ApFreePart { hyperplane: best, x1, x2, part, deleted })
}

/// Rebuilds an AP triple from an AP set, designating the smallest-index
/// valid middle.
fn triple_with_canonical_middle(
    group: &AbelianGroup,
    set: &[GroupElement; 3],
) -> Result<ApTriple> {
    for (i, y) in set.iter().enumerate() {
        let others: Vec<&GroupElement> =
            set.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, m)| m).collect();
        if group.add(others[0], others[1])? == group.scale(2, y)? {
            return ApTriple::new(group, others[0].clone(), y.clone(), others[1].clone());
        }
    }
    Err(Error::Internal("AP set has no valid middle".into()))
}

/// One certified instance of the g-to-r transfer inequality
/// g(F_p^n) ≤ 2p·r(F_p^{n−1}), with both sides computed by search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TransferBoundCheck {
    pub p: u64,
    pub n: u32,
    /// g(F_p^n), or its best search lower bound.
    pub g_value: u64,
    pub g_exhaustive: bool,
    /// r(F_p^{n−1}), or its best search lower bound.
    pub r_value: u64,
    pub r_exhaustive: bool,
    /// 2p · r_value.
    pub bound: u64,
    /// g_value ≤ bound. Disproves nothing unless `conclusive`.
    pub holds: bool,
    /// Both searches were exhaustive, so `holds` decides the inequality.
    pub conclusive: bool,
}

pub fn g_bound_via_extraction(p: u64, n: u32, budget: u64) -> Result<TransferBoundCheck> {
    if p == 2 || !is_prime(p) {
        return Err(Error::InvalidInput("transfer bound needs odd prime p".into()));
    }
    if n < 2 {
        return Err(Error::InvalidInput("transfer bound needs n ≥ 2".into()));
    }
    let g = crate::zerosum::g_exact(&AbelianGroup::elementary(p, n as usize)?, budget)?;
    let r = crate::apfree::r_exact(p, n - 1, budget)?;
    let bound = 2 * p * r.value;
    Ok(TransferBoundCheck {
        p,
        n,
        g_value: g.value,
        g_exhaustive: g.exhaustive(),
        r_value: r.value,
        r_exhaustive: r.exhaustive,
        bound,
        holds: g.value <= bound,
        conclusive: g.exhaustive() && r.exhaustive,
    })
}
