//! Recovering parabolic Verma factors from sums of log-numerators.
//!
//! Given `L = Σ_k L(λ_k, I_k)` with every `I_k` connected and non-empty, the
//! exponents of `L` with inclusion-maximal support, and among those the
//! componentwise-minimal ones, are exactly the markers `β(λ_k, I_k)` of the
//! `⪰`-maximal factors, and carry positive coefficients. Reading `(λ, I)` off
//! such a marker and subtracting `L(λ, I)` leaves the sum over the remaining
//! factors, so the whole multiset is peeled off one factor at a time. The
//! folded variant runs the same loop on `π(L)` with `β̄` in place of `β`.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::cartan::{CartanMatrix, NodeSet};
use crate::error::{Error, Result};
use crate::folding::FoldContext;
use crate::numerators::{denominator, log_numerator, PvIndex};
use crate::order::approx;
use crate::series::{Exponent, Series};
use crate::{QSeries, Rational};

/// Outcome of a peeling run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationResult {
    /// Recovered factors in the order they were peeled.
    pub factors: Vec<PvIndex>,
    /// Factors with `I = ∅` implied by a declared factor count.
    pub empty_count: usize,
    pub residual_zero: bool,
    /// The truncation degree through which the result is certified.
    pub certified_degree: u32,
}

impl FactorizationResult {
    fn peeled(factors: Vec<PvIndex>, cap: u32) -> Self {
        FactorizationResult { factors, empty_count: 0, residual_zero: true, certified_degree: cap }
    }
}

/// Marker candidate: inclusion-maximal support (ties: smallest sorted support),
/// then a componentwise-minimal exponent with exactly that support (ties:
/// lexicographically smallest).
fn select_marker(s: &QSeries) -> Option<(&Exponent, &Rational)> {
    let support_of = |e: &Exponent| NodeSet::from_indices(e.support());
    let mut supports: Vec<NodeSet> = s.terms().map(|(e, _)| support_of(e)).collect();
    supports.sort();
    supports.dedup();
    let best = supports
        .iter()
        .filter(|a| !supports.iter().any(|b| b != *a && a.is_subset(b)))
        .min()?
        .clone();
    let same: Vec<(&Exponent, &Rational)> = s.terms().filter(|(e, _)| support_of(e) == best).collect();
    same.iter()
        .filter(|(e, _)| !same.iter().any(|(f, _)| f != e && f.le_componentwise(e)))
        .min_by(|a, b| a.0.coords().cmp(b.0.coords()))
        .copied()
}

fn step_budget(s: &QSeries) -> usize {
    let mass: usize = s.terms().map(|(_, c)| c.abs().ceil().to_integer().to_usize().unwrap_or(usize::MAX / 4)).sum();
    (s.cap() as usize).saturating_add(mass)
}

/// Peel `⪰`-maximal factors off a sum of log-numerators until nothing is left.
pub fn peel_log_sum(cm: &CartanMatrix, total: &QSeries) -> Result<FactorizationResult> {
    if total.nvars() != cm.n() {
        return Err(Error::ArityMismatch(cm.n(), total.nvars()));
    }
    if !total.constant().is_zero() {
        return Err(Error::ConstantTermNotZero);
    }
    let cap = total.cap();
    let budget = step_budget(total);
    let mut residual = total.clone();
    let mut factors = Vec::new();
    while !residual.is_zero() {
        if factors.len() >= budget {
            return Err(Error::NonzeroResidual { steps: factors.len() });
        }
        let (marker, coeff) = select_marker(&residual).expect("non-zero series");
        if !coeff.is_positive() {
            return Err(Error::NegativeLeadingCoefficient { exponent: marker.to_string(), value: coeff.to_string() });
        }
        let nodes = NodeSet::from_indices(marker.support());
        if !cm.is_connected(&nodes) {
            return Err(Error::DisconnectedCandidateSupport { support: cm.render_set(&nodes) });
        }
        // every coordinate on the support is at least 1
        let pairs: Vec<(usize, i64)> = nodes.iter().map(|&i| (i, marker.coords()[i] as i64 - 1)).collect();
        let pv = PvIndex::new(nodes, pairs)?;
        residual = residual.sub(&log_numerator(cm, &pv, cap)?)?;
        factors.push(pv);
    }
    Ok(FactorizationResult::peeled(factors, cap))
}

/// `Σ_k L(λ_k, I_k)` truncated at `cap`.
pub fn log_sum(cm: &CartanMatrix, factors: &[PvIndex], cap: u32) -> Result<QSeries> {
    factors
        .iter()
        .try_fold(Series::zero(cm.n(), cap), |acc, pv| acc.add(&log_numerator(cm, pv, cap)?))
}

/// `Π_k U(λ_k, I_k) / U(0, S)^r`, the product of normalized characters with the
/// highest-weight factor `e^{Σλ_k}` stripped.
pub fn character_product(cm: &CartanMatrix, factors: &[PvIndex], cap: u32) -> Result<QSeries> {
    let inv = denominator::<Rational>(cm, cap)?.invert()?;
    factors.iter().try_fold(Series::one(cm.n(), cap), |acc, pv| {
        acc.mul(&crate::weyl::numerator_u(cm, pv, cap)?)?.mul(&inv)
    })
}

/// Recover the factors of a product of `r` normalized characters.
///
/// Uses `Σ_k L(λ_k, I_k) = -log(P) + r·L(0, S)`. Factors given with a
/// disconnected `I` come back as their connected components.
pub fn recover_from_character_product(cm: &CartanMatrix, product: &QSeries, r: usize) -> Result<FactorizationResult> {
    let cap = product.cap();
    let base = log_numerator::<Rational>(cm, &PvIndex::uniform(cm.all_nodes(), 0), cap)?;
    let total = product.log1()?.neg().add(&base.scale(&Rational::from_integer((r as i64).into())))?;
    let mut result = peel_log_sum(cm, &total)?;
    let recovered = result.factors.len();
    if recovered > r {
        return Err(Error::TooManyFactors { recovered, r });
    }
    result.empty_count = r - recovered;
    Ok(result)
}

/// `Σ_k π(L(λ_k, I_k))` truncated at `cap`.
pub fn folded_log_sum(ctx: &FoldContext, factors: &[PvIndex], cap: u32) -> Result<QSeries> {
    Ok(ctx.partition().fold(&log_sum(ctx.cartan(), factors, cap)?))
}

/// Peel factors off a folded sum `Σ_k π(L(λ_k, I_k))` of symmetric,
/// equiconnected, class-union indices.
pub fn peel_folded(ctx: &FoldContext, total: &QSeries) -> Result<FactorizationResult> {
    let cm = ctx.cartan();
    let part = ctx.partition();
    if total.nvars() != part.class_count() {
        return Err(Error::ArityMismatch(part.class_count(), total.nvars()));
    }
    if !total.constant().is_zero() {
        return Err(Error::ConstantTermNotZero);
    }
    let cap = total.cap();
    let budget = step_budget(total);
    let mut residual = total.clone();
    let mut factors = Vec::new();
    while !residual.is_zero() {
        if factors.len() >= budget {
            return Err(Error::NonzeroResidual { steps: factors.len() });
        }
        let (marker, coeff) = select_marker(&residual).expect("non-zero series");
        if !coeff.is_positive() {
            return Err(Error::NegativeLeadingCoefficient { exponent: marker.to_string(), value: coeff.to_string() });
        }
        let nodes = part.class_union(marker);
        if !cm.is_connected(&nodes) {
            return Err(Error::DisconnectedCandidateSupport { support: cm.render_set(&nodes) });
        }
        let lifts = match ctx.lean_lifts(&nodes) {
            Ok(d) if d.equiconnected => d,
            Ok(_) | Err(Error::NoLift) => {
                return Err(Error::NotEquiconnectedCandidate { support: cm.render_set(&nodes) })
            }
            Err(e) => return Err(e),
        };
        let counts = lifts.lean_counts.expect("equiconnected sets have lean counts");
        let mut class_value = BTreeMap::new();
        for k in marker.support() {
            let (g, m) = (marker.coords()[k], counts[k]);
            if m == 0 || g % m != 0 || g / m == 0 {
                return Err(Error::DivisibilityFailure { exponent: marker.to_string() });
            }
            class_value.insert(k, (g / m - 1) as i64);
        }
        let pv = PvIndex::new(nodes.clone(), nodes.iter().map(|&i| (i, class_value[&part.class_of(i)])))?;
        residual = residual.sub(&part.fold(&log_numerator(cm, &pv, cap)?))?;
        factors.push(pv);
    }
    Ok(FactorizationResult::peeled(factors, cap))
}

/// A witness that two factor lists give the same character product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    /// `permutation[k] = σ(k)`: entry `k` on the left matches entry `σ(k)` on
    /// the right.
    pub permutation: Vec<usize>,
    /// When true, entries were first split into connected components and the
    /// permutation indexes those component lists (empties dropped).
    pub split: bool,
}

/// Highest-weight offsets of the left and right lists.
pub type OffsetPair<'a> = (&'a [Vec<i64>], &'a [Vec<i64>]);

/// Match two equally long factor lists under `≈`, optionally also requiring
/// equal sums of highest-weight offsets.
pub fn verify_equivalence(
    cm: &CartanMatrix,
    left: &[PvIndex],
    right: &[PvIndex],
    offsets: Option<OffsetPair<'_>>,
) -> Result<Option<Equivalence>> {
    if left.len() != right.len() {
        return Err(Error::LengthMismatch(left.len(), right.len()));
    }
    if let Some((a, b)) = offsets {
        if a.len() != left.len() {
            return Err(Error::LengthMismatch(left.len(), a.len()));
        }
        if b.len() != right.len() {
            return Err(Error::LengthMismatch(right.len(), b.len()));
        }
        if offset_sum(a)? != offset_sum(b)? {
            return Ok(None);
        }
    }
    let all_connected = |l: &[PvIndex]| l.iter().all(|pv| pv.nodes().is_empty() || pv.is_connected(cm));
    if all_connected(left) && all_connected(right) {
        return Ok(greedy_match(left, right).map(|permutation| Equivalence { permutation, split: false }));
    }
    let split = |l: &[PvIndex]| -> Vec<PvIndex> { l.iter().flat_map(|pv| pv.components(cm)).collect() };
    let (ls, rs) = (split(left), split(right));
    if ls.len() != rs.len() {
        return Ok(None);
    }
    Ok(greedy_match(&ls, &rs).map(|permutation| Equivalence { permutation, split: true }))
}

fn offset_sum(list: &[Vec<i64>]) -> Result<Vec<i64>> {
    let width = list.first().map_or(0, Vec::len);
    let mut sum = vec![0i64; width];
    for v in list {
        if v.len() != width {
            return Err(Error::LengthMismatch(width, v.len()));
        }
        for (s, x) in sum.iter_mut().zip(v) {
            *s += x;
        }
    }
    Ok(sum)
}

// ≈ is an equivalence, so first-fit matching is complete.
fn greedy_match(left: &[PvIndex], right: &[PvIndex]) -> Option<Vec<usize>> {
    let mut used = vec![false; right.len()];
    let mut perm = Vec::with_capacity(left.len());
    for a in left {
        let j = (0..right.len()).find(|&j| !used[j] && approx(a, &right[j]))?;
        used[j] = true;
        perm.push(j);
    }
    Some(perm)
}
