//! Parabolic Verma indices, log-numerators `L(λ, I) = -log U(λ, I)`,
//! normalized characters, the closed form of the leading coefficient, and
//! root multiplicities read off `L(0, S)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::cartan::{CartanMatrix, NodeSet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{Exponent, Series};
use crate::weyl::numerator_u;

/// A parabolic Verma index `(λ, I)`: the node set `I` and the pairings
/// `λ(α_i^∨) ≥ 0` for `i ∈ I`. Nothing else about `λ` is recorded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PvIndex {
    nodes: NodeSet,
    lam: BTreeMap<usize, u32>,
}

impl PvIndex {
    /// `pairs` are `(0-based node, λ(α^∨))` and must cover exactly `nodes`.
    pub fn new(nodes: NodeSet, pairs: impl IntoIterator<Item = (usize, i64)>) -> Result<Self> {
        let mut lam = BTreeMap::new();
        for (i, v) in pairs {
            if !nodes.contains(i) {
                return Err(Error::WeightKeysMismatch { node: i + 1 });
            }
            if v < 0 {
                return Err(Error::NegativeIntegrability { node: i + 1, value: v });
            }
            lam.insert(i, v as u32);
        }
        if let Some(&missing) = nodes.iter().find(|i| !lam.contains_key(i)) {
            return Err(Error::WeightKeysMismatch { node: missing + 1 });
        }
        Ok(PvIndex { nodes, lam })
    }

    /// The same pairing `value` on every node of `nodes`.
    pub fn uniform(nodes: NodeSet, value: u32) -> Self {
        let lam = nodes.iter().map(|&i| (i, value)).collect();
        PvIndex { nodes, lam }
    }

    /// `(λ, ∅)`.
    pub fn empty() -> Self {
        PvIndex { nodes: NodeSet::empty(), lam: BTreeMap::new() }
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn pairings(&self) -> &BTreeMap<usize, u32> {
        &self.lam
    }

    pub fn pairing(&self, i: usize) -> Option<u32> {
        self.lam.get(&i).copied()
    }

    pub(crate) fn signed_pairings(&self) -> BTreeMap<usize, i64> {
        self.lam.iter().map(|(&i, &v)| (i, v as i64)).collect()
    }

    /// The index `(λ, J)` for `J ⊆ I`.
    pub fn restrict(&self, sub: &NodeSet) -> PvIndex {
        debug_assert!(sub.is_subset(&self.nodes));
        PvIndex { nodes: sub.clone(), lam: sub.iter().map(|&i| (i, self.lam[&i])).collect() }
    }

    /// One index per connected component of `I`.
    pub fn components(&self, cm: &CartanMatrix) -> Vec<PvIndex> {
        cm.connected_components(&self.nodes).iter().map(|c| self.restrict(c)).collect()
    }

    pub fn is_connected(&self, cm: &CartanMatrix) -> bool {
        cm.is_connected(&self.nodes)
    }
}

impl fmt::Display for PvIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lam.iter().map(|(i, v)| format!("{}:{v}", i + 1)).collect();
        write!(f, "(I={}, lam={{{}}})", self.nodes, parts.join(","))
    }
}

/// `β(λ, I) = Σ_{i ∈ I} (λ(α_i^∨) + 1) α_i`.
pub fn beta(cm: &CartanMatrix, pv: &PvIndex) -> Exponent {
    let mut coords = vec![0u32; cm.n()];
    for (&i, &v) in &pv.lam {
        coords[i] = v + 1;
    }
    Exponent::new(coords)
}

/// `L(λ, I) = -log U(λ, I)` truncated at `cap`.
pub fn log_numerator<T: Scalar>(cm: &CartanMatrix, pv: &PvIndex, cap: u32) -> Result<Series<T>> {
    if pv.nodes.is_empty() {
        return Ok(Series::zero(cm.n(), cap));
    }
    Ok(numerator_u::<T>(cm, pv, cap)?.log1()?.neg())
}

/// `ch M(λ, I) = e^λ · body`, with `offset` standing in for `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterValue<T> {
    pub offset: Vec<i64>,
    pub body: Series<T>,
}

/// `U(0, S)`, the Weyl denominator, truncated at `cap`.
pub fn denominator<T: Scalar>(cm: &CartanMatrix, cap: u32) -> Result<Series<T>> {
    numerator_u(cm, &PvIndex::uniform(cm.all_nodes(), 0), cap)
}

/// Normalized character `U(λ, I) / U(0, S)`; every coefficient is checked to
/// be a non-negative integer.
pub fn character<T: Scalar>(cm: &CartanMatrix, pv: &PvIndex, offset: Vec<i64>, cap: u32) -> Result<CharacterValue<T>> {
    let inv = denominator::<T>(cm, cap)?.invert()?;
    let body = numerator_u::<T>(cm, pv, cap)?.mul(&inv)?;
    if let Some((e, c)) = body.terms().find(|(_, c)| !c.is_integral() || c.is_negative()) {
        return Err(Error::NonIntegralCharacter { exponent: e.to_string(), value: c.to_string() });
    }
    Ok(CharacterValue { offset, body })
}

/// Largest node set handled by [`leading_coefficient_closed_form`].
pub const MAX_CLOSED_FORM_NODES: usize = 16;

/// `(-1)^{|I|} Σ_{k≥1} (-1)^k |P_k(G_I)| / k`, where `P_k(G_I)` counts ordered
/// `k`-tuples of non-empty, pairwise disjoint, edge-free subsets covering `I`.
pub fn leading_coefficient_closed_form(cm: &CartanMatrix, nodes: &NodeSet) -> Result<BigRational> {
    if nodes.is_empty() {
        return Err(Error::EmptyNodeSet);
    }
    let m = nodes.len();
    if m > MAX_CLOSED_FORM_NODES {
        return Err(Error::SizeLimit { what: "closed-form node set", size: m, limit: MAX_CLOSED_FORM_NODES });
    }
    let idx = nodes.as_slice();
    // local adjacency inside I
    let adj: Vec<u32> = idx
        .iter()
        .map(|&u| idx.iter().enumerate().filter(|(_, &v)| cm.adjacent(u, v)).fold(0, |m, (q, _)| m | (1 << q)))
        .collect();
    let full: u32 = if m == 32 { u32::MAX } else { (1 << m) - 1 };
    let independent = |s: u32| -> bool {
        let mut rest = s;
        while rest != 0 {
            let q = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if adj[q] & s != 0 {
                return false;
            }
        }
        true
    };

    // counts[k][mask] = ordered k-tuples of non-empty independent sets partitioning mask
    let mut memo: HashMap<(u32, usize), u128> = HashMap::new();
    fn count(
        mask: u32,
        k: usize,
        independent: &dyn Fn(u32) -> bool,
        memo: &mut HashMap<(u32, usize), u128>,
    ) -> u128 {
        if k == 0 {
            return (mask == 0) as u128;
        }
        if mask == 0 || (mask.count_ones() as usize) < k {
            return 0;
        }
        if let Some(&v) = memo.get(&(mask, k)) {
            return v;
        }
        let mut total = 0u128;
        let mut sub = mask;
        while sub != 0 {
            if independent(sub) {
                total += count(mask & !sub, k - 1, independent, memo);
            }
            sub = (sub - 1) & mask;
        }
        memo.insert((mask, k), total);
        total
    }

    let mut sum = BigRational::zero();
    for k in 1..=m {
        let pk = count(full, k, &independent, &mut memo);
        let term = BigRational::new(pk.into(), (k as u64).into());
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(if m.is_multiple_of(2) { sum } else { -sum })
}

/// Root multiplicities through degree `cap`, recovered from
/// `L(0, S) = Σ_α mult(α) Σ_{k≥1} e^{-kα}/k`.
pub fn root_multiplicities(cm: &CartanMatrix, cap: u32) -> Result<BTreeMap<Exponent, i64>> {
    let l = log_numerator::<BigRational>(cm, &PvIndex::uniform(cm.all_nodes(), 0), cap)?;
    let mut mult: BTreeMap<Exponent, BigRational> = BTreeMap::new();
    // terms() runs in increasing degree, so every proper divisor is already known
    for (alpha, c) in l.terms() {
        let mut m = c.clone();
        for (b, mb) in &mult {
            if b.degree() * 2 > alpha.degree() {
                break;
            }
            if let Some(k) = alpha.multiple_of(b) {
                if k >= 2 {
                    m -= mb / BigRational::from_integer(k.into());
                }
            }
        }
        if !m.is_integer() {
            return Err(Error::NonIntegralMultiplicity { exponent: alpha.to_string(), value: m.to_string() });
        }
        if !m.is_zero() {
            mult.insert(alpha.clone(), m);
        }
    }
    mult.into_iter()
        .map(|(e, m)| {
            let v = m.to_integer();
            i64::try_from(v.clone())
                .map(|v| (e.clone(), v))
                .map_err(|_| Error::NonIntegralMultiplicity { exponent: e.to_string(), value: v.to_string() })
        })
        .collect()
}
