//! Parabolic Weyl-orbit enumeration of `λ + ρ` and the normalized numerator
//! `U(λ, I) = Σ_{w ∈ W_I} (-1)^{ℓ(w)} e^{w(λ+ρ) - (λ+ρ)}`.
//!
//! Weights are never realized: a weight `μ = w(λ+ρ)` is carried as its coroot
//! pairings on `I` plus the offset `(λ+ρ) - μ ∈ Q⁺`. Reflecting by `s_i`
//! subtracts `μ(α_i^∨) α_i`, so the offset grows by `μ(α_i^∨)` in coordinate
//! `i` and the pairings change by `μ(α_j^∨) -= μ(α_i^∨) a[j][i]`. Walking only
//! along reflections with `μ(α_i^∨) > 0` climbs the weak order, so BFS depth is
//! `ℓ(w)` and the offset degree strictly increases along every edge.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::cartan::{CartanMatrix, NodeSet};
use crate::error::{Error, Result};
use crate::numerators::PvIndex;
use crate::scalar::Scalar;
use crate::series::{Exponent, Series};

/// One group element's contribution `(-1)^{ℓ(w)} x^{(λ+ρ) - w(λ+ρ)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTerm {
    pub exponent: Exponent,
    pub sign: i8,
    pub length: u32,
    /// `w(λ+ρ)(α_i^∨)` for `i ∈ I`, in the order of `I`.
    pub pairings: Vec<i64>,
}

/// Every `w ∈ W_I` whose offset has degree at most `cap`, in BFS order.
///
/// `lam` must carry exactly the nodes of `nodes`.
pub fn orbit_terms(cm: &CartanMatrix, nodes: &NodeSet, lam: &BTreeMap<usize, i64>, cap: u32) -> Result<Vec<OrbitTerm>> {
    let n = cm.n();
    for &i in nodes.iter() {
        if i >= n {
            return Err(Error::NodeOutOfRange { node: i + 1, n });
        }
        match lam.get(&i) {
            None => return Err(Error::WeightKeysMismatch { node: i + 1 }),
            Some(&v) if v < 0 => return Err(Error::NegativeIntegrability { node: i + 1, value: v }),
            Some(_) => {}
        }
    }
    if let Some((&extra, _)) = lam.iter().find(|(k, _)| !nodes.contains(**k)) {
        return Err(Error::WeightKeysMismatch { node: extra + 1 });
    }

    let idx: Vec<usize> = nodes.iter().copied().collect();
    let start = OrbitTerm {
        exponent: Exponent::zero(n),
        sign: 1,
        length: 0,
        pairings: idx.iter().map(|i| lam[i] + 1).collect(),
    };
    let mut seen: HashSet<Exponent> = HashSet::from([start.exponent.clone()]);
    let mut out = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some(term) = queue.pop_front() {
        for (p, &i) in idx.iter().enumerate() {
            let v = term.pairings[p];
            if v <= 0 {
                continue;
            }
            if term.exponent.degree() as i64 + v > cap as i64 {
                continue;
            }
            let exponent = term.exponent.add(&Exponent::unit(n, i, v as u32));
            if !seen.insert(exponent.clone()) {
                continue;
            }
            let pairings = idx.iter().enumerate().map(|(q, &j)| term.pairings[q] - v * cm.a(j, i)).collect();
            queue.push_back(OrbitTerm { exponent, sign: -term.sign, length: term.length + 1, pairings });
        }
        out.push(term);
    }
    Ok(out)
}

/// `U(λ, I)` truncated at `cap`.
pub fn numerator_u<T: Scalar>(cm: &CartanMatrix, pv: &PvIndex, cap: u32) -> Result<Series<T>> {
    let terms = orbit_terms(cm, pv.nodes(), &pv.signed_pairings(), cap)?;
    Series::from_terms(
        cm.n(),
        cap,
        terms.into_iter().map(|t| (t.exponent, if t.sign > 0 { T::one() } else { -T::one() })),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn a2() -> CartanMatrix {
        CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]], None).unwrap()
    }

    fn lam(pairs: &[(usize, i64)]) -> BTreeMap<usize, i64> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn a1_block_has_two_terms() {
        let cm = CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]], None).unwrap();
        for m in 0..5 {
            let t = orbit_terms(&cm, &NodeSet::from_indices([0]), &lam(&[(0, m)]), 10).unwrap();
            assert_eq!(t.len(), 2);
            assert_eq!(t[0].exponent, Exponent::zero(2));
            assert_eq!(t[1].exponent, Exponent::new(vec![(m + 1) as u32, 0]));
            assert_eq!((t[0].sign, t[1].sign), (1, -1));
        }
    }

    #[test]
    fn a2_rho_orbit() {
        let terms = orbit_terms(&a2(), &a2().all_nodes(), &lam(&[(0, 0), (1, 0)]), 4).unwrap();
        let mut got: Vec<(Vec<u32>, i8)> = terms.iter().map(|t| (t.exponent.coords().to_vec(), t.sign)).collect();
        got.sort();
        let mut want = vec![
            (vec![0, 0], 1),
            (vec![1, 0], -1),
            (vec![0, 1], -1),
            (vec![2, 1], 1),
            (vec![1, 2], 1),
            (vec![2, 2], -1),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn empty_parabolic_is_identity_only() {
        let t = orbit_terms(&a2(), &NodeSet::empty(), &BTreeMap::new(), 7).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].sign, 1);
    }

    #[test]
    fn rejects_negative_pairing() {
        let err = orbit_terms(&a2(), &NodeSet::from_indices([1]), &lam(&[(1, -1)]), 3).unwrap_err();
        assert_eq!(err, Error::NegativeIntegrability { node: 2, value: -1 });
        let err = orbit_terms(&a2(), &NodeSet::from_indices([1]), &lam(&[(0, 1)]), 3).unwrap_err();
        assert_eq!(err, Error::WeightKeysMismatch { node: 2 });
    }

    #[test]
    fn numerator_of_a1_block() {
        let pv = PvIndex::new(NodeSet::from_indices([0]), [(0, 2)]).unwrap();
        let u: Series<BigRational> = numerator_u(&a2(), &pv, 5).unwrap();
        assert_eq!(u.render("x"), "1 + -1*x1^3");
    }
}
