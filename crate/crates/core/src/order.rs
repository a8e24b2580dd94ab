//! The dominance preorder `⪰` and the equivalence `≈` on parabolic Verma
//! indices.

use crate::cartan::CartanMatrix;
use crate::error::{Error, Result};
use crate::numerators::{beta, PvIndex};

/// `a ⪰ b`: either `I_a ⊋ I_b`, or `I_a = I_b` and `β(b) - β(a) ∈ Q⁺`.
pub fn preceq(cm: &CartanMatrix, a: &PvIndex, b: &PvIndex) -> bool {
    let (ia, ib) = (a.nodes(), b.nodes());
    if ia == ib {
        beta(cm, a).le_componentwise(&beta(cm, b))
    } else {
        ib.is_subset(ia)
    }
}

/// `a ≈ b`: same node set and same pairings on it.
pub fn approx(a: &PvIndex, b: &PvIndex) -> bool {
    a.nodes() == b.nodes() && a.pairings() == b.pairings()
}

/// Positions `k` such that every `j` with `list[j] ⪰ list[k]` satisfies
/// `list[j] ≈ list[k]`, in ascending order.
pub fn maximal_indices(cm: &CartanMatrix, list: &[PvIndex]) -> Result<Vec<usize>> {
    if list.is_empty() {
        return Err(Error::EmptyList);
    }
    Ok((0..list.len())
        .filter(|&k| list.iter().all(|other| !preceq(cm, other, &list[k]) || approx(other, &list[k])))
        .collect())
}
