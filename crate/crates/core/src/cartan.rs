//! Validated generalized Cartan matrices and Dynkin-graph connectivity.
//!
//! Nodes are 0-based inside the library. Anything shown to a user goes
//! through [`CartanMatrix::label`] or 1-based indices.

use std::collections::VecDeque;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest supported rank; node sets are stored as `u64` bitmasks in places.
pub const MAX_RANK: usize = 64;

/// A symmetrizable generalized Cartan matrix together with node labels and a
/// symmetrizer witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
    labels: Vec<String>,
    symmetrizer: Vec<BigRational>,
}

impl CartanMatrix {
    /// Validate `matrix` and attach `labels` (defaulting to `"1".."n"`).
    pub fn new(matrix: Vec<Vec<i64>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        if n > MAX_RANK {
            return Err(Error::SizeLimit { what: "matrix", size: n, limit: MAX_RANK });
        }
        for (r, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { rows: n, bad_row: r + 1, cols: row.len() });
            }
        }
        let labels = match labels {
            Some(l) if l.len() != n => return Err(Error::LabelCount { expected: n, got: l.len() }),
            Some(l) => l,
            None => (1..=n).map(|i| i.to_string()).collect(),
        };
        if let Some((i, row)) = matrix.iter().enumerate().find(|(i, row)| row[*i] != 2) {
            return Err(Error::DiagonalNotTwo(i + 1, row[i]));
        }
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if matrix[i][j] > 0 {
                    return Err(Error::PositiveOffDiagonal { i: i + 1, j: j + 1, value: matrix[i][j] });
                }
                if (matrix[i][j] == 0) != (matrix[j][i] == 0) {
                    return Err(Error::ZeroPatternAsymmetric {
                        i: i + 1,
                        j: j + 1,
                        aij: matrix[i][j],
                        aji: matrix[j][i],
                    });
                }
            }
        }
        let symmetrizer = symmetrize(&matrix)?;
        Ok(CartanMatrix { entries: matrix, labels, symmetrizer })
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    /// Entry `a[i][j] = α_j(α_i^∨)`.
    #[inline]
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Positive `d_i` with `d_i a_ij = d_j a_ji`, scaled to coprime integers on
    /// each connected component.
    pub fn symmetrizer(&self) -> &[BigRational] {
        &self.symmetrizer
    }

    /// Symmetric form `(α_i | α_j) = d_i a_ij`.
    pub fn form(&self, i: usize, j: usize) -> BigRational {
        &self.symmetrizer[i] * BigRational::from_integer(self.entries[i][j].into())
    }

    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.entries[i][j] != 0
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&j| self.adjacent(i, j))
    }

    pub(crate) fn neighbor_mask(&self, i: usize) -> u64 {
        self.neighbors(i).fold(0, |m, j| m | (1 << j))
    }

    /// Partition `set` into maximal connected pieces, ordered by smallest member.
    pub fn connected_components(&self, set: &NodeSet) -> Vec<NodeSet> {
        let mut seen = vec![false; self.n()];
        let inside = set.mask();
        let mut parts = Vec::new();
        for &start in set.iter() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut part = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if inside & (1 << v) != 0 && !seen[v] {
                        seen[v] = true;
                        part.push(v);
                        queue.push_back(v);
                    }
                }
            }
            parts.push(NodeSet::from_indices(part));
        }
        parts
    }

    /// Non-empty and a single component.
    pub fn is_connected(&self, set: &NodeSet) -> bool {
        !set.is_empty() && mask_is_connected(self, set.mask())
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::from_indices(0..self.n())
    }

    /// Checked construction of a node set from 1-based indices.
    pub fn node_set(&self, one_based: &[usize]) -> Result<NodeSet> {
        NodeSet::from_one_based(one_based, self.n())
    }

    pub fn render_set(&self, set: &NodeSet) -> String {
        let names: Vec<&str> = set.iter().map(|&i| self.label(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Connectivity of the subgraph induced by a bitmask of nodes.
pub(crate) fn mask_is_connected(cm: &CartanMatrix, mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let start = mask.trailing_zeros() as usize;
    let mut reached = 1u64 << start;
    let mut frontier = reached;
    while frontier != 0 {
        let u = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = cm.neighbor_mask(u) & mask & !reached;
        reached |= fresh;
        frontier |= fresh;
    }
    reached == mask
}

// Spanning-tree assignment of d_i, then every non-tree edge is checked.
fn symmetrize(a: &[Vec<i64>]) -> Result<Vec<BigRational>> {
    let n = a.len();
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(BigRational::one());
        let mut comp = vec![root];
        let mut queue = VecDeque::from([root]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].clone().unwrap();
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // d_i a_ij = d_j a_ji
                let want = &di * BigRational::new(a[i][j].into(), a[j][i].into());
                match &d[j] {
                    None => {
                        d[j] = Some(want);
                        comp.push(j);
                        queue.push_back(j);
                    }
                    Some(dj) if *dj != want => {
                        let (lo, hi) = (i.min(j), i.max(j));
                        return Err(Error::NotSymmetrizable { i: lo + 1, j: hi + 1 });
                    }
                    Some(_) => {}
                }
            }
        }
        components.push(comp);
    }
    let mut d: Vec<BigRational> = d.into_iter().map(Option::unwrap).collect();
    for comp in components {
        let denom_lcm = comp.iter().fold(num_bigint::BigInt::one(), |acc, &i| acc.lcm(d[i].denom()));
        let scaled: Vec<_> = comp.iter().map(|&i| (&d[i] * BigRational::from_integer(denom_lcm.clone())).to_integer()).collect();
        let g = scaled.iter().fold(num_bigint::BigInt::zero(), |acc, v| acc.gcd(v));
        for (&i, v) in comp.iter().zip(scaled) {
            d[i] = BigRational::from_integer(v / &g);
        }
    }
    debug_assert!(d.iter().all(|v| v.is_positive()));
    Ok(d)
}

/// A sorted, duplicate-free set of 0-based node indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(Vec<usize>);

impl NodeSet {
    pub fn empty() -> Self {
        NodeSet(Vec::new())
    }

    pub fn from_indices(nodes: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = nodes.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        NodeSet(v)
    }

    pub fn from_mask(mask: u64) -> Self {
        NodeSet((0..64).filter(|&i| mask & (1 << i) != 0).collect())
    }

    /// Build from 1-based indices, checking range against `n`.
    pub fn from_one_based(nodes: &[usize], n: usize) -> Result<Self> {
        for &v in nodes {
            if v == 0 || v > n {
                return Err(Error::NodeOutOfRange { node: v, n });
            }
        }
        Ok(Self::from_indices(nodes.iter().map(|v| v - 1)))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.0.iter()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn mask(&self) -> u64 {
        self.0.iter().fold(0, |m, &i| m | (1 << i))
    }

    pub fn is_subset(&self, other: &NodeSet) -> bool {
        self.mask() & !other.mask() == 0
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        NodeSet::from_indices(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        NodeSet::from_indices(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cm(rows: &[&[i64]]) -> Result<CartanMatrix> {
        CartanMatrix::new(rows.iter().map(|r| r.to_vec()).collect(), None)
    }

    #[test]
    fn accepts_a2_and_affine_a1() {
        let a2 = cm(&[&[2, -1], &[-1, 2]]).unwrap();
        assert_eq!(a2.symmetrizer(), &[BigRational::one(), BigRational::one()]);
        let aff = cm(&[&[2, -2], &[-2, 2]]).unwrap();
        assert_eq!(aff.labels(), &["1".to_string(), "2".to_string()]);
    }

    #[test]
    fn symmetrizer_for_b2_and_g2() {
        let b2 = cm(&[&[2, -2], &[-1, 2]]).unwrap();
        let d: Vec<String> = b2.symmetrizer().iter().map(|v| v.to_string()).collect();
        assert_eq!(d, ["1", "2"]);
        let g2 = cm(&[&[2, -1], &[-3, 2]]).unwrap();
        let d: Vec<String> = g2.symmetrizer().iter().map(|v| v.to_string()).collect();
        assert_eq!(d, ["3", "1"]);
    }

    #[test]
    fn rejects_each_corruption() {
        assert_eq!(
            cm(&[&[2, -1], &[0, 2]]).unwrap_err(),
            Error::ZeroPatternAsymmetric { i: 1, j: 2, aij: -1, aji: 0 }
        );
        assert_eq!(cm(&[&[2, 1], &[1, 2]]).unwrap_err(), Error::PositiveOffDiagonal { i: 1, j: 2, value: 1 });
        assert_eq!(cm(&[&[1, -1], &[-1, 2]]).unwrap_err(), Error::DiagonalNotTwo(1, 1));
        assert!(matches!(cm(&[&[2, -1, 0], &[-1, 2]]), Err(Error::NotSquare { .. })));
        assert_eq!(CartanMatrix::new(vec![], None).unwrap_err(), Error::EmptyMatrix);
        // triangle whose edge ratios multiply to 2 around the cycle
        let bad = cm(&[&[2, -2, -1], &[-1, 2, -1], &[-1, -1, 2]]);
        assert!(matches!(bad, Err(Error::NotSymmetrizable { .. })));
    }

    #[test]
    fn labels_must_match_rank() {
        let err = CartanMatrix::new(vec![vec![2]], Some(vec!["a".into(), "b".into()])).unwrap_err();
        assert_eq!(err, Error::LabelCount { expected: 1, got: 2 });
    }

    #[test]
    fn components_of_block_matrix() {
        let c = cm(&[&[2, -1, 0], &[-1, 2, 0], &[0, 0, 2]]).unwrap();
        let parts = c.connected_components(&c.all_nodes());
        assert_eq!(parts, vec![NodeSet::from_indices([0, 1]), NodeSet::from_indices([2])]);
        assert!(c.connected_components(&NodeSet::empty()).is_empty());
        assert!(!c.is_connected(&NodeSet::empty()));
        assert!(!c.is_connected(&c.all_nodes()));
        assert!(c.is_connected(&NodeSet::from_indices([0, 1])));
    }

    #[test]
    fn node_set_range_check() {
        assert_eq!(NodeSet::from_one_based(&[0], 3).unwrap_err(), Error::NodeOutOfRange { node: 0, n: 3 });
        assert_eq!(NodeSet::from_one_based(&[3, 1, 3], 3).unwrap().as_slice(), &[0, 2]);
    }
}
