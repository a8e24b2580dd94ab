//! Node partitions (arbitrary equivalence relations or diagram-automorphism
//! orbits), lifts and lean lifts of class unions, equiconnectedness, the folded
//! marker exponent `β̄`, and connected orbit transversals.

use std::collections::HashSet;

use crate::cartan::{mask_is_connected, CartanMatrix, NodeSet};
use crate::error::{Error, Result};
use crate::numerators::{beta, PvIndex};
use crate::scalar::Scalar;
use crate::series::{Exponent, FoldedSeries, Series};

/// A node permutation preserving the Cartan matrix: `a[σi][σj] = a[i][j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagramAutomorphism {
    perm: Vec<usize>,
}

impl DiagramAutomorphism {
    /// `σ(i)`.
    pub fn apply(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.perm
    }

    pub fn identity(n: usize) -> Self {
        DiagramAutomorphism { perm: (0..n).collect() }
    }
}

/// Validate a 0-based permutation as a diagram automorphism of `cm`.
pub fn check_automorphism(cm: &CartanMatrix, perm: Vec<usize>) -> Result<DiagramAutomorphism> {
    let n = cm.n();
    let mut hit = vec![false; n];
    if perm.len() != n {
        return Err(Error::InvalidPermutation(n));
    }
    for &p in &perm {
        if p >= n || std::mem::replace(&mut hit[p], true) {
            return Err(Error::InvalidPermutation(n));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if cm.a(perm[i], perm[j]) != cm.a(i, j) {
                return Err(Error::NotCompatible { i: i + 1, j: j + 1 });
            }
        }
    }
    Ok(DiagramAutomorphism { perm })
}

/// A set partition of the nodes, classes ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    classes: Vec<NodeSet>,
    class_of: Vec<usize>,
}

impl Partition {
    /// Validate that `classes` (0-based) form a disjoint cover of `0..n`.
    pub fn from_classes(n: usize, classes: Vec<Vec<usize>>) -> Result<Self> {
        let mut class_of = vec![usize::MAX; n];
        let mut sets: Vec<NodeSet> = Vec::with_capacity(classes.len());
        for c in classes {
            if c.is_empty() {
                return Err(Error::InvalidPartition(n));
            }
            let set = NodeSet::from_indices(c.iter().copied());
            if set.len() != c.len() {
                return Err(Error::InvalidPartition(n));
            }
            for &i in set.iter() {
                if i >= n || class_of[i] != usize::MAX {
                    return Err(Error::InvalidPartition(n));
                }
                class_of[i] = 0;
            }
            sets.push(set);
        }
        if class_of.contains(&usize::MAX) {
            return Err(Error::InvalidPartition(n));
        }
        Ok(Self::build(n, sets))
    }

    pub fn singletons(n: usize) -> Self {
        Self::build(n, (0..n).map(|i| NodeSet::from_indices([i])).collect())
    }

    fn build(n: usize, mut classes: Vec<NodeSet>) -> Self {
        classes.sort_by_key(|c| c.as_slice()[0]);
        let mut class_of = vec![0; n];
        for (k, c) in classes.iter().enumerate() {
            for &i in c.iter() {
                class_of[i] = k;
            }
        }
        Partition { classes, class_of }
    }

    pub fn classes(&self) -> &[NodeSet] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    /// `π`: fold a series over simple-root variables into class variables.
    pub fn fold<T: Scalar>(&self, s: &Series<T>) -> FoldedSeries<T> {
        s.fold(&self.class_of, self.classes.len())
    }

    /// `π` on a single exponent.
    pub fn fold_exponent(&self, e: &Exponent) -> Exponent {
        e.fold(&self.class_of, self.classes.len())
    }

    /// Union of the classes with a non-zero coordinate in a folded exponent.
    pub fn class_union(&self, folded: &Exponent) -> NodeSet {
        folded.support().into_iter().flat_map(|k| self.classes[k].iter().copied()).collect()
    }

    /// Whether `set` is a union of classes; the first offending node otherwise.
    pub fn check_class_union(&self, set: &NodeSet) -> Result<()> {
        for &i in set.iter() {
            if let Some(&j) = self.classes[self.class_of[i]].iter().find(|&&j| !set.contains(j)) {
                return Err(Error::NotClassUnion { node: j + 1 });
            }
        }
        Ok(())
    }

    /// First pair of equivalent nodes carrying different pairings, if any.
    pub fn check_symmetric(&self, pv: &PvIndex) -> Result<()> {
        for c in &self.classes {
            let vals: Vec<(usize, u32)> = c.iter().filter_map(|&i| pv.pairing(i).map(|v| (i, v))).collect();
            if let Some(w) = vals.windows(2).find(|w| w[0].1 != w[1].1) {
                return Err(Error::NotSymmetric { i: w[0].0 + 1, j: w[1].0 + 1, vi: w[0].1, vj: w[1].1 });
            }
        }
        Ok(())
    }
}

/// Orbits of the group generated by `gens`.
pub fn orbit_partition(cm: &CartanMatrix, gens: &[DiagramAutomorphism]) -> Partition {
    let n = cm.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for g in gens {
        for i in 0..n {
            let (a, b) = (find(&mut parent, i), find(&mut parent, g.apply(i)));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let r = find(&mut parent, i);
        buckets[r].push(i);
    }
    let classes = buckets.into_iter().filter(|b| !b.is_empty()).map(NodeSet::from_indices).collect();
    Partition::build(n, classes)
}

/// A connected node set meeting every class exactly once.
///
/// Greedy growth from node 1, always adding the smallest neighbour that lies
/// in a class not yet met. For orbit partitions of a connected diagram this
/// cannot stall: if an edge `(x, y)` leaves the union of met classes, some `ω`
/// maps `x` into the current set, and `ω(y)` is then a neighbour of the set in
/// an unmet class.
pub fn connected_transversal(cm: &CartanMatrix, partition: &Partition) -> Result<NodeSet> {
    let n = cm.n();
    if partition.class_map().len() != n {
        return Err(Error::InvalidPartition(n));
    }
    let mut chosen: u64 = 1;
    let mut met = vec![false; partition.class_count()];
    met[partition.class_of(0)] = true;
    for _ in 1..partition.class_count() {
        let next = (0..n)
            .filter(|&y| !met[partition.class_of(y)])
            .find(|&y| cm.neighbor_mask(y) & chosen != 0)
            .ok_or(Error::NoTransversal)?;
        chosen |= 1 << next;
        met[partition.class_of(next)] = true;
    }
    Ok(NodeSet::from_mask(chosen))
}

/// Largest class union handled by lift enumeration.
pub const MAX_LIFT_NODES: usize = 16;

/// Inclusion-minimal lifts of a class union and their lean subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftData {
    /// Every inclusion-minimal lift, sorted.
    pub lifts: Vec<NodeSet>,
    /// The lifts whose per-class counts are componentwise minimal among all
    /// lifts; empty when the set is not equiconnected.
    pub lean: Vec<NodeSet>,
    pub equiconnected: bool,
    /// Per-class counts `|K̂ ∩ E|` of a lean lift (zero outside the set).
    pub lean_counts: Option<Vec<u32>>,
}

/// A Cartan matrix together with a node partition.
#[derive(Debug, Clone)]
pub struct FoldContext {
    cm: CartanMatrix,
    partition: Partition,
}

impl FoldContext {
    pub fn new(cm: CartanMatrix, partition: Partition) -> Result<Self> {
        if partition.class_map().len() != cm.n() {
            return Err(Error::InvalidPartition(cm.n()));
        }
        Ok(FoldContext { cm, partition })
    }

    pub fn cartan(&self) -> &CartanMatrix {
        &self.cm
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    fn counts(&self, mask: u64) -> Vec<u32> {
        let mut v = vec![0; self.partition.class_count()];
        for i in NodeSet::from_mask(mask).iter() {
            v[self.partition.class_of(*i)] += 1;
        }
        v
    }

    /// Lifts of `set`: connected subsets meeting every class inside `set`.
    pub fn lean_lifts(&self, set: &NodeSet) -> Result<LiftData> {
        self.partition.check_class_union(set)?;
        if set.len() > MAX_LIFT_NODES {
            return Err(Error::SizeLimit { what: "lift enumeration set", size: set.len(), limit: MAX_LIFT_NODES });
        }
        if set.is_empty() {
            return Err(Error::NoLift);
        }
        let full = set.mask();
        let class_masks: Vec<u64> = self
            .partition
            .classes()
            .iter()
            .map(NodeSet::mask)
            .filter(|m| m & full != 0)
            .collect();

        let mut all: HashSet<u64> = HashSet::new();
        let mut sub = full;
        while sub != 0 {
            if class_masks.iter().all(|c| c & sub != 0) && mask_is_connected(&self.cm, sub) {
                all.insert(sub);
            }
            sub = (sub - 1) & full;
        }
        if all.is_empty() {
            return Err(Error::NoLift);
        }
        // a lift is minimal iff no single-node deletion is still a lift
        let mut minimal: Vec<u64> = all
            .iter()
            .copied()
            .filter(|&m| NodeSet::from_mask(m).iter().all(|&v| !all.contains(&(m & !(1 << v)))))
            .collect();
        minimal.sort_by_key(|&m| NodeSet::from_mask(m));

        let vectors: Vec<Vec<u32>> = minimal.iter().map(|&m| self.counts(m)).collect();
        let floor: Vec<u32> = (0..self.partition.class_count())
            .map(|k| vectors.iter().map(|v| v[k]).min().unwrap_or(0))
            .collect();
        let lean: Vec<NodeSet> =
            minimal.iter().zip(&vectors).filter(|(_, v)| **v == floor).map(|(&m, _)| NodeSet::from_mask(m)).collect();
        let equiconnected = !lean.is_empty();
        Ok(LiftData {
            lifts: minimal.into_iter().map(NodeSet::from_mask).collect(),
            lean,
            equiconnected,
            lean_counts: equiconnected.then_some(floor),
        })
    }

    /// `β̄(λ, K) = π(β(λ, K̂))` for a lean lift `K̂` of `K = I`.
    pub fn beta_bar(&self, pv: &PvIndex) -> Result<Exponent> {
        self.partition.check_symmetric(pv)?;
        let data = self.lean_lifts(pv.nodes())?;
        if !data.equiconnected {
            return Err(Error::NotEquiconnected);
        }
        let lift = &data.lean[0];
        Ok(self.partition.fold_exponent(&beta(&self.cm, &pv.restrict(lift))))
    }

    /// Membership in the folded class: symmetric, class union, connected,
    /// equiconnected.
    pub fn check_folded_index(&self, pv: &PvIndex) -> Result<()> {
        self.partition.check_symmetric(pv)?;
        self.partition.check_class_union(pv.nodes())?;
        if !self.cm.is_connected(pv.nodes()) {
            return Err(Error::DisconnectedCandidateSupport { support: self.cm.render_set(pv.nodes()) });
        }
        if !self.lean_lifts(pv.nodes())?.equiconnected {
            return Err(Error::NotEquiconnected);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(one_based: &[usize]) -> NodeSet {
        NodeSet::from_indices(one_based.iter().map(|v| v - 1))
    }

    #[test]
    fn automorphism_checks() {
        let a3 = fixtures::a3();
        assert!(check_automorphism(&a3, vec![2, 1, 0]).is_ok());
        assert!(check_automorphism(&a3, vec![0, 1, 2]).is_ok());
        let skew = CartanMatrix::new(vec![vec![2, -1], vec![-2, 2]], None).unwrap();
        assert_eq!(check_automorphism(&skew, vec![1, 0]).unwrap_err(), Error::NotCompatible { i: 1, j: 2 });
        assert_eq!(check_automorphism(&a3, vec![0, 0, 1]).unwrap_err(), Error::InvalidPermutation(3));
        assert_eq!(check_automorphism(&a3, vec![0, 1]).unwrap_err(), Error::InvalidPermutation(3));
    }

    #[test]
    fn orbit_examples() {
        let a3 = fixtures::a3();
        let flip = check_automorphism(&a3, vec![2, 1, 0]).unwrap();
        let p = orbit_partition(&a3, &[flip]);
        assert_eq!(p.classes(), &[set(&[1, 3]), set(&[2])]);
        assert_eq!(orbit_partition(&a3, &[]).classes().len(), 3);
        let aff = fixtures::affine_a1();
        let swap = check_automorphism(&aff, vec![1, 0]).unwrap();
        assert_eq!(orbit_partition(&aff, &[swap]).classes(), &[set(&[1, 2])]);
    }

    #[test]
    fn partition_validation() {
        assert_eq!(Partition::from_classes(3, vec![vec![0, 1]]).unwrap_err(), Error::InvalidPartition(3));
        assert_eq!(Partition::from_classes(3, vec![vec![0, 1], vec![1, 2]]).unwrap_err(), Error::InvalidPartition(3));
        assert_eq!(Partition::from_classes(2, vec![vec![0, 0], vec![1]]).unwrap_err(), Error::InvalidPartition(2));
        let p = Partition::from_classes(3, vec![vec![2], vec![1, 0]]).unwrap();
        assert_eq!(p.classes(), &[set(&[1, 2]), set(&[3])]);
        assert_eq!(p.class_of(2), 1);
    }

    #[test]
    fn transversal_examples() {
        let a3 = fixtures::a3();
        let flip = check_automorphism(&a3, vec![2, 1, 0]).unwrap();
        let p = orbit_partition(&a3, &[flip]);
        assert_eq!(connected_transversal(&a3, &p).unwrap(), set(&[1, 2]));
        assert_eq!(connected_transversal(&a3, &Partition::singletons(3)).unwrap(), set(&[1, 2, 3]));
        let split = CartanMatrix::new(vec![vec![2, 0], vec![0, 2]], None).unwrap();
        assert_eq!(connected_transversal(&split, &Partition::singletons(2)).unwrap_err(), Error::NoTransversal);
    }

    #[test]
    fn transversal_on_d4_triality() {
        // D4 with the full triality rotation: 2 is the centre
        let d4 = CartanMatrix::new(
            vec![vec![2, -1, 0, 0], vec![-1, 2, -1, -1], vec![0, -1, 2, 0], vec![0, -1, 0, 2]],
            None,
        )
        .unwrap();
        let rot = check_automorphism(&d4, vec![2, 1, 3, 0]).unwrap();
        let p = orbit_partition(&d4, &[rot]);
        assert_eq!(p.classes(), &[set(&[1, 3, 4]), set(&[2])]);
        assert_eq!(connected_transversal(&d4, &p).unwrap(), set(&[1, 2]));
    }

    #[test]
    fn figure_one_lean_lifts() {
        let (cm, p) = fixtures::figure_one();
        let ctx = FoldContext::new(cm.clone(), p).unwrap();
        let data = ctx.lean_lifts(&cm.all_nodes()).unwrap();
        assert!(data.equiconnected);
        assert_eq!(data.lean, vec![set(&[1, 2, 3, 4]), set(&[1, 2, 3, 5])]);
        assert_eq!(data.lifts, data.lean);
        let pv = PvIndex::uniform(cm.all_nodes(), 0);
        assert_eq!(ctx.beta_bar(&pv).unwrap(), Exponent::new(vec![1, 1, 1, 1]));
    }

    #[test]
    fn figure_two_is_not_equiconnected() {
        let (cm, p) = fixtures::figure_two();
        let ctx = FoldContext::new(cm.clone(), p).unwrap();
        let data = ctx.lean_lifts(&cm.all_nodes()).unwrap();
        assert!(!data.equiconnected);
        assert!(data.lean.is_empty());
        assert_eq!(data.lifts, vec![set(&[1, 2, 3, 4, 5]), set(&[5, 6, 7, 8, 9])]);
        let pv = PvIndex::uniform(cm.all_nodes(), 0);
        assert_eq!(ctx.beta_bar(&pv).unwrap_err(), Error::NotEquiconnected);
    }

    #[test]
    fn single_class_lifts_are_singletons() {
        let (cm, p) = fixtures::figure_one();
        let ctx = FoldContext::new(cm, p).unwrap();
        let data = ctx.lean_lifts(&set(&[4, 5])).unwrap();
        assert!(data.equiconnected);
        assert_eq!(data.lean, vec![set(&[4]), set(&[5])]);
        assert_eq!(data.lean_counts.unwrap(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn lift_errors() {
        let (cm, p) = fixtures::figure_one();
        let ctx = FoldContext::new(cm, p).unwrap();
        assert_eq!(ctx.lean_lifts(&set(&[4])).unwrap_err(), Error::NotClassUnion { node: 5 });
        assert_eq!(ctx.lean_lifts(&set(&[1, 3])).unwrap_err(), Error::NoLift);
    }

    #[test]
    fn beta_bar_a3_flip() {
        let a3 = fixtures::a3();
        let flip = check_automorphism(&a3, vec![2, 1, 0]).unwrap();
        let ctx = FoldContext::new(a3.clone(), orbit_partition(&a3, &[flip])).unwrap();
        let data = ctx.lean_lifts(&a3.all_nodes()).unwrap();
        assert_eq!(data.lean, vec![set(&[1, 2]), set(&[2, 3])]);
        assert_eq!(ctx.beta_bar(&PvIndex::uniform(a3.all_nodes(), 0)).unwrap(), Exponent::new(vec![1, 1]));
        let sym = PvIndex::new(a3.all_nodes(), [(0, 2), (1, 0), (2, 2)]).unwrap();
        assert_eq!(ctx.beta_bar(&sym).unwrap(), Exponent::new(vec![3, 1]));
        let asym = PvIndex::new(a3.all_nodes(), [(0, 2), (1, 0), (2, 1)]).unwrap();
        assert_eq!(ctx.beta_bar(&asym).unwrap_err(), Error::NotSymmetric { i: 1, j: 3, vi: 2, vj: 1 });
        let single = PvIndex::uniform(set(&[2]), 4);
        assert_eq!(ctx.beta_bar(&single).unwrap(), Exponent::new(vec![0, 5]));
    }
}
