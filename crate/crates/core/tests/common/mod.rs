#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeMap;

use kmf::{check_automorphism, CartanMatrix, DiagramAutomorphism, Exponent, NodeSet, PvIndex, QSeries, Rational};
use rand::seq::SliceRandom;
use rand::Rng;

/// Random symmetrizable GCM of rank `1..=max_rank` with entries `>= -3`.
pub fn random_gcm<R: Rng>(rng: &mut R, max_rank: usize) -> CartanMatrix {
    loop {
        let n = rng.gen_range(1..=max_rank);
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            for j in i + 1..n {
                if rng.gen_bool(0.6) {
                    a[i][j] = -rng.gen_range(1..=3);
                    a[j][i] = -rng.gen_range(1..=3);
                }
            }
        }
        if let Ok(cm) = CartanMatrix::new(a, None) {
            return cm;
        }
    }
}

/// Every connected non-empty node set.
pub fn connected_sets(cm: &CartanMatrix) -> Vec<NodeSet> {
    (1u64..1 << cm.n())
        .map(NodeSet::from_mask)
        .filter(|s| cm.is_connected(s))
        .collect()
}

pub fn random_connected_set<R: Rng>(rng: &mut R, cm: &CartanMatrix) -> NodeSet {
    connected_sets(cm).choose(rng).expect("rank >= 1").clone()
}

pub fn random_pv<R: Rng>(rng: &mut R, nodes: NodeSet, max_lam: i64) -> PvIndex {
    let pairs: Vec<(usize, i64)> = nodes.iter().map(|&i| (i, rng.gen_range(0..=max_lam))).collect();
    PvIndex::new(nodes, pairs).expect("non-negative pairings")
}

pub fn sorted(mut v: Vec<PvIndex>) -> Vec<PvIndex> {
    v.sort();
    v
}

pub fn q(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// `Π_α (1 - x^α)` truncated at `cap`.
pub fn root_product(n: usize, roots: &[Vec<u32>], cap: u32) -> QSeries {
    roots.iter().fold(QSeries::one(n, cap), |acc, r| {
        let mut f = QSeries::one(n, cap);
        f.add_term(Exponent::new(r.clone()), q(-1));
        acc.mul(&f).unwrap()
    })
}

/// Random connected GCM on `3..=max_n` nodes whose diagram has at least one
/// non-trivial automorphism, together with all automorphisms found by brute
/// force.
pub fn random_symmetric_diagram<R: Rng>(rng: &mut R, max_n: usize) -> (CartanMatrix, Vec<DiagramAutomorphism>) {
    loop {
        let n = rng.gen_range(3..=max_n);
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
        }
        // random spanning tree plus a few extra edges
        for i in 1..n {
            let j = rng.gen_range(0..i);
            let (x, y) = if rng.gen_bool(0.8) { (-1, -1) } else { (-1, -2) };
            a[i][j] = x;
            a[j][i] = y;
        }
        for i in 0..n {
            for j in i + 1..n {
                if a[i][j] == 0 && rng.gen_bool(0.15) {
                    a[i][j] = -1;
                    a[j][i] = -1;
                }
            }
        }
        let Ok(cm) = CartanMatrix::new(a, None) else { continue };
        let autos = all_automorphisms(&cm);
        if autos.iter().any(|g| g.images().iter().enumerate().any(|(i, &j)| i != j)) {
            return (cm, autos);
        }
    }
}

pub fn all_automorphisms(cm: &CartanMatrix) -> Vec<DiagramAutomorphism> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..cm.n()).collect();
    permutations(&mut perm, 0, &mut |p| {
        if let Ok(g) = check_automorphism(cm, p.to_vec()) {
            out.push(g);
        }
    });
    out
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Coefficients of `Σ_β c_β e^{-β}` from the Peterson recurrence
/// `(β|β-2ρ) c_β = Σ_{β'+β''=β} (β'|β'') c_β' c_β''`, `c_{α_i} = 1`, where
/// `c_β = Σ_{k | β} mult(β/k) / k`.
pub fn peterson_multiplicities(cm: &CartanMatrix, cap: u32) -> BTreeMap<Vec<u32>, i64> {
    let n = cm.n();
    let sym: Vec<Rational> = cm.symmetrizer().to_vec();
    let form = |x: &[u32], y: &[u32]| -> Rational {
        let mut s = q(0);
        for i in 0..n {
            for j in 0..n {
                s += sym[i].clone() * q(cm.a(i, j)) * q(x[i] as i64 * y[j] as i64);
            }
        }
        s
    };
    let rho = |x: &[u32]| -> Rational { (0..n).map(|i| sym[i].clone() * q(x[i] as i64)).sum() };
    let mut all: Vec<Vec<u32>> = Vec::new();
    let mut cur = vec![0u32; n];
    enumerate(&mut cur, 0, cap, &mut all);
    all.retain(|v| v.iter().any(|&c| c > 0));
    all.sort_by_key(|v| v.iter().sum::<u32>());
    let mut c: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
    let mut mult: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    for beta in &all {
        // Σ_{k ≥ 2, k | β} mult(β/k)/k
        let g = beta.iter().fold(0u32, |g, &x| gcd(g, x));
        let mut divisors = q(0);
        for k in 2..=g {
            if g % k == 0 {
                let b: Vec<u32> = beta.iter().map(|&x| x / k).collect();
                divisors += q(*mult.get(&b).unwrap_or(&0)) / q(k as i64);
            }
        }
        let deg: u32 = beta.iter().sum();
        let value = if deg == 1 {
            q(1)
        } else {
            let mut rhs = q(0);
            for (b1, c1) in &c {
                if let Some(b2) = sub(beta, b1) {
                    if let Some(c2) = c.get(&b2) {
                        rhs += form(b1, &b2) * c1 * c2;
                    }
                }
            }
            let lhs = form(beta, beta) - rho(beta) * q(2);
            if lhs == q(0) {
                // (β|β) = 2(ρ|β) forces ρ(β^∨) = 1 for a real root, so a
                // non-simple β here is not a root at all
                assert_eq!(rhs, q(0), "inconsistent Peterson step at {beta:?}");
                divisors.clone()
            } else {
                rhs / lhs
            }
        };
        let m = value.clone() - divisors;
        assert!(m.is_integer(), "non-integral multiplicity at {beta:?}");
        let m = i64::try_from(m.to_integer()).unwrap();
        if m != 0 {
            mult.insert(beta.clone(), m);
        }
        c.insert(beta.clone(), value);
    }
    mult
}

fn enumerate(cur: &mut Vec<u32>, k: usize, left: u32, out: &mut Vec<Vec<u32>>) {
    if k == cur.len() {
        out.push(cur.clone());
        return;
    }
    for v in 0..=left {
        cur[k] = v;
        enumerate(cur, k + 1, left - v, out);
    }
    cur[k] = 0;
}

fn sub(a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    let d: Option<Vec<u32>> = a.iter().zip(b).map(|(x, y)| x.checked_sub(*y)).collect();
    d.filter(|v| v.iter().any(|&x| x > 0))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
