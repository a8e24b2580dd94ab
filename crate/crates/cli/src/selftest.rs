//! Seeded round-trip suites. Trial `k` draws from its own stream seeded by
//! `(seed, k)`, so reports do not depend on the number of worker threads
//! (capped by `KMF_THREADS`).

use kmf::{
    beta, check_automorphism, fixtures, folded_log_sum, log_sum, orbit_partition, peel_folded, peel_log_sum,
    verify_equivalence, CartanMatrix, FoldContext, NodeSet, PvIndex,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub trials: usize,
    /// Indices of failing trials.
    pub failed: Vec<usize>,
}

type Trial = fn(&mut ChaCha8Rng) -> bool;

pub fn thread_count() -> Option<usize> {
    std::env::var("KMF_THREADS").ok().and_then(|v| v.parse().ok()).filter(|&n| n > 0)
}

pub fn run(seed: u64, trials: usize) -> Vec<SuiteReport> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = thread_count() {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().expect("thread pool");
    let suites: [(&'static str, Trial); 2] = [("unsplit", unsplit_trial), ("folded", folded_trial)];
    pool.install(|| {
        suites
            .iter()
            .enumerate()
            .map(|(s, &(name, trial))| {
                let failed = (0..trials)
                    .into_par_iter()
                    .filter(|&k| {
                        let mut rng = ChaCha8Rng::seed_from_u64(seed);
                        rng.set_stream(((s as u64) << 32) | k as u64);
                        !trial(&mut rng)
                    })
                    .collect();
                SuiteReport { name, trials, failed }
            })
            .collect()
    })
}

#[allow(clippy::needless_range_loop)]
fn random_gcm(rng: &mut ChaCha8Rng) -> CartanMatrix {
    loop {
        let n = rng.gen_range(1..=4);
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

fn unsplit_trial(rng: &mut ChaCha8Rng) -> bool {
    let cm = random_gcm(rng);
    let connected: Vec<NodeSet> =
        (1u64..1 << cm.n()).map(NodeSet::from_mask).filter(|s| cm.is_connected(s)).collect();
    let r = rng.gen_range(1..=4);
    let input: Vec<PvIndex> = (0..r)
        .map(|_| {
            let nodes = connected.choose(rng).expect("rank >= 1").clone();
            let pairs: Vec<(usize, i64)> = nodes.iter().map(|&i| (i, rng.gen_range(0..=3))).collect();
            PvIndex::new(nodes, pairs).expect("valid index")
        })
        .collect();
    let cap = input.iter().map(|pv| beta(&cm, pv).degree()).max().unwrap_or(0) + 2;
    let Ok(total) = log_sum(&cm, &input, cap) else { return false };
    match peel_log_sum(&cm, &total) {
        Ok(res) => res.residual_zero && matches!(verify_equivalence(&cm, &input, &res.factors, None), Ok(Some(_))),
        Err(_) => false,
    }
}

fn folded_trial(rng: &mut ChaCha8Rng) -> bool {
    let (cm, perm) = if rng.gen_bool(0.5) { (fixtures::a3(), vec![2, 1, 0]) } else { (fixtures::affine_a1(), vec![1, 0]) };
    let Ok(g) = check_automorphism(&cm, perm) else { return false };
    let Ok(ctx) = FoldContext::new(cm.clone(), orbit_partition(&cm, &[g])) else { return false };
    let part = ctx.partition();
    let unions: Vec<NodeSet> = (1u64..1 << part.class_count())
        .map(|m| NodeSet::from_mask(m).iter().flat_map(|&k| part.classes()[k].iter().copied()).collect::<NodeSet>())
        .filter(|k| cm.is_connected(k) && ctx.lean_lifts(k).map(|d| d.equiconnected).unwrap_or(false))
        .collect();
    let r = rng.gen_range(1..=4);
    let mut input: Vec<PvIndex> = (0..r)
        .map(|_| {
            let k = unions.choose(rng).expect("K = S qualifies").clone();
            let per_class: Vec<i64> = (0..part.class_count()).map(|_| rng.gen_range(0..=3)).collect();
            PvIndex::new(k.clone(), k.iter().map(|&i| (i, per_class[part.class_of(i)]))).expect("valid index")
        })
        .collect();
    let Ok(cap) = input.iter().map(|pv| ctx.beta_bar(pv).map(|b| b.degree())).try_fold(0, |m, d| d.map(|d| m.max(d)))
    else {
        return false;
    };
    let Ok(total) = folded_log_sum(&ctx, &input, cap + 2) else { return false };
    match peel_folded(&ctx, &total) {
        Ok(res) => {
            let mut got = res.factors;
            got.sort();
            input.sort();
            got == input
        }
        Err(_) => false,
    }
}
