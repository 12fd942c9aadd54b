//! Test-side instance builders and oracles that share no code with the
//! solvers under test.
#![allow(dead_code)]

pub mod lp;

use std::collections::BTreeMap;

use ctsp::instance::Point;
use ctsp::{Distance, Instance};
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform points in a square with a random partition into `m` nonempty clusters.
pub fn random_instance(n: usize, m: usize, seed: u64) -> Instance {
    let mut r = rng(seed);
    let pts: Vec<Point> = (0..n)
        .map(|_| Point::new(r.random_range(0.0..500.0), r.random_range(0.0..500.0)))
        .collect();
    let mut owner: Vec<usize> = (0..n)
        .map(|v| if v < m { v } else { r.random_range(0..m) })
        .collect();
    owner.shuffle(&mut r);
    let mut clusters = vec![Vec::new(); m];
    for (v, &k) in owner.iter().enumerate() {
        clusters[k].push(v);
    }
    Instance::from_coords(format!("rand-{n}-{m}-{seed}"), pts, clusters).unwrap()
}

/// TSPLIB nearest-integer Euclidean distance, computed from the raw points.
pub fn nint(a: Point, b: Point) -> i64 {
    ((a.x - b.x).hypot(a.y - b.y) + 0.5).floor() as i64
}

pub fn cost<D: Distance + ?Sized>(d: &D, order: &[usize]) -> i64 {
    let n = order.len();
    (0..n).map(|k| d.dist(order[k], order[(k + 1) % n])).sum()
}

/// Is every cluster visited as one cyclic run?
pub fn contiguous(inst: &Instance, order: &[usize]) -> bool {
    let n = order.len();
    let mut runs: BTreeMap<usize, usize> = BTreeMap::new();
    for k in 0..n {
        let c = inst.cluster_of(order[k]);
        if c != inst.cluster_of(order[(k + n - 1) % n]) {
            *runs.entry(c).or_default() += 1;
        }
    }
    // m = 1 has no boundaries at all; otherwise each cluster starts exactly once.
    runs.values().all(|&r| r == 1) && (runs.is_empty() || runs.len() == inst.num_clusters())
}

/// Minimum over all cycles starting at vertex 0, optionally restricted to
/// cluster-contiguous ones.
pub fn enumerate_optimum<D: Distance + ?Sized>(
    d: &D,
    filter: impl Fn(&[usize]) -> bool,
) -> Option<i64> {
    let n = d.len();
    if n == 1 {
        return Some(0);
    }
    (1..n)
        .permutations(n - 1)
        .map(|rest| std::iter::once(0).chain(rest).collect::<Vec<_>>())
        .filter(|o| filter(o))
        .map(|o| cost(d, &o))
        .min()
}

pub fn ctsp_optimum(inst: &Instance) -> i64 {
    enumerate_optimum(inst, |o| contiguous(inst, o)).expect("a contiguous tour always exists")
}

pub fn tsp_optimum<D: Distance + ?Sized>(d: &D) -> i64 {
    enumerate_optimum(d, |_| true).unwrap()
}

pub fn is_permutation(order: &[usize], n: usize) -> bool {
    order.len() == n && order.iter().copied().sorted().eq(0..n)
}

/// Undirected edge multiset of a cycle.
pub fn edge_multiset(order: &[usize]) -> BTreeMap<(usize, usize), usize> {
    let n = order.len();
    let mut out = BTreeMap::new();
    for k in 0..n {
        let (a, b) = (order[k], order[(k + 1) % n]);
        *out.entry((a.min(b), a.max(b))).or_default() += 1;
    }
    out
}
