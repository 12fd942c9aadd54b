use std::collections::HashMap;

use crate::distance::Distance;
use crate::instance::Instance;
use crate::tour::{cycle_cost, Tour};

use super::ExactError;

/// Largest `n` accepted by [`brute_force_tsp`].
pub const TSP_LIMIT: usize = 12;

/// Largest `m! * prod(|V_k| - 1)!` accepted by [`brute_force_ctsp`].
pub const CTSP_ENUMERATION_LIMIT: u128 = 10_000_000;

/// Optimal Hamiltonian cycle by the Held–Karp recursion, anchored at vertex 0.
pub fn brute_force_tsp<D: Distance + ?Sized>(d: &D) -> Result<(Tour, i64), ExactError> {
    let n = d.len();
    if n > TSP_LIMIT {
        return Err(ExactError::TooLarge {
            what: "brute-force TSP vertices",
            size: n as u128,
            limit: TSP_LIMIT as u128,
        });
    }
    if n <= 3 {
        let order: Vec<usize> = (0..n).collect();
        let cost = cycle_cost(d, &order);
        return Ok((Tour::from_parts(order, cost), cost));
    }
    // Subsets of 1..n as bitmasks over k-1; dp[mask][j] = shortest path from
    // 0 through mask ending at j (j in mask).
    let k = n - 1;
    let full = (1usize << k) - 1;
    let mut dp = vec![i64::MAX; (full + 1) * k];
    let mut parent = vec![usize::MAX; (full + 1) * k];
    for j in 0..k {
        dp[(1 << j) * k + j] = d.dist(0, j + 1);
    }
    for mask in 1..=full {
        for j in 0..k {
            let cur = dp[mask * k + j];
            if mask & (1 << j) == 0 || cur == i64::MAX {
                continue;
            }
            for t in 0..k {
                if mask & (1 << t) != 0 {
                    continue;
                }
                let next = mask | (1 << t);
                let c = cur + d.dist(j + 1, t + 1);
                if c < dp[next * k + t] {
                    dp[next * k + t] = c;
                    parent[next * k + t] = j;
                }
            }
        }
    }
    let (last, best) = (0..k)
        .map(|j| (j, dp[full * k + j] + d.dist(j + 1, 0)))
        .min_by_key(|&(j, c)| (c, j))
        .expect("n >= 4");
    let mut order = Vec::with_capacity(n);
    let (mut mask, mut j) = (full, last);
    while j != usize::MAX {
        order.push(j + 1);
        let p = parent[mask * k + j];
        mask &= !(1 << j);
        j = p;
    }
    order.push(0);
    order.reverse();
    Ok((Tour::from_parts(order, best), best))
}

fn factorial_sat(x: usize) -> u128 {
    (2..=x as u128).fold(1u128, |acc, v| acc.saturating_mul(v))
}

/// `m! * prod_k (|V_k| - 1)!`, saturating.
pub fn ctsp_enumeration_size(inst: &Instance) -> u128 {
    inst.clusters()
        .iter()
        .fold(factorial_sat(inst.num_clusters()), |acc, c| {
            acc.saturating_mul(factorial_sat(c.len().saturating_sub(1)))
        })
}

/// Calls `f` on each permutation of `items` (Heap's algorithm).
fn for_each_permutation(items: &mut [usize], mut f: impl FnMut(&[usize])) {
    let n = items.len();
    let mut c = vec![0usize; n];
    f(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            f(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Shortest Hamiltonian path through one cluster for every (entry, exit).
struct ClusterPaths {
    best: HashMap<(usize, usize), (i64, Vec<usize>)>,
}

impl ClusterPaths {
    fn new(inst: &Instance, members: &[usize]) -> Self {
        let mut best: HashMap<(usize, usize), (i64, Vec<usize>)> = HashMap::new();
        let mut items = members.to_vec();
        for_each_permutation(&mut items, |p| {
            let key = (p[0], p[p.len() - 1]);
            let c: i64 = p.windows(2).map(|w| inst.dist(w[0], w[1])).sum();
            match best.get(&key) {
                Some((bc, bp)) if (*bc, bp.as_slice()) <= (c, p) => {}
                _ => {
                    best.insert(key, (c, p.to_vec()));
                }
            }
        });
        Self { best }
    }

    fn ends(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.best.keys().copied().collect();
        v.sort_unstable();
        v
    }
}

/// Optimal cluster-contiguous tour by enumeration of cluster orders and
/// within-cluster paths.
///
/// Cluster 0 is fixed first; every order of the remaining clusters is
/// combined with a cyclic choice of entry and exit per cluster, each cluster
/// contributing its cheapest Hamiltonian path between them.
pub fn brute_force_ctsp(inst: &Instance) -> Result<(Tour, i64), ExactError> {
    let size = ctsp_enumeration_size(inst);
    if size > CTSP_ENUMERATION_LIMIT {
        return Err(ExactError::TooLarge {
            what: "brute-force CTSP enumeration",
            size,
            limit: CTSP_ENUMERATION_LIMIT,
        });
    }
    let m = inst.num_clusters();
    let paths: Vec<ClusterPaths> = inst
        .clusters()
        .iter()
        .map(|c| ClusterPaths::new(inst, c))
        .collect();

    if m == 1 {
        let n = inst.len();
        if n <= 3 {
            let order: Vec<usize> = (0..n).collect();
            let cost = cycle_cost(inst, &order);
            return Ok((Tour::from_parts(order, cost), cost));
        }
        let (cost, order) = paths[0]
            .ends()
            .into_iter()
            .filter(|&(a, _)| a == 0)
            .map(|(a, b)| {
                let (c, p) = &paths[0].best[&(a, b)];
                (c + inst.dist(b, a), p.clone())
            })
            .min()
            .expect("cluster has a path");
        return Ok((Tour::from_parts(order, cost), cost));
    }

    let mut best: Option<(i64, Vec<usize>)> = None;
    let mut rest: Vec<usize> = (1..m).collect();
    for_each_permutation(&mut rest, |tail| {
        let seq: Vec<usize> = std::iter::once(0).chain(tail.iter().copied()).collect();
        for (e0, x0) in paths[0].ends() {
            // layer[(entry, exit)] of the current cluster -> best cost so far
            // plus a back pointer chain.
            let mut layer: Vec<(usize, i64, Vec<(usize, usize)>)> =
                vec![(x0, paths[0].best[&(e0, x0)].0, vec![(e0, x0)])];
            for &ci in &seq[1..] {
                let mut next: Vec<(usize, i64, Vec<(usize, usize)>)> = Vec::new();
                for (e, x) in paths[ci].ends() {
                    let inner = paths[ci].best[&(e, x)].0;
                    let cand = layer
                        .iter()
                        .map(|(px, c, _)| (c + inst.dist(*px, e), px))
                        .enumerate()
                        .min_by_key(|&(_, (c, _))| c)
                        .expect("layer nonempty");
                    let (li, (c, _)) = cand;
                    let mut chain = layer[li].2.clone();
                    chain.push((e, x));
                    next.push((x, c + inner, chain));
                }
                layer = next;
            }
            for (x, c, chain) in layer {
                let total = c + inst.dist(x, e0);
                if best.as_ref().is_none_or(|(bc, _)| total < *bc) {
                    let order: Vec<usize> = seq
                        .iter()
                        .zip(&chain)
                        .flat_map(|(&ci, ends)| paths[ci].best[ends].1.iter().copied())
                        .collect();
                    best = Some((total, order));
                }
            }
        }
    });
    let (cost, order) = best.expect("at least one cluster order");
    debug_assert_eq!(cost, cycle_cost(inst, &order));
    Ok((Tour::from_parts(order, cost), cost))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::DistanceMatrix;
    use crate::instance::Point;
    use crate::tour::is_cluster_contiguous;

    fn pts(c: &[(f64, f64)]) -> Vec<Point> {
        c.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn unit_triangle() {
        let d = DistanceMatrix::from_full(3, vec![0, 1, 1, 1, 0, 1, 1, 1, 0]);
        assert_eq!(brute_force_tsp(&d).unwrap().1, 3);
        let inst = Instance::from_matrix("t", d, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(brute_force_ctsp(&inst).unwrap().1, 3);
    }

    #[test]
    fn collinear_out_and_back() {
        let inst = Instance::from_coords(
            "l",
            pts(&[(0., 0.), (1., 0.), (2., 0.), (3., 0.)]),
            vec![vec![0, 1, 2, 3]],
        )
        .unwrap();
        assert_eq!(brute_force_tsp(&inst).unwrap().1, 6);
    }

    #[test]
    fn square_two_clusters() {
        let inst = Instance::from_coords(
            "sq",
            pts(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]),
            vec![vec![0, 1], vec![2, 3]],
        )
        .unwrap();
        let (t, c) = brute_force_ctsp(&inst).unwrap();
        assert_eq!(c, 4);
        assert!(is_cluster_contiguous(&inst, t.order()));
    }

    #[test]
    fn diagonal_clusters_force_crossing() {
        // Clusters {0,2} and {1,3} sit on the diagonals of the square.
        let inst = Instance::from_coords(
            "x",
            pts(&[(0., 0.), (10., 0.), (10., 10.), (0., 10.)]),
            vec![vec![0, 2], vec![1, 3]],
        )
        .unwrap();
        let (t, c) = brute_force_ctsp(&inst).unwrap();
        assert_eq!(c, 14 + 14 + 10 + 10);
        assert_eq!(t.cost(), c);
    }

    #[test]
    fn guards() {
        let d = DistanceMatrix::from_full(13, vec![1; 169]);
        assert!(matches!(
            brute_force_tsp(&d),
            Err(ExactError::TooLarge { .. })
        ));
        let many: Vec<Point> = (0..13).map(|i| Point::new(i as f64, 0.0)).collect();
        let inst = Instance::from_coords("big", many, vec![(0..13).collect()]).unwrap();
        assert_eq!(ctsp_enumeration_size(&inst), 479_001_600);
        assert!(matches!(
            brute_force_ctsp(&inst),
            Err(ExactError::TooLarge { .. })
        ));
    }

    #[test]
    fn permutations_counted() {
        let mut v = vec![0, 1, 2, 3];
        let mut seen = std::collections::HashSet::new();
        for_each_permutation(&mut v, |p| {
            seen.insert(p.to_vec());
        });
        assert_eq!(seen.len(), 24);
    }
}
