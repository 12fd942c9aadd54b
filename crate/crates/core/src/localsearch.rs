//! Tour construction and improvement: nearest neighbor, 2-opt and Or-opt.
//!
//! Both improvement operators restrict new edges to candidate-list pairs and
//! process vertices through a don't-look queue: a vertex is re-examined only
//! after an incident edge changed. Every accepted move lowers the cost by at
//! least one unit, so both terminate.

use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::distance::Distance;
use crate::rng::{self, SolverRng};
use crate::tour::{cycle_cost, Tour};

pub const DEFAULT_CANDIDATES: usize = 10;

/// The `k` nearest neighbors of every vertex, ascending by distance with
/// ties broken by vertex index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateLists {
    k: usize,
    data: Vec<usize>,
}

impl CandidateLists {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        if self.k == 0 {
            0
        } else {
            self.data.len() / self.k
        }
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.data[v * self.k..(v + 1) * self.k]
    }
}

/// Builds nearest-neighbor lists; `k` is clamped to `n - 1`.
pub fn build_candidate_lists<D: Distance + ?Sized>(d: &D, k: usize) -> CandidateLists {
    let n = d.len();
    let k = k.min(n.saturating_sub(1));
    let mut data = Vec::with_capacity(n * k);
    let mut buf: Vec<(i64, usize)> = Vec::with_capacity(n);
    for v in 0..n {
        buf.clear();
        buf.extend((0..n).filter(|&u| u != v).map(|u| (d.dist(v, u), u)));
        if k < buf.len() {
            buf.select_nth_unstable(k);
            buf.truncate(k);
        }
        buf.sort_unstable();
        data.extend(buf.iter().map(|&(_, u)| u));
    }
    CandidateLists { k, data }
}

/// Array tour with an inverse index, used by the improvement operators.
#[derive(Debug, Clone)]
pub(crate) struct ArrayTour {
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl ArrayTour {
    pub(crate) fn new(order: Vec<usize>) -> Self {
        let mut pos = vec![0; order.len()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        Self { order, pos }
    }

    #[inline]
    fn n(&self) -> usize {
        self.order.len()
    }

    #[inline]
    pub(crate) fn succ(&self, v: usize) -> usize {
        let p = self.pos[v] + 1;
        self.order[if p == self.n() { 0 } else { p }]
    }

    #[inline]
    pub(crate) fn pred(&self, v: usize) -> usize {
        let p = self.pos[v];
        self.order[if p == 0 { self.n() - 1 } else { p - 1 }]
    }

    #[inline]
    fn step(&self, v: usize, forward: bool) -> usize {
        if forward {
            self.succ(v)
        } else {
            self.pred(v)
        }
    }

    /// Reverses the forward path `from..=to`, or its complement when shorter.
    fn reverse_path(&mut self, from: usize, to: usize) {
        let n = self.n();
        let len = (self.pos[to] + n - self.pos[from]) % n + 1;
        let (mut i, mut j, len) = if 2 * len > n {
            (self.pos[to] + 1, self.pos[from] + n - 1, n - len)
        } else {
            (self.pos[from], self.pos[to] + n, len)
        };
        if j < i {
            j += n;
        }
        for _ in 0..len / 2 {
            let (a, b) = (i % n, j % n);
            self.order.swap(a, b);
            self.pos[self.order[a]] = a;
            self.pos[self.order[b]] = b;
            i += 1;
            j -= 1;
        }
    }

    /// Replaces tour edges `(a, b)` and `(c, d)` by `(a, c)` and `(b, d)`.
    /// Requires `b` and `d` to follow `a` and `c` in the same direction.
    fn exchange(&mut self, a: usize, b: usize, c: usize, d: usize) {
        if self.succ(a) == b {
            debug_assert_eq!(self.succ(c), d);
            self.reverse_path(b, c);
        } else {
            debug_assert_eq!(self.pred(a), b);
            debug_assert_eq!(self.pred(c), d);
            self.reverse_path(a, d);
        }
    }

    /// Moves the forward segment starting at position `start` with `seg`
    /// (already in its final orientation) between `x` and `succ(x)`.
    fn relocate(&mut self, start: usize, seg: &[usize], x: usize) {
        let n = self.n();
        let len = seg.len();
        let y = self.succ(x);
        let count_fwd = (self.pos[x] + n - (start + len) % n) % n + 1;
        let count_back = n - len - count_fwd;
        if count_fwd <= count_back {
            for t in 0..count_fwd {
                let v = self.order[(start + len + t) % n];
                let at = (start + t) % n;
                self.order[at] = v;
                self.pos[v] = at;
            }
            for (t, &v) in seg.iter().enumerate() {
                let at = (start + count_fwd + t) % n;
                self.order[at] = v;
                self.pos[v] = at;
            }
        } else {
            let s = self.pos[y];
            for t in (0..count_back).rev() {
                let v = self.order[(s + t) % n];
                let at = (s + len + t) % n;
                self.order[at] = v;
                self.pos[v] = at;
            }
            for (t, &v) in seg.iter().enumerate() {
                let at = (s + t) % n;
                self.order[at] = v;
                self.pos[v] = at;
            }
        }
    }

    pub(crate) fn into_order(self) -> Vec<usize> {
        self.order
    }
}

struct WorkQueue {
    queue: VecDeque<usize>,
    queued: Vec<bool>,
}

impl WorkQueue {
    fn new(order: &[usize]) -> Self {
        Self {
            queue: order.iter().copied().collect(),
            queued: vec![true; order.len()],
        }
    }

    fn push(&mut self, v: usize) {
        if !self.queued[v] {
            self.queued[v] = true;
            self.queue.push_back(v);
        }
    }

    fn pop(&mut self) -> Option<usize> {
        let v = self.queue.pop_front()?;
        self.queued[v] = false;
        Some(v)
    }
}

/// 2-opt with neighbor lists and don't-look bits.
pub fn two_opt<D: Distance + ?Sized>(d: &D, t: &Tour, cl: &CandidateLists) -> Tour {
    let n = t.len();
    if n < 5 {
        return small_two_opt(d, t);
    }
    let mut tour = ArrayTour::new(t.order().to_vec());
    let mut cost = t.cost();
    let mut work = WorkQueue::new(t.order());
    while let Some(a) = work.pop() {
        'directions: for forward in [true, false] {
            let b = tour.step(a, forward);
            let d_ab = d.dist(a, b);
            for &c in cl.neighbors(a) {
                let d_ac = d.dist(a, c);
                if d_ac >= d_ab {
                    break;
                }
                let dd = tour.step(c, forward);
                if c == b || dd == a {
                    continue;
                }
                let delta = d_ac + d.dist(b, dd) - d_ab - d.dist(c, dd);
                if delta < 0 {
                    tour.exchange(a, b, c, dd);
                    cost += delta;
                    for v in [a, b, c, dd] {
                        work.push(v);
                    }
                    break 'directions;
                }
            }
        }
    }
    let out = Tour::from_parts(tour.into_order(), cost);
    debug_assert_eq!(cycle_cost(d, out.order()), out.cost());
    out
}

/// Exhaustive 2-opt for tours too short for the list-driven version.
fn small_two_opt<D: Distance + ?Sized>(d: &D, t: &Tour) -> Tour {
    let mut order = t.order().to_vec();
    let n = order.len();
    if n < 4 {
        return t.clone();
    }
    let mut cost = t.cost();
    loop {
        let mut improved = false;
        for i in 0..n - 1 {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b, c, e) = (order[i], order[i + 1], order[j], order[(j + 1) % n]);
                let delta = d.dist(a, c) + d.dist(b, e) - d.dist(a, b) - d.dist(c, e);
                if delta < 0 {
                    order[i + 1..=j].reverse();
                    cost += delta;
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
    Tour::from_parts(order, cost)
}

pub const OR_OPT_MAX_SEGMENT: usize = 3;

/// Or-opt: relocates segments of 1 to 3 vertices, optionally reversed.
pub fn or_opt<D: Distance + ?Sized>(d: &D, t: &Tour, cl: &CandidateLists) -> Tour {
    let n = t.len();
    let mut tour = ArrayTour::new(t.order().to_vec());
    let mut cost = t.cost();
    let mut work = WorkQueue::new(t.order());
    let mut seg = Vec::with_capacity(OR_OPT_MAX_SEGMENT);
    while let Some(s1) = work.pop() {
        'search: for len in 1..=OR_OPT_MAX_SEGMENT {
            if n < len + 3 {
                break;
            }
            for forward in [true, false] {
                // Segment s1..s2 walking in `forward` direction.
                let mut s2 = s1;
                for _ in 1..len {
                    s2 = tour.step(s2, forward);
                }
                let p = tour.step(s1, !forward);
                let nx = tour.step(s2, forward);
                let removed = d.dist(p, s1) + d.dist(s2, nx) - d.dist(p, nx);
                if removed <= 0 {
                    continue;
                }
                seg.clear();
                let mut v = s1;
                for _ in 0..len {
                    seg.push(v);
                    v = tour.step(v, forward);
                }
                for (end, other) in [(s1, s2), (s2, s1)] {
                    for &c in cl.neighbors(end) {
                        let d_ce = d.dist(c, end);
                        if d_ce >= removed {
                            break;
                        }
                        if seg.contains(&c) {
                            continue;
                        }
                        for dd in [tour.succ(c), tour.pred(c)] {
                            if seg.contains(&dd) {
                                continue;
                            }
                            let delta = d_ce + d.dist(other, dd) - d.dist(c, dd) - removed;
                            if delta >= 0 {
                                continue;
                            }
                            // Forward-oriented segment position and the final layout x, seg', y.
                            let start = if forward { tour.pos[s1] } else { tour.pos[s2] };
                            let (x, first) = if tour.succ(c) == dd {
                                (c, end)
                            } else {
                                (dd, other)
                            };
                            let mut placed = seg.clone();
                            if placed[0] != first {
                                placed.reverse();
                            }
                            tour.relocate(start, &placed, x);
                            cost += delta;
                            for w in [p, nx, c, dd, s1, s2] {
                                work.push(w);
                            }
                            break 'search;
                        }
                    }
                }
            }
        }
    }
    let out = Tour::from_parts(tour.into_order(), cost);
    debug_assert_eq!(cycle_cost(d, out.order()), out.cost());
    out
}

/// Alternates 2-opt and Or-opt until neither improves.
pub fn improve<D: Distance + ?Sized>(d: &D, t: &Tour, cl: &CandidateLists) -> Tour {
    let mut best = two_opt(d, t, cl);
    loop {
        let next = or_opt(d, &best, cl);
        if next.cost() >= best.cost() {
            return best;
        }
        let next = two_opt(d, &next, cl);
        best = next;
    }
}

/// Greedy nearest-neighbor tour from `start`; equal-distance ties are
/// broken uniformly at random. Quadratic in `n`.
pub fn nearest_neighbor_tour<D: Distance + ?Sized>(
    d: &D,
    start: usize,
    rng: &mut SolverRng,
) -> Tour {
    let n = d.len();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut cur = start;
    visited[cur] = true;
    order.push(cur);
    for _ in 1..n {
        cur = nearest_unvisited_scan(d, cur, &visited, rng);
        visited[cur] = true;
        order.push(cur);
    }
    let cost = cycle_cost(d, &order);
    Tour::from_parts(order, cost)
}

fn nearest_unvisited_scan<D: Distance + ?Sized>(
    d: &D,
    cur: usize,
    visited: &[bool],
    rng: &mut SolverRng,
) -> usize {
    let mut best = i64::MAX;
    let mut pick = usize::MAX;
    let mut ties = 0u32;
    for (u, &seen) in visited.iter().enumerate() {
        if seen {
            continue;
        }
        let c = d.dist(cur, u);
        if c < best {
            best = c;
            pick = u;
            ties = 1;
        } else if c == best {
            ties += 1;
            if rng.random_range(0..ties) == 0 {
                pick = u;
            }
        }
    }
    pick
}

/// Nearest-neighbor construction accelerated by candidate lists.
///
/// Produces the same distribution of tours as [`nearest_neighbor_tour`]:
/// the list is trusted only when its best unvisited entry is strictly closer
/// than the list's last entry, otherwise the full scan decides.
pub fn nearest_neighbor_tour_with<D: Distance + ?Sized>(
    d: &D,
    cl: &CandidateLists,
    start: usize,
    rng: &mut SolverRng,
) -> Tour {
    let n = d.len();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut cur = start;
    visited[cur] = true;
    order.push(cur);
    for _ in 1..n {
        let list = cl.neighbors(cur);
        let horizon = list.last().map(|&u| d.dist(cur, u));
        let mut best = i64::MAX;
        let mut pick = usize::MAX;
        let mut ties = 0u32;
        for &u in list {
            if visited[u] {
                continue;
            }
            let c = d.dist(cur, u);
            if c < best {
                best = c;
                pick = u;
                ties = 1;
            } else if c == best {
                ties += 1;
                if rng.random_range(0..ties) == 0 {
                    pick = u;
                }
            }
        }
        cur = match horizon {
            Some(h) if pick != usize::MAX && best < h => pick,
            _ => nearest_unvisited_scan(d, cur, &visited, rng),
        };
        visited[cur] = true;
        order.push(cur);
    }
    let cost = cycle_cost(d, &order);
    Tour::from_parts(order, cost)
}

/// One randomized construction followed by [`improve`].
pub fn construct_improved<D: Distance + ?Sized>(
    d: &D,
    cl: &CandidateLists,
    rng: &mut SolverRng,
) -> Tour {
    let start = rng.random_range(0..d.len());
    let t = nearest_neighbor_tour_with(d, cl, start, rng);
    improve(d, &t, cl)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LsConfig {
    pub candidates: usize,
    /// Independent constructions; the best one is returned.
    pub starts: usize,
    pub seed: u64,
}

impl Default for LsConfig {
    fn default() -> Self {
        Self {
            candidates: DEFAULT_CANDIDATES,
            starts: 10,
            seed: 1,
        }
    }
}

/// Multi-start baseline solver.
pub fn ls_solve<D: Distance + ?Sized>(d: &D, cfg: &LsConfig) -> Tour {
    let cl = build_candidate_lists(d, cfg.candidates);
    let mut best: Option<Tour> = None;
    for s in 0..cfg.starts.max(1) {
        let mut rng = rng::substream(cfg.seed, 0x4c53, s as u64);
        let t = construct_improved(d, &cl, &mut rng);
        if best.as_ref().is_none_or(|b| t.cost() < b.cost()) {
            best = Some(t);
        }
    }
    best.expect("at least one start")
}
