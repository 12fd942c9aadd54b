//! AB-cycle extraction and E-set selection.

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::rng::SolverRng;

use super::union::UnionGraph;
use super::EaxError;

/// An alternating cycle `v0 -A- v1 -B- v2 -A- ... -B- v0`.
///
/// Edge `(v[i], v[i+1])` comes from parent A when `i` is even and from
/// parent B when `i` is odd; the closing edge `(v[last], v[0])` is a B-edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbCycle {
    vertices: Vec<usize>,
}

impl AbCycle {
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of edges (always even).
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn edge(&self, i: usize) -> (usize, usize) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn a_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).step_by(2).map(|i| self.edge(i))
    }

    pub fn b_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.len()).step_by(2).map(|i| self.edge(i))
    }

    /// Checks length, alternation and membership of every edge in `g`.
    pub fn is_valid_in(&self, g: &UnionGraph) -> bool {
        self.len() >= 2
            && self.len() % 2 == 0
            && self.a_edges().all(|(u, v)| g.in_a(u, v) && !g.in_b(u, v))
            && self.b_edges().all(|(u, v)| g.in_b(u, v) && !g.in_a(u, v))
    }
}

/// Remaining unused edges of one tag at one vertex (at most two).
#[derive(Clone, Copy, Default)]
struct Slots {
    items: [usize; 2],
    len: u8,
}

impl Slots {
    fn push(&mut self, v: usize) {
        self.items[self.len as usize] = v;
        self.len += 1;
    }

    fn remove(&mut self, v: usize) {
        let at = self.items[..self.len as usize]
            .iter()
            .position(|&x| x == v)
            .expect("edge present in slots");
        self.items[at] = self.items[self.len as usize - 1];
        self.len -= 1;
    }

    fn pick(&self, rng: &mut SolverRng) -> usize {
        match self.len {
            1 => self.items[0],
            2 => self.items[rng.random_range(0..2)],
            _ => unreachable!("no unused edge of the required tag"),
        }
    }
}

/// Splits the symmetric difference of the parents into AB-cycles.
///
/// Edges common to both parents are skipped. A random alternating walk
/// (A-edge, B-edge, A-edge, ...) is extended one uniformly chosen unused
/// edge at a time; as soon as it re-enters a vertex so that the loop just
/// closed alternates, that loop is emitted and cut out of the walk. Every
/// non-common edge ends up in exactly one cycle.
pub fn extract_ab_cycles(g: &UnionGraph, rng: &mut SolverRng) -> Vec<AbCycle> {
    let n = g.len();
    let mut rem_a = vec![Slots::default(); n];
    let mut rem_b = vec![Slots::default(); n];
    let mut active: Vec<usize> = Vec::new();
    let mut active_at = vec![usize::MAX; n];
    for v in 0..n {
        for u in g.a_only(v) {
            rem_a[v].push(u);
        }
        for u in g.b_only(v) {
            rem_b[v].push(u);
        }
        if rem_a[v].len > 0 {
            active_at[v] = active.len();
            active.push(v);
        }
    }

    let retire = |v: usize, active: &mut Vec<usize>, active_at: &mut Vec<usize>| {
        let at = active_at[v];
        if at == usize::MAX {
            return;
        }
        let last = *active.last().expect("nonempty");
        active.swap_remove(at);
        if last != v {
            active_at[last] = at;
        }
        active_at[v] = usize::MAX;
    };

    let mut cycles = Vec::new();
    let mut walk: Vec<usize> = Vec::new();
    // Walk indices at which each vertex currently sits.
    let mut seen_at: Vec<Vec<usize>> = vec![Vec::new(); n];

    loop {
        if walk.len() == 1 && rem_a[walk[0]].len == 0 {
            seen_at[walk[0]].clear();
            walk.clear();
        }
        if walk.is_empty() {
            if active.is_empty() {
                break;
            }
            let s = active[rng.random_range(0..active.len())];
            walk.push(s);
            seen_at[s].push(0);
        }
        let k = walk.len() - 1;
        let cur = walk[k];
        let tag_a = k % 2 == 0;
        let (next, slots_cur) = if tag_a {
            (rem_a[cur].pick(rng), &mut rem_a)
        } else {
            (rem_b[cur].pick(rng), &mut rem_b)
        };
        slots_cur[cur].remove(next);
        slots_cur[next].remove(cur);
        for v in [cur, next] {
            if rem_a[v].len == 0 && rem_b[v].len == 0 {
                retire(v, &mut active, &mut active_at);
            }
        }

        // Latest earlier visit of `next` whose outgoing edge has the other tag.
        let close = seen_at[next]
            .iter()
            .rev()
            .copied()
            .find(|&j| j % 2 != k % 2);
        match close {
            Some(j) => {
                let vertices = if j % 2 == 0 {
                    walk[j..=k].to_vec()
                } else {
                    let mut v = walk[j + 1..=k].to_vec();
                    v.push(walk[j]);
                    v
                };
                cycles.push(AbCycle { vertices });
                for &v in &walk[j + 1..=k] {
                    seen_at[v].retain(|&idx| idx <= j);
                }
                walk.truncate(j + 1);
            }
            None => {
                seen_at[next].push(k + 1);
                walk.push(next);
            }
        }
    }
    cycles
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EsetStrategy {
    /// One uniformly random AB-cycle.
    Single,
    /// A uniformly random subset of `min(k, #cycles)` AB-cycles.
    KMultiple(usize),
}

impl std::fmt::Display for EsetStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EsetStrategy::Single => write!(f, "single"),
            EsetStrategy::KMultiple(k) => write!(f, "k-multiple({k})"),
        }
    }
}

impl std::str::FromStr for EsetStrategy {
    type Err = String;

    /// Accepts `single` or `k-multiple:<k>` (also `kmultiple:<k>`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        if s == "single" {
            return Ok(EsetStrategy::Single);
        }
        let k = s
            .strip_prefix("k-multiple:")
            .or_else(|| s.strip_prefix("kmultiple:"))
            .ok_or_else(|| format!("unknown strategy {s:?}"))?;
        match k.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(EsetStrategy::KMultiple(k)),
            _ => Err(format!("bad k in {s:?}")),
        }
    }
}

/// Indices of the AB-cycles forming one E-set, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ESet {
    pub cycles: Vec<usize>,
}

pub fn select_eset(
    cycles: &[AbCycle],
    strategy: EsetStrategy,
    rng: &mut SolverRng,
) -> Result<ESet, EaxError> {
    if cycles.is_empty() {
        return Err(EaxError::EmptyCycles);
    }
    let picked = match strategy {
        EsetStrategy::Single => vec![rng.random_range(0..cycles.len())],
        EsetStrategy::KMultiple(k) => {
            let amount = k.min(cycles.len());
            let mut v = index::sample(rng, cycles.len(), amount).into_vec();
            v.sort_unstable();
            v
        }
    };
    Ok(ESet { cycles: picked })
}
