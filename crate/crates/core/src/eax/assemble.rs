//! Applying an E-set to parent A and reconnecting the resulting subtours.

use crate::distance::Distance;
use crate::localsearch::CandidateLists;
use crate::tour::Tour;

use super::cycles::{AbCycle, ESet};
use super::union::links_of;
use super::EaxError;

const EMPTY: usize = usize::MAX;

/// A degree-2 edge set over all vertices: parent A with an E-set applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Intermediate {
    links: Vec<[usize; 2]>,
    /// Each subtour as a vertex sequence in traversal order.
    pub subtours: Vec<Vec<usize>>,
    /// Total length of the edge set.
    pub cost: i64,
}

impl Intermediate {
    pub fn neighbors(&self, v: usize) -> [usize; 2] {
        self.links[v]
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    /// True iff every vertex has exactly two incident edge slots filled.
    pub fn is_degree_two(&self) -> bool {
        self.links.iter().all(|l| l[0] != EMPTY && l[1] != EMPTY)
    }

    /// Builds an intermediate from explicit subtours. A two-vertex subtour
    /// stands for a doubled edge.
    pub fn from_subtours<D: Distance + ?Sized>(d: &D, subtours: Vec<Vec<usize>>) -> Self {
        let n = d.len();
        let mut links = vec![[EMPTY, EMPTY]; n];
        let mut cost = 0;
        for sub in &subtours {
            let k = sub.len();
            for i in 0..k {
                let v = sub[i];
                links[v] = [sub[(i + k - 1) % k], sub[(i + 1) % k]];
                cost += d.dist(v, sub[(i + 1) % k]);
            }
        }
        Self {
            links,
            subtours,
            cost,
        }
    }
}

fn unlink(links: &mut [[usize; 2]], u: usize, v: usize) -> Result<(), EaxError> {
    let slot = links[u]
        .iter()
        .position(|&x| x == v)
        .ok_or(EaxError::InconsistentESet(u, v))?;
    links[u][slot] = EMPTY;
    Ok(())
}

fn link(links: &mut [[usize; 2]], u: usize, v: usize) -> Result<(), EaxError> {
    let slot = links[u]
        .iter()
        .position(|&x| x == EMPTY)
        .ok_or(EaxError::InconsistentESet(u, v))?;
    links[u][slot] = v;
    Ok(())
}

/// Swaps the E-set's A-edges for its B-edges in `links`, returning the
/// cost change. `links` must hold parent A's adjacency.
pub(crate) fn apply_to_links<D: Distance + ?Sized>(
    d: &D,
    links: &mut [[usize; 2]],
    cycles: &[AbCycle],
    eset: &ESet,
) -> Result<i64, EaxError> {
    let mut delta = 0;
    for &ci in &eset.cycles {
        let cycle = &cycles[ci];
        for (u, v) in cycle.a_edges() {
            unlink(links, u, v)?;
            unlink(links, v, u)?;
            delta -= d.dist(u, v);
        }
        for (u, v) in cycle.b_edges() {
            link(links, u, v)?;
            link(links, v, u)?;
            delta += d.dist(u, v);
        }
    }
    Ok(delta)
}

/// Walks the degree-2 `links`, labelling each vertex with its subtour.
/// Returns the number of subtours.
pub(crate) fn label_subtours(
    links: &[[usize; 2]],
    label: &mut [usize],
    members: &mut Vec<Vec<usize>>,
) -> usize {
    let n = links.len();
    label.iter_mut().for_each(|l| *l = EMPTY);
    members.iter_mut().for_each(Vec::clear);
    let mut count = 0;
    for s in 0..n {
        if label[s] != EMPTY {
            continue;
        }
        if members.len() <= count {
            members.push(Vec::new());
        }
        let list = &mut members[count];
        let mut prev = EMPTY;
        let mut cur = s;
        loop {
            label[cur] = count;
            list.push(cur);
            let [x, y] = links[cur];
            let next = if x != prev { x } else { y };
            prev = cur;
            cur = next;
            if cur == s {
                break;
            }
        }
        count += 1;
    }
    count
}

/// Step 4: copy parent A, drop the E-set's A-edges and add its B-edges.
pub fn apply_eset<D: Distance + ?Sized>(
    d: &D,
    sa: &Tour,
    cycles: &[AbCycle],
    eset: &ESet,
) -> Result<Intermediate, EaxError> {
    let mut links = links_of(sa);
    let delta = apply_to_links(d, &mut links, cycles, eset)?;
    if links.iter().any(|l| l.contains(&EMPTY)) {
        return Err(EaxError::InconsistentESet(EMPTY, EMPTY));
    }
    let mut label = vec![EMPTY; links.len()];
    let mut members = Vec::new();
    let count = label_subtours(&links, &mut label, &mut members);
    members.truncate(count);
    Ok(Intermediate {
        links,
        subtours: members,
        cost: sa.cost() + delta,
    })
}

/// Reusable buffers for repeated merges.
#[derive(Default)]
pub(crate) struct MergeScratch {
    pub(crate) label: Vec<usize>,
    pub(crate) members: Vec<Vec<usize>>,
}

/// Greedily joins the subtours of `links` into one cycle, returning the
/// summed cost change.
///
/// The smallest remaining subtour is merged into another by the 2-edge
/// exchange that removes `(a, b)` from it and `(c, d)` from the other and
/// adds `(a, c)` and `(b, d)`, choosing the exchange with the least change.
/// `c` ranges over the candidate list of `a`; when no candidate lies outside
/// the subtour every outside vertex is tried.
pub(crate) fn merge_links<D: Distance + ?Sized>(
    d: &D,
    cl: &CandidateLists,
    links: &mut [[usize; 2]],
    scratch: &mut MergeScratch,
) -> i64 {
    let n = links.len();
    scratch.label.resize(n, EMPTY);
    let count = label_subtours(links, &mut scratch.label, &mut scratch.members);
    if count <= 1 {
        return 0;
    }
    let label = &mut scratch.label;
    let members = &mut scratch.members;
    let mut alive: Vec<usize> = (0..count).collect();
    let mut total = 0;

    while alive.len() > 1 {
        let (slot, &u) = alive
            .iter()
            .enumerate()
            .min_by_key(|&(_, &s)| (members[s].len(), s))
            .expect("two alive subtours");
        let mut best: Option<(i64, usize, usize, usize, usize)> = None;
        let consider =
            |a: usize,
             b: usize,
             c: usize,
             e: usize,
             best: &mut Option<(i64, usize, usize, usize, usize)>| {
                let delta = d.dist(a, c) + d.dist(b, e) - d.dist(a, b) - d.dist(c, e);
                if best.is_none_or(|(bd, ..)| delta < bd) {
                    *best = Some((delta, a, b, c, e));
                }
            };
        for &a in &members[u] {
            for &c in cl.neighbors(a) {
                if label[c] == u {
                    continue;
                }
                for b in links[a] {
                    for e in links[c] {
                        consider(a, b, c, e, &mut best);
                    }
                }
            }
        }
        if best.is_none() {
            for &a in &members[u] {
                for c in 0..n {
                    if label[c] == u {
                        continue;
                    }
                    for b in links[a] {
                        for e in links[c] {
                            consider(a, b, c, e, &mut best);
                        }
                    }
                }
            }
        }
        let (delta, a, b, c, e) = best.expect("another subtour exists");
        replace(links, a, b, c);
        replace(links, b, a, e);
        replace(links, c, e, a);
        replace(links, e, c, b);
        total += delta;

        let target = label[c];
        let moved = std::mem::take(&mut members[u]);
        for &v in &moved {
            label[v] = target;
        }
        members[target].extend(moved);
        alive.swap_remove(slot);
    }
    total
}

fn replace(links: &mut [[usize; 2]], at: usize, old: usize, new: usize) {
    let slot = links[at]
        .iter()
        .position(|&x| x == old)
        .expect("edge to replace");
    links[at][slot] = new;
}

/// Reads the order of a single Hamiltonian cycle out of degree-2 links.
pub(crate) fn links_to_order(links: &[[usize; 2]]) -> Vec<usize> {
    let n = links.len();
    let mut order = Vec::with_capacity(n);
    let mut prev = EMPTY;
    let mut cur = 0;
    for _ in 0..n {
        order.push(cur);
        let [x, y] = links[cur];
        let next = if prev == EMPTY || x == prev { y } else { x };
        prev = cur;
        cur = next;
    }
    order
}

/// Step 5: reconnect the subtours of `intermediate` into one tour.
pub fn merge_subtours<D: Distance + ?Sized>(
    d: &D,
    cl: &CandidateLists,
    intermediate: &Intermediate,
) -> Tour {
    let mut links = intermediate.links.clone();
    let mut scratch = MergeScratch::default();
    let delta = merge_links(d, cl, &mut links, &mut scratch);
    Tour::from_parts(links_to_order(&links), intermediate.cost + delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Instance, Point};
    use crate::localsearch::build_candidate_lists;
    use crate::tour::cycle_cost;

    fn unit_square() -> Instance {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        Instance::from_coords("sq", pts, vec![vec![0, 1, 2, 3]]).unwrap()
    }

    #[test]
    fn single_subtour_unchanged() {
        let inst = unit_square();
        let cl = build_candidate_lists(&inst, 3);
        let inter = Intermediate::from_subtours(&inst, vec![vec![0, 1, 2, 3]]);
        let t = merge_subtours(&inst, &cl, &inter);
        assert_eq!(t.order(), &[0, 1, 2, 3]);
        assert_eq!(t.cost(), 4);
    }

    #[test]
    fn two_pairs_on_unit_square_become_perimeter() {
        let inst = unit_square();
        let cl = build_candidate_lists(&inst, 3);
        let inter = Intermediate::from_subtours(&inst, vec![vec![0, 1], vec![2, 3]]);
        assert!(inter.is_degree_two());
        let t = merge_subtours(&inst, &cl, &inter);
        assert_eq!(t.cost(), 4);
        assert_eq!(cycle_cost(&inst, t.order()), 4);
    }

    #[test]
    fn links_traversal_handles_reversed_slots() {
        let links = vec![[1, 2], [0, 2], [0, 1]];
        assert_eq!(links_to_order(&links).len(), 3);
        let mut label = vec![0; 3];
        let mut members = Vec::new();
        assert_eq!(label_subtours(&links, &mut label, &mut members), 1);
    }

    #[test]
    fn two_triangles_merge_cheapest() {
        // Two unit-spaced triangles side by side on a line of 6 points.
        let pts: Vec<Point> = (0..6)
            .map(|i| Point::new(i as f64, (i % 2) as f64))
            .collect();
        let inst = Instance::from_coords("l", pts, vec![(0..6).collect()]).unwrap();
        let cl = build_candidate_lists(&inst, 5);
        let inter = Intermediate::from_subtours(&inst, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(inter.subtours.len(), 2);
        let t = merge_subtours(&inst, &cl, &inter);
        assert_eq!(t.cost(), cycle_cost(&inst, t.order()));
        crate::tour::check_permutation(t.order(), 6).unwrap();
    }
}
