//! The two-parent union multigraph `G_AB`.

use crate::tour::Tour;

use super::EaxError;

/// Adjacency of both parents: every vertex carries its two A-edges and its
/// two B-edges. An edge present in both parents appears once per tag and is
/// reported by [`UnionGraph::is_common`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionGraph {
    a: Vec<[usize; 2]>,
    b: Vec<[usize; 2]>,
}

pub(crate) fn links_of(t: &Tour) -> Vec<[usize; 2]> {
    let order = t.order();
    let n = order.len();
    let mut links = vec![[0, 0]; n];
    for k in 0..n {
        let v = order[k];
        links[v] = [order[(k + n - 1) % n], order[(k + 1) % n]];
    }
    links
}

pub fn build_union_graph(sa: &Tour, sb: &Tour) -> Result<UnionGraph, EaxError> {
    if sa.len() != sb.len() {
        return Err(EaxError::VertexSetMismatch(sa.len(), sb.len()));
    }
    Ok(UnionGraph {
        a: links_of(sa),
        b: links_of(sb),
    })
}

impl UnionGraph {
    pub(crate) fn from_links(a: Vec<[usize; 2]>, b: Vec<[usize; 2]>) -> Self {
        Self { a, b }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn a_neighbors(&self, v: usize) -> [usize; 2] {
        self.a[v]
    }

    pub fn b_neighbors(&self, v: usize) -> [usize; 2] {
        self.b[v]
    }

    /// Degree counting multiplicity; 4 for every vertex of a valid graph.
    pub fn degree(&self, v: usize) -> usize {
        self.a[v].len() + self.b[v].len()
    }

    pub fn in_a(&self, u: usize, v: usize) -> bool {
        self.a[u].contains(&v)
    }

    pub fn in_b(&self, u: usize, v: usize) -> bool {
        self.b[u].contains(&v)
    }

    pub fn is_common(&self, u: usize, v: usize) -> bool {
        self.in_a(u, v) && self.in_b(u, v)
    }

    /// Distinct undirected edges `(u, v)` with `u < v`, sorted.
    pub fn distinct_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|u| {
                self.a[u]
                    .into_iter()
                    .chain(self.b[u])
                    .filter(move |&v| u < v)
                    .map(move |v| (u, v))
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        edges
    }

    pub fn common_edges(&self) -> Vec<(usize, usize)> {
        self.distinct_edges()
            .into_iter()
            .filter(|&(u, v)| self.is_common(u, v))
            .collect()
    }

    /// A-neighbors of `v` over edges absent from B.
    pub(crate) fn a_only(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.a[v].into_iter().filter(move |&u| !self.in_b(v, u))
    }

    pub(crate) fn b_only(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.b[v].into_iter().filter(move |&u| !self.in_a(v, u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::DistanceMatrix;

    fn tour(order: Vec<usize>) -> Tour {
        let n = order.len();
        Tour::new(order, &DistanceMatrix::from_full(n, vec![0; n * n])).unwrap()
    }

    #[test]
    fn identical_parents_share_every_edge() {
        let t = tour(vec![0, 3, 1, 2, 4]);
        let g = build_union_graph(&t, &t).unwrap();
        assert_eq!(g.common_edges().len(), 5);
        assert!((0..5).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn four_vertex_example() {
        // Tours (1,2,3,4) and (1,3,2,4) in 1-based ids.
        let g = build_union_graph(&tour(vec![0, 1, 2, 3]), &tour(vec![0, 2, 1, 3])).unwrap();
        assert_eq!(g.distinct_edges().len(), 6);
        assert_eq!(g.common_edges(), vec![(0, 3), (1, 2)]);
        assert!((0..4).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn mismatch() {
        assert_eq!(
            build_union_graph(&tour(vec![0, 1, 2]), &tour(vec![0, 1, 2, 3])),
            Err(EaxError::VertexSetMismatch(3, 4))
        );
    }
}
