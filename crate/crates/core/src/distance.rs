//! The distance abstraction shared by every solver.

/// A symmetric cost function over vertices `0..len()`.
///
/// `dist(i, i)` is never queried by the solvers; implementations may return
/// anything for it (the provided ones return 0).
pub trait Distance: Sync {
    fn len(&self) -> usize;

    fn dist(&self, i: usize, j: usize) -> i64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<D: Distance + ?Sized> Distance for &D {
    fn len(&self) -> usize {
        (**self).len()
    }

    fn dist(&self, i: usize, j: usize) -> i64 {
        (**self).dist(i, j)
    }
}

/// Largest `n` for which [`DistanceMatrix::materialize`] will allocate.
pub const MATERIALIZE_LIMIT: usize = 3000;

/// A dense row-major copy of another distance function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<i64>,
}

impl DistanceMatrix {
    /// Builds from a full `n*n` row-major table. The caller guarantees symmetry.
    pub fn from_full(n: usize, data: Vec<i64>) -> Self {
        assert_eq!(data.len(), n * n, "matrix must be n*n");
        Self { n, data }
    }

    pub fn from_distance<D: Distance + ?Sized>(d: &D) -> Self {
        let n = d.len();
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let c = d.dist(i, j);
                data[i * n + j] = c;
                data[j * n + i] = c;
            }
        }
        Self { n, data }
    }

    /// Materializes `d` when it is small enough, `None` otherwise.
    pub fn materialize<D: Distance + ?Sized>(d: &D) -> Option<Self> {
        (d.len() <= MATERIALIZE_LIMIT).then(|| Self::from_distance(d))
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }
}

impl Distance for DistanceMatrix {
    fn len(&self) -> usize {
        self.n
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }
}

/// Either a materialized matrix or the original function, chosen by size.
pub enum Cached<'a, D: Distance + ?Sized> {
    Matrix(DistanceMatrix),
    Direct(&'a D),
}

impl<'a, D: Distance + ?Sized> Cached<'a, D> {
    pub fn new(d: &'a D) -> Self {
        match DistanceMatrix::materialize(d) {
            Some(m) => Cached::Matrix(m),
            None => Cached::Direct(d),
        }
    }
}

impl<D: Distance + ?Sized> Distance for Cached<'_, D> {
    fn len(&self) -> usize {
        match self {
            Cached::Matrix(m) => m.len(),
            Cached::Direct(d) => d.len(),
        }
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> i64 {
        match self {
            Cached::Matrix(m) => m.dist(i, j),
            Cached::Direct(d) => d.dist(i, j),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Line(usize);

    impl Distance for Line {
        fn len(&self) -> usize {
            self.0
        }
        fn dist(&self, i: usize, j: usize) -> i64 {
            (i as i64 - j as i64).abs()
        }
    }

    #[test]
    fn materialized_matches_source() {
        let d = Line(7);
        let m = DistanceMatrix::from_distance(&d);
        for i in 0..7 {
            for j in 0..7 {
                if i != j {
                    assert_eq!(m.dist(i, j), d.dist(i, j));
                }
            }
        }
        assert_eq!(m.row(3)[0], 3);
    }

    #[test]
    fn cache_falls_back_above_limit() {
        let big = Line(MATERIALIZE_LIMIT + 1);
        assert!(matches!(Cached::new(&big), Cached::Direct(_)));
        assert!(matches!(Cached::new(&Line(5)), Cached::Matrix(_)));
    }
}
