//! Tours, cost evaluation and cluster-contiguity checks.
//!
//! A [`Tour`] is an anchor-free cycle stored as a permutation of `0..n`
//! together with its cost under the distance it was built with.

use std::fmt::Write as _;

use thiserror::Error;

use crate::distance::Distance;
use crate::instance::Instance;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TourError {
    #[error("order is not a permutation of 0..{n}: {reason}")]
    NotAPermutation { n: usize, reason: String },
    #[error("tour file: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tour {
    order: Vec<usize>,
    cost: i64,
}

/// Checks that `order` lists every vertex of `0..n` exactly once.
pub fn check_permutation(order: &[usize], n: usize) -> Result<(), TourError> {
    let bad = |reason: String| TourError::NotAPermutation { n, reason };
    if order.len() != n {
        return Err(bad(format!("length {} != {n}", order.len())));
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n {
            return Err(bad(format!("vertex {v} out of range")));
        }
        if std::mem::replace(&mut seen[v], true) {
            return Err(bad(format!("vertex {v} repeated")));
        }
    }
    Ok(())
}

/// Cyclic cost of an order without validation.
pub fn cycle_cost<D: Distance + ?Sized>(d: &D, order: &[usize]) -> i64 {
    match order.len() {
        0 | 1 => 0,
        n => (0..n).map(|k| d.dist(order[k], order[(k + 1) % n])).sum(),
    }
}

/// Cyclic edge-cost sum of a permutation.
pub fn tour_cost<D: Distance + ?Sized>(d: &D, order: &[usize]) -> Result<i64, TourError> {
    check_permutation(order, d.len())?;
    Ok(cycle_cost(d, order))
}

impl Tour {
    /// Validates `order` and evaluates its cost under `d`.
    pub fn new<D: Distance + ?Sized>(order: Vec<usize>, d: &D) -> Result<Self, TourError> {
        let cost = tour_cost(d, &order)?;
        Ok(Self { order, cost })
    }

    /// Trusted constructor for solver internals; debug builds still verify.
    pub(crate) fn from_parts(order: Vec<usize>, cost: i64) -> Self {
        debug_assert!(check_permutation(&order, order.len()).is_ok());
        Self { order, cost }
    }

    pub fn identity<D: Distance + ?Sized>(d: &D) -> Self {
        let order: Vec<usize> = (0..d.len()).collect();
        let cost = cycle_cost(d, &order);
        Self { order, cost }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }

    pub fn cost(&self) -> i64 {
        self.cost
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Same cycle, costs re-evaluated under another distance.
    pub fn with_distance<D: Distance + ?Sized>(&self, d: &D) -> Self {
        Self {
            order: self.order.clone(),
            cost: cycle_cost(d, &self.order),
        }
    }

    pub fn reversed(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        Self {
            order,
            cost: self.cost,
        }
    }

    pub fn rotated(&self, by: usize) -> Self {
        let mut order = self.order.clone();
        if !order.is_empty() {
            let k = by % order.len();
            order.rotate_left(k);
        }
        Self {
            order,
            cost: self.cost,
        }
    }

    /// Undirected edges `(a, b)` with `a < b`, in tour order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order.len();
        let count = if n < 2 {
            0
        } else if n == 2 {
            1
        } else {
            n
        };
        (0..count).map(move |k| {
            let a = self.order[k];
            let b = self.order[(k + 1) % n];
            (a.min(b), a.max(b))
        })
    }

    /// Rotates vertex 0 to the front and orients towards its smaller neighbor.
    pub fn canonicalize(&self) -> Self {
        let n = self.order.len();
        if n == 0 {
            return self.clone();
        }
        let at = self
            .order
            .iter()
            .position(|&v| v == 0)
            .expect("permutation contains 0");
        let mut order = self.order.clone();
        order.rotate_left(at);
        if n > 2 && order[n - 1] < order[1] {
            order[1..].reverse();
        }
        Self {
            order,
            cost: self.cost,
        }
    }

    /// True when both tours describe the same undirected cycle.
    pub fn same_cycle(&self, other: &Tour) -> bool {
        self.canonicalize().order == other.canonicalize().order
    }

    /// The tour file format: `COST <c>` then the 1-based ids on one line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "COST {}", self.cost);
        let ids: Vec<String> = self.order.iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
        out
    }

    /// Reads the tour file format. Returns the order and the recorded cost;
    /// the cost is not trusted until re-evaluated with [`Tour::new`].
    pub fn parse_text(text: &str) -> Result<(Vec<usize>, i64), TourError> {
        let mut tokens = text.split_whitespace();
        match tokens.next() {
            Some(t) if t.eq_ignore_ascii_case("COST") => {}
            _ => return Err(TourError::Parse("expected leading `COST`".into())),
        }
        let cost = tokens
            .next()
            .and_then(|t| t.parse::<i64>().ok())
            .ok_or_else(|| TourError::Parse("COST value missing or not an integer".into()))?;
        let order = tokens
            .map(|t| match t.parse::<usize>() {
                Ok(id) if id >= 1 => Ok(id - 1),
                _ => Err(TourError::Parse(format!("bad vertex id {t:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((order, cost))
    }
}

/// Number of cyclic tour edges joining two different clusters.
pub fn inter_cluster_edge_count(inst: &Instance, order: &[usize]) -> usize {
    let n = order.len();
    if n < 2 {
        return 0;
    }
    (0..n)
        .filter(|&k| inst.cluster_of(order[k]) != inst.cluster_of(order[(k + 1) % n]))
        .count()
}

/// True iff every cluster occupies one contiguous block of the cycle.
pub fn is_cluster_contiguous(inst: &Instance, order: &[usize]) -> bool {
    let m = inst.num_clusters();
    m == 1 || inter_cluster_edge_count(inst, order) == m
}
