//! Big-M transformation of a clustered instance into a plain symmetric TSP.
//!
//! Every edge joining two clusters is charged an extra `M`. With
//! `M = n * c_max + 1` one additional inter-cluster crossing always costs more
//! than any tour's entire intra-cluster length, so an optimal tour of the
//! transformed instance crosses clusters exactly `m` times and is a feasible,
//! optimal CTSP tour. Its transformed cost is `f + m * M`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::distance::Distance;
use crate::instance::Instance;
use crate::tour::{cycle_cost, inter_cluster_edge_count, Tour};

/// Largest dimension written as an explicit `FULL_MATRIX`.
pub const EXPLICIT_EXPORT_LIMIT: usize = 3000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("big-M penalty overflows 64-bit arithmetic for n = {n}, c_max = {c_max}")]
    Overflow { n: usize, c_max: i64 },
    #[error("recovered cost {0} is negative: the tour is not cluster-feasible under this M")]
    NegativeResult(i64),
    #[error("explicit matrix export is limited to n <= {limit}, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("transformed file header: {0}")]
    Header(String),
}

/// Penalty satisfying the dominance bound: `n * c_max + 1`.
pub fn big_m_value(inst: &Instance) -> Result<i64, TransformError> {
    let n = inst.len();
    let c_max = inst.max_distance();
    let overflow = TransformError::Overflow { n, c_max };
    let n64 = i64::try_from(n).map_err(|_| overflow.clone())?;
    let m = n64
        .checked_mul(c_max)
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| overflow.clone())?;
    // A whole tour under c' must stay representable: n * (c_max + M).
    c_max
        .checked_add(m)
        .and_then(|edge| edge.checked_mul(n64))
        .ok_or(overflow)?;
    Ok(m)
}

/// The transformed TSP view of a clustered instance. Distances are computed
/// on demand from the source, nothing is materialized.
#[derive(Debug, Clone, Copy)]
pub struct TspInstance<'a> {
    source: &'a Instance,
    big_m: i64,
}

pub fn to_tsp(inst: &Instance) -> Result<TspInstance<'_>, TransformError> {
    Ok(TspInstance {
        source: inst,
        big_m: big_m_value(inst)?,
    })
}

impl<'a> TspInstance<'a> {
    /// Uses a caller-chosen penalty. Values below [`big_m_value`] void the
    /// equivalence guarantee; this exists for experiments and tests.
    pub fn with_penalty(source: &'a Instance, big_m: i64) -> Self {
        Self { source, big_m }
    }

    pub fn source(&self) -> &'a Instance {
        self.source
    }

    pub fn big_m(&self) -> i64 {
        self.big_m
    }

    /// Number of penalized edges in any cluster-feasible tour.
    pub fn feasible_crossings(&self) -> usize {
        penalized_crossings(self.source.num_clusters())
    }

    /// Renders the transformed instance as TSPLIB `EXPLICIT`/`FULL_MATRIX`.
    /// A `COMMENT` line records `M` and `m` for [`TransformHeader::parse`].
    pub fn to_tsplib(&self) -> Result<String, TransformError> {
        let n = self.len();
        if n > EXPLICIT_EXPORT_LIMIT {
            return Err(TransformError::TooLarge {
                n,
                limit: EXPLICIT_EXPORT_LIMIT,
            });
        }
        let mut out = String::new();
        let _ = writeln!(out, "NAME : {}-tsp", self.source.name());
        let _ = writeln!(out, "TYPE : TSP");
        let _ = writeln!(
            out,
            "COMMENT : ctsp big-M transform; M = {}; m = {}; source = {}",
            self.big_m,
            self.source.num_clusters(),
            self.source.name()
        );
        let _ = writeln!(out, "DIMENSION : {n}");
        let _ = writeln!(out, "EDGE_WEIGHT_TYPE : EXPLICIT");
        let _ = writeln!(out, "EDGE_WEIGHT_FORMAT : FULL_MATRIX");
        out.push_str("EDGE_WEIGHT_SECTION\n");
        for i in 0..n {
            for j in 0..n {
                if j > 0 {
                    out.push(' ');
                }
                let c = if i == j { 0 } else { self.dist(i, j) };
                let _ = write!(out, "{c}");
            }
            out.push('\n');
        }
        out.push_str("EOF\n");
        Ok(out)
    }
}

impl Distance for TspInstance<'_> {
    fn len(&self) -> usize {
        self.source.len()
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> i64 {
        let c = self.source.dist(i, j);
        if self.source.cluster_of(i) == self.source.cluster_of(j) {
            c
        } else {
            c + self.big_m
        }
    }
}

/// Inter-cluster edges of a feasible tour: `m` for `m >= 2`, none for `m = 1`.
fn penalized_crossings(m: usize) -> usize {
    if m >= 2 {
        m
    } else {
        0
    }
}

/// Maps a transformed tour cost back to the CTSP objective.
///
/// Subtracts `M` once per inter-cluster edge of a feasible tour. A negative
/// result proves the tour cannot have come from a feasible CTSP tour.
pub fn recover_cost(tsp_cost: i64, m: usize, big_m: i64) -> Result<i64, TransformError> {
    let crossings = penalized_crossings(m) as i64;
    let f = tsp_cost - crossings * big_m;
    if f < 0 {
        return Err(TransformError::NegativeResult(f));
    }
    Ok(f)
}

/// Reinterprets a tour of the transformed instance as a CTSP tour.
///
/// The permutation is unchanged; the cost is re-evaluated under the original
/// distances and the flag reports cluster contiguity.
pub fn lift_tour(tsp_tour: &Tour, inst: &Instance) -> (Tour, bool) {
    let order = tsp_tour.order().to_vec();
    let cost = cycle_cost(inst, &order);
    let m = inst.num_clusters();
    let feasible = m == 1 || inter_cluster_edge_count(inst, &order) == m;
    (Tour::from_parts(order, cost), feasible)
}

/// The recovery data stored in an exported transformed file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransformHeader {
    pub big_m: i64,
    pub clusters: usize,
}

impl TransformHeader {
    pub fn parse(text: &str) -> Result<Self, TransformError> {
        let comment = text
            .lines()
            .find_map(|l| {
                let (k, v) = l.split_once(':')?;
                (k.trim().eq_ignore_ascii_case("COMMENT") && v.contains("big-M")).then_some(v)
            })
            .ok_or_else(|| TransformError::Header("no big-M COMMENT line".into()))?;
        let field = |key: &str| -> Result<&str, TransformError> {
            comment
                .split(';')
                .find_map(|part| {
                    let (k, v) = part.split_once('=')?;
                    (k.trim() == key).then(|| v.trim())
                })
                .ok_or_else(|| TransformError::Header(format!("field `{key}` missing")))
        };
        let big_m = field("M")?
            .parse()
            .map_err(|_| TransformError::Header("M is not an integer".into()))?;
        let clusters = field("m")?
            .parse()
            .map_err(|_| TransformError::Header("m is not an integer".into()))?;
        Ok(Self { big_m, clusters })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::DistanceMatrix;
    use crate::instance::{parse_instance, Point};

    fn matrix_instance(c_max: i64, clusters: Vec<Vec<usize>>) -> Instance {
        // 4 vertices, all distances c_max except (0, 1) = 1.
        let mut data = vec![c_max; 16];
        for i in 0..4 {
            data[i * 4 + i] = 0;
        }
        data[1] = 1;
        data[4] = 1;
        Instance::from_matrix("m", DistanceMatrix::from_full(4, data), clusters).unwrap()
    }

    #[test]
    fn big_m_formula() {
        let inst = matrix_instance(10, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(big_m_value(&inst).unwrap(), 41);
    }

    #[test]
    fn big_m_overflow() {
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(3.0e18, 0.0),
            Point::new(0.0, 1.0),
        ];
        match Instance::from_coords("huge", pts, vec![vec![0, 1, 2]]) {
            Ok(inst) => assert!(matches!(
                big_m_value(&inst),
                Err(TransformError::Overflow { .. })
            )),
            Err(e) => assert_eq!(e, crate::instance::InstanceError::Overflow),
        }
        let pts = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0e18, 0.0),
            Point::new(0.0, 1.0),
        ];
        let inst = Instance::from_coords("big", pts, vec![vec![0, 2], vec![1]]).unwrap();
        assert!(matches!(
            big_m_value(&inst),
            Err(TransformError::Overflow { .. })
        ));
    }

    #[test]
    fn penalized_distances() {
        let inst = matrix_instance(10, vec![vec![0, 1], vec![2, 3]]);
        let tsp = to_tsp(&inst).unwrap();
        assert_eq!(tsp.dist(0, 1), 1);
        assert_eq!(tsp.dist(2, 3), 10);
        assert_eq!(tsp.dist(0, 2), 10 + 41);
        assert_eq!(tsp.dist(2, 0), tsp.dist(0, 2));

        let single = matrix_instance(10, vec![vec![0, 1, 2, 3]]);
        let tsp = to_tsp(&single).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(tsp.dist(i, j), single.dist(i, j));
                }
            }
        }
    }

    #[test]
    fn recover_identity_and_errors() {
        assert_eq!(recover_cost(17 + 3 * 100, 3, 100), Ok(17));
        assert_eq!(recover_cost(17, 1, 100), Ok(17));
        assert_eq!(
            recover_cost(150, 2, 100),
            Err(TransformError::NegativeResult(-50))
        );
    }

    #[test]
    fn lift_reports_feasibility() {
        let inst = matrix_instance(10, vec![vec![0, 1], vec![2, 3]]);
        let tsp = to_tsp(&inst).unwrap();
        let good = Tour::new(vec![0, 1, 2, 3], &tsp).unwrap();
        let (lifted, ok) = lift_tour(&good, &inst);
        assert!(ok);
        assert_eq!(lifted.cost(), 1 + 10 + 10 + 10);
        assert_eq!(recover_cost(good.cost(), 2, tsp.big_m()), Ok(lifted.cost()));
        let bad = Tour::new(vec![0, 2, 1, 3], &tsp).unwrap();
        assert!(!lift_tour(&bad, &inst).1);
        let single = matrix_instance(10, vec![vec![0, 1, 2, 3]]);
        assert!(lift_tour(&bad, &single).1);
    }

    #[test]
    fn tsplib_export_carries_header() {
        let inst = matrix_instance(10, vec![vec![0, 1], vec![2, 3]]);
        let tsp = to_tsp(&inst).unwrap();
        let text = tsp.to_tsplib().unwrap();
        assert_eq!(
            TransformHeader::parse(&text).unwrap(),
            TransformHeader {
                big_m: 41,
                clusters: 2
            }
        );
        // Re-read the matrix through the instance parser as a single cluster.
        let with_sets = text.replace("EOF\n", "GTSP_SET_SECTION\n1 1 2 3 4 -1\nEOF\n");
        let back = parse_instance(&with_sets).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(back.dist(i, j), tsp.dist(i, j));
                }
            }
        }
        assert!(TransformHeader::parse("NAME : x\n").is_err());
    }
}
