//! Clustered instances: construction, GTSPLIB text I/O and a synthetic generator.
//!
//! The text format is TSPLIB plus the GTSPLIB cluster declaration:
//!
//! ```text
//! NAME : tri
//! TYPE : GTSP
//! DIMENSION : 3
//! EDGE_WEIGHT_TYPE : EUC_2D
//! GTSP_SETS : 1
//! NODE_COORD_SECTION
//! 1 0 0
//! 2 3 0
//! 3 0 4
//! GTSP_SET_SECTION
//! 1 1 2 3 -1
//! EOF
//! ```
//!
//! Vertex ids in files are remapped to dense indices `0..n` in file order.

use std::collections::HashMap;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::{Distance, DistanceMatrix};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DistanceKind {
    /// TSPLIB `EUC_2D`: Euclidean distance rounded to the nearest integer.
    Euc2dRounded,
    /// An explicit symmetric integer matrix.
    ExplicitMatrix,
}

#[derive(Debug, Clone, PartialEq)]
enum Weights {
    Coords(Vec<Point>),
    Matrix(DistanceMatrix),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("instance has no vertices")]
    Empty,
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("distance matrix invalid: {0}")]
    Matrix(String),
    #[error("coordinate of vertex {0} is not finite")]
    NonFiniteCoordinate(usize),
    #[error("n * max distance overflows 64-bit arithmetic")]
    Overflow,
    #[error("self loop: distance({0}, {0}) is undefined")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for n = {n}")]
    OutOfRange { vertex: usize, n: usize },
}

/// A clustered TSP instance. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    name: String,
    weights: Weights,
    clusters: Vec<Vec<usize>>,
    cluster_of: Vec<usize>,
    max_distance: i64,
}

#[inline]
fn euc_2d(a: Point, b: Point) -> i64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    ((dx * dx + dy * dy).sqrt() + 0.5).floor() as i64
}

fn cross(o: Point, a: Point, b: Point) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Monotone chain hull; the diameter of a point set is attained on it.
fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    let turns_right = |h: &[Point], p: Point| cross(h[h.len() - 2], h[h.len() - 1], p) <= 0.0;
    for &p in &pts {
        while hull.len() >= 2 && turns_right(&hull, p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower && turns_right(&hull, p) {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

fn max_rounded_distance(points: &[Point]) -> i64 {
    let hull = convex_hull(points);
    let mut best = 0;
    for (i, &a) in hull.iter().enumerate() {
        for &b in &hull[i + 1..] {
            best = best.max(euc_2d(a, b));
        }
    }
    best
}

fn partition_index(n: usize, clusters: &[Vec<usize>]) -> Result<Vec<usize>, InstanceError> {
    if clusters.is_empty() {
        return Err(InstanceError::Partition("no clusters".into()));
    }
    let mut owner = vec![usize::MAX; n];
    for (k, cluster) in clusters.iter().enumerate() {
        if cluster.is_empty() {
            return Err(InstanceError::Partition(format!(
                "cluster {} is empty",
                k + 1
            )));
        }
        for &v in cluster {
            if v >= n {
                return Err(InstanceError::Partition(format!(
                    "cluster {} references vertex {} but n = {n}",
                    k + 1,
                    v + 1
                )));
            }
            if owner[v] != usize::MAX {
                return Err(InstanceError::Partition(format!(
                    "vertex {} is in clusters {} and {}",
                    v + 1,
                    owner[v] + 1,
                    k + 1
                )));
            }
            owner[v] = k;
        }
    }
    if let Some(v) = owner.iter().position(|&k| k == usize::MAX) {
        return Err(InstanceError::Partition(format!(
            "vertex {} is in no cluster",
            v + 1
        )));
    }
    Ok(owner)
}

impl Instance {
    pub fn from_coords(
        name: impl Into<String>,
        coords: Vec<Point>,
        clusters: Vec<Vec<usize>>,
    ) -> Result<Self, InstanceError> {
        let n = coords.len();
        if n == 0 {
            return Err(InstanceError::Empty);
        }
        if let Some(v) = coords
            .iter()
            .position(|p| !p.x.is_finite() || !p.y.is_finite())
        {
            return Err(InstanceError::NonFiniteCoordinate(v));
        }
        let cluster_of = partition_index(n, &clusters)?;
        let max_distance = max_rounded_distance(&coords);
        Self::check_headroom(n, max_distance)?;
        Ok(Self {
            name: name.into(),
            weights: Weights::Coords(coords),
            clusters,
            cluster_of,
            max_distance,
        })
    }

    pub fn from_matrix(
        name: impl Into<String>,
        matrix: DistanceMatrix,
        clusters: Vec<Vec<usize>>,
    ) -> Result<Self, InstanceError> {
        let n = matrix.len();
        if n == 0 {
            return Err(InstanceError::Empty);
        }
        let mut max_distance = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                let c = matrix.dist(i, j);
                if c != matrix.dist(j, i) {
                    return Err(InstanceError::Matrix(format!(
                        "asymmetric entry ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if c < 0 {
                    return Err(InstanceError::Matrix(format!(
                        "negative entry ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                max_distance = max_distance.max(c);
            }
        }
        let cluster_of = partition_index(n, &clusters)?;
        Self::check_headroom(n, max_distance)?;
        Ok(Self {
            name: name.into(),
            weights: Weights::Matrix(matrix),
            clusters,
            cluster_of,
            max_distance,
        })
    }

    fn check_headroom(n: usize, max_distance: i64) -> Result<(), InstanceError> {
        i64::try_from(n)
            .ok()
            .and_then(|n| n.checked_mul(max_distance))
            .map(|_| ())
            .ok_or(InstanceError::Overflow)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Vertex count `n`.
    pub fn len(&self) -> usize {
        self.cluster_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cluster_of.is_empty()
    }

    /// Cluster count `m`.
    pub fn num_clusters(&self) -> usize {
        self.clusters.len()
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.cluster_of[v]
    }

    pub fn kind(&self) -> DistanceKind {
        match self.weights {
            Weights::Coords(_) => DistanceKind::Euc2dRounded,
            Weights::Matrix(_) => DistanceKind::ExplicitMatrix,
        }
    }

    pub fn coords(&self) -> Option<&[Point]> {
        match &self.weights {
            Weights::Coords(c) => Some(c),
            Weights::Matrix(_) => None,
        }
    }

    /// Largest pairwise distance `c_max`.
    pub fn max_distance(&self) -> i64 {
        self.max_distance
    }

    /// Checked distance between two distinct vertices.
    pub fn distance(&self, i: usize, j: usize) -> Result<i64, InstanceError> {
        let n = self.len();
        for v in [i, j] {
            if v >= n {
                return Err(InstanceError::OutOfRange { vertex: v, n });
            }
        }
        if i == j {
            return Err(InstanceError::SelfLoop(i));
        }
        Ok(self.dist(i, j))
    }
}

impl Distance for Instance {
    fn len(&self) -> usize {
        self.cluster_of.len()
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> i64 {
        match &self.weights {
            Weights::Coords(c) => euc_2d(c[i], c[j]),
            Weights::Matrix(m) => m.dist(i, j),
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing section: {0}")]
    MissingSection(&'static str),
    #[error("partition error: {0}")]
    PartitionError(String),
    #[error("dimension mismatch in {what}: declared {declared}, found {found}")]
    DimensionMismatch {
        what: &'static str,
        declared: usize,
        found: usize,
    },
    #[error("unsupported edge weight type or format: {0}")]
    UnsupportedEdgeWeightType(String),
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error(transparent)]
    Invalid(#[from] InstanceError),
}

fn malformed(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        msg: msg.into(),
    }
}

#[derive(Default)]
struct Header {
    name: Option<String>,
    dimension: Option<usize>,
    weight_type: Option<String>,
    weight_format: Option<String>,
    sets: Option<usize>,
}

/// A section's payload: whitespace tokens tagged with their 1-based line.
type Tokens = Vec<(usize, String)>;

const SECTIONS: [&str; 5] = [
    "NODE_COORD_SECTION",
    "EDGE_WEIGHT_SECTION",
    "GTSP_SET_SECTION",
    "DISPLAY_DATA_SECTION",
    "EOF",
];

fn section_keyword(line: &str) -> Option<&'static str> {
    let key = line.trim().trim_end_matches(':').trim();
    SECTIONS
        .iter()
        .copied()
        .find(|s| s.eq_ignore_ascii_case(key))
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| malformed(line, format!("expected {what}, found {tok:?}")))
}

/// Parses a GTSPLIB/TSPLIB text into an [`Instance`].
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header = Header::default();
    let mut sections: HashMap<&'static str, Tokens> = HashMap::new();
    let mut current: Option<&'static str> = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(sec) = section_keyword(line) {
            if sec == "EOF" {
                break;
            }
            current = Some(sec);
            sections.entry(sec).or_default();
            continue;
        }
        let starts_alpha = line.chars().next().is_some_and(|c| c.is_ascii_alphabetic());
        if let (Some(sec), false) = (current, starts_alpha) {
            let toks = sections.get_mut(sec).expect("section registered");
            toks.extend(line.split_whitespace().map(|t| (lineno, t.to_string())));
            continue;
        }
        current = None;
        let (key, value) = match line.split_once(':') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => line.split_once(char::is_whitespace).unwrap_or((line, "")),
        };
        let value = value.trim();
        match key.to_ascii_uppercase().as_str() {
            "NAME" => header.name = Some(value.to_string()),
            "DIMENSION" => header.dimension = Some(parse_num(lineno, value, "DIMENSION")?),
            "EDGE_WEIGHT_TYPE" => header.weight_type = Some(value.to_ascii_uppercase()),
            "EDGE_WEIGHT_FORMAT" => header.weight_format = Some(value.to_ascii_uppercase()),
            "GTSP_SETS" => header.sets = Some(parse_num(lineno, value, "GTSP_SETS")?),
            // TYPE, COMMENT, NODE_COORD_TYPE, DISPLAY_DATA_TYPE and unknown keys are informational.
            _ => {}
        }
    }

    let n = header
        .dimension
        .ok_or_else(|| malformed(0, "DIMENSION not declared"))?;
    let name = header.name.clone().unwrap_or_default();
    let weight_type = header
        .weight_type
        .clone()
        .ok_or_else(|| ParseError::UnsupportedEdgeWeightType("<missing>".into()))?;

    let set_tokens = sections
        .remove("GTSP_SET_SECTION")
        .ok_or(ParseError::MissingSection("GTSP_SET_SECTION"))?;

    match weight_type.as_str() {
        "EUC_2D" => {
            let toks = sections
                .remove("NODE_COORD_SECTION")
                .ok_or(ParseError::MissingSection("NODE_COORD_SECTION"))?;
            let (ids, coords) = parse_coords(&toks)?;
            if coords.len() != n {
                return Err(ParseError::DimensionMismatch {
                    what: "NODE_COORD_SECTION",
                    declared: n,
                    found: coords.len(),
                });
            }
            let clusters = parse_sets(&set_tokens, &ids, header.sets)?;
            Ok(Instance::from_coords(name, coords, clusters)?)
        }
        "EXPLICIT" => {
            let toks = sections
                .remove("EDGE_WEIGHT_SECTION")
                .ok_or(ParseError::MissingSection("EDGE_WEIGHT_SECTION"))?;
            let format = header.weight_format.clone().ok_or_else(|| {
                ParseError::UnsupportedEdgeWeightType("EXPLICIT without format".into())
            })?;
            let matrix = parse_explicit(&toks, n, &format)?;
            let ids: HashMap<i64, usize> = (0..n).map(|v| (v as i64 + 1, v)).collect();
            let clusters = parse_sets(&set_tokens, &ids, header.sets)?;
            Ok(Instance::from_matrix(name, matrix, clusters)?)
        }
        other => Err(ParseError::UnsupportedEdgeWeightType(other.to_string())),
    }
}

fn parse_coords(toks: &Tokens) -> Result<(HashMap<i64, usize>, Vec<Point>), ParseError> {
    if toks.len() % 3 != 0 {
        let line = toks.last().map_or(0, |t| t.0);
        return Err(malformed(
            line,
            "NODE_COORD_SECTION entries must be `id x y`",
        ));
    }
    let mut ids = HashMap::new();
    let mut coords = Vec::with_capacity(toks.len() / 3);
    for chunk in toks.chunks(3) {
        let line = chunk[0].0;
        let id: i64 = parse_num(line, &chunk[0].1, "vertex id")?;
        let x: f64 = parse_num(line, &chunk[1].1, "x coordinate")?;
        let y: f64 = parse_num(line, &chunk[2].1, "y coordinate")?;
        if ids.insert(id, coords.len()).is_some() {
            return Err(malformed(line, format!("duplicate vertex id {id}")));
        }
        coords.push(Point::new(x, y));
    }
    Ok((ids, coords))
}

fn parse_explicit(toks: &Tokens, n: usize, format: &str) -> Result<DistanceMatrix, ParseError> {
    let expected = match format {
        "FULL_MATRIX" => n * n,
        "UPPER_ROW" => n * (n - 1) / 2,
        "LOWER_DIAG_ROW" => n * (n + 1) / 2,
        other => return Err(ParseError::UnsupportedEdgeWeightType(other.to_string())),
    };
    if toks.len() != expected {
        return Err(ParseError::DimensionMismatch {
            what: "EDGE_WEIGHT_SECTION",
            declared: expected,
            found: toks.len(),
        });
    }
    let values = toks
        .iter()
        .map(|(line, t)| parse_num::<i64>(*line, t, "integer weight"))
        .collect::<Result<Vec<_>, _>>()?;
    let mut data = vec![0i64; n * n];
    let mut it = values.into_iter();
    match format {
        "FULL_MATRIX" => {
            for (cell, v) in data.iter_mut().zip(it) {
                *cell = v;
            }
        }
        "UPPER_ROW" => {
            for i in 0..n {
                for j in (i + 1)..n {
                    let v = it.next().expect("counted");
                    data[i * n + j] = v;
                    data[j * n + i] = v;
                }
            }
        }
        _ => {
            for i in 0..n {
                for j in 0..=i {
                    let v = it.next().expect("counted");
                    data[i * n + j] = v;
                    data[j * n + i] = v;
                }
            }
        }
    }
    for i in 0..n {
        data[i * n + i] = 0;
    }
    Ok(DistanceMatrix::from_full(n, data))
}

fn parse_sets(
    toks: &Tokens,
    ids: &HashMap<i64, usize>,
    declared: Option<usize>,
) -> Result<Vec<Vec<usize>>, ParseError> {
    let mut clusters = Vec::new();
    let mut current: Option<Vec<usize>> = None;
    for (line, tok) in toks {
        let value: i64 = parse_num(*line, tok, "set entry")?;
        match current.as_mut() {
            None => current = Some(Vec::new()), // leading token is the set id
            Some(members) if value == -1 => {
                clusters.push(std::mem::take(members));
                current = None;
            }
            Some(members) => {
                let v = *ids.get(&value).ok_or_else(|| {
                    ParseError::PartitionError(format!("set references unknown vertex {value}"))
                })?;
                members.push(v);
            }
        }
    }
    if current.is_some() {
        return Err(malformed(
            toks.last().map_or(0, |t| t.0),
            "GTSP_SET_SECTION entry not terminated by -1",
        ));
    }
    if let Some(m) = declared {
        if m != clusters.len() {
            return Err(ParseError::DimensionMismatch {
                what: "GTSP_SET_SECTION",
                declared: m,
                found: clusters.len(),
            });
        }
    }
    partition_index(ids.len(), &clusters).map_err(|e| match e {
        InstanceError::Partition(msg) => ParseError::PartitionError(msg),
        other => ParseError::Invalid(other),
    })?;
    Ok(clusters)
}

// ---------------------------------------------------------------------------
// Writing
// ---------------------------------------------------------------------------

/// Renders `inst` in the format read by [`parse_instance`].
///
/// Coordinates use Rust's shortest round-trip float formatting, so parsing
/// the output reproduces the instance exactly.
pub fn write_instance(inst: &Instance) -> String {
    let n = inst.len();
    let mut out = String::new();
    let _ = writeln!(out, "NAME : {}", inst.name);
    let _ = writeln!(out, "TYPE : GTSP");
    let _ = writeln!(out, "DIMENSION : {n}");
    match &inst.weights {
        Weights::Coords(_) => {
            let _ = writeln!(out, "EDGE_WEIGHT_TYPE : EUC_2D");
        }
        Weights::Matrix(_) => {
            let _ = writeln!(out, "EDGE_WEIGHT_TYPE : EXPLICIT");
            let _ = writeln!(out, "EDGE_WEIGHT_FORMAT : FULL_MATRIX");
        }
    }
    let _ = writeln!(out, "GTSP_SETS : {}", inst.num_clusters());
    match &inst.weights {
        Weights::Coords(coords) => {
            out.push_str("NODE_COORD_SECTION\n");
            for (v, p) in coords.iter().enumerate() {
                let _ = writeln!(out, "{} {:?} {:?}", v + 1, p.x, p.y);
            }
        }
        Weights::Matrix(m) => {
            out.push_str("EDGE_WEIGHT_SECTION\n");
            for i in 0..n {
                let row: Vec<String> = m.row(i).iter().map(|c| c.to_string()).collect();
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
    }
    out.push_str("GTSP_SET_SECTION\n");
    for (k, cluster) in inst.clusters.iter().enumerate() {
        let _ = write!(out, "{}", k + 1);
        for &v in cluster {
            let _ = write!(out, " {}", v + 1);
        }
        out.push_str(" -1\n");
    }
    out.push_str("EOF\n");
    out
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n: usize,
    pub m: usize,
    /// Standard deviation of points around their cluster center.
    pub cluster_spread: f64,
    /// Side of the square in which cluster centers are drawn.
    pub field_size: f64,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(n: usize, m: usize, seed: u64) -> Self {
        Self {
            n,
            m,
            cluster_spread: 15.0,
            field_size: 1000.0,
            seed,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenerateError {
    #[error("invalid generator config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

const CENTER_RETRIES: usize = 100;

/// Draws a sharply clustered Euclidean instance.
///
/// Cluster centers are uniform in the field and kept at least
/// `4 * cluster_spread` apart when 100 attempts allow it. Cluster `k`
/// receives `ceil(n/m)` vertices for `k < n % m` and `floor(n/m)` otherwise,
/// scattered as an isotropic Gaussian around its center. Vertex ids are
/// shuffled so clusters are not consecutive id ranges.
pub fn generate_clustered(cfg: &GeneratorConfig) -> Result<Instance, GenerateError> {
    if cfg.m == 0 || cfg.n < cfg.m {
        return Err(GenerateError::InvalidConfig(format!(
            "need n >= m >= 1, got n = {}, m = {}",
            cfg.n, cfg.m
        )));
    }
    if !(cfg.cluster_spread > 0.0 && cfg.cluster_spread.is_finite()) {
        return Err(GenerateError::InvalidConfig(
            "cluster_spread must be > 0".into(),
        ));
    }
    if !(cfg.field_size > 0.0 && cfg.field_size.is_finite()) {
        return Err(GenerateError::InvalidConfig(
            "field_size must be > 0".into(),
        ));
    }
    let mut rng = rng::from_seed(cfg.seed);
    let min_sep = 4.0 * cfg.cluster_spread;
    let mut centers: Vec<Point> = Vec::with_capacity(cfg.m);
    for _ in 0..cfg.m {
        let mut candidate = Point::new(0.0, 0.0);
        for _ in 0..CENTER_RETRIES {
            candidate = Point::new(
                rng.random_range(0.0..cfg.field_size),
                rng.random_range(0.0..cfg.field_size),
            );
            let separated = centers.iter().all(|c| {
                ((c.x - candidate.x).powi(2) + (c.y - candidate.y).powi(2)).sqrt() >= min_sep
            });
            if separated {
                break;
            }
        }
        centers.push(candidate);
    }

    let normal = Normal::new(0.0, cfg.cluster_spread).expect("spread validated");
    let mut ids: Vec<usize> = (0..cfg.n).collect();
    ids.shuffle(&mut rng);
    let mut coords = vec![Point::new(0.0, 0.0); cfg.n];
    let mut clusters = Vec::with_capacity(cfg.m);
    let base = cfg.n / cfg.m;
    let extra = cfg.n % cfg.m;
    let mut next = ids.into_iter();
    for (k, center) in centers.iter().enumerate() {
        let size = base + usize::from(k < extra);
        let mut members = Vec::with_capacity(size);
        for _ in 0..size {
            let v = next.next().expect("sizes sum to n");
            coords[v] = Point::new(
                center.x + normal.sample(&mut rng),
                center.y + normal.sample(&mut rng),
            );
            members.push(v);
        }
        members.sort_unstable();
        clusters.push(members);
    }
    let name = format!("gen-n{}-m{}-s{}", cfg.n, cfg.m, cfg.seed);
    Ok(Instance::from_coords(name, coords, clusters)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_text() -> &'static str {
        "NAME : tri\nTYPE : GTSP\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\nGTSP_SETS : 1\n\
         NODE_COORD_SECTION\n1 0 0\n2 3 0\n3 0 4\nGTSP_SET_SECTION\n1 1 2 3 -1\nEOF\n"
    }

    #[test]
    fn parses_pythagorean_triangle() {
        let inst = parse_instance(triangle_text()).unwrap();
        assert_eq!(inst.len(), 3);
        assert_eq!(inst.num_clusters(), 1);
        let mut d = vec![inst.dist(0, 1), inst.dist(0, 2), inst.dist(1, 2)];
        d.sort();
        assert_eq!(d, vec![3, 4, 5]);
        assert_eq!(inst.max_distance(), 5);
    }

    #[test]
    fn euc_2d_rounding() {
        assert_eq!(euc_2d(Point::new(0.0, 0.0), Point::new(3.0, 4.0)), 5);
        assert_eq!(euc_2d(Point::new(0.0, 0.0), Point::new(1.0, 1.0)), 1);
        // 2.5 rounds half-up.
        assert_eq!(euc_2d(Point::new(0.0, 0.0), Point::new(2.5, 0.0)), 3);
        assert_eq!(euc_2d(Point::new(0.0, 0.0), Point::new(1.5, 0.0)), 2);
    }

    #[test]
    fn checked_distance_errors() {
        let inst = parse_instance(triangle_text()).unwrap();
        assert_eq!(inst.distance(1, 1), Err(InstanceError::SelfLoop(1)));
        assert!(matches!(
            inst.distance(0, 9),
            Err(InstanceError::OutOfRange { .. })
        ));
        assert_eq!(inst.distance(1, 2), Ok(5));
    }

    #[test]
    fn missing_vertex_in_sets_is_partition_error() {
        let mut text = String::from("NAME : x\nDIMENSION : 8\nEDGE_WEIGHT_TYPE : EUC_2D\nGTSP_SETS : 2\nNODE_COORD_SECTION\n");
        for v in 1..=8 {
            text.push_str(&format!("{v} {v} 0\n"));
        }
        text.push_str("GTSP_SET_SECTION\n1 1 2 3 4 -1\n2 5 6 8 -1\nEOF\n");
        assert!(matches!(
            parse_instance(&text),
            Err(ParseError::PartitionError(_))
        ));
    }

    #[test]
    fn duplicated_vertex_is_partition_error() {
        let text = triangle_text()
            .replace("1 1 2 3 -1", "1 1 2 3 -1\n2 3 -1")
            .replace("GTSP_SETS : 1", "GTSP_SETS : 2");
        assert!(matches!(
            parse_instance(&text),
            Err(ParseError::PartitionError(_))
        ));
    }

    #[test]
    fn missing_set_section() {
        let text = triangle_text().replace("GTSP_SET_SECTION\n1 1 2 3 -1\n", "");
        assert_eq!(
            parse_instance(&text),
            Err(ParseError::MissingSection("GTSP_SET_SECTION"))
        );
    }

    #[test]
    fn dimension_mismatch() {
        let text = triangle_text().replace("DIMENSION : 3", "DIMENSION : 4");
        assert!(matches!(
            parse_instance(&text),
            Err(ParseError::DimensionMismatch {
                declared: 4,
                found: 3,
                ..
            })
        ));
    }

    #[test]
    fn unsupported_weight_type() {
        let text = triangle_text().replace("EUC_2D", "GEO");
        assert_eq!(
            parse_instance(&text),
            Err(ParseError::UnsupportedEdgeWeightType("GEO".into()))
        );
    }

    #[test]
    fn explicit_layouts_agree() {
        // Same 4-vertex matrix in the three accepted layouts.
        let full = "0 1 2 3\n1 0 4 5\n2 4 0 6\n3 5 6 0";
        let upper = "1 2 3\n4 5\n6";
        let lower = "0\n1 0\n2 4 0\n3 5 6 0";
        let mk = |fmt: &str, body: &str| {
            format!(
                "NAME : m\nDIMENSION : 4\nEDGE_WEIGHT_TYPE : EXPLICIT\nEDGE_WEIGHT_FORMAT : {fmt}\n\
                 EDGE_WEIGHT_SECTION\n{body}\nGTSP_SET_SECTION :\n1 1 2 -1\n2 3 4 -1\nEOF\n"
            )
        };
        let a = parse_instance(&mk("FULL_MATRIX", full)).unwrap();
        let b = parse_instance(&mk("UPPER_ROW", upper)).unwrap();
        let c = parse_instance(&mk("LOWER_DIAG_ROW", lower)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.dist(2, 3), 6);
        assert_eq!(a.kind(), DistanceKind::ExplicitMatrix);
        assert!(matches!(
            parse_instance(&mk("LOWER_ROW", upper)),
            Err(ParseError::UnsupportedEdgeWeightType(_))
        ));
    }

    #[test]
    fn asymmetric_matrix_rejected() {
        let m = DistanceMatrix::from_full(2, vec![0, 1, 2, 0]);
        assert!(matches!(
            Instance::from_matrix("a", m, vec![vec![0, 1]]),
            Err(InstanceError::Matrix(_))
        ));
    }

    #[test]
    fn file_ids_are_remapped_in_order() {
        let text = "NAME : r\nDIMENSION : 3\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n\
                    10 0 0\n20 3 0\n30 0 4\nGTSP_SET_SECTION\n7 30 -1\n8 10 20 -1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.clusters(), &[vec![2], vec![0, 1]]);
        assert_eq!(inst.dist(0, 1), 3);
    }

    #[test]
    fn round_trip_triangle() {
        let inst = parse_instance(triangle_text()).unwrap();
        let again = parse_instance(&write_instance(&inst)).unwrap();
        assert_eq!(inst, again);
    }

    #[test]
    fn generator_singletons_and_determinism() {
        let inst = generate_clustered(&GeneratorConfig::new(10, 10, 4)).unwrap();
        assert!(inst.clusters().iter().all(|c| c.len() == 1));
        let a = generate_clustered(&GeneratorConfig::new(9, 3, 1)).unwrap();
        let b = generate_clustered(&GeneratorConfig::new(9, 3, 1)).unwrap();
        let c = generate_clustered(&GeneratorConfig::new(9, 3, 2)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.coords(), c.coords());
    }

    #[test]
    fn generator_cluster_sizes() {
        let inst = generate_clustered(&GeneratorConfig::new(23, 5, 9)).unwrap();
        let mut sizes: Vec<usize> = inst.clusters().iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![4, 4, 5, 5, 5]);
    }

    #[test]
    fn generator_rejects_bad_config() {
        assert!(generate_clustered(&GeneratorConfig::new(2, 3, 0)).is_err());
        assert!(generate_clustered(&GeneratorConfig::new(2, 0, 0)).is_err());
        let mut cfg = GeneratorConfig::new(5, 2, 0);
        cfg.cluster_spread = 0.0;
        assert!(generate_clustered(&cfg).is_err());
        cfg.cluster_spread = 1.0;
        cfg.field_size = -1.0;
        assert!(generate_clustered(&cfg).is_err());
    }

    #[test]
    fn hull_diameter_matches_brute_force() {
        let inst = generate_clustered(&GeneratorConfig::new(120, 6, 11)).unwrap();
        let mut brute = 0;
        for i in 0..inst.len() {
            for j in (i + 1)..inst.len() {
                brute = brute.max(inst.dist(i, j));
            }
        }
        assert_eq!(inst.max_distance(), brute);
    }
}
