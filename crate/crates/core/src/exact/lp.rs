//! CPLEX-LP export of the MTZ and multi-commodity flow formulations.
//!
//! Variables use 1-based ids: `x_i_j` is the arc from city `i` to city `j`,
//! `u_i` the MTZ order of city `i`, and `y_k_i_j` the flow of commodity `k`
//! on arc `(i, j)`. City 1 is the origin of every commodity.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::distance::Distance;
use crate::instance::Instance;

use super::ExactError;

pub const MTZ_LIMIT: usize = 3000;
pub const MCF_LIMIT: usize = 200;

/// Terms per line before wrapping an expression.
const TERMS_PER_LINE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Formulation {
    Mtz,
    Mcf,
}

impl std::fmt::Display for Formulation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Formulation::Mtz => "mtz",
            Formulation::Mcf => "mcf",
        })
    }
}

impl std::str::FromStr for Formulation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mtz" => Ok(Formulation::Mtz),
            "mcf" => Ok(Formulation::Mcf),
            other => Err(format!("unknown formulation {other:?}")),
        }
    }
}

/// Closed-form sizes of an exported model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub formulation: Formulation,
    /// The `x_i_j`, including the fixed self-arcs.
    pub binaries: usize,
    /// `u_i` for MTZ, `y_k_i_j` for MCF.
    pub continuous: usize,
    pub rows: usize,
}

impl ModelSpec {
    pub fn new(formulation: Formulation, n: usize, m: usize) -> Self {
        let binaries = n * n;
        match formulation {
            Formulation::Mtz => Self {
                formulation,
                binaries,
                continuous: n.saturating_sub(1),
                rows: 2 * n + n.saturating_sub(1) * n.saturating_sub(2) + m,
            },
            Formulation::Mcf => {
                let k = n.saturating_sub(1);
                Self {
                    formulation,
                    binaries,
                    continuous: k * n * n,
                    // assignment, clusters, capacity, four end rows per
                    // commodity, conservation at every other city
                    rows: 2 * n + m + k * n * n + 4 * k + k * n.saturating_sub(2),
                }
            }
        }
    }

    pub fn variables(&self) -> usize {
        self.binaries + self.continuous
    }
}

struct LpWriter {
    out: String,
}

impl LpWriter {
    fn new() -> Self {
        Self { out: String::new() }
    }

    /// Writes ` name: t1 + t2 ... op rhs` with line wrapping.
    fn row(
        &mut self,
        name: &str,
        terms: impl IntoIterator<Item = (i64, String)>,
        op: &str,
        rhs: i64,
    ) {
        let _ = write!(self.out, " {name}:");
        self.expr(terms);
        let _ = writeln!(self.out, " {op} {rhs}");
    }

    fn expr(&mut self, terms: impl IntoIterator<Item = (i64, String)>) {
        let mut count = 0;
        for (coef, var) in terms {
            if count > 0 && count % TERMS_PER_LINE == 0 {
                self.out.push_str("\n   ");
            }
            let sign = if coef < 0 { '-' } else { '+' };
            let a = coef.unsigned_abs();
            if count == 0 && coef >= 0 {
                if a == 1 {
                    let _ = write!(self.out, " {var}");
                } else {
                    let _ = write!(self.out, " {a} {var}");
                }
            } else if a == 1 {
                let _ = write!(self.out, " {sign} {var}");
            } else {
                let _ = write!(self.out, " {sign} {a} {var}");
            }
            count += 1;
        }
        if count == 0 {
            self.out.push_str(" 0 x_1_1");
        }
    }

    fn line(&mut self, s: &str) {
        self.out.push_str(s);
        self.out.push('\n');
    }
}

fn x(i: usize, j: usize) -> String {
    format!("x_{}_{}", i + 1, j + 1)
}

fn y(k: usize, i: usize, j: usize) -> String {
    format!("y_{}_{}_{}", k + 1, i + 1, j + 1)
}

fn check(n: usize, limit: usize, what: &'static str) -> Result<(), ExactError> {
    if n > limit {
        return Err(ExactError::TooLarge {
            what,
            size: n as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// Objective, assignment rows and cluster rows shared by both models.
fn common_rows(w: &mut LpWriter, inst: &Instance) {
    let n = inst.len();
    w.line(&format!(
        "\\ CTSP {} n = {} m = {}",
        inst.name(),
        n,
        inst.num_clusters()
    ));
    w.line("Minimize");
    let _ = write!(w.out, " obj:");
    w.expr((0..n).flat_map(|i| {
        (0..n)
            .filter(move |&j| j != i)
            .map(move |j| (inst.dist(i, j), x(i, j)))
            .filter(|(c, _)| *c != 0)
    }));
    w.out.push('\n');
    w.line("Subject To");
    for i in 0..n {
        w.row(
            &format!("out_{}", i + 1),
            (0..n).map(|j| (1, x(i, j))),
            "=",
            1,
        );
    }
    for j in 0..n {
        w.row(
            &format!("in_{}", j + 1),
            (0..n).map(|i| (1, x(i, j))),
            "=",
            1,
        );
    }
}

fn cluster_rows(w: &mut LpWriter, inst: &Instance) {
    for (k, members) in inst.clusters().iter().enumerate() {
        let terms: Vec<(i64, String)> = if members.len() == 1 {
            vec![(0, x(members[0], members[0]))]
        } else {
            members
                .iter()
                .flat_map(|&i| {
                    members
                        .iter()
                        .filter(move |&&j| j != i)
                        .map(move |&j| (1, x(i, j)))
                })
                .collect()
        };
        w.row(
            &format!("cluster_{}", k + 1),
            terms,
            "=",
            members.len() as i64 - 1,
        );
    }
}

fn binaries(w: &mut LpWriter, n: usize) {
    w.line("Binaries");
    for i in 0..n {
        let vars: Vec<String> = (0..n).map(|j| x(i, j)).collect();
        for chunk in vars.chunks(TERMS_PER_LINE * 2) {
            w.line(&format!(" {}", chunk.join(" ")));
        }
    }
}

/// The MTZ model: assignment, MTZ ordering rows and cluster rows.
pub fn export_mtz_model(inst: &Instance) -> Result<String, ExactError> {
    let n = inst.len();
    check(n, MTZ_LIMIT, "MTZ export vertices")?;
    let mut w = LpWriter::new();
    common_rows(&mut w, inst);
    let big = n as i64 - 1;
    for i in 1..n {
        for j in 1..n {
            if i != j {
                w.row(
                    &format!("mtz_{}_{}", i + 1, j + 1),
                    [
                        (1, format!("u_{}", i + 1)),
                        (-1, format!("u_{}", j + 1)),
                        (big, x(i, j)),
                    ],
                    "<=",
                    n as i64 - 2,
                );
            }
        }
    }
    cluster_rows(&mut w, inst);
    w.line("Bounds");
    for i in 0..n {
        w.line(&format!(" {} = 0", x(i, i)));
    }
    for i in 1..n {
        w.line(&format!(" u_{} >= 0", i + 1));
    }
    binaries(&mut w, n);
    w.line("End");
    Ok(w.out)
}

/// The multi-commodity flow model: one unit of commodity `k` flows from city
/// 1 to city `k` along selected arcs.
pub fn export_mcf_model(inst: &Instance) -> Result<String, ExactError> {
    let n = inst.len();
    check(n, MCF_LIMIT, "MCF export vertices")?;
    let mut w = LpWriter::new();
    common_rows(&mut w, inst);
    cluster_rows(&mut w, inst);
    for k in 1..n {
        for i in 0..n {
            for j in 0..n {
                w.row(
                    &format!("cap_{}_{}_{}", k + 1, i + 1, j + 1),
                    [(1, y(k, i, j)), (-1, x(i, j))],
                    "<=",
                    0,
                );
            }
        }
    }
    for k in 1..n {
        let kk = k + 1;
        w.row(
            &format!("src_{kk}"),
            (1..n).map(|i| (1, y(k, 0, i))),
            "=",
            1,
        );
        w.row(
            &format!("ret_{kk}"),
            (1..n).map(|i| (1, y(k, i, 0))),
            "=",
            0,
        );
        w.row(
            &format!("sink_{kk}"),
            (0..n).map(|i| (1, y(k, i, k))),
            "=",
            1,
        );
        w.row(
            &format!("stop_{kk}"),
            (0..n).map(|j| (1, y(k, k, j))),
            "=",
            0,
        );
        for j in 1..n {
            if j == k {
                continue;
            }
            // The self-loop y_k_j_j would appear on both sides and cancel.
            let inflow = (0..n).filter(|&i| i != j).map(|i| (1, y(k, i, j)));
            let outflow = (0..n).filter(|&i| i != j).map(|i| (-1, y(k, j, i)));
            w.row(
                &format!("flow_{}_{}", kk, j + 1),
                inflow.chain(outflow),
                "=",
                0,
            );
        }
    }
    w.line("Bounds");
    for i in 0..n {
        w.line(&format!(" {} = 0", x(i, i)));
    }
    for k in 1..n {
        for i in 0..n {
            for j in 0..n {
                w.line(&format!(" {} >= 0", y(k, i, j)));
            }
        }
    }
    binaries(&mut w, n);
    w.line("End");
    Ok(w.out)
}
