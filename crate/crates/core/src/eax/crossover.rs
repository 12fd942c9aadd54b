use std::collections::HashSet;

use crate::distance::Distance;
use crate::localsearch::CandidateLists;
use crate::rng::SolverRng;
use crate::tour::Tour;

use super::assemble::{apply_to_links, links_to_order, merge_links, MergeScratch};
use super::cycles::{extract_ab_cycles, select_eset, AbCycle, ESet, EsetStrategy};
use super::union::{links_of, UnionGraph};

/// Generates up to `r` offspring of `sa` and `sb`, one fresh E-set each.
///
/// Identical parents have no AB-cycle and yield a single copy of `sa`.
pub fn eax_crossover<D: Distance + ?Sized>(
    d: &D,
    cl: &CandidateLists,
    sa: &Tour,
    sb: &Tour,
    r: usize,
    strategy: EsetStrategy,
    rng: &mut SolverRng,
) -> Vec<Tour> {
    let mut op = Crossover::new(sa, sb, rng);
    if op.cycles.is_empty() {
        return vec![sa.clone()];
    }
    (0..r)
        .map(|_| {
            let eset = select_eset(&op.cycles, strategy, rng).expect("cycles nonempty");
            op.offspring(d, cl, sa, &eset)
        })
        .collect()
}

/// One parent pair with its AB-cycles, reused across offspring.
pub(crate) struct Crossover {
    a_links: Vec<[usize; 2]>,
    pub(crate) cycles: Vec<AbCycle>,
    work: Vec<[usize; 2]>,
    scratch: MergeScratch,
}

impl Crossover {
    pub(crate) fn new(sa: &Tour, sb: &Tour, rng: &mut SolverRng) -> Self {
        let a_links = links_of(sa);
        let g = UnionGraph::from_links(a_links.clone(), links_of(sb));
        let cycles = extract_ab_cycles(&g, rng);
        Self {
            work: a_links.clone(),
            a_links,
            cycles,
            scratch: MergeScratch::default(),
        }
    }

    /// Cost change of the offspring built from `eset`, leaving its
    /// adjacency in `self.work`.
    fn evaluate<D: Distance + ?Sized>(&mut self, d: &D, cl: &CandidateLists, eset: &ESet) -> i64 {
        self.work.copy_from_slice(&self.a_links);
        let delta = apply_to_links(d, &mut self.work, &self.cycles, eset)
            .expect("AB-cycles are drawn from parent A");
        delta + merge_links(d, cl, &mut self.work, &mut self.scratch)
    }

    fn offspring<D: Distance + ?Sized>(
        &mut self,
        d: &D,
        cl: &CandidateLists,
        sa: &Tour,
        eset: &ESet,
    ) -> Tour {
        let delta = self.evaluate(d, cl, eset);
        Tour::from_parts(links_to_order(&self.work), sa.cost() + delta)
    }

    /// Best of `r` offspring, if any beats `sa` strictly. Repeated E-sets
    /// are evaluated once since the construction is deterministic.
    pub(crate) fn best_improvement<D: Distance + ?Sized>(
        &mut self,
        d: &D,
        cl: &CandidateLists,
        sa: &Tour,
        r: usize,
        strategy: EsetStrategy,
        rng: &mut SolverRng,
    ) -> Option<Tour> {
        if self.cycles.is_empty() {
            return None;
        }
        let mut tried: HashSet<ESet> = HashSet::new();
        let mut best: Option<(i64, ESet)> = None;
        for _ in 0..r {
            let eset = select_eset(&self.cycles, strategy, rng).expect("cycles nonempty");
            if !tried.insert(eset.clone()) {
                continue;
            }
            let delta = self.evaluate(d, cl, &eset);
            if delta < 0 && best.as_ref().is_none_or(|(bd, _)| delta < *bd) {
                best = Some((delta, eset));
            }
        }
        best.map(|(_, eset)| self.offspring(d, cl, sa, &eset))
    }
}
