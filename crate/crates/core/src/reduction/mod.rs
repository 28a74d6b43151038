//! The reduction relation `→_D` on restrictions, elimination traces, the
//! exhaustive outcome search, and checks for the properties that make the
//! final outcome independent of elimination order.

mod checks;
pub mod sampling;

use std::collections::HashSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use checks::{
    check_hereditary_step, check_monotonic_pair, check_proof_shape, hereditary_violation, proof_shape_violation,
};

use crate::dominance::{dominated_set, DominanceCertificate, DominanceRelation, DominatedSet};
use crate::error::{Error, Result};
use crate::game::{Game, Restriction, Strategy};
use crate::par::{self, Execution};

/// Default limit on distinct restrictions explored by [`all_outcomes`].
pub const DEFAULT_BUDGET: usize = 100_000;

/// Largest `|D_R|` for which every subset is enumerated as a separate step.
pub const MAX_SUBSET_BRANCHING: usize = 20;

/// Which dominated strategies a step removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderPolicy {
    /// All of `D_R` at once.
    FullSpeed,
    /// The first element of `D_R` in `(player, index)` order.
    SingleLex,
    /// One element of `D_R` chosen uniformly by a generator seeded once per
    /// trace.
    SingleRandom(u64),
    /// One step per nonempty subset of `D_R`.
    AllSubsets,
}

impl OrderPolicy {
    pub fn name(&self) -> &'static str {
        match self {
            OrderPolicy::FullSpeed => "fastest",
            OrderPolicy::SingleLex => "single-lex",
            OrderPolicy::SingleRandom(_) => "single-random",
            OrderPolicy::AllSubsets => "all-subsets",
        }
    }
}

/// One application of `→_D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    pub before: Restriction,
    pub after: Restriction,
    /// Removed strategies in canonical order, each with the certificate of
    /// its dominance in `before`.
    pub removed: Vec<(Strategy, DominanceCertificate)>,
}

/// A maximal elimination sequence from the initial game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub relation: DominanceRelation,
    pub policy: OrderPolicy,
    pub initial: Arc<Game>,
    pub steps: Vec<ReductionStep>,
    pub outcome: Restriction,
}

fn step_removing(r: &Restriction, set: &DominatedSet, pick: impl Fn(usize) -> bool) -> Result<ReductionStep> {
    let removed: Vec<(Strategy, DominanceCertificate)> =
        set.entries.iter().enumerate().filter(|&(k, _)| pick(k)).map(|(_, e)| e.clone()).collect();
    let strategies: Vec<Strategy> = removed.iter().map(|(s, _)| *s).collect();
    let after = r.without(&strategies)?;
    Ok(ReductionStep { before: r.clone(), after, removed })
}

fn steps_for(
    r: &Restriction,
    set: &DominatedSet,
    policy: OrderPolicy,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<ReductionStep>> {
    if set.is_empty() {
        return Ok(Vec::new());
    }
    Ok(match policy {
        OrderPolicy::FullSpeed => vec![step_removing(r, set, |_| true)?],
        OrderPolicy::SingleLex => vec![step_removing(r, set, |k| k == 0)?],
        OrderPolicy::SingleRandom(_) => {
            let chosen = rng.gen_range(0..set.len());
            vec![step_removing(r, set, |k| k == chosen)?]
        }
        OrderPolicy::AllSubsets => {
            let d = set.len();
            if d > MAX_SUBSET_BRANCHING {
                return Err(Error::unsupported(format!(
                    "{d} dominated strategies give too many subset steps to enumerate"
                )));
            }
            (1u64..(1 << d)).map(|mask| step_removing(r, set, |k| mask >> k & 1 == 1)).collect::<Result<Vec<_>>>()?
        }
    })
}

/// The `→_D` steps out of `r` allowed by `policy`; empty iff `D_R = ∅`.
pub fn successors(rel: &DominanceRelation, r: &Restriction, policy: OrderPolicy) -> Result<Vec<ReductionStep>> {
    let set = dominated_set(rel, r)?;
    let seed = match policy {
        OrderPolicy::SingleRandom(seed) => seed,
        _ => 0,
    };
    steps_for(r, &set, policy, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Eliminates from the full game under `policy` until no strategy is
/// dominated.
pub fn normal_form(rel: &DominanceRelation, game: &Arc<Game>, policy: OrderPolicy) -> Result<Trace> {
    if policy == OrderPolicy::AllSubsets {
        return Err(Error::structural("a single trace needs a deterministic order, not all subsets"));
    }
    rel.check_supported(game.players())?;
    let seed = match policy {
        OrderPolicy::SingleRandom(seed) => seed,
        _ => 0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = Restriction::full(game);
    let mut steps = Vec::new();
    loop {
        let set = dominated_set(rel, &current)?;
        match steps_for(&current, &set, policy, &mut rng)?.pop() {
            Some(step) => {
                current = step.after.clone();
                steps.push(step);
            }
            None => break,
        }
    }
    Ok(Trace { relation: rel.clone(), policy, initial: Arc::clone(game), steps, outcome: current })
}

/// A restriction reached by the outcome search and its dominated
/// strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploredNode {
    pub restriction: Restriction,
    pub dominated: Vec<Strategy>,
}

/// Every restriction reachable from the full game by `→_D`, in canonical
/// order of kept index sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exploration {
    pub nodes: Vec<ExploredNode>,
}

impl Exploration {
    /// The irreducible reachable restrictions.
    pub fn outcomes(&self) -> Vec<Restriction> {
        self.nodes.iter().filter(|n| n.dominated.is_empty()).map(|n| n.restriction.clone()).collect()
    }

    pub fn is_order_independent(&self) -> bool {
        self.outcomes().len() == 1
    }
}

/// Breadth-first search over all `→_D` steps from the full game,
/// memoized on restrictions. Frontier restrictions are evaluated
/// concurrently under [`Execution::Parallel`]; the result does not depend
/// on the execution mode.
pub fn explore(rel: &DominanceRelation, game: &Arc<Game>, budget: usize, exec: Execution) -> Result<Exploration> {
    rel.check_supported(game.players())?;
    let full = Restriction::full(game);
    let mut seen: HashSet<Vec<Vec<usize>>> = HashSet::from([full.kept_sets().to_vec()]);
    let mut frontier = vec![full];
    let mut nodes = Vec::new();

    while !frontier.is_empty() {
        let sets = par::try_map(exec, &frontier, |r| dominated_set(rel, r))?;
        let mut next = Vec::new();
        for (r, set) in frontier.into_iter().zip(sets) {
            let dominated: Vec<Strategy> = set.strategies().collect();
            if dominated.len() > MAX_SUBSET_BRANCHING {
                return Err(Error::unsupported(format!(
                    "{} dominated strategies give too many subsets to enumerate",
                    dominated.len()
                )));
            }
            for mask in 1u64..(1 << dominated.len()) {
                let removed: Vec<Strategy> =
                    dominated.iter().enumerate().filter(|&(k, _)| mask >> k & 1 == 1).map(|(_, s)| *s).collect();
                let child = r.without(&removed)?;
                if seen.insert(child.kept_sets().to_vec()) {
                    next.push(child);
                }
            }
            nodes.push(ExploredNode { restriction: r, dominated });
            if seen.len() > budget {
                let mut partial: Vec<Vec<Vec<usize>>> = nodes
                    .iter()
                    .filter(|n| n.dominated.is_empty())
                    .map(|n| n.restriction.kept_sets().to_vec())
                    .collect();
                partial.sort();
                return Err(Error::BudgetExceeded { limit: budget, explored: seen.len(), partial });
            }
        }
        next.sort_by(|a, b| a.kept_sets().cmp(b.kept_sets()));
        frontier = next;
    }
    nodes.sort_by(|a, b| a.restriction.kept_sets().cmp(b.restriction.kept_sets()));
    Ok(Exploration { nodes })
}

/// The distinct outcomes of all `→_D` iterations from the full game.
/// The relation is order independent on `game` iff there is exactly one.
pub fn all_outcomes(rel: &DominanceRelation, game: &Arc<Game>, budget: usize) -> Result<Vec<Restriction>> {
    Ok(explore(rel, game, budget, Execution::default())?.outcomes())
}
