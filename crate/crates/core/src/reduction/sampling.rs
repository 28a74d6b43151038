//! Randomized and exhaustive drivers for the property checks, shared by
//! the CLI and the acceptance suite.
//!
//! Step samples come from random walks: starting at the full game, each
//! step removes a uniformly random nonempty subset of `D_R`, until an
//! outcome is reached; then the walk restarts. Every game gets its own
//! generator stream, so results do not depend on the execution mode.

use std::sync::Arc;

use rand::Rng;

use super::{checks, explore, ExploredNode};
use crate::dominance::{dominated_set, persist_dominator, raw_dominated_set, DominanceCertificate, DominanceRelation};
use crate::error::Result;
use crate::game::{Game, MixedStrategy, Restriction, Strategy};
use crate::par::{self, Execution};
use crate::random;

/// A property that can be checked on a single step `before → after`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepProperty {
    Hereditary,
    ProofShape,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Index of the game in the checked list.
    pub game: usize,
    pub before: Restriction,
    pub after: Restriction,
    pub witness: Strategy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub checked: usize,
    /// The first violation in game order.
    pub violation: Option<Violation>,
}

impl CheckReport {
    fn merge(parts: Vec<(usize, Option<Violation>)>) -> Self {
        CheckReport { checked: parts.iter().map(|(n, _)| n).sum(), violation: parts.into_iter().find_map(|(_, v)| v) }
    }
}

fn step_witness(
    property: StepProperty,
    before: &Restriction,
    after: &Restriction,
    dominated_before: &[Strategy],
    dominated_after: &[Strategy],
) -> Option<Strategy> {
    match property {
        StepProperty::Hereditary => {
            checks::hereditary_violation(after, dominated_before.iter().copied(), dominated_after)
        }
        StepProperty::ProofShape => checks::proof_shape_violation(before, after, dominated_before, dominated_after),
    }
}

fn random_removal<R: Rng>(rng: &mut R, dominated: &[Strategy]) -> Vec<Strategy> {
    let mask = random::nonempty_subset(rng, dominated.len());
    dominated.iter().enumerate().filter(|&(k, _)| mask >> k & 1 == 1).map(|(_, s)| *s).collect()
}

fn strategies_of(rel: &DominanceRelation, r: &Restriction) -> Result<Vec<Strategy>> {
    Ok(dominated_set(rel, r)?.strategies().collect())
}

/// Checks `property` on at least `samples` random-walk steps, spread evenly
/// over the games where `D_G` is nonempty.
pub fn sample_steps(
    rel: &DominanceRelation,
    games: &[Arc<Game>],
    property: StepProperty,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<CheckReport> {
    let roots = par::try_map(exec, games, |g| strategies_of(rel, &Restriction::full(g)))?;
    let productive: Vec<usize> = (0..games.len()).filter(|&k| !roots[k].is_empty()).collect();
    if productive.is_empty() {
        return Ok(CheckReport { checked: 0, violation: None });
    }
    let quota = samples.div_ceil(productive.len());
    let parts = par::try_map(exec, &productive, |&k| -> Result<(usize, Option<Violation>)> {
        let mut rng = random::rng(seed, k as u64);
        let full = Restriction::full(&games[k]);
        let (mut cur, mut dominated) = (full.clone(), roots[k].clone());
        for n in 0..quota {
            if dominated.is_empty() {
                (cur, dominated) = (full.clone(), roots[k].clone());
            }
            let next = cur.without(&random_removal(&mut rng, &dominated))?;
            let next_dominated = strategies_of(rel, &next)?;
            if let Some(witness) = step_witness(property, &cur, &next, &dominated, &next_dominated) {
                return Ok((n + 1, Some(Violation { game: k, before: cur, after: next, witness })));
            }
            (cur, dominated) = (next, next_dominated);
        }
        Ok((quota, None))
    })?;
    Ok(CheckReport::merge(parts))
}

/// Checks `property` on every `→_D` step between restrictions reachable
/// from each game.
pub fn exhaustive_steps(
    rel: &DominanceRelation,
    games: &[Arc<Game>],
    property: StepProperty,
    budget: usize,
    exec: Execution,
) -> Result<CheckReport> {
    let ids: Vec<usize> = (0..games.len()).collect();
    let parts = par::try_map(exec, &ids, |&k| -> Result<(usize, Option<Violation>)> {
        let nodes = explore(rel, &games[k], budget, Execution::Sequential)?.nodes;
        let lookup = |r: &Restriction| -> &ExploredNode {
            let at = nodes
                .binary_search_by(|n| n.restriction.kept_sets().cmp(r.kept_sets()))
                .expect("successors of explored restrictions are explored");
            &nodes[at]
        };
        let mut checked = 0;
        for node in &nodes {
            let d = &node.dominated;
            for mask in 1u64..(1 << d.len()) {
                let removed: Vec<Strategy> =
                    d.iter().enumerate().filter(|&(j, _)| mask >> j & 1 == 1).map(|(_, s)| *s).collect();
                let after = node.restriction.without(&removed)?;
                checked += 1;
                let after_node = lookup(&after);
                if let Some(witness) = step_witness(property, &node.restriction, &after, d, &after_node.dominated) {
                    return Ok((
                        checked,
                        Some(Violation { game: k, before: node.restriction.clone(), after, witness }),
                    ));
                }
            }
        }
        Ok((checked, None))
    })?;
    Ok(CheckReport::merge(parts))
}

/// Checks monotonicity on `samples` random pairs `R' ⊆ R`, spread evenly
/// over the games. `R` is a uniformly random restriction, `R'` a uniformly
/// random restriction inside it.
pub fn sample_monotonic_pairs(
    rel: &DominanceRelation,
    games: &[Arc<Game>],
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<CheckReport> {
    if games.is_empty() {
        return Ok(CheckReport { checked: 0, violation: None });
    }
    let quota = samples.div_ceil(games.len());
    let ids: Vec<usize> = (0..games.len()).collect();
    let parts = par::try_map(exec, &ids, |&k| -> Result<(usize, Option<Violation>)> {
        let mut rng = random::rng(seed, k as u64);
        for n in 0..quota {
            let r = random::random_restriction(&mut rng, &games[k]);
            let r2 = random::random_subrestriction(&mut rng, &r);
            let outer: Vec<Strategy> = raw_dominated_set(rel, &r)?.strategies().collect();
            let inner: Vec<Strategy> = raw_dominated_set(rel, &r2)?.strategies().collect();
            if let Some(witness) = checks::hereditary_violation(&r2, outer, &inner) {
                return Ok((n + 1, Some(Violation { game: k, before: r, after: r2, witness })));
            }
        }
        Ok((quota, None))
    })?;
    Ok(CheckReport::merge(parts))
}

/// One application of [`persist_dominator`] on a sampled strict-mixed step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceCase {
    pub game: usize,
    pub before: Restriction,
    pub after: Restriction,
    pub strategy: Strategy,
    pub original: MixedStrategy,
    pub persisted: MixedStrategy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceReport {
    /// Steps with at least one surviving mixed-dominated strategy.
    pub steps: usize,
    pub cases: Vec<PersistenceCase>,
}

fn mixed_dominator(cert: &DominanceCertificate) -> MixedStrategy {
    match cert {
        DominanceCertificate::MixedDominator { dominator, .. } => dominator.clone(),
        other => unreachable!("strict-mixed relation produced {other:?}"),
    }
}

/// Samples strict-mixed steps where some surviving strategy was
/// dominated before the step, and moves its dominator into the smaller
/// restriction with [`persist_dominator`]. Walks are capped per game, so
/// games where no such step exists do not stall the search.
pub fn sample_persistence(
    games: &[Arc<Game>],
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<PersistenceReport> {
    if games.is_empty() {
        return Ok(PersistenceReport { steps: 0, cases: Vec::new() });
    }
    let rel = DominanceRelation::StrictMixed;
    let quota = samples.div_ceil(games.len());
    let max_walks = 20 * quota.max(1);
    let ids: Vec<usize> = (0..games.len()).collect();
    let parts = par::try_map(exec, &ids, |&k| -> Result<(usize, Vec<PersistenceCase>)> {
        let mut rng = random::rng(seed, k as u64);
        let full = Restriction::full(&games[k]);
        let (mut steps, mut cases) = (0, Vec::new());
        for _ in 0..max_walks {
            if steps >= quota {
                break;
            }
            let mut cur = full.clone();
            let mut set = dominated_set(&rel, &cur)?;
            while !set.is_empty() && steps < quota {
                let dominated: Vec<Strategy> = set.strategies().collect();
                let removed = random_removal(&mut rng, &dominated);
                let next = cur.without(&removed)?;
                let survivors: Vec<Strategy> = dominated.iter().copied().filter(|s| next.contains(*s)).collect();
                if !survivors.is_empty() {
                    steps += 1;
                }
                for s in survivors {
                    let eliminated: Vec<(usize, MixedStrategy)> = removed
                        .iter()
                        .filter(|t| t.player == s.player)
                        .map(|t| (t.index, mixed_dominator(set.certificate(*t).expect("removed from D_R"))))
                        .collect();
                    let original = mixed_dominator(set.certificate(s).expect("dominated"));
                    let persisted = persist_dominator(&cur, &next, &eliminated, s.player, s.index, &original)?;
                    cases.push(PersistenceCase {
                        game: k,
                        before: cur.clone(),
                        after: next.clone(),
                        strategy: s,
                        original,
                        persisted,
                    });
                }
                set = dominated_set(&rel, &next)?;
                cur = next;
            }
        }
        Ok((steps, cases))
    })?;
    let mut report = PersistenceReport { steps: 0, cases: Vec::new() };
    for (steps, cases) in parts {
        report.steps += steps;
        report.cases.extend(cases);
    }
    Ok(report)
}
