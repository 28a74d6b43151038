use super::ReductionStep;
use crate::dominance::{dominance_certificate, raw_dominated_set, DominanceRelation};
use crate::error::{Error, Result};
use crate::game::{Restriction, Strategy};

/// First strategy of `after` that is in `dominated_before` but missing
/// from `dominated_after`.
pub fn hereditary_violation(
    after: &Restriction,
    dominated_before: impl IntoIterator<Item = Strategy>,
    dominated_after: &[Strategy],
) -> Option<Strategy> {
    dominated_before.into_iter().find(|s| after.contains(*s) && !dominated_after.contains(s))
}

/// Checks hereditarity on one step: every strategy surviving the step that
/// was dominated before it must still be dominated after it.
pub fn check_hereditary_step(rel: &DominanceRelation, step: &ReductionStep) -> Result<Option<Strategy>> {
    let before = raw_dominated_set(rel, &step.before)?;
    for s in before.strategies().filter(|s| step.after.contains(*s)) {
        if dominance_certificate(rel, &step.after, s)?.is_none() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// Checks monotonicity on a pair `r2 ⊆ r`: a strategy of `r2` dominated in
/// `r` must be dominated in `r2`. Returns the first violator.
pub fn check_monotonic_pair(rel: &DominanceRelation, r: &Restriction, r2: &Restriction) -> Result<Option<Strategy>> {
    if !r2.is_subset_of(r)? {
        return Err(Error::structural("monotonicity check needs the second restriction inside the first"));
    }
    let outer = raw_dominated_set(rel, r)?;
    for s in outer.strategies().filter(|s| r2.contains(*s)) {
        if dominance_certificate(rel, r2, s)?.is_none() {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

/// With `R″ = before \ D_before`, a step `before → after` must satisfy
/// `after = R″` or `after →_D R″`. Returns a strategy of `after \ R″` not
/// dominated in `after`, or, if `R″ ⊄ after`, a strategy of `R″` missing
/// from `after`.
pub fn proof_shape_violation(
    before: &Restriction,
    after: &Restriction,
    dominated_before: &[Strategy],
    dominated_after: &[Strategy],
) -> Option<Strategy> {
    // R″ ⊆ after: nothing outside D_before may have been removed.
    if let Some(s) = before.strategies().find(|s| !dominated_before.contains(s) && !after.contains(*s)) {
        return Some(s);
    }
    after.strategies().filter(|s| dominated_before.contains(s)).find(|s| !dominated_after.contains(s))
}

/// [`proof_shape_violation`] for a step, computing both dominated sets.
pub fn check_proof_shape(rel: &DominanceRelation, step: &ReductionStep) -> Result<Option<Strategy>> {
    let before: Vec<Strategy> = raw_dominated_set(rel, &step.before)?.strategies().collect();
    let after: Vec<Strategy> = raw_dominated_set(rel, &step.after)?.strategies().collect();
    Ok(proof_shape_violation(&step.before, &step.after, &before, &after))
}
