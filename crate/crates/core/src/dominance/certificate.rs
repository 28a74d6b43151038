use num_traits::Signed;

use super::DominanceRelation;
use crate::error::Result;
use crate::game::{BeliefMode, MixedStrategy, Restriction, Strategy};
use crate::lp::best_response_feasible_against;
use crate::rational::Rational;

/// Evidence that a strategy is dominated under one relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DominanceCertificate {
    PureDominator {
        dominator: usize,
    },
    MixedDominator {
        dominator: MixedStrategy,
        eps: Rational,
    },
    NeverBest(NeverBestEvidence),
    /// One weak dominator per nonempty subset of `R_{-i}`.
    Inherent(Vec<SubsetDominator>),
    /// One certificate per part, in order.
    Intersection(Vec<DominanceCertificate>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NeverBestEvidence {
    /// Pure beliefs: for every opponent profile, a strictly better rival.
    PerProfile(Vec<(Vec<usize>, usize)>),
    /// Mixed or correlated beliefs: the best-response program over these
    /// rivals has no solution.
    NoBestResponseBelief { rivals: Vec<usize> },
}

/// `dominator` weakly dominates on the opponent profiles selected by the
/// bits of `subset` (bit `j` is the `j`-th profile of `R_{-i}` in odometer
/// order).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetDominator {
    pub subset: u64,
    pub dominator: usize,
}

/// Re-checks `cert` against the definition of `rel` at `r` by direct
/// substitution into the payoffs.
pub fn verify_certificate(
    rel: &DominanceRelation,
    r: &Restriction,
    s: Strategy,
    cert: &DominanceCertificate,
) -> Result<bool> {
    let game = r.game();
    game.check_strategy(s)?;
    if !r.contains(s) {
        return Ok(false);
    }
    let i = s.player;
    let opponents = r.opponent_joints(i);
    let in_pool = |k: usize, global: bool| k != s.index && (global || r.contains(Strategy::new(i, k)));
    let own = |opp: &[usize]| game.payoff_vs(i, s.index, opp).clone();

    Ok(match (rel, cert) {
        (
            DominanceRelation::StrictPure | DominanceRelation::GlobalStrictPure,
            DominanceCertificate::PureDominator { dominator },
        ) => {
            *dominator < game.num_strategies(i)
                && in_pool(*dominator, *rel == DominanceRelation::GlobalStrictPure)
                && opponents.iter().all(|o| *game.payoff_vs(i, *dominator, o) > own(o))
        }
        (
            DominanceRelation::StrictMixed | DominanceRelation::GlobalStrictMixed,
            DominanceCertificate::MixedDominator { dominator, eps },
        ) => {
            let global = *rel == DominanceRelation::GlobalStrictMixed;
            dominator.player == i
                && dominator.check_for(game).is_ok()
                && dominator.support().all(|k| in_pool(k, global))
                && eps.is_positive()
                && opponents.iter().all(|o| game.mixed_payoff_vs(dominator, o) - own(o) >= *eps)
        }
        (
            DominanceRelation::NeverBestResponse(mode) | DominanceRelation::GlobalNeverBestResponse(mode),
            DominanceCertificate::NeverBest(evidence),
        ) => {
            let global = matches!(rel, DominanceRelation::GlobalNeverBestResponse(_));
            let rivals: Vec<usize> = if global { (0..game.num_strategies(i)).collect() } else { r.kept(i).to_vec() };
            match (mode, evidence) {
                (BeliefMode::Pure, NeverBestEvidence::PerProfile(entries)) => {
                    entries.len() == opponents.len()
                        && entries.iter().zip(&opponents).all(|((opp, better), expected)| {
                            opp == expected && rivals.contains(better) && *game.payoff_vs(i, *better, opp) > own(opp)
                        })
                }
                (BeliefMode::Pure, _) => false,
                (_, NeverBestEvidence::NoBestResponseBelief { rivals: claimed }) => {
                    *claimed == rivals && best_response_feasible_against(r, i, s.index, *mode, &rivals)?.is_none()
                }
                _ => false,
            }
        }
        (DominanceRelation::Inherent, DominanceCertificate::Inherent(entries)) => {
            let k = opponents.len();
            if k >= 64 || entries.len() as u64 != (1u64 << k) - 1 {
                return Ok(false);
            }
            entries.iter().enumerate().all(|(n, e)| {
                e.subset == n as u64 + 1 && e.dominator != s.index && r.contains(Strategy::new(i, e.dominator)) && {
                    let mut strict = false;
                    let mut weak = true;
                    for (j, o) in opponents.iter().enumerate() {
                        if e.subset >> j & 1 == 1 {
                            let d = game.payoff_vs(i, e.dominator, o);
                            let base = own(o);
                            weak &= *d >= base;
                            strict |= *d > base;
                        }
                    }
                    weak && strict
                }
            })
        }
        (DominanceRelation::Intersection(parts), DominanceCertificate::Intersection(certs)) => {
            if parts.len() != certs.len() {
                return Ok(false);
            }
            for (p, c) in parts.iter().zip(certs) {
                if !verify_certificate(p, r, s, c)? {
                    return Ok(false);
                }
            }
            true
        }
        _ => false,
    })
}
