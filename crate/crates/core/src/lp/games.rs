//! The two linear programs the dominance relations are decided with.

use num_traits::{Signed, Zero};

use super::{solve, Comparator, LinearProgram, LpOutcome};
use crate::error::{Error, Result};
use crate::game::{Belief, BeliefMode, MixedStrategy, Restriction, Strategy};
use crate::rational::{one, Rational};

/// Result of the max-min advantage program: the best guaranteed margin
/// `eps` of a mixture over the pool against `s`, and a mixture attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Advantage {
    pub eps: Rational,
    pub dominator: MixedStrategy,
}

impl Advantage {
    /// Strict domination by a mixed strategy holds iff the margin is positive.
    pub fn dominates(&self) -> bool {
        self.eps.is_positive()
    }
}

fn check_member(r: &Restriction, player: usize, s: usize) -> Result<()> {
    let game = r.game();
    game.check_strategy(Strategy::new(player, s))?;
    if !r.contains(Strategy::new(player, s)) {
        return Err(Error::structural(format!(
            "strategy `{}` of player {} is not in the restriction",
            game.labels(player)[s],
            player + 1
        )));
    }
    Ok(())
}

/// Maximizes, over mixtures `m` of `pool`, the minimum over `R_{-i}` of
/// `p_i(m, s_{-i}) - p_i(s, s_{-i})`.
///
/// `pool` is `R_i \ {s}` for the local relation and `G_i \ {s}` for the
/// global one; it may not contain `s`.
pub fn max_min_advantage(r: &Restriction, player: usize, s: usize, pool: &[usize]) -> Result<Advantage> {
    check_member(r, player, s)?;
    let game = r.game();
    if pool.is_empty() {
        return Err(Error::structural("empty dominator pool"));
    }
    for &k in pool {
        game.check_strategy(Strategy::new(player, k))?;
    }
    if pool.contains(&s) {
        return Err(Error::structural("dominator pool contains the dominated strategy"));
    }

    // Variables: one weight per pool strategy, then the free margin.
    let k = pool.len();
    let mut lp = LinearProgram::new(k + 1);
    lp.nonneg[k] = false;
    lp.objective[k] = one();
    for opp in r.opponent_joints(player) {
        let base = game.payoff_vs(player, s, &opp);
        let mut row: Vec<Rational> = pool.iter().map(|&t| game.payoff_vs(player, t, &opp) - base).collect();
        row.push(-one());
        lp.add(row, Comparator::Ge, Rational::zero());
    }
    let mut simplex = vec![one(); k];
    simplex.push(Rational::zero());
    lp.add(simplex, Comparator::Eq, one());

    match solve(&lp)? {
        LpOutcome::Optimal { value, solution } => {
            let dominator = MixedStrategy::new(player, pool.iter().copied().zip(solution))?;
            Ok(Advantage { eps: value, dominator })
        }
        other => unreachable!("max-min advantage program is feasible and bounded, got {other:?}"),
    }
}

/// Looks for a belief in `B_i(R)` against which `s` is a best response
/// among `R_i`. `None` means `s` is a never best response.
pub fn best_response_feasible(r: &Restriction, player: usize, s: usize, mode: BeliefMode) -> Result<Option<Belief>> {
    best_response_feasible_against(r, player, s, mode, r.kept(player))
}

/// As [`best_response_feasible`], comparing `s` against `rivals` (for the
/// global relation, all of `G_i`) instead of `R_i`.
pub fn best_response_feasible_against(
    r: &Restriction,
    player: usize,
    s: usize,
    mode: BeliefMode,
    rivals: &[usize],
) -> Result<Option<Belief>> {
    check_member(r, player, s)?;
    let game = r.game();
    for &k in rivals {
        game.check_strategy(Strategy::new(player, k))?;
    }
    if mode == BeliefMode::MixedIndependent && game.players() > 2 {
        return Err(Error::unsupported(format!(
            "never-best-response under independent mixed beliefs needs 2 players, game has {}",
            game.players()
        )));
    }
    let opponents = r.opponent_joints(player);
    let rivals: Vec<usize> = rivals.iter().copied().filter(|&k| k != s).collect();

    if mode == BeliefMode::Pure {
        let witness = opponents.into_iter().find(|opp| {
            let own = game.payoff_vs(player, s, opp);
            rivals.iter().all(|&k| own >= game.payoff_vs(player, k, opp))
        });
        return Ok(witness.map(Belief::JointPure));
    }

    if rivals.is_empty() {
        let first = opponents.into_iter().next().expect("opponent strategy sets are nonempty");
        let point = std::iter::once((first, one()));
        return Ok(Some(distribution_belief(r, player, mode, point)?));
    }

    // Maximize the margin by which `s` beats every rival; the belief is a
    // best response iff the optimum is nonnegative.
    let m = opponents.len();
    let mut lp = LinearProgram::new(m + 1);
    lp.nonneg[m] = false;
    lp.objective[m] = one();
    for &k in &rivals {
        let mut row: Vec<Rational> =
            opponents.iter().map(|opp| game.payoff_vs(player, s, opp) - game.payoff_vs(player, k, opp)).collect();
        row.push(-one());
        lp.add(row, Comparator::Ge, Rational::zero());
    }
    let mut simplex = vec![one(); m];
    simplex.push(Rational::zero());
    lp.add(simplex, Comparator::Eq, one());

    let mut solution = match solve(&lp)? {
        LpOutcome::Optimal { value, solution } if !value.is_negative() => solution,
        LpOutcome::Optimal { .. } => return Ok(None),
        other => unreachable!("best-response margin program is feasible and bounded, got {other:?}"),
    };
    solution.truncate(m);
    Ok(Some(distribution_belief(r, player, mode, opponents.into_iter().zip(solution))?))
}

fn distribution_belief(
    r: &Restriction,
    player: usize,
    mode: BeliefMode,
    dist: impl Iterator<Item = (Vec<usize>, Rational)>,
) -> Result<Belief> {
    match mode {
        BeliefMode::Pure => {
            let (opp, _) = dist.into_iter().find(|(_, p)| p.is_positive()).expect("distribution has support");
            Ok(Belief::JointPure(opp))
        }
        BeliefMode::Correlated => Belief::correlated(dist),
        BeliefMode::MixedIndependent => {
            let opponent = (0..r.players()).find(|&j| j != player).expect("two players");
            Ok(Belief::MixedProfile(vec![MixedStrategy::new(opponent, dist.map(|(o, p)| (o[0], p)))?]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::{int, ratio};

    #[test]
    fn mixed_advantage_on_fixtures() {
        let mix = Restriction::full(&fixtures::mixed_dominance());
        let adv = max_min_advantage(&mix, 0, 1, &[0, 2]).unwrap();
        assert_eq!(adv.eps, ratio(1, 2));
        assert_eq!(adv.dominator, MixedStrategy::new(0, [(0, ratio(1, 2)), (2, ratio(1, 2))]).unwrap());

        let pd = Restriction::full(&fixtures::prisoners_dilemma());
        let adv = max_min_advantage(&pd, 0, 0, &[1]).unwrap();
        assert_eq!(adv.eps, int(1));
        assert_eq!(adv.dominator, MixedStrategy::pure(0, 1));

        let belief = Restriction::full(&fixtures::belief_game());
        let adv = max_min_advantage(&belief, 0, 1, &[0, 2]).unwrap();
        assert!(!adv.dominates());
    }

    #[test]
    fn advantage_rejects_bad_pools() {
        let pd = Restriction::full(&fixtures::prisoners_dilemma());
        assert!(matches!(max_min_advantage(&pd, 0, 0, &[]), Err(Error::Structural(_))));
        assert!(matches!(max_min_advantage(&pd, 0, 0, &[0, 1]), Err(Error::Structural(_))));
        assert!(matches!(max_min_advantage(&pd, 0, 0, &[7]), Err(Error::Structural(_))));
    }

    #[test]
    fn best_responses_on_belief_game() {
        let r = Restriction::full(&fixtures::belief_game());
        assert_eq!(best_response_feasible(&r, 0, 1, BeliefMode::Pure).unwrap(), None);
        let witness = best_response_feasible(&r, 0, 1, BeliefMode::Correlated).unwrap().unwrap();
        let expected = Belief::correlated([(vec![0], ratio(1, 2)), (vec![1], ratio(1, 2))]).unwrap();
        assert_eq!(witness, expected);
        let g = r.game();
        let own = g.expected_payoff(0, 1, &witness).unwrap();
        for k in 0..3 {
            assert!(own >= g.expected_payoff(0, k, &witness).unwrap());
        }
        let mixed = best_response_feasible(&r, 0, 1, BeliefMode::MixedIndependent).unwrap().unwrap();
        assert_eq!(g.expected_payoff(0, 1, &mixed).unwrap(), int(2));
    }

    #[test]
    fn dominated_strategy_has_no_best_response() {
        let r = Restriction::full(&fixtures::prisoners_dilemma());
        assert_eq!(best_response_feasible(&r, 0, 0, BeliefMode::Correlated).unwrap(), None);
        assert_eq!(best_response_feasible(&r, 0, 0, BeliefMode::Pure).unwrap(), None);
        assert!(best_response_feasible(&r, 0, 1, BeliefMode::Pure).unwrap().is_some());
    }

    #[test]
    fn independent_mixed_beliefs_need_two_players() {
        let g = fixtures::three_player_coordination();
        let r = Restriction::full(&g);
        assert!(matches!(
            best_response_feasible(&r, 0, 0, BeliefMode::MixedIndependent),
            Err(Error::UnsupportedConfiguration(_))
        ));
    }
}
