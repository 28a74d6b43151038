use super::{DominanceCertificate, SubsetDominator};
use crate::error::{Error, Result};
use crate::game::{Restriction, Strategy};

/// Default cap on `|R_{-i}|` for the inherent-dominance subset scan.
pub const INHERENT_CAP: usize = 16;

/// Inherent dominance with the default cap.
pub fn is_inherently_dominated(r: &Restriction, player: usize, s: usize) -> Result<Option<DominanceCertificate>> {
    is_inherently_dominated_with_cap(r, player, s, INHERENT_CAP)
}

/// True (with one weak dominator per subset) when, for every nonempty set
/// of opponent profiles `S ⊆ R_{-i}`, some pure `s' ∈ R_i` is at least as
/// good as `s` on all of `S` and strictly better somewhere in it.
///
/// Subsets are scanned as bitmasks over `R_{-i}` in odometer order.
pub fn is_inherently_dominated_with_cap(
    r: &Restriction,
    player: usize,
    s: usize,
    cap: usize,
) -> Result<Option<DominanceCertificate>> {
    let game = r.game();
    game.check_strategy(Strategy::new(player, s))?;
    if !r.contains(Strategy::new(player, s)) {
        return Err(Error::structural(format!("strategy {s} of player {} not in restriction", player + 1)));
    }
    let opponents = r.opponent_joints(player);
    let k = opponents.len();
    if k > cap.min(63) {
        return Err(Error::unsupported(format!(
            "inherent dominance over {k} opponent profiles exceeds the cap of {cap}"
        )));
    }

    // Per rival: profiles where it is at least as good, and strictly better.
    let rivals: Vec<(usize, u64, u64)> = r
        .kept(player)
        .iter()
        .filter(|&&t| t != s)
        .map(|&t| {
            let (mut weak, mut strict) = (0u64, 0u64);
            for (j, opp) in opponents.iter().enumerate() {
                let (a, b) = (game.payoff_vs(player, t, opp), game.payoff_vs(player, s, opp));
                if a >= b {
                    weak |= 1 << j;
                }
                if a > b {
                    strict |= 1 << j;
                }
            }
            (t, weak, strict)
        })
        .collect();

    let mut evidence = Vec::with_capacity((1usize << k) - 1);
    for subset in 1..(1u64 << k) {
        let found = rivals.iter().find(|&&(_, weak, strict)| subset & !weak == 0 && subset & strict != 0);
        match found {
            Some(&(dominator, _, _)) => evidence.push(SubsetDominator { subset, dominator }),
            None => return Ok(None),
        }
    }
    Ok(Some(DominanceCertificate::Inherent(evidence)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::Game;
    use crate::rational::int;
    use std::sync::Arc;

    #[test]
    fn fixture_cases() {
        let pd = Restriction::full(&fixtures::prisoners_dilemma());
        assert!(is_inherently_dominated(&pd, 0, 0).unwrap().is_some());
        let belief = Restriction::full(&fixtures::belief_game());
        assert!(is_inherently_dominated(&belief, 0, 1).unwrap().is_none());
        let one = Restriction::full(&fixtures::one_by_one());
        assert!(is_inherently_dominated(&one, 0, 0).unwrap().is_none());
        assert!(is_inherently_dominated(&one, 1, 0).unwrap().is_none());
    }

    #[test]
    fn weak_but_not_strict_dominance_on_singletons_fails() {
        // B weakly dominates A, but only ties it on the subset {L}.
        let g = Game::new(
            vec![vec!["A".into(), "B".into()], vec!["L".into(), "R".into()]],
            vec![vec![int(1), int(0)], vec![int(0), int(0)], vec![int(1), int(0)], vec![int(1), int(0)]],
        )
        .unwrap();
        let r = Restriction::full(&Arc::new(g));
        assert!(is_inherently_dominated(&r, 0, 0).unwrap().is_none());
    }

    #[test]
    fn cap_is_enforced() {
        let g = fixtures::three_player_coordination();
        let r = Restriction::full(&g);
        assert!(matches!(is_inherently_dominated_with_cap(&r, 0, 0, 3), Err(Error::UnsupportedConfiguration(_))));
        assert!(is_inherently_dominated_with_cap(&r, 0, 0, 4).is_ok());
    }
}
