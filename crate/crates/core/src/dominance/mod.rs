//! Dominance relations as unary relations on restrictions.
//!
//! A relation assigns to every restriction `R` the set `D_R` of strategies
//! it considers dominated there. Each member of `D_R` comes with a
//! certificate that can be re-checked against the payoffs with exact
//! arithmetic.

mod certificate;
mod inherent;
mod persistence;

use std::fmt;

pub use certificate::{verify_certificate, DominanceCertificate, NeverBestEvidence, SubsetDominator};
pub use inherent::{is_inherently_dominated, is_inherently_dominated_with_cap, INHERENT_CAP};
pub use persistence::{persist_dominator, renormalize_without, substitute};

use crate::error::{Error, Result};
use crate::game::{BeliefMode, Restriction, Strategy};
use crate::lp::{best_response_feasible_against, max_min_advantage};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DominanceRelation {
    /// Strictly dominated by a pure strategy of the restriction.
    StrictPure,
    /// Strictly dominated, on the restriction's opponent profiles, by a
    /// pure strategy of the initial game.
    GlobalStrictPure,
    /// Strictly dominated by a mixed strategy of the restriction.
    StrictMixed,
    /// Strictly dominated by a mixed strategy of the initial game.
    GlobalStrictMixed,
    /// Not a best response, among the restriction's strategies, to any
    /// belief over the restriction.
    NeverBestResponse(BeliefMode),
    /// Not a best response, among the initial game's strategies, to any
    /// belief over the restriction.
    GlobalNeverBestResponse(BeliefMode),
    /// Weakly dominated by a pure strategy of the restriction on every
    /// nonempty set of opponent profiles.
    Inherent,
    /// Dominated under every part.
    Intersection(Vec<DominanceRelation>),
}

impl DominanceRelation {
    pub const NAMES: [&'static str; 7] =
        ["strict-pure", "global-strict-pure", "strict-mixed", "global-strict-mixed", "nbr", "global-nbr", "inherent"];

    /// Parses a relation name, or a comma-joined list of names for an
    /// intersection. `beliefs` applies to every never-best-response part.
    pub fn parse(names: &str, beliefs: BeliefMode) -> Result<Self> {
        let mut parts = names
            .split(',')
            .map(|name| match name.trim() {
                "strict-pure" => Ok(DominanceRelation::StrictPure),
                "global-strict-pure" => Ok(DominanceRelation::GlobalStrictPure),
                "strict-mixed" => Ok(DominanceRelation::StrictMixed),
                "global-strict-mixed" => Ok(DominanceRelation::GlobalStrictMixed),
                "nbr" => Ok(DominanceRelation::NeverBestResponse(beliefs)),
                "global-nbr" => Ok(DominanceRelation::GlobalNeverBestResponse(beliefs)),
                "inherent" => Ok(DominanceRelation::Inherent),
                other => Err(Error::structural(format!("unknown dominance relation `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(if parts.len() == 1 { parts.pop().expect("one part") } else { DominanceRelation::Intersection(parts) })
    }

    /// The relation's name in the CLI vocabulary.
    pub fn name(&self) -> String {
        match self {
            DominanceRelation::StrictPure => "strict-pure".into(),
            DominanceRelation::GlobalStrictPure => "global-strict-pure".into(),
            DominanceRelation::StrictMixed => "strict-mixed".into(),
            DominanceRelation::GlobalStrictMixed => "global-strict-mixed".into(),
            DominanceRelation::NeverBestResponse(_) => "nbr".into(),
            DominanceRelation::GlobalNeverBestResponse(_) => "global-nbr".into(),
            DominanceRelation::Inherent => "inherent".into(),
            DominanceRelation::Intersection(parts) => {
                parts.iter().map(DominanceRelation::name).collect::<Vec<_>>().join(",")
            }
        }
    }

    /// The belief mode of the first never-best-response part, if any.
    pub fn belief_mode(&self) -> Option<BeliefMode> {
        match self {
            DominanceRelation::NeverBestResponse(m) | DominanceRelation::GlobalNeverBestResponse(m) => Some(*m),
            DominanceRelation::Intersection(parts) => parts.iter().find_map(DominanceRelation::belief_mode),
            _ => None,
        }
    }

    /// Whether comparisons draw on the initial game rather than the
    /// restriction. Such relations are monotonic.
    pub fn is_global(&self) -> bool {
        match self {
            DominanceRelation::GlobalStrictPure
            | DominanceRelation::GlobalStrictMixed
            | DominanceRelation::GlobalNeverBestResponse(_) => true,
            DominanceRelation::Intersection(parts) => parts.iter().all(DominanceRelation::is_global),
            _ => false,
        }
    }

    /// Rejects configurations without an exact decision procedure for
    /// games with `players` players.
    pub fn check_supported(&self, players: usize) -> Result<()> {
        match self {
            DominanceRelation::NeverBestResponse(BeliefMode::MixedIndependent)
            | DominanceRelation::GlobalNeverBestResponse(BeliefMode::MixedIndependent)
                if players > 2 =>
            {
                Err(Error::unsupported(format!(
                    "never-best-response under independent mixed beliefs needs 2 players, game has {players}"
                )))
            }
            DominanceRelation::Intersection(parts) => {
                if parts.is_empty() {
                    return Err(Error::structural("intersection of no relations"));
                }
                parts.iter().try_for_each(|p| p.check_supported(players))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for DominanceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())?;
        if let Some(mode) = self.belief_mode() {
            write!(f, " ({} beliefs)", mode.name())?;
        }
        Ok(())
    }
}

/// `D_R` in canonical `(player, index)` order, with certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatedSet {
    pub entries: Vec<(Strategy, DominanceCertificate)>,
}

impl DominatedSet {
    pub fn strategies(&self) -> impl Iterator<Item = Strategy> + '_ {
        self.entries.iter().map(|(s, _)| *s)
    }

    pub fn contains(&self, s: Strategy) -> bool {
        self.entries.binary_search_by(|(t, _)| t.cmp(&s)).is_ok()
    }

    pub fn certificate(&self, s: Strategy) -> Option<&DominanceCertificate> {
        let k = self.entries.binary_search_by(|(t, _)| t.cmp(&s)).ok()?;
        Some(&self.entries[k].1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `D_R ⊆ other`, by strategy.
    pub fn is_subset_of(&self, other: &DominatedSet) -> bool {
        self.strategies().all(|s| other.contains(s))
    }
}

/// `p_i(s_dom, ·) > p_i(s, ·)` on all of `R_{-i}`.
pub fn strictly_dominates_pure(r: &Restriction, player: usize, s_dom: usize, s: usize) -> Result<bool> {
    let game = r.game();
    game.check_strategy(Strategy::new(player, s_dom))?;
    game.check_strategy(Strategy::new(player, s))?;
    Ok(r.opponent_joints(player).iter().all(|opp| game.payoff_vs(player, s_dom, opp) > game.payoff_vs(player, s, opp)))
}

/// `p_i(s_dom, ·) ≥ p_i(s, ·)` on all of `opp_subset`, strictly somewhere.
/// `opp_subset` is any nonempty set of opponent profiles from `R_{-i}`.
pub fn weakly_dominates_pure(
    r: &Restriction,
    player: usize,
    s_dom: usize,
    s: usize,
    opp_subset: &[Vec<usize>],
) -> Result<bool> {
    let game = r.game();
    for k in [s_dom, s] {
        if !r.contains(Strategy::new(player, k)) {
            game.check_strategy(Strategy::new(player, k))?;
            return Err(Error::structural(format!("strategy {k} of player {} not in restriction", player + 1)));
        }
    }
    if opp_subset.is_empty() {
        return Err(Error::structural("empty set of opponent profiles"));
    }
    let opponents: Vec<usize> = (0..r.players()).filter(|&j| j != player).collect();
    for opp in opp_subset {
        let inside =
            opp.len() == opponents.len() && opponents.iter().zip(opp).all(|(&j, &k)| r.contains(Strategy::new(j, k)));
        if !inside {
            return Err(Error::structural(format!("opponent profile {opp:?} outside the restriction")));
        }
    }
    let mut strict = false;
    for opp in opp_subset {
        let (a, b) = (game.payoff_vs(player, s_dom, opp), game.payoff_vs(player, s, opp));
        if a < b {
            return Ok(false);
        }
        strict |= a > b;
    }
    Ok(strict)
}

/// Decides whether `s` is `rel`-dominated in `r`, returning a certificate
/// when it is.
pub fn dominance_certificate(
    rel: &DominanceRelation,
    r: &Restriction,
    s: Strategy,
) -> Result<Option<DominanceCertificate>> {
    let game = r.game();
    game.check_strategy(s)?;
    if !r.contains(s) {
        return Err(Error::structural(format!(
            "strategy `{}` of player {} not in the restriction",
            game.label(s),
            s.player + 1
        )));
    }
    rel.check_supported(game.players())?;
    let i = s.player;
    let all: Vec<usize> = (0..game.num_strategies(i)).collect();
    let pool_for = |global: bool| -> Vec<usize> {
        let base = if global { all.as_slice() } else { r.kept(i) };
        base.iter().copied().filter(|&k| k != s.index).collect()
    };

    Ok(match rel {
        DominanceRelation::StrictPure | DominanceRelation::GlobalStrictPure => {
            let pool = pool_for(*rel == DominanceRelation::GlobalStrictPure);
            let opponents = r.opponent_joints(i);
            pool.into_iter()
                .find(|&k| opponents.iter().all(|opp| game.payoff_vs(i, k, opp) > game.payoff_vs(i, s.index, opp)))
                .map(|dominator| DominanceCertificate::PureDominator { dominator })
        }
        DominanceRelation::StrictMixed | DominanceRelation::GlobalStrictMixed => {
            let pool = pool_for(*rel == DominanceRelation::GlobalStrictMixed);
            if pool.is_empty() {
                return Ok(None);
            }
            let adv = max_min_advantage(r, i, s.index, &pool)?;
            adv.dominates().then_some(DominanceCertificate::MixedDominator { dominator: adv.dominator, eps: adv.eps })
        }
        DominanceRelation::NeverBestResponse(mode) | DominanceRelation::GlobalNeverBestResponse(mode) => {
            let rivals = if matches!(rel, DominanceRelation::GlobalNeverBestResponse(_)) {
                all.clone()
            } else {
                r.kept(i).to_vec()
            };
            match best_response_feasible_against(r, i, s.index, *mode, &rivals)? {
                Some(_) => None,
                None => Some(DominanceCertificate::NeverBest(never_best_evidence(r, s, *mode, &rivals))),
            }
        }
        DominanceRelation::Inherent => is_inherently_dominated(r, i, s.index)?,
        DominanceRelation::Intersection(parts) => {
            let mut certs = Vec::with_capacity(parts.len());
            for part in parts {
                match dominance_certificate(part, r, s)? {
                    Some(c) => certs.push(c),
                    None => return Ok(None),
                }
            }
            Some(DominanceCertificate::Intersection(certs))
        }
    })
}

fn never_best_evidence(r: &Restriction, s: Strategy, mode: BeliefMode, rivals: &[usize]) -> NeverBestEvidence {
    let game = r.game();
    match mode {
        BeliefMode::Pure => NeverBestEvidence::PerProfile(
            r.opponent_joints(s.player)
                .into_iter()
                .map(|opp| {
                    let own = game.payoff_vs(s.player, s.index, &opp);
                    let better = *rivals
                        .iter()
                        .find(|&&k| game.payoff_vs(s.player, k, &opp) > own)
                        .expect("a never best response is beaten at every profile");
                    (opp, better)
                })
                .collect(),
        ),
        _ => NeverBestEvidence::NoBestResponseBelief { rivals: rivals.to_vec() },
    }
}

/// `D_R` without the per-player nonemptiness check. Global relations can
/// dominate every strategy of a player in restrictions that are not
/// reachable by elimination, so subset-pair checks need this form.
pub fn raw_dominated_set(rel: &DominanceRelation, r: &Restriction) -> Result<DominatedSet> {
    rel.check_supported(r.players())?;
    let entries = r
        .strategies()
        .filter_map(|s| dominance_certificate(rel, r, s).map(|c| c.map(|c| (s, c))).transpose())
        .collect::<Result<Vec<_>>>()?;
    Ok(DominatedSet { entries })
}

/// `D_R`, requiring that every player keeps at least one undominated
/// strategy.
pub fn dominated_set(rel: &DominanceRelation, r: &Restriction) -> Result<DominatedSet> {
    let set = raw_dominated_set(rel, r)?;
    for i in 0..r.players() {
        if r.kept(i).iter().all(|&k| set.contains(Strategy::new(i, k))) {
            return Err(Error::AssumptionViolated { player: i });
        }
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::game::Restriction;

    fn labels(r: &Restriction, set: &DominatedSet) -> Vec<(usize, String)> {
        set.strategies().map(|s| (s.player + 1, r.game().label(s).to_string())).collect()
    }

    fn l(v: &[(usize, &str)]) -> Vec<(usize, String)> {
        v.iter().map(|&(p, s)| (p, s.to_string())).collect()
    }

    #[test]
    fn strict_pure_on_prisoners_dilemma() {
        let r = Restriction::full(&fixtures::prisoners_dilemma());
        assert!(strictly_dominates_pure(&r, 0, 1, 0).unwrap());
        assert!(!strictly_dominates_pure(&r, 0, 0, 1).unwrap());
        assert!(!strictly_dominates_pure(&r, 0, 0, 0).unwrap());
        let set = dominated_set(&DominanceRelation::StrictPure, &r).unwrap();
        assert_eq!(labels(&r, &set), l(&[(1, "C"), (2, "C")]));
    }

    #[test]
    fn local_versus_global_pure() {
        let pd = fixtures::prisoners_dilemma();
        let r = Restriction::from_labels(&pd, &[&["C"], &["C", "D"]]).unwrap();
        let local = dominated_set(&DominanceRelation::StrictPure, &r).unwrap();
        assert_eq!(labels(&r, &local), l(&[(2, "C")]));
        let global = raw_dominated_set(&DominanceRelation::GlobalStrictPure, &r).unwrap();
        assert_eq!(labels(&r, &global), l(&[(1, "C"), (2, "C")]));
        assert!(matches!(
            dominated_set(&DominanceRelation::GlobalStrictPure, &r),
            Err(Error::AssumptionViolated { player: 0 })
        ));
    }

    #[test]
    fn mixed_versus_pure_on_mixed_fixture() {
        let r = Restriction::full(&fixtures::mixed_dominance());
        let mixed = dominated_set(&DominanceRelation::StrictMixed, &r).unwrap();
        assert_eq!(labels(&r, &mixed), l(&[(1, "M")]));
        assert!(dominated_set(&DominanceRelation::StrictPure, &r).unwrap().is_empty());
    }

    #[test]
    fn never_best_response_depends_on_beliefs() {
        let r = Restriction::full(&fixtures::belief_game());
        let pure = dominated_set(&DominanceRelation::NeverBestResponse(BeliefMode::Pure), &r).unwrap();
        assert_eq!(labels(&r, &pure), l(&[(1, "M")]));
        let corr = dominated_set(&DominanceRelation::NeverBestResponse(BeliefMode::Correlated), &r).unwrap();
        assert!(corr.is_empty());
        let both = DominanceRelation::Intersection(vec![
            DominanceRelation::StrictPure,
            DominanceRelation::NeverBestResponse(BeliefMode::Pure),
        ]);
        assert!(dominated_set(&both, &r).unwrap().is_empty());
    }

    #[test]
    fn weak_dominance_on_subsets() {
        let pd = Restriction::full(&fixtures::prisoners_dilemma());
        assert!(weakly_dominates_pure(&pd, 0, 1, 0, &[vec![0], vec![1]]).unwrap());
        assert!(!weakly_dominates_pure(&pd, 0, 0, 0, &[vec![0], vec![1]]).unwrap());
        let mix = Restriction::full(&fixtures::mixed_dominance());
        assert!(weakly_dominates_pure(&mix, 0, 0, 1, &[vec![0]]).unwrap());
        assert!(matches!(weakly_dominates_pure(&mix, 0, 0, 1, &[]), Err(Error::Structural(_))));
    }

    #[test]
    fn relation_names_round_trip() {
        for name in DominanceRelation::NAMES {
            let rel = DominanceRelation::parse(name, BeliefMode::Correlated).unwrap();
            assert_eq!(rel.name(), name);
        }
        let both = DominanceRelation::parse("strict-pure,inherent", BeliefMode::Pure).unwrap();
        assert_eq!(
            both,
            DominanceRelation::Intersection(vec![DominanceRelation::StrictPure, DominanceRelation::Inherent])
        );
        assert!(DominanceRelation::parse("weak", BeliefMode::Pure).is_err());
    }

    #[test]
    fn unsupported_beliefs_for_three_players() {
        let r = Restriction::full(&fixtures::three_player_coordination());
        let rel = DominanceRelation::NeverBestResponse(BeliefMode::MixedIndependent);
        assert!(matches!(dominated_set(&rel, &r), Err(Error::UnsupportedConfiguration(_))));
    }

    #[test]
    fn certificates_verify_on_fixtures() {
        let rels = [
            DominanceRelation::StrictPure,
            DominanceRelation::GlobalStrictPure,
            DominanceRelation::StrictMixed,
            DominanceRelation::GlobalStrictMixed,
            DominanceRelation::NeverBestResponse(BeliefMode::Pure),
            DominanceRelation::NeverBestResponse(BeliefMode::Correlated),
            DominanceRelation::GlobalNeverBestResponse(BeliefMode::MixedIndependent),
            DominanceRelation::Inherent,
        ];
        for g in fixtures::all() {
            let r = Restriction::full(&g);
            for rel in &rels {
                for (s, cert) in dominated_set(rel, &r).unwrap().entries {
                    assert!(verify_certificate(rel, &r, s, &cert).unwrap(), "{rel} {s:?}");
                }
            }
        }
    }
}
