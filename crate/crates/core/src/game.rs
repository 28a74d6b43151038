//! Finite strategic games, restrictions, mixed strategies and beliefs.
//!
//! Strategies are positional: player `i`'s strategy `k` is the `k`-th label
//! of player `i` in the initial game. Every restriction is a family of
//! subsets of those positions and shares the initial game's payoff tensor.
//!
//! Joint strategies are enumerated in odometer order (the last player's
//! index varies fastest) everywhere in the crate.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A pure strategy of one player, identified by its position in the
/// initial game. Orders by `(player, index)`, the canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Strategy {
    pub player: usize,
    pub index: usize,
}

impl Strategy {
    pub fn new(player: usize, index: usize) -> Self {
        Strategy { player, index }
    }
}

/// The initial game `G`. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    labels: Vec<Vec<String>>,
    strides: Vec<usize>,
    /// Joint-major: entry `joint * n + player`.
    payoffs: Vec<Rational>,
}

impl Game {
    /// Builds a game from per-player labels and one payoff vector (one
    /// entry per player) for each joint strategy, in odometer order.
    pub fn new(labels: Vec<Vec<String>>, payoffs: Vec<Vec<Rational>>) -> Result<Self> {
        let n = labels.len();
        if n < 2 {
            return Err(Error::structural(format!("a game needs at least 2 players, got {n}")));
        }
        for (i, ls) in labels.iter().enumerate() {
            if ls.is_empty() {
                return Err(Error::structural(format!("player {} has no strategies", i + 1)));
            }
            for (k, l) in ls.iter().enumerate() {
                if l.is_empty() || l.chars().any(char::is_whitespace) {
                    return Err(Error::structural(format!("invalid label `{l}` for player {}", i + 1)));
                }
                if ls[..k].contains(l) {
                    return Err(Error::structural(format!("duplicate label `{l}` for player {}", i + 1)));
                }
            }
        }
        let mut strides = vec![1; n];
        for i in (0..n - 1).rev() {
            strides[i] = strides[i + 1] * labels[i + 1].len();
        }
        let joints = strides[0] * labels[0].len();
        if payoffs.len() != joints {
            return Err(Error::structural(format!("expected {joints} payoff vectors, got {}", payoffs.len())));
        }
        let mut flat = Vec::with_capacity(joints * n);
        for (j, row) in payoffs.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::structural(format!(
                    "payoff vector {} has {} entries, expected {n}",
                    j + 1,
                    row.len()
                )));
            }
            flat.extend(row);
        }
        Ok(Game { labels, strides, payoffs: flat })
    }

    /// Builds a game by evaluating `payoff(joint)` for every joint strategy.
    pub fn from_fn(labels: Vec<Vec<String>>, mut payoff: impl FnMut(&[usize]) -> Vec<Rational>) -> Result<Self> {
        let sizes: Vec<usize> = labels.iter().map(Vec::len).collect();
        let sets: Vec<Vec<usize>> = sizes.iter().map(|&k| (0..k).collect()).collect();
        let rows = odometer(&sets).iter().map(|j| payoff(j)).collect();
        Game::new(labels, rows)
    }

    pub fn players(&self) -> usize {
        self.labels.len()
    }

    pub fn num_strategies(&self, player: usize) -> usize {
        self.labels[player].len()
    }

    pub fn num_joints(&self) -> usize {
        self.strides[0] * self.labels[0].len()
    }

    pub fn labels(&self, player: usize) -> &[String] {
        &self.labels[player]
    }

    pub fn label(&self, s: Strategy) -> &str {
        &self.labels[s.player][s.index]
    }

    pub fn strategy_index(&self, player: usize, label: &str) -> Option<usize> {
        self.labels.get(player)?.iter().position(|l| l == label)
    }

    /// All joint strategies of the game in odometer order.
    pub fn joints(&self) -> Vec<Vec<usize>> {
        let sets: Vec<Vec<usize>> = self.labels.iter().map(|l| (0..l.len()).collect()).collect();
        odometer(&sets)
    }

    pub(crate) fn check_player(&self, player: usize) -> Result<()> {
        if player >= self.players() {
            return Err(Error::structural(format!(
                "player index {player} out of range for a {}-player game",
                self.players()
            )));
        }
        Ok(())
    }

    pub(crate) fn check_strategy(&self, s: Strategy) -> Result<()> {
        self.check_player(s.player)?;
        if s.index >= self.num_strategies(s.player) {
            return Err(Error::structural(format!(
                "strategy index {} out of range for player {}",
                s.index,
                s.player + 1
            )));
        }
        Ok(())
    }

    /// Payoff of `player` at a full joint strategy.
    pub fn payoff_pure(&self, player: usize, joint: &[usize]) -> Result<&Rational> {
        self.check_player(player)?;
        if joint.len() != self.players() {
            return Err(Error::structural(format!(
                "joint strategy has {} components, expected {}",
                joint.len(),
                self.players()
            )));
        }
        for (j, &k) in joint.iter().enumerate() {
            if k >= self.num_strategies(j) {
                return Err(Error::structural(format!("strategy index {k} out of range for player {}", j + 1)));
            }
        }
        let idx: usize = joint.iter().zip(&self.strides).map(|(k, s)| k * s).sum();
        Ok(&self.payoffs[idx * self.players() + player])
    }

    /// Payoff of `player` playing `strategy` against the opponents' joint
    /// strategy `opp` (one index per opponent, in player order). Unchecked.
    pub(crate) fn payoff_vs(&self, player: usize, strategy: usize, opp: &[usize]) -> &Rational {
        let mut idx = strategy * self.strides[player];
        let mut o = opp.iter();
        for (j, stride) in self.strides.iter().enumerate() {
            if j != player {
                idx += o.next().expect("opponent profile too short") * stride;
            }
        }
        &self.payoffs[idx * self.players() + player]
    }

    /// Expected payoff of `player` playing pure `strategy` against `belief`.
    pub fn expected_payoff(&self, player: usize, strategy: usize, belief: &Belief) -> Result<Rational> {
        self.check_strategy(Strategy::new(player, strategy))?;
        belief.check_shape(self, player)?;
        Ok(match belief {
            Belief::JointPure(opp) => self.payoff_vs(player, strategy, opp).clone(),
            Belief::Correlated(dist) => dist.iter().map(|(opp, p)| p * self.payoff_vs(player, strategy, opp)).sum(),
            Belief::MixedProfile(profile) => {
                let supports: Vec<Vec<usize>> = profile.iter().map(|m| m.support().collect()).collect();
                odometer(&supports)
                    .iter()
                    .map(|opp| {
                        let prob: Rational = profile.iter().zip(opp).map(|(m, &k)| m.weight(k)).product();
                        prob * self.payoff_vs(player, strategy, opp)
                    })
                    .sum()
            }
        })
    }

    /// Expected payoff of a mixed strategy against a pure opponent profile.
    pub(crate) fn mixed_payoff_vs(&self, m: &MixedStrategy, opp: &[usize]) -> Rational {
        m.iter().map(|(k, w)| w * self.payoff_vs(m.player, k, opp)).sum()
    }
}

/// Enumerates the cartesian product of `sets` in odometer order.
pub fn odometer(sets: &[impl AsRef<[usize]>]) -> Vec<Vec<usize>> {
    if sets.iter().any(|s| s.as_ref().is_empty()) {
        return Vec::new();
    }
    let total: usize = sets.iter().map(|s| s.as_ref().len()).product();
    let mut out = Vec::with_capacity(total);
    let mut pos = vec![0usize; sets.len()];
    loop {
        out.push(pos.iter().zip(sets).map(|(&p, s)| s.as_ref()[p]).collect());
        let mut j = sets.len();
        loop {
            if j == 0 {
                return out;
            }
            j -= 1;
            pos[j] += 1;
            if pos[j] < sets[j].as_ref().len() {
                break;
            }
            pos[j] = 0;
        }
    }
}

/// A restriction `R` of the initial game: a nonempty subset of strategies
/// for every player.
#[derive(Clone)]
pub struct Restriction {
    game: Arc<Game>,
    kept: Vec<Vec<usize>>,
}

impl Restriction {
    pub fn full(game: &Arc<Game>) -> Self {
        let kept = (0..game.players()).map(|i| (0..game.num_strategies(i)).collect()).collect();
        Restriction { game: Arc::clone(game), kept }
    }

    /// Builds a restriction from per-player index sets. Sets are sorted and
    /// deduplicated; each must be nonempty and within range.
    pub fn new(game: &Arc<Game>, mut kept: Vec<Vec<usize>>) -> Result<Self> {
        if kept.len() != game.players() {
            return Err(Error::structural(format!(
                "restriction has {} strategy sets, game has {} players",
                kept.len(),
                game.players()
            )));
        }
        for (i, set) in kept.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() {
                return Err(Error::structural(format!("player {} keeps no strategies", i + 1)));
            }
            if let Some(&k) = set.iter().find(|&&k| k >= game.num_strategies(i)) {
                return Err(Error::structural(format!("strategy index {k} out of range for player {}", i + 1)));
            }
        }
        Ok(Restriction { game: Arc::clone(game), kept })
    }

    /// Builds a restriction from per-player label lists.
    pub fn from_labels(game: &Arc<Game>, labels: &[&[&str]]) -> Result<Self> {
        let kept = labels
            .iter()
            .enumerate()
            .map(|(i, ls)| {
                ls.iter()
                    .map(|l| {
                        game.strategy_index(i, l)
                            .ok_or_else(|| Error::structural(format!("unknown label `{l}` for player {}", i + 1)))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Restriction::new(game, kept)
    }

    pub fn game(&self) -> &Arc<Game> {
        &self.game
    }

    pub fn players(&self) -> usize {
        self.kept.len()
    }

    pub fn kept(&self, player: usize) -> &[usize] {
        &self.kept[player]
    }

    pub fn kept_sets(&self) -> &[Vec<usize>] {
        &self.kept
    }

    pub fn contains(&self, s: Strategy) -> bool {
        self.kept.get(s.player).is_some_and(|set| set.binary_search(&s.index).is_ok())
    }

    /// All kept strategies in canonical order.
    pub fn strategies(&self) -> impl Iterator<Item = Strategy> + '_ {
        self.kept.iter().enumerate().flat_map(|(i, set)| set.iter().map(move |&k| Strategy::new(i, k)))
    }

    pub fn size(&self) -> usize {
        self.kept.iter().map(Vec::len).sum()
    }

    pub fn is_full(&self) -> bool {
        self.kept.iter().enumerate().all(|(i, s)| s.len() == self.game.num_strategies(i))
    }

    /// The restriction with `removed` taken out. Fails if a player would be
    /// left without strategies.
    pub fn without(&self, removed: &[Strategy]) -> Result<Restriction> {
        let mut kept = self.kept.clone();
        for s in removed {
            if let Some(set) = kept.get_mut(s.player) {
                set.retain(|&k| k != s.index);
            }
        }
        if let Some(i) = kept.iter().position(Vec::is_empty) {
            return Err(Error::AssumptionViolated { player: i });
        }
        Ok(Restriction { game: Arc::clone(&self.game), kept })
    }

    /// `R_{-i}` in odometer order, each element one index per opponent.
    pub fn opponent_joints(&self, player: usize) -> Vec<Vec<usize>> {
        let sets: Vec<&[usize]> =
            self.kept.iter().enumerate().filter(|&(j, _)| j != player).map(|(_, s)| s.as_slice()).collect();
        odometer(&sets)
    }

    /// Componentwise inclusion `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Restriction) -> Result<bool> {
        if !self.same_game(other) {
            return Err(Error::structural("restrictions of different initial games"));
        }
        Ok(self.kept.iter().zip(&other.kept).all(|(a, b)| a.iter().all(|k| b.binary_search(k).is_ok())))
    }

    pub fn same_game(&self, other: &Restriction) -> bool {
        Arc::ptr_eq(&self.game, &other.game) || *self.game == *other.game
    }

    /// Labels of kept strategies, per player.
    pub fn kept_labels(&self) -> Vec<Vec<String>> {
        self.kept
            .iter()
            .enumerate()
            .map(|(i, set)| set.iter().map(|&k| self.game.labels(i)[k].clone()).collect())
            .collect()
    }
}

/// `r1 ⊆ r2`.
pub fn restriction_leq(r1: &Restriction, r2: &Restriction) -> Result<bool> {
    r1.is_subset_of(r2)
}

impl PartialEq for Restriction {
    fn eq(&self, other: &Self) -> bool {
        self.kept == other.kept && self.same_game(other)
    }
}

impl Eq for Restriction {}

impl Hash for Restriction {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.kept.hash(state);
    }
}

impl fmt::Debug for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Restriction").field(&self.kept_labels()).finish()
    }
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.kept_labels().iter().map(|ls| format!("{{{}}}", ls.join(","))).collect();
        f.write_str(&parts.join("×"))
    }
}

/// A probability distribution over one player's strategies in the initial
/// game. Only strategies with positive weight are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedStrategy {
    pub player: usize,
    weights: BTreeMap<usize, Rational>,
}

impl MixedStrategy {
    pub fn new(player: usize, weights: impl IntoIterator<Item = (usize, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (k, w) in weights {
            if w.is_negative() {
                return Err(Error::structural(format!("negative weight {w} on strategy {k}")));
            }
            *map.entry(k).or_insert_with(Rational::zero) += w;
        }
        map.retain(|_, w| !w.is_zero());
        let total: Rational = map.values().sum();
        if !total.is_one() {
            return Err(Error::structural(format!("mixed strategy weights sum to {total}, not 1")));
        }
        Ok(MixedStrategy { player, weights: map })
    }

    pub fn pure(player: usize, strategy: usize) -> Self {
        MixedStrategy { player, weights: BTreeMap::from([(strategy, Rational::one())]) }
    }

    /// Skips normalization checks; callers guarantee positive weights
    /// summing to one.
    pub(crate) fn from_positive(player: usize, weights: BTreeMap<usize, Rational>) -> Self {
        debug_assert!(weights.values().all(|w| w.is_positive()));
        debug_assert!(weights.values().sum::<Rational>().is_one());
        MixedStrategy { player, weights }
    }

    pub fn weight(&self, strategy: usize) -> Rational {
        self.weights.get(&strategy).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.weights.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.weights.iter().map(|(&k, w)| (k, w))
    }

    pub fn support_within(&self, set: &[usize]) -> bool {
        self.support().all(|k| set.binary_search(&k).is_ok())
    }

    pub(crate) fn check_for(&self, game: &Game) -> Result<()> {
        game.check_player(self.player)?;
        match self.support().last() {
            Some(k) if k >= game.num_strategies(self.player) => Err(Error::structural(format!(
                "mixed strategy weight on strategy {k} outside player {}'s range",
                self.player + 1
            ))),
            _ => Ok(()),
        }
    }
}

/// Which beliefs a player may hold about opponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BeliefMode {
    /// A joint pure strategy of the opponents.
    Pure,
    /// One independent mixed strategy per opponent.
    MixedIndependent,
    /// A distribution over joint pure strategies of the opponents.
    Correlated,
}

impl BeliefMode {
    pub fn name(self) -> &'static str {
        match self {
            BeliefMode::Pure => "pure",
            BeliefMode::MixedIndependent => "mixed",
            BeliefMode::Correlated => "correlated",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "pure" => Some(BeliefMode::Pure),
            "mixed" => Some(BeliefMode::MixedIndependent),
            "correlated" => Some(BeliefMode::Correlated),
            _ => None,
        }
    }
}

/// A belief of player `i` about the opponents' play. Opponent components
/// are listed in player order, skipping `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Belief {
    JointPure(Vec<usize>),
    MixedProfile(Vec<MixedStrategy>),
    Correlated(BTreeMap<Vec<usize>, Rational>),
}

impl Belief {
    /// A correlated belief; zero-probability entries are dropped.
    pub fn correlated(dist: impl IntoIterator<Item = (Vec<usize>, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (opp, p) in dist {
            if p.is_negative() {
                return Err(Error::structural(format!("negative probability {p}")));
            }
            *map.entry(opp).or_insert_with(Rational::zero) += p;
        }
        map.retain(|_, p| !p.is_zero());
        let total: Rational = map.values().sum();
        if !total.is_one() {
            return Err(Error::structural(format!("belief probabilities sum to {total}, not 1")));
        }
        Ok(Belief::Correlated(map))
    }

    pub fn mode(&self) -> BeliefMode {
        match self {
            Belief::JointPure(_) => BeliefMode::Pure,
            Belief::MixedProfile(_) => BeliefMode::MixedIndependent,
            Belief::Correlated(_) => BeliefMode::Correlated,
        }
    }

    fn check_shape(&self, game: &Game, player: usize) -> Result<()> {
        let opponents: Vec<usize> = (0..game.players()).filter(|&j| j != player).collect();
        let check_profile = |opp: &[usize]| -> Result<()> {
            if opp.len() != opponents.len() {
                return Err(Error::structural(format!(
                    "belief profile has {} components, expected {}",
                    opp.len(),
                    opponents.len()
                )));
            }
            for (&j, &k) in opponents.iter().zip(opp) {
                game.check_strategy(Strategy::new(j, k))?;
            }
            Ok(())
        };
        match self {
            Belief::JointPure(opp) => check_profile(opp),
            Belief::Correlated(dist) => dist.keys().try_for_each(|opp| check_profile(opp)),
            Belief::MixedProfile(profile) => {
                if profile.len() != opponents.len() {
                    return Err(Error::structural("mixed belief profile has wrong arity"));
                }
                for (&j, m) in opponents.iter().zip(profile) {
                    if m.player != j {
                        return Err(Error::structural(format!(
                            "mixed belief component for player {} found where player {} expected",
                            m.player + 1,
                            j + 1
                        )));
                    }
                    m.check_for(game)?;
                }
                Ok(())
            }
        }
    }

    /// True when every opponent profile the belief can produce lies in
    /// `R_{-player}`.
    pub fn is_within(&self, r: &Restriction, player: usize) -> bool {
        let opponents: Vec<usize> = (0..r.players()).filter(|&j| j != player).collect();
        let inside = |opp: &[usize]| opponents.iter().zip(opp).all(|(&j, &k)| r.contains(Strategy::new(j, k)));
        match self {
            Belief::JointPure(opp) => inside(opp),
            Belief::Correlated(dist) => dist.keys().all(|o| inside(o)),
            Belief::MixedProfile(profile) => opponents.iter().zip(profile).all(|(&j, m)| m.support_within(r.kept(j))),
        }
    }
}
