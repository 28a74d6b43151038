//! Moving a mixed dominator off strategies that a strict-mixed elimination
//! step removes.
//!
//! If `s` is strictly dominated in `R` by a mixture `m`, and the step
//! `R → R'` removes `t^1, …, t^k` (each strictly dominated in `R` by some
//! `m^j`), then `s` is still strictly dominated in `R` by a mixture whose
//! support lies in `R'`. The construction works with two facts:
//!
//! * if `s` is dominated by `(1 - α)·s + α·n` with `α ∈ (0, 1]`, it is
//!   dominated by `n`;
//! * if `s` is dominated by `m` and `t` by `m'`, then `s` is dominated by
//!   `m[t/m']`, the mixture with `t`'s weight handed over to `m'`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::game::{MixedStrategy, Restriction};
use crate::rational::Rational;

/// Splits `m` as `(1 - α)·δ_s + α·n` with `s ∉ support(n)`.
pub fn renormalize_without(m: &MixedStrategy, s: usize) -> Result<(Rational, MixedStrategy)> {
    let ws = m.weight(s);
    if ws.is_one() {
        return Err(Error::DegenerateDominator);
    }
    let alpha = Rational::one() - ws;
    let rest: BTreeMap<usize, Rational> = m.iter().filter(|&(t, _)| t != s).map(|(t, w)| (t, w / &alpha)).collect();
    Ok((alpha, MixedStrategy::from_positive(m.player, rest)))
}

/// `m[s/m2]`: the weight `m` puts on `s` is redistributed according to `m2`.
pub fn substitute(m: &MixedStrategy, s: usize, m2: &MixedStrategy) -> Result<MixedStrategy> {
    if m.player != m2.player {
        return Err(Error::structural(format!(
            "cannot substitute a mixed strategy of player {} into one of player {}",
            m2.player + 1,
            m.player + 1
        )));
    }
    let ws = m.weight(s);
    let mut out: BTreeMap<usize, Rational> = m.iter().filter(|&(t, _)| t != s).map(|(t, w)| (t, w.clone())).collect();
    if !ws.is_zero() {
        for (t, w) in m2.iter() {
            *out.entry(t).or_insert_with(Rational::zero) += &ws * w;
        }
    }
    out.retain(|_, w| !w.is_zero());
    Ok(MixedStrategy::from_positive(m.player, out))
}

/// Whether `m`, supported inside `R_i`, strictly dominates `s` on `R_{-i}`.
fn strictly_dominates(r: &Restriction, m: &MixedStrategy, s: usize) -> bool {
    let game = r.game();
    m.check_for(game).is_ok()
        && m.support_within(r.kept(m.player))
        && r.opponent_joints(m.player)
            .iter()
            .all(|o| (game.mixed_payoff_vs(m, o) - game.payoff_vs(m.player, s, o)).is_positive())
}

/// Given a strict-mixed step `r → r2` that removes exactly the strategies
/// `t^j` of `eliminated` from player `i` (each paired with a mixture of `r`
/// dominating it), and a mixture `m` of `r` dominating `s` in `r`, returns
/// a mixture supported in `r2` that still dominates `s` in `r`.
pub fn persist_dominator(
    r: &Restriction,
    r2: &Restriction,
    eliminated: &[(usize, MixedStrategy)],
    player: usize,
    s: usize,
    m: &MixedStrategy,
) -> Result<MixedStrategy> {
    if !r2.is_subset_of(r)? {
        return Err(Error::InvalidCertificate("target restriction is not contained in the source".into()));
    }
    r.game().check_player(player)?;
    let removed: Vec<usize> = r.kept(player).iter().copied().filter(|k| !r2.kept(player).contains(k)).collect();
    let mut listed: Vec<usize> = eliminated.iter().map(|(t, _)| *t).collect();
    listed.sort_unstable();
    if listed != removed {
        return Err(Error::InvalidCertificate(format!(
            "eliminated strategies {listed:?} differ from those removed for player {}: {removed:?}",
            player + 1
        )));
    }
    for (t, mj) in eliminated {
        if mj.player != player || !strictly_dominates(r, mj, *t) {
            return Err(Error::InvalidCertificate(format!("dominator given for strategy {t} does not dominate it")));
        }
    }
    if m.player != player || !strictly_dominates(r, m, s) {
        return Err(Error::InvalidCertificate(format!("dominator given for strategy {s} does not dominate it")));
    }

    // n^j dominates t^j in r and avoids t^1..t^j.
    let mut avoiding: Vec<MixedStrategy> = Vec::with_capacity(eliminated.len());
    for (j, (t, mj)) in eliminated.iter().enumerate() {
        let mut merged = mj.clone();
        for (l, n) in avoiding.iter().enumerate() {
            merged = substitute(&merged, eliminated[l].0, n)?;
        }
        let (_, n) = renormalize_without(&merged, *t)?;
        debug_assert!(eliminated[..=j].iter().all(|(u, _)| n.weight(*u).is_zero()));
        avoiding.push(n);
    }

    let mut result = m.clone();
    for ((t, _), n) in eliminated.iter().zip(&avoiding) {
        result = substitute(&result, *t, n)?;
    }
    if !result.support_within(r2.kept(player)) || !strictly_dominates(r, &result, s) {
        return Err(Error::InvalidCertificate("persisted dominator failed its post-check".into()));
    }
    Ok(result)
}
