//! Brute-force oracles written against the payoff table alone, compared
//! with the engine.

use std::collections::BTreeSet;
use std::sync::Arc;

use iterdom::dominance::{dominance_certificate, dominated_set, DominanceRelation};
use iterdom::lp::{best_response_feasible, max_min_advantage};
use iterdom::random::{random_game, rng};
use iterdom::rational::{int, ratio};
use iterdom::reduction::{all_outcomes, DEFAULT_BUDGET};
use iterdom::{fixtures, Belief, BeliefMode, Game, MixedStrategy, Rational, Restriction, Strategy};
use rand::Rng;

type Kept = Vec<Vec<usize>>;

fn joint(player: usize, own: usize, opp: &[usize]) -> Vec<usize> {
    let mut j = opp.to_vec();
    j.insert(player, own);
    j
}

fn u(g: &Game, player: usize, own: usize, opp: &[usize]) -> Rational {
    g.payoff_pure(player, &joint(player, own, opp)).unwrap().clone()
}

/// Opponent profiles of `player` in `kept`, by nested loops.
fn profiles(kept: &Kept, player: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for (j, set) in kept.iter().enumerate() {
        if j == player {
            continue;
        }
        out = out.iter().flat_map(|p| set.iter().map(move |&k| [p.clone(), vec![k]].concat())).collect();
    }
    out
}

fn strictly_dominated_pure(g: &Game, kept: &Kept, i: usize, s: usize) -> bool {
    kept[i].iter().any(|&t| t != s && profiles(kept, i).iter().all(|o| u(g, i, t, o) > u(g, i, s, o)))
}

fn never_best_pure(g: &Game, kept: &Kept, i: usize, s: usize) -> bool {
    profiles(kept, i).iter().all(|o| kept[i].iter().any(|&t| u(g, i, t, o) > u(g, i, s, o)))
}

fn dominated(g: &Game, kept: &Kept, test: fn(&Game, &Kept, usize, usize) -> bool) -> Vec<(usize, usize)> {
    (0..kept.len()).flat_map(|i| kept[i].iter().map(move |&s| (i, s))).filter(|&(i, s)| test(g, kept, i, s)).collect()
}

/// Every outcome of every elimination order, by walking the full order
/// tree without memoization.
fn naive_outcomes(g: &Game, kept: Kept, test: fn(&Game, &Kept, usize, usize) -> bool, out: &mut BTreeSet<Kept>) {
    let d = dominated(g, &kept, test);
    if d.is_empty() {
        out.insert(kept);
        return;
    }
    for mask in 1u32..(1 << d.len()) {
        let mut next = kept.clone();
        for (b, (i, s)) in d.iter().enumerate() {
            if mask >> b & 1 == 1 {
                next[*i].retain(|k| k != s);
            }
        }
        naive_outcomes(g, next, test, out);
    }
}

fn small_games(seed: u64, count: usize) -> Vec<Arc<Game>> {
    let mut r = rng(seed, 0);
    (0..count)
        .map(|_| {
            let sizes = [r.gen_range(1..=3), r.gen_range(1..=3)];
            random_game(&mut r, &sizes, -2, 2)
        })
        .collect()
}

fn full_kept(g: &Game) -> Kept {
    (0..g.players()).map(|i| (0..g.num_strategies(i)).collect()).collect()
}

#[test]
fn outcome_search_matches_the_order_tree() {
    let cases = [
        (DominanceRelation::StrictPure, strictly_dominated_pure as fn(&Game, &Kept, usize, usize) -> bool),
        (DominanceRelation::NeverBestResponse(BeliefMode::Pure), never_best_pure),
    ];
    for g in small_games(11, 60) {
        for (rel, test) in &cases {
            let mut expected = BTreeSet::new();
            naive_outcomes(&g, full_kept(&g), *test, &mut expected);
            let got: BTreeSet<Kept> =
                all_outcomes(rel, &g, DEFAULT_BUDGET).unwrap().iter().map(|r| r.kept_sets().to_vec()).collect();
            assert_eq!(got, expected, "{rel}");
        }
    }
}

#[test]
fn dominated_sets_match_brute_force() {
    for g in small_games(12, 80) {
        let r = Restriction::full(&g);
        let kept = full_kept(&g);
        let sp: Vec<(usize, usize)> = dominated_set(&DominanceRelation::StrictPure, &r)
            .unwrap()
            .strategies()
            .map(|s| (s.player, s.index))
            .collect();
        assert_eq!(sp, dominated(&g, &kept, strictly_dominated_pure));
        let nbr: Vec<(usize, usize)> = dominated_set(&DominanceRelation::NeverBestResponse(BeliefMode::Pure), &r)
            .unwrap()
            .strategies()
            .map(|s| (s.player, s.index))
            .collect();
        assert_eq!(nbr, dominated(&g, &kept, never_best_pure));
    }
}

/// All mixtures over `pool` with weights in multiples of `1/denom`.
fn grid(pool: &[usize], denom: i64) -> Vec<Vec<(usize, Rational)>> {
    fn rec(
        pool: &[usize],
        left: i64,
        denom: i64,
        acc: &mut Vec<(usize, Rational)>,
        out: &mut Vec<Vec<(usize, Rational)>>,
    ) {
        match pool {
            [] => {}
            [last] => {
                let mut v = acc.clone();
                v.push((*last, ratio(left, denom)));
                out.push(v);
            }
            [first, rest @ ..] => {
                for w in 0..=left {
                    acc.push((*first, ratio(w, denom)));
                    rec(rest, left - w, denom, acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(pool, denom, denom, &mut Vec::new(), &mut out);
    out
}

fn expected(g: &Game, i: usize, s: usize, belief: &Belief) -> Rational {
    match belief {
        Belief::Correlated(dist) => dist.iter().map(|(o, p)| p * u(g, i, s, o)).sum(),
        other => panic!("expected a correlated belief, got {other:?}"),
    }
}

/// Mixed dominance and correlated never-best-response, each checked on
/// both sides: a positive answer by its dominator, a negative one by the
/// belief that makes the strategy a best response; and a grid search over
/// mixtures must never find a dominator the solver missed.
#[test]
fn mixed_dominance_against_grid_and_witnesses() {
    let mut r = rng(13, 0);
    for _ in 0..60 {
        let sizes = [r.gen_range(2..=4), r.gen_range(1..=3)];
        let g = random_game(&mut r, &sizes, -3, 3);
        let full = Restriction::full(&g);
        for i in 0..2 {
            for s in 0..g.num_strategies(i) {
                let pool: Vec<usize> = (0..g.num_strategies(i)).filter(|&k| k != s).collect();
                if pool.is_empty() {
                    assert!(best_response_feasible(&full, i, s, BeliefMode::Correlated).unwrap().is_some());
                    continue;
                }
                let adv = max_min_advantage(&full, i, s, &pool).unwrap();
                let opps = profiles(&full_kept(&g), i);
                let value = |m: &[(usize, Rational)], o: &[usize]| -> Rational {
                    m.iter().map(|(k, w)| w * u(&g, i, *k, o)).sum()
                };
                let grid_hit = grid(&pool, 12).iter().any(|m| opps.iter().all(|o| value(m, o) > u(&g, i, s, o)));
                if grid_hit {
                    assert!(adv.dominates());
                }
                let belief = best_response_feasible(&full, i, s, BeliefMode::Correlated).unwrap();
                if adv.dominates() {
                    let m: Vec<(usize, Rational)> = adv.dominator.iter().map(|(k, w)| (k, w.clone())).collect();
                    assert!(opps.iter().all(|o| value(&m, o) - u(&g, i, s, o) >= adv.eps));
                    assert!(belief.is_none());
                } else {
                    let belief = belief.expect("an undominated strategy is a best response");
                    let own = expected(&g, i, s, &belief);
                    assert!((0..g.num_strategies(i)).all(|k| expected(&g, i, k, &belief) <= own));
                }
            }
        }
    }
}

#[test]
fn fixture_values() {
    let mix = fixtures::mixed_dominance();
    let r = Restriction::full(&mix);
    // ½U + ½D earns 3/2 against both columns, M earns 1.
    let adv = max_min_advantage(&r, 0, 1, &[0, 2]).unwrap();
    assert_eq!(adv.eps, ratio(1, 2));
    assert_eq!(adv.dominator, MixedStrategy::new(0, [(0, ratio(1, 2)), (2, ratio(1, 2))]).unwrap());
    for p in 0..=12 {
        // No pure strategy and no mixture with more than ½ margin.
        let m = [(0usize, ratio(p, 12)), (2, ratio(12 - p, 12))];
        let worst = profiles(&full_kept(&mix), 0)
            .iter()
            .map(|o| m.iter().map(|(k, w)| w * u(&mix, 0, *k, o)).sum::<Rational>() - u(&mix, 0, 1, o))
            .min()
            .unwrap();
        assert!(worst <= ratio(1, 2));
    }
    assert!(dominance_certificate(&DominanceRelation::StrictPure, &r, Strategy::new(0, 1)).unwrap().is_none());

    let belief = fixtures::belief_game();
    let r = Restriction::full(&belief);
    let witness = best_response_feasible(&r, 0, 1, BeliefMode::Correlated).unwrap().unwrap();
    assert_eq!(expected(&belief, 0, 1, &witness), int(2));
    assert_eq!(expected(&belief, 0, 0, &witness), ratio(3, 2));
    assert!(never_best_pure(&belief, &full_kept(&belief), 0, 1));

    let pd = fixtures::prisoners_dilemma();
    assert_eq!(*pd.payoff_pure(0, &[0, 0]).unwrap(), int(2));
    assert!(strictly_dominated_pure(&pd, &full_kept(&pd), 0, 0));
    assert!(strictly_dominated_pure(&pd, &full_kept(&pd), 1, 0));
    assert!(!strictly_dominated_pure(&pd, &vec![vec![0], vec![0]], 0, 0));
}
