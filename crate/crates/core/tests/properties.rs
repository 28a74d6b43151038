use std::sync::Arc;

use proptest::prelude::*;

use iterdom::dominance::{dominated_set, raw_dominated_set, verify_certificate, DominanceRelation};
use iterdom::io::{parse_game, write_game};
use iterdom::lp::{solve, Comparator, LinearProgram, LpOutcome};
use iterdom::random::{default_labels, random_restriction, random_subrestriction, rng};
use iterdom::rational::{format_rational, parse_rational, ratio};
use iterdom::reduction::{all_outcomes, check_hereditary_step, check_proof_shape, successors, DEFAULT_BUDGET};
use iterdom::{Belief, BeliefMode, Game, OrderPolicy, Rational, Restriction};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| ratio(n, d))
}

fn game(max_players: usize, max_strategies: usize) -> impl Strategy<Value = Arc<Game>> {
    prop::collection::vec(1..=max_strategies, 2..=max_players).prop_flat_map(|sizes| {
        let n = sizes.len();
        let joints: usize = sizes.iter().product();
        prop::collection::vec(prop::collection::vec(rational(), n), joints)
            .prop_map(move |payoffs| Arc::new(Game::new(default_labels(&sizes), payoffs).unwrap()))
    })
}

fn two_player_game() -> impl Strategy<Value = Arc<Game>> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(a, b)| {
        prop::collection::vec(prop::collection::vec((-3i64..=3).prop_map(|v| ratio(v, 1)), 2), a * b)
            .prop_map(move |payoffs| Arc::new(Game::new(default_labels(&[a, b]), payoffs).unwrap()))
    })
}

fn relation() -> impl Strategy<Value = DominanceRelation> {
    let mode = prop_oneof![Just(BeliefMode::Pure), Just(BeliefMode::MixedIndependent), Just(BeliefMode::Correlated)];
    prop_oneof![
        Just(DominanceRelation::StrictPure),
        Just(DominanceRelation::GlobalStrictPure),
        Just(DominanceRelation::StrictMixed),
        Just(DominanceRelation::GlobalStrictMixed),
        mode.clone().prop_map(DominanceRelation::NeverBestResponse),
        mode.prop_map(DominanceRelation::GlobalNeverBestResponse),
        Just(DominanceRelation::Inherent),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_round_trip(r in rational()) {
        prop_assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }

    #[test]
    fn games_round_trip(g in game(3, 3)) {
        let text = write_game(&g);
        let back = parse_game(&text).unwrap();
        prop_assert_eq!(&back, &*g);
        prop_assert_eq!(write_game(&back), text);
    }

    #[test]
    fn point_mass_beliefs_agree(g in game(3, 3)) {
        for joint in g.joints() {
            for i in 0..g.players() {
                let mut opp = joint.clone();
                let own = opp.remove(i);
                let belief = Belief::correlated([(opp.clone(), ratio(1, 1))]).unwrap();
                prop_assert_eq!(&g.expected_payoff(i, own, &belief).unwrap(), g.payoff_pure(i, &joint).unwrap());
                prop_assert_eq!(
                    g.expected_payoff(i, own, &Belief::JointPure(opp)).unwrap(),
                    g.payoff_pure(i, &joint).unwrap().clone()
                );
            }
        }
    }

    /// Weak duality and strong duality on random small programs with
    /// nonnegative variables: if both the program and its dual have optima,
    /// the values coincide.
    #[test]
    fn lp_duality(
        rows in prop::collection::vec((prop::collection::vec(-4i64..=4, 3), 0usize..3, -4i64..=4), 1..=4),
        objective in prop::collection::vec(-4i64..=4, 3),
    ) {
        let mut lp = LinearProgram::new(3);
        lp.objective = objective.iter().map(|&c| ratio(c, 1)).collect();
        for (coeffs, cmp, rhs) in &rows {
            let cmp = [Comparator::Le, Comparator::Eq, Comparator::Ge][*cmp];
            lp.add(coeffs.iter().map(|&c| ratio(c, 1)).collect(), cmp, ratio(*rhs, 1));
        }
        let primal = solve(&lp).unwrap();
        let dual = solve(&lp.dual()).unwrap();
        match (&primal, &dual) {
            (LpOutcome::Optimal { value, solution }, LpOutcome::Optimal { value: dv, solution: ds }) => {
                prop_assert!(lp.is_feasible(solution));
                prop_assert_eq!(&lp.value_at(solution), value);
                prop_assert!(lp.dual().is_feasible(ds));
                prop_assert_eq!(value.clone(), -dv.clone());
            }
            (LpOutcome::Optimal { .. }, _) | (_, LpOutcome::Optimal { .. }) => {
                prop_assert!(false, "only one side optimal: {:?} / {:?}", primal, dual);
            }
            (LpOutcome::Unbounded, LpOutcome::Unbounded) => prop_assert!(false, "both sides unbounded"),
            _ => {}
        }
    }

    #[test]
    fn certificates_verify(g in two_player_game(), rel in relation()) {
        let r = Restriction::full(&g);
        let set = raw_dominated_set(&rel, &r).unwrap();
        for (s, cert) in &set.entries {
            prop_assert!(verify_certificate(&rel, &r, *s, cert).unwrap());
        }
    }

    #[test]
    fn steps_are_hereditary_and_proof_shaped(g in two_player_game(), rel in relation()) {
        let r = Restriction::full(&g);
        for step in successors(&rel, &r, OrderPolicy::AllSubsets).unwrap() {
            prop_assert_eq!(check_hereditary_step(&rel, &step).unwrap(), None);
            prop_assert_eq!(check_proof_shape(&rel, &step).unwrap(), None);
        }
    }

    #[test]
    fn outcomes_are_unique_and_irreducible(g in two_player_game(), rel in relation()) {
        let outcomes = all_outcomes(&rel, &g, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(outcomes.len(), 1);
        prop_assert!(dominated_set(&rel, &outcomes[0]).unwrap().is_empty());
    }

    #[test]
    fn global_relations_are_monotonic(g in two_player_game(), seed in any::<u64>()) {
        let mut gen = rng(seed, 0);
        let r = random_restriction(&mut gen, &g);
        let r2 = random_subrestriction(&mut gen, &r);
        for rel in [
            DominanceRelation::GlobalStrictPure,
            DominanceRelation::GlobalStrictMixed,
            DominanceRelation::GlobalNeverBestResponse(BeliefMode::Correlated),
        ] {
            let outer = raw_dominated_set(&rel, &r).unwrap();
            let inner = raw_dominated_set(&rel, &r2).unwrap();
            for s in outer.strategies().filter(|s| r2.contains(*s)) {
                prop_assert!(inner.contains(s));
            }
        }
    }
}
