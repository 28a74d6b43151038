//! Small named games used throughout the tests, the CLI examples and the
//! benchmarks.

use std::sync::Arc;

use crate::game::Game;
use crate::rational::int;

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn bimatrix(rows: &[&str], cols: &[&str], payoffs: &[[i64; 2]]) -> Arc<Game> {
    let entries = payoffs.iter().map(|p| vec![int(p[0]), int(p[1])]).collect();
    Arc::new(Game::new(vec![labels(rows), labels(cols)], entries).expect("fixture is well formed"))
}

/// Prisoner's dilemma: `D` strictly dominates `C` for both players.
pub fn prisoners_dilemma() -> Arc<Game> {
    bimatrix(&["C", "D"], &["C", "D"], &[[2, 2], [0, 3], [3, 0], [1, 1]])
}

/// `M` is strictly dominated by the even mix of `U` and `D`, but by no
/// pure strategy. Column payoffs are all zero.
pub fn mixed_dominance() -> Arc<Game> {
    bimatrix(&["U", "M", "D"], &["L", "R"], &[[3, 0], [0, 0], [1, 0], [1, 0], [0, 0], [3, 0]])
}

/// `M` is never a best response to a pure belief, yet is the unique best
/// response to the uniform belief. Column payoffs are all zero.
pub fn belief_game() -> Arc<Game> {
    bimatrix(&["U", "M", "D"], &["L", "R"], &[[3, 0], [0, 0], [2, 0], [2, 0], [0, 0], [3, 0]])
}

/// One strategy per player, all payoffs zero.
pub fn one_by_one() -> Arc<Game> {
    bimatrix(&["A"], &["X"], &[[0, 0]])
}

/// Three players with two strategies each; everyone gets 1 when all pick
/// the same strategy and 0 otherwise.
pub fn three_player_coordination() -> Arc<Game> {
    let game = Game::from_fn(vec![labels(&["a", "b"]), labels(&["a", "b"]), labels(&["a", "b"])], |j| {
        let v = i64::from(j.iter().all(|&k| k == j[0]));
        vec![int(v); 3]
    });
    Arc::new(game.expect("fixture is well formed"))
}

/// The four two-player fixtures.
pub fn all() -> Vec<Arc<Game>> {
    vec![prisoners_dilemma(), mixed_dominance(), belief_game(), one_by_one()]
}
