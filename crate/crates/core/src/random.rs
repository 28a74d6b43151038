//! Seeded generators for random games, restrictions and reduction
//! systems.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ars::FiniteArs;
use crate::game::{Game, Restriction};
use crate::rational::int;

/// Payoff range of the random suite. Small ranges produce many ties.
pub const PAYOFF_RANGE: (i64, i64) = (-3, 3);

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Player `i`'s labels are a letter per player and a 1-based index:
/// `a1 a2 …` for the first player, `b1 b2 …` for the second, and so on.
pub fn default_labels(sizes: &[usize]) -> Vec<Vec<String>> {
    sizes
        .iter()
        .enumerate()
        .map(|(i, &k)| (1..=k).map(|x| format!("{}{x}", (b'a' + i as u8) as char)).collect())
        .collect()
}

/// A game of the given shape with integer payoffs uniform in `[lo, hi]`.
pub fn random_game<R: Rng>(rng: &mut R, sizes: &[usize], lo: i64, hi: i64) -> Arc<Game> {
    let n = sizes.len();
    let game = Game::from_fn(default_labels(sizes), |_| (0..n).map(|_| int(rng.gen_range(lo..=hi))).collect());
    Arc::new(game.expect("generated shape is valid"))
}

/// `two_player` games with 2 to 4 strategies per player, then
/// `three_player` games of shape 3×3×3, payoffs in [`PAYOFF_RANGE`].
pub fn random_suite(seed: u64, two_player: usize, three_player: usize) -> Vec<Arc<Game>> {
    let mut rng = rng(seed, 0);
    let (lo, hi) = PAYOFF_RANGE;
    let mut games = Vec::with_capacity(two_player + three_player);
    for _ in 0..two_player {
        let sizes = [rng.gen_range(2..=4), rng.gen_range(2..=4)];
        games.push(random_game(&mut rng, &sizes, lo, hi));
    }
    for _ in 0..three_player {
        games.push(random_game(&mut rng, &[3, 3, 3], lo, hi));
    }
    games
}

/// A uniformly random nonempty subset of `0..n` as a bitmask.
pub fn nonempty_subset<R: Rng>(rng: &mut R, n: usize) -> u64 {
    assert!((1..64).contains(&n));
    rng.gen_range(1..(1u64 << n))
}

fn subset_of<R: Rng>(rng: &mut R, set: &[usize]) -> Vec<usize> {
    let mask = nonempty_subset(rng, set.len());
    set.iter().enumerate().filter(|&(k, _)| mask >> k & 1 == 1).map(|(_, &s)| s).collect()
}

/// A random restriction of `game` (each player's set a uniformly random
/// nonempty subset).
pub fn random_restriction<R: Rng>(rng: &mut R, game: &Arc<Game>) -> Restriction {
    random_subrestriction(rng, &Restriction::full(game))
}

/// A random restriction contained in `r`.
pub fn random_subrestriction<R: Rng>(rng: &mut R, r: &Restriction) -> Restriction {
    let kept = r.kept_sets().iter().map(|set| subset_of(rng, set)).collect();
    Restriction::new(r.game(), kept).expect("subsets are nonempty")
}

/// A DAG on `nodes` nodes with each edge `i → j` (`i < j`) present with
/// probability `numer / denom`.
pub fn random_dag<R: Rng>(rng: &mut R, nodes: usize, numer: u64, denom: u64) -> FiniteArs {
    assert!(denom > 0 && numer <= denom);
    let mut edges = Vec::new();
    for i in 0..nodes {
        for j in i + 1..nodes {
            if rng.gen_range(0..denom) < numer {
                edges.push((i, j));
            }
        }
    }
    FiniteArs::new(nodes, edges).expect("edges are in range")
}
