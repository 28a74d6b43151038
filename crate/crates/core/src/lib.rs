//! Exact iterated elimination of dominated strategies in finite strategic
//! games.
//!
//! Dominance relations are unary: each assigns to a restriction `R` of the
//! initial game the set `D_R` of strategies it deems dominated there. A
//! reduction step removes any nonempty subset of `D_R`; an outcome is a
//! restriction admitting no further step. The engine computes outcomes
//! under different elimination orders, enumerates every reachable outcome,
//! and checks the properties (hereditarity, monotonicity, weak confluence)
//! that decide whether the outcome is order independent.
//!
//! # Modules
//!
//! - `game` - games, restrictions, mixed strategies, beliefs
//! - `lp` - exact rational simplex and the dominance programs
//! - `dominance` - the dominance relations, certificates, dominator persistence
//! - `reduction` - reduction steps, traces, outcome search, property checks
//! - `ars` - finite abstract reduction systems and Newman's lemma
//! - `io` - the game file format, trace documents
//! - `cli` - the command-line front end

pub mod ars;
pub mod cli;
pub mod dominance;
pub mod error;
pub mod fixtures;
pub mod game;
pub mod io;
pub mod lp;
pub mod par;
pub mod random;
pub mod rational;
pub mod reduction;

pub use dominance::{dominated_set, DominanceCertificate, DominanceRelation, DominatedSet};
pub use error::{Error, Result};
pub use game::{Belief, BeliefMode, Game, MixedStrategy, Restriction, Strategy};
pub use par::Execution;
pub use rational::Rational;
pub use reduction::{all_outcomes, normal_form, successors, OrderPolicy, ReductionStep, Trace};
