//! The game file format and JSON trace documents.
//!
//! A game file is line oriented; `#` starts a comment and blank lines are
//! ignored:
//!
//! ```text
//! players 2
//! labels 1: C D
//! labels 2: C D
//! payoffs
//! 2 2
//! 0 3
//! 3 0
//! 1 1
//! ```
//!
//! One payoff line per joint strategy, in odometer order (the last
//! player's index varies fastest), each holding one rational per player.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dominance::{
    dominated_set, verify_certificate, DominanceCertificate, DominanceRelation, NeverBestEvidence, SubsetDominator,
};
use crate::error::{Error, Result};
use crate::game::{BeliefMode, Game, MixedStrategy, Restriction, Strategy};
use crate::rational::{format_rational, parse_rational};
use crate::reduction::Trace;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses the text format into a game.
pub fn parse_game(text: &str) -> Result<Game> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let last_line = text.lines().count().max(1);

    let (line, header) = lines.next().ok_or_else(|| parse_error(1, "empty document, expected `players <n>`"))?;
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["players", n] => n.parse::<usize>().map_err(|_| parse_error(line, format!("bad player count `{n}`")))?,
        _ => return Err(parse_error(line, format!("bad header `{header}`, expected `players <n>`"))),
    };
    if n < 2 {
        return Err(parse_error(line, format!("a game needs at least 2 players, got {n}")));
    }

    let mut labels = Vec::with_capacity(n);
    for i in 1..=n {
        let (line, text) = lines.next().ok_or_else(|| parse_error(last_line, format!("missing `labels {i}:` line")))?;
        let rest = text
            .strip_prefix("labels")
            .filter(|r| r.starts_with(char::is_whitespace))
            .and_then(|r| r.trim_start().strip_prefix(&format!("{i}:")))
            .ok_or_else(|| parse_error(line, format!("expected `labels {i}: <names>`, found `{text}`")))?;
        let names: Vec<String> = rest.split_whitespace().map(String::from).collect();
        if names.is_empty() {
            return Err(parse_error(line, format!("player {i} has no strategies")));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = names.iter().find(|name| !seen.insert(name.as_str())) {
            return Err(parse_error(line, format!("duplicate label `{dup}` for player {i}")));
        }
        labels.push(names);
    }

    match lines.next() {
        Some((_, "payoffs")) => {}
        Some((line, other)) => return Err(parse_error(line, format!("expected `payoffs`, found `{other}`"))),
        None => return Err(parse_error(last_line, "missing `payoffs` line")),
    }

    let joints: usize = labels.iter().map(Vec::len).product();
    let mut payoffs = Vec::with_capacity(joints);
    for k in 0..joints {
        let (line, text) =
            lines.next().ok_or_else(|| parse_error(last_line, format!("expected {joints} payoff lines, found {k}")))?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != n {
            return Err(parse_error(line, format!("expected {n} payoffs, found {}", fields.len())));
        }
        let row =
            fields.iter().map(|f| parse_rational(f).map_err(|m| parse_error(line, m))).collect::<Result<Vec<_>>>()?;
        payoffs.push(row);
    }
    if let Some((line, text)) = lines.next() {
        return Err(parse_error(line, format!("trailing content `{text}` after {joints} payoff lines")));
    }
    Game::new(labels, payoffs).map_err(|e| match e {
        Error::Structural(m) => parse_error(1, m),
        other => other,
    })
}

/// The canonical text form of `game`; [`parse_game`] inverts it.
pub fn write_game(game: &Game) -> String {
    let mut out = format!("players {}\n", game.players());
    for i in 0..game.players() {
        out += &format!("labels {}: {}\n", i + 1, game.labels(i).join(" "));
    }
    out += "payoffs\n";
    for joint in game.joints() {
        let row: Vec<String> = (0..game.players())
            .map(|i| format_rational(game.payoff_pure(i, &joint).expect("joint in range")))
            .collect();
        out += &row.join(" ");
        out.push('\n');
    }
    out
}

/// A serialized elimination trace. Players are numbered from 1 and
/// strategies are named by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub relation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub belief_mode: Option<String>,
    pub initial: Vec<Vec<String>>,
    pub steps: Vec<StepDocument>,
    pub outcome: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDocument {
    pub removed: Vec<RemovedDocument>,
    pub policy: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovedDocument {
    pub player: usize,
    pub strategy: String,
    pub certificate: CertificateDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDocument {
    pub strategy: String,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileDocument {
    /// Opponent labels in player order.
    pub opponents: Vec<String>,
    pub better: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetDocument {
    pub opponents: Vec<Vec<String>>,
    pub dominator: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CertificateDocument {
    PureDominator {
        dominator: String,
    },
    MixedDominator {
        dominator: Vec<WeightDocument>,
        eps: String,
    },
    NeverBestPure {
        profiles: Vec<ProfileDocument>,
    },
    /// The best-response program against these rivals is infeasible.
    NeverBestLp {
        rivals: Vec<String>,
    },
    Inherent {
        subsets: Vec<SubsetDocument>,
    },
    Intersection {
        parts: Vec<CertificateDocument>,
    },
}

fn opponent_labels(game: &Game, player: usize, opp: &[usize]) -> Vec<String> {
    (0..game.players())
        .filter(|&j| j != player)
        .zip(opp)
        .map(|(j, &k)| game.label(Strategy::new(j, k)).to_string())
        .collect()
}

fn certificate_document(r: &Restriction, player: usize, cert: &DominanceCertificate) -> CertificateDocument {
    let game = r.game();
    let name = |k: usize| game.label(Strategy::new(player, k)).to_string();
    match cert {
        DominanceCertificate::PureDominator { dominator } => {
            CertificateDocument::PureDominator { dominator: name(*dominator) }
        }
        DominanceCertificate::MixedDominator { dominator, eps } => CertificateDocument::MixedDominator {
            dominator: dominator
                .iter()
                .map(|(k, w)| WeightDocument { strategy: name(k), weight: format_rational(w) })
                .collect(),
            eps: format_rational(eps),
        },
        DominanceCertificate::NeverBest(NeverBestEvidence::PerProfile(entries)) => CertificateDocument::NeverBestPure {
            profiles: entries
                .iter()
                .map(|(opp, better)| ProfileDocument {
                    opponents: opponent_labels(game, player, opp),
                    better: name(*better),
                })
                .collect(),
        },
        DominanceCertificate::NeverBest(NeverBestEvidence::NoBestResponseBelief { rivals }) => {
            CertificateDocument::NeverBestLp { rivals: rivals.iter().map(|&k| name(k)).collect() }
        }
        DominanceCertificate::Inherent(entries) => {
            let opponents = r.opponent_joints(player);
            CertificateDocument::Inherent {
                subsets: entries
                    .iter()
                    .map(|e| SubsetDocument {
                        opponents: opponents
                            .iter()
                            .enumerate()
                            .filter(|&(j, _)| e.subset >> j & 1 == 1)
                            .map(|(_, o)| opponent_labels(game, player, o))
                            .collect(),
                        dominator: name(e.dominator),
                    })
                    .collect(),
            }
        }
        DominanceCertificate::Intersection(parts) => CertificateDocument::Intersection {
            parts: parts.iter().map(|p| certificate_document(r, player, p)).collect(),
        },
    }
}

fn invalid(message: impl Into<String>) -> Error {
    Error::InvalidCertificate(message.into())
}

fn lookup(game: &Game, player: usize, label: &str) -> Result<usize> {
    game.strategy_index(player, label)
        .ok_or_else(|| invalid(format!("player {} has no strategy `{label}`", player + 1)))
}

fn opponent_indices(game: &Game, player: usize, labels: &[String]) -> Result<Vec<usize>> {
    let others: Vec<usize> = (0..game.players()).filter(|&j| j != player).collect();
    if labels.len() != others.len() {
        return Err(invalid(format!("opponent profile {labels:?} has the wrong length")));
    }
    others.iter().zip(labels).map(|(&j, l)| lookup(game, j, l)).collect()
}

fn parse_weight(text: &str) -> Result<crate::rational::Rational> {
    parse_rational(text).map_err(invalid)
}

/// Rebuilds a certificate from its document, against restriction `r`.
fn certificate_from_document(
    r: &Restriction,
    player: usize,
    doc: &CertificateDocument,
) -> Result<DominanceCertificate> {
    let game = r.game();
    let index = |label: &str| lookup(game, player, label);
    Ok(match doc {
        CertificateDocument::PureDominator { dominator } => {
            DominanceCertificate::PureDominator { dominator: index(dominator)? }
        }
        CertificateDocument::MixedDominator { dominator, eps } => {
            let weights = dominator
                .iter()
                .map(|w| Ok((index(&w.strategy)?, parse_weight(&w.weight)?)))
                .collect::<Result<Vec<_>>>()?;
            let dominator = MixedStrategy::new(player, weights).map_err(|e| invalid(e.to_string()))?;
            DominanceCertificate::MixedDominator { dominator, eps: parse_weight(eps)? }
        }
        CertificateDocument::NeverBestPure { profiles } => {
            DominanceCertificate::NeverBest(NeverBestEvidence::PerProfile(
                profiles
                    .iter()
                    .map(|p| Ok((opponent_indices(game, player, &p.opponents)?, index(&p.better)?)))
                    .collect::<Result<Vec<_>>>()?,
            ))
        }
        CertificateDocument::NeverBestLp { rivals } => {
            DominanceCertificate::NeverBest(NeverBestEvidence::NoBestResponseBelief {
                rivals: rivals.iter().map(|l| index(l)).collect::<Result<Vec<_>>>()?,
            })
        }
        CertificateDocument::Inherent { subsets } => {
            let opponents = r.opponent_joints(player);
            let mut entries = Vec::with_capacity(subsets.len());
            for sub in subsets {
                let mut mask = 0u64;
                for labels in &sub.opponents {
                    let opp = opponent_indices(game, player, labels)?;
                    let j = opponents
                        .iter()
                        .position(|o| *o == opp)
                        .ok_or_else(|| invalid(format!("opponent profile {labels:?} is outside the restriction")))?;
                    if j >= 64 {
                        return Err(invalid("too many opponent profiles"));
                    }
                    mask |= 1 << j;
                }
                entries.push(SubsetDominator { subset: mask, dominator: index(&sub.dominator)? });
            }
            DominanceCertificate::Inherent(entries)
        }
        CertificateDocument::Intersection { parts } => DominanceCertificate::Intersection(
            parts.iter().map(|p| certificate_from_document(r, player, p)).collect::<Result<Vec<_>>>()?,
        ),
    })
}

fn labels_of(r: &Restriction) -> Vec<Vec<String>> {
    r.kept_labels()
}

impl TraceDocument {
    pub fn from_trace(trace: &Trace) -> Self {
        let game = &trace.initial;
        TraceDocument {
            relation: trace.relation.name(),
            belief_mode: trace.relation.belief_mode().map(|m| m.name().to_string()),
            initial: (0..game.players()).map(|i| game.labels(i).to_vec()).collect(),
            steps: trace
                .steps
                .iter()
                .map(|step| StepDocument {
                    removed: step
                        .removed
                        .iter()
                        .map(|(s, cert)| RemovedDocument {
                            player: s.player + 1,
                            strategy: game.label(*s).to_string(),
                            certificate: certificate_document(&step.before, s.player, cert),
                        })
                        .collect(),
                    policy: trace.policy.name().to_string(),
                })
                .collect(),
            outcome: labels_of(&trace.outcome),
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("trace documents serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))
    }

    /// The relation the document was produced under.
    pub fn relation(&self) -> Result<DominanceRelation> {
        let mode = match &self.belief_mode {
            None => BeliefMode::Pure,
            Some(name) => {
                BeliefMode::from_name(name).ok_or_else(|| Error::structural(format!("unknown belief mode `{name}`")))?
            }
        };
        DominanceRelation::parse(&self.relation, mode)
    }
}

/// Replays `doc` on `game`, re-verifying every certificate against the
/// restriction it was issued in, and checks that the recorded outcome is
/// reached and irreducible. Returns the outcome.
pub fn verify_trace_document(game: &Arc<Game>, doc: &TraceDocument) -> Result<Restriction> {
    let rel = doc.relation()?;
    rel.check_supported(game.players())?;
    let initial: Vec<Vec<String>> = (0..game.players()).map(|i| game.labels(i).to_vec()).collect();
    if doc.initial != initial {
        return Err(invalid("initial labels do not match the game"));
    }
    let mut current = Restriction::full(game);
    for (n, step) in doc.steps.iter().enumerate() {
        if step.removed.is_empty() {
            return Err(invalid(format!("step {} removes nothing", n + 1)));
        }
        let mut removed = Vec::with_capacity(step.removed.len());
        for entry in &step.removed {
            if entry.player == 0 || entry.player > game.players() {
                return Err(invalid(format!("step {} names unknown player {}", n + 1, entry.player)));
            }
            let player = entry.player - 1;
            let s = Strategy::new(player, lookup(game, player, &entry.strategy)?);
            let cert = certificate_from_document(&current, player, &entry.certificate)?;
            if !verify_certificate(&rel, &current, s, &cert)? {
                return Err(invalid(format!(
                    "step {}: certificate for `{}` of player {} does not verify",
                    n + 1,
                    entry.strategy,
                    entry.player
                )));
            }
            removed.push(s);
        }
        current = current.without(&removed)?;
    }
    if labels_of(&current) != doc.outcome {
        return Err(invalid("recorded outcome differs from the replayed one"));
    }
    if !dominated_set(&rel, &current)?.is_empty() {
        return Err(invalid("recorded outcome still has dominated strategies"));
    }
    Ok(current)
}
