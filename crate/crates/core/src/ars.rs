//! Finite abstract reduction systems: normal forms, weak confluence, the
//! unique normal form property, and a randomized check of Newman's lemma
//! (termination and weak confluence imply unique normal forms).

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::random;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteArs {
    nodes: usize,
    succ: Vec<Vec<usize>>,
}

impl FiniteArs {
    pub fn new(nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nodes];
        for (a, b) in edges {
            if a >= nodes || b >= nodes {
                return Err(Error::structural(format!("edge ({a}, {b}) outside {nodes} nodes")));
            }
            succ[a].insert(b);
        }
        Ok(FiniteArs { nodes, succ: succ.into_iter().map(|s| s.into_iter().collect()).collect() })
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn successors(&self, a: usize) -> &[usize] {
        &self.succ[a]
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    /// `{b : a →* b}`, including `a` itself.
    pub fn reachable(&self, a: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([a]);
        let mut stack = vec![a];
        while let Some(x) = stack.pop() {
            for &y in &self.succ[x] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        seen
    }

    /// The sinks reachable from `a` (itself when `a` is a sink).
    pub fn normal_forms(&self, a: usize) -> BTreeSet<usize> {
        self.reachable(a).into_iter().filter(|&b| self.succ[b].is_empty()).collect()
    }

    /// A node on a cycle, if any.
    pub fn find_cycle(&self) -> Option<usize> {
        // 0 unvisited, 1 on stack, 2 done
        let mut state = vec![0u8; self.nodes];
        for root in 0..self.nodes {
            if state[root] != 0 {
                continue;
            }
            let mut stack = vec![(root, 0usize)];
            state[root] = 1;
            while let Some((x, k)) = stack.pop() {
                if let Some(&y) = self.succ[x].get(k) {
                    stack.push((x, k + 1));
                    match state[y] {
                        1 => return Some(y),
                        0 => {
                            state[y] = 1;
                            stack.push((y, 0));
                        }
                        _ => {}
                    }
                } else {
                    state[x] = 2;
                }
            }
        }
        None
    }

    pub fn is_terminating(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Whenever `a → b` and `a → c`, some `d` has `b →* d` and `c →* d`.
    /// On failure returns the first `(a, b, c)` without a common reduct.
    pub fn weak_confluence_counterexample(&self) -> Option<(usize, usize, usize)> {
        let reach: Vec<BTreeSet<usize>> = (0..self.nodes).map(|a| self.reachable(a)).collect();
        for a in 0..self.nodes {
            let s = &self.succ[a];
            for (x, &b) in s.iter().enumerate() {
                for &c in &s[x + 1..] {
                    if reach[b].is_disjoint(&reach[c]) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_weakly_confluent(&self) -> bool {
        self.weak_confluence_counterexample().is_none()
    }

    /// Every node has exactly one normal form. Only defined for
    /// terminating systems.
    pub fn has_unique_normal_forms(&self) -> Result<bool> {
        if let Some(node) = self.find_cycle() {
            return Err(Error::CyclicSystem { node });
        }
        Ok((0..self.nodes).all(|a| self.normal_forms(a).len() == 1))
    }
}

pub fn ars_normal_forms(ars: &FiniteArs, node: usize) -> BTreeSet<usize> {
    ars.normal_forms(node)
}

pub fn ars_is_weakly_confluent(ars: &FiniteArs) -> (bool, Option<(usize, usize, usize)>) {
    let cex = ars.weak_confluence_counterexample();
    (cex.is_none(), cex)
}

pub fn ars_unique_nf(ars: &FiniteArs) -> Result<bool> {
    ars.has_unique_normal_forms()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NewmanReport {
    pub samples: usize,
    pub weakly_confluent: usize,
    pub not_weakly_confluent: usize,
    pub unique_normal_forms: usize,
    /// Weakly confluent samples without unique normal forms.
    pub failures: usize,
}

/// Samples `samples` random DAGs with 1 to `max_nodes` nodes and edge
/// probability `numer / denom`, and counts how often weak confluence holds
/// without unique normal forms. Newman's lemma says never.
pub fn newman_experiment(
    max_nodes: usize,
    numer: u64,
    denom: u64,
    samples: usize,
    seed: u64,
    exec: Execution,
) -> Result<NewmanReport> {
    if max_nodes == 0 || denom == 0 || numer > denom {
        return Err(Error::structural("need at least one node and an edge probability in [0, 1]"));
    }
    let ids: Vec<u64> = (0..samples as u64).collect();
    let outcomes = par::try_map(exec, &ids, |&k| -> Result<(bool, bool)> {
        let mut rng = random::rng(seed, k);
        let nodes = rand::Rng::gen_range(&mut rng, 1..=max_nodes);
        let ars = random::random_dag(&mut rng, nodes, numer, denom);
        Ok((ars.is_weakly_confluent(), ars.has_unique_normal_forms()?))
    })?;
    let mut report = NewmanReport { samples, ..Default::default() };
    for (wc, unf) in outcomes {
        if wc {
            report.weakly_confluent += 1;
        } else {
            report.not_weakly_confluent += 1;
        }
        if unf {
            report.unique_normal_forms += 1;
        }
        if wc && !unf {
            report.failures += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> FiniteArs {
        FiniteArs::new(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn fork() -> FiniteArs {
        FiniteArs::new(3, [(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn normal_forms() {
        assert_eq!(ars_normal_forms(&diamond(), 0), BTreeSet::from([3]));
        assert_eq!(ars_normal_forms(&fork(), 0), BTreeSet::from([1, 2]));
        let lone = FiniteArs::new(1, []).unwrap();
        assert_eq!(ars_normal_forms(&lone, 0), BTreeSet::from([0]));
    }

    #[test]
    fn weak_confluence() {
        assert_eq!(ars_is_weakly_confluent(&diamond()), (true, None));
        assert_eq!(ars_is_weakly_confluent(&fork()), (false, Some((0, 1, 2))));
        assert!(FiniteArs::new(5, []).unwrap().is_weakly_confluent());
    }

    #[test]
    fn unique_normal_forms() {
        assert!(ars_unique_nf(&diamond()).unwrap());
        assert!(!ars_unique_nf(&fork()).unwrap());
        assert!(ars_unique_nf(&FiniteArs::new(3, [(0, 1), (1, 2)]).unwrap()).unwrap());
        let cyclic = FiniteArs::new(3, [(0, 1), (1, 2), (2, 1)]).unwrap();
        assert!(matches!(ars_unique_nf(&cyclic), Err(Error::CyclicSystem { .. })));
    }

    #[test]
    fn weakly_confluent_cycles_can_lack_unique_normal_forms() {
        // The classic b ← a ⇄ c → d: weakly confluent, not terminating,
        // with two normal forms.
        let ars = FiniteArs::new(4, [(0, 1), (0, 2), (2, 0), (2, 3)]).unwrap();
        assert!(ars.is_weakly_confluent());
        assert!(!ars.is_terminating());
        assert_eq!(ars.normal_forms(0), BTreeSet::from([1, 3]));
    }

    #[test]
    fn bad_edges_rejected() {
        assert!(FiniteArs::new(2, [(0, 2)]).is_err());
    }
}
