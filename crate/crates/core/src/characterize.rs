//! Which assignments each policy class can produce, with witness policies.
//!
//! For a balanced assignment write `p[j][i]` for the `i`-th best item in
//! agent `j`'s own bundle. A recursively balanced policy hands out exactly
//! the items `p[.][i]` in round `i`, so all five classes can be decided from
//! Pareto optimality, balance, a cross-round check, and (for the two
//! alternation classes) acyclicity of a precedence graph over the agents.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{AgentId, Assignment, Instance, ItemId, Policy, PolicyClass};
use crate::pareto::{is_pareto_optimal, witness_picking_sequence};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    /// Round rule reversed on even rounds (balanced alternation).
    Alternating,
    /// Same round rule every round (strict alternation).
    Uniform,
}

/// Directed graph over agents; an edge `u -> v` means `u` must pick before
/// `v` in the first round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecedenceGraph {
    pub kind: GraphKind,
    num_agents: usize,
    edges: BTreeSet<(AgentId, AgentId)>,
}

impl PrecedenceGraph {
    pub fn edges(&self) -> &BTreeSet<(AgentId, AgentId)> {
        &self.edges
    }

    /// Kahn's algorithm, always releasing the lowest-indexed ready agent.
    /// `None` when the graph has a cycle.
    pub fn topological_order(&self) -> Option<Vec<AgentId>> {
        let n = self.num_agents;
        let mut indegree = vec![0usize; n];
        for &(_, v) in &self.edges {
            indegree[v] += 1;
        }
        let mut ready: BTreeSet<AgentId> = (0..n).filter(|&a| indegree[a] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(u) = ready.pop_first() {
            order.push(u);
            for &(_, v) in self.edges.range((u, 0)..(u + 1, 0)) {
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    ready.insert(v);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }
}

/// `p[j][i]`: agent `j`'s bundle sorted by their own preference.
fn ranked_shares(inst: &Instance, m: &Assignment) -> Vec<Vec<ItemId>> {
    (0..inst.num_agents())
        .map(|a| m.ranked_share(inst, a))
        .collect()
}

fn require_balanced(inst: &Instance, m: &Assignment) -> Result<usize> {
    let k = inst.require_k()?;
    if !m.is_balanced(k) {
        return Err(Error::Unbalanced { k });
    }
    Ok(k)
}

/// Nobody prefers another agent's item from a later round to their own item
/// from an earlier round.
pub fn check_condition3(inst: &Instance, m: &Assignment) -> Result<bool> {
    let k = require_balanced(inst, m)?;
    let p = ranked_shares(inst, m);
    let n = inst.num_agents();
    for j in 0..n {
        for other in (0..n).filter(|&o| o != j) {
            for t in 0..k {
                for s in t + 1..k {
                    if !inst.prefers(j, p[j][t], p[other][s]) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[allow(clippy::needless_range_loop)]
fn graph_unchecked(
    inst: &Instance,
    p: &[Vec<ItemId>],
    k: usize,
    kind: GraphKind,
) -> PrecedenceGraph {
    let n = inst.num_agents();
    let mut edges = BTreeSet::new();
    for i in 0..k {
        // rounds are 1-based in the rule: round i+1 is even when i is odd
        let reversed = kind == GraphKind::Alternating && i % 2 == 1;
        for j in 0..n {
            for other in (0..n).filter(|&o| o != j) {
                if inst.prefers(j, p[other][i], p[j][i]) {
                    edges.insert(if reversed { (j, other) } else { (other, j) });
                }
            }
        }
    }
    PrecedenceGraph {
        kind,
        num_agents: n,
        edges,
    }
}

/// Builds the precedence graph of an assignment that a recursively balanced
/// policy can produce.
pub fn build_precedence_graph(
    inst: &Instance,
    m: &Assignment,
    kind: GraphKind,
) -> Result<PrecedenceGraph> {
    let k = require_balanced(inst, m)?;
    if !is_pareto_optimal(inst, m)? || !check_condition3(inst, m)? {
        return Err(Error::Precondition(
            "precedence graphs need an assignment reachable by a recursively balanced policy"
                .into(),
        ));
    }
    Ok(graph_unchecked(inst, &ranked_shares(inst, m), k, kind))
}

/// Decides whether some policy of `cls` produces `m`. Returns a witness
/// policy from the class when it does.
pub fn achievable(inst: &Instance, m: &Assignment, cls: PolicyClass) -> Result<Option<Policy>> {
    if m.num_items() != inst.num_items() || m.num_agents() != inst.num_agents() {
        return Err(Error::Precondition(
            "assignment does not belong to this instance".into(),
        ));
    }
    if cls == PolicyClass::Arbitrary {
        return Ok(if is_pareto_optimal(inst, m)? {
            Some(witness_picking_sequence(inst, m)?)
        } else {
            None
        });
    }
    let k = inst.require_k()?;
    if !m.is_balanced(k) || !is_pareto_optimal(inst, m)? {
        return Ok(None);
    }
    if cls == PolicyClass::Balanced {
        // the greedy sequence gives each agent exactly their bundle size
        return Ok(Some(witness_picking_sequence(inst, m)?));
    }
    if !check_condition3(inst, m)? {
        return Ok(None);
    }
    let p = ranked_shares(inst, m);
    let kind = match cls {
        PolicyClass::RecursivelyBalanced => return Ok(Some(round_by_round(inst, &p, k))),
        PolicyClass::StrictAlternation => GraphKind::Uniform,
        PolicyClass::BalancedAlternation => GraphKind::Alternating,
        PolicyClass::Arbitrary | PolicyClass::Balanced => unreachable!(),
    };
    let Some(sigma) = graph_unchecked(inst, &p, k, kind).topological_order() else {
        return Ok(None);
    };
    Ok(Some(expand_first_round(&sigma, k, cls)))
}

/// Repeats a first-round order over `k` rounds for an alternation class.
pub fn expand_first_round(sigma: &[AgentId], k: usize, cls: PolicyClass) -> Policy {
    let reversed: Vec<AgentId> = sigma.iter().rev().copied().collect();
    let mut turns = Vec::with_capacity(sigma.len() * k);
    for r in 0..k {
        if cls == PolicyClass::BalancedAlternation && r % 2 == 1 {
            turns.extend_from_slice(&reversed);
        } else {
            turns.extend_from_slice(sigma);
        }
    }
    Policy::new(turns)
}

/// One order per round: within round `i`, the lowest-indexed agent whose
/// favourite remaining item is their `p[j][i]` goes next.
fn round_by_round(inst: &Instance, p: &[Vec<ItemId>], k: usize) -> Policy {
    let n = inst.num_agents();
    let mut taken = vec![false; inst.num_items()];
    let mut turns = Vec::with_capacity(n * k);
    for i in 0..k {
        let mut done = vec![false; n];
        for _ in 0..n {
            let j = (0..n)
                .find(|&j| !done[j] && inst.top_available(j, &taken) == Some(p[j][i]))
                .expect("conditions 1-3 guarantee an eligible agent in every round");
            done[j] = true;
            taken[p[j][i]] = true;
            turns.push(j);
        }
    }
    Policy::new(turns)
}
