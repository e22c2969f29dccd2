//! Pareto optimality through the cloned trading graph.
//!
//! Every item an agent owns gets its own clone of that agent. A clone points
//! to each item its agent strictly prefers to the one it holds, and each item
//! points back to the clone holding it. The assignment is Pareto optimal
//! exactly when this graph has no cycle.

use crate::error::{Error, Result};
use crate::model::{AgentId, Assignment, Instance, ItemId, Policy};

/// Node numbering: clone of the holder of item `i` is node `i`, item `i` is
/// node `m + i`.
#[derive(Clone, Debug)]
pub struct TradingGraph {
    m: usize,
    adjacency: Vec<Vec<usize>>,
}

impl TradingGraph {
    pub fn new(inst: &Instance, assignment: &Assignment) -> Self {
        let m = inst.num_items();
        let mut adjacency = vec![Vec::new(); 2 * m];
        for held in 0..m {
            let agent = assignment.owner(held);
            adjacency[held] = inst
                .preference(agent)
                .iter()
                .take(inst.rank(agent, held))
                .map(|&better| m + better)
                .collect();
            adjacency[m + held].push(held);
        }
        TradingGraph { m, adjacency }
    }

    pub fn num_nodes(&self) -> usize {
        self.adjacency.len()
    }

    pub fn successors(&self, node: usize) -> &[usize] {
        &self.adjacency[node]
    }

    pub fn is_clone(&self, node: usize) -> bool {
        node < self.m
    }

    /// First cycle met by a depth-first search started from the lowest
    /// numbered nodes, as a list of nodes.
    pub fn find_cycle(&self) -> Option<Vec<usize>> {
        const WHITE: u8 = 0;
        const GREY: u8 = 1;
        const BLACK: u8 = 2;
        let mut colour = vec![WHITE; self.num_nodes()];
        let mut path: Vec<usize> = Vec::new();
        // explicit stack of (node, next successor index)
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for root in 0..self.num_nodes() {
            if colour[root] != WHITE {
                continue;
            }
            colour[root] = GREY;
            path.push(root);
            stack.push((root, 0));
            while let Some(top) = stack.last_mut() {
                let node = top.0;
                if let Some(&succ) = self.adjacency[node].get(top.1) {
                    top.1 += 1;
                    match colour[succ] {
                        WHITE => {
                            colour[succ] = GREY;
                            path.push(succ);
                            stack.push((succ, 0));
                        }
                        GREY => {
                            let start = path.iter().position(|&v| v == succ).unwrap();
                            return Some(path[start..].to_vec());
                        }
                        _ => {}
                    }
                } else {
                    colour[node] = BLACK;
                    path.pop();
                    stack.pop();
                }
            }
        }
        None
    }
}

/// True iff no other assignment gives every agent an itemwise weakly better
/// bundle and someone a strictly better one.
pub fn is_pareto_optimal(inst: &Instance, assignment: &Assignment) -> Result<bool> {
    check(inst, assignment)?;
    Ok(TradingGraph::new(inst, assignment).find_cycle().is_none())
}

fn check(inst: &Instance, assignment: &Assignment) -> Result<()> {
    if assignment.num_items() != inst.num_items() || assignment.num_agents() != inst.num_agents() {
        return Err(Error::Precondition(
            "assignment does not belong to this instance".into(),
        ));
    }
    Ok(())
}

/// Executes trading cycles until none is left. The result is Pareto optimal
/// and every agent's bundle is itemwise at least as good as before.
pub fn pareto_improve(inst: &Instance, assignment: &Assignment) -> Result<Assignment> {
    check(inst, assignment)?;
    let m = inst.num_items();
    let mut owner = assignment.owners().to_vec();
    loop {
        let current = Assignment::from_owners_unchecked(owner.clone(), inst.num_agents());
        let Some(cycle) = TradingGraph::new(inst, &current).find_cycle() else {
            return Ok(current);
        };
        // each clone in the cycle receives the item it points to
        let len = cycle.len();
        let mut moves = Vec::new();
        for (pos, &node) in cycle.iter().enumerate() {
            if node < m {
                let next = cycle[(pos + 1) % len];
                moves.push((next - m, current.owner(node)));
            }
        }
        for (item, agent) in moves {
            owner[item] = agent;
        }
    }
}

/// A picking sequence whose outcome is exactly `assignment`. At every step
/// the lowest-indexed agent whose favourite remaining item is in their own
/// bundle picks next.
pub fn witness_picking_sequence(inst: &Instance, assignment: &Assignment) -> Result<Policy> {
    check(inst, assignment)?;
    let m = inst.num_items();
    let mut taken = vec![false; m];
    let mut turns = Vec::with_capacity(m);
    let mut left: Vec<usize> = (0..inst.num_agents())
        .map(|a| assignment.share_size(a))
        .collect();
    for _ in 0..m {
        let next = (0..inst.num_agents()).find_map(|a| {
            if left[a] == 0 {
                return None;
            }
            let top = inst.top_available(a, &taken)?;
            (assignment.owner(top) == a).then_some((a, top))
        });
        let Some((agent, item)) = next else {
            return Err(Error::NotParetoOptimal);
        };
        taken[item] = true;
        left[agent] -= 1;
        turns.push(agent);
    }
    Ok(Policy::new(turns))
}

/// Sorted ranks of each agent's bundle; `better` weakly dominates `base`
/// itemwise when every entry is no larger.
pub fn weakly_dominates(inst: &Instance, better: &Assignment, base: &Assignment) -> bool {
    (0..inst.num_agents()).all(|a: AgentId| {
        let rb: Vec<usize> = rank_profile(inst, better, a);
        let ra: Vec<usize> = rank_profile(inst, base, a);
        rb.len() == ra.len() && rb.iter().zip(&ra).all(|(x, y)| x <= y)
    })
}

fn rank_profile(inst: &Instance, m: &Assignment, agent: AgentId) -> Vec<usize> {
    m.ranked_share(inst, agent)
        .iter()
        .map(|&i: &ItemId| inst.rank(agent, i))
        .collect()
}
