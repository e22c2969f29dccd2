//! Sincere picking, policy classes and exact probabilities over a class.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::model::{AgentId, Assignment, Instance, ItemId, Policy, PolicyClass};

/// Default cap on the number of policies any enumeration may visit.
pub const DEFAULT_POLICY_LIMIT: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub turn: usize,
    pub agent: AgentId,
    pub item: ItemId,
}

/// Every pick made while running a policy, plus the resulting assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExecutionTrace {
    pub steps: Vec<Step>,
    pub assignment: Assignment,
}

fn check_policy(inst: &Instance, pi: &Policy) -> Result<()> {
    if pi.len() != inst.num_items() {
        return Err(Error::PolicyLength {
            expected: inst.num_items(),
            found: pi.len(),
        });
    }
    if let Some(&bad) = pi.turns().iter().find(|&&a| a >= inst.num_agents()) {
        return Err(Error::UnknownAgent(format!("#{bad}")));
    }
    Ok(())
}

/// Runs sincere picking: on each turn the agent takes their most preferred
/// item that is still available.
pub fn execute_policy(inst: &Instance, pi: &Policy) -> Result<ExecutionTrace> {
    check_policy(inst, pi)?;
    let mut steps = Vec::with_capacity(pi.len());
    let assignment = run_turns(inst, pi.turns(), |turn, agent, item| {
        steps.push(Step { turn, agent, item })
    });
    Ok(ExecutionTrace { steps, assignment })
}

/// Outcome of a policy whose length and agents are already known to be valid.
pub(crate) fn outcome_of(inst: &Instance, turns: &[AgentId]) -> Assignment {
    run_turns(inst, turns, |_, _, _| {})
}

fn run_turns(
    inst: &Instance,
    turns: &[AgentId],
    mut on_pick: impl FnMut(usize, AgentId, ItemId),
) -> Assignment {
    let m = inst.num_items();
    let mut taken = vec![false; m];
    let mut cursor = vec![0usize; inst.num_agents()];
    let mut owner = vec![0; m];
    for (turn, &agent) in turns.iter().enumerate() {
        let prefs = inst.preference(agent);
        let mut pos = cursor[agent];
        while taken[prefs[pos]] {
            pos += 1;
        }
        let item = prefs[pos];
        cursor[agent] = pos + 1;
        taken[item] = true;
        owner[item] = agent;
        on_pick(turn, agent, item);
    }
    Assignment::from_owners_unchecked(owner, inst.num_agents())
}

fn is_permutation(round: &[AgentId], n: usize) -> bool {
    let mut seen = vec![false; n];
    round.len() == n
        && round
            .iter()
            .all(|&a| a < n && !std::mem::replace(&mut seen[a], true))
}

/// Tests whether `pi` belongs to the policy class `cls`.
pub fn policy_in_class(inst: &Instance, pi: &Policy, cls: PolicyClass) -> Result<bool> {
    check_policy(inst, pi)?;
    if cls == PolicyClass::Arbitrary {
        return Ok(true);
    }
    let k = inst.require_k()?;
    let n = inst.num_agents();
    let turns = pi.turns();
    let mut rounds = turns.chunks(n);
    Ok(match cls {
        PolicyClass::Arbitrary => unreachable!(),
        PolicyClass::Balanced => {
            let mut counts = vec![0usize; n];
            for &a in turns {
                counts[a] += 1;
            }
            counts.iter().all(|&c| c == k)
        }
        PolicyClass::RecursivelyBalanced => rounds.all(|r| is_permutation(r, n)),
        PolicyClass::StrictAlternation => match rounds.next() {
            None => true,
            Some(sigma) => is_permutation(sigma, n) && rounds.all(|r| r == sigma),
        },
        PolicyClass::BalancedAlternation => match rounds.next() {
            None => true,
            Some(sigma) => {
                let reversed: Vec<AgentId> = sigma.iter().rev().copied().collect();
                is_permutation(sigma, n)
                    && rounds.enumerate().all(|(r, round)| {
                        if r % 2 == 0 {
                            round == reversed
                        } else {
                            round == sigma
                        }
                    })
            }
        },
    })
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Exact number of distinct policies in the class.
pub fn class_size(inst: &Instance, cls: PolicyClass) -> Result<BigUint> {
    let n = inst.num_agents();
    let m = inst.num_items();
    if cls == PolicyClass::Arbitrary {
        return Ok(BigUint::from(n).pow(m as u32));
    }
    let k = inst.require_k()?;
    Ok(match cls {
        PolicyClass::Arbitrary => unreachable!(),
        PolicyClass::Balanced => factorial(m) / factorial(k).pow(n as u32),
        PolicyClass::RecursivelyBalanced => factorial(n).pow(k as u32),
        // with no items every ordering collapses onto the empty policy
        PolicyClass::StrictAlternation | PolicyClass::BalancedAlternation if m == 0 => {
            BigUint::one()
        }
        PolicyClass::StrictAlternation | PolicyClass::BalancedAlternation => factorial(n),
    })
}

/// Fails with the exact class size when it exceeds `limit`.
pub fn check_limit(inst: &Instance, cls: PolicyClass, limit: u64) -> Result<u64> {
    let count = class_size(inst, cls)?;
    match count.to_u64() {
        Some(c) if c <= limit => Ok(c),
        _ => Err(Error::SizeLimit { count, limit }),
    }
}

/// Rearranges `v` into the next permutation in lexicographic order. Returns
/// false (leaving `v` sorted ascending) after the last one. Handles repeats.
pub(crate) fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        v.reverse();
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

enum Cursor {
    Arbitrary(Vec<AgentId>),
    Balanced(Vec<AgentId>),
    Rounds(Vec<Vec<AgentId>>),
    Alternation {
        sigma: Vec<AgentId>,
        reverse_even: bool,
        rounds: usize,
    },
}

/// Lexicographic stream over every policy of a class.
pub struct PolicyIter {
    n: usize,
    state: Cursor,
    pending: bool,
}

impl PolicyIter {
    fn current(&self) -> Vec<AgentId> {
        match &self.state {
            Cursor::Arbitrary(v) | Cursor::Balanced(v) => v.clone(),
            Cursor::Rounds(rounds) => rounds.concat(),
            Cursor::Alternation {
                sigma,
                reverse_even,
                rounds,
            } => {
                let reversed: Vec<AgentId> = sigma.iter().rev().copied().collect();
                (0..*rounds)
                    .flat_map(|r| {
                        if *reverse_even && r % 2 == 1 {
                            reversed.clone()
                        } else {
                            sigma.clone()
                        }
                    })
                    .collect()
            }
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.n;
        match &mut self.state {
            Cursor::Arbitrary(v) => {
                for slot in v.iter_mut().rev() {
                    *slot += 1;
                    if *slot < n {
                        return true;
                    }
                    *slot = 0;
                }
                false
            }
            Cursor::Balanced(v) => next_permutation(v),
            Cursor::Rounds(rounds) => rounds.iter_mut().rev().any(|r| next_permutation(r)),
            Cursor::Alternation { sigma, rounds, .. } => *rounds > 0 && next_permutation(sigma),
        }
    }
}

impl Iterator for PolicyIter {
    type Item = Policy;

    fn next(&mut self) -> Option<Policy> {
        if !self.pending {
            return None;
        }
        let out = self.current();
        self.pending = self.advance();
        Some(Policy::new(out))
    }
}

/// Streams every policy of the class in lexicographic order of agent
/// indices. Refuses to start when the class has more than `limit` policies.
pub fn enumerate_policies(inst: &Instance, cls: PolicyClass, limit: u64) -> Result<PolicyIter> {
    check_limit(inst, cls, limit)?;
    let n = inst.num_agents();
    let m = inst.num_items();
    let state = match cls {
        PolicyClass::Arbitrary => Cursor::Arbitrary(vec![0; m]),
        PolicyClass::Balanced => {
            let k = m / n;
            Cursor::Balanced((0..n).flat_map(|a| std::iter::repeat_n(a, k)).collect())
        }
        PolicyClass::RecursivelyBalanced => Cursor::Rounds(vec![(0..n).collect(); m / n]),
        PolicyClass::StrictAlternation | PolicyClass::BalancedAlternation => Cursor::Alternation {
            sigma: (0..n).collect(),
            reverse_even: cls == PolicyClass::BalancedAlternation,
            rounds: m / n,
        },
    };
    Ok(PolicyIter {
        n,
        state,
        pending: true,
    })
}

/// Distinct outcomes over the whole class.
pub fn outcomes(inst: &Instance, cls: PolicyClass, limit: u64) -> Result<BTreeSet<Assignment>> {
    Ok(enumerate_policies(inst, cls, limit)?
        .map(|pi| outcome_of(inst, pi.turns()))
        .collect())
}

/// A property of the outcome of a policy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    AgentGetsItem { agent: AgentId, item: ItemId },
    ShareEquals { agent: AgentId, items: Vec<ItemId> },
    ShareContains { agent: AgentId, items: Vec<ItemId> },
    AssignmentEquals(Assignment),
}

impl Outcome {
    pub fn holds(&self, m: &Assignment) -> bool {
        match self {
            Outcome::AgentGetsItem { agent, item } => m.owner(*item) == *agent,
            Outcome::ShareEquals { agent, items } => {
                m.share_size(*agent) == items.len() && items.iter().all(|&i| m.owner(i) == *agent)
            }
            Outcome::ShareContains { agent, items } => items.iter().all(|&i| m.owner(i) == *agent),
            Outcome::AssignmentEquals(target) => m == target,
        }
    }
}

/// Fraction of the class whose outcome satisfies `outcome`, as a reduced
/// exact rational.
pub fn outcome_probability(
    inst: &Instance,
    cls: PolicyClass,
    outcome: &Outcome,
    limit: u64,
) -> Result<Ratio<u64>> {
    let mut hits = 0u64;
    let mut total = 0u64;
    for pi in enumerate_policies(inst, cls, limit)? {
        total += 1;
        if outcome.holds(&outcome_of(inst, pi.turns())) {
            hits += 1;
        }
    }
    Ok(Ratio::new(hits, total))
}
