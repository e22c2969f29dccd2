//! Depth-first search over the policies of a class, in lexicographic order.
//!
//! Picks are simulated incrementally along the current prefix. Branches that
//! can no longer reach the goal are cut as soon as a pick decides them, and
//! states already shown to be dead are remembered. Sincere picking only looks
//! at which items remain, so a state is fully described by the remaining
//! items, the structural position in the class, and whatever part of the
//! partial outcome the goal depends on.

use std::collections::HashSet;

use crate::engine::{check_limit, Outcome};
use crate::error::Result;
use crate::model::{AgentId, Instance, ItemId, Policy, PolicyClass};

/// Finds the lexicographically least policy of the class whose outcome
/// satisfies `outcome` (when `want` is true) or violates it (when false).
pub fn find_policy(
    inst: &Instance,
    cls: PolicyClass,
    outcome: &Outcome,
    want: bool,
    limit: u64,
) -> Result<Option<Policy>> {
    check_limit(inst, cls, limit)?;
    let n = inst.num_agents();
    let m = inst.num_items();
    let k = if cls == PolicyClass::Arbitrary {
        m
    } else {
        m / n
    };

    let mut set_mask = vec![false; m];
    let set_len = match outcome {
        Outcome::ShareEquals { items, .. } | Outcome::ShareContains { items, .. } => {
            for &i in items {
                set_mask[i] = true;
            }
            items.len()
        }
        _ => 0,
    };
    if !want && set_len == 0 && matches!(outcome, Outcome::ShareContains { .. }) {
        // every share contains the empty set
        return Ok(None);
    }

    let memo_ok = m <= 128
        && n <= 128
        && matches!(
            cls,
            PolicyClass::Arbitrary | PolicyClass::Balanced | PolicyClass::RecursivelyBalanced
        )
        && (cls != PolicyClass::Balanced || radix_fits(n, k));

    let mut search = Search {
        inst,
        cls,
        outcome,
        want,
        n,
        m,
        k,
        set_mask,
        set_len,
        taken: vec![false; m],
        owner: vec![usize::MAX; m],
        cursor: vec![0; n],
        turns: Vec::with_capacity(m),
        counts: vec![0; n],
        in_round: vec![false; n],
        sigma: Vec::with_capacity(n),
        remaining_bits: if m == 128 {
            u128::MAX
        } else {
            (1u128 << m.min(127)) - 1
        },
        progress: 0,
        held_of_set: 0,
        memo: memo_ok.then(HashSet::new),
    };
    Ok(search.dfs().then(|| Policy::new(search.turns)))
}

fn radix_fits(n: usize, k: usize) -> bool {
    let mut total: u128 = 1;
    for _ in 0..n {
        match total.checked_mul(k as u128 + 1) {
            Some(t) => total = t,
            None => return false,
        }
    }
    true
}

struct Search<'a> {
    inst: &'a Instance,
    cls: PolicyClass,
    outcome: &'a Outcome,
    want: bool,
    n: usize,
    m: usize,
    k: usize,
    set_mask: Vec<bool>,
    set_len: usize,
    taken: Vec<bool>,
    owner: Vec<AgentId>,
    cursor: Vec<usize>,
    turns: Vec<AgentId>,
    counts: Vec<usize>,
    in_round: Vec<bool>,
    sigma: Vec<AgentId>,
    remaining_bits: u128,
    // goal-relevant summary of the partial outcome (agent's share, or a
    // mismatch flag for whole-assignment goals)
    progress: u128,
    held_of_set: usize,
    memo: Option<HashSet<(u128, u128, u128)>>,
}

impl Search<'_> {
    fn structure_key(&self) -> u128 {
        match self.cls {
            PolicyClass::Balanced => self
                .counts
                .iter()
                .fold(0u128, |acc, &c| acc * (self.k as u128 + 1) + c as u128),
            PolicyClass::RecursivelyBalanced => self
                .in_round
                .iter()
                .enumerate()
                .fold(0u128, |acc, (a, &used)| acc | ((used as u128) << a)),
            _ => 0,
        }
    }

    /// Agent forced or allowed at the current turn, in increasing order.
    fn candidates(&self) -> Vec<AgentId> {
        let t = self.turns.len();
        let n = self.n;
        match self.cls {
            PolicyClass::Arbitrary => (0..n).collect(),
            PolicyClass::Balanced => (0..n).filter(|&a| self.counts[a] < self.k).collect(),
            PolicyClass::RecursivelyBalanced => (0..n).filter(|&a| !self.in_round[a]).collect(),
            PolicyClass::StrictAlternation | PolicyClass::BalancedAlternation if t < n => {
                (0..n).filter(|&a| !self.in_round[a]).collect()
            }
            PolicyClass::StrictAlternation => vec![self.sigma[t % n]],
            PolicyClass::BalancedAlternation => {
                let pos = t % n;
                if (t / n).is_multiple_of(2) {
                    vec![self.sigma[pos]]
                } else {
                    vec![self.sigma[n - 1 - pos]]
                }
            }
        }
    }

    /// Whether a pick rules out reaching the goal.
    fn pick_kills(&self, agent: AgentId, item: ItemId) -> bool {
        match (self.outcome, self.want) {
            (Outcome::AgentGetsItem { agent: a, item: o }, true) => item == *o && agent != *a,
            (Outcome::AgentGetsItem { agent: a, item: o }, false) => item == *o && agent == *a,
            (Outcome::ShareEquals { agent: a, .. }, true) => (agent == *a) != self.set_mask[item],
            (Outcome::ShareContains { agent: a, .. }, true) => agent != *a && self.set_mask[item],
            (Outcome::ShareContains { agent: a, .. }, false) => {
                agent == *a && self.set_mask[item] && self.held_of_set + 1 == self.set_len
            }
            (Outcome::AssignmentEquals(target), true) => target.owner(item) != agent,
            (Outcome::ShareEquals { .. }, false) | (Outcome::AssignmentEquals(_), false) => false,
        }
    }

    fn update_progress(&mut self, agent: AgentId, item: ItemId) -> u128 {
        let old = self.progress;
        match self.outcome {
            Outcome::AgentGetsItem { agent: a, .. }
            | Outcome::ShareEquals { agent: a, .. }
            | Outcome::ShareContains { agent: a, .. } => {
                if agent == *a && item < 128 {
                    self.progress |= 1u128 << item;
                }
            }
            Outcome::AssignmentEquals(target) => {
                if target.owner(item) != agent {
                    self.progress = 1;
                }
            }
        }
        old
    }

    fn dfs(&mut self) -> bool {
        let t = self.turns.len();
        if t == self.m {
            let m = crate::model::Assignment::from_owners_unchecked(self.owner.clone(), self.n);
            return self.outcome.holds(&m) == self.want;
        }
        let key = (self.remaining_bits, self.progress, self.structure_key());
        if let Some(memo) = &self.memo {
            if memo.contains(&key) {
                return false;
            }
        }
        let round_start = t.is_multiple_of(self.n);
        let saved_round = if round_start && t > 0 && self.uses_rounds(t) {
            Some(std::mem::replace(&mut self.in_round, vec![false; self.n]))
        } else {
            None
        };

        let mut found = false;
        for agent in self.candidates() {
            let prefs = self.inst.preference(agent);
            let old_cursor = self.cursor[agent];
            let mut pos = old_cursor;
            while self.taken[prefs[pos]] {
                pos += 1;
            }
            let item = prefs[pos];
            if self.pick_kills(agent, item) {
                continue;
            }
            self.cursor[agent] = pos + 1;
            self.taken[item] = true;
            self.owner[item] = agent;
            self.remaining_bits &= !(1u128 << item.min(127));
            let old_progress = self.update_progress(agent, item);
            let counted = agent == self.share_agent() && self.set_mask[item];
            if counted {
                self.held_of_set += 1;
            }
            self.turns.push(agent);
            self.counts[agent] += 1;
            let marks_round = self.marks_round(t);
            if marks_round {
                self.in_round[agent] = true;
            }
            let pushed_sigma = self.cls_is_alternation() && t < self.n;
            if pushed_sigma {
                self.sigma.push(agent);
            }

            found = self.dfs();

            if pushed_sigma && !found {
                self.sigma.pop();
            }
            if found {
                break;
            }
            if marks_round {
                self.in_round[agent] = false;
            }
            self.counts[agent] -= 1;
            self.turns.pop();
            if counted {
                self.held_of_set -= 1;
            }
            self.progress = old_progress;
            if item < 128 {
                self.remaining_bits |= 1u128 << item;
            }
            self.owner[item] = usize::MAX;
            self.taken[item] = false;
            self.cursor[agent] = old_cursor;
        }

        if found {
            return true;
        }
        if let Some(saved) = saved_round {
            self.in_round = saved;
        }
        if let Some(memo) = &mut self.memo {
            memo.insert(key);
        }
        false
    }

    fn cls_is_alternation(&self) -> bool {
        matches!(
            self.cls,
            PolicyClass::StrictAlternation | PolicyClass::BalancedAlternation
        )
    }

    fn uses_rounds(&self, _t: usize) -> bool {
        self.cls == PolicyClass::RecursivelyBalanced
    }

    fn marks_round(&self, t: usize) -> bool {
        self.cls == PolicyClass::RecursivelyBalanced || (self.cls_is_alternation() && t < self.n)
    }

    fn share_agent(&self) -> AgentId {
        match self.outcome {
            Outcome::ShareContains { agent, .. } | Outcome::ShareEquals { agent, .. } => *agent,
            _ => usize::MAX,
        }
    }
}
