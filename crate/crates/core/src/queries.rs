//! Possible and necessary allocation queries.
//!
//! [`solve`] routes each (problem, class) pair to a polynomial algorithm when
//! one is known and otherwise searches the policy class exhaustively.
//!
//! | problem              | arbitrary | balanced  | rec-balanced | strict-alt | bal-alt |
//! |----------------------|-----------|-----------|--------------|------------|---------|
//! | possible item        | exact     | search    | search       | search     | search  |
//! | necessary item       | exact     | exact     | search       | search     | search  |
//! | possible set         | exact     | top-k     | top-2        | top-2      | search  |
//! | necessary set        | exact     | exact     | search       | search     | search  |
//! | possible subset      | exact     | search    | search       | search     | search  |
//! | necessary subset     | exact     | exact     | search       | search     | search  |
//! | possible assignment  | exact     | exact     | exact        | exact      | exact   |
//! | necessary assignment | exact     | exact     | exact        | exact      | exact   |
//!
//! "top-k" means the exact route applies when the target set is the agent's
//! `k = m/n` favourite items; "top-2" additionally needs `k = 2`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::characterize::achievable;
use crate::engine::{class_size, execute_policy, Outcome};
use crate::error::{Error, Result};
use crate::flows::{max_bipartite_matching, max_flow, FlowNetwork};
use crate::model::{AgentId, Assignment, Instance, ItemId, Policy, PolicyClass};
use crate::pareto::{is_pareto_optimal, pareto_improve, witness_picking_sequence};
use crate::search::find_policy;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    PossibleItem,
    NecessaryItem,
    PossibleSet,
    NecessarySet,
    PossibleSubset,
    NecessarySubset,
    PossibleAssignment,
    NecessaryAssignment,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arity {
    AgentItem,
    AgentSet,
    Assignment,
}

impl Problem {
    pub const ALL: [Problem; 8] = [
        Problem::PossibleItem,
        Problem::NecessaryItem,
        Problem::PossibleSet,
        Problem::NecessarySet,
        Problem::PossibleSubset,
        Problem::NecessarySubset,
        Problem::PossibleAssignment,
        Problem::NecessaryAssignment,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::PossibleItem => "possible-item",
            Problem::NecessaryItem => "necessary-item",
            Problem::PossibleSet => "possible-set",
            Problem::NecessarySet => "necessary-set",
            Problem::PossibleSubset => "possible-subset",
            Problem::NecessarySubset => "necessary-subset",
            Problem::PossibleAssignment => "possible-assignment",
            Problem::NecessaryAssignment => "necessary-assignment",
        }
    }

    pub fn is_possible(self) -> bool {
        matches!(
            self,
            Problem::PossibleItem
                | Problem::PossibleSet
                | Problem::PossibleSubset
                | Problem::PossibleAssignment
        )
    }

    pub fn arity(self) -> Arity {
        match self {
            Problem::PossibleItem | Problem::NecessaryItem => Arity::AgentItem,
            Problem::PossibleSet
            | Problem::NecessarySet
            | Problem::PossibleSubset
            | Problem::NecessarySubset => Arity::AgentSet,
            Problem::PossibleAssignment | Problem::NecessaryAssignment => Arity::Assignment,
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Problem {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Problem::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown problem {s:?}"))
    }
}

/// A decision problem together with its arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub problem: Problem,
    pub cls: PolicyClass,
    pub agent: Option<AgentId>,
    pub item: Option<ItemId>,
    pub item_set: Option<Vec<ItemId>>,
    pub target: Option<Assignment>,
    /// The set is the agent's `k = m/n` favourite items. When no set is given
    /// it is filled in; a given set must match.
    pub top_k: bool,
}

impl Query {
    pub fn item(problem: Problem, cls: PolicyClass, agent: AgentId, item: ItemId) -> Self {
        Query {
            problem,
            cls,
            agent: Some(agent),
            item: Some(item),
            item_set: None,
            target: None,
            top_k: false,
        }
    }

    pub fn set(problem: Problem, cls: PolicyClass, agent: AgentId, items: Vec<ItemId>) -> Self {
        Query {
            problem,
            cls,
            agent: Some(agent),
            item: None,
            item_set: Some(items),
            target: None,
            top_k: false,
        }
    }

    pub fn top_k(problem: Problem, cls: PolicyClass, agent: AgentId) -> Self {
        Query {
            problem,
            cls,
            agent: Some(agent),
            item: None,
            item_set: None,
            target: None,
            top_k: true,
        }
    }

    pub fn assignment(problem: Problem, cls: PolicyClass, target: Assignment) -> Self {
        Query {
            problem,
            cls,
            agent: None,
            item: None,
            item_set: None,
            target: Some(target),
            top_k: false,
        }
    }

    /// The property of outcomes the query asks about.
    pub fn outcome(&self, inst: &Instance) -> Result<Outcome> {
        Ok(match self.checked(inst)? {
            Args::Item(agent, item) => Outcome::AgentGetsItem { agent, item },
            Args::Set(agent, items) => match self.problem {
                Problem::PossibleSet | Problem::NecessarySet => {
                    Outcome::ShareEquals { agent, items }
                }
                _ => Outcome::ShareContains { agent, items },
            },
            Args::Assignment(m) => Outcome::AssignmentEquals(m),
        })
    }

    fn checked(&self, inst: &Instance) -> Result<Args> {
        let arity = self.problem.arity();
        let expects = |present: bool, wanted: bool, what: &str| -> Result<()> {
            match (present, wanted) {
                (true, false) => Err(Error::Arity(format!("{} takes no {what}", self.problem))),
                (false, true) => Err(Error::Arity(format!("{} needs {what}", self.problem))),
                _ => Ok(()),
            }
        };
        expects(self.agent.is_some(), arity != Arity::Assignment, "agent")?;
        expects(self.item.is_some(), arity == Arity::AgentItem, "item")?;
        expects(
            self.item_set.is_some() || self.top_k,
            arity == Arity::AgentSet,
            "item set",
        )?;
        expects(
            self.target.is_some(),
            arity == Arity::Assignment,
            "target assignment",
        )?;

        if let Some(agent) = self.agent {
            if agent >= inst.num_agents() {
                return Err(Error::Precondition(format!(
                    "agent index {agent} out of range"
                )));
            }
        }
        match arity {
            Arity::AgentItem => {
                let item = self.item.unwrap();
                if item >= inst.num_items() {
                    return Err(Error::Precondition(format!(
                        "item index {item} out of range"
                    )));
                }
                Ok(Args::Item(self.agent.unwrap(), item))
            }
            Arity::AgentSet => {
                let agent = self.agent.unwrap();
                let top = if self.top_k {
                    let k = inst.require_k()?;
                    Some(sorted(inst.top(agent, k).to_vec()))
                } else {
                    None
                };
                let set = match (&self.item_set, top) {
                    (Some(given), top) => {
                        let set = sorted(given.clone());
                        if set.len() != given.len() {
                            return Err(Error::Precondition("item set lists an item twice".into()));
                        }
                        if set.iter().any(|&i| i >= inst.num_items()) {
                            return Err(Error::Precondition("item index out of range".into()));
                        }
                        if top.is_some_and(|t| t != set) {
                            return Err(Error::Arity(
                                "item set differs from the agent's top-k items".into(),
                            ));
                        }
                        set
                    }
                    (None, top) => top.unwrap(),
                };
                Ok(Args::Set(agent, set))
            }
            Arity::Assignment => {
                let m = self.target.clone().unwrap();
                if m.num_items() != inst.num_items() || m.num_agents() != inst.num_agents() {
                    return Err(Error::Precondition(
                        "target assignment does not belong to this instance".into(),
                    ));
                }
                Ok(Args::Assignment(m))
            }
        }
    }
}

enum Args {
    Item(AgentId, ItemId),
    Set(AgentId, Vec<ItemId>),
    Assignment(Assignment),
}

fn sorted(mut items: Vec<ItemId>) -> Vec<ItemId> {
    items.sort_unstable();
    items.dedup();
    items
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ExactPoly,
    BruteForce,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::ExactPoly => "exact-poly",
            Method::BruteForce => "brute-force",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How [`solve`] may answer a query.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SolveMethod {
    /// Exact algorithm when available, exhaustive search otherwise.
    #[default]
    Auto,
    Exact,
    Brute,
}

impl FromStr for SolveMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "auto" => Ok(SolveMethod::Auto),
            "exact" => Ok(SolveMethod::Exact),
            "brute" => Ok(SolveMethod::Brute),
            other => Err(format!("unknown method {other:?} (auto, exact or brute)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Answer {
    pub decision: bool,
    /// Present for possible-yes and necessary-no answers.
    pub witness: Option<Policy>,
    pub method: Method,
    /// The exact algorithm used is an instantiation of a construction that
    /// is only outlined in the literature.
    pub derived_from_sketch: bool,
    pub class_size: Option<BigUint>,
}

fn answer(
    inst: &Instance,
    cls: PolicyClass,
    decision: bool,
    witness: Option<Policy>,
    method: Method,
) -> Answer {
    Answer {
        decision,
        witness,
        method,
        derived_from_sketch: false,
        class_size: class_size(inst, cls).ok(),
    }
}

fn exact(inst: &Instance, cls: PolicyClass, decision: bool, witness: Option<Policy>) -> Answer {
    answer(inst, cls, decision, witness, Method::ExactPoly)
}

/// Every turn goes to one agent.
fn all_to(inst: &Instance, agent: AgentId) -> Policy {
    Policy::new(vec![agent; inst.num_items()])
}

/// The agent takes the first `k` turns; then every other agent takes `k`
/// consecutive turns, in index order.
fn agent_first_block(inst: &Instance, agent: AgentId, k: usize) -> Policy {
    let mut turns = vec![agent; k];
    for other in (0..inst.num_agents()).filter(|&o| o != agent) {
        turns.extend(std::iter::repeat_n(other, k));
    }
    Policy::new(turns)
}

/// Answers a query.
pub fn solve(inst: &Instance, q: &Query, method: SolveMethod, limit: u64) -> Result<Answer> {
    let args = q.checked(inst)?;
    if q.cls.needs_balance() {
        inst.require_k()?;
    }
    if method == SolveMethod::Brute {
        return brute_force_solve(inst, q, limit);
    }
    match exact_route(inst, q.problem, q.cls, args)? {
        Some(ans) => Ok(ans),
        None if method == SolveMethod::Exact => Err(Error::NoExactAlgorithm {
            problem: q.problem.to_string(),
            class: q.cls.to_string(),
        }),
        None => brute_force_solve(inst, q, limit),
    }
}

/// Whether [`solve`] has a polynomial route for the query.
pub fn has_exact_algorithm(inst: &Instance, q: &Query) -> Result<bool> {
    let args = q.checked(inst)?;
    Ok(route_exists(inst, q.problem, q.cls, &args))
}

fn route_exists(inst: &Instance, problem: Problem, cls: PolicyClass, args: &Args) -> bool {
    use PolicyClass::*;
    use Problem::*;
    if inst.num_items() == 0 || inst.num_agents() == 1 {
        return true;
    }
    let top_set = |k: usize| match args {
        Args::Set(agent, set) => *set == sorted(inst.top(*agent, k).to_vec()),
        _ => false,
    };
    let k = inst.k().unwrap_or(0);
    match (cls, problem) {
        (Arbitrary, _) => true,
        (_, PossibleAssignment | NecessaryAssignment) => true,
        (Balanced, NecessaryItem | NecessarySet | NecessarySubset) => true,
        (Balanced, PossibleSet) => top_set(k),
        (RecursivelyBalanced | StrictAlternation, PossibleSet) => k == 2 && top_set(k),
        _ => false,
    }
}

fn exact_route(
    inst: &Instance,
    problem: Problem,
    cls: PolicyClass,
    args: Args,
) -> Result<Option<Answer>> {
    use PolicyClass::*;
    use Problem::*;
    if !route_exists(inst, problem, cls, &args) {
        return Ok(None);
    }
    if inst.num_items() == 0 || inst.num_agents() == 1 {
        return Ok(Some(single_policy(inst, problem, cls, &args)));
    }
    let ans = match (args, problem, cls) {
        (Args::Item(agent, _), PossibleItem, Arbitrary) => {
            exact(inst, cls, true, Some(all_to(inst, agent)))
        }
        (Args::Item(agent, _), NecessaryItem, Arbitrary) => {
            exact(inst, cls, false, Some(all_to(inst, lowest_other(agent))))
        }
        (Args::Set(agent, set), PossibleSet, Arbitrary) => {
            possible_set_arbitrary(inst, agent, &set)
        }
        (Args::Set(agent, set), NecessarySet, Arbitrary) => {
            // someone else takes everything, or the agent does
            let starve = if set.is_empty() {
                agent
            } else {
                lowest_other(agent)
            };
            exact(inst, cls, false, Some(all_to(inst, starve)))
        }
        (Args::Set(agent, set), PossibleSubset, Arbitrary) => {
            possible_subset_arbitrary(inst, agent, &set)
        }
        (Args::Set(agent, set), NecessarySubset, Arbitrary) => {
            if set.is_empty() {
                exact(inst, cls, true, None)
            } else {
                exact(inst, cls, false, Some(all_to(inst, lowest_other(agent))))
            }
        }
        (Args::Assignment(m), PossibleAssignment, _) => {
            let witness = achievable(inst, &m, cls)?;
            exact(inst, cls, witness.is_some(), witness)
        }
        (Args::Assignment(m), NecessaryAssignment, _) => necessary_assignment(inst, &m, cls)?,
        (Args::Item(agent, item), NecessaryItem, Balanced) => {
            necessary_item_balanced(inst, agent, item)?
        }
        (Args::Set(agent, set), NecessarySet, Balanced) => {
            necessary_set_balanced(inst, agent, &set)?
        }
        (Args::Set(agent, set), NecessarySubset, Balanced) => {
            necessary_subset_balanced(inst, agent, &set)?
        }
        (Args::Set(agent, _), PossibleSet, Balanced) => {
            let k = inst.require_k()?;
            exact(inst, cls, true, Some(agent_first_block(inst, agent, k)))
        }
        (Args::Set(agent, _), PossibleSet, RecursivelyBalanced | StrictAlternation) => {
            top2_possible_set(inst, agent, cls)?
        }
        _ => unreachable!("route_exists admitted an unhandled cell"),
    };
    Ok(Some(ans))
}

fn lowest_other(agent: AgentId) -> AgentId {
    if agent == 0 {
        1
    } else {
        0
    }
}

/// With no items, or a single agent, each class holds exactly one policy.
fn single_policy(inst: &Instance, problem: Problem, cls: PolicyClass, args: &Args) -> Answer {
    let pi = all_to(inst, 0);
    let m = execute_policy(inst, &pi).expect("valid policy").assignment;
    let holds = match args {
        Args::Item(agent, item) => m.owner(*item) == *agent,
        Args::Set(agent, set) => match problem {
            Problem::PossibleSet | Problem::NecessarySet => m.share(*agent) == *set,
            _ => set.iter().all(|&i| m.owner(i) == *agent),
        },
        Args::Assignment(target) => m == *target,
    };
    let witness = (holds == problem.is_possible()).then_some(pi);
    exact(inst, cls, holds, witness)
}

/// Greedy construction: other agents pick while their favourite remaining
/// item lies outside `set`; the agent picks while theirs lies inside it.
pub fn possible_set_arbitrary(inst: &Instance, agent: AgentId, set: &[ItemId]) -> Answer {
    let cls = PolicyClass::Arbitrary;
    let m = inst.num_items();
    let mut in_set = vec![false; m];
    for &i in set {
        in_set[i] = true;
    }
    let mut taken = vec![false; m];
    let mut held = 0;
    let mut turns = Vec::with_capacity(m);
    let others: Vec<AgentId> = (0..inst.num_agents()).filter(|&a| a != agent).collect();
    for _ in 0..m {
        let done = held == set.len();
        let other_pick = others.iter().find_map(|&o| {
            let top = inst.top_available(o, &taken)?;
            (!in_set[top]).then_some((o, top))
        });
        let pick = match other_pick {
            Some(p) => Some(p),
            None if done => None,
            None => inst
                .top_available(agent, &taken)
                .filter(|&top| in_set[top])
                .map(|top| (agent, top)),
        };
        let Some((who, item)) = pick else {
            return exact(inst, cls, false, None);
        };
        if who == agent {
            held += 1;
        }
        taken[item] = true;
        turns.push(who);
    }
    if held == set.len() {
        exact(inst, cls, true, Some(Policy::new(turns)))
    } else {
        exact(inst, cls, false, None)
    }
}

/// Always yes: the agent may take every turn.
pub fn possible_subset_arbitrary(inst: &Instance, agent: AgentId, _set: &[ItemId]) -> Answer {
    exact(
        inst,
        PolicyClass::Arbitrary,
        true,
        Some(all_to(inst, agent)),
    )
}

/// Assigns `k` items to each of `others`, every item to exactly one of
/// them, using only admissible pairs. Returns the bundles if possible.
fn cover(
    others: &[AgentId],
    items: &[ItemId],
    k: usize,
    admissible: impl Fn(AgentId, ItemId) -> bool,
) -> Result<Option<Vec<Vec<ItemId>>>> {
    if items.len() != k * others.len() {
        return Ok(None);
    }
    let s = others.len() + items.len();
    let t = s + 1;
    let mut net = FlowNetwork::new(s + 2, s, t);
    for j in 0..others.len() {
        net.add_arc(s, j, k as u64);
    }
    let mut pairs = Vec::new();
    for (j, &agent) in others.iter().enumerate() {
        for (x, &item) in items.iter().enumerate() {
            if admissible(agent, item) {
                pairs.push((net.add_arc(j, others.len() + x, 1), j, item));
            }
        }
    }
    for x in 0..items.len() {
        net.add_arc(others.len() + x, t, 1);
    }
    let flow = max_flow(&net)?;
    if flow.value != (k * others.len()) as u64 {
        return Ok(None);
    }
    let mut bundles = vec![Vec::new(); others.len()];
    for (arc, j, item) in pairs {
        if flow.flows[arc] == 1 {
            bundles[j].push(item);
        }
    }
    Ok(Some(bundles))
}

/// Turns a bundle allocation among `others` over `items` into a picking
/// order of global agent ids that realizes a Pareto improvement of it on the
/// sub-instance.
fn realize(
    inst: &Instance,
    others: &[AgentId],
    items: &[ItemId],
    bundles: &[Vec<ItemId>],
) -> Result<Vec<AgentId>> {
    let sub = inst.restrict(others, items)?;
    let mut local = vec![usize::MAX; inst.num_items()];
    for (pos, &item) in items.iter().enumerate() {
        local[item] = pos;
    }
    let shares: Vec<Vec<ItemId>> = bundles
        .iter()
        .map(|b| b.iter().map(|&i| local[i]).collect())
        .collect();
    let start = Assignment::from_shares(&sub, &shares)?;
    let improved = pareto_improve(&sub, &start)?;
    let order = witness_picking_sequence(&sub, &improved)?;
    Ok(order.turns().iter().map(|&j| others[j]).collect())
}

/// Does the agent get `item` under every balanced policy?
pub fn necessary_item_balanced(inst: &Instance, agent: AgentId, item: ItemId) -> Result<Answer> {
    let cls = PolicyClass::Balanced;
    let k = inst.require_k()?;
    let n = inst.num_agents();
    if n == 1 {
        return Ok(exact(inst, cls, true, None));
    }
    let pos = inst.rank(agent, item) + 1;
    if pos > k {
        return Ok(exact(
            inst,
            cls,
            false,
            Some(agent_first_block(inst, agent, k)),
        ));
    }
    let prefs = inst.preference(agent);
    let above = &prefs[..pos - 1];
    let below = &prefs[pos..];
    let others: Vec<AgentId> = (0..n).filter(|&a| a != agent).collect();
    let size = k - pos + 1;
    let mut chosen: Vec<usize> = (0..size).collect();
    if size <= below.len() {
        loop {
            let left_over: Vec<ItemId> = chosen.iter().map(|&c| below[c]).collect();
            let mut excluded = vec![false; inst.num_items()];
            for &i in above.iter().chain(&left_over) {
                excluded[i] = true;
            }
            let rest: Vec<ItemId> = (0..inst.num_items()).filter(|&i| !excluded[i]).collect();
            let admissible =
                |j: AgentId, x: ItemId| left_over.iter().all(|&y| inst.prefers(j, x, y));
            if let Some(bundles) = cover(&others, &rest, k, admissible)? {
                let mut turns = vec![agent; pos - 1];
                turns.extend(realize(inst, &others, &rest, &bundles)?);
                turns.extend(std::iter::repeat_n(agent, size));
                return Ok(exact(inst, cls, false, Some(Policy::new(turns))));
            }
            if !next_combination(&mut chosen, below.len()) {
                break;
            }
        }
    }
    Ok(exact(inst, cls, true, None))
}

/// Advances a sorted `r`-combination of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let r = c.len();
    for i in (0..r).rev() {
        if c[i] < n - r + i {
            c[i] += 1;
            for j in i + 1..r {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Does the agent's bundle equal `set` under every balanced policy?
pub fn necessary_set_balanced(inst: &Instance, agent: AgentId, set: &[ItemId]) -> Result<Answer> {
    let cls = PolicyClass::Balanced;
    let k = inst.require_k()?;
    let n = inst.num_agents();
    let top = sorted(inst.top(agent, k).to_vec());
    if sorted(set.to_vec()) != top {
        return Ok(exact(
            inst,
            cls,
            false,
            Some(agent_first_block(inst, agent, k)),
        ));
    }
    if n == 1 {
        return Ok(exact(inst, cls, true, None));
    }
    // collapse the top-k items into one item c, placed where each agent
    // ranks the first of them
    let mut in_top = vec![false; inst.num_items()];
    for &i in &top {
        in_top[i] = true;
    }
    let kept: Vec<ItemId> = (0..inst.num_items()).filter(|&i| !in_top[i]).collect();
    let c = kept.len();
    let mut local = vec![usize::MAX; inst.num_items()];
    for (pos, &i) in kept.iter().enumerate() {
        local[i] = pos;
    }
    let orders: Vec<Vec<ItemId>> = (0..n)
        .map(|a| {
            let mut order = Vec::with_capacity(c + 1);
            for &i in inst.preference(a) {
                if !in_top[i] {
                    order.push(local[i]);
                } else if !order.contains(&c) {
                    order.push(c);
                }
            }
            order
        })
        .collect();
    let mut names: Vec<String> = kept
        .iter()
        .map(|&i| inst.item_name(i).to_string())
        .collect();
    names.push(inst.fresh_item_name("top"));
    let reduced = Instance::from_orders(inst.agents().to_vec(), names, orders)?;

    let others: Vec<AgentId> = (0..n).filter(|&a| a != agent).collect();
    for x in 0..c {
        let rest: Vec<ItemId> = (0..=c).filter(|&i| i != x).collect();
        let admissible = |j: AgentId, y: ItemId| reduced.prefers(j, y, x);
        if let Some(bundles) = cover(&others, &rest, k, admissible)? {
            let mut turns = realize(&reduced, &others, &rest, &bundles)?;
            turns.extend(std::iter::repeat_n(agent, k));
            let mut ans = exact(inst, cls, false, Some(Policy::new(turns)));
            ans.derived_from_sketch = true;
            return Ok(ans);
        }
    }
    let mut ans = exact(inst, cls, true, None);
    ans.derived_from_sketch = true;
    Ok(ans)
}

/// Does the agent's bundle contain `set` under every balanced policy?
pub fn necessary_subset_balanced(
    inst: &Instance,
    agent: AgentId,
    set: &[ItemId],
) -> Result<Answer> {
    let cls = PolicyClass::Balanced;
    let k = inst.require_k()?;
    let top = inst.top(agent, k);
    if set.iter().any(|i| !top.contains(i)) {
        return Ok(exact(
            inst,
            cls,
            false,
            Some(agent_first_block(inst, agent, k)),
        ));
    }
    for &o in set {
        let ans = necessary_item_balanced(inst, agent, o)?;
        if !ans.decision {
            return Ok(ans);
        }
    }
    Ok(exact(inst, cls, true, None))
}

/// Does every policy of the class produce `m`?
pub fn necessary_assignment(inst: &Instance, m: &Assignment, cls: PolicyClass) -> Result<Answer> {
    let n = inst.num_agents();
    if inst.num_items() == 0 || n == 1 {
        let holds = execute_policy(inst, &all_to(inst, 0))?.assignment == *m;
        return Ok(exact(inst, cls, holds, (!holds).then(|| all_to(inst, 0))));
    }
    if cls == PolicyClass::Arbitrary {
        let differs = (0..n)
            .map(|a| all_to(inst, a))
            .find(|pi| outcome(inst, pi) != *m)
            .expect("two agents cannot both receive every item");
        return Ok(exact(inst, cls, false, Some(differs)));
    }
    let k = inst.require_k()?;
    if cls == PolicyClass::Balanced {
        let violator = (0..n).find(|&a| sorted(m.share(a)) != sorted(inst.top(a, k).to_vec()));
        return Ok(match violator {
            None => exact(inst, cls, true, None),
            Some(a) => exact(inst, cls, false, Some(agent_first_block(inst, a, k))),
        });
    }
    if !m.is_balanced(k) {
        let pi = crate::characterize::expand_first_round(&(0..n).collect::<Vec<_>>(), k, cls);
        return Ok(exact(inst, cls, false, Some(pi)));
    }
    let p: Vec<Vec<ItemId>> = (0..n).map(|a| m.ranked_share(inst, a)).collect();
    let mut taken = vec![false; inst.num_items()];
    for t in 0..k {
        if let Some(j) = (0..n).find(|&j| inst.top_available(j, &taken) != Some(p[j][t])) {
            let rest = (0..n).filter(|&o| o != j);
            // round t (0-based) is reversed under balanced alternation when odd
            let sigma: Vec<AgentId> = if cls == PolicyClass::BalancedAlternation && t % 2 == 1 {
                rest.chain([j]).collect()
            } else {
                std::iter::once(j).chain(rest).collect()
            };
            let pi = crate::characterize::expand_first_round(&sigma, k, cls);
            return Ok(exact(inst, cls, false, Some(pi)));
        }
        for j in 0..n {
            taken[p[j][t]] = true;
        }
    }
    Ok(exact(inst, cls, true, None))
}

fn outcome(inst: &Instance, pi: &Policy) -> Assignment {
    crate::engine::outcome_of(inst, pi.turns())
}

/// Can the agent receive their two favourite items? Needs `k = 2`.
pub fn top2_possible_set(inst: &Instance, agent: AgentId, cls: PolicyClass) -> Result<Answer> {
    if !matches!(
        cls,
        PolicyClass::RecursivelyBalanced | PolicyClass::StrictAlternation
    ) {
        return Err(Error::Precondition(format!(
            "the matching test covers rec-balanced and strict-alt, not {cls}"
        )));
    }
    let k = inst.require_k()?;
    if k != 2 {
        return Err(Error::Precondition(format!(
            "the matching test needs k = 2, got k = {k}"
        )));
    }
    let sketch = cls == PolicyClass::StrictAlternation;
    let n = inst.num_agents();
    let (s1, s2) = (inst.preference(agent)[0], inst.preference(agent)[1]);
    let others: Vec<AgentId> = (0..n).filter(|&a| a != agent).collect();
    let candidates: Vec<ItemId> = (0..inst.num_items()).filter(|&i| i != s1).collect();
    let mut edges = Vec::new();
    for (l, &o) in others.iter().enumerate() {
        for (r, &item) in candidates.iter().enumerate() {
            if inst.prefers(o, item, s2) {
                edges.push((l, r));
            }
        }
    }
    let matching = max_bipartite_matching(others.len(), candidates.len(), &edges);
    if !matching.saturates_left() {
        let mut ans = exact(inst, cls, false, None);
        ans.derived_from_sketch = sketch;
        return Ok(ans);
    }
    let held: Vec<ItemId> = matching
        .mate_left
        .iter()
        .map(|r| candidates[r.unwrap()])
        .collect();
    let round = first_round_after(inst, agent, s1, &others, held)?;
    let sigma: Vec<AgentId> = std::iter::once(agent).chain(round).collect();
    let pi = crate::characterize::expand_first_round(&sigma, k, PolicyClass::StrictAlternation);
    let mut ans = exact(inst, cls, true, Some(pi));
    ans.derived_from_sketch = sketch;
    Ok(ans)
}

/// Order in which `others` pick one item each right after the agent took
/// `first`, so that each ends with an item at least as good as their entry in
/// `held`. Agents move to better free items and trade among themselves until
/// neither helps anyone, then the greedy picking order realizes the result.
fn first_round_after(
    inst: &Instance,
    agent: AgentId,
    first: ItemId,
    others: &[AgentId],
    mut held: Vec<ItemId>,
) -> Result<Vec<AgentId>> {
    let _ = agent;
    loop {
        let mut changed = false;
        let mut busy = vec![false; inst.num_items()];
        busy[first] = true;
        for &i in &held {
            busy[i] = true;
        }
        for (j, &o) in others.iter().enumerate() {
            let best = inst
                .preference(o)
                .iter()
                .copied()
                .find(|&i| i == held[j] || !busy[i])
                .expect("held item is in the order");
            if best != held[j] {
                busy[held[j]] = false;
                busy[best] = true;
                held[j] = best;
                changed = true;
            }
        }
        let items = sorted(held.clone());
        let sub = inst.restrict(others, &items)?;
        let owners: Vec<AgentId> = items
            .iter()
            .map(|i| held.iter().position(|h| h == i).unwrap())
            .collect();
        let current = Assignment::from_owners(&sub, owners)?;
        let improved = pareto_improve(&sub, &current)?;
        if improved != current {
            for (pos, &item) in items.iter().enumerate() {
                held[improved.owner(pos)] = item;
            }
            changed = true;
        }
        if !changed {
            let order = witness_picking_sequence(&sub, &current)?;
            return Ok(order.turns().iter().map(|&j| others[j]).collect());
        }
    }
}

/// Decides the query by searching the whole policy class.
pub fn brute_force_solve(inst: &Instance, q: &Query, limit: u64) -> Result<Answer> {
    let goal = q.outcome(inst)?;
    let possible = q.problem.is_possible();
    let found = find_policy(inst, q.cls, &goal, possible, limit)?;
    let decision = found.is_some() == possible;
    Ok(answer(inst, q.cls, decision, found, Method::BruteForce))
}

/// Pareto optimality of a complete assignment, as an [`Answer`] with the
/// arbitrary-policy witness.
pub fn possible_assignment_arbitrary(inst: &Instance, m: &Assignment) -> Result<Answer> {
    let cls = PolicyClass::Arbitrary;
    if !is_pareto_optimal(inst, m)? {
        return Ok(exact(inst, cls, false, None));
    }
    Ok(exact(
        inst,
        cls,
        true,
        Some(witness_picking_sequence(inst, m)?),
    ))
}
