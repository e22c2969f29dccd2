//! Instance generators for the hardness constructions.
//!
//! Each generator turns a source problem into an allocation instance plus a
//! query whose answer is tied to the source answer. Most sources are
//! possible-item questions with one item per agent (`k = 1`); one generator
//! starts from an exact cover by 3-sets. Gadget agents and items get names
//! with the reserved `__` prefix, and "others" in a preference list means
//! every item not yet listed, in declaration order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{check_name, AgentId, Instance, ItemId, PolicyClass, REDUCTION_HEADER};
use crate::queries::{Problem, Query};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Reduction {
    /// Balanced necessary item.
    Nib,
    /// Recursively balanced necessary item and top-2 necessary set.
    Nirb,
    /// Recursively balanced top-3 possible set.
    Kpsrb,
    /// Strict alternation top-3 possible set.
    Pastrict,
    /// Strict alternation necessary item and top-2 necessary set.
    Knstrict,
    /// Balanced alternation top-2 possible set and necessary item, from
    /// exact cover.
    Palla,
    /// Balanced alternation top-2 necessary set.
    Knsa,
}

impl Reduction {
    pub const ALL: [Reduction; 7] = [
        Reduction::Nib,
        Reduction::Nirb,
        Reduction::Kpsrb,
        Reduction::Pastrict,
        Reduction::Knstrict,
        Reduction::Palla,
        Reduction::Knsa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Reduction::Nib => "nib",
            Reduction::Nirb => "nirb",
            Reduction::Kpsrb => "kpsrb",
            Reduction::Pastrict => "pastrict",
            Reduction::Knstrict => "knstrict",
            Reduction::Palla => "palla",
            Reduction::Knsa => "knsa",
        }
    }

    /// Whether the source is an exact-cover instance rather than a
    /// possible-item instance.
    pub fn from_x3c(self) -> bool {
        self == Reduction::Palla
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Reduction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Reduction::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| format!("unknown reduction {s:?}"))
    }
}

/// How a generated query's answer relates to the source answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Same,
    Negated,
}

impl Relation {
    pub fn apply(self, source: bool) -> bool {
        match self {
            Relation::Same => source,
            Relation::Negated => !source,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub reduction: Reduction,
    pub instance: Instance,
    /// Generated queries, each with its relation to the source answer.
    pub queries: Vec<(Query, Relation)>,
    /// Gadget groups by name, e.g. `"D"` to its item names.
    pub gadget_map: BTreeMap<String, Vec<String>>,
}

impl ReductionOutput {
    /// Instance file text with a header naming the construction, its queries
    /// and its gadget groups.
    pub fn to_text(&self) -> String {
        let inst = &self.instance;
        let mut out = format!("{REDUCTION_HEADER} {}\n", self.reduction);
        for (q, relation) in &self.queries {
            let mut line = format!("# query: {} --class {}", q.problem, q.cls);
            if let Some(a) = q.agent {
                line += &format!(" --agent {}", inst.agent_name(a));
            }
            if let Some(i) = q.item {
                line += &format!(" --item {}", inst.item_name(i));
            }
            if let Some(set) = &q.item_set {
                line += &format!(" --set \"{}\"", inst.item_names(set).join(" "));
            }
            if q.top_k {
                line += " --top-k";
            }
            let relation = match relation {
                Relation::Same => "same as source",
                Relation::Negated => "negation of source",
            };
            out += &format!("{line}   ({relation})\n");
        }
        for (group, names) in &self.gadget_map {
            out += &format!("# gadget {group}: {}\n", names.join(" "));
        }
        out + &inst.to_text()
    }
}

/// Exact cover by 3-sets: can `q/3` of the sets partition the universe?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct X3cInstance {
    universe: Vec<String>,
    sets: Vec<[usize; 3]>,
}

impl X3cInstance {
    pub fn new(universe: Vec<String>, sets: Vec<Vec<String>>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, x) in universe.iter().enumerate() {
            check_name(x, false)?;
            if index.insert(x.as_str(), i).is_some() {
                return Err(Error::MalformedX3c(format!("element {x:?} listed twice")));
            }
        }
        if !universe.len().is_multiple_of(3) {
            return Err(Error::MalformedX3c(format!(
                "universe size {} is not a multiple of 3",
                universe.len()
            )));
        }
        let mut triples = Vec::with_capacity(sets.len());
        for (j, set) in sets.iter().enumerate() {
            if set.len() != 3 {
                return Err(Error::MalformedX3c(format!(
                    "set {} has {} elements",
                    j + 1,
                    set.len()
                )));
            }
            let mut t = [0; 3];
            for (slot, x) in t.iter_mut().zip(set) {
                *slot = *index
                    .get(x.as_str())
                    .ok_or_else(|| Error::MalformedX3c(format!("unknown element {x:?}")))?;
            }
            if t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
                return Err(Error::MalformedX3c(format!(
                    "set {} repeats an element",
                    j + 1
                )));
            }
            t.sort_unstable();
            triples.push(t);
        }
        Ok(X3cInstance {
            universe,
            sets: triples,
        })
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn sets(&self) -> &[[usize; 3]] {
        &self.sets
    }

    /// Backtracking search for an exact cover; returns set indices.
    pub fn exact_cover(&self) -> Option<Vec<usize>> {
        let mut covered = vec![false; self.universe.len()];
        let mut chosen = Vec::new();
        self.cover_from(&mut covered, &mut chosen).then_some(chosen)
    }

    fn cover_from(&self, covered: &mut [bool], chosen: &mut Vec<usize>) -> bool {
        let Some(first) = covered.iter().position(|&c| !c) else {
            return true;
        };
        for (j, set) in self.sets.iter().enumerate() {
            if set.contains(&first) && set.iter().all(|&x| !covered[x]) {
                for &x in set {
                    covered[x] = true;
                }
                chosen.push(j);
                if self.cover_from(covered, chosen) {
                    return true;
                }
                chosen.pop();
                for &x in set {
                    covered[x] = false;
                }
            }
        }
        false
    }
}

/// Parses `universe: x1 x2 x3` followed by `set: x1 x2 x3` lines; `#`
/// comments and blank lines are ignored.
pub fn parse_x3c(text: &str) -> Result<X3cInstance> {
    let mut universe = None;
    let mut sets = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (head, body) = line
            .split_once(':')
            .ok_or_else(|| Error::syntax(idx + 1, 1, "expected 'universe:' or 'set:'"))?;
        let names: Vec<String> = body.split_whitespace().map(str::to_string).collect();
        match head.trim() {
            "universe" if universe.is_none() => universe = Some(names),
            "universe" => return Err(Error::syntax(idx + 1, 1, "duplicate 'universe:' line")),
            "set" if universe.is_some() => sets.push(names),
            "set" => {
                return Err(Error::syntax(
                    idx + 1,
                    1,
                    "'set:' lines must follow 'universe:'",
                ))
            }
            _ => return Err(Error::syntax(idx + 1, 1, "expected 'universe:' or 'set:'")),
        }
    }
    let universe = universe.ok_or_else(|| Error::syntax(1, 1, "missing 'universe:' line"))?;
    X3cInstance::new(universe, sets)
}

/// Collects agents, items and preference lists by name.
struct Builder {
    agents: Vec<String>,
    items: Vec<String>,
    orders: Vec<Vec<String>>,
    groups: BTreeMap<String, Vec<String>>,
}

impl Builder {
    fn new(items: Vec<String>) -> Self {
        Builder {
            agents: Vec::new(),
            items,
            orders: Vec::new(),
            groups: BTreeMap::new(),
        }
    }

    fn group(&mut self, name: &str, members: &[String]) {
        self.groups.insert(name.to_string(), members.to_vec());
    }

    /// Adds an agent whose order starts with `head`, continues with every
    /// unlisted item except `tail`, and ends with `tail`.
    fn agent(&mut self, name: String, head: Vec<String>, tail: Vec<String>) {
        let mut order = head;
        for item in &self.items {
            if !order.contains(item) && !tail.contains(item) {
                order.push(item.clone());
            }
        }
        order.extend(tail);
        self.agents.push(name);
        self.orders.push(order);
    }

    fn finish(
        self,
        reduction: Reduction,
        queries: impl FnOnce(&Instance) -> Result<Vec<(Query, Relation)>>,
    ) -> Result<ReductionOutput> {
        let index: HashMap<&str, ItemId> = self
            .items
            .iter()
            .enumerate()
            .map(|(i, name)| (name.as_str(), i))
            .collect();
        let orders = self
            .orders
            .iter()
            .map(|order| order.iter().map(|name| index[name.as_str()]).collect())
            .collect();
        let instance = Instance::from_orders(self.agents, self.items, orders)?;
        let queries = queries(&instance)?;
        Ok(ReductionOutput {
            reduction,
            instance,
            queries,
            gadget_map: self.groups,
        })
    }
}

fn names(prefix: &str, count: usize) -> Vec<String> {
    (1..=count).map(|i| format!("__{prefix}{i}")).collect()
}

fn one(name: &str) -> String {
    format!("__{name}")
}

/// Source agent first, then the remaining source agents in order.
fn check_source(src: &Instance, agent: AgentId, item: ItemId) -> Result<Vec<AgentId>> {
    if agent >= src.num_agents() || item >= src.num_items() {
        return Err(Error::Precondition(
            "source agent or item out of range".into(),
        ));
    }
    if src.num_items() != src.num_agents() {
        return Err(Error::Precondition(format!(
            "the source must have exactly one item per agent (k = 1), got {} agents and {} items",
            src.num_agents(),
            src.num_items()
        )));
    }
    Ok(std::iter::once(agent)
        .chain((0..src.num_agents()).filter(|&a| a != agent))
        .collect())
}

fn item_names(src: &Instance) -> Vec<String> {
    src.items().to_vec()
}

/// Source preference list by name, with `item` replaced by `with`.
fn replaced(src: &Instance, agent: AgentId, item: ItemId, with: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    for &i in src.preference(agent) {
        if i == item {
            out.extend_from_slice(with);
        } else {
            out.push(src.item_name(i).to_string());
        }
    }
    out
}

fn new_agent(inst: &Instance) -> AgentId {
    inst.agent("__a").expect("generator adds the target agent")
}

fn item_query(problem: Problem, cls: PolicyClass, inst: &Instance, item: &str) -> Result<Query> {
    Ok(Query::item(problem, cls, new_agent(inst), inst.item(item)?))
}

fn set_query(
    problem: Problem,
    cls: PolicyClass,
    inst: &Instance,
    items: &[String],
) -> Result<Query> {
    let set = items
        .iter()
        .map(|i| inst.item(i))
        .collect::<Result<Vec<_>>>()?;
    Ok(Query {
        top_k: true,
        ..Query::set(problem, cls, new_agent(inst), set)
    })
}

/// Balanced necessary item with `k = n − 1`. The new agent always gets `o`
/// exactly when the source agent cannot get it.
pub fn reduce_pi_to_necessaryitem_balanced(
    src: &Instance,
    agent: AgentId,
    o: ItemId,
) -> Result<ReductionOutput> {
    let order = check_source(src, agent, o)?;
    let n = src.num_agents();
    if n < 2 {
        return Err(Error::Precondition(
            "this construction needs at least two source agents".into(),
        ));
    }
    let d = names("D", n - 1);
    let f: Vec<Vec<String>> = (1..=n)
        .map(|j| (1..=n - 2).map(|i| format!("__F{j}_{i}")).collect())
        .collect();
    let mut items = item_names(src);
    items.extend(d.iter().cloned());
    for fj in &f {
        items.extend(fj.iter().cloned());
    }
    let o_name = src.item_name(o).to_string();
    let mut b = Builder::new(items);
    b.group("D", &d);
    // source agents keep their declaration order; F blocks follow their role
    for a in 0..n {
        let role = order.iter().position(|&x| x == a).unwrap();
        let mut head = f[role].clone();
        if role == 0 {
            head.extend(replaced(src, a, o, std::slice::from_ref(&o_name)));
            b.agent(src.agent_name(a).to_string(), head, vec![]);
        } else {
            head.extend(replaced(src, a, o, &d));
            b.agent(src.agent_name(a).to_string(), head, vec![o_name.clone()]);
        }
    }
    for (role, fj) in f.iter().enumerate() {
        b.group(&format!("F{}", role + 1), fj);
    }
    b.agent(one("a"), vec![o_name.clone()], vec![]);
    b.finish(Reduction::Nib, |inst| {
        Ok(vec![(
            item_query(Problem::NecessaryItem, PolicyClass::Balanced, inst, &o_name)?,
            Relation::Negated,
        )])
    })
}

/// Shared gadget of the recursively balanced and strict alternation
/// necessary constructions (`k = 2`, `|D| = n`).
fn necessary_pair_gadget(
    src: &Instance,
    agent: AgentId,
    o: ItemId,
    reduction: Reduction,
    cls: PolicyClass,
) -> Result<ReductionOutput> {
    check_source(src, agent, o)?;
    let n = src.num_agents();
    let d_block = names("D", n);
    let (c, d) = (one("c"), one("d"));
    let mut items = item_names(src);
    items.extend([c.clone(), d.clone()]);
    items.extend(d_block.iter().cloned());
    let o_name = src.item_name(o).to_string();
    let mut b = Builder::new(items);
    b.group("D", &d_block);
    for a in 0..src.num_agents() {
        let name = src.agent_name(a).to_string();
        if a == agent {
            let head = replaced(src, a, o, &[d.clone(), o_name.clone()]);
            b.agent(name, head, vec![c.clone()]);
        } else {
            let head = replaced(src, a, o, &d_block);
            b.agent(name, head, vec![c.clone(), d.clone(), o_name.clone()]);
        }
    }
    b.agent(one("a"), vec![c.clone(), o_name.clone()], vec![d.clone()]);
    b.finish(reduction, |inst| {
        Ok(vec![
            (
                item_query(Problem::NecessaryItem, cls, inst, &o_name)?,
                Relation::Negated,
            ),
            (
                set_query(
                    Problem::NecessarySet,
                    cls,
                    inst,
                    &[c.clone(), o_name.clone()],
                )?,
                Relation::Negated,
            ),
        ])
    })
}

/// Recursively balanced necessary item and top-2 necessary set.
pub fn reduce_pi_to_recbal_family(
    src: &Instance,
    agent: AgentId,
    o: ItemId,
) -> Result<ReductionOutput> {
    necessary_pair_gadget(
        src,
        agent,
        o,
        Reduction::Nirb,
        PolicyClass::RecursivelyBalanced,
    )
}

/// Strict alternation necessary item and top-2 necessary set.
pub fn reduce_pi_to_strict_necessary(
    src: &Instance,
    agent: AgentId,
    o: ItemId,
) -> Result<ReductionOutput> {
    necessary_pair_gadget(
        src,
        agent,
        o,
        Reduction::Knstrict,
        PolicyClass::StrictAlternation,
    )
}

/// Top-3 possible set for recursively balanced or strict alternation
/// policies: `2n` agents, `6n` items.
pub fn reduce_pi_to_top3_possibleset(
    src: &Instance,
    agent: AgentId,
    o: ItemId,
    cls: PolicyClass,
) -> Result<ReductionOutput> {
    let reduction = match cls {
        PolicyClass::RecursivelyBalanced => Reduction::Kpsrb,
        PolicyClass::StrictAlternation => Reduction::Pastrict,
        other => {
            return Err(Error::Precondition(format!(
                "the top-3 construction targets rec-balanced or strict-alt, not {other}"
            )))
        }
    };
    check_source(src, agent, o)?;
    let n = src.num_agents();
    let c = names("c", 3);
    let (d_block, e_block, f_block) = (names("D", n - 1), names("E", n - 1), names("F", 3 * n - 1));
    let mut items = item_names(src);
    items.extend(c.iter().cloned());
    for block in [&d_block, &e_block, &f_block] {
        items.extend(block.iter().cloned());
    }
    let o_name = src.item_name(o).to_string();
    let mut b = Builder::new(items);
    b.group("D", &d_block);
    b.group("E", &e_block);
    b.group("F", &f_block);
    for a in 0..n {
        let name = src.agent_name(a).to_string();
        if a == agent {
            let head = replaced(src, a, o, std::slice::from_ref(&o_name));
            b.agent(name, head, c.clone());
        } else {
            let head = replaced(src, a, o, &e_block);
            let mut tail = c.clone();
            tail.push(o_name.clone());
            b.agent(name, head, tail);
        }
    }
    b.agent(one("a"), c.clone(), vec![]);
    let mut d_head = d_block.clone();
    d_head.extend(src.items().iter().filter(|&i| *i != o_name).cloned());
    d_head.extend(e_block.iter().cloned());
    d_head.extend(c.iter().rev().cloned());
    for j in 1..n {
        b.agent(format!("__d{j}"), d_head.clone(), vec![]);
    }
    b.finish(reduction, |inst| {
        Ok(vec![(
            set_query(Problem::PossibleSet, cls, inst, &c)?,
            Relation::Same,
        )])
    })
}

/// Balanced alternation top-2 necessary set (`|D| = n`).
pub fn reduce_pi_to_balalt_necessaryset(
    src: &Instance,
    agent: AgentId,
    o: ItemId,
) -> Result<ReductionOutput> {
    check_source(src, agent, o)?;
    let n = src.num_agents();
    let (c1, c2) = (one("c1"), one("c2"));
    let d_block = names("D", n);
    let mut items = item_names(src);
    items.extend([c1.clone(), c2.clone()]);
    items.extend(d_block.iter().cloned());
    let o_name = src.item_name(o).to_string();
    let mut b = Builder::new(items);
    b.group("D", &d_block);
    for a in 0..n {
        let name = src.agent_name(a).to_string();
        if a == agent {
            let mut head = replaced(src, a, o, &[o_name.clone(), c2.clone()]);
            head.extend(d_block.iter().cloned());
            b.agent(name, head, vec![c1.clone()]);
        } else {
            let mut head = replaced(src, a, o, &d_block);
            head.push(o_name.clone());
            b.agent(name, head, vec![c2.clone(), c1.clone()]);
        }
    }
    b.agent(one("a"), vec![c1.clone(), c2.clone()], vec![o_name.clone()]);
    b.finish(Reduction::Knsa, |inst| {
        Ok(vec![(
            set_query(
                Problem::NecessarySet,
                PolicyClass::BalancedAlternation,
                inst,
                &[c1, c2],
            )?,
            Relation::Negated,
        )])
    })
}

/// Balanced alternation instance with `k = 2` from exact cover. Agent `__a`
/// can get `{__a, __b}` exactly when a cover exists, and always gets `__c`
/// exactly when none does.
pub fn reduce_x3c_to_balalt(src: &X3cInstance) -> Result<ReductionOutput> {
    let q = src.universe.len();
    let t = src.sets.len();
    let f_len = (4 * t) as i64 - (q / 3) as i64 - 1;
    if f_len < 0 {
        return Err(Error::MalformedX3c(format!(
            "{t} sets are too few for a universe of {q} elements in this construction"
        )));
    }
    let (a, bb, c) = (one("a"), one("b"), one("c"));
    let set_item = |j: usize| format!("__S{}", j + 1);
    let clone_item = |j: usize, x: usize| format!("__S{}_{}", j + 1, src.universe[x]);
    let d_block = names("D", 8 * q / 3);
    let e_block = names("E", q / 3);
    let f_block = names("F", f_len as usize);

    let mut items = vec![a.clone(), bb.clone(), c.clone()];
    for (j, set) in src.sets.iter().enumerate() {
        items.push(set_item(j));
        items.extend(set.iter().map(|&x| clone_item(j, x)));
    }
    for block in [&d_block, &e_block, &f_block] {
        items.extend(block.iter().cloned());
    }
    let mut b = Builder::new(items);
    b.group("D", &d_block);
    b.group("E", &e_block);
    b.group("F", &f_block);

    b.agent(a.clone(), vec![a.clone(), bb.clone(), c.clone()], vec![]);
    for (j, set) in src.sets.iter().enumerate() {
        let mut head = vec![set_item(j), a.clone()];
        head.extend(d_block.iter().cloned());
        head.push(bb.clone());
        b.agent(set_item(j), head, vec![c.clone()]);
        for &x in set {
            let mut head = vec![set_item(j), clone_item(j, x), a.clone()];
            head.extend(d_block.iter().cloned());
            head.push(bb.clone());
            b.agent(clone_item(j, x), head, vec![c.clone()]);
        }
    }
    for (x, name) in src.universe.iter().enumerate() {
        let mut head: Vec<String> = src
            .sets
            .iter()
            .enumerate()
            .filter(|(_, set)| set.contains(&x))
            .map(|(j, _)| clone_item(j, x))
            .collect();
        head.push(bb.clone());
        b.agent(name.clone(), head, vec![c.clone()]);
    }
    let mut c_head = vec![a.clone()];
    c_head.extend((0..t).map(set_item));
    c_head.extend(e_block.iter().cloned());
    for k in 1..=q / 3 {
        b.agent(format!("__c{k}"), c_head.clone(), vec![c.clone()]);
    }
    let cls = PolicyClass::BalancedAlternation;
    b.finish(Reduction::Palla, |inst| {
        let agent = inst.agent(&a)?;
        let pair = vec![inst.item(&a)?, inst.item(&bb)?];
        Ok(vec![
            (
                Query {
                    top_k: true,
                    ..Query::set(Problem::PossibleSet, cls, agent, pair)
                },
                Relation::Same,
            ),
            (
                Query::item(Problem::NecessaryItem, cls, agent, inst.item(&c)?),
                Relation::Negated,
            ),
        ])
    })
}

/// Runs a possible-item based generator by kind.
pub fn generate(
    kind: Reduction,
    src: &Instance,
    agent: AgentId,
    o: ItemId,
) -> Result<ReductionOutput> {
    match kind {
        Reduction::Nib => reduce_pi_to_necessaryitem_balanced(src, agent, o),
        Reduction::Nirb => reduce_pi_to_recbal_family(src, agent, o),
        Reduction::Kpsrb => {
            reduce_pi_to_top3_possibleset(src, agent, o, PolicyClass::RecursivelyBalanced)
        }
        Reduction::Pastrict => {
            reduce_pi_to_top3_possibleset(src, agent, o, PolicyClass::StrictAlternation)
        }
        Reduction::Knstrict => reduce_pi_to_strict_necessary(src, agent, o),
        Reduction::Knsa => reduce_pi_to_balalt_necessaryset(src, agent, o),
        Reduction::Palla => Err(Error::Precondition(
            "palla takes an exact-cover source; use reduce_x3c_to_balalt".into(),
        )),
    }
}
