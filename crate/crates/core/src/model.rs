//! Instances, assignments, policies and the text formats they are read from.
//!
//! Agents and items are referred to by dense indices in declaration order
//! everywhere inside the crate; names only matter at the edges (parsing and
//! printing).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type AgentId = usize;
pub type ItemId = usize;

/// Names starting with this prefix belong to generated gadgets.
pub const RESERVED_PREFIX: &str = "__";

/// Comment that marks a file as produced by a reduction generator.
pub const REDUCTION_HEADER: &str = "# reduction:";

/// Agents, items and one strict preference order per agent.
#[derive(Clone, Debug)]
pub struct Instance {
    agents: Vec<String>,
    items: Vec<String>,
    prefs: Vec<Vec<ItemId>>,
    // ranks[agent][item] is the 0-based position of item in agent's order
    ranks: Vec<Vec<usize>>,
    agent_index: HashMap<String, AgentId>,
    item_index: HashMap<String, ItemId>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.agents == other.agents && self.items == other.items && self.prefs == other.prefs
    }
}

impl Eq for Instance {}

pub(crate) fn check_name(name: &str, allow_reserved: bool) -> Result<()> {
    let reason = if name.is_empty() {
        Some("empty name")
    } else if name.chars().any(char::is_whitespace) {
        Some("names may not contain whitespace")
    } else if name.contains(':') {
        Some("names may not contain ':'")
    } else if !allow_reserved && name.starts_with(RESERVED_PREFIX) {
        Some("the '__' prefix is reserved for generated gadgets")
    } else {
        None
    };
    match reason {
        Some(reason) => Err(Error::InvalidName {
            name: name.to_string(),
            reason,
        }),
        None => Ok(()),
    }
}

fn index_names(
    names: &[String],
    allow_reserved: bool,
    dup: fn(String) -> Error,
) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        check_name(name, allow_reserved)?;
        if index.insert(name.clone(), i).is_some() {
            return Err(dup(name.clone()));
        }
    }
    Ok(index)
}

impl Instance {
    /// Builds an instance from names. Reserved gadget names are rejected.
    pub fn new(agents: Vec<String>, items: Vec<String>, prefs: Vec<Vec<String>>) -> Result<Self> {
        Self::from_names(agents, items, prefs, false)
    }

    fn from_names(
        agents: Vec<String>,
        items: Vec<String>,
        prefs: Vec<Vec<String>>,
        allow_reserved: bool,
    ) -> Result<Self> {
        let item_index = index_names(&items, allow_reserved, Error::DuplicateItem)?;
        if prefs.len() != agents.len() {
            return Err(Error::Precondition(format!(
                "{} preference lists for {} agents",
                prefs.len(),
                agents.len()
            )));
        }
        let mut orders = Vec::with_capacity(prefs.len());
        for (a, list) in prefs.iter().enumerate() {
            let mut order = Vec::with_capacity(list.len());
            for name in list {
                match item_index.get(name) {
                    Some(&i) => order.push(i),
                    None => {
                        return Err(Error::NotPermutation {
                            agent: agents[a].clone(),
                            detail: format!("unknown item {name:?}"),
                        })
                    }
                }
            }
            orders.push(order);
        }
        Self::build(agents, items, orders, allow_reserved)
    }

    /// Builds an instance from preference orders given as item indices.
    /// Gadget names with the reserved prefix are allowed here.
    pub fn from_orders(
        agents: Vec<String>,
        items: Vec<String>,
        orders: Vec<Vec<ItemId>>,
    ) -> Result<Self> {
        Self::build(agents, items, orders, true)
    }

    fn build(
        agents: Vec<String>,
        items: Vec<String>,
        orders: Vec<Vec<ItemId>>,
        allow_reserved: bool,
    ) -> Result<Self> {
        if agents.is_empty() {
            return Err(Error::Precondition(
                "an instance needs at least one agent".into(),
            ));
        }
        let agent_index = index_names(&agents, allow_reserved, Error::DuplicateAgent)?;
        let item_index = index_names(&items, allow_reserved, Error::DuplicateItem)?;
        if orders.len() != agents.len() {
            return Err(Error::Precondition(format!(
                "{} preference lists for {} agents",
                orders.len(),
                agents.len()
            )));
        }
        let m = items.len();
        let mut ranks = Vec::with_capacity(orders.len());
        for (a, order) in orders.iter().enumerate() {
            let not_perm = |detail: String| Error::NotPermutation {
                agent: agents[a].clone(),
                detail,
            };
            if order.len() != m {
                return Err(not_perm(format!(
                    "lists {} items, expected {m}",
                    order.len()
                )));
            }
            let mut rank = vec![usize::MAX; m];
            for (pos, &item) in order.iter().enumerate() {
                if item >= m {
                    return Err(not_perm(format!("item index {item} out of range")));
                }
                if rank[item] != usize::MAX {
                    return Err(not_perm(format!("item {:?} listed twice", items[item])));
                }
                rank[item] = pos;
            }
            ranks.push(rank);
        }
        Ok(Instance {
            agents,
            items,
            prefs: orders,
            ranks,
            agent_index,
            item_index,
        })
    }

    pub fn num_agents(&self) -> usize {
        self.agents.len()
    }

    pub fn num_items(&self) -> usize {
        self.items.len()
    }

    /// Items per agent, when the item count divides evenly.
    pub fn k(&self) -> Option<usize> {
        let n = self.num_agents();
        self.num_items()
            .is_multiple_of(n)
            .then(|| self.num_items() / n)
    }

    pub fn require_k(&self) -> Result<usize> {
        self.k().ok_or(Error::Divisibility {
            agents: self.num_agents(),
            items: self.num_items(),
        })
    }

    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    pub fn items(&self) -> &[String] {
        &self.items
    }

    pub fn agent_name(&self, agent: AgentId) -> &str {
        &self.agents[agent]
    }

    pub fn item_name(&self, item: ItemId) -> &str {
        &self.items[item]
    }

    pub fn agent(&self, name: &str) -> Result<AgentId> {
        self.agent_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownAgent(name.to_string()))
    }

    pub fn item(&self, name: &str) -> Result<ItemId> {
        self.item_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownItem(name.to_string()))
    }

    /// The agent's preference order, most preferred first.
    pub fn preference(&self, agent: AgentId) -> &[ItemId] {
        &self.prefs[agent]
    }

    /// 0-based position of `item` in the agent's order.
    pub fn rank(&self, agent: AgentId, item: ItemId) -> usize {
        self.ranks[agent][item]
    }

    /// True when `agent` strictly prefers `x` to `y`.
    pub fn prefers(&self, agent: AgentId, x: ItemId, y: ItemId) -> bool {
        self.ranks[agent][x] < self.ranks[agent][y]
    }

    /// The agent's `count` most preferred items.
    pub fn top(&self, agent: AgentId, count: usize) -> &[ItemId] {
        &self.prefs[agent][..count.min(self.num_items())]
    }

    /// The agent's most preferred item among those not yet taken.
    pub fn top_available(&self, agent: AgentId, taken: &[bool]) -> Option<ItemId> {
        self.prefs[agent].iter().copied().find(|&i| !taken[i])
    }

    /// Sub-instance on the given agents and items (in the given order), with
    /// every preference order restricted to the kept items.
    pub fn restrict(&self, agents: &[AgentId], items: &[ItemId]) -> Result<Instance> {
        let mut local = vec![usize::MAX; self.num_items()];
        for (pos, &item) in items.iter().enumerate() {
            local[item] = pos;
        }
        let orders = agents
            .iter()
            .map(|&a| {
                self.prefs[a]
                    .iter()
                    .filter(|&&i| local[i] != usize::MAX)
                    .map(|&i| local[i])
                    .collect()
            })
            .collect();
        Instance::from_orders(
            agents.iter().map(|&a| self.agents[a].clone()).collect(),
            items.iter().map(|&i| self.items[i].clone()).collect(),
            orders,
        )
    }

    /// Appends dummy items at the bottom of every order until the item count
    /// is a multiple of the agent count.
    pub fn pad_dummies(&self) -> Instance {
        let n = self.num_agents();
        let m = self.num_items();
        let extra = (n - m % n) % n;
        if extra == 0 {
            return self.clone();
        }
        let mut items = self.items.clone();
        let mut serial = 1;
        while items.len() < m + extra {
            let name = format!("{RESERVED_PREFIX}dummy{serial}");
            serial += 1;
            if !self.item_index.contains_key(&name) {
                items.push(name);
            }
        }
        let orders = self
            .prefs
            .iter()
            .map(|order| order.iter().copied().chain(m..m + extra).collect())
            .collect();
        Instance::from_orders(self.agents.clone(), items, orders)
            .expect("padding keeps the instance valid")
    }

    /// Serializes in the instance file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        push_line(&mut out, "agents:", self.agents.iter().map(String::as_str));
        push_line(&mut out, "items:", self.items.iter().map(String::as_str));
        for (a, order) in self.prefs.iter().enumerate() {
            let head = format!("pref {}:", self.agents[a]);
            push_line(
                &mut out,
                &head,
                order.iter().map(|&i| self.items[i].as_str()),
            );
        }
        out
    }

    pub fn item_names<'a>(&'a self, items: impl IntoIterator<Item = &'a ItemId>) -> Vec<&'a str> {
        items.into_iter().map(|&i| self.item_name(i)).collect()
    }

    pub(crate) fn fresh_item_name(&self, base: &str) -> String {
        let mut name = format!("{RESERVED_PREFIX}{base}");
        while self.item_index.contains_key(&name) {
            name.push('_');
        }
        name
    }
}

fn push_line<'a>(out: &mut String, head: &str, tokens: impl Iterator<Item = &'a str>) {
    out.push_str(head);
    for t in tokens {
        out.push(' ');
        out.push_str(t);
    }
    out.push('\n');
}

/// Splits `line` into whitespace-separated tokens with 1-based columns.
fn tokens_with_columns(line: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((offset + s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((offset + s + 1, &line[s..]));
    }
    out
}

fn token_name(line: usize, column: usize, token: &str, allow_reserved: bool) -> Result<String> {
    if token.contains(':') {
        return Err(Error::syntax(
            line,
            column,
            format!("unexpected ':' in {token:?}"),
        ));
    }
    check_name(token, allow_reserved)?;
    Ok(token.to_string())
}

fn first_duplicate(names: &[String]) -> Option<String> {
    let mut seen = std::collections::HashSet::new();
    names.iter().find(|n| !seen.insert(n.as_str())).cloned()
}

/// Parses the instance file format.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut agents: Option<Vec<String>> = None;
    let mut items: Option<Vec<String>> = None;
    let mut prefs: HashMap<String, Vec<String>> = HashMap::new();
    let mut allow_reserved = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim_start().starts_with('#') {
            if line.trim_start().starts_with(REDUCTION_HEADER) && agents.is_none() {
                allow_reserved = true;
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let Some(colon) = line.find(':') else {
            return Err(Error::syntax(line_no, 1, "expected '<keyword>: ...'"));
        };
        let head = tokens_with_columns(&line[..colon], 0);
        let body = tokens_with_columns(&line[colon + 1..], colon + 1);
        let names = |body: &[(usize, &str)]| -> Result<Vec<String>> {
            body.iter()
                .map(|&(col, t)| token_name(line_no, col, t, allow_reserved))
                .collect()
        };
        match head.as_slice() {
            [(col, "agents")] => {
                if agents.is_some() {
                    return Err(Error::syntax(line_no, *col, "duplicate 'agents:' line"));
                }
                let list = names(&body)?;
                if list.is_empty() {
                    return Err(Error::syntax(
                        line_no,
                        colon + 2,
                        "at least one agent is required",
                    ));
                }
                if let Some(dup) = first_duplicate(&list) {
                    return Err(Error::DuplicateAgent(dup));
                }
                agents = Some(list);
            }
            [(col, "items")] => {
                if agents.is_none() {
                    return Err(Error::syntax(
                        line_no,
                        *col,
                        "'items:' must follow 'agents:'",
                    ));
                }
                if items.is_some() {
                    return Err(Error::syntax(line_no, *col, "duplicate 'items:' line"));
                }
                let list = names(&body)?;
                if let Some(dup) = first_duplicate(&list) {
                    return Err(Error::DuplicateItem(dup));
                }
                items = Some(list);
            }
            [(col, "pref"), (acol, agent)] => {
                let (Some(agent_list), Some(_)) = (&agents, &items) else {
                    return Err(Error::syntax(
                        line_no,
                        *col,
                        "'pref' lines must follow 'agents:' and 'items:'",
                    ));
                };
                if !agent_list.iter().any(|a| a == agent) {
                    return Err(Error::UnknownAgent(agent.to_string()));
                }
                if prefs.contains_key(*agent) {
                    return Err(Error::syntax(
                        line_no,
                        *acol,
                        format!("second preference line for agent {agent:?}"),
                    ));
                }
                prefs.insert(agent.to_string(), names(&body)?);
            }
            [] => {
                return Err(Error::syntax(
                    line_no,
                    colon + 1,
                    "missing keyword before ':'",
                ))
            }
            [(col, _), ..] => {
                return Err(Error::syntax(
                    line_no,
                    *col,
                    "expected 'agents:', 'items:' or 'pref <agent>:'",
                ))
            }
        }
    }

    let agents = agents.ok_or_else(|| Error::syntax(1, 1, "missing 'agents:' line"))?;
    let items = items.ok_or_else(|| Error::syntax(1, 1, "missing 'items:' line"))?;
    let mut ordered = Vec::with_capacity(agents.len());
    for agent in &agents {
        match prefs.remove(agent) {
            Some(list) => ordered.push(list),
            None => return Err(Error::MissingPreference(agent.clone())),
        }
    }
    Instance::from_names(agents, items, ordered, allow_reserved)
}

/// A complete assignment of items to agents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    owner: Vec<AgentId>,
    num_agents: usize,
}

impl Assignment {
    /// Builds an assignment from each item's owner.
    pub fn from_owners(inst: &Instance, owner: Vec<AgentId>) -> Result<Self> {
        if owner.len() != inst.num_items() {
            return Err(Error::Precondition(format!(
                "owner list has {} entries for {} items",
                owner.len(),
                inst.num_items()
            )));
        }
        if let Some(&bad) = owner.iter().find(|&&a| a >= inst.num_agents()) {
            return Err(Error::UnknownAgent(format!("#{bad}")));
        }
        Ok(Assignment {
            owner,
            num_agents: inst.num_agents(),
        })
    }

    /// Builds an assignment from per-agent shares; shares must partition the items.
    pub fn from_shares(inst: &Instance, shares: &[Vec<ItemId>]) -> Result<Self> {
        if shares.len() != inst.num_agents() {
            return Err(Error::Precondition(format!(
                "{} shares for {} agents",
                shares.len(),
                inst.num_agents()
            )));
        }
        let mut owner = vec![usize::MAX; inst.num_items()];
        for (a, share) in shares.iter().enumerate() {
            for &item in share {
                if item >= inst.num_items() {
                    return Err(Error::UnknownItem(format!("#{item}")));
                }
                if owner[item] != usize::MAX {
                    return Err(Error::ItemAssignedTwice(inst.item_name(item).to_string()));
                }
                owner[item] = a;
            }
        }
        if let Some(missing) = owner.iter().position(|&a| a == usize::MAX) {
            return Err(Error::ItemUnassigned(inst.item_name(missing).to_string()));
        }
        Ok(Assignment {
            owner,
            num_agents: inst.num_agents(),
        })
    }

    pub(crate) fn from_owners_unchecked(owner: Vec<AgentId>, num_agents: usize) -> Self {
        Assignment { owner, num_agents }
    }

    pub fn num_agents(&self) -> usize {
        self.num_agents
    }

    pub fn num_items(&self) -> usize {
        self.owner.len()
    }

    pub fn owner(&self, item: ItemId) -> AgentId {
        self.owner[item]
    }

    pub fn owners(&self) -> &[AgentId] {
        &self.owner
    }

    /// The agent's items in declaration order.
    pub fn share(&self, agent: AgentId) -> Vec<ItemId> {
        (0..self.owner.len())
            .filter(|&i| self.owner[i] == agent)
            .collect()
    }

    pub fn share_size(&self, agent: AgentId) -> usize {
        self.owner.iter().filter(|&&a| a == agent).count()
    }

    /// The agent's items ordered by the agent's own preference.
    pub fn ranked_share(&self, inst: &Instance, agent: AgentId) -> Vec<ItemId> {
        inst.preference(agent)
            .iter()
            .copied()
            .filter(|&i| self.owner[i] == agent)
            .collect()
    }

    pub fn is_balanced(&self, k: usize) -> bool {
        (0..self.num_agents).all(|a| self.share_size(a) == k)
    }

    /// One `agent: items` line per agent, items in declaration order.
    pub fn to_text(&self, inst: &Instance) -> String {
        let mut out = String::new();
        for a in 0..self.num_agents {
            let head = format!("{}:", inst.agent_name(a));
            push_line(
                &mut out,
                &head,
                self.share(a).iter().map(|&i| inst.item_name(i)),
            );
        }
        out
    }

    /// Single-line form: `a1: b e | a2: c d`.
    pub fn to_inline(&self, inst: &Instance) -> String {
        self.to_text(inst).lines().collect::<Vec<_>>().join(" | ")
    }
}

/// Parses the assignment file format against `inst`.
pub fn parse_assignment(text: &str, inst: &Instance) -> Result<Assignment> {
    let mut shares: Vec<Option<Vec<ItemId>>> = vec![None; inst.num_agents()];
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim_start().starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let Some(colon) = line.find(':') else {
            return Err(Error::syntax(line_no, 1, "expected '<agent>: <item>*'"));
        };
        let head = tokens_with_columns(&line[..colon], 0);
        let [(col, agent_name)] = head.as_slice() else {
            return Err(Error::syntax(
                line_no,
                1,
                "expected a single agent name before ':'",
            ));
        };
        let agent = inst.agent(agent_name)?;
        if shares[agent].is_some() {
            return Err(Error::syntax(
                line_no,
                *col,
                format!("second line for agent {agent_name:?}"),
            ));
        }
        let mut share = Vec::new();
        for (_, token) in tokens_with_columns(&line[colon + 1..], colon + 1) {
            share.push(inst.item(token)?);
        }
        shares[agent] = Some(share);
    }
    let shares: Vec<Vec<ItemId>> = shares.into_iter().map(Option::unwrap_or_default).collect();
    Assignment::from_shares(inst, &shares)
}

/// 1-based position of `item` in `agent`'s preference list.
pub fn rank_of(inst: &Instance, agent: &str, item: &str) -> Result<usize> {
    Ok(inst.rank(inst.agent(agent)?, inst.item(item)?) + 1)
}

/// The `i`-th (1-based) most preferred item within the agent's own share.
pub fn ranked_share(inst: &Instance, m: &Assignment, agent: &str, i: usize) -> Result<String> {
    let share = m.ranked_share(inst, inst.agent(agent)?);
    if i == 0 || i > share.len() {
        return Err(Error::OutOfRange {
            index: i,
            len: share.len(),
        });
    }
    Ok(inst.item_name(share[i - 1]).to_string())
}

/// An ordered sequence of agent turns, one per item.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Policy(Vec<AgentId>);

impl Policy {
    pub fn new(turns: Vec<AgentId>) -> Self {
        Policy(turns)
    }

    pub fn turns(&self) -> &[AgentId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_turns(self) -> Vec<AgentId> {
        self.0
    }

    /// Parses space-separated agent names.
    pub fn parse(inst: &Instance, text: &str) -> Result<Self> {
        text.split_whitespace()
            .map(|name| inst.agent(name))
            .collect::<Result<Vec<_>>>()
            .map(Policy)
    }

    pub fn to_text(&self, inst: &Instance) -> String {
        self.0
            .iter()
            .map(|&a| inst.agent_name(a))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The five policy classes, from least to most constrained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolicyClass {
    Arbitrary,
    Balanced,
    RecursivelyBalanced,
    StrictAlternation,
    BalancedAlternation,
}

impl PolicyClass {
    pub const ALL: [PolicyClass; 5] = [
        PolicyClass::Arbitrary,
        PolicyClass::Balanced,
        PolicyClass::RecursivelyBalanced,
        PolicyClass::StrictAlternation,
        PolicyClass::BalancedAlternation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolicyClass::Arbitrary => "arbitrary",
            PolicyClass::Balanced => "balanced",
            PolicyClass::RecursivelyBalanced => "rec-balanced",
            PolicyClass::StrictAlternation => "strict-alt",
            PolicyClass::BalancedAlternation => "bal-alt",
        }
    }

    /// Every class except `Arbitrary` needs the item count to divide evenly.
    pub fn needs_balance(self) -> bool {
        self != PolicyClass::Arbitrary
    }
}

impl fmt::Display for PolicyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "arbitrary" | "any" => PolicyClass::Arbitrary,
            "balanced" => PolicyClass::Balanced,
            "rec-balanced" | "recursively-balanced" => PolicyClass::RecursivelyBalanced,
            "strict-alt" | "strict-alternation" => PolicyClass::StrictAlternation,
            "bal-alt" | "balanced-alternation" => PolicyClass::BalancedAlternation,
            other => return Err(format!("unknown policy class {other:?}")),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EX1: &str = "\
# two agents, four items
agents: a1 a2
items: b c d e
pref a1: b c d e
pref a2: b d c e
";

    #[test]
    fn parses_example_instance() {
        let inst = parse_instance(EX1).unwrap();
        assert_eq!(inst.num_agents(), 2);
        assert_eq!(inst.num_items(), 4);
        assert_eq!(inst.k(), Some(2));
    }

    #[test]
    fn empty_item_set() {
        let inst = parse_instance("agents: a1\nitems:\npref a1:\n").unwrap();
        assert_eq!(inst.num_items(), 0);
        assert_eq!(inst.k(), Some(0));
        assert_eq!(parse_instance(&inst.to_text()).unwrap(), inst);
    }

    #[test]
    fn rejects_duplicate_token_in_preference() {
        let text = EX1.replace("pref a1: b c d e", "pref a1: b b c e");
        assert!(matches!(
            parse_instance(&text),
            Err(Error::NotPermutation { .. })
        ));
    }

    #[test]
    fn syntax_errors_report_position() {
        let err = parse_instance("agents: a1\nitems: x\nprefer a1: x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Syntax {
                line: 3,
                column: 1,
                message: "expected 'agents:', 'items:' or 'pref <agent>:'".into()
            }
        );
        let err = parse_instance("agents: a1\nitems: x y:z\npref a1: x\n").unwrap_err();
        assert!(
            matches!(
                err,
                Error::Syntax {
                    line: 2,
                    column: 10,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn duplicate_names_and_missing_lines() {
        assert_eq!(
            parse_instance("agents: a a\nitems:\npref a:\n").unwrap_err(),
            Error::DuplicateAgent("a".into())
        );
        assert_eq!(
            parse_instance("agents: a\nitems: x x\npref a: x x\n").unwrap_err(),
            Error::DuplicateItem("x".into())
        );
        assert_eq!(
            parse_instance("agents: a b\nitems: x\npref a: x\n").unwrap_err(),
            Error::MissingPreference("b".into())
        );
    }

    #[test]
    fn reserved_names_need_reduction_header() {
        let body = "agents: __a\nitems: x\npref __a: x\n";
        assert!(matches!(
            parse_instance(body),
            Err(Error::InvalidName { .. })
        ));
        let generated = format!("{REDUCTION_HEADER} test\n{body}");
        assert!(parse_instance(&generated).is_ok());
    }

    #[test]
    fn assignment_parsing() {
        let inst = parse_instance(EX1).unwrap();
        let m = parse_assignment("a1: b e\na2: c d\n", &inst).unwrap();
        assert_eq!(m.share(0), vec![0, 3]);
        assert_eq!(m.share(1), vec![1, 2]);
        assert_eq!(
            parse_assignment("a1: b e\na2: c\n", &inst).unwrap_err(),
            Error::ItemUnassigned("d".into())
        );
        assert_eq!(
            parse_assignment("a1: b\na2: b c d e\n", &inst).unwrap_err(),
            Error::ItemAssignedTwice("b".into())
        );
        assert_eq!(
            parse_assignment("a1: b c d e\na3:\n", &inst).unwrap_err(),
            Error::UnknownAgent("a3".into())
        );
        // agents with empty shares may be omitted
        let all = parse_assignment("a2: b c d e\n", &inst).unwrap();
        assert!(all.share(0).is_empty());
    }

    #[test]
    fn ranks_and_ranked_shares() {
        let inst = parse_instance(EX1).unwrap();
        assert_eq!(rank_of(&inst, "a2", "d").unwrap(), 2);
        assert_eq!(rank_of(&inst, "a1", "b").unwrap(), 1);
        assert_eq!(rank_of(&inst, "a2", "e").unwrap(), 4);
        assert!(matches!(
            rank_of(&inst, "a3", "e"),
            Err(Error::UnknownAgent(_))
        ));

        let m = parse_assignment("a1: b e\na2: c d\n", &inst).unwrap();
        assert_eq!(ranked_share(&inst, &m, "a2", 1).unwrap(), "d");
        assert_eq!(ranked_share(&inst, &m, "a1", 1).unwrap(), "b");
        assert_eq!(ranked_share(&inst, &m, "a2", 2).unwrap(), "c");
        assert_eq!(
            ranked_share(&inst, &m, "a2", 3).unwrap_err(),
            Error::OutOfRange { index: 3, len: 2 }
        );
    }

    #[test]
    fn padding_appends_bottom_dummies() {
        let inst =
            parse_instance("agents: a b\nitems: x y z\npref a: x y z\npref b: z y x\n").unwrap();
        let padded = inst.pad_dummies();
        assert_eq!(padded.num_items(), 4);
        assert_eq!(padded.item_name(3), "__dummy1");
        assert_eq!(padded.preference(1), &[2, 1, 0, 3]);
        assert_eq!(parse_instance(&inst.to_text()).unwrap(), inst);
    }

    #[test]
    fn class_names_round_trip() {
        for cls in PolicyClass::ALL {
            assert_eq!(cls.name().parse::<PolicyClass>().unwrap(), cls);
        }
        assert_eq!(
            "strict-alternation".parse::<PolicyClass>().unwrap(),
            PolicyClass::StrictAlternation
        );
    }
}
