//! Exact solvers for sequential allocation of indivisible items.
//!
//! Agents take turns according to a policy; on each turn the agent picks
//! their most preferred item that is still available. The crate answers
//! possible/necessary questions ("can agent `a` end up with item `o`?",
//! "does every policy produce this assignment?") over five policy classes:
//! arbitrary, balanced, recursively balanced, strict alternation and
//! balanced alternation.

pub mod characterize;
pub mod cli;
pub mod engine;
pub mod error;
pub mod flows;
pub mod model;
pub mod pareto;
pub mod queries;
pub mod reductions;
pub mod search;

pub use error::{Error, Result};
pub use model::{
    parse_assignment, parse_instance, AgentId, Assignment, Instance, ItemId, Policy, PolicyClass,
};
