use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid name {name:?}: {reason}")]
    InvalidName { name: String, reason: &'static str },
    #[error("duplicate agent {0:?}")]
    DuplicateAgent(String),
    #[error("duplicate item {0:?}")]
    DuplicateItem(String),
    #[error("preference list of agent {agent:?} is not a permutation of the items: {detail}")]
    NotPermutation { agent: String, detail: String },
    #[error("missing preference line for agent {0:?}")]
    MissingPreference(String),
    #[error("unknown agent {0:?}")]
    UnknownAgent(String),
    #[error("unknown item {0:?}")]
    UnknownItem(String),
    #[error("item {0:?} is assigned more than once")]
    ItemAssignedTwice(String),
    #[error("item {0:?} is not assigned to any agent")]
    ItemUnassigned(String),
    #[error("policy has {found} turns but the instance has {expected} items")]
    PolicyLength { expected: usize, found: usize },
    #[error(
        "{items} items cannot be split evenly among {agents} agents (try padding with dummy items)"
    )]
    Divisibility { agents: usize, items: usize },
    #[error("assignment is not balanced: every agent must hold exactly {k} items")]
    Unbalanced { k: usize },
    #[error("index {index} out of range 1..={len}")]
    OutOfRange { index: usize, len: usize },
    #[error("assignment is not Pareto optimal")]
    NotParetoOptimal,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("policy class has {count} policies, exceeding the limit of {limit}")]
    SizeLimit { count: BigUint, limit: u64 },
    #[error("query arguments do not match the problem: {0}")]
    Arity(String),
    #[error("no exact polynomial algorithm for {problem} under {class} policies")]
    NoExactAlgorithm { problem: String, class: String },
    #[error("malformed flow network: {0}")]
    MalformedNetwork(String),
    #[error("malformed exact-cover instance: {0}")]
    MalformedX3c(String),
}

impl Error {
    pub(crate) fn syntax(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }
}
