//! Automorphisms of the rooted binary tree given by finite wreath recursions.
//!
//! Vertices are binary words, and the first letter selects the subtree. An
//! element `w = (u, v) sigma^f` maps `0t` to `0u(t)` and `1t` to `1v(t)` when
//! `f = 0`, and `0t` to `1v(t)`, `1t` to `0u(t)` when `f = 1`.

mod engine;
mod lru;
pub mod portrait;
mod system;
mod word;

pub use engine::{
    cycle_lengths, truncate_perm, Engine, Equality, EqualityBudget, DEFAULT_DEPTH_CAP,
};
pub use lru::LruCache;
pub use system::{RecursionSystem, Rule, Section, SystemBuilder, SIGMA};
pub use word::{GenId, Letter, Word};

use alloc::string::String;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unknown generator `{name}` at line {line}, column {col}")]
    UnknownGenerator {
        name: String,
        line: usize,
        col: usize,
    },
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("generator `{0}` has no recursion")]
    MissingRule(String),
    #[error("level {level} exceeds the depth cap {cap}")]
    DepthBudgetExceeded { level: u32, cap: u32 },
}

/// The odometer `a = (a, 1) sigma`.
pub fn odometer() -> RecursionSystem {
    RecursionSystem::parse_labeled("a = (a, 1) sigma\n", "odometer").expect("builtin")
}

/// The element `b = (b, b sigma) sigma`, whose orbit length generating function
/// is not rational.
pub fn b_system() -> RecursionSystem {
    RecursionSystem::parse_labeled("b = (b, b sigma) sigma\n", "b").expect("builtin")
}

#[cfg(test)]
mod tests;
