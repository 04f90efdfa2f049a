use serde::{Deserialize, Serialize};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
pub const DEFAULT_VERTEX_CAP: usize = 4096;
pub const DEFAULT_COPRIME_BOUND: usize = 16;

/// Resource limits shared by every computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Maximum number of search-tree nodes a single group or factor search may visit.
    pub node_budget: u64,
    /// Largest product graph that may be constructed.
    pub vertex_cap: usize,
    /// Largest common-factor order the coprimality search examines.
    pub coprime_bound: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            node_budget: DEFAULT_NODE_BUDGET,
            vertex_cap: DEFAULT_VERTEX_CAP,
            coprime_bound: DEFAULT_COPRIME_BOUND,
        }
    }
}
