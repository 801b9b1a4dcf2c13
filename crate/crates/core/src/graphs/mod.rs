//! Combinatorial search engines: connection graphs, stable configurations
//! of genus-zero components, and cylinder configurations.

pub mod connection;
pub mod cylinders;
pub mod stable;

use serde::{Deserialize, Serialize};

pub use connection::{
    connection_feasible, connection_graph_exists, construct_connection_graph, find_connection_graph, find_connection_graph_for, for_each_tree,
    prufer_decode, removal_sequence, ConnectionGraph, GraphError, Quantifier, Removal, Side,
};
pub use cylinders::{find_cylinder_config, CylinderComponent, CylinderConfig, CylinderNode};
pub use stable::{find_stable_config, StableComponent, StableConfigTree, StableError};

/// Result of a bounded exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "outcome", content = "witness")]
pub enum SearchOutcome<T> {
    Found(T),
    NotFound,
    BudgetExceeded,
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

/// Caps on exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Candidate configurations examined before giving up.
    pub max_configurations: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self { max_configurations: 2_000_000 }
    }
}
