//! Budgets and outcomes shared by the backtracking searches.

use std::time::{Duration, Instant};

/// Limits for a search. The node limit is deterministic; the time limit is
/// a wall-clock safety net.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl SearchBudget {
    pub const UNLIMITED: SearchBudget = SearchBudget {
        max_nodes: None,
        time_limit: None,
    };

    pub fn nodes(max_nodes: u64) -> Self {
        SearchBudget {
            max_nodes: Some(max_nodes),
            time_limit: None,
        }
    }

    pub fn time(limit: Duration) -> Self {
        SearchBudget {
            max_nodes: None,
            time_limit: Some(limit),
        }
    }

    pub fn with_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = Some(max_nodes);
        self
    }

    pub(crate) fn start(&self) -> BudgetMeter {
        BudgetMeter {
            budget: *self,
            started: Instant::now(),
            nodes: 0,
            exhausted: false,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::time(Duration::from_secs(60))
    }
}

/// Running node count for one search.
#[derive(Debug)]
pub(crate) struct BudgetMeter {
    budget: SearchBudget,
    started: Instant,
    nodes: u64,
    exhausted: bool,
}

impl BudgetMeter {
    /// Counts one node; returns false once the budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        self.nodes += 1;
        if self.budget.max_nodes.is_some_and(|m| self.nodes > m) {
            self.exhausted = true;
        } else if self.nodes.is_multiple_of(1024) {
            if let Some(t) = self.budget.time_limit {
                self.exhausted = self.started.elapsed() > t;
            }
        }
        !self.exhausted
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The whole normalized search space was explored without a solution.
    ProvenNonexistent,
    BudgetExhausted,
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

    pub fn label(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::ProvenNonexistent => "proven-nonexistent",
            SearchOutcome::BudgetExhausted => "budget-exhausted",
        }
    }
}

/// Outcome plus the number of nodes visited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult<T> {
    pub outcome: SearchOutcome<T>,
    pub nodes: u64,
}
