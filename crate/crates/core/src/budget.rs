//! Node and wall-clock budgets for the exponential searches.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }
}

/// Shared search-node counter. Safe to tick from several worker threads; once
/// exhausted it stays exhausted.
#[derive(Debug)]
pub struct Meter {
    nodes: AtomicU64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    exhausted: AtomicBool,
}

impl Meter {
    pub fn new(budget: Budget) -> Self {
        Meter {
            nodes: AtomicU64::new(0),
            max_nodes: budget.max_nodes,
            deadline: budget.max_time.map(|d| Instant::now() + d),
            exhausted: AtomicBool::new(false),
        }
    }

    pub fn unlimited() -> Self {
        Meter::new(Budget::unlimited())
    }

    /// Counts one search node; false once the budget is spent.
    #[inline]
    pub fn tick(&self) -> bool {
        let n = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.max_nodes.is_some_and(|m| n > m) {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        if n.is_multiple_of(1024) && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    pub fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }
}
