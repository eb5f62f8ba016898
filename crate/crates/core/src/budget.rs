use std::cell::Cell;
use std::time::{Duration, Instant};

/// Search budget shared by the exact oracles.
///
/// A budget is exhausted once `node_limit` search nodes have been charged or
/// the optional wall-clock deadline has passed. Oracles report an explicit
/// unknown outcome instead of a possibly wrong answer when that happens.
#[derive(Debug, Clone)]
pub struct Budget {
    node_limit: u64,
    deadline: Option<Instant>,
    used: Cell<u64>,
}

impl Budget {
    pub fn nodes(node_limit: u64) -> Self {
        Budget { node_limit, deadline: None, used: Cell::new(0) }
    }

    pub fn unlimited() -> Self {
        Self::nodes(u64::MAX)
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.deadline = Some(Instant::now() + limit);
        self
    }

    /// Charges one node. Returns `false` once the budget is exhausted.
    #[inline]
    pub fn charge(&self) -> bool {
        self.charge_many(1)
    }

    pub fn charge_many(&self, k: u64) -> bool {
        let used = self.used.get().saturating_add(k);
        self.used.set(used);
        if used > self.node_limit {
            return false;
        }
        // checking the clock on every node is needlessly slow
        if used % 4096 < k {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    self.used.set(u64::MAX);
                    return false;
                }
            }
        }
        true
    }

    pub fn exhausted(&self) -> bool {
        self.used.get() > self.node_limit
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::nodes(50_000_000)
    }
}

/// Result of a budgeted exact computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Solved(T),
    Unknown { nodes: u64 },
}

impl<T> Outcome<T> {
    pub fn solved(self) -> Option<T> {
        match self {
            Outcome::Solved(t) => Some(t),
            Outcome::Unknown { .. } => None,
        }
    }

    pub fn is_solved(&self) -> bool {
        matches!(self, Outcome::Solved(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Solved(t) => Outcome::Solved(f(t)),
            Outcome::Unknown { nodes } => Outcome::Unknown { nodes },
        }
    }
}
