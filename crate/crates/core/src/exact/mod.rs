//! Exact ruin probabilities.
//!
//! `p(m, n)` is the probability that army A (holding `m` units) is ruined
//! first when each round is won with probability proportional to the current
//! fortunes; `q(m, n)` is the same quantity for the fair-coin game. Both are
//! filled by dynamic programming along anti-diagonals `m + n = s`, which is
//! the primary evaluation path. The alternating explicit sum, the generating
//! function and the Eulerian-number relation are kept as certificates.

mod eulerian;
mod explicit;
mod genfn;
mod simple;
mod table;

pub use eulerian::{eulerian_row, verify_eulerian_relation, EulerianReport, IndexConvention};
pub use explicit::{p_explicit, BigRational, EXPLICIT_MAX_TOTAL};
pub use genfn::{generating_function_closed, DIAGONAL_BAND};
pub use simple::q_explicit;
pub use table::{
    evaluate_points, p_recurrence, q_recurrence, ProbabilityTable, TableKind, DENSE_MAX_TOTAL, STREAM_MAX_TOTAL,
};

use serde::{Deserialize, Serialize};

/// A pair of unit counts `(m, n)` for armies A and B.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuinState {
    pub m: usize,
    pub n: usize,
}

impl RuinState {
    pub const fn new(m: usize, n: usize) -> Self {
        RuinState { m, n }
    }

    pub const fn total(&self) -> usize {
        self.m + self.n
    }

    /// True once either army has no units left.
    pub const fn is_terminal(&self) -> bool {
        self.m == 0 || self.n == 0
    }

    /// The same game seen from army B's side.
    pub const fn swapped(&self) -> Self {
        RuinState { m: self.n, n: self.m }
    }
}

impl From<(usize, usize)> for RuinState {
    fn from((m, n): (usize, usize)) -> Self {
        RuinState { m, n }
    }
}
