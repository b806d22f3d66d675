use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::RuinState;
use crate::error::{Error, Result};
use crate::format::sig15;

/// Largest `m + n` stored by a dense [`ProbabilityTable`]. A table of this
/// size holds about 18 million doubles (~144 MB).
pub const DENSE_MAX_TOTAL: usize = 6000;

/// Largest `m + n` reachable by [`evaluate_points`], which keeps only two
/// diagonals in memory but still costs `O(total^2)` time.
pub const STREAM_MAX_TOTAL: usize = 200_000;

/// Which attrition game a table describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    /// Round won with probability proportional to the current fortune: `p(m, n)`.
    Proportional,
    /// Round won with probability 1/2: `q(m, n)`.
    Simple,
}

impl TableKind {
    /// Column name used in CSV exports.
    pub fn column(self) -> &'static str {
        match self {
            TableKind::Proportional => "p",
            TableKind::Simple => "q",
        }
    }

    /// One step of the recurrence, given `f(m - 1, n)` and `f(m, n - 1)`.
    #[inline]
    fn combine(self, m: usize, n: usize, a_lost: f64, b_lost: f64) -> f64 {
        match self {
            TableKind::Proportional => {
                let s = (m + n) as f64;
                (n as f64 / s) * a_lost + (m as f64 / s) * b_lost
            }
            TableKind::Simple => 0.5 * a_lost + 0.5 * b_lost,
        }
    }
}

impl std::str::FromStr for TableKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proportional" | "p" => Ok(TableKind::Proportional),
            "simple" | "q" => Ok(TableKind::Simple),
            other => Err(Error::domain(format!("unknown table kind `{other}`"))),
        }
    }
}

/// Fills diagonal `s` (entries `m = 0..=s`, `n = s - m`) from diagonal `s - 1`.
fn fill_diagonal(kind: TableKind, s: usize, prev: &[f64], cur: &mut [f64]) {
    debug_assert_eq!(prev.len(), s);
    debug_assert_eq!(cur.len(), s + 1);
    // p(0, s) = 1 (A already ruined), p(s, 0) = 0; p(0, 0) = 1 by convention.
    cur[0] = 1.0;
    if s == 0 {
        return;
    }
    cur[s] = 0.0;
    for m in 1..s {
        cur[m] = kind.combine(m, s - m, prev[m - 1], prev[m]);
    }
}

fn diagonal_offset(s: usize) -> usize {
    s * (s + 1) / 2
}

/// Dense triangular table of ruin probabilities for all `m + n <= max_total`.
///
/// Immutable after construction; share freely across threads.
#[derive(Debug, Clone)]
pub struct ProbabilityTable {
    kind: TableKind,
    max_total: usize,
    values: Vec<f64>,
}

impl ProbabilityTable {
    pub fn build(kind: TableKind, max_total: usize) -> Result<Self> {
        if max_total == 0 {
            return Err(Error::Size("max_total must be at least 1".into()));
        }
        if max_total > DENSE_MAX_TOTAL {
            return Err(Error::Size(format!(
                "max_total {max_total} exceeds the dense-table limit {DENSE_MAX_TOTAL}; \
                 use evaluate_points for isolated entries"
            )));
        }
        let mut values = vec![0.0; diagonal_offset(max_total + 1)];
        values[0] = 1.0;
        for s in 1..=max_total {
            let (done, rest) = values.split_at_mut(diagonal_offset(s));
            let prev = &done[diagonal_offset(s - 1)..];
            fill_diagonal(kind, s, prev, &mut rest[..=s]);
        }
        Ok(ProbabilityTable {
            kind,
            max_total,
            values,
        })
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn max_total(&self) -> usize {
        self.max_total
    }

    /// Probability that A is ruined first from `(m, n)`, if stored.
    pub fn get(&self, m: usize, n: usize) -> Option<f64> {
        let s = m + n;
        (s <= self.max_total).then(|| self.values[diagonal_offset(s) + m])
    }

    pub fn value(&self, state: RuinState) -> Option<f64> {
        self.get(state.m, state.n)
    }

    /// All stored `(m, n, value)` triples in anti-diagonal order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..=self.max_total).flat_map(move |s| {
            let base = diagonal_offset(s);
            (0..=s).map(move |m| (m, s - m, self.values[base + m]))
        })
    }

    /// Writes the table as CSV `m,n,p` (or `m,n,q` for the fair-coin game),
    /// skipping the `(0, 0)` convention entry.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "m,n,{}", self.kind.column())?;
        for (m, n, v) in self.iter().skip(1) {
            writeln!(out, "{},{},{}", m, n, sig15(v))?;
        }
        Ok(())
    }
}

/// Proportional-game table `p(m, n)` for `m + n <= max_total`.
pub fn p_recurrence(max_total: usize) -> Result<ProbabilityTable> {
    ProbabilityTable::build(TableKind::Proportional, max_total)
}

/// Fair-coin table `q(m, n)` for `m + n <= max_total`.
pub fn q_recurrence(max_total: usize) -> Result<ProbabilityTable> {
    ProbabilityTable::build(TableKind::Simple, max_total)
}

/// Evaluates isolated entries with two rolling diagonals, so totals far
/// beyond [`DENSE_MAX_TOTAL`] stay cheap in memory. Output order matches
/// `points`.
pub fn evaluate_points(kind: TableKind, points: &[RuinState]) -> Result<Vec<f64>> {
    let Some(max_total) = points.iter().map(RuinState::total).max() else {
        return Ok(Vec::new());
    };
    if max_total > STREAM_MAX_TOTAL {
        return Err(Error::Size(format!(
            "m + n = {max_total} exceeds the streaming limit {STREAM_MAX_TOTAL}"
        )));
    }
    let mut by_total: Vec<Vec<usize>> = vec![Vec::new(); max_total + 1];
    for (i, p) in points.iter().enumerate() {
        by_total[p.total()].push(i);
    }
    let mut out = vec![0.0; points.len()];
    let mut prev = Vec::with_capacity(max_total + 1);
    let mut cur = Vec::with_capacity(max_total + 1);
    cur.push(1.0);
    for &i in &by_total[0] {
        out[i] = 1.0;
    }
    for (s, wanted) in by_total.iter().enumerate().skip(1) {
        std::mem::swap(&mut prev, &mut cur);
        cur.clear();
        cur.resize(s + 1, 0.0);
        fill_diagonal(kind, s, &prev, &mut cur);
        for &i in wanted {
            out[i] = cur[points[i].m];
        }
    }
    Ok(out)
}
