use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::explicit::p_explicit;
use crate::error::{Error, Result};

/// Row `order` of the Eulerian triangle, zero-based: entry `k` counts the
/// permutations of `order` elements with exactly `k` ascents, `k = 0..order`.
/// Built with `A(n, k) = (k+1) A(n-1, k) + (n-k) A(n-1, k-1)`.
pub fn eulerian_row(order: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for n in 1..=order {
        let mut next = vec![BigInt::zero(); n];
        for (k, slot) in next.iter_mut().enumerate() {
            let mut v = BigInt::zero();
            if k < row.len() {
                v += BigInt::from(k + 1) * &row[k];
            }
            if k >= 1 && k - 1 < row.len() {
                v += BigInt::from(n - k) * &row[k - 1];
            }
            *slot = v;
        }
        row = next;
    }
    row
}

/// Candidate ways of indexing the Eulerian triangle by `(m, n)`, all in
/// terms of the zero-based row of order `m + n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndexConvention {
    /// `A(m+n, n)`, zero-based.
    ZeroBasedN,
    /// `A(m+n, n-1)` zero-based, i.e. `A(m+n, n)` one-based.
    OneBasedN,
    /// `A(m+n, m)`, zero-based.
    ZeroBasedM,
    /// `A(m+n, m-1)` zero-based, i.e. `A(m+n, m)` one-based.
    OneBasedM,
}

impl IndexConvention {
    pub const ALL: [IndexConvention; 4] = [
        IndexConvention::ZeroBasedN,
        IndexConvention::OneBasedN,
        IndexConvention::ZeroBasedM,
        IndexConvention::OneBasedM,
    ];

    fn lookup(self, row: &[BigInt], m: usize, n: usize) -> Option<&BigInt> {
        let k = match self {
            IndexConvention::ZeroBasedN => Some(n),
            IndexConvention::OneBasedN => n.checked_sub(1),
            IndexConvention::ZeroBasedM => Some(m),
            IndexConvention::OneBasedM => m.checked_sub(1),
        }?;
        row.get(k)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EulerianReport {
    pub max_total: usize,
    /// Number of `(m, n)` pairs checked.
    pub pairs: usize,
    /// Conventions that hold on every pair, in [`IndexConvention::ALL`] order.
    pub matching: Vec<IndexConvention>,
    /// The single convention adopted (first of `matching`).
    pub convention: Option<IndexConvention>,
    pub pass: bool,
}

/// Checks `(m+n)! (p(m, n) - p(m+1, n-1))` against the Eulerian triangle for
/// every `m > 0, n >= 1, m + n <= max_total`, trying each index convention
/// and keeping those that hold everywhere.
pub fn verify_eulerian_relation(max_total: usize) -> Result<EulerianReport> {
    if !(2..=20).contains(&max_total) {
        return Err(Error::domain(format!(
            "Eulerian check supports 2 <= m + n <= 20, got {max_total}"
        )));
    }
    let mut holds = [true; 4];
    let mut pairs = 0;
    for total in 2..=max_total {
        let row = eulerian_row(total);
        let factorial: BigInt = (1..=total).map(BigInt::from).product();
        for n in 1..total {
            let m = total - n;
            let diff = p_explicit(m, n)? - p_explicit(m + 1, n - 1)?;
            let scaled = diff * num_rational::BigRational::from_integer(factorial.clone());
            pairs += 1;
            for (flag, conv) in holds.iter_mut().zip(IndexConvention::ALL) {
                let ok = scaled.is_integer() && conv.lookup(&row, m, n).is_some_and(|a| *a == scaled.to_integer());
                *flag &= ok;
            }
        }
    }
    let matching: Vec<IndexConvention> = IndexConvention::ALL
        .into_iter()
        .zip(holds)
        .filter_map(|(c, ok)| ok.then_some(c))
        .collect();
    Ok(EulerianReport {
        max_total,
        pairs,
        convention: matching.first().copied(),
        pass: !matching.is_empty(),
        matching,
    })
}
