//! Graded Betti numbers over the polynomial ring (Koszul homology) and
//! minimal resolutions over Artinian algebras.

mod koszul;
mod resolution;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

pub use koszul::{betti_over_s, koszul_chain_dimension, KOSZUL_LIMIT};
pub use resolution::{resolve, resolve_k_over_r, residue_field, tor_of_module, ResolveOptions, TorProfile};

/// Graded Betti numbers `beta(i, j)` for homological degrees `0..=max_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    nvars: usize,
    max_i: usize,
    entries: BTreeMap<(usize, i32), u64>,
}

impl BettiTable {
    pub fn new(nvars: usize, max_i: usize, entries: BTreeMap<(usize, i32), u64>) -> Self {
        let entries = entries.into_iter().filter(|e| e.1 != 0).collect();
        BettiTable { nvars, max_i, entries }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Highest homological degree computed.
    pub fn max_i(&self) -> usize {
        self.max_i
    }

    /// True when every homological degree `0..=nvars` was computed.
    pub fn is_complete(&self) -> bool {
        self.max_i >= self.nvars
    }

    pub fn get(&self, i: usize, j: i32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, i32, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    /// Total Betti number `beta_i`.
    pub fn total(&self, i: usize) -> u64 {
        self.entries.range((i, i32::MIN)..=(i, i32::MAX)).map(|e| e.1).sum()
    }

    /// `t_i = max{j : beta(i, j) != 0}`, `None` where the row is zero.
    pub fn t_values(&self) -> Vec<Option<i32>> {
        (0..=self.max_i)
            .map(|i| self.entries.range((i, i32::MIN)..=(i, i32::MAX)).map(|e| e.0 .1).max())
            .collect()
    }

    /// `max(t_i - i)` over the computed rows.
    pub fn regularity(&self) -> Option<i32> {
        self.entries.keys().map(|&(i, j)| j - i as i32).max()
    }

    /// Rows of the usual display: row `r` holds `beta(i, i + r)`.
    pub fn rows(&self) -> BTreeMap<i32, BTreeMap<usize, u64>> {
        let mut out: BTreeMap<i32, BTreeMap<usize, u64>> = BTreeMap::new();
        for (&(i, j), &v) in &self.entries {
            out.entry(j - i as i32).or_default().insert(i, v);
        }
        out
    }

    /// `beta(i, j) = beta(n - i, n + s - j)` for all entries.
    pub fn is_symmetric(&self, socle_degree: i32) -> bool {
        if !self.is_complete() {
            return false;
        }
        let n = self.nvars;
        self.entries
            .iter()
            .all(|(&(i, j), &v)| self.get(n - i, n as i32 + socle_degree - j) == v)
    }

    /// `sum (-1)^i beta(i, j) t^j` as coefficients indexed by `j`.
    pub fn alternating_sum(&self) -> Vec<BigInt> {
        let top = self.entries.keys().map(|e| e.1).max().unwrap_or(0).max(0) as usize;
        let mut out = vec![BigInt::zero(); top + 1];
        for (&(i, j), &v) in &self.entries {
            let v = BigInt::from(v);
            if i % 2 == 0 {
                out[j as usize] += v;
            } else {
                out[j as usize] -= v;
            }
        }
        out
    }

    /// Checks `sum (-1)^i beta(i, j) t^j = HS(t) (1 - t)^n` exactly.
    pub fn satisfies_euler_identity(&self, hilbert: &[usize]) -> bool {
        if !self.is_complete() {
            return false;
        }
        let mut rhs: Vec<BigInt> = hilbert.iter().map(|&h| BigInt::from(h)).collect();
        for _ in 0..self.nvars {
            let mut next = vec![BigInt::zero(); rhs.len() + 1];
            for (k, c) in rhs.iter().enumerate() {
                next[k] += c;
                next[k + 1] -= c;
            }
            rhs = next;
        }
        let lhs = self.alternating_sum();
        let len = lhs.len().max(rhs.len());
        (0..len).all(|k| lhs.get(k).cloned().unwrap_or_default() == rhs.get(k).cloned().unwrap_or_default())
    }
}

/// `t_i` of a regular sequence of the given degrees: prefix sums of the
/// degrees sorted descending.
pub fn ci_t_values(degrees: &[u32]) -> Vec<i32> {
    let mut d: Vec<i32> = degrees.iter().map(|&x| x as i32).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d.iter()
        .scan(0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Pairs `(a, b)` with `1 <= a <= b` and `t_a + t_b < t_{a+b}` inside the
/// given range. `ts[i]` is `t_i`; missing values are skipped.
pub fn subadditivity_report(ts: &[Option<i32>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 1..ts.len() {
        for b in a..ts.len() {
            if a + b >= ts.len() {
                break;
            }
            if let (Some(ta), Some(tb), Some(tab)) = (ts[a], ts[b], ts[a + b]) {
                if ta + tb < tab {
                    out.push((a, b));
                }
            }
        }
    }
    out
}

/// Gorenstein symmetry of a complete table with socle degree `s`.
pub fn gorenstein_symmetry_check(table: &BettiTable, socle_degree: i32) -> bool {
    table.is_symmetric(socle_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ci_t_value_examples() {
        assert_eq!(ci_t_values(&[2, 2, 2]), vec![2, 4, 6]);
        assert_eq!(ci_t_values(&[3, 2, 2]), vec![3, 5, 7]);
        assert_eq!(ci_t_values(&[2, 3, 2]), vec![3, 5, 7]);
    }

    #[test]
    fn subadditivity_examples() {
        // t_0..t_2 of the m = 3 family: t_2 = 5 > 2 + 2.
        assert_eq!(subadditivity_report(&[Some(0), Some(2), Some(5)]), vec![(1, 1)]);
        assert!(subadditivity_report(&[Some(0), Some(2), Some(4), Some(6)]).is_empty());
    }

    proptest! {
        #[test]
        fn complete_intersections_are_subadditive(degrees in proptest::collection::vec(1u32..9, 1..8)) {
            let mut ts = vec![Some(0)];
            ts.extend(ci_t_values(&degrees).into_iter().map(Some));
            prop_assert!(subadditivity_report(&ts).is_empty());
        }
    }
}
