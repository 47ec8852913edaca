//! Betti numbers over `S` from the Koszul complex `K(x_1..x_n) (x) R`.
//!
//! The chain module `C_i` has basis `e_T (x) b` for `i`-subsets `T` of the
//! variables and standard monomials `b`, with
//! `d(e_T (x) b) = sum_{s in T} (-1)^pos(s) e_{T - s} (x) x_s b`.
//! Everything is homogeneous for the finest grading of `R`, so ranks are
//! taken block by block.

use std::collections::{BTreeMap, HashMap};

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::BettiTable;
use crate::algebra::ArtinianAlgebra;
use crate::error::{Error, Result};
use crate::field::{binom, Field};
use crate::grading::{add_degrees, Multidegree};
use crate::linalg::{self, Echelon};

/// Largest total chain dimension attempted.
pub const KOSZUL_LIMIT: usize = 4_000_000;

/// Sum of `dim C_i` for `i <= max_i`.
pub fn koszul_chain_dimension(nvars: usize, dim: usize, max_i: usize) -> usize {
    (0..=max_i.min(nvars))
        .map(|i| binom(nvars as i64, i as i64).to_usize().unwrap_or(usize::MAX))
        .fold(0usize, |acc, c| acc.saturating_add(c.saturating_mul(dim)))
}

fn subsets(n: usize, k: usize) -> Vec<u32> {
    fn rec(start: usize, n: usize, k: usize, cur: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for s in start..=n - k {
            rec(s + 1, n, k - 1, cur | 1 << s, out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

/// `beta_{i,j}` of `R` over its polynomial ring for `i <= max_i` (all `i`
/// when `None`).
pub fn betti_over_s<F: Field>(alg: &ArtinianAlgebra<F>, max_i: Option<usize>) -> Result<BettiTable> {
    let n = alg.nvars();
    if n > 31 {
        return Err(Error::Infeasible { what: format!("Koszul complex on {n} variables"), threshold: 31 });
    }
    let max_i = max_i.unwrap_or(n).min(n);
    let top_i = (max_i + 1).min(n);
    let size = koszul_chain_dimension(n, alg.dim(), top_i);
    if size > KOSZUL_LIMIT {
        return Err(Error::Infeasible {
            what: format!("Koszul complex of total dimension {size} (through homological degree {top_i})"),
            threshold: KOSZUL_LIMIT,
        });
    }
    let weights = alg.grading().weights();
    let mut classes: BTreeMap<Multidegree, Vec<u32>> = BTreeMap::new();
    for b in 0..alg.dim() {
        classes.entry(alg.multidegree(b).clone()).or_default().push(b as u32);
    }
    // blocks[mu][i] = chain basis of C_i in multidegree mu.
    let mut blocks: BTreeMap<Multidegree, Vec<Vec<(u32, u32)>>> = BTreeMap::new();
    for i in 0..=top_i {
        for t in subsets(n, i) {
            let mut wt = vec![0; alg.grading().rank()];
            for (s, w) in weights.iter().enumerate() {
                if t & 1 << s != 0 {
                    wt = add_degrees(&wt, w);
                }
            }
            for (nu, bs) in &classes {
                let mu = add_degrees(&wt, nu);
                let entry = blocks.entry(mu).or_insert_with(|| vec![Vec::new(); top_i + 1]);
                entry[i].extend(bs.iter().map(|&b| (t, b)));
            }
        }
    }
    let field = alg.field();
    let actions = alg.actions();
    let per_block: Vec<(i32, Vec<u64>)> = blocks
        .par_iter()
        .map(|(mu, chains)| {
            let index: Vec<HashMap<(u32, u32), u32>> = chains
                .iter()
                .map(|c| c.iter().enumerate().map(|(k, e)| (*e, k as u32)).collect())
                .collect();
            // ranks[i] = rank of d_i : C_i -> C_{i-1}
            let mut ranks = vec![0usize; top_i + 2];
            for i in 1..=top_i {
                if chains[i].is_empty() || chains[i - 1].is_empty() {
                    continue;
                }
                let mut ech = Echelon::new(field.clone(), chains[i - 1].len());
                let bound = chains[i].len().min(chains[i - 1].len());
                for &(t, b) in &chains[i] {
                    if ech.rank() == bound {
                        break;
                    }
                    let mut img = Vec::new();
                    let mut pos = 0;
                    for s in 0..n {
                        if t & 1 << s == 0 {
                            continue;
                        }
                        let sign_neg = pos % 2 == 1;
                        pos += 1;
                        let rest = t & !(1 << s);
                        for (b2, c) in &actions[s][b as usize] {
                            let k = index[i - 1][&(rest, *b2)];
                            img.push((k, if sign_neg { field.neg(c) } else { c.clone() }));
                        }
                    }
                    ech.insert(&linalg::collect_sparse(field, img));
                }
                ranks[i] = ech.rank();
            }
            let betti = (0..=max_i)
                .map(|i| (chains[i].len() - ranks[i] - ranks[i + 1]) as u64)
                .collect();
            (mu[0], betti)
        })
        .collect();
    let mut entries = BTreeMap::new();
    for (j, betti) in per_block {
        for (i, v) in betti.into_iter().enumerate() {
            if v > 0 {
                *entries.entry((i, j)).or_insert(0) += v;
            }
        }
    }
    Ok(BettiTable::new(n, max_i, entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::homology::ci_t_values;
    use crate::poly::{Ideal, PolyRing};

    fn alg(vars: &[&str], gens: &[&str]) -> ArtinianAlgebra<PrimeField> {
        let r = PolyRing::new(PrimeField::new(32003).unwrap(), vars.iter().map(|s| s.to_string()).collect()).unwrap();
        ArtinianAlgebra::from_ideal(&Ideal::parse(r, gens).unwrap()).unwrap()
    }

    #[test]
    fn complete_intersection_of_two_quadrics() {
        let a = alg(&["x", "y"], &["x^2", "y^2"]);
        let b = betti_over_s(&a, None).unwrap();
        let entries: Vec<_> = b.entries().collect();
        assert_eq!(entries, vec![(0, 0, 1), (1, 2, 2), (2, 4, 1)]);
        assert!(b.satisfies_euler_identity(&a.hilbert()));
        assert!(b.is_symmetric(2));
    }

    #[test]
    fn quadric_hypersurface_regularity() {
        let a = alg(&["x"], &["x^2"]);
        assert_eq!(betti_over_s(&a, None).unwrap().regularity(), Some(1));
    }

    #[test]
    fn roos4_table() {
        let a = alg(&["u", "x", "y", "z"], &["x^2+y*z+u^2", "x*u", "x^2+x*y", "x*z+y*u", "z*u+u^2", "y^2+z^2"]);
        let b = betti_over_s(&a, None).unwrap();
        let entries: Vec<_> = b.entries().collect();
        assert_eq!(entries, vec![(0, 0, 1), (1, 2, 6), (2, 3, 4), (2, 4, 9), (3, 5, 12), (4, 6, 4)]);
        assert_eq!(b.regularity(), Some(2));
        assert_eq!(b.t_values(), vec![Some(0), Some(2), Some(4), Some(5), Some(6)]);
        assert!(b.satisfies_euler_identity(&a.hilbert()));
        assert!(!b.is_symmetric(2));
        // beta_1 agrees with the number of minimal generators.
        assert_eq!(b.total(1) as usize, a.minimal_ideal_generators().len());
    }

    #[test]
    fn ci_t_values_match_koszul() {
        for (gens, degrees) in [
            (vec!["x^2", "y^2", "z^2"], vec![2, 2, 2]),
            (vec!["x^3", "y^2", "z^2"], vec![3, 2, 2]),
        ] {
            let a = alg(&["x", "y", "z"], &gens);
            let b = betti_over_s(&a, None).unwrap();
            let ts: Vec<i32> = b.t_values()[1..].iter().map(|t| t.unwrap()).collect();
            assert_eq!(ts, ci_t_values(&degrees));
        }
    }

    #[test]
    fn truncated_table() {
        let a = alg(&["x", "y", "z"], &["x^2", "y^2", "z^2"]);
        let b = betti_over_s(&a, Some(1)).unwrap();
        assert_eq!(b.max_i(), 1);
        assert!(!b.is_complete());
        assert_eq!(b.get(1, 2), 3);
    }

    #[test]
    fn subsets_are_counted() {
        assert_eq!(subsets(6, 3).len(), 20);
        assert_eq!(subsets(4, 0), vec![0]);
        assert!(subsets(3, 4).is_empty());
    }
}
