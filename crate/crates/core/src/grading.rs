//! Finest multigradings compatible with given relations.
//!
//! Besides the standard grading, the example ideals are usually homogeneous
//! for a finer grading by a free abelian group (a monomial ideal is
//! `Z^n`-graded, for instance). Every map in this crate is homogeneous for
//! such a grading, so the linear algebra splits into independent blocks.
//! The grading is found as the integer nullspace of the constraints "all
//! terms of a relation have the same weight".

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::field::Field;
use crate::poly::{Monomial, Polynomial};

/// Multidegree. Coordinate 0 is always the total degree.
pub type Multidegree = Vec<i32>;

/// Integer basis of `{w : c . w = 0 for every constraint row c}`.
pub fn integer_nullspace(constraints: &[Vec<i64>], unknowns: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<BigRational>> = constraints
        .iter()
        .filter(|c| c.iter().any(|&x| x != 0))
        .map(|c| c.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for k in 0..unknowns {
                    let sub = &factor * &rows[r][k];
                    rows[i][k] -= sub;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..unknowns).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigRational::zero(); unknowns];
        v[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -rows[row][free].clone();
        }
        let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        basis.push(ints.iter().map(|x| (x / &g).to_i64().expect("small weights")).collect());
    }
    basis
}

/// Constraint rows (one per non-leading term) saying that each polynomial is
/// homogeneous for the unknown variable weights.
pub fn homogeneity_constraints<F: Field>(polys: &[Polynomial<F>], nvars: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for p in polys {
        let Some((first, _)) = p.leading_term() else { continue };
        for (m, _) in &p.terms()[1..] {
            out.push((0..nvars).map(|i| m.exponent(i) as i64 - first.exponent(i) as i64).collect());
        }
    }
    out
}

/// Weights of the variables (and optionally of extra unknowns such as the
/// basis of a module) for the finest grading satisfying the constraints,
/// prefixed by the given total degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    weights: Vec<Multidegree>,
}

impl Grading {
    /// `total[k]` is the standard degree of unknown `k`; it must satisfy the
    /// constraints itself.
    pub fn from_constraints(constraints: &[Vec<i64>], total: &[i64]) -> Self {
        let basis = integer_nullspace(constraints, total.len());
        let weights = (0..total.len())
            .map(|k| {
                let mut w = vec![total[k] as i32];
                w.extend(basis.iter().map(|b| b[k] as i32));
                w
            })
            .collect();
        Grading { weights }
    }

    /// Standard grading only.
    pub fn standard(nvars: usize) -> Self {
        Grading { weights: vec![vec![1]; nvars] }
    }

    pub fn rank(&self) -> usize {
        self.weights[0].len()
    }

    pub fn weight(&self, k: usize) -> &Multidegree {
        &self.weights[k]
    }

    pub fn weights(&self) -> &[Multidegree] {
        &self.weights
    }

    /// Multidegree of a monomial in the first `m.nvars()` unknowns.
    pub fn of_monomial(&self, m: &Monomial) -> Multidegree {
        let mut d = vec![0; self.rank()];
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                for (x, w) in d.iter_mut().zip(&self.weights[i]) {
                    *x += e as i32 * w;
                }
            }
        }
        d
    }
}

pub fn add_degrees(a: &[i32], b: &[i32]) -> Multidegree {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_degrees(a: &[i32], b: &[i32]) -> Multidegree {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg_degree(a: &[i32]) -> Multidegree {
    a.iter().map(|x| -x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::{Ideal, PolyRing};

    #[test]
    fn monomial_ideal_is_finely_graded() {
        let r = PolyRing::new(PrimeField::new(7).unwrap(), ["x", "y"].map(String::from).to_vec()).unwrap();
        let i = Ideal::parse(r, &["x^2", "x*y", "y^2"]).unwrap();
        let c = homogeneity_constraints(i.gens(), 2);
        let g = Grading::from_constraints(&c, &[1, 1]);
        assert_eq!(g.rank(), 3);
        assert_ne!(g.weight(0)[1..], g.weight(1)[1..]);
    }

    #[test]
    fn sum_of_squares_only_standard() {
        let r = PolyRing::new(PrimeField::new(7).unwrap(), ["a", "b", "c"].map(String::from).to_vec()).unwrap();
        let i = Ideal::parse(r, &["a^2", "b^2", "c^2", "(a+b+c)^2"]).unwrap();
        let c = homogeneity_constraints(i.gens(), 3);
        let g = Grading::from_constraints(&c, &[1, 1, 1]);
        // The nullspace is spanned by (1,1,1) alone.
        assert_eq!(g.rank(), 2);
        assert!(g.weights().iter().all(|w| w[1] == g.weight(0)[1]));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let c = vec![vec![1, -1, 0, 0], vec![0, 2, -2, 0]];
        let ns = integer_nullspace(&c, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &c {
                assert_eq!(row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>(), 0);
            }
        }
    }
}
