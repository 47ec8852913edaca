//! Hilbert series and truncated graded Poincaré series.
//!
//! A [`PoincareTruncation`] holds `sum beta_{i,j} x^i y^j` for `i <= order`.
//! Sums and products of truncations of different orders are cut to the
//! smaller order, so an equality between truncations never claims more
//! than both sides know.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{canonical_module, ArtinianAlgebra, FiniteGradedModule};
use crate::check::Check;
use crate::constructions::{build, roos_base, roos_module, roos_module_from_ring, Family, ROOS_BASE_VARS};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{resolve, resolve_k_over_r, residue_field, ResolveOptions, TorProfile};
use crate::idealization::idealize;

/// `sum dim R_i t^i` of an Artinian algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSeries(Vec<u64>);

impl HilbertSeries {
    pub fn of<F: Field>(alg: &ArtinianAlgebra<F>) -> Self {
        HilbertSeries(alg.hilbert().into_iter().map(|d| d as u64).collect())
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c}t"),
                _ => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

pub fn hilbert_series<F: Field>(alg: &ArtinianAlgebra<F>) -> HilbertSeries {
    HilbertSeries::of(alg)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoincareTruncation {
    order: usize,
    coeffs: BTreeMap<(usize, i32), BigInt>,
}

impl PoincareTruncation {
    pub fn zero(order: usize) -> Self {
        PoincareTruncation { order, coeffs: BTreeMap::new() }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, 0, BigInt::one())
    }

    /// `c x^i y^j`.
    pub fn monomial(order: usize, i: usize, j: i32, c: BigInt) -> Self {
        let mut p = Self::zero(order);
        p.set(i, j, c);
        p
    }

    /// Betti numbers of a computed resolution. The order is the number of
    /// steps the resolution covers, capped at `order`.
    pub fn from_profile(profile: &TorProfile, order: usize) -> Self {
        let order = order.min(profile.steps.len().saturating_sub(1));
        let mut p = Self::zero(order);
        for (i, degs) in profile.steps.iter().enumerate().take(order + 1) {
            for &d in degs {
                let c = p.get(i, d) + 1;
                p.set(i, d, c);
            }
        }
        p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: i32) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    fn set(&mut self, i: usize, j: i32, c: BigInt) {
        if i > self.order || c.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    /// Nonzero coefficients keyed by `(i, j)`.
    pub fn coefficients(&self) -> &BTreeMap<(usize, i32), BigInt> {
        &self.coeffs
    }

    /// Cut to a smaller order.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        PoincareTruncation { order, coeffs: self.coeffs.iter().filter(|((i, _), _)| *i <= order).map(|(k, v)| (*k, v.clone())).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.truncate(other.order);
        for (&(i, j), c) in &other.coeffs {
            let v = out.get(i, j) + c;
            out.set(i, j, v);
        }
        out
    }

    pub fn neg(&self) -> Self {
        PoincareTruncation { order: self.order, coeffs: self.coeffs.iter().map(|(k, v)| (*k, -v)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order.min(other.order));
        for (&(i, j), a) in &self.coeffs {
            for (&(k, l), b) in &other.coeffs {
                if i + k <= out.order {
                    let v = out.get(i + k, j + l) + a * b;
                    out.set(i + k, j + l, v);
                }
            }
        }
        out
    }

    /// Multiplication by `x^dx y^dy`; the order grows by `dx` since nothing
    /// below `x^dx` is lost.
    pub fn shift(&self, dx: usize, dy: i32) -> Self {
        PoincareTruncation { order: self.order + dx, coeffs: self.coeffs.iter().map(|(&(i, j), c)| ((i + dx, j + dy), c.clone())).collect() }
    }

    /// `(1 - self)^{-1}` to the order of `self`. Requires no `x^0` terms.
    /// Partial sums of a series with non-negative terms stay non-negative;
    /// a negative coefficient is reported as an error.
    pub fn geometric_inverse(&self) -> Result<Self> {
        if self.coeffs.keys().any(|&(i, _)| i == 0) {
            return Err(Error::BadParameter("geometric inverse needs a series without x^0 terms".into()));
        }
        let mut sum = Self::one(self.order);
        let mut power = Self::one(self.order);
        for _ in 0..self.order {
            power = power.mul(self);
            sum = sum.add(&power);
            if let Some(((i, j), c)) = sum.coeffs.iter().find(|(_, c)| c.is_negative()) {
                return Err(Error::Verification(format!("negative coefficient {c} at x^{i} y^{j} in a geometric series")));
            }
        }
        Ok(sum)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// All `beta_{i,j}` with `i <= s` sit on `j = i + base`.
    pub fn is_linear_through(&self, s: usize, base: i32) -> bool {
        self.coeffs.keys().all(|&(i, j)| i > s || j == i as i32 + base)
    }

    /// `{i, j, value}` triples, sorted.
    pub fn entries(&self) -> Vec<(usize, i32, String)> {
        self.coeffs.iter().map(|(&(i, j), c)| (i, j, c.to_string())).collect()
    }
}

impl fmt::Display for PoincareTruncation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(|(&(i, j), c)| format!("{c}x^{i}y^{j}")).collect();
        write!(f, "{} + O(x^{})", if terms.is_empty() { "0".into() } else { terms.join(" + ") }, self.order + 1)
    }
}

/// The two sides of a product formula for Poincaré series.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesComparison {
    pub order: usize,
    pub lhs: Vec<(usize, i32, String)>,
    pub rhs: Vec<(usize, i32, String)>,
    pub equal: bool,
}

impl SeriesComparison {
    fn new(lhs: &PoincareTruncation, rhs: &PoincareTruncation) -> Self {
        let order = lhs.order.min(rhs.order);
        let (l, r) = (lhs.truncate(order), rhs.truncate(order));
        SeriesComparison { order, equal: l == r, lhs: l.entries(), rhs: r.entries() }
    }
}

fn poincare<F: Field>(alg: &ArtinianAlgebra<F>, module: &FiniteGradedModule<F>, order: usize) -> Result<PoincareTruncation> {
    let profile = resolve(alg, module, &ResolveOptions::new(order))?;
    Ok(PoincareTruncation::from_profile(&profile, order))
}

/// `P^k` over the idealization of `R` against
/// `P_R^k (1 - xy P_R^{omega_R(-2)})^{-1}`, both computed by resolutions.
pub fn gulliksen_check_1<F: Field>(field: F, alpha: i64, order: usize) -> Result<SeriesComparison> {
    let ideal = build(field, &Family::RoosAlpha { alpha })?;
    let ideal_r = idealize(&ideal)?;
    let r = ideal_r.base();
    let r_tilde = ideal_r.algebra()?;
    let lhs = poincare(r_tilde, &residue_field(r_tilde), order)?;
    let pk = poincare(r, &residue_field(r), order)?;
    let omega = canonical_module(r).shift(-2);
    let factor = poincare(r, &omega, order)?.shift(1, 1).truncate(order).geometric_inverse()?;
    Ok(SeriesComparison::new(&lhs, &pk.mul(&factor)))
}

/// `P_R^{omega_R}` against `P_A^{omega_R} (1 - xy P_A^M)^{-1}` where
/// `R = A ⋉ M(-1)` and `omega_R` is viewed over `A`.
pub fn gulliksen_check_2<F: Field>(field: F, alpha: i64, order: usize) -> Result<SeriesComparison> {
    let r = ArtinianAlgebra::from_ideal(&build(field.clone(), &Family::RoosAlpha { alpha })?)?;
    let a = ArtinianAlgebra::from_ideal(&roos_base(field)?)?;
    let omega = canonical_module(&r);
    let lhs = poincare(&r, &omega, order)?;
    let omega_a = omega.restrict(&ROOS_BASE_VARS);
    let m = roos_module_from_ring(&r)?;
    let factor = poincare(&a, &m, order)?.shift(1, 1).truncate(order).geometric_inverse()?;
    let rhs = poincare(&a, &omega_a, order)?.mul(&factor);
    Ok(SeriesComparison::new(&lhs, &rhs))
}

/// `Tor_i^A(omega_M(-1), k)_{i+1}` for `i = 1..=steps`, for the module
/// taken from the ring and for the hand-written action table.
pub fn dual_module_tor_check<F: Field>(field: F, alpha: i64, steps: usize) -> Result<Vec<Check>> {
    let r = ArtinianAlgebra::from_ideal(&build(field.clone(), &Family::RoosAlpha { alpha })?)?;
    let a = ArtinianAlgebra::from_ideal(&roos_base(field.clone())?)?;
    let sources = [("ring", roos_module_from_ring(&r)?), ("table", roos_module(field, alpha)?)];
    let mut checks = Vec::new();
    for (name, m) in sources {
        let dual = m.dual().shift(-1);
        let profile = resolve(&a, &dual, &ResolveOptions::new(steps))?;
        let off: Vec<(usize, usize)> = (1..=steps).map(|i| (i, profile.betti(i, i as i32 + 1))).collect();
        checks.push(Check::new(
            format!("tor-{name}-module"),
            off.iter().all(|&(_, b)| b == 0),
            format!("dim Tor_i(omega_M(-1), k)_(i+1) for i = 1..{steps}: {:?}; HF {:?}", off.iter().map(|p| p.1).collect::<Vec<_>>(), dual.hilbert()),
        ));
    }
    Ok(checks)
}

/// `P^k` of `R` and whether it is linear exactly through `linear_steps`.
pub fn linear_strand_consistent(profile: &TorProfile) -> bool {
    let p = PoincareTruncation::from_profile(profile, profile.steps.len().saturating_sub(1));
    let s = profile.linear_steps();
    p.is_linear_through(s, 0) && (s == p.order() || !p.is_linear_through(s + 1, 0))
}

/// `P^k` of `R` to the given order.
pub fn residue_poincare<F: Field>(alg: &ArtinianAlgebra<F>, order: usize) -> Result<PoincareTruncation> {
    Ok(PoincareTruncation::from_profile(&resolve_k_over_r(alg, &ResolveOptions::new(order))?, order))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::poly::{Ideal, PolyRing};
    use proptest::prelude::*;

    fn fp() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    fn series(order: usize, terms: &[(usize, i32, i64)]) -> PoincareTruncation {
        terms.iter().fold(PoincareTruncation::zero(order), |acc, &(i, j, c)| acc.add(&PoincareTruncation::monomial(order, i, j, c.into())))
    }

    #[test]
    fn geometric_series() {
        let z = series(3, &[(1, 1, 1)]);
        assert_eq!(z.geometric_inverse().unwrap(), series(3, &[(0, 0, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1)]));
        assert!(series(3, &[(0, 1, 1)]).geometric_inverse().is_err());
        assert!(series(3, &[(1, 1, -1)]).geometric_inverse().is_err());
    }

    #[test]
    fn mixed_orders_truncate() {
        let a = series(2, &[(0, 0, 1), (2, 2, 5)]);
        let b = series(4, &[(0, 0, 1), (3, 3, 1)]);
        assert_eq!(a.add(&b).order(), 2);
        assert_eq!(a.mul(&b), a);
        assert_eq!(a.shift(1, 1).order(), 3);
    }

    #[test]
    fn hilbert_series_examples() {
        let ring = PolyRing::new(fp(), vec!["x".into()]).unwrap();
        let alg = ArtinianAlgebra::from_ideal(&Ideal::parse(ring, &["x^2"]).unwrap()).unwrap();
        assert_eq!(hilbert_series(&alg).to_string(), "1 + 1t");
        let r = ArtinianAlgebra::from_ideal(&build(fp(), &Family::RoosAlpha { alpha: 2 }).unwrap()).unwrap();
        assert_eq!(hilbert_series(&r).to_string(), "1 + 6t + 8t^2");
    }

    #[test]
    fn product_formula_over_a_trivial_extension() {
        // k[x]/(x^2) is k ⋉ k(-1): P^k = 1/(1 - xy).
        let ring = PolyRing::new(fp(), vec!["x".into()]).unwrap();
        let alg = ArtinianAlgebra::from_ideal(&Ideal::parse(ring, &["x^2"]).unwrap()).unwrap();
        let p = residue_poincare(&alg, 4).unwrap();
        assert_eq!(p, series(4, &[(1, 1, 1)]).geometric_inverse().unwrap());
    }

    #[test]
    fn gulliksen_second_alpha_2() {
        let c = gulliksen_check_2(fp(), 2, 2).unwrap();
        assert!(c.equal, "{c:?}");
        assert_eq!(c.order, 2);
    }

    #[test]
    fn tor_of_dual_module_alpha_2() {
        let checks = dual_module_tor_check(fp(), 2, 3).unwrap();
        assert!(checks.iter().all(|c| c.passed()), "{checks:?}");
    }

    #[test]
    fn strand_consistency() {
        let r = ArtinianAlgebra::from_ideal(&build(fp(), &Family::RoosAlpha { alpha: 2 }).unwrap()).unwrap();
        let profile = resolve_k_over_r(&r, &ResolveOptions::new(3)).unwrap();
        assert!(linear_strand_consistent(&profile));
        assert_eq!(profile.linear_steps(), 2);
    }

    proptest! {
        #[test]
        fn product_with_one_is_identity(terms in proptest::collection::vec((0usize..4, 0i32..6, 0i64..50), 0..8)) {
            let p = series(3, &terms);
            prop_assert_eq!(p.mul(&PoincareTruncation::one(3)), p.clone());
            prop_assert_eq!(p.add(&p.neg()), PoincareTruncation::zero(3));
        }

        #[test]
        fn geometric_inverse_inverts(terms in proptest::collection::vec((1usize..4, 0i32..6, 0i64..50), 0..8)) {
            let p = series(3, &terms);
            let inv = p.geometric_inverse().unwrap();
            prop_assert!(inv.is_nonnegative());
            prop_assert_eq!(PoincareTruncation::one(3).add(&p.neg()).mul(&inv), PoincareTruncation::one(3));
        }
    }
}
