//! Hilbert-function shape and Lefschetz behavior of Artinian algebras.
//!
//! Lefschetz verdicts are evidence from sampled linear forms. The one
//! certificate produced here is the obstruction: a non-unimodal Hilbert
//! function rules out the weak (hence also the strong) property.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::ArtinianAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Echelon, SparseVec};

/// The nonzero values of a Hilbert function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HVector(Vec<u64>);

impl HVector {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.first() != Some(&1) {
            return Err(Error::BadParameter("an h-vector starts with 1".into()));
        }
        if values.contains(&0) {
            return Err(Error::BadParameter("h-vector entries must be positive".into()));
        }
        Ok(HVector(values))
    }

    pub fn of<F: Field>(alg: &ArtinianAlgebra<F>) -> Self {
        HVector(alg.hilbert().into_iter().map(|h| h as u64).collect())
    }

    pub fn values(&self) -> &[u64] {
        &self.0
    }

    pub fn is_palindromic(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    pub fn unimodality(&self) -> Unimodality {
        unimodality(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Unimodality {
    pub unimodal: bool,
    /// Index of the valley: the last entry before the first rise that
    /// follows a strict descent.
    pub violation: Option<usize>,
}

/// Whether `h` weakly rises and then weakly falls.
pub fn unimodality<T: Ord>(h: &[T]) -> Unimodality {
    let mut descended = false;
    for k in 1..h.len() {
        if h[k] < h[k - 1] {
            descended = true;
        } else if descended && h[k] > h[k - 1] {
            return Unimodality { unimodal: false, violation: Some(k - 1) };
        }
    }
    Unimodality { unimodal: true, violation: None }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LefschetzMode {
    Weak,
    Strong,
}

/// Rank of `l^j : R_i -> R_{i+j}` for one sampled form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapRank {
    pub i: usize,
    pub j: usize,
    pub rank: usize,
    pub expected: usize,
}

impl MapRank {
    pub fn is_full(&self) -> bool {
        self.rank == self.expected
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LefschetzReport {
    pub mode: LefschetzMode,
    pub trials: usize,
    pub seed: u64,
    pub unimodality: Unimodality,
    /// First trial whose form had full rank everywhere.
    pub passing_trial: Option<usize>,
    /// Ranks for the passing form, or for the last trial when none passed.
    pub maps: Vec<MapRank>,
}

impl LefschetzReport {
    pub fn holds_for_some_form(&self) -> bool {
        self.passing_trial.is_some()
    }

    /// Non-unimodality is a proof that no form works.
    pub fn impossible(&self) -> bool {
        !self.unimodality.unimodal
    }

    pub fn verdict(&self) -> &'static str {
        if self.impossible() {
            "impossible: non-unimodal Hilbert function"
        } else if self.holds_for_some_form() {
            "holds for some tested form (probabilistic)"
        } else {
            "failed for all tested forms (probabilistic)"
        }
    }
}

/// Samples a linear form for trial `trial`: coefficients uniform in
/// `[1, 1000]` over the rationals, uniform nonzero over `F_p`.
pub fn sample_form<F: Field>(field: &F, nvars: usize, seed: u64, trial: usize) -> Vec<F::Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    let p = field.characteristic();
    (0..nvars)
        .map(|_| {
            let c = if p == 0 { rng.random_range(1..=1000i64) } else { rng.random_range(1..p) as i64 };
            field.from_i64(c)
        })
        .collect()
}

fn apply_form<F: Field>(alg: &ArtinianAlgebra<F>, form: &[F::Elem], v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
    let field = alg.field();
    let mut acc = Vec::new();
    for (x, c) in form.iter().enumerate() {
        if field.is_zero(c) {
            continue;
        }
        for (k, a) in v {
            for (t, b) in &alg.actions()[x][*k as usize] {
                acc.push((*t, field.mul(&field.mul(c, a), b)));
            }
        }
    }
    linalg::collect_sparse(field, acc)
}

/// Ranks of multiplication by `form^j` between graded pieces: `j = 1` in
/// weak mode, every `j >= 1` in strong mode.
pub fn multiplication_ranks<F: Field>(alg: &ArtinianAlgebra<F>, form: &[F::Elem], mode: LefschetzMode) -> Vec<MapRank> {
    let h = alg.hilbert();
    let top = alg.top_degree();
    let mut out = Vec::new();
    for i in 0..=top {
        let mut vecs: Vec<SparseVec<F::Elem>> = alg.degree_range(i).map(|b| vec![(b as u32, alg.field().one())]).collect();
        let max_j = match mode {
            LefschetzMode::Weak => 1,
            LefschetzMode::Strong => top - i,
        };
        for j in 1..=max_j.min(top - i) {
            vecs = vecs.iter().map(|v| apply_form(alg, form, v)).collect();
            let range = alg.degree_range(i + j);
            let local: HashMap<u32, u32> = range.clone().map(|b| (b as u32, (b - range.start) as u32)).collect();
            let local_vecs: Vec<SparseVec<F::Elem>> =
                vecs.iter().map(|v| v.iter().map(|(t, c)| (local[t], c.clone())).collect()).collect();
            let mut ech = Echelon::new(alg.field().clone(), range.len());
            for v in &local_vecs {
                if ech.is_full() {
                    break;
                }
                ech.insert(v);
            }
            out.push(MapRank { i, j, rank: ech.rank(), expected: h[i].min(h[i + j]) });
        }
    }
    out
}

/// Tests `trials` seeded random linear forms. Over `F_p` the
/// characteristic must exceed the top degree.
pub fn lefschetz_check<F: Field>(alg: &ArtinianAlgebra<F>, mode: LefschetzMode, trials: usize, seed: u64) -> Result<LefschetzReport> {
    let p = alg.field().characteristic();
    if p != 0 && p <= alg.top_degree() as u64 {
        return Err(Error::BadParameter(format!(
            "characteristic {p} does not exceed the top degree {}",
            alg.top_degree()
        )));
    }
    let unimodality = HVector::of(alg).unimodality();
    let results: Vec<Vec<MapRank>> = (0..trials)
        .into_par_iter()
        .map(|t| multiplication_ranks(alg, &sample_form(alg.field(), alg.nvars(), seed, t), mode))
        .collect();
    let passing_trial = results.iter().position(|maps| maps.iter().all(MapRank::is_full));
    let maps = match passing_trial {
        Some(t) => results[t].clone(),
        None => results.last().cloned().unwrap_or_default(),
    };
    Ok(LefschetzReport { mode, trials, seed, unimodality, passing_trial, maps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::{Ideal, PolyRing};
    use proptest::prelude::*;

    #[test]
    fn unimodality_examples() {
        assert!(unimodality(&[1, 8, 8, 1]).unimodal);
        let m7 = [1, 1444, 2092, 1958, 1820, 1958, 2092, 1444, 1];
        assert_eq!(unimodality(&m7), Unimodality { unimodal: false, violation: Some(4) });
        assert_eq!(unimodality(&[1, 13, 12, 13, 1]).violation, Some(2));
        assert!(unimodality::<u64>(&[]).unimodal);
    }

    #[test]
    fn h_vector_validation() {
        assert!(HVector::new(vec![1, 3, 0]).is_err());
        assert!(HVector::new(vec![2, 3]).is_err());
        assert!(HVector::new(vec![1, 3, 1]).unwrap().is_palindromic());
    }

    #[test]
    fn cubic_in_one_variable_is_weak_lefschetz() {
        let r = PolyRing::new(Rationals, vec!["x".into()]).unwrap();
        let a = ArtinianAlgebra::from_ideal(&Ideal::parse(r, &["x^3"]).unwrap()).unwrap();
        let report = lefschetz_check(&a, LefschetzMode::Weak, 1, 0).unwrap();
        assert!(report.holds_for_some_form());
        assert_eq!(report.maps.len(), 2);
    }

    #[test]
    fn squares_in_four_variables_are_strong_lefschetz() {
        let r = PolyRing::new(Rationals, ["a", "b", "c", "d"].map(String::from).to_vec()).unwrap();
        let a = ArtinianAlgebra::from_ideal(&Ideal::parse(r, &["a^2", "b^2", "c^2", "d^2"]).unwrap()).unwrap();
        let report = lefschetz_check(&a, LefschetzMode::Strong, 3, 7).unwrap();
        assert!(report.holds_for_some_form());
        assert_eq!(report.verdict(), "holds for some tested form (probabilistic)");
    }

    #[test]
    fn monomial_form_fails_where_expected() {
        // x^2 = 0, so x is not a strong Lefschetz element; x + y is.
        let r = PolyRing::new(PrimeField::new(32003).unwrap(), vec!["x".into(), "y".into()]).unwrap();
        let a = ArtinianAlgebra::from_ideal(&Ideal::parse(r, &["x^2", "y^2"]).unwrap()).unwrap();
        let f = *a.field();
        let bad = multiplication_ranks(&a, &[f.one(), f.zero()], LefschetzMode::Strong);
        assert!(!bad.iter().all(MapRank::is_full));
        let good = multiplication_ranks(&a, &[f.one(), f.one()], LefschetzMode::Strong);
        assert!(good.iter().all(MapRank::is_full));
    }

    #[test]
    fn small_characteristic_is_refused() {
        let r = PolyRing::new(PrimeField::new(3).unwrap(), vec!["x".into()]).unwrap();
        let a = ArtinianAlgebra::from_ideal(&Ideal::parse(r, &["x^4"]).unwrap()).unwrap();
        assert!(matches!(lefschetz_check(&a, LefschetzMode::Weak, 1, 0), Err(Error::BadParameter(_))));
    }

    #[test]
    fn runs_are_deterministic() {
        let r = PolyRing::new(PrimeField::new(32003).unwrap(), ["x", "y", "z"].map(String::from).to_vec()).unwrap();
        let a = ArtinianAlgebra::from_ideal(&Ideal::parse(r, &["x^2", "y^2", "z^3", "x*y*z"]).unwrap()).unwrap();
        let one = lefschetz_check(&a, LefschetzMode::Strong, 4, 11).unwrap();
        let two = lefschetz_check(&a, LefschetzMode::Strong, 4, 11).unwrap();
        assert_eq!(one, two);
    }

    proptest! {
        #[test]
        fn ranks_never_exceed_bound(seed in 0u64..1000) {
            let r = PolyRing::new(PrimeField::new(101).unwrap(), ["x", "y", "z"].map(String::from).to_vec()).unwrap();
            let a = ArtinianAlgebra::from_ideal(&Ideal::parse(r, &["x^2", "y^3", "z^2", "x*y^2"]).unwrap()).unwrap();
            let form = sample_form(a.field(), 3, seed, 0);
            for m in multiplication_ranks(&a, &form, LefschetzMode::Strong) {
                prop_assert!(m.rank <= m.expected);
            }
        }

        #[test]
        fn unimodal_sequences_have_no_valley(up in proptest::collection::vec(0u64..50, 0..6), down in proptest::collection::vec(0u64..50, 0..6)) {
            let mut up = up;
            up.sort();
            let mut down = down;
            down.sort_by(|a, b| b.cmp(a));
            let peak = up.last().copied().unwrap_or(0).max(down.first().copied().unwrap_or(0));
            let mut h = up.clone();
            h.push(peak);
            h.extend(down);
            prop_assert!(unimodality(&h).unimodal);
        }
    }
}
