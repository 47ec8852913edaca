//! Buchberger's algorithm for homogeneous ideals, normal forms, staircases
//! and colon ideals in Artinian quotients.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Echelon, SparseVec};
use crate::poly::{monomials_of_degree, Ideal, Monomial, PolyRing, Polynomial};

/// Degree past which a staircase is declared infinite.
pub const MAX_STAIRCASE_DEGREE: u32 = 64;

fn divmask(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &e)| if e > 0 { acc | 1 << (i % 64) } else { acc })
}

/// Reduced, monic Groebner basis, sorted by increasing leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: PolyRing<F>,
    elems: Vec<Polynomial<F>>,
    leads: Vec<Monomial>,
    masks: Vec<u64>,
}

impl<F: Field> GroebnerBasis<F> {
    fn from_elems(ring: PolyRing<F>, mut elems: Vec<Polynomial<F>>) -> Self {
        elems.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        let leads: Vec<Monomial> = elems.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        let masks = leads.iter().map(divmask).collect();
        GroebnerBasis { ring, elems, leads, masks }
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elems
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leads
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Elements grouped by degree.
    pub fn by_degree(&self) -> BTreeMap<u32, Vec<&Polynomial<F>>> {
        let mut out: BTreeMap<u32, Vec<&Polynomial<F>>> = BTreeMap::new();
        for g in &self.elems {
            out.entry(g.degree().unwrap()).or_default().push(g);
        }
        out
    }

    pub fn max_degree(&self) -> u32 {
        self.leads.iter().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// True when every element has degree at most 2.
    pub fn is_quadratic(&self) -> bool {
        self.max_degree() <= 2
    }

    fn find_divisor(&self, m: &Monomial) -> Option<usize> {
        find_divisor(&self.leads, &self.masks, m)
    }

    pub fn is_standard(&self, m: &Monomial) -> bool {
        self.find_divisor(m).is_none()
    }

    /// Remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Polynomial<F> {
        reduce_full(&self.ring, &self.elems, &self.leads, &self.masks, f)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Rechecks the defining property: every S-polynomial reduces to zero.
    pub fn verify(&self) -> bool {
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                if self.leads[i].is_coprime(&self.leads[j]) {
                    continue;
                }
                let s = spoly(&self.ring, &self.elems[i], &self.elems[j]);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Standard monomials grouped by degree. Fails when the quotient is not
    /// finite-dimensional.
    pub fn staircase(&self) -> Result<Staircase> {
        let n = self.ring.nvars();
        for i in 0..n {
            let pure = self.leads.iter().any(|m| m.exponent(i) > 0 && m.exponent(i) == m.degree());
            if !pure {
                return Err(Error::NotArtinian(format!(
                    "no power of {} is a leading monomial",
                    self.ring.var_names()[i]
                )));
            }
        }
        let mut by_degree = vec![vec![Monomial::one(n)]];
        if !self.is_standard(&Monomial::one(n)) {
            return Ok(Staircase { by_degree: vec![] });
        }
        loop {
            let mut next = extend_staircase(by_degree.last().unwrap(), n, |m| self.is_standard(m));
            if next.is_empty() {
                break;
            }
            if by_degree.len() as u32 > MAX_STAIRCASE_DEGREE {
                return Err(Error::NotArtinian(format!("staircase exceeds degree {MAX_STAIRCASE_DEGREE}")));
            }
            next.sort_by(|a, b| self.ring.cmp(b, a));
            by_degree.push(next);
        }
        Ok(Staircase { by_degree })
    }
}

/// Standard monomials one degree up. Each monomial is extended only by
/// variables at or after its last variable, so none is produced twice; this
/// is complete because standard monomials are closed under division.
fn extend_staircase(prev: &[Monomial], n: usize, is_standard: impl Fn(&Monomial) -> bool) -> Vec<Monomial> {
    let mut next = Vec::new();
    for m in prev {
        let last = m.exponents().iter().rposition(|&e| e > 0).unwrap_or(0);
        for i in last..n {
            let t = m.mul_var(i);
            if is_standard(&t) {
                next.push(t);
            }
        }
    }
    next
}

fn find_divisor(leads: &[Monomial], masks: &[u64], m: &Monomial) -> Option<usize> {
    let mm = divmask(m);
    let d = m.degree();
    (0..leads.len()).find(|&k| masks[k] & !mm == 0 && leads[k].degree() <= d && leads[k].divides(m))
}

/// Full reduction of `f` by `elems` (monic, with the given leading data).
fn reduce_full<F: Field>(
    ring: &PolyRing<F>,
    elems: &[Polynomial<F>],
    leads: &[Monomial],
    masks: &[u64],
    f: &Polynomial<F>,
) -> Polynomial<F> {
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, F::Elem)> = Vec::new();
    loop {
        let Some((m, c)) = p.leading_term().cloned() else { break };
        match find_divisor(leads, masks, &m) {
            Some(k) => {
                let q = leads[k].quotient_of(&m).unwrap();
                p = ring.sub_mul_term(&p, &elems[k], &q, &c);
            }
            None => {
                rem.push((m, c));
                p = ring.from_sorted_tail(&p);
            }
        }
    }
    ring.from_sorted(rem)
}

fn spoly<F: Field>(ring: &PolyRing<F>, f: &Polynomial<F>, g: &Polynomial<F>) -> Polynomial<F> {
    let (mf, cf) = f.leading_term().unwrap();
    let (mg, cg) = g.leading_term().unwrap();
    let l = mf.lcm(mg);
    let a = ring.mul_term(f, &mf.quotient_of(&l).unwrap(), cg);
    ring.sub_mul_term(&a, g, &mg.quotient_of(&l).unwrap(), cf)
}

/// Reduced Groebner basis of the ideal generated by homogeneous `gens`.
///
/// Pairs are processed in order of increasing lcm degree (normal selection
/// for homogeneous input), with the coprime-leading-term criterion and the
/// chain criterion. After each degree the basis is complete up to that
/// degree; once every monomial of some degree is a leading-term multiple,
/// all higher-degree pairs are discarded.
pub fn buchberger<F: Field>(ring: &PolyRing<F>, gens: &[Polynomial<F>]) -> GroebnerBasis<F> {
    let n = ring.nvars();
    let mut inputs: BTreeMap<u32, Vec<Polynomial<F>>> = BTreeMap::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        inputs.entry(g.degree().unwrap()).or_default().push(g.clone());
    }
    let mut elems: Vec<Polynomial<F>> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut masks: Vec<u64> = Vec::new();
    let mut pairs: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
    let mut pending: HashSet<(u32, u32)> = HashSet::new();
    // Standard monomials of the last finished degree, while that is cheap.
    let mut track: Option<(u32, Vec<Monomial>)> = Some((0, vec![Monomial::one(n)]));

    loop {
        let next_in = inputs.keys().next().copied();
        let next_pair = pairs.keys().next().copied();
        let d = match (next_in, next_pair) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        let mut todo: Vec<Polynomial<F>> = Vec::new();
        if let Some(ps) = pairs.remove(&d) {
            for (i, j) in ps {
                pending.remove(&(i, j));
                let (iu, ju) = (i as usize, j as usize);
                if leads[iu].is_coprime(&leads[ju]) {
                    continue;
                }
                let l = leads[iu].lcm(&leads[ju]);
                let lm = divmask(&l);
                let chain = (0..leads.len() as u32).any(|k| {
                    k != i
                        && k != j
                        && masks[k as usize] & !lm == 0
                        && leads[k as usize].divides(&l)
                        && !pending.contains(&(i.min(k), i.max(k)))
                        && !pending.contains(&(j.min(k), j.max(k)))
                });
                if chain {
                    continue;
                }
                todo.push(spoly(ring, &elems[iu], &elems[ju]));
            }
        }
        if let Some(gs) = inputs.remove(&d) {
            todo.extend(gs);
        }
        for f in todo {
            let h = reduce_full(ring, &elems, &leads, &masks, &f);
            if h.is_zero() {
                continue;
            }
            let h = ring.monic(&h);
            let lm = h.leading_monomial().unwrap().clone();
            let t = elems.len() as u32;
            for (k, lk) in leads.iter().enumerate() {
                let deg = lk.lcm(&lm).degree();
                pairs.entry(deg).or_default().push((k as u32, t));
                pending.insert((k as u32, t));
            }
            masks.push(divmask(&lm));
            leads.push(lm);
            elems.push(h);
        }
        // Once some degree has no standard monomials, the basis is complete.
        if let Some((td, mut std)) = track.take() {
            if td == d {
                std.retain(|m| find_divisor(&leads, &masks, m).is_none());
            }
            let mut cd = td;
            while cd < d && !std.is_empty() && std.len() <= 1_000_000 {
                std = extend_staircase(&std, n, |m| find_divisor(&leads, &masks, m).is_none());
                cd += 1;
            }
            if cd == d && std.is_empty() {
                break;
            }
            if cd == d {
                track = Some((d, std));
            }
        }
    }

    // Tail reduction. The basis is already minimal: each new element was
    // reduced by all earlier ones of the same or lower degree.
    let mut reduced = Vec::with_capacity(elems.len());
    for g in &elems {
        let (lm, lc) = g.leading_term().unwrap().clone();
        let tail = ring.from_sorted_tail(g);
        let nf = reduce_full(ring, &elems, &leads, &masks, &tail);
        let lead = ring.from_sorted(vec![(lm, lc)]);
        reduced.push(ring.add(&lead, &nf).expect("same ring"));
    }
    GroebnerBasis::from_elems(ring.clone(), reduced)
}

/// Standard monomials of an Artinian quotient, grouped by degree and sorted
/// descending within each degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Staircase {
    by_degree: Vec<Vec<Monomial>>,
}

impl Staircase {
    pub fn by_degree(&self) -> &[Vec<Monomial>] {
        &self.by_degree
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.by_degree.iter().map(|d| d.len()).collect()
    }

    pub fn len(&self) -> usize {
        self.by_degree.iter().map(|d| d.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn top_degree(&self) -> usize {
        self.by_degree.len().saturating_sub(1)
    }
}

/// Hilbert function of `S/(gens)` in degrees `0..=max_degree` by plain
/// linear algebra: `dim S_d - rank` of all monomial multiples of generators.
pub fn hilbert_by_linear_algebra<F: Field>(ring: &PolyRing<F>, gens: &[Polynomial<F>], max_degree: u32) -> Vec<usize> {
    let n = ring.nvars();
    let mut out = Vec::new();
    for d in 0..=max_degree {
        let monos = monomials_of_degree(n, d);
        let index: HashMap<&Monomial, u32> = monos.iter().enumerate().map(|(i, m)| (m, i as u32)).collect();
        let mut ech = Echelon::new(ring.field().clone(), monos.len());
        'gens: for g in gens {
            let Some(gd) = g.degree() else { continue };
            if gd > d {
                continue;
            }
            for q in monomials_of_degree(n, d - gd) {
                if ech.is_full() {
                    break 'gens;
                }
                let v: SparseVec<F::Elem> =
                    linalg::collect_sparse(ring.field(), g.terms().iter().map(|(m, c)| (index[&m.mul(&q)], c.clone())).collect());
                ech.insert(&v);
            }
        }
        out.push(monos.len() - ech.rank());
    }
    out
}

/// Minimal generators of the ideal generated by homogeneous `gens`,
/// choosing lower degrees first and then order of appearance.
pub fn minimal_generators<F: Field>(ring: &PolyRing<F>, gens: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
    let n = ring.nvars();
    let mut sorted: Vec<&Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).collect();
    sorted.sort_by_key(|g| g.degree().unwrap());
    let mut chosen: Vec<Polynomial<F>> = Vec::new();
    let mut start = 0;
    while start < sorted.len() {
        let d = sorted[start].degree().unwrap();
        let end = start + sorted[start..].iter().take_while(|g| g.degree().unwrap() == d).count();
        let monos = monomials_of_degree(n, d);
        let index: HashMap<&Monomial, u32> = monos.iter().enumerate().map(|(i, m)| (m, i as u32)).collect();
        let to_vec = |p: &Polynomial<F>| -> SparseVec<F::Elem> {
            linalg::collect_sparse(ring.field(), p.terms().iter().map(|(m, c)| (index[m], c.clone())).collect())
        };
        let mut ech = Echelon::new(ring.field().clone(), monos.len());
        for g in &chosen {
            let gd = g.degree().unwrap();
            for q in monomials_of_degree(n, d - gd) {
                if ech.is_full() {
                    break;
                }
                ech.insert(&to_vec(&ring.mul_term(g, &q, &ring.field().one())));
            }
        }
        for g in &sorted[start..end] {
            if ech.insert(&to_vec(g)) {
                chosen.push((*g).clone());
            }
        }
        start = end;
    }
    chosen
}

/// `C : g` for an ideal `C` with Artinian quotient: `C` plus lifts of a
/// basis of the kernel of multiplication by `g` on `S/C`, minimalized.
pub fn colon_by_element<F: Field>(c: &Ideal<F>, g: &Polynomial<F>) -> Result<Ideal<F>> {
    let ring = c.ring();
    if !g.is_homogeneous() {
        return Err(Error::NotHomogeneous(ring.format(g)));
    }
    let gb = c.groebner_basis();
    let stairs = gb.staircase()?;
    let mut gens: Vec<Polynomial<F>> = c.gens().to_vec();
    if let Some(dg) = g.degree() {
        for (d, monos) in stairs.by_degree().iter().enumerate() {
            let target = d + dg as usize;
            let Some(tmonos) = stairs.by_degree().get(target) else {
                // Everything in this degree is killed by g.
                gens.extend(monos.iter().map(|m| ring.monomial(m.clone())));
                continue;
            };
            let tindex: HashMap<&Monomial, u32> = tmonos.iter().enumerate().map(|(i, m)| (m, i as u32)).collect();
            let images: Vec<SparseVec<F::Elem>> = monos
                .iter()
                .map(|m| {
                    let nf = gb.normal_form(&ring.mul_term(g, m, &ring.field().one()));
                    linalg::collect_sparse(ring.field(), nf.terms().iter().map(|(t, a)| (tindex[t], a.clone())).collect())
                })
                .collect();
            let (_, ker) = linalg::kernel(ring.field(), tmonos.len(), &images);
            for v in ker {
                gens.push(ring.from_terms(v.into_iter().map(|(k, a)| (monos[k as usize].clone(), a)).collect()));
            }
        }
    } else {
        // g = 0: the colon is the unit ideal.
        gens = vec![ring.constant(ring.field().one())];
    }
    Ideal::new(ring.clone(), minimal_generators(ring, &gens))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn ring(vars: &[&str]) -> PolyRing<PrimeField> {
        PolyRing::new(PrimeField::new(32003).unwrap(), vars.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn roos4() -> Ideal<PrimeField> {
        Ideal::parse(
            ring(&["u", "x", "y", "z"]),
            &["x^2+y*z+u^2", "x*u", "x^2+x*y", "x*z+y*u", "z*u+u^2", "y^2+z^2"],
        )
        .unwrap()
    }

    fn cm2<F: Field>(field: F) -> Ideal<F> {
        let r = PolyRing::new(field, ["x1", "x2", "x3", "x4"].map(String::from).to_vec()).unwrap();
        Ideal::parse(r, &["x1^2", "x2^2", "x3^2", "x4^2", "(x1+x2+x3+x4)^2"]).unwrap()
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let i = Ideal::parse(ring(&["x", "y"]), &["x^2", "x*y", "y^2"]).unwrap();
        let gb = i.groebner_basis();
        assert_eq!(gb.len(), 3);
        let r = i.ring();
        let mut printed: Vec<String> = gb.elements().iter().map(|g| r.format(g)).collect();
        printed.sort();
        assert_eq!(printed, ["x*y", "x^2", "y^2"]);
        assert!(gb.normal_form(&r.parse("x^2").unwrap()).is_zero());
    }

    #[test]
    fn roos4_basis_and_dimension() {
        let i = roos4();
        let gb = i.groebner_basis();
        assert!(gb.verify());
        assert!(gb.max_degree() <= 3);
        let stairs = gb.staircase().unwrap();
        assert_eq!(stairs.len(), 9);
        assert_eq!(stairs.hilbert(), vec![1, 4, 4]);
        assert_eq!(hilbert_by_linear_algebra(i.ring(), i.gens(), 3), vec![1, 4, 4, 0]);
    }

    #[test]
    fn cm_family_m2_staircase() {
        let i = cm2(PrimeField::new(32003).unwrap());
        let stairs = i.groebner_basis().staircase().unwrap();
        // [C(4,i) - C(4,i-2)] for i = 0..=2, then zero.
        let oracle: Vec<usize> = (0..=4i64)
            .map(|d| {
                let v = crate::field::binom(4, d) - crate::field::binom(4, d - 2);
                usize::try_from(crate::field::truncate_nonneg(v)).unwrap()
            })
            .take_while(|&v| v > 0)
            .collect();
        assert_eq!(stairs.hilbert(), oracle);
        assert_eq!(stairs.hilbert(), vec![1, 4, 5]);
    }

    #[test]
    fn normal_form_of_x_times_l_in_degree_two() {
        let i = cm2(Rationals);
        let r = i.ring();
        let gb = i.groebner_basis();
        let f = r.parse("x1*(x1+x2+x3+x4)").unwrap();
        let nf = gb.normal_form(&f);
        assert!(nf.terms().iter().all(|(m, _)| m.degree() == 2 && gb.is_standard(m)));
        // Oracle: f - nf lies in the degree-2 span of the generators.
        let diff = r.sub(&f, &nf).unwrap();
        let mut gens = i.gens().to_vec();
        gens.push(diff);
        assert_eq!(hilbert_by_linear_algebra(r, &gens, 2), hilbert_by_linear_algebra(r, i.gens(), 2));
    }

    #[test]
    fn not_artinian_is_detected() {
        let i = Ideal::parse(ring(&["x", "y"]), &["x^2"]).unwrap();
        assert!(matches!(i.groebner_basis().staircase(), Err(Error::NotArtinian(_))));
    }

    #[test]
    fn colon_examples() {
        let i = cm2(PrimeField::new(32003).unwrap());
        let r = i.ring().clone();
        let c = Ideal::parse(r.clone(), &["x1^2", "x2^2", "x3^2", "x4^2"]).unwrap();
        let one = r.parse("1").unwrap();
        let c1 = colon_by_element(&c, &one).unwrap();
        assert_eq!(c1.gens().len(), 4);

        let l2 = r.parse("(x1+x2+x3+x4)^2").unwrap();
        let l = colon_by_element(&c, &l2).unwrap();
        let extra: Vec<_> = l.gens().iter().filter(|g| !c.groebner_basis().contains(g)).collect();
        assert_eq!(extra.len(), 5);
        assert!(extra.iter().all(|g| g.degree() == Some(2)));
        // Oracle: rank of the multiplication map (S/C)_2 -> (S/C)_4 is 1.
        let stairs = c.groebner_basis().staircase().unwrap();
        assert_eq!(stairs.hilbert(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn colon_m3_has_no_low_degree_generators() {
        let r = ring(&["x1", "x2", "x3", "x4", "x5", "x6"]);
        let c = Ideal::parse(r.clone(), &["x1^2", "x2^2", "x3^2", "x4^2", "x5^2", "x6^2"]).unwrap();
        let l2 = r.parse("(x1+x2+x3+x4+x5+x6)^2").unwrap();
        let l = colon_by_element(&c, &l2).unwrap();
        for g in l.gens() {
            if g.degree().unwrap() < 3 {
                assert!(c.groebner_basis().contains(g));
            }
        }
        assert!(l.gens().iter().any(|g| g.degree() == Some(3)));
    }

    #[test]
    fn minimal_generators_drop_redundant() {
        let r = ring(&["x", "y"]);
        let gens: Vec<_> = ["x^2", "x^2+x*y", "x*y", "x^3", "y^3"].iter().map(|s| r.parse(s).unwrap()).collect();
        let min = minimal_generators(&r, &gens);
        let printed: Vec<String> = min.iter().map(|g| r.format(g)).collect();
        assert_eq!(printed, ["x^2", "x^2+x*y", "y^3"]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn normal_form_is_idempotent(coeffs in proptest::collection::vec(-5i64..5, 10)) {
            let i = roos4();
            let r = i.ring();
            let monos = monomials_of_degree(4, 2);
            let f = r.from_terms(monos.into_iter().zip(&coeffs).map(|(m, c)| (m, r.field().from_i64(*c))).collect());
            let gb = i.groebner_basis();
            let nf = gb.normal_form(&f);
            prop_assert_eq!(gb.normal_form(&nf), nf.clone());
            prop_assert!(gb.contains(&r.sub(&f, &nf).unwrap()));
        }
    }
}
