//! Finite-dimensional graded algebras `R = S/I` and finite graded modules
//! over them: structure constants, canonical modules, socles, type and
//! level, and minimal presentations over the polynomial ring.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::grading::{homogeneity_constraints, Grading, Multidegree};
use crate::groebner::{minimal_generators, GroebnerBasis};
use crate::linalg::{self, Echelon, SparseVec};
use crate::poly::{monomials_of_degree, Ideal, Monomial, PolyRing, Polynomial};

/// `S/I` for an ideal with finite-dimensional quotient, in the basis of
/// standard monomials.
#[derive(Debug)]
pub struct ArtinianAlgebra<F: Field> {
    ring: PolyRing<F>,
    gb: GroebnerBasis<F>,
    basis: Vec<Monomial>,
    offsets: Vec<usize>,
    index: HashMap<Monomial, u32>,
    actions: Vec<Vec<SparseVec<F::Elem>>>,
    constraints: Vec<Vec<i64>>,
    grading: Grading,
    mdegs: Vec<Multidegree>,
    mul: OnceLock<Vec<Vec<SparseVec<F::Elem>>>>,
}

/// Builds the quotient algebra from a reduced Groebner basis.
pub fn build_quotient<F: Field>(gb: &GroebnerBasis<F>) -> Result<ArtinianAlgebra<F>> {
    let ring = gb.ring().clone();
    let n = ring.nvars();
    let stairs = gb.staircase()?;
    let mut basis = Vec::with_capacity(stairs.len());
    let mut offsets = vec![0];
    for d in stairs.by_degree() {
        basis.extend(d.iter().cloned());
        offsets.push(basis.len());
    }
    let index: HashMap<Monomial, u32> = basis.iter().enumerate().map(|(i, m)| (m.clone(), i as u32)).collect();
    let actions: Vec<Vec<SparseVec<F::Elem>>> = (0..n)
        .into_par_iter()
        .map(|v| {
            basis
                .iter()
                .map(|b| {
                    let t = b.mul_var(v);
                    if let Some(&k) = index.get(&t) {
                        return vec![(k, ring.field().one())];
                    }
                    let nf = gb.normal_form(&ring.monomial(t));
                    linalg::collect_sparse(ring.field(), nf.terms().iter().map(|(m, c)| (index[m], c.clone())).collect())
                })
                .collect()
        })
        .collect();
    let constraints = homogeneity_constraints(gb.elements(), n);
    let grading = Grading::from_constraints(&constraints, &vec![1; n]);
    let mdegs = basis.iter().map(|b| grading.of_monomial(b)).collect();
    Ok(ArtinianAlgebra {
        ring,
        gb: gb.clone(),
        basis,
        offsets,
        index,
        actions,
        constraints,
        grading,
        mdegs,
        mul: OnceLock::new(),
    })
}

impl<F: Field> ArtinianAlgebra<F> {
    pub fn from_ideal(ideal: &Ideal<F>) -> Result<Self> {
        build_quotient(ideal.groebner_basis())
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis<F> {
        &self.gb
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn top_degree(&self) -> usize {
        self.offsets.len() - 2
    }

    pub fn hilbert(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Basis indices of degree `d`.
    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        if d + 1 >= self.offsets.len() {
            return 0..0;
        }
        self.offsets[d]..self.offsets[d + 1]
    }

    pub fn degree_of(&self, b: usize) -> usize {
        self.basis[b].degree() as usize
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).map(|&k| k as usize)
    }

    /// `actions()[v][b]` is `x_v * b` in the basis.
    pub fn actions(&self) -> &[Vec<SparseVec<F::Elem>>] {
        &self.actions
    }

    /// Homogeneity constraints on variable weights satisfied by the ideal.
    pub fn grading_constraints(&self) -> &[Vec<i64>] {
        &self.constraints
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn multidegree(&self, b: usize) -> &Multidegree {
        &self.mdegs[b]
    }

    /// Multiplies an element by a monomial through the variable actions.
    pub fn act_monomial(&self, m: &Monomial, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let mut cur = v.to_vec();
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                if cur.is_empty() {
                    return cur;
                }
                cur = linalg::apply(self.field(), &self.actions[i], &cur);
            }
        }
        cur
    }

    /// Structure constants: `mul_table()[a][b]` is `basis[a] * basis[b]`.
    pub fn mul_table(&self) -> &[Vec<SparseVec<F::Elem>>] {
        self.mul.get_or_init(|| {
            let one = self.field().one();
            (0..self.dim())
                .into_par_iter()
                .map(|a| (0..self.dim()).map(|b| self.act_monomial(&self.basis[a], &[(b as u32, one.clone())])).collect())
                .collect()
        })
    }

    pub fn multiply(&self, u: &[(u32, F::Elem)], v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let table = self.mul_table();
        let k = self.field();
        let mut acc = Vec::new();
        for (a, ca) in u {
            for (b, cb) in v {
                let c = k.mul(ca, cb);
                for (t, x) in &table[*a as usize][*b as usize] {
                    acc.push((*t, k.mul(&c, x)));
                }
            }
        }
        linalg::collect_sparse(k, acc)
    }

    /// Image of a polynomial in the basis (via its normal form).
    pub fn element(&self, f: &Polynomial<F>) -> SparseVec<F::Elem> {
        let nf = self.gb.normal_form(f);
        linalg::collect_sparse(self.field(), nf.terms().iter().map(|(m, c)| (self.index[m], c.clone())).collect())
    }

    pub fn to_polynomial(&self, v: &[(u32, F::Elem)]) -> Polynomial<F> {
        self.ring.from_terms(v.iter().map(|(k, c)| (self.basis[*k as usize].clone(), c.clone())).collect())
    }

    /// Socle basis: elements killed by every variable, degree by degree.
    pub fn socle(&self) -> Vec<SparseVec<F::Elem>> {
        FiniteGradedModule::from_algebra(self).socle()
    }

    /// `(type, level)`: the number of minimal generators of the canonical
    /// module and whether they all sit in one degree.
    pub fn type_and_level(&self) -> (usize, bool) {
        let omega = canonical_module(self);
        let gens = omega.minimal_generators();
        let first = gens.first().map(|&g| omega.degree(g));
        let level = gens.iter().all(|&g| Some(omega.degree(g)) == first);
        (gens.len(), level)
    }

    /// Level, with a canonical module linearly presented over `R`.
    ///
    /// Type 1 is answered directly (the canonical module is free over
    /// `R`). Otherwise this tests the sufficient condition of a linear
    /// presentation over the polynomial ring, so `false` means not
    /// certified.
    pub fn is_superlevel(&self) -> Result<bool> {
        let (ty, level) = self.type_and_level();
        if !level {
            return Ok(false);
        }
        if ty == 1 {
            return Ok(true);
        }
        Ok(minimal_presentation(&canonical_module(self), &self.ring)?.is_linear())
    }

    /// Minimal generators of `I`, read off degree by degree.
    pub fn minimal_ideal_generators(&self) -> Vec<Polynomial<F>> {
        minimal_generators(&self.ring, self.gb.elements())
    }
}

/// A finite-dimensional graded module over an Artinian algebra, given by a
/// homogeneous basis and the action of each variable.
#[derive(Clone, Debug)]
pub struct FiniteGradedModule<F: Field> {
    field: F,
    degrees: Vec<i32>,
    labels: Vec<String>,
    actions: Vec<Vec<SparseVec<F::Elem>>>,
}

impl<F: Field> FiniteGradedModule<F> {
    /// `actions[v][b]` is the image of basis element `b` under variable `v`.
    pub fn new(field: F, degrees: Vec<i32>, labels: Vec<String>, actions: Vec<Vec<SparseVec<F::Elem>>>) -> Result<Self> {
        if labels.len() != degrees.len() {
            return Err(Error::BadParameter("one label per basis element".into()));
        }
        for (v, act) in actions.iter().enumerate() {
            if act.len() != degrees.len() {
                return Err(Error::BadParameter(format!("action of variable {v} has wrong size")));
            }
            for (b, img) in act.iter().enumerate() {
                for (t, _) in img {
                    if degrees.get(*t as usize) != Some(&(degrees[b] + 1)) {
                        return Err(Error::BadParameter(format!(
                            "variable {v} does not map basis element {b} one degree up"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGradedModule { field, degrees, labels, actions })
    }

    /// The algebra as a module over itself.
    pub fn from_algebra(alg: &ArtinianAlgebra<F>) -> Self {
        FiniteGradedModule {
            field: alg.field().clone(),
            degrees: alg.basis().iter().map(|b| b.degree() as i32).collect(),
            labels: alg.basis().iter().map(|b| alg.ring().format_monomial(b)).collect(),
            actions: alg.actions().to_vec(),
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn nvars(&self) -> usize {
        self.actions.len()
    }

    pub fn degree(&self, b: usize) -> i32 {
        self.degrees[b]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn actions(&self) -> &[Vec<SparseVec<F::Elem>>] {
        &self.actions
    }

    /// Nonzero graded dimensions, by degree.
    pub fn hilbert(&self) -> BTreeMap<i32, usize> {
        let mut h = BTreeMap::new();
        for &d in &self.degrees {
            *h.entry(d).or_insert(0) += 1;
        }
        h
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().min()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.degrees.iter().copied().max()
    }

    fn indices_of_degree(&self, d: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.degrees[b] == d).collect()
    }

    /// `M(k)`: the same module with every degree lowered by `k`.
    pub fn shift(&self, k: i32) -> Self {
        let mut out = self.clone();
        for d in out.degrees.iter_mut() {
            *d -= k;
        }
        out
    }

    /// Graded vector-space dual with the transposed action, so `(x f)(m) = f(x m)`.
    pub fn dual(&self) -> Self {
        let dim = self.dim();
        let mut actions = vec![vec![Vec::new(); dim]; self.nvars()];
        for (v, act) in self.actions.iter().enumerate() {
            for (b, img) in act.iter().enumerate() {
                for (t, c) in img {
                    actions[v][*t as usize].push((b as u32, c.clone()));
                }
            }
        }
        for act in actions.iter_mut() {
            for img in act.iter_mut() {
                img.sort_by_key(|e| e.0);
            }
        }
        FiniteGradedModule {
            field: self.field.clone(),
            degrees: self.degrees.iter().map(|d| -d).collect(),
            labels: self.labels.iter().map(|l| format!("{l}*")).collect(),
            actions,
        }
    }

    pub fn act_var(&self, v: usize, x: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        linalg::apply(&self.field, &self.actions[v], x)
    }

    pub fn act_monomial(&self, m: &Monomial, x: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let mut cur = x.to_vec();
        for (i, &e) in m.exponents().iter().enumerate() {
            for _ in 0..e {
                if cur.is_empty() {
                    return cur;
                }
                cur = self.act_var(i, &cur);
            }
        }
        cur
    }

    pub fn act_polynomial(&self, f: &Polynomial<F>, x: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        let mut acc = Vec::new();
        for (m, c) in f.terms() {
            for (t, a) in self.act_monomial(m, x) {
                acc.push((t, self.field.mul(c, &a)));
            }
        }
        linalg::collect_sparse(&self.field, acc)
    }

    /// Checks that the variable actions commute and that every polynomial
    /// in `relations` acts as zero.
    pub fn check_module(&self, relations: &[Polynomial<F>]) -> Result<()> {
        let one = self.field.one();
        for b in 0..self.dim() {
            let e = vec![(b as u32, one.clone())];
            for i in 0..self.nvars() {
                let xi = self.act_var(i, &e);
                for j in i + 1..self.nvars() {
                    if self.act_var(j, &xi) != self.act_var(i, &self.act_var(j, &e)) {
                        return Err(Error::Verification(format!("variables {i} and {j} do not commute on {}", self.labels[b])));
                    }
                }
            }
            for f in relations {
                if !self.act_polynomial(f, &e).is_empty() {
                    return Err(Error::Verification(format!("a relation does not annihilate {}", self.labels[b])));
                }
            }
        }
        Ok(())
    }

    /// Minimal generators, as basis indices: in each degree, the basis
    /// elements not in the span of lower degrees times variables, lowest
    /// degree first and in basis order.
    pub fn minimal_generators(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let Some(lo) = self.min_degree() else { return out };
        let hi = self.max_degree().unwrap();
        for d in lo..=hi {
            let here = self.indices_of_degree(d);
            if here.is_empty() {
                continue;
            }
            let local: HashMap<u32, u32> = here.iter().enumerate().map(|(i, &b)| (b as u32, i as u32)).collect();
            let mut ech = Echelon::new(self.field.clone(), here.len());
            for b in self.indices_of_degree(d - 1) {
                for act in &self.actions {
                    let img: SparseVec<F::Elem> = act[b].iter().map(|(t, c)| (local[t], c.clone())).collect();
                    ech.insert(&img);
                }
            }
            for (i, &b) in here.iter().enumerate() {
                if ech.insert(&[(i as u32, self.field.one())]) {
                    out.push(b);
                }
            }
        }
        out
    }

    /// Basis of `{m : x_i m = 0 for all i}`, homogeneous, lowest degree first.
    pub fn socle(&self) -> Vec<SparseVec<F::Elem>> {
        let mut out = Vec::new();
        let Some(lo) = self.min_degree() else { return out };
        let hi = self.max_degree().unwrap();
        let n = self.nvars();
        for d in lo..=hi {
            let here = self.indices_of_degree(d);
            let up = self.indices_of_degree(d + 1);
            let local: HashMap<u32, u32> = up.iter().enumerate().map(|(i, &b)| (b as u32, i as u32)).collect();
            let images: Vec<SparseVec<F::Elem>> = here
                .iter()
                .map(|&b| {
                    let mut v = Vec::new();
                    for (i, act) in self.actions.iter().enumerate() {
                        for (t, c) in &act[b] {
                            v.push(((i * up.len()) as u32 + local[t], c.clone()));
                        }
                    }
                    linalg::collect_sparse(&self.field, v)
                })
                .collect();
            let (_, ker) = linalg::kernel(&self.field, n * up.len(), &images);
            for k in ker {
                out.push(k.into_iter().map(|(i, c)| (here[i as usize] as u32, c)).collect());
            }
        }
        out
    }

    pub fn socle_degrees(&self) -> Vec<i32> {
        self.socle().iter().map(|v| self.degrees[v[0].0 as usize]).collect()
    }

    /// The same vector space seen over the subring generated by the listed
    /// variables (in that order).
    pub fn restrict(&self, vars: &[usize]) -> Self {
        FiniteGradedModule {
            field: self.field.clone(),
            degrees: self.degrees.clone(),
            labels: self.labels.clone(),
            actions: vars.iter().map(|&v| self.actions[v].clone()).collect(),
        }
    }

    /// The submodule generated by homogeneous elements, in a new basis
    /// found degree by degree (generators first, then their multiples in
    /// variable order). Returns the module and its basis vectors.
    pub fn submodule(&self, generators: &[SparseVec<F::Elem>]) -> Result<(Self, Vec<SparseVec<F::Elem>>)> {
        let degree_of = |v: &SparseVec<F::Elem>| -> Result<i32> {
            let d = self.degrees[v[0].0 as usize];
            if v.iter().any(|(k, _)| self.degrees[*k as usize] != d) {
                return Err(Error::BadParameter("submodule generators must be homogeneous".into()));
            }
            Ok(d)
        };
        let mut pending: BTreeMap<i32, Vec<SparseVec<F::Elem>>> = BTreeMap::new();
        for g in generators.iter().filter(|g| !g.is_empty()) {
            pending.entry(degree_of(g)?).or_default().push(g.clone());
        }
        let mut basis: Vec<SparseVec<F::Elem>> = Vec::new();
        let mut ech = Echelon::new(self.field.clone(), self.dim());
        while let Some((d, cands)) = pending.pop_first() {
            let mut fresh = Vec::new();
            for v in cands {
                if ech.insert(&v) {
                    fresh.push(v);
                }
            }
            for v in &fresh {
                for x in 0..self.nvars() {
                    let w = self.act_var(x, v);
                    if !w.is_empty() {
                        pending.entry(d + 1).or_default().push(w);
                    }
                }
            }
            basis.extend(fresh);
        }
        // Coordinates in the new basis: reduce against the basis rows with
        // tags recording the combination.
        let k = basis.len();
        let mut coords = Echelon::with_tags(self.field.clone(), self.dim(), k);
        for (i, b) in basis.iter().enumerate() {
            let mut aug = b.clone();
            aug.push(((self.dim() + i) as u32, self.field.one()));
            coords.insert(&aug);
        }
        let express = |coords: &mut Echelon<F>, w: &SparseVec<F::Elem>| -> SparseVec<F::Elem> {
            let rem = coords.reduce(w);
            let shift = self.dim() as u32;
            rem.into_iter().map(|(i, c)| (i - shift, self.field.neg(&c))).collect()
        };
        let mut actions = vec![Vec::with_capacity(k); self.nvars()];
        for (x, act) in actions.iter_mut().enumerate() {
            for b in &basis {
                let img = self.act_var(x, b);
                act.push(express(&mut coords, &img));
            }
        }
        let degrees = basis.iter().map(|b| self.degrees[b[0].0 as usize]).collect();
        let labels = (0..k).map(|i| format!("s{i}")).collect();
        Ok((FiniteGradedModule::new(self.field.clone(), degrees, labels, actions)?, basis))
    }
}

/// `omega_R` as the graded dual of `R`: components in degrees `-top..=0`.
pub fn canonical_module<F: Field>(alg: &ArtinianAlgebra<F>) -> FiniteGradedModule<F> {
    let mut m = FiniteGradedModule::from_algebra(alg).dual();
    m.labels = alg.basis().iter().map(|b| format!("({})*", alg.ring().format_monomial(b))).collect();
    m
}

/// A graded presentation `F_1 -> F_0 -> M -> 0` over the polynomial ring.
#[derive(Clone, Debug)]
pub struct Presentation<F: Field> {
    /// Degrees of the generators of `F_0`.
    pub generator_degrees: Vec<i32>,
    /// Basis indices in the module of the chosen generators.
    pub generators: Vec<usize>,
    /// Each relation is a column: one homogeneous polynomial per generator.
    pub relations: Vec<Vec<Polynomial<F>>>,
    /// Internal degree of each relation.
    pub relation_degrees: Vec<i32>,
    /// Highest degree in which relations were searched.
    pub search_bound: i32,
}

impl<F: Field> Presentation<F> {
    /// Every relation sits exactly one degree above every generator.
    pub fn is_linear(&self) -> bool {
        let Some(&g) = self.generator_degrees.first() else { return true };
        self.generator_degrees.iter().all(|&d| d == g) && self.relation_degrees.iter().all(|&d| d == g + 1)
    }
}

/// Coordinates of the degree-`j` part of a free module `(+)_k S(-d_k)`.
struct FreeDegree {
    cols: Vec<(usize, Monomial)>,
    index: HashMap<(usize, Monomial), u32>,
}

impl FreeDegree {
    fn new(nvars: usize, gen_degrees: &[i32], j: i32) -> Self {
        let mut cols = Vec::new();
        for (k, &d) in gen_degrees.iter().enumerate() {
            if j >= d {
                for m in monomials_of_degree(nvars, (j - d) as u32) {
                    cols.push((k, m));
                }
            }
        }
        let index = cols.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect();
        FreeDegree { cols, index }
    }
}

/// Minimal generators and minimal first syzygies of `module` over the
/// polynomial ring `ring`, degree by degree. The search runs through two
/// degrees past the top of the module (no minimal relation can occur after
/// the top plus one) and the result is verified by comparing the Hilbert
/// function of the presented cokernel with that of the module through two
/// further degrees; on a mismatch the bound is raised and the search redone.
pub fn minimal_presentation<F: Field>(module: &FiniteGradedModule<F>, ring: &PolyRing<F>) -> Result<Presentation<F>> {
    let field = module.field().clone();
    let n = ring.nvars();
    let gens = module.minimal_generators();
    let gen_degrees: Vec<i32> = gens.iter().map(|&g| module.degree(g)).collect();
    let Some(&lo) = gen_degrees.iter().min() else {
        return Ok(Presentation { generator_degrees: vec![], generators: vec![], relations: vec![], relation_degrees: vec![], search_bound: 0 });
    };
    let top = module.max_degree().unwrap();
    let hf = module.hilbert();
    let mut bound = top + 2;
    for _attempt in 0..=3 {
        let frees: Vec<FreeDegree> = (lo..=bound + 2).map(|j| FreeDegree::new(n, &gen_degrees, j)).collect();
        let free_at = |j: i32| &frees[(j - lo) as usize];
        let mut relations: Vec<(i32, SparseVec<F::Elem>)> = Vec::new();
        let mut prev_kernel: Vec<SparseVec<F::Elem>> = Vec::new();
        let mut prev_free: Option<&FreeDegree> = None;
        for j in lo..=bound {
            let free = free_at(j);
            let target: Vec<usize> = (0..module.dim()).filter(|&b| module.degree(b) == j).collect();
            let tindex: HashMap<u32, u32> = target.iter().enumerate().map(|(i, &b)| (b as u32, i as u32)).collect();
            let images: Vec<SparseVec<F::Elem>> = free
                .cols
                .iter()
                .map(|(k, m)| {
                    let v = module.act_monomial(m, &[(gens[*k] as u32, field.one())]);
                    v.into_iter().map(|(t, c)| (tindex[&t], c)).collect()
                })
                .collect();
            let (_, kernel) = linalg::kernel(&field, target.len(), &images);
            // Relations generated from lower degrees.
            let mut ech = Echelon::new(field.clone(), free.cols.len());
            if let Some(pf) = prev_free {
                'outer: for v in &prev_kernel {
                    for x in 0..n {
                        if ech.is_full() {
                            break 'outer;
                        }
                        let shifted: SparseVec<F::Elem> = v
                            .iter()
                            .map(|(c, a)| {
                                let (k, m) = &pf.cols[*c as usize];
                                (free.index[&(*k, m.mul_var(x))], a.clone())
                            })
                            .collect();
                        ech.insert(&linalg::collect_sparse(&field, shifted));
                    }
                }
            }
            for v in &kernel {
                if ech.insert(v) {
                    relations.push((j, v.clone()));
                }
            }
            prev_kernel = kernel;
            prev_free = Some(free);
        }

        // Verify: the cokernel of the relations has the module's Hilbert
        // function through bound + 2.
        let mut ok = true;
        for j in lo..=bound + 2 {
            let free = free_at(j);
            let mut ech = Echelon::new(field.clone(), free.cols.len());
            'rels: for (rd, rel) in &relations {
                if *rd > j {
                    continue;
                }
                let rel_free = free_at(*rd);
                for q in monomials_of_degree(n, (j - rd) as u32) {
                    if ech.is_full() {
                        break 'rels;
                    }
                    let v: SparseVec<F::Elem> = rel
                        .iter()
                        .map(|(c, a)| {
                            let (k, m) = &rel_free.cols[*c as usize];
                            (free.index[&(*k, m.mul(&q))], a.clone())
                        })
                        .collect();
                    ech.insert(&linalg::collect_sparse(&field, v));
                }
            }
            let coker = free.cols.len() - ech.rank();
            if coker != hf.get(&j).copied().unwrap_or(0) {
                ok = false;
                break;
            }
        }
        if ok {
            let relation_degrees = relations.iter().map(|r| r.0).collect();
            let relations = relations
                .iter()
                .map(|(rd, rel)| {
                    let rel_free = free_at(*rd);
                    let mut cols: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); gens.len()];
                    for (c, a) in rel {
                        let (k, m) = &rel_free.cols[*c as usize];
                        cols[*k].push((m.clone(), a.clone()));
                    }
                    cols.into_iter().map(|t| ring.from_terms(t)).collect()
                })
                .collect();
            return Ok(Presentation { generator_degrees: gen_degrees, generators: gens, relations, relation_degrees, search_bound: bound });
        }
        bound += 2;
    }
    Err(Error::Verification("presented cokernel does not match the module's Hilbert function".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn alg(vars: &[&str], gens: &[&str]) -> ArtinianAlgebra<PrimeField> {
        let r = PolyRing::new(PrimeField::new(32003).unwrap(), vars.iter().map(|s| s.to_string()).collect()).unwrap();
        ArtinianAlgebra::from_ideal(&Ideal::parse(r, gens).unwrap()).unwrap()
    }

    fn roos4() -> ArtinianAlgebra<PrimeField> {
        alg(&["u", "x", "y", "z"], &["x^2+y*z+u^2", "x*u", "x^2+x*y", "x*z+y*u", "z*u+u^2", "y^2+z^2"])
    }

    #[test]
    fn quotient_examples() {
        let a = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert_eq!(a.hilbert(), vec![1, 2]);
        assert_eq!(a.dim(), 3);
        assert_eq!(roos4().hilbert(), vec![1, 4, 4]);
    }

    #[test]
    fn canonical_module_examples() {
        let a = alg(&["x"], &["x^2"]);
        let w = canonical_module(&a);
        assert_eq!(w.hilbert(), BTreeMap::from([(-1, 1), (0, 1)]));
        assert_eq!(a.type_and_level(), (1, true));

        let r = roos4();
        assert_eq!(r.type_and_level(), (4, true));
        let w = canonical_module(&r);
        for (i, h) in r.hilbert().iter().enumerate() {
            assert_eq!(w.hilbert()[&-(i as i32)], *h);
        }
    }

    #[test]
    fn socle_examples() {
        let a = alg(&["x"], &["x^3"]);
        let s = a.socle();
        assert_eq!(s.len(), 1);
        assert_eq!(a.ring().format(&a.to_polynomial(&s[0])), "x^2");

        let r = roos4();
        let m = FiniteGradedModule::from_algebra(&r);
        assert_eq!(m.socle_degrees(), vec![2, 2, 2, 2]);

        let c = alg(&["a", "b", "c", "d"], &["a^2", "b^2", "c^2", "d^2"]);
        let s = c.socle();
        assert_eq!(s.len(), 1);
        assert_eq!(c.ring().format(&c.to_polynomial(&s[0])), "a*b*c*d");
    }

    #[test]
    fn type_and_level_examples() {
        assert_eq!(alg(&["x", "y"], &["x^2", "y^3"]).type_and_level(), (1, true));
        let r = alg(&["x1", "x2", "x3", "x4", "x5", "x6"], &[
            "x1^2", "x2^2", "x3^2", "x4^2", "x5^2", "x6^2", "(x1+x2+x3+x4+x5+x6)^2",
        ]);
        assert_eq!(r.hilbert(), vec![1, 6, 14, 14]);
        assert_eq!(r.type_and_level(), (14, true));
    }

    #[test]
    fn superlevel_examples() {
        assert!(roos4().is_superlevel().unwrap());
        let not_level = alg(&["x", "y"], &["x^2", "x*y", "y^4"]);
        let m = FiniteGradedModule::from_algebra(&not_level);
        // Socle spanned by x and y^3.
        assert_eq!(m.socle_degrees(), vec![1, 3]);
        assert!(!not_level.is_superlevel().unwrap());
        let cm2 = alg(&["a", "b", "c", "d"], &["a^2", "b^2", "c^2", "d^2", "(a+b+c+d)^2"]);
        assert!(cm2.is_superlevel().unwrap());
    }

    #[test]
    fn cyclic_presentation_recovers_ideal() {
        let r = roos4();
        let p = minimal_presentation(&FiniteGradedModule::from_algebra(&r), r.ring()).unwrap();
        assert_eq!(p.generator_degrees, vec![0]);
        assert_eq!(p.relations.len(), 6);
        assert!(p.relation_degrees.iter().all(|&d| d == 2));
    }

    #[test]
    fn omega_presentation_is_linear() {
        let r = roos4();
        let p = minimal_presentation(&canonical_module(&r), r.ring()).unwrap();
        assert_eq!(p.generator_degrees, vec![-2; 4]);
        assert!(p.is_linear());
        // Minimal relations carry no unit entries.
        assert!(p.relations.iter().flatten().all(|f| f.degree().is_none_or(|d| d >= 1)));
    }

    #[test]
    fn modules_commute_and_are_annihilated() {
        let r = roos4();
        let gens = r.groebner_basis().elements().to_vec();
        FiniteGradedModule::from_algebra(&r).check_module(&gens).unwrap();
        canonical_module(&r).check_module(&gens).unwrap();
        canonical_module(&r).shift(3).check_module(&gens).unwrap();
    }

    #[test]
    fn multiplication_table_is_associative_and_commutative() {
        for a in [roos4(), alg(&["x", "y", "z"], &["x^2", "y^2", "z^2", "x*y+y*z"])] {
            let t = a.mul_table();
            let k = a.field();
            let one = k.one();
            for i in 0..a.dim() {
                for j in 0..a.dim() {
                    assert_eq!(t[i][j], t[j][i]);
                    for l in 0..a.dim() {
                        let left = a.multiply(&t[i][j], &[(l as u32, one)]);
                        let right = a.multiply(&[(i as u32, one)], &t[j][l]);
                        assert_eq!(left, right);
                    }
                }
            }
        }
    }

    #[test]
    fn rationals_and_prime_field_agree() {
        let rq = PolyRing::new(Rationals, ["u", "x", "y", "z"].map(String::from).to_vec()).unwrap();
        let iq = Ideal::parse(rq, &["x^2+y*z+u^2", "x*u", "x^2+x*y", "x*z+y*u", "z*u+u^2", "y^2+z^2"]).unwrap();
        let aq = ArtinianAlgebra::from_ideal(&iq).unwrap();
        assert_eq!(aq.hilbert(), roos4().hilbert());
        assert_eq!(aq.type_and_level(), roos4().type_and_level());
    }
}
