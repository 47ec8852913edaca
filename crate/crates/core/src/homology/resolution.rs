//! Minimal graded free resolutions over an Artinian algebra.
//!
//! Each free module `F_s` is stored by its generators; `F_s (x) R` is
//! finite-dimensional with coordinates `(generator, basis element)`. For
//! each multidegree block, the kernel `Z_s` of the boundary is computed, and
//! new generators of `F_{s+1}` are the kernel vectors outside
//! `m Z_s = sum_v x_v Z_s`, lowest degree first.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{ArtinianAlgebra, FiniteGradedModule};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::grading::{add_degrees, sub_degrees, Grading, Multidegree};
use crate::linalg::{self, Echelon, SparseVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolveOptions {
    /// Number of steps: generators of `F_0..=F_steps` are computed.
    pub steps: usize,
    /// Internal degrees above the cap are not searched.
    pub degree_cap: Option<i32>,
}

impl ResolveOptions {
    pub fn new(steps: usize) -> Self {
        ResolveOptions { steps, degree_cap: None }
    }

    pub fn with_cap(steps: usize, cap: i32) -> Self {
        ResolveOptions { steps, degree_cap: Some(cap) }
    }
}

/// Generator degrees of each free module of a minimal resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorProfile {
    /// `steps[i]` lists the degrees of the generators of `F_i`, sorted.
    pub steps: Vec<Vec<i32>>,
    pub degree_cap: Option<i32>,
    /// Some kernel component above the cap was left unexamined.
    pub truncated: bool,
}

impl TorProfile {
    /// `dim Tor_i(M, k)_j`.
    pub fn betti(&self, i: usize, j: i32) -> usize {
        self.steps.get(i).map_or(0, |s| s.iter().filter(|&&d| d == j).count())
    }

    pub fn total(&self, i: usize) -> usize {
        self.steps.get(i).map_or(0, |s| s.len())
    }

    /// Graded dimensions of `Tor_i` as a map degree -> dimension.
    pub fn graded(&self, i: usize) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for &d in self.steps.get(i).map(|s| s.as_slice()).unwrap_or(&[]) {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    /// Largest `s` such that every generator of `F_1..=F_s` sits in degree
    /// `d_0 + step`, where `d_0` is the lowest degree of `F_0`.
    pub fn linear_steps(&self) -> usize {
        let base = self.steps.first().and_then(|s| s.first()).copied().unwrap_or(0);
        let mut s = 0;
        for (i, degs) in self.steps.iter().enumerate().skip(1) {
            if degs.iter().all(|&d| d == base + i as i32) {
                s = i;
            } else {
                break;
            }
        }
        s
    }

    /// Lowest step containing a generator off the linear strand.
    pub fn first_nonlinear_step(&self) -> Option<usize> {
        let base = self.steps.first().and_then(|s| s.first()).copied().unwrap_or(0);
        self.steps
            .iter()
            .enumerate()
            .skip(1)
            .find(|(i, degs)| degs.iter().any(|&d| d != base + *i as i32))
            .map(|(i, _)| i)
    }
}

struct Gen<E> {
    deg: i32,
    mdeg: Multidegree,
    image: SparseVec<E>,
}

enum Target<'a, F: Field> {
    Module(&'a FiniteGradedModule<F>),
    Free(&'a [Gen<F::Elem>]),
}

/// The residue field as a module.
pub fn residue_field<F: Field>(alg: &ArtinianAlgebra<F>) -> FiniteGradedModule<F> {
    FiniteGradedModule::new(alg.field().clone(), vec![0], vec!["1".into()], vec![vec![Vec::new()]; alg.nvars()])
        .expect("valid module")
}

/// Minimal resolution of `k` over `R`.
pub fn resolve_k_over_r<F: Field>(alg: &ArtinianAlgebra<F>, opts: &ResolveOptions) -> Result<TorProfile> {
    resolve(alg, &residue_field(alg), opts)
}

/// Graded dimensions of `Tor_i^R(M, k)`.
pub fn tor_of_module<F: Field>(
    alg: &ArtinianAlgebra<F>,
    module: &FiniteGradedModule<F>,
    i: usize,
    degree_cap: Option<i32>,
) -> Result<BTreeMap<i32, usize>> {
    let profile = resolve(alg, module, &ResolveOptions { steps: i, degree_cap })?;
    Ok(profile.graded(i))
}

/// Grading of variables and module basis elements compatible with the
/// relations of the algebra and the module's action.
fn joint_grading<F: Field>(alg: &ArtinianAlgebra<F>, module: &FiniteGradedModule<F>) -> Grading {
    let n = alg.nvars();
    let m = module.dim();
    let mut constraints: Vec<Vec<i64>> = alg
        .grading_constraints()
        .iter()
        .map(|c| {
            let mut row = c.clone();
            row.resize(n + m, 0);
            row
        })
        .collect();
    for (v, act) in module.actions().iter().enumerate() {
        for (b, img) in act.iter().enumerate() {
            for (t, _) in img {
                let mut row = vec![0; n + m];
                row[v] = -1;
                row[n + b] -= 1;
                row[n + *t as usize] += 1;
                constraints.push(row);
            }
        }
    }
    let mut total = vec![1i64; n];
    total.extend(module.degrees().iter().map(|&d| d as i64));
    Grading::from_constraints(&constraints, &total)
}

/// Minimal free resolution of `module` over `alg`, through `opts.steps`.
pub fn resolve<F: Field>(alg: &ArtinianAlgebra<F>, module: &FiniteGradedModule<F>, opts: &ResolveOptions) -> Result<TorProfile> {
    let field = alg.field();
    let n = alg.nvars();
    let dim_r = alg.dim();
    if module.nvars() != n {
        return Err(Error::RingMismatch { left: module.nvars(), right: n });
    }
    let grading = joint_grading(alg, module);
    let var_w: Vec<Multidegree> = grading.weights()[..n].to_vec();
    let mod_w: Vec<Multidegree> = grading.weights()[n..].to_vec();
    let alg_w: Vec<Multidegree> = alg.basis().iter().map(|b| grading.of_monomial(b)).collect();
    let table = if opts.steps > 0 { Some(alg.mul_table()) } else { None };
    let one = field.one();

    let mut gens: Vec<Gen<F::Elem>> = module
        .minimal_generators()
        .into_iter()
        .map(|g| Gen { deg: module.degree(g), mdeg: mod_w[g].clone(), image: vec![(g as u32, one.clone())] })
        .collect();
    let mut profile = TorProfile { steps: vec![sorted_degrees(&gens)], degree_cap: opts.degree_cap, truncated: false };
    let mut prev_gens: Vec<Gen<F::Elem>> = Vec::new();

    for s in 0..opts.steps {
        let target = if s == 0 { Target::Module(module) } else { Target::Free(&prev_gens) };
        let last = s + 1 == opts.steps;

        // Target coordinates: local index within their multidegree block.
        let target_mdegs: Vec<Multidegree> = match &target {
            Target::Module(_) => mod_w.clone(),
            Target::Free(pg) => pg.iter().flat_map(|g| alg_w.iter().map(move |w| add_degrees(&g.mdeg, w))).collect(),
        };
        let mut tsize: HashMap<&Multidegree, u32> = HashMap::new();
        let tlocal: Vec<u32> = target_mdegs
            .iter()
            .map(|m| {
                let c = tsize.entry(m).or_insert(0);
                *c += 1;
                *c - 1
            })
            .collect();

        // Domain blocks of F_s (x) R.
        let mut blocks: BTreeMap<Multidegree, Vec<u32>> = BTreeMap::new();
        for (k, g) in gens.iter().enumerate() {
            for (b, w) in alg_w.iter().enumerate() {
                blocks.entry(add_degrees(&g.mdeg, w)).or_default().push((k * dim_r + b) as u32);
            }
        }
        let mut dlocal = vec![0u32; gens.len() * dim_r];
        for dom in blocks.values() {
            for (i, &g) in dom.iter().enumerate() {
                dlocal[g as usize] = i as u32;
            }
        }
        let mut by_degree: BTreeMap<i32, Vec<(&Multidegree, &Vec<u32>)>> = BTreeMap::new();
        for (mu, dom) in &blocks {
            by_degree.entry(mu[0]).or_default().push((mu, dom));
        }

        let mut prev_z: HashMap<Multidegree, Vec<SparseVec<F::Elem>>> = HashMap::new();
        let mut new_gens: Vec<Gen<F::Elem>> = Vec::new();
        for (&j, blks) in &by_degree {
            if opts.degree_cap.is_some_and(|cap| j > cap) {
                profile.truncated = true;
                break;
            }
            let results: Vec<Result<(Multidegree, Vec<SparseVec<F::Elem>>, Vec<SparseVec<F::Elem>>)>> = blks
                .par_iter()
                .map(|(mu, dom)| {
                    let codim = tsize.get(mu).copied().unwrap_or(0) as usize;
                    let images: Vec<SparseVec<F::Elem>> = dom
                        .iter()
                        .map(|&gl| {
                            let (k, b) = (gl as usize / dim_r, gl as usize % dim_r);
                            let img = match &target {
                                Target::Module(m) => m.act_monomial(&alg.basis()[b], &gens[k].image),
                                Target::Free(_) => {
                                    let t = table.unwrap();
                                    let mut acc = Vec::new();
                                    for (tg, c) in &gens[k].image {
                                        let (k2, b2) = (*tg as usize / dim_r, *tg as usize % dim_r);
                                        for (b3, a) in &t[b][b2] {
                                            acc.push(((k2 * dim_r) as u32 + b3, field.mul(c, a)));
                                        }
                                    }
                                    acc
                                }
                            };
                            linalg::collect_sparse(field, img.into_iter().map(|(t, c)| (tlocal[t as usize], c)).collect())
                        })
                        .collect();
                    let (_, ker) = linalg::kernel(field, codim, &images);
                    let ker: Vec<SparseVec<F::Elem>> = ker
                        .into_iter()
                        .map(|v| v.into_iter().map(|(i, c)| (dom[i as usize], c)).collect())
                        .collect();
                    // m Z in this block.
                    let mut ech = Echelon::new(field.clone(), dom.len());
                    'vars: for (v, w) in var_w.iter().enumerate() {
                        let Some(zs) = prev_z.get(&sub_degrees(mu, w)) else { continue };
                        for z in zs {
                            if ech.rank() == ker.len() {
                                break 'vars;
                            }
                            let mut acc = Vec::new();
                            for (gl, c) in z {
                                let (k, b) = (*gl as usize / dim_r, *gl as usize % dim_r);
                                for (b2, a) in &alg.actions()[v][b] {
                                    acc.push((dlocal[k * dim_r + *b2 as usize], field.mul(c, a)));
                                }
                            }
                            ech.insert(&linalg::collect_sparse(field, acc));
                        }
                    }
                    let mut fresh = Vec::new();
                    for z in &ker {
                        if ech.rank() == ker.len() {
                            break;
                        }
                        let local: SparseVec<F::Elem> = z.iter().map(|(gl, c)| (dlocal[*gl as usize], c.clone())).collect();
                        if ech.insert(&linalg::collect_sparse(field, local)) {
                            if z.iter().any(|(gl, _)| alg.degree_of(*gl as usize % dim_r) == 0) {
                                return Err(Error::Verification("resolution map has a unit entry".into()));
                            }
                            fresh.push(z.clone());
                        }
                    }
                    Ok(((*mu).clone(), ker, fresh))
                })
                .collect();
            let mut next_z = HashMap::new();
            for r in results {
                let (mu, ker, fresh) = r?;
                for z in fresh {
                    new_gens.push(Gen { deg: j, mdeg: mu.clone(), image: if last { Vec::new() } else { z } });
                }
                if !ker.is_empty() {
                    next_z.insert(mu, ker);
                }
            }
            prev_z = next_z;
        }
        profile.steps.push(sorted_degrees(&new_gens));
        prev_gens = std::mem::replace(&mut gens, new_gens);
    }
    Ok(profile)
}

fn sorted_degrees<E>(gens: &[Gen<E>]) -> Vec<i32> {
    let mut d: Vec<i32> = gens.iter().map(|g| g.deg).collect();
    d.sort_unstable();
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::canonical_module;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::{Ideal, PolyRing};

    fn alg<F: Field>(field: F, vars: &[&str], gens: &[&str]) -> ArtinianAlgebra<F> {
        let r = PolyRing::new(field, vars.iter().map(|s| s.to_string()).collect()).unwrap();
        ArtinianAlgebra::from_ideal(&Ideal::parse(r, gens).unwrap()).unwrap()
    }

    fn fp() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn quadric_hypersurface_is_linear() {
        let a = alg(fp(), &["x"], &["x^2"]);
        let p = resolve_k_over_r(&a, &ResolveOptions::new(5)).unwrap();
        assert_eq!(p.steps, vec![vec![0], vec![1], vec![2], vec![3], vec![4], vec![5]]);
        assert_eq!(p.linear_steps(), 5);
        assert_eq!(p.first_nonlinear_step(), None);
    }

    #[test]
    fn cubic_hypersurface_is_not() {
        let a = alg(fp(), &["x"], &["x^3"]);
        let p = resolve_k_over_r(&a, &ResolveOptions::new(3)).unwrap();
        assert_eq!(p.steps, vec![vec![0], vec![1], vec![3], vec![4]]);
        assert_eq!(p.linear_steps(), 1);
        assert_eq!(p.first_nonlinear_step(), Some(2));
    }

    #[test]
    fn koszul_algebra_profile() {
        // k[x,y]/(x^2, y^2): Poincare series 1/(1-t)^2.
        let a = alg(fp(), &["x", "y"], &["x^2", "y^2"]);
        let p = resolve_k_over_r(&a, &ResolveOptions::new(4)).unwrap();
        let totals: Vec<usize> = (0..=4).map(|i| p.total(i)).collect();
        assert_eq!(totals, vec![1, 2, 3, 4, 5]);
        assert_eq!(p.linear_steps(), 4);
    }

    #[test]
    fn free_module_has_no_higher_tor() {
        let a = alg(fp(), &["x", "y"], &["x^2", "x*y", "y^3"]);
        let free = FiniteGradedModule::from_algebra(&a);
        let p = resolve(&a, &free, &ResolveOptions::new(2)).unwrap();
        assert_eq!(p.steps[0], vec![0]);
        assert!(p.steps[1].is_empty());
        assert!(p.steps[2].is_empty());
    }

    #[test]
    fn gorenstein_canonical_module_is_free() {
        let a = alg(fp(), &["x", "y"], &["x^2", "y^2"]);
        let omega = canonical_module(&a);
        let tor1 = tor_of_module(&a, &omega, 1, None).unwrap();
        assert!(tor1.is_empty());
    }

    #[test]
    fn characteristic_independence_on_roos4() {
        let gens = ["x^2+y*z+u^2", "x*u", "x^2+x*y", "x*z+y*u", "z*u+u^2", "y^2+z^2"];
        let vars = ["u", "x", "y", "z"];
        let a = alg(fp(), &vars, &gens);
        let b = alg(Rationals, &vars, &gens);
        let pa = resolve_k_over_r(&a, &ResolveOptions::new(3)).unwrap();
        let pb = resolve_k_over_r(&b, &ResolveOptions::new(3)).unwrap();
        assert_eq!(pa, pb);
        assert_eq!(pa.steps[1], vec![1; 4]);
    }

    #[test]
    fn degree_cap_truncates() {
        let a = alg(fp(), &["x"], &["x^3"]);
        let p = resolve_k_over_r(&a, &ResolveOptions::with_cap(2, 2)).unwrap();
        assert!(p.truncated);
        assert!(p.steps[2].is_empty());
    }
}
