//! JSON reports. Every value is wrapped as `{"provenance": ..., "value": ...}`
//! where provenance is `computed`, `formula` or `reference`.
//! `serde_json` maps keep keys sorted, so equal inputs give equal bytes.

use std::time::Instant;

use anyhow::Result;
use gor_core::algebra::ArtinianAlgebra;
use gor_core::constructions::{cm_hilbert, idealized_codim, idealized_h_vector, inequality_witness, Family};
use gor_core::homology::{betti_over_s, resolve_k_over_r, subadditivity_report, BettiTable, ResolveOptions};
use gor_core::idealization::idealize;
use gor_core::lefschetz::{lefschetz_check, HVector, LefschetzMode, LefschetzReport};
use gor_core::Field;
use serde_json::{json, Map, Value};

use crate::ideal_file::IdealFile;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    pub betti: bool,
    pub subadditivity: bool,
    pub lefschetz: bool,
    pub idealize: bool,
    pub koszul_steps: Option<usize>,
    pub degree_cap: Option<i32>,
    pub seed: u64,
    pub trials: usize,
    pub timing: bool,
}

pub fn computed(v: impl Into<Value>) -> Value {
    json!({ "provenance": "computed", "value": v.into() })
}

pub fn formula(v: impl Into<Value>) -> Value {
    json!({ "provenance": "formula", "value": v.into() })
}

pub fn reference(v: impl Into<Value>) -> Value {
    json!({ "provenance": "reference", "value": v.into() })
}

pub fn betti_json(table: &BettiTable) -> Value {
    Value::Array(table.entries().map(|(i, j, v)| json!({ "i": i, "j": j, "value": v })).collect())
}

fn lefschetz_json(r: &LefschetzReport) -> Value {
    json!({
        "holds_for_some_form": r.holds_for_some_form(),
        "impossible": r.impossible(),
        "passing_trial": r.passing_trial,
        "seed": r.seed,
        "trials": r.trials,
        "verdict": r.verdict(),
    })
}

/// Sections common to a ring and its idealization.
fn algebra_sections<F: Field>(alg: &ArtinianAlgebra<F>, opts: &AnalyzeOptions, out: &mut Map<String, Value>) -> Result<()> {
    let h = alg.hilbert();
    let (ty, level) = alg.type_and_level();
    out.insert("codim".into(), computed(alg.nvars()));
    out.insert("length".into(), computed(alg.dim()));
    out.insert("hilbert_function".into(), computed(h.clone()));
    out.insert("h_vector".into(), computed(h.iter().copied().filter(|&x| x > 0).collect::<Vec<_>>()));
    out.insert("socle_degree".into(), computed(alg.top_degree()));
    out.insert("type".into(), computed(ty));
    out.insert("level".into(), computed(level));
    out.insert("gorenstein".into(), computed(ty == 1));
    if level {
        out.insert("superlevel".into(), computed(alg.is_superlevel()?));
    }
    let hv = HVector::new(h.iter().map(|&x| x as u64).collect())?;
    out.insert("palindromic".into(), computed(hv.is_palindromic()));
    let u = hv.unimodality();
    out.insert("unimodal".into(), computed(u.unimodal));
    if let Some(v) = u.violation {
        out.insert("unimodality_violation".into(), computed(v));
    }
    if opts.betti || opts.subadditivity {
        let b = betti_over_s(alg, None)?;
        out.insert("betti_table".into(), computed(betti_json(&b)));
        out.insert("regularity".into(), computed(b.regularity()));
        out.insert("t_values".into(), computed(b.t_values()));
        if opts.subadditivity {
            let v: Vec<Value> = subadditivity_report(&b.t_values()).into_iter().map(|(a, b)| json!([a, b])).collect();
            out.insert("subadditivity_violations".into(), computed(v));
        }
    }
    if let Some(steps) = opts.koszul_steps {
        let ro = ResolveOptions { steps, degree_cap: opts.degree_cap };
        let p = resolve_k_over_r(alg, &ro)?;
        out.insert(
            "koszul".into(),
            computed(json!({
                "degree_cap": opts.degree_cap,
                "first_nonlinear_step": p.first_nonlinear_step(),
                "linear_steps": p.linear_steps(),
                "probed_steps": steps,
                "ranks": (0..p.steps.len()).map(|i| p.total(i)).collect::<Vec<_>>(),
                "truncated": p.truncated,
            })),
        );
    }
    if opts.lefschetz {
        let weak = lefschetz_check(alg, LefschetzMode::Weak, opts.trials, opts.seed)?;
        let strong = lefschetz_check(alg, LefschetzMode::Strong, opts.trials, opts.seed)?;
        out.insert("lefschetz".into(), computed(json!({ "strong": lefschetz_json(&strong), "weak": lefschetz_json(&weak) })));
    }
    Ok(())
}

/// Closed-form values known for a family.
pub fn family_formulas(family: &Family) -> Option<Value> {
    match family {
        Family::Cm { m } => {
            let m = *m;
            let hf: Vec<String> = (0..=m as i64).map(|i| cm_hilbert(m, i).to_string()).collect();
            let ih: Vec<String> = idealized_h_vector(m).iter().map(|x| x.to_string()).collect();
            let mut v = json!({
                "hilbert_function": formula(hf),
                "idealized_codim": formula(idealized_codim(m).to_string()),
                "idealized_h_vector": formula(ih),
                "regularity": reference(m),
                "t2": reference(m + 2),
            });
            if let Ok(w) = inequality_witness(m) {
                v["inequality_witness"] = formula(serde_json::to_value(&w).expect("serializable"));
            }
            Some(v)
        }
        Family::Roos4 => Some(json!({
            "betti_table": reference(json!([
                {"i": 0, "j": 0, "value": 1}, {"i": 1, "j": 2, "value": 6}, {"i": 2, "j": 3, "value": 4},
                {"i": 2, "j": 4, "value": 9}, {"i": 3, "j": 5, "value": 12}, {"i": 4, "j": 6, "value": 4},
            ])),
            "idealized_h_vector": reference(vec![1, 8, 8, 1]),
            "type": reference(4),
        })),
        Family::RoosAlpha { alpha } => Some(json!({
            "hilbert_function": reference(vec![1, 6, 8]),
            "idealized_h_vector": reference(vec![1, 14, 14, 1]),
            "idealized_linear_steps": reference(*alpha),
        })),
        Family::Stanley => Some(json!({ "idealized_h_vector": reference(vec![1, 13, 12, 13, 1]) })),
        Family::Ci { .. } => None,
    }
}

pub fn analyze<F: Field>(field: F, file: &IdealFile, family: Option<&Family>, opts: &AnalyzeOptions) -> Result<Value> {
    let start = Instant::now();
    let ideal = file.ideal(field)?;
    let alg = ArtinianAlgebra::from_ideal(&ideal)?;
    let mut out = Map::new();
    out.insert("engine_version".into(), Value::from(ENGINE_VERSION));
    out.insert("field".into(), Value::from(file.field.to_string()));
    out.insert("variables".into(), Value::from(file.vars.clone()));
    out.insert("generators".into(), Value::from(file.generators.clone()));
    out.insert("content_hash".into(), Value::from(file.content_hash()));
    if let Some(fam) = family {
        out.insert("family".into(), serde_json::to_value(fam)?);
        if let Some(f) = family_formulas(fam) {
            out.insert("formulas".into(), f);
        }
    }
    algebra_sections(&alg, opts, &mut out)?;
    if opts.idealize {
        let res = idealize(&ideal)?;
        let mut sub = Map::new();
        sub.insert("quadratic".into(), computed(res.is_quadratic()));
        sub.insert("max_generator_degree".into(), computed(res.max_generator_degree()));
        sub.insert("generator_count".into(), computed(res.ideal().gens().len()));
        algebra_sections(res.algebra()?, opts, &mut sub)?;
        out.insert("idealization".into(), Value::Object(sub));
    }
    if opts.timing {
        out.insert("timing_ms".into(), computed(start.elapsed().as_millis() as u64));
    }
    Ok(Value::Object(out))
}
