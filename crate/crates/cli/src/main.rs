mod ideal_file;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use gor_core::constructions::Family;
use gor_core::idealization::idealize;
use gor_core::reproduce::criteria;
use gor_core::{Error, Field, FieldSpec, PrimeField, Rationals};
use rayon::prelude::*;
use serde_json::{json, Value};

use ideal_file::IdealFile;
use report::{analyze, computed, family_formulas, AnalyzeOptions};

/// Artinian algebras, idealizations and their homology.
#[derive(Parser)]
#[command(name = "gor", version)]
struct Cli {
    /// Coefficient field: `q` or `fp:<p>`. Defaults to the file's field,
    /// else fp:32003.
    #[arg(long, global = true)]
    field: Option<FieldSpec>,
    /// Write the JSON output here instead of stdout.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// roos4, cm, roos-alpha, stanley or ci.
    #[arg(long)]
    family: String,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    alpha: Option<i64>,
    /// Degrees for `ci`, comma separated.
    #[arg(long, value_delimiter = ',')]
    degrees: Vec<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Write the ideal file of a family.
    Build {
        #[command(flatten)]
        family: FamilyArgs,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report invariants of an ideal file or family label such as `cm-m3`.
    Analyze {
        input: String,
        #[arg(long)]
        betti: bool,
        #[arg(long)]
        subadditivity: bool,
        #[arg(long)]
        lefschetz: bool,
        #[arg(long)]
        idealize: bool,
        /// Probe the resolution of the residue field this many steps.
        #[arg(long, alias = "steps")]
        koszul_steps: Option<usize>,
        #[arg(long)]
        degree_cap: Option<i32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        trials: usize,
        /// Include wall-clock time (makes output run-dependent).
        #[arg(long)]
        timing: bool,
    },
    /// Write the ideal file of the idealization.
    Idealize {
        input: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Resolve the residue field and report where it stops being linear.
    Koszul {
        input: String,
        #[arg(long, default_value_t = 4)]
        steps: usize,
        #[arg(long)]
        degree_cap: Option<i32>,
    },
    /// Closed-form values for a family, without Gröbner bases.
    Family {
        #[command(flatten)]
        family: FamilyArgs,
    },
    /// Run the regression corpus.
    Reproduce {
        /// Only these criteria, comma separated.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

/// Failure classes mapped to exit codes.
enum Failure {
    User(anyhow::Error),
    Infeasible(anyhow::Error),
    Verification(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::Infeasible { .. }) => Failure::Infeasible(e),
            Some(Error::Verification(_) | Error::Mismatch(_)) => Failure::Verification(e),
            _ => Failure::User(e),
        }
    }
}

fn family_from_args(a: &FamilyArgs) -> Result<Family> {
    let fam = match a.family.as_str() {
        "roos4" => Family::Roos4,
        "stanley" => Family::Stanley,
        "cm" => Family::Cm { m: a.m.context("cm needs --m")? },
        "roos-alpha" => Family::RoosAlpha { alpha: a.alpha.context("roos-alpha needs --alpha")? },
        "ci" => Family::Ci { degrees: a.degrees.clone() },
        other => other.parse()?,
    };
    fam.validate()?;
    Ok(fam)
}

/// A path to an ideal file, or a family label.
fn load(input: &str, field: Option<FieldSpec>) -> Result<(IdealFile, Option<Family>)> {
    if Path::new(input).exists() {
        let text = std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?;
        let mut file: IdealFile = text.parse().with_context(|| format!("parsing {input}"))?;
        if let Some(f) = field {
            file.field = f;
        }
        Ok((file, None))
    } else {
        let fam: Family = input.parse().with_context(|| format!("{input} is neither a file nor a family label"))?;
        let spec = field.unwrap_or_default();
        fam.check_characteristic(spec.characteristic())?;
        Ok((IdealFile::from_family(&fam, spec), Some(fam)))
    }
}

fn emit(text: &str, path: Option<&Path>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(v: &Value, path: Option<&Path>) -> Result<()> {
    emit(&format!("{}\n", serde_json::to_string_pretty(v)?), path)
}

/// Runs `f` with the field named by `spec`.
macro_rules! with_field {
    ($spec:expr, |$f:ident| $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $f = Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

fn idealized_file<F: Field>(field: F, file: &IdealFile) -> Result<IdealFile> {
    let res = idealize(&file.ideal(field)?)?;
    let ring = res.ring();
    Ok(IdealFile {
        vars: ring.var_names().to_vec(),
        field: file.field,
        generators: res.ideal().gens().iter().map(|g| ring.format(g)).collect(),
    })
}

fn koszul_report<F: Field>(field: F, file: &IdealFile, steps: usize, cap: Option<i32>) -> Result<Value> {
    let alg = gor_core::algebra::ArtinianAlgebra::from_ideal(&file.ideal(field)?)?;
    let p = gor_core::homology::resolve_k_over_r(&alg, &gor_core::homology::ResolveOptions { steps, degree_cap: cap })?;
    let betti: Vec<Value> = p
        .steps
        .iter()
        .enumerate()
        .flat_map(|(i, _)| p.graded(i).into_iter().map(move |(j, v)| json!({ "i": i, "j": j, "value": v })))
        .collect();
    Ok(json!({
        "content_hash": file.content_hash(),
        "degree_cap": computed(cap),
        "field": file.field.to_string(),
        "first_nonlinear_step": computed(p.first_nonlinear_step()),
        "linear_steps": computed(p.linear_steps()),
        "poincare": computed(betti),
        "probed_steps": computed(steps),
        "truncated": computed(p.truncated),
    }))
}

fn run(cli: Cli) -> std::result::Result<(), Failure> {
    let out = cli.json.as_deref();
    match cli.command {
        Command::Build { family, out: path } => {
            let fam = family_from_args(&family)?;
            let spec = cli.field.unwrap_or_default();
            fam.check_characteristic(spec.characteristic()).map_err(anyhow::Error::from)?;
            let file = IdealFile::from_family(&fam, spec);
            // Refuse to write what would not load back.
            with_field!(spec, |f| {
                file.ideal(f)?;
            });
            emit(&file.to_string(), path.as_deref())?;
        }
        Command::Analyze { input, betti, subadditivity, lefschetz, idealize, koszul_steps, degree_cap, seed, trials, timing } => {
            let (file, fam) = load(&input, cli.field)?;
            let opts = AnalyzeOptions { betti, subadditivity, lefschetz, idealize, koszul_steps, degree_cap, seed, trials, timing };
            let v = with_field!(file.field, |f| analyze(f, &file, fam.as_ref(), &opts)?);
            emit_json(&v, out)?;
        }
        Command::Idealize { input, out: path } => {
            let (file, _) = load(&input, cli.field)?;
            let ifile = with_field!(file.field, |f| idealized_file(f, &file)?);
            emit(&ifile.to_string(), path.as_deref())?;
        }
        Command::Koszul { input, steps, degree_cap } => {
            let (file, _) = load(&input, cli.field)?;
            let v = with_field!(file.field, |f| koszul_report(f, &file, steps, degree_cap)?);
            emit_json(&v, out)?;
        }
        Command::Family { family } => {
            let fam = family_from_args(&family)?;
            let mut v = json!({
                "content_hash": fam.fixture_hash(),
                "family": serde_json::to_value(&fam).map_err(anyhow::Error::from)?,
                "generators": fam.generators(),
                "variables": fam.variables(),
            });
            if let Some(f) = family_formulas(&fam) {
                v["formulas"] = f;
            }
            emit_json(&v, out)?;
        }
        Command::Reproduce { only } => {
            let selected: Vec<_> = criteria().into_iter().filter(|c| only.is_empty() || only.contains(&c.id)).collect();
            let outcomes: Vec<_> = selected.par_iter().map(|c| c.run()).collect();
            for o in &outcomes {
                eprintln!("{o}");
            }
            if let Some(p) = out {
                emit_json(&serde_json::to_value(&outcomes).map_err(anyhow::Error::from)?, Some(p))?;
            }
            let failed: Vec<u32> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.id).collect();
            if !failed.is_empty() {
                return Err(Failure::Verification(anyhow::anyhow!("criteria failed: {failed:?}")));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::User(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Infeasible(e)) => {
            eprintln!("infeasible: {e:#}");
            ExitCode::from(3)
        }
        Err(Failure::Verification(e)) => {
            eprintln!("verification failed: {e:#}");
            ExitCode::from(4)
        }
    }
}
