//! Command-line front end: decompose, codim, strata, classify, split, mc.
//! Reports are canonical JSON (sorted keys, fixed float formatting) or CSV
//! for atlas tables. Exit codes: 0 success, 1 verification failure, 2 input
//! error.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{decomposition_descriptor, DecompositionDescriptor, MonoidRepresentation};
use crate::codim::{catalog, Catalog};
use crate::error::{Error, Result};
use crate::generic::{monte_carlo, AlgebraSpec, DistanceProxy, McConfig};
use crate::mat::MatrixJson;
use crate::report::to_canonical_json;
use crate::split::{block_split, SpectralSet};
use crate::strata::{
    classify, closed_form_dimension, enumerate_strata, sample, stratum_dimension,
    ambient_real_dim, Field, StratumKind, StratumMatrix,
};
use crate::tol::ToleranceConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "equistrata", version, about = "Stratification and codimension toolkit for the reduced algebras of equivariant linear maps")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Residual tolerance override.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Relative singular-value threshold override.
    #[arg(long, global = true)]
    rank_tol: Option<f64>,
    /// Relative eigenvalue clustering radius override.
    #[arg(long, global = true)]
    cluster_tol: Option<f64>,
    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format; csv is supported for the strata atlas.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: OutputFormat,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Decompose a representation file into its isotypic descriptor.
    Decompose {
        /// Input JSON: {"dim": N, "generators": [matrix, ...]}.
        #[arg(long)]
        rep: PathBuf,
    },
    /// Evaluate K_U / C_U and the generic k-parameter bifurcation catalog.
    Codim {
        /// Input JSON descriptor, as produced by `decompose`.
        #[arg(long)]
        descriptor: PathBuf,
        #[arg(long)]
        k: usize,
        /// Bound on the dominance-lattice size.
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Enumerate the strata of a reduced algebra with measured dimensions.
    Strata {
        #[arg(long)]
        field: FieldArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        kind: StratumKindArg,
        /// Exit nonzero unless every measured dimension matches the
        /// closed form (for top strata) and re-sampling.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Classify a matrix into its stratum label.
    Classify {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        field: FieldArg,
    },
    /// Split a real matrix along a spectral set into diagonal blocks.
    Split {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        set: SpectralSetArg,
    },
    /// Monte Carlo transversality experiment on seeded random families.
    Mc {
        #[arg(long)]
        field: FieldArg,
        #[arg(long)]
        n: usize,
        /// Spectral condition: nilpotent (power-trace proxy), center
        /// (max |Re lambda|), or kernel (smallest singular value).
        #[arg(long)]
        kind: McKind,
        /// Expected minimal codimension of the target set (recorded in the
        /// report).
        #[arg(long)]
        codim_target: Option<usize>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        degree: usize,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        #[arg(long, default_value_t = 1e-8)]
        hit_tol: f64,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StratumKindArg {
    Nilpotent,
    Center,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SpectralSetArg {
    Zero,
    Imag,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum McKind {
    Nilpotent,
    Center,
    Kernel,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FieldArg {
    R,
    C,
    H,
}

impl From<FieldArg> for Field {
    fn from(f: FieldArg) -> Field {
        match f {
            FieldArg::R => Field::R,
            FieldArg::C => Field::C,
            FieldArg::H => Field::H,
        }
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return 2;
        }
    };
    let mut tol = ToleranceConfig::default();
    if let Some(t) = cli.tol {
        tol.residual_tol = t;
    }
    if let Some(t) = cli.rank_tol {
        tol.rank_tol = t;
    }
    if let Some(t) = cli.cluster_tol {
        tol.cluster_tol = t;
    }
    if tol.validate().is_err() {
        eprintln!("error: invalid tolerance configuration");
        return 2;
    }
    match dispatch(&cli, &tol) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::ToleranceFailure(_)
        | Error::AmbiguousCluster(_)
        | Error::NonConvergence(_)
        | Error::SplitRetriesExhausted(_)
        | Error::NoSpectralGap => 1,
        _ => 2,
    }
}

fn dispatch(cli: &Cli, tol: &ToleranceConfig) -> Result<i32> {
    match &cli.cmd {
        Cmd::Decompose { rep } => {
            let v: Value = read_json(rep)?;
            let rep = MonoidRepresentation::from_json(&v)?;
            let descriptor = decomposition_descriptor(&rep, tol)?;
            emit(cli, &descriptor.to_json())?;
            Ok(0)
        }
        Cmd::Codim {
            descriptor,
            k,
            cutoff,
        } => {
            let v: Value = read_json(descriptor)?;
            let d = DecompositionDescriptor::from_json(&v)?;
            let cat = catalog(&d, *k, *cutoff)?;
            emit(cli, &catalog_json(&d, &cat))?;
            Ok(0)
        }
        Cmd::Strata {
            field,
            n,
            kind,
            verify,
            seed,
        } => {
            let kind = match kind {
                StratumKindArg::Nilpotent => StratumKind::Nilpotent,
                StratumKindArg::Center => StratumKind::Center,
            };
            let (value, csv, ok) = strata_atlas(Field::from(*field), *n, kind, *seed, *verify, tol)?;
            match cli.format {
                OutputFormat::Json => emit(cli, &value)?,
                OutputFormat::Csv => emit_text(cli, &csv)?,
            }
            Ok(if ok { 0 } else { 1 })
        }
        Cmd::Classify { matrix, field } => {
            let v: Value = read_json(matrix)?;
            let mj: MatrixJson = serde_json::from_value(v)?;
            let m = match Field::from(*field) {
                Field::R => StratumMatrix::Real(mj.to_real()?),
                Field::C => StratumMatrix::Complex(mj.to_complex()?),
                Field::H => StratumMatrix::Quat(crate::linalg::QuatStructured::new(
                    mj.to_complex()?,
                    tol,
                )?),
            };
            let label = classify(&m, tol)?;
            let out = match label {
                Some(l) => json!({ "label": l.to_json() }),
                None => json!({ "label": Value::Null }),
            };
            emit(cli, &out)?;
            Ok(0)
        }
        Cmd::Split { matrix, set } => {
            let v: Value = read_json(matrix)?;
            let mj: MatrixJson = serde_json::from_value(v)?;
            let m = mj.to_real()?;
            let set = match set {
                SpectralSetArg::Zero => SpectralSet::Zero,
                SpectralSetArg::Imag => SpectralSet::Imag,
            };
            let s = block_split(&m, set, tol, None)?;
            let out = json!({
                "set": match set { SpectralSet::Zero => "zero", SpectralSet::Imag => "imag" },
                "m": MatrixJson::from_real(&s.m),
                "b1": MatrixJson::from_real(&s.b1),
                "b2": MatrixJson::from_real(&s.b2),
                "residual": s.residual,
            });
            emit(cli, &out)?;
            Ok(0)
        }
        Cmd::Mc {
            field,
            n,
            kind,
            codim_target,
            k,
            trials,
            seed,
            degree,
            grid,
            hit_tol,
        } => {
            let spec = AlgebraSpec {
                field: Field::from(*field),
                n: *n,
            };
            let proxy = match kind {
                McKind::Nilpotent => DistanceProxy::Nilpotency,
                McKind::Center => DistanceProxy::CenterAll,
                McKind::Kernel => DistanceProxy::KernelDim(1),
            };
            let cfg = McConfig {
                trials: *trials,
                seed: *seed,
                degree: *degree,
                grid_per_axis: *grid,
                hit_tol: *hit_tol,
                ..Default::default()
            };
            let report = monte_carlo(spec, proxy, *k, &cfg)?;
            let mut v = serde_json::to_value(&report)?;
            if let Value::Object(map) = &mut v {
                map.insert("field".into(), json!(Field::from(*field).to_string()));
                map.insert("n".into(), json!(n));
                map.insert(
                    "kind".into(),
                    json!(match kind {
                        McKind::Nilpotent => "nilpotent",
                        McKind::Center => "center",
                        McKind::Kernel => "kernel",
                    }),
                );
                map.insert("k".into(), json!(k));
                if let Some(c) = codim_target {
                    map.insert("codim_target".into(), json!(c));
                }
            }
            emit(cli, &v)?;
            Ok(0)
        }
    }
}

fn strata_atlas(
    field: Field,
    n: usize,
    kind: StratumKind,
    seed: u64,
    verify: bool,
    tol: &ToleranceConfig,
) -> Result<(Value, String, bool)> {
    let labels = enumerate_strata(field, n, kind);
    let ambient = ambient_real_dim(field, n);
    let mut rows = Vec::new();
    let mut csv = String::from("label,closed_form_dim,measured_dim,codim\n");
    let mut ok = true;
    let mut dims = Vec::new();
    for label in &labels {
        let s = sample(label, seed, tol)?;
        let report = stratum_dimension(&s, tol)?;
        if let Some(cf) = report.closed_form {
            ok &= cf == report.measured;
        }
        if verify {
            for extra in 1..=2u64 {
                let s2 = sample(label, seed.wrapping_add(extra * 7919), tol)?;
                let r2 = stratum_dimension(&s2, tol)?;
                ok &= r2.measured == report.measured;
            }
        }
        dims.push(report.measured);
        let codim = ambient - report.measured;
        rows.push(json!({
            "label": label.to_json(),
            "closed_form_dim": report.closed_form,
            "measured_dim": report.measured,
            "codim": codim,
        }));
        csv.push_str(&format!(
            "{},{},{},{}\n",
            label,
            report
                .closed_form
                .map_or(String::from(""), |d| d.to_string()),
            report.measured,
            codim
        ));
    }
    if verify {
        // The top stratum must be strictly larger than every other stratum.
        let top_count = labels
            .iter()
            .zip(&dims)
            .filter(|(l, d)| closed_form_dimension(l).is_some() && **d == *dims.iter().max().unwrap())
            .count();
        let max = dims.iter().max().copied().unwrap_or(0);
        let at_max = dims.iter().filter(|&&d| d == max).count();
        ok &= top_count == 1 && at_max == 1;
    }
    let value = json!({
        "field": field.to_string(),
        "n": n,
        "kind": match kind { StratumKind::Nilpotent => "nilpotent", StratumKind::Center => "center" },
        "ambient_real_dim": ambient,
        "rows": rows,
    });
    Ok((value, csv, ok))
}

fn catalog_json(w: &DecompositionDescriptor, cat: &Catalog) -> Value {
    let entry = |e: &crate::codim::CatalogEntry, steady: bool| -> Value {
        let interpretation = if e.sub.is_trivial() {
            "trivial"
        } else if steady {
            "steady-state"
        } else {
            "hopf-candidate"
        };
        json!({
            "descriptor": {
                "real": e.sub.real,
                "complex": e.sub.complex,
                "quaternionic": e.sub.quaternionic,
            },
            "K": e.k,
            "C": e.c,
            "interpretation": interpretation,
        })
    };
    json!({
        "ambient": w.to_json(),
        "k": cat.k,
        "steady": cat.steady.iter().map(|e| entry(e, true)).collect::<Vec<_>>(),
        "hopf": cat.hopf.iter().map(|e| entry(e, false)).collect::<Vec<_>>(),
    })
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn emit(cli: &Cli, v: &Value) -> Result<()> {
    emit_text(cli, &to_canonical_json(v))
}

fn emit_text(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
