use std::fs;
use std::path::{Component, Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use har_core::bench::{self, BenchConfig};
use har_core::circuit::{bool_signature, BenchFamily};
use har_core::format::{read_har, read_hypergraph, signature_ref, write_har, write_hypergraph};
use har_core::term::{decompose, parse};
use har_core::{canonicalize, Har, MaHypergraph, Signature};

#[derive(Parser)]
#[command(
    name = "har",
    version,
    about = "Work with string diagrams stored as hypergraph adjacency representations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SigArg {
    /// Signature file (`name arity coarity` per line). Defaults to the
    /// file named on the input's `sig` line.
    #[arg(long)]
    sig: Option<PathBuf>,
}

#[derive(Args)]
struct OutArg {
    /// Output file; standard output if omitted.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a HAR against the well-formedness conditions.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        sig: SigArg,
    },
    /// Sequential composition `f ; g`.
    Compose {
        f: PathBuf,
        g: PathBuf,
        #[command(flatten)]
        sig: SigArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Parallel composition `f * g`.
    Tensor {
        f: PathBuf,
        g: PathBuf,
        #[command(flatten)]
        sig: SigArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Canonical representative of a HAR's equivalence class.
    Canon {
        file: PathBuf,
        #[command(flatten)]
        sig: SigArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Evaluate a term to a HAR.
    Eval {
        /// File holding the term.
        #[arg(required_unless_present = "expr", conflicts_with = "expr")]
        termfile: Option<PathBuf>,
        /// The term itself, e.g. "(and * id 1) ; not".
        #[arg(long)]
        expr: Option<String>,
        /// Signature file.
        #[arg(long)]
        sig: PathBuf,
        #[command(flatten)]
        out: OutArg,
    },
    /// Convert a HAR to a hypergraph.
    ToHyp {
        file: PathBuf,
        #[command(flatten)]
        sig: SigArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Convert a hypergraph to a HAR.
    FromHyp {
        file: PathBuf,
        #[command(flatten)]
        sig: SigArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Print a term in layered normal form that evaluates to the HAR.
    Decompose {
        file: PathBuf,
        #[command(flatten)]
        sig: SigArg,
        #[command(flatten)]
        out: OutArg,
    },
    /// Time one benchmark family and write CSV.
    Bench {
        /// tensor, compose-small, compose-large or adder.
        family: BenchFamily,
        #[arg(long, default_value_t = 12)]
        max_k: u32,
        #[arg(long, default_value_t = 1)]
        min_k: u32,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        /// Seconds allowed per build or repetition before the row is omitted.
        #[arg(long, default_value_t = 60)]
        timeout: u64,
        /// Recorded in the CSV preamble.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutArg,
        /// Also write a gnuplot script plotting the CSV.
        #[arg(long, requires = "out")]
        gnuplot: Option<PathBuf>,
    },
    /// Fit the log-log slope of mean time against node count.
    Slope {
        csv: PathBuf,
        #[arg(long)]
        k_min: Option<u32>,
        #[arg(long)]
        k_max: Option<u32>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// A signature and the path it was loaded from.
struct Loaded {
    sig: Signature,
    path: PathBuf,
}

fn load_sig(path: &Path) -> Result<Loaded> {
    let sig = Signature::parse(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    Ok(Loaded {
        sig,
        path: path.to_path_buf(),
    })
}

/// `--sig` if given, otherwise the file referenced by `text`, resolved
/// relative to `file`.
fn resolve_sig(arg: &SigArg, file: &Path, text: &str) -> Result<Loaded> {
    if let Some(path) = &arg.sig {
        return load_sig(path);
    }
    let reference = signature_ref(text)
        .with_context(|| format!("in {}", file.display()))?
        .ok_or_else(|| anyhow!("{} names no signature; pass --sig", file.display()))?;
    let dir = file.parent().unwrap_or(Path::new(""));
    load_sig(&dir.join(reference))
}

fn load_har(path: &Path, sig: &SigArg) -> Result<(Har, Loaded)> {
    let text = read(path)?;
    let loaded = resolve_sig(sig, path, &text)?;
    let h = read_har(&text, &loaded.sig).with_context(|| format!("in {}", path.display()))?;
    h.validate(&loaded.sig).map_err(|v| {
        anyhow!(
            "{} is not a valid HAR: {v} ({:?})",
            path.display(),
            v.clause
        )
    })?;
    Ok((h, loaded))
}

/// How an output written to `out` should name the signature file: relative
/// to the output's directory unless that would climb to the root.
fn sig_reference(sig_path: &Path, out: Option<&Path>) -> String {
    let base = match out.and_then(Path::parent) {
        Some(dir) if !dir.as_os_str().is_empty() => dir.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let (Ok(sig), Ok(base)) = (fs::canonicalize(sig_path), fs::canonicalize(&base)) else {
        return sig_path.display().to_string();
    };
    let depth = base.components().count() - 1;
    match pathdiff::diff_paths(&sig, &base) {
        Some(rel)
            if rel
                .components()
                .take_while(|c| matches!(c, Component::ParentDir))
                .count()
                < depth =>
        {
            rel.display().to_string()
        }
        _ => sig.display().to_string(),
    }
}

fn emit(out: &OutArg, text: &str) -> Result<()> {
    match &out.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_har(out: &OutArg, h: &Har, loaded: &Loaded) -> Result<()> {
    let reference = sig_reference(&loaded.path, out.out.as_deref());
    emit(out, &write_har(h, &loaded.sig, Some(&reference)))
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Validate { file, sig } => {
            let (h, _) = load_har(&file, &sig)?;
            println!(
                "{}: valid, {} -> {}, {} nodes",
                file.display(),
                h.dom(),
                h.cod(),
                h.size()
            );
        }
        Command::Compose { f, g, sig, out } => {
            let (f, loaded) = load_har(&f, &sig)?;
            let (g, _) = load_har(&g, &sig)?;
            emit_har(&out, &f.compose(&g)?, &loaded)?;
        }
        Command::Tensor { f, g, sig, out } => {
            let (f, loaded) = load_har(&f, &sig)?;
            let (g, _) = load_har(&g, &sig)?;
            emit_har(&out, &f.tensor(&g), &loaded)?;
        }
        Command::Canon { file, sig, out } => {
            let (h, loaded) = load_har(&file, &sig)?;
            emit_har(&out, &canonicalize(&h), &loaded)?;
        }
        Command::Eval {
            termfile,
            expr,
            sig,
            out,
        } => {
            let loaded = load_sig(&sig)?;
            let text = match (expr, termfile) {
                (Some(e), _) => e,
                (None, Some(path)) => read(&path)?,
                (None, None) => bail!("give a term file or --expr"),
            };
            let term = parse(text.trim())?;
            emit_har(&out, &term.eval_har(&loaded.sig)?, &loaded)?;
        }
        Command::ToHyp { file, sig, out } => {
            let (h, loaded) = load_har(&file, &sig)?;
            let hyp = MaHypergraph::from_har(&h, &loaded.sig)?;
            let reference = sig_reference(&loaded.path, out.out.as_deref());
            emit(&out, &write_hypergraph(&hyp, &loaded.sig, Some(&reference)))?;
        }
        Command::FromHyp { file, sig, out } => {
            let text = read(&file)?;
            let loaded = resolve_sig(&sig, &file, &text)?;
            let hyp = read_hypergraph(&text, &loaded.sig)
                .with_context(|| format!("in {}", file.display()))?;
            emit_har(&out, &hyp.to_har(&loaded.sig)?, &loaded)?;
        }
        Command::Decompose { file, sig, out } => {
            let (h, loaded) = load_har(&file, &sig)?;
            emit(&out, &format!("{}\n", decompose(&h, &loaded.sig)))?;
        }
        Command::Bench {
            family,
            max_k,
            min_k,
            reps,
            timeout,
            seed,
            out,
            gnuplot,
        } => {
            if reps == 0 {
                bail!("--reps must be at least 1");
            }
            let config = BenchConfig {
                min_k,
                reps,
                timeout: Duration::from_secs(timeout),
                seed,
                ..BenchConfig::new(family, max_k)
            };
            bench::retain_freed_memory();
            let records = bench::run(&config, &bool_signature(), |r| {
                eprintln!(
                    "{family} k={} K={} mean={:.0}ns{}",
                    r.k,
                    r.size,
                    r.mean_ns(),
                    if r.omitted { " (omitted)" } else { "" }
                );
            })?;
            emit(&out, &bench::to_csv(&config, &records))?;
            if let (Some(script), Some(csv)) = (gnuplot, &out.out) {
                let csv = csv.display().to_string();
                fs::write(&script, bench::gnuplot_script(&csv, family))
                    .with_context(|| format!("writing {}", script.display()))?;
            }
        }
        Command::Slope { csv, k_min, k_max } => {
            let rows =
                bench::parse_csv(&read(&csv)?).with_context(|| format!("in {}", csv.display()))?;
            let k_min = k_min.unwrap_or(1);
            let k_max = k_max.unwrap_or(u32::MAX);
            let fit = bench::slope_fit(&rows, k_min, k_max)
                .ok_or_else(|| anyhow!("fewer than two usable rows in the k range"))?;
            println!(
                "slope {:.4} intercept {:.4} rms residual {:.4} points {}",
                fit.slope, fit.intercept, fit.residual, fit.points
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
