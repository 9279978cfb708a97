//! `dh`: canonical bases, homogeneity checks, jet differential census and
//! verification suites for differentially homogeneous polynomials.

mod cache;
mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use diffhom::dpoly::{is_diff_homogeneous, parse, DpolyError};
use diffhom::exact::factorial;
use diffhom::hwv::{hwv_basis, kernel_dim_for_tableau, kernel_dim_full, symmetrizer_image_dim};
use diffhom::jets::{census_from_basis, CensusEntry};
use diffhom::tableaux::{canonical_tableau, count_semistandard, count_standard, partitions_of, Partition};
use diffhom::wronskian::manifest_json;

use crate::verify::{Caps, Report, Suite};

const SCHEMA_VERSION: u32 = 1;
const DEFAULT_SEED: u64 = 20240917;

#[derive(Parser, Debug)]
#[command(name = "dh", version, about = "Differentially homogeneous polynomials, exactly")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Directory for cached basis manifests.
    #[arg(long, global = true, env = "DH_CACHE")]
    cache: Option<PathBuf>,
    /// Seed for the random matrices and vectors used by checks.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (defaults to the number of CPUs).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the canonical Wronskian basis of degree d in N+1 variables.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Decide whether a differential polynomial is differentially homogeneous.
    Check(CheckArgs),
    /// Dimensions of twisted jet differentials on Pᴺ, by weight.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        /// Jet order.
        #[arg(long, required_unless_present = "all_k", conflicts_with = "all_k")]
        k: Option<usize>,
        /// Sweep k = 0..d-1.
        #[arg(long)]
        all_k: bool,
    },
    /// Partitions of d, or the semistandard tableaux of one shape.
    Tableaux {
        #[arg(long, required_unless_present = "shape")]
        d: Option<usize>,
        /// Comma-separated parts, e.g. 2,1.
        #[arg(long, conflicts_with = "d")]
        shape: Option<String>,
        /// Largest entry (tableaux) or alphabet size minus one (partitions).
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Dimensions of the common kernel of the J operators.
    Kernel {
        #[arg(long)]
        d: usize,
        /// Local dimension parameter; defaults to d-1.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        max_d: Option<usize>,
        #[arg(long, default_value_t = 2)]
        max_n: usize,
        #[arg(long)]
        max_k: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// The polynomial, e.g. "x0*x1[1] - x1*x0[1]".
    #[arg(required_unless_present = "file", conflicts_with = "file")]
    expr: Option<String>,
    /// Read the polynomial from a file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Ambient N; defaults to the largest variable index.
    #[arg(long)]
    n: Option<usize>,
}

/// A failure that maps to a specific exit status.
#[derive(Debug)]
struct Exit(u8);

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            if let Some(Exit(code)) = e.downcast_ref::<Exit>() {
                return ExitCode::from(*code);
            }
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

impl std::fmt::Display for Exit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "exit {}", self.0)
    }
}

impl std::error::Error for Exit {}

fn run(cli: &Cli) -> Result<u8> {
    let cache = cli.cache.as_deref();
    match &cli.command {
        Command::Basis { n, d } => {
            if *d == 0 {
                bail!("d must be at least 1");
            }
            let basis = cache::load_basis(cache, *n, *d)?;
            let out = match cli.format {
                Format::Json => pretty(&json!({
                    "schema_version": SCHEMA_VERSION,
                    "N": n,
                    "d": d,
                    "basis": manifest_json(&basis),
                })),
                Format::Csv => {
                    let mut s = String::from("index,m,alpha,order,weight,poly\n");
                    for (i, e) in basis.iter().enumerate() {
                        let g = e.poly.gradings()?;
                        writeln!(
                            s,
                            "{i},{},{},{},{},\"{}\"",
                            join(&e.datum.m, " "),
                            join(&e.datum.flat_alpha(), " "),
                            g.order,
                            g.weight.map(|w| w.to_string()).unwrap_or_default(),
                            e.poly
                        )?;
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("# N={n} d={d}: {} elements\n", basis.len());
                    for (i, e) in basis.iter().enumerate() {
                        let g = e.poly.gradings()?;
                        writeln!(
                            s,
                            "{i}\tm=({})\talpha=({})\torder={}\tweight={}\t{}",
                            join(&e.datum.m, ","),
                            join(&e.datum.flat_alpha(), ","),
                            g.order,
                            g.weight.map(|w| w.to_string()).unwrap_or_else(|| "-".into()),
                            e.poly
                        )?;
                    }
                    s
                }
            };
            print!("{out}");
            Ok(0)
        }
        Command::Check(args) => cmd_check(cli.format, args),
        Command::Census { n, d, k, all_k } => {
            let ks: Vec<usize> = if *all_k { (0..d.max(&1).to_owned()).collect() } else { vec![k.expect("required")] };
            let basis = if *d == 0 { Vec::new() } else { cache::load_basis(cache, *n, *d)? };
            let mut entries: Vec<CensusEntry> = Vec::new();
            for k in ks {
                entries.extend(census_from_basis(&basis, *d, k)?);
            }
            print!("{}", render_census(cli.format, *n, *d, &entries));
            Ok(0)
        }
        Command::Tableaux { d, shape, k } => {
            let out = match (d, shape) {
                (_, Some(shape)) => render_shape(cli.format, &parse_shape(shape)?, *k),
                (Some(d), None) => render_partitions(cli.format, *d, *k),
                (None, None) => unreachable!("clap requires one of them"),
            };
            print!("{out}");
            Ok(0)
        }
        Command::Kernel { d, k } => {
            if *d == 0 {
                bail!("d must be at least 1");
            }
            let k = k.unwrap_or(d - 1);
            print!("{}", render_kernel(cli.format, *d, k)?);
            Ok(0)
        }
        Command::Verify {
            suite,
            max_d,
            max_n,
            max_k,
        } => {
            let caps = Caps {
                max_d: *max_d,
                max_n: *max_n,
                max_k: *max_k,
            };
            let start = Instant::now();
            let ctx = verify::Context {
                caps,
                seed: cli.seed,
                cache,
            };
            let checks = verify::run(*suite, &ctx)?;
            let failed = checks.iter().filter(|c| !c.pass).count();
            let report = Report {
                schema_version: SCHEMA_VERSION,
                suite: suite.name(),
                seed: cli.seed,
                caps,
                passed: checks.len() - failed,
                failed,
                checks,
                wall_time_ms: start.elapsed().as_millis(),
            };
            print!("{}", render_report(cli.format, &report));
            Ok(u8::from(failed > 0))
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Largest `k` such that `x<k>` occurs in the text.
fn max_var_index(text: &str) -> usize {
    let bytes = text.as_bytes();
    let mut best = 0;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'x' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if let Ok(v) = text[start..j].parse::<usize>() {
                best = best.max(v);
            }
            i = j.max(i + 1);
        } else {
            i += 1;
        }
    }
    best
}

fn cmd_check(format: Format, args: &CheckArgs) -> Result<u8> {
    let text = match (&args.expr, &args.file) {
        (Some(e), _) => e.clone(),
        (None, Some(path)) => {
            std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
        }
        (None, None) => unreachable!("clap requires one of them"),
    };
    let text = text.trim();
    let n = args.n.unwrap_or_else(|| max_var_index(text));
    let poly = match parse(text, n) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            if let DpolyError::Parse { pos, .. } = e {
                eprintln!("  {text}");
                eprintln!("  {}^", " ".repeat(text[..pos.min(text.len())].chars().count()));
            }
            return Err(Exit(2).into());
        }
    };
    let h = is_diff_homogeneous(&poly)?;
    let out = match format {
        Format::Json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "input": text,
            "N": n,
            "homogeneous": h.homogeneous,
            "degree": h.degree,
        })),
        Format::Csv => format!(
            "input,homogeneous,degree\n{},{},{}\n",
            csv_field(text),
            h.homogeneous,
            h.degree.map(|d| d.to_string()).unwrap_or_default()
        ),
        Format::Text => match h.degree {
            Some(d) if h.homogeneous => format!("yes, degree {d}\n"),
            _ => "no\n".to_string(),
        },
    };
    print!("{out}");
    Ok(if h.homogeneous { 0 } else { 1 })
}

fn render_census(format: Format, n: usize, d: usize, entries: &[CensusEntry]) -> String {
    match format {
        Format::Json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "N": n,
            "d": d,
            "entries": entries,
        })),
        Format::Csv => {
            let mut s = String::from("N,d,k,n,count\n");
            for e in entries {
                let _ = writeln!(s, "{n},{d},{},{},{}", e.k, e.n, e.count);
            }
            s
        }
        Format::Text => {
            let mut s = String::from("N\td\tk\tn\tcount\n");
            for e in entries {
                let _ = writeln!(s, "{n}\t{d}\t{}\t{}\t{}", e.k, e.n, e.count);
            }
            let mut ks: Vec<usize> = entries.iter().map(|e| e.k).collect();
            ks.dedup();
            for k in ks {
                let total: usize = entries.iter().filter(|e| e.k == k).map(|e| e.count).sum();
                let _ = writeln!(s, "# k={k} total={total}");
            }
            s
        }
    }
}

fn parse_shape(text: &str) -> Result<Partition> {
    let parts = text
        .split(',')
        .map(|p| p.trim().parse::<usize>().with_context(|| format!("invalid part {p:?} in shape")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Partition::new(parts)?)
}

fn render_partitions(format: Format, d: usize, k: usize) -> String {
    let rows: Vec<(Partition, usize, usize)> = partitions_of(d, None)
        .into_iter()
        .map(|l| {
            let f = count_standard(&l);
            let dim = count_semistandard(&l, k + 1);
            (l, f, dim)
        })
        .collect();
    match format {
        Format::Json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "d": d,
            "k": k,
            "partitions": rows.iter().map(|(l, f, dim)| json!({
                "shape": l.parts(),
                "standard": f,
                "semistandard": dim,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("shape,standard,semistandard\n");
            for (l, f, dim) in &rows {
                let _ = writeln!(s, "{},{f},{dim}", csv_field(&join(l.parts(), ",")));
            }
            s
        }
        Format::Text => {
            let mut s = format!("# partitions of {d}; semistandard counts use entries 0..={k}\nshape\tf\td\n");
            for (l, f, dim) in &rows {
                let _ = writeln!(s, "{l}\t{f}\t{dim}");
            }
            s
        }
    }
}

fn render_shape(format: Format, shape: &Partition, k: usize) -> String {
    // D_T for each listed tableau lives in the smallest ambient space that fits
    let n = shape.len().saturating_sub(1);
    let basis = hwv_basis(shape, k, n);
    match format {
        Format::Json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "shape": shape.parts(),
            "k": k,
            "standard": count_standard(shape),
            "tableaux": basis.elements.iter().map(|(t, p)| json!({
                "rows": t.rows(),
                "D_T": p.to_string(),
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("tableau,D_T\n");
            for (t, p) in &basis.elements {
                let _ = writeln!(s, "{},{}", csv_field(&t.to_string()), csv_field(&p.to_string()));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "# shape {shape}, entries 0..={k}: {} semistandard tableaux, f = {}\n",
                basis.len(),
                count_standard(shape)
            );
            for (t, p) in &basis.elements {
                let _ = writeln!(s, "{t}\t{p}");
            }
            s
        }
    }
}

fn render_kernel(format: Format, d: usize, k: usize) -> Result<String> {
    let full = kernel_dim_full(d, k);
    let fact: usize = factorial(d as u64).try_into()?;
    let mut rows = Vec::new();
    for l in partitions_of(d, None) {
        let iso = kernel_dim_for_tableau(&canonical_tableau(&l), k)?;
        rows.push((l.clone(), iso, count_standard(&l), symmetrizer_image_dim(&l, k)?));
    }
    Ok(match format {
        Format::Json => pretty(&json!({
            "schema_version": SCHEMA_VERSION,
            "d": d,
            "k": k,
            "full": full,
            "factorial": fact,
            "isotypic": rows.iter().map(|(l, iso, f, im)| json!({
                "shape": l.parts(),
                "kernel": iso,
                "standard": f,
                "image": im,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("shape,kernel,standard,image\n");
            let _ = writeln!(s, "full,{full},{fact},{}", (k + 1).pow(d as u32));
            for (l, iso, f, im) in &rows {
                let _ = writeln!(s, "{},{iso},{f},{im}", csv_field(&join(l.parts(), ",")));
            }
            s
        }
        Format::Text => {
            let mut s = format!("# d={d} k={k}\nfull kernel\t{full}\t(d! = {fact})\n");
            if k + 1 < d {
                s.push_str("# k < d-1: values are computed only\n");
            }
            s.push_str("shape\tkernel\tf\timage\n");
            for (l, iso, f, im) in &rows {
                let _ = writeln!(s, "{l}\t{iso}\t{f}\t{im}");
            }
            s
        }
    })
}

fn render_report(format: Format, report: &Report) -> String {
    match format {
        Format::Json => pretty(&serde_json::to_value(report).expect("serializable")),
        Format::Csv => {
            let mut s = String::from("id,params,expected,computed,verdict\n");
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    c.id,
                    csv_field(&c.params.to_string()),
                    csv_field(&c.expected.to_string()),
                    csv_field(&c.computed.to_string()),
                    if c.pass { "pass" } else { "fail" }
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.checks {
                let _ = writeln!(
                    s,
                    "{} {} {} expected={} computed={}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.id,
                    c.params,
                    c.expected,
                    c.computed
                );
            }
            let _ = writeln!(
                s,
                "# suite {}: {} passed, {} failed, seed {}, {} ms",
                report.suite, report.passed, report.failed, report.seed, report.wall_time_ms
            );
            s
        }
    }
}
