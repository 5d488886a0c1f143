use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use antipodal::catalog::{catalog_list, lookup, manifest, CatalogEntry};
use antipodal::certificate::maximality_certificate;
use antipodal::config::{resolve, Overrides, POOL_CAP_ENV};
use antipodal::json::parse_json;
use antipodal::pool::{make_pool, SearchConfig};
use antipodal::report::{run_report, set_from_json, set_to_json, Status};
use antipodal::search::{enumerate_maximal_classes, extend_to_maximal, two_number, weyl_pool};
use antipodal::space::{AntipodalSet, Method};
use antipodal::Error;

#[derive(Parser)]
#[command(name = "antipodal", version, about = "Exact antipodal sets in compact symmetric spaces")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// JSON search configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for the restart permutations.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    pool_cap: Option<usize>,
    #[arg(long, global = true)]
    unit_order: Option<u32>,
    #[arg(long, global = true)]
    rank_limit: Option<usize>,
    /// Add the non-monomial generators (Hadamard or Hurwitz unit) to the pool.
    #[arg(long, global = true)]
    extended_pool: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Pairwise,
    Phi,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog spaces, optionally by family.
    ListSpaces {
        #[arg(long)]
        family: Option<String>,
    },
    /// Print the versioned catalog manifest.
    Manifest,
    /// Check antipodality of a point set.
    VerifySet {
        #[arg(long)]
        space: String,
        #[arg(long)]
        points: PathBuf,
        #[arg(long, value_enum, default_value = "pairwise")]
        method: MethodArg,
    },
    /// Extend a set (the origin by default) to a pool-maximal one.
    FindMaximal {
        #[arg(long)]
        space: String,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// Largest antipodal set found in the pool, against the closed form.
    TwoNumber {
        #[arg(long)]
        space: String,
        #[arg(long)]
        restarts: Option<usize>,
    },
    /// Pool-maximal sets through the origin up to translation.
    EnumerateClasses {
        #[arg(long)]
        space: String,
    },
    /// Pool-level Weyl group of a pool-maximal set.
    Weyl {
        #[arg(long)]
        space: String,
        #[arg(long)]
        set: PathBuf,
    },
    /// Full verification report.
    Report {
        #[arg(long)]
        space: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Include wall-clock timings, which makes the output run-dependent.
        #[arg(long)]
        timings: bool,
    },
}

/// Exit status: 0 success, 1 verification failure, 2 usage error.
enum Outcome {
    Pass,
    Fail,
}

fn usage_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Parse(_)
            | Error::UnknownSpace { .. }
            | Error::ShapeError(_)
            | Error::UnsupportedScalarKind(_)
            | Error::SpecMismatch(_)
            | Error::NotInGroup
            | Error::ConductorLimit { .. }
            | Error::MissingOrigin
    )
}

fn read_json(path: &Path) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_json(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Writes to stdout; a closed pipe is not an error.
fn print(v: &Value) {
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn read_set(entry: &CatalogEntry, path: &Path) -> Result<AntipodalSet, Error> {
    set_from_json(&read_json(path)?, &entry.space()?, &entry.id)
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let o = &cli.opts;
    let flags = Overrides {
        unit_order: o.unit_order,
        pool_cap: o.pool_cap,
        restarts: None,
        rank_limit: o.rank_limit,
        monomial_only: o.extended_pool.then_some(false),
        seed: o.seed,
    };
    let env_cap = std::env::var(POOL_CAP_ENV).ok();
    let base = resolve(o.config.as_deref(), env_cap.as_deref(), &flags)?;
    let with_restarts = |r: Option<usize>| SearchConfig { restarts: r.unwrap_or(base.restarts), ..base.clone() };
    match cli.command {
        Command::ListSpaces { family } => {
            let listing = catalog_list(family.as_deref())?;
            let entries: Vec<Value> = listing
                .entries
                .iter()
                .map(|e| json!({"id": e.id, "label": e.label.name(), "group": e.group.to_string(), "expected_two_number": e.expected}))
                .collect();
            print(&json!({"entries": entries, "note": listing.note}));
            Ok(Outcome::Pass)
        }
        Command::Manifest => {
            print(&manifest());
            Ok(Outcome::Pass)
        }
        Command::VerifySet { space, points, method } => {
            let entry = lookup(&space)?;
            let x = read_set(&entry, &points)?;
            let m = match method {
                MethodArg::Pairwise => Method::Pairwise,
                MethodArg::Phi => Method::PhiCriterion,
            };
            let v = entry.space()?.is_antipodal_set(&x, m)?;
            print(&serde_json::to_value(&v).expect("verdict serializes"));
            Ok(if v.antipodal { Outcome::Pass } else { Outcome::Fail })
        }
        Command::FindMaximal { space, restarts, points } => {
            let entry = lookup(&space)?;
            let s = entry.space()?;
            let cfg = with_restarts(restarts);
            let pool = make_pool(&s, &cfg)?;
            let x = match points {
                Some(p) => extend_to_maximal(&s, &read_set(&entry, &p)?, &pool)?,
                None => two_number(&s, &pool, cfg.restarts, cfg.seed)?.set,
            };
            let cert = maximality_certificate(&s, &x, Some(&pool))?;
            let mut v = set_to_json(&entry.id, &x);
            v["size"] = json!(x.len());
            v["tier"] = json!(cert.verdict.name());
            print(&v);
            Ok(Outcome::Pass)
        }
        Command::TwoNumber { space, restarts } => {
            let entry = lookup(&space)?;
            let s = entry.space()?;
            let cfg = with_restarts(restarts);
            let pool = make_pool(&s, &cfg)?;
            let t = two_number(&s, &pool, cfg.restarts, cfg.seed)?;
            let tier = maximality_certificate(&s, &t.set, Some(&pool))?.verdict;
            let status = Status::compare(t.value as u64, entry.expected);
            print(&json!({
                "space": entry.id,
                "two_number": t.value,
                "expected": entry.expected,
                "status": status.name(),
                "tier": tier.name(),
                "greedy_best": t.greedy_value,
                "restarts": t.restarts,
                "seed": cfg.seed,
            }));
            Ok(if status == Status::Fail { Outcome::Fail } else { Outcome::Pass })
        }
        Command::EnumerateClasses { space } => {
            let entry = lookup(&space)?;
            let s = entry.space()?;
            let pool = make_pool(&s, &base)?;
            let classes = enumerate_maximal_classes(&s, &pool)?;
            let items = classes
                .iter()
                .map(|c| {
                    let tier = maximality_certificate(&s, c, Some(&pool))?.verdict;
                    let mut v = set_to_json(&entry.id, c);
                    v["size"] = json!(c.len());
                    v["tier"] = json!(tier.name());
                    Ok(v)
                })
                .collect::<Result<Vec<_>, Error>>()?;
            let status = match entry.expected {
                Some(_) if classes.len() == 1 => Status::Pass,
                Some(_) => Status::Fail,
                None => Status::Unknown,
            };
            print(&json!({"space": entry.id, "count": classes.len(), "status": status.name(), "classes": items}));
            Ok(if status == Status::Fail { Outcome::Fail } else { Outcome::Pass })
        }
        Command::Weyl { space, set } => {
            let entry = lookup(&space)?;
            let s = entry.space()?;
            let pool = make_pool(&s, &base)?;
            let x = read_set(&entry, &set)?;
            match weyl_pool(&s, &x, &pool) {
                Ok(w) => {
                    print(&json!({"space": entry.id, "scope": "pool-level", "order": w.order, "elements": w.elements}));
                    Ok(Outcome::Pass)
                }
                Err(Error::NotMaximal) => {
                    print(&json!({"space": entry.id, "error": "set is not pool-maximal"}));
                    Ok(Outcome::Fail)
                }
                Err(e) => Err(e),
            }
        }
        Command::Report { space, out, format, timings } => {
            let entry = lookup(&space)?;
            let r = run_report(&entry, &base, timings)?;
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&r.to_json()).expect("report serializes") + "\n",
                Format::Md => r.to_markdown(),
            };
            std::fs::write(&out, text).map_err(|e| Error::Parse(format!("{}: {e}", out.display())))?;
            let _ = writeln!(std::io::stdout().lock(), "{} {}", r.space, r.overall.name());
            Ok(if r.overall == Status::Fail { Outcome::Fail } else { Outcome::Pass })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if usage_error(&e) { 2 } else { 1 })
        }
    }
}
