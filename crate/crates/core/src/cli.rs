//! The `ogq` command line.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::cache::DiskStore;
use crate::error::{Error, Result};
use crate::lg::{lg_gw, lg_gw_odd, LGQuery};
use crate::partitions::{strict_partitions, Composition, StrictPartition};
use crate::qtilde::{engine, CACHE_DIR_ENV};
use crate::ring::{big_to_json, ring, GWQuery};
use crate::suites::{self, Check};
use crate::sym::SymPoly;

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INADMISSIBLE: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "ogq", version, about = "Quantum cohomology of OG(n+1, 2n+2)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quantum product τ_lhs ⋆ τ_rhs.
    Qprod {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[arg(long)]
        json: bool,
    },
    /// Three-point Gromov-Witten invariant ⟨τ_a, τ_b, τ_c⟩_d.
    Gw {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
    },
    /// Quantum Pieri product τ_lambda ⋆ τ_k.
    Pieri {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        json: bool,
    },
    /// Gromov-Witten invariant ⟨σ_a, σ_b, σ_c⟩_e of LG(n-1, 2n-2).
    Lggw {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        e: u32,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long)]
        c: String,
        /// Use the direct e-coefficient formula (odd e only).
        #[arg(long)]
        odd_route: bool,
    },
    /// Q̃-polynomial of a composition.
    Qtilde {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        nu: String,
        /// Print the expanded polynomial in x₁, ..., x_n.
        #[arg(long)]
        show_poly: bool,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 4)]
        n_max: u32,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Write every admissible invariant for n and d ≤ d_max.
    Table {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d_max: u32,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Inspect or clear the on-disk e-coefficient cache.
    Cache {
        /// Cache directory; defaults to $OGQ_CACHE_DIR.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long)]
        clear: bool,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identities,
    Ring,
    Lg,
    All,
}

/// Output and exit status of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CommandResult {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

impl CommandResult {
    fn ok(stdout: String) -> Self {
        CommandResult {
            stdout,
            stderr: String::new(),
            exit_code: EXIT_OK,
        }
    }

    fn fail(code: i32, message: String) -> Self {
        CommandResult {
            stdout: String::new(),
            stderr: message,
            exit_code: code,
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse(_) | Error::InvalidIndex(_) | Error::ArgumentOrder { .. } | Error::InvalidDegree(_) => EXIT_PARSE,
        Error::InadmissibleQuery(_) => EXIT_INADMISSIBLE,
        _ => EXIT_OTHER,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult::fail(EXIT_PARSE, text)
            } else {
                CommandResult::ok(text)
            };
        }
    };
    match execute(cli.command) {
        Ok(r) => r,
        Err(e) => CommandResult::fail(exit_code(&e), format!("error: {e}\n")),
    }
}

fn strict(s: &str) -> Result<StrictPartition> {
    s.parse()
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(1).max(1))
        .build()
        .map_err(|e| Error::InvariantViolation(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn execute(command: Command) -> Result<CommandResult> {
    match command {
        Command::Qprod { n, lhs, rhs, json } => {
            check_n(n)?;
            let prod = ring(n).quantum_product(&strict(&lhs)?, &strict(&rhs)?)?;
            Ok(CommandResult::ok(if json {
                format!("{}\n", prod.to_json())
            } else {
                format!("{prod}\n")
            }))
        }
        Command::Gw { n, d, a, b, c } => {
            check_n(n)?;
            let q = GWQuery::new(n, strict(&a)?, strict(&b)?, strict(&c)?, d);
            for p in [&q.lambda, &q.mu, &q.nu] {
                p.check_in(n)?;
            }
            Ok(CommandResult::ok(format!("{}\n", ring(n).gw_invariant(&q)?)))
        }
        Command::Pieri { n, lambda, k, json } => {
            check_n(n)?;
            let class = ring(n).quantum_pieri(&strict(&lambda)?, k)?;
            Ok(CommandResult::ok(if json {
                format!("{}\n", class.to_json())
            } else {
                format!("{class}\n")
            }))
        }
        Command::Lggw { n, e, a, b, c, odd_route } => {
            let q = LGQuery::new(n, strict(&a)?, strict(&b)?, strict(&c)?, e);
            let value = if odd_route {
                if !q.is_admissible() {
                    return Err(Error::InadmissibleQuery(format!(
                        "weight {} does not match LG degree {e}",
                        q.weight()
                    )));
                }
                lg_gw_odd(&q.lambda, &q.mu, &q.nu, e, n)?
            } else {
                lg_gw(&q)?
            };
            Ok(CommandResult::ok(format!("{value}\n")))
        }
        Command::Qtilde { n, nu, show_poly } => {
            let nu = parse_composition(&nu)?;
            let poly = engine(n).qtilde_x(&nu);
            Ok(CommandResult::ok(if show_poly {
                format!("{poly}\n")
            } else {
                format!("{}\n", SymPoly::from_genpoly(&poly)?)
            }))
        }
        Command::Verify {
            suite,
            n_max,
            jobs,
            json,
        } => {
            if n_max < 2 {
                return Err(Error::InvalidIndex("--n-max must be at least 2".into()));
            }
            let checks = with_jobs(jobs, || run_suite(suite, n_max))??;
            Ok(render_checks(&checks, json))
        }
        Command::Table {
            n,
            d_max,
            out,
            csv,
            jobs,
        } => {
            check_n(n)?;
            let rows = with_jobs(jobs, || gw_table(n, d_max))??;
            let text = if csv {
                table_csv(&rows)?
            } else {
                format!("{}\n", table_json(n, d_max, &rows))
            };
            fs::write(&out, text).map_err(|e| Error::io(&out, e))?;
            Ok(CommandResult::ok(format!(
                "wrote {} invariants to {}\n",
                rows.len(),
                out.display()
            )))
        }
        Command::Cache { dir, clear } => {
            let dir = dir
                .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
                .ok_or_else(|| Error::Parse(format!("no --dir given and {CACHE_DIR_ENV} is unset")))?;
            let store = DiskStore::open(&dir)?;
            let path = store.path().to_path_buf();
            if clear {
                let count = store.len();
                drop(store);
                fs::remove_file(&path).map_err(|e| Error::io(&path, e))?;
                Ok(CommandResult::ok(format!("removed {count} records from {}\n", path.display())))
            } else {
                Ok(CommandResult::ok(format!("{} records in {}\n", store.len(), path.display())))
            }
        }
    }
}

fn check_n(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidIndex("n must be positive".into()))
    } else {
        Ok(())
    }
}

fn parse_composition(s: &str) -> Result<Composition> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Composition::new(Vec::new()));
    }
    let parts = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Composition::new(parts))
}

fn run_suite(suite: Suite, n_max: u32) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    if matches!(suite, Suite::Identities | Suite::All) {
        out.extend(suites::identity_checks(n_max as usize)?);
    }
    if matches!(suite, Suite::Ring | Suite::All) {
        for n in 2..=n_max {
            out.extend(suites::ring_checks(n)?);
        }
    }
    if matches!(suite, Suite::Lg | Suite::All) {
        for n in 2..=n_max {
            out.extend(suites::lg_checks(n)?);
        }
    }
    Ok(out)
}

fn render_checks(checks: &[Check], json: bool) -> CommandResult {
    let failed = checks.iter().filter(|c| !c.pass).count();
    let stdout = if json {
        let arr: Vec<Value> = checks.iter().map(Check::to_json).collect();
        format!("{}\n", Value::Array(arr))
    } else {
        let mut counts: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
        for c in checks {
            let e = counts.entry(&c.name).or_default();
            e.0 += c.pass as usize;
            e.1 += 1;
        }
        let mut text = String::new();
        for (name, (pass, total)) in &counts {
            let tag = if pass == total { "PASS" } else { "FAIL" };
            text.push_str(&format!("{tag} {name}: {pass}/{total}\n"));
        }
        for c in checks.iter().filter(|c| !c.pass) {
            text.push_str(&format!("failed {} {}\n", c.name, c.params));
        }
        text
    };
    CommandResult {
        stdout,
        stderr: String::new(),
        exit_code: if failed == 0 { EXIT_OK } else { EXIT_VERIFY },
    }
}

/// One admissible invariant ⟨τ_λ, τ_μ, τ_ν⟩_d with λ ≤ μ ≤ ν.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub lambda: StrictPartition,
    pub mu: StrictPartition,
    pub nu: StrictPartition,
    pub d: u32,
    pub value: BigInt,
}

/// Every admissible unordered triple for d ≤ d_max, in lexicographic order.
pub fn gw_table(n: u32, d_max: u32) -> Result<Vec<TableRow>> {
    use rayon::prelude::*;
    let basis = strict_partitions(n);
    let mut triples = Vec::new();
    for (i, l) in basis.iter().enumerate() {
        for (j, m) in basis.iter().enumerate().skip(i) {
            for v in &basis[j..] {
                if let Some(d) = GWQuery::degree_for(n, l.weight() + m.weight() + v.weight()) {
                    if d <= d_max {
                        triples.push(GWQuery::new(n, l.clone(), m.clone(), v.clone(), d));
                    }
                }
            }
        }
    }
    let r = ring(n);
    triples
        .par_iter()
        .map(|q| {
            Ok(TableRow {
                lambda: q.lambda.clone(),
                mu: q.mu.clone(),
                nu: q.nu.clone(),
                d: q.d,
                value: r.gw_invariant(q)?,
            })
        })
        .collect()
}

pub fn table_json(n: u32, d_max: u32, rows: &[TableRow]) -> Value {
    let entries: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "lambda": r.lambda.parts(),
                "mu": r.mu.parts(),
                "nu": r.nu.parts(),
                "d": r.d,
                "value": big_to_json(&r.value),
            })
        })
        .collect();
    json!({"n": n, "d_max": d_max, "entries": entries})
}

pub fn table_csv(rows: &[TableRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Parse(format!("csv: {e}"));
    w.write_record(["lambda", "mu", "nu", "d", "value"]).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.lambda.to_csv(),
            r.mu.to_csv(),
            r.nu.to_csv(),
            r.d.to_string(),
            r.value.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}
