//! Command-line front end. [`main_with_args`] parses, dispatches and
//! returns the process exit code: 0 on success, 1 when a verification
//! fails, 2 on a usage error.

use std::path::PathBuf;

use cauchy_core::continuous::{verify_main2, RatMatrix};
use cauchy_core::demazure::{demazure_set, Kind};
use cauchy_core::identity::{verify_identity, verify_littlewood, IdentityReport, Variant};
use cauchy_core::poly::Vars;
use cauchy_core::suites::{continuous_suites, verify_all, ContinuousCounts, SuiteResult};
use cauchy_core::weyl::minimal_coset_rep;
use cauchy_core::{
    character, classify_low, enumerate_crystal, psi, psi_inv, rsk, Direction, Error, NNMatrix, Partition, Permutation,
    Tableau,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub const THREADS_ENV: &str = "CRYSTAL_CAUCHY_THREADS";

#[derive(Parser, Debug)]
#[command(name = "crystal-cauchy", version, about = "Crystals, RSK and non-symmetric Cauchy identities")]
pub struct Cli {
    /// Output format; structured results default to json, scalar ones to table.
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List B(λ), or a Demazure crystal, atom or opposite version of it.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_parts)]
        lambda: Parts,
        #[arg(long)]
        w: Option<String>,
        #[arg(long, value_parser = parse_kind)]
        kind: Option<Kind>,
    },
    /// Character of a Demazure crystal, atom or opposite version.
    Character {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_parts)]
        lambda: Parts,
        #[arg(long)]
        w: String,
        #[arg(long, value_parser = parse_kind, default_value = "demazure")]
        kind: Kind,
    },
    /// RSK pair (P, Q) of a matrix given as "r1c1,r1c2;r2c1,r2c2".
    Rsk {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        matrix: String,
    },
    /// (λ, w, P, Q) for a lower-triangular matrix.
    Classify {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        matrix: String,
    },
    /// Kernel expansion minus the sum of character products.
    VerifyCauchy {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: u32,
        #[arg(long, value_parser = parse_variant, default_value = "lower")]
        variant: Variant,
    },
    /// ∏_{i≤j}(1 − x_i x_j)^{-1} against Σ s_{2λ}.
    VerifyLittlewood {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        degree: u32,
    },
    /// LS path ψ(T) of a tableau (default v_λ) after operators like "f1,f2,e1".
    Path {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_parts)]
        lambda: Parts,
        /// Rows as JSON, e.g. [[1,1],[2]].
        #[arg(long)]
        tableau: Option<String>,
        #[arg(long)]
        ops: Option<String>,
    },
    /// Continuous classification of one rational matrix, or the seeded
    /// continuous suites.
    ContinuousCheck {
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
        #[arg(long, default_value_t = 1000)]
        group_law: usize,
        #[arg(long, default_value_t = 200)]
        commutation: usize,
        #[arg(long, default_value_t = 200)]
        main2: usize,
    },
    /// Every invariant suite below the given bounds.
    VerifyAll {
        #[arg(long, default_value_t = 2)]
        max_n: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

/// A comma-separated list such as `2,1,0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parts(pub Vec<i64>);

fn parse_parts(s: &str) -> Result<Parts, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| format!("'{s}' is not a comma-separated list of integers")))
        .collect::<Result<_, _>>()
        .map(Parts)
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug)]
pub enum CliError {
    Usage { flag: &'static str, message: String },
    Failed(anyhow::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Failed(e.into())
    }
}

fn usage(flag: &'static str) -> impl FnOnce(Error) -> CliError {
    move |e| CliError::Usage {
        flag,
        message: e.to_string(),
    }
}

pub struct Outcome {
    pub code: i32,
    pub json: Value,
    pub table: String,
    pub default_format: Format,
}

impl Outcome {
    fn ok(json: Value, table: String, default_format: Format) -> Self {
        Outcome {
            code: 0,
            json,
            table,
            default_format,
        }
    }

    pub fn render(&self, format: Option<Format>) -> String {
        match format.unwrap_or(self.default_format) {
            Format::Json => serde_json::to_string(&self.json).expect("values serialize") + "\n",
            Format::Table => {
                let mut t = self.table.clone();
                if !t.ends_with('\n') {
                    t.push('\n');
                }
                t
            }
        }
    }
}

fn partition(parts: &Parts, n: usize) -> Result<Partition, CliError> {
    Partition::padded(parts.0.clone(), n).map_err(usage("--lambda"))
}

fn permutation(w: &str, n: usize) -> Result<Permutation, CliError> {
    Permutation::parse(w, n).map_err(usage("--w"))
}

fn matrix(s: &str, n: usize) -> Result<NNMatrix, CliError> {
    let m = NNMatrix::parse(s).map_err(usage("--matrix"))?;
    if m.n() != n {
        return Err(CliError::Usage {
            flag: "--matrix",
            message: format!("expected a {n}×{n} matrix, found {}×{}", m.n(), m.n()),
        });
    }
    Ok(m)
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

fn identity_outcome(report: &IdentityReport) -> Outcome {
    Outcome {
        code: if report.ok { 0 } else { 1 },
        json: to_json(report),
        table: report.to_table(),
        default_format: Format::Table,
    }
}

fn suites_outcome(results: &[SuiteResult]) -> Outcome {
    let ok = results.iter().all(SuiteResult::passed);
    let mut table = String::new();
    for r in results {
        table.push_str(&r.summary_line());
        table.push('\n');
        for f in &r.failures {
            table.push_str(&format!("    {f}\n"));
        }
    }
    table.push_str(if ok { "ok" } else { "FAIL" });
    Outcome {
        code: if ok { 0 } else { 1 },
        json: json!({ "ok": ok, "suites": results }),
        table,
        default_format: Format::Table,
    }
}

fn parse_ops(s: &str) -> Result<Vec<(Direction, usize)>, CliError> {
    let bad = || CliError::Usage {
        flag: "--ops",
        message: format!("'{s}' is not a list like f1,f2,e1"),
    };
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let t = t.trim();
            let dir = match t.chars().next() {
                Some('e') => Direction::Raise,
                Some('f') => Direction::Lower,
                _ => return Err(bad()),
            };
            let i = t[1..].parse().map_err(|_| bad())?;
            Ok((dir, i))
        })
        .collect()
}

pub fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Enumerate { n, lambda, w, kind } => {
            let lambda = partition(&lambda, n)?;
            let (label, elements, w_line) = match (w, kind) {
                (None, None) => ("full".to_string(), enumerate_crystal(&lambda), None),
                (None, Some(_)) => {
                    return Err(CliError::Usage {
                        flag: "--w",
                        message: "--kind needs a Weyl group element".into(),
                    })
                }
                (Some(w), kind) => {
                    let w = minimal_coset_rep(&permutation(&w, n)?, &lambda);
                    let kind = kind.unwrap_or(Kind::Demazure);
                    let set = demazure_set(&lambda, &w, kind)?;
                    (kind.to_string(), set.elements, Some(w.one_line()))
                }
            };
            let table = elements.iter().map(Tableau::to_string).collect::<Vec<_>>().join("\n");
            let json = json!({
                "lambda": lambda,
                "w": w_line,
                "kind": label,
                "count": elements.len(),
                "elements": elements,
            });
            Ok(Outcome::ok(json, table, Format::Json))
        }
        Command::Character { n, lambda, w, kind } => {
            let lambda = partition(&lambda, n)?;
            let w = minimal_coset_rep(&permutation(&w, n)?, &lambda);
            let set = demazure_set(&lambda, &w, kind)?;
            let ch = character(&set, Vars::X);
            let json = json!({
                "lambda": lambda,
                "w": w.one_line(),
                "kind": kind.to_string(),
                "size": set.elements.len(),
                "character": ch.to_json(),
            });
            Ok(Outcome::ok(json, ch.to_string(), Format::Table))
        }
        Command::Rsk { n, matrix: m } => {
            let m = matrix(&m, n)?;
            let (p, q) = rsk(&m);
            let table = format!("P = {p}\nQ = {q}");
            Ok(Outcome::ok(json!({ "matrix": m, "P": p, "Q": q }), table, Format::Json))
        }
        Command::Classify { n, matrix: m } => {
            let m = matrix(&m, n)?;
            let c = classify_low(&m).map_err(|e| match e {
                Error::NotLowerTriangular(..) => usage("--matrix")(e),
                other => other.into(),
            })?;
            let table = format!("lambda = {}\nw = {}\nP = {}\nQ = {}", c.lambda, c.w, c.p, c.q);
            Ok(Outcome::ok(to_json(&c), table, Format::Json))
        }
        Command::VerifyCauchy { n, degree, variant } => Ok(identity_outcome(&verify_identity(n, degree, variant)?)),
        Command::VerifyLittlewood { n, degree } => Ok(identity_outcome(&verify_littlewood(n, degree))),
        Command::Path { n, lambda, tableau, ops } => {
            let lambda = partition(&lambda, n)?;
            let mut t = match tableau {
                None => Tableau::highest(&lambda),
                Some(s) => {
                    let rows: Vec<Vec<u32>> = serde_json::from_str(&s).map_err(|e| CliError::Usage {
                        flag: "--tableau",
                        message: e.to_string(),
                    })?;
                    Tableau::new(lambda.clone(), rows).map_err(usage("--tableau"))?
                }
            };
            let mut pi = Some(psi(&t, &lambda)?);
            for (dir, i) in parse_ops(ops.as_deref().unwrap_or(""))? {
                if i == 0 || i >= n {
                    return Err(CliError::Usage {
                        flag: "--ops",
                        message: format!("index {i} out of range for n = {n}"),
                    });
                }
                pi = match pi {
                    Some(p) => p.op(i, dir)?,
                    None => None,
                };
            }
            let json = match &pi {
                Some(p) => {
                    t = psi_inv(p)?;
                    let (iota, tau) = p.iota_tau();
                    json!({ "lambda": lambda, "path": p, "iota": iota, "tau": tau, "tableau": t })
                }
                None => json!({ "lambda": lambda, "path": null }),
            };
            let table = match &pi {
                Some(p) => format!("{p}\ntableau = {t}"),
                None => "null".to_string(),
            };
            Ok(Outcome::ok(json, table, Format::Json))
        }
        Command::ContinuousCheck {
            matrix,
            seed,
            max_n,
            group_law,
            commutation,
            main2,
        } => match matrix {
            Some(s) => {
                let m = RatMatrix::parse(&s).map_err(usage("--matrix"))?;
                let report = verify_main2(&m).map_err(|e| match e {
                    Error::NotLowerTriangular(..) => usage("--matrix")(e),
                    other => other.into(),
                })?;
                let table = format!(
                    "{}\nlambda = ({})\nw = {}\nfirst = {}\nsecond = {}",
                    if report.ok { "ok" } else { "FAIL" },
                    report.lambda.iter().map(cauchy_core::rational::format_q).collect::<Vec<_>>().join(","),
                    report.w,
                    report.first,
                    report.second
                );
                Ok(Outcome {
                    code: if report.ok { 0 } else { 1 },
                    json: to_json(&report),
                    table,
                    default_format: Format::Table,
                })
            }
            None => {
                let counts = ContinuousCounts {
                    group_law,
                    commutation,
                    main2,
                    ..ContinuousCounts::default()
                };
                Ok(suites_outcome(&continuous_suites(seed, counts, max_n)))
            }
        },
        Command::VerifyAll {
            max_n,
            max_degree,
            seed,
            inject_fault,
        } => Ok(suites_outcome(&verify_all(max_n, max_degree, seed, inject_fault))),
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let k: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&k| k > 0)
        .ok_or_else(|| format!("error: invalid value '{raw}' for {THREADS_ENV}: expected a positive integer"))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(k).build_global();
    Ok(())
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("{msg}");
        return 2;
    }
    let format = cli.format;
    let out = cli.out.clone();
    match run(cli.command) {
        Ok(outcome) => {
            let text = outcome.render(format);
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return 2;
                    }
                }
                None => print!("{text}"),
            }
            outcome.code
        }
        Err(CliError::Usage { flag, message }) => {
            eprintln!("error: invalid value for {flag}: {message}");
            2
        }
        Err(CliError::Failed(e)) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}
