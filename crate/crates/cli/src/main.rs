//! `cherednik`: command-line driver for computing irreducible lowest-weight
//! modules of rational Cherednik algebras over finite fields.

mod cache;
mod config;
mod error;
mod jobs;
mod render;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cache::{to_json, Cache};
use config::{GroupArgs, IdealJob, IdealKind, Job, LmodJob, Mode};
use error::CliError;
use render::{render, Format};

#[derive(Parser)]
#[command(
    name = "cherednik",
    version,
    about = "Lowest-weight modules of rational Cherednik algebras in positive characteristic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long = "out", visible_alias = "format", value_enum, default_value = "json", global = true)]
    out: Format,
    /// Result cache directory (default: $CHEREDNIK_CACHE, else ./.cherednik-cache).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Recompute even when a cached result exists.
    #[arg(long, global = true)]
    fresh: bool,
    /// Worker threads for sweeps.
    #[arg(long, default_value_t = 1, global = true)]
    jobs: usize,
}

#[derive(Args, Clone)]
struct GroupFlags {
    #[arg(long)]
    m: u32,
    /// Defaults to `m`.
    #[arg(long)]
    r: Option<u32>,
    #[arg(long, default_value_t = 2)]
    n: usize,
}

impl GroupFlags {
    fn args(&self) -> GroupArgs {
        GroupArgs {
            m: self.m,
            r: self.r.unwrap_or(self.m),
            n: self.n,
        }
    }
}

#[derive(Args, Clone)]
struct ModuleFlags {
    #[command(flatten)]
    group: GroupFlags,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value = "trivial")]
    tau: String,
    #[arg(long, default_value_t = 0)]
    hbar: u8,
    #[arg(long, value_enum, default_value = "specialized")]
    mode: Mode,
    /// Specialization seeds (comma-separated or repeated).
    #[arg(long = "seed", value_delimiter = ',', default_values_t = [1u64, 2, 3])]
    seeds: Vec<u64>,
    /// Highest degree computed (default: the baby Verma bound).
    #[arg(long = "dmax")]
    cap: Option<u32>,
}

impl ModuleFlags {
    fn job(&self) -> LmodJob {
        LmodJob {
            group: self.group.args(),
            p: self.p,
            tau: self.tau.clone(),
            hbar: self.hbar,
            mode: self.mode,
            // seeds play no role symbolically; keep the cache key independent of them
            seeds: if self.mode == Mode::Symbolic {
                Vec::new()
            } else {
                self.seeds.clone()
            },
            cap: self.cap,
        }
    }
}

#[derive(Args, Clone)]
struct IdealFlags {
    #[arg(long, value_enum)]
    kind: IdealKind,
    #[arg(long, default_value_t = 1)]
    i: usize,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 10)]
    dmax: u32,
}

impl IdealFlags {
    fn job(&self) -> IdealJob {
        IdealJob {
            kind: self.kind,
            i: self.i,
            m: self.m,
            n: self.n,
            p: self.p,
            dmax: self.dmax,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute L(τ), its Hilbert series and irreducibility certificate.
    Lmod(ModuleFlags),
    /// Apply the Dunkl operators to a vector of `Sym(h*) ⊗ τ`.
    Dunkl {
        #[command(flatten)]
        group: GroupFlags,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "trivial")]
        tau: String,
        #[arg(long, default_value_t = 0)]
        hbar: u8,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// One polynomial per basis vector of τ, separated by `;`.
        #[arg(long, value_delimiter = ';', required = true)]
        vector: Vec<String>,
    },
    /// Build an arrangement ideal and compare its quotient with the closed form.
    Arr(IdealFlags),
    /// Graded Betti numbers of an arrangement ideal (`--kind`) or of L(τ) (`--m`).
    Betti {
        #[arg(long, value_enum, conflicts_with = "m")]
        kind: Option<IdealKind>,
        #[arg(long, default_value_t = 1)]
        i: usize,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "trivial")]
        tau: String,
        #[arg(long, default_value_t = 0)]
        hbar: u8,
        #[arg(long, value_enum, default_value = "specialized")]
        mode: Mode,
        #[arg(long = "seed", value_delimiter = ',', default_values_t = [1u64, 2, 3])]
        seeds: Vec<u64>,
        /// Resolution degree bound (default: 10 for ideals, top degree + n for L).
        #[arg(long)]
        dmax: Option<u32>,
    },
    /// Transition matrix between Verma and simple characters for G(m,m,2).
    Transition {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        p: u64,
        /// Truncation degree (default m + 4).
        #[arg(long)]
        dmax: Option<u32>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Compare L for G(m,r,n) with the pullback from G(r,r,n).
    Degen {
        #[command(flatten)]
        group: GroupFlags,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "trivial")]
        tau: String,
        #[arg(long = "seed", value_delimiter = ',', default_values_t = [1u64, 2, 3])]
        seeds: Vec<u64>,
    },
    /// Check a family of square polynomial matrices for the Koszul property.
    Koszul {
        /// JSON file with `group`, `tau`, `scalar` and `byCharacteristic` matrices.
        #[arg(long)]
        matrices: PathBuf,
        #[arg(long)]
        p: u64,
        /// Degree budget for the regular-sequence test and the resolution.
        #[arg(long, default_value_t = 12)]
        budget: u32,
        #[arg(long = "seed", value_delimiter = ',', default_values_t = [1u64, 2])]
        seeds: Vec<u64>,
    },
    /// Run `lmod` over a grid of parameters and print a summary table.
    Sweep {
        /// Comma-separated lists; an empty list gives an empty sweep.
        #[arg(long, value_parser = list::<u32>)]
        m: List<u32>,
        /// Defaults to r = m for every m.
        #[arg(long, value_parser = list::<u32>)]
        r: Option<List<u32>>,
        #[arg(long, value_parser = list::<usize>, default_value = "2")]
        n: List<usize>,
        #[arg(long, value_parser = list::<u64>)]
        p: List<u64>,
        /// `;`-separated, since representation names may contain commas.
        #[arg(long, value_parser = tau_list, default_value = "trivial")]
        tau: List<String>,
        #[arg(long, default_value_t = 0)]
        hbar: u8,
        #[arg(long, value_enum, default_value = "specialized")]
        mode: Mode,
        #[arg(long = "seed", value_delimiter = ',', default_values_t = [1u64, 2, 3])]
        seeds: Vec<u64>,
        #[arg(long = "dmax")]
        cap: Option<u32>,
        /// JSON list of `{m, r, n, p, tau, hilbert}` overriding built-in closed forms.
        #[arg(long)]
        expect: Option<PathBuf>,
    },
}

fn tau_list(s: &str) -> Result<List<String>, String> {
    Ok(List(
        s.split(';')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(String::from)
            .collect(),
    ))
}

/// A comma-separated list where the empty string is the empty list.
#[derive(Clone, Debug)]
struct List<T>(Vec<T>);

fn list<T: std::str::FromStr>(s: &str) -> Result<List<T>, String>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(List)
}

fn job_of(command: Command) -> Result<Job, CliError> {
    Ok(match command {
        Command::Lmod(flags) => Job::Lmod(flags.job()),
        Command::Dunkl {
            group,
            p,
            tau,
            hbar,
            seed,
            vector,
        } => Job::Dunkl {
            group: group.args(),
            p,
            tau,
            hbar,
            seed,
            vector: vector.iter().map(|s| s.trim().to_string()).collect(),
        },
        Command::Arr(flags) => Job::Arr(flags.job()),
        Command::Betti {
            kind,
            i,
            m,
            r,
            n,
            p,
            tau,
            hbar,
            mode,
            seeds,
            dmax,
        } => match (kind, m) {
            (Some(kind), None) => Job::BettiIdeal(IdealJob {
                kind,
                i,
                m: r.unwrap_or(1),
                n,
                p,
                dmax: dmax.unwrap_or(10),
            }),
            (None, Some(m)) => Job::BettiL {
                lmod: ModuleFlags {
                    group: GroupFlags { m, r, n },
                    p,
                    tau,
                    hbar,
                    mode,
                    seeds,
                    cap: None,
                }
                .job(),
                dmax,
            },
            _ => {
                return Err(CliError::invalid(
                    "betti needs either --kind (arrangement ideal) or --m (module L)",
                ))
            }
        },
        Command::Transition { m, p, dmax, seed } => Job::Transition {
            m,
            p,
            dmax: dmax.unwrap_or(m + 4),
            seed,
        },
        Command::Degen { group, p, tau, seeds } => Job::Degen {
            group: group.args(),
            tau,
            p,
            seeds,
        },
        Command::Koszul {
            matrices,
            p,
            budget,
            seeds,
        } => {
            let text =
                std::fs::read_to_string(&matrices).map_err(|e| CliError::invalid(format!("{}: {e}", matrices.display())))?;
            let value = serde_json::from_str(&text).map_err(|e| CliError::invalid(format!("{}: {e}", matrices.display())))?;
            Job::Koszul {
                p,
                budget,
                seeds,
                matrices: value,
            }
        }
        Command::Sweep { .. } => unreachable!("sweeps are not single jobs"),
    })
}

fn run(cli: Cli) -> Result<(String, i32), CliError> {
    let cache = Cache::resolve(cli.common.cache_dir.as_deref());
    let format = cli.common.out;
    if let Command::Sweep {
        m,
        r,
        n,
        p,
        tau,
        hbar,
        mode,
        seeds,
        cap,
        expect,
    } = cli.command
    {
        let grid = sweep::Grid {
            ms: m.0,
            rs: r.map(|l| l.0),
            ns: n.0,
            ps: p.0,
            taus: tau.0,
            hbar,
            mode,
            seeds: if mode == Mode::Symbolic { Vec::new() } else { seeds },
            cap,
        };
        let expectations = match expect {
            Some(path) => sweep::load_expectations(&path)?,
            None => Vec::new(),
        };
        let summary = sweep::run(&grid, &expectations, &cache, cli.common.fresh, cli.common.jobs)?;
        let text = match format {
            Format::Json => to_json(&summary.json()),
            Format::Csv => summary.table().csv(),
            Format::Ascii => summary.table().ascii(),
        };
        return Ok((text, summary.exit_code()));
    }
    let job = job_of(cli.command)?;
    let artifact = jobs::execute(&job, &cache, cli.common.fresh)?;
    let text = render(&artifact.result, format);
    match artifact.mismatch {
        Some(msg) => {
            print!("{text}");
            Err(CliError::Mismatch(msg))
        }
        None => Ok((text, 0)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            let record = CliError::Validation {
                code: "Usage".into(),
                message: e
                    .to_string()
                    .lines()
                    .next()
                    .unwrap_or_default()
                    .trim_start_matches("error: ")
                    .to_string(),
            };
            eprint!("{}", to_json(&record.record()));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprint!("{}", to_json(&e.record()));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
