use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;

use galrep::resolvent::BuildOptions;
use galrep_cli::*;

#[derive(Parser)]
#[command(name = "galrep", version, about = "Frobenius classes of mod-l Galois representations")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Search cap for prime searches in checks.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap: u64,
    /// Seed for randomized factorization in the A2 driver.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Clone)]
struct BuildArgs {
    /// The polynomial h in Tr(h(x) x^v), e.g. `x^2` or `x^3+x`.
    #[arg(long, default_value = "x^2")]
    hpoly: String,
    /// Extra bits of p-adic precision.
    #[arg(long, default_value_t = 0)]
    precision_slack: u32,
}

impl BuildArgs {
    fn options(&self) -> CliResult<BuildOptions> {
        Ok(BuildOptions { h: parse_hpoly(&self.hpoly)?, slack_bits: self.precision_slack, ..BuildOptions::default() })
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Discriminant, real roots and A1 for a data file.
    Check { data: PathBuf },
    /// Builds the resolvent table of a data file.
    Resolvents {
        data: PathBuf,
        #[arg(short, long)]
        out: PathBuf,
        #[command(flatten)]
        build: BuildArgs,
    },
    /// Frobenius class and trace at one prime.
    Ap { cache: PathBuf, prime: String },
    /// Rows for consecutive primes, or for the primes listed in a manifest.
    Table {
        /// Resolvent table; give two (l5 then l27) for the weight 24 pair.
        #[arg(required = true, num_args = 1..=2)]
        caches: Vec<PathBuf>,
        #[arg(long, conflicts_with = "primes")]
        start: Option<String>,
        #[arg(long, default_value_t = 40)]
        count: usize,
        /// File of prime expressions, one per line.
        #[arg(long)]
        primes: Option<PathBuf>,
    },
    /// Twist elimination, and A3 when the data file of the level below is given.
    Certify {
        cache: PathBuf,
        #[arg(long)]
        below: Option<PathBuf>,
    },
    /// A2 on a synthetic polynomial Delta.
    A2 {
        delta: String,
        #[arg(long)]
        ell: u64,
        #[arg(long, default_value_t = 0)]
        j: u32,
    },
    /// `n a_n [a_n mod l]` for the level one eigenform of weight k.
    Qexp {
        k: u32,
        count: usize,
        #[arg(long)]
        ell: Option<u64>,
    },
}

fn run(cli: Cli) -> CliResult<String> {
    match cli.cmd {
        Cmd::Check { data } => cmd_check(&load_data(&data)?, cli.cap),
        Cmd::Resolvents { data, out, build } => {
            let (tab, summary) = cmd_resolvents(&load_data(&data)?, &build.options()?)?;
            std::fs::write(&out, tab.serialize()).map_err(|e| CliError::Input(format!("{}: {e}", out.display())))?;
            Ok(summary)
        }
        Cmd::Ap { cache, prime } => match cmd_ap(&load_table(&cache)?, &prime) {
            Err(CliError::Ambiguous(m)) => Err(CliError::Ambiguous(format!("{m}\nhint: galrep resolvents --hpoly 'x^3+x'"))),
            r => r,
        },
        Cmd::Table { caches, start, count, primes } => {
            let list: Vec<(String, BigInt)> = match (primes, start) {
                (Some(p), _) => read_manifest(&read_file(&p)?)?,
                (None, Some(s)) => {
                    let s = galrep::arith::int::parse_int_expr(&s).map_err(|e| CliError::Input(e.to_string()))?;
                    primes_from(&s, count).into_iter().map(|v| (prime_label(&v), v)).collect()
                }
                (None, None) => return Err(CliError::Input("give --start or --primes".into())),
            };
            let mut sets = Vec::new();
            for c in &caches {
                sets.push(TableSet::from_table(load_table(c)?));
            }
            let rows = if sets.len() == 2 { cmd_table_f24(&sets[0], &sets[1], &list) } else { cmd_table(&sets[0], &list) };
            let mut out = String::new();
            let mut first_err = None;
            for (row, (label, _)) in rows.into_iter().zip(&list) {
                match row {
                    Ok(r) => out.push_str(&format!("{r}\n")),
                    Err(e) => {
                        eprintln!("{label}: {e}");
                        first_err.get_or_insert(e);
                    }
                }
            }
            print!("{out}");
            match first_err {
                Some(e) => Err(e),
                None => Ok(String::new()),
            }
        }
        Cmd::Certify { cache, below } => {
            let below = below.map(|p| load_data(&p)).transpose()?;
            cmd_certify(&load_table(&cache)?, below.as_ref(), cli.cap)
        }
        Cmd::A2 { delta, ell, j } => {
            let seed = cli.seed.unwrap_or(galrep::factor::finite::DEFAULT_SEED);
            cmd_a2(&parse_hpoly(&delta)?, ell, j, cli.cap, seed)
        }
        Cmd::Qexp { k, count, ell } => cmd_qexp(k, count, ell),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("{e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(s) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match &e {
                CliError::CheckFailed(report) => print!("{report}"),
                e => eprintln!("error: {e}"),
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
