use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use num_rational::BigRational;

use cobham_core::approx::{approx_powers, dependence_witness, DEFAULT_MAX_TERMS};
use cobham_core::cobham::{
    extract, teleport_check, teleport_check_exhaustive, verify_certificate, ExtractConfig,
    PeriodCertificate, VerificationReport,
};
use cobham_core::dfao::{build_periodic_dfao, Dfao, DEFAULT_MAX_STATES};
use cobham_core::numeration::{extend_digits, DigitSet};

#[derive(Parser)]
#[command(name = "cobham", version, about = "Automatic sequences and periodicity certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print f_X for the automaton in FILE.
    Eval { file: PathBuf, x: BigUint },
    /// Print f_0 .. f_{COUNT-1}, one per line.
    Prefix { file: PathBuf, count: u64 },
    /// Test whether A and B are multiplicatively independent.
    Indep { a: u64, b: u64 },
    /// Find m, n with |A^m - B^n| <= EPS * B^n.
    Approx {
        a: u64,
        b: u64,
        /// Tolerance as an exact fraction, e.g. 1/12.
        eps: String,
    },
    /// Rewrite FILE over the digits 0..=MAXDIGIT.
    Extend { file: PathBuf, max_digit: u32 },
    /// Reverse the reading direction of FILE.
    Reverse { file: PathBuf },
    /// Build the automaton of a preperiodic-then-periodic sequence.
    Mkperiodic {
        base: u32,
        /// Preperiod tokens, whitespace separated.
        #[arg(long, default_value = "")]
        pre: String,
        /// Period tokens, whitespace separated.
        #[arg(long)]
        per: String,
    },
    /// Extract a periodicity certificate from automata in two bases.
    Extract {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// Verify the certificate on this many indices past the threshold.
        #[arg(long)]
        verify: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        witness_cap: Option<u64>,
        /// Write the certificate here.
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Check a certificate against an automaton.
    Verify {
        #[arg(long)]
        dfao: PathBuf,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long, default_value_t = 1000)]
        window: u64,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check f(X·cᴺ + z) = f(Y·cᴺ + z) over the window z ∈ [0, 2cᴺ].
    Teleport {
        #[arg(long)]
        dfao: PathBuf,
        #[arg(long)]
        x: BigUint,
        #[arg(long)]
        y: BigUint,
        #[arg(long)]
        n: u32,
    },
}

/// Windows up to this size are checked exhaustively by `teleport`.
const EXHAUSTIVE_WINDOW: u64 = 10_000;
const TELEPORT_TRIALS: u64 = 1000;

fn load(path: &Path) -> Result<Dfao> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    Dfao::parse(&text).with_context(|| format!("{}", path.display()))
}

fn parse_eps(text: &str) -> Result<BigRational> {
    let eps: BigRational = text
        .parse()
        .map_err(|_| anyhow::anyhow!("eps must be a fraction p/q, got {text:?}"))?;
    if eps <= BigRational::from_integer(0.into()) {
        bail!("eps must be positive, got {text}");
    }
    Ok(eps)
}

fn tokens(list: &str) -> Vec<&str> {
    list.split_whitespace().collect()
}

fn print_report(report: &VerificationReport, period: &BigUint) -> Result<()> {
    match &report.counterexample {
        None => {
            println!("verify: pass ({} indices)", report.checked);
            Ok(())
        }
        Some(x) => bail!(
            "verify: fail, f({x}) != f({x} + {period}) after {} indices",
            report.checked
        ),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Eval { file, x } => {
            println!("{}", load(&file)?.evaluate(&x));
        }
        Command::Prefix { file, count } => {
            let dfao = load(&file)?;
            for token in dfao.prefix(count) {
                println!("{token}");
            }
        }
        Command::Indep { a, b } => {
            if a < 2 || b < 2 {
                bail!("bases must be at least 2");
            }
            match dependence_witness(a, b) {
                None => println!("independent"),
                Some((m, n)) => println!("dependent: {a}^{m} = {b}^{n}"),
            }
        }
        Command::Approx { a, b, eps } => {
            let eps = parse_eps(&eps)?;
            let pair = approx_powers(a, b, &eps, DEFAULT_MAX_TERMS)?;
            println!("m {}", pair.m);
            println!("n {}", pair.n);
            println!("difference {}", pair.difference());
            println!("bound {}", eps * BigRational::from_integer(pair.b_pow().into()));
        }
        Command::Extend { file, max_digit } => {
            let dfao = load(&file)?;
            let digits = DigitSet::new(dfao.base(), max_digit)?;
            print!("{}", extend_digits(&dfao, digits, DEFAULT_MAX_STATES)?);
        }
        Command::Reverse { file } => {
            print!("{}", load(&file)?.reverse_reading(DEFAULT_MAX_STATES)?);
        }
        Command::Mkperiodic { base, pre, per } => {
            print!("{}", build_periodic_dfao(&tokens(&pre), &tokens(&per), base)?);
        }
        Command::Extract {
            a,
            b,
            verify,
            samples,
            seed,
            witness_cap,
            o,
        } => {
            let (dfao_a, dfao_b) = (load(&a)?, load(&b)?);
            let mut config = ExtractConfig::default();
            if let Some(cap) = witness_cap {
                config.witness_cap = cap;
            }
            let cert = extract(&dfao_a, &dfao_b, &config)?;
            let trace = &cert.trace;
            println!("threshold {}", cert.threshold);
            println!("period {}", cert.period);
            let s_inf: Vec<String> = trace.s_infinity.iter().map(usize::to_string).collect();
            println!("s_infinity {}", s_inf.join(" "));
            println!("xi {}", trace.xi);
            println!("eps {}", trace.eps);
            println!("approx {} {}", trace.approx.m, trace.approx.n);
            println!("x_start {}", trace.x_start);
            if let Some(path) = o {
                fs::write(&path, cert.to_string())
                    .with_context(|| format!("cannot write {}", path.display()))?;
            }
            if let Some(window) = verify {
                print_report(
                    &verify_certificate(&dfao_b, &cert, window, samples, seed),
                    &cert.period,
                )?;
            }
        }
        Command::Verify {
            dfao,
            cert,
            window,
            samples,
            seed,
        } => {
            let dfao = load(&dfao)?;
            let text = fs::read_to_string(&cert)
                .with_context(|| format!("cannot read {}", cert.display()))?;
            let cert: PeriodCertificate =
                text.parse().with_context(|| format!("{}", cert.display()))?;
            println!("threshold {}", cert.threshold);
            println!("period {}", cert.period);
            print_report(
                &verify_certificate(&dfao, &cert, window, samples, seed),
                &cert.period,
            )?;
        }
        Command::Teleport { dfao, x, y, n } => {
            let mut dfao = load(&dfao)?;
            let window = DigitSet::extended(dfao.base())?;
            if dfao.max_digit() < window.max_digit() {
                dfao = extend_digits(&dfao, window, DEFAULT_MAX_STATES)?;
            }
            let s = dfao.canonical_state(&x);
            let size = BigUint::from(dfao.base()).pow(n) * 2u32 + 1u32;
            let holds = if size <= BigUint::from(EXHAUSTIVE_WINDOW) {
                teleport_check_exhaustive(&dfao, s, &x, &y, n)?
            } else {
                teleport_check(&dfao, s, &x, &y, n, TELEPORT_TRIALS, 0)?
            };
            if !holds {
                bail!("teleport identity fails for x = {x}, y = {y}, n = {n}");
            }
            println!("teleport: pass (state {s})");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
