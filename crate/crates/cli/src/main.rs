use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qinstanton::cache::{self, Cache};
use qinstanton::commands::{
    exit, CliError, Command, PairingSubject, DEFAULT_K, DEFAULT_MAX_N, DEFAULT_Q0, DEFAULT_TOL,
};
use qinstanton::output::to_text;
use qinstanton_core::fredholm::DEFAULT_RESOLUTION;
use qinstanton_core::QMode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Instanton idempotents over the quantum 4-sphere.
#[derive(Parser, Debug)]
#[command(name = "qinstanton", version)]
struct Cli {
    /// Output format for report commands.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Render generators as α, α*, β, β* with superscript exponents.
    #[arg(long, global = true)]
    unicode: bool,

    /// Bypass the result cache even when QINSTANTON_CACHE is set.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Normal form of an expression in a, A, b, B, q and rationals.
    Nf {
        /// For example `a b - q b a`.
        expr: String,
    },
    /// The idempotent p_n over the quantum 4-sphere.
    Pn {
        #[arg(short = 'n', allow_hyphen_values = true)]
        n: i64,
        /// `generic` or an exact rational `p/r`.
        #[arg(long, default_value = "generic")]
        q: String,
        /// Verify the idempotent and report each check.
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: u32,
    },
    /// Odd Chern pairing of U, U^n or V with the Fredholm module.
    Pairing {
        #[arg(long, default_value = "U", allow_hyphen_values = true)]
        u: String,
        #[arg(long, default_value_t = DEFAULT_K)]
        k: u32,
        #[arg(long, default_value_t = DEFAULT_Q0)]
        q0: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Cutoff in the m index; derived from --tol when omitted.
        #[arg(long = "m")]
        m: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: u32,
    },
    /// Degree of x ↦ x^n on SU(2) by quadrature.
    Winding {
        #[arg(short = 'n', allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = DEFAULT_RESOLUTION)]
        resolution: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: u32,
    },
    /// Seeded property suite for the Hopf *-algebra axioms.
    HopfCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

fn build(cli: &Cli) -> Result<Command, CliError> {
    Ok(match &cli.command {
        Cmd::Nf { expr } => Command::Nf {
            expr: expr.clone(),
            unicode: cli.unicode,
        },
        Cmd::Pn { n, q, check, max_n } => Command::Pn {
            n: *n,
            q: q.parse::<QMode>()
                .map_err(|e| CliError::Usage(format!("--q: {e}")))?,
            check: *check,
            max_n: *max_n,
            unicode: cli.unicode,
        },
        Cmd::Pairing {
            u,
            k,
            q0,
            tol,
            m,
            max_n,
        } => Command::Pairing {
            u: u.parse::<PairingSubject>()?,
            k: *k,
            q0: *q0,
            tol: *tol,
            m: *m,
            max_n: *max_n,
        },
        Cmd::Winding {
            n,
            resolution,
            max_n,
        } => Command::Winding {
            n: *n,
            resolution: *resolution,
            max_n: *max_n,
        },
        Cmd::HopfCheck { seed, cases } => Command::HopfCheck {
            seed: *seed,
            cases: *cases,
        },
    })
}

/// Cached result if present, otherwise a fresh run that is then stored.
fn execute(cmd: &Command, use_cache: bool) -> Result<(String, bool), CliError> {
    let cache = if use_cache {
        Cache::from_env().unwrap_or_else(|e| {
            eprintln!("warning: cache unavailable: {e}");
            None
        })
    } else {
        None
    };
    let slot = cache
        .as_ref()
        .zip(cmd.cache_params())
        .map(|(c, p)| (c, cache::key(cmd.name(), &p)));
    if let Some((c, key)) = &slot {
        match c.get(key) {
            Ok(Some(hit)) => return Ok((hit.value, hit.passed)),
            Ok(None) => {}
            Err(e) => eprintln!("warning: cache read failed: {e}"),
        }
    }
    let out = cmd.run()?;
    if let Some((c, key)) = &slot {
        if let Err(e) = c.put(key, &out.body, out.passed) {
            eprintln!("warning: cache write failed: {e}");
        }
    }
    Ok((out.body, out.passed))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = build(&cli).and_then(|cmd| {
        let plain = matches!(cmd, Command::Nf { .. });
        execute(&cmd, !cli.no_cache).map(|(body, passed)| (body, passed, plain))
    });
    match result {
        Ok((body, passed, plain)) => {
            let text = if cli.format == Format::Text && !plain {
                to_text(&body)
            } else {
                body
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).is_err() {
                return ExitCode::from(exit::USAGE);
            }
            ExitCode::from(if passed { exit::OK } else { exit::CHECK_FAILED })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
