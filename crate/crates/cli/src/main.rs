use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use winf_cli::cache::Cache;
use winf_cli::commands::{self, CommandError, Format, Outcome, Suite};
use winf_core::Error;

#[derive(Parser, Debug)]
#[command(name = "winf", version, about = "Exact computations in W(1+∞) at negative central charge")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text, global = true)]
    format: FormatArg,
    /// Bypass the result cache.
    #[arg(long, global = true)]
    no_cache: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Identities,
    Parabolic,
    Weyl,
    Lw,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate an expression to a state, e.g. `(circ 1 (J 0) (J 0))`.
    Ope {
        /// `current:c`, `betagamma:n` or `bc:n`.
        #[arg(long)]
        system: String,
        #[arg(long)]
        expr: String,
    },
    /// Singular vectors of the vacuum module at central charge -n.
    Singular {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        weight: i64,
    },
    /// The ideal element lifting the determinant d_{I,J}.
    Dij {
        #[arg(long)]
        n: u32,
        #[arg(long = "I")]
        i: String,
        #[arg(long = "J")]
        j: String,
    },
    /// The remainder of the minimal ideal element.
    Remainder {
        #[arg(long)]
        n: u32,
    },
    /// The decoupling relation, optionally raised to higher generators.
    Decouple {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        raise_to: Option<u32>,
    },
    /// Zhu-algebra leading term of the minimal ideal element, or the relation
    /// cutting out the associated variety.
    Zhu {
        #[arg(long)]
        n: u32,
        #[arg(long, conflicts_with = "relation", required_unless_present = "relation")]
        lt: bool,
        #[arg(long)]
        relation: bool,
    },
    /// Run a seeded verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

impl Command {
    /// Canonical request line; the cache key is its hash.
    fn canonical(&self, format: Format) -> Option<String> {
        let f = match format {
            Format::Text => "text",
            Format::Json => "json",
        };
        let body = match self {
            Command::Ope { .. } | Command::Verify { .. } => return None,
            Command::Singular { n, weight } => format!("singular n={n} weight={weight}"),
            Command::Dij { n, i, j } => format!("dij n={n} I={} J={}", canon_list(i), canon_list(j)),
            Command::Remainder { n } => format!("remainder n={n}"),
            Command::Decouple { n, raise_to } => format!("decouple n={n} raise_to={raise_to:?}"),
            Command::Zhu { n, relation, .. } => format!("zhu n={n} relation={relation}"),
        };
        Some(format!("v1 {body} format={f}"))
    }

    fn run(&self, format: Format) -> Result<Outcome, CommandError> {
        match self {
            Command::Ope { system, expr } => commands::ope(system, expr, format),
            Command::Singular { n, weight } => commands::singular(*n, *weight, format),
            Command::Dij { n, i, j } => commands::dij(*n, i, j, format),
            Command::Remainder { n } => commands::remainder_cmd(*n, format),
            Command::Decouple { n, raise_to } => commands::decouple(*n, *raise_to, format),
            Command::Zhu { n, relation, .. } => commands::zhu(*n, *relation, format),
            Command::Verify { suite, seed, cases } => {
                let suite = match suite {
                    SuiteArg::Identities => Suite::Identities,
                    SuiteArg::Parabolic => Suite::Parabolic,
                    SuiteArg::Weyl => Suite::Weyl,
                    SuiteArg::Lw => Suite::Lw,
                };
                commands::verify(suite, *seed, *cases, format)
            }
        }
    }
}

fn canon_list(s: &str) -> String {
    s.split(',').map(|x| x.trim()).collect::<Vec<_>>().join(",")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let cache = Cache::from_env();
    let key = if cli.no_cache { None } else { cli.command.canonical(format) };
    if let Some(out) = key.as_deref().and_then(|k| cache.get(k)) {
        print!("{out}");
        return ExitCode::SUCCESS;
    }
    match cli.command.run(format) {
        Ok(Outcome { output, ok }) => {
            print!("{output}");
            if !ok {
                return ExitCode::from(1);
            }
            if let Some(k) = key {
                if let Err(e) = cache.put(&k, &output) {
                    eprintln!("warning: cache write failed: {e}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(CommandError::Engine(e @ (Error::InvalidArgument(_) | Error::BadRational(_)))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(CommandError::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
