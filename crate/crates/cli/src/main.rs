use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use eta_cli::commands::{self, Outcome, ProveOptions, EXIT_INPUT};
use eta_core::DEFAULT_MARGIN;

/// Proves identities among Dedekind eta-products with the valence formula.
#[derive(Parser)]
#[command(name = "etaprove", version)]
struct Cli {
    /// Print only the verdict line.
    #[arg(long, global = true)]
    quiet: bool,
    /// Write a machine-readable certificate to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prove `lhs = rhs` (or `expr = 0`) on Gamma0(N). FILE may be `-` for stdin.
    Prove {
        file: String,
        #[arg(long)]
        level: u64,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: u32,
        /// Expand and check coefficients; without it only the bound is reported.
        #[arg(long)]
        yes: bool,
    },
    /// Prove `U(p) g = rhs` on Gamma0(N). FILE may be `-` for stdin.
    ProveUp {
        file: String,
        #[arg(long)]
        level: u64,
        #[arg(long, default_value_t = DEFAULT_MARGIN)]
        margin: u32,
        #[arg(long)]
        yes: bool,
    },
    /// Print the ORD table and the bound of an identity file.
    Orders {
        file: String,
        #[arg(long)]
        level: u64,
    },
    /// Expand an expression as a q-series.
    Expand {
        expr: String,
        #[arg(long, default_value_t = 20)]
        depth: i64,
        /// Omit the q^(t r / 24) prefactors.
        #[arg(long)]
        no_prefactor: bool,
    },
    /// Recognize the expansion of an expression as an eta-product.
    Factor {
        expr: String,
        #[arg(long, default_value_t = 100)]
        depth: i64,
        /// Apply U_p before recognizing.
        #[arg(long, value_name = "P")]
        up: Option<u64>,
    },
    /// List the inequivalent cusps of Gamma0(N).
    Cusps { n: u64 },
    /// Test whether an eta-product is a modular function on Gamma0(N).
    Check {
        expr: String,
        n: u64,
        #[arg(long)]
        verbose: bool,
    },
    /// Weight and character of an eta-product viewed as a modular form on Gamma0(N).
    Formcheck { expr: String, n: u64 },
}

fn read_input(file: &str) -> io::Result<String> {
    if file == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(file)
    }
}

fn run(cli: Cli) -> Outcome {
    let quiet = cli.quiet;
    let with_file = |file: &str, f: &dyn Fn(&str) -> Outcome| match read_input(file) {
        Ok(text) => f(&text),
        Err(e) => Outcome { code: EXIT_INPUT, stderr: format!("error: cannot read {file}: {e}\n"), ..Default::default() },
    };
    match cli.command {
        Command::Prove { file, level, margin, yes } => {
            with_file(&file, &|t| commands::prove(t, ProveOptions { level, margin, yes, quiet }))
        }
        Command::ProveUp { file, level, margin, yes } => {
            with_file(&file, &|t| commands::prove_up(t, ProveOptions { level, margin, yes, quiet }))
        }
        Command::Orders { file, level } => with_file(&file, &|t| commands::orders(t, level)),
        Command::Expand { expr, depth, no_prefactor } => commands::expand(&expr, depth, no_prefactor),
        Command::Factor { expr, depth, up } => commands::factor(&expr, depth, up),
        Command::Cusps { n } => commands::cusps(n),
        Command::Check { expr, n, verbose } => commands::check(&expr, n, verbose),
        Command::Formcheck { expr, n } => commands::formcheck(&expr, n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT as u8 } else { 0 });
        }
    };
    let json = cli.json.clone();
    let mut outcome = run(cli);
    if let Some(path) = json {
        if let Err(e) = std::fs::write(&path, &outcome.certificate) {
            outcome.stderr.push_str(&format!("error: cannot write {}: {e}\n", path.display()));
            outcome.code = EXIT_INPUT;
        }
    }
    print!("{}", outcome.stdout);
    let _ = io::stdout().flush();
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
