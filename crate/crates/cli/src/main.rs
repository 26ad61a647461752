mod render;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyalg::report::{level_diagram, spectrum_report, structure_report, verify, VerifySettings};
use polyalg::scalar::parse_rational;
use polyalg::{make_system, Rational, SystemKind, SystemSpec};

#[derive(Parser)]
#[command(name = "polyalg", version, about = "Polynomial ladder algebras of 2D oscillators")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    format: Format,
    /// Write output to FILE instead of stdout.
    #[arg(long, value_name = "FILE", global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Aniso,
    Sw,
}

#[derive(Args)]
struct SystemArgs {
    #[arg(long, value_enum)]
    system: Kind,
    #[arg(long)]
    l1: i64,
    #[arg(long)]
    l2: i64,
    /// Barrier strength as p/q.
    #[arg(long, value_parser = parse_exact, allow_hyphen_values = true)]
    kappa: Option<Rational>,
}

#[derive(Subcommand)]
enum Command {
    /// Structure function, commutator polynomial and Casimir split.
    Structure(SystemArgs),
    /// Energy families and assembled levels.
    Spectrum {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_parser = parse_exact, default_value = "40")]
        emax: Rational,
    },
    /// Full check suite; exits 1 if any check fails.
    Verify {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, default_value_t = 40)]
        ncut: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_parser = parse_exact, default_value = "40")]
        emax: Rational,
    },
    /// Occupation-lattice level diagram.
    Diagram {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_parser = parse_exact, default_value = "40")]
        emax: Rational,
    },
}

fn parse_exact(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

fn usage_error(message: &str) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(2)
}

fn build_system(args: &SystemArgs) -> polyalg::Result<SystemSpec> {
    let kind = match args.system {
        Kind::Aniso => SystemKind::Anisotropic,
        Kind::Sw => SystemKind::SWDeformed,
    };
    make_system(kind, args.l1, args.l2, args.kappa.clone())
}

fn emit(cli: &Cli, text: &str) -> Result<(), String> {
    match &cli.out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let sys_args = match &cli.command {
        Command::Structure(s) => s,
        Command::Spectrum { sys, .. } | Command::Verify { sys, .. } | Command::Diagram { sys, .. } => sys,
    };
    let sys = match build_system(sys_args) {
        Ok(sys) => sys,
        Err(e) => return usage_error(&e.to_string()),
    };
    if let Command::Verify { tol, .. } = &cli.command {
        if !(tol.is_finite() && *tol > 0.0) {
            return usage_error("--tol must be a positive number");
        }
    }

    let mut failed = false;
    let rendered = match &cli.command {
        Command::Structure(_) => Ok(render::structure(&structure_report(&sys), cli.format)),
        Command::Spectrum { emax, .. } => spectrum_report(&sys, emax).map(|r| render::spectrum(&r, cli.format)),
        Command::Diagram { emax, .. } => level_diagram(&sys, emax).map(|r| render::diagram(&r, cli.format)),
        Command::Verify { ncut, tol, emax, .. } => {
            let settings = VerifySettings {
                ncut: *ncut,
                tol: *tol,
                emax: emax.clone(),
            };
            verify(&sys, &settings).map(|r| {
                failed = !r.pass;
                render::verification(&r, cli.format)
            })
        }
    };
    let text = match rendered {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit(&cli, &text) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
