use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use neron_core::io::{
    format_poly, format_vector, is_presentation, parse_base_vector, parse_presentation, parse_problem,
    render_presentation, ParseError,
};
use neron_core::lifting::{default_truncation, lift_solution, parametrize_solutions, residual, LiftOutcome};
use neron_core::neron::{check_input, desingularize, verify_presentation, NeronError, Witness, NOT_WELL_CHOSEN};
use neron_core::{Presentation, Rational, Universe};

#[derive(Parser, Debug)]
#[command(name = "neron", version, about = "Uniform Néron desingularization over k[x]_(x)/J")]
struct Cli {
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Report intermediate data on stderr.
    #[arg(long, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the preliminary checks on a problem file.
    Check { file: PathBuf },
    /// Build and certify the smooth presentation.
    Desingularize { file: PathBuf },
    /// Re-check the certificates of a rendered presentation or a problem.
    Verify { file: PathBuf },
    /// Lift the approximate solution to a solution modulo (x)^D.
    Lift {
        file: PathBuf,
        #[arg(long)]
        trunc: Option<u32>,
    },
    /// The solution attached to values z of the free T block.
    Parametrize {
        file: PathBuf,
        /// Bracketed vector in the base variables, e.g. "[x^3]".
        #[arg(long)]
        z: String,
        #[arg(long)]
        trunc: Option<u32>,
    },
    /// Print (2e+1)k + c.
    Precision {
        #[arg(short = 'e')]
        e: u32,
        #[arg(short = 'k')]
        k: u32,
        #[arg(short = 'c')]
        c: u32,
    },
}

enum Failure {
    Usage(String),
    Rejected(String),
    Other(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn witness_text(w: &Witness<Rational>, u: &Universe) -> String {
    match w {
        Witness::Monomial(m) => format!(
            "monomial {} is not in the ideal",
            format_poly(&neron_core::Poly::term(neron_core::rational(1, 1), m.clone()), u)
        ),
        Witness::NormalForm { generator, remainder } => {
            format!("generator {} leaves remainder {}", generator + 1, format_poly(remainder, u))
        }
    }
}

fn rejection(err: NeronError<Rational>, u: &Universe) -> Failure {
    match err {
        NeronError::NotWellChosen(report) => {
            let mut msg = NOT_WELL_CHOSEN.to_string();
            if report.d_is_zero {
                msg.push_str("\nd = 0 in A");
            }
            for c in report.failures() {
                let _ = write!(msg, "\nfailed: {}", c.kind.label());
                if let Some(w) = &c.witness {
                    let _ = write!(msg, " ({})", witness_text(w, u));
                }
            }
            Failure::Rejected(msg)
        }
        other => Failure::Other(other.to_string()),
    }
}

/// A presentation from either file kind, plus the truncation order the file requests.
fn load(path: &Path) -> Result<(Presentation, Option<u32>), Failure> {
    let text = read(path)?;
    if is_presentation(&text) {
        return Ok((parse_presentation(&text)?, None));
    }
    let pf = parse_problem(&text)?;
    let input = pf.to_input()?;
    let pres = desingularize(&input).map_err(|e| rejection(e, input.universe()))?;
    Ok((pres, pf.trunc))
}

fn lift_text(p: &Presentation, out: &LiftOutcome<Rational>, d: u32) -> String {
    let u = p.universe();
    format!(
        "D = {d};\nT = {};\ny = {};\nresidual = {};\n",
        format_vector(out.t.entries(), u),
        format_vector(out.y.entries(), u),
        residual(&p.generators, &out.y)
    )
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Check { file } => {
            let pf = parse_problem(&read(file)?)?;
            let input = pf.to_input()?;
            let u = input.universe();
            let report = check_input(&input).map_err(|e| Failure::Other(e.to_string()))?;
            let mut out = format!("d = {};\ne = {};\n", format_poly(&report.d, u), report.e);
            for c in &report.conditions {
                let _ = writeln!(out, "# {}: {}", c.kind.label(), if c.passed { "ok" } else { "failed" });
            }
            if report.passed() {
                Ok(out)
            } else {
                if cli.verbose {
                    eprint!("{out}");
                }
                Err(rejection(NeronError::NotWellChosen(Box::new(report)), u))
            }
        }
        Command::Desingularize { file } => {
            let (pres, _) = load(file)?;
            let report = verify_presentation(&pres);
            if cli.verbose {
                eprint!("{report}");
                for w in &pres.warnings {
                    eprintln!("warning: {w}");
                }
            }
            Ok(render_presentation(&pres, Some(&report)))
        }
        Command::Verify { file } => {
            let (pres, _) = load(file)?;
            let report = verify_presentation(&pres);
            let text = report.to_string();
            if report.passed() {
                Ok(text)
            } else {
                Err(Failure::Other(format!("{text}verification failed")))
            }
        }
        Command::Lift { file, trunc } => {
            let (pres, file_d) = load(file)?;
            let d = trunc.or(file_d).unwrap_or_else(|| default_truncation(pres.e, pres.k, pres.c));
            let out = lift_solution(&pres, d).map_err(|e| Failure::Other(e.to_string()))?;
            if cli.verbose {
                eprintln!("residual orders: {:?}", out.trace);
            }
            Ok(lift_text(&pres, &out, d))
        }
        Command::Parametrize { file, z, trunc } => {
            let (pres, file_d) = load(file)?;
            let z = parse_base_vector(z, pres.universe())?;
            let d = trunc.or(file_d).unwrap_or_else(|| default_truncation(pres.e, pres.k, pres.c));
            let out = parametrize_solutions(&pres, &z, d).map_err(|e| Failure::Other(e.to_string()))?;
            if cli.verbose {
                eprintln!("residual orders: {:?}", out.trace);
            }
            Ok(lift_text(&pres, &out, d))
        }
        Command::Precision { e, k, c } => Ok(format!("{}\n", neron_core::neron::required_precision(*e, *k, *c))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(text) => match &cli.out {
            Some(path) => match std::fs::write(path, text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("{}: {e}", path.display());
                    ExitCode::from(1)
                }
            },
            None => {
                print!("{text}");
                ExitCode::SUCCESS
            }
        },
        Err(Failure::Rejected(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(msg)) | Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
