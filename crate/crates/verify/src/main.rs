use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hyperjac::tower::curves::CurveRoots;
use hyperjac_verify::{any_failed, run, RunConfig, Suite, DEFAULT_CAP_ELEMENTS};

#[derive(Parser)]
#[command(
    name = "verify",
    version,
    about = "Run verification suites and print JSON-lines reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run any selection of suites.
    Run {
        /// Suites to run; repeat or comma-separate. No selection runs nothing.
        #[arg(long, value_delimiter = ',', env = "HYPERJAC_SUITE")]
        suite: Vec<Suite>,
        #[command(flatten)]
        params: Params,
    },
    /// Congruence quotients of Γ(2) and their abelianizations.
    #[command(alias = "lemma31")]
    Congruence(Params),
    /// Closed form of the basic commutator over ℤ.
    CommutatorFormula(Params),
    /// Fourth-power transvections modulo the commutator subgroup.
    #[command(alias = "lemma32")]
    Transvections(Params),
    /// Pure-braid monodromy on the homology of the double cover.
    #[command(alias = "prop22")]
    Monodromy(Params),
    /// Equivariant spanning sets and the standard representation.
    #[command(alias = "prop33")]
    SpanningSets(Params),
    /// Kernel of the mod-4 sum map on three letters.
    #[command(alias = "prop34")]
    PhiKernel(Params),
    /// Parity of the γ classes and the even-degree curve isomorphism.
    #[command(aliases = ["thm23-parity", "thm23", "curve-iso"])]
    Parity(Params),
    /// Radical tower generated by the higher radicals.
    #[command(alias = "thm1")]
    Tower(Params),
    /// Eighth-root identities with certified branches.
    #[command(alias = "remark13")]
    EighthRoots(Params),
    /// Coordinates of the 4-torsion of an elliptic curve.
    #[command(alias = "elliptic-4tors")]
    Elliptic(Params),
}

#[derive(Args, Clone)]
struct Params {
    #[arg(long, env = "HYPERJAC_G")]
    g: Option<usize>,
    /// Number of roots.
    #[arg(long, env = "HYPERJAC_D")]
    d: Option<usize>,
    /// Comma-separated distinct rational roots, e.g. 0,1,3 or 1/2,3,-4.
    #[arg(long, env = "HYPERJAC_ROOTS", allow_hyphen_values = true)]
    roots: Option<String>,
    #[arg(long, env = "HYPERJAC_CAP_ELEMENTS", default_value_t = DEFAULT_CAP_ELEMENTS)]
    cap_elements: usize,
    #[arg(long, env = "HYPERJAC_PRECISION_ROUNDS", default_value_t = 10)]
    precision_rounds: u32,
    /// Largest exponent for the commutator closed form.
    #[arg(long, env = "HYPERJAC_MAX", default_value_t = 6)]
    max: u32,
    /// Lower the element cap so the large enumerations are skipped.
    #[arg(long, env = "HYPERJAC_QUICK")]
    quick: bool,
    /// Write reports here instead of stdout.
    #[arg(long, env = "HYPERJAC_OUT")]
    out: Option<PathBuf>,
}

impl Params {
    fn config(&self, suites: Vec<Suite>) -> Result<RunConfig, String> {
        let roots = match &self.roots {
            Some(list) => Some(CurveRoots::parse(list).map_err(|e| e.to_string())?),
            None => None,
        };
        Ok(RunConfig {
            suites,
            g: self.g,
            d: self.d,
            roots,
            cap_elements: self.cap_elements,
            precision_rounds: self.precision_rounds,
            max_exponent: self.max,
            quick: self.quick,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (suites, params) = match cli.command {
        Command::Run { suite, params } => (suite, params),
        Command::Congruence(p) => (vec![Suite::Congruence], p),
        Command::CommutatorFormula(p) => (vec![Suite::CommutatorFormula], p),
        Command::Transvections(p) => (vec![Suite::Transvections], p),
        Command::Monodromy(p) => (vec![Suite::Monodromy], p),
        Command::SpanningSets(p) => (vec![Suite::SpanningSets], p),
        Command::PhiKernel(p) => (vec![Suite::PhiKernel], p),
        Command::Parity(p) => (vec![Suite::Parity], p),
        Command::Tower(p) => (vec![Suite::Tower], p),
        Command::EighthRoots(p) => (vec![Suite::EighthRoots], p),
        Command::Elliptic(p) => (vec![Suite::Elliptic], p),
    };
    let reports = match params
        .config(suites)
        .and_then(|c| run(&c).map_err(|e| e.to_string()))
    {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let sink: Box<dyn Write> = match &params.out {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(f),
            Err(e) => {
                eprintln!("error: cannot open {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = BufWriter::new(sink);
    for r in &reports {
        if writeln!(sink, "{}", r.to_json_line()).is_err() {
            return ExitCode::from(2);
        }
    }
    if sink.flush().is_err() {
        return ExitCode::from(2);
    }
    let failed = reports.iter().filter(|r| r.status.is_fail()).count();
    eprintln!("{} reports, {failed} failed", reports.len());
    if any_failed(&reports) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
