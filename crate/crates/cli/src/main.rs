use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(name = "mvkit", version, about = "Verify and classify finite and symbolic MV-algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(clap::Args, Clone, Debug)]
pub struct Options {
    /// Exhaustive enumeration or seeded sampling. Defaults to exhaustive on
    /// finite algebras and sampling otherwise.
    #[arg(long, global = true, value_enum)]
    pub mode: Option<ModeArg>,
    /// Coordinate bound for sampled elements.
    #[arg(long, global = true, default_value_t = 8)]
    pub bound: i64,
    /// Number of sampled tuples.
    #[arg(long, global = true, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Exhaustive,
    Sample,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expectation {
    Surjective,
    Trivial,
    Normal,
    Central,
    InZ,
}

#[derive(Subcommand)]
enum Command {
    /// Check the defining axioms, derived identities and lattice laws.
    CheckAxioms { algebra: PathBuf },
    /// Compute the radical by each of the three methods.
    Radical { algebra: PathBuf },
    /// List the ideals and the maximal ideals.
    Ideals { algebra: PathBuf },
    /// Enumerate homomorphisms between two finite algebras.
    Homs {
        dom: PathBuf,
        cod: PathBuf,
        /// Maximum number of tables to print.
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
    /// Classify a surjection as trivial, normal or central.
    Classify {
        #[arg(long)]
        morphism: PathBuf,
        /// Exit 1 unless the morphism has this property.
        #[arg(long, value_enum)]
        expect: Option<Expectation>,
    },
    /// Factor a morphism as a map in E followed by a map in M.
    Factorize {
        #[arg(long)]
        morphism: PathBuf,
    },
    /// Run the pretorsion checks on an algebra.
    Pretorsion { algebra: PathBuf },
    /// Classify a square of surjections as a double extension.
    SquareClassify { square: PathBuf },
    /// Commutator subalgebra of a morphism or of two ideals.
    Commutator {
        #[arg(long, conflicts_with = "square", required_unless_present = "square")]
        morphism: Option<PathBuf>,
        #[arg(long)]
        square: Option<PathBuf>,
        /// Exit 1 unless the commutator is a trivial object.
        #[arg(long, value_enum)]
        expect: Option<Expectation>,
    },
    /// Check the protomodularity and Pixley identities.
    Terms { algebra: PathBuf },
    /// Unit interval of a unital lexicographic group.
    Gamma { group: PathBuf },
    /// Generate the finite catalog up to a carrier size.
    Catalog {
        #[arg(long, default_value_t = 16)]
        max: usize,
        /// Write one algebra file per entry into this directory.
        #[arg(long)]
        catalog_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let opts = cli.opts.clone();
    let result = match cli.command {
        Command::CheckAxioms { algebra } => commands::check_axioms(&algebra, &opts),
        Command::Radical { algebra } => commands::radical(&algebra),
        Command::Ideals { algebra } => commands::ideals(&algebra),
        Command::Homs { dom, cod, limit } => commands::homs(&dom, &cod, limit),
        Command::Classify { morphism, expect } => commands::classify(&morphism, expect),
        Command::Factorize { morphism } => commands::factorize(&morphism),
        Command::Pretorsion { algebra } => commands::pretorsion(&algebra, &opts),
        Command::SquareClassify { square } => commands::square_classify(&square),
        Command::Commutator { morphism, square, expect } => {
            commands::commutator(morphism.as_deref(), square.as_deref(), expect)
        }
        Command::Terms { algebra } => commands::terms(&algebra, &opts),
        Command::Gamma { group } => commands::gamma(&group, &opts),
        Command::Catalog { max, catalog_dir } => commands::catalog(max, catalog_dir.as_deref()),
    };
    match result {
        Ok(report) => {
            if opts.json {
                println!("{}", serde_json::to_string_pretty(&report.value).expect("reports serialize"));
            } else {
                for line in &report.lines {
                    println!("{line}");
                }
            }
            ExitCode::from(if report.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
