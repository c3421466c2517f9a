use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nilsoliton_core::algebra_file::{parse_algebra_file, print_algebra, AlgebraFile};
use nilsoliton_core::catalog::{get_algebra, AlgebraId};
use nilsoliton_core::curvature::{CurvatureData, Formula};
use nilsoliton_core::golden::GoldenSource;
use nilsoliton_core::liealg::{MetricLieAlgebra, Sample};
use nilsoliton_core::reproduce::{verify_paper, VerifyOptions};
use nilsoliton_core::soliton::{
    numeric_soliton_oracle, numeric_soliton_oracle_f64, obstruction_system, Status,
};
use nilsoliton_core::Error;

mod render;

use render::{entries, matrix_block};

/// Ricci curvature and soliton checks for metric nilpotent Lie algebras.
#[derive(Parser)]
#[command(name = "nilsoliton", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ricci operator and scalar curvature, symbolic or at a sample.
    Ricci {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "k=v,...")]
        sample: Option<String>,
        /// Use the four-term formula, valid beyond the nilpotent case.
        #[arg(long)]
        general: bool,
        #[arg(long)]
        porcelain: bool,
    },
    /// Polynomial conditions for `Ric - (lambda0*s + c) Id` to be a derivation.
    System {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        porcelain: bool,
    },
    /// Soliton decision at a sample. Exit status 0 feasible, 2 infeasible, 1 error.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "k=v,...")]
        sample: Option<String>,
        /// Decide in floating point with tolerance 1e-10.
        #[arg(long)]
        float: bool,
        #[arg(long)]
        porcelain: bool,
    },
    /// Golden comparisons and seeded classification checks for the catalog.
    VerifyPaper {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// On-family and off-family samples per entry; 0 checks goldens only.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Read golden files from this directory instead of the built-in copy.
        #[arg(long, value_name = "DIR")]
        golden_dir: Option<PathBuf>,
        #[arg(long)]
        porcelain: bool,
    },
    /// Print a catalog entry in the definition file format.
    PrintBuiltin { id: AlgebraId },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Catalog entry, e.g. A5_4 or A3_1+2A1.
    #[arg(long, value_name = "ID")]
    builtin: Option<AlgebraId>,
    /// Algebra definition file.
    #[arg(long, value_name = "PATH")]
    file: Option<PathBuf>,
}

impl Source {
    fn load(&self) -> Result<AlgebraFile, Error> {
        match (&self.builtin, &self.file) {
            (Some(id), _) => Ok(AlgebraFile {
                algebra: get_algebra(*id),
                sample: None,
            }),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                    path: path.display().to_string(),
                    message: e.to_string(),
                })?;
                parse_algebra_file(&text)
            }
            (None, None) => unreachable!("clap enforces one source"),
        }
    }
}

/// The `--sample` flag wins over a `sample` block in the file.
fn resolve_sample(file: &AlgebraFile, flag: Option<&str>) -> Result<Option<Sample>, Error> {
    match flag {
        Some(s) => Sample::parse(s).map(Some),
        None => Ok(file.sample.clone()),
    }
}

fn cmd_ricci(
    file: &AlgebraFile,
    sample: Option<Sample>,
    formula: Formula,
    porcelain: bool,
) -> Result<ExitCode, Error> {
    let g = &file.algebra;
    let (matrix, scalar) = match sample {
        None => {
            let data = CurvatureData::compute(g.lie(), formula);
            (entries(&data.ricci_operator, |p| p.pretty()), data.scalar.pretty())
        }
        Some(s) => {
            let lie = g.evaluate(&s)?;
            let data = CurvatureData::compute(&lie, formula);
            (entries(&data.ricci_operator, ToString::to_string), data.scalar.to_string())
        }
    };
    if porcelain {
        for (i, row) in matrix.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                println!("ric {} {} {x}", i + 1, j + 1);
            }
        }
        println!("scalar {scalar}");
    } else {
        println!("Ricci operator of {} in the orthonormal basis v1..v{}:", g.label(), g.dim());
        print!("{}", matrix_block(&matrix));
        println!("scalar curvature: {scalar}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_system(g: &MetricLieAlgebra, porcelain: bool) -> Result<ExitCode, Error> {
    let sys = obstruction_system(g);
    if porcelain {
        println!("generators {}", sys.len());
        for (p, origin) in sys.iter() {
            println!(
                "eq {} {} {} {p}",
                origin.pair.0 + 1,
                origin.pair.1 + 1,
                origin.coordinate + 1
            );
        }
    } else if sys.is_empty() {
        println!("empty system");
    } else {
        println!("{} generators for {}, each = 0:", sys.len(), g.label());
        for (k, (p, origin)) in sys.iter().enumerate() {
            println!("{:>3}. {}    from {origin}", k + 1, p.pretty());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn status_code(status: Status) -> ExitCode {
    match status {
        Status::Feasible => ExitCode::SUCCESS,
        Status::Infeasible => ExitCode::from(2),
    }
}

fn cmd_check(
    g: &MetricLieAlgebra,
    sample: Sample,
    float: bool,
    porcelain: bool,
) -> Result<ExitCode, Error> {
    let (status, mu, d, residual) = if float {
        let v = numeric_soliton_oracle_f64(g, &sample)?;
        let d = v.witness_d.as_ref().map(|d| entries(d, |x| format!("{x:e}")));
        (v.status, format!("{:e}", v.best_mu), d, v.residual_norm)
    } else {
        let v = numeric_soliton_oracle(g, &sample)?;
        let d = v.witness_d.as_ref().map(|d| entries(d, ToString::to_string));
        (v.status, v.best_mu.to_string(), d, v.residual_norm)
    };
    if porcelain {
        println!("status {status}");
        println!("mu {mu}");
        println!("residual {residual:e}");
        if let Some(d) = &d {
            for (i, row) in d.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    println!("d {} {} {x}", i + 1, j + 1);
                }
            }
        }
    } else {
        match status {
            Status::Feasible => {
                println!("feasible: Ric = mu Id + D with D a symmetric derivation");
                println!("mu = {mu}");
                println!("D =");
                print!("{}", matrix_block(d.as_deref().unwrap_or_default()));
            }
            Status::Infeasible => {
                println!("infeasible: Ric - mu Id is not a derivation for any mu");
                println!("closest mu = {mu}");
            }
        }
        println!("residual norm = {residual}");
    }
    Ok(status_code(status))
}

fn cmd_verify_paper(opts: &VerifyOptions, porcelain: bool) -> ExitCode {
    let report = verify_paper(opts);
    for a in &report.assertions {
        println!("{a}");
    }
    if porcelain {
        println!("summary {}", report.summary());
    } else {
        println!();
        let failures = report.failures().count();
        if failures > 0 {
            println!("{failures} assertion(s) failed");
        }
        println!("{}", report.summary());
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Ricci {
            source,
            sample,
            general,
            porcelain,
        } => {
            let file = source.load()?;
            let sample = resolve_sample(&file, sample.as_deref())?;
            let formula = if general {
                Formula::General
            } else {
                Formula::Nilpotent
            };
            cmd_ricci(&file, sample, formula, porcelain)
        }
        Command::System { source, porcelain } => cmd_system(&source.load()?.algebra, porcelain),
        Command::Check {
            source,
            sample,
            float,
            porcelain,
        } => {
            let file = source.load()?;
            let sample = resolve_sample(&file, sample.as_deref())?.unwrap_or_default();
            cmd_check(&file.algebra, sample, float, porcelain)
        }
        Command::VerifyPaper {
            seed,
            samples,
            golden_dir,
            porcelain,
        } => {
            let opts = VerifyOptions {
                seed,
                samples,
                golden: golden_dir.map(GoldenSource::Dir).unwrap_or_default(),
            };
            Ok(cmd_verify_paper(&opts, porcelain))
        }
        Command::PrintBuiltin { id } => {
            print!("{}", print_algebra(&get_algebra(id)));
            Ok(ExitCode::SUCCESS)
        }
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
            return ExitCode::FAILURE;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
