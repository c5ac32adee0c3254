use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use hilbert_core::linalg::LatticeMode;
use hilbert_core::{emit, read_input, run, Algorithm, Error};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum AlgorithmArg {
    Primal,
    Dual,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LatticeArg {
    Ambient,
    Generated,
}

/// Hilbert bases, extreme rays and support hyperplanes of rational cones.
#[derive(Debug, Parser)]
#[command(name = "hilb", version)]
struct Args {
    /// Problem file: row count, column count, rows, then a mode keyword
    /// (generators, hyperplanes or equations).
    input: PathBuf,
    #[arg(long, value_enum, default_value = "primal")]
    algorithm: AlgorithmArg,
    /// Also compute the h-vector and Hilbert polynomial (homogeneous input).
    #[arg(long)]
    hvector: bool,
    /// Lattice for generator input.
    #[arg(long, value_enum, default_value = "ambient")]
    lattice: LatticeArg,
    /// Prefix of the result files; defaults to the input path without its
    /// extension.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Write only the JSON report.
    #[arg(long)]
    json_only: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hilb: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(args: &Args) -> Result<(), Error> {
    let mut problem = read_input(&args.input)?;
    problem.lattice_mode = match args.lattice {
        LatticeArg::Ambient => LatticeMode::AmbientLattice,
        LatticeArg::Generated => LatticeMode::GeneratedLattice,
    };
    problem.options.algorithm = match args.algorithm {
        AlgorithmArg::Primal => Algorithm::Primal,
        AlgorithmArg::Dual => Algorithm::Dual,
    };
    problem.options.compute_hvector = args.hvector;
    let prefix = args
        .output
        .clone()
        .unwrap_or_else(|| args.input.with_extension(""));
    problem.options.output_prefix = Some(prefix.clone());

    let report = run(&problem)?;
    let files = emit(&report, &prefix, args.json_only)?;

    println!(
        "dim {}  extreme rays {}  support hyperplanes {}  Hilbert basis {}",
        report.dim,
        report.extreme_rays.len(),
        report.support_hyperplanes.len(),
        report.hilbert_basis.len()
    );
    if !report.pointed {
        println!("cone is not pointed; unit group rank {}", report.unit_basis.len());
    }
    if let Some(t) = &report.triangulation {
        println!("triangulation: {} cells, multiplicity {}", t.cells, t.total_multiplicity);
    }
    if let Some(h) = &report.h_vector {
        let row: Vec<String> = h.coefficients.iter().map(ToString::to_string).collect();
        println!("h-vector: {}", row.join(" "));
    } else if let Some(note) = &report.h_vector_note {
        println!("h-vector unavailable: {note}");
    }
    for (phase, t) in &report.timings {
        eprintln!("{phase}: {:.3} s", t.as_secs_f64());
    }
    for f in files {
        eprintln!("wrote {}", f.display());
    }
    Ok(())
}
