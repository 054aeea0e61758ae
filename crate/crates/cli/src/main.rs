//! `latcodes`: Krawtchouk tables, support validation, MacWilliams transforms,
//! optimality reports and constrained matrix counts, all in exact arithmetic.
//!
//! Exit codes: 0 ok, 1 usage/input error, 2 support axiom violation,
//! 3 lattice irregularity, 4 arithmetic inconsistency.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use lattice_codes::descriptor::{
    ConstraintDescriptor, DescriptorError, MatrixCountResponse, SupportDescriptor, SupportKind,
    SupportParams,
};
use lattice_codes::group::Code;
use lattice_codes::macwilliams::{
    self, dual_optimality_check, dual_table, is_optimal, krawtchouk_oracle,
    krawtchouk_oracle_primal, optimal_distribution, primal_table, singleton_defect, transform,
    KrawtchoukTable, MacWilliamsError,
};
use lattice_codes::matrix_enum::{self, ConstraintSpec, MatrixEnumError};
use lattice_codes::support::{RegularSupport, SupportError, LEE_CLASS_PERMUTATION};

const EXIT_USAGE: u8 = 1;
const EXIT_AXIOM: u8 = 2;
const EXIT_LATTICE: u8 = 3;
const EXIT_ARITHMETIC: u8 = 4;

#[derive(Debug)]
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn arithmetic(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_ARITHMETIC,
            message: message.into(),
        }
    }
}

impl From<DescriptorError> for CliError {
    fn from(e: DescriptorError) -> Self {
        let code = match &e {
            DescriptorError::Support(SupportError::Violation(_)) => EXIT_AXIOM,
            DescriptorError::Support(SupportError::Lattice(_)) | DescriptorError::Lattice(_) => {
                EXIT_LATTICE
            }
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<MacWilliamsError> for CliError {
    fn from(e: MacWilliamsError) -> Self {
        let code = match &e {
            MacWilliamsError::InconsistentTransform(..)
            | MacWilliamsError::InconsistentSolution(..)
            | MacWilliamsError::OracleNotInteger { .. }
            | MacWilliamsError::RepresentativeDependence { .. }
            | MacWilliamsError::Incompatible(_) => EXIT_ARITHMETIC,
            MacWilliamsError::Support(SupportError::Violation(_)) => EXIT_AXIOM,
            MacWilliamsError::Support(SupportError::Lattice(_)) => EXIT_LATTICE,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<MatrixEnumError> for CliError {
    fn from(e: MatrixEnumError) -> Self {
        let code = match &e {
            MatrixEnumError::NonIntegerCount(_)
            | MatrixEnumError::InconsistentTransform(..)
            | MatrixEnumError::IdentityFailure { .. } => EXIT_ARITHMETIC,
            _ => EXIT_USAGE,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(name = "latcodes", about = "Exact duality computations for additive codes on regular lattices", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Krawtchouk table of a support
    Krawtchouk(KrawtchoukArgs),
    /// Validate a support axiom by axiom
    VerifySupport(SupportArgs),
    /// Apply the MacWilliams transform to a weight distribution
    Transform(TransformArgs),
    /// Count fixed-rank matrices under a linear constraint
    CountMatrices(CountArgs),
    /// Report Singleton defect, optimality and the dual-code checks
    Optimal(OptimalArgs),
}

/// Flags that select a support, either a builtin by parameters or any
/// support from a JSON descriptor file.
#[derive(Args)]
struct SupportArgs {
    /// Builtin kind: hamming | rank | chain | lee4 | homogeneous
    #[arg(long)]
    support: Option<String>,
    /// Cyclic orders of the base group, comma separated (hamming, chain)
    #[arg(long)]
    group: Option<String>,
    /// Number of coordinates (hamming, homogeneous)
    #[arg(long)]
    n: Option<usize>,
    /// Field size (rank)
    #[arg(long)]
    q: Option<u64>,
    /// Number of matrix rows (rank)
    #[arg(long)]
    k: Option<usize>,
    /// Number of matrix columns (rank)
    #[arg(long)]
    m: Option<usize>,
    /// Odd prime (homogeneous)
    #[arg(long)]
    p: Option<u64>,
    /// Chain subgroups as generator lists, e.g. ";4;2;1" for Z_8
    #[arg(long)]
    chain: Option<String>,
    /// JSON support descriptor file (overrides the flags above)
    #[arg(long)]
    descriptor: Option<PathBuf>,
}

impl SupportArgs {
    fn descriptor(&self) -> Result<SupportDescriptor, CliError> {
        if let Some(path) = &self.descriptor {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            return serde_json::from_str(&text)
                .map_err(|e| CliError::usage(format!("invalid descriptor: {e}")));
        }
        let kind = match self.support.as_deref() {
            Some("hamming") => SupportKind::Hamming,
            Some("rank") => SupportKind::Rank,
            Some("chain") => SupportKind::Chain,
            Some("lee4") => SupportKind::Lee4,
            Some("homogeneous") => SupportKind::Homogeneous,
            Some(other) => {
                return Err(CliError::usage(format!("unknown support kind `{other}`")))
            }
            None => return Err(CliError::usage("pass --support or --descriptor")),
        };
        let group = self
            .group
            .as_deref()
            .map(parse_u64_list)
            .transpose()?;
        let chain = self
            .chain
            .as_deref()
            .map(|spec| {
                spec.split(';')
                    .map(|gens| {
                        gens.split(',')
                            .filter(|s| !s.is_empty())
                            .map(|g| {
                                parse_u64_list(g).map(|coords| coords)
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        Ok(SupportDescriptor {
            kind,
            params: SupportParams {
                group,
                n: self.n,
                q: self.q,
                k: self.k,
                m: self.m,
                p: self.p,
                chain,
                lattice: None,
            },
            sigma: None,
        })
    }

    fn resolve(&self) -> Result<RegularSupport, CliError> {
        Ok(self.descriptor()?.resolve()?)
    }
}

fn parse_u64_list(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|e| CliError::usage(format!("invalid number `{part}`: {e}")))
        })
        .collect()
}

#[derive(Args)]
struct KrawtchoukArgs {
    #[command(flatten)]
    support: SupportArgs,
    /// Cross-check both formula tables against the character-sum oracle
    #[arg(long)]
    verify: bool,
    /// Output format: tsv | json
    #[arg(long, default_value = "tsv")]
    format: String,
}

#[derive(Args)]
struct TransformArgs {
    #[command(flatten)]
    support: SupportArgs,
    /// Weight distribution of the code, comma separated
    #[arg(long)]
    counts: String,
    /// Cardinality of the code
    #[arg(long)]
    code_size: u64,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    m: usize,
    /// Rank of the matrices to count
    #[arg(long)]
    rank: usize,
    /// Constraint as JSON, e.g. {"kind":"zero_block","rows":1,"cols":1}
    #[arg(long, default_value = r#"{"kind":"none"}"#)]
    constraint: String,
    /// Use the exhaustive enumeration oracle instead of the closed form
    #[arg(long)]
    brute_force: bool,
}

#[derive(Args)]
struct OptimalArgs {
    #[command(flatten)]
    support: SupportArgs,
    /// Code generators, elements separated by ';', coordinates by ','
    #[arg(long)]
    generators: String,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Krawtchouk(args) => cmd_krawtchouk(args),
        Command::VerifySupport(args) => cmd_verify_support(args),
        Command::Transform(args) => cmd_transform(args),
        Command::CountMatrices(args) => cmd_count_matrices(args),
        Command::Optimal(args) => cmd_optimal(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

/// The table shown for a support; the builtin Lee support is presented in
/// Lee-weight labels.
fn display_table(support: &RegularSupport, descriptor: &SupportDescriptor) -> KrawtchoukTable {
    let table = primal_table(support);
    if descriptor.kind == SupportKind::Lee4 {
        macwilliams::permute_table(&table, &LEE_CLASS_PERMUTATION)
    } else {
        table
    }
}

fn cmd_krawtchouk(args: KrawtchoukArgs) -> Result<(), CliError> {
    let descriptor = args.support.descriptor()?;
    let support = descriptor.resolve()?;
    if args.verify {
        let dual = support.dual();
        let primal = primal_table(&support);
        let dualt = dual_table(&support);
        let r = support.r();
        for i in 0..=r {
            for j in 0..=r {
                let oracle = krawtchouk_oracle_primal(&support, &dual, i, j)?;
                if primal.entries[i][j] != oracle {
                    return Err(CliError::arithmetic(format!(
                        "formula/oracle mismatch at ({i}, {j}): {} vs {oracle}",
                        primal.entries[i][j]
                    )));
                }
                let oracle = krawtchouk_oracle(&support, &dual, i, j)?;
                if dualt.entries[i][j] != oracle {
                    return Err(CliError::arithmetic(format!(
                        "dual formula/oracle mismatch at ({i}, {j}): {} vs {oracle}",
                        dualt.entries[i][j]
                    )));
                }
            }
        }
    }
    let table = display_table(&support, &descriptor);
    match args.format.as_str() {
        "tsv" => {
            let r = table.entries.len() - 1;
            let header: Vec<String> = (0..=r).map(|j| j.to_string()).collect();
            println!("i\\j\t{}", header.join("\t"));
            for (i, row) in table.entries.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                println!("{i}\t{}", cells.join("\t"));
            }
        }
        "json" => {
            let rows: Vec<Vec<String>> = table
                .entries
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect();
            println!("{}", serde_json::to_string(&rows).expect("serializable"));
        }
        other => return Err(CliError::usage(format!("unknown format `{other}`"))),
    }
    Ok(())
}

fn cmd_verify_support(args: SupportArgs) -> Result<(), CliError> {
    let descriptor = args.descriptor()?;
    match descriptor.resolve() {
        Ok(support) => {
            println!("lattice: regular, rank {}", support.r());
            println!("axiom A (zero kernel): ok");
            println!("axiom B (symmetry): ok");
            println!("axiom C (subadditivity): ok");
            println!("axiom D (ball sums): ok");
            println!("axiom E (rank-uniform ball sizes): ok");
            let gamma: Vec<String> = support.gamma().iter().map(u64::to_string).collect();
            println!("gamma: {}", gamma.join(","));
            Ok(())
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_transform(args: TransformArgs) -> Result<(), CliError> {
    let support = args.support.resolve()?;
    let counts = parse_u64_list(&args.counts)?;
    if counts.len() != support.r() + 1 {
        return Err(CliError::usage(format!(
            "expected {} counts, got {}",
            support.r() + 1,
            counts.len()
        )));
    }
    if args.code_size == 0 {
        return Err(CliError::usage("code size must be positive"));
    }
    let w = lattice_codes::WeightDistribution { counts };
    let dual_w = transform(&w, &dual_table(&support), args.code_size)?;
    println!(
        "{}",
        serde_json::json!({ "counts": dual_w.counts })
    );
    Ok(())
}

fn cmd_count_matrices(args: CountArgs) -> Result<(), CliError> {
    let constraint: ConstraintDescriptor = serde_json::from_str(&args.constraint)
        .map_err(|e| CliError::usage(format!("invalid constraint: {e}")))?;
    let spec = ConstraintSpec::from(&constraint);
    let (q, k, m, j) = (args.q, args.k, args.m, args.rank);
    let count = if args.brute_force {
        matrix_enum::brute_force_count(q, k, m, &spec, j)?
    } else {
        match &spec {
            ConstraintSpec::None => matrix_enum::count_rank(q, k, m, j),
            ConstraintSpec::SumZero(indices) => {
                matrix_enum::count_index_sum_zero(q, k, m, indices, j)?
            }
            ConstraintSpec::ZeroBlock { rows, cols } => {
                matrix_enum::count_zero_block(q, k, m, *rows, *cols, j)?
            }
            ConstraintSpec::ZeroDiagonal(positions) => {
                matrix_enum::count_zero_diagonal(q, k, m, positions.len(), j)?
            }
            ConstraintSpec::Symmetric => {
                if k != m {
                    return Err(MatrixEnumError::NonSquare.into());
                }
                matrix_enum::count_symmetric(q, k, j)
            }
            ConstraintSpec::SkewSymmetric => {
                if k != m {
                    return Err(MatrixEnumError::NonSquare.into());
                }
                matrix_enum::count_skew(q, k, j)
            }
        }
    };
    let response = MatrixCountResponse {
        count: count.to_string(),
    };
    println!("{}", serde_json::to_string(&response).expect("serializable"));
    Ok(())
}

fn cmd_optimal(args: OptimalArgs) -> Result<(), CliError> {
    let support = args.support.resolve()?;
    let group = support.group().clone();
    let gens = args
        .generators
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|spec| {
            let coords = parse_u64_list(spec)?;
            group
                .element(coords)
                .map_err(|e| CliError::usage(e.to_string()))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let code = Code::closure(&group, gens).map_err(|e| CliError::usage(e.to_string()))?;
    if code.is_trivial() {
        return Err(CliError::usage("the code is trivial"));
    }
    let defect = singleton_defect(&code, &support)?;
    let optimal = is_optimal(&code, &support)?;
    let d = support
        .min_weight(&code)
        .map_err(MacWilliamsError::Support)?;
    let w = support.weight_distribution(&code);
    let mut report = serde_json::json!({
        "size": code.len(),
        "min_weight": d,
        "defect": defect.to_string(),
        "optimal": optimal,
        "distribution": { "counts": w.counts },
    });
    if optimal {
        let dual = support.dual();
        let dual_report = dual_optimality_check(&code, &support, &dual)?;
        let solved = optimal_distribution(
            group.order(),
            support.invariants(),
            support.gamma(),
            dual.gamma(),
            d,
        )?;
        report["dual"] = serde_json::json!({
            "optimal": dual_report.dual_optimal,
            "min_weight": dual_report.dual_min_weight,
            "min_weight_bound": dual_report.min_weight_bound,
            "bound_holds": dual_report.bound_holds,
        });
        report["solved_distribution"] = serde_json::json!({ "counts": solved.counts });
        if solved.counts != w.counts {
            return Err(CliError::arithmetic(
                "solved distribution disagrees with the enumerated one".to_string(),
            ));
        }
    }
    println!("{report}");
    Ok(())
}
