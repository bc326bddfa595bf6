use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use polya::survey::{self, Format, SurveyConfig};
use polya::units::Family;
use polya::Error;

#[derive(Parser)]
#[command(name = "polya", version, about = "Pólya groups, class groups, units and discriminants of quadratic and abelian fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv, global = true)]
    format: FormatArg,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads; output is identical for every value.
    #[arg(long, default_value_t = 1, global = true)]
    workers: usize,

    /// Decimal digits printed for regulators.
    #[arg(long, default_value_t = 30, global = true)]
    precision: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    #[value(name = "n2p1")]
    N2p1,
    #[value(name = "4n2m1")]
    FourN2m1,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::N2p1 => Family::N2p1,
            FamilyArg::FourN2m1 => Family::FourN2m1,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Class group, Pólya group and quotient of one quadratic field.
    ///
    /// Rows are field,value pairs: d, ramified, s, class_number, class_structure,
    /// polya_order, polya_structure, relative_order, relative_structure,
    /// relative_trivial; for d < 0 also hilbert_order and analytic_class_number;
    /// for d > 0 narrow_class_number, unit, unit_norm, regulator.
    Quad {
        /// Fundamental discriminant.
        #[arg(short = 'd', long = "disc", allow_hyphen_values = true)]
        disc: i64,
    },
    /// Every imaginary quadratic field with |d| <= B.
    ///
    /// Columns: d, h (class number by reduced forms, checked against the
    /// analytic formula), s (ramified primes), polya_order, h_over_sqrt_d,
    /// polya_over_sqrt_d, trivial_relative (Cl = Po). The summary lists every
    /// d with Cl = Po.
    Survey {
        #[arg(short = 'B', long = "bound")]
        bound: u64,
    },
    /// Decade statistics of the imaginary survey.
    ///
    /// Columns: abs_d_lo, abs_d_hi, fields, median_log_h_over_log_d,
    /// max_log_h_over_log_d, max_polya_over_sqrt_d, argmax_d.
    Growth {
        #[arg(short = 'B', long = "bound")]
        bound: u64,
    },
    /// The unit families n + sqrt(n^2+1) and 2n + sqrt(4n^2-1) for n <= N.
    ///
    /// Columns: family, n, value, squarefree, unit_check (holds, fails,
    /// skipped), unit (true fundamental unit), norm, regulator,
    /// regulator_f64, log_r_over_log_sqrt_d, class_number (wide),
    /// polya_order, relative_order, relative_over_log_sqrt_d,
    /// log_relative_over_log_sqrt_d. The summary lists failures and sieve
    /// densities.
    Families {
        #[arg(short = 'N')]
        n: u64,
        /// Restrict to one family.
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        /// Skip class groups (faster for large N).
        #[arg(long)]
        no_classes: bool,
    },
    /// Minus class numbers of Q(zeta_p) for odd primes p <= pmax.
    ///
    /// Columns: p, degree, abs_disc (from conductor exponents), oracle_match
    /// (equals the conductor-discriminant product), hminus,
    /// log_hminus_over_log_sqrt_d, max_lambda, lambda_at_most_2,
    /// rounding_residue, regulator_ratio_q1.
    Cyclotomic {
        #[arg(long, default_value_t = 100)]
        pmax: u64,
    },
    /// Squarefree sieve for one family.
    ///
    /// Columns: n, family_value, squarefree, witness_p (smallest p with
    /// p^2 | value).
    Sieve {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(short = 'N')]
        n: u64,
    },
}

fn run(cli: Cli) -> polya::Result<()> {
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let cfg = SurveyConfig { workers: cli.workers, precision: cli.precision, format };
    cfg.validate()?;

    let table = match cli.command {
        Command::Quad { disc } => {
            let report = survey::cmd_quad(disc, &cfg)?;
            if format == Format::Json {
                let s = serde_json::to_string_pretty(&report).expect("serializable");
                return emit(cli.out, |w| writeln!(w, "{s}").map_err(io_err));
            }
            report.to_table()
        }
        Command::Survey { bound } => survey::cmd_survey_imaginary(bound, &cfg)?,
        Command::Growth { bound } => survey::cmd_growth(bound, &cfg)?,
        Command::Families { n, family, no_classes } => {
            let families: Vec<Family> = match family {
                Some(f) => vec![f.into()],
                None => Family::ALL.to_vec(),
            };
            survey::cmd_families(n, &families, &cfg, !no_classes)?
        }
        Command::Cyclotomic { pmax } => survey::cmd_cyclotomic(pmax, &cfg)?,
        Command::Sieve { family, n } => survey::cmd_sieve(family.into(), n, &cfg)?,
    };
    emit(cli.out, |w| table.write(format, w))
}

fn io_err(e: io::Error) -> Error {
    Error::InvalidInput(format!("write failed: {e}"))
}

fn emit(out: Option<PathBuf>, body: impl FnOnce(&mut dyn Write) -> polya::Result<()>) -> polya::Result<()> {
    match out {
        Some(path) => {
            let file = File::create(&path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush().map_err(io_err)
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            body(&mut w)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Invariant(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
