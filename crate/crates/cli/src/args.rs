use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cigon_core::exactnum::parse_rational;
use cigon_core::neffeas::{DeltaForm, GenusForm};
use cigon_core::Rational;
use num_traits::ToPrimitive;

#[derive(Debug, Parser)]
#[command(
    name = "cigon",
    version,
    about = "Certified covering-gonality bounds and induction replays for complete intersections"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Decimal digits for enclosures of irrational quantities.
    #[arg(long, global = true, env = "CIGON_PRECISION", default_value_t = 12, value_parser = precision)]
    pub precision: u32,

    /// Write the report to a file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Largest curve degree k scanned by open-ended searches.
    #[arg(long, global = true, value_parser = exact_u64)]
    pub k_max: Option<u64>,

    /// Search horizon for Ramanujan primes.
    #[arg(long, global = true, value_parser = exact_u64)]
    pub horizon: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Covering-gonality lower bounds.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// h^0(Y, O(l)) of a complete intersection.
    Hilbert(HilbertArgs),
    /// Prime counting, Ramanujan primes and prime-degree selection.
    #[command(subcommand)]
    Primes(PrimesCmd),
    /// Genus, delta-invariant and power-sum estimates.
    #[command(subcommand)]
    Genus(GenusCmd),
    /// Decide a single induction-step feasibility system.
    #[command(subcommand)]
    Decide(DecideCmd),
    /// Replay every induction step of a bound.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Dimension counts for surfaces through the points.
    #[command(subcommand)]
    Dimcheck(DimcheckCmd),
    /// The constants A(e) and B(e).
    Constants {
        #[arg(long, value_parser = exact_u32)]
        e: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum BoundCmd {
    /// Codimension-two complete intersection of type (a, b) and dimension n.
    Codim2 {
        #[arg(long, value_parser = exact_u32)]
        n: u32,
        #[arg(long, value_parser = exact_u64)]
        a: u64,
        #[arg(long, value_parser = exact_u64)]
        b: u64,
    },
    /// Surface of arbitrary large type (d_1, ..., d_e), via prime selection.
    Surface {
        #[arg(long, value_parser = exact_u32)]
        e: u32,
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = exact_u64)]
        degrees: Vec<u64>,
    },
    /// Surface of special type a_i = (e+1)! q_i.
    SurfaceSpecial {
        #[arg(long, value_parser = exact_u32)]
        e: u32,
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = exact_u64)]
        adjusted: Vec<u64>,
    },
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    /// Dimension of the complete intersection.
    #[arg(long, value_parser = exact_u32)]
    pub n: u32,
    /// Number of defining equations; must match the degree list.
    #[arg(long, value_parser = exact_u32)]
    pub codim: u32,
    #[arg(long, value_delimiter = ',', num_args = 0.., value_parser = exact_u64)]
    pub degrees: Vec<u64>,
    #[arg(long, allow_hyphen_values = true, value_parser = exact_i64)]
    pub twist: i64,
    /// Also evaluate the Hilbert-series oracle.
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Subcommand)]
pub enum PrimesCmd {
    /// The n-th Ramanujan prime.
    Ramanujan {
        #[arg(long, value_parser = exact_u64)]
        n: u64,
    },
    /// Choose distinct primes q_i and adjusted degrees (e+1)! q_i.
    Select {
        #[arg(long, value_parser = exact_u32)]
        e: u32,
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = exact_u64)]
        degrees: Vec<u64>,
    },
    /// Prime counting function.
    Pi {
        #[arg(long, value_parser = exact_u64)]
        x: u64,
    },
    /// Least curve degree compatible with the divisibility constraints.
    MinDegree {
        #[arg(long, value_parser = exact_u32)]
        n: u32,
        #[arg(long, value_parser = exact_u32)]
        f: u32,
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = exact_u64)]
        primes: Vec<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenusCmd {
    /// Lower bound on the geometric genus of a degree-k curve.
    Lower(CurveArgs),
    /// Room (k-1)(k-2)/2 - g left for the double points.
    Gap(CurveArgs),
    /// Certified lower bound on the delta invariant at a point of multiplicity m.
    Delta {
        #[arg(long, value_parser = exact_u32)]
        n: u32,
        #[arg(long, value_parser = exact_u64)]
        m: u64,
    },
    /// Upper bounds on the arithmetic genus inside the threefold.
    Castelnuovo {
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = exact_u64)]
        degrees_y: Vec<u64>,
        #[arg(long, value_parser = exact_u64)]
        a_e: u64,
        #[arg(long, value_parser = exact_u64)]
        k: u64,
    },
    /// Enclosure of the minimum of sum m_i^p over m_i >= 0 with fixed sum.
    MinPowerSum {
        #[arg(long, value_parser = exact_u64)]
        total: u64,
        #[arg(long, value_parser = exact_u64)]
        parts: u64,
        #[arg(long, value_parser = parse_exact)]
        exponent: Rational,
    },
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Dimension of the ambient complete intersection.
    #[arg(long, value_parser = exact_u32)]
    pub n: u32,
    #[arg(long, value_delimiter = ',', num_args = 0.., value_parser = exact_u64)]
    pub degrees: Vec<u64>,
    /// Curve degree.
    #[arg(long, value_parser = exact_u64)]
    pub k: u64,
}

#[derive(Debug, Subcommand)]
pub enum DecideCmd {
    /// The codimension-two system for one step s.
    Codim2 {
        #[arg(long, value_parser = exact_u32)]
        n: u32,
        #[arg(long, value_parser = exact_u64)]
        a: u64,
        #[arg(long, value_parser = exact_u64)]
        b: u64,
        #[arg(long, value_parser = exact_u64)]
        s: u64,
        /// Use the brute-force oracle instead of the analytic route.
        #[arg(long)]
        bruteforce: bool,
        #[arg(long, value_enum, default_value_t = GenusFormArg::Simplified)]
        genus_form: GenusFormArg,
    },
    /// The surface system for one step s, with threefold type degrees_y.
    Surface {
        #[arg(long, value_parser = exact_u32)]
        e: u32,
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = exact_u64)]
        degrees_y: Vec<u64>,
        #[arg(long, value_parser = exact_u64)]
        a_e: u64,
        #[arg(long, value_parser = exact_u64)]
        s: u64,
        #[arg(long)]
        bruteforce: bool,
        #[arg(long, value_enum, default_value_t = DeltaFormArg::Literal)]
        delta_form: DeltaFormArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Every step of the codimension-two bound for type (a, b).
    Codim2 {
        #[arg(long, value_parser = exact_u32)]
        n: u32,
        #[arg(long, value_parser = exact_u64)]
        a: u64,
        #[arg(long, value_parser = exact_u64)]
        b: u64,
        #[arg(long, value_enum, default_value_t = GenusFormArg::Simplified)]
        genus_form: GenusFormArg,
    },
    /// Every step of the surface bound for a special-form type.
    Surface {
        #[arg(long, value_parser = exact_u32)]
        e: u32,
        /// Full type (a_1, ..., a_e) with a_i = (e+1)! q_i for i < e.
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = exact_u64)]
        degrees: Vec<u64>,
        #[arg(long, value_enum, default_value_t = DeltaFormArg::Literal)]
        delta_form: DeltaFormArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum DimcheckCmd {
    /// Sections of O(floor(a_e/3)) on the threefold.
    First {
        #[arg(long, value_parser = exact_u32)]
        e: u32,
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = exact_u64)]
        degrees_y: Vec<u64>,
        #[arg(long, value_parser = exact_u64)]
        a_e: u64,
        #[arg(long, value_parser = exact_u64)]
        s: u64,
    },
    /// Sections of O(floor(a_e/3)) on the surface V_1 of degree b1 in the threefold.
    Second {
        #[arg(long, value_parser = exact_u32)]
        e: u32,
        #[arg(long, value_delimiter = ',', num_args = 1.., value_parser = exact_u64)]
        degrees_y: Vec<u64>,
        #[arg(long, value_parser = exact_u64)]
        b1: u64,
        #[arg(long, value_parser = exact_u64)]
        a_e: u64,
        #[arg(long, value_parser = exact_u64)]
        s: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenusFormArg {
    Simplified,
    Expanded,
}

impl From<GenusFormArg> for GenusForm {
    fn from(v: GenusFormArg) -> Self {
        match v {
            GenusFormArg::Simplified => GenusForm::Simplified,
            GenusFormArg::Expanded => GenusForm::Expanded,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DeltaFormArg {
    Literal,
    FullMultiplicity,
}

impl From<DeltaFormArg> for DeltaForm {
    fn from(v: DeltaFormArg) -> Self {
        match v {
            DeltaFormArg::Literal => DeltaForm::Literal,
            DeltaFormArg::FullMultiplicity => DeltaForm::FullMultiplicity,
        }
    }
}

fn parse_exact(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Integers may be written as fractions as long as they reduce to one.
fn exact_integer(s: &str) -> Result<cigon_core::Integer, String> {
    let q = parse_exact(s)?;
    if !q.is_integer() {
        return Err(format!("{s} is not an integer"));
    }
    Ok(q.to_integer())
}

fn exact_i64(s: &str) -> Result<i64, String> {
    exact_integer(s)?.to_i64().ok_or_else(|| format!("{s} is out of range"))
}

fn exact_u64(s: &str) -> Result<u64, String> {
    exact_integer(s)?
        .to_u64()
        .ok_or_else(|| format!("{s} must be a nonnegative integer in range"))
}

fn exact_u32(s: &str) -> Result<u32, String> {
    exact_integer(s)?
        .to_u32()
        .ok_or_else(|| format!("{s} must be a nonnegative integer in range"))
}

fn precision(s: &str) -> Result<u32, String> {
    match exact_u32(s)? {
        0 => Err("precision must be at least 1".into()),
        p => Ok(p),
    }
}
