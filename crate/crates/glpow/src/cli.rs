//! The command-line interface: counts, series, Θ_M queries, polynomial and
//! class classification, and the oracle validation harness.
//!
//! Output is deterministic: fixed seeds and orderings make identical
//! invocations byte-identical. Every numeric value is emitted as an exact
//! integer or a "num/den" rational string, never floating point, and every
//! JSON document echoes the effective configuration.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::classdata::CombData;
use crate::error::{Error, Result};
use crate::ff::FqField;
use crate::genfun::{self, GfName};
use crate::mpower;
use crate::oracle::{self, CensusOptions};
use crate::partitions::{self, Partition};
use crate::polyarith::{self, PolyFq};
use crate::series;

/// The default truncation order when a subcommand does not set one.
pub const DEFAULT_ORDER: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "glpow",
    version,
    about = "Power maps on finite general linear groups: counts, series, and validation"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Census budget: the largest |GL(n,q)| the oracle will take on.
    #[arg(long, global = true, default_value_t = oracle::DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count degree-d irreducibles (other than x) whose companion classes
    /// are M-th powers: N_M(q, d).
    CountNm {
        /// Field descriptor: "p", "p^k", or "p^k/c0,c1,...".
        #[arg(long)]
        q: String,
        /// The power M.
        #[arg(long = "M")]
        m: u64,
        /// The polynomial degree d.
        #[arg(long)]
        d: u32,
    },
    /// Count degree-d irreducibles in power-map stratum i for M = r^a:
    /// N_M^i(q, d).
    CountNmi {
        /// Field descriptor: "p", "p^k", or "p^k/c0,c1,...".
        #[arg(long)]
        q: String,
        /// The power M, a prime power coprime to q.
        #[arg(long = "M")]
        m: u64,
        /// The polynomial degree d.
        #[arg(long)]
        d: u32,
        /// The stratum index i.
        #[arg(long)]
        i: u32,
    },
    /// Evaluate a catalogue generating function as exact coefficients.
    Series {
        /// Catalogue entry name, e.g. classes_all or mpow_classes_rs.
        #[arg(long)]
        name: String,
        /// Field descriptor: "p", "p^k", or "p^k/c0,c1,...".
        #[arg(long)]
        q: String,
        /// The power M, for entries that use one.
        #[arg(long = "M")]
        m: Option<u64>,
        /// Truncation order N.
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
    /// Query the partition power map Θ_M: list or count the image at
    /// weight n, apply the map, or test membership.
    Theta {
        /// Partition weight n (for listing or counting the image).
        #[arg(long)]
        n: Option<u64>,
        /// The power M.
        #[arg(long = "M")]
        m: u64,
        /// Print only the number of image partitions of weight n.
        #[arg(long)]
        count: bool,
        /// Apply Θ_M to this partition, given as comma-separated parts.
        #[arg(long)]
        apply: Option<String>,
        /// Test whether this partition lies in the image of Θ_M.
        #[arg(long)]
        member: Option<String>,
    },
    /// Classify one irreducible polynomial under the power map: M-power
    /// membership, stratum, and the factor profile of f(x^M).
    ClassifyPoly {
        /// Field descriptor: "p", "p^k", or "p^k/c0,c1,...".
        #[arg(long)]
        q: String,
        /// The power M, coprime to q.
        #[arg(long = "M")]
        m: u64,
        /// Coefficients c0,c1,... as element indices, constant term first.
        #[arg(long)]
        poly: String,
    },
    /// Decide whether a conjugacy class, given as class-data JSON, is an
    /// M-th power, and report its invariants.
    ClassDecide {
        /// The power M.
        #[arg(long = "M")]
        m: u64,
        /// Class data JSON, inline.
        #[arg(long, conflicts_with = "file")]
        data: Option<String>,
        /// Path to a file holding class data JSON.
        #[arg(long)]
        file: Option<std::path::PathBuf>,
    },
    /// Check a catalogue entry against the brute-force census for every
    /// n up to a bound; exit 0 only if all checked coefficients agree.
    Validate {
        /// Catalogue entry name.
        #[arg(long)]
        name: String,
        /// Field descriptor: "p", "p^k", or "p^k/c0,c1,...".
        #[arg(long)]
        q: String,
        /// The power M, for entries that use one.
        #[arg(long = "M")]
        m: Option<u64>,
        /// Largest dimension n to check.
        #[arg(long)]
        n_max: u64,
        /// Enumerate every group element instead of one representative per
        /// class (only for |GL(n,q)| up to 100000).
        #[arg(long)]
        full_elements: bool,
    },
}

/// The effective run configuration, echoed into every JSON document.
#[derive(Clone, Debug)]
pub struct Config {
    pub order: usize,
    pub budget: u64,
    pub seed: u64,
    pub format: &'static str,
}

impl Config {
    fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order,
            "budget": self.budget,
            "seed": self.seed,
            "format": self.format,
        })
    }
}

enum Rendered {
    Json(serde_json::Value),
    Csv(String),
}

/// Runs the interface on argv (including the program name), writing to
/// `out`. Returns the process exit code: 0 success, 1 domain error or
/// failed validation, 2 usage error.
pub fn run(args: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own usage text; route it to stderr unless it
            // is a help/version request, which exits 0 by convention.
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                eprint!("{e}");
            }
            return code;
        }
    };
    let config = Config {
        order: effective_order(&cli.command),
        budget: cli.budget,
        seed: polyarith::DEFAULT_FACTOR_SEED,
        format: match cli.format {
            Format::Json => "json",
            Format::Csv => "csv",
        },
    };
    match execute(&cli, &config) {
        Ok((rendered, code)) => {
            match rendered {
                Rendered::Json(v) => {
                    let _ = writeln!(out, "{v}");
                }
                Rendered::Csv(s) => {
                    let _ = write!(out, "{s}");
                }
            }
            code
        }
        Err(e) => {
            let v = serde_json::json!({
                "error": { "kind": error_kind(&e), "message": e.to_string() },
                "config": config.to_json(),
            });
            let _ = writeln!(out, "{v}");
            1
        }
    }
}

fn effective_order(command: &Command) -> usize {
    match command {
        Command::Series { order, .. } => *order,
        Command::Validate { n_max, .. } => *n_max as usize,
        _ => DEFAULT_ORDER,
    }
}

/// A stable machine-readable tag for each error variant.
fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::NotPrime(_) => "not-prime",
        Error::NotPrimePower(_) => "not-prime-power",
        Error::ModulusDegreeMismatch { .. } => "modulus-degree-mismatch",
        Error::ReducibleModulus { .. } => "reducible-modulus",
        Error::ZeroElement => "zero-element",
        Error::NotCoprime { .. } => "not-coprime",
        Error::ZeroPolynomial => "zero-polynomial",
        Error::NotMonic => "not-monic",
        Error::NotIrreducible => "not-irreducible",
        Error::PolynomialIsX => "polynomial-is-x",
        Error::ConstantPolynomial => "constant-polynomial",
        Error::ConstantTermNotOne => "constant-term-not-one",
        Error::IndexOutOfRange { .. } => "index-out-of-range",
        Error::NonInvertibleConstantTerm => "non-invertible-constant-term",
        Error::HypothesisViolated { .. } => "hypothesis-violated",
        Error::UnsupportedModulus { .. } => "unsupported-modulus",
        Error::UnsupportedCase(_) => "unsupported-case",
        Error::InvalidMacdonald(_) => "invalid-macdonald",
        Error::SizeLimitExceeded(_) => "size-limit-exceeded",
        Error::BudgetExceeded(_) => "budget-exceeded",
        Error::SingularMatrix => "singular-matrix",
        Error::Parse(_) => "parse",
    }
}

fn parse_field(q: &str) -> Result<FqField> {
    FqField::from_descriptor(q)
}

fn parse_parts(s: &str) -> Result<Vec<u64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            let v: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad partition part {p:?}")))?;
            if v == 0 {
                return Err(Error::Parse("partition parts must be positive".into()));
            }
            Ok(v)
        })
        .collect()
}

fn parse_partition(s: &str) -> Result<Partition> {
    let parts = parse_parts(s)?;
    Ok(if parts.is_empty() { Partition::empty() } else { Partition::new(&parts) })
}

fn parse_poly(field: &FqField, s: &str) -> Result<PolyFq> {
    let indices: Vec<u64> = s
        .split(',')
        .map(|c| {
            let v: u64 =
                c.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient {c:?}")))?;
            if v >= field.q() {
                return Err(Error::Parse(format!(
                    "coefficient index {v} out of range for a field of order {}",
                    field.q()
                )));
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    Ok(PolyFq::from_indices(field, &indices))
}

fn csv_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

/// Builds the classification report for one irreducible polynomial: M-power
/// membership, stratum (for prime-power M), and the factor profile of
/// f(x^M). Shared by the classify-poly subcommand and the C bindings.
pub fn classify_poly_report(f: &PolyFq, m: u64) -> Result<serde_json::Value> {
    let field = f.field();
    let is_power = mpower::is_m_power_poly(f, m)?;
    let stratum = match crate::arith::prime_power_split(m) {
        Some(_) => Some(mpower::stratum(f, m)?),
        None => None,
    };
    let profile = mpower::butler_profile(f, m)?;
    let indices: Vec<u64> = f.coeffs().iter().map(|c| field.index_of(c)).collect();
    Ok(serde_json::json!({
        "q": field.descriptor(),
        "M": m,
        "poly": indices,
        "degree": f.degree(),
        "is_m_power": is_power,
        "stratum": stratum,
        "butler_profile": profile,
    }))
}

/// Builds the decision report for one conjugacy class: invariants, the
/// M-power verdict, and the image class under powering when defined.
/// Shared by the class-decide subcommand and the C bindings.
pub fn class_decide_report(class: &CombData, m: u64) -> Result<serde_json::Value> {
    let verdict = class.is_mth_power_class(m)?;
    let power = class.power_class(m).map(|p| p.to_json()).ok();
    Ok(serde_json::json!({
        "q": class.field().descriptor(),
        "M": m,
        "data": class.to_json(),
        "n": class.n(),
        "is_regular": class.is_regular(),
        "is_semisimple": class.is_semisimple(),
        "is_regular_semisimple": class.is_regular_semisimple(),
        "centralizer_order": class.centralizer_order().to_string(),
        "class_size": class.class_size().to_string(),
        "is_mth_power": verdict,
        "power_class": power,
    }))
}

fn parts_json(lam: &Partition) -> serde_json::Value {
    serde_json::json!(lam.parts())
}

fn execute(cli: &Cli, config: &Config) -> Result<(Rendered, i32)> {
    let csv = cli.format == Format::Csv;
    match &cli.command {
        Command::CountNm { q, m, d } => {
            let field = parse_field(q)?;
            let value = mpower::count_nm(field.q(), *m, *d);
            if csv {
                let mut s = String::from("q,M,d,value\n");
                s.push_str(&format!("{},{m},{d},{value}\n", csv_quote(&field.descriptor())));
                Ok((Rendered::Csv(s), 0))
            } else {
                Ok((
                    Rendered::Json(serde_json::json!({
                        "command": "count-nm",
                        "q": field.descriptor(),
                        "M": m,
                        "d": d,
                        "value": value.to_string(),
                        "config": config.to_json(),
                    })),
                    0,
                ))
            }
        }
        Command::CountNmi { q, m, d, i } => {
            let field = parse_field(q)?;
            let value = mpower::count_nmi(field.q(), *m, *d, *i)?;
            if csv {
                let mut s = String::from("q,M,d,i,value\n");
                s.push_str(&format!("{},{m},{d},{i},{value}\n", csv_quote(&field.descriptor())));
                Ok((Rendered::Csv(s), 0))
            } else {
                Ok((
                    Rendered::Json(serde_json::json!({
                        "command": "count-nmi",
                        "q": field.descriptor(),
                        "M": m,
                        "d": d,
                        "i": i,
                        "value": value.to_string(),
                        "config": config.to_json(),
                    })),
                    0,
                ))
            }
        }
        Command::Series { name, q, m, order } => {
            let name: GfName = name.parse()?;
            let field = parse_field(q)?;
            let s = genfun::gf(name, field.q(), *m, *order)?;
            if csv {
                Ok((Rendered::Csv(series::series_to_csv(&s)), 0))
            } else {
                Ok((
                    Rendered::Json(serde_json::json!({
                        "command": "series",
                        "name": name.as_str(),
                        "q": field.descriptor(),
                        "M": m,
                        "order": order,
                        "series": series::series_to_json(&s),
                        "config": config.to_json(),
                    })),
                    0,
                ))
            }
        }
        Command::Theta { n, m, count, apply, member } => {
            theta_command(*n, *m, *count, apply.as_deref(), member.as_deref(), config, csv)
        }
        Command::ClassifyPoly { q, m, poly } => {
            if csv {
                return Err(Error::Parse(
                    "classify-poly emits JSON only; drop --format csv".into(),
                ));
            }
            let field = parse_field(q)?;
            let f = parse_poly(&field, poly)?;
            let mut v = classify_poly_report(&f, *m)?;
            v["command"] = serde_json::json!("classify-poly");
            v["config"] = config.to_json();
            Ok((Rendered::Json(v), 0))
        }
        Command::ClassDecide { m, data, file } => {
            let text = match (data, file) {
                (Some(t), None) => t.clone(),
                (None, Some(p)) => std::fs::read_to_string(p)
                    .map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display())))?,
                _ => {
                    return Err(Error::Parse(
                        "class-decide needs exactly one of --data or --file".into(),
                    ))
                }
            };
            if csv {
                return Err(Error::Parse(
                    "class-decide emits JSON only; drop --format csv".into(),
                ));
            }
            let v: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad class data JSON: {e}")))?;
            let class = CombData::from_json(&v)?;
            let mut v = class_decide_report(&class, *m)?;
            v["command"] = serde_json::json!("class-decide");
            v["config"] = config.to_json();
            Ok((Rendered::Json(v), 0))
        }
        Command::Validate { name, q, m, n_max, full_elements } => {
            let name: GfName = name.parse()?;
            let field = parse_field(q)?;
            let options = CensusOptions { budget: cli.budget, full_elements: *full_elements };
            let report = oracle::verify_series(name, &field, *m, *n_max, &options)?;
            let code = i32::from(!report.ok());
            if csv {
                let mut s = String::from("n,series,census,equal,skipped\n");
                for row in &report.rows {
                    let census = row
                        .census
                        .as_ref()
                        .map(|c| format!("{}/{}", c.numer(), c.denom()))
                        .unwrap_or_default();
                    s.push_str(&format!(
                        "{},{}/{},{},{},{}\n",
                        row.n,
                        row.series.numer(),
                        row.series.denom(),
                        census,
                        row.equal(),
                        row.skipped
                    ));
                }
                Ok((Rendered::Csv(s), code))
            } else {
                let mut v = report.to_json();
                v["command"] = serde_json::json!("validate");
                v["config"] = config.to_json();
                Ok((Rendered::Json(v), code))
            }
        }
    }
}

fn theta_command(
    n: Option<u64>,
    m: u64,
    count: bool,
    apply: Option<&str>,
    member: Option<&str>,
    config: &Config,
    csv: bool,
) -> Result<(Rendered, i32)> {
    if m < 1 {
        return Err(Error::Parse("the power M must be positive".into()));
    }
    if let Some(s) = apply {
        let lam = parse_partition(s)?;
        let image = partitions::theta(&lam, m);
        if csv {
            return Err(Error::Parse("theta --apply emits JSON only".into()));
        }
        return Ok((
            Rendered::Json(serde_json::json!({
                "command": "theta",
                "M": m,
                "apply": parts_json(&lam),
                "image": parts_json(&image),
                "config": config.to_json(),
            })),
            0,
        ));
    }
    if let Some(s) = member {
        let mu = parse_partition(s)?;
        let verdict = partitions::in_theta_image(&mu, m);
        if csv {
            return Err(Error::Parse("theta --member emits JSON only".into()));
        }
        return Ok((
            Rendered::Json(serde_json::json!({
                "command": "theta",
                "M": m,
                "member": parts_json(&mu),
                "in_image": verdict,
                "config": config.to_json(),
            })),
            0,
        ));
    }
    let n = n.ok_or_else(|| {
        Error::Parse("theta needs --n (with optional --count), --apply, or --member".into())
    })?;
    if count {
        let value = partitions::count_theta_image(n, m);
        if csv {
            let s = format!("n,M,count\n{n},{m},{value}\n");
            return Ok((Rendered::Csv(s), 0));
        }
        return Ok((
            Rendered::Json(serde_json::json!({
                "command": "theta",
                "n": n,
                "M": m,
                "count": value.to_string(),
                "config": config.to_json(),
            })),
            0,
        ));
    }
    let list: Vec<serde_json::Value> = partitions::enumerate_partitions(n)
        .iter()
        .filter(|lam| partitions::in_theta_image(lam, m))
        .map(parts_json)
        .collect();
    if csv {
        let mut s = String::from("partition\n");
        for p in &list {
            let parts: Vec<String> =
                p.as_array().unwrap().iter().map(|x| x.to_string()).collect();
            s.push_str(&csv_quote(&parts.join(",")));
            s.push('\n');
        }
        return Ok((Rendered::Csv(s), 0));
    }
    Ok((
        Rendered::Json(serde_json::json!({
            "command": "theta",
            "n": n,
            "M": m,
            "partitions": list,
            "config": config.to_json(),
        })),
        0,
    ))
}
