//! `koszul`: command-line front end for the `koszul-core` computations.
//!
//! Every command reads a presentation file and writes pretty-printed JSON
//! to stdout. Exit codes: 0 on success, 2 on invalid input, 3 when the
//! algebra fails a Koszulity check.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use koszul_core::hochschild::{cohomology_dims, cup, reduce_class, CohomologyDims};
use koszul_core::json::{
    cochain_terms, subspace_rows, ClassJson, CochainInput, ResolveJson, SliceJson, StructureJson, TermList,
};
use koszul_core::koszul_dual::{graded_centre, structure_constants};
use koszul_core::verify::verify_all;
use koszul_core::{Error, Presentation, Quiver, Session};

const EXIT_INVALID: u8 = 2;
const EXIT_NOT_KOSZUL: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "koszul",
    version,
    about = "Resolutions, Hochschild cohomology and Koszul duals of quadratic algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Uniform bases f^n_i of the syzygy spaces.
    Resolve(Common),
    /// Comultiplication constants c_pq(n,i,r).
    Comult {
        #[command(flatten)]
        common: Common,
        /// Only this degree.
        #[arg(long)]
        n: Option<usize>,
        /// Only this split point.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Dimensions of HH^{n,w}.
    Hh {
        #[command(flatten)]
        common: Common,
        /// Only this cohomological degree.
        #[arg(long)]
        n: Option<usize>,
        /// Only this weight.
        #[arg(long)]
        weight: Option<usize>,
    },
    /// Cup product of two cochains.
    Cup {
        #[command(flatten)]
        common: Common,
        /// JSON file holding the left cochain.
        #[arg(long)]
        eta: PathBuf,
        /// JSON file holding the right cochain.
        #[arg(long)]
        theta: PathBuf,
        /// Degree of the left cochain.
        #[arg(long)]
        eta_degree: Option<usize>,
        /// Degree of the right cochain.
        #[arg(long)]
        theta_degree: Option<usize>,
        /// Also reduce the product modulo coboundaries.
        #[arg(long)]
        reduce: bool,
    },
    /// Structure constants of the Koszul dual.
    Dual {
        #[command(flatten)]
        common: Common,
        /// Degree of the left factor.
        #[arg(long)]
        m: Option<usize>,
        /// Degree of the right factor.
        #[arg(long)]
        n: Option<usize>,
    },
    /// Graded centre of the Koszul dual.
    Center(Common),
    /// Exactness and structural identities in one report.
    Verify(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// Presentation file.
    file: PathBuf,
    /// Truncation degree; overrides the file.
    #[arg(long)]
    maxdeg: Option<usize>,
    /// Refuse inputs whose largest path-space block exceeds this size.
    #[arg(long, default_value_t = 20000)]
    max_columns: u128,
    /// JSON file of replacement bases: [{"degree": n, "elements": [...]}].
    #[arg(long)]
    basis: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
struct BasisOverride {
    degree: usize,
    elements: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}: {message}")]
    Json { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Parse {
        path: PathBuf,
        source: koszul_core::ParseError,
    },
    #[error("largest path-space block in degree {degree} has {columns} columns, above the limit of {limit}")]
    TooLarge { degree: usize, columns: u128, limit: u128 },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_koszul_failure() => EXIT_NOT_KOSZUL,
            _ => EXIT_INVALID,
        }
    }
}

/// A report printed before exiting with the non-Koszul code.
struct Failed(String);

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Json {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

/// Largest number of paths of one length between two fixed vertices, for
/// lengths up to `bound`.
fn largest_block(quiver: &Quiver, bound: usize) -> (usize, u128) {
    let nv = quiver.num_vertices();
    let mut counts: Vec<Vec<u128>> = (0..nv).map(|u| (0..nv).map(|v| u128::from(u == v)).collect()).collect();
    let mut worst = (0, 1);
    for n in 1..=bound {
        let mut next = vec![vec![0u128; nv]; nv];
        for (u, row) in counts.iter().enumerate() {
            for arrow in quiver.arrows() {
                let c = row[arrow.source];
                if c > 0 {
                    next[u][arrow.target] = next[u][arrow.target].saturating_add(c);
                }
            }
        }
        counts = next;
        let top = counts.iter().flatten().copied().max().unwrap_or(0);
        if top > worst.1 {
            worst = (n, top);
        }
    }
    worst
}

/// Loads the presentation and builds a session with levels up to
/// `maxdeg + extra`.
fn open(common: &Common, extra: usize) -> Result<Session, CliError> {
    let text = read(&common.file)?;
    let mut presentation = Presentation::parse(&text).map_err(|source| CliError::Parse {
        path: common.file.clone(),
        source,
    })?;
    if let Some(d) = common.maxdeg {
        presentation = presentation.with_maxdeg(d);
    }
    let bound = presentation.maxdeg + extra;
    presentation = presentation.with_maxdeg(bound);
    let (degree, columns) = largest_block(&presentation.quiver, bound);
    if columns > common.max_columns {
        return Err(CliError::TooLarge {
            degree,
            columns,
            limit: common.max_columns,
        });
    }
    let overrides: Vec<BasisOverride> = match &common.basis {
        Some(path) => read_json(path)?,
        None => Vec::new(),
    };
    let parsed = overrides
        .iter()
        .map(|o| {
            let elements = o
                .elements
                .iter()
                .map(|e| presentation.parse_element(e))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|source| CliError::Parse {
                    path: common.basis.clone().unwrap_or_default(),
                    source,
                })?;
            Ok((o.degree, elements))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut session = Session::new(presentation)?;
    for (degree, elements) in parsed {
        session = session.override_basis(degree, &elements)?;
    }
    Ok(session)
}

fn user_maxdeg(session: &Session, extra: usize) -> usize {
    session.algebra().bound() - extra
}

#[derive(Serialize)]
struct CohomologyTotal {
    n: usize,
    dim_ker: usize,
    dim_im: usize,
    dim_hh: usize,
}

#[derive(Serialize)]
struct HhJson {
    finite: bool,
    groups: Vec<CohomologyDims>,
    totals: Vec<CohomologyTotal>,
}

#[derive(Serialize)]
struct CupJson {
    degree: usize,
    representative: Vec<TermList>,
    #[serde(skip_serializing_if = "Option::is_none")]
    class: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<Vec<ClassJson>>,
}

#[derive(Serialize)]
struct DualJson {
    dims: Vec<usize>,
    products: Vec<StructureJson>,
}

#[derive(Serialize)]
struct CentreJson {
    dims: Vec<usize>,
    bases: Vec<Vec<Vec<String>>>,
}

fn to_value<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize")
}

fn degrees(only: Option<usize>, top: usize) -> Result<Vec<usize>, CliError> {
    match only {
        Some(n) if n > top => Err(CliError::Usage(format!("degree {n} exceeds maxdeg {top}"))),
        Some(n) => Ok(vec![n]),
        None => Ok((0..=top).collect()),
    }
}

fn run(command: &Command) -> Result<Result<String, Failed>, CliError> {
    let value = match command {
        Command::Resolve(common) => {
            let session = open(common, 0)?;
            to_value(&ResolveJson::new(&session)?)
        }
        Command::Comult { common, n, r } => {
            let session = open(common, 0)?;
            let mut slices = Vec::new();
            for n in degrees(*n, session.max_level())? {
                let splits = match r {
                    Some(r) if *r > n => return Err(CliError::Usage(format!("split point {r} exceeds degree {n}"))),
                    Some(r) => vec![*r],
                    None => (0..=n).collect(),
                };
                for r in splits {
                    slices.push(SliceJson::from(session.comult(n, r)?.as_ref()));
                }
            }
            to_value(&slices)
        }
        Command::Hh { common, n, weight } => {
            let session = open(common, 1)?;
            session.require_exact()?;
            let top = user_maxdeg(&session, 1);
            let algebra = session.algebra();
            let finite = algebra.top_degree_bound();
            let weights: Vec<usize> = match weight {
                Some(w) if *w > top => return Err(CliError::Usage(format!("weight {w} exceeds maxdeg {top}"))),
                Some(w) => vec![*w],
                None => (0..finite.unwrap_or(top + 1).min(top + 1)).collect(),
            };
            let mut groups = Vec::new();
            let mut totals = Vec::new();
            for n in degrees(*n, top)? {
                let mut total = CohomologyTotal {
                    n,
                    dim_ker: 0,
                    dim_im: 0,
                    dim_hh: 0,
                };
                for &w in &weights {
                    let d = cohomology_dims(&session, n, w)?;
                    total.dim_ker += d.dim_ker;
                    total.dim_im += d.dim_im;
                    total.dim_hh += d.dim_hh;
                    groups.push(d);
                }
                totals.push(total);
            }
            to_value(&HhJson {
                finite: finite.is_some(),
                groups,
                totals,
            })
        }
        Command::Cup {
            common,
            eta,
            theta,
            eta_degree,
            theta_degree,
            reduce,
        } => {
            let session = open(common, 1)?;
            session.require_exact()?;
            let left = read_json::<CochainInput>(eta)?.to_cochain(&session, *eta_degree)?;
            let right = read_json::<CochainInput>(theta)?.to_cochain(&session, *theta_degree)?;
            let top = user_maxdeg(&session, 1);
            let degree = left.degree() + right.degree();
            if degree > top {
                return Err(CliError::Usage(format!("product degree {degree} exceeds maxdeg {top}")));
            }
            let product = cup(&session, &left, &right)?;
            let (class, components) = if *reduce {
                let classes = reduce_class(&session, &product)?;
                let zero = classes.iter().all(|c| c.is_zero());
                (
                    Some(if zero { "zero" } else { "nonzero" }),
                    Some(classes.iter().map(ClassJson::from).collect()),
                )
            } else {
                (None, None)
            };
            to_value(&CupJson {
                degree,
                representative: cochain_terms(&session, &product),
                class,
                components,
            })
        }
        Command::Dual { common, m, n } => {
            let session = open(common, 1)?;
            session.require_exact()?;
            let top = user_maxdeg(&session, 1);
            let dims = (0..=top)
                .map(|d| Ok(session.resolution().level(d)?.len()))
                .collect::<Result<Vec<_>, Error>>()?;
            let mut products = Vec::new();
            for a in degrees(*m, top)? {
                for b in degrees(*n, top)? {
                    if a + b > top {
                        if m.is_some() && n.is_some() {
                            return Err(CliError::Usage(format!(
                                "product degree {} exceeds maxdeg {top}",
                                a + b
                            )));
                        }
                        continue;
                    }
                    products.push(StructureJson::new(a, b, &structure_constants(&session, a, b)?));
                }
            }
            to_value(&DualJson { dims, products })
        }
        Command::Center(common) => {
            let session = open(common, 1)?;
            session.require_exact()?;
            let top = user_maxdeg(&session, 1);
            let mut dims = Vec::new();
            let mut bases = Vec::new();
            for n in 0..=top {
                let centre = graded_centre(&session, n)?;
                dims.push(centre.dim());
                bases.push(subspace_rows(&centre, &session));
            }
            to_value(&CentreJson { dims, bases })
        }
        Command::Verify(common) => {
            let session = open(common, 0)?;
            let report = verify_all(&session);
            for check in report.checks.iter().filter(|c| !c.passed) {
                eprintln!("check {} failed: {}", check.name, check.detail.as_deref().unwrap_or(""));
            }
            let value = to_value(&report);
            if !report.passed {
                return Ok(Err(Failed(value)));
            }
            value
        }
    };
    Ok(Ok(value))
}

fn print(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(Ok(value)) => {
            print(&value);
            ExitCode::SUCCESS
        }
        Ok(Err(Failed(value))) => {
            print(&value);
            ExitCode::from(EXIT_NOT_KOSZUL)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
