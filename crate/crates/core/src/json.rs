//! Serializable views of computed data. Scalars are written as exact text
//! (`"a/b"` or a residue); arrays follow the canonical index orders.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, FiniteDimensionality};
use crate::comult::ComultSlice;
use crate::hochschild::{Cochain, CohomologyClass};
use crate::koszul_dual::ExtElement;
use crate::linalg::Subspace;
use crate::scalar::Scalar;
use crate::session::Session;
use crate::Error;

/// One term `coeff * path` of an algebra element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub path: String,
    #[serde(default = "one_text")]
    pub coeff: String,
}

fn one_text() -> String {
    "1".into()
}

pub type TermList = Vec<Term>;

pub fn element_terms(session: &Session, e: &AlgebraElement) -> TermList {
    session
        .algebra()
        .terms(e)
        .into_iter()
        .map(|(path, c)| Term {
            path,
            coeff: c.to_string(),
        })
        .collect()
}

pub fn element_from_terms(session: &Session, terms: &[Term]) -> Result<AlgebraElement, Error> {
    let algebra = session.algebra();
    let mut out = AlgebraElement::zero();
    for t in terms {
        let c = algebra.field().parse_scalar(&t.coeff)?;
        out = out.add(&algebra.parse_path(&t.path)?.scale(&c));
    }
    Ok(out)
}

/// Cochain file contents: a bare list of per-generator term lists, or an
/// object that also fixes the degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CochainInput {
    Explicit { degree: usize, values: Vec<TermList> },
    Bare(Vec<TermList>),
}

impl CochainInput {
    /// Builds the cochain. Without an explicit degree, the smallest level
    /// whose generator count matches the number of lists is used.
    pub fn to_cochain(&self, session: &Session, degree: Option<usize>) -> Result<Cochain, Error> {
        let (declared, values) = match self {
            CochainInput::Explicit { degree, values } => (Some(*degree), values),
            CochainInput::Bare(values) => (None, values),
        };
        let degree = match degree.or(declared) {
            Some(d) => d,
            None => session
                .resolution()
                .levels()
                .iter()
                .position(|l| l.len() == values.len())
                .ok_or_else(|| Error::InvalidCochain(format!("no level has {} generators", values.len())))?,
        };
        let elements = values
            .iter()
            .map(|terms| element_from_terms(session, terms))
            .collect::<Result<Vec<_>, _>>()?;
        Cochain::new(session, degree, elements)
    }
}

pub fn cochain_terms(session: &Session, c: &Cochain) -> Vec<TermList> {
    c.values().iter().map(|v| element_terms(session, v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceEntry {
    pub i: usize,
    pub p: usize,
    pub q: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceJson {
    pub n: usize,
    pub r: usize,
    pub entries: Vec<SliceEntry>,
}

impl From<&ComultSlice> for SliceJson {
    fn from(s: &ComultSlice) -> Self {
        SliceJson {
            n: s.n(),
            r: s.r(),
            entries: s
                .entries()
                .map(|((i, p, q), c)| SliceEntry {
                    i,
                    p,
                    q,
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureEntry {
    pub i: usize,
    pub j: usize,
    pub l: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureJson {
    pub m: usize,
    pub n: usize,
    pub entries: Vec<StructureEntry>,
}

impl StructureJson {
    pub fn new(m: usize, n: usize, constants: &[(usize, usize, usize, Scalar)]) -> Self {
        StructureJson {
            m,
            n,
            entries: constants
                .iter()
                .map(|(i, j, l, c)| StructureEntry {
                    i: *i,
                    j: *j,
                    l: *l,
                    coeff: c.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorJson {
    pub source: String,
    pub target: String,
    pub element: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolveJson {
    pub field: String,
    pub maxdeg: usize,
    pub dims: Vec<usize>,
    /// `dim Λ` when some computed `Λ_d` vanishes, otherwise `null`.
    pub finite_dim: Option<usize>,
    pub t: Vec<isize>,
    pub generators: Vec<Vec<GeneratorJson>>,
}

impl ResolveJson {
    pub fn new(session: &Session) -> Result<Self, Error> {
        let algebra = session.algebra();
        let quiver = algebra.quiver();
        let data = session.resolution();
        let generators = data
            .levels()
            .iter()
            .map(|level| {
                (0..level.len())
                    .map(|i| {
                        let (o, t) = level.endpoints(i);
                        GeneratorJson {
                            source: quiver.vertex_name(o).to_string(),
                            target: quiver.vertex_name(t).to_string(),
                            element: level.generator(i).format(quiver),
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(ResolveJson {
            field: algebra.field().to_string(),
            maxdeg: algebra.bound(),
            dims: algebra.dims()?,
            finite_dim: match algebra.finite_dimensionality() {
                FiniteDimensionality::FiniteDim(d) => Some(d),
                FiniteDimensionality::NotDecidedBy(_) => None,
            },
            t: data.t_values(),
            generators,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassJson {
    pub weight: usize,
    pub coords: Vec<String>,
}

impl From<&CohomologyClass> for ClassJson {
    fn from(c: &CohomologyClass) -> Self {
        ClassJson {
            weight: c.weight,
            coords: c.coords.iter().map(Scalar::to_string).collect(),
        }
    }
}

pub fn ext_coords(e: &ExtElement, dim: usize, session: &Session) -> Vec<String> {
    e.coords()
        .to_dense(dim, session.field())
        .iter()
        .map(Scalar::to_string)
        .collect()
}

/// Basis rows of a subspace as exact text.
pub fn subspace_rows(s: &Subspace, session: &Session) -> Vec<Vec<String>> {
    s.rows()
        .iter()
        .map(|r| {
            r.to_dense(s.ambient(), session.field())
                .iter()
                .map(Scalar::to_string)
                .collect()
        })
        .collect()
}
