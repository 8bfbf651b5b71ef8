//! The syzygy spaces `K^n ⊆ V^{⊗n}` of the minimal linear resolution of
//! `Λ_0` and their uniform bases `f^n_i`.
//!
//! `K^0` is spanned by the vertices, `K^1 = V` by the arrows and `K^2 = R`.
//! For `n ≥ 3`, `K^n = (K^{n-1} ⊗ V) ∩ (V^{⊗(n-2)} ⊗ R)`, computed one
//! `(source, target)` block at a time. The generators of a level are the RREF
//! rows of each block, blocks taken in vertex order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{AlgebraElement, AlgebraError, GradedAlgebra};
use crate::linalg::{SparseVec, Subspace};
use crate::quiver::{Path, PathSpace};
use crate::session::Session;
use crate::tensor::TensorElement;
use crate::Error;

/// The ordered uniform basis `f^n_0, …, f^n_{t_n}` of `K^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionLevel {
    degree: usize,
    generators: Vec<TensorElement>,
    endpoints: Vec<(usize, usize)>,
    coords: Vec<SparseVec>,
    span: Subspace,
}

impl ResolutionLevel {
    fn from_coords(space: &PathSpace, coords: Vec<SparseVec>, span: Subspace) -> Self {
        let generators: Vec<TensorElement> = coords.iter().map(|v| TensorElement::from_vec(space, v)).collect();
        let endpoints = generators
            .iter()
            .map(|g| g.endpoints().expect("generators are uniform"))
            .collect();
        ResolutionLevel {
            degree: space.degree(),
            generators,
            endpoints,
            coords,
            span,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of generators, `t_n + 1`.
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `t_n`; `-1` for an empty level.
    pub fn t(&self) -> isize {
        self.generators.len() as isize - 1
    }

    pub fn generators(&self) -> &[TensorElement] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &TensorElement {
        &self.generators[i]
    }

    /// `(𝔬(f^n_i), 𝔱(f^n_i))`.
    pub fn endpoints(&self, i: usize) -> (usize, usize) {
        self.endpoints[i]
    }

    pub fn origin(&self, i: usize) -> usize {
        self.endpoints[i].0
    }

    pub fn terminus(&self, i: usize) -> usize {
        self.endpoints[i].1
    }

    /// Coordinates of `f^n_i` in the path basis of `V^{⊗n}`.
    pub fn coords(&self, i: usize) -> &SparseVec {
        &self.coords[i]
    }

    /// `K^n` as a subspace of `V^{⊗n}`.
    pub fn span(&self) -> &Subspace {
        &self.span
    }
}

/// Levels `0..=N` of the resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionData {
    levels: Vec<ResolutionLevel>,
}

impl ResolutionData {
    pub fn levels(&self) -> &[ResolutionLevel] {
        &self.levels
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> Result<&ResolutionLevel, Error> {
        self.levels.get(n).ok_or(Error::LevelOutOfRange {
            n,
            bound: self.max_degree(),
        })
    }

    /// `t_n` for every computed level.
    pub fn t_values(&self) -> Vec<isize> {
        self.levels.iter().map(ResolutionLevel::t).collect()
    }
}

/// Coordinates of `a ⊗ b` where `a ∈ V^{⊗left.degree}`, `b ∈ V^{⊗right.degree}`.
pub(crate) fn tensor_coords(
    left: &PathSpace,
    a: &SparseVec,
    right: &PathSpace,
    b: &SparseVec,
    target: &PathSpace,
) -> SparseVec {
    let mut pairs = Vec::new();
    for (i, x) in a.iter() {
        let p = left.path(i);
        for (j, y) in b.iter() {
            if let Some(pq) = p.concat(right.path(j)) {
                pairs.push((target.index_of(&pq).expect("composable path"), x * y));
            }
        }
    }
    SparseVec::from_pairs(pairs)
}

/// Computes `K^0, …, K^N` with their canonical bases.
pub fn compute_levels(algebra: &GradedAlgebra, n_max: usize) -> Result<ResolutionData, Error> {
    let field = algebra.field();
    let quiver = algebra.quiver();
    let mut levels = Vec::with_capacity(n_max + 1);

    let s0 = algebra.path_space(0)?;
    let units: Vec<SparseVec> = (0..s0.len()).map(|u| SparseVec::unit(u, field)).collect();
    levels.push(ResolutionLevel::from_coords(s0, units, Subspace::full(s0.len(), field)));
    if n_max == 0 {
        return Ok(ResolutionData { levels });
    }

    let s1 = algebra.path_space(1)?;
    let arrows: Vec<SparseVec> = (0..quiver.num_arrows())
        .map(|a| {
            let idx = s1.index_of(&Path::arrow(quiver, a)).expect("arrow path");
            SparseVec::unit(idx, field)
        })
        .collect();
    levels.push(ResolutionLevel::from_coords(
        s1,
        arrows,
        Subspace::full(s1.len(), field),
    ));
    if n_max == 1 {
        return Ok(ResolutionData { levels });
    }

    let s2 = algebra.path_space(2)?;
    let relations = algebra.relation_span();
    levels.push(blocked_level(s2, relations.clone()));

    // R rows grouped by block, for building V^{⊗(n-2)} ⊗ R.
    let mut r_by_block: BTreeMap<(usize, usize), Vec<&SparseVec>> = BTreeMap::new();
    for row in relations.rows() {
        let p = s2.path(row.leading().expect("nonzero row").0);
        r_by_block.entry((p.source, p.target)).or_default().push(row);
    }

    for n in 3..=n_max {
        let space = algebra.path_space(n)?;
        let prev_space = algebra.path_space(n - 1)?;
        let head_space = algebra.path_space(n - 2)?;
        let prev = &levels[n - 1];
        let mut rows: Vec<SparseVec> = Vec::new();
        for ((u, v), _) in space.blocks() {
            let mut left = Vec::new();
            for (g, &(o, t)) in prev.coords.iter().zip(&prev.endpoints) {
                if o != u {
                    continue;
                }
                for (a, arrow) in quiver.arrows().iter().enumerate() {
                    if arrow.source == t && arrow.target == v {
                        let idx = s1.index_of(&Path::arrow(quiver, a)).expect("arrow path");
                        left.push(tensor_coords(prev_space, g, s1, &SparseVec::unit(idx, field), space));
                    }
                }
            }
            if left.is_empty() {
                continue;
            }
            let mut right = Vec::new();
            for (k, p) in head_space.paths().iter().enumerate() {
                if p.source != u {
                    continue;
                }
                for r in r_by_block.get(&(p.target, v)).into_iter().flatten() {
                    right.push(tensor_coords(head_space, &SparseVec::unit(k, field), s2, r, space));
                }
            }
            let a = Subspace::span(space.len(), &left);
            let b = Subspace::span(space.len(), &right);
            rows.extend(a.intersect(&b)?.rows().iter().cloned());
        }
        let span = Subspace::span(space.len(), &rows);
        levels.push(ResolutionLevel::from_coords(space, rows, span));
    }
    Ok(ResolutionData { levels })
}

/// Splits an RREF subspace into per-block rows, blocks in vertex order.
fn blocked_level(space: &PathSpace, span: Subspace) -> ResolutionLevel {
    let mut by_block: BTreeMap<(usize, usize), Vec<SparseVec>> = BTreeMap::new();
    for row in span.rows() {
        let p = space.path(row.leading().expect("nonzero row").0);
        by_block.entry((p.source, p.target)).or_default().push(row.clone());
    }
    let rows = by_block.into_values().flatten().collect();
    ResolutionLevel::from_coords(space, rows, span)
}

/// Replaces the basis of level `n` by `elements`, which must be uniform of
/// degree `n` and form a basis of `K^n`.
pub fn override_basis(
    data: &ResolutionData,
    algebra: &GradedAlgebra,
    n: usize,
    elements: &[TensorElement],
) -> Result<ResolutionData, Error> {
    let level = data.level(n)?;
    let space = algebra.path_space(n)?;
    let mismatch = |reason: String| Error::SpanMismatch { n, reason };
    for (k, e) in elements.iter().enumerate() {
        if e.degree() != n {
            return Err(mismatch(format!("element {k} has degree {}", e.degree())));
        }
        if !e.is_uniform() {
            return Err(mismatch(format!("element {k} is not uniform")));
        }
    }
    let coords: Vec<SparseVec> = elements.iter().map(|e| e.to_vec(space)).collect();
    if let Some(k) = coords.iter().position(|v| !level.span.contains(v)) {
        return Err(mismatch(format!("element {k} does not lie in K^{n}")));
    }
    let rank = Subspace::span(space.len(), &coords).dim();
    if rank != coords.len() || rank != level.span.dim() {
        return Err(mismatch(format!(
            "{} elements of rank {rank}, but dim K^{n} = {}",
            coords.len(),
            level.span.dim()
        )));
    }
    let mut levels = data.levels.clone();
    levels[n] = ResolutionLevel::from_coords(space, coords, level.span.clone());
    Ok(ResolutionData { levels })
}

/// Homology of the augmented complex `F → Λ_0` at `(n, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyEntry {
    pub n: usize,
    pub d: usize,
    pub dim_chains: usize,
    pub homology: usize,
}

/// Outcome of [`verify_exactness`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    /// Every `f^n_i` is homogeneous of degree exactly `n`.
    pub linear: bool,
    pub entries: Vec<HomologyEntry>,
}

impl ExactnessReport {
    pub fn first_failure(&self) -> Option<&HomologyEntry> {
        self.entries.iter().find(|e| e.homology != 0)
    }

    pub fn is_exact(&self) -> bool {
        self.linear && self.first_failure().is_none()
    }

    pub fn check(&self) -> Result<(), Error> {
        match self.first_failure() {
            Some(e) => Err(Error::ExactnessFailure {
                n: e.n,
                d: e.d,
                homology: e.homology,
            }),
            None => Ok(()),
        }
    }
}

/// Normal indices of `Λ_d` basis elements with the given source.
fn row_basis(algebra: &GradedAlgebra, d: usize, source: usize) -> Result<Vec<usize>, AlgebraError> {
    let dim = algebra.piece(d)?.dim();
    let mut out = Vec::new();
    for k in 0..dim {
        if algebra.basis_path(d, k)?.source == source {
            out.push(k);
        }
    }
    Ok(out)
}

/// `F^n_d = ⊕_i 𝔱(f^n_i) Λ_{d-n}` indexed by `(i, k)`.
struct ChainSpace {
    index: BTreeMap<(usize, usize), usize>,
}

impl ChainSpace {
    fn new(session: &Session, n: usize, d: usize) -> Result<Self, Error> {
        let mut index = BTreeMap::new();
        if d >= n {
            let level = session.resolution().level(n)?;
            for i in 0..level.len() {
                for k in row_basis(session.algebra(), d - n, level.terminus(i))? {
                    let next = index.len();
                    index.insert((i, k), next);
                }
            }
        }
        Ok(ChainSpace { index })
    }

    fn dim(&self) -> usize {
        self.index.len()
    }
}

/// Rank of `d^n: F^n_d → F^{n-1}_d`, `ε_i λ ↦ Σ c_pq(n,i,n-1) ε_p f¹_q λ`.
fn differential_rank(
    session: &Session,
    n: usize,
    d: usize,
    source: &ChainSpace,
    target: &ChainSpace,
) -> Result<usize, Error> {
    if source.dim() == 0 || target.dim() == 0 {
        return Ok(0);
    }
    let algebra = session.algebra();
    let slice = session.comult(n, n - 1)?;
    let field = algebra.field();
    let mut rows = Vec::with_capacity(source.dim());
    for &(i, k) in source.index.keys() {
        let lam = AlgebraElement::homogeneous(d - n, SparseVec::unit(k, field));
        let mut row = SparseVec::new();
        for ((p, q), c) in slice.entries_for(i) {
            let prod = algebra.multiply(&algebra.arrow(q), &lam)?;
            if let Some(v) = prod.component(d - n + 1) {
                for (k2, x) in v.iter() {
                    let col = target.index[&(p, k2)];
                    row = row.add_scaled(&SparseVec::unit(col, field), &(c * x));
                }
            }
        }
        rows.push(row);
    }
    Ok(Subspace::span(target.dim(), &rows).dim())
}

/// Homology of the augmented resolution at every `(n, d)` with `n < N`,
/// `n ≤ d ≤ N`. Nonzero homology means the input is not Koszul (or the
/// bound is too small to see the relevant syzygies).
pub fn exactness_report(session: &Session) -> Result<ExactnessReport, Error> {
    let data = session.resolution();
    let top = data.max_degree();
    let linear = data
        .levels()
        .iter()
        .all(|l| l.generators().iter().all(|g| g.degree() == l.degree()));
    let vertices = session.algebra().quiver().num_vertices();
    let mut entries = Vec::new();
    for n in 0..top {
        for d in n..=top {
            let here = ChainSpace::new(session, n, d)?;
            let incoming = ChainSpace::new(session, n + 1, d)?;
            let rank_out = if n == 0 {
                if d == 0 {
                    vertices
                } else {
                    0
                }
            } else {
                let below = ChainSpace::new(session, n - 1, d)?;
                differential_rank(session, n, d, &here, &below)?
            };
            let rank_in = differential_rank(session, n + 1, d, &incoming, &here)?;
            entries.push(HomologyEntry {
                n,
                d,
                dim_chains: here.dim(),
                homology: here.dim().saturating_sub(rank_out + rank_in),
            });
        }
    }
    Ok(ExactnessReport { linear, entries })
}

/// [`exactness_report`] followed by a check that all homology vanishes.
pub fn verify_exactness(session: &Session) -> Result<ExactnessReport, Error> {
    let report = exactness_report(session)?;
    report.check()?;
    Ok(report)
}
