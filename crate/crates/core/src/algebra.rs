//! The graded algebra `Λ = kQ/I`: normal-form bases of each `Λ_d` and
//! multiplication of homogeneous elements.
//!
//! `Λ_d = V^{⊗d} / I_d` with `I_d = Σ V^{⊗i} ⊗ R ⊗ V^{⊗(d-2-i)}`. The normal
//! basis of `Λ_d` is the set of non-pivot paths of the RREF of `I_d` under
//! the fixed path order, so each pivot path rewrites to a combination of
//! later paths.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{EchelonBasis, SparseVec, Subspace};
use crate::presentation::Presentation;
use crate::quiver::{Path, PathSpace, Quiver};
use crate::scalar::{Field, Scalar};
use crate::tensor::TensorElement;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("degree {degree} exceeds the truncation bound {bound}; raise maxdeg")]
    DegreeOverflow { degree: usize, bound: usize },
    #[error("element is not in e_{origin}·Λ·e_{terminus}")]
    VertexMismatch { origin: usize, terminus: usize },
}

/// Outcome of [`GradedAlgebra::finite_dimensionality`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FiniteDimensionality {
    /// `Λ_d = 0` from some `d` on; carries `dim Λ`.
    FiniteDim(usize),
    /// Every `Λ_d` with `d ≤ N` is nonzero.
    NotDecidedBy(usize),
}

/// Normal-form data for one graded piece `Λ_d`.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    degree: usize,
    ideal: Subspace,
    normal: Vec<usize>,
    normal_pos: HashMap<usize, usize>,
    reduction: Vec<SparseVec>,
    blocks: BTreeMap<(usize, usize), Vec<usize>>,
}

impl GradedPiece {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// The ideal component `I_d` as a subspace of `V^{⊗d}`.
    pub fn ideal(&self) -> &Subspace {
        &self.ideal
    }

    /// Path-space index of the `k`-th normal basis element.
    pub fn normal_path_index(&self, k: usize) -> usize {
        self.normal[k]
    }

    /// Normal index of a path index, when the path is itself normal.
    pub fn normal_index(&self, path_index: usize) -> Option<usize> {
        self.normal_pos.get(&path_index).copied()
    }

    /// Projection `V^{⊗d} → Λ_d` of a single path.
    pub fn project_path(&self, path_index: usize) -> &SparseVec {
        &self.reduction[path_index]
    }

    pub fn project(&self, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, c) in v.iter() {
            acc = acc.add_scaled(&self.reduction[i], c);
        }
        acc
    }

    /// Normal indices of basis paths from `u` to `v`.
    pub fn block(&self, u: usize, v: usize) -> &[usize] {
        self.blocks.get(&(u, v)).map_or(&[], |b| b.as_slice())
    }
}

/// An element of `Λ`: homogeneous components in normal-form coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement {
    components: BTreeMap<usize, SparseVec>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn homogeneous(degree: usize, coords: SparseVec) -> Self {
        let mut e = AlgebraElement::zero();
        if !coords.is_zero() {
            e.components.insert(degree, coords);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component(&self, degree: usize) -> Option<&SparseVec> {
        self.components.get(&degree)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &SparseVec)> {
        self.components.iter().map(|(d, v)| (*d, v))
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.components.keys().copied()
    }

    /// Degree if the element is nonzero and homogeneous.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.components.keys();
        let d = *it.next()?;
        it.next().is_none().then_some(d)
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (d, v) in &other.components {
            out.add_component(*d, v, None);
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (d, v) in &other.components {
            let f = v.leading().expect("stored components are nonzero").1.field();
            out.add_component(*d, v, Some(&f.from_i64(-1)));
        }
        out
    }

    pub fn scale(&self, factor: &Scalar) -> AlgebraElement {
        if factor.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement {
            components: self.components.iter().map(|(d, v)| (*d, v.scale(factor))).collect(),
        }
    }

    /// Adds `factor * v` (or `v`) into the degree-`d` component.
    pub fn add_component(&mut self, d: usize, v: &SparseVec, factor: Option<&Scalar>) {
        let Some((_, lead)) = v.leading() else { return };
        let one = lead.field().one();
        let factor = factor.unwrap_or(&one);
        let current = self.components.remove(&d).unwrap_or_default();
        let next = current.add_scaled(v, factor);
        if !next.is_zero() {
            self.components.insert(d, next);
        }
    }
}

/// `Λ = kQ/I` truncated at a degree bound, with lazily computed pieces.
#[derive(Debug)]
pub struct GradedAlgebra {
    presentation: Presentation,
    bound: usize,
    relation_span: Subspace,
    spaces: Vec<OnceLock<PathSpace>>,
    pieces: Vec<OnceLock<GradedPiece>>,
    top: OnceLock<Option<usize>>,
}

impl GradedAlgebra {
    /// Uses `presentation.maxdeg` as the degree bound.
    pub fn new(presentation: Presentation) -> Self {
        let bound = presentation.maxdeg;
        let space2 = PathSpace::new(&presentation.quiver, 2);
        // I is generated by the uniform components e_u r e_v of the relations.
        let mut basis = EchelonBasis::new(space2.len());
        for r in &presentation.relations {
            for u in 0..presentation.quiver.num_vertices() {
                for v in 0..presentation.quiver.num_vertices() {
                    let b = r.block(u, v);
                    if !b.is_zero() {
                        basis.insert(b.to_vec(&space2));
                    }
                }
            }
        }
        GradedAlgebra {
            relation_span: basis.into_subspace(),
            spaces: (0..=bound.max(2)).map(|_| OnceLock::new()).collect(),
            pieces: (0..=bound.max(2)).map(|_| OnceLock::new()).collect(),
            top: OnceLock::new(),
            presentation,
            bound,
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        &self.presentation.quiver
    }

    pub fn field(&self) -> Field {
        self.presentation.field
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// The span `R ⊆ V^{⊗2}` of the relations, in RREF.
    pub fn relation_span(&self) -> &Subspace {
        &self.relation_span
    }

    fn check_degree(&self, degree: usize) -> Result<(), AlgebraError> {
        if degree > self.bound.max(2) {
            return Err(AlgebraError::DegreeOverflow {
                degree,
                bound: self.bound,
            });
        }
        Ok(())
    }

    /// Indexed path basis of `V^{⊗n}`.
    pub fn path_space(&self, n: usize) -> Result<&PathSpace, AlgebraError> {
        self.check_degree(n)?;
        Ok(self.spaces[n].get_or_init(|| PathSpace::new(self.quiver(), n)))
    }

    /// Normal-form data for `Λ_d`.
    pub fn piece(&self, d: usize) -> Result<&GradedPiece, AlgebraError> {
        self.check_degree(d)?;
        if let Some(p) = self.pieces[d].get() {
            return Ok(p);
        }
        let ideal = self.ideal(d)?;
        let piece = self.build_piece(d, ideal)?;
        Ok(self.pieces[d].get_or_init(|| piece))
    }

    fn ideal(&self, d: usize) -> Result<Subspace, AlgebraError> {
        let space = self.path_space(d)?;
        if d < 2 {
            return Ok(Subspace::zero(space.len()));
        }
        if d == 2 {
            return Ok(self.relation_span.clone());
        }
        // I_d = I_{d-1} ⊗ V + V ⊗ I_{d-1}.
        let prev_space = self.path_space(d - 1)?;
        let prev = self.piece(d - 1)?.ideal().clone();
        let quiver = self.quiver();
        let mut basis = EchelonBasis::new(space.len());
        for row in prev.rows() {
            let t = TensorElement::from_vec(prev_space, row);
            for a in 0..quiver.num_arrows() {
                let arrow = TensorElement::from_path(Path::arrow(quiver, a), self.field().one());
                for prod in [t.concat(&arrow), arrow.concat(&t)] {
                    if !prod.is_zero() {
                        basis.insert(prod.to_vec(space));
                    }
                }
            }
        }
        Ok(basis.into_subspace())
    }

    fn build_piece(&self, d: usize, ideal: Subspace) -> Result<GradedPiece, AlgebraError> {
        let space = self.path_space(d)?;
        let field = self.field();
        let pivot_row: HashMap<usize, usize> = ideal.pivots().iter().enumerate().map(|(r, &p)| (p, r)).collect();
        let normal: Vec<usize> = (0..space.len()).filter(|j| !pivot_row.contains_key(j)).collect();
        let normal_pos: HashMap<usize, usize> = normal.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let minus_one = field.from_i64(-1);
        let reduction = (0..space.len())
            .map(|j| match pivot_row.get(&j) {
                None => SparseVec::unit(normal_pos[&j], field),
                Some(&r) => ideal.rows()[r]
                    .remap(|c| if c == j { None } else { normal_pos.get(&c).copied() })
                    .scale(&minus_one),
            })
            .collect();
        let mut blocks: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, &j) in normal.iter().enumerate() {
            let p = space.path(j);
            blocks.entry((p.source, p.target)).or_default().push(k);
        }
        Ok(GradedPiece {
            degree: d,
            ideal,
            normal,
            normal_pos,
            reduction,
            blocks,
        })
    }

    /// Dimensions of `Λ_0, …, Λ_N`.
    pub fn dims(&self) -> Result<Vec<usize>, AlgebraError> {
        (0..=self.bound).map(|d| self.piece(d).map(GradedPiece::dim)).collect()
    }

    /// First degree `d ≤ N` with `Λ_d = 0`, if any.
    pub fn top_degree_bound(&self) -> Option<usize> {
        *self
            .top
            .get_or_init(|| (0..=self.bound).find(|&d| self.piece(d).map(|p| p.dim() == 0).unwrap_or(false)))
    }

    pub fn finite_dimensionality(&self) -> FiniteDimensionality {
        match self.top_degree_bound() {
            Some(d) => {
                FiniteDimensionality::FiniteDim((0..d).map(|e| self.piece(e).map(GradedPiece::dim).unwrap_or(0)).sum())
            }
            None => FiniteDimensionality::NotDecidedBy(self.bound),
        }
    }

    /// Whether degree `d` is known to vanish (beyond a zero piece).
    fn vanishes(&self, d: usize) -> bool {
        self.top_degree_bound().is_some_and(|z| d >= z)
    }

    /// The normal path for the `k`-th basis element of `Λ_d`.
    pub fn basis_path(&self, d: usize, k: usize) -> Result<&Path, AlgebraError> {
        let piece = self.piece(d)?;
        Ok(self.path_space(d)?.path(piece.normal_path_index(k)))
    }

    pub fn vertex(&self, u: usize) -> AlgebraElement {
        AlgebraElement::homogeneous(0, SparseVec::unit(u, self.field()))
    }

    pub fn one(&self) -> AlgebraElement {
        let f = self.field();
        AlgebraElement::homogeneous(
            0,
            SparseVec::from_pairs((0..self.quiver().num_vertices()).map(|u| (u, f.one()))),
        )
    }

    pub fn arrow(&self, a: usize) -> AlgebraElement {
        AlgebraElement::homogeneous(1, SparseVec::unit(a, self.field()))
    }

    /// Residue class of a path.
    pub fn path_element(&self, p: &Path) -> Result<AlgebraElement, AlgebraError> {
        let d = p.len();
        if self.vanishes(d) {
            return Ok(AlgebraElement::zero());
        }
        let space = self.path_space(d)?;
        let idx = space.index_of(p).expect("path of the quiver");
        Ok(AlgebraElement::homogeneous(d, self.piece(d)?.project_path(idx).clone()))
    }

    /// Residue class of a tensor element.
    pub fn from_tensor(&self, t: &TensorElement) -> Result<AlgebraElement, AlgebraError> {
        let d = t.degree();
        if t.is_zero() || self.vanishes(d) {
            return Ok(AlgebraElement::zero());
        }
        let space = self.path_space(d)?;
        Ok(AlgebraElement::homogeneous(d, self.piece(d)?.project(&t.to_vec(space))))
    }

    /// Product in `Λ`: concatenate normal paths and project.
    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
        let mut out = AlgebraElement::zero();
        for (d1, v1) in a.components() {
            for (d2, v2) in b.components() {
                let d = d1 + d2;
                if self.vanishes(d) {
                    continue;
                }
                let space = self.path_space(d)?;
                let target = self.piece(d)?;
                let (left, right) = (self.piece(d1)?, self.piece(d2)?);
                let (ls, rs) = (self.path_space(d1)?, self.path_space(d2)?);
                let mut acc = SparseVec::new();
                for (i, x) in v1.iter() {
                    let p = ls.path(left.normal_path_index(i));
                    for (j, y) in v2.iter() {
                        let q = rs.path(right.normal_path_index(j));
                        if let Some(pq) = p.concat(q) {
                            let idx = space.index_of(&pq).expect("composable path");
                            acc = acc.add_scaled(target.project_path(idx), &(x * y));
                        }
                    }
                }
                out.add_component(d, &acc, None);
            }
        }
        Ok(out)
    }

    /// Checks `λ ∈ e_u Λ e_v`.
    pub fn check_block(&self, e: &AlgebraElement, u: usize, v: usize) -> Result<(), AlgebraError> {
        for (d, coords) in e.components() {
            for (k, _) in coords.iter() {
                let p = self.basis_path(d, k)?;
                if p.source != u || p.target != v {
                    return Err(AlgebraError::VertexMismatch { origin: u, terminus: v });
                }
            }
        }
        Ok(())
    }

    /// Terms `(path, coefficient)` in normal form, by degree then basis order.
    pub fn terms(&self, e: &AlgebraElement) -> Vec<(String, Scalar)> {
        let mut out = Vec::new();
        for (d, coords) in e.components() {
            for (k, c) in coords.iter() {
                let p = self.basis_path(d, k).expect("component within bound");
                out.push((self.quiver().format_path(p), c.clone()));
            }
        }
        out
    }

    pub fn format(&self, e: &AlgebraElement) -> String {
        let terms = self.terms(e);
        if terms.is_empty() {
            return "0".into();
        }
        terms
            .iter()
            .map(|(p, c)| if c.is_one() { p.clone() } else { format!("{c}*{p}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses a path into its residue class, e.g. `x.y` or a vertex name.
    pub fn parse_path(&self, text: &str) -> Result<AlgebraElement, crate::Error> {
        let p = self.quiver().parse_path(text)?;
        Ok(self.path_element(&p)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn algebra(text: &str) -> GradedAlgebra {
        GradedAlgebra::new(Presentation::parse(text).unwrap())
    }

    const EX51: &str = "vertex 1\narrow x : 1 -> 1\narrow y : 1 -> 1\nrelation x.x\nrelation x.y + y.x\nmaxdeg 6\n";

    #[test]
    fn two_loop_dims_and_products() {
        let a = algebra(EX51);
        assert_eq!(a.dims().unwrap(), vec![1, 2, 2, 2, 2, 2, 2]);
        let x = a.arrow(0);
        let y = a.arrow(1);
        assert!(a.multiply(&x, &x).unwrap().is_zero());
        let xy = a.multiply(&x, &y).unwrap();
        let yx = a.multiply(&y, &x).unwrap();
        assert_eq!(xy, yx.scale(&a.field().from_i64(-1)));
        assert_eq!(a.format(&yx), "y.x");
        assert_eq!(a.finite_dimensionality(), FiniteDimensionality::NotDecidedBy(6));
    }

    #[test]
    fn idempotents() {
        let a = algebra("vertex 1\nvertex 2\narrow a : 1 -> 2\nmaxdeg 3\n");
        let e1 = a.vertex(0);
        assert_eq!(a.multiply(&e1, &e1).unwrap(), e1);
        assert!(a.multiply(&e1, &a.vertex(1)).unwrap().is_zero());
        let arrow = a.arrow(0);
        assert_eq!(a.multiply(&e1, &arrow).unwrap(), arrow);
        assert!(a.multiply(&arrow, &e1).unwrap().is_zero());
        assert_eq!(a.multiply(&a.one(), &arrow).unwrap(), arrow);
        assert_eq!(a.finite_dimensionality(), FiniteDimensionality::FiniteDim(3));
    }

    #[test]
    fn overflow_past_bound() {
        let a = algebra("vertex 1\narrow x : 1 -> 1\nmaxdeg 2\n");
        let x = a.arrow(0);
        let xx = a.multiply(&x, &x).unwrap();
        assert_eq!(
            a.multiply(&xx, &x),
            Err(AlgebraError::DegreeOverflow { degree: 3, bound: 2 })
        );
    }

    #[test]
    fn radical_square_zero() {
        let a = algebra("vertex 1\narrow x : 1 -> 1\narrow y : 1 -> 1\nrelation x.x\nrelation x.y\nrelation y.x\nrelation y.y\nmaxdeg 4\n");
        assert_eq!(a.dims().unwrap(), vec![1, 2, 0, 0, 0]);
        assert_eq!(a.finite_dimensionality(), FiniteDimensionality::FiniteDim(3));
    }

    #[test]
    fn non_uniform_relation_splits_into_blocks() {
        // a.b + c.d mixes the blocks (1,1) and (2,2); both components vanish.
        let a = algebra("vertex 1\nvertex 2\narrow a : 1 -> 2\narrow b : 2 -> 1\narrow c : 2 -> 1\narrow d : 1 -> 2\nrelation a.b + c.d\nmaxdeg 3\n");
        assert_eq!(a.relation_span().dim(), 2);
        let ab = a.parse_path("a.b").unwrap();
        assert!(ab.is_zero());
    }
}
