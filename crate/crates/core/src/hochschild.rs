//! Hochschild cochains on the minimal bimodule resolution.
//!
//! An `n`-cochain is a tuple `(λ_i)` with `λ_i ∈ 𝔬(f^n_i) Λ 𝔱(f^n_i)`. The
//! weight of a homogeneous cochain is the `Λ`-degree of its values; the
//! coboundary raises it by one.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::check::CheckFailure;
use crate::comult::ComultTable;
use crate::linalg::{left_kernel, SparseVec, Subspace};
use crate::scalar::Scalar;
use crate::session::Session;
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    values: Vec<AlgebraElement>,
}

impl Cochain {
    /// Validates the length and that each `λ_i` lies in `𝔬(f^n_i) Λ 𝔱(f^n_i)`.
    pub fn new(session: &Session, degree: usize, values: Vec<AlgebraElement>) -> Result<Self, Error> {
        let level = session.resolution().level(degree)?;
        if values.len() != level.len() {
            return Err(Error::InvalidCochain(format!(
                "degree {degree} needs {} values, got {}",
                level.len(),
                values.len()
            )));
        }
        for (i, v) in values.iter().enumerate() {
            let (o, t) = level.endpoints(i);
            session.algebra().check_block(v, o, t)?;
        }
        Ok(Cochain { degree, values })
    }

    pub fn zero(session: &Session, degree: usize) -> Result<Self, Error> {
        let len = session.resolution().level(degree)?.len();
        Ok(Cochain {
            degree,
            values: vec![AlgebraElement::zero(); len],
        })
    }

    /// The unit `λ_i = e_i` in degree 0.
    pub fn unit(session: &Session) -> Self {
        let vertices = session.algebra().quiver().num_vertices();
        Cochain {
            degree: 0,
            values: (0..vertices).map(|u| session.algebra().vertex(u)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[AlgebraElement] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &AlgebraElement {
        &self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(AlgebraElement::is_zero)
    }

    /// Weights present in the values.
    pub fn weights(&self) -> BTreeSet<usize> {
        self.values.iter().flat_map(|v| v.degrees()).collect()
    }

    /// The weight, when the cochain is nonzero and homogeneous.
    pub fn weight(&self) -> Option<usize> {
        let w = self.weights();
        (w.len() == 1).then(|| *w.iter().next().expect("one weight"))
    }

    pub fn weight_component(&self, w: usize) -> Cochain {
        Cochain {
            degree: self.degree,
            values: self
                .values
                .iter()
                .map(|v| match v.component(w) {
                    Some(c) => AlgebraElement::homogeneous(w, c.clone()),
                    None => AlgebraElement::zero(),
                })
                .collect(),
        }
    }

    fn zip(&self, other: &Cochain, f: impl Fn(&AlgebraElement, &AlgebraElement) -> AlgebraElement) -> Cochain {
        assert_eq!(self.degree, other.degree, "cochain degrees differ");
        Cochain {
            degree: self.degree,
            values: self.values.iter().zip(&other.values).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        self.zip(other, AlgebraElement::add)
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.zip(other, AlgebraElement::sub)
    }

    pub fn scale(&self, factor: &Scalar) -> Cochain {
        Cochain {
            degree: self.degree,
            values: self.values.iter().map(|v| v.scale(factor)).collect(),
        }
    }
}

/// `(δ^{n+1})*`: `result_l = Σ c_pj(n+1,l,1) f¹_p λ_j + (-1)^{n+1} Σ c_jq(n+1,l,n) λ_j f¹_q`.
pub fn coboundary(session: &Session, c: &Cochain) -> Result<Cochain, Error> {
    let n = c.degree;
    let algebra = session.algebra();
    let left = session.comult(n + 1, 1)?;
    let right = session.comult(n + 1, n)?;
    let len = session.resolution().level(n + 1)?.len();
    let sign = if (n + 1).is_multiple_of(2) {
        session.field().one()
    } else {
        session.field().from_i64(-1)
    };
    let mut values = vec![AlgebraElement::zero(); len];
    for ((l, p, j), k) in left.entries() {
        if c.values[j].is_zero() {
            continue;
        }
        let prod = algebra.multiply(&algebra.arrow(p), &c.values[j])?;
        values[l] = values[l].add(&prod.scale(k));
    }
    for ((l, j, q), k) in right.entries() {
        if c.values[j].is_zero() {
            continue;
        }
        let prod = algebra.multiply(&c.values[j], &algebra.arrow(q))?;
        values[l] = values[l].add(&prod.scale(&(k * &sign)));
    }
    Ok(Cochain { degree: n + 1, values })
}

/// `(η∗θ)_i = Σ c_pq(n+m,i,n) λ_p λ'_q` for `η` of degree `n`, `θ` of degree `m`.
pub fn cup(session: &Session, eta: &Cochain, theta: &Cochain) -> Result<Cochain, Error> {
    let (n, m) = (eta.degree, theta.degree);
    let algebra = session.algebra();
    let slice = session.comult(n + m, n)?;
    let len = session.resolution().level(n + m)?.len();
    let mut values = vec![AlgebraElement::zero(); len];
    for ((i, p, q), c) in slice.entries() {
        if eta.values[p].is_zero() || theta.values[q].is_zero() {
            continue;
        }
        let prod = algebra.multiply(&eta.values[p], &theta.values[q])?;
        values[i] = values[i].add(&prod.scale(c));
    }
    Ok(Cochain { degree: n + m, values })
}

/// Coordinates for the cochain space `C^n_w = ⊕_i 𝔬_i Λ_w 𝔱_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainSpace {
    degree: usize,
    weight: usize,
    /// Normal indices of `Λ_w` available to each `λ_i`.
    blocks: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    dim: usize,
}

impl CochainSpace {
    pub fn new(session: &Session, degree: usize, weight: usize) -> Result<Self, Error> {
        let level = session.resolution().level(degree)?;
        let algebra = session.algebra();
        let vanishes = algebra.top_degree_bound().is_some_and(|z| weight >= z);
        let piece = if vanishes { None } else { Some(algebra.piece(weight)?) };
        let mut blocks = Vec::with_capacity(level.len());
        let mut offsets = Vec::with_capacity(level.len());
        let mut dim = 0;
        for i in 0..level.len() {
            let (o, t) = level.endpoints(i);
            let b = piece.map_or_else(Vec::new, |p| p.block(o, t).to_vec());
            offsets.push(dim);
            dim += b.len();
            blocks.push(b);
        }
        Ok(CochainSpace {
            degree,
            weight,
            blocks,
            offsets,
            dim,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coordinates of the weight-`w` component of `c`.
    pub fn to_vec(&self, c: &Cochain) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, v) in c.values.iter().enumerate() {
            if let Some(comp) = v.component(self.weight) {
                for (k, x) in comp.iter() {
                    let pos = self.blocks[i]
                        .binary_search(&k)
                        .expect("value lies in its vertex block");
                    pairs.push((self.offsets[i] + pos, x.clone()));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn from_vec(&self, v: &SparseVec) -> Cochain {
        let mut comps: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.blocks.len()];
        for (idx, x) in v.iter() {
            let i = self.offsets.partition_point(|&o| o <= idx) - 1;
            comps[i].push((self.blocks[i][idx - self.offsets[i]], x.clone()));
        }
        Cochain {
            degree: self.degree,
            values: comps
                .into_iter()
                .map(|pairs| AlgebraElement::homogeneous(self.weight, SparseVec::from_pairs(pairs)))
                .collect(),
        }
    }

    /// The cochain with a single basis value.
    pub fn basis_cochain(&self, session: &Session, index: usize) -> Cochain {
        self.from_vec(&SparseVec::unit(index, session.field()))
    }
}

/// Dimensions of cocycles, coboundaries and cohomology at `(n, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CohomologyDims {
    pub n: usize,
    pub weight: usize,
    pub dim_cochains: usize,
    pub dim_ker: usize,
    pub dim_im: usize,
    pub dim_hh: usize,
}

/// `HH^{n,w}` as cocycles modulo coboundaries inside `C^n_w`.
#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    space: CochainSpace,
    cocycles: Subspace,
    coboundaries: Subspace,
    /// RREF of the cocycles reduced modulo the coboundaries; its rows are
    /// the canonical representatives of a basis of `HH^{n,w}`.
    quotient: Subspace,
}

impl CohomologyGroup {
    pub fn space(&self) -> &CochainSpace {
        &self.space
    }

    pub fn cocycles(&self) -> &Subspace {
        &self.cocycles
    }

    pub fn coboundaries(&self) -> &Subspace {
        &self.coboundaries
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn dims(&self) -> CohomologyDims {
        CohomologyDims {
            n: self.space.degree,
            weight: self.space.weight,
            dim_cochains: self.space.dim,
            dim_ker: self.cocycles.dim(),
            dim_im: self.coboundaries.dim(),
            dim_hh: self.quotient.dim(),
        }
    }

    /// Canonical cocycles representing the basis of `HH^{n,w}`.
    pub fn representatives(&self) -> Vec<Cochain> {
        self.quotient.rows().iter().map(|r| self.space.from_vec(r)).collect()
    }

    /// Coordinates of the class of a weight-`w` cochain.
    pub fn class_of(&self, c: &Cochain) -> Result<CohomologyClass, Error> {
        let v = self.space.to_vec(c);
        if !self.cocycles.contains(&v) {
            return Err(Error::NotCocycle {
                n: self.space.degree,
                weight: self.space.weight,
            });
        }
        let rest = self.coboundaries.reduce(&v);
        let coords = self
            .quotient
            .coordinates(&rest)
            .expect("reduced cocycles lie in the complement");
        Ok(CohomologyClass {
            n: self.space.degree,
            weight: self.space.weight,
            coords,
        })
    }
}

/// Images of the basis of `C^n_w` under the coboundary, in `C^{n+1}_{w+1}`.
fn coboundary_images(session: &Session, source: &CochainSpace) -> Result<(CochainSpace, Vec<SparseVec>), Error> {
    let target = CochainSpace::new(session, source.degree + 1, source.weight + 1)?;
    let mut images = Vec::with_capacity(source.dim);
    for k in 0..source.dim {
        let d = coboundary(session, &source.basis_cochain(session, k))?;
        images.push(target.to_vec(&d));
    }
    Ok((target, images))
}

pub(crate) fn compute_group(session: &Session, n: usize, w: usize) -> Result<CohomologyGroup, Error> {
    let space = CochainSpace::new(session, n, w)?;
    let (target, images) = coboundary_images(session, &space)?;
    let kernel = left_kernel(&images, target.dim, session.field());
    let cocycles = Subspace::span(space.dim, &kernel);
    let coboundaries = if n == 0 || w == 0 {
        Subspace::zero(space.dim)
    } else {
        let below = CochainSpace::new(session, n - 1, w - 1)?;
        let (_, ims) = coboundary_images(session, &below)?;
        Subspace::span(space.dim, &ims)
    };
    let reduced: Vec<SparseVec> = cocycles.rows().iter().map(|r| coboundaries.reduce(r)).collect();
    let quotient = Subspace::span(space.dim, &reduced);
    Ok(CohomologyGroup {
        space,
        cocycles,
        coboundaries,
        quotient,
    })
}

/// `dim ker (δ^{n+1})*`, `dim im (δ^n)*` and `dim HH^{n,w}`.
pub fn cohomology_dims(session: &Session, n: usize, w: usize) -> Result<CohomologyDims, Error> {
    Ok(session.cohomology_group(n, w)?.dims())
}

/// `HH^{n,w}` for every weight with `Λ_w ≠ 0`; requires `Λ` finite-dimensional.
pub fn cohomology_all_weights(session: &Session, n: usize) -> Result<Vec<CohomologyDims>, Error> {
    let top = session
        .algebra()
        .top_degree_bound()
        .ok_or(Error::InfiniteDimensionalWeightRange { n })?;
    (0..top).map(|w| cohomology_dims(session, n, w)).collect()
}

/// Coordinates of a class in `HH^{n,w}` relative to the canonical basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyClass {
    pub n: usize,
    pub weight: usize,
    pub coords: Vec<Scalar>,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }
}

/// Splits `c` by weight and reduces each component modulo coboundaries.
/// The class is zero exactly when every returned component is zero.
pub fn reduce_class(session: &Session, c: &Cochain) -> Result<Vec<CohomologyClass>, Error> {
    c.weights()
        .into_iter()
        .map(|w| session.cohomology_group(c.degree, w)?.class_of(&c.weight_component(w)))
        .collect()
}

/// Whether `c` represents the zero class.
pub fn is_zero_class(session: &Session, c: &Cochain) -> Result<bool, Error> {
    Ok(reduce_class(session, c)?.iter().all(CohomologyClass::is_zero))
}

type BimoduleKey = (usize, (usize, usize), (usize, usize));

/// Terms `(j, L, R, c)` of `δ^n(ε^n_i) = Σ c L ε^{n-1}_j R`.
fn delta_terms(
    algebra: &GradedAlgebra,
    session: &Session,
    table: &ComultTable,
    n: usize,
    i: usize,
) -> Result<Vec<(usize, AlgebraElement, AlgebraElement, Scalar)>, Error> {
    let lower = session.resolution().level(n - 1)?;
    let field = algebra.field();
    let sign = if n.is_multiple_of(2) {
        field.one()
    } else {
        field.from_i64(-1)
    };
    let mut out = Vec::new();
    for ((p, j), c) in table.get(n, 1)?.entries_for(i) {
        out.push((j, algebra.arrow(p), algebra.vertex(lower.terminus(j)), c.clone()));
    }
    for ((j, q), c) in table.get(n, n - 1)?.entries_for(i) {
        out.push((j, algebra.vertex(lower.origin(j)), algebra.arrow(q), c * &sign));
    }
    Ok(out)
}

fn add_tensor(
    acc: &mut BTreeMap<BimoduleKey, Scalar>,
    k: usize,
    left: &AlgebraElement,
    right: &AlgebraElement,
    c: &Scalar,
) {
    for (dl, lv) in left.components() {
        for (kl, x) in lv.iter() {
            for (dr, rv) in right.components() {
                for (kr, y) in rv.iter() {
                    let key = (k, (dl, kl), (dr, kr));
                    let term = &(c * x) * y;
                    let entry = acc.entry(key).or_insert_with(|| term.field().zero());
                    *entry += &term;
                    if entry.is_zero() {
                        acc.remove(&key);
                    }
                }
            }
        }
    }
}

/// Checks `δ^{n-1} ∘ δ^n = 0` on every generator for `1 ≤ n ≤ n_max`, as an
/// identity in `⊕ Λ ⊗ Λ` (and in `Λ` when `n = 1`), using the constants in
/// `table`.
pub fn verify_complex(session: &Session, table: &ComultTable, n_max: usize) -> Result<(), Error> {
    let algebra = session.algebra();
    for n in 1..=n_max {
        let level = session.resolution().level(n)?;
        for i in 0..level.len() {
            let outer = delta_terms(algebra, session, table, n, i)?;
            let vanishes = if n == 1 {
                let mut sum = AlgebraElement::zero();
                for (_, l, r, c) in &outer {
                    sum = sum.add(&algebra.multiply(l, r)?.scale(c));
                }
                sum.is_zero()
            } else {
                let mut acc = BTreeMap::new();
                for (j, l, r, c) in &outer {
                    for (k, l2, r2, c2) in delta_terms(algebra, session, table, n - 1, *j)? {
                        let left = algebra.multiply(l, &l2)?;
                        let right = algebra.multiply(&r2, r)?;
                        add_tensor(&mut acc, k, &left, &right, &(c * &c2));
                    }
                }
                acc.is_empty()
            };
            if !vanishes {
                return Err(CheckFailure::DifferentialSquare { n, i }.into());
            }
        }
    }
    Ok(())
}
