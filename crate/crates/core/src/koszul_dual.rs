//! The Koszul dual `E(Λ)` on the dual bases `f̂^n_i`, its graded centre,
//! and the map `φ: HH*(Λ) → E(Λ)`.
//!
//! Products: `f̂^m_i · f̂^n_j = Σ_l c_ji(m+n,l,n) f̂^{m+n}_l`.

use crate::check::CheckFailure;
use crate::hochschild::Cochain;
use crate::linalg::{left_kernel, SparseVec, Subspace};
use crate::scalar::Scalar;
use crate::session::Session;
use crate::Error;

/// A homogeneous element `Σ α_i f̂^n_i` of `E(Λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtElement {
    degree: usize,
    coords: SparseVec,
}

impl ExtElement {
    pub fn new(degree: usize, coords: SparseVec) -> Self {
        ExtElement { degree, coords }
    }

    pub fn zero(degree: usize) -> Self {
        ExtElement::new(degree, SparseVec::new())
    }

    /// `f̂^n_i`.
    pub fn basis(session: &Session, degree: usize, i: usize) -> Self {
        ExtElement::new(degree, SparseVec::unit(i, session.field()))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &SparseVec {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn add(&self, other: &ExtElement) -> ExtElement {
        assert_eq!(self.degree, other.degree, "degrees differ");
        ExtElement::new(self.degree, self.coords.add(&other.coords))
    }

    pub fn sub(&self, other: &ExtElement) -> ExtElement {
        assert_eq!(self.degree, other.degree, "degrees differ");
        ExtElement::new(self.degree, self.coords.sub(&other.coords))
    }

    pub fn scale(&self, factor: &Scalar) -> ExtElement {
        ExtElement::new(self.degree, self.coords.scale(factor))
    }
}

/// The product `a · b` in `E(Λ)`.
pub fn dual_product(session: &Session, a: &ExtElement, b: &ExtElement) -> Result<ExtElement, Error> {
    let (m, n) = (a.degree, b.degree);
    let slice = session.comult(m + n, n)?;
    let mut pairs = Vec::new();
    for ((l, p, q), c) in slice.entries() {
        if let (Some(x), Some(y)) = (a.coords.get(q), b.coords.get(p)) {
            pairs.push((l, &(c * x) * y));
        }
    }
    Ok(ExtElement::new(m + n, SparseVec::from_pairs(pairs)))
}

/// Structure constants `(i, j, l, c)` with `f̂^m_i f̂^n_j = Σ_l c f̂^{m+n}_l`.
pub fn structure_constants(session: &Session, m: usize, n: usize) -> Result<Vec<(usize, usize, usize, Scalar)>, Error> {
    let slice = session.comult(m + n, n)?;
    let mut out: Vec<_> = slice.entries().map(|((l, j, i), c)| (i, j, l, c.clone())).collect();
    out.sort_by_key(|a| (a.0, a.1, a.2));
    Ok(out)
}

fn graded_sign(session: &Session, a: usize, b: usize) -> Scalar {
    if (a * b).is_multiple_of(2) {
        session.field().one()
    } else {
        session.field().from_i64(-1)
    }
}

/// `y·z − (−1)^{|y||z|} z·y`.
fn graded_commutator(session: &Session, y: &ExtElement, z: &ExtElement) -> Result<ExtElement, Error> {
    let yz = dual_product(session, y, z)?;
    let zy = dual_product(session, z, y)?;
    Ok(yz.sub(&zy.scale(&graded_sign(session, y.degree, z.degree))))
}

/// Basis of `Z_gr(E(Λ))_n`: the `z` of degree `n` graded-commuting with
/// every `f̂^0_l` and `f̂^1_j`. Needs level `n + 1`.
pub fn graded_centre(session: &Session, n: usize) -> Result<Subspace, Error> {
    let data = session.resolution();
    let dim_n = data.level(n)?.len();
    let gens: Vec<ExtElement> = (0..data.level(0)?.len())
        .map(|l| ExtElement::basis(session, 0, l))
        .chain((0..data.level(1)?.len()).map(|j| ExtElement::basis(session, 1, j)))
        .collect();
    let block = |y: &ExtElement| -> Result<usize, Error> { Ok(data.level(n + y.degree)?.len()) };
    let mut offsets = Vec::with_capacity(gens.len());
    let mut total = 0;
    for y in &gens {
        offsets.push(total);
        total += block(y)?;
    }
    let mut rows = Vec::with_capacity(dim_n);
    for i in 0..dim_n {
        let z = ExtElement::basis(session, n, i);
        let mut row = SparseVec::new();
        for (y, &off) in gens.iter().zip(&offsets) {
            let c = graded_commutator(session, y, &z)?;
            row = row.concat(off, &c.coords);
        }
        rows.push(row);
    }
    Ok(Subspace::span(dim_n, &left_kernel(&rows, total, session.field())))
}

/// `φ(η)_i`: the coefficient of `𝔱(f^n_i)` in the weight-0 part of `λ_i`.
pub fn phi(session: &Session, c: &Cochain) -> Result<ExtElement, Error> {
    let level = session.resolution().level(c.degree())?;
    let mut pairs = Vec::new();
    for (i, v) in c.values().iter().enumerate() {
        let (o, t) = level.endpoints(i);
        if o != t {
            continue;
        }
        if let Some(x) = v.component(0).and_then(|w| w.get(t)) {
            pairs.push((i, x.clone()));
        }
    }
    Ok(ExtElement::new(c.degree(), SparseVec::from_pairs(pairs)))
}

/// `span φ(ker (δ^{n+1})* on C^n_0)` as a subspace of `E(Λ)_n`.
pub fn phi_image(session: &Session, n: usize) -> Result<Subspace, Error> {
    let group = session.cohomology_group(n, 0)?;
    let dim_n = session.resolution().level(n)?.len();
    let mut images = Vec::new();
    for row in group.cocycles().rows() {
        images.push(phi(session, &group.space().from_vec(row))?.coords);
    }
    Ok(Subspace::span(dim_n, &images))
}

/// Checks `φ(HH^n) = Z_gr(E(Λ))_n`.
pub fn verify_image_equals_graded_centre(session: &Session, n: usize) -> Result<(), Error> {
    let image = phi_image(session, n)?;
    let centre = graded_centre(session, n)?;
    let field = session.field();
    let witness = image
        .rows()
        .iter()
        .find(|r| !centre.contains(r))
        .or_else(|| centre.rows().iter().find(|r| !image.contains(r)));
    match witness {
        Some(w) => Err(CheckFailure::ImageMismatch {
            n,
            witness: w.to_dense(image.ambient(), field),
        }
        .into()),
        None => Ok(()),
    }
}

/// Checks `(ab)c = a(bc)` on all basis triples of total degree `≤ max_total`.
pub fn verify_dual_associativity(session: &Session, max_total: usize) -> Result<(), Error> {
    let data = session.resolution();
    for da in 0..=max_total {
        for db in 0..=max_total - da {
            for dc in 0..=max_total - da - db {
                for ia in 0..data.level(da)?.len() {
                    let a = ExtElement::basis(session, da, ia);
                    for ib in 0..data.level(db)?.len() {
                        let b = ExtElement::basis(session, db, ib);
                        let ab = dual_product(session, &a, &b)?;
                        for ic in 0..data.level(dc)?.len() {
                            let c = ExtElement::basis(session, dc, ic);
                            let left = dual_product(session, &ab, &c)?;
                            let bc = dual_product(session, &b, &c)?;
                            let right = dual_product(session, &a, &bc)?;
                            if left != right {
                                return Err(CheckFailure::DualAssociativity {
                                    degrees: [da, db, dc],
                                    indices: [ia, ib, ic],
                                }
                                .into());
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Checks that every basis vector of `centre` (degree `n`) graded-commutes
/// with every basis element of degree `≤ max_total − n`.
pub fn verify_centre_commutation(
    session: &Session,
    n: usize,
    centre: &Subspace,
    max_total: usize,
) -> Result<(), Error> {
    let data = session.resolution();
    for row in centre.rows() {
        let z = ExtElement::new(n, row.clone());
        for d in 0..=max_total.saturating_sub(n) {
            for j in 0..data.level(d)?.len() {
                let y = ExtElement::basis(session, d, j);
                if !graded_commutator(session, &y, &z)?.is_zero() {
                    return Err(CheckFailure::NotCentral {
                        n,
                        other_degree: d,
                        other_index: j,
                    }
                    .into());
                }
            }
        }
    }
    Ok(())
}
