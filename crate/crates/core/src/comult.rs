//! Comultiplicative structure constants: `f^n_i = Σ_{p,q} c_pq(n,i,r) f^r_p f^(n-r)_q`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::algebra::GradedAlgebra;
use crate::check::CheckFailure;
use crate::linalg::{LinalgError, SpanSolver, SparseVec};
use crate::resolution::{tensor_coords, ResolutionData};
use crate::scalar::Scalar;
use crate::Error;

/// The constants `c_pq(n,i,r)` for one `(n, r)`, keyed by `(i, p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComultSlice {
    n: usize,
    r: usize,
    entries: BTreeMap<(usize, usize, usize), Scalar>,
}

impl ComultSlice {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn get(&self, i: usize, p: usize, q: usize) -> Option<&Scalar> {
        self.entries.get(&(i, p, q))
    }

    /// Nonzero entries `((i, p, q), c)` in index order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize, usize), &Scalar)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    /// Nonzero entries `((p, q), c)` for one generator `i`.
    pub fn entries_for(&self, i: usize) -> impl Iterator<Item = ((usize, usize), &Scalar)> {
        self.entries
            .range((i, 0, 0)..(i + 1, 0, 0))
            .map(|(&(_, p, q), c)| ((p, q), c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Overwrites one constant; zero removes the entry.
    pub fn set(&mut self, i: usize, p: usize, q: usize, value: Scalar) {
        if value.is_zero() {
            self.entries.remove(&(i, p, q));
        } else {
            self.entries.insert((i, p, q), value);
        }
    }
}

/// A collection of slices keyed by `(n, r)`.
#[derive(Debug, Clone, Default)]
pub struct ComultTable {
    slices: BTreeMap<(usize, usize), Arc<ComultSlice>>,
}

impl ComultTable {
    pub fn new() -> Self {
        ComultTable::default()
    }

    pub fn insert(&mut self, slice: Arc<ComultSlice>) {
        self.slices.insert((slice.n, slice.r), slice);
    }

    pub fn get(&self, n: usize, r: usize) -> Result<&ComultSlice, Error> {
        self.slices
            .get(&(n, r))
            .map(|s| s.as_ref())
            .ok_or(Error::MissingSlice { n, r })
    }

    pub fn get_mut(&mut self, n: usize, r: usize) -> Option<&mut ComultSlice> {
        self.slices.get_mut(&(n, r)).map(Arc::make_mut)
    }

    pub fn contains(&self, n: usize, r: usize) -> bool {
        self.slices.contains_key(&(n, r))
    }

    pub fn slices(&self) -> impl Iterator<Item = &ComultSlice> {
        self.slices.values().map(|s| s.as_ref())
    }
}

/// Solves for `c_pq(n,i,r)` against the composable products `f^r_p f^(n-r)_q`.
pub fn compute_slice(algebra: &GradedAlgebra, data: &ResolutionData, n: usize, r: usize) -> Result<ComultSlice, Error> {
    assert!(r <= n, "split point exceeds degree");
    let top = data.level(n)?;
    let left = data.level(r)?;
    let right = data.level(n - r)?;
    let field = algebra.field();
    let mut entries = BTreeMap::new();

    if r == 0 || r == n {
        for i in 0..top.len() {
            let (o, t) = top.endpoints(i);
            let key = if r == 0 { (i, o, i) } else { (i, i, t) };
            entries.insert(key, field.one());
        }
        return Ok(ComultSlice { n, r, entries });
    }

    let space = algebra.path_space(n)?;
    let (ls, rs) = (algebra.path_space(r)?, algebra.path_space(n - r)?);
    let mut solvers: HashMap<(usize, usize), BlockSolver> = HashMap::new();
    for i in 0..top.len() {
        let (u, v) = top.endpoints(i);
        solvers.entry((u, v)).or_insert_with(|| {
            let mut pairs = Vec::new();
            let mut products: Vec<SparseVec> = Vec::new();
            for p in 0..left.len() {
                if left.origin(p) != u {
                    continue;
                }
                for q in 0..right.len() {
                    if right.origin(q) == left.terminus(p) && right.terminus(q) == v {
                        pairs.push((p, q));
                        products.push(tensor_coords(ls, left.coords(p), rs, right.coords(q), space));
                    }
                }
            }
            let solver = SpanSolver::new(&products);
            (pairs, solver)
        });
        let (pairs, solver) = &solvers[&(u, v)];
        let coeffs = match solver.solve(top.coords(i)) {
            Ok(c) => c,
            Err(LinalgError::NotInSpan) => return Err(Error::KoszulAssumptionViolated { n, i, r }),
            Err(e) => return Err(e.into()),
        };
        for (&(p, q), c) in pairs.iter().zip(coeffs) {
            if !c.is_zero() {
                entries.insert((i, p, q), c);
            }
        }
    }
    Ok(ComultSlice { n, r, entries })
}

/// Checks `Σ c_pq(n,i,r) f^r_p f^(n-r)_q = f^n_i` for every `i`.
pub fn verify_reconstruction(slice: &ComultSlice, algebra: &GradedAlgebra, data: &ResolutionData) -> Result<(), Error> {
    let (n, r) = (slice.n, slice.r);
    let top = data.level(n)?;
    let (left, right) = (data.level(r)?, data.level(n - r)?);
    let space = algebra.path_space(n)?;
    let (ls, rs) = (algebra.path_space(r)?, algebra.path_space(n - r)?);
    for i in 0..top.len() {
        let mut acc = SparseVec::new();
        for ((p, q), c) in slice.entries_for(i) {
            let prod = tensor_coords(ls, left.coords(p), rs, right.coords(q), space);
            acc = acc.add_scaled(&prod, c);
        }
        if &acc != top.coords(i) {
            return Err(CheckFailure::Reconstruction { n, i, r }.into());
        }
    }
    Ok(())
}

type Quad = (usize, usize, usize, usize);
type BlockSolver = (Vec<(usize, usize)>, SpanSolver);

fn accumulate(map: &mut BTreeMap<Quad, Scalar>, key: Quad, value: Scalar) {
    let entry = map.entry(key).or_insert_with(|| value.field().zero());
    *entry += &value;
    if entry.is_zero() {
        map.remove(&key);
    }
}

/// Index of a slice by its generator: `i ↦ [(p, q, c)]`.
fn by_generator(slice: &ComultSlice) -> HashMap<usize, Vec<(usize, usize, &Scalar)>> {
    let mut out: HashMap<usize, Vec<_>> = HashMap::new();
    for ((i, p, q), c) in slice.entries() {
        out.entry(i).or_default().push((p, q, c));
    }
    out
}

fn first_difference(a: &BTreeMap<Quad, Scalar>, b: &BTreeMap<Quad, Scalar>) -> Option<Quad> {
    a.iter()
        .find(|(k, v)| b.get(k) != Some(v))
        .or_else(|| b.iter().find(|(k, v)| a.get(k) != Some(v)))
        .map(|(k, _)| *k)
}

/// Checks `Σ_q c_pq(n,i,r) c_uv(n-r,q,s) = Σ_a c_av(n,i,r+s) c_pu(r+s,a,r)`
/// for all `i, p, u, v`.
pub fn verify_coassociativity(table: &ComultTable, n: usize, r: usize, s: usize) -> Result<(), Error> {
    assert!(r + s <= n, "r + s exceeds n");
    let outer = table.get(n, r)?;
    let inner = by_generator(table.get(n - r, s)?);
    let joined = table.get(n, r + s)?;
    let split = by_generator(table.get(r + s, r)?);

    let mut lhs = BTreeMap::new();
    for ((i, p, q), c) in outer.entries() {
        for &(u, v, d) in inner.get(&q).into_iter().flatten() {
            accumulate(&mut lhs, (i, p, u, v), c * d);
        }
    }
    let mut rhs = BTreeMap::new();
    for ((i, a, v), c) in joined.entries() {
        for &(p, u, d) in split.get(&a).into_iter().flatten() {
            accumulate(&mut rhs, (i, p, u, v), c * d);
        }
    }
    match first_difference(&lhs, &rhs) {
        Some((i, p, u, v)) => Err(CheckFailure::Coassociativity { n, r, s, i, p, u, v }.into()),
        None => Ok(()),
    }
}

/// Checks `Σ_p c_jy(n+r,p,n) c_pq(n+r+1,l,n+r) = Σ_v c_jv(n+r+1,l,n) c_yq(r+1,v,r)`
/// for all `j, y, q, l`.
pub fn verify_lifting_identity(table: &ComultTable, n: usize, r: usize) -> Result<(), Error> {
    let a = by_generator(table.get(n + r, n)?);
    let b = table.get(n + r + 1, n + r)?;
    let c = table.get(n + r + 1, n)?;
    let d = by_generator(table.get(r + 1, r)?);

    let mut lhs = BTreeMap::new();
    for ((l, p, q), x) in b.entries() {
        for &(j, y, w) in a.get(&p).into_iter().flatten() {
            accumulate(&mut lhs, (j, y, q, l), x * w);
        }
    }
    let mut rhs = BTreeMap::new();
    for ((l, j, v), x) in c.entries() {
        for &(y, q, w) in d.get(&v).into_iter().flatten() {
            accumulate(&mut rhs, (j, y, q, l), x * w);
        }
    }
    match first_difference(&lhs, &rhs) {
        Some((j, y, q, l)) => Err(CheckFailure::Lifting { n, r, j, y, q, l }.into()),
        None => Ok(()),
    }
}
