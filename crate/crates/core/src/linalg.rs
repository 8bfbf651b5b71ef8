//! Sparse exact linear algebra: reduced row echelon form, kernels,
//! subspace sums and intersections, and solving inside a span.
//!
//! Vectors are row vectors. A linear map is stored as the list of images of
//! the domain basis, so its image is a row space and its kernel is a left
//! kernel.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::scalar::{Field, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("target vector is not in the span")]
    NotInSpan,
}

/// Sparse vector with strictly increasing indices and nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize, field: Field) -> Self {
        SparseVec {
            entries: vec![(index, field.one())],
        }
    }

    /// Builds a vector from arbitrary `(index, value)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_pairs<I: IntoIterator<Item = (usize, Scalar)>>(pairs: I) -> Self {
        let mut map: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, v) in pairs {
            match map.get_mut(&i) {
                Some(acc) => *acc += &v,
                None => {
                    map.insert(i, v);
                }
            }
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize, field: Field) -> Vec<Scalar> {
        let mut out = vec![field.zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|pos| &self.entries[pos].1)
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    /// Largest index present plus one (0 for the zero vector).
    pub fn support_bound(&self) -> usize {
        self.entries.last().map_or(0, |(i, _)| i + 1)
    }

    pub fn scale(&self, factor: &Scalar) -> SparseVec {
        if factor.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * factor)).collect(),
        }
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, other: &SparseVec, factor: &Scalar) -> SparseVec {
        if factor.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, y * factor));
                        b.next();
                    } else {
                        let s = x + &(y * factor);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, y * factor));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            Some((_, v)) => self.add_scaled(other, &v.field().one()),
            None => self.clone(),
        }
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        match other.entries.first() {
            Some((_, v)) => self.add_scaled(other, &v.field().from_i64(-1)),
            None => self.clone(),
        }
    }

    /// Re-indexes entries through `f`; entries mapped to `None` are dropped.
    pub fn remap(&self, mut f: impl FnMut(usize) -> Option<usize>) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().filter_map(|(i, v)| f(*i).map(|j| (j, v.clone()))))
    }

    /// Concatenation `[self | other]` where `self` lives in the first
    /// `offset` coordinates.
    pub fn concat(&self, offset: usize, other: &SparseVec) -> SparseVec {
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|(i, v)| (i + offset, v.clone())));
        SparseVec { entries }
    }

    /// Splits at `offset` into the part below and the (shifted) part above.
    pub fn split(&self, offset: usize) -> (SparseVec, SparseVec) {
        let pos = self.entries.partition_point(|(i, _)| *i < offset);
        let low = SparseVec {
            entries: self.entries[..pos].to_vec(),
        };
        let high = SparseVec {
            entries: self.entries[pos..]
                .iter()
                .map(|(i, v)| (i - offset, v.clone()))
                .collect(),
        };
        (low, high)
    }
}

/// A sparse matrix stored by rows; absent entries are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![SparseVec::new(); rows],
        }
    }

    /// Panics if a row has support outside `0..cols`.
    pub fn from_rows(cols: usize, rows: Vec<SparseVec>) -> Self {
        for r in &rows {
            assert!(r.support_bound() <= cols, "row exceeds column count");
        }
        Matrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| SparseVec::from_dense(r)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Scalar> {
        self.data[row].get(col)
    }

    pub fn set(&mut self, row: usize, col: usize, value: Scalar) {
        assert!(row < self.rows && col < self.cols);
        let current = self.data[row].get(col).cloned();
        let delta = match current {
            Some(c) => &value - &c,
            None => value,
        };
        let f = delta.field().one();
        self.data[row] = self.data[row].add_scaled(
            &SparseVec {
                entries: vec![(col, delta)],
            },
            &f,
        );
    }

    /// Row vector times matrix.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (i, c) in v.iter() {
            acc = acc.add_scaled(&self.data[i], c);
        }
        acc
    }
}

/// Result of [`rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form; the zero rows are dropped.
pub fn rref(m: &Matrix) -> Rref {
    let mut basis = EchelonBasis::new(m.cols());
    for r in m.row_vectors() {
        basis.insert(r.clone());
    }
    let sub = basis.into_subspace();
    Rref {
        rank: sub.dim(),
        pivots: sub.pivots().to_vec(),
        matrix: Matrix::from_rows(m.cols(), sub.rows().to_vec()),
    }
}

/// Incrementally maintained fully reduced echelon basis.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl EchelonBasis {
    pub fn new(ambient: usize) -> Self {
        EchelonBasis {
            ambient,
            rows: Vec::new(),
            pivot_row: BTreeMap::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` modulo the current span; zero iff `v` is in it.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter_map(|(c, x)| self.pivot_row.get(&c).map(|&r| (r, -x)))
            .collect();
        let mut out = v.clone();
        for (r, factor) in hits {
            out = out.add_scaled(&self.rows[r], &factor);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.support_bound() <= self.ambient);
        let r = self.reduce(&v);
        let Some((pivot, lead)) = r.leading() else {
            return false;
        };
        let r = r.scale(&lead.inv().expect("nonzero leading entry"));
        for row in &mut self.rows {
            if let Some(x) = row.get(pivot).cloned() {
                *row = row.add_scaled(&r, &-x);
            }
        }
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn into_subspace(self) -> Subspace {
        let mut order: Vec<(usize, usize)> = self.pivot_row.into_iter().collect();
        order.sort();
        let mut rows = Vec::with_capacity(order.len());
        let mut pivots = Vec::with_capacity(order.len());
        let mut slots: Vec<Option<SparseVec>> = self.rows.into_iter().map(Some).collect();
        for (p, r) in order {
            pivots.push(p);
            rows.push(slots[r].take().unwrap());
        }
        Subspace {
            ambient: self.ambient,
            rows,
            pivots,
        }
    }
}

/// A subspace of `k^ambient` held by its canonical RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize, field: Field) -> Self {
        Subspace {
            ambient,
            rows: (0..ambient).map(|i| SparseVec::unit(i, field)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span<'a, I: IntoIterator<Item = &'a SparseVec>>(ambient: usize, vectors: I) -> Self {
        let mut b = EchelonBasis::new(ambient);
        for v in vectors {
            b.insert(v.clone());
        }
        b.into_subspace()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn echelon(&self) -> EchelonBasis {
        EchelonBasis {
            ambient: self.ambient,
            rows: self.rows.clone(),
            pivot_row: self.pivots.iter().enumerate().map(|(r, &p)| (p, r)).collect(),
        }
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        self.echelon().reduce(v)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let e = self.echelon();
        other.rows.iter().all(|r| e.contains(r))
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &SparseVec) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        let field = match (v.leading(), self.rows.first()) {
            (Some((_, x)), _) => x.field(),
            (None, Some(row)) => row.leading().expect("basis rows are nonzero").1.field(),
            (None, None) => return Some(Vec::new()),
        };
        Some(
            self.pivots
                .iter()
                .map(|&p| v.get(p).cloned().unwrap_or_else(|| field.zero()))
                .collect(),
        )
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut e = self.echelon();
        for r in &other.rows {
            e.insert(r.clone());
        }
        Ok(e.into_subspace())
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch(self.ambient, other.ambient));
        }
        // x = sum a_i s_i lies in `other` iff sum a_i (s_i mod other) = 0.
        let field = match self.rows.first().and_then(SparseVec::leading) {
            Some((_, x)) => x.field(),
            None => return Ok(Subspace::zero(self.ambient)),
        };
        let e = other.echelon();
        let remainders: Vec<SparseVec> = self.rows.iter().map(|r| e.reduce(r)).collect();
        let kernel = left_kernel(&remainders, self.ambient, field);
        let vectors: Vec<SparseVec> = kernel.iter().map(|coeffs| combine(&self.rows, coeffs)).collect();
        Ok(Subspace::span(self.ambient, &vectors))
    }
}

/// `sum_i coeffs[i] * vectors[i]`.
pub fn combine(vectors: &[SparseVec], coeffs: &SparseVec) -> SparseVec {
    let mut acc = SparseVec::new();
    for (i, c) in coeffs.iter() {
        acc = acc.add_scaled(&vectors[i], c);
    }
    acc
}

/// Basis (RREF, in coefficient space) of `{a : sum a_i vectors[i] = 0}`.
pub fn left_kernel(vectors: &[SparseVec], ambient: usize, field: Field) -> Vec<SparseVec> {
    let mut e = EchelonBasis::new(ambient + vectors.len());
    for (i, v) in vectors.iter().enumerate() {
        debug_assert!(v.support_bound() <= ambient);
        e.insert(v.concat(ambient, &SparseVec::unit(i, field)));
    }
    e.into_subspace()
        .rows
        .into_iter()
        .filter(|r| r.leading().is_some_and(|(p, _)| p >= ambient))
        .map(|r| r.split(ambient).1)
        .collect()
}

/// Solves `target = sum c_i vectors[i]`. The returned coefficients are the
/// unique solution when the vectors are independent.
pub fn solve_in_span(vectors: &[SparseVec], target: &SparseVec) -> Result<Vec<Scalar>, LinalgError> {
    SpanSolver::new(vectors).solve(target)
}

/// Reusable factorisation for repeated [`solve_in_span`] calls.
#[derive(Debug, Clone)]
pub struct SpanSolver {
    ambient: usize,
    count: usize,
    field: Option<Field>,
    basis: EchelonBasis,
}

impl SpanSolver {
    pub fn new(vectors: &[SparseVec]) -> Self {
        let ambient = vectors.iter().map(|v| v.support_bound()).max().unwrap_or(0);
        let field = vectors.iter().find_map(|v| v.leading()).map(|(_, x)| x.field());
        let mut basis = EchelonBasis::new(ambient + vectors.len());
        if let Some(f) = field {
            for (i, v) in vectors.iter().enumerate() {
                basis.insert(v.concat(ambient, &SparseVec::unit(i, f)));
            }
        }
        SpanSolver {
            ambient,
            count: vectors.len(),
            field,
            basis,
        }
    }

    pub fn solve(&self, target: &SparseVec) -> Result<Vec<Scalar>, LinalgError> {
        let field = match (self.field, target.leading()) {
            (_, None) => {
                let f = self.field.unwrap_or(Field::Rational);
                return Ok(vec![f.zero(); self.count]);
            }
            (None, Some(_)) => return Err(LinalgError::NotInSpan),
            (Some(f), Some(_)) => f,
        };
        if target.support_bound() > self.ambient {
            return Err(LinalgError::NotInSpan);
        }
        let rem = self.basis.reduce(target);
        let (low, high) = rem.split(self.ambient);
        if !low.is_zero() {
            return Err(LinalgError::NotInSpan);
        }
        let coeffs = high.scale(&field.from_i64(-1));
        Ok(coeffs.to_dense(self.count, field))
    }
}
