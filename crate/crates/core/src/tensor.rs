//! Linear combinations of equal-length paths, i.e. elements of `V^{⊗n}`.

use std::collections::BTreeMap;

use crate::linalg::SparseVec;
use crate::quiver::{Path, PathSpace, Quiver};
use crate::scalar::{Field, Scalar};

/// A homogeneous element of the tensor algebra; all paths have length
/// `degree` and all coefficients are nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorElement {
    degree: usize,
    terms: BTreeMap<Path, Scalar>,
}

#[allow(clippy::len_without_is_empty)]
impl TensorElement {
    pub fn zero(degree: usize) -> Self {
        TensorElement {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_path(path: Path, coeff: Scalar) -> Self {
        let mut t = TensorElement::zero(path.len());
        t.add_term(path, coeff);
        t
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, p: &Path) -> Option<&Scalar> {
        self.terms.get(p)
    }

    /// Panics if `path` has the wrong length.
    pub fn add_term(&mut self, path: Path, coeff: Scalar) {
        assert_eq!(path.len(), self.degree, "path length differs from degree");
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(&path) {
            Some(c) => {
                *c += &coeff;
                if c.is_zero() {
                    self.terms.remove(&path);
                }
            }
            None => {
                self.terms.insert(path, coeff);
            }
        }
    }

    /// `(source, target)` if every path shares one source and one target.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.source, first.target);
        it.all(|p| (p.source, p.target) == ends).then_some(ends)
    }

    pub fn is_uniform(&self) -> bool {
        self.endpoints().is_some()
    }

    /// `e_u · self · e_v`.
    pub fn block(&self, u: usize, v: usize) -> TensorElement {
        TensorElement {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.source == u && p.target == v)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// Tensor product over the vertices: concatenation of composable paths.
    pub fn concat(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.degree + other.degree);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = p.concat(q) {
                    out.add_term(pq, a * b);
                }
            }
        }
        out
    }

    pub fn scale(&self, factor: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero(self.degree);
        for (p, c) in &self.terms {
            out.add_term(p.clone(), c * factor);
        }
        out
    }

    /// Panics on a degree mismatch.
    pub fn add(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), -c);
        }
        out
    }

    /// Coordinates in the indexed path basis of `space`. Panics if the
    /// degrees differ.
    pub fn to_vec(&self, space: &PathSpace) -> SparseVec {
        assert_eq!(space.degree(), self.degree);
        SparseVec::from_pairs(
            self.terms
                .iter()
                .map(|(p, c)| (space.index_of(p).expect("path belongs to the space"), c.clone())),
        )
    }

    pub fn from_vec(space: &PathSpace, v: &SparseVec) -> Self {
        let mut out = TensorElement::zero(space.degree());
        for (i, c) in v.iter() {
            out.add_term(space.path(i).clone(), c.clone());
        }
        out
    }

    /// Human-readable form such as `x.y + 2*y.x - 1/2*z.z`.
    pub fn format(&self, quiver: &Quiver) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (p, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&quiver.format_path(p));
        }
        out
    }

    pub fn field(&self) -> Option<Field> {
        self.terms.values().next().map(Scalar::field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn concat_drops_non_composable() {
        let q = Quiver::new(&["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        let f = Field::Rational;
        let a = TensorElement::from_path(q.parse_path("a").unwrap(), f.one());
        let b = TensorElement::from_path(q.parse_path("b").unwrap(), f.from_i64(3));
        let ab = a.concat(&b);
        assert_eq!(ab.format(&q), "3*a.b");
        assert!(a.concat(&a).is_zero());
        assert_eq!(ab.endpoints(), Some((0, 0)));
        let mixed = a.add(&b);
        assert_eq!(mixed.endpoints(), None);
        assert_eq!(mixed.block(1, 0).format(&q), "3*b");
    }

    #[test]
    fn cancellation_removes_terms() {
        let q = Quiver::new(&["1"], &[("x", "1", "1")]).unwrap();
        let f = Field::Rational;
        let x = TensorElement::from_path(q.parse_path("x").unwrap(), f.one());
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.scale(&f.from_i64(-2)).format(&q), "-2*x");
    }
}
