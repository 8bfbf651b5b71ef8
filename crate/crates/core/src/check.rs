//! Witnesses returned when one of the structural identities fails.

use std::fmt;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckFailure {
    /// `Σ c_pq(n,i,r) f^r_p f^(n-r)_q ≠ f^n_i`.
    Reconstruction { n: usize, i: usize, r: usize },
    /// The two bracketings of `f^n_i` into three factors disagree.
    Coassociativity {
        n: usize,
        r: usize,
        s: usize,
        i: usize,
        p: usize,
        u: usize,
        v: usize,
    },
    /// The chain-map identity behind the dual structure constants fails.
    Lifting {
        n: usize,
        r: usize,
        j: usize,
        y: usize,
        q: usize,
        l: usize,
    },
    /// `δ^(n-1) ∘ δ^n (ε^n_i) ≠ 0`.
    DifferentialSquare { n: usize, i: usize },
    /// `(ab)c ≠ a(bc)` for basis elements of the dual.
    DualAssociativity { degrees: [usize; 3], indices: [usize; 3] },
    /// A graded-central element fails to commute with a basis element.
    NotCentral {
        n: usize,
        other_degree: usize,
        other_index: usize,
    },
    /// `φ(HH^n)` and `Z_gr(E)_n` differ; carries a vector in one but not the other.
    ImageMismatch { n: usize, witness: Vec<Scalar> },
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckFailure::Reconstruction { n, i, r } => {
                write!(f, "reconstruction of f^{n}_{i} at r = {r}")
            }
            CheckFailure::Coassociativity { n, r, s, i, p, u, v } => write!(
                f,
                "coassociativity at (n, r, s) = ({n}, {r}, {s}), (i, p, u, v) = ({i}, {p}, {u}, {v})"
            ),
            CheckFailure::Lifting { n, r, j, y, q, l } => write!(
                f,
                "lifting identity at (n, r) = ({n}, {r}), (j, y, q, l) = ({j}, {y}, {q}, {l})"
            ),
            CheckFailure::DifferentialSquare { n, i } => {
                write!(f, "differential squares to nonzero on generator {i} of degree {n}")
            }
            CheckFailure::DualAssociativity { degrees, indices } => write!(
                f,
                "dual product not associative on degrees {degrees:?}, indices {indices:?}"
            ),
            CheckFailure::NotCentral {
                n,
                other_degree,
                other_index,
            } => write!(
                f,
                "central element of degree {n} does not graded-commute with basis element {other_index} of degree {other_degree}"
            ),
            CheckFailure::ImageMismatch { n, witness } => {
                let w: Vec<String> = witness.iter().map(|s| s.to_string()).collect();
                write!(f, "image of φ differs from the graded centre in degree {n}: [{}]", w.join(", "))
            }
        }
    }
}

impl std::error::Error for CheckFailure {}
