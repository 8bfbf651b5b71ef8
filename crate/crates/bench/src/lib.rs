//! Presentations used by the benchmarks.

use koszul_core::{Presentation, Session};

/// `k⟨x,y,z⟩/(x², y², z², xy + 2yx, xz + 3zx, yz + 5zy)`.
pub const QUANTUM_EXTERIOR: &str = "\
field Q
vertex 1
arrow x : 1 -> 1
arrow y : 1 -> 1
arrow z : 1 -> 1
relation x.x
relation y.y
relation z.z
relation x.y + 2*y.x
relation x.z + 3*z.x
relation y.z + 5*z.y
";

/// `k⟨x,y⟩/(x², xy + yx)`.
pub const FIRST_EXAMPLE: &str = "\
field Q
vertex 1
arrow x : 1 -> 1
arrow y : 1 -> 1
relation x.x
relation x.y + y.x
";

/// Two loops with the square of the radical killed.
pub const RADICAL_SQUARE_ZERO: &str = "\
field Q
vertex 1
arrow x : 1 -> 1
arrow y : 1 -> 1
relation x.x
relation x.y
relation y.x
relation y.y
";

pub fn presentation(text: &str, maxdeg: usize) -> Presentation {
    Presentation::parse(text)
        .expect("benchmark presentation parses")
        .with_maxdeg(maxdeg)
}

pub fn session(text: &str, maxdeg: usize) -> Session {
    Session::new(presentation(text, maxdeg)).expect("benchmark session builds")
}
