//! The combined structural check behind `koszul verify`.

use serde::Serialize;

use crate::comult::{verify_coassociativity, verify_lifting_identity, verify_reconstruction, ComultTable};
use crate::hochschild::verify_complex;
use crate::koszul_dual::verify_dual_associativity;
use crate::session::Session;
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub maxdeg: usize,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

fn outcome(name: &str, result: Result<(), Error>) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        passed: result.is_ok(),
        detail: result.err().map(|e| e.to_string()),
    }
}

fn each(
    range: impl IntoIterator<Item = (usize, usize, usize)>,
    mut f: impl FnMut(usize, usize, usize) -> Result<(), Error>,
) -> Result<(), Error> {
    for (a, b, c) in range {
        f(a, b, c)?;
    }
    Ok(())
}

/// Runs exactness, `δδ = 0`, reconstruction, coassociativity, the lifting
/// identity and associativity of the dual product over the session range.
pub fn verify_all(session: &Session) -> VerifyReport {
    let top = session.max_level();
    let mut checks = vec![outcome("exactness", session.require_exact())];
    match session.full_table() {
        Err(e) => {
            for name in [
                "differential_squares_to_zero",
                "reconstruction",
                "coassociativity",
                "lifting_identity",
                "dual_associativity",
            ] {
                checks.push(outcome(name, Err(e.clone())));
            }
        }
        Ok(table) => {
            checks.push(outcome(
                "differential_squares_to_zero",
                verify_complex(session, &table, top),
            ));
            checks.push(outcome("reconstruction", reconstruction(session, &table, top)));
            let triples = (0..=top).flat_map(|n| (0..=n).flat_map(move |r| (0..=n - r).map(move |s| (n, r, s))));
            checks.push(outcome(
                "coassociativity",
                each(triples, |n, r, s| verify_coassociativity(&table, n, r, s)),
            ));
            let pairs = (0..top).flat_map(|n| (0..top - n).map(move |r| (n, r, 0)));
            checks.push(outcome(
                "lifting_identity",
                each(pairs, |n, r, _| verify_lifting_identity(&table, n, r)),
            ));
            checks.push(outcome("dual_associativity", verify_dual_associativity(session, top)));
        }
    }
    VerifyReport {
        maxdeg: top,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

fn reconstruction(session: &Session, table: &ComultTable, top: usize) -> Result<(), Error> {
    for n in 0..=top {
        for r in 0..=n {
            verify_reconstruction(table.get(n, r)?, session.algebra(), session.resolution())?;
        }
    }
    Ok(())
}
