//! End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::collections::BTreeMap;
use std::process::Command;

use koszul_core::hochschild::{cohomology_dims, cup, is_zero_class, Cochain};
use koszul_core::koszul_dual::{dual_product, graded_centre, verify_image_equals_graded_centre};
use koszul_core::verify::verify_all;
use koszul_core::{AlgebraElement, ExtElement, Scalar, Session, TensorElement};
use oracle::{fixture, rank, PathAlgebra, KOSZUL_FIXTURES};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn session(name: &str, maxdeg: usize) -> Result<Session, String> {
    Session::new(fixture(name, maxdeg)).map_err(|e| format!("{name}: {e}"))
}

fn weights(session: &Session) -> Vec<usize> {
    let algebra = session.algebra();
    (0..algebra.top_degree_bound().unwrap_or(algebra.bound())).collect()
}

fn element(session: &Session, path: &str) -> AlgebraElement {
    session.algebra().parse_path(path).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_1() -> Outcome {
    let mut s = session("ex51.kz", 6)?;
    let t = s.resolution().t_values();
    ensure(t[1..].iter().all(|&x| x == 1), || format!("t = {t:?}"))?;
    for n in 2..=6 {
        let presentation = s.algebra().presentation().clone();
        let power = vec!["x"; n].join(".");
        let sum = (0..n)
            .map(|a| {
                let mut w = vec!["x"; n];
                w[a] = "y";
                w.join(".")
            })
            .collect::<Vec<_>>()
            .join(" + ");
        let elements: Vec<TensorElement> = [power, sum]
            .iter()
            .map(|e| presentation.parse_element(e).unwrap())
            .collect();
        s = s.override_basis(n, &elements).map_err(|e| e.to_string())?;
    }
    let one = s.field().one();
    for n in 0..=5 {
        for r in 0..=n {
            let slice = s.comult(n, r).map_err(|e| e.to_string())?;
            let mut expected = BTreeMap::new();
            expected.insert((0, 0, 0), one.clone());
            if n > 0 && r < n {
                expected.insert((1, 0, 1), one.clone());
            }
            if n > 0 && r > 0 {
                expected.insert((1, 1, 0), one.clone());
            }
            let actual: BTreeMap<_, _> = slice.entries().map(|(k, c)| (k, c.clone())).collect();
            ensure(actual == expected, || {
                format!("c-table differs at n={n} r={r}: {actual:?}")
            })?;
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let s = session("ex51.kz", 5)?;
    let eta = Cochain::new(&s, 1, vec![element(&s, "x.y"), element(&s, "y")]).map_err(|e| e.to_string())?;
    let theta = Cochain::new(&s, 1, vec![AlgebraElement::zero(), element(&s, "y")]).map_err(|e| e.to_string())?;
    let zero_class = |c: &Cochain| is_zero_class(&s, c).map_err(|e| e.to_string());
    ensure(!zero_class(&eta)?, || "eta is a zero class".into())?;
    ensure(!zero_class(&theta)?, || "theta is a zero class".into())?;
    let product = cup(&s, &eta, &theta).map_err(|e| e.to_string())?;
    let expected = Cochain::new(&s, 2, vec![AlgebraElement::zero(), element(&s, "x.y.y")]).unwrap();
    ensure(product == expected, || format!("cup = {product:?}"))?;
    ensure(!product.is_zero(), || "cup is the zero cochain".into())?;
    ensure(zero_class(&product)?, || "cup is not a coboundary".into())
}

fn criterion_3() -> Outcome {
    let s = session("ex52.kz", 5)?;
    let data = s.resolution();
    for n in 0..=5 {
        let count = data.level(n).unwrap().len();
        ensure(count == 1 << n, || format!("t_{n} + 1 = {count}"))?;
    }
    let mut words = vec![ExtElement::basis(&s, 0, 0)];
    for n in 1..=5 {
        words = words
            .iter()
            .flat_map(|w| (0..2).map(move |g| (w.clone(), g)))
            .map(|(w, g)| dual_product(&s, &w, &ExtElement::basis(&s, 1, g)).unwrap())
            .collect();
        let dim = data.level(n).unwrap().len();
        let dense: Vec<Vec<Scalar>> = words.iter().map(|w| w.coords().to_dense(dim, s.field())).collect();
        ensure(rank(&dense) == dim && dim == 1 << n, || {
            format!("degree-1 words not free in degree {n}")
        })?;
    }
    let ws = weights(&s);
    for n in 1..=2 {
        for m in 1..=3 - n {
            for &w1 in &ws {
                for &w2 in &ws {
                    if w1 + w2 >= ws.len() {
                        continue;
                    }
                    let left = s.cohomology_group(n, w1).map_err(|e| e.to_string())?.representatives();
                    let right = s.cohomology_group(m, w2).map_err(|e| e.to_string())?.representatives();
                    for eta in &left {
                        for theta in &right {
                            let p = cup(&s, eta, theta).map_err(|e| e.to_string())?;
                            ensure(is_zero_class(&s, &p).map_err(|e| e.to_string())?, || {
                                format!("nonzero cup in HH^{}", n + m)
                            })?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn quantum_exterior(name: &str) -> Outcome {
    let s = session(name, 6)?;
    let dims = s.algebra().dims().map_err(|e| e.to_string())?;
    let total: usize = dims.iter().sum();
    ensure(total == 8, || format!("dim = {total}"))?;
    for n in 0..=6 {
        let count = s.resolution().level(n).unwrap().len();
        ensure(count == binomial(n + 2, 2), || format!("t_{n} + 1 = {count}"))?;
    }
    let sum = |n: usize, f: fn(&koszul_core::CohomologyDims) -> usize| -> Result<usize, String> {
        weights(&s)
            .iter()
            .map(|&w| cohomology_dims(&s, n, w).map(|d| f(&d)).map_err(|e| e.to_string()))
            .sum()
    };
    let mut failures = Vec::new();
    for n in 3..=4 {
        let im = sum(n, |d| d.dim_im)?;
        let expected = 2 * n * n + 4 * n + 1;
        if im != expected {
            failures.push(format!("dim im at n={n} is {im}, expected {expected}"));
        }
    }
    for n in 4..=5 {
        let hh = sum(n, |d| d.dim_hh)?;
        if hh != 0 {
            failures.push(format!("HH^{n} = {hh}"));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn criterion_4() -> Outcome {
    let mut reasons = Vec::new();
    for name in ["ex53.kz", "ex53_357.kz", "ex53_2711.kz"] {
        match quantum_exterior(name) {
            Ok(()) => return Ok(()),
            Err(e) => reasons.push(format!("{name}: {e}")),
        }
    }
    Err(reasons.join(" | "))
}

fn criterion_5() -> Outcome {
    let dims = |name: &str| -> Result<Vec<usize>, String> {
        let s = session(name, 5)?;
        (0..=4)
            .map(|d| graded_centre(&s, d).map(|c| c.dim()).map_err(|e| e.to_string()))
            .collect()
    };
    let c2 = dims("ex53_c2.kz")?;
    ensure(c2 == vec![1, 0, 1, 0, 1], || format!("c=2 centre dims {c2:?}"))?;
    let cm1 = dims("ex53_cm1.kz")?;
    ensure(cm1[2] == 3 && cm1[4] == 6, || format!("c=-1 centre dims {cm1:?}"))
}

fn criterion_6() -> Outcome {
    for name in KOSZUL_FIXTURES {
        let s = session(name, 5)?;
        for n in 0..=4 {
            verify_image_equals_graded_centre(&s, n).map_err(|e| format!("{name} n={n}: {e}"))?;
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    for name in KOSZUL_FIXTURES {
        let s = session(name, 6)?;
        let report = verify_all(&s);
        if let Some(c) = report.checks.iter().find(|c| !c.passed) {
            return Err(format!(
                "{name}: {} failed: {}",
                c.name,
                c.detail.as_deref().unwrap_or("")
            ));
        }
        let brute = PathAlgebra::new(s.algebra().presentation());
        let ws = weights(&s);
        for &w in &ws {
            let hh0 = cohomology_dims(&s, 0, w).map_err(|e| e.to_string())?.dim_hh;
            let centre = brute.centre_dim(w);
            ensure(hh0 == centre, || {
                format!("{name}: HH^0 weight {w} is {hh0}, centre has {centre}")
            })?;
        }
        let unit = Cochain::unit(&s);
        let minus = s.field().from_i64(-1);
        for n in 0..=4 {
            for &w in &ws {
                let group = s.cohomology_group(n, w).map_err(|e| e.to_string())?;
                for k in 0..group.space().dim() {
                    let c = group.space().basis_cochain(&s, k);
                    let ok = cup(&s, &unit, &c).map_err(|e| e.to_string())? == c
                        && cup(&s, &c, &unit).map_err(|e| e.to_string())? == c;
                    ensure(ok, || format!("{name}: unit law fails in degree {n}"))?;
                }
            }
        }
        for n in 0..=4 {
            for m in 0..=4 - n {
                for &w1 in &ws {
                    for &w2 in &ws {
                        if w1 + w2 >= ws.len() {
                            continue;
                        }
                        let left = s.cohomology_group(n, w1).map_err(|e| e.to_string())?.representatives();
                        let right = s.cohomology_group(m, w2).map_err(|e| e.to_string())?.representatives();
                        for eta in &left {
                            for theta in &right {
                                let a = cup(&s, eta, theta).map_err(|e| e.to_string())?;
                                let b = cup(&s, theta, eta).map_err(|e| e.to_string())?;
                                let b = if n * m % 2 == 1 { b.scale(&minus) } else { b };
                                ensure(is_zero_class(&s, &a.sub(&b)).map_err(|e| e.to_string())?, || {
                                    format!("{name}: cup not graded commutative for n={n} m={m}")
                                })?;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_8() -> Outcome {
    let root = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    for name in ["ex51.kz", "ex53.kz", "nonkoszul.kz"] {
        let file = root.join(name);
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_koszul"))
                .arg("verify")
                .arg(&file)
                .output()
                .expect("binary runs")
        };
        let (a, b) = (run(), run());
        ensure(a.status == b.status && a.stdout == b.stdout, || {
            format!("{name}: outputs differ")
        })?;
        ensure(!a.stdout.is_empty(), || format!("{name}: empty output"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        (
            "first example: generator counts and pinned comultiplication table",
            criterion_1,
        ),
        (
            "first example: cup product is a nonzero cochain in the zero class",
            criterion_2,
        ),
        ("radical square zero: free dual and vanishing cups", criterion_3),
        (
            "quantum exterior algebra: image dimensions and vanishing cohomology",
            criterion_4,
        ),
        ("quantum exterior algebra: graded centre dimensions", criterion_5),
        ("image of phi equals the graded centre", criterion_6),
        ("structural identities on every fixture", criterion_7),
        ("verify output is byte-deterministic", criterion_8),
    ];
    let mut failed = Vec::new();
    for (k, (title, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {}: PASS  {title}", k + 1),
            Err(reason) => {
                println!("criterion {}: FAIL  {title}: {reason}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
