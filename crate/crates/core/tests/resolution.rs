mod oracle;

use koszul_core::resolution::verify_exactness;
use koszul_core::{Error, Session, TensorElement};
use oracle::{fixture, PathAlgebra, KOSZUL_FIXTURES};

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn graded_dimensions_match_brute_force_ideal() {
    for name in KOSZUL_FIXTURES.iter().chain(&["nonkoszul.kz"]) {
        let p = fixture(name, 5);
        let brute = PathAlgebra::new(&p);
        let session = Session::new(p).unwrap();
        let dims = session.algebra().dims().unwrap();
        let expected: Vec<usize> = (0..=5).map(|d| brute.dim(d)).collect();
        assert_eq!(dims, expected, "{name}");
    }
}

#[test]
fn normal_words_of_first_example() {
    // Normal words avoid x.x and x.y: y^k and y^(k-1).x, so two per degree.
    let session = Session::new(fixture("ex51.kz", 6)).unwrap();
    assert_eq!(session.algebra().dims().unwrap(), vec![1, 2, 2, 2, 2, 2, 2]);
    let basis: Vec<String> = (0..2)
        .map(|k| {
            session
                .algebra()
                .quiver()
                .format_path(session.algebra().basis_path(3, k).unwrap())
        })
        .collect();
    assert_eq!(basis, vec!["y.y.x", "y.y.y"]);
}

#[test]
fn generator_counts() {
    let ex51 = Session::new(fixture("ex51.kz", 6)).unwrap();
    assert_eq!(ex51.resolution().t_values(), vec![0, 1, 1, 1, 1, 1, 1]);

    let ex52 = Session::new(fixture("ex52.kz", 6)).unwrap();
    let t: Vec<isize> = (0..=6).map(|n| (1 << n) - 1).collect();
    assert_eq!(ex52.resolution().t_values(), t);

    let ex53 = Session::new(fixture("ex53.kz", 6)).unwrap();
    let t: Vec<isize> = (0..=6).map(|n| binomial(n + 2, 2) as isize - 1).collect();
    assert_eq!(ex53.resolution().t_values(), t);
}

#[test]
fn hereditary_quotients_terminate() {
    let kronecker = Session::new(fixture("kronecker.kz", 4)).unwrap();
    assert_eq!(kronecker.resolution().t_values(), vec![1, 1, -1, -1, -1]);
    let a3 = Session::new(fixture("a3.kz", 4)).unwrap();
    assert_eq!(a3.resolution().t_values(), vec![2, 1, 0, -1, -1]);
}

#[test]
fn generators_are_uniform_and_linear() {
    for name in KOSZUL_FIXTURES {
        let session = Session::new(fixture(name, 4)).unwrap();
        for level in session.resolution().levels() {
            for (i, g) in level.generators().iter().enumerate() {
                assert_eq!(g.degree(), level.degree(), "{name}");
                assert!(g.is_uniform(), "{name}");
                assert_eq!(g.endpoints(), Some(level.endpoints(i)), "{name}");
            }
        }
    }
}

#[test]
fn level_two_spans_the_relations() {
    for name in KOSZUL_FIXTURES {
        let session = Session::new(fixture(name, 3)).unwrap();
        let level = session.resolution().level(2).unwrap();
        assert_eq!(level.span(), session.algebra().relation_span(), "{name}");
    }
}

#[test]
fn every_koszul_fixture_is_exact() {
    for name in KOSZUL_FIXTURES {
        let session = Session::new(fixture(name, 5)).unwrap();
        let report = verify_exactness(&session).unwrap();
        assert!(report.is_exact(), "{name}");
    }
}

#[test]
fn non_koszul_fixture_fails_exactness_with_witness() {
    let session = Session::new(fixture("nonkoszul.kz", 4)).unwrap();
    match verify_exactness(&session) {
        Err(Error::ExactnessFailure { n, d, homology }) => assert_eq!((n, d, homology), (2, 4, 3)),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn basis_override_accepts_rescaled_basis() {
    let session = Session::new(fixture("ex51.kz", 4)).unwrap();
    let presentation = session.algebra().presentation();
    let elements: Vec<TensorElement> = ["2*x.x.x", "x.x.y + x.y.x + y.x.x"]
        .iter()
        .map(|t| presentation.parse_element(t).unwrap())
        .collect();
    let pinned = session.override_basis(3, &elements).unwrap();
    assert_eq!(pinned.resolution().level(3).unwrap().generator(0), &elements[0]);
}

#[test]
fn basis_override_rejects_dependent_or_foreign_elements() {
    let session = Session::new(fixture("ex51.kz", 4)).unwrap();
    let presentation = session.algebra().presentation();
    let parse = |t: &str| presentation.parse_element(t).unwrap();
    let dependent = [parse("x.x.x"), parse("2*x.x.x")];
    assert!(matches!(
        session.override_basis(3, &dependent),
        Err(Error::SpanMismatch { n: 3, .. })
    ));
    let foreign = [parse("x.x.x"), parse("y.y.y")];
    assert!(matches!(
        session.override_basis(3, &foreign),
        Err(Error::SpanMismatch { n: 3, .. })
    ));
    let short = [parse("x.x.x")];
    assert!(matches!(
        session.override_basis(3, &short),
        Err(Error::SpanMismatch { n: 3, .. })
    ));
}

#[test]
fn prime_field_fixture_resolves() {
    let session = Session::new(fixture("cycle2.kz", 5)).unwrap();
    assert_eq!(session.field().characteristic(), 5);
    assert_eq!(session.resolution().t_values(), vec![1, 1, 0, -1, -1, -1]);
}
