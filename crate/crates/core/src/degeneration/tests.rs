use super::*;
use crate::algebra::algebra_from_table;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::new(n, d)
}

fn one() -> Scalar {
    Scalar::one()
}

fn lp(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn rows(data: &[&[&str]]) -> Matrix<LaurentPoly> {
    data.iter().map(|r| r.iter().map(|x| lp(x)).collect()).collect()
}

fn witness(src: &str, dst: &str, even: &[&[&str]], odd: &[&[&str]]) -> DegenerationWitness {
    DegenerationWitness::from_rows(src, dst, rows(even), rows(odd), "test").unwrap()
}

fn s2_1() -> SuperAlgebra {
    algebra_from_table(
        "S_1^2",
        1,
        2,
        &[("e1", "e1", &[("e1", one())]), ("e1", "f1", &[("f1", q(1, 2))])],
    )
    .unwrap()
}

fn s3_1() -> SuperAlgebra {
    algebra_from_table(
        "S_1^3",
        1,
        2,
        &[("e1", "f1", &[("f2", one())]), ("f1", "f2", &[("e1", one())])],
    )
    .unwrap()
}

fn s3_2() -> SuperAlgebra {
    algebra_from_table("S_2^3", 1, 2, &[("f1", "f2", &[("e1", one())])]).unwrap()
}

fn s3_3() -> SuperAlgebra {
    algebra_from_table("S_3^3", 1, 2, &[("e1", "f1", &[("f2", one())])]).unwrap()
}

fn s3_10() -> SuperAlgebra {
    algebra_from_table(
        "S_10^3",
        2,
        1,
        &[
            ("e1", "e1", &[("e1", one())]),
            ("e1", "e2", &[("e2", one())]),
            ("e1", "f1", &[("f1", one())]),
        ],
    )
    .unwrap()
}

fn b3() -> SuperAlgebra {
    algebra_from_table("B_3^s", 2, 1, &[("e1", "e1", &[("e2", one())])]).unwrap()
}

fn rf(s: &str) -> RationalFunction {
    RationalFunction::from_laurent(&lp(s))
}

#[test]
fn first_table_row_transports_as_in_the_worked_example() {
    let w = witness("S_1^2", "S_3^3", &[&["t"]], &[&["1", "-2*t^-1"], &["0", "1"]]);
    let r = transport(&s2_1(), &w).unwrap();
    assert_eq!(*r.constants.get(0, 0, 0), rf("t"));
    assert_eq!(*r.constants.get(0, 1, 1), rf("1/2*t"));
    assert_eq!(*r.constants.get(0, 1, 2), rf("1"));
    assert_eq!(r.limit, Limit::Exists(s3_3()));
    assert!(verify_degeneration(&s2_1(), &s3_3(), &w).unwrap().is_verified());
}

#[test]
fn identity_witness_is_neutral() {
    for a in [s2_1(), s3_1(), s3_10(), SuperAlgebra::zero(0, 3)] {
        let (m, n) = a.dims();
        let w = DegenerationWitness::identity("A", m, n);
        let r = transport(&a, &w).unwrap();
        assert_eq!(r.limit, Limit::Exists(a.clone()));
        assert_eq!(r.constants, a.tensor().map(|c| RationalFunction::constant(c.clone())));
    }
}

#[test]
fn hand_solved_s10_to_b3() {
    let w = witness(
        "S_10^3",
        "B_3^s",
        &[&["t", "-1/2"], &["t^2", "-t"]],
        &[&["1"]],
    );
    let r = transport(&s3_10(), &w).unwrap();
    let c = |a, b, k| r.constants.get(a, b, k).clone();
    assert_eq!(c(0, 0, 0), RationalFunction::zero());
    assert_eq!(c(0, 0, 1), rf("1"));
    assert_eq!(c(0, 1, 0), rf("-t^2"));
    assert_eq!(c(0, 1, 1), rf("2*t"));
    assert_eq!(c(1, 1, 0), rf("-2*t^3"));
    assert_eq!(c(1, 1, 1), rf("3*t^2"));
    assert_eq!(c(0, 2, 2), rf("t"));
    assert!(verify_degeneration(&s3_10(), &b3(), &w).unwrap().is_verified());
}

#[test]
fn printed_s31_to_s32_row_reaches_s33() {
    let printed = witness("S_1^3", "S_2^3", &[&["1"]], &[&["t", "0"], &["0", "t"]]);
    match verify_degeneration(&s3_1(), &s3_2(), &printed).unwrap() {
        DegenerationVerdict::WrongLimit { limit, diff } => {
            assert_eq!(limit, s3_3());
            assert!(!diff.is_empty());
        }
        other => panic!("expected WrongLimit, got {other:?}"),
    }
    let corrected = witness("S_1^3", "S_2^3", &[&["t"]], &[&["t", "0"], &["0", "1"]]);
    assert!(verify_degeneration(&s3_1(), &s3_2(), &corrected).unwrap().is_verified());
}

#[test]
fn missing_limit_is_reported() {
    let w = witness("S_1^2", "x", &[&["t^-1"]], &[&["1", "0"], &["0", "1"]]);
    assert_eq!(
        verify_degeneration(&s2_1(), &s3_3(), &w).unwrap(),
        DegenerationVerdict::LimitMissing { entry: (0, 0, 0) }
    );
}

#[test]
fn bad_witnesses_are_rejected() {
    let singular = witness("A", "B", &[&["0"]], &[&["1", "0"], &["0", "1"]]);
    assert_eq!(transport(&s2_1(), &singular).unwrap_err(), DegenerationError::SingularWitness);
    let wrong = DegenerationWitness::identity("A", 2, 1);
    assert!(matches!(
        transport(&s2_1(), &wrong),
        Err(DegenerationError::DimensionMismatch(_))
    ));
    let ragged = r#"{"source": "A", "target": "B", "even": [["t"]], "odd": [["1"], ["0", "1"]]}"#;
    assert!(DegenerationWitness::from_json_str(ragged).is_err());
}

#[test]
fn json_rows_are_new_basis_vectors() {
    let text = r#"{"source": "S_1^2", "target": "S_3^3", "even": [["t"]],
        "odd": [["1", "-2*t^-1"], ["0", "1"]], "provenance": "Table 2"}"#;
    let w = DegenerationWitness::from_json_str(text).unwrap();
    // F1 = f1 - 2t^-1 f2 is column 0 of the odd block
    assert_eq!(w.change.odd_block[1][0], lp("-2*t^-1"));
    assert_eq!(w.change.odd_block[0][1], LaurentPoly::zero());
    let back = DegenerationWitness::from_json_str(&serde_json::to_string(&w.to_json()).unwrap()).unwrap();
    assert_eq!(back, w);
}

#[test]
fn transport_matches_pointwise_change_of_basis() {
    let w = witness("S_10^3", "B_3^s", &[&["t", "-1/2"], &["t^2", "-t"]], &[&["1"]]);
    let r = transport(&s3_10(), &w).unwrap();
    for t0 in [q(1, 3), q(-2, 1), q(5, 7)] {
        let h = w.evaluate(&t0).unwrap();
        let expected = s3_10().change_basis(&h.inverse().unwrap()).unwrap();
        assert_eq!(SuperAlgebra::from_tensor(&r.evaluate(&t0).unwrap()).unwrap(), expected);
    }
}

#[test]
fn constant_post_composition_moves_the_target() {
    let w = witness("S_1^3", "S_2^3", &[&["t"]], &[&["t", "0"], &["0", "1"]]);
    let k = GradedBasisChange::new(
        vec![vec![q(2, 1)]],
        vec![vec![one(), q(1, 2)], vec![q(-1, 1), one()]],
    )
    .unwrap();
    let moved = w.then_constant(&k.inverse().unwrap());
    let target = s3_2().change_basis(&k).unwrap();
    assert!(verify_degeneration(&s3_1(), &target, &moved).unwrap().is_verified());
}

#[test]
fn search_finds_scaling_witness() {
    let w = search_witness(&s3_1(), &s3_3(), 1, SearchShape::Diagonal).unwrap();
    assert_eq!(w.change.even_block, rows(&[&["1"]]));
    assert_eq!(w.change.odd_block, rows(&[&["t", "0"], &["0", "t"]]));
}

#[test]
fn search_respects_certified_non_degeneration() {
    assert!(search_witness(&s3_3(), &s3_2(), 2, SearchShape::Triangular).is_none());
}

#[test]
fn search_needs_a_perturbation_for_u1_to_b3() {
    let u = algebra_from_table("U_1^s", 2, 1, &[("e1", "e1", &[("e1", one())])]).unwrap();
    assert!(search_witness(&u, &b3(), 2, SearchShape::Diagonal).is_none());
    let w = search_witness(&u, &b3(), 2, SearchShape::Triangular).unwrap();
    assert!(verify_degeneration(&u, &b3(), &w).unwrap().is_verified());
    // E1 mixes e1 and e2
    assert!(!w.change.even_block[0][0].is_zero() && !w.change.even_block[1][0].is_zero());
}
