use super::*;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::new(n, d)
}

fn one() -> Scalar {
    Scalar::one()
}

fn unit(d: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); d];
    v[i] = one();
    v
}

fn s3_7() -> SuperAlgebra {
    algebra_from_table(
        "S_7^3",
        1,
        2,
        &[
            ("e1", "e1", &[("e1", one())]),
            ("e1", "f1", &[("f1", q(1, 2))]),
            ("e1", "f2", &[("f2", q(1, 2))]),
            ("f1", "f2", &[("e1", one())]),
        ],
    )
    .unwrap()
}

fn s3_5() -> SuperAlgebra {
    algebra_from_table(
        "S_5^3",
        1,
        2,
        &[
            ("e1", "e1", &[("e1", one())]),
            ("e1", "f1", &[("f1", q(1, 2))]),
            ("e1", "f2", &[("f2", q(1, 2))]),
        ],
    )
    .unwrap()
}

fn s3_3() -> SuperAlgebra {
    algebra_from_table("S_3^3", 1, 2, &[("e1", "f1", &[("f2", one())])]).unwrap()
}

fn s3_2() -> SuperAlgebra {
    algebra_from_table("S_2^3", 1, 2, &[("f1", "f2", &[("e1", one())])]).unwrap()
}

fn u1s(m: usize, n: usize) -> SuperAlgebra {
    algebra_from_table("U_1^s", m, n, &[("e1", "e1", &[("e1", one())])]).unwrap()
}

fn s2_1(m: usize) -> SuperAlgebra {
    algebra_from_table(
        "S_1^2",
        m,
        1,
        &[("e1", "e1", &[("e1", one())]), ("e1", "f1", &[("f1", q(1, 2))])],
    )
    .unwrap()
}

fn s2_2_12() -> SuperAlgebra {
    algebra_from_table(
        "S_2^2",
        1,
        2,
        &[("e1", "e1", &[("e1", one())]), ("e1", "f1", &[("f1", one())])],
    )
    .unwrap()
}

fn s3_13() -> SuperAlgebra {
    algebra_from_table(
        "S_13^3",
        2,
        1,
        &[
            ("e1", "e1", &[("e1", one())]),
            ("e2", "e2", &[("e2", one())]),
            ("e1", "f1", &[("f1", q(1, 2))]),
            ("e2", "f1", &[("f1", q(1, 2))]),
        ],
    )
    .unwrap()
}

#[test]
fn constant_count_matches_formula() {
    for (m, n) in [(1, 2), (2, 1), (0, 3), (3, 0), (2, 2)] {
        assert_eq!(SuperAlgebra::zero(m, n).constant_count(), m * m * m + 3 * m * n * n);
    }
}

#[test]
fn product_examples() {
    let a = s3_7();
    assert_eq!(a.product(&unit(3, 1), &unit(3, 2)).unwrap(), unit(3, 0));
    assert_eq!(a.product(&unit(3, 2), &unit(3, 1)).unwrap(), vec![-one(), Scalar::zero(), Scalar::zero()]);
    let x = vec![q(1, 3), q(-2, 1), q(5, 7)];
    assert_eq!(a.product(&x, &vec![Scalar::zero(); 3]).unwrap(), vec![Scalar::zero(); 3]);
    let b = s3_5();
    assert_eq!(
        b.product(&unit(3, 0), &unit(3, 2)).unwrap(),
        vec![Scalar::zero(), Scalar::zero(), q(1, 2)]
    );
    assert!(matches!(
        a.product(&unit(2, 0), &unit(3, 0)),
        Err(AlgebraError::DimensionMismatch(_))
    ));
}

#[test]
fn change_basis_identity_and_scaling() {
    let a = s3_7();
    assert_eq!(a.change_basis(&GradedBasisChange::identity(1, 2)).unwrap(), a);

    let u = u1s(1, 0);
    let g = GradedBasisChange::new(vec![vec![q(2, 1)]], vec![]).unwrap();
    let moved = u.change_basis(&g).unwrap();
    assert_eq!(moved.coeff(0, 0, 0), q(1, 2));
    let back = moved.change_basis(&g.inverse().unwrap()).unwrap();
    assert_eq!(back, u);
}

#[test]
fn change_basis_odd_swap() {
    let swap = GradedBasisChange::new(
        vec![vec![one()]],
        vec![vec![Scalar::zero(), one()], vec![one(), Scalar::zero()]],
    )
    .unwrap();
    let moved = s3_3().change_basis(&swap).unwrap();
    // e1 f2 = f1, e1 f1 = 0
    assert_eq!(moved.basis_product(0, 2), unit(3, 1));
    assert_eq!(moved.basis_product(0, 1), vec![Scalar::zero(); 3]);
    assert!(moved.is_supercommutative());
}

#[test]
fn change_basis_rejects_bad_input() {
    let singular = GradedBasisChange::new(vec![vec![Scalar::zero()]], linalg::identity(2)).unwrap();
    assert_eq!(s3_3().change_basis(&singular), Err(AlgebraError::SingularMatrix));
    let wrong = GradedBasisChange::<Scalar>::identity(2, 1);
    assert!(matches!(
        s3_3().change_basis(&wrong),
        Err(AlgebraError::DimensionMismatch(_))
    ));
}

#[test]
fn power_profile_examples() {
    assert_eq!(s3_3().power_profile(3).0, vec![(1, 2), (0, 1), (0, 0)]);
    assert_eq!(SuperAlgebra::zero(1, 2).power_profile(3).0, vec![(1, 2), (0, 0), (0, 0)]);
    assert_eq!(s3_2().power_profile(3).0, vec![(1, 2), (1, 0), (0, 0)]);
    // idempotent algebras stabilize immediately
    assert_eq!(s3_7().power_profile(4).0, vec![(1, 2); 4]);
    assert_eq!(s3_3().power_profile(1).0, vec![(1, 2)]);
}

#[test]
fn even_part_examples() {
    let even = s3_13().even_part();
    assert_eq!(even.dims(), (2, 0));
    let expected = algebra_from_table(
        "x",
        2,
        0,
        &[("e1", "e1", &[("e1", one())]), ("e2", "e2", &[("e2", one())])],
    )
    .unwrap();
    assert_eq!(even, expected);
    assert!(s3_3().even_part().is_zero_algebra());
    assert_eq!(s3_3().even_part().dims(), (1, 0));
}

#[test]
fn annex_examples() {
    assert_eq!(s3_7().annex(), s3_2());
    assert!(s2_2_12().annex().is_zero_algebra());
    assert_eq!(s3_2().annex(), s3_2());
    let a = s3_7();
    assert_eq!(a.annex().annex(), a.annex());
    assert!(a.annex().even_part().is_zero_algebra());
}

#[test]
fn direct_sum_examples() {
    let sum = s2_1(1).direct_sum(&u1s(1, 0));
    let expected = algebra_from_table(
        "S_1^2+U_1^s",
        2,
        1,
        &[
            ("e1", "e1", &[("e1", one())]),
            ("e2", "e2", &[("e2", one())]),
            ("e1", "f1", &[("f1", q(1, 2))]),
        ],
    )
    .unwrap();
    assert_eq!(sum, expected);
    let a = s3_7();
    assert_eq!(a.direct_sum(&SuperAlgebra::zero(0, 0)), a);
    let two = u1s(1, 0).direct_sum(&u1s(1, 0));
    assert_eq!(two.dims(), (2, 0));
    assert_eq!(two.coeff(1, 1, 1), one());
    assert_eq!(two.coeff(0, 1, 1), Scalar::zero());
}

#[test]
fn direct_sum_powers_add() {
    let a = s3_3();
    let b = s2_1(1);
    let sum = a.direct_sum(&b).power_profile(4);
    let (pa, pb) = (a.power_profile(4), b.power_profile(4));
    for r in 0..4 {
        assert_eq!(sum.0[r], (pa.0[r].0 + pb.0[r].0, pa.0[r].1 + pb.0[r].1));
    }
}

#[test]
fn forget_grading_examples() {
    let ungraded = s3_13().forget_grading().unwrap();
    assert_eq!(ungraded.dims(), (3, 0));
    assert_eq!(ungraded.coeff(0, 2, 2), q(1, 2));
    assert_eq!(ungraded.coeff(2, 1, 2), q(1, 2));
    assert_eq!(ungraded.coeff(1, 1, 1), one());
    assert!(ungraded.is_supercommutative());
    assert!(SuperAlgebra::zero(2, 1).forget_grading().unwrap().is_zero_algebra());
    assert_eq!(s3_2().forget_grading(), Err(AlgebraError::NonzeroOddOddProducts));
}

#[test]
fn supercommutativity_detection() {
    assert!(s3_7().is_supercommutative());
    let mut sym = s3_2();
    sym.set_coeff(2, 1, 0, one()).unwrap();
    assert!(!sym.is_supercommutative());
    let mut lopsided = SuperAlgebra::zero(1, 1);
    lopsided.set_coeff(0, 1, 1, one()).unwrap();
    assert!(!lopsided.is_supercommutative());
    assert_eq!(lopsided.first_supercommutativity_failure(), Some((0, 1)));
}

#[test]
fn parity_violations_are_rejected() {
    let mut a = SuperAlgebra::zero(1, 2);
    assert!(matches!(a.set_coeff(0, 0, 1, one()), Err(AlgebraError::ParityViolation(_))));
    assert!(a.set_coeff(0, 0, 1, Scalar::zero()).is_ok());
    assert!(a.set_supercommutative(1, 1, 0, one()).is_err());
}

#[test]
fn labels() {
    let a = SuperAlgebra::zero(2, 1);
    assert_eq!(a.parse_label("e2").unwrap(), 1);
    assert_eq!(a.parse_label("f1").unwrap(), 2);
    assert!(a.parse_label("f2").is_err());
    assert!(a.parse_label("e0").is_err());
    assert!(a.parse_label("g1").is_err());
    assert_eq!(a.label(2), "f1");
}

#[test]
fn json_completion_and_raw() {
    let text = r#"{"name": "S_7^3", "dims": [1, 2], "products": {
        "e1.e1": [["e1", "1"]], "e1.f1": [["f1", "1/2"]], "e1.f2": [["f2", "1/2"]],
        "f1.f2": [["e1", "1"]]}}"#;
    let a = SuperAlgebra::from_json_str(text, true).unwrap();
    assert_eq!(a, s3_7());
    assert_eq!(a.name(), Some("S_7^3"));
    let raw = SuperAlgebra::from_json_str(text, false).unwrap();
    assert!(!raw.is_supercommutative());
    assert_eq!(raw.coeff(2, 1, 0), Scalar::zero());

    let back = SuperAlgebra::from_json_str(&a.to_json_value().to_string(), true).unwrap();
    assert_eq!(back, a);
    let raw_back = SuperAlgebra::from_json_str(&raw.to_json_value().to_string(), true).unwrap();
    assert_eq!(raw_back, raw);
}

#[test]
fn json_rejects_inconsistent_input() {
    let clash = r#"{"dims": [1, 2], "products": {"f1.f2": [["e1", "1"]], "f2.f1": [["e1", "1"]]}}"#;
    assert!(matches!(
        SuperAlgebra::from_json_str(clash, true),
        Err(AlgebraError::InconsistentProducts(_))
    ));
    let square = r#"{"dims": [1, 2], "products": {"f1.f1": [["e1", "1"]]}}"#;
    assert!(SuperAlgebra::from_json_str(square, true).is_err());
    let parity = r#"{"dims": [1, 2], "products": {"e1.e1": [["f1", "1"]]}}"#;
    assert!(matches!(
        SuperAlgebra::from_json_str(parity, true),
        Err(AlgebraError::ParityViolation(_))
    ));
    assert!(SuperAlgebra::from_json_str("{", true).is_err());
}

#[test]
fn display_lists_each_pair_once() {
    assert_eq!(
        s3_7().to_string(),
        "S_7^3 (1,2): e1e1=e1, e1f1=1/2 f1, e1f2=1/2 f2, f1f2=e1"
    );
    assert_eq!(SuperAlgebra::zero(0, 3).to_string(), "(0,3): zero product");
}
