use nilsoliton_core::catalog::{get_algebra, AlgebraId, Sampler};
use nilsoliton_core::curvature::{
    ricci_operator, ricci_tensor_general, ricci_tensor_nilpotent, scalar_curvature,
};
use nilsoliton_core::golden::GoldenSource;
use nilsoliton_core::liealg::{Matrix, Sample};
use nilsoliton_core::ratpoly::{parse_polynomial, ratio, Field, Polynomial, Real, LAMBDA0, SOLITON_C};
use nilsoliton_core::soliton::candidate_derivation;
use num_traits::Zero;
use proptest::prelude::*;

fn p(s: &str) -> Polynomial {
    parse_polynomial(s).unwrap()
}

fn entry() -> impl Strategy<Value = AlgebraId> {
    prop::sample::select(AlgebraId::ALL.to_vec())
}

#[test]
fn a3_1_is_diagonal() {
    let r = ricci_operator(get_algebra(AlgebraId::A3_1Plus2A1).lie());
    let diag = ["-1/2*alpha^2", "-1/2*alpha^2", "0", "0", "1/2*alpha^2"];
    let expected = Matrix::from_fn(5, |i, j| if i == j { p(diag[i]) } else { Polynomial::zero() });
    assert_eq!(r, expected);
}

#[test]
fn a5_1_matrix() {
    let r = ricci_operator(get_algebra(AlgebraId::A5_1).lie());
    let half = ratio(-1, 2);
    let inner = [
        ["alpha^2 + beta^2 + gamma^2", "0", "0", "0", "0"],
        ["0", "alpha^2 + beta^2", "beta*gamma", "0", "0"],
        ["0", "beta*gamma", "gamma^2", "0", "0"],
        ["0", "0", "0", "-alpha^2", "-alpha*beta"],
        ["0", "0", "0", "-alpha*beta", "-beta^2 - gamma^2"],
    ];
    assert_eq!(r, Matrix::from_fn(5, |i, j| p(inner[i][j]).scale(&half)));
}

#[test]
fn a5_4_blocks() {
    let r = ricci_operator(get_algebra(AlgebraId::A5_4).lie());
    let h = ratio(-1, 2);
    assert_eq!(r[(0, 0)], p("alpha^2 + beta^2").scale(&h));
    assert_eq!(r[(0, 1)], p("alpha*gamma").scale(&h));
    assert_eq!(r[(2, 3)], p("alpha*beta").scale(&h));
    assert_eq!(r[(4, 4)], p("alpha^2 + beta^2 + gamma^2").scale(&ratio(1, 2)));
    assert!(r[(1, 2)].is_zero() && r[(3, 4)].is_zero());
}

#[test]
fn scalar_curvatures() {
    assert_eq!(
        scalar_curvature(get_algebra(AlgebraId::A3_1Plus2A1).lie()),
        p("-1/2*alpha^2")
    );
    assert_eq!(
        scalar_curvature(get_algebra(AlgebraId::A5_4).lie()),
        p("-1/2*(alpha^2 + beta^2 + gamma^2)")
    );
    assert!(scalar_curvature(get_algebra(AlgebraId::FiveA1).lie()).is_zero());
}

#[test]
fn scalar_curvature_is_minus_quarter_bracket_norm() {
    for id in AlgebraId::ALL {
        let g = get_algebra(id);
        let lie = g.lie();
        let mut total = Polynomial::zero();
        for i in 0..5 {
            for j in 0..5 {
                let b = lie.basis_bracket(i, j);
                total = &total + &b.dot(&b);
            }
        }
        assert_eq!(scalar_curvature(lie), total.scale(&ratio(-1, 4)), "{id}");
    }
}

#[test]
fn general_formula_agrees_on_catalog() {
    for id in AlgebraId::ALL {
        let g = get_algebra(id);
        assert_eq!(ricci_tensor_general(g.lie()), ricci_tensor_nilpotent(g.lie()), "{id}");
    }
}

#[test]
fn candidate_derivation_entries() {
    let d = candidate_derivation(&get_algebra(AlgebraId::A3_1Plus2A1)).matrix;
    let h = ratio(-1, 2);
    let expected = [
        p("(1 - lambda0)*alpha^2 + 2*c").scale(&h),
        p("(1 - lambda0)*alpha^2 + 2*c").scale(&h),
        p("-lambda0*alpha^2 + 2*c").scale(&h),
        p("-lambda0*alpha^2 + 2*c").scale(&h),
        p("(1 + lambda0)*alpha^2 - 2*c").scale(&ratio(1, 2)),
    ];
    for (k, e) in expected.iter().enumerate() {
        assert_eq!(&d[(k, k)], e, "entry {k}");
    }
    let d = candidate_derivation(&get_algebra(AlgebraId::A5_4)).matrix;
    assert_eq!(
        d[(0, 0)],
        p("(1 - lambda0)*alpha^2 + (1 - lambda0)*beta^2 - lambda0*gamma^2 + 2*c").scale(&h)
    );
    assert_eq!(d[(1, 0)], p("alpha*gamma").scale(&h));
    assert!(d.is_symmetric());
    assert!(d[(0, 0)].variables().contains(LAMBDA0) && d[(0, 0)].variables().contains(SOLITON_C));
}

#[test]
fn evaluated_matrix_at_sample() {
    let g = get_algebra(AlgebraId::A5_4);
    let s = Sample::parse("alpha=0,beta=1,gamma=1").unwrap();
    let r = ricci_operator(&g.evaluate(&s).unwrap());
    let d = [ratio(-1, 2), ratio(-1, 2), ratio(-1, 2), ratio(-1, 2), ratio(1, 1)];
    assert_eq!(
        r,
        Matrix::from_fn(5, |i, j| Real::rational(if i == j { d[i].clone() } else { ratio(0, 1) }))
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Evaluating the stored symbolic operator agrees with computing on the
    /// evaluated structure constants.
    #[test]
    fn golden_then_evaluate_equals_evaluate_then_compute(id in entry(), seed in any::<u64>()) {
        let g = get_algebra(id);
        let s = g.check_sample(&Sampler::new(id, seed).admissible()).unwrap();
        let golden = GoldenSource::Embedded.ricci(id).unwrap().operator();
        let lookup = |n: &str| s.get(n).cloned();
        let via_golden = golden.try_map(|q| q.eval_with(lookup)).unwrap();
        prop_assert_eq!(via_golden, ricci_operator(&g.evaluate(&s).unwrap()));
    }

    #[test]
    fn negative_scalar_curvature(id in entry(), seed in any::<u64>()) {
        let g = get_algebra(id);
        let lie = g.evaluate(&Sampler::new(id, seed).admissible()).unwrap();
        let s = scalar_curvature(&lie);
        if lie.is_abelian() {
            prop_assert!(s.is_zero());
        } else {
            prop_assert!(s.sign().is_lt());
        }
        prop_assert!(ricci_operator(&lie).is_symmetric());
    }

    #[test]
    fn ricci_scales_quadratically(id in entry(), seed in any::<u64>(), t in prop::sample::select(vec![(1i64, 2i64), (2, 1), (3, 1), (5, 3)])) {
        let g = get_algebra(id);
        let s = Sampler::new(id, seed).admissible();
        let t = ratio(t.0, t.1);
        let r = ricci_operator(&g.evaluate(&s).unwrap());
        let rt = ricci_operator(&g.evaluate(&s.scaled(&t)).unwrap());
        prop_assert_eq!(rt, r.scale(&Real::rational(&t * &t)));
    }
}
