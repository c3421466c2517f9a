use nilsoliton_core::catalog::{get_algebra, AlgebraId, Sampler};
use nilsoliton_core::liealg::{LieAlgebra, Matrix, Vector};
use nilsoliton_core::ratpoly::{rat, Real};
use proptest::prelude::*;

fn entry() -> impl Strategy<Value = AlgebraId> {
    prop::sample::select(AlgebraId::ALL.to_vec())
}

fn vector() -> impl Strategy<Value = Vector<Real>> {
    prop::collection::vec(-5i64..=5, 5)
        .prop_map(|xs| Vector(xs.into_iter().map(|x| Real::rational(rat(x))).collect()))
}

fn at_sample(id: AlgebraId, seed: u64) -> LieAlgebra<Real> {
    let sample = Sampler::new(id, seed).admissible();
    get_algebra(id).evaluate(&sample).unwrap()
}

fn add(a: &Vector<Real>, b: &Vector<Real>) -> Vector<Real> {
    a.add(b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bracket_is_bilinear_and_antisymmetric(
        id in entry(), seed in any::<u64>(), u in vector(), v in vector(), w in vector()
    ) {
        let g = at_sample(id, seed);
        let uv = g.bracket(&u, &v).unwrap();
        prop_assert_eq!(g.bracket(&v, &u).unwrap(), uv.scale(&Real::rational(rat(-1))));
        prop_assert_eq!(
            g.bracket(&add(&u, &w), &v).unwrap(),
            add(&uv, &g.bracket(&w, &v).unwrap())
        );
    }

    #[test]
    fn jacobi_on_random_vectors(
        id in entry(), seed in any::<u64>(), u in vector(), v in vector(), w in vector()
    ) {
        let g = at_sample(id, seed);
        let b = |x: &Vector<Real>, y: &Vector<Real>| g.bracket(x, y).unwrap();
        let total = add(&add(&b(&u, &b(&v, &w)), &b(&v, &b(&w, &u))), &b(&w, &b(&u, &v)));
        prop_assert!(total.is_zero());
    }

    #[test]
    fn ad_star_is_the_adjoint(id in entry(), seed in any::<u64>(), u in vector(), x in vector(), y in vector()) {
        let g = at_sample(id, seed);
        let ad = g.ad_matrix(&u).unwrap();
        let ad_star = g.ad_star_matrix(&u).unwrap();
        prop_assert_eq!(&ad_star, &ad.transpose());
        // <ad_u x, y> = <x, ad*_u y>
        prop_assert_eq!(ad.apply(&x).dot(&y), x.dot(&ad_star.apply(&y)));
    }

    #[test]
    fn j_operator_identity(id in entry(), seed in any::<u64>(), u in vector(), x in vector(), y in vector()) {
        let g = at_sample(id, seed);
        let j = g.j_operator_matrix(&u).unwrap();
        // <J_u x, y> = <u, [x, y]>
        prop_assert_eq!(j.apply(&x).dot(&y), u.dot(&g.bracket(&x, &y).unwrap()));
        // J_u is skew
        prop_assert_eq!(j.transpose(), j.scale(&Real::rational(rat(-1))));
    }

    #[test]
    fn catalog_is_nilpotent_of_step_at_most_four(id in entry(), seed in any::<u64>()) {
        let g = at_sample(id, seed);
        let step = g.nilpotency_step().unwrap();
        prop_assert!(step <= 4);
        prop_assert_eq!(step == 1, g.is_abelian());
        prop_assert!(g.killing_form().is_zero());
        prop_assert!(g.mean_curvature_vector().is_zero());
    }
}

fn vq(xs: &[i64]) -> Vector<num_rational::BigRational> {
    Vector(xs.iter().map(|&x| rat(x)).collect())
}

#[test]
fn table_brackets() {
    let a54 = get_algebra(AlgebraId::A5_4);
    let b = a54.lie().basis_bracket(0, 3);
    assert_eq!(b.0[4].to_string(), "1*beta");
    assert!(b.0[..4].iter().all(|p| p.to_string() == "0"));
    let flat = get_algebra(AlgebraId::FiveA1);
    assert!(flat.lie().basis_bracket(0, 1).is_zero());
    assert!(flat.lie().is_abelian());
}

#[test]
fn ad_and_j_of_a3_1() {
    let g = get_algebra(AlgebraId::A3_1Plus2A1);
    let lie = g.lie();
    let e = |i| Vector::basis(5, i);
    let ad = lie.ad_matrix(&e(0)).unwrap();
    let nonzero: Vec<_> = (0..5)
        .flat_map(|r| (0..5).map(move |c| (r, c)))
        .filter(|&(r, c)| ad[(r, c)].to_string() != "0")
        .collect();
    assert_eq!(nonzero, vec![(4, 1)]);
    assert_eq!(ad[(4, 1)].to_string(), "1*alpha");
    let ad_star = lie.ad_star_matrix(&e(0)).unwrap();
    assert_eq!(ad_star, ad.transpose());
    assert_eq!(ad_star[(1, 4)].to_string(), "1*alpha");
    // column 1 of J_{v5} is ad*_{v1} v5 = alpha v2
    let j = lie.j_operator_matrix(&e(4)).unwrap();
    let col: Vec<String> = j.column(0).0.iter().map(ToString::to_string).collect();
    assert_eq!(col, ["0", "1*alpha", "0", "0", "0"]);
}

#[test]
fn jacobi_violation_is_reported() {
    // [v1,v2] = v3, [v1,v3] = v1
    let g = LieAlgebra::from_brackets(3, [(0, 1, vq(&[0, 0, 1])), (0, 2, vq(&[1, 0, 0]))]).unwrap();
    let v = g.jacobi_check();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].triple, (0, 1, 2));
    assert_eq!(v[0].residual, vq(&[0, 0, -1]));
    assert!(LieAlgebra::<num_rational::BigRational>::abelian(4).jacobi_check().is_empty());
}

#[test]
fn nilpotency_steps() {
    use nilsoliton_core::liealg::Sample;
    let a31 = get_algebra(AlgebraId::A3_1Plus2A1);
    assert_eq!(a31.nilpotency_step(&Sample::parse("alpha=1").unwrap()).unwrap(), 2);
    let a52 = get_algebra(AlgebraId::A5_2);
    let s = Sample::parse("alpha=1,beta=0,gamma=1,delta=1").unwrap();
    assert_eq!(a52.nilpotency_step(&s).unwrap(), 4);
    assert_eq!(a52.lie().killing_form(), Matrix::zeros(5));
}

#[test]
fn catalog_passes_jacobi_symbolically() {
    for id in AlgebraId::ALL {
        let g = get_algebra(id);
        assert!(g.lie().jacobi_check().is_empty(), "{id}");
        assert!(g.lie().killing_form().is_zero(), "{id}");
        assert!(g.lie().mean_curvature_vector().is_zero(), "{id}");
    }
}
