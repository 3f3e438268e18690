use clutch_core::verify::random_unit;
use clutch_core::{witt_bracket, CoeffPoly, GlueAut, NodeContext, NodeElement, QSeries, Rational, Sym};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type A = GlueAut<Rational>;

fn ctx(n: usize, k: usize) -> NodeContext {
    NodeContext::new(n, k).unwrap()
}

#[test]
fn witt_examples() {
    let c = ctx(3, 6);
    assert_eq!(witt_bracket::<Rational>(1, -1, c).unwrap().to_string(), "2·q·M_0");
    assert!(witt_bracket::<Rational>(2, 2, c).unwrap().is_zero());
    // q⁴ vanishes at N = 3
    assert!(witt_bracket::<Rational>(-2, -2, c).unwrap().is_zero());
    assert!(witt_bracket::<Rational>(4, -4, c).unwrap().is_zero());
}

#[test]
fn non_unit_rejected() {
    let c = ctx(2, 3);
    assert!(A::new(NodeElement::x1(c)).is_err());
    assert!(A::identity(c).is_identity());
}

#[test]
fn scalar_rescales_generators() {
    let c = ctx(2, 3);
    let two = QSeries::scalar(Rational::from_integer(2.into()), 2);
    let a = A::scalar(c, two.clone()).unwrap();
    assert_eq!(a.apply(&NodeElement::x1(c)).unwrap(), NodeElement::x1(c).scale(&two));
    let half = two.try_inverse().unwrap();
    assert_eq!(a.apply(&NodeElement::x2(c)).unwrap(), NodeElement::x2(c).scale(&half));
    assert!(a.subcomplex_det().unwrap().is_one());
}

#[test]
fn rescale_reads_old_q_as_lambda_q() {
    let c = ctx(1, 1);
    let lam = Sym::unit("λ");
    let l = CoeffPoly::sym(&lam);
    let plus = |d: i32| A::new(NodeElement::one(c).add(&NodeElement::monomial(c, d, QSeries::one(1))).unwrap()).unwrap();
    assert_eq!(plus(1).rescale(&l).unwrap().unit().to_string(), "(1) + (λ)·x1");
    assert_eq!(plus(-1).rescale(&l).unwrap(), plus(-1));
    // (1 + x₂)∘(1 + x₁) has unit 1 + 2q + x₁ + x₂ and the old q is λq'
    let ab = plus(-1).compose(&plus(1)).unwrap();
    assert_eq!(ab.rescale(&l).unwrap().unit().to_string(), "x2 + (1 + 2·λ·q) + (λ)·x1");
    let split = plus(-1).rescale(&l).unwrap().compose(&plus(1).rescale(&l).unwrap()).unwrap();
    assert_eq!(ab.rescale(&l).unwrap(), split);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn apply_is_a_ring_map(seed in any::<u64>(), n in 0usize..4, extra in 0usize..4) {
        let c = ctx(n, n.max(1) + extra);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = A::new(random_unit(&mut rng, c)).unwrap();
        let (u, v) = (random_unit(&mut rng, c), random_unit(&mut rng, c));
        prop_assert_eq!(a.apply(&u.mul(&v).unwrap()).unwrap(), a.apply(&u).unwrap().mul(&a.apply(&v).unwrap()).unwrap());
        let q = NodeElement::x1(c).mul(&NodeElement::x2(c)).unwrap();
        prop_assert_eq!(a.apply(&q).unwrap(), q);
    }

    #[test]
    fn compose_matches_apply(seed in any::<u64>(), n in 0usize..4, extra in 0usize..4) {
        let c = ctx(n, n.max(1) + extra);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = A::new(random_unit(&mut rng, c)).unwrap();
        let b = A::new(random_unit(&mut rng, c)).unwrap();
        let m = random_unit(&mut rng, c);
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.apply(&m).unwrap(), a.apply(&b.apply(&m).unwrap()).unwrap());
        prop_assert!(a.decompose().is_ok());
        prop_assert!(a.subcomplex_det().unwrap().is_one());
    }
}
