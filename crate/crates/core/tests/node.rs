use clutch_core::verify::random_unit;
use clutch_core::{Error, NodeContext, NodeDiff, NodeElement, QSeries, Rational};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type E = NodeElement<Rational>;

fn ctx(n: usize, k: usize) -> NodeContext {
    NodeContext::new(n, k).unwrap()
}

#[test]
fn defining_relation() {
    let c = ctx(3, 5);
    let p = E::x1(c).mul(&E::x2(c)).unwrap();
    assert_eq!(p, E::scalar(c, QSeries::q(3)));
    // x₁³x₂⁵ = q³x₂², and q³ vanishes at N = 2
    let c = ctx(2, 5);
    let p = E::x1(c).pow(3).unwrap().mul(&E::x2(c).pow(5).unwrap()).unwrap();
    assert!(p.is_zero());
}

#[test]
fn rejects_short_window() {
    assert!(matches!(NodeContext::new(4, 3), Err(Error::InvalidArgument(_))));
    assert!(NodeContext::new(0, 0).is_err());
}

#[test]
fn non_unit_has_no_inverse() {
    let c = ctx(2, 4);
    assert!(E::x1(c).inverse().is_err());
    assert!(!E::x1(c).add(&E::x2(c)).unwrap().is_unit());
}

#[test]
fn x1_dx2_is_q_times_e() {
    let c = ctx(3, 4);
    let w = NodeDiff::from_parts(&E::zero(c), &E::x1(c)).unwrap();
    assert_eq!(w.to_omega(), E::scalar(c, QSeries::q(3)));
    // d(x₁x₂) = 0 since x₁x₂ = q is a scalar
    let prod = E::x1(c).mul(&E::x2(c)).unwrap();
    assert!(prod.d().is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ring_laws(seed in any::<u64>(), n in 0usize..4, extra in 0usize..4) {
        let c = ctx(n, n.max(1) + extra);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v, w) = (random_unit(&mut rng, c), random_unit(&mut rng, c), random_unit(&mut rng, c));
        prop_assert_eq!(u.mul(&v).unwrap(), v.mul(&u).unwrap());
        prop_assert_eq!(u.mul(&v).unwrap().mul(&w).unwrap(), u.mul(&v.mul(&w).unwrap()).unwrap());
        let s = v.add(&w).unwrap();
        prop_assert_eq!(u.mul(&s).unwrap(), u.mul(&v).unwrap().add(&u.mul(&w).unwrap()).unwrap());
        prop_assert!(u.mul(&u.inverse().unwrap()).unwrap().is_one());
        prop_assert_eq!(u.swap().swap(), u.clone());
    }

    #[test]
    fn leibniz_and_iota(seed in any::<u64>(), n in 0usize..4, extra in 0usize..4) {
        let c = ctx(n, n.max(1) + extra);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (u, v) = (random_unit(&mut rng, c), random_unit(&mut rng, c));
        let lhs = u.mul(&v).unwrap().d();
        let rhs = u.d().mul_elem(&v).unwrap().add(&v.d().mul_elem(&u).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let (a1, a2) = u.iota();
        let (b1, b2) = v.iota();
        let (p1, p2) = u.mul(&v).unwrap().iota();
        prop_assert!(p1.agrees(&a1.mul(&b1).unwrap()).unwrap());
        prop_assert!(p2.agrees(&a2.mul(&b2).unwrap()).unwrap());
        prop_assert_eq!(E::iota_preimage(c, &a1, &a2).unwrap(), u);
    }
}
