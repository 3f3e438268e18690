use clutch_core::{BigRational, Grading, Poly, QSeries, Series, Sym, Var};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Dense table `[exp - lo][q-degree]` of rationals.
#[derive(Debug, Clone)]
struct Dense {
    lo: i32,
    k: i32,
    n: usize,
    c: Vec<Vec<i64>>,
}

impl Dense {
    fn to_series(&self) -> Series {
        let terms = self.c.iter().enumerate().map(|(i, row)| {
            let coeffs = row.iter().map(|x| Poly::constant(rat(*x))).collect();
            (self.lo + i as i32, QSeries::from_coeffs(coeffs, self.n))
        });
        Series::new(Var::Z, self.n, Grading::Plain, self.k, terms)
    }
}

fn dense(n: usize, max_k: i32) -> impl Strategy<Value = Dense> {
    (-3i32..=2, 0i32..=max_k).prop_flat_map(move |(lo, span)| {
        let k = lo + span;
        let rows = (k - lo + 1) as usize;
        proptest::collection::vec(proptest::collection::vec(-4i64..=4, n + 1), rows)
            .prop_map(move |c| Dense { lo, k, n, c })
    })
}

fn lowest(d: &Dense) -> i32 {
    d.c.iter()
        .position(|r| r.iter().any(|x| *x != 0))
        .map(|i| d.lo + i as i32)
        .unwrap_or(d.k + 1)
}

/// Schoolbook convolution over the whole table.
fn dense_mul(a: &Dense, b: &Dense) -> (i32, Vec<(i32, Vec<BigRational>)>) {
    let k = (a.k + lowest(b)).min(b.k + lowest(a));
    let n = a.n;
    let mut out = std::collections::BTreeMap::<i32, Vec<BigRational>>::new();
    for (i, ra) in a.c.iter().enumerate() {
        for (j, rb) in b.c.iter().enumerate() {
            let e = a.lo + b.lo + (i + j) as i32;
            let row = out.entry(e).or_insert_with(|| vec![BigRational::zero(); n + 1]);
            for (p, x) in ra.iter().enumerate() {
                for (q, y) in rb.iter().enumerate() {
                    if p + q <= n {
                        row[p + q] += rat(x * y);
                    }
                }
            }
        }
    }
    (k, out.into_iter().filter(|(e, _)| *e <= k).collect())
}

fn sym_series(n: usize, k: i32, seed: &[i64]) -> Series {
    let c = Sym::constant("c");
    let eps = Sym::nilpotent("eps");
    let terms = seed.iter().enumerate().map(|(i, x)| {
        let p = match i % 3 {
            0 => Poly::constant(rat(*x)),
            1 => Poly::sym(&c).scale(&rat(*x)),
            _ => &Poly::sym(&eps).scale(&rat(*x)) + &Poly::one(),
        };
        (i as i32 - 1, QSeries::monomial(p, i % (n + 1), n))
    });
    Series::new(Var::Z, n, Grading::Plain, k, terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn mul_matches_dense_convolution((a, b) in (0usize..=8).prop_flat_map(|n| (dense(n, 24), dense(n, 24)))) {
        let got = a.to_series().mul(&b.to_series()).unwrap();
        let (k, want) = dense_mul(&a, &b);
        prop_assert_eq!(got.known(), k);
        for (e, row) in want {
            let c = got.coeff(e).unwrap();
            for (j, x) in row.iter().enumerate() {
                prop_assert_eq!(c.coeff(j).constant_part(), x.clone());
                prop_assert!(c.coeff(j).as_constant().is_some());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn ring_axioms(n in 0usize..=3, x in proptest::collection::vec(-3i64..=3, 6), y in proptest::collection::vec(-3i64..=3, 5), z in proptest::collection::vec(-3i64..=3, 4)) {
        let (a, b, c) = (sym_series(n, 6, &x), sym_series(n, 5, &y), sym_series(n, 7, &z));
        let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
        let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert!(ab_c.agrees(&a_bc).unwrap());
        prop_assert!(a.mul(&b).unwrap().agrees(&b.mul(&a).unwrap()).unwrap());
        let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
        let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert!(lhs.agrees(&rhs).unwrap());
    }

    #[test]
    fn residue_of_derivative_vanishes(d in (0usize..=4).prop_flat_map(|n| dense(n, 10))) {
        let s = d.to_series();
        if s.known() >= 0 {
            prop_assert!(s.derive().residue().unwrap().is_zero());
        }
    }

    #[test]
    fn invert_round_trip(n in 0usize..=4, x in proptest::collection::vec(-3i64..=3, 6), lead in 1i64..=5) {
        let mut s = sym_series(n, 8, &x).positive_part().shift(-1);
        s = s.add(&Series::constant(Var::Z, n, Grading::Plain, 8, QSeries::scalar(rat(lead), n))).unwrap();
        let inv = s.invert().unwrap();
        let one = Series::one(Var::Z, n, Grading::Plain, 100);
        prop_assert!(s.mul(&inv).unwrap().agrees(&one).unwrap());
    }

    #[test]
    fn subst_is_multiplicative(n in 0usize..=4, x in proptest::collection::vec(-3i64..=3, 5), y in proptest::collection::vec(-3i64..=3, 5)) {
        let f = sym_series(n, 8, &x).regular_part();
        let g = sym_series(n, 9, &y).regular_part();
        let lhs = f.mul(&g).unwrap().subst_q_over_x().unwrap();
        let rhs = f.subst_q_over_x().unwrap().mul(&g.subst_q_over_x().unwrap()).unwrap();
        prop_assert_eq!(lhs.truncate(0), rhs.truncate(0));
        let lin = f.add(&g).unwrap().subst_q_over_x().unwrap();
        let sum = f.subst_q_over_x().unwrap().add(&g.subst_q_over_x().unwrap()).unwrap();
        prop_assert_eq!(lin.truncate(0), sum.truncate(0));
    }

    #[test]
    fn compose_is_an_action(n in 0usize..=3, a in proptest::collection::vec(-3i64..=3, 5), u in proptest::collection::vec(-2i64..=2, 4), v in proptest::collection::vec(-2i64..=2, 4)) {
        let a = sym_series(n, 7, &a);
        let lin = |s: &[i64]| {
            let tail = sym_series(n, 9, s).positive_part().shift(1);
            tail.add(&Series::x(Var::Z, n, Grading::Plain, 9)).unwrap()
        };
        let (u, v) = (lin(&u), lin(&v));
        let lhs = a.compose(&u).unwrap().compose(&v).unwrap();
        let rhs = a.compose(&u.compose(&v).unwrap()).unwrap();
        prop_assert!(lhs.agrees(&rhs).unwrap());
    }
}

#[test]
fn self_check_inverse_with_symbols() {
    let n = 3;
    let c = Sym::constant("c");
    let s = Series::new(
        Var::Z,
        n,
        Grading::Plain,
        6,
        [
            (0, QSeries::one(n)),
            (1, QSeries::q(n)),
            (2, QSeries::sym(&c, n)),
        ],
    );
    let inv = s.invert().unwrap();
    let prod = s.mul(&inv).unwrap();
    assert_eq!(prod, Series::one(Var::Z, n, Grading::Plain, 6));
    assert!(prod.coeff(0).unwrap().coeff(0).constant_part().is_one());
}
