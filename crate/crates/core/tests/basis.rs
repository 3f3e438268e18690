use clutch_core::basis::{canonical_param, f_general, h1_general, lemma_ii_window, param_rhs, GenusData};
use clutch_core::diff::{DiffBasis, Label};
use clutch_core::elliptic::{c_sym, Tag, WpContext};
use clutch_core::period::genus1_specialization;
use clutch_core::{CoeffPoly, Grading, Laurent, Poly, QSeries, Rational, Scalar, Sym, Var};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn sym(name: &str) -> Poly {
    CoeffPoly::sym(&Sym::constant(name))
}

fn r(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn canonical_param_round_trip(g in 1usize..5, k in 2i32..9, raw in proptest::collection::vec(-9i64..10, 8)) {
        let a: Vec<Poly> = raw.iter().map(|&x| Poly::int(x)).collect();
        let u = canonical_param(&a, g, k).unwrap();
        prop_assert_eq!(&u.coeff(0).unwrap().coeff(0).clone(), &Poly::zero());
        prop_assert_eq!(&u.coeff(1).unwrap().coeff(0).clone(), &Poly::one());
        let back = param_rhs(&u, g).unwrap();
        prop_assert_eq!(&back.coeff(0).unwrap().coeff(0).clone(), &Poly::one());
        for e in 1..k {
            prop_assert_eq!(&back.coeff(e).unwrap().coeff(0).clone(), &a[e as usize - 1]);
        }
        // every prime in a denominator divides some pivot g+j−1, j ≤ k
        let pivots: Vec<i64> = (2..=k as i64).map(|j| g as i64 + j - 1).collect();
        for e in 2..=k {
            let c = u.coeff(e).unwrap().coeff(0).as_constant().unwrap_or_else(Rational::zero);
            let mut den = c.denom().clone();
            for p in &pivots {
                let p = BigInt::from(*p);
                loop {
                    let g = den.gcd(&p);
                    if g.is_one() { break; }
                    den /= g;
                }
            }
            prop_assert!(den.abs().is_one(), "denominator of c{} = {}", e, c);
        }
    }
}

#[test]
fn canonical_param_second_coefficient() {
    // (g+2)c₃ + (g−1)(g+2)/2·c₂² = a_{g+1}
    for g in 1..6usize {
        let a = vec![sym("a0"), sym("a1")];
        let u = canonical_param(&a, g, 3).unwrap();
        let c2 = u.coeff(2).unwrap().coeff(0).clone();
        let c3 = u.coeff(3).unwrap().coeff(0).clone();
        assert_eq!(c2, sym("a0").scale(&r(1, g as i64 + 1)));
        let gi = g as i64;
        let lhs = &c3.scale(&Rational::from_int(gi + 2)) + &c2.pow(2).scale(&r((gi - 1) * (gi + 2), 2));
        assert_eq!(lhs, sym("a1"), "g={g}");
    }
}

#[test]
fn f_general_g2_instantiation() {
    let f = f_general::<Rational>(2, 1).unwrap();
    let want = Laurent::from_polys(
        Var::Z,
        0,
        Grading::Plain,
        2,
        [(-1, sym("α_0[0]")), (1, sym("ω_0[-2]")), (2, sym("ω_0[-3]"))],
    );
    assert_eq!(f, want);
    assert!(f.coeff(0).unwrap().is_zero());
}

#[test]
fn f_general_satisfies_residue_theorem() {
    for g in 1..=4usize {
        for n in 1..=4usize {
            let d = GenusData::new(g, false, n + 2).unwrap();
            let f = d.f_series_general::<Rational>(n).unwrap();
            let labels = (0..g).map(Label::Alpha).chain((2..=g + 1).map(Label::Omega));
            for l in labels {
                let e = DiffBasis::<Rational>::expansion(&d, l, (g + n) as i32 - 1).unwrap();
                let res = f.mul(&e).unwrap().residue().unwrap();
                assert!(res.is_zero(), "g={g} n={n} {l}: {res}");
            }
        }
    }
}

#[test]
fn genus_one_specializes_to_f_series() {
    let sub = genus1_specialization::<Rational>();
    let ell = WpContext::<Rational>::symbolic(Tag::Tau1, 64);
    for n in 1..=10usize {
        let d = GenusData::new(1, false, 4).unwrap();
        let f = d.f_series_general::<Rational>(n).unwrap().substitute(&sub);
        assert_eq!(f, ell.f_series(n + 1, 1).unwrap().series, "n={n}");
    }
}

#[test]
fn h1_general_g2_n1() {
    let h = h1_general::<Rational>(2, 1).unwrap();
    let third = |p: Poly, s: i64| QSeries::constant(p.scale(&r(s, 3)), 0);
    assert_eq!(h.coeff(Label::Omega(2)), third(sym("α_0[0]"), 1));
    assert_eq!(h.coeff(Label::Alpha(0)), third(sym("ω_0[-2]"), -1));
    assert_eq!(h.coeff(Label::Alpha(1)), third(sym("ω_0[-3]"), -2));
    assert_eq!(h.terms().count(), 3);
}

#[test]
fn h1_general_genus_one_matches_elliptic_rule() {
    let sub = genus1_specialization::<Rational>();
    let ell = WpContext::<Rational>::symbolic(Tag::Tau1, 64);
    for n in 1..=10usize {
        let h = h1_general::<Rational>(1, n).unwrap();
        assert!(h.coeff(Label::Omega(2)).is_zero());
        let got = h.substitute(&sub);
        assert_eq!(got, ell.reduce_label(Label::Omega(n + 2), 0).unwrap(), "n={n}");
        let want = CoeffPoly::sym(&c_sym(n, Tag::Tau1)).scale(&r(-1, n as i64 + 1));
        let want = if n % 2 == 1 { Poly::zero() } else { want };
        assert_eq!(got.coeff(Label::Alpha(0)).coeff(0), &want);
    }
}

#[test]
fn lemma_ii_on_window() {
    for g in 1..=4 {
        for n in 1..=5 {
            let rep = lemma_ii_window::<Rational>(g, n).unwrap();
            assert!(rep.holds(), "g={g} n={n}: {}", rep.residual);
            assert_eq!(rep.window, g as i32 - 1);
        }
    }
}

#[test]
fn unknown_tail_is_an_error() {
    let d = GenusData::new(2, false, 3).unwrap();
    assert!(DiffBasis::<Rational>::expansion(&d, Label::Omega(3), 4).is_ok());
    assert!(DiffBasis::<Rational>::expansion(&d, Label::Omega(3), 5).is_err());
    assert!(DiffBasis::<Rational>::expansion(&d, Label::Alpha(2), 2).is_err());
}

#[test]
fn normalization_kills_top_alpha() {
    let d = GenusData::new(3, false, 6).unwrap();
    let e = DiffBasis::<Rational>::expansion(&d, Label::Alpha(2), 8).unwrap();
    assert_eq!(e, Laurent::from_polys(Var::Z, 0, Grading::Plain, 8, [(2, Poly::one())]));
}
