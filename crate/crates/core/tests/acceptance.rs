//! Acceptance criteria 1–9, one PASS/FAIL line each.
//!
//! The process exits 0 after reporting so the other suites in a workspace
//! run still execute; set `ACCEPTANCE_STRICT=1` to turn any FAIL into a
//! nonzero exit.

use std::time::{Duration, Instant};

use clutch_core::diff::Label;
use clutch_core::elliptic::lemma_ii_ell;
use clutch_core::period::{genus1_ab, genus1_pi};
use clutch_core::scalar::Scalar;
use clutch_core::verify::{
    group_laws, h1_two_route, ladder_check, numeric_checks, displayed_ab, displayed_pi, pi_elliptic_route, pi_two_route,
    random_unit, solver_vs_closed, witt_grid, DEFAULT_SEED,
};
use clutch_core::{theta_det, theta_scaling, CoeffPoly, GlueAut, Monomial, NodeContext, QSeries, Rational, Result, Sym};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<Option<String>>;
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn mismatch<T: PartialEq + std::fmt::Display>(what: &str, got: &T, want: &T) -> Option<String> {
    if got == want {
        None
    } else {
        Some(format!("{what}: got {got}, want {want}"))
    }
}

fn c1_recursion() -> Outcome {
    let ab = genus1_ab::<Rational>(11);
    let mut fails = Vec::new();
    for (name, want, modulus) in displayed_ab(11) {
        let k: usize = name[1..].parse().expect("index");
        let got = if name.starts_with('a') { ab.a(k) } else { ab.b(k) };
        fails.extend(mismatch(name, &got.truncate(modulus), &want.truncate(modulus)));
    }
    if !ab.a(2).is_zero() {
        fails.push(format!("a2 = {}", ab.a(2)));
    }
    for (k, v) in &ab.a {
        if *k >= 10 && !v.truncate(12).is_zero() {
            fails.push(format!("a{k} ≢ 0 mod q^12, a{k} = {v}"));
        }
    }
    for (k, v) in &ab.b {
        if *k >= 8 && !v.truncate(10).is_zero() {
            fails.push(format!("b{k} ≢ 0 mod q^10, b{k} = {v}"));
        }
    }
    Ok(if fails.is_empty() { None } else { Some(fails.join("; ")) })
}

fn c2_display() -> Outcome {
    let (p1, p2) = genus1_pi::<Rational>(10)?;
    let (first_want, second_want) = displayed_pi(10);
    let mut fails = Vec::new();
    let got1 = p1.coeff(Label::Alpha(0));
    if got1 != first_want {
        fails.push(format!("dx1 coefficient differs from the display by {}", &got1 - &first_want));
    }
    fails.extend(mismatch("dx2 coefficient", &p2.coeff(Label::Alpha(0)), &second_want));
    fails.extend(mismatch("ω[-2] coefficient", &p2.coeff(Label::Omega(2)), &-QSeries::q(10)));
    if p1.terms().count() != 1 || p2.terms().count() != 2 {
        fails.push("unexpected extra basis terms".into());
    }
    Ok(if fails.is_empty() { None } else { Some(fails.join("; ")) })
}

fn c3_witt() -> Outcome {
    for n in 0..=8 {
        if let Some(w) = witt_grid(n, 8)? {
            return Ok(Some(format!("N={n}: {w}")));
        }
    }
    Ok(None)
}

fn c4_group() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for s in 0..200 {
        let n = rng.gen_range(0..=4);
        let k = rng.gen_range(n.max(1)..=10);
        let ctx = NodeContext::new(n, k)?;
        let (u, v, w) = (random_unit(&mut rng, ctx), random_unit(&mut rng, ctx), random_unit(&mut rng, ctx));
        for (id, r) in group_laws(&u, &v, &w)? {
            if let (false, Some(r)) = (id == "subcomplex_det", r) {
                return Ok(Some(format!("unit {s} (N={n}, K={k}) {id}: {r}")));
            }
        }
    }
    Ok(None)
}

fn c5_closed() -> Outcome {
    for (g1, g2) in [(1, 1), (1, 2), (2, 2)] {
        if let Some(w) = solver_vs_closed(g1, g2)? {
            return Ok(Some(format!("({g1},{g2}) {w}")));
        }
    }
    Ok(None)
}

fn c6_two_route() -> Outcome {
    for (g1, g2) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        if let Some(w) = pi_two_route(g1, g2)? {
            return Ok(Some(format!("({g1},{g2}) {w}")));
        }
    }
    pi_elliptic_route(4)
}

fn c7_elliptic() -> Outcome {
    for n in 1..=10 {
        let r = lemma_ii_ell::<Rational>(n, 30)?;
        if !r.holds() {
            return Ok(Some(format!("lemma_ii n={n}: {}", r.residual)));
        }
    }
    if let Some(w) = ladder_check(12, 30)? {
        return Ok(Some(format!("ladder {w}")));
    }
    h1_two_route(10)
}

fn c8_det() -> Outcome {
    let lam = Sym::unit("λ");
    let inv = CoeffPoly::term(Rational::from_int(1), Monomial::from_factors([(lam.clone(), -1)]).expect("unit"));
    for n in 0..=4 {
        for k in n.max(1)..=6 {
            let ctx = NodeContext::new(n, k)?;
            if let Some(w) = mismatch("theta_det", &theta_det::<Rational>(ctx), &QSeries::q(n)) {
                return Ok(Some(w));
            }
            if let Some(w) = mismatch("theta_scaling", &theta_scaling(ctx, &CoeffPoly::sym(&lam))?, &inv) {
                return Ok(Some(w));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED ^ 0xde7);
    for s in 0..50 {
        let n = rng.gen_range(0..=4);
        let k = rng.gen_range(n.max(1)..=8);
        let ctx = NodeContext::new(n, k)?;
        let det = GlueAut::new(random_unit(&mut rng, ctx))?.subcomplex_det()?;
        if !det.is_one() {
            return Ok(Some(format!("unit {s}: det = {det}")));
        }
    }
    Ok(None)
}

fn c9_numeric() -> Outcome {
    Ok(numeric_checks()?.into_iter().find_map(|(id, r)| r.map(|w| format!("{id}: {w}"))))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("genus-one recursion table matches the displayed a/b values", c1_recursion, Some(5)),
        ("Π(dx₁,0) mod q¹¹ equals the display term by term", c2_display, Some(5)),
        ("Witt brackets exact on |i|,|j| ≤ 8, N ≤ 8", c3_witt, Some(10)),
        ("group laws on 200 seeded random units", c4_group, Some(30)),
        ("solve_section equals closed_phi1", c5_closed, Some(60)),
        ("two-route Πⱼ and elliptic substitution for j ≤ 4", c6_two_route, None),
        ("elliptic identities: lemma_ii, ladder, H¹ two-route", c7_elliptic, Some(10)),
        ("theta_det, theta_scaling, subcomplex determinant", c8_det, None),
        ("numeric Eisenstein checks at 1e-10", c9_numeric, None),
    ];
    let mut failed = 0;
    for (i, (desc, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let mut why = match outcome {
            Ok(w) => w,
            Err(e) => Some(format!("error: {e}")),
        };
        if let Some(secs) = limit {
            if why.is_none() && took > Duration::from_secs(*secs) {
                why = Some(format!("took {took:.2?}, limit {secs} s"));
            }
        }
        match why {
            None => println!("PASS {}: {desc} ({took:.2?})", i + 1),
            Some(w) => {
                failed += 1;
                println!("FAIL {}: {desc} ({took:.2?})", i + 1);
                println!("    witness: {w}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 && std::env::var_os("ACCEPTANCE_STRICT").is_some_and(|v| v == "1") {
        std::process::exit(1);
    }
}
