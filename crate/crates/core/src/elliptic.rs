//! Genus one: the Weierstrass ℘ series, the normalized differentials
//! `f[−n]dz` and their classes in H¹.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::diff::{CohomClass, DiffBasis, DiffCombo, IdentityReport, Label};
use crate::error::{Error, Result};
use crate::scalar::{binomial, Scalar};
use crate::series::{CoeffPoly, Grading, Laurent, QTrunc, Sym, Var};

/// Which lattice a context describes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tag {
    Tau1,
    Tau2,
    Numeric(Complex64),
}

impl Tag {
    fn suffix(self) -> &'static str {
        match self {
            Tag::Tau1 => "τ1",
            Tag::Tau2 => "τ2",
            Tag::Numeric(_) => "τ",
        }
    }
}

/// Symbol for `c_i(τ)` on the given side.
pub fn c_sym(i: usize, tag: Tag) -> Sym {
    Sym::constant(&format!("c{i}({})", tag.suffix()))
}

/// Coefficients `c_i` of `℘(z) = z⁻² + Σ c_i zⁱ`: free symbols, symbols
/// reduced to `c₂, c₄`, or numbers.
#[derive(Debug, Clone)]
pub struct WpContext<S: Scalar> {
    tag: Tag,
    order: i32,
    /// Explicit values; symbolic contexts without closure leave this empty.
    values: Option<BTreeMap<usize, CoeffPoly<S>>>,
}

impl<S: Scalar> WpContext<S> {
    /// Free symbols `c_i(τ)` for every even `i ≥ 2`.
    pub fn symbolic(tag: Tag, order: i32) -> Self {
        WpContext { tag, order, values: None }
    }

    /// Symbols with every `c_{2k}`, `k ≥ 3`, expressed through `c₂, c₄`.
    pub fn closed(tag: Tag, order: i32) -> Self {
        let mut values = c_closure::<S>(tag, order.max(0));
        values.insert(2, CoeffPoly::sym(&c_sym(2, tag)));
        values.insert(4, CoeffPoly::sym(&c_sym(4, tag)));
        WpContext { tag, order, values: Some(values) }
    }

    pub fn tag(&self) -> Tag {
        self.tag
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    /// `c_i`; zero for odd `i` and for `i = 0`.
    pub fn c(&self, i: i64) -> Result<CoeffPoly<S>> {
        if i <= 0 || i % 2 != 0 {
            return Ok(CoeffPoly::zero());
        }
        match &self.values {
            None => Ok(CoeffPoly::sym(&c_sym(i as usize, self.tag))),
            Some(v) => v
                .get(&(i as usize))
                .cloned()
                .ok_or(Error::WindowExceeded { requested: i, known: self.order as i64 }),
        }
    }

    /// `℘(z)` through `z^k`.
    pub fn wp_series(&self, k: i32) -> Result<Laurent<S>> {
        if k > self.order {
            return Err(Error::WindowExceeded { requested: k as i64, known: self.order as i64 });
        }
        self.f_series(2, k).map(|f| f.series)
    }

    /// `f[−n] = z⁻ⁿ + (−1)ⁿ Σ_{m≥1} C(m+n−2, m)·c_{m+n−2}/(n−1)·z^m` through `z^k`.
    pub fn f_series(&self, n: usize, k: i32) -> Result<EllDiff<S>> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("f[-{n}] needs n >= 2")));
        }
        let ni = n as i64;
        let sign = if n.is_multiple_of(2) { S::one() } else { -S::one() };
        let mut terms = vec![(-(n as i32), CoeffPoly::one())];
        for m in 1..=k.max(0) as i64 {
            let c = self.c(m + ni - 2)?;
            if c.is_zero() {
                continue;
            }
            let w = sign.clone() * binomial::<S>(m + ni - 2, m) / S::from_int(ni - 1);
            terms.push((m as i32, c.scale(&w)));
        }
        Ok(EllDiff { n, series: Laurent::from_polys(Var::Z, 0, Grading::Plain, k, terms) })
    }

    /// Class of `ω[−n]` (or `dz`) in the basis `{dz, ω[−2]}`.
    pub fn reduce_label(&self, label: Label, order: usize) -> Result<CohomClass<S>> {
        let combo = match label {
            Label::Alpha(0) | Label::Omega(2) => DiffCombo::single(order, label, QTrunc::one(order)),
            Label::Omega(n) if n >= 3 => {
                let c = self.c(n as i64 - 2)?.scale(&(-S::one() / S::from_int(n as i64 - 1)));
                DiffCombo::single(order, Label::Alpha(0), QTrunc::constant(c, order))
            }
            other => return Err(Error::UnknownLabel(format!("{other} on a genus-one curve"))),
        };
        CohomClass::new(1, combo)
    }

    /// `ℓ ↦ the expansion coefficient of z^{1+m} in f[−j]`: the values the
    /// general-genus symbols `ω_m[−j]` take on this curve.
    pub fn omega_coeff(&self, j: usize, m: usize) -> Result<CoeffPoly<S>> {
        let e = m as i32 + 1;
        Ok(self.f_series(j, e)?.series.coeff(e)?.coeff(0).clone())
    }
}

impl WpContext<Complex64> {
    /// Numeric coefficients at `τ`, for every even index up to `order`.
    pub fn numeric(tau: Complex64, order: i32) -> Result<Self> {
        let mut values = BTreeMap::new();
        for i in (2..=order.max(0) as usize).step_by(2) {
            values.insert(i, CoeffPoly::constant(numeric_c(tau, i)?));
        }
        Ok(WpContext { tag: Tag::Numeric(tau), order, values: Some(values) })
    }
}

impl<S: Scalar> DiffBasis<S> for WpContext<S> {
    fn genus(&self) -> usize {
        1
    }

    fn expansion(&self, label: Label, k: i32) -> Result<Laurent<S>> {
        match label {
            Label::Alpha(0) => Ok(Laurent::one(Var::Z, 0, Grading::Plain, k)),
            Label::Omega(n) if n >= 2 => self.f_series(n, k).map(|f| f.series),
            other => Err(Error::UnknownLabel(format!("{other} on a genus-one curve"))),
        }
    }

    fn reduce(&self, label: Label, n: usize) -> Result<CohomClass<S>> {
        self.reduce_label(label, n)
    }

    fn max_window(&self, label: Label) -> i32 {
        match (&self.values, label) {
            (None, _) | (_, Label::Alpha(_)) => i32::MAX / 4,
            (Some(_), Label::Omega(n)) => self.order - n as i32 + 2,
        }
    }
}

/// A normalized differential `f[−n]dz` (`n = 0` stands for `dz`).
#[derive(Debug, Clone, PartialEq)]
pub struct EllDiff<S: Scalar> {
    pub n: usize,
    pub series: Laurent<S>,
}

impl<S: Scalar> fmt::Display for EllDiff<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.series)
    }
}

/// Reduces a combination of `dz = α[0]` and `ω[−n]` to the basis `{dz, ω[−2]}`.
pub fn h1_reduce_ell<S: Scalar>(ctx: &WpContext<S>, w: &DiffCombo<S>) -> Result<CohomClass<S>> {
    w.reduce(ctx)
}

/// Expresses `c_{2k}` (`k ≥ 3`, `2k ≤ K+4`) through `c₂, c₄` by substituting
/// ℘ into `(℘′)² − 4℘³ + 20c₂℘ + 28c₄` and solving for the coefficients of
/// `z^{2k−4}` one at a time. The residual then vanishes through `z^K`.
pub fn c_closure<S: Scalar>(tag: Tag, k: i32) -> BTreeMap<usize, CoeffPoly<S>> {
    let mut table: BTreeMap<usize, CoeffPoly<S>> = BTreeMap::new();
    table.insert(2, CoeffPoly::sym(&c_sym(2, tag)));
    table.insert(4, CoeffPoly::sym(&c_sym(4, tag)));
    let mut j = 3i32;
    while 2 * j - 4 <= k {
        let r = wp_residual(&table, 2 * j - 4);
        let lower = r.coeff(2 * j - 4).expect("inside window").coeff(0).clone();
        table.insert(2 * j as usize, lower.scale(&S::from_ratio(1, 8 * j as i64 + 12)));
        j += 1;
    }
    table.remove(&2);
    table.remove(&4);
    table
}

/// `(℘′)² − 4℘³ + 20c₂℘ + 28c₄` through `z^k`, with ℘ built from `table`
/// (missing entries read as zero).
pub fn wp_residual<S: Scalar>(table: &BTreeMap<usize, CoeffPoly<S>>, k: i32) -> Laurent<S> {
    let w = k + 4;
    let mut terms = vec![(-2, CoeffPoly::one())];
    terms.extend(table.iter().filter(|(i, _)| **i as i32 <= w).map(|(i, c)| (*i as i32, c.clone())));
    let wp = Laurent::from_polys(Var::Z, 0, Grading::Plain, w, terms);
    let c2 = table.get(&2).cloned().unwrap_or_else(CoeffPoly::zero);
    let c4 = table.get(&4).cloned().unwrap_or_else(CoeffPoly::zero);
    let d = wp.derive();
    let sq = d.mul(&d).expect("same variable");
    let cube = wp.pow(3).expect("same variable");
    let lin = wp.scale_poly(&c2.scale(&S::from_int(20)));
    let cst = Laurent::from_polys(Var::Z, 0, Grading::Plain, w, [(0, c4.scale(&S::from_int(28)))]);
    sq.sub(&cube.scale_scalar(&S::from_int(4)))
        .and_then(|x| x.add(&lin))
        .and_then(|x| x.add(&cst))
        .expect("same variable")
        .truncate(k)
}

/// Checks `df[−1−n] + (1+n)·ω[−n−2] + ω_{n−1}[−2]·dz = 0` through `z^k` in
/// the free symbols, reading `ω_{n−1}[−2]` off the expansion of `f[−2]`.
pub fn lemma_ii_ell<S: Scalar>(n: usize, k: i32) -> Result<IdentityReport<S>> {
    if n < 1 {
        return Err(Error::InvalidArgument("lemma_ii_ell needs n >= 1".into()));
    }
    let ctx = WpContext::<S>::symbolic(Tag::Tau1, k + n as i32 + 2);
    let df = ctx.f_series(n + 1, k + 1)?.series.derive();
    let next = ctx.f_series(n + 2, k)?.series.scale_scalar(&S::from_int(n as i64 + 1));
    let c = ctx.f_series(2, n as i32)?.series.coeff(n as i32)?;
    let cst = Laurent::constant(Var::Z, 0, Grading::Plain, k, c);
    let residual = df.add(&next)?.add(&cst)?;
    Ok(IdentityReport { residual, window: k })
}

/// Exact Bernoulli numbers `B_0..=B_m` (`B_1 = −1/2`).
pub fn bernoulli(m: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(m + 1);
    for n in 0..=m {
        if n == 0 {
            b.push(BigRational::from_integer(BigInt::from(1)));
            continue;
        }
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += binomial::<BigRational>(n as i64 + 1, j as i64) * bj;
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// Absolute tail bound the Eisenstein sums are carried to.
pub const EISENSTEIN_TOL: f64 = 1e-12;
const MAX_TERMS: usize = 200_000;

/// `c_{2k}(τ) = (2k+1)·G_{2k+2}(τ)`, with `G_w = 2ζ(w)·E_w` and
/// `E_w = 1 − (2w/B_w)·Σ σ_{w−1}(n)qⁿ`, `q = e^{2πiτ}`.
///
/// The q-sum stops once `σ_{w−1}(n) ≤ 2n^{w−1}` bounds the remaining tail,
/// scaled by the prefactors, below [`EISENSTEIN_TOL`].
pub fn numeric_c(tau: Complex64, i: usize) -> Result<Complex64> {
    if tau.im <= 0.0 {
        return Err(Error::NonConvergent(format!("Im τ = {} is not positive", tau.im)));
    }
    if i == 0 || !i.is_multiple_of(2) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let w = i + 2;
    let b = bernoulli(w)[w].to_f64().unwrap_or(f64::NAN);
    let two_zeta = (-1f64).powi(w as i32 / 2 + 1) * b * (2.0 * PI).powi(w as i32) / factorial(w);
    let pref = (i as f64 + 1.0) * two_zeta;
    let lead = -(2.0 * w as f64) / b;
    let nome = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
    let r = nome.norm();
    let scale = (pref * lead).abs() * 2.0;
    let mut sum = Complex64::new(0.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..=MAX_TERMS {
        qn *= nome;
        sum += qn * sigma(n, w as i32 - 1);
        let next = (n + 1) as f64;
        let rho = ((next + 1.0) / next).powi(w as i32 - 1) * r;
        if rho < 1.0 {
            let tail = scale * next.powi(w as i32 - 1) * r.powf(next) / (1.0 - rho);
            if tail < EISENSTEIN_TOL {
                return Ok((Complex64::new(1.0, 0.0) + sum * lead) * pref);
            }
        }
    }
    Err(Error::NonConvergent(format!("Eisenstein sum at τ = {tau} did not reach tolerance")))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn sigma(n: usize, p: i32) -> f64 {
    let mut s = 0.0;
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += (d as f64).powi(p);
            let e = n / d;
            if e != d {
                s += (e as f64).powi(p);
            }
        }
        d += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Monomial;

    type R = BigRational;

    fn c(i: usize) -> CoeffPoly<R> {
        CoeffPoly::sym(&c_sym(i, Tag::Tau1))
    }

    #[test]
    fn wp_display_window() {
        let ctx = WpContext::<R>::symbolic(Tag::Tau1, 10);
        let wp = ctx.wp_series(5).unwrap();
        let want = Laurent::from_polys(Var::Z, 0, Grading::Plain, 5, [(-2, CoeffPoly::one()), (2, c(2)), (4, c(4))]);
        assert_eq!(wp, want);
        assert!(ctx.wp_series(11).is_err());
    }

    #[test]
    fn f3_is_minus_half_wp_prime() {
        let ctx = WpContext::<R>::symbolic(Tag::Tau1, 10);
        let f3 = ctx.f_series(3, 4).unwrap().series;
        let d = ctx.wp_series(5).unwrap().derive().scale_scalar(&R::from_ratio(-1, 2));
        assert_eq!(f3, d);
    }

    #[test]
    fn closure_low_terms() {
        let t = c_closure::<R>(Tag::Tau1, 8);
        assert_eq!(t[&6], c(2).pow(2).scale(&R::from_ratio(1, 3)));
        let c2c4 = CoeffPoly::term(R::from_ratio(3, 11), Monomial::from_factors([(c_sym(2, Tag::Tau1), 1), (c_sym(4, Tag::Tau1), 1)]).unwrap());
        assert_eq!(t[&8], c2c4);
    }

    #[test]
    fn reduce_rule() {
        let ctx = WpContext::<R>::symbolic(Tag::Tau1, 10);
        let r = ctx.reduce_label(Label::Omega(4), 0).unwrap();
        assert_eq!(r.coeff(Label::Alpha(0)).coeff(0), &c(2).scale(&R::from_ratio(-1, 3)));
        assert!(ctx.reduce_label(Label::Alpha(1), 0).is_err());
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli(8);
        assert_eq!(b[2], R::from_ratio(1, 6));
        assert_eq!(b[4], R::from_ratio(-1, 30));
        assert_eq!(b[8], R::from_ratio(-1, 30));
    }

    #[test]
    fn eisenstein_rejects_lower_half_plane() {
        assert!(numeric_c(Complex64::new(0.0, -1.0), 2).is_err());
    }
}
