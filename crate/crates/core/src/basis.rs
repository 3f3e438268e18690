//! Symbolic bases of differentials on a curve of genus `g` with a marked
//! point that is not a Weierstrass point:
//!
//! `α[i] = (zⁱ + z^g Σ αₙ[i]zⁿ)dz`, `ω[−i] = (z⁻ⁱ + z^g Σ ωₙ[−i]zⁿ)dz`,
//!
//! with `αₙ[g−1] = 0` from the choice of canonical parameter.

use crate::diff::{CohomClass, DiffBasis, DiffCombo, IdentityReport, Label};
use crate::elliptic::WpContext;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{CoeffPoly, Grading, Laurent, QTrunc, Sym, Var};

/// Default number of expansion symbols per basis element.
pub const DEFAULT_TAIL: usize = 24;

/// Free expansion symbols for one curve. `primed` selects the second
/// curve's namespace; `tail` is how many `n` per label are available, so
/// expansions are known through `z^{g+tail−1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenusData {
    g: usize,
    primed: bool,
    tail: usize,
}

impl GenusData {
    pub fn new(g: usize, primed: bool, tail: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidArgument("genus must be at least 1".into()));
        }
        Ok(GenusData { g, primed, tail })
    }

    pub fn unprimed(g: usize) -> Result<Self> {
        Self::new(g, false, DEFAULT_TAIL)
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn primed(&self) -> bool {
        self.primed
    }

    pub fn tail(&self) -> usize {
        self.tail
    }

    fn mark(&self) -> &'static str {
        if self.primed {
            "'"
        } else {
            ""
        }
    }

    /// `αₙ[i]`, zero for `i = g−1`.
    pub fn alpha<S: Scalar>(&self, n: usize, i: usize) -> CoeffPoly<S> {
        if i + 1 >= self.g {
            return CoeffPoly::zero();
        }
        CoeffPoly::sym(&Sym::constant(&format!("α{}_{n}[{i}]", self.mark())))
    }

    /// `ωₙ[−i]`.
    pub fn omega<S: Scalar>(&self, n: usize, i: usize) -> CoeffPoly<S> {
        CoeffPoly::sym(&Sym::constant(&format!("ω{}_{n}[-{i}]", self.mark())))
    }

    fn window_check(&self, k: i32) -> Result<()> {
        let known = (self.g + self.tail) as i32 - 1;
        if k > known {
            return Err(Error::InsufficientWindow(format!(
                "expansion through z^{k} needs {} tail symbols, only {} available",
                k - self.g as i32 + 1,
                self.tail
            )));
        }
        Ok(())
    }

    fn tail_series<S: Scalar>(&self, lead: i32, k: i32, sym: impl Fn(usize) -> CoeffPoly<S>) -> Laurent<S> {
        let g = self.g as i32;
        let mut terms = vec![(lead, CoeffPoly::one())];
        terms.extend((0..=(k - g).max(-1)).map(|n| (g + n, sym(n as usize))));
        Laurent::from_polys(Var::Z, 0, Grading::Plain, k, terms)
    }

    /// `−f[−g−n] + z^{−g−n}`, known through `z^g`:
    /// `Σ_{i≤g−2} α_{n−1}[i]z^{−i−1} + Σ_{k=2}^{g+1} ω_{n−1}[−k]z^{k−1}`.
    pub fn f_general<S: Scalar>(&self, n: usize) -> Result<Laurent<S>> {
        if n < 1 {
            return Err(Error::InvalidArgument("f[-g-n] needs n >= 1".into()));
        }
        let g = self.g;
        let mut terms: Vec<(i32, CoeffPoly<S>)> = Vec::new();
        for i in 0..g.saturating_sub(1) {
            terms.push((-(i as i32) - 1, self.alpha(n - 1, i)));
        }
        for k in 2..=g + 1 {
            terms.push((k as i32 - 1, self.omega(n - 1, k)));
        }
        Ok(Laurent::from_polys(Var::Z, 0, Grading::Plain, g as i32, terms))
    }

    /// `f[−g−n]` itself through `z^g`, with zero constant term.
    pub fn f_series_general<S: Scalar>(&self, n: usize) -> Result<Laurent<S>> {
        let rhs = self.f_general::<S>(n)?;
        let lead = Laurent::from_polys(Var::Z, 0, Grading::Plain, self.g as i32, [(-((self.g + n) as i32), CoeffPoly::one())]);
        lead.sub(&rhs)
    }

    /// Class of `ω[−g−n−1]`:
    /// `Σ_{k=1}^{g−1} k/(g+n)·α_{n−1}[k−1]ω[−k−1] − Σ_{k=1}^{g} k/(g+n)·ω_{n−1}[−k−1]α[k−1]`.
    pub fn h1_general<S: Scalar>(&self, n: usize, order: usize) -> Result<CohomClass<S>> {
        if n < 1 {
            return Err(Error::InvalidArgument("reduction of ω[-g-n-1] needs n >= 1".into()));
        }
        let g = self.g;
        let den = S::from_int((g + n) as i64);
        let mut combo = DiffCombo::zero(order);
        for k in 1..g {
            let c = self.alpha::<S>(n - 1, k - 1).scale(&(S::from_int(k as i64) / den.clone()));
            combo.add_term(Label::Omega(k + 1), &QTrunc::constant(c, order));
        }
        for k in 1..=g {
            let c = self.omega::<S>(n - 1, k + 1).scale(&(-S::from_int(k as i64) / den.clone()));
            combo.add_term(Label::Alpha(k - 1), &QTrunc::constant(c, order));
        }
        CohomClass::new(g, combo)
    }

    /// Compares `df[−g−n] + (g+n)ω[−g−n−1]` with the right-hand side of the
    /// corresponding reduction, through `z^{g−1}`.
    pub fn lemma_ii_window<S: Scalar>(&self, n: usize) -> Result<IdentityReport<S>> {
        let g = self.g;
        let w = g as i32 - 1;
        let lhs = self
            .f_series_general::<S>(n)?
            .derive()
            .add(&self.expansion(Label::Omega(g + n + 1), w)?.scale_scalar(&S::from_int((g + n) as i64)))?;
        let class = self.h1_general::<S>(n, 0)?.scale(&QTrunc::scalar(S::from_int((g + n) as i64), 0));
        let rhs = class.combo().expand(self, Var::Z, w)?;
        Ok(IdentityReport { residual: lhs.sub(&rhs)?, window: w })
    }

    /// Values of this curve's symbols on an elliptic curve (`g = 1`):
    /// `ωₙ[−j]` becomes the coefficient of `z^{n+1}` in `f[−j]`.
    pub fn elliptic_values<S: Scalar>(&self, ctx: &WpContext<S>) -> impl Fn(&Sym) -> Option<CoeffPoly<S>> + 'static {
        let ctx = ctx.clone();
        let primed = self.primed;
        move |s: &Sym| match parse_sym(s.name()) {
            Some(ParsedSym { primed: p, omega: true, n, index }) if p == primed => ctx.omega_coeff(index, n).ok(),
            Some(ParsedSym { primed: p, omega: false, .. }) if p == primed => Some(CoeffPoly::zero()),
            _ => None,
        }
    }
}

impl<S: Scalar> DiffBasis<S> for GenusData {
    fn genus(&self) -> usize {
        self.g
    }

    fn expansion(&self, label: Label, k: i32) -> Result<Laurent<S>> {
        self.window_check(k)?;
        match label {
            Label::Alpha(i) if i < self.g => Ok(self.tail_series(i as i32, k, |n| self.alpha(n, i))),
            Label::Omega(j) if j >= 2 => Ok(self.tail_series(-(j as i32), k, |n| self.omega(n, j))),
            other => Err(Error::UnknownLabel(format!("{other} for genus {}", self.g))),
        }
    }

    fn reduce(&self, label: Label, order: usize) -> Result<CohomClass<S>> {
        let g = self.g;
        match label {
            l if CohomClass::<S>::in_basis(g, l) => CohomClass::new(g, DiffCombo::single(order, l, QTrunc::one(order))),
            Label::Omega(m) if m > g + 1 => self.h1_general(m - g - 1, order),
            other => Err(Error::UnknownLabel(format!("{other} for genus {g}"))),
        }
    }

    fn max_window(&self, _label: Label) -> i32 {
        (self.g + self.tail) as i32 - 1
    }
}

/// Components of a symbol name `α_n[i]` / `ω'_n[-j]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParsedSym {
    pub primed: bool,
    pub omega: bool,
    pub n: usize,
    pub index: usize,
}

pub fn parse_sym(name: &str) -> Option<ParsedSym> {
    let (omega, rest) = if let Some(r) = name.strip_prefix('ω') {
        (true, r)
    } else {
        (false, name.strip_prefix('α')?)
    };
    let (primed, rest) = match rest.strip_prefix('\'') {
        Some(r) => (true, r),
        None => (false, rest),
    };
    let rest = rest.strip_prefix('_')?;
    let (n, rest) = rest.split_once('[')?;
    let idx = rest.strip_suffix(']')?;
    let idx = if omega { idx.strip_prefix('-')? } else { idx };
    Some(ParsedSym { primed, omega, n: n.parse().ok()?, index: idx.parse().ok()? })
}

/// The parameter `u(z) = z + c₂z² + …` with `u^{g−1}u′ = 1 + a_g z + a_{g+1}z² + …`,
/// through `z^k`. Missing entries of `a` (indexed from `a_g`) read as zero.
pub fn canonical_param<S: Scalar>(a: &[CoeffPoly<S>], g: usize, k: i32) -> Result<Laurent<S>> {
    if k < 2 || g == 0 {
        return Err(Error::InvalidArgument("canonical_param needs K >= 2 and g >= 1".into()));
    }
    let mut c: Vec<CoeffPoly<S>> = vec![CoeffPoly::zero(), CoeffPoly::one()];
    for j in 2..=k as usize {
        c.push(CoeffPoly::zero());
        let lhs = param_lhs(&c, g, j as i32 - 1)?;
        let have = lhs.coeff(j as i32 - 1)?.coeff(0).clone();
        let want = a.get(j - 2).cloned().unwrap_or_else(CoeffPoly::zero);
        c[j] = (&want - &have).scale(&S::from_ratio(1, (g + j - 1) as i64));
    }
    let terms = c.into_iter().enumerate().map(|(e, p)| (e as i32, p));
    Ok(Laurent::from_polys(Var::Z, 0, Grading::Plain, k, terms))
}

/// `w^{g−1}·(zw)′` for `u = zw`, through `z^k`, where `c[e]` is the `z^e` coefficient of `u`.
fn param_lhs<S: Scalar>(c: &[CoeffPoly<S>], g: usize, k: i32) -> Result<Laurent<S>> {
    let w = Laurent::from_polys(Var::Z, 0, Grading::Plain, k, c.iter().enumerate().skip(1).map(|(e, p)| (e as i32 - 1, p.clone())));
    let u = Laurent::from_polys(Var::Z, 0, Grading::Plain, k + 1, c.iter().enumerate().map(|(e, p)| (e as i32, p.clone())));
    w.pow(g as u32 - 1)?.mul(&u.derive())
}

/// `u^{g−1}u′ / z^{g−1}` through `z^{k−1}`; inverse of [`canonical_param`].
pub fn param_rhs<S: Scalar>(u: &Laurent<S>, g: usize) -> Result<Laurent<S>> {
    let mut c = Vec::new();
    for e in 0..=u.known() {
        c.push(u.coeff(e)?.coeff(0).clone());
    }
    param_lhs(&c, g, u.known() - 1)
}

/// [`GenusData::f_general`] on the unprimed namespace.
pub fn f_general<S: Scalar>(g: usize, n: usize) -> Result<Laurent<S>> {
    GenusData::unprimed(g)?.f_general(n)
}

/// [`GenusData::h1_general`] on the unprimed namespace, q-free.
pub fn h1_general<S: Scalar>(g: usize, n: usize) -> Result<CohomClass<S>> {
    GenusData::unprimed(g)?.h1_general(n, 0)
}

/// [`GenusData::lemma_ii_window`] on the unprimed namespace.
pub fn lemma_ii_window<S: Scalar>(g: usize, n: usize) -> Result<IdentityReport<S>> {
    GenusData::unprimed(g)?.lemma_ii_window(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational as R;

    #[test]
    fn parse_roundtrip() {
        let p = parse_sym("ω'_3[-12]").unwrap();
        assert_eq!(p, ParsedSym { primed: true, omega: true, n: 3, index: 12 });
        assert_eq!(parse_sym("α_0[1]").unwrap().index, 1);
        assert!(parse_sym("c2(τ1)").is_none());
    }

    #[test]
    fn canonical_param_small() {
        let u = canonical_param::<R>(&[], 3, 6).unwrap();
        assert_eq!(u, Laurent::x(Var::Z, 0, Grading::Plain, 6));
        let u = canonical_param::<R>(&[CoeffPoly::int(3)], 2, 2).unwrap();
        assert_eq!(u.coeff(2).unwrap().coeff(0), &CoeffPoly::int(1));
    }

    #[test]
    fn lemma_ii_g2() {
        assert!(lemma_ii_window::<R>(2, 1).unwrap().holds());
    }
}
