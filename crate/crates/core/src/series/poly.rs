//! Sparse multivariate polynomials over a scalar field.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::sym::{Monomial, Sym, SymKind};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A polynomial in [`Sym`]s. Terms are kept sorted by monomial with no
/// zero coefficients, so structural equality is ring equality.
#[derive(Clone, PartialEq)]
pub struct CoeffPoly<S> {
    terms: Vec<(Monomial, S)>,
}

impl<S: Scalar> CoeffPoly<S> {
    pub fn zero() -> Self {
        CoeffPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(S::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::constant(S::from_ratio(n, d))
    }

    pub fn sym(s: &Sym) -> Self {
        Self::term(S::one(), Monomial::var(s.clone()))
    }

    pub fn term(c: S, m: Monomial) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            CoeffPoly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from unsorted, possibly repeated terms.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, S)>) -> Self {
        let mut v: Vec<(Monomial, S)> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(Monomial, S)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => {
                    *lc = lc.clone() + c;
                    if lc.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push((m, c)),
            }
        }
        CoeffPoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> &[(Monomial, S)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the empty monomial.
    pub fn constant_part(&self) -> S {
        self.coeff(&Monomial::one())
    }

    pub fn coeff(&self, m: &Monomial) -> S {
        match self.terms.binary_search_by(|(x, _)| x.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => S::zero(),
        }
    }

    /// Returns the scalar value when the polynomial has no symbols.
    pub fn as_constant(&self) -> Option<S> {
        match self.terms.as_slice() {
            [] => Some(S::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn symbols(&self) -> BTreeSet<Sym> {
        self.terms
            .iter()
            .flat_map(|(m, _)| m.factors().iter().map(|(s, _)| s.clone()))
            .collect()
    }

    /// In-place `self += o`, avoiding a merge when both are single terms
    /// on the same monomial.
    pub fn add_assign(&mut self, o: &Self) {
        if o.is_zero() {
            return;
        }
        if self.terms.len() == 1 && o.terms.len() == 1 && self.terms[0].0 == o.terms[0].0 {
            let c = self.terms[0].1.clone() + o.terms[0].1.clone();
            if c.is_zero() {
                self.terms.clear();
            } else {
                self.terms[0].1 = c;
            }
            return;
        }
        *self = &*self + o;
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        CoeffPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x.clone() * c.clone())).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter_map(|(x, c)| x.mul(m).map(|p| (p, c.clone()))),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Every monomial contains a nilpotent symbol, so some power vanishes.
    pub fn is_nilpotent(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.has_nilpotent())
    }

    /// Inverse of a unit. A unit is a nonzero scalar times a monomial in
    /// unit symbols, plus nilpotent terms.
    pub fn try_inverse(&self) -> Result<Self> {
        let mut lead = self.terms.iter().filter(|(m, _)| !m.has_nilpotent());
        let (m0, c0) = match (lead.next(), lead.next()) {
            (Some(t), None) => t,
            _ => return Err(Error::NonUnit(format!("{self}"))),
        };
        let m_inv = m0
            .inverse()
            .ok_or_else(|| Error::NonUnit(format!("{self}")))?;
        let lead_inv = Self::term(S::one() / c0.clone(), m_inv);
        // self = lead·(1 + x) with x nilpotent
        let x = &(&lead_inv * self) - &Self::one();
        let mut acc = Self::one();
        let mut p = Self::one();
        loop {
            p = -(&p * &x);
            if p.is_zero() {
                break;
            }
            acc = &acc + &p;
        }
        Ok(&lead_inv * &acc)
    }

    /// Replaces symbols by polynomials; `f` returning `None` keeps the symbol.
    pub fn substitute(&self, f: &dyn Fn(&Sym) -> Option<CoeffPoly<S>>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            for (s, e) in m.factors() {
                let base = match f(s) {
                    Some(p) => p,
                    None => {
                        t = t.mul_monomial(&Monomial::from_factors([(s.clone(), *e)]).unwrap());
                        continue;
                    }
                };
                let p = if *e >= 0 {
                    base.pow(*e as u32)
                } else {
                    base.try_inverse().expect("substituted unit symbol by a non-unit").pow((-e) as u32)
                };
                t = &t * &p;
                if t.is_zero() {
                    break;
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Evaluates in another field given values for every symbol.
    pub fn eval<T: Scalar>(&self, conv: &dyn Fn(&S) -> T, val: &dyn Fn(&Sym) -> Option<T>) -> Result<T> {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = conv(c);
            for (s, e) in m.factors() {
                let v = val(s).ok_or_else(|| Error::InvalidArgument(format!("no value for symbol {s}")))?;
                let mut p = T::one();
                for _ in 0..e.unsigned_abs() {
                    p = p * v.clone();
                }
                t = if *e >= 0 { t * p } else { t / p };
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Writes `self = Σ sym^k · c_k`, returning the `c_k` by exponent.
    pub fn collect_by(&self, sym: &Sym) -> Vec<(i32, CoeffPoly<S>)> {
        let mut parts: Vec<(i32, Vec<(Monomial, S)>)> = Vec::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split_off(sym);
            match parts.iter_mut().find(|(k, _)| *k == e) {
                Some((_, v)) => v.push((rest, c.clone())),
                None => parts.push((e, vec![(rest, c.clone())])),
            }
        }
        let mut out: Vec<_> = parts.into_iter().map(|(e, v)| (e, Self::from_terms(v))).collect();
        out.sort_by_key(|(e, _)| *e);
        out
    }

    /// Coefficient of the monomial `m` treated as a product of the listed
    /// nilpotent symbols, i.e. the part multiplying exactly `m`.
    pub fn part_with(&self, m: &Monomial) -> Self {
        Self::from_terms(self.terms.iter().filter_map(|(x, c)| {
            let mut rest = x.clone();
            for (s, e) in m.factors() {
                let (k, r) = rest.split_off(s);
                if k != *e {
                    return None;
                }
                rest = r;
            }
            Some((rest, c.clone()))
        }))
    }

    /// Drops every term containing a nilpotent symbol of `kind`.
    pub fn without_kind(&self, kind: SymKind) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.factors().iter().all(|(s, _)| s.kind() != kind))
                .cloned(),
        )
    }

    pub fn map_scalars<T: Scalar>(&self, f: &dyn Fn(&S) -> T) -> CoeffPoly<T> {
        CoeffPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }
}

impl<S: Scalar> Add for &CoeffPoly<S> {
    type Output = CoeffPoly<S>;
    fn add(self, rhs: Self) -> CoeffPoly<S> {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let (a, b) = (&self.terms, &rhs.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.clone() + b[j].1.clone();
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        CoeffPoly { terms: out }
    }
}

impl<S: Scalar> Neg for &CoeffPoly<S> {
    type Output = CoeffPoly<S>;
    fn neg(self) -> CoeffPoly<S> {
        CoeffPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl<S: Scalar> Neg for CoeffPoly<S> {
    type Output = CoeffPoly<S>;
    fn neg(self) -> CoeffPoly<S> {
        -&self
    }
}

impl<S: Scalar> Sub for &CoeffPoly<S> {
    type Output = CoeffPoly<S>;
    fn sub(self, rhs: Self) -> CoeffPoly<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> Mul for &CoeffPoly<S> {
    type Output = CoeffPoly<S>;
    fn mul(self, rhs: Self) -> CoeffPoly<S> {
        if self.is_zero() || rhs.is_zero() {
            return CoeffPoly::zero();
        }
        if self.terms.len() == 1 && rhs.terms.len() == 1 {
            let (ma, ca) = &self.terms[0];
            let (mb, cb) = &rhs.terms[0];
            return match ma.mul(mb) {
                Some(m) => CoeffPoly::term(ca.clone() * cb.clone(), m),
                None => CoeffPoly::zero(),
            };
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        let mut v = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                if let Some(m) = ma.mul(mb) {
                    v.push((m, ca.clone() * cb.clone()));
                }
            }
        }
        CoeffPoly::from_terms(v)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<S: Scalar> $tr for CoeffPoly<S> {
            type Output = CoeffPoly<S>;
            fn $f(self, rhs: Self) -> CoeffPoly<S> {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<S: Scalar> fmt::Debug for CoeffPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Plain-text rendering: `3/4·c2^2·eps − 1`.
impl<S: Scalar> fmt::Display for CoeffPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = format!("{c}");
            let (neg, mag) = match s.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, s),
            };
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                f.write_str(&mag)?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}·{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = CoeffPoly<BigRational>;

    #[test]
    fn arithmetic_cancels_exactly() {
        let c = P::sym(&Sym::constant("c"));
        let one = P::one();
        let a = &one + &c;
        let b = &one - &c;
        let prod = &a * &b;
        assert_eq!(prod, &one - &(&c * &c));
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn inverse_of_unit_with_nilpotent_tail() {
        let eps = P::sym(&Sym::nilpotent("eps"));
        let lam = P::sym(&Sym::unit("lam"));
        let u = &(&P::int(2) * &lam) + &(&eps * &P::sym(&Sym::constant("r")));
        let inv = u.try_inverse().unwrap();
        assert!((&u * &inv).is_one());
    }

    #[test]
    fn non_units_rejected() {
        let c = P::sym(&Sym::constant("c"));
        assert!(c.try_inverse().is_err());
        assert!((&P::one() + &c).try_inverse().is_err());
        assert!(P::zero().try_inverse().is_err());
    }

    #[test]
    fn display_is_readable() {
        let c = P::sym(&Sym::constant("c2"));
        let p = &(&c * &c).scale(&BigRational::from_ratio(1, 3)) - &P::one();
        assert_eq!(format!("{p}"), "-1 + 1/3·c2^2");
    }

    #[test]
    fn substitution_and_eval() {
        let s = Sym::constant("c6");
        let c2 = Sym::constant("c2");
        let p = P::sym(&s);
        let q = p.substitute(&|x| (x == &s).then(|| P::sym(&c2).pow(2).scale(&BigRational::from_ratio(1, 3))));
        let v = q
            .eval::<f64>(&|r| r.numer().to_string().parse::<f64>().unwrap() / r.denom().to_string().parse::<f64>().unwrap(), &|x| (x == &c2).then_some(3.0))
            .unwrap();
        assert!((v - 3.0).abs() < 1e-12);
    }
}
