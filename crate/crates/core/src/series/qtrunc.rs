//! Polynomials in q truncated modulo q^{N+1}.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::poly::CoeffPoly;
use super::sym::Sym;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// `Σ_{k=0}^{N} c_k q^k` with `q^{N+1} = 0`.
///
/// The coefficient vector always has length `N+1`. Arithmetic between
/// different `N` is a logic error; the `checked_*` methods report it as
/// [`Error::OrderMismatch`] while the operators panic.
#[derive(Clone, PartialEq)]
pub struct QTrunc<S> {
    c: Vec<CoeffPoly<S>>,
}

impl<S: Scalar> QTrunc<S> {
    pub fn zero(n: usize) -> Self {
        QTrunc { c: vec![CoeffPoly::zero(); n + 1] }
    }

    pub fn one(n: usize) -> Self {
        Self::constant(CoeffPoly::one(), n)
    }

    pub fn constant(p: CoeffPoly<S>, n: usize) -> Self {
        Self::monomial(p, 0, n)
    }

    pub fn scalar(c: S, n: usize) -> Self {
        Self::constant(CoeffPoly::constant(c), n)
    }

    pub fn sym(s: &Sym, n: usize) -> Self {
        Self::constant(CoeffPoly::sym(s), n)
    }

    /// The variable q itself.
    pub fn q(n: usize) -> Self {
        Self::monomial(CoeffPoly::one(), 1, n)
    }

    /// `p·q^k`, zero when `k > N`.
    pub fn monomial(p: CoeffPoly<S>, k: usize, n: usize) -> Self {
        let mut out = Self::zero(n);
        if k <= n {
            out.c[k] = p;
        }
        out
    }

    /// Takes the first `N+1` entries of `coeffs`, padding with zeros.
    pub fn from_coeffs(coeffs: Vec<CoeffPoly<S>>, n: usize) -> Self {
        let mut c = coeffs;
        c.resize(n + 1, CoeffPoly::zero());
        QTrunc { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &CoeffPoly<S> {
        &self.c[k]
    }

    pub fn coeffs(&self) -> &[CoeffPoly<S>] {
        &self.c
    }

    pub fn set_coeff(&mut self, k: usize, p: CoeffPoly<S>) {
        if k < self.c.len() {
            self.c[k] = p;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|p| p.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.c[0].is_one() && self.c[1..].iter().all(|p| p.is_zero())
    }

    /// Lowest q-degree with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|p| !p.is_zero())
    }

    /// Highest q-degree with a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.c.iter().rposition(|p| !p.is_zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self + other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self * other)
    }

    /// `self += q^shift · a · b`, keeping only q-degrees below `limit`.
    pub fn add_mul(&mut self, a: &Self, b: &Self, shift: usize, limit: usize) {
        let top = limit.min(self.c.len());
        for (i, x) in a.c.iter().enumerate() {
            if i + shift >= top {
                break;
            }
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                let k = i + j + shift;
                if k >= top {
                    break;
                }
                if y.is_zero() {
                    continue;
                }
                self.c[k].add_assign(&(x * y));
            }
        }
    }

    pub fn scale(&self, p: &CoeffPoly<S>) -> Self {
        QTrunc { c: self.c.iter().map(|x| x * p).collect() }
    }

    pub fn scale_scalar(&self, s: &S) -> Self {
        QTrunc { c: self.c.iter().map(|x| x.scale(s)).collect() }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in 0..=n {
            if i + k > n {
                break;
            }
            out.c[i + k] = self.c[i].clone();
        }
        out
    }

    /// Divides by `q^k`, assuming divisibility. Lower terms are discarded,
    /// and the top `k` coefficients of the quotient become zero.
    pub fn unshift(&self, k: usize) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for i in k..=n {
            out.c[i - k] = self.c[i].clone();
        }
        out
    }

    /// Zeroes every coefficient of q-degree `≥ m`.
    pub fn truncate(&self, m: usize) -> Self {
        let mut out = self.clone();
        for k in m..out.c.len() {
            out.c[k] = CoeffPoly::zero();
        }
        out
    }

    /// Reinterprets at another order: truncating, or padding with zeros.
    /// Padding is only meaningful for exact (q-free) data.
    pub fn with_order(&self, n: usize) -> Self {
        Self::from_coeffs(self.c.clone(), n)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn try_inverse(&self) -> Result<Self> {
        let n = self.order();
        let c0 = self.c[0].try_inverse()?;
        // self = c0_orig·(1 + x) with x divisible by q
        let x = &self.scale(&c0) - &Self::one(n);
        let mut acc = Self::one(n);
        let mut p = Self::one(n);
        for _ in 0..n {
            p = -(&p * &x);
            if p.is_zero() {
                break;
            }
            acc = &acc + &p;
        }
        Ok(acc.scale(&c0))
    }

    pub fn substitute(&self, f: &dyn Fn(&Sym) -> Option<CoeffPoly<S>>) -> Self {
        QTrunc { c: self.c.iter().map(|p| p.substitute(f)).collect() }
    }

    /// Replaces q by `λq` for a coefficient `λ`.
    pub fn rescale_q(&self, lam: &CoeffPoly<S>) -> Self {
        let mut pw = CoeffPoly::one();
        let mut out = Self::zero(self.order());
        for (k, p) in self.c.iter().enumerate() {
            out.c[k] = p * &pw;
            pw = &pw * lam;
        }
        out
    }

    pub fn map_scalars<T: Scalar>(&self, f: &dyn Fn(&S) -> T) -> QTrunc<T> {
        QTrunc { c: self.c.iter().map(|p| p.map_scalars(f)).collect() }
    }
}

impl<S: Scalar> Add for &QTrunc<S> {
    type Output = QTrunc<S>;
    fn add(self, rhs: Self) -> QTrunc<S> {
        assert_eq!(self.order(), rhs.order(), "q-order mismatch");
        QTrunc { c: self.c.iter().zip(&rhs.c).map(|(a, b)| a + b).collect() }
    }
}

impl<S: Scalar> Sub for &QTrunc<S> {
    type Output = QTrunc<S>;
    fn sub(self, rhs: Self) -> QTrunc<S> {
        assert_eq!(self.order(), rhs.order(), "q-order mismatch");
        QTrunc { c: self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect() }
    }
}

impl<S: Scalar> Neg for &QTrunc<S> {
    type Output = QTrunc<S>;
    fn neg(self) -> QTrunc<S> {
        QTrunc { c: self.c.iter().map(|a| -a).collect() }
    }
}

impl<S: Scalar> Neg for QTrunc<S> {
    type Output = QTrunc<S>;
    fn neg(self) -> QTrunc<S> {
        -&self
    }
}

impl<S: Scalar> Mul for &QTrunc<S> {
    type Output = QTrunc<S>;
    fn mul(self, rhs: Self) -> QTrunc<S> {
        assert_eq!(self.order(), rhs.order(), "q-order mismatch");
        let n = self.order();
        let mut out = QTrunc::zero(n);
        out.add_mul(self, rhs, 0, n + 1);
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl<S: Scalar> $tr for QTrunc<S> {
            type Output = QTrunc<S>;
            fn $f(self, rhs: Self) -> QTrunc<S> {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<S: Scalar> fmt::Debug for QTrunc<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod q^{})", self.order() + 1)
    }
}

/// Renders as `2·q + (c2 - 1)·q^3`.
impl<S: Scalar> fmt::Display for QTrunc<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, p) in self.c.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let body = format!("{p}");
            let (neg, mag) = if p.len() == 1 {
                match body.strip_prefix('-') {
                    Some(r) => (true, r.to_string()),
                    None => (false, body),
                }
            } else {
                (false, body)
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let qpart = match k {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{k}"),
            };
            if k == 0 {
                f.write_str(&mag)?;
            } else if mag == "1" {
                f.write_str(&qpart)?;
            } else if p.len() == 1 {
                write!(f, "{mag}·{qpart}")?;
            } else {
                write!(f, "({mag})·{qpart}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = QTrunc<BigRational>;

    #[test]
    fn truncation_drops_high_powers() {
        let q = Q::q(2);
        assert!(q.pow(3).is_zero());
        assert!(!q.pow(2).is_zero());
    }

    #[test]
    fn inverse_round_trip() {
        let n = 5;
        let c = Q::sym(&Sym::constant("c"), n);
        let u = &(&Q::scalar(BigRational::from_ratio(3, 2), n) + &(&Q::q(n) * &c)) + &Q::q(n).pow(4);
        let inv = u.try_inverse().unwrap();
        assert!((&u * &inv).is_one());
    }

    #[test]
    fn order_mismatch_is_reported() {
        assert_eq!(Q::one(2).checked_mul(&Q::one(3)), Err(Error::OrderMismatch(2, 3)));
    }

    #[test]
    fn display() {
        let n = 3;
        let x = &Q::q(n).scale_scalar(&BigRational::from_ratio(2, 1)) - &Q::q(n).pow(3);
        assert_eq!(format!("{x}"), "2·q - q^3");
    }
}
