//! One-variable Laurent series with q-truncated coefficients and an
//! explicit window of known coefficients.

use std::collections::BTreeMap;
use std::fmt;

use super::poly::CoeffPoly;
use super::qtrunc::QTrunc;
use super::sym::Sym;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X1,
    X2,
    Z,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::X1 => "x1",
            Var::X2 => "x2",
            Var::Z => "z",
        }
    }

    /// The other branch at the node; `z` is its own partner.
    pub fn partner(self) -> Var {
        match self {
            Var::X1 => Var::X2,
            Var::X2 => Var::X1,
            Var::Z => Var::Z,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which monomials `q^j x^e` a window bound `K` covers.
///
/// * `Plain`: `e ≤ K`, every q-degree. The usual `O(x^{K+1})`.
/// * `Node`: `e + j ≤ K`. On a branch of the node `x₁x₂ = q` the element
///   `q^j x^{-j}` is the image of `x₂^j`, so it has weight zero; this
///   grading keeps such terms from eating the window when inverting or
///   composing, and the unknown tail is still bounded below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Grading {
    Plain,
    Node,
}

impl Grading {
    fn slope(self) -> i32 {
        match self {
            Grading::Plain => 0,
            Grading::Node => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Grading::Plain => "plain",
            Grading::Node => "node",
        }
    }
}

/// `Σ_e c_e x^e` with `c_e` in `QTrunc`. Only monomials inside the window
/// are known; anything outside is unknown and can't be read.
#[derive(Clone, PartialEq)]
pub struct Laurent<S> {
    var: Var,
    n: usize,
    grading: Grading,
    known: i32,
    terms: BTreeMap<i32, QTrunc<S>>,
}

impl<S: Scalar> Laurent<S> {
    /// Builds a series, discarding terms outside the window.
    pub fn new(
        var: Var,
        n: usize,
        grading: Grading,
        known: i32,
        terms: impl IntoIterator<Item = (i32, QTrunc<S>)>,
    ) -> Self {
        let mut map: BTreeMap<i32, QTrunc<S>> = BTreeMap::new();
        for (e, c) in terms {
            assert_eq!(c.order(), n, "coefficient order differs from series order");
            match map.get_mut(&e) {
                Some(x) => *x = &*x + &c,
                None => {
                    map.insert(e, c);
                }
            }
        }
        let mut out = Laurent { var, n, grading, known, terms: map };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        let known = self.known;
        let slope = self.grading.slope();
        let n = self.n as i32;
        self.terms.retain(|e, c| {
            if *e > known {
                return false;
            }
            if slope > 0 && *e + n > known {
                *c = c.truncate((known - e + 1) as usize);
            }
            !c.is_zero()
        });
    }

    pub fn zero(var: Var, n: usize, grading: Grading, known: i32) -> Self {
        Self::new(var, n, grading, known, [])
    }

    /// `c·x^e`.
    pub fn monomial(var: Var, n: usize, grading: Grading, known: i32, e: i32, c: QTrunc<S>) -> Self {
        Self::new(var, n, grading, known, [(e, c)])
    }

    pub fn constant(var: Var, n: usize, grading: Grading, known: i32, c: QTrunc<S>) -> Self {
        Self::monomial(var, n, grading, known, 0, c)
    }

    pub fn one(var: Var, n: usize, grading: Grading, known: i32) -> Self {
        Self::constant(var, n, grading, known, QTrunc::one(n))
    }

    /// The variable itself.
    pub fn x(var: Var, n: usize, grading: Grading, known: i32) -> Self {
        Self::monomial(var, n, grading, known, 1, QTrunc::one(n))
    }

    /// Series with scalar polynomial coefficients `Σ p_e x^e`.
    pub fn from_polys(
        var: Var,
        n: usize,
        grading: Grading,
        known: i32,
        terms: impl IntoIterator<Item = (i32, CoeffPoly<S>)>,
    ) -> Self {
        Self::new(var, n, grading, known, terms.into_iter().map(|(e, p)| (e, QTrunc::constant(p, n))))
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    /// Window bound K.
    pub fn known(&self) -> i32 {
        self.known
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &QTrunc<S>)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    fn weight(&self, e: i32, c: &QTrunc<S>) -> i32 {
        e + self.grading.slope() * c.valuation().unwrap_or(0) as i32
    }

    /// Lowest weight of a nonzero term, or `K+1` when zero on the window.
    pub fn valuation(&self) -> i32 {
        self.terms
            .iter()
            .map(|(e, c)| self.weight(*e, c))
            .min()
            .unwrap_or(self.known + 1)
    }

    /// How many q-degrees of the coefficient of `x^e` are known.
    pub fn known_q(&self, e: i32) -> usize {
        let room = self.known - e;
        if room < 0 {
            return 0;
        }
        match self.grading {
            Grading::Plain => self.n + 1,
            Grading::Node => (room as usize + 1).min(self.n + 1),
        }
    }

    /// The full coefficient of `x^e`; fails if any part is unknown.
    pub fn coeff(&self, e: i32) -> Result<QTrunc<S>> {
        if self.known_q(e) < self.n + 1 {
            return Err(Error::WindowExceeded {
                requested: e as i64 + self.grading.slope() as i64 * self.n as i64,
                known: self.known as i64,
            });
        }
        Ok(self.coeff_partial(e).0)
    }

    /// The known part of the coefficient of `x^e` and the number of known
    /// q-degrees. Degrees at or above that count read as zero.
    pub fn coeff_partial(&self, e: i32) -> (QTrunc<S>, usize) {
        let c = self.terms.get(&e).cloned().unwrap_or_else(|| QTrunc::zero(self.n));
        (c, self.known_q(e))
    }

    pub fn residue(&self) -> Result<QTrunc<S>> {
        self.coeff(-1)
    }

    fn compat(&self, o: &Self) -> Result<()> {
        if self.var != o.var {
            return Err(Error::VarMismatch(self.var.to_string(), o.var.to_string()));
        }
        if self.n != o.n {
            return Err(Error::OrderMismatch(self.n, o.n));
        }
        if self.grading != o.grading {
            return Err(Error::GradingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.compat(o)?;
        let known = self.known.min(o.known);
        Ok(Self::new(
            self.var,
            self.n,
            self.grading,
            known,
            self.terms.iter().chain(o.terms.iter()).map(|(e, c)| (*e, c.clone())),
        ))
    }

    pub fn neg(&self) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(), ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.compat(o)?;
        let known = (self.known + o.valuation()).min(o.known + self.valuation());
        let slope = self.grading.slope();
        let mut acc: BTreeMap<i32, QTrunc<S>> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            let va = self.weight(*ea, ca);
            for (eb, cb) in &o.terms {
                let e = ea + eb;
                if e > known || va + o.weight(*eb, cb) > known {
                    continue;
                }
                let mut p = ca * cb;
                if slope > 0 && e + self.n as i32 > known {
                    p = p.truncate((known - e + 1) as usize);
                }
                match acc.get_mut(&e) {
                    Some(x) => *x = &*x + &p,
                    None => {
                        acc.insert(e, p);
                    }
                }
            }
        }
        Ok(Self::new(self.var, self.n, self.grading, known, acc))
    }

    /// Multiplies by a coefficient. Under the node grading a factor of
    /// q-valuation `v` extends the window by `v`.
    pub fn scale(&self, c: &QTrunc<S>) -> Self {
        let known = self.known + self.grading.slope() * c.valuation().unwrap_or(0) as i32;
        Self::new(self.var, self.n, self.grading, known, self.terms.iter().map(|(e, x)| (*e, x * c)))
    }

    pub fn scale_poly(&self, p: &CoeffPoly<S>) -> Self {
        Self::new(
            self.var,
            self.n,
            self.grading,
            self.known,
            self.terms.iter().map(|(e, x)| (*e, x.scale(p))),
        )
    }

    pub fn scale_scalar(&self, s: &S) -> Self {
        self.scale_poly(&CoeffPoly::constant(s.clone()))
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i32) -> Self {
        Laurent {
            known: self.known + k,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            ..self.clone()
        }
    }

    pub fn derive(&self) -> Self {
        Self::new(
            self.var,
            self.n,
            self.grading,
            self.known - 1,
            self.terms.iter().map(|(e, c)| (e - 1, c.scale_scalar(&S::from_int(*e as i64)))),
        )
    }

    /// Shrinks the window to `k` (never enlarges it).
    pub fn truncate(&self, k: i32) -> Self {
        Self::new(self.var, self.n, self.grading, k.min(self.known), self.terms.clone())
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Ok(Self::one(self.var, self.n, self.grading, self.known));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Keeps the terms with `e` in the given range; the window is unchanged.
    pub fn filter(&self, keep: impl Fn(i32) -> bool) -> Self {
        Laurent {
            terms: self.terms.iter().filter(|(e, _)| keep(**e)).map(|(e, c)| (*e, c.clone())).collect(),
            ..self.clone()
        }
    }

    pub fn polar_part(&self) -> Self {
        self.filter(|e| e < 0)
    }

    pub fn regular_part(&self) -> Self {
        self.filter(|e| e >= 0)
    }

    pub fn positive_part(&self) -> Self {
        self.filter(|e| e > 0)
    }

    /// Reciprocal. The weighted-lowest part must have a unit leading
    /// coefficient; the result window is `K − 2v`.
    pub fn invert(&self) -> Result<Self> {
        let v = self.valuation();
        if v > self.known {
            return Err(Error::NonUnit("series vanishes on its window".into()));
        }
        let b = self.shift(-v);
        let kb = b.known;
        let lead = b.coeff_partial(0).0.coeff(0).clone();
        let lead_inv = lead.try_inverse()?;
        // weight-zero part of b
        let w0 = match self.grading {
            Grading::Plain => b.filter(|e| e == 0),
            Grading::Node => Self::new(
                b.var,
                b.n,
                b.grading,
                kb,
                b.terms
                    .iter()
                    .filter(|(e, _)| **e <= 0 && (-**e) as usize <= b.n)
                    .map(|(e, c)| (*e, QTrunc::monomial(c.coeff((-e) as usize).clone(), (-e) as usize, b.n))),
            ),
        };
        let one = Self::one(b.var, b.n, b.grading, kb);
        let x0 = w0.scale_poly(&lead_inv).sub(&one)?;
        let mut w0_inv = one.clone();
        let mut p = one.clone();
        loop {
            p = p.mul(&x0)?.neg().truncate(kb);
            if p.is_zero() {
                break;
            }
            w0_inv = w0_inv.add(&p)?;
        }
        let w0_inv = w0_inv.scale_poly(&lead_inv);
        let y = w0_inv.mul(&b.sub(&w0)?)?;
        let mut acc = one.clone();
        let mut p = one;
        loop {
            p = p.mul(&y)?.neg().truncate(kb);
            if p.is_zero() {
                break;
            }
            acc = acc.add(&p)?;
        }
        Ok(w0_inv.mul(&acc)?.truncate(kb).shift(-v))
    }

    /// Substitution `x ↦ u(x)`. `u` must have weighted valuation 1 with a
    /// unit linear coefficient.
    pub fn compose(&self, u: &Self) -> Result<Self> {
        self.compat(u)?;
        if u.valuation() != 1 || u.coeff_partial(1).0.coeff(0).try_inverse().is_err() {
            return Err(Error::NonUnit(format!("substitution {u} lacks a unit linear term")));
        }
        let mut known = self.known;
        let mut terms: Vec<(i32, QTrunc<S>)> = Vec::new();
        let mut parts: Vec<Self> = Vec::new();
        if let Some(c) = self.terms.get(&0) {
            terms.push((0, c.clone()));
        }
        let max_e = self.max_exp().unwrap_or(0).max(0);
        let min_e = self.min_exp().unwrap_or(0).min(0);
        let mut pw = u.clone();
        for e in 1..=max_e {
            if e > 1 {
                pw = pw.mul(u)?;
            }
            if let Some(c) = self.terms.get(&e) {
                parts.push(pw.scale(c));
            }
        }
        if min_e < 0 {
            let uinv = u.invert()?;
            let mut pw = uinv.clone();
            for e in (min_e..=-1).rev() {
                if e < -1 {
                    pw = pw.mul(&uinv)?;
                }
                if let Some(c) = self.terms.get(&e) {
                    parts.push(pw.scale(c));
                }
            }
        }
        for p in &parts {
            known = known.min(p.known);
        }
        for p in parts {
            terms.extend(p.terms);
        }
        Ok(Self::new(self.var, self.n, self.grading, known, terms))
    }

    /// `f(x) ↦ f(q/x)`. Needs a regular input known through `x^N`; the
    /// unknown tail maps into `q^{N+1} = 0`, so the output is exact.
    pub fn subst_q_over_x(&self) -> Result<Self> {
        if let Some(e) = self.min_exp() {
            if e < 0 {
                return Err(Error::PolarInput(e));
            }
        }
        if self.known < self.n as i32 {
            return Err(Error::WindowExceeded { requested: self.n as i64, known: self.known as i64 });
        }
        Ok(Self::new(
            self.var,
            self.n,
            self.grading,
            self.known,
            self.terms.iter().map(|(e, c)| (-e, c.shift(*e as usize))),
        ))
    }

    /// True when both series agree on their common window.
    pub fn agrees(&self, o: &Self) -> Result<bool> {
        self.compat(o)?;
        let k = self.known.min(o.known);
        Ok(self.truncate(k) == o.truncate(k))
    }

    /// Reinterprets a series at another q-order. Raising the order pads
    /// coefficients with zeros and is only meaningful for q-free data.
    pub fn with_order(&self, n: usize) -> Self {
        Self::new(self.var, n, self.grading, self.known, self.terms.iter().map(|(e, c)| (*e, c.with_order(n))))
    }

    pub fn with_var(&self, var: Var) -> Self {
        Laurent { var, ..self.clone() }
    }

    /// Changes grading, shrinking the window so no unknown term becomes known.
    pub fn with_grading(&self, g: Grading) -> Self {
        let known = match (self.grading, g) {
            (Grading::Node, Grading::Plain) => self.known - self.n as i32,
            _ => self.known,
        };
        Self::new(self.var, self.n, g, known, self.terms.clone())
    }

    pub fn substitute(&self, f: &dyn Fn(&Sym) -> Option<CoeffPoly<S>>) -> Self {
        Self::new(self.var, self.n, self.grading, self.known, self.terms.iter().map(|(e, c)| (*e, c.substitute(f))))
    }

    pub fn map_coeffs(&self, f: impl Fn(i32, &QTrunc<S>) -> QTrunc<S>) -> Self {
        Self::new(self.var, self.n, self.grading, self.known, self.terms.iter().map(|(e, c)| (*e, f(*e, c))))
    }

    pub fn map_scalars<T: Scalar>(&self, f: &dyn Fn(&S) -> T) -> Laurent<T> {
        Laurent::new(self.var, self.n, self.grading, self.known, self.terms.iter().map(|(e, c)| (*e, c.map_scalars(f))))
    }
}

impl<S: Scalar> fmt::Debug for Laurent<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [N={}, {}]", self.n, self.grading.name())
    }
}

impl<S: Scalar> fmt::Display for Laurent<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.var.name();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let xe = match e {
                0 => String::new(),
                1 => x.to_string(),
                _ => format!("{x}^{e}"),
            };
            let cs = format!("{c}");
            if xe.is_empty() {
                write!(f, "({cs})")?;
            } else if c.is_one() {
                f.write_str(&xe)?;
            } else {
                write!(f, "({cs})·{xe}")?;
            }
        }
        if self.terms.is_empty() {
            f.write_str("0")?;
        }
        write!(f, " + O({x}^{})", self.known + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type L = Laurent<BigRational>;
    type Q = QTrunc<BigRational>;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn plain(n: usize, k: i32, t: &[(i32, i64)]) -> L {
        L::new(Var::Z, n, Grading::Plain, k, t.iter().map(|(e, c)| (*e, Q::scalar(r(*c), n))))
    }

    #[test]
    fn difference_of_squares() {
        let a = plain(0, 2, &[(0, 1), (1, 1)]);
        let b = plain(0, 2, &[(0, 1), (1, -1)]);
        assert_eq!(a.mul(&b).unwrap(), plain(0, 2, &[(0, 1), (2, -1)]));
    }

    #[test]
    fn polar_times_x() {
        let a = plain(0, 4, &[(-1, 1), (0, 1)]);
        let z = L::x(Var::Z, 0, Grading::Plain, 4);
        let p = a.mul(&z).unwrap();
        assert_eq!(p.known(), 3);
        assert_eq!(p, plain(0, 3, &[(0, 1), (1, 1)]));
    }

    #[test]
    fn geometric_series() {
        let a = plain(0, 3, &[(0, 1), (1, 1)]);
        assert_eq!(a.invert().unwrap(), plain(0, 3, &[(0, 1), (1, -1), (2, 1), (3, -1)]));
        let two = plain(0, 3, &[(0, 2)]);
        let half = two.invert().unwrap();
        assert_eq!(half.coeff(0).unwrap(), Q::scalar(BigRational::new(1.into(), 2.into()), 0));
    }

    #[test]
    fn zero_constant_is_not_a_unit() {
        let c = Sym::constant("c");
        let a = L::from_polys(Var::Z, 1, Grading::Plain, 3, [(0, CoeffPoly::sym(&c))]);
        assert!(matches!(a.invert(), Err(Error::NonUnit(_))));
    }

    #[test]
    fn window_is_enforced() {
        let a = plain(0, 3, &[(0, 1)]);
        assert!(a.coeff(3).is_ok());
        assert_eq!(a.coeff(4), Err(Error::WindowExceeded { requested: 4, known: 3 }));
        assert_eq!(a.derive().known(), 2);
    }

    #[test]
    fn subst_examples() {
        let n = 2;
        let a = L::new(Var::X1, n, Grading::Plain, 5, [(1, Q::one(n)), (2, Q::one(n))]);
        let s = a.subst_q_over_x().unwrap();
        let want = L::new(Var::X1, n, Grading::Plain, 5, [(-1, Q::q(n)), (-2, Q::q(n).pow(2))]);
        assert_eq!(s, want);
        let cube = L::new(Var::X1, n, Grading::Plain, 5, [(3, Q::one(n))]);
        assert!(cube.subst_q_over_x().unwrap().is_zero());
        let polar = L::new(Var::X1, n, Grading::Plain, 5, [(-1, Q::one(n))]);
        assert_eq!(polar.subst_q_over_x(), Err(Error::PolarInput(-1)));
    }

    #[test]
    fn compose_examples() {
        let u = plain(0, 4, &[(1, 1), (2, 1)]);
        let sq = plain(0, 3, &[(2, 1)]);
        assert_eq!(sq.compose(&u).unwrap(), plain(0, 3, &[(2, 1), (3, 2)]));
        let inv = plain(0, 10, &[(-1, 1)]);
        let got = inv.compose(&u).unwrap().truncate(2);
        assert_eq!(got, plain(0, 2, &[(-1, 1), (0, -1), (1, 1), (2, -1)]));
        let z = L::x(Var::Z, 0, Grading::Plain, 20);
        assert_eq!(sq.compose(&z).unwrap(), sq);
    }

    #[test]
    fn node_grading_inverts_polar_nilpotents() {
        // t2 - q r + q² x^-1 has a weight-zero unit part and polar q-terms
        let n = 3;
        let rsym = Sym::constant("r");
        let a = L::new(
            Var::X2,
            n,
            Grading::Node,
            6,
            [(0, Q::one(n)), (-1, Q::q(n)), (-2, Q::q(n).pow(2).scale(&CoeffPoly::sym(&rsym))), (1, Q::one(n))],
        );
        let inv = a.invert().unwrap();
        assert_eq!(inv.known(), 6);
        let one = a.mul(&inv).unwrap();
        assert!(one.agrees(&L::one(Var::X2, n, Grading::Node, 6)).unwrap());
    }

    #[test]
    fn mixed_operands_rejected() {
        let a = plain(0, 3, &[(0, 1)]);
        let b = plain(1, 3, &[(0, 1)]);
        assert_eq!(a.mul(&b), Err(Error::OrderMismatch(0, 1)));
        assert_eq!(a.add(&a.with_var(Var::X1)), Err(Error::VarMismatch("z".into(), "x1".into())));
    }
}
