//! The node algebra `A = R[[x₁,x₂]]/(x₁x₂ − q)`, truncated to `A/(x₁^{K+1}, x₂^{K+1})`,
//! its embedding into the two punctured disks, Kähler differentials and the
//! dualizing module generated by `e = dx₂/x₂ = −dx₁/x₁`.
//!
//! Elements are stored in the canonical form `c₀ + Σ aᵢx₁ⁱ + Σ bⱼx₂ʲ`. In the
//! quotient, `q^m x₁^d` vanishes once `m + d > K`, so the coefficient of a
//! degree-`d` monomial is only meaningful modulo `q^{K+1−d}`; the constructor
//! reduces it accordingly, which makes structural equality exact.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{CoeffPoly, Grading, Laurent, QTrunc, Var};

/// Truncation data shared by every element: q-order `N` and x-degree `K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeContext {
    n: usize,
    k: usize,
}

impl NodeContext {
    /// Requires `K ≥ max(N, 1)` so that constants are exact.
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k < 1 || k < n {
            return Err(Error::InvalidArgument(format!("node context needs K ≥ max(N, 1), got N={n}, K={k}")));
        }
        Ok(NodeContext { n, k })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn window(&self) -> usize {
        self.k
    }

    /// Number of meaningful q-degrees for a monomial of x-degree `|d|`.
    fn prec(&self, d: i32) -> usize {
        (self.k + 1 - d.unsigned_abs() as usize).min(self.n + 1)
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self != o {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }
}

/// `Σ_{|d|≤K} c_d x^d` where `x^d` means `x₁^d` for `d > 0` and `x₂^{−d}` for `d < 0`.
#[derive(Clone, PartialEq)]
pub struct NodeElement<S> {
    ctx: NodeContext,
    c: Vec<QTrunc<S>>,
}

impl<S: Scalar> NodeElement<S> {
    fn idx(&self, d: i32) -> usize {
        (d + self.ctx.k as i32) as usize
    }

    fn from_signed(ctx: NodeContext, mut c: Vec<QTrunc<S>>) -> Self {
        let k = ctx.k as i32;
        for (i, x) in c.iter_mut().enumerate() {
            let d = i as i32 - k;
            let p = ctx.prec(d);
            if p <= ctx.n {
                *x = x.truncate(p);
            }
        }
        NodeElement { ctx, c }
    }

    pub fn zero(ctx: NodeContext) -> Self {
        NodeElement { ctx, c: vec![QTrunc::zero(ctx.n); 2 * ctx.k + 1] }
    }

    pub fn scalar(ctx: NodeContext, c0: QTrunc<S>) -> Self {
        Self::new(ctx, c0, vec![], vec![])
    }

    pub fn one(ctx: NodeContext) -> Self {
        Self::scalar(ctx, QTrunc::one(ctx.n))
    }

    /// `c0 + Σ a[i−1] x₁ⁱ + Σ b[j−1] x₂ʲ`; entries beyond `K` are dropped.
    pub fn new(ctx: NodeContext, c0: QTrunc<S>, a: Vec<QTrunc<S>>, b: Vec<QTrunc<S>>) -> Self {
        let mut out = Self::zero(ctx);
        let k = ctx.k as i32;
        out.c[ctx.k] = c0;
        for (i, x) in a.into_iter().enumerate().take(ctx.k) {
            out.c[(k + 1 + i as i32) as usize] = x;
        }
        for (j, x) in b.into_iter().enumerate().take(ctx.k) {
            out.c[(k - 1 - j as i32) as usize] = x;
        }
        Self::from_signed(ctx, out.c)
    }

    /// `c·x^d` with the signed-degree convention.
    pub fn monomial(ctx: NodeContext, d: i32, c: QTrunc<S>) -> Self {
        let mut out = Self::zero(ctx);
        if d.unsigned_abs() as usize <= ctx.k {
            let i = out.idx(d);
            out.c[i] = c;
        }
        Self::from_signed(ctx, out.c)
    }

    pub fn x1(ctx: NodeContext) -> Self {
        Self::monomial(ctx, 1, QTrunc::one(ctx.n))
    }

    pub fn x2(ctx: NodeContext) -> Self {
        Self::monomial(ctx, -1, QTrunc::one(ctx.n))
    }

    pub fn ctx(&self) -> NodeContext {
        self.ctx
    }

    /// Coefficient of `x^d` (signed convention); zero outside `|d| ≤ K`.
    pub fn coeff(&self, d: i32) -> QTrunc<S> {
        if d.unsigned_abs() as usize > self.ctx.k {
            return QTrunc::zero(self.ctx.n);
        }
        self.c[self.idx(d)].clone()
    }

    pub fn c0(&self) -> &QTrunc<S> {
        &self.c[self.ctx.k]
    }

    /// `aᵢ`, the coefficient of `x₁ⁱ` for `i ≥ 1`.
    pub fn a(&self, i: usize) -> QTrunc<S> {
        self.coeff(i as i32)
    }

    /// `bⱼ`, the coefficient of `x₂ʲ` for `j ≥ 1`.
    pub fn b(&self, j: usize) -> QTrunc<S> {
        self.coeff(-(j as i32))
    }

    /// Nonzero terms as `(signed degree, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &QTrunc<S>)> {
        let k = self.ctx.k as i32;
        self.c
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(i, x)| (i as i32 - k, x))
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.ctx)
    }

    /// Scalar elements: everything outside the constant term vanishes.
    pub fn is_scalar(&self) -> bool {
        self.terms().all(|(d, _)| d == 0)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.ctx.check(&o.ctx)?;
        Ok(NodeElement { ctx: self.ctx, c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        NodeElement { ctx: self.ctx, c: self.c.iter().map(|a| -a).collect() }
    }

    /// Product, using `x₁ⁱx₂ʲ = q^{min(i,j)} x₁^{i−j}` (or `x₂^{j−i}`).
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.ctx.check(&o.ctx)?;
        let k = self.ctx.k as i32;
        let mut out = vec![QTrunc::zero(self.ctx.n); self.c.len()];
        let rhs: Vec<(i32, &QTrunc<S>)> = o.terms().collect();
        for (da, ca) in self.terms() {
            for (db, cb) in &rhs {
                let d = da + db;
                if d.abs() > k {
                    continue;
                }
                let qs = if da.signum() * db.signum() < 0 { da.abs().min(db.abs()) as usize } else { 0 };
                if qs as i32 + d.abs() > k || qs > self.ctx.n {
                    continue;
                }
                let i = (d + k) as usize;
                out[i].add_mul(ca, cb, qs, self.ctx.prec(d));
            }
        }
        Ok(Self::from_signed(self.ctx, out))
    }

    pub fn scale(&self, c: &QTrunc<S>) -> Self {
        let k = self.ctx.k as i32;
        let mut out = vec![QTrunc::zero(self.ctx.n); self.c.len()];
        for (i, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                out[i].add_mul(x, c, 0, self.ctx.prec(i as i32 - k));
            }
        }
        NodeElement { ctx: self.ctx, c: out }
    }

    /// `self + m·c`, the accumulation step of substitutions.
    pub fn add_scaled(&mut self, m: &Self, c: &QTrunc<S>) {
        let k = self.ctx.k as i32;
        for (i, x) in m.c.iter().enumerate() {
            if !x.is_zero() {
                self.c[i].add_mul(x, c, 0, self.ctx.prec(i as i32 - k));
            }
        }
    }

    pub fn scale_poly(&self, p: &CoeffPoly<S>) -> Self {
        Self::from_signed(self.ctx, self.c.iter().map(|x| x.scale(p)).collect())
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one(self.ctx);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn is_unit(&self) -> bool {
        self.c0().coeff(0).try_inverse().is_ok()
    }

    /// Inverse of a unit by Newton iteration `v ← v(2 − uv)`, starting from
    /// `c₀⁻¹`. The error lies in the ideal `(x₁, x₂)`, whose `(2K+1)`-st power
    /// vanishes in the quotient, and squares at every step.
    pub fn inverse(&self) -> Result<Self> {
        let ctx = self.ctx;
        let two = Self::scalar(ctx, QTrunc::scalar(S::from_int(2), ctx.n));
        let mut v = Self::scalar(ctx, self.c0().try_inverse()?);
        loop {
            let uv = self.mul(&v)?;
            if uv.is_one() {
                return Ok(v);
            }
            v = v.mul(&two.sub(&uv)?)?;
        }
    }

    /// Exchanges the roles of `x₁` and `x₂`.
    pub fn swap(&self) -> Self {
        let mut c = self.c.clone();
        c.reverse();
        NodeElement { ctx: self.ctx, c }
    }

    /// The derivation `x₁∂₁ − x₂∂₂`, which is well defined on `A` because it
    /// kills `x₁x₂ − q`. It multiplies `x^d` by `d`.
    pub fn euler(&self) -> Self {
        let k = self.ctx.k as i32;
        let c = self
            .c
            .iter()
            .enumerate()
            .map(|(i, x)| x.scale_scalar(&S::from_int((i as i32 - k) as i64)))
            .collect();
        NodeElement { ctx: self.ctx, c }
    }

    /// Applies a ring map to every coefficient, e.g. a symbol substitution.
    pub fn map_coeffs(&self, f: impl Fn(i32, &QTrunc<S>) -> QTrunc<S>) -> Self {
        let k = self.ctx.k as i32;
        Self::from_signed(self.ctx, self.c.iter().enumerate().map(|(i, x)| f(i as i32 - k, x)).collect())
    }

    /// The pair `(f(x₁, q/x₁), f(q/x₂, x₂))`, node-graded with window `K`.
    pub fn iota(&self) -> (Laurent<S>, Laurent<S>) {
        let (n, k) = (self.ctx.n, self.ctx.k as i32);
        let branch = |var: Var, sign: i32| {
            Laurent::new(
                var,
                n,
                Grading::Node,
                k,
                self.terms().map(|(d, c)| {
                    let e = sign * d;
                    if e >= 0 {
                        (e, c.clone())
                    } else {
                        (e, c.shift((-e) as usize))
                    }
                }),
            )
        };
        (branch(Var::X1, 1), branch(Var::X2, -1))
    }

    /// Inverts [`iota`](Self::iota) by matching coefficients. The regular
    /// parts determine the element; the polar parts must be consistent.
    pub fn iota_preimage(ctx: NodeContext, p1: &Laurent<S>, p2: &Laurent<S>) -> Result<Self> {
        let (n, k) = (ctx.n, ctx.k as i32);
        let node1 = p1.with_grading(Grading::Node);
        let node2 = p2.with_grading(Grading::Node);
        for p in [&node1, &node2] {
            if p.order() != n {
                return Err(Error::OrderMismatch(p.order(), n));
            }
            if p.known() < k {
                return Err(Error::WindowExceeded { requested: k as i64, known: p.known() as i64 });
            }
            if let Some(e) = p.min_exp() {
                if -e > n as i32 {
                    return Err(Error::NotInImage(format!("polar depth {} exceeds N={n}", -e)));
                }
            }
        }
        let (p1, p2) = (node1.truncate(k), node2.truncate(k));
        let mut c = vec![QTrunc::zero(n); 2 * ctx.k + 1];
        for d in 0..=k {
            c[(k + d) as usize] = p1.coeff_partial(d).0;
        }
        for d in 1..=k {
            c[(k - d) as usize] = p2.coeff_partial(d).0;
        }
        let cand = Self::from_signed(ctx, c);
        let (i1, i2) = cand.iota();
        if i1 != p1 || i2 != p2 {
            let which = if i1 != p1 { "first" } else { "second" };
            return Err(Error::NotInImage(format!("{which} component inconsistent with the regular parts")));
        }
        Ok(cand)
    }

    /// Leibniz differential: `d(x₁ⁱ) = i x₁^{i−1} dx₁`, `d(x₂ʲ) = j x₂^{j−1} dx₂`, `dq = 0`.
    pub fn d(&self) -> NodeDiff<S> {
        let ctx = self.ctx;
        let mut w = NodeDiff::zero(ctx);
        for (d, c) in self.terms() {
            let e = d.unsigned_abs() as usize;
            if e == 0 {
                continue;
            }
            let t = c.scale_scalar(&S::from_int(e as i64));
            if d > 0 {
                w.f[e - 1] = &w.f[e - 1] + &t;
            } else {
                w.g[e - 1] = &w.g[e - 1] + &t;
            }
        }
        w.reduced()
    }

    pub fn map_scalars<T: Scalar>(&self, f: &dyn Fn(&S) -> T) -> NodeElement<T> {
        NodeElement { ctx: self.ctx, c: self.c.iter().map(|x| x.map_scalars(f)).collect() }
    }
}

impl<S: Scalar> fmt::Debug for NodeElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for NodeElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let x = match d {
                0 => String::new(),
                1 => "x1".into(),
                -1 => "x2".into(),
                d if d > 0 => format!("x1^{d}"),
                d => format!("x2^{}", -d),
            };
            if x.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                f.write_str(&x)?;
            } else {
                write!(f, "({c})·{x}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// A Kähler differential in the normal form
/// `s·x₁dx₂ + Σ fᵢ x₁ⁱ dx₁ + Σ gⱼ x₂ʲ dx₂`.
///
/// Precision: `s` is kept mod `q^{K}` and `fᵢ`, `gⱼ` mod `q^{K−i}`, the images
/// of the truncation ideal under `d`.
#[derive(Clone, PartialEq)]
pub struct NodeDiff<S> {
    ctx: NodeContext,
    s: QTrunc<S>,
    f: Vec<QTrunc<S>>,
    g: Vec<QTrunc<S>>,
}

impl<S: Scalar> NodeDiff<S> {
    pub fn zero(ctx: NodeContext) -> Self {
        NodeDiff { ctx, s: QTrunc::zero(ctx.n), f: vec![QTrunc::zero(ctx.n); ctx.k], g: vec![QTrunc::zero(ctx.n); ctx.k] }
    }

    /// `f` holds the coefficients of `x₁ⁱdx₁` for `i = 0, 1, …`; likewise `g`.
    pub fn new(ctx: NodeContext, s: QTrunc<S>, f: Vec<QTrunc<S>>, g: Vec<QTrunc<S>>) -> Self {
        let mut w = Self::zero(ctx);
        w.s = s;
        for (i, x) in f.into_iter().enumerate().take(ctx.k) {
            w.f[i] = x;
        }
        for (i, x) in g.into_iter().enumerate().take(ctx.k) {
            w.g[i] = x;
        }
        w.reduced()
    }

    fn reduced(mut self) -> Self {
        let (n, k) = (self.ctx.n, self.ctx.k);
        self.s = self.s.truncate(k.min(n + 1));
        for (i, x) in self.f.iter_mut().chain(self.g.iter_mut().take(k)).enumerate() {
            let i = i % k;
            *x = x.truncate((k - i).min(n + 1));
        }
        self
    }

    /// `m₁·dx₁ + m₂·dx₂` reduced with `x₂dx₁ = −x₁dx₂` and `x₁x₂ = q`.
    pub fn from_parts(m1: &NodeElement<S>, m2: &NodeElement<S>) -> Result<Self> {
        m1.ctx.check(&m2.ctx)?;
        let ctx = m1.ctx;
        let mut w = Self::zero(ctx);
        let k = ctx.k as i32;
        for (d, c) in m1.terms() {
            match d {
                d if d >= 0 => {
                    if d < k {
                        w.f[d as usize] = &w.f[d as usize] + c;
                    }
                }
                -1 => w.s = &w.s - c,
                d => {
                    let j = (-d - 2) as usize;
                    w.g[j] = &w.g[j] - &c.shift(1);
                }
            }
        }
        for (d, c) in m2.terms() {
            match d {
                d if d <= 0 => {
                    if -d < k {
                        let j = (-d) as usize;
                        w.g[j] = &w.g[j] + c;
                    }
                }
                1 => w.s = &w.s + c,
                d => {
                    let i = (d - 2) as usize;
                    w.f[i] = &w.f[i] - &c.shift(1);
                }
            }
        }
        Ok(w.reduced())
    }

    pub fn ctx(&self) -> NodeContext {
        self.ctx
    }

    /// Coefficient on `x₁dx₂`.
    pub fn s(&self) -> &QTrunc<S> {
        &self.s
    }

    pub fn f(&self) -> &[QTrunc<S>] {
        &self.f
    }

    pub fn g(&self) -> &[QTrunc<S>] {
        &self.g
    }

    /// The `dx₁` and `dx₂` components as node elements.
    pub fn parts(&self) -> (NodeElement<S>, NodeElement<S>) {
        let ctx = self.ctx;
        let x1 = NodeElement::x1(ctx);
        let f = NodeElement::new(ctx, self.f[0].clone(), self.f[1..].to_vec(), vec![]);
        let g = NodeElement::new(ctx, self.g[0].clone(), vec![], self.g[1..].to_vec());
        let g = g.add(&x1.scale(&self.s)).expect("same context");
        (f, g)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.ctx.check(&o.ctx)?;
        Ok(NodeDiff {
            ctx: self.ctx,
            s: &self.s + &o.s,
            f: self.f.iter().zip(&o.f).map(|(a, b)| a + b).collect(),
            g: self.g.iter().zip(&o.g).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn neg(&self) -> Self {
        NodeDiff {
            ctx: self.ctx,
            s: -&self.s,
            f: self.f.iter().map(|a| -a).collect(),
            g: self.g.iter().map(|a| -a).collect(),
        }
    }

    /// Module structure over the node algebra.
    pub fn mul_elem(&self, m: &NodeElement<S>) -> Result<Self> {
        let (f, g) = self.parts();
        Self::from_parts(&m.mul(&f)?, &m.mul(&g)?)
    }

    pub fn is_zero(&self) -> bool {
        self.s.is_zero() && self.f.iter().chain(&self.g).all(|x| x.is_zero())
    }

    /// Image in `ω = A·e`: `dx₁ ↦ −x₁e`, `dx₂ ↦ x₂e`, `x₁dx₂ ↦ q·e`.
    pub fn to_omega(&self) -> NodeElement<S> {
        let ctx = self.ctx;
        let (n, k) = (ctx.n, ctx.k as i32);
        let mut c = vec![QTrunc::zero(n); 2 * ctx.k + 1];
        c[ctx.k] = self.s.shift(1);
        for (i, x) in self.f.iter().enumerate() {
            c[(k + 1 + i as i32) as usize] = -x;
        }
        for (j, x) in self.g.iter().enumerate() {
            c[(k - 1 - j as i32) as usize] = x.clone();
        }
        NodeElement::from_signed(ctx, c)
    }
}

impl<S: Scalar> fmt::Debug for NodeDiff<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for NodeDiff<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})·x1dx2", self.s)?;
        for (i, x) in self.f.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            write!(f, " + ({x})·x1^{i}dx1")?;
        }
        for (j, x) in self.g.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            write!(f, " + ({x})·x2^{j}dx2")?;
        }
        Ok(())
    }
}

/// Determinant of the rank-one block `[R·x₁dx₂ → R·e]`: the `e`-coefficient
/// of the image of `x₁dx₂`, which is `q`.
pub fn theta_det<S: Scalar>(ctx: NodeContext) -> QTrunc<S> {
    let w = NodeDiff::new(ctx, QTrunc::one(ctx.n), vec![], vec![]);
    w.to_omega().c0().clone()
}

/// Factor by which the trivialization `e ⊗ (x₁dx₂)⁻¹` changes under
/// `(x₁, x₂, q) ↦ (λx₁, x₂, λq)` for a unit `λ`. The generator `e` is
/// unchanged while the new `x₁dx₂` is `λ` times the old one.
pub fn theta_scaling<S: Scalar>(ctx: NodeContext, lambda: &CoeffPoly<S>) -> Result<CoeffPoly<S>> {
    let n = ctx.n;
    let lam = QTrunc::constant(lambda.clone(), n);
    let new_x1 = NodeElement::x1(ctx).scale(&lam);
    let new_gen = NodeDiff::from_parts(&NodeElement::zero(ctx), &new_x1)?;
    let e_coeff = CoeffPoly::one();
    let s = new_gen.s().coeff(0).clone();
    Ok(&e_coeff * &s.try_inverse()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Sym;
    use num_rational::BigRational;

    type E = NodeElement<BigRational>;
    type Q = QTrunc<BigRational>;

    fn ctx(n: usize, k: usize) -> NodeContext {
        NodeContext::new(n, k).unwrap()
    }

    #[test]
    fn defining_relation() {
        let c = ctx(3, 4);
        let p = E::x1(c).mul(&E::x2(c)).unwrap();
        assert_eq!(p, E::scalar(c, Q::q(3)));
        let a = E::one(c).add(&E::x1(c)).unwrap();
        let b = E::one(c).add(&E::x2(c)).unwrap();
        let want = E::new(c, &Q::one(3) + &Q::q(3), vec![Q::one(3)], vec![Q::one(3)]);
        assert_eq!(a.mul(&b).unwrap(), want);
    }

    #[test]
    fn iota_examples() {
        let (n, k) = (2, 4);
        let c = ctx(n, k);
        let (l1, l2) = E::x1(c).iota();
        assert_eq!(l1, Laurent::x(Var::X1, n, Grading::Node, 4));
        assert_eq!(l2, Laurent::monomial(Var::X2, n, Grading::Node, 4, -1, Q::q(n)));
        let (l1, l2) = E::monomial(c, 3, Q::one(n)).iota();
        assert_eq!(l1, Laurent::monomial(Var::X1, n, Grading::Node, 4, 3, Q::one(n)));
        assert!(l2.is_zero());
    }

    #[test]
    fn preimage_examples() {
        let (n, k) = (2, 4);
        let c = ctx(n, k);
        let q = E::scalar(c, Q::q(n));
        let (a, b) = q.iota();
        assert_eq!(E::iota_preimage(c, &a, &b).unwrap(), q);
        let one = Laurent::one(Var::X1, n, Grading::Node, 4);
        let zero = Laurent::zero(Var::X2, n, Grading::Node, 4);
        assert!(matches!(E::iota_preimage(c, &one, &zero), Err(Error::NotInImage(_))));
    }

    #[test]
    fn inverse_of_unit() {
        let c = ctx(2, 5);
        let r = Q::sym(&Sym::constant("r"), 2);
        let u = E::new(c, Q::scalar(BigRational::from_integer(3.into()), 2), vec![r.clone(), Q::q(2)], vec![r]);
        let v = u.inverse().unwrap();
        assert!(u.mul(&v).unwrap().is_one());
    }

    #[test]
    fn differentials() {
        let c = ctx(2, 4);
        let w = E::x1(c).d();
        assert_eq!(w, NodeDiff::new(c, Q::zero(2), vec![Q::one(2)], vec![]));
        assert!(E::scalar(c, Q::q(2)).d().is_zero());
        let x2dx1 = NodeDiff::from_parts(&E::x2(c), &E::zero(c)).unwrap();
        assert_eq!(x2dx1.s(), &-Q::one(2));
    }

    #[test]
    fn omega_images() {
        let c = ctx(2, 4);
        let dx1 = NodeDiff::new(c, Q::zero(2), vec![Q::one(2)], vec![]);
        let dx2 = NodeDiff::new(c, Q::zero(2), vec![], vec![Q::one(2)]);
        assert_eq!(dx1.to_omega(), E::x1(c).neg());
        assert_eq!(dx2.to_omega(), E::x2(c));
        assert_eq!(theta_det::<BigRational>(c), Q::q(2));
        assert!(theta_det::<BigRational>(ctx(0, 3)).is_zero());
        let lam = CoeffPoly::<BigRational>::sym(&Sym::unit("lambda"));
        assert_eq!(theta_scaling(c, &lam).unwrap(), lam.try_inverse().unwrap());
    }
}
