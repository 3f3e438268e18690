//! The gluing group: automorphisms `x₁ ↦ x₁u`, `x₂ ↦ x₂u⁻¹` of the node
//! algebra for a unit `u`, their actions on the punctured disks and on
//! differentials, and the Witt Lie algebra they integrate.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::node::{NodeContext, NodeDiff, NodeElement};
use crate::scalar::Scalar;
use crate::series::{CoeffPoly, Laurent, Monomial, QTrunc, Sym};

/// An element of the gluing group, identified with its unit `u`.
#[derive(Clone, PartialEq, Debug)]
pub struct GlueAut<S: Scalar> {
    u: NodeElement<S>,
}

/// The pair of substitutions `(t₁ ↦ α₁(t₁), t₂ ↦ α₂(t₂))` induced on the
/// punctured disks.
#[derive(Clone, PartialEq, Debug)]
pub struct BoundaryAut<S: Scalar> {
    pub t1: Laurent<S>,
    pub t2: Laurent<S>,
}

impl<S: Scalar> BoundaryAut<S> {
    /// Composition as automorphisms: first `other`, then `self`.
    pub fn after(&self, other: &Self) -> Result<Self> {
        Ok(BoundaryAut { t1: other.t1.compose(&self.t1)?, t2: other.t2.compose(&self.t2)? })
    }
}

/// Result of the triangular factorization `α = g₁ ∘ λ ∘ g₂`.
#[derive(Clone, PartialEq, Debug)]
pub struct Decomposition<S: Scalar> {
    pub g1: GlueAut<S>,
    pub lambda: QTrunc<S>,
    pub g2: GlueAut<S>,
}

impl<S: Scalar> GlueAut<S> {
    pub fn new(u: NodeElement<S>) -> Result<Self> {
        if !u.is_unit() {
            return Err(Error::NonUnit(format!("{u}")));
        }
        Ok(GlueAut { u })
    }

    pub fn identity(ctx: NodeContext) -> Self {
        GlueAut { u: NodeElement::one(ctx) }
    }

    /// The scalar automorphism `x₁ ↦ λx₁`, `x₂ ↦ λ⁻¹x₂`.
    pub fn scalar(ctx: NodeContext, lambda: QTrunc<S>) -> Result<Self> {
        Self::new(NodeElement::scalar(ctx, lambda))
    }

    pub fn unit(&self) -> &NodeElement<S> {
        &self.u
    }

    pub fn ctx(&self) -> NodeContext {
        self.u.ctx()
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_one()
    }

    /// Powers of `x₁u` and `x₂u⁻¹` up to the given degrees.
    fn substitution(&self, max1: usize, max2: usize) -> Result<Substitution<S>> {
        let ctx = self.ctx();
        let x1 = NodeElement::x1(ctx).mul(&self.u)?;
        let x2 = if max2 > 0 { NodeElement::x2(ctx).mul(&self.u.inverse()?)? } else { NodeElement::zero(ctx) };
        Ok(Substitution { p1: powers(&x1, max1)?, p2: powers(&x2, max2)? })
    }

    /// `α(m) = m(x₁u, x₂u⁻¹)`.
    pub fn apply(&self, m: &NodeElement<S>) -> Result<NodeElement<S>> {
        if m.ctx() != self.ctx() {
            return Err(Error::ContextMismatch);
        }
        let max1 = m.terms().map(|(d, _)| d).max().unwrap_or(0).max(0) as usize;
        let max2 = (-m.terms().map(|(d, _)| d).min().unwrap_or(0)).max(0) as usize;
        self.substitution(max1, max2)?.apply(m)
    }

    /// `(α∘β)(x₁) = x₁·u·α(v)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let v = self.apply(&other.u)?;
        Ok(GlueAut { u: self.u.mul(&v)? })
    }

    /// Solves `u·α(v) = 1` by the fixed point `v ← v + L⁻¹(1 − u·α(v))`,
    /// where `L` is the lowest-order part of `v ↦ u·α(v)`: it scales the
    /// coefficient of `x^d` by `c₀^{1+d}`. Each step raises the weight
    /// (x-degree plus twice the q-degree) of the residual.
    pub fn inverse(&self) -> Result<Self> {
        let ctx = self.ctx();
        let one = NodeElement::one(ctx);
        let lead = QTrunc::constant(self.u.c0().coeff(0).clone(), ctx.order());
        let lead_inv = lead.try_inverse()?;
        let mut v = NodeElement::scalar(ctx, lead_inv.clone());
        let sub = self.substitution(ctx.window(), ctx.window())?;
        let cap = 2 * (ctx.window() + 2 * ctx.order()) + 4;
        for _ in 0..cap {
            let r = one.sub(&self.u.mul(&sub.apply(&v)?)?)?;
            if r.is_zero() {
                return Ok(GlueAut { u: v });
            }
            let corr = r.map_coeffs(|d, c| {
                let e = 1 + d;
                let f = if e >= 0 { lead_inv.pow(e as u32) } else { lead.pow((-e) as u32) };
                c * &f
            });
            v = v.add(&corr)?;
        }
        Err(Error::NonConvergent("inverse fixed point did not settle".into()))
    }

    /// `κ(α) = σασ⁻¹` with `σ` swapping the branches; its unit is `σ(u)⁻¹`.
    pub fn kappa(&self) -> Result<Self> {
        Ok(GlueAut { u: self.u.swap().inverse()? })
    }

    /// `α₁(t₁) = t₁·u(t₁, q/t₁)` and `α₂(t₂) = t₂·u(q/t₂, t₂)⁻¹`.
    pub fn boundary_actions(&self) -> Result<BoundaryAut<S>> {
        let (i1, i2) = self.u.iota();
        Ok(BoundaryAut { t1: i1.shift(1), t2: i2.invert()?.shift(1) })
    }

    /// Factors `α = g₁ ∘ λ ∘ g₂` with `g₁` a unit in `1 + x₁R[[x₁]]`, `λ` a
    /// scalar and `g₂` a unit in `1 + x₂R[[x₂]]`.
    ///
    /// Repeatedly peel the residual `E = g₁⁻¹ ∘ α ∘ h⁻¹`: its unit
    /// `c₀ + A(x₁) + B(x₂)` factors modulo a higher power of q as
    /// `(1 + A/c₀)` followed by `(c₀ + B)`, which are absorbed into `g₁` and
    /// `h`. At `q = 0` one step is exact, so the loop ends after at most
    /// `N + 1` corrections.
    pub fn decompose(&self) -> Result<Decomposition<S>> {
        let ctx = self.ctx();
        let n = ctx.order();
        let k = ctx.window();
        let mut g1 = Self::identity(ctx);
        let mut h = Self::identity(ctx);
        for _ in 0..n + 3 {
            let e = g1.inverse()?.compose(self)?.compose(&h.inverse()?)?;
            if e.is_identity() {
                let lambda = h.u.c0().clone();
                // h = λ ∘ g₂ means w(x₂) = λ·u₂(x₂/λ), so u₂ⱼ = wⱼλ^{j−1}
                let b: Vec<QTrunc<S>> = (1..=k).map(|j| &h.u.b(j) * &lambda.pow(j as u32 - 1)).collect();
                let g2 = GlueAut::new(NodeElement::new(ctx, QTrunc::one(n), vec![], b))?;
                return Ok(Decomposition { g1, lambda, g2 });
            }
            let c0 = e.u.c0().clone();
            let c0_inv = c0.try_inverse()?;
            let a: Vec<QTrunc<S>> = (1..=k).map(|i| &e.u.a(i) * &c0_inv).collect();
            let b: Vec<QTrunc<S>> = (1..=k).map(|j| e.u.b(j)).collect();
            let d1 = GlueAut::new(NodeElement::new(ctx, QTrunc::one(n), a, vec![]))?;
            let d2 = GlueAut::new(NodeElement::new(ctx, c0, vec![], b))?;
            g1 = g1.compose(&d1)?;
            h = d2.compose(&h)?;
        }
        Err(Error::NonConvergent("decomposition did not settle".into()))
    }

    /// `a_λ`: `u(x₁, x₂) ↦ u(λx₁, x₂)` with coefficients in R fixed. This
    /// respects `x₁x₂ = q` only if the old `q` equals `λq'`, where `q'` is the
    /// node parameter of the target, so coefficients are rewritten through
    /// `q = λq'`.
    pub fn rescale(&self, lambda: &CoeffPoly<S>) -> Result<Self> {
        lambda.try_inverse()?;
        let u = self.u.map_coeffs(|d, c| {
            let c = c.rescale_q(lambda);
            if d > 0 {
                c.scale(&lambda.pow(d as u32))
            } else {
                c
            }
        });
        Self::new(u)
    }

    /// Pullback of a differential along `x₁ ↦ x₁u`, `x₂ ↦ x₂u⁻¹`.
    pub fn act_on_diff(&self, w: &NodeDiff<S>) -> Result<NodeDiff<S>> {
        let ctx = self.ctx();
        let new_x1 = NodeElement::x1(ctx).mul(&self.u)?;
        let new_x2 = NodeElement::x2(ctx).mul(&self.u.inverse()?)?;
        let (dx1, dx2) = (new_x1.d(), new_x2.d());
        let (f, g) = w.parts();
        dx1.mul_elem(&self.apply(&f)?)?.add(&dx2.mul_elem(&self.apply(&g)?)?)
    }

    /// `α(e) = U·e` with `U = 1 + u⁻¹(x₁∂₁ − x₂∂₂)u`.
    pub fn act_on_e(&self) -> Result<NodeElement<S>> {
        let ctx = self.ctx();
        NodeElement::one(ctx).add(&self.u.inverse()?.mul(&self.u.euler())?)
    }

    /// Determinant of the map induced on `[R·x₁dx₂ → R·e]`: the constant
    /// part of `U` over the `x₁dx₂`-component of `α(x₁dx₂)`.
    pub fn subcomplex_det(&self) -> Result<QTrunc<S>> {
        let ctx = self.ctx();
        let gen = NodeDiff::new(ctx, QTrunc::one(ctx.order()), vec![], vec![]);
        let s = self.act_on_diff(&gen)?.s().clone();
        let e0 = self.act_on_e()?.c0().clone();
        Ok(&e0 * &s.try_inverse()?)
    }
}

struct Substitution<S: Scalar> {
    p1: Vec<NodeElement<S>>,
    p2: Vec<NodeElement<S>>,
}

impl<S: Scalar> Substitution<S> {
    fn apply(&self, m: &NodeElement<S>) -> Result<NodeElement<S>> {
        let mut acc = NodeElement::zero(m.ctx());
        for (d, c) in m.terms() {
            let x = if d >= 0 { &self.p1[d as usize] } else { &self.p2[(-d) as usize] };
            acc.add_scaled(x, c);
        }
        Ok(acc)
    }
}

fn powers<S: Scalar>(x: &NodeElement<S>, max: usize) -> Result<Vec<NodeElement<S>>> {
    let mut out = vec![NodeElement::one(x.ctx())];
    for i in 1..=max {
        let next = out[i - 1].mul(x)?;
        out.push(next);
    }
    Ok(out)
}

/// A finite combination `Σ cₙ Mₙ` of the Witt basis, where `Mₙ = Lₙ` for
/// `n ≥ 0` and `M₋ₙ = qⁿL₋ₙ`.
#[derive(Clone, PartialEq, Debug)]
pub struct WittElt<S: Scalar> {
    n: usize,
    coeffs: BTreeMap<i32, QTrunc<S>>,
}

impl<S: Scalar> WittElt<S> {
    pub fn zero(n: usize) -> Self {
        WittElt { n, coeffs: BTreeMap::new() }
    }

    pub fn basis(n: usize, m: i32, c: QTrunc<S>) -> Self {
        let mut out = Self::zero(n);
        if !c.is_zero() {
            out.coeffs.insert(m, c);
        }
        out
    }

    /// Reads `Σ aᵢx₁ⁱ + Σ bⱼx₂ʲ` as `Σ aᵢMᵢ + Σ bⱼM₋ⱼ`.
    pub fn from_node(e: &NodeElement<S>) -> Self {
        let n = e.ctx().order();
        WittElt { n, coeffs: e.terms().map(|(d, c)| (d, c.clone())).collect() }
    }

    pub fn coeff(&self, m: i32) -> QTrunc<S> {
        self.coeffs.get(&m).cloned().unwrap_or_else(|| QTrunc::zero(self.n))
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &QTrunc<S>)> {
        self.coeffs.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<S: Scalar> fmt::Display for WittElt<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.coeffs.iter().enumerate() {
            let body = format!("{c}");
            let simple = c.coeffs().iter().filter(|p| !p.is_zero()).count() == 1
                && c.coeffs().iter().all(|p| p.len() <= 1);
            let (neg, mag) = match body.strip_prefix('-') {
                Some(r) if simple => (true, r.to_string()),
                _ => (false, body),
            };
            if k > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            if mag == "1" {
                write!(f, "M_{m}")?;
            } else if simple {
                write!(f, "{mag}·M_{m}")?;
            } else {
                write!(f, "({mag})·M_{m}")?;
            }
        }
        Ok(())
    }
}

/// Unit `1 + ε·xᵐ` realizing `Mₘ` over the dual numbers in `ε`.
fn witt_unit<S: Scalar>(ctx: NodeContext, m: i32, eps: &Sym) -> NodeElement<S> {
    let e = QTrunc::sym(eps, ctx.order());
    let t = if m == 0 { NodeElement::scalar(ctx, e) } else { NodeElement::monomial(ctx, m, e) };
    NodeElement::one(ctx).add(&t).expect("same context")
}

/// `[Mᵢ, Mⱼ]` from the group commutator of `1 + ε₁xⁱ` and `1 + ε₂xʲ`: the
/// `ε₁ε₂` part of the unit of `β∘α∘β⁻¹∘α⁻¹`.
pub fn witt_bracket<S: Scalar>(i: i32, j: i32, ctx: NodeContext) -> Result<WittElt<S>> {
    let need = i.unsigned_abs().max(j.unsigned_abs()).max((i + j).unsigned_abs()) as usize;
    if need > ctx.window() {
        return Err(Error::InsufficientWindow(format!(
            "bracket [M_{i}, M_{j}] needs K ≥ {need}, context has K = {}",
            ctx.window()
        )));
    }
    let (e1, e2) = (Sym::nilpotent("eps1"), Sym::nilpotent("eps2"));
    let a = GlueAut::new(witt_unit::<S>(ctx, i, &e1))?;
    let b = GlueAut::new(witt_unit::<S>(ctx, j, &e2))?;
    let comm = b.compose(&a)?.compose(&b.inverse()?)?.compose(&a.inverse()?)?;
    let mono = Monomial::from_factors([(e1, 1), (e2, 1)]).expect("distinct symbols");
    let part = comm.unit().map_coeffs(|_, c| {
        QTrunc::from_coeffs(c.coeffs().iter().map(|p| p.part_with(&mono)).collect(), ctx.order())
    });
    Ok(WittElt::from_node(&part))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Grading, Var};
    use num_rational::BigRational;

    type Q = QTrunc<BigRational>;
    type E = NodeElement<BigRational>;
    type G = GlueAut<BigRational>;

    fn ctx(n: usize, k: usize) -> NodeContext {
        NodeContext::new(n, k).unwrap()
    }

    fn r_unit(c: NodeContext) -> (Q, G) {
        let r = Q::sym(&Sym::constant("r"), c.order());
        let u = E::one(c).add(&E::x1(c).scale(&r)).unwrap();
        (r, G::new(u).unwrap())
    }

    #[test]
    fn self_composition_of_one_plus_rx() {
        let c = ctx(1, 3);
        let (r, a) = r_unit(c);
        let sq = a.compose(&a).unwrap();
        // u·α(u) = (1 + r x₁)(1 + r x₁(1 + r x₁)) = 1 + 2r x₁ + 2r² x₁² + r³ x₁³
        let want = E::new(
            c,
            Q::one(1),
            vec![r.scale_scalar(&BigRational::from_integer(2.into())), r.pow(2).scale_scalar(&BigRational::from_integer(2.into())), r.pow(3)],
            vec![],
        );
        assert_eq!(sq.unit(), &want);
    }

    #[test]
    fn boundary_actions_example() {
        let c = ctx(1, 4);
        let (r, a) = r_unit(c);
        let b = a.boundary_actions().unwrap();
        let t1 = Laurent::new(Var::X1, 1, Grading::Node, 5, [(1, Q::one(1)), (2, r.clone())]);
        let t2 = Laurent::new(Var::X2, 1, Grading::Node, 5, [(1, Q::one(1)), (0, -&(&Q::q(1) * &r))]);
        assert_eq!(b.t1, t1);
        assert_eq!(b.t2, t2);
    }

    #[test]
    fn inverse_and_kappa() {
        let c = ctx(2, 4);
        let (r, a) = r_unit(c);
        let inv = a.inverse().unwrap();
        assert!(a.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&a).unwrap().is_identity());
        let k = a.kappa().unwrap();
        let want = E::one(c).add(&E::x2(c).scale(&r)).unwrap().inverse().unwrap();
        assert_eq!(k.unit(), &want);
        assert_eq!(k.kappa().unwrap(), a);
    }

    #[test]
    fn brackets() {
        let c = ctx(3, 6);
        let w = witt_bracket::<BigRational>(1, -1, c).unwrap();
        assert_eq!(w, WittElt::basis(3, 0, Q::q(3).scale_scalar(&BigRational::from_integer(2.into()))));
        assert_eq!(format!("{w}"), "2·q·M_0");
        let w = witt_bracket::<BigRational>(2, 3, c).unwrap();
        assert_eq!(w, WittElt::basis(3, 5, -Q::one(3)));
        assert!(witt_bracket::<BigRational>(0, 0, c).unwrap().is_zero());
        assert!(witt_bracket::<BigRational>(4, 3, c).is_err());
    }

    #[test]
    fn decompose_mixed_unit() {
        let c = ctx(1, 4);
        let u = E::new(c, Q::one(1), vec![Q::one(1)], vec![Q::one(1)]);
        let a = G::new(u).unwrap();
        let d = a.decompose().unwrap();
        let lam = G::scalar(c, d.lambda.clone()).unwrap();
        assert_eq!(d.g1.compose(&lam.compose(&d.g2).unwrap()).unwrap(), a);
    }

    #[test]
    fn diff_action_example() {
        let c = ctx(2, 5);
        let (r, a) = r_unit(c);
        let ue = a.act_on_e().unwrap();
        let mut coeffs = vec![];
        for i in 1..=5u32 {
            let sign = if i % 2 == 1 { 1 } else { -1 };
            coeffs.push(r.pow(i).scale_scalar(&BigRational::from_integer(sign.into())));
        }
        assert_eq!(ue, E::new(c, Q::one(2), coeffs, vec![]));
        assert!(a.subcomplex_det().unwrap().is_one());
    }
}
