//! q-expansion of the period map near a separating node: global sections
//! of the dualizing sheaf solved order by order in q, their closed forms at
//! low order, the graded pieces `Πⱼ`, and the genus-one recursion.

use std::collections::BTreeMap;

use crate::basis::GenusData;
use crate::diff::{CohomClass, DiffBasis, DiffCombo, Label};
use crate::elliptic::{c_sym, Tag, WpContext};
use crate::error::{Error, Result};
use crate::scalar::{binomial, Scalar};
use crate::series::{CoeffPoly, Grading, Laurent, QTrunc, Sym, Var};

/// One of the two curves being glued.
#[derive(Debug, Clone)]
pub enum CurveSide<S: Scalar> {
    Elliptic(WpContext<S>),
    Symbolic(GenusData),
}

impl<S: Scalar> CurveSide<S> {
    fn basis(&self) -> &dyn DiffBasis<S> {
        match self {
            CurveSide::Elliptic(c) => c,
            CurveSide::Symbolic(g) => g,
        }
    }

    pub fn genus(&self) -> usize {
        self.basis().genus()
    }
}

impl<S: Scalar> DiffBasis<S> for CurveSide<S> {
    fn genus(&self) -> usize {
        self.basis().genus()
    }

    fn expansion(&self, label: Label, k: i32) -> Result<Laurent<S>> {
        self.basis().expansion(label, k)
    }

    fn reduce(&self, label: Label, n: usize) -> Result<CohomClass<S>> {
        self.basis().reduce(label, n)
    }

    fn max_window(&self, label: Label) -> i32 {
        self.basis().max_window(label)
    }
}

/// Two pointed curves glued along `x₁x₂ = q`, worked modulo `q^{N+1}`.
#[derive(Debug, Clone)]
pub struct GluingDatum<S: Scalar> {
    pub c1: CurveSide<S>,
    pub c2: CurveSide<S>,
    pub n: usize,
}

impl<S: Scalar> GluingDatum<S> {
    pub fn new(c1: CurveSide<S>, c2: CurveSide<S>, n: usize) -> Result<Self> {
        if let (CurveSide::Symbolic(a), CurveSide::Symbolic(b)) = (&c1, &c2) {
            if a.primed() == b.primed() {
                return Err(Error::InvalidArgument("the two sides need distinct symbol namespaces".into()));
            }
        }
        if let (CurveSide::Elliptic(a), CurveSide::Elliptic(b)) = (&c1, &c2) {
            if a.tag() == b.tag() && !matches!(a.tag(), Tag::Numeric(_)) {
                return Err(Error::InvalidArgument("the two sides need distinct symbol namespaces".into()));
            }
        }
        Ok(GluingDatum { c1, c2, n })
    }

    /// Two generic curves of genus `g1`, `g2` with free expansion symbols.
    pub fn symbolic(g1: usize, g2: usize, n: usize) -> Result<Self> {
        let tail = crate::basis::DEFAULT_TAIL.max(n + 1);
        Self::new(
            CurveSide::Symbolic(GenusData::new(g1, false, tail)?),
            CurveSide::Symbolic(GenusData::new(g2, true, tail)?),
            n,
        )
    }

    /// Two elliptic curves with free coefficients `cᵢ(τ₁)`, `cᵢ(τ₂)`.
    pub fn elliptic(n: usize) -> Self {
        GluingDatum {
            c1: CurveSide::Elliptic(WpContext::symbolic(Tag::Tau1, i32::MAX / 4)),
            c2: CurveSide::Elliptic(WpContext::symbolic(Tag::Tau2, i32::MAX / 4)),
            n,
        }
    }

    pub fn swapped(&self) -> Self {
        GluingDatum { c1: self.c2.clone(), c2: self.c1.clone(), n: self.n }
    }

    pub fn with_order(&self, n: usize) -> Self {
        GluingDatum { n, ..self.clone() }
    }
}

/// `(ω₁, φ₁(x₁), ω₂, φ₂(x₂))` satisfying
/// `ω₁ = φ₁dx₁ − qφ₂(q/x₁)dx₁/x₁²` and the same with the sides exchanged.
#[derive(Debug, Clone, PartialEq)]
pub struct GlobalSection<S: Scalar> {
    pub omega1: DiffCombo<S>,
    pub phi1: Laurent<S>,
    pub omega2: DiffCombo<S>,
    pub phi2: Laurent<S>,
}

impl<S: Scalar> GlobalSection<S> {
    /// Both gluing residuals through `x^N`; zero for a genuine section.
    pub fn gluing_residual(&self, datum: &GluingDatum<S>) -> Result<(Laurent<S>, Laurent<S>)> {
        let w = datum.n as i32;
        let r1 = self.omega1.expand(&datum.c1, Var::X1, w)?.sub(&self.phi1)?.sub(&polar_image(&self.phi2, Var::X1)?)?;
        let r2 = self.omega2.expand(&datum.c2, Var::X2, w)?.sub(&self.phi2)?.sub(&polar_image(&self.phi1, Var::X2)?)?;
        Ok((r1, r2))
    }

    pub fn swapped(&self) -> Self {
        GlobalSection {
            omega1: self.omega2.clone(),
            phi1: self.phi2.with_var(Var::X1),
            omega2: self.omega1.clone(),
            phi2: self.phi1.with_var(Var::X2),
        }
    }
}

/// `−qφ(q/x)/x²` written in `var`.
fn polar_image<S: Scalar>(phi: &Laurent<S>, var: Var) -> Result<Laurent<S>> {
    Ok(phi.subst_q_over_x()?.scale(&QTrunc::q(phi.order())).neg().shift(-2).with_var(var))
}

/// The unique `Σ_{m≥2} c_m ω[−m]` whose polar part is `p`.
fn lambda_for<S: Scalar>(p: &Laurent<S>) -> Result<DiffCombo<S>> {
    let mut out = DiffCombo::zero(p.order());
    for (e, c) in p.terms() {
        match e {
            e if e <= -2 => out.add_term(Label::Omega((-e) as usize), c),
            e if e < 0 => return Err(Error::InvalidArgument(format!("polar target has a term x^{e}"))),
            _ => {}
        }
    }
    Ok(out)
}

fn check_seed<S: Scalar>(side: &CurveSide<S>, i: usize) -> Result<()> {
    if i >= side.genus() {
        return Err(Error::InvalidArgument(format!("seed α[{i}] outside genus {}", side.genus())));
    }
    Ok(())
}

/// The unique global section with `ω₁ ≡ α[i]` modulo `qΛ₁` and `ω₂ ≡ 0`
/// modulo `qΛ₂`, solved one q-order per pass: polar parts come from the
/// opposite side's φ, the Λ-combination is read off them, and the regular
/// parts of the new expansions become the next φ.
pub fn solve_section<S: Scalar>(datum: &GluingDatum<S>, i: usize) -> Result<GlobalSection<S>> {
    check_seed(&datum.c1, i)?;
    let n = datum.n;
    let w = n as i32;
    let seed = DiffCombo::single(n, Label::Alpha(i), QTrunc::one(n));
    let mut sec = GlobalSection {
        phi1: seed.expand(&datum.c1, Var::X1, w)?.regular_part(),
        omega1: seed.clone(),
        omega2: DiffCombo::zero(n),
        phi2: Laurent::zero(Var::X2, n, Grading::Plain, w),
    };
    for _ in 0..=n + 1 {
        let omega1 = seed.add(&lambda_for(&polar_image(&sec.phi2, Var::X1)?)?);
        let omega2 = lambda_for(&polar_image(&sec.phi1, Var::X2)?)?;
        let next = GlobalSection {
            phi1: omega1.expand(&datum.c1, Var::X1, w)?.regular_part(),
            phi2: omega2.expand(&datum.c2, Var::X2, w)?.regular_part(),
            omega1,
            omega2,
        };
        if next == sec {
            return Ok(sec);
        }
        sec = next;
    }
    Err(Error::InvalidArgument(format!("section did not stabilize within {} passes", n + 2)))
}

fn symbolic_pair<S: Scalar>(datum: &GluingDatum<S>) -> Result<(GenusData, GenusData)> {
    match (&datum.c1, &datum.c2) {
        (CurveSide::Symbolic(a), CurveSide::Symbolic(b)) => Ok((*a, *b)),
        _ => Err(Error::InvalidArgument("closed forms need symbolic sides".into())),
    }
}

/// Closed form of the section seeded by `α[i]`, modulo `q^{g₁+g₂+2}`:
///
/// `ω₁ ≡ α[i] + Σ_{n=0}^{g₁−i−1} q^{i+g₂+2+n} ω′ₙ[−i−2]·ω[−g₂−2−n]`,
/// `ω₂ ≡ −q^{i+1}ω′[−i−2] − Σ_{n=0}^{g₂} q^{g₁+1+n} αₙ[i]·ω′[−g₁−2−n]`.
///
/// The result is at q-order `g₁+g₂+1` regardless of `datum.n`.
pub fn closed_phi1<S: Scalar>(datum: &GluingDatum<S>, i: usize) -> Result<GlobalSection<S>> {
    let (d1, d2) = symbolic_pair(datum)?;
    let (g1, g2) = (d1.genus(), d2.genus());
    if i >= g1 {
        return Err(Error::InvalidArgument(format!("index {i} outside 0..{g1}")));
    }
    let n = g1 + g2 + 1;
    let mono = |p: CoeffPoly<S>, k: usize| QTrunc::monomial(p, k, n);
    let mut omega1 = DiffCombo::single(n, Label::Alpha(i), QTrunc::one(n));
    for m in 0..g1 - i {
        omega1.add_term(Label::Omega(g2 + 2 + m), &mono(d2.omega(m, i + 2), i + g2 + 2 + m));
    }
    let mut omega2 = DiffCombo::single(n, Label::Omega(i + 2), mono(-CoeffPoly::one(), i + 1));
    for m in 0..=g2 {
        omega2.add_term(Label::Omega(g1 + 2 + m), &mono(-d1.alpha::<S>(m, i), g1 + 1 + m));
    }
    let datum = datum.with_order(n);
    let w = n as i32;
    Ok(GlobalSection {
        phi1: omega1.expand(&datum.c1, Var::X1, w)?.regular_part(),
        phi2: omega2.expand(&datum.c2, Var::X2, w)?.regular_part(),
        omega1,
        omega2,
    })
}

/// Which curve a basis label lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn primed(self) -> bool {
        self == Side::Two
    }
}

/// `Π = Π₀ + qΠ₁ + …` on the bases `(α[·], α′[·])` → `(α[·], ω[−·], α′[·], ω′[−·])`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodExpansion<S: Scalar> {
    pub n: usize,
    pub rows: Vec<(Side, Label)>,
    pub cols: Vec<(Side, Label)>,
    /// `entries[r][c]`, each truncated modulo `q^{N+1}`.
    pub entries: Vec<Vec<QTrunc<S>>>,
}

impl<S: Scalar> PeriodExpansion<S> {
    /// The matrix `Πⱼ`.
    pub fn grade(&self, j: usize) -> Vec<Vec<CoeffPoly<S>>> {
        self.entries.iter().map(|row| row.iter().map(|c| c.coeff(j).clone()).collect()).collect()
    }

    /// The image of one seed as a pair of classes.
    pub fn row_classes(&self, r: usize) -> Result<(CohomClass<S>, CohomClass<S>)> {
        let g1 = self.cols.iter().filter(|(s, l)| *s == Side::One && matches!(l, Label::Alpha(_))).count();
        let g2 = self.cols.iter().filter(|(s, l)| *s == Side::Two && matches!(l, Label::Alpha(_))).count();
        let mut a = DiffCombo::zero(self.n);
        let mut b = DiffCombo::zero(self.n);
        for ((side, l), c) in self.cols.iter().zip(&self.entries[r]) {
            match side {
                Side::One => a.add_term(*l, c),
                Side::Two => b.add_term(*l, c),
            }
        }
        Ok((CohomClass::new(g1, a)?, CohomClass::new(g2, b)?))
    }
}

fn pair_classes<S: Scalar>(datum: &GluingDatum<S>, sec: &GlobalSection<S>) -> Result<(CohomClass<S>, CohomClass<S>)> {
    Ok((sec.omega1.reduce(&datum.c1)?, sec.omega2.reduce(&datum.c2)?))
}

/// Solves every seed on both sides and reduces the sections to H¹.
pub fn pi_graded<S: Scalar>(datum: &GluingDatum<S>) -> Result<PeriodExpansion<S>> {
    let (g1, g2) = (datum.c1.genus(), datum.c2.genus());
    let cols: Vec<(Side, Label)> = CohomClass::<S>::basis(g1)
        .into_iter()
        .map(|l| (Side::One, l))
        .chain(CohomClass::<S>::basis(g2).into_iter().map(|l| (Side::Two, l)))
        .collect();
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    let swapped = datum.swapped();
    for (side, g) in [(Side::One, g1), (Side::Two, g2)] {
        for i in 0..g {
            let (a, b) = match side {
                Side::One => pair_classes(datum, &solve_section(datum, i)?)?,
                Side::Two => {
                    let (b, a) = pair_classes(&swapped, &solve_section(&swapped, i)?)?;
                    (a, b)
                }
            };
            rows.push((side, Label::Alpha(i)));
            entries.push(
                cols.iter()
                    .map(|(s, l)| match s {
                        Side::One => a.coeff(*l),
                        Side::Two => b.coeff(*l),
                    })
                    .collect(),
            );
        }
    }
    Ok(PeriodExpansion { n: datum.n, rows, cols, entries })
}

/// `Πⱼ(α[i], 0) = (ω′_{j−i−g₂−2}[−i−2]·ω[−j+i], −δ_{j,i+1}ω′[−i−2] − α_{j−g₁−1}[i]·ω′[−j−1])`,
/// terms with a negative index dropped, reduced to H¹.
pub fn pi_j_closed<S: Scalar>(g1: usize, g2: usize, j: usize, i: usize) -> Result<(CohomClass<S>, CohomClass<S>)> {
    if j < 1 || j > g1 + g2 + 1 || i >= g1 {
        return Err(Error::InvalidArgument(format!("pi_j_closed needs 1 <= j <= {} and i < {g1}", g1 + g2 + 1)));
    }
    let tail = crate::basis::DEFAULT_TAIL;
    let (d1, d2) = (GenusData::new(g1, false, tail)?, GenusData::new(g2, true, tail)?);
    let one = |p: CoeffPoly<S>| QTrunc::constant(p, 0);
    let mut a = DiffCombo::zero(0);
    if let Some(m) = j.checked_sub(i + g2 + 2) {
        a.add_term(Label::Omega(j - i), &one(d2.omega(m, i + 2)));
    }
    let mut b = DiffCombo::zero(0);
    if j == i + 1 {
        b.add_term(Label::Omega(i + 2), &one(-CoeffPoly::one()));
    }
    if let Some(m) = j.checked_sub(g1 + 1) {
        b.add_term(Label::Omega(j + 1), &one(-d1.alpha::<S>(m, i)));
    }
    Ok((a.reduce(&d1)?, b.reduce(&d2)?))
}

/// The series `a₂ₙ(q)`, `b₂ₙ(q)` of the genus-one section seeded by `dx₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct ABSeries<S: Scalar> {
    pub n: usize,
    pub a: BTreeMap<usize, QTrunc<S>>,
    pub b: BTreeMap<usize, QTrunc<S>>,
}

impl<S: Scalar> ABSeries<S> {
    pub fn a(&self, k: usize) -> QTrunc<S> {
        self.a.get(&k).cloned().unwrap_or_else(|| QTrunc::zero(self.n))
    }

    pub fn b(&self, k: usize) -> QTrunc<S> {
        self.b.get(&k).cloned().unwrap_or_else(|| QTrunc::zero(self.n))
    }
}

fn cq<S: Scalar>(i: usize, tag: Tag, n: usize) -> QTrunc<S> {
    if i == 0 || i % 2 == 1 {
        return QTrunc::zero(n);
    }
    QTrunc::constant(CoeffPoly::sym(&c_sym(i, tag)), n)
}

/// Solves, q-adically from `a₂ = 0`,
///
/// `a₂ₙ = q^{2n}[c_{2n−2}(τ₂) + Σ_{m≥2} b₂ₘ·C(2m+2n−4, 2n−2)·c_{2m+2n−4}(τ₂)/(2m−1)]`,
/// `b₂ₙ = q^{2n−2} Σ_{m≥2} a₂ₘ·C(2m+2n−4, 2n−2)·c_{2m+2n−4}(τ₁)/(2m−1)`,
///
/// modulo `q^{N+1}`.
pub fn genus1_ab<S: Scalar>(n: usize) -> ABSeries<S> {
    let mut cur = ABSeries { n, a: BTreeMap::new(), b: BTreeMap::new() };
    let top = n / 2 + 1;
    let kernel = |k: usize, m: usize, tag: Tag| -> QTrunc<S> {
        let c = cq::<S>(2 * m + 2 * k - 4, tag, n);
        c.scale_scalar(&(binomial::<S>((2 * m + 2 * k - 4) as i64, (2 * k - 2) as i64) / S::from_int(2 * m as i64 - 1)))
    };
    for _ in 0..=n + 1 {
        let mut next = ABSeries { n, a: BTreeMap::new(), b: BTreeMap::new() };
        for k in 2..=top {
            let mut sa = cq::<S>(2 * k - 2, Tag::Tau2, n);
            let mut sb = QTrunc::zero(n);
            for m in 2..=top {
                sa = &sa + &(&cur.b(2 * m) * &kernel(k, m, Tag::Tau2));
                sb = &sb + &(&cur.a(2 * m) * &kernel(k, m, Tag::Tau1));
            }
            let a = sa.shift(2 * k);
            let b = sb.shift(2 * k - 2);
            if !a.is_zero() {
                next.a.insert(2 * k, a);
            }
            if !b.is_zero() {
                next.b.insert(2 * k, b);
            }
        }
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

/// `Π(dx₁, 0) = ([1 − Σ a₂ₙc_{2n−2}(τ₁)/(2n−1)]dx₁, −qω[−2] + q[Σ b₂ₙc_{2n−2}(τ₂)/(2n−1)]dx₂)`.
pub fn genus1_pi<S: Scalar>(n: usize) -> Result<(CohomClass<S>, CohomClass<S>)> {
    let ab = genus1_ab::<S>(n);
    let mut first = QTrunc::one(n);
    for (k, a) in &ab.a {
        let w = cq::<S>(k - 2, Tag::Tau1, n).scale_scalar(&(S::one() / S::from_int(*k as i64 - 1)));
        first = &first - &(a * &w);
    }
    let mut second = QTrunc::zero(n);
    for (k, b) in &ab.b {
        let w = cq::<S>(k - 2, Tag::Tau2, n).scale_scalar(&(S::one() / S::from_int(*k as i64 - 1)));
        second = &second + &(b * &w);
    }
    let c1 = CohomClass::new(1, DiffCombo::single(n, Label::Alpha(0), first))?;
    let mut c2 = DiffCombo::single(n, Label::Alpha(0), second.shift(1));
    c2.add_term(Label::Omega(2), &QTrunc::q(n).scale_scalar(&-S::one()));
    Ok((c1, CohomClass::new(1, c2)?))
}

/// Exchanges the `τ₁` and `τ₂` namespaces of the genus-one constants.
pub fn swap_tau<S: Scalar>(s: &Sym) -> Option<CoeffPoly<S>> {
    let name = s.name();
    let idx: usize = name.strip_prefix('c')?.split_once('(')?.0.parse().ok()?;
    let tag = if name.ends_with("(τ1)") {
        Tag::Tau2
    } else if name.ends_with("(τ2)") {
        Tag::Tau1
    } else {
        return None;
    };
    Some(CoeffPoly::sym(&c_sym(idx, tag)))
}

/// Values of the genus-one symbols `αₙ[0]`, `ωₙ[−j]` (unprimed on the
/// `τ₁` curve, primed on the `τ₂` curve) in terms of the free `cᵢ(τ)`.
pub fn genus1_specialization<S: Scalar>() -> impl Fn(&Sym) -> Option<CoeffPoly<S>> + 'static {
    let one = GenusData::new(1, false, 0).expect("genus one").elliptic_values(&WpContext::<S>::symbolic(Tag::Tau1, i32::MAX / 4));
    let two = GenusData::new(1, true, 0).expect("genus one").elliptic_values(&WpContext::<S>::symbolic(Tag::Tau2, i32::MAX / 4));
    move |s: &Sym| one(s).or_else(|| two(s))
}
