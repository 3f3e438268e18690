//! Formal combinations of basis differentials `α[i]`, `ω[−n]` on one curve
//! and their classes in H¹.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{CoeffPoly, Grading, Laurent, QTrunc, Sym, Var};

/// A basis differential: `α[i]` (regular) or `ω[−n]` (pole of order `n ≥ 2`).
/// Ordering puts every `α` before every `ω`, each ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Alpha(usize),
    Omega(usize),
}

impl Label {
    /// Text form; `primed` marks the second curve.
    pub fn render(self, primed: bool) -> String {
        let p = if primed { "'" } else { "" };
        match self {
            Label::Alpha(i) => format!("α{p}[{i}]"),
            Label::Omega(n) => format!("ω{p}[-{n}]"),
        }
    }

    /// ASCII form used in JSON documents.
    pub fn key(self, primed: bool) -> String {
        let p = if primed { "'" } else { "" };
        match self {
            Label::Alpha(i) => format!("alpha{p}[{i}]"),
            Label::Omega(n) => format!("omega{p}[-{n}]"),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// A curve with a chosen basis of differentials regular away from the
/// marked point, written as `f(z)dz` in the canonical parameter `z`.
pub trait DiffBasis<S: Scalar> {
    fn genus(&self) -> usize;

    /// Expansion of the coefficient function of `label`, known through `z^k`.
    fn expansion(&self, label: Label, k: i32) -> Result<Laurent<S>>;

    /// Class of a single basis differential in H¹.
    fn reduce(&self, label: Label, n: usize) -> Result<CohomClass<S>>;

    /// Largest window `expansion` can provide for `label`.
    fn max_window(&self, label: Label) -> i32;
}

/// `Σ c_ℓ·ℓ` over basis labels, with coefficients truncated in q.
#[derive(Clone, PartialEq, Debug)]
pub struct DiffCombo<S: Scalar> {
    n: usize,
    terms: BTreeMap<Label, QTrunc<S>>,
}

impl<S: Scalar> DiffCombo<S> {
    pub fn zero(n: usize) -> Self {
        DiffCombo { n, terms: BTreeMap::new() }
    }

    pub fn single(n: usize, label: Label, c: QTrunc<S>) -> Self {
        let mut out = Self::zero(n);
        out.add_term(label, &c);
        out
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Label, QTrunc<S>)>) -> Self {
        let mut out = Self::zero(n);
        for (l, c) in terms {
            out.add_term(l, &c);
        }
        out
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, label: Label, c: &QTrunc<S>) {
        let entry = self.terms.entry(label).or_insert_with(|| QTrunc::zero(self.n));
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&label);
        }
    }

    pub fn coeff(&self, label: Label) -> QTrunc<S> {
        self.terms.get(&label).cloned().unwrap_or_else(|| QTrunc::zero(self.n))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Label, &QTrunc<S>)> {
        self.terms.iter().map(|(l, c)| (*l, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in o.terms() {
            out.add_term(l, c);
        }
        out
    }

    pub fn scale(&self, c: &QTrunc<S>) -> Self {
        Self::from_terms(self.n, self.terms().map(|(l, x)| (l, x * c)))
    }

    pub fn map_coeffs(&self, f: impl Fn(&QTrunc<S>) -> QTrunc<S>) -> Self {
        Self::from_terms(self.n, self.terms().map(|(l, x)| (l, f(x))))
    }

    pub fn substitute(&self, f: &dyn Fn(&Sym) -> Option<CoeffPoly<S>>) -> Self {
        self.map_coeffs(|c| c.substitute(f))
    }

    /// Keeps only q-degrees below `m`.
    pub fn truncate(&self, m: usize) -> Self {
        self.map_coeffs(|c| c.truncate(m))
    }

    /// Local expansion `Σ c_ℓ·f_ℓ(z)` in the given variable, known through `z^k`.
    pub fn expand(&self, basis: &dyn DiffBasis<S>, var: Var, k: i32) -> Result<Laurent<S>> {
        let mut acc = Laurent::zero(var, self.n, Grading::Plain, k);
        for (l, c) in self.terms() {
            let e = basis.expansion(l, k)?.with_order(self.n).with_var(var);
            acc = acc.add(&e.scale(c))?;
        }
        Ok(acc)
    }

    /// Class in H¹, reducing every label through `basis`.
    pub fn reduce(&self, basis: &dyn DiffBasis<S>) -> Result<CohomClass<S>> {
        let mut acc = CohomClass::zero(self.n, basis.genus());
        for (l, c) in self.terms() {
            let r = basis.reduce(l, self.n)?;
            acc = acc.add(&r.scale(c));
        }
        Ok(acc)
    }
}

/// Class in H¹ on the basis `α[0..g−1]`, `ω[−2..−g−1]`.
#[derive(Clone, PartialEq, Debug)]
pub struct CohomClass<S: Scalar> {
    genus: usize,
    combo: DiffCombo<S>,
}

impl<S: Scalar> CohomClass<S> {
    pub fn zero(n: usize, genus: usize) -> Self {
        CohomClass { genus, combo: DiffCombo::zero(n) }
    }

    /// Checks that every label lies in the H¹ basis of the given genus.
    pub fn new(genus: usize, combo: DiffCombo<S>) -> Result<Self> {
        for (l, _) in combo.terms() {
            if !Self::in_basis(genus, l) {
                return Err(Error::UnknownLabel(format!("{l} is not an H¹ basis label for genus {genus}")));
            }
        }
        Ok(CohomClass { genus, combo })
    }

    pub fn in_basis(genus: usize, l: Label) -> bool {
        match l {
            Label::Alpha(i) => i < genus,
            Label::Omega(n) => (2..=genus + 1).contains(&n),
        }
    }

    /// The ordered H¹ basis.
    pub fn basis(genus: usize) -> Vec<Label> {
        (0..genus).map(Label::Alpha).chain((2..=genus + 1).map(Label::Omega)).collect()
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn combo(&self) -> &DiffCombo<S> {
        &self.combo
    }

    pub fn coeff(&self, l: Label) -> QTrunc<S> {
        self.combo.coeff(l)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Label, &QTrunc<S>)> {
        self.combo.terms()
    }

    pub fn is_zero(&self) -> bool {
        self.combo.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        CohomClass { genus: self.genus, combo: self.combo.add(&o.combo) }
    }

    pub fn scale(&self, c: &QTrunc<S>) -> Self {
        CohomClass { genus: self.genus, combo: self.combo.scale(c) }
    }

    pub fn map_coeffs(&self, f: impl Fn(&QTrunc<S>) -> QTrunc<S>) -> Self {
        CohomClass { genus: self.genus, combo: self.combo.map_coeffs(f) }
    }

    pub fn substitute(&self, f: &dyn Fn(&Sym) -> Option<CoeffPoly<S>>) -> Self {
        self.map_coeffs(|c| c.substitute(f))
    }

    pub fn truncate(&self, m: usize) -> Self {
        self.map_coeffs(|c| c.truncate(m))
    }

    /// The `q^j` coefficient as an order-zero class.
    pub fn grade(&self, j: usize) -> CohomClass<S> {
        CohomClass {
            genus: self.genus,
            combo: DiffCombo::from_terms(0, self.terms().map(|(l, c)| (l, QTrunc::constant(c.coeff(j).clone(), 0)))),
        }
    }

    pub fn render(&self, primed: bool) -> String {
        render_terms(self.terms(), primed)
    }
}

impl<S: Scalar> fmt::Display for DiffCombo<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(self.terms(), false))
    }
}

impl<S: Scalar> fmt::Display for CohomClass<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

pub(crate) fn render_terms<'a, S: Scalar>(terms: impl Iterator<Item = (Label, &'a QTrunc<S>)>, primed: bool) -> String {
    let parts: Vec<String> = terms
        .map(|(l, c)| {
            if c.is_one() {
                l.render(primed)
            } else {
                format!("({c})·{}", l.render(primed))
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Residual of an identity between Laurent expansions on a finite window.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport<S: Scalar> {
    pub residual: Laurent<S>,
    /// Highest exponent on which the residual is known.
    pub window: i32,
}

impl<S: Scalar> IdentityReport<S> {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}
