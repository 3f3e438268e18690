//! Symbols and monomials of the coefficient ring.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// How a symbol behaves under multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymKind {
    /// A free polynomial variable.
    Constant,
    /// Square-zero: any monomial containing it twice vanishes.
    Nilpotent,
    /// An invertible variable; negative exponents are allowed and
    /// `λ·λ⁻¹` cancels at normalization.
    Unit,
}

/// A named generator of the coefficient ring. Identity is the name alone.
#[derive(Clone)]
pub struct Sym {
    name: Arc<str>,
    kind: SymKind,
}

impl Sym {
    pub fn new(name: &str, kind: SymKind) -> Self {
        Sym { name: Arc::from(name), kind }
    }

    pub fn constant(name: &str) -> Self {
        Self::new(name, SymKind::Constant)
    }

    pub fn nilpotent(name: &str) -> Self {
        Self::new(name, SymKind::Nilpotent)
    }

    pub fn unit(name: &str) -> Self {
        Self::new(name, SymKind::Unit)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> SymKind {
        self.kind
    }
}

impl PartialEq for Sym {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.name, &other.name) || self.name == other.name
    }
}

impl Eq for Sym {}

impl PartialOrd for Sym {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Sym {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.name, &other.name) {
            return Ordering::Equal;
        }
        self.name.cmp(&other.name)
    }
}

impl Hash for Sym {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state)
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A product of symbol powers, sorted by symbol name with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Sym, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(sym: Sym) -> Self {
        Monomial(vec![(sym, 1)])
    }

    /// Builds a monomial from arbitrary factors. Returns `None` when the
    /// product vanishes (a nilpotent symbol squared).
    pub fn from_factors(factors: impl IntoIterator<Item = (Sym, i32)>) -> Option<Self> {
        let mut m = Monomial::one();
        for (s, e) in factors {
            if e == 0 {
                continue;
            }
            if e < 0 && s.kind() != SymKind::Unit {
                panic!("negative exponent on non-invertible symbol {s}");
            }
            m = m.mul(&Monomial(vec![(s, e)]))?;
        }
        Some(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Sym, i32)] {
        &self.0
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, sym: &Sym) -> i32 {
        self.0
            .iter()
            .find(|(s, _)| s == sym)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn has_nilpotent(&self) -> bool {
        self.0.iter().any(|(s, _)| s.kind() == SymKind::Nilpotent)
    }

    pub fn only_units(&self) -> bool {
        self.0.iter().all(|(s, _)| s.kind() == SymKind::Unit)
    }

    pub fn mul(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.is_empty() {
            return Some(self.clone());
        }
        if self.0.is_empty() {
            return Some(other.clone());
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = &self.0[i];
            let (b, eb) = &other.0[j];
            match a.cmp(b) {
                Ordering::Less => {
                    out.push((a.clone(), *ea));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b.clone(), *eb));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = ea + eb;
                    if a.kind() == SymKind::Nilpotent && e >= 2 {
                        return None;
                    }
                    if e != 0 {
                        out.push((a.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Some(Monomial(out))
    }

    /// Inverse of a monomial built from unit symbols only.
    pub fn inverse(&self) -> Option<Monomial> {
        if !self.only_units() {
            return None;
        }
        Some(Monomial(self.0.iter().map(|(s, e)| (s.clone(), -e)).collect()))
    }

    /// Removes `sym` from the monomial, returning its exponent.
    pub fn split_off(&self, sym: &Sym) -> (i32, Monomial) {
        let mut rest = Vec::with_capacity(self.0.len());
        let mut e = 0;
        for (s, x) in &self.0 {
            if s == sym {
                e = *x;
            } else {
                rest.push((s.clone(), *x));
            }
        }
        (e, Monomial(rest))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on symbol names (then exponents), ties broken by total degree.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            let c = a.0.cmp(&b.0).then(b.1.cmp(&a.1));
            if c != Ordering::Equal {
                return c;
            }
        }
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.degree().cmp(&other.degree()))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (s, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("·")?;
            }
            if *e == 1 {
                write!(f, "{s}")?;
            } else {
                write!(f, "{s}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nilpotent_square_vanishes() {
        let e = Monomial::var(Sym::nilpotent("eps"));
        assert!(e.mul(&e).is_none());
        let c = Monomial::var(Sym::constant("c"));
        assert_eq!(c.mul(&c).unwrap().degree(), 2);
    }

    #[test]
    fn unit_cancels() {
        let lam = Sym::unit("lam");
        let m = Monomial::var(lam.clone());
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_one());
        assert_eq!(inv.exponent(&lam), -1);
    }

    #[test]
    fn ordering_is_total_and_canonical() {
        let a = Monomial::from_factors([(Sym::constant("b"), 1), (Sym::constant("a"), 2)]).unwrap();
        let b = Monomial::from_factors([(Sym::constant("a"), 2), (Sym::constant("b"), 1)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.factors()[0].0.name(), "a");
    }
}
