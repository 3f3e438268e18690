//! Exact formal-series kernel for plumbing coordinates at a separating
//! node: the node algebra `x₁x₂ = q`, its gluing group, bases of
//! differentials and the q-expansion of periods.

pub mod basis;
pub mod diff;
pub mod elliptic;
pub mod emit;
pub mod error;
pub mod group;
pub mod node;
pub mod period;
pub mod scalar;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use group::{witt_bracket, BoundaryAut, Decomposition, GlueAut, WittElt};
pub use node::{theta_det, theta_scaling, NodeContext, NodeDiff, NodeElement};
pub use series::{CoeffPoly, Grading, Laurent, Monomial, QTrunc, Sym, SymKind, Var};

pub use num_complex::Complex64;
pub use num_rational::BigRational;

/// Exact rational scalars.
pub type Rational = BigRational;
pub type Poly = CoeffPoly<Rational>;
pub type QSeries = QTrunc<Rational>;
pub type Series = Laurent<Rational>;

pub type PolyF64 = CoeffPoly<f64>;
pub type SeriesF64 = Laurent<f64>;
pub type SeriesC64 = Laurent<Complex64>;
