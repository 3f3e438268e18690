//! Series kernel: symbols, coefficient polynomials, q-truncation and
//! windowed Laurent series.

mod laurent;
mod poly;
mod qtrunc;
mod sym;

pub use laurent::{Grading, Laurent, Var};
pub use poly::CoeffPoly;
pub use qtrunc::QTrunc;
pub use sym::{Monomial, Sym, SymKind};
