//! Univariate and sparse multivariate polynomials over finite fields.

mod multi;
mod roots;
mod uni;

pub use multi::{Homogeneity, Monomial, MultiPoly, PolyRing};
pub use roots::{roots, roots_in, RootSearch};
pub use uni::UniPoly;
