//! Multivariate polynomials over ℚ with interval enclosures and Gröbner bases.

pub mod groebner;
pub mod interp;
pub mod interval;
pub mod polynomial;

pub use groebner::{buchberger, buchberger_limited, normal_form, variety_only_origin, GroebnerBasis, MonomialOrder};
pub use interp::{interpolate_homogeneous, interpolate_homogeneous_many};
pub use interval::{centered_enclosure, interval_eval, Interval, IntervalBox};
pub use polynomial::{monomials_of_degree, Monomial, Polynomial};
