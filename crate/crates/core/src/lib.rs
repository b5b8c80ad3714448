//! Exact arithmetic toolkit for the genus-3 curve `y^2 = x^8 + 14x^4 + 1` and the
//! five-squares curve that covers it: torsion of the Jacobian, Riemann-Roch driven
//! enumeration of low-degree points, and pullback analysis.

pub mod appcurve;
pub mod arith;
pub mod curve;
pub mod divisor;
pub mod jacobian;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod rr;
pub mod search;
