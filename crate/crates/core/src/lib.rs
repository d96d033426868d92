//! Dirichlet series with Thue–Morse and paperfolding coefficients, and a
//! verification suite for the zeta identities they satisfy.
//!
//! All analytic values are [`realkernel::Bracket`]s: a midpoint and a radius
//! that provably encloses the exact value, including series truncation and
//! rounding error. Coefficients are exact rationals.

pub mod autoseq;
pub mod cli;
pub mod exactnum;
pub mod identities;
pub mod realkernel;
pub mod zetalib;
