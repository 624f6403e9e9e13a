//! Exact symbolic machinery for obstruction computations on smooth projective
//! hypersurfaces `X = V(F) ⊂ Pⁿ` of degree `n + 1`.
//!
//! The crate works entirely over `Q` with arbitrary-precision rationals:
//!
//! * [`poly`]: sparse Laurent polynomials, partial derivatives, a text parser.
//! * [`ideals`]: Buchberger's algorithm, normal forms, and the standing
//!   hypotheses on `F` (degree, admissible cover, Jacobian smoothness).
//! * [`cech`]: Čech cochains of `O_X` on the cover `(Uᵢ ∩ X)₁..ₙ`, reduction
//!   modulo `F`, the top coefficient functional, and cohomology dimensions.
//! * [`tangent`]: vector-field cochains modulo `(F, E)`, the generating
//!   deformation cocycle and truncated `H^q(T_X)`.
//! * [`obstruction`]: monomial unit cocycles of `O(m)|_X`, the log-differential
//!   pairing, nonvanishing certificates and Picard-group reports.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]

extern crate alloc;

pub mod cech;
mod complex;
mod error;
pub mod ideals;
pub mod linalg;
pub mod obstruction;
pub mod poly;
pub mod tangent;

pub use error::{Error, Result};
pub use poly::{Exponent, HomogeneousPoly, LaurentPoly, Rational};
