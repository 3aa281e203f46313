//! Computational toolkit for maximally writhed links in real projective space.
//!
//! * [`braid`]: braid words, permutation braids, left normal forms and the
//!   generator-permutation conjugator.
//! * [`closure`]: projective braid closures, their lifts to the 3-sphere and
//!   linking matrices.
//! * [`torus`]: projective torus links `T_proj(p, q)` and their braids.
//! * [`mw`]: the model links `W_g(a_0, ..., a_g)`.
//! * [`lines`]: exact-arithmetic rigid isotopies of positively linked lines.
//! * [`tangent`]: plane sections of the tangent surface of the symmetric knot.
//! * [`checker`]: certificates for the braid characterizations of `T_proj(d, d-2)`.
//!
//! Numeric code is generic over the scalar: [`lines`] over any ordered field
//! (exact rationals in practice), [`tangent`] over `f32`/`f64`. The aliases
//! below fix the scalar types used by the command-line front end.

pub mod acceptance;
pub mod braid;
pub mod checker;
pub mod closure;
pub mod lines;
pub mod mw;
pub mod tangent;
pub mod torus;

mod error;

pub use error::Error;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Oriented projective line with exact rational coordinates.
pub type Line = lines::ProjLine<Rational>;
/// Isotopy script over exact rationals.
pub type Script = lines::IsotopyScript<Rational>;
/// Disjointness certificate over exact rationals.
pub type LineCertificate = lines::Certificate<Rational>;
/// Double-precision sample of the symmetric knot.
pub type KnotSample = tangent::CurveSample<f64>;
/// Double-precision plane section of its tangent surface.
pub type Section = tangent::SectionCurve<f64>;
