//! Orbifold Riemann–Roch bookkeeping for terminal projective 3-folds with
//! nef anti-canonical divisor.
//!
//! * [`reid_rr`]: baskets, correction terms `l(m)`, `chi(-nK)`, and the
//!   identity `24·chi(O_X) = c1·c2 + sum (r - 1/r)`.
//! * [`enumeration`]: exhaustive search over index multisets under the
//!   `c1·c2 >= 0` budget, the integral-basket filter, the `chi = 1`
//!   classification tables and extremal values.
//! * [`quotient`]: arithmetic of the quotient tables `(P^1 x Y)/G` for K3
//!   and Enriques covers.
//! * [`cli`]: the command-line front end.
//!
//! Everything is exact; there is no floating point anywhere.

pub mod cli;
pub mod enumeration;
pub mod quotient;
pub mod rational;
pub mod reid_rr;

pub use rational::Rational;
