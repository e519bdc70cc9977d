//! Solvers for minmax (threat) values of finite strategic-form games.
//!
//! The threat value of Player 1 is the lowest expected payoff the remaining
//! players (the "bullies") can force on a best-responding Player 1 when they
//! randomize independently:
//!
//! ```text
//! minmax(G) = min over uncorrelated profiles (s2, ..., sl)
//!             of max over Player 1 actions a of E[u1(a, s2, ..., sl)]
//! ```
//!
//! Unlike two-player zero-sum values, threat values of three-player games can
//! be quadratic irrationals, and approximating them well is hard in general.
//! This crate therefore offers a toolbox instead of a single algorithm:
//!
//! * [`oracle::oracle_minmax`] — a brute-force lattice oracle returning a
//!   certified bracket; slow, simple, and the reference every other solver is
//!   tested against.
//! * [`exact_two::solve_two_by`] — closed-form case analysis for games where
//!   Player 1 has two actions and all payoffs are 0 or 1; values are always
//!   in {0, 1/2, 3/4, 1}.
//! * [`zerosum::zs_value`] / [`zerosum::maxmin_value`] — exact rational
//!   simplex for two-player zero-sum matrices, with duality certificates.
//! * [`simple_approx`] — uniform-multiset ("simple") strategy enumeration
//!   with the logarithmic support-size schedule, plus the hard instances
//!   showing the schedule is tight.
//! * [`support_enum`] — support enumeration driven by the small-support
//!   theorem for the bullies, with an exact quadratic-algebra subgame solver
//!   (values may be [`GameValue::QuadIrr`]) and a certified numeric fallback.
//! * [`clique`] — the reduction from k-clique to threat-value decision
//!   problems, with the exact 1/k completeness certificate.
//! * [`threat`] — per-player threat points and the coarse lattice solver for
//!   games where one bully has few actions.
//!
//! All arithmetic is exact: probabilities and payoffs are arbitrary-precision
//! rationals, irrational values are represented symbolically as a + b*sqrt(d),
//! and approximate answers always come with a rigorous enclosing bracket.

pub mod bounds;
pub mod clique;
pub mod error;
pub mod exact_two;
pub mod format;
pub mod game;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod simple_approx;
pub mod support_enum;
pub mod threat;
pub mod value;
pub mod zerosum;

pub use error::{Error, Result};
pub use game::{BullyProfile, MixedStrategy, PayoffTensor};
pub use rational::Rational;
pub use value::{GameValue, QuadExt};
