//! Exact normalized Dedekind sums and infinite families of coprime pairs
//! that share a prescribed value.
//!
//! Every value is computed over unbounded integers and lowest-terms
//! rationals. The pipeline is:
//!
//! * [`dedekind`] evaluates `s(a, b)` by its defining sum and
//!   `S(a, b) = 12 s(a, b)` by a Euclidean descent;
//! * [`contfrac`] expands `a / b` as a finite continued fraction and streams
//!   convergents of purely periodic expansions;
//! * [`surd`] derives the quadratic equation, the conjugate trace and the
//!   closed-form value attached to a period;
//! * [`family`] builds the odd-length period for a source pair and streams
//!   pairs with the same normalized sum;
//! * [`search`] enumerates every pair below a bound that attains a target.

pub mod cli;
pub mod contfrac;
pub mod dedekind;
mod error;
pub mod family;
pub mod numeric;
pub mod search;
pub mod surd;

pub use contfrac::{CfExpansion, Convergent, ConvergentTable, Convergents, Period};
pub use dedekind::{normalized_sum, reduce_pair, CoprimePair, Method};
pub use error::{Error, Result};
pub use family::{FamilyCase, FamilyMember, FamilyPlan};
pub use numeric::{Integer, Rational};
pub use search::{SearchOptions, SearchResult};
pub use surd::PeriodicSurd;
