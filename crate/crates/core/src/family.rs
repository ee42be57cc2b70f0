//! Infinite families of pairs sharing one normalized Dedekind sum.
//!
//! For a reduced source `a / b = [0; c_1, ..., c_n]` with `a != 0`, the
//! expansion is extended to an odd-length period:
//!
//! * `n` even: append a free term `c >= 1`, period `(c_1, ..., c_n, c)`;
//! * `n` odd: use the alternate tail, period `(c_1, ..., c_n - 1, 1, 1)`.
//!
//! In both cases `p_{L-1} / q_{L-1} = a / b`, and every convergent with
//! `k = L - 1 (mod 2L)` has the same normalized sum as the source. The source
//! `0 / 1` is served by the pairs `(t, t^2 + 1)` instead.

use std::fmt;

use num_traits::One;

use crate::contfrac::{CfExpansion, Convergent, Convergents, Period};
use crate::dedekind::{normalized_sum_fast, reduce_pair, CoprimePair};
use crate::error::{Error, Result};
use crate::numeric::{Integer, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilyCase {
    /// Even expansion length; a free term is appended.
    AppendTerm,
    /// Odd expansion length; the tail is rewritten to `c_n - 1, 1, 1`.
    SplitTail,
    /// Source `0 / 1`; members `(t + 1, (t + 1)^2 + 1)`.
    ZeroFamily,
}

impl fmt::Display for FamilyCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyCase::AppendTerm => "AppendTerm",
            FamilyCase::SplitTail => "SplitTail",
            FamilyCase::ZeroFamily => "ZeroFamily",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilyPlan {
    source: CoprimePair,
    case: FamilyCase,
    period: Option<Period>,
    appended_c: Option<Integer>,
    value: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FamilyMember {
    /// Ordinal within the family; `t = 0` is the source.
    pub t: u64,
    /// Convergent index `L - 1 + 2 L t`; absent for the zero family.
    pub k: Option<u64>,
    pub pair: CoprimePair,
    /// Normalized sum of the source, shared by every member.
    pub value: Rational,
}

impl FamilyPlan {
    /// Builds the plan for source `(a, b)` with free term `c` (used only when
    /// the expansion length is even).
    pub fn new(
        a: impl Into<Integer>,
        b: impl Into<Integer>,
        c: impl Into<Integer>,
    ) -> Result<Self> {
        let c = c.into();
        if c < Integer::one() {
            return Err(Error::InvalidParameter {
                name: "c",
                reason: format!("{c} is not a natural number"),
            });
        }
        let source = reduce_pair(a, b)?;
        let value = normalized_sum_fast(&source);
        let expansion = CfExpansion::expand(&source)?;
        if expansion.is_empty() {
            return Ok(FamilyPlan {
                source,
                case: FamilyCase::ZeroFamily,
                period: None,
                appended_c: None,
                value,
            });
        }
        let (case, terms, appended_c) = if expansion.len() % 2 == 0 {
            let mut terms = expansion.terms().to_vec();
            terms.push(c.clone());
            (FamilyCase::AppendTerm, terms, Some(c))
        } else {
            let mut terms = expansion.to_alternate()?.terms().to_vec();
            terms.push(Integer::one());
            (FamilyCase::SplitTail, terms, None)
        };
        let period = Period::new(terms)?;
        debug_assert!(period.is_odd());
        Ok(FamilyPlan {
            source,
            case,
            period: Some(period),
            appended_c,
            value,
        })
    }

    pub fn source(&self) -> &CoprimePair {
        &self.source
    }

    pub fn case(&self) -> FamilyCase {
        self.case
    }

    pub fn period(&self) -> Option<&Period> {
        self.period.as_ref()
    }

    /// Odd period length `L`.
    pub fn period_len(&self) -> Option<u64> {
        self.period.as_ref().map(|p| p.len() as u64)
    }

    pub fn appended_c(&self) -> Option<&Integer> {
        self.appended_c.as_ref()
    }

    /// The normalized sum every member attains.
    pub fn value(&self) -> &Rational {
        &self.value
    }

    /// Convergent index of member `t`.
    pub fn member_index(&self, t: u64) -> Option<u64> {
        self.period_len().map(|len| len - 1 + 2 * len * t)
    }

    /// Lazy, unbounded stream of members starting at `t = 0`.
    pub fn members(&self) -> Members<'_> {
        Members {
            plan: self,
            t: 0,
            convergents: self.period.as_ref().map(Convergents::new),
        }
    }

    pub fn family_members(&self, count: usize) -> Vec<FamilyMember> {
        self.members().take(count).collect()
    }
}

pub struct Members<'a> {
    plan: &'a FamilyPlan,
    t: u64,
    convergents: Option<Convergents<'a>>,
}

impl Iterator for Members<'_> {
    type Item = FamilyMember;

    fn next(&mut self) -> Option<FamilyMember> {
        let t = self.t;
        self.t += 1;
        let (k, pair) = match &mut self.convergents {
            Some(stream) => {
                let len = self.plan.period_len().expect("periodic plan");
                // Member 0 sits at k = L - 1, later ones every 2L rows.
                let skip = if t == 0 { len - 1 } else { 2 * len - 1 };
                let row: Convergent = stream.nth(skip as usize).expect("unbounded stream");
                (Some(row.k), row.pair())
            }
            None => {
                let a = Integer::from(t) + 1u32;
                let b = &a * &a + 1u32;
                (None, CoprimePair::new_unchecked(a, b))
            }
        };
        Some(FamilyMember {
            t,
            k,
            pair,
            value: self.plan.value.clone(),
        })
    }
}

/// Recomputes both sums from scratch; does not trust `m.value`.
pub fn verify_member(m: &FamilyMember, source: &CoprimePair) -> bool {
    normalized_sum_fast(&m.pair) == normalized_sum_fast(source)
}

/// Rows `k = L - 1 + 2 L t`, `t < depth`, of the convergent stream of an
/// odd-length period together with their normalized sums.
pub fn constant_index_rows(period: &Period, depth: u64) -> Result<Vec<(Convergent, Rational)>> {
    if !period.is_odd() {
        return Err(Error::EvenPeriod("constant-value convergent check"));
    }
    if depth < 1 {
        return Err(Error::InvalidParameter {
            name: "depth",
            reason: "must be at least 1".into(),
        });
    }
    let len = period.len() as u64;
    let rows = period
        .convergents()
        .skip(len as usize - 1)
        .step_by(2 * len as usize)
        .take(depth as usize)
        .map(|row| {
            let value = normalized_sum_fast(&row.pair());
            (row, value)
        })
        .collect();
    Ok(rows)
}

/// True iff `S(p_k, q_k)` is constant over `k = L - 1, 3L - 1, ...,
/// (2 depth - 1) L - 1`.
pub fn check_constant_value(period: &Period, depth: u64) -> Result<bool> {
    let rows = constant_index_rows(period, depth)?;
    Ok(rows.windows(2).all(|w| w[0].1 == w[1].1))
}
