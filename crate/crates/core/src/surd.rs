//! Quadratic data of a purely periodic continued fraction.
//!
//! For `x = [0; c_1, ..., c_L, c_1, ...]` the tail after one period is `1/x`,
//! so `x = (p_L + p_{L-1} x) / (q_L + q_{L-1} x)` and `x` is the positive root
//! of `q_{L-1} x^2 + (q_L - p_{L-1}) x - p_L = 0`. Only integer coefficients
//! are stored; no square root of a non-square is ever taken.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::contfrac::Period;
use crate::error::{Error, Result};
use crate::numeric::{exact_sqrt, int, Integer, Rational};

/// `A x^2 + B x + C = 0` with `A > 0`, `gcd(A, B, C) = 1`, whose positive
/// root is the value of the periodic expansion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PeriodicSurd {
    period: Period,
    a: Integer,
    b: Integer,
    c: Integer,
    disc: Integer,
}

impl PeriodicSurd {
    pub fn from_period(period: &Period) -> Result<Self> {
        let len = period.len() as u64;
        let mut rows = period.convergents().skip(len as usize - 1);
        let last = rows.next().expect("unbounded stream");
        let full = rows.next().expect("unbounded stream");
        debug_assert_eq!((last.k, full.k), (len - 1, len));

        let (mut a, mut b, mut c) = (last.q, &full.q - &last.p, -full.p);
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        let disc = &b * &b - int(4) * &a * &c;
        let surd = PeriodicSurd {
            period: period.clone(),
            a,
            b,
            c,
            disc,
        };
        surd.check()?;
        Ok(surd)
    }

    fn check(&self) -> Result<()> {
        if !self.a.is_positive() {
            return Err(Error::Internal(format!(
                "leading coefficient {} <= 0",
                self.a
            )));
        }
        if !self.disc.is_positive() || exact_sqrt(&self.disc).is_some() {
            return Err(Error::Internal(format!(
                "discriminant {} is not a positive non-square",
                self.disc
            )));
        }
        // P(0) = C < 0 < P(1) = A + B + C puts exactly one root in (0, 1).
        if !self.c.is_negative() || !self.value_at(&Integer::one()).is_positive() {
            return Err(Error::Internal(format!("{self} has no root in (0, 1)")));
        }
        Ok(())
    }

    fn value_at(&self, x: &Integer) -> Integer {
        (&self.a * x + &self.b) * x + &self.c
    }

    pub fn period(&self) -> &Period {
        &self.period
    }

    /// `(A, B, C)`.
    pub fn coefficients(&self) -> (&Integer, &Integer, &Integer) {
        (&self.a, &self.b, &self.c)
    }

    pub fn discriminant(&self) -> &Integer {
        &self.disc
    }

    /// `x + x' = -B / A`.
    pub fn trace(&self) -> Rational {
        Rational::new(-&self.b, self.a.clone()).expect("A > 0")
    }

    /// `x x' = C / A`; negative, since the roots straddle zero.
    pub fn norm(&self) -> Rational {
        Rational::new(self.c.clone(), self.a.clone()).expect("A > 0")
    }

    /// `c_1 - c_2 + ... + c_L + x + x'`, the common normalized Dedekind sum
    /// of the convergents `p_k / q_k` with `k = L - 1 (mod 2L)`.
    pub fn closed_form_value(&self) -> Result<Rational> {
        if !self.period.is_odd() {
            return Err(Error::EvenPeriod("closed-form value"));
        }
        Ok(Rational::from(self.period.alternating_sum()) + self.trace())
    }

    /// Positive root as `(-B + √disc)/(2A)`, unsimplified.
    pub fn root_expression(&self) -> String {
        format!("({} + √{})/{}", -&self.b, self.disc, int(2) * &self.a)
    }

    /// `x = offset + coeff * sqrt(radicand)` with square factors pulled out
    /// of the discriminant.
    pub fn radical_form(&self) -> RadicalForm {
        let (outside, radicand) = split_square_factor(&self.disc);
        let two_a = int(2) * &self.a;
        RadicalForm {
            offset: Rational::new(-&self.b, two_a.clone()).expect("A > 0"),
            coeff: Rational::new(outside, two_a).expect("A > 0"),
            radicand,
        }
    }
}

impl fmt::Display for PeriodicSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let signed = |v: &Integer| {
            if v.is_negative() {
                format!("- {}", -v)
            } else {
                format!("+ {v}")
            }
        };
        write!(
            f,
            "{} x^2 {} x {} = 0",
            self.a,
            signed(&self.b),
            signed(&self.c)
        )
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RadicalForm {
    pub offset: Rational,
    pub coeff: Rational,
    pub radicand: Integer,
}

impl fmt::Display for RadicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = if self.coeff.numer().is_one() {
            format!("√{}", self.radicand)
        } else {
            format!("{}√{}", self.coeff.numer(), self.radicand)
        };
        let root = if self.coeff.denom().is_one() {
            root
        } else {
            format!("{root}/{}", self.coeff.denom())
        };
        if self.offset.is_zero() {
            write!(f, "{root}")
        } else {
            write!(f, "{} + {root}", self.offset.to_human())
        }
    }
}

/// Trial-division bound for square-factor extraction. Factors above it stay
/// under the radical, which is still exact.
const SQUARE_SEARCH_LIMIT: u64 = 1 << 16;

/// `n = outside^2 * radicand`, removing every square factor `p^2` with
/// `p < SQUARE_SEARCH_LIMIT`, plus the whole of `n` if it is a square.
fn split_square_factor(n: &Integer) -> (Integer, Integer) {
    let mut outside = Integer::one();
    // Cofactor with every prime found so far removed entirely.
    let mut rest = n.clone();
    let mut p = 2u64;
    while p < SQUARE_SEARCH_LIMIT {
        let p_big = Integer::from(p);
        if &p_big * &p_big > rest {
            break;
        }
        let sq = &p_big * &p_big;
        while (&rest % &sq).is_zero() {
            rest /= &sq;
            outside *= &p_big;
        }
        while (&rest % &p_big).is_zero() {
            rest /= &p_big;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let radicand = n / (&outside * &outside);
    match exact_sqrt(&radicand) {
        Some(r) if !r.is_zero() => (outside * r, Integer::one()),
        _ => (outside, radicand),
    }
}
