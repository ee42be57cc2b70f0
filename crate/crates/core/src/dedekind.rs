//! Classical and normalized Dedekind sums.
//!
//! `s(a, b) = sum_{k=1}^{b} ((k/b)) ((a k / b))` and `S(a, b) = 12 s(a, b)`.
//! [`s_naive`] evaluates the defining sum term by term and is kept as the
//! reference. [`normalized_sum_fast`] is the production evaluator used by
//! the family and search code.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{int, Integer, Rational};

/// Argument of a Dedekind sum: `b >= 1` and `gcd(a, b) = 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CoprimePair {
    a: Integer,
    b: Integer,
}

impl CoprimePair {
    pub fn new(a: impl Into<Integer>, b: impl Into<Integer>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if b < Integer::one() {
            return Err(Error::InvalidModulus(b.to_string()));
        }
        let g = a.gcd(&b);
        if !g.is_one() {
            return Err(Error::NotCoprime {
                a: a.to_string(),
                b: b.to_string(),
                gcd: g.to_string(),
            });
        }
        Ok(CoprimePair { a, b })
    }

    /// Caller guarantees `b >= 1` and `gcd(a, b) = 1`.
    pub(crate) fn new_unchecked(a: Integer, b: Integer) -> Self {
        debug_assert!(b.is_positive() && a.gcd(&b).is_one());
        CoprimePair { a, b }
    }

    pub fn a(&self) -> &Integer {
        &self.a
    }

    pub fn b(&self) -> &Integer {
        &self.b
    }

    pub fn is_reduced(&self) -> bool {
        !self.a.is_negative() && self.a < self.b
    }

    /// Representative with `0 <= a < b`; `S` is unchanged under `a -> a + j b`.
    pub fn reduced(&self) -> CoprimePair {
        CoprimePair {
            a: self.a.mod_floor(&self.b),
            b: self.b.clone(),
        }
    }
}

impl fmt::Display for CoprimePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Validates `(a, b)` and returns the representative with `0 <= a < b`.
pub fn reduce_pair(a: impl Into<Integer>, b: impl Into<Integer>) -> Result<CoprimePair> {
    Ok(CoprimePair::new(a, b)?.reduced())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Method {
    Naive,
    #[default]
    Fast,
}

/// `((x))`: `x - floor(x) - 1/2` off the integers, `0` on them.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        return Rational::zero();
    }
    x.fract_floor() - Rational::new(int(1), int(2)).expect("nonzero")
}

/// Classical Dedekind sum by its defining sum. O(b) terms.
pub fn s_naive(p: &CoprimePair) -> Rational {
    let p = p.reduced();
    let b = p.b();
    let mut total = Rational::zero();
    // k = b contributes ((1)) ((a)) = 0.
    let mut k = Integer::one();
    while &k < b {
        let x = Rational::new(k.clone(), b.clone()).expect("b >= 1");
        let y = Rational::new(p.a() * &k, b.clone()).expect("b >= 1");
        total = total + sawtooth(&x) * sawtooth(&y);
        k += 1;
    }
    total
}

/// Normalized sum `S(a, b) = 12 s(a, b)` by the chosen method.
pub fn normalized_sum(p: &CoprimePair, method: Method) -> Rational {
    match method {
        Method::Naive => Rational::from(12) * s_naive(p),
        Method::Fast => normalized_sum_fast(p),
    }
}

/// Normalized sum in O(log b) steps.
///
/// With `a / b = [0; c_1, ..., c_n]` and `q_{n-1}` the denominator of the
/// penultimate convergent (so `a q_{n-1} = (-1)^(n-1) mod b`):
///
/// ```text
/// S(a, b) = sum (-1)^(i-1) c_i + (a + q_{n-1}) / b - 3   (n odd)
/// S(a, b) = sum (-1)^(i-1) c_i + (a - q_{n-1}) / b       (n even)
/// ```
///
/// which is the reciprocity law `S(a,b) + S(b,a) = -3 + (a^2+b^2+1)/(ab)`
/// unrolled along the Euclidean remainder sequence.
pub fn normalized_sum_fast(p: &CoprimePair) -> Rational {
    let p = p.reduced();
    let (mut num, mut den) = (p.b().clone(), p.a().clone());
    let mut alternating = Integer::zero();
    let (mut q_prev, mut q_cur) = (Integer::zero(), Integer::one());
    let mut odd = false;
    while !den.is_zero() {
        let (c, rem) = num.div_rem(&den);
        if odd {
            alternating -= &c;
        } else {
            alternating += &c;
        }
        odd = !odd;
        let q_next = &c * &q_cur + &q_prev;
        q_prev = std::mem::replace(&mut q_cur, q_next);
        num = std::mem::replace(&mut den, rem);
    }
    // q_cur == b, q_prev == q_{n-1}; `odd` now records the parity of n.
    let b = p.b();
    let scaled = if odd {
        &alternating * b + p.a() + &q_prev - int(3) * b
    } else {
        &alternating * b + p.a() - &q_prev
    };
    Rational::new(scaled, b.clone()).expect("b >= 1")
}

/// `b * S(a, b)` over machine words for `0 <= a < b < 2^63`, or `None` when
/// `gcd(a, b) != 1`.
///
/// Same descent as [`normalized_sum_fast`]; the Euclidean loop doubles as the
/// coprimality test. The result is always an even integer.
pub fn scaled_sum_u64(a: u64, b: u64) -> Option<i128> {
    debug_assert!(a < b);
    let (mut num, mut den) = (b, a);
    // Partial quotients sum to at most b, so the running sum fits an i64
    // whenever b does.
    let mut alternating: i64 = 0;
    let (mut q_prev, mut q_cur): (u64, u64) = (0, 1);
    let mut odd = false;
    while den != 0 {
        let c = num / den;
        let rem = num - c * den;
        alternating = if odd {
            alternating - c as i64
        } else {
            alternating + c as i64
        };
        odd = !odd;
        // Convergent denominators of a / b never exceed b.
        let q_next = c * q_cur + q_prev;
        q_prev = q_cur;
        q_cur = q_next;
        num = den;
        den = rem;
    }
    if num != 1 {
        return None;
    }
    let (alternating, a, b, q_prev) = (alternating as i128, a as i128, b as i128, q_prev as i128);
    Some(if odd {
        alternating * b + a + q_prev - 3 * b
    } else {
        alternating * b + a - q_prev
    })
}
