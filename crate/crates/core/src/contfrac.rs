//! Finite continued fractions of rationals in `[0, 1)` and convergents of
//! purely periodic expansions `[0; c_1, ..., c_L, c_1, ..., c_L, ...]`.
//!
//! Convergents are indexed from `k = 0` with `p_0 / q_0 = 0 / 1`, so for a
//! finite expansion of length `n` the last convergent is `p_n / q_n`.

use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::dedekind::CoprimePair;
use crate::error::{Error, Result};
use crate::numeric::{Integer, Rational};

/// `[0; c_1, ..., c_n]`. The canonical form ends in a term `>= 2`; the
/// alternate form of the same value ends in `1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CfExpansion {
    terms: Vec<Integer>,
    canonical: bool,
}

impl CfExpansion {
    pub fn terms(&self) -> &[Integer] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// Canonical expansion of `a / b`. Requires `0 <= a < b`.
    pub fn expand(p: &CoprimePair) -> Result<Self> {
        if !p.is_reduced() {
            return Err(Error::Unreduced {
                a: p.a().to_string(),
                b: p.b().to_string(),
            });
        }
        let (mut num, mut den) = (p.b().clone(), p.a().clone());
        let mut terms = Vec::new();
        while !den.is_zero() {
            let (c, rem) = num.div_rem(&den);
            terms.push(c);
            num = std::mem::replace(&mut den, rem);
        }
        Ok(CfExpansion {
            terms,
            canonical: true,
        })
    }

    /// Rewrites the canonical tail `c_n` as `c_n - 1, 1`.
    pub fn to_alternate(&self) -> Result<Self> {
        let Some(last) = self.terms.last() else {
            return Err(Error::NoAlternateForZero);
        };
        if !self.canonical {
            return Ok(self.clone());
        }
        let mut terms = self.terms.clone();
        *terms.last_mut().expect("nonempty") = last - 1;
        terms.push(Integer::one());
        Ok(CfExpansion {
            terms,
            canonical: false,
        })
    }

    /// Exact value, folding from the innermost term outwards.
    pub fn evaluate(&self) -> Rational {
        let (mut num, mut den) = (Integer::zero(), Integer::one());
        for c in self.terms.iter().rev() {
            // 1 / (c + num/den) = den / (c*den + num)
            let next_den = c * &den + &num;
            num = std::mem::replace(&mut den, next_den);
        }
        Rational::new(num, den).expect("terms are positive")
    }
}

impl fmt::Display for CfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[0; ")?;
        for (i, c) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Repeating block `(c_1, ..., c_L)` of a purely periodic expansion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Period(Vec<Integer>);

impl Period {
    pub fn new(terms: Vec<Integer>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        if let Some(bad) = terms.iter().find(|c| !c.is_positive()) {
            return Err(Error::InvalidTerm(bad.to_string()));
        }
        Ok(Period(terms))
    }

    pub fn from_u64s(terms: &[u64]) -> Result<Self> {
        Period::new(terms.iter().copied().map(Integer::from).collect())
    }

    pub fn terms(&self) -> &[Integer] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Never true; periods have at least one term.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.0.len() % 2 == 1
    }

    /// Partial quotient `c_k` for `k >= 1`.
    pub fn term(&self, k: u64) -> &Integer {
        &self.0[((k - 1) % self.0.len() as u64) as usize]
    }

    /// `c_1 - c_2 + c_3 - ...` over one period.
    pub fn alternating_sum(&self) -> Integer {
        self.0.iter().enumerate().fold(
            Integer::zero(),
            |acc, (i, c)| if i % 2 == 0 { acc + c } else { acc - c },
        )
    }

    /// The block repeated twice.
    pub fn doubled(&self) -> Period {
        Period(self.0.iter().chain(self.0.iter()).cloned().collect())
    }

    pub fn convergents(&self) -> Convergents<'_> {
        Convergents::new(self)
    }
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Convergent {
    pub k: u64,
    pub p: Integer,
    pub q: Integer,
}

impl Convergent {
    /// `(p_k, q_k)` as a Dedekind-sum argument; convergents are always coprime.
    pub fn pair(&self) -> CoprimePair {
        CoprimePair::new_unchecked(self.p.clone(), self.q.clone())
    }
}

/// Unbounded stream of convergents of `[0; period, period, ...]`.
///
/// `p_k = c_k p_{k-1} + p_{k-2}`, `q_k = c_k q_{k-1} + q_{k-2}` from the
/// seeds `p_{-1} / q_{-1} = 1 / 0` and `p_0 / q_0 = 0 / 1`. Only the last two
/// rows are held.
#[derive(Clone, Debug)]
pub struct Convergents<'a> {
    period: &'a Period,
    next_k: u64,
    prev: (Integer, Integer),
    cur: (Integer, Integer),
}

impl<'a> Convergents<'a> {
    pub fn new(period: &'a Period) -> Self {
        Convergents {
            period,
            next_k: 0,
            prev: (Integer::one(), Integer::zero()),
            cur: (Integer::zero(), Integer::one()),
        }
    }
}

impl Iterator for Convergents<'_> {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        let k = self.next_k;
        if k > 0 {
            let c = self.period.term(k);
            let p = c * &self.cur.0 + &self.prev.0;
            let q = c * &self.cur.1 + &self.prev.1;
            self.prev = std::mem::replace(&mut self.cur, (p, q));
        }
        self.next_k += 1;
        Some(Convergent {
            k,
            p: self.cur.0.clone(),
            q: self.cur.1.clone(),
        })
    }
}

/// Materialized rows `k = 0..=upto_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConvergentTable {
    pub entries: Vec<Convergent>,
}

impl ConvergentTable {
    pub fn get(&self, k: u64) -> Option<&Convergent> {
        self.entries.get(k as usize)
    }
}

pub fn convergents_periodic(period: &Period, upto_k: u64) -> ConvergentTable {
    ConvergentTable {
        entries: period.convergents().take(upto_k as usize + 1).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::int;

    fn expand(a: i64, b: i64) -> CfExpansion {
        CfExpansion::expand(&CoprimePair::new(a, b).unwrap()).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<Integer> {
        xs.iter().map(|&x| int(x)).collect()
    }

    fn period(xs: &[u64]) -> Period {
        Period::from_u64s(xs).unwrap()
    }

    #[test]
    fn expand_examples() {
        assert_eq!(expand(5, 14).terms(), ints(&[2, 1, 4]).as_slice());
        assert!(expand(0, 1).is_empty());
        assert_eq!(expand(1, 2).terms(), ints(&[2]).as_slice());
        assert_eq!(expand(5, 14).to_string(), "[0; 2, 1, 4]");
        assert_eq!(expand(0, 1).to_string(), "[0; ]");
    }

    #[test]
    fn expand_rejects_unreduced() {
        let p = CoprimePair::new(19, 14).unwrap();
        assert!(matches!(
            CfExpansion::expand(&p),
            Err(Error::Unreduced { .. })
        ));
        let p = CoprimePair::new(-1, 3).unwrap();
        assert!(matches!(
            CfExpansion::expand(&p),
            Err(Error::Unreduced { .. })
        ));
    }

    #[test]
    fn alternate_examples() {
        let alt = expand(5, 14).to_alternate().unwrap();
        assert_eq!(alt.terms(), ints(&[2, 1, 3, 1]).as_slice());
        assert!(!alt.is_canonical());
        assert_eq!(alt.evaluate(), Rational::new(int(5), int(14)).unwrap());
        assert_eq!(
            expand(1, 2).to_alternate().unwrap().terms(),
            ints(&[1, 1]).as_slice()
        );
        assert_eq!(
            expand(1, 3).to_alternate().unwrap().terms(),
            ints(&[2, 1]).as_slice()
        );
        assert_eq!(expand(0, 1).to_alternate(), Err(Error::NoAlternateForZero));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(
            expand(5, 14).evaluate(),
            Rational::new(int(5), int(14)).unwrap()
        );
        assert_eq!(expand(0, 1).evaluate(), Rational::zero());
    }

    #[test]
    fn round_trip_sweep() {
        for b in 1..=500i64 {
            for a in 0..b {
                if num_integer::gcd(a, b) != 1 {
                    continue;
                }
                let e = expand(a, b);
                let value = Rational::new(int(a), int(b)).unwrap();
                assert_eq!(e.evaluate(), value);
                if let Some(last) = e.terms().last() {
                    assert!(*last >= int(2));
                    assert_eq!(e.to_alternate().unwrap().evaluate(), value);
                }
            }
        }
    }

    #[test]
    fn periodic_convergent_examples() {
        let t = convergents_periodic(&period(&[2, 1, 3, 1, 1]), 34);
        let at = |k: u64| {
            let c = t.get(k).unwrap();
            (c.p.clone(), c.q.clone())
        };
        assert_eq!(at(0), (int(0), int(1)));
        assert_eq!(at(4), (int(5), int(14)));
        assert_eq!(at(14), (int(4535), int(12614)));
        assert_eq!(at(24), (int(4090565), int(11377814)));
        assert_eq!(at(34), (int(3689685095), int(10262775614)));
    }

    #[test]
    fn period_validation() {
        assert_eq!(Period::new(vec![]), Err(Error::EmptyPeriod));
        assert!(matches!(
            Period::new(ints(&[1, 0])),
            Err(Error::InvalidTerm(_))
        ));
        assert!(matches!(
            Period::new(ints(&[-2])),
            Err(Error::InvalidTerm(_))
        ));
        assert_eq!(period(&[2, 1, 3, 1, 1]).alternating_sum(), int(4));
        assert_eq!(period(&[2, 1, 3, 1, 1]).to_string(), "(2, 1, 3, 1, 1)");
    }

    #[test]
    fn table_invariants() {
        for terms in [
            &[1u64][..],
            &[2],
            &[1, 2],
            &[3, 1, 4],
            &[2, 1, 3, 1, 1],
            &[7, 1, 1, 5],
        ] {
            let t = convergents_periodic(&period(terms), 60);
            assert_eq!(t.entries.len(), 61);
            for w in t.entries.windows(3) {
                let (prev, cur, next) = (&w[0], &w[1], &w[2]);
                let det = &cur.p * &prev.q - &prev.p * &cur.q;
                let sign = if cur.k % 2 == 1 { int(1) } else { int(-1) };
                assert_eq!(det, sign, "k = {}", cur.k);
                assert!(cur.p.gcd(&cur.q).is_one());
                assert!(cur.q >= prev.q);
                if prev.k >= 1 {
                    assert!(next.q > int(2) * &prev.q, "growth at k = {}", prev.k);
                }
                if cur.k >= 2 {
                    assert!(cur.q > prev.q);
                }
            }
        }
    }
}
