//! Exact 6j symbols from Racah's single-sum formula.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::factorial::{product_of_powers, primes_up_to, Exponents};
use crate::spin::{is_admissible_triple, triad_sums, HalfInt, SpinSextet};

/// Triangle coefficient `(a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!`.
pub fn triangle_coefficient(a: HalfInt, b: HalfInt, c: HalfInt) -> Result<BigRational> {
    if !is_admissible_triple(a, b, c) {
        return Err(Error::InadmissibleTriad(a.to_string(), b.to_string(), c.to_string()));
    }
    Ok(exponents_to_rational(&triangle_exponents(a, b, c)))
}

fn triangle_exponents(a: HalfInt, b: HalfInt, c: HalfInt) -> Exponents {
    let (a, b, c) = (u64::from(a.doubled()), u64::from(b.doubled()), u64::from(c.doubled()));
    let mut e = Exponents::default();
    e.add_factorial((a + b - c) / 2);
    e.add_factorial((a + c - b) / 2);
    e.add_factorial((b + c - a) / 2);
    e.sub_factorial((a + b + c) / 2 + 1);
    e
}

fn exponents_to_rational(e: &Exponents) -> BigRational {
    let (num, den) = e.to_ratio();
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The alternating sum
/// `sum_t (-1)^t (t+1)! / (prod_i (t-v_i)! prod_j (p_j-t)!)` for `t` from
/// `max v` to `min p`. An empty range gives exactly zero.
pub fn racah_alternating_sum(s: &SpinSextet) -> Result<BigRational> {
    let sums = triad_sums(s)?;
    let (lo, hi) = (sums.v_max(), sums.p_min());
    if lo > hi {
        return Ok(BigRational::zero());
    }

    let terms: Vec<(u64, Exponents)> = (lo..=hi)
        .map(|t| {
            let mut e = Exponents::default();
            e.add_factorial(t + 1);
            for &v in &sums.v {
                e.sub_factorial(t - v);
            }
            for &p in &sums.p {
                e.sub_factorial(p - t);
            }
            (t, e)
        })
        .collect();

    // Pull out the smallest exponent of each prime so that every term is an
    // integer multiple of the common factor.
    let width = terms.iter().map(|(_, e)| e.0.len()).max().unwrap_or(0);
    let mut common = vec![i64::MAX; width];
    for (_, e) in &terms {
        for (i, slot) in common.iter_mut().enumerate() {
            *slot = (*slot).min(e.0.get(i).copied().unwrap_or(0));
        }
    }
    let primes = primes_up_to(primes_bound(width));

    let mut total = BigInt::zero();
    for (t, e) in &terms {
        let factors: Vec<(u64, u64)> = (0..width)
            .map(|i| (primes[i], (e.0.get(i).copied().unwrap_or(0) - common[i]) as u64))
            .collect();
        let term = BigInt::from(product_of_powers(&factors));
        if t % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    let (num, den) = Exponents(common).to_ratio();
    Ok(BigRational::new(total * BigInt::from(num), BigInt::from(den)))
}

fn primes_bound(count: usize) -> u64 {
    let mut n = 2u64;
    while primes_up_to(n).len() < count {
        n *= 2;
    }
    n
}

/// Exact value `sum_part * sqrt(tri[0] tri[1] tri[2] tri[3])`, with the
/// radical kept unevaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSixJ {
    pub sum_part: BigRational,
    /// Triangle coefficients of `(j1,j2,j3)`, `(J1,j2,J3)`, `(J1,J2,j3)`,
    /// `(j1,J2,J3)`.
    pub tri: [BigRational; 4],
}

impl ExactSixJ {
    pub fn zero() -> Self {
        ExactSixJ {
            sum_part: BigRational::zero(),
            tri: [BigRational::one(), BigRational::one(), BigRational::one(), BigRational::one()],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sum_part.is_zero()
    }

    pub fn sign(&self) -> Ordering {
        self.sum_part.cmp(&BigRational::zero())
    }

    /// Product of the four triangle coefficients.
    pub fn radicand(&self) -> BigRational {
        self.tri.iter().fold(BigRational::one(), |acc, t| acc * t)
    }

    /// Square of the value, exact.
    pub fn squared(&self) -> BigRational {
        &self.sum_part * &self.sum_part * self.radicand()
    }

    /// Square of the value carrying the sign of the value.
    pub fn signed_squared(&self) -> BigRational {
        let sq = self.squared();
        if self.sum_part.is_negative() {
            -sq
        } else {
            sq
        }
    }

    /// Natural log of `|value|`; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        ln_rational(&self.sum_part.abs()) + 0.5 * ln_rational(&self.radicand())
    }

    /// The value as `f64`, accurate to a few ulps even when numerator and
    /// denominator are far outside `f64` range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let magnitude = self.ln_abs().exp();
        if self.sum_part.is_negative() {
            -magnitude
        } else {
            magnitude
        }
    }

    /// The value as `q · √m` with `m` a squarefree integer.
    pub fn simplified(&self) -> (BigRational, BigUint) {
        if self.is_zero() {
            return (BigRational::zero(), BigUint::one());
        }
        // q √(n/d) = (q/d) √(n d)
        let r = self.radicand();
        let den = r.denom().magnitude().clone();
        let mut rest = r.numer().magnitude() * &den;
        let mut outside = BigUint::one();
        let mut squarefree = BigUint::one();
        // Every prime factor is bounded by the factorial arguments, so trial
        // division over a growing prime table terminates.
        let mut bound = 64u64;
        let mut next = 0usize;
        while !rest.is_one() {
            let primes = primes_up_to(bound);
            for &p in &primes[next..] {
                let p = BigUint::from(p);
                let mut count = 0u32;
                while (&rest % &p).is_zero() {
                    rest /= &p;
                    count += 1;
                }
                outside *= p.pow(count / 2);
                if count % 2 == 1 {
                    squarefree *= &p;
                }
            }
            next = primes.len();
            bound *= 2;
        }
        let q = &self.sum_part * BigRational::new(BigInt::from(outside), BigInt::from(den));
        (q, squarefree)
    }

    /// Decimal rendering with `digits` digits after the point, rounded; the
    /// error is below one unit in the last digit.
    pub fn to_decimal(&self, digits: usize) -> String {
        sixj_decimal(self, digits)
    }
}

impl fmt::Display for ExactSixJ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} · √({})", self.sum_part, self.radicand())
    }
}

/// `ln(x)` for a positive rational.
pub fn ln_rational(x: &BigRational) -> f64 {
    ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude())
}

fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return num_traits::ToPrimitive::to_f64(n).unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigUint = n >> shift;
    num_traits::ToPrimitive::to_f64(&top).unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// The 6j symbol `{j1 j2 j3; J1 J2 J3}`. Inadmissible sextets give zero.
pub fn sixj_exact(s: &SpinSextet) -> ExactSixJ {
    if !s.is_admissible() {
        return ExactSixJ::zero();
    }
    let tri = s.triads().map(|[a, b, c]| {
        exponents_to_rational(&triangle_exponents(a, b, c))
    });
    let sum_part = racah_alternating_sum(s).expect("admissibility checked above");
    ExactSixJ { sum_part, tri }
}

/// Decimal rendering of an exact symbol, rounded to `digits` places.
pub fn sixj_decimal(x: &ExactSixJ, digits: usize) -> String {
    let digits = digits.max(1);
    if x.is_zero() {
        return "0".to_string();
    }
    // floor(sqrt(value^2 * 10^(2(d+2)))) has d+2 correct fractional digits
    // (truncated); round the two guard digits away.
    let guard = digits + 2;
    let sq = x.squared();
    let scale = BigInt::from(10u32).pow(2 * guard as u32);
    let scaled = (sq.numer() * &scale) / sq.denom();
    let root = scaled.to_biguint().expect("non-negative").sqrt();
    let rounded = (root + BigUint::from(50u32)) / BigUint::from(100u32);

    let negative = x.sum_part.is_negative() && !rounded.is_zero();
    let text = rounded.to_string();
    let text = if text.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - text.len()), text)
    } else {
        text
    };
    let (int, frac) = text.split_at(text.len() - digits);
    let sign = if negative { "-" } else { "" };
    format!("{sign}{int}.{frac}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn h(n: u32) -> HalfInt {
        HalfInt::from_int(n)
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(triangle_coefficient(h(0), h(0), h(0)).unwrap(), rat(1, 1));
        assert_eq!(triangle_coefficient(h(1), h(1), h(1)).unwrap(), rat(1, 24));
        assert_eq!(triangle_coefficient(h(0), h(1), h(1)).unwrap(), rat(1, 3));
        assert!(triangle_coefficient(h(0), h(1), h(2)).is_err());
        let half = HalfInt::from_doubled(1);
        assert!(triangle_coefficient(half, half, half).is_err());
    }

    #[test]
    fn racah_sum_examples() {
        assert_eq!(racah_alternating_sum(&SpinSextet::from_ints([1; 6])).unwrap(), rat(96, 1));
        assert_eq!(
            racah_alternating_sum(&SpinSextet::from_ints([1, 1, 1, 0, 1, 1])).unwrap(),
            rat(-24, 1)
        );
        assert_eq!(racah_alternating_sum(&SpinSextet::from_ints([0; 6])).unwrap(), rat(1, 1));
    }

    #[test]
    fn sixj_examples() {
        let x = sixj_exact(&SpinSextet::from_ints([1; 6]));
        assert_eq!(x.sum_part, rat(96, 1));
        assert_eq!(x.radicand(), rat(1, 24 * 24 * 24 * 24));
        assert_eq!(x.signed_squared(), rat(1, 36));

        let x = sixj_exact(&SpinSextet::from_ints([1, 1, 1, 0, 1, 1]));
        assert_eq!(x.sum_part, rat(-24, 1));
        assert_eq!(x.radicand(), rat(1, 72 * 72));
        assert_eq!(x.signed_squared(), rat(-1, 9));

        let x = sixj_exact(&SpinSextet::from_ints([0; 6]));
        assert_eq!(x.signed_squared(), rat(1, 1));
    }

    #[test]
    fn inadmissible_is_zero() {
        let s = SpinSextet::from_doubled([1, 1, 4, 2, 2, 2]);
        let x = sixj_exact(&s);
        assert!(x.is_zero());
        assert_eq!(x.to_f64(), 0.0);
        assert_eq!(x.to_decimal(5), "0");
    }

    #[test]
    fn simplified_forms() {
        let x = sixj_exact(&SpinSextet::from_ints([1; 6]));
        assert_eq!(x.simplified(), (rat(1, 6), BigUint::one()));
        let x = sixj_exact(&SpinSextet::from_ints([1, 1, 1, 0, 1, 1]));
        assert_eq!(x.simplified(), (rat(-1, 3), BigUint::one()));
        assert_eq!(ExactSixJ::zero().simplified(), (rat(0, 1), BigUint::one()));
        let mut irrational = 0;
        for d in [[1, 1, 2, 1, 1, 0], [2, 2, 2, 2, 2, 4], [1, 2, 3, 2, 1, 2], [2, 4, 4, 2, 2, 2]] {
            let x = sixj_exact(&SpinSextet::from_doubled(d));
            let (q, m) = x.simplified();
            let m_f = num_traits::ToPrimitive::to_f64(&m).unwrap();
            let q_f = num_traits::ToPrimitive::to_f64(&q).unwrap();
            assert!((q_f * m_f.sqrt() - x.to_f64()).abs() < 1e-15, "{d:?}");
            if m > BigUint::one() {
                irrational += 1;
            }
        }
        assert!(irrational > 0);
        // {1 2 2; 1 1 1} = -√5 / 10
        let x = sixj_exact(&SpinSextet::from_doubled([2, 4, 4, 2, 2, 2]));
        assert_eq!(x.simplified(), (rat(-1, 10), BigUint::from(5u32)));
    }

    #[test]
    fn decimal_examples() {
        let sixth = sixj_exact(&SpinSextet::from_ints([1; 6]));
        assert_eq!(sixj_decimal(&sixth, 6), "0.166667");
        assert_eq!(sixj_decimal(&sixth, 8), "0.16666667");
        let third = sixj_exact(&SpinSextet::from_ints([1, 1, 1, 0, 1, 1]));
        assert_eq!(sixj_decimal(&third, 4), "-0.3333");
        assert_eq!(sixj_decimal(&ExactSixJ::zero(), 4), "0");
        let one = sixj_exact(&SpinSextet::from_ints([0; 6]));
        assert_eq!(sixj_decimal(&one, 3), "1.000");
    }

    #[test]
    fn decimal_of_irrational_value() {
        // Irrational value: compare against the floating conversion.
        let s = SpinSextet::from_doubled([1, 1, 2, 1, 1, 0]);
        let x = sixj_exact(&s);
        let text = sixj_decimal(&x, 12);
        let parsed: f64 = text.parse().unwrap();
        assert!((parsed - x.to_f64()).abs() < 1e-12, "{text} vs {}", x.to_f64());
    }

    #[test]
    fn f64_for_huge_rationals() {
        let s = SpinSextet::from_ints([150; 6]);
        let x = sixj_exact(&s);
        let v = x.to_f64();
        assert!(v.is_finite() && v != 0.0);
        assert!(v.abs() < 1e-2);
    }
}
