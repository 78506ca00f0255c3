//! Exact rational scalars and small number-theoretic helpers.
//!
//! The whole crate computes over [`Rational`], an arbitrary-precision
//! fraction kept in lowest terms with a positive denominator. No floating
//! point appears anywhere in a computational path.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

pub type Rational = BigRational;

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`; intended for literals in code and tests.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "rational literal with zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form: `p/q` when the reduced denominator exceeds one,
/// otherwise the plain integer `p`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Least common multiple of the (positive) denominators of `vals`.
pub fn lcm_denominators<'a, I>(vals: I) -> BigInt
where
    I: IntoIterator<Item = &'a Rational>,
{
    let mut acc = BigInt::one();
    for v in vals {
        acc = acc.lcm(v.denom());
    }
    acc
}

/// `k!` as a big integer.
pub fn factorial(k: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=k {
        acc *= BigInt::from(i);
    }
    acc
}

/// Smallest `k >= 0` with `2^k >= r`. Requires `r > 0`.
pub fn ceil_log2(r: &Rational) -> u64 {
    assert!(r.is_positive(), "ceil_log2 requires a positive argument");
    if *r <= Rational::one() {
        return 0;
    }
    let (num, den) = (r.numer(), r.denom());
    // 2^k * den >= num; start from the bit-length gap and correct by one.
    let mut k = (num.bits() - den.bits()).saturating_sub(1);
    let mut scaled = den << k;
    while &scaled < num {
        scaled <<= 1;
        k += 1;
    }
    k
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (ties in denominator resolved toward the value the
/// Stern-Brocot descent reaches first). This is the continued-fraction
/// reconstruction step: when an interval is narrower than `1/(2N^2)` it
/// contains at most one rational with denominator at most `N`, and this
/// function finds it.
pub fn simplest_in_interval(lo: &Rational, hi: &Rational) -> Rational {
    assert!(lo <= hi, "empty interval");
    if lo == hi {
        return lo.clone();
    }
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_positive(&-hi.clone(), &-lo.clone());
    }
    simplest_positive(lo, hi)
}

fn simplest_positive(lo: &Rational, hi: &Rational) -> Rational {
    // 0 < lo < hi. If an integer lands in the interval it wins; otherwise
    // recurse on the reciprocal of the fractional parts.
    let c = lo.ceil();
    if &c <= hi {
        return c;
    }
    let fl = lo.floor();
    let inner = simplest_positive(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}
