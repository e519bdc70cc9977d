//! Certified rational enclosures for the two irrational functions the
//! toolkit needs: natural logarithms (support-size schedules and sandwich
//! bounds) and square roots (comparing quadratic-irrational values).
//!
//! Every function returns `(lo, hi)` with `lo <= f(x) <= hi` guaranteed.
//! All interval arithmetic is on exact rationals, so the only approximation
//! is the explicitly bounded series truncation.

use crate::rational::{isqrt, rat, Rational};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Enclosure of sqrt(x) of width at most 2^-prec_bits * max(1, sqrt(x)).
/// Requires x >= 0.
pub fn sqrt_bounds(x: &Rational, prec_bits: u32) -> (Rational, Rational) {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    // sqrt(p/q) = sqrt(p*q)/q; scale by 4^m so the integer sqrt carries
    // m extra bits: s <= 2^m * sqrt(pq) < s+1.
    let p = x.numer().to_biguint().expect("nonnegative");
    let q = x.denom().to_biguint().expect("positive");
    let scaled = &p * &q << (2 * prec_bits as usize);
    let s = isqrt(&scaled);
    let den = BigInt::from(q) << (prec_bits as usize);
    let lo = Rational::new(BigInt::from(s.clone()), den.clone());
    let hi = Rational::new(BigInt::from(s + BigUint::one()), den);
    (lo, hi)
}

/// Enclosure of ln(x) of width at most 2^-prec_bits. Requires x > 0.
pub fn ln_bounds(x: &Rational, prec_bits: u32) -> (Rational, Rational) {
    assert!(x.is_positive(), "ln of nonpositive rational");
    // Reduce to m in [1, 2): x = 2^e * m, so ln x = e ln 2 + ln m.
    let mut m = x.clone();
    let mut e: i64 = 0;
    let two = rat(2, 1);
    let one = Rational::one();
    while m >= two {
        m /= &two;
        e += 1;
    }
    while m < one {
        m *= &two;
        e -= 1;
    }
    let (lm_lo, lm_hi) = ln_via_atanh(&m, prec_bits + 2);
    if e == 0 {
        return (lm_lo, lm_hi);
    }
    let (l2_lo, l2_hi) = ln_two(prec_bits + 8);
    let e_rat = rat(e, 1);
    let (t_lo, t_hi) = if e > 0 {
        (&e_rat * l2_lo, &e_rat * l2_hi)
    } else {
        (&e_rat * l2_hi, &e_rat * l2_lo)
    };
    (lm_lo + t_lo, lm_hi + t_hi)
}

/// Enclosure of ln 2 via 2*atanh(1/3).
pub fn ln_two(prec_bits: u32) -> (Rational, Rational) {
    atanh_bounds(&rat(1, 3), prec_bits, 2)
}

/// ln m for m in [1, 2) via ln m = 2*atanh((m-1)/(m+1)); the argument lies
/// in [0, 1/3], so terms shrink by at least 1/9 each.
fn ln_via_atanh(m: &Rational, prec_bits: u32) -> (Rational, Rational) {
    let y = (m - Rational::one()) / (m + Rational::one());
    atanh_bounds(&y, prec_bits, 2)
}

/// Enclosure of scale*atanh(y) for 0 <= y <= 1/3 with truncation error
/// bounded by y^(2K+3) / ((2K+3)(1-y^2)) added to the upper endpoint.
fn atanh_bounds(y: &Rational, prec_bits: u32, scale: i64) -> (Rational, Rational) {
    assert!(!y.is_negative() && *y <= rat(1, 3));
    if y.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    let y2 = y * y;
    // y <= 1/3 makes each term at most (1/9)^k y; take enough terms that
    // the geometric tail is below 2^-(prec_bits+2).
    let terms = (prec_bits as usize + 2) / 3 + 2;
    let mut sum = Rational::zero();
    let mut pow = y.clone(); // y^(2k+1)
    for k in 0..=terms {
        sum += &pow / rat((2 * k + 1) as i64, 1);
        pow *= &y2;
    }
    // pow is now y^(2*terms+3).
    let tail = pow / (rat((2 * terms + 3) as i64, 1) * (Rational::one() - y2));
    let s = rat(scale, 1);
    (&s * &sum, s * (sum + tail))
}

/// True if the rational `x` is `<=` the irrational `c * sqrt(v)` (c rational,
/// v rational >= 0), decided exactly by interval refinement. `x` equal to the
/// target is only possible when the target is itself rational, which the
/// refinement detects via a perfect-square check.
pub fn rational_leq_sqrt(x: &Rational, c: &Rational, v: &Rational) -> bool {
    assert!(!v.is_negative());
    if c.is_negative() {
        // c*sqrt(v) <= 0: reduce to -x >= |c| sqrt(v).
        return x.is_negative() && !rational_lt_sqrt(&-x, &-c, v);
    }
    if x.is_negative() || x.is_zero() {
        return true;
    }
    // Both sides positive: compare squares exactly.
    x * x <= c * c * v
}

fn rational_lt_sqrt(x: &Rational, c: &Rational, v: &Rational) -> bool {
    if x.is_negative() {
        return true;
    }
    x * x < c * c * v
}

/// Certified check that `x <= c * sqrt(ln(a) / b)` for positive rationals
/// a > 1, b, c; used for the simple-strategy sandwich bound. Decided by
/// refining the ln enclosure until the comparison separates; `x` can never
/// equal the transcendental bound, so this terminates.
pub fn rational_leq_sqrt_ln(x: &Rational, c: &Rational, a: &Rational, b: &Rational) -> bool {
    assert!(c.is_positive() && b.is_positive() && *a > Rational::one());
    if !x.is_positive() {
        return true;
    }
    // x <= c sqrt(L/b)  <=>  x^2 b / c^2 <= L  (all factors positive).
    let target = x * x * b / (c * c);
    let mut prec = 64;
    loop {
        let (lo, hi) = ln_bounds(a, prec);
        if target <= lo {
            return true;
        }
        if target > hi {
            return false;
        }
        prec *= 2;
        assert!(prec <= 1 << 16, "ln comparison failed to separate");
    }
}

/// Convenience: f64 midpoint of an enclosure, for display only.
pub fn midpoint_f64(lo: &Rational, hi: &Rational) -> f64 {
    let mid = (lo + hi) / rat(2, 1);
    mid.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    #[test]
    fn sqrt_two_enclosure() {
        let (lo, hi) = sqrt_bounds(&rat_int(2), 80);
        assert!(lo < hi);
        assert!(&lo * &lo <= rat_int(2));
        assert!(&hi * &hi >= rat_int(2));
        assert!(&hi - &lo <= rat(1, 1 << 60));
    }

    #[test]
    fn sqrt_exact_square() {
        let (lo, hi) = sqrt_bounds(&rat(9, 4), 40);
        assert!(lo <= rat(3, 2) && rat(3, 2) <= hi);
    }

    #[test]
    fn ln_two_known_digits() {
        // ln 2 = 0.693147180559945...
        let (lo, hi) = ln_two(100);
        assert!(lo < hi);
        assert!(lo > rat(693147180, 1_000_000_000));
        assert!(hi < rat(693147181, 1_000_000_000));
    }

    #[test]
    fn ln_eight_is_three_ln_two() {
        let (lo8, hi8) = ln_bounds(&rat_int(8), 100);
        let (lo2, hi2) = ln_two(110);
        assert!(lo8 <= rat_int(3) * &hi2 && rat_int(3) * lo2 <= hi8);
    }

    #[test]
    fn ln_below_one_is_negative() {
        let (lo, hi) = ln_bounds(&rat(1, 2), 80);
        assert!(hi.is_negative());
        // ln(1/2) = -ln 2
        let (l2, h2) = ln_two(90);
        assert!(lo <= -l2 && -h2 <= hi);
    }

    #[test]
    fn sqrt_ln_comparison() {
        // sqrt(ln 2 / 2) = 0.5887...; check both sides of it.
        let a = rat_int(2);
        assert!(rational_leq_sqrt_ln(&rat(58, 100), &rat_int(1), &a, &rat_int(2)));
        assert!(!rational_leq_sqrt_ln(&rat(59, 100), &rat_int(1), &a, &rat_int(2)));
    }

    #[test]
    fn rational_vs_sqrt() {
        // 7/5 < sqrt(2) < 3/2
        assert!(rational_leq_sqrt(&rat(7, 5), &rat_int(1), &rat_int(2)));
        assert!(!rational_leq_sqrt(&rat(3, 2), &rat_int(1), &rat_int(2)));
        assert!(rational_leq_sqrt(&rat(-1, 2), &rat_int(1), &rat_int(2)));
    }
}
