//! Game values: exact rationals, quadratic irrationals a + b*sqrt(d), and
//! certified brackets, with exact comparison between all symbolic forms.
//!
//! Quadratic irrationals are kept canonical: `b != 0` and `d` square-free and
//! at least 2. Under that normalization two values are equal iff they are
//! structurally equal (1, sqrt(d), sqrt(d') are linearly independent over the
//! rationals for distinct square-free d, d' >= 2), which keeps comparisons
//! decidable: same-field comparisons use exact sign tests, cross-field ones
//! refine square-root enclosures until they separate.

use crate::bounds::sqrt_bounds;
use crate::rational::{isqrt, rat, Rational};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

/// An element a + b*sqrt(d) of a fixed real quadratic field. All four ring
/// operations stay in the field, which is what lets the exact subgame solver
/// evaluate payoffs at irrational equilibrium profiles symbolically.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    pub a: Rational,
    pub b: Rational,
    /// Square-free radicand, >= 2. Shared by every element of one computation.
    pub d: BigUint,
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: BigUint) -> Self {
        debug_assert!(d >= BigUint::from(2u32));
        QuadExt { a, b, d }
    }

    pub fn from_rational(a: Rational, d: BigUint) -> Self {
        QuadExt::new(a, Rational::zero(), d)
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn same_field(&self, other: &Self) -> bool {
        self.d == other.d
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert!(self.same_field(other));
        QuadExt::new(&self.a + &other.a, &self.b + &other.b, self.d.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert!(self.same_field(other));
        QuadExt::new(&self.a - &other.a, &self.b - &other.b, self.d.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert!(self.same_field(other));
        let d = Rational::from_integer(BigInt::from(self.d.clone()));
        QuadExt::new(
            &self.a * &other.a + &self.b * &other.b * d,
            &self.a * &other.b + &self.b * &other.a,
            self.d.clone(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QuadExt::new(&self.a * c, &self.b * c, self.d.clone())
    }

    pub fn add_rational(&self, c: &Rational) -> Self {
        QuadExt::new(&self.a + c, self.b.clone(), self.d.clone())
    }

    pub fn neg(&self) -> Self {
        QuadExt::new(-self.a.clone(), -self.b.clone(), self.d.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Multiplicative inverse via the conjugate; panics on zero. The norm
    /// a^2 - b^2 d vanishes only for the zero element because d is not a
    /// perfect square.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in quadratic field");
        let d = Rational::from_integer(BigInt::from(self.d.clone()));
        let norm = &self.a * &self.a - &self.b * &self.b * d;
        assert!(!norm.is_zero());
        QuadExt::new(&self.a / &norm, -(&self.b / &norm), self.d.clone())
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Exact sign: -1, 0, or 1.
    pub fn sign(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite signs: compare a^2 with b^2 d; the larger magnitude wins.
        let d = Rational::from_integer(BigInt::from(self.d.clone()));
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * d;
        match lhs.cmp(&rhs) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0, // impossible for b != 0 with square-free d, kept for safety
        }
    }

    pub fn cmp_ext(&self, other: &Self) -> Ordering {
        match self.sub(other).sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        self.sub(&QuadExt::from_rational(r.clone(), self.d.clone()))
            .cmp_ext(&QuadExt::from_rational(Rational::zero(), self.d.clone()))
    }

    /// True if 0 <= self <= 1, the probability-coordinate feasibility test.
    pub fn in_unit_interval(&self) -> bool {
        self.sign() >= 0 && self.sub(&QuadExt::from_rational(Rational::one(), self.d.clone())).sign() <= 0
    }

    /// Rational enclosure of width about 2^-prec_bits.
    pub fn bounds(&self, prec_bits: u32) -> (Rational, Rational) {
        if self.b.is_zero() {
            return (self.a.clone(), self.a.clone());
        }
        let d = Rational::from_integer(BigInt::from(self.d.clone()));
        let (s_lo, s_hi) = sqrt_bounds(&d, prec_bits);
        if self.b.is_positive() {
            (&self.a + &self.b * s_lo, &self.a + &self.b * s_hi)
        } else {
            (&self.a + &self.b * s_hi, &self.a + &self.b * s_lo)
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.bounds(80);
        ((lo + hi) / rat(2, 1)).to_f64().unwrap_or(f64::NAN)
    }
}

fn rational_sign(x: &Rational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Splits n into (s, d0) with n = s^2 * d0 and d0 square-free. Complete for
/// n with no prime-square factor above 2^20 (far beyond anything produced by
/// the desk-scale discriminants this crate works with).
pub fn square_free_split(n: &BigUint) -> (BigUint, BigUint) {
    let mut s = BigUint::one();
    let mut d0 = BigUint::one();
    let mut rem = n.clone();
    if rem.is_zero() {
        return (BigUint::zero(), BigUint::zero());
    }
    let mut p = BigUint::from(2u32);
    let cap = BigUint::from(1u32 << 20);
    while &(&p * &p) <= &rem && p <= cap {
        if (&rem % &p).is_zero() {
            let mut e = 0u32;
            while (&rem % &p).is_zero() {
                rem /= &p;
                e += 1;
            }
            for _ in 0..e / 2 {
                s *= &p;
            }
            if e % 2 == 1 {
                d0 *= &p;
            }
        }
        p += if p == BigUint::from(2u32) {
            BigUint::one()
        } else {
            BigUint::from(2u32)
        };
    }
    if rem > BigUint::one() {
        // Remainder is prime, or has only large factors: check for a perfect
        // square before conceding it is square-free.
        let r = isqrt(&rem);
        if &r * &r == rem {
            s *= r;
        } else {
            d0 *= rem;
        }
    }
    (s, d0)
}

/// The value of a game, in one of three precision regimes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameValue {
    /// Known exactly as a rational.
    Exact(Rational),
    /// Known exactly as a + b*sqrt(d), with b != 0 and d square-free >= 2.
    QuadIrr {
        a: Rational,
        b: Rational,
        d: BigUint,
    },
    /// Known only to lie in [lo, hi].
    Bracket { lo: Rational, hi: Rational },
}

/// Outcome of comparing two values when brackets are involved.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValueCmp {
    Decided(Ordering),
    /// Overlapping brackets: cannot order without refining.
    Ambiguous,
}

impl GameValue {
    pub fn exact(x: Rational) -> Self {
        GameValue::Exact(x)
    }

    pub fn exact_int(n: i64) -> Self {
        GameValue::Exact(rat(n, 1))
    }

    /// Canonicalizing constructor: extracts square factors from d and
    /// collapses to `Exact` when the irrational part vanishes.
    pub fn quad(a: Rational, b: Rational, d: BigUint) -> Self {
        if b.is_zero() {
            return GameValue::Exact(a);
        }
        let (s, d0) = square_free_split(&d);
        let b = b * Rational::from_integer(BigInt::from(s));
        if d0 <= BigUint::one() || b.is_zero() {
            return GameValue::Exact(a + b * Rational::from_integer(BigInt::from(d0)));
        }
        GameValue::QuadIrr { a, b, d: d0 }
    }

    pub fn from_quad_ext(x: &QuadExt) -> Self {
        GameValue::quad(x.a.clone(), x.b.clone(), x.d.clone())
    }

    pub fn bracket(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "bracket endpoints out of order");
        GameValue::Bracket { lo, hi }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, GameValue::Bracket { .. })
    }

    /// Rational enclosure; exact variants return width-controlled intervals.
    pub fn enclosure(&self, prec_bits: u32) -> (Rational, Rational) {
        match self {
            GameValue::Exact(x) => (x.clone(), x.clone()),
            GameValue::QuadIrr { a, b, d } => {
                QuadExt::new(a.clone(), b.clone(), d.clone()).bounds(prec_bits)
            }
            GameValue::Bracket { lo, hi } => (lo.clone(), hi.clone()),
        }
    }

    /// Exact three-way comparison against a rational for the symbolic
    /// variants; three-valued for brackets.
    pub fn cmp_rational(&self, r: &Rational) -> ValueCmp {
        match self {
            GameValue::Exact(x) => ValueCmp::Decided(x.cmp(r)),
            GameValue::QuadIrr { a, b, d } => ValueCmp::Decided(
                QuadExt::new(a.clone(), b.clone(), d.clone()).cmp_rational(r),
            ),
            GameValue::Bracket { lo, hi } => {
                if hi < r {
                    ValueCmp::Decided(Ordering::Less)
                } else if lo > r {
                    ValueCmp::Decided(Ordering::Greater)
                } else if lo == hi && lo == r {
                    ValueCmp::Decided(Ordering::Equal)
                } else {
                    ValueCmp::Ambiguous
                }
            }
        }
    }

    /// Compares two values, exactly whenever both are symbolic. Brackets
    /// compare decisively only when they do not overlap.
    pub fn compare(&self, other: &GameValue) -> ValueCmp {
        use GameValue::*;
        match (self, other) {
            (Exact(x), Exact(y)) => ValueCmp::Decided(x.cmp(y)),
            (Exact(x), QuadIrr { a, b, d }) => ValueCmp::Decided(
                QuadExt::new(a.clone(), b.clone(), d.clone())
                    .cmp_rational(x)
                    .reverse(),
            ),
            (QuadIrr { a, b, d }, Exact(y)) => ValueCmp::Decided(
                QuadExt::new(a.clone(), b.clone(), d.clone()).cmp_rational(y),
            ),
            (QuadIrr { a, b, d }, QuadIrr { a: a2, b: b2, d: d2 }) => {
                if d == d2 {
                    let x = QuadExt::new(a.clone(), b.clone(), d.clone());
                    let y = QuadExt::new(a2.clone(), b2.clone(), d.clone());
                    ValueCmp::Decided(x.cmp_ext(&y))
                } else {
                    // Distinct square-free radicands with nonzero b: never
                    // equal, so enclosures eventually separate.
                    let mut prec = 64;
                    loop {
                        let (lo1, hi1) = self.enclosure(prec);
                        let (lo2, hi2) = other.enclosure(prec);
                        if hi1 < lo2 {
                            return ValueCmp::Decided(Ordering::Less);
                        }
                        if hi2 < lo1 {
                            return ValueCmp::Decided(Ordering::Greater);
                        }
                        prec *= 2;
                        assert!(prec <= 1 << 16, "quadratic comparison failed to separate");
                    }
                }
            }
            _ => {
                // At least one bracket: compare enclosures.
                let (lo1, hi1) = self.enclosure(128);
                let (lo2, hi2) = other.enclosure(128);
                if hi1 < lo2 {
                    ValueCmp::Decided(Ordering::Less)
                } else if hi2 < lo1 {
                    ValueCmp::Decided(Ordering::Greater)
                } else if lo1 == hi1 && lo2 == hi2 && lo1 == lo2 {
                    ValueCmp::Decided(Ordering::Equal)
                } else {
                    ValueCmp::Ambiguous
                }
            }
        }
    }

    /// Applies v -> scale*v + shift (scale > 0), the payoff-normalization
    /// pullback. Exactness is preserved for every variant.
    pub fn affine(&self, scale: &Rational, shift: &Rational) -> GameValue {
        assert!(scale.is_positive(), "affine scale must be positive");
        match self {
            GameValue::Exact(x) => GameValue::Exact(x * scale + shift),
            GameValue::QuadIrr { a, b, d } => GameValue::quad(a * scale + shift, b * scale, d.clone()),
            GameValue::Bracket { lo, hi } => GameValue::bracket(lo * scale + shift, hi * scale + shift),
        }
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(80);
        ((lo + hi) / rat(2, 1)).to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for GameValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GameValue::Exact(x) => write!(f, "{x}"),
            GameValue::QuadIrr { a, b, d } => write!(f, "{a} + {b}*sqrt({d})"),
            GameValue::Bracket { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}
