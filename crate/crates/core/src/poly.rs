//! Univariate polynomials over the rationals, with exact real-root
//! extraction. Roots of degree <= 2 polynomials come back in closed form
//! (rational or quadratic-irrational); higher degrees fall back to Sturm
//! isolation with certified rational enclosures.
//!
//! The exact subgame solver only ever needs degree <= 2 (its stationarity
//! and crossing conditions are quadratics), so the closed forms carry all
//! the load; Sturm is the safety net that keeps the API total.

use crate::rational::{rat, Rational};
use crate::value::{square_free_split, QuadExt};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// Coefficients ascending: `c[i]` multiplies x^i. Normalized so the leading
/// coefficient is nonzero; the zero polynomial has an empty vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    c: Vec<Rational>,
}

/// One real root, in the tightest representation available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Root {
    Exact(Rational),
    /// a + b*sqrt(d), d square-free >= 2, b != 0.
    Quad {
        a: Rational,
        b: Rational,
        d: BigUint,
    },
    /// Interval of width <= 2^-64 containing exactly one root.
    Isolated { lo: Rational, hi: Rational },
}

impl Root {
    /// A rational enclosure of the root (degenerate for `Exact`).
    pub fn enclosure(&self) -> (Rational, Rational) {
        match self {
            Root::Exact(x) => (x.clone(), x.clone()),
            Root::Quad { a, b, d } => QuadExt::new(a.clone(), b.clone(), d.clone()).bounds(96),
            Root::Isolated { lo, hi } => (lo.clone(), hi.clone()),
        }
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { c: coeffs }
    }

    pub fn zero() -> Self {
        Poly { c: vec![] }
    }

    pub fn constant(x: Rational) -> Self {
        Poly::new(vec![x])
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|&v| Rational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Horner evaluation inside a quadratic field.
    pub fn eval_quad(&self, x: &QuadExt) -> QuadExt {
        let mut acc = QuadExt::from_rational(Rational::zero(), x.d.clone());
        for c in self.c.iter().rev() {
            acc = acc.mul(x).add_rational(c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.c.len() <= 1 {
            return Poly::zero();
        }
        Poly::new(
            self.c[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * rat((i + 1) as i64, 1))
                .collect(),
        )
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.c.len().max(other.c.len());
        let mut out = vec![Rational::zero(); n];
        for (i, c) in self.c.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.c.iter().enumerate() {
            out[i] += c;
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.c.iter().map(|c| -c.clone()).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in other.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::new(self.c.iter().map(|c| c * k).collect())
    }

    /// Remainder of self divided by other (exact rational division).
    fn rem(&self, other: &Poly) -> Poly {
        assert!(!other.is_zero());
        let mut r = self.c.clone();
        let dn = other.c.len();
        let lead = other.c.last().unwrap();
        while r.len() >= dn && !r.is_empty() {
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            if r.len() < dn {
                break;
            }
            let k = r.len() - dn;
            let q = r.last().unwrap() / lead;
            for (i, c) in other.c.iter().enumerate() {
                let upd = &q * c;
                r[k + i] -= upd;
            }
            r.pop(); // leading term cancels exactly
        }
        Poly::new(r)
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        // Monic normalization.
        let lead = a.c.last().unwrap().clone();
        a.scale(&lead.recip())
    }

    /// self with all repeated factors collapsed to multiplicity one.
    pub fn square_free_part(&self) -> Poly {
        if self.degree().unwrap_or(0) <= 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.quotient_exact(&g)
    }

    /// Exact quotient when other divides self (panics otherwise).
    fn quotient_exact(&self, other: &Poly) -> Poly {
        assert!(!other.is_zero());
        let mut r = self.c.clone();
        let dn = other.c.len();
        let lead = other.c.last().unwrap();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dn) + 1];
        while r.len() >= dn && !r.is_empty() {
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
            if r.len() < dn {
                break;
            }
            let k = r.len() - dn;
            let coef = r.last().unwrap() / lead;
            q[k] = coef.clone();
            for (i, c) in other.c.iter().enumerate() {
                let upd = &coef * c;
                r[k + i] -= upd;
            }
            r.pop();
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
        assert!(r.is_empty(), "non-exact polynomial division");
        Poly::new(q)
    }

    /// All distinct real roots, ascending. Panics on the zero polynomial
    /// (every real is a root; callers must test `is_zero` first).
    pub fn real_roots(&self) -> Vec<Root> {
        assert!(
            !self.is_zero(),
            "the zero polynomial has no root list; callers handle it separately"
        );
        // Factor out x^k so the remaining constant term is nonzero.
        let k = self.c.iter().take_while(|c| c.is_zero()).count();
        let stripped = Poly::new(self.c[k..].to_vec());
        let mut roots = if stripped.degree() == Some(0) {
            vec![]
        } else {
            stripped.nonzero_roots()
        };
        if k > 0 {
            // Insert the root at 0 after every certainly-negative root.
            let pos = roots
                .iter()
                .take_while(|r| match r {
                    Root::Exact(x) => x.is_negative(),
                    Root::Quad { a, b, d } => {
                        QuadExt::new(a.clone(), b.clone(), d.clone()).sign() < 0
                    }
                    Root::Isolated { hi, .. } => hi.is_negative(),
                })
                .count();
            roots.insert(pos, Root::Exact(Rational::zero()));
        }
        roots
    }

    /// Distinct roots of a polynomial with nonzero constant term, ascending.
    fn nonzero_roots(&self) -> Vec<Root> {
        match self.degree().unwrap() {
            0 => vec![],
            1 => vec![Root::Exact(-&self.c[0] / &self.c[1])],
            2 => {
                let (a, b, c) = (&self.c[2], &self.c[1], &self.c[0]);
                let disc = b * b - rat(4, 1) * a * c;
                if disc.is_negative() {
                    return vec![];
                }
                if disc.is_zero() {
                    return vec![Root::Exact(-b / (rat(2, 1) * a))];
                }
                // sqrt(disc) = (s/t) * sqrt(d0) with disc = p/q, pq = s^2 d0
                // after pulling squares out of p*q; t = q.
                let p = disc.numer().magnitude().clone();
                let q = disc.denom().magnitude().clone();
                let (s, d0) = square_free_split(&(p * &q));
                let sq_rat = Rational::new(BigInt::from(s), BigInt::from(q));
                let center = -b / (rat(2, 1) * a);
                let half = &sq_rat / (rat(2, 1) * a);
                if d0.is_one() {
                    let r1 = &center - &half;
                    let r2 = &center + &half;
                    let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
                    vec![Root::Exact(lo), Root::Exact(hi)]
                } else {
                    let mk = |coef: Rational| Root::Quad {
                        a: center.clone(),
                        b: coef,
                        d: d0.clone(),
                    };
                    // Ascending order: the root with the negative sqrt
                    // multiplier is smaller iff half > 0.
                    if half.is_positive() {
                        vec![mk(-half.clone()), mk(half)]
                    } else {
                        vec![mk(-half.clone()), mk(half)].into_iter().rev().collect()
                    }
                }
            }
            _ => self.sturm_roots(),
        }
    }

    /// Sturm isolation plus bisection; enclosures refined to width 2^-64.
    fn sturm_roots(&self) -> Vec<Root> {
        let sf = self.square_free_part();
        let chain = sturm_chain(&sf);
        // Cauchy bound: every root has |x| < 1 + max |c_i / c_n|.
        let lead = sf.c.last().unwrap();
        let mut m = Rational::zero();
        for c in &sf.c[..sf.c.len() - 1] {
            let r = (c / lead).abs();
            if r > m {
                m = r;
            }
        }
        let bound = m + rat(1, 1);
        let lo = -bound.clone();
        let hi = bound;
        let mut out = Vec::new();
        // Work queue of half-open intervals (a, b] with the root count.
        let total = sign_variations(&chain, &lo) - sign_variations(&chain, &hi);
        let mut stack = vec![(lo, hi, total)];
        let width_target = rat(1, 1) / Rational::from_integer(BigInt::from(1u128 << 64));
        while let Some((a, b, n)) = stack.pop() {
            if n == 0 {
                continue;
            }
            let fb = sf.eval(&b);
            if n == 1 {
                // Refine (a, b] by bisection until narrow or an exact hit.
                let (mut a, mut b) = (a, b);
                if fb.is_zero() {
                    out.push((b.clone(), Root::Exact(b)));
                    continue;
                }
                let mut exact = None;
                while &b - &a > width_target {
                    let mid = (&a + &b) / rat(2, 1);
                    let fm = sf.eval(&mid);
                    if fm.is_zero() {
                        exact = Some(mid);
                        break;
                    }
                    if sign_variations(&chain, &a) - sign_variations(&chain, &mid) == 1 {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
                match exact {
                    Some(x) => out.push((x.clone(), Root::Exact(x))),
                    None => out.push((a.clone(), Root::Isolated { lo: a, hi: b })),
                }
                continue;
            }
            let mid = (&a + &b) / rat(2, 1);
            if sf.eval(&mid).is_zero() {
                out.push((mid.clone(), Root::Exact(mid.clone())));
            }
            let va = sign_variations(&chain, &a);
            let vm = sign_variations(&chain, &mid);
            let vb = sign_variations(&chain, &b);
            stack.push((a, mid.clone(), va - vm));
            stack.push((mid, b, vm - vb));
        }
        out.sort_by(|(a, _), (b, _)| a.cmp(b));
        // An exact hit found while splitting also shows up as a count-1
        // interval collapsing onto it; dedup by identical enclosure keys.
        out.dedup_by(|(a, _), (b, _)| a == b);
        out.into_iter().map(|(_, r)| r).collect()
    }
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let r = chain[n - 2].rem(&chain[n - 1]).neg();
        if r.is_zero() {
            return chain;
        }
        chain.push(r);
    }
}

fn sign_variations(chain: &[Poly], x: &Rational) -> usize {
    let mut count = 0;
    let mut last = 0i32;
    for p in chain {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}
