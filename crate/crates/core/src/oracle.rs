//! Brute-force lattice oracle: enumerates every bully profile whose
//! coordinates are multiples of 1/r and returns a certified bracket on the
//! minmax value. Independent ground truth for the real solvers.
//!
//! The upper endpoint is exact (a best-response value at a lattice witness);
//! the lower endpoint subtracts the multilinearity slack: moving one bully
//! by L1 distance delta changes any expectation by at most
//! delta*(u_max - u_min), and every simplex point rounds onto the lattice
//! within L1 distance 2(n-1)/r, so the off-lattice minimum cannot undershoot
//! the lattice minimum by more than the advertised bound.
//!
//! Enumeration is ascending-lexicographic per bully and the running minimum
//! updates only on strict improvement, so the witness is the
//! lexicographically first minimizing profile — deterministic output.

use crate::error::{Error, Result};
use crate::game::{BullyProfile, MixedStrategy, PayoffTensor};
use crate::rational::{rat, Rational};
use crate::value::GameValue;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default cap on the number of lattice profiles one call may visit.
pub const DEFAULT_GRID_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub lo: Rational,
    pub hi: Rational,
    /// Lexicographically first lattice profile attaining `hi`.
    pub witness: BullyProfile,
    /// Number of lattice profiles enumerated.
    pub grid_points: u128,
}

impl OracleResult {
    pub fn bracket(&self) -> GameValue {
        GameValue::bracket(self.lo.clone(), self.hi.clone())
    }
}

/// Number of compositions of r into n nonnegative parts: C(r+n-1, n-1).
/// None when the count exceeds u128.
pub fn composition_count(r: u32, n: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for i in 1..n {
        acc = acc.checked_mul(r as u128 + i as u128)?;
        acc /= i as u128; // exact: product of i consecutive integers
    }
    Some(acc)
}

pub(crate) fn first_composition(r: u32, n: usize) -> Vec<u32> {
    let mut c = vec![0u32; n];
    c[n - 1] = r;
    c
}

/// Advances to the next composition in ascending lex order; false at the end.
pub(crate) fn next_composition(c: &mut [u32]) -> bool {
    let n = c.len();
    if n == 1 {
        return false;
    }
    // Rightmost position (excluding the last) with mass strictly to its
    // right can absorb one unit; everything right of it collapses onto the
    // final coordinate.
    let mut right: u32 = c[n - 1];
    for i in (0..n - 1).rev() {
        if right > 0 {
            c[i] += 1;
            for x in &mut c[i + 1..n - 1] {
                *x = 0;
            }
            c[n - 1] = right - 1;
            return true;
        }
        right += c[i];
    }
    false
}

/// Integer arithmetic the grid scan is generic over: a fixed-width fast path
/// and a big-integer fallback.
trait GridInt: Clone + Ord {
    fn zero() -> Self;
    fn mul_u32(&self, k: u32) -> Self;
    fn add_to(&self, acc: &mut Self);
}

impl GridInt for i128 {
    fn zero() -> Self {
        0
    }
    fn mul_u32(&self, k: u32) -> Self {
        self * k as i128
    }
    fn add_to(&self, acc: &mut Self) {
        *acc += self;
    }
}

impl GridInt for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn mul_u32(&self, k: u32) -> Self {
        self * k
    }
    fn add_to(&self, acc: &mut Self) {
        *acc += self;
    }
}

struct Scanner<T> {
    r: u32,
    best: Option<(T, Vec<Vec<u32>>)>,
    stack: Vec<Vec<u32>>,
}

impl<T: GridInt> Scanner<T> {
    /// dims = [n1, remaining bully dims...]; tensor row-major over dims.
    fn scan(&mut self, tensor: &[T], dims: &[usize]) {
        let n1 = dims[0];
        let nb = dims[1];
        if dims.len() == 2 {
            // Innermost bully: evaluate best responses directly.
            let mut comp = first_composition(self.r, nb);
            loop {
                let mut row_max: Option<T> = None;
                for i in 0..n1 {
                    let mut e = T::zero();
                    for (k, &ck) in comp.iter().enumerate() {
                        if ck != 0 {
                            tensor[i * nb + k].mul_u32(ck).add_to(&mut e);
                        }
                    }
                    if row_max.as_ref().is_none_or(|m| e > *m) {
                        row_max = Some(e);
                    }
                }
                let v = row_max.unwrap();
                if self.best.as_ref().is_none_or(|(b, _)| v < *b) {
                    self.stack.push(comp.clone());
                    self.best = Some((v, self.stack.clone()));
                    self.stack.pop();
                }
                if !next_composition(&mut comp) {
                    break;
                }
            }
        } else {
            // Contract this bully's axis once per lattice point, then let the
            // inner bullies loop over the much smaller tensor.
            let rest: usize = dims[2..].iter().product();
            let mut new_dims = Vec::with_capacity(dims.len() - 1);
            new_dims.push(n1);
            new_dims.extend_from_slice(&dims[2..]);
            let mut comp = first_composition(self.r, nb);
            loop {
                let mut contracted = vec![T::zero(); n1 * rest];
                for i in 0..n1 {
                    for (j, &cj) in comp.iter().enumerate() {
                        if cj != 0 {
                            let base = (i * nb + j) * rest;
                            for t in 0..rest {
                                tensor[base + t].mul_u32(cj).add_to(&mut contracted[i * rest + t]);
                            }
                        }
                    }
                }
                self.stack.push(comp.clone());
                self.scan(&contracted, &new_dims);
                self.stack.pop();
                if !next_composition(&mut comp) {
                    break;
                }
            }
        }
    }
}

fn scaled_bigints(game: &PayoffTensor) -> (BigInt, Vec<BigInt>) {
    let mut l = BigInt::one();
    for v in game.data() {
        l = l.lcm(v.denom());
    }
    let ints = game
        .data()
        .iter()
        .map(|v| v.numer() * (&l / v.denom()))
        .collect();
    (l, ints)
}

pub fn oracle_minmax(game: &PayoffTensor, resolution: u32) -> Result<OracleResult> {
    oracle_minmax_budgeted(game, resolution, DEFAULT_GRID_BUDGET)
}

/// As `oracle_minmax` with an explicit grid budget.
pub fn oracle_minmax_budgeted(
    game: &PayoffTensor,
    resolution: u32,
    budget: u128,
) -> Result<OracleResult> {
    if resolution == 0 {
        return Err(Error::validation("oracle resolution must be at least 1"));
    }
    let dims = game.dims();
    let bully_dims = &dims[1..];
    let mut grid: u128 = 1;
    for &n in bully_dims {
        let c = composition_count(resolution, n)
            .and_then(|c| grid.checked_mul(c))
            .unwrap_or(u128::MAX);
        grid = c;
    }
    if grid > budget {
        return Err(Error::Budget {
            what: "oracle grid points",
            required: grid,
            cap: budget,
        });
    }

    let (scale, ints) = scaled_bigints(game);
    // Fast path when every partial sum provably fits i128 with headroom:
    // any contracted entry is at most max|u| * r^(l-1).
    let max_abs = ints.iter().map(|v| v.abs()).max().unwrap();
    let mut bound = max_abs;
    for _ in 0..bully_dims.len() {
        bound *= BigInt::from(resolution);
    }
    let (num, comps) = if bound < BigInt::from(i128::MAX / 4) {
        let small: Vec<i128> = ints.iter().map(|v| v.to_i128().unwrap()).collect();
        let mut scanner = Scanner::<i128> {
            r: resolution,
            best: None,
            stack: Vec::new(),
        };
        scanner.scan(&small, dims);
        let (v, comps) = scanner.best.unwrap();
        (BigInt::from(v), comps)
    } else {
        let mut scanner = Scanner::<BigInt> {
            r: resolution,
            best: None,
            stack: Vec::new(),
        };
        scanner.scan(&ints, dims);
        scanner.best.unwrap()
    };

    let mut denom = scale;
    for _ in 0..bully_dims.len() {
        denom *= BigInt::from(resolution);
    }
    let hi = Rational::new(num, denom);

    let witness = BullyProfile::new(
        comps
            .iter()
            .zip(bully_dims)
            .map(|(c, &n)| {
                MixedStrategy::new(
                    (0..n)
                        .map(|k| rat(c[k] as i64, resolution as i64))
                        .collect(),
                )
                .unwrap()
            })
            .collect(),
    )
    .unwrap();

    // The bracket's defining invariant, checked on every call.
    let check = game.best_response_value(&witness)?;
    assert_eq!(check, hi, "oracle witness does not reproduce its value");

    let (u_min, u_max) = game.payoff_range();
    let n_max = *bully_dims.iter().max().unwrap();
    let slack = rat(2 * bully_dims.len() as i64 * (n_max as i64 - 1), resolution as i64)
        * (&u_max - &u_min);
    let lo_raw = &hi - slack;
    let lo = if lo_raw < u_min { u_min } else { lo_raw };

    Ok(OracleResult {
        lo,
        hi,
        witness,
        grid_points: grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn corner_game() -> PayoffTensor {
        PayoffTensor::from_ints(vec![2, 2, 2], &[1, 0, 0, 0, 0, 0, 0, 2]).unwrap()
    }

    #[test]
    fn composition_enumeration_is_lex() {
        let mut c = first_composition(2, 3);
        let mut all = vec![c.clone()];
        while next_composition(&mut c) {
            all.push(c.clone());
        }
        assert_eq!(
            all,
            vec![
                vec![0, 0, 2],
                vec![0, 1, 1],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![1, 1, 0],
                vec![2, 0, 0]
            ]
        );
        assert_eq!(composition_count(2, 3), Some(6));
        assert_eq!(composition_count(200, 2), Some(201));
        assert_eq!(composition_count(100, 4), Some(176_851));
    }

    #[test]
    fn constant_game_bracket_is_tight() {
        let c = rat(3, 4);
        let g = PayoffTensor::new(vec![2, 2, 2], vec![c.clone(); 8]).unwrap();
        let r = oracle_minmax(&g, 7).unwrap();
        assert_eq!(r.hi, c);
        assert_eq!(r.lo, c); // zero payoff range -> zero slack
    }

    #[test]
    fn corner_game_grid_hits_pure_mismatch() {
        // The pure profile (bully A on action 0, bully B on action 1) zeroes
        // both of player 1's rows, so the grid minimum is exactly 0 at every
        // resolution and the lex-first witness pins bully A's mass walk.
        let g = corner_game();
        let r = oracle_minmax(&g, 1000).unwrap();
        assert_eq!(r.hi, rat_int(0));
        assert_eq!(r.lo, rat_int(0));
        let w = &r.witness.strategies;
        assert_eq!(w[0].probs, vec![rat_int(0), rat_int(1)]);
        assert_eq!(w[1].probs, vec![rat_int(1), rat_int(0)]);
    }

    #[test]
    fn case5_uniform_is_the_unique_optimum() {
        // Zeros at (0,0,0) and (1,1,1): value 3/4, attained only at the
        // uniform/uniform profile, which lies on every even lattice.
        let g = PayoffTensor::from_ints(vec![2, 2, 2], &[0, 1, 1, 1, 1, 1, 1, 0]).unwrap();
        let r = oracle_minmax(&g, 4).unwrap();
        assert_eq!(r.hi, rat(3, 4));
        for s in &r.witness.strategies {
            assert_eq!(s.probs, vec![rat(1, 2), rat(1, 2)]);
        }
    }

    #[test]
    fn two_player_game_supported() {
        // Matching pennies: the single bully's uniform strategy caps the
        // best response at 1/2.
        let g = PayoffTensor::from_ints(vec![2, 2], &[1, 0, 0, 1]).unwrap();
        let r = oracle_minmax(&g, 2).unwrap();
        assert_eq!(r.hi, rat(1, 2));
        assert_eq!(r.witness.strategies[0].probs, vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn refinement_never_raises_hi() {
        let games = [
            corner_game(),
            PayoffTensor::from_ints(vec![2, 2, 2], &[0, 1, 1, 1, 1, 1, 1, 0]).unwrap(),
            PayoffTensor::from_ints(vec![3, 2, 2], &[1, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 1]).unwrap(),
        ];
        for g in &games {
            let coarse = oracle_minmax(g, 3).unwrap();
            let fine = oracle_minmax(g, 12).unwrap();
            assert!(fine.hi <= coarse.hi);
            assert!(coarse.lo <= coarse.hi);
            assert!(fine.lo <= fine.hi);
        }
    }

    #[test]
    fn lo_clamps_at_payoff_minimum() {
        let g = corner_game();
        let r = oracle_minmax(&g, 1).unwrap();
        assert!(r.lo >= rat_int(0));
        assert!(r.lo <= r.hi);
    }

    #[test]
    fn budget_overflow_is_reported() {
        let g = PayoffTensor::from_ints(vec![2, 10, 10], &[0; 200]).unwrap();
        match oracle_minmax(&g, 100) {
            Err(Error::Budget { required, cap, .. }) => {
                assert!(required > cap);
                assert_eq!(cap, DEFAULT_GRID_BUDGET);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn bigint_fallback_matches_semantics() {
        // Payoffs too large for the i128 fast path's safety margin.
        let huge = Rational::from_integer(BigInt::from(2u8).pow(120));
        let g = PayoffTensor::new(
            vec![2, 2],
            vec![huge.clone(), rat_int(0), rat_int(0), huge.clone()],
        )
        .unwrap();
        let r = oracle_minmax(&g, 2).unwrap();
        assert_eq!(r.hi, huge / rat_int(2));
    }

    #[test]
    fn three_by_two_by_two_fixture_bracket() {
        // Minmax value (3 - sqrt 5)/2 = 0.3819...; the r=100 grid point
        // nearest the optimum (p = q = (sqrt5 - 1)/2 = 0.618...) gives a hi
        // slightly above it.
        let g =
            PayoffTensor::from_ints(vec![3, 2, 2], &[1, 0, 0, 0, 0, 0, 1, 1, 0, 1, 0, 1]).unwrap();
        let r = oracle_minmax(&g, 100).unwrap();
        let v = GameValue::quad(rat(3, 2), rat(-1, 2), 5u32.into());
        let (vlo, vhi) = v.enclosure(96);
        assert!(r.hi >= vlo, "hi {} below true value", r.hi);
        assert!(r.lo <= vhi, "lo {} above true value", r.lo);
        // The r=100 grid minimum sits at p = q = 62/100 with value
        // max(0.62^2, 0.38) = 0.3844, within 1e-2 of the true optimum.
        assert_eq!(r.hi, rat(3844, 10000));
    }
}
