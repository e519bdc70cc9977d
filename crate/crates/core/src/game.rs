//! Game representation: dense payoff tensors over exact rationals, mixed
//! strategies, bully profiles, expectation / best-response evaluation, and
//! the structural transformations (padding, affine rescale, restriction,
//! axis permutation) the solvers are built from.
//!
//! Only player 1's utility lives in a `PayoffTensor`; the punishing players'
//! own payoffs never enter a minmax computation. Storage is row-major with
//! the last player's index fastest, which also fixes the file format.

use crate::error::{Error, Result};
use crate::rational::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Hard cap on tensor entries allocated by any transformation; keeps
/// accidental `pad_game` blowups from exhausting memory.
pub const MAX_TENSOR_ENTRIES: u128 = 10_000_000;

/// Player 1's payoff array for an l-player strategic-form game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PayoffTensor {
    dims: Vec<usize>,
    data: Vec<Rational>,
}

impl PayoffTensor {
    pub fn new(dims: Vec<usize>, data: Vec<Rational>) -> Result<Self> {
        if dims.len() < 2 {
            return Err(Error::validation("a game needs at least two players"));
        }
        if dims.iter().any(|&n| n == 0) {
            return Err(Error::validation("every player needs at least one action"));
        }
        let expected: u128 = dims.iter().map(|&n| n as u128).product();
        if expected > MAX_TENSOR_ENTRIES {
            return Err(Error::Budget {
                what: "payoff tensor entries",
                required: expected,
                cap: MAX_TENSOR_ENTRIES,
            });
        }
        if data.len() as u128 != expected {
            return Err(Error::validation(format!(
                "payoff array has {} entries but dims {:?} require {}",
                data.len(),
                dims,
                expected
            )));
        }
        Ok(PayoffTensor { dims, data })
    }

    /// Convenience constructor from integer payoffs (tests, fixtures).
    pub fn from_ints(dims: Vec<usize>, data: &[i64]) -> Result<Self> {
        let rats = data
            .iter()
            .map(|&v| Rational::from_integer(BigInt::from(v)))
            .collect();
        PayoffTensor::new(dims, rats)
    }

    pub fn num_players(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        let mut off = 0;
        for (i, &a) in idx.iter().enumerate() {
            debug_assert!(a < self.dims[i]);
            off = off * self.dims[i] + a;
        }
        off
    }

    pub fn get(&self, idx: &[usize]) -> &Rational {
        &self.data[self.offset(idx)]
    }

    /// (min, max) over all entries.
    pub fn payoff_range(&self) -> (Rational, Rational) {
        let mut lo = self.data[0].clone();
        let mut hi = self.data[0].clone();
        for v in &self.data[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        (lo, hi)
    }

    pub fn is_zero_one(&self) -> bool {
        self.data
            .iter()
            .all(|v| v.is_zero() || v.is_one())
    }

    /// Exact expectation of player 1's payoff when they play `a1` and the
    /// bullies independently randomize per `profile`.
    pub fn expected_payoff(&self, a1: usize, profile: &BullyProfile) -> Result<Rational> {
        self.check_profile(profile)?;
        if a1 >= self.dims[0] {
            return Err(Error::validation(format!(
                "action {a1} out of range for player 1 ({} actions)",
                self.dims[0]
            )));
        }
        let bully_dims = &self.dims[1..];
        let mut idx = vec![0usize; bully_dims.len()];
        let mut full = vec![0usize; self.dims.len()];
        full[0] = a1;
        let mut total = Rational::zero();
        loop {
            let mut w = Rational::one();
            let mut zero = false;
            for (j, &a) in idx.iter().enumerate() {
                let p = &profile.strategies[j].probs[a];
                if p.is_zero() {
                    zero = true;
                    break;
                }
                w *= p;
            }
            if !zero {
                full[1..].copy_from_slice(&idx);
                total += &w * self.get(&full);
            }
            if !increment(&mut idx, bully_dims) {
                break;
            }
        }
        Ok(total)
    }

    /// Max over player 1's actions of `expected_payoff`, plus the full
    /// (ascending) argmax set.
    pub fn best_response(&self, profile: &BullyProfile) -> Result<(Rational, Vec<usize>)> {
        let mut best: Option<Rational> = None;
        let mut argmax = Vec::new();
        for a1 in 0..self.dims[0] {
            let v = self.expected_payoff(a1, profile)?;
            match &best {
                None => {
                    best = Some(v);
                    argmax.push(a1);
                }
                Some(b) => {
                    if v > *b {
                        best = Some(v);
                        argmax.clear();
                        argmax.push(a1);
                    } else if v == *b {
                        argmax.push(a1);
                    }
                }
            }
        }
        Ok((best.unwrap(), argmax))
    }

    pub fn best_response_value(&self, profile: &BullyProfile) -> Result<Rational> {
        Ok(self.best_response(profile)?.0)
    }

    fn check_profile(&self, profile: &BullyProfile) -> Result<()> {
        if profile.strategies.len() != self.dims.len() - 1 {
            return Err(Error::validation(format!(
                "profile has {} strategies but the game has {} punishing players",
                profile.strategies.len(),
                self.dims.len() - 1
            )));
        }
        for (j, s) in profile.strategies.iter().enumerate() {
            if s.probs.len() != self.dims[j + 1] {
                return Err(Error::validation(format!(
                    "strategy for player {} has {} entries, expected {}",
                    j + 2,
                    s.probs.len(),
                    self.dims[j + 1]
                )));
            }
        }
        Ok(())
    }

    /// Sums out one axis (a punishing player) against a weight vector,
    /// producing the game the remaining players face. Weights need not be a
    /// probability vector; callers pass mixed strategies.
    pub fn contract_axis(&self, axis: usize, weights: &[Rational]) -> Result<PayoffTensor> {
        if axis == 0 || axis >= self.dims.len() {
            return Err(Error::validation("can only contract a punishing player's axis"));
        }
        if weights.len() != self.dims[axis] {
            return Err(Error::validation("weight vector length mismatch"));
        }
        if self.dims.len() == 2 {
            return Err(Error::validation("cannot contract a two-player game further"));
        }
        let mut new_dims = self.dims.clone();
        new_dims.remove(axis);
        let mut out = vec![Rational::zero(); self.data.len() / self.dims[axis]];
        let mut idx = vec![0usize; self.dims.len()];
        for (off, v) in self.data.iter().enumerate() {
            let _ = off;
            if !weights[idx[axis]].is_zero() && !v.is_zero() {
                let mut short = Vec::with_capacity(idx.len() - 1);
                short.extend_from_slice(&idx[..axis]);
                short.extend_from_slice(&idx[axis + 1..]);
                let mut o = 0;
                for (i, &a) in short.iter().enumerate() {
                    o = o * new_dims[i] + a;
                }
                out[o] += v * &weights[idx[axis]];
            }
            increment(&mut idx, &self.dims);
        }
        PayoffTensor::new(new_dims, out)
    }

    /// Reorders player axes. `perm[k]` names the old axis that becomes axis
    /// k; it must be a permutation of 0..l.
    pub fn permute_axes(&self, perm: &[usize]) -> Result<PayoffTensor> {
        let l = self.dims.len();
        let mut seen = vec![false; l];
        if perm.len() != l || perm.iter().any(|&p| p >= l || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::validation("axis permutation must visit every player once"));
        }
        let new_dims: Vec<usize> = perm.iter().map(|&p| self.dims[p]).collect();
        let mut out = vec![Rational::zero(); self.data.len()];
        let mut idx = vec![0usize; l];
        let mut new_idx = vec![0usize; l];
        for v in &self.data {
            for k in 0..l {
                new_idx[k] = idx[perm[k]];
            }
            let mut o = 0;
            for (k, &a) in new_idx.iter().enumerate() {
                o = o * new_dims[k] + a;
            }
            out[o] = v.clone();
            increment(&mut idx, &self.dims);
        }
        PayoffTensor::new(new_dims, out)
    }

    /// Swaps the two punishing players of a three-player game.
    pub fn swap_bullies(&self) -> Result<PayoffTensor> {
        if self.dims.len() != 3 {
            return Err(Error::validation("bully swap needs exactly three players"));
        }
        self.permute_axes(&[0, 2, 1])
    }

    /// Keeps only the listed player-1 actions (in the given order).
    pub fn restrict_player1(&self, keep: &[usize]) -> Result<PayoffTensor> {
        if keep.is_empty() {
            return Err(Error::validation("player 1 must keep at least one action"));
        }
        let slice = self.data.len() / self.dims[0];
        let mut out = Vec::with_capacity(keep.len() * slice);
        for &a in keep {
            if a >= self.dims[0] {
                return Err(Error::validation(format!("player-1 action {a} out of range")));
            }
            out.extend_from_slice(&self.data[a * slice..(a + 1) * slice]);
        }
        let mut dims = self.dims.clone();
        dims[0] = keep.len();
        PayoffTensor::new(dims, out)
    }

    /// Drops player-1 actions whose payoff slice duplicates an earlier one.
    /// Best responses — and hence the minmax value — are unchanged. Returns
    /// the reduced game and the kept original action indices.
    pub fn dedup_player1(&self) -> (PayoffTensor, Vec<usize>) {
        let slice = self.data.len() / self.dims[0];
        let mut keep: Vec<usize> = Vec::new();
        for a in 0..self.dims[0] {
            let row = &self.data[a * slice..(a + 1) * slice];
            if !keep
                .iter()
                .any(|&b| &self.data[b * slice..(b + 1) * slice] == row)
            {
                keep.push(a);
            }
        }
        (self.restrict_player1(&keep).unwrap(), keep)
    }

    /// Replaces every payoff u by a*u + b (a > 0). Minmax values transform
    /// the same way, so results on the image map back exactly.
    pub fn affine_transform(&self, a: &Rational, b: &Rational) -> Result<PayoffTensor> {
        if !a.is_positive() {
            return Err(Error::validation("affine payoff scale must be positive"));
        }
        let data = self.data.iter().map(|u| u * a + b).collect();
        PayoffTensor::new(self.dims.clone(), data)
    }

    /// Rescales payoffs onto [0,1]; returns the transformed game together
    /// with the forward map (scale, shift) it applied, so a value v of the
    /// image corresponds to (v - shift)/scale of the original. Constant
    /// games map to the all-zero game.
    pub fn normalize_unit(&self) -> (PayoffTensor, Rational, Rational) {
        let (lo, hi) = self.payoff_range();
        let span = &hi - &lo;
        let (scale, shift) = if span.is_zero() {
            (Rational::one(), -lo)
        } else {
            (span.recip(), -&lo / &span)
        };
        let g = self.affine_transform(&scale, &shift).unwrap();
        (g, scale, shift)
    }

    /// Copies every player's strategy set c-fold: each player of the padded
    /// game has n^c actions and action i behaves as original action
    /// floor(i / n^(c-1)). Requires all players to share one action count n.
    pub fn pad_game(&self, c: u32) -> Result<PayoffTensor> {
        if c < 2 {
            return Err(Error::validation("padding exponent must be at least 2"));
        }
        let n = self.dims[0];
        if self.dims.iter().any(|&m| m != n) {
            return Err(Error::validation(
                "padding requires every player to have the same number of actions",
            ));
        }
        let l = self.dims.len() as u32;
        let mut padded_n: u128 = 1;
        for _ in 0..c {
            padded_n = padded_n.saturating_mul(n as u128);
        }
        let total = (0..l).try_fold(1u128, |acc, _| {
            let next = acc.saturating_mul(padded_n);
            if next > MAX_TENSOR_ENTRIES {
                None
            } else {
                Some(next)
            }
        });
        let Some(total) = total else {
            return Err(Error::Budget {
                what: "padded tensor entries",
                required: u128::MAX,
                cap: MAX_TENSOR_ENTRIES,
            });
        };
        let padded_n = padded_n as usize;
        let block = padded_n / n; // n^(c-1)
        let new_dims = vec![padded_n; self.dims.len()];
        let mut out = Vec::with_capacity(total as usize);
        let mut idx = vec![0usize; self.dims.len()];
        let mut orig = vec![0usize; self.dims.len()];
        loop {
            for (k, &a) in idx.iter().enumerate() {
                orig[k] = a / block;
            }
            out.push(self.get(&orig).clone());
            if !increment(&mut idx, &new_dims) {
                break;
            }
        }
        PayoffTensor::new(new_dims, out)
    }

    /// Lifts a bully profile of this game onto the c-padded game by
    /// splitting each action's mass uniformly over its copies.
    pub fn lift_profile(&self, profile: &BullyProfile, c: u32) -> Result<BullyProfile> {
        self.check_profile(profile)?;
        let n = self.dims[0];
        let mut padded_n = 1usize;
        for _ in 0..c {
            padded_n *= n;
        }
        let block = padded_n / n;
        let block_rat = Rational::from_integer(BigInt::from(block as u64));
        let mut lifted = Vec::new();
        for s in &profile.strategies {
            let mut probs = Vec::with_capacity(padded_n);
            for i in 0..padded_n {
                probs.push(&s.probs[i / block] / &block_rat);
            }
            lifted.push(MixedStrategy::new(probs)?);
        }
        BullyProfile::new(lifted)
    }

    /// Common denominator L of all entries and the entries scaled to
    /// integers (u * L), when they fit i128. Fast paths in the enumeration
    /// modules run on these; `None` falls back to exact big arithmetic.
    pub fn scaled_i128(&self) -> Option<(i128, Vec<i128>)> {
        let mut l = BigInt::one();
        for v in &self.data {
            l = l.lcm(v.denom());
        }
        let scale = l.to_i128()?;
        let mut out = Vec::with_capacity(self.data.len());
        for v in &self.data {
            let scaled = v.numer() * (&l / v.denom());
            out.push(scaled.to_i128()?);
        }
        Some((scale, out))
    }
}

/// Odometer step over a multi-index; returns false once it wraps to zero.
pub(crate) fn increment(idx: &mut [usize], dims: &[usize]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < dims[k] {
            return true;
        }
        idx[k] = 0;
    }
    false
}

/// A probability distribution over one player's actions; exact simplex
/// membership is enforced at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedStrategy {
    pub probs: Vec<Rational>,
}

impl MixedStrategy {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::validation("a strategy needs at least one action"));
        }
        if probs.iter().any(|p| p.is_negative()) {
            return Err(Error::validation("strategy probabilities must be nonnegative"));
        }
        let sum: Rational = probs.iter().sum();
        if !sum.is_one() {
            return Err(Error::validation(format!(
                "strategy probabilities sum to {sum}, expected exactly 1"
            )));
        }
        Ok(MixedStrategy { probs })
    }

    pub fn uniform(n: usize) -> Self {
        let p = Rational::new(BigInt::one(), BigInt::from(n as u64));
        MixedStrategy {
            probs: vec![p; n],
        }
    }

    pub fn point_mass(action: usize, n: usize) -> Self {
        let mut probs = vec![Rational::zero(); n];
        probs[action] = Rational::one();
        MixedStrategy { probs }
    }

    /// Uniform over a nonempty subset of actions.
    pub fn uniform_on(support: &[usize], n: usize) -> Self {
        let p = Rational::new(BigInt::one(), BigInt::from(support.len() as u64));
        let mut probs = vec![Rational::zero(); n];
        for &a in support {
            probs[a] = p.clone();
        }
        MixedStrategy { probs }
    }

    pub fn support(&self) -> Vec<usize> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

/// The punishing players' joint (uncorrelated) strategy profile: one mixed
/// strategy per player 2..l.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BullyProfile {
    pub strategies: Vec<MixedStrategy>,
}

impl BullyProfile {
    pub fn new(strategies: Vec<MixedStrategy>) -> Result<Self> {
        if strategies.is_empty() {
            return Err(Error::validation("profile needs at least one punishing player"));
        }
        Ok(BullyProfile { strategies })
    }

    pub fn uniform(bully_dims: &[usize]) -> Self {
        BullyProfile {
            strategies: bully_dims.iter().map(|&n| MixedStrategy::uniform(n)).collect(),
        }
    }

    pub fn pure(actions: &[usize], bully_dims: &[usize]) -> Self {
        BullyProfile {
            strategies: actions
                .iter()
                .zip(bully_dims)
                .map(|(&a, &n)| MixedStrategy::point_mass(a, n))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    /// 2x2x2 game with u(0,0,0)=1, u(1,1,1)=2, zero elsewhere.
    fn corner_game() -> PayoffTensor {
        PayoffTensor::from_ints(vec![2, 2, 2], &[1, 0, 0, 0, 0, 0, 0, 2]).unwrap()
    }

    fn profile(p: Rational, q: Rational) -> BullyProfile {
        BullyProfile::new(vec![
            MixedStrategy::new(vec![p.clone(), Rational::one() - p]).unwrap(),
            MixedStrategy::new(vec![q.clone(), Rational::one() - q]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn expected_payoff_uniform() {
        let g = corner_game();
        let u = BullyProfile::uniform(&[2, 2]);
        assert_eq!(g.expected_payoff(0, &u).unwrap(), rat(1, 4));
        assert_eq!(g.expected_payoff(1, &u).unwrap(), rat(1, 2));
    }

    #[test]
    fn expected_payoff_pure_profiles() {
        let g = corner_game();
        for j in 0..2 {
            for k in 0..2 {
                let p = BullyProfile::pure(&[j, k], &[2, 2]);
                for a1 in 0..2 {
                    assert_eq!(&g.expected_payoff(a1, &p).unwrap(), g.get(&[a1, j, k]));
                }
            }
        }
    }

    #[test]
    fn expected_payoff_three_fifths() {
        // Both bullies play action 0 with probability 3/5; row 1 pays 2 only
        // at (1,1): 2 * (2/5)^2 = 8/25.
        let g = corner_game();
        let pr = profile(rat(3, 5), rat(3, 5));
        assert_eq!(g.expected_payoff(1, &pr).unwrap(), rat(8, 25));
    }

    #[test]
    fn best_response_uniform() {
        let g = corner_game();
        let (v, arg) = g.best_response(&BullyProfile::uniform(&[2, 2])).unwrap();
        assert_eq!(v, rat(1, 2));
        assert_eq!(arg, vec![1]);
    }

    #[test]
    fn best_response_ties_report_full_argmax() {
        // Zeros at (0,0,0) and (1,1,1), ones elsewhere: both rows give 3/4
        // under uniform play.
        let g = PayoffTensor::from_ints(vec![2, 2, 2], &[0, 1, 1, 1, 1, 1, 1, 0]).unwrap();
        let (v, arg) = g.best_response(&BullyProfile::uniform(&[2, 2])).unwrap();
        assert_eq!(v, rat(3, 4));
        assert_eq!(arg, vec![0, 1]);
    }

    #[test]
    fn constant_game_best_response() {
        let g = PayoffTensor::from_ints(vec![3, 2, 2], &[7; 12]).unwrap();
        let pr = profile(rat(1, 3), rat(2, 7));
        assert_eq!(g.best_response_value(&pr).unwrap(), rat_int(7));
    }

    #[test]
    fn multilinearity_in_each_bully() {
        // Fixing q, the expectation is affine in p: value at p=1/2 equals the
        // average of the values at p=0 and p=1.
        let g = PayoffTensor::from_ints(vec![2, 2, 2], &[3, -1, 4, 1, -5, 9, 2, 6]).unwrap();
        for a1 in 0..2 {
            let q = rat(2, 7);
            let at = |p: Rational| g.expected_payoff(a1, &profile(p, q.clone())).unwrap();
            let mid = at(rat(1, 2));
            assert_eq!(mid, (at(rat_int(0)) + at(rat_int(1))) / rat_int(2));
        }
    }

    #[test]
    fn contract_axis_matches_expectation() {
        let g = PayoffTensor::from_ints(vec![2, 2, 2], &[3, -1, 4, 1, -5, 9, 2, 6]).unwrap();
        let w = vec![rat(1, 3), rat(2, 3)];
        let m = g.contract_axis(1, &w).unwrap();
        assert_eq!(m.dims(), &[2, 2]);
        // Entry (a1, k) = sum_j w[j] u(a1, j, k).
        for a1 in 0..2 {
            for k in 0..2 {
                let want = &w[0] * g.get(&[a1, 0, k]) + &w[1] * g.get(&[a1, 1, k]);
                assert_eq!(m.get(&[a1, k]), &want);
            }
        }
    }

    #[test]
    fn permute_and_swap() {
        let g = PayoffTensor::from_ints(vec![2, 3, 2], &(0..12).collect::<Vec<_>>()).unwrap();
        let s = g.permute_axes(&[0, 2, 1]).unwrap();
        assert_eq!(s.dims(), &[2, 2, 3]);
        for a in 0..2 {
            for j in 0..3 {
                for k in 0..2 {
                    assert_eq!(g.get(&[a, j, k]), s.get(&[a, k, j]));
                }
            }
        }
        let back = s.permute_axes(&[0, 2, 1]).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn pad_replicates_actions() {
        let g = corner_game();
        // c=2: n' = 4, each action copied twice.
        let p = g.pad_game(2).unwrap();
        assert_eq!(p.dims(), &[4, 4, 4]);
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    assert_eq!(p.get(&[i, j, k]), g.get(&[i / 2, j / 2, k / 2]));
                }
            }
        }
        // c=3: n' = 8, actions 0..3 replicate original action 0, 4..7
        // replicate action 1.
        let p = g.pad_game(3).unwrap();
        assert_eq!(p.dims(), &[8, 8, 8]);
        for i in 0..8 {
            for j in 0..8 {
                for k in 0..8 {
                    assert_eq!(p.get(&[i, j, k]), g.get(&[i / 4, j / 4, k / 4]));
                }
            }
        }
    }

    #[test]
    fn pad_preserves_best_response_under_lifting() {
        let g = corner_game();
        let p = g.pad_game(2).unwrap();
        let pr = profile(rat(3, 5), rat(1, 3));
        let lifted = g.lift_profile(&pr, 2).unwrap();
        let padded_p1 = p.restrict_player1(&[0, 2]).unwrap();
        assert_eq!(
            g.best_response_value(&pr).unwrap(),
            padded_p1.best_response_value(&lifted).unwrap()
        );
        // The full padded game only adds duplicate rows, so its best
        // response agrees too.
        assert_eq!(
            g.best_response_value(&pr).unwrap(),
            p.best_response_value(&lifted).unwrap()
        );
    }

    #[test]
    fn pad_rejects_oversized_output() {
        let g = PayoffTensor::from_ints(vec![10, 10, 10], &[0; 1000]).unwrap();
        match g.pad_game(3) {
            Err(Error::Budget { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn affine_scales_payoffs_and_argmax_is_stable() {
        let g = corner_game();
        let h = g.affine_transform(&rat(1, 2), &rat_int(0)).unwrap();
        let (lo, hi) = h.payoff_range();
        assert_eq!(lo, rat_int(0));
        assert_eq!(hi, rat_int(1));
        let pr = profile(rat(3, 5), rat(3, 5));
        assert_eq!(g.best_response(&pr).unwrap().1, h.best_response(&pr).unwrap().1);
        let gv = g.best_response_value(&pr).unwrap();
        let hv = h.best_response_value(&pr).unwrap();
        assert_eq!(hv, gv / rat_int(2));
    }

    #[test]
    fn affine_rejects_nonpositive_scale() {
        let g = corner_game();
        assert!(g.affine_transform(&rat_int(0), &rat_int(1)).is_err());
        assert!(g.affine_transform(&rat(-1, 2), &rat_int(1)).is_err());
    }

    #[test]
    fn normalize_unit_round_trip() {
        let g = PayoffTensor::from_ints(vec![2, 2], &[-3, 5, 1, 2]).unwrap();
        let (n, scale, shift) = g.normalize_unit();
        let (lo, hi) = n.payoff_range();
        assert_eq!(lo, rat_int(0));
        assert_eq!(hi, rat_int(1));
        // v_norm = scale * v + shift, so v = (v_norm - shift) / scale.
        for (orig, norm) in g.data().iter().zip(n.data()) {
            assert_eq!(orig * &scale + &shift, norm.clone());
        }
    }

    #[test]
    fn dedup_drops_copied_rows() {
        let g = corner_game();
        let p = g.pad_game(2).unwrap();
        let (d, kept) = p.dedup_player1();
        assert_eq!(kept, vec![0, 2]);
        assert_eq!(d.dims(), &[2, 4, 4]);
    }

    #[test]
    fn strategy_validation() {
        assert!(MixedStrategy::new(vec![rat(1, 2), rat(1, 3)]).is_err());
        assert!(MixedStrategy::new(vec![rat(3, 2), rat(-1, 2)]).is_err());
        assert!(MixedStrategy::new(vec![rat(1, 2), rat(1, 2)]).is_ok());
        let u = MixedStrategy::uniform(3);
        assert_eq!(u.probs.iter().sum::<Rational>(), rat_int(1));
        assert_eq!(MixedStrategy::uniform_on(&[0, 2], 4).support(), vec![0, 2]);
    }

    #[test]
    fn tensor_validation() {
        assert!(PayoffTensor::from_ints(vec![2, 2], &[1, 2, 3]).is_err());
        assert!(PayoffTensor::from_ints(vec![2], &[1, 2]).is_err());
        assert!(PayoffTensor::from_ints(vec![2, 0], &[]).is_err());
    }

    #[test]
    fn scaled_integers() {
        let g = PayoffTensor::new(
            vec![2, 2],
            vec![rat(1, 2), rat(1, 3), rat_int(1), rat(5, 6)],
        )
        .unwrap();
        let (scale, ints) = g.scaled_i128().unwrap();
        assert_eq!(scale, 6);
        assert_eq!(ints, vec![3, 2, 6, 5]);
    }
}
