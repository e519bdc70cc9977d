//! Additive approximation by simple strategies.
//!
//! A "simple" strategy mixes uniformly over a multiset of s actions. For
//! payoffs in [0,1], restricting the punishers to simple strategies with
//! s = ceil(ln n / (2 eps^2)) raises the minmax value by at most 2*eps, so
//! exhausting the C(n+s-1, s)^2 multiset pairs gives an additive
//! approximation in quasi-polynomial time. The search is exposed with s as
//! the direct knob (the eps interface goes through [`support_size`]) because
//! honest eps values are out of desk-scale reach at moderate n.
//!
//! [`hard_instance`] generates the matching lower-bound family: a game on
//! pairs of c-subsets where any punisher profile with supports of size <= c
//! is fully exploited (payoff 1) while uniform play yields only (c/m)^2 —
//! constant support size cannot give a constant-factor approximation.

use crate::bounds::ln_bounds;
use crate::error::{Error, Result};
use crate::game::{BullyProfile, MixedStrategy, PayoffTensor};
use crate::rational::{ceil_rational, Rational};
use crate::support_enum::enumerate_supports;
use crate::value::GameValue;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Cap on the number of multiset pairs one search may visit.
pub const SIMPLE_PAIR_BUDGET: u128 = 1_000_000;

/// Multiset size sufficient for an additive 2*eps approximation on n actions:
/// s = ceil(ln n / (2 eps^2)), computed from certified logarithm bounds so the
/// result never under-shoots. Precision is raised until both bounds agree on
/// the ceiling (they must: the true ratio is irrational).
pub fn support_size(n: u64, epsilon: &Rational) -> Result<u64> {
    if n < 2 {
        return Err(Error::validation("support_size needs n >= 2"));
    }
    if !epsilon.is_positive() || *epsilon > Rational::one() {
        return Err(Error::validation("epsilon must lie in (0, 1]"));
    }
    let n_rat = Rational::from_integer(BigInt::from(n));
    let denom = Rational::from_integer(BigInt::from(2)) * epsilon * epsilon;
    let mut prec = 64;
    loop {
        let (ln_lo, ln_hi) = ln_bounds(&n_rat, prec);
        let lo = ceil_rational(&(&ln_lo / &denom));
        let hi = ceil_rational(&(&ln_hi / &denom));
        if lo == hi {
            return Ok(u64::try_from(hi).expect("desk-scale support size"));
        }
        prec *= 2;
        assert!(prec <= 1 << 16, "log bounds failed to separate a ceiling");
    }
}

/// All multisets of size s over {0..n-1}, as non-decreasing index sequences
/// in lexicographic order. Count: C(n+s-1, s).
fn enumerate_multisets(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; s];
    loop {
        out.push(cur.clone());
        let mut i = s;
        while i > 0 && cur[i - 1] == n - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        let v = cur[i - 1] + 1;
        for slot in cur.iter_mut().skip(i - 1) {
            *slot = v;
        }
    }
}

fn multiset_count(n: usize, s: usize) -> u128 {
    // C(n+s-1, s) without overflow at desk scale.
    let mut r: u128 = 1;
    for i in 0..s {
        r = r * (n as u128 + i as u128) / (i as u128 + 1);
    }
    r
}

fn uniform_on_multiset(ms: &[usize], n: usize) -> MixedStrategy {
    let s = ms.len();
    let mut probs = vec![Rational::zero(); n];
    let share = Rational::new(BigInt::one(), BigInt::from(s as u64));
    for &a in ms {
        probs[a] = &probs[a] + &share;
    }
    MixedStrategy::new(probs).expect("multiset mixture is a distribution")
}

/// Minimum best-response value over all pairs of simple punisher strategies
/// of multiset size s, with the witness profile. Requires payoffs in [0,1]
/// (normalize first via `affine_transform`). Ties keep the lexicographically
/// first pair of multisets.
pub fn approx_minmax_simple(
    game: &PayoffTensor,
    s: usize,
) -> Result<(GameValue, BullyProfile)> {
    if game.num_players() != 3 {
        return Err(Error::validation("simple search expects three players"));
    }
    if s == 0 {
        return Err(Error::validation("multiset size must be at least 1"));
    }
    let (lo, hi) = game.payoff_range();
    if lo.is_negative() || hi > Rational::one() {
        return Err(Error::validation(
            "simple search requires payoffs in [0, 1]; normalize first",
        ));
    }
    let (n2, n3) = (game.dims()[1], game.dims()[2]);
    let pairs = multiset_count(n2, s) * multiset_count(n3, s);
    if pairs > SIMPLE_PAIR_BUDGET {
        return Err(Error::Budget {
            what: "simple strategy pairs",
            required: pairs,
            cap: SIMPLE_PAIR_BUDGET,
        });
    }

    let ms2 = enumerate_multisets(n2, s);
    let ms3 = enumerate_multisets(n3, s);
    let mix3: Vec<MixedStrategy> = ms3.iter().map(|m| uniform_on_multiset(m, n3)).collect();

    let mut best: Option<(Rational, BullyProfile)> = None;
    for m2 in &ms2 {
        let sigma2 = uniform_on_multiset(m2, n2);
        for sigma3 in &mix3 {
            let profile = BullyProfile::new(vec![sigma2.clone(), sigma3.clone()])?;
            let v = game.best_response_value(&profile)?;
            if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                best = Some((v, profile));
            }
        }
    }
    let (value, profile) = best.expect("at least one multiset pair exists");
    Ok((GameValue::exact(value), profile))
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i as u128 + 1);
    }
    r
}

/// The constant-support counterexample: with m maximal such that
/// C(m,c)^2 <= n, player 1's actions are ordered pairs (S, T) of c-subsets of
/// {0..m-1} and u1((S,T), j, k) = 1 iff j in S and k in T. Punishers mixing
/// uniformly concede only (c/m)^2, yet any profile whose supports have at
/// most c actions concedes 1. Returns the tensor and m. With `padded` the
/// game is replicated onto n x n x n dimensions (action i of the padded game
/// plays original action floor(i * orig / n)), which leaves the minmax value
/// untouched.
pub fn hard_instance(n: usize, c: usize, padded: bool) -> Result<(PayoffTensor, usize)> {
    if c == 0 {
        return Err(Error::validation("subset size c must be at least 1"));
    }
    if binom(c, c) * binom(c, c) > n as u128 {
        return Err(Error::validation(
            "instance too small: no m >= c satisfies C(m,c)^2 <= n",
        ));
    }
    let mut m = c;
    while binom(m + 1, c) * binom(m + 1, c) <= n as u128 {
        m += 1;
    }

    let subsets = enumerate_supports(m, c);
    let rows = subsets.len() * subsets.len();
    let mut data = Vec::with_capacity(rows * m * m);
    let member = |set: &[usize], x: usize| set.binary_search(&x).is_ok();
    for s_set in &subsets {
        for t_set in &subsets {
            for j in 0..m {
                for k in 0..m {
                    let hit = member(s_set, j) && member(t_set, k);
                    data.push(if hit { Rational::one() } else { Rational::zero() });
                }
            }
        }
    }
    let base = PayoffTensor::new(vec![rows, m, m], data)?;
    if !padded {
        return Ok((base, m));
    }

    let mut padded_data = Vec::with_capacity(n * n * n);
    for i in 0..n {
        let oi = i * rows / n;
        for j in 0..n {
            let oj = j * m / n;
            for k in 0..n {
                let ok = k * m / n;
                padded_data.push(base.get(&[oi, oj, ok]).clone());
            }
        }
    }
    Ok((PayoffTensor::new(vec![n, n, n], padded_data)?, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn support_size_matches_the_formula() {
        // ln 2 / 2 = 0.3466 -> 1.
        assert_eq!(support_size(2, &Rational::one()).unwrap(), 1);
        // ln 8 / (2 * 1/4) = 2 ln 8 = 4.159 -> 5.
        assert_eq!(support_size(8, &rat(1, 2)).unwrap(), 5);
    }

    #[test]
    fn support_size_is_monotone() {
        let half = rat(1, 2);
        let mut prev = 0;
        for n in [2u64, 4, 16, 64, 256] {
            let s = support_size(n, &half).unwrap();
            assert!(s >= prev);
            prev = s;
        }
        // Non-increasing in epsilon.
        assert!(
            support_size(64, &rat(1, 4)).unwrap() >= support_size(64, &rat(1, 2)).unwrap()
        );
        assert!(
            support_size(64, &rat(1, 2)).unwrap() >= support_size(64, &Rational::one()).unwrap()
        );
    }

    #[test]
    fn support_size_validates_inputs() {
        assert!(support_size(1, &Rational::one()).is_err());
        assert!(support_size(4, &rat_int(0)).is_err());
        assert!(support_size(4, &rat(3, 2)).is_err());
    }

    #[test]
    fn multisets_enumerate_in_lex_order() {
        assert_eq!(
            enumerate_multisets(2, 2),
            vec![vec![0, 0], vec![0, 1], vec![1, 1]]
        );
        assert_eq!(
            enumerate_multisets(3, 1),
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(
            enumerate_multisets(2, 4).len() as u128,
            multiset_count(2, 4)
        );
        assert_eq!(multiset_count(2, 4), 5);
        assert_eq!(multiset_count(5, 3), 35);
    }

    #[test]
    fn pure_profiles_nail_games_with_pure_optima() {
        // A column of zeros: the minmax is 0 and a pure (s=1) pair finds it.
        let g = PayoffTensor::from_ints(vec![2, 2, 2], &[1, 0, 1, 1, 1, 0, 1, 1]).unwrap();
        let (v, profile) = approx_minmax_simple(&g, 1).unwrap();
        assert_eq!(v, GameValue::exact_int(0));
        assert_eq!(g.best_response_value(&profile).unwrap(), rat_int(0));
    }

    #[test]
    fn uniform_pairs_reach_the_double_mix_value() {
        // Exact-two Case 5: zeros at (0,0) and (1,1); value 3/4 at uniform.
        let g = PayoffTensor::from_ints(vec![2, 2, 2], &[0, 1, 1, 1, 1, 1, 1, 0]).unwrap();
        let (v, _) = approx_minmax_simple(&g, 2).unwrap();
        assert_eq!(v, GameValue::exact(rat(3, 4)));
        // s=1 cannot mix, so it only sees pure pairs: every pure pair has a 1
        // in some row; the best is 1... check monotonicity instead of a guess.
        let (v1, _) = approx_minmax_simple(&g, 1).unwrap();
        let (v4, _) = approx_minmax_simple(&g, 4).unwrap();
        let one = GameValue::exact_int(1);
        assert_eq!(v1, one);
        assert_eq!(v4, v);
    }

    #[test]
    fn simple_value_upper_bounds_the_exact_value() {
        use crate::support_enum::{minmax_support_enum, SolveOptions};
        let g = PayoffTensor::from_ints(vec![2, 2, 2], &[1, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        let exact = minmax_support_enum(&g, &SolveOptions::default()).unwrap();
        for s in [1usize, 2, 4] {
            let (v, _) = approx_minmax_simple(&g, s).unwrap();
            let vh = v.enclosure(64).0;
            let (elo, _) = exact.value.enclosure(64);
            assert!(vh >= elo, "simple value must stay above the exact value");
        }
    }

    #[test]
    fn search_validates_payoff_range_and_budget() {
        let out_of_range =
            PayoffTensor::from_ints(vec![2, 2, 2], &[2, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        assert!(approx_minmax_simple(&out_of_range, 1).is_err());

        let wide = PayoffTensor::new(
            vec![2, 4, 4],
            vec![Rational::zero(); 32],
        )
        .unwrap();
        match approx_minmax_simple(&wide, 40) {
            Err(Error::Budget { required, .. }) => {
                assert_eq!(required, multiset_count(4, 40) * multiset_count(4, 40));
            }
            other => panic!("expected a budget error, got {other:?}"),
        }
    }

    #[test]
    fn hard_instance_has_the_documented_shape() {
        let (g, m) = hard_instance(100, 2, false).unwrap();
        assert_eq!(m, 5);
        assert_eq!(g.dims(), &[100, 5, 5]);
        // First row: S = T = {0, 1}.
        assert_eq!(g.get(&[0, 0, 0]), &rat_int(1));
        assert_eq!(g.get(&[0, 1, 1]), &rat_int(1));
        assert_eq!(g.get(&[0, 2, 0]), &rat_int(0));
        assert_eq!(g.get(&[0, 0, 2]), &rat_int(0));
        // Uniform punishers concede exactly (c/m)^2 = 4/25.
        let uniform = BullyProfile::uniform(&[5, 5]);
        assert_eq!(g.best_response_value(&uniform).unwrap(), rat(4, 25));
    }

    #[test]
    fn hard_instance_rejects_hopeless_sizes() {
        assert!(hard_instance(0, 1, false).is_err());
        assert!(hard_instance(10, 0, false).is_err());
    }

    #[test]
    fn simple_search_on_the_hard_instance_hits_the_uniform_value() {
        // c=1, n=9: m=3, a 9x3x3 game. Best response is max_j sigma2(j) times
        // max_k sigma3(k), so uniform play is optimal and s = m reaches it.
        let (g, m) = hard_instance(9, 1, false).unwrap();
        assert_eq!(m, 3);
        let (v, profile) = approx_minmax_simple(&g, 3).unwrap();
        assert_eq!(v, GameValue::exact(rat(1, 9)));
        assert_eq!(profile.strategies[0].probs, vec![rat(1, 3); 3]);
        // Supports of size <= c = 1 concede everything.
        let pure = BullyProfile::pure(&[1, 2], &[3, 3]);
        assert_eq!(g.best_response_value(&pure).unwrap(), rat_int(1));
    }

    #[test]
    fn padding_replicates_without_changing_the_value() {
        let (g, m) = hard_instance(9, 1, true).unwrap();
        assert_eq!(m, 3);
        assert_eq!(g.dims(), &[9, 9, 9]);
        let (v, _) = approx_minmax_simple(&g, 3).unwrap();
        assert_eq!(v, GameValue::exact(rat(1, 9)));
    }
}
