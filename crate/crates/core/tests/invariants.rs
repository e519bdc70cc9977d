//! Property tests for the algebraic identities the tensor layer promises:
//! multilinearity of expected payoff, affine equivariance of best response,
//! feasibility of every profile against the solved value, and padding
//! invariance under the canonical profile lift.

use std::cmp::Ordering;

use proptest::prelude::*;

use threatval::rational::{rat, rat_int};
use threatval::support_enum::{minmax_support_enum, SolveOptions};
use threatval::value::ValueCmp;
use threatval::{BullyProfile, MixedStrategy, PayoffTensor, Rational};

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-24i64..=24, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn arb_tensor(dims: &'static [usize]) -> impl Strategy<Value = PayoffTensor> {
    let len = dims.iter().product::<usize>();
    proptest::collection::vec(arb_rational(), len)
        .prop_map(move |data| PayoffTensor::new(dims.to_vec(), data).unwrap())
}

/// Random mixed strategy from nonnegative integer weights (uniform when all
/// weights come out zero).
fn arb_strategy(n: usize) -> impl Strategy<Value = MixedStrategy> {
    proptest::collection::vec(0u32..=8, n).prop_map(move |w| {
        let total: u32 = w.iter().sum();
        if total == 0 {
            return MixedStrategy::uniform(n);
        }
        let probs = w.iter().map(|&x| rat(x as i64, total as i64)).collect();
        MixedStrategy::new(probs).unwrap()
    })
}

fn midpoint(a: &MixedStrategy, b: &MixedStrategy) -> MixedStrategy {
    let probs = a
        .probs
        .iter()
        .zip(&b.probs)
        .map(|(x, y)| (x + y) / rat_int(2))
        .collect();
    MixedStrategy::new(probs).unwrap()
}

proptest! {
    /// Fixing player 3, the expected payoff is affine in player 2's
    /// strategy: the value at the midpoint is the midpoint of the values.
    #[test]
    fn expected_payoff_is_multilinear(
        g in arb_tensor(&[2, 3, 2]),
        s2a in arb_strategy(3),
        s2b in arb_strategy(3),
        s3 in arb_strategy(2),
    ) {
        for a1 in 0..2 {
            let at = |s2: &MixedStrategy| {
                let profile = BullyProfile::new(vec![s2.clone(), s3.clone()]).unwrap();
                g.expected_payoff(a1, &profile).unwrap()
            };
            let mid = at(&midpoint(&s2a, &s2b));
            let avg = (at(&s2a) + at(&s2b)) / rat_int(2);
            prop_assert_eq!(mid, avg);
        }
    }

    /// Best response commutes with positive affine payoff changes.
    #[test]
    fn best_response_is_affine_equivariant(
        g in arb_tensor(&[3, 2, 2]),
        s2 in arb_strategy(2),
        s3 in arb_strategy(2),
        a_num in 1i64..=5,
        a_den in 1i64..=3,
        b in arb_rational(),
    ) {
        let a = rat(a_num, a_den);
        let profile = BullyProfile::new(vec![s2, s3]).unwrap();
        let transformed = g.affine_transform(&a, &b).unwrap();
        let direct = transformed.best_response_value(&profile).unwrap();
        let mapped = g.best_response_value(&profile).unwrap() * &a + &b;
        prop_assert_eq!(direct, mapped);
    }

    /// Every profile is a feasible threat, so its best response can never
    /// undercut the solved minmax value.
    #[test]
    fn no_profile_beats_the_solved_value(
        g in arb_tensor(&[2, 2, 2]),
        s2 in arb_strategy(2),
        s3 in arb_strategy(2),
    ) {
        let sol = minmax_support_enum(&g, &SolveOptions::default()).unwrap();
        let profile = BullyProfile::new(vec![s2, s3]).unwrap();
        let br = g.best_response_value(&profile).unwrap();
        prop_assert!(matches!(
            sol.value.cmp_rational(&br),
            ValueCmp::Decided(Ordering::Less | Ordering::Equal)
        ), "profile beats solved value {:?}: br {}", sol.value, br);
    }

    /// Padding copies actions; lifting a profile onto the copies leaves the
    /// best response unchanged.
    #[test]
    fn padding_preserves_best_response(
        g in arb_tensor(&[2, 2, 2]),
        s2 in arb_strategy(2),
        s3 in arb_strategy(2),
    ) {
        let profile = BullyProfile::new(vec![s2, s3]).unwrap();
        let padded = g.pad_game(2).unwrap();
        let lifted = g.lift_profile(&profile, 2).unwrap();
        prop_assert_eq!(
            g.best_response_value(&profile).unwrap(),
            padded.best_response_value(&lifted).unwrap()
        );
    }
}
