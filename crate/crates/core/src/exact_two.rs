//! Exact solver for 2 x n x n' three-player games with 0-1 payoffs, by a
//! five-case analysis over the zero pattern. Runs in O(n n') payoff reads
//! and always returns one of the values {1, 0, 1/2, 1/2, 3/4} together with
//! an optimal threat profile built from the case witnesses.
//!
//! Case order matters: each case's optimality argument assumes the earlier
//! ones failed. In particular, once case 2 fails, every pure bully pair
//! leaves player 1 some action with payoff 1, which both pins the matching-
//! pennies payoffs of cases 3/4 at exactly 1/2 and forces the three
//! non-zero entries of each case-5 row to be 1 (zeros of different rows of
//! player 1 can share neither a player-2 nor a player-3 coordinate).

use crate::error::{Error, Result};
use crate::game::{BullyProfile, MixedStrategy, PayoffTensor};
use crate::rational::rat;
use crate::value::GameValue;
use num_traits::{One, Zero};

/// The pure actions that witness a case's defining predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CaseWitness {
    /// Case 1: row `i` pays 1 everywhere.
    Safe { i: usize },
    /// Case 2: the pure pair (j, k) pays 0 against both rows.
    PureThreat { j: usize, k: usize },
    /// Case 3: player 2 pins column `j`; player 3 mixes k (zeroing row 0)
    /// and k2 (zeroing row 1).
    MatchingPenniesP3 { j: usize, k: usize, k2: usize },
    /// Case 4: player 3 pins column `k`; player 2 mixes j (zeroing row 0)
    /// and j2 (zeroing row 1).
    MatchingPenniesP2 { j: usize, j2: usize, k: usize },
    /// Case 5: zeros at (0, j, k) and (1, j2, k2) with j != j2, k != k2;
    /// both bullies mix their two coordinates uniformly.
    DoubleMix {
        j: usize,
        j2: usize,
        k: usize,
        k2: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    /// 1 through 5, the first applicable case.
    pub case_id: u8,
    pub witness: CaseWitness,
}

impl CaseResult {
    /// Re-checks the defining predicate of `case_id` against the game.
    /// Property tests call this to pin the classifier to its contract.
    pub fn witness_satisfies_predicate(&self, game: &PayoffTensor) -> bool {
        let one = |i: usize, j: usize, k: usize| game.get(&[i, j, k]).is_one();
        let zero = |i: usize, j: usize, k: usize| game.get(&[i, j, k]).is_zero();
        let (n, np) = (game.dims()[1], game.dims()[2]);
        match self.witness {
            CaseWitness::Safe { i } => {
                (0..n).all(|j| (0..np).all(|k| one(i, j, k)))
            }
            CaseWitness::PureThreat { j, k } => zero(0, j, k) && zero(1, j, k),
            CaseWitness::MatchingPenniesP3 { j, k, k2 } => {
                k != k2 && zero(0, j, k) && zero(1, j, k2)
            }
            CaseWitness::MatchingPenniesP2 { j, j2, k } => {
                j != j2 && zero(0, j, k) && zero(1, j2, k)
            }
            CaseWitness::DoubleMix { j, j2, k, k2 } => {
                j != j2 && k != k2 && zero(0, j, k) && zero(1, j2, k2)
            }
        }
    }
}

fn validate(game: &PayoffTensor) -> Result<()> {
    if game.num_players() != 3 {
        return Err(Error::validation("the two-row solver needs exactly three players"));
    }
    if game.dims()[0] != 2 {
        return Err(Error::validation(format!(
            "player 1 must have exactly 2 actions, found {}",
            game.dims()[0]
        )));
    }
    if !game.is_zero_one() {
        return Err(Error::validation("payoffs must all be 0 or 1"));
    }
    Ok(())
}

/// Finds the first applicable case in order 1..5 with its lexicographically
/// smallest witness.
pub fn classify_case(game: &PayoffTensor) -> Result<CaseResult> {
    validate(game)?;
    let (n, np) = (game.dims()[1], game.dims()[2]);
    let one = |i: usize, j: usize, k: usize| game.get(&[i, j, k]).is_one();
    let zero = |i: usize, j: usize, k: usize| game.get(&[i, j, k]).is_zero();

    // Case 1: a safe row of all ones.
    for i in 0..2 {
        if (0..n).all(|j| (0..np).all(|k| one(i, j, k))) {
            return Ok(CaseResult {
                case_id: 1,
                witness: CaseWitness::Safe { i },
            });
        }
    }
    // Case 2: a pure pair zeroing both rows.
    for j in 0..n {
        for k in 0..np {
            if zero(0, j, k) && zero(1, j, k) {
                return Ok(CaseResult {
                    case_id: 2,
                    witness: CaseWitness::PureThreat { j, k },
                });
            }
        }
    }
    // Case 3: some player-2 column where each row has a zero.
    for j in 0..n {
        let k = (0..np).find(|&k| zero(0, j, k));
        let k2 = (0..np).find(|&k| zero(1, j, k));
        if let (Some(k), Some(k2)) = (k, k2) {
            // k != k2, else case 2 would have fired on (j, k).
            return Ok(CaseResult {
                case_id: 3,
                witness: CaseWitness::MatchingPenniesP3 { j, k, k2 },
            });
        }
    }
    // Case 4: some player-3 column where each row has a zero.
    for k in 0..np {
        let j = (0..n).find(|&j| zero(0, j, k));
        let j2 = (0..n).find(|&j| zero(1, j, k));
        if let (Some(j), Some(j2)) = (j, j2) {
            return Ok(CaseResult {
                case_id: 4,
                witness: CaseWitness::MatchingPenniesP2 { j, j2, k },
            });
        }
    }
    // Case 5: each row has a zero (case 1 failed), and zeros of different
    // rows share no coordinate (cases 2-4 failed).
    let (j, k) = first_zero(game, 0)
        .expect("case 1 failed for row 0, so row 0 has a zero");
    let (j2, k2) = first_zero(game, 1)
        .expect("case 1 failed for row 1, so row 1 has a zero");
    debug_assert!(j != j2 && k != k2);
    Ok(CaseResult {
        case_id: 5,
        witness: CaseWitness::DoubleMix { j, j2, k, k2 },
    })
}

fn first_zero(game: &PayoffTensor, i: usize) -> Option<(usize, usize)> {
    let (n, np) = (game.dims()[1], game.dims()[2]);
    for j in 0..n {
        for k in 0..np {
            if game.get(&[i, j, k]).is_zero() {
                return Some((j, k));
            }
        }
    }
    None
}

/// Exact minmax value and an optimal threat for a 2 x n x n' 0-1 game.
/// The value is one of {1, 0, 1/2, 3/4} by case.
pub fn solve_two_by(game: &PayoffTensor) -> Result<(GameValue, BullyProfile)> {
    let case = classify_case(game)?;
    let (n, np) = (game.dims()[1], game.dims()[2]);
    let (value, profile) = match case.witness {
        CaseWitness::Safe { .. } => {
            // Every profile is an optimal threat; report the first pure one.
            (rat(1, 1), BullyProfile::pure(&[0, 0], &[n, np]))
        }
        CaseWitness::PureThreat { j, k } => (rat(0, 1), BullyProfile::pure(&[j, k], &[n, np])),
        CaseWitness::MatchingPenniesP3 { j, k, k2 } => {
            let (a, b) = if k < k2 { (k, k2) } else { (k2, k) };
            (
                rat(1, 2),
                BullyProfile::new(vec![
                    MixedStrategy::point_mass(j, n),
                    MixedStrategy::uniform_on(&[a, b], np),
                ])
                .unwrap(),
            )
        }
        CaseWitness::MatchingPenniesP2 { j, j2, k } => {
            let (a, b) = if j < j2 { (j, j2) } else { (j2, j) };
            (
                rat(1, 2),
                BullyProfile::new(vec![
                    MixedStrategy::uniform_on(&[a, b], n),
                    MixedStrategy::point_mass(k, np),
                ])
                .unwrap(),
            )
        }
        CaseWitness::DoubleMix { j, j2, k, k2 } => {
            let (ja, jb) = if j < j2 { (j, j2) } else { (j2, j) };
            let (ka, kb) = if k < k2 { (k, k2) } else { (k2, k) };
            (
                rat(3, 4),
                BullyProfile::new(vec![
                    MixedStrategy::uniform_on(&[ja, jb], n),
                    MixedStrategy::uniform_on(&[ka, kb], np),
                ])
                .unwrap(),
            )
        }
    };
    // The case analysis promises the profile realizes the value exactly.
    let br = game.best_response_value(&profile)?;
    assert_eq!(br, value, "case {} profile does not realize its value", case.case_id);
    Ok((GameValue::Exact(value), profile))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_int;

    fn game(data: &[i64]) -> PayoffTensor {
        PayoffTensor::from_ints(vec![2, 2, 2], data).unwrap()
    }

    #[test]
    fn case1_safe_row() {
        let g = game(&[1, 1, 1, 1, 0, 1, 1, 0]);
        let c = classify_case(&g).unwrap();
        assert_eq!(c.case_id, 1);
        assert_eq!(c.witness, CaseWitness::Safe { i: 0 });
        assert!(c.witness_satisfies_predicate(&g));
        let (v, _) = solve_two_by(&g).unwrap();
        assert_eq!(v, GameValue::Exact(rat_int(1)));
    }

    #[test]
    fn case2_pure_threat() {
        let g = game(&[0, 1, 1, 1, 0, 1, 1, 1]);
        let c = classify_case(&g).unwrap();
        assert_eq!(c.case_id, 2);
        assert_eq!(c.witness, CaseWitness::PureThreat { j: 0, k: 0 });
        let (v, p) = solve_two_by(&g).unwrap();
        assert_eq!(v, GameValue::Exact(rat_int(0)));
        assert_eq!(p.strategies[0].probs, vec![rat_int(1), rat_int(0)]);
        assert_eq!(p.strategies[1].probs, vec![rat_int(1), rat_int(0)]);
    }

    #[test]
    fn all_zeros_is_case2() {
        let g = game(&[0; 8]);
        let (v, _) = solve_two_by(&g).unwrap();
        assert_eq!(v, GameValue::Exact(rat_int(0)));
    }

    #[test]
    fn case3_player3_mixes() {
        // Zeros at (0,0,0) and (1,0,1): player 2 pins j=0, player 3 mixes.
        let g = game(&[0, 1, 1, 1, 1, 0, 1, 1]);
        let c = classify_case(&g).unwrap();
        assert_eq!(c.case_id, 3);
        assert_eq!(
            c.witness,
            CaseWitness::MatchingPenniesP3 { j: 0, k: 0, k2: 1 }
        );
        let (v, p) = solve_two_by(&g).unwrap();
        assert_eq!(v, GameValue::Exact(rat(1, 2)));
        assert_eq!(p.strategies[0].probs, vec![rat_int(1), rat_int(0)]);
        assert_eq!(p.strategies[1].probs, vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn case4_player2_mixes() {
        // Zeros at (0,0,0) and (1,1,0): player 3 pins k=0, player 2 mixes.
        let g = game(&[0, 1, 1, 1, 1, 1, 0, 1]);
        let c = classify_case(&g).unwrap();
        assert_eq!(c.case_id, 4);
        assert_eq!(
            c.witness,
            CaseWitness::MatchingPenniesP2 { j: 0, j2: 1, k: 0 }
        );
        let (v, p) = solve_two_by(&g).unwrap();
        assert_eq!(v, GameValue::Exact(rat(1, 2)));
        assert_eq!(p.strategies[0].probs, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(p.strategies[1].probs, vec![rat_int(1), rat_int(0)]);
    }

    #[test]
    fn case5_double_mix() {
        let g = game(&[0, 1, 1, 1, 1, 1, 1, 0]);
        let c = classify_case(&g).unwrap();
        assert_eq!(c.case_id, 5);
        assert_eq!(
            c.witness,
            CaseWitness::DoubleMix {
                j: 0,
                j2: 1,
                k: 0,
                k2: 1
            }
        );
        assert!(c.witness_satisfies_predicate(&g));
        let (v, p) = solve_two_by(&g).unwrap();
        assert_eq!(v, GameValue::Exact(rat(3, 4)));
        for s in &p.strategies {
            assert_eq!(s.probs, vec![rat(1, 2), rat(1, 2)]);
        }
    }

    #[test]
    fn non_square_bully_dims() {
        // 2x3x2 game, zeros at (0,2,0) and (1,2,1); columns j=0,1 all ones.
        let g = PayoffTensor::from_ints(
            vec![2, 3, 2],
            &[1, 1, 1, 1, 0, 1, 1, 1, 1, 1, 1, 0],
        )
        .unwrap();
        let c = classify_case(&g).unwrap();
        assert_eq!(c.case_id, 3);
        assert_eq!(
            c.witness,
            CaseWitness::MatchingPenniesP3 { j: 2, k: 0, k2: 1 }
        );
        let (v, _) = solve_two_by(&g).unwrap();
        assert_eq!(v, GameValue::Exact(rat(1, 2)));
    }

    #[test]
    fn single_action_bullies() {
        // 2x1x1 games: value is the better of the two entries.
        let g = PayoffTensor::from_ints(vec![2, 1, 1], &[0, 1]).unwrap();
        let (v, _) = solve_two_by(&g).unwrap();
        assert_eq!(v, GameValue::Exact(rat_int(1)));
        let g = PayoffTensor::from_ints(vec![2, 1, 1], &[0, 0]).unwrap();
        let (v, _) = solve_two_by(&g).unwrap();
        assert_eq!(v, GameValue::Exact(rat_int(0)));
    }

    #[test]
    fn validation_errors() {
        let bad_rows = PayoffTensor::from_ints(vec![3, 2, 2], &[0; 12]).unwrap();
        assert!(classify_case(&bad_rows).is_err());
        let bad_payoff = PayoffTensor::from_ints(vec![2, 2, 2], &[0, 1, 2, 1, 1, 1, 1, 1]).unwrap();
        assert!(classify_case(&bad_payoff).is_err());
        let two_players = PayoffTensor::from_ints(vec![2, 2], &[0, 1, 1, 0]).unwrap();
        assert!(classify_case(&two_players).is_err());
    }

    #[test]
    fn exhaustive_sweep_invariants() {
        // All 256 games: value in {0, 1/2, 3/4, 1}, profile realizes it, and
        // the witness predicate holds. (Oracle cross-check runs in the
        // acceptance suite at r=200.)
        for bits in 0u32..256 {
            let data: Vec<i64> = (0..8).map(|b| ((bits >> b) & 1) as i64).collect();
            let g = game(&data);
            let c = classify_case(&g).unwrap();
            assert!(c.witness_satisfies_predicate(&g), "game {bits}");
            let (v, p) = solve_two_by(&g).unwrap();
            let allowed = [rat_int(0), rat(1, 2), rat(3, 4), rat_int(1)];
            match &v {
                GameValue::Exact(x) => assert!(allowed.contains(x), "game {bits}: value {x}"),
                other => panic!("game {bits}: non-exact value {other:?}"),
            }
            // Case != 2 implies value >= 1/2.
            if c.case_id != 2 {
                if let GameValue::Exact(x) = &v {
                    assert!(x >= &rat(1, 2), "game {bits}");
                }
            }
            let br = g.best_response_value(&p).unwrap();
            if let GameValue::Exact(x) = &v {
                assert_eq!(&br, x, "game {bits}");
            }
        }
    }
}
