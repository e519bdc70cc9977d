//! The game JSON format every tool in the workspace shares:
//! `{"players": l, "dims": [n1,...,nl], "payoffs": [...]}` with payoffs a
//! row-major flat array (last player's index fastest) whose entries are
//! integers or `"p/q"` strings. Optional `payoffs_p2` / `payoffs_p3` arrays
//! carry the punishing players' own utilities for threat-point work.
//!
//! Parsing normalizes every rational to canonical form, so round-tripping a
//! file reproduces it bit-exactly modulo that normalization.

use crate::error::{Error, Result};
use crate::game::PayoffTensor;
use crate::rational::{format_rational, parse_rational, Rational};
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Value};

/// A parsed game file: player 1's payoffs always, the other players'
/// optionally (needed only by threat-point computations).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Game {
    pub u1: PayoffTensor,
    /// Payoffs for players 2, 3 (same dims as u1) when the file carries them.
    pub extra: Vec<Option<PayoffTensor>>,
}

impl Game {
    pub fn dims(&self) -> &[usize] {
        self.u1.dims()
    }

    /// The payoff tensor for player p (1-based); None if the file did not
    /// provide one for p > 1.
    pub fn payoffs_for(&self, p: usize) -> Option<&PayoffTensor> {
        if p == 1 {
            Some(&self.u1)
        } else {
            self.extra.get(p - 2).and_then(|t| t.as_ref())
        }
    }
}

fn payoff_entry_to_value(x: &Rational) -> Value {
    if x.denom().is_one() {
        if let Some(n) = x.numer().to_i64() {
            return json!(n);
        }
    }
    Value::String(format_rational(x))
}

fn value_to_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else {
                Err(Error::validation(format!(
                    "payoff {n} is not an integer; write non-integers as \"p/q\" strings"
                )))
            }
        }
        Value::String(s) => parse_rational(s),
        other => Err(Error::validation(format!(
            "payoff entries must be integers or \"p/q\" strings, got {other}"
        ))),
    }
}

fn parse_payoff_array(v: &Value, what: &str) -> Result<Vec<Rational>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::validation(format!("{what} must be an array")))?;
    arr.iter().map(value_to_rational).collect()
}

/// Parses a game from its JSON text.
pub fn parse_game(text: &str) -> Result<Game> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::validation(format!("invalid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::validation("game file must be a JSON object"))?;
    let players = obj
        .get("players")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::validation("missing or invalid \"players\" field"))?;
    let dims_v = obj
        .get("dims")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::validation("missing or invalid \"dims\" field"))?;
    let dims: Vec<usize> = dims_v
        .iter()
        .map(|d| {
            d.as_u64()
                .filter(|&n| n >= 1)
                .map(|n| n as usize)
                .ok_or_else(|| Error::validation("dims entries must be positive integers"))
        })
        .collect::<Result<_>>()?;
    if dims.len() as u64 != players {
        return Err(Error::validation(format!(
            "\"players\" is {players} but \"dims\" lists {} players",
            dims.len()
        )));
    }
    let payoffs = parse_payoff_array(
        obj.get("payoffs")
            .ok_or_else(|| Error::validation("missing \"payoffs\" field"))?,
        "\"payoffs\"",
    )?;
    let u1 = PayoffTensor::new(dims.clone(), payoffs)?;
    let mut extra = Vec::new();
    for p in 2..=players {
        let key = format!("payoffs_p{p}");
        match obj.get(&key) {
            Some(v) => {
                let data = parse_payoff_array(v, &key)?;
                extra.push(Some(PayoffTensor::new(dims.clone(), data)?));
            }
            None => extra.push(None),
        }
    }
    Ok(Game { u1, extra })
}

/// Serializes a game back to its JSON object form.
pub fn game_to_json(game: &Game) -> Value {
    let mut obj = Map::new();
    obj.insert("players".into(), json!(game.dims().len()));
    obj.insert("dims".into(), json!(game.dims()));
    obj.insert(
        "payoffs".into(),
        Value::Array(game.u1.data().iter().map(payoff_entry_to_value).collect()),
    );
    for (i, t) in game.extra.iter().enumerate() {
        if let Some(t) = t {
            obj.insert(
                format!("payoffs_p{}", i + 2),
                Value::Array(t.data().iter().map(payoff_entry_to_value).collect()),
            );
        }
    }
    Value::Object(obj)
}

/// Serializes a bare payoff tensor (player 1 only) to the same format.
pub fn tensor_to_json(t: &PayoffTensor) -> Value {
    game_to_json(&Game {
        u1: t.clone(),
        extra: vec![None; t.num_players() - 1],
    })
}

/// Renders a rational for JSON output: bare integer when the denominator is
/// one, otherwise a "p/q" string.
pub fn rational_to_value(x: &Rational) -> Value {
    payoff_entry_to_value(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn parses_corner_game() {
        let g = parse_game(r#"{"players":3,"dims":[2,2,2],"payoffs":[1,0,0,0,0,0,0,2]}"#).unwrap();
        assert_eq!(g.dims(), &[2, 2, 2]);
        assert_eq!(g.u1.get(&[0, 0, 0]), &rat_int(1));
        assert_eq!(g.u1.get(&[1, 1, 1]), &rat_int(2));
        assert!(g.payoffs_for(2).is_none());
    }

    #[test]
    fn parses_rational_strings_and_normalizes() {
        let g = parse_game(r#"{"players":2,"dims":[1,2],"payoffs":["2/4","-3/9"]}"#).unwrap();
        assert_eq!(g.u1.get(&[0, 0]), &rat(1, 2));
        assert_eq!(g.u1.get(&[0, 1]), &rat(-1, 3));
    }

    #[test]
    fn parses_trivial_one_by_one() {
        let g = parse_game(r#"{"players":3,"dims":[1,1,1],"payoffs":["1/3"]}"#).unwrap();
        assert_eq!(g.u1.get(&[0, 0, 0]), &rat(1, 3));
    }

    #[test]
    fn rejects_length_mismatch() {
        assert!(parse_game(r#"{"players":3,"dims":[2,2,2],"payoffs":[1,2,3]}"#).is_err());
    }

    #[test]
    fn rejects_player_count_mismatch() {
        assert!(parse_game(r#"{"players":2,"dims":[2,2,2],"payoffs":[0,0,0,0,0,0,0,0]}"#).is_err());
    }

    #[test]
    fn rejects_float_payoffs() {
        assert!(parse_game(r#"{"players":2,"dims":[1,1],"payoffs":[0.5]}"#).is_err());
    }

    #[test]
    fn round_trip_is_exact() {
        let src = r#"{"players":3,"dims":[2,2,2],"payoffs":[1,0,"1/2",0,"-7/3",0,0,2],"payoffs_p2":[0,1,0,1,0,1,0,1]}"#;
        let g = parse_game(src).unwrap();
        assert!(g.payoffs_for(2).is_some());
        assert!(g.payoffs_for(3).is_none());
        let text = game_to_json(&g).to_string();
        let g2 = parse_game(&text).unwrap();
        assert_eq!(g, g2);
    }

    #[test]
    fn integer_payoffs_serialize_bare() {
        let g = parse_game(r#"{"players":2,"dims":[1,2],"payoffs":[3,"1/2"]}"#).unwrap();
        let v = game_to_json(&g);
        assert_eq!(v["payoffs"][0], json!(3));
        assert_eq!(v["payoffs"][1], json!("1/2"));
    }
}
