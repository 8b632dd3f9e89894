//! The JSON game-file format.
//!
//! ```json
//! {
//!   "players": [0, 1],
//!   "coalitions": [
//!     {"members": [0], "generators": [["0"]]},
//!     {"members": [1], "generators": [["0"]]},
//!     {"members": [0, 1], "generators": [["1", "1"]]}
//!   ]
//! }
//! ```
//!
//! Rationals are decimal integers or `"p/q"` strings. Every nonempty
//! coalition must appear exactly once; serialization is canonical
//! (coalitions ascending, generators normalized), so parse-serialize
//! round-trips are exact.

use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::game::{Coalition, NTUGame, PayoffVector, PlayerId, RawAssignments};
use crate::rational::{format_rational, parse_rational, Rational};

use super::HarnessError;

pub fn game_to_json(game: &NTUGame) -> Value {
    let players: Vec<Value> = game
        .players()
        .members()
        .map(|p| Value::from(p.index()))
        .collect();
    let coalitions: Vec<Value> = game
        .coalitions()
        .map(|s| {
            let set = game.generator_set(s).expect("present");
            let members: Vec<Value> = s.members().map(|p| Value::from(p.index())).collect();
            let generators: Vec<Value> = set
                .generators()
                .iter()
                .map(|g| {
                    Value::Array(
                        g.values()
                            .iter()
                            .map(|v| Value::String(format_rational(v)))
                            .collect(),
                    )
                })
                .collect();
            json!({ "members": members, "generators": generators })
        })
        .collect();
    json!({ "players": players, "coalitions": coalitions })
}

pub fn game_to_string(game: &NTUGame) -> String {
    let mut s = serde_json::to_string_pretty(&game_to_json(game)).expect("valid json value");
    s.push('\n');
    s
}

fn rational_from_value(v: &Value) -> Result<Rational, HarnessError> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| {
                HarnessError::Format(format!(
                    "numeric payoff {n} is not an integer; use a \"p/q\" string for fractions"
                ))
            })?;
            Ok(crate::rational::rat_int(i))
        }
        other => Err(HarnessError::Format(format!(
            "expected a rational literal, got {other}"
        ))),
    }
}

fn player_from_value(v: &Value) -> Result<PlayerId, HarnessError> {
    let id = v
        .as_u64()
        .ok_or_else(|| HarnessError::Format(format!("expected a player index, got {v}")))?;
    if id >= u64::from(crate::game::MAX_PLAYERS) {
        return Err(HarnessError::Format(format!(
            "player index {id} exceeds the supported range"
        )));
    }
    Ok(PlayerId(id as u32))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value, HarnessError> {
    obj.get(key)
        .ok_or_else(|| HarnessError::Format(format!("missing field {key:?}")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>, HarnessError> {
    v.as_array()
        .ok_or_else(|| HarnessError::Format(format!("{what} must be an array")))
}

pub fn game_from_json(v: &Value) -> Result<NTUGame, HarnessError> {
    let obj = v
        .as_object()
        .ok_or_else(|| HarnessError::Format("game file must be a JSON object".to_string()))?;
    let players_raw = as_array(field(obj, "players")?, "players")?;
    let mut players_vec = Vec::with_capacity(players_raw.len());
    for p in players_raw {
        players_vec.push(player_from_value(p)?);
    }
    let players = Coalition::from_members(players_vec.iter().copied())?;

    let mut assignments = RawAssignments::new();
    for entry in as_array(field(obj, "coalitions")?, "coalitions")? {
        let entry = entry.as_object().ok_or_else(|| {
            HarnessError::Format("each coalition entry must be an object".to_string())
        })?;
        let mut members = Vec::new();
        for m in as_array(field(entry, "members")?, "members")? {
            members.push(player_from_value(m)?);
        }
        let coalition = Coalition::from_members(members.iter().copied())?;
        if coalition.is_empty() {
            return Err(HarnessError::Format(
                "coalition members must be nonempty".to_string(),
            ));
        }
        let mut generators = Vec::new();
        for row in as_array(field(entry, "generators")?, "generators")? {
            let row = as_array(row, "generator")?;
            let mut values = Vec::with_capacity(row.len());
            for cell in row {
                values.push(rational_from_value(cell)?);
            }
            generators.push(PayoffVector::new(coalition, values).map_err(|e| {
                HarnessError::Format(format!("coalition {coalition}: {e}"))
            })?);
        }
        if assignments.insert(coalition, generators).is_some() {
            return Err(HarnessError::Format(format!(
                "coalition {coalition} appears twice"
            )));
        }
    }
    Ok(NTUGame::new(players, assignments)?)
}

pub fn game_from_str(s: &str) -> Result<NTUGame, HarnessError> {
    let v: Value = serde_json::from_str(s)
        .map_err(|e| HarnessError::Format(format!("invalid JSON: {e}")))?;
    game_from_json(&v)
}

pub fn read_game(path: &Path) -> Result<NTUGame, HarnessError> {
    let text = fs::read_to_string(path)
        .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    game_from_str(&text)
        .map_err(|e| HarnessError::Format(format!("{}: {e}", path.display())))
}

pub fn write_game(path: &Path, game: &NTUGame) -> Result<(), HarnessError> {
    fs::write(path, game_to_string(game))
        .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::gen::{random_game, GenConfig};
    use crate::testutil::game_a;

    #[test]
    fn round_trip_game_a() {
        let g = game_a();
        let text = game_to_string(&g);
        let parsed = game_from_str(&text).unwrap();
        assert_eq!(parsed, g);
        // Serialization is canonical, so a second pass is bit-identical.
        assert_eq!(game_to_string(&parsed), text);
    }

    #[test]
    fn round_trip_random_games() {
        for seed in 0..50 {
            for n in 1..=4 {
                let g = random_game(&GenConfig::new(seed * 31 + u64::from(n), n)).unwrap();
                let parsed = game_from_str(&game_to_string(&g)).unwrap();
                assert_eq!(parsed, g, "seed {seed} n {n}");
            }
        }
    }

    #[test]
    fn accepts_integers_and_fraction_strings() {
        let text = r#"{
            "players": [0, 1],
            "coalitions": [
                {"members": [0], "generators": [[0]]},
                {"members": [1], "generators": [["-1/2"]]},
                {"members": [0, 1], "generators": [[1, "3/2"], ["3/2", 1]]}
            ]
        }"#;
        let g = game_from_str(text).unwrap();
        assert_eq!(g.num_players(), 2);
        assert_eq!(g.grand_generators().generators().len(), 2);
    }

    #[test]
    fn rejects_missing_coalition() {
        let text = r#"{
            "players": [0, 1],
            "coalitions": [
                {"members": [0], "generators": [["0"]]},
                {"members": [0, 1], "generators": [["1", "1"]]}
            ]
        }"#;
        let err = game_from_str(text).unwrap_err();
        assert!(err.to_string().contains("no payoff set"), "{err}");
    }

    #[test]
    fn rejects_duplicate_coalition() {
        let text = r#"{
            "players": [0],
            "coalitions": [
                {"members": [0], "generators": [["0"]]},
                {"members": [0], "generators": [["1"]]}
            ]
        }"#;
        let err = game_from_str(text).unwrap_err();
        assert!(err.to_string().contains("twice"), "{err}");
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let text = r#"{
            "players": [0, 1],
            "coalitions": [
                {"members": [0], "generators": [["0"]]},
                {"members": [1], "generators": [["0"]]},
                {"members": [0, 1], "generators": [["1"]]}
            ]
        }"#;
        let err = game_from_str(text).unwrap_err();
        assert!(err.to_string().contains("coordinates"), "{err}");
    }

    #[test]
    fn rejects_floats_and_bad_rationals() {
        let text = r#"{
            "players": [0],
            "coalitions": [{"members": [0], "generators": [[0.5]]}]
        }"#;
        assert!(game_from_str(text).is_err());
        let text = r#"{
            "players": [0],
            "coalitions": [{"members": [0], "generators": [["1/0"]]}]
        }"#;
        assert!(game_from_str(text).is_err());
    }
}
