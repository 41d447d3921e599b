//! JSON instance files.
//!
//! ```json
//! {"type":"is","players":["A","B","C"],"edges":[["A","B",2],["A","C",4],["B","C",6]]}
//! {"type":"explicit","players":["A","B"],"values":{"A":0,"B":0,"A,B":5}}
//! ```
//!
//! Player order in the file fixes player indices everywhere downstream.
//! Explicit tables must list every nonempty coalition (the empty one may be
//! written as `"∅"` with value 0, or omitted). An optional `"meta"` object is
//! carried through untouched.

use crate::games::{Coalition, Edge, ExplicitGame, Game, IsGame};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use std::path::Path;

pub const EMPTY_KEY: &str = "∅";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGame {
    Is(IsGame),
    Explicit(ExplicitGame),
}

impl AnyGame {
    pub fn players(&self) -> usize {
        match self {
            AnyGame::Is(g) => g.players(),
            AnyGame::Explicit(g) => g.players(),
        }
    }

    pub fn player_names(&self) -> &[String] {
        match self {
            AnyGame::Is(g) => g.player_names(),
            AnyGame::Explicit(g) => g.player_names(),
        }
    }

    pub fn to_explicit(&self) -> Result<ExplicitGame> {
        match self {
            AnyGame::Is(g) => g.to_explicit(),
            AnyGame::Explicit(g) => Ok(g.clone()),
        }
    }

    pub fn as_is(&self) -> Option<&IsGame> {
        match self {
            AnyGame::Is(g) => Some(g),
            AnyGame::Explicit(_) => None,
        }
    }
}

/// A parsed instance with its metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub game: AnyGame,
    pub meta: Option<Value>,
    /// Non-fatal findings, e.g. a monotonicity violation.
    pub warnings: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
enum Raw {
    #[serde(rename = "is")]
    Is {
        players: Vec<String>,
        edges: Vec<(String, String, i64)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        meta: Option<Value>,
    },
    #[serde(rename = "explicit")]
    Explicit {
        players: Vec<String>,
        values: BTreeMap<String, i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        meta: Option<Value>,
    },
}

fn check_names(players: &[String]) -> Result<()> {
    for (k, p) in players.iter().enumerate() {
        if p.trim().is_empty() || p.contains(',') || p == EMPTY_KEY {
            return Err(Error::Instance(format!("invalid player name {p:?}")));
        }
        if players[..k].contains(p) {
            return Err(Error::Instance(format!("duplicate player {p:?}")));
        }
    }
    Ok(())
}

fn index_of(players: &[String], name: &str) -> Result<usize> {
    players
        .iter()
        .position(|p| p == name)
        .ok_or_else(|| Error::Instance(format!("unknown player {name:?}")))
}

fn coalition_key(players: &[String], s: Coalition) -> String {
    if s.is_empty() {
        return EMPTY_KEY.to_string();
    }
    s.members()
        .map(|i| players[i].as_str())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Instance(e.to_string()))?;
    let mut warnings = Vec::new();
    let (game, meta) = match raw {
        Raw::Is { players, edges, meta } => {
            check_names(&players)?;
            let edges = edges
                .iter()
                .map(|(a, b, w)| {
                    Ok(Edge {
                        u: index_of(&players, a)?,
                        v: index_of(&players, b)?,
                        weight: *w,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            (AnyGame::Is(IsGame::new(players, edges)?), meta)
        }
        Raw::Explicit { players, values, meta } => {
            check_names(&players)?;
            let n = players.len();
            if n > crate::games::MAX_TABLE_PLAYERS {
                return Err(Error::TooManyPlayers {
                    n,
                    limit: crate::games::MAX_TABLE_PLAYERS,
                });
            }
            let mut table: Vec<Option<i64>> = vec![None; 1 << n];
            table[0] = Some(0);
            for (key, &v) in &values {
                let s = if key.trim() == EMPTY_KEY {
                    if v != 0 {
                        return Err(Error::Instance("value of ∅ must be 0".into()));
                    }
                    continue;
                } else {
                    key.split(',')
                        .map(|p| index_of(&players, p.trim()))
                        .try_fold(Coalition::EMPTY, |s, i| {
                            let i = i?;
                            if s.contains(i) {
                                Err(Error::Instance(format!("player repeated in {key:?}")))
                            } else {
                                Ok(s.with(i))
                            }
                        })?
                };
                if table[s.index()].is_some() {
                    return Err(Error::Instance(format!("coalition {key:?} listed twice")));
                }
                table[s.index()] = Some(v);
            }
            let missing = table.iter().position(|v| v.is_none());
            if let Some(s) = missing {
                return Err(Error::Instance(format!(
                    "missing value for coalition {:?}",
                    coalition_key(&players, Coalition(s as u64))
                )));
            }
            let g = ExplicitGame::with_names(players, table.into_iter().flatten().collect())?;
            if let Some((s, i)) = g.monotonicity_violation() {
                warnings.push(format!(
                    "game is not monotone: v({}) > v({} + {})",
                    coalition_key(g.player_names(), s),
                    coalition_key(g.player_names(), s),
                    g.player_names()[i]
                ));
            }
            (AnyGame::Explicit(g), meta)
        }
    };
    Ok(Instance { game, meta, warnings })
}

pub fn load_instance(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Instance(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}

/// Compact single-line JSON followed by a newline.
pub fn serialize_instance(game: &AnyGame, meta: Option<&Value>) -> String {
    let meta = meta.cloned();
    let raw = match game {
        AnyGame::Is(g) => {
            let names = g.player_names();
            Raw::Is {
                players: names.to_vec(),
                edges: g
                    .edges()
                    .iter()
                    .map(|e| (names[e.u].clone(), names[e.v].clone(), e.weight))
                    .collect(),
                meta,
            }
        }
        AnyGame::Explicit(g) => {
            let names = g.player_names();
            Raw::Explicit {
                players: names.to_vec(),
                values: Coalition::all(g.players())
                    .skip(1)
                    .map(|s| (coalition_key(names, s), g.value(s)))
                    .collect(),
                meta,
            }
        }
    };
    serde_json::to_string(&raw).expect("plain data") + "\n"
}
