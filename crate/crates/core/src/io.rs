//! The JSON instance document.
//!
//! ```json
//! {
//!   "version": 1,
//!   "k": 3,
//!   "side": "men",
//!   "men": [[0, 1, 2], [2, 1, 0], [1, 0, 2]],
//!   "women": [[0, 1, 2], [0, 1, 2], [2, 0, 1]],
//!   "team_index": 0,
//!   "ballots": [[1, 0, 2]],
//!   "base_scores": [0, 4, 2],
//!   "num_manipulators": 1,
//!   "target": 2
//! }
//! ```
//!
//! `base_scores` and `tie_break` are optional; a missing `tie_break` means
//! lower index wins. Unknown fields are rejected.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AgentRef, Instance, PreferenceOrder, ScoreVector, Side, TieBreak};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub version: u32,
    pub k: usize,
    pub side: Side,
    pub men: Vec<Vec<usize>>,
    pub women: Vec<Vec<usize>>,
    pub team_index: usize,
    pub ballots: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_scores: Option<Vec<i64>>,
    pub num_manipulators: usize,
    pub target: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tie_break: Option<Vec<usize>>,
}

fn order(field: String, row: &[usize], k: usize) -> Result<PreferenceOrder> {
    if row.len() != k {
        return Err(Error::parse(
            field,
            format!("has {} entries, expected {k}", row.len()),
        ));
    }
    PreferenceOrder::new(row.to_vec()).map_err(|_| Error::parse(field, "not a permutation"))
}

fn rows(name: &str, rows: &[Vec<usize>], k: usize) -> Result<Vec<PreferenceOrder>> {
    rows.iter()
        .enumerate()
        .map(|(i, r)| order(format!("{name}[{i}]"), r, k))
        .collect()
}

impl InstanceFile {
    pub fn from_instance(instance: &Instance) -> InstanceFile {
        let to_rows = |v: &[PreferenceOrder]| v.iter().map(|o| o.ranking().to_vec()).collect();
        InstanceFile {
            version: FORMAT_VERSION,
            k: instance.k(),
            side: instance.team().side,
            men: to_rows(instance.men()),
            women: to_rows(instance.women()),
            team_index: instance.team().index,
            ballots: to_rows(instance.honest_ballots()),
            base_scores: instance.base_scores().map(|s| s.as_slice().to_vec()),
            num_manipulators: instance.num_manipulators(),
            target: instance.target(),
            tie_break: (!instance.tie_break().is_canonical())
                .then(|| instance.tie_break().priority().ranking().to_vec()),
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        if self.version != FORMAT_VERSION {
            return Err(Error::parse(
                "version",
                format!("unsupported version {}", self.version),
            ));
        }
        let k = self.k;
        if k == 0 {
            return Err(Error::parse("k", "must be at least 1"));
        }
        if self.men.len() != k {
            return Err(Error::parse("men", format!("expected {k} rows")));
        }
        if self.women.len() != k {
            return Err(Error::parse("women", format!("expected {k} rows")));
        }
        let men = rows("men", &self.men, k)?;
        let women = rows("women", &self.women, k)?;
        if self.team_index >= k {
            return Err(Error::parse("team_index", format!("must be below k = {k}")));
        }
        let ballots = rows("ballots", &self.ballots, k)?;
        let base = match &self.base_scores {
            None => None,
            Some(b) if b.len() != k => {
                return Err(Error::parse("base_scores", format!("expected {k} entries")))
            }
            Some(b) => Some(
                ScoreVector::new(b.clone()).map_err(|e| Error::parse("base_scores", e.to_string()))?,
            ),
        };
        if self.target >= k {
            return Err(Error::parse("target", format!("must be below k = {k}")));
        }
        let tie_break = self
            .tie_break
            .as_ref()
            .map(|t| order("tie_break".into(), t, k).map(TieBreak::new))
            .transpose()?;
        Instance::new(
            men,
            women,
            AgentRef {
                side: self.side,
                index: self.team_index,
            },
            ballots,
            base,
            self.num_manipulators,
            self.target,
            tie_break,
        )
        .map_err(|e| Error::parse("instance", e.to_string()))
    }
}

fn json_error(e: serde_json::Error) -> Error {
    // serde_json names the offending key in its message
    Error::parse("document", e.to_string())
}

pub fn parse(bytes: &[u8]) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_slice(bytes).map_err(json_error)?;
    file.to_instance()
}

/// JSON with one key per line and one matrix row per line, so golden files
/// diff cleanly. Ends with a newline.
pub fn serialize(instance: &Instance) -> Vec<u8> {
    let f = InstanceFile::from_instance(instance);
    let mut fields = vec![
        ("version", compact(&f.version)),
        ("k", compact(&f.k)),
        ("side", compact(&f.side)),
        ("men", matrix(&f.men)),
        ("women", matrix(&f.women)),
        ("team_index", compact(&f.team_index)),
        ("ballots", matrix(&f.ballots)),
    ];
    if let Some(b) = &f.base_scores {
        fields.push(("base_scores", compact(b)));
    }
    fields.push(("num_manipulators", compact(&f.num_manipulators)));
    fields.push(("target", compact(&f.target)));
    if let Some(t) = &f.tie_break {
        fields.push(("tie_break", compact(t)));
    }
    document(&fields)
}

fn compact<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data always serializes")
}

fn matrix(rows: &[Vec<usize>]) -> String {
    if rows.is_empty() {
        return "[]".into();
    }
    let body: Vec<String> = rows.iter().map(|r| format!("    {}", compact(r))).collect();
    format!("[\n{}\n  ]", body.join(",\n"))
}

fn document(fields: &[(&str, String)]) -> Vec<u8> {
    let body: Vec<String> = fields.iter().map(|(k, v)| format!("  \"{k}\": {v}")).collect();
    format!("{{\n{}\n}}\n", body.join(",\n")).into_bytes()
}

/// A list of manipulator ballots, as written by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub target: usize,
    pub ballots: Vec<Vec<usize>>,
}

impl WitnessFile {
    pub fn new(target: usize, ballots: &[PreferenceOrder]) -> Self {
        WitnessFile {
            target,
            ballots: ballots.iter().map(|b| b.ranking().to_vec()).collect(),
        }
    }

    pub fn orders(&self, k: usize) -> Result<Vec<PreferenceOrder>> {
        rows("ballots", &self.ballots, k)
    }
}

pub fn parse_witness(bytes: &[u8]) -> Result<WitnessFile> {
    serde_json::from_slice(bytes).map_err(json_error)
}

pub fn serialize_witness(w: &WitnessFile) -> Vec<u8> {
    document(&[("target", compact(&w.target)), ("ballots", matrix(&w.ballots))])
}
