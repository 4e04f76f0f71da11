//! Scenario file format: a strict JSON document describing the grid,
//! robots, obstacles, weights, and cost coefficients.
//!
//! Unknown keys are rejected so that typos in experiment configs fail
//! loudly, and every structural invariant is checked at load time.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::grid::{Coord, GridScenario};

fn default_alphas() -> [f64; 3] {
    [1.0, 1.0, 1.0]
}

fn default_obstacle_weight() -> f64 {
    10.0
}

fn default_normal_weight() -> f64 {
    -1.0
}

/// On-disk scenario document.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    /// Free-form provenance note, e.g. what layout the file reconstructs.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub description: String,
    pub rows: usize,
    pub cols: usize,
    pub robots: usize,
    pub endpoints: Vec<EndpointSpec>,
    #[serde(default)]
    pub obstacles: Vec<[usize; 2]>,
    #[serde(default)]
    pub weights: WeightSpec,
    #[serde(default)]
    pub lengths: Vec<EdgeValue>,
    #[serde(default = "default_alphas")]
    pub alphas: [f64; 3],
    #[serde(default)]
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndpointSpec {
    pub source: [usize; 2],
    pub dest: [usize; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightSpec {
    #[serde(default = "default_obstacle_weight")]
    pub obstacle_edge: f64,
    #[serde(default = "default_normal_weight")]
    pub normal_edge: f64,
    #[serde(default)]
    pub overrides: Vec<EdgeValue>,
}

impl Default for WeightSpec {
    fn default() -> Self {
        Self {
            obstacle_edge: default_obstacle_weight(),
            normal_edge: default_normal_weight(),
            overrides: Vec::new(),
        }
    }
}

/// A per-edge value override; the edge is named by its two endpoints.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeValue {
    pub edge: [[usize; 2]; 2],
    pub value: f64,
}

impl ScenarioFile {
    /// Validates the document into a [`GridScenario`].
    pub fn to_scenario(&self) -> Result<GridScenario> {
        if self.robots != self.endpoints.len() {
            return Err(Error::InvalidScenario(format!(
                "\"robots\" is {} but {} endpoint pairs are given",
                self.robots,
                self.endpoints.len()
            )));
        }
        let mut builder = GridScenario::builder(self.rows, self.cols)
            .alphas(self.alphas[0], self.alphas[1], self.alphas[2])
            .obstacle_edge_weight(self.weights.obstacle_edge)
            .normal_edge_weight(self.weights.normal_edge);
        for ep in &self.endpoints {
            builder = builder.robot(
                Coord::new(ep.source[0], ep.source[1]),
                Coord::new(ep.dest[0], ep.dest[1]),
            );
        }
        for o in &self.obstacles {
            builder = builder.obstacle(Coord::new(o[0], o[1]));
        }
        for w in &self.weights.overrides {
            builder = builder.edge_weight(
                Coord::new(w.edge[0][0], w.edge[0][1]),
                Coord::new(w.edge[1][0], w.edge[1][1]),
                w.value,
            );
        }
        for l in &self.lengths {
            builder = builder.edge_length(
                Coord::new(l.edge[0][0], l.edge[0][1]),
                Coord::new(l.edge[1][0], l.edge[1][1]),
                l.value,
            );
        }
        builder.build()
    }

    /// Re-serializes a validated scenario. Weight and length overrides are
    /// emitted only where an edge deviates from its default.
    pub fn from_scenario(scenario: &GridScenario, seed: u64) -> Self {
        let grid = scenario.grid();
        let endpoints = scenario
            .endpoints()
            .iter()
            .map(|ep| EndpointSpec {
                source: [ep.source.row, ep.source.col],
                dest: [ep.dest.row, ep.dest.col],
            })
            .collect();
        let obstacles = scenario
            .obstacles()
            .iter()
            .map(|o| [o.row, o.col])
            .collect();

        // Recover the base weights as the majority convention and emit the
        // rest as overrides.
        let mut weight_overrides = Vec::new();
        let mut length_overrides = Vec::new();
        for e in grid.edges() {
            let (a, b) = grid.edge_endpoints(e);
            let default_w = if scenario.is_obstacle_edge(e) {
                10.0
            } else {
                -1.0
            };
            if scenario.weight(e) != default_w {
                weight_overrides.push(EdgeValue {
                    edge: [[a.row, a.col], [b.row, b.col]],
                    value: scenario.weight(e),
                });
            }
            if scenario.length(e) != 1.0 {
                length_overrides.push(EdgeValue {
                    edge: [[a.row, a.col], [b.row, b.col]],
                    value: scenario.length(e),
                });
            }
        }

        Self {
            description: String::new(),
            rows: grid.rows(),
            cols: grid.cols(),
            robots: scenario.robots(),
            endpoints,
            obstacles,
            weights: WeightSpec {
                obstacle_edge: 10.0,
                normal_edge: -1.0,
                overrides: weight_overrides,
            },
            lengths: length_overrides,
            alphas: scenario.alphas(),
            seed,
        }
    }
}

/// Loads and validates a scenario file. Parse errors carry the line and
/// column reported by the JSON parser.
pub fn load_scenario(path: &Path) -> Result<(GridScenario, ScenarioFile)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::ScenarioLoad {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    let file: ScenarioFile = serde_json::from_str(&text).map_err(|e| Error::ScenarioLoad {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    let scenario = file.to_scenario().map_err(|e| Error::ScenarioLoad {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    Ok((scenario, file))
}

/// SHA-256 digest of a scenario document's bytes, for run records.
pub fn digest_bytes(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("sha256:{:x}", hasher.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
        "rows": 3, "cols": 3, "robots": 1,
        "endpoints": [ { "source": [0, 0], "dest": [2, 2] } ],
        "obstacles": [ [1, 1] ],
        "alphas": [1.0, 1.0, 1.0],
        "seed": 7
    }"#;

    #[test]
    fn parses_and_validates() {
        let file: ScenarioFile = serde_json::from_str(SAMPLE).unwrap();
        let scenario = file.to_scenario().unwrap();
        assert_eq!(scenario.robots(), 1);
        assert_eq!(scenario.grid().edge_count(), 12);
        assert!(scenario.is_obstacle(Coord::new(1, 1)));
        assert_eq!(file.seed, 7);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let bad = SAMPLE.replace("\"seed\": 7", "\"seed\": 7, \"robot_count\": 1");
        let err = serde_json::from_str::<ScenarioFile>(&bad);
        assert!(err.is_err());
        assert!(err.unwrap_err().to_string().contains("robot_count"));
    }

    #[test]
    fn robots_field_must_match_endpoints() {
        let bad = SAMPLE.replace("\"robots\": 1", "\"robots\": 2");
        let file: ScenarioFile = serde_json::from_str(&bad).unwrap();
        let err = file.to_scenario();
        assert!(err.is_err());
    }

    #[test]
    fn round_trip_is_semantically_identical() {
        let file: ScenarioFile = serde_json::from_str(SAMPLE).unwrap();
        let scenario = file.to_scenario().unwrap();
        let rewritten = ScenarioFile::from_scenario(&scenario, file.seed);
        let again = rewritten.to_scenario().unwrap();
        assert_eq!(scenario.grid().rows(), again.grid().rows());
        assert_eq!(scenario.endpoints(), again.endpoints());
        assert_eq!(scenario.obstacles(), again.obstacles());
        assert_eq!(scenario.weights(), again.weights());
        assert_eq!(scenario.lengths(), again.lengths());
        assert_eq!(scenario.alphas(), again.alphas());
    }

    #[test]
    fn defaults_apply() {
        let minimal = r#"{
            "rows": 2, "cols": 2, "robots": 1,
            "endpoints": [ { "source": [0, 0], "dest": [1, 1] } ]
        }"#;
        let file: ScenarioFile = serde_json::from_str(minimal).unwrap();
        let scenario = file.to_scenario().unwrap();
        assert_eq!(scenario.alphas(), [1.0, 1.0, 1.0]);
        assert_eq!(file.seed, 0);
        assert!(scenario.weights().iter().all(|&w| w == -1.0));
    }

    #[test]
    fn parse_errors_carry_position() {
        let broken = "{ \"rows\": 3,\n  \"cols\": oops }";
        let err = serde_json::from_str::<ScenarioFile>(broken).unwrap_err();
        assert!(err.to_string().contains("line 2"));
    }
}
