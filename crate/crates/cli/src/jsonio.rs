//! JSON configuration and verdict formats.
//!
//! Configuration schema: `{"s": int, "points": [[[re, im], ...] per point],
//! "fields": ["bose"|"fermi", ...]}` — complex numbers as `[re, im]` pairs.
//! In debug builds every emitted verdict is validated against the
//! checked-in schema file before printing.

use holotube::geometry::{ComplexVector, Configuration, Statistics, Verdict, VerdictState};
use holotube::lorentz::{Certificate, TransformWitness};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::schema;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigFile {
    pub s: usize,
    pub points: Vec<Vec<[f64; 2]>>,
    pub fields: Vec<String>,
}

impl ConfigFile {
    pub fn to_configuration(&self) -> Result<Configuration, String> {
        let points = self
            .points
            .iter()
            .map(|p| ComplexVector::new(p.iter().map(|&[re, im]| Complex64::new(re, im)).collect()))
            .collect();
        let fields = self
            .fields
            .iter()
            .map(|f| match f.as_str() {
                "bose" => Ok(Statistics::Bose),
                "fermi" => Ok(Statistics::Fermi),
                other => Err(format!("unknown field statistics {other:?} (expected \"bose\" or \"fermi\")")),
            })
            .collect::<Result<Vec<_>, String>>()?;
        Configuration::new(self.s, points, fields).map_err(|e| e.to_string())
    }

    pub fn from_configuration(c: &Configuration) -> Self {
        ConfigFile {
            s: c.s(),
            points: c
                .points()
                .iter()
                .map(|p| p.components().iter().map(|z| [z.re, z.im]).collect())
                .collect(),
            fields: c
                .fields()
                .iter()
                .map(|f| match f {
                    Statistics::Bose => "bose".to_string(),
                    Statistics::Fermi => "fermi".to_string(),
                })
                .collect(),
        }
    }
}

/// Parses a configuration file, reporting JSON syntax errors with their
/// position and semantic errors with a description.
pub fn load_config(text: &str) -> Result<Configuration, String> {
    let file: ConfigFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    file.to_configuration()
}

fn complex_pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn certificate_json(cert: &Certificate) -> Value {
    let mut obj = serde_json::Map::new();
    match &cert.transform {
        TransformWitness::Scaling(lambda) => {
            obj.insert("lambda".into(), complex_pair(*lambda));
        }
        TransformWitness::Matrix(t) => {
            let m = t.matrix();
            let rows: Vec<Value> = (0..m.nrows())
                .map(|i| Value::Array((0..m.ncols()).map(|j| complex_pair(m[(i, j)])).collect()))
                .collect();
            obj.insert("matrix".into(), Value::Array(rows));
        }
    }
    if let Some(pi) = &cert.permutation {
        obj.insert("permutation".into(), json!(pi.mapping()));
    }
    Value::Object(obj)
}

/// Renders a verdict (with optional sampling witness) as the JSON document
/// emitted on standard output.
pub fn verdict_json(verdict: &Verdict, witness: Option<&holotube::domains::ConvexWitness>) -> Value {
    let state = match verdict.state {
        VerdictState::Inside => "inside",
        VerdictState::Outside => "outside",
        VerdictState::Boundary => "boundary",
        VerdictState::Unknown => "unknown",
    };
    let mut doc = json!({ "state": state, "margin": verdict.margin });
    if let Some(cert) = &verdict.certificate {
        doc["certificate"] = certificate_json(cert);
    }
    if let Some(w) = witness {
        doc["witness"] = json!({
            "weights": w.weights,
            "combination": w.combination.components(),
            "square": w.square,
        });
    }
    #[cfg(debug_assertions)]
    {
        let schema: Value =
            serde_json::from_str(include_str!("../schema/verdict.schema.json")).unwrap();
        if let Err(err) = schema::validate(&doc, &schema, "$") {
            panic!("emitted verdict violates schema: {err}");
        }
    }
    #[cfg(not(debug_assertions))]
    {
        let _ = schema::validate; // referenced in release builds too
    }
    doc
}

/// Exit code contract: 0 Inside, 1 Outside, 2 Boundary, 3 Unknown.
pub fn exit_code(state: VerdictState) -> i32 {
    match state {
        VerdictState::Inside => 0,
        VerdictState::Outside => 1,
        VerdictState::Boundary => 2,
        VerdictState::Unknown => 3,
    }
}

pub const EXIT_INPUT_ERROR: i32 = 64;
