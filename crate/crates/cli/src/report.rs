//! JSON report bodies and the run manifest.
//!
//! Every emitted report embeds a manifest (command, arguments, input
//! hashes, tool version, timing, outcome). Reruns with identical inputs
//! produce byte-identical bodies once the timing field is stripped; the
//! schema shipped under `schema/report.schema.json` pins the key layout.

use std::path::Path;
use std::time::Instant;

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use minor_designs::designs::DesignReport;
use minor_designs::predictor::{HypothesisStatus, PredictedDesign, PredictedValue, Prediction};

pub struct Manifest {
    command: String,
    arguments: Vec<String>,
    inputs: Vec<(String, String)>,
    started: Instant,
}

impl Manifest {
    pub fn new(command: &str) -> Manifest {
        Manifest {
            command: command.to_string(),
            arguments: std::env::args().skip(1).collect(),
            inputs: Vec::new(),
            started: Instant::now(),
        }
    }

    /// Record the sha256 of an input file.
    pub fn hash_input(&mut self, path: &Path) {
        if let Ok(bytes) = std::fs::read(path) {
            let digest = Sha256::digest(&bytes);
            let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
            self.inputs.push((path.display().to_string(), hex));
        }
    }

    pub fn finish(&self, outcome: &str) -> Value {
        let mut hashes = Map::new();
        for (path, digest) in &self.inputs {
            hashes.insert(path.clone(), Value::String(digest.clone()));
        }
        json!({
            "command": self.command,
            "arguments": self.arguments,
            "input_hashes": Value::Object(hashes),
            "tool_version": env!("CARGO_PKG_VERSION"),
            "timing_ms": self.started.elapsed().as_millis() as u64,
            "outcome": outcome,
        })
    }
}

fn lambda_value(report: &DesignReport) -> Value {
    if let Some(classes) = &report.lambda_classes {
        let rows: Vec<Value> = classes
            .iter()
            .map(|(label, lambda)| {
                json!({ "class": label, "value": lambda.to_string() })
            })
            .collect();
        return Value::Array(rows);
    }
    match report.lambda {
        Some(lambda) => Value::String(lambda.to_string()),
        None => Value::Null,
    }
}

pub fn design_report_body(report: &DesignReport, citations: &[&str]) -> Value {
    let k_value: Value = if let [k] = report.block_sizes.as_slice() {
        json!(k)
    } else {
        json!(report.block_sizes)
    };
    let mut parameters = Map::new();
    parameters.insert("v".into(), json!(report.v));
    parameters.insert("k".into(), k_value);
    if let Some(t) = report.t {
        parameters.insert("t".into(), json!(t));
    }
    let witness = report.witness.as_ref().map(|w| {
        json!({
            "level": w.level,
            "class": w.class,
            "base": w.base.iter().map(|p| p + 1).collect::<Vec<_>>(),
            "base_count": w.base_count,
            "other": w.other.iter().map(|p| p + 1).collect::<Vec<_>>(),
            "other_count": w.other_count,
        })
    });
    json!({
        "kind": report.kind.tag(),
        "parameters": Value::Object(parameters),
        "lambda": lambda_value(report),
        "block_count": report.block_count,
        "replication": report.replication.map(|r| r.to_string()),
        "degenerate": report.degenerate.map(|d| d.tag()),
        "witness": witness,
        "citations": citations,
    })
}

pub fn prediction_body(prediction: &Prediction, citations: &[&str]) -> Value {
    let value = |v: &PredictedValue| -> Value {
        match v {
            PredictedValue::Count(c) => Value::String(c.to_string()),
            PredictedValue::NonIntegral(s) => json!({ "non_integral": s }),
        }
    };
    let (kind, parameters, lambda) = match &prediction.design {
        PredictedDesign::TDesign { v, k, t, lambda } => (
            "t_design",
            json!({ "v": v, "k": k, "t": t }),
            value(lambda),
        ),
        PredictedDesign::Pbibd { v, k, lambdas } => (
            "pbibd",
            json!({ "v": v, "k": k }),
            Value::Array(lambdas.iter().map(value).collect()),
        ),
        PredictedDesign::RegularPbd { v, sizes, lambda } => (
            "regular_pbd",
            json!({ "v": v, "k": sizes }),
            value(lambda),
        ),
    };
    let status = match &prediction.hypothesis_status {
        HypothesisStatus::Satisfied => json!("satisfied"),
        HypothesisStatus::Violated { detail } => json!({ "violated": detail }),
    };
    json!({
        "kind": "prediction",
        "source": prediction.source,
        "prediction_kind": kind,
        "parameters": parameters,
        "lambda": lambda,
        "hypothesis_status": status,
        "citations": citations,
    })
}

/// Attach a manifest and write the report, both to stdout (pretty) and to
/// an optional file.
pub fn emit(mut body: Value, manifest: &Manifest, outcome: &str, path: Option<&Path>) {
    if let Value::Object(map) = &mut body {
        map.insert("manifest".into(), manifest.finish(outcome));
    }
    let rendered = serde_json::to_string_pretty(&body).expect("report serializes");
    if let Some(path) = path {
        if let Err(e) = std::fs::write(path, &rendered) {
            eprintln!("error: cannot write report to {}: {e}", path.display());
        }
    }
    println!("{rendered}");
}
