#![allow(dead_code)]

use std::path::Path;
use std::process::{Command, Output};

use collapse_core::braiding::{Cocycle, RootOfUnity};
use collapse_core::rack::Rack;
use rand::Rng;

pub fn collapse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_collapse"))
        .args(args)
        .output()
        .expect("binary runs")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

pub fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}); stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

pub fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/group_report.schema.json");
    let text = std::fs::read_to_string(path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::options()
        .with_draft(jsonschema::Draft::Draft202012)
        .compile(&value)
        .expect("schema compiles")
}

pub fn schema_errors(doc: &serde_json::Value) -> Vec<String> {
    let s = schema();
    let errors = match s.validate(doc) {
        Ok(()) => Vec::new(),
        Err(errs) => errs
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    errors
}

pub fn random_root(rng: &mut impl Rng) -> RootOfUnity {
    let m = [1u64, 2, 3, 4, 6][rng.gen_range(0..5)];
    RootOfUnity::new(m, rng.gen_range(0..m))
}

/// `γ_{x▷y} q_{x,y} γ_y⁻¹` for a random gauge `γ`; with no base, `q` is a random constant.
pub fn random_cocycle(rack: &Rack, base: Option<&Cocycle>, rng: &mut impl Rng) -> Cocycle {
    let n = rack.size();
    let lambda = if base.is_some() {
        RootOfUnity::one()
    } else {
        random_root(rng)
    };
    let gauge: Vec<RootOfUnity> = (0..n).map(|_| random_root(rng)).collect();
    let m = 12 * base.map_or(1, |q| q.conductor());
    let values = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let v = gauge[rack.op(x, y)]
                        .mul(&lambda)
                        .mul(&gauge[y].inv())
                        .to_cyclotomic(m);
                    match base {
                        Some(q) => v.mul(&q.value(x, y).lift(m)),
                        None => v,
                    }
                })
                .collect()
        })
        .collect();
    Cocycle::new(rack.clone(), values).expect("gauge transforms keep the cocycle identity")
}
