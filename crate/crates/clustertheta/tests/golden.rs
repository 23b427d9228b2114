//! Golden outputs for the job files in `tests/golden`.
//!
//! Each `NAME.json` job is run and compared byte for byte with `NAME.out`.
//! Set `UPDATE_GOLDEN=1` to rewrite the expected files.

use std::fs;
use std::path::{Path, PathBuf};

use clustertheta::cli::{run, JobSpec};
use serde_json::Value;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(name);
    let v: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::validator_for(&v).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn jobs() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    v
}

#[test]
fn golden_outputs() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let job_schema = schema("job.schema.json");
    let mut failures = Vec::new();
    for path in jobs() {
        let text = fs::read_to_string(&path).unwrap();
        let raw: Value = serde_json::from_str(&text).unwrap();
        assert!(
            job_schema.is_valid(&raw),
            "{} violates the job schema",
            path.display()
        );
        let job = JobSpec::from_json(&text).unwrap();
        let out = run(&job).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let expected = path.with_extension("out");
        if update {
            fs::write(&expected, &out).unwrap();
            continue;
        }
        match fs::read_to_string(&expected) {
            Ok(e) if e == out => {}
            Ok(_) => failures.push(format!("{}: output differs", path.display())),
            Err(_) => failures.push(format!(
                "{}: missing, run with UPDATE_GOLDEN=1",
                expected.display()
            )),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn schemas_compile_and_match_commands() {
    let raw: Value = serde_json::from_str(
        &fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas/job.schema.json"))
            .unwrap(),
    )
    .unwrap();
    let names: Vec<String> = raw["properties"]["command"]["enum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    use clap::ValueEnum;
    let ours: Vec<String> = clustertheta::cli::Command::value_variants()
        .iter()
        .map(|c| {
            serde_json::to_value(c)
                .unwrap()
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    assert_eq!(names, ours);
    let formats: Vec<String> = clustertheta::cli::Format::value_variants()
        .iter()
        .map(|c| {
            serde_json::to_value(c)
                .unwrap()
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    let listed: Vec<&str> = raw["properties"]["format"]["enum"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap())
        .collect();
    assert_eq!(listed, formats);
    for name in [
        "job.schema.json",
        "diagram.schema.json",
        "theta.schema.json",
    ] {
        schema(name);
    }
}

#[test]
fn schema_rejects_unknown_fields() {
    let s = schema("job.schema.json");
    assert!(!s.is_valid(&serde_json::json!({"command": "scatter", "colour": "red"})));
    assert!(!s.is_valid(&serde_json::json!({"command": "plot"})));
    assert!(s.is_valid(&serde_json::json!({"command": "scatter", "inputs": {"b": 2}, "order": 4})));
}

#[test]
fn json_outputs_conform_and_round_trip() {
    use clustertheta::brokenlines::{theta_function, ThetaResult};
    use clustertheta::scattering::plane::Point;
    use clustertheta::scattering::{rank2_diagram, ScatteringDiagram};
    use clustertheta::LatticeVec;

    let diagram = rank2_diagram(2, 5).unwrap();
    let text = serde_json::to_string_pretty(&diagram).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!(schema("diagram.schema.json").is_valid(&v));
    let back: ScatteringDiagram = serde_json::from_str(&text).unwrap();
    assert_eq!(back, diagram);
    assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);

    let theta = theta_function(
        &LatticeVec::new(vec![2, -2, -1, -1]),
        &Point::parse("3/2,1").unwrap(),
        &diagram,
        5,
    )
    .unwrap();
    let text = serde_json::to_string_pretty(&theta).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    assert!(schema("theta.schema.json").is_valid(&v));
    let back: ThetaResult = serde_json::from_str(&text).unwrap();
    assert_eq!(back, theta);
    assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
}
