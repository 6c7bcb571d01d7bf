//! Locks the shipped JSON schemas to the serialized types: every property
//! key in docs/*.schema.json must match what serde actually emits, so the
//! schemas cannot drift silently.

use ergodfa::experiments::{
    run_campaign, CheckFlags, ExperimentConfig, ReportFormat, Thresholds,
};
use std::collections::BTreeSet;
use std::path::PathBuf;

fn schema(name: &str) -> serde_json::Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("docs").join(name);
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap())
        .unwrap_or_else(|e| panic!("{} is not valid JSON: {e}", path.display()))
}

fn property_keys(node: &serde_json::Value) -> BTreeSet<String> {
    node["properties"]
        .as_object()
        .expect("schema node declares properties")
        .keys()
        .cloned()
        .collect()
}

fn required_keys(node: &serde_json::Value) -> BTreeSet<String> {
    node["required"]
        .as_array()
        .expect("schema node declares required keys")
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect()
}

fn serialized_keys<T: serde::Serialize>(value: &T) -> BTreeSet<String> {
    serde_json::to_value(value)
        .unwrap()
        .as_object()
        .expect("serializes to an object")
        .keys()
        .cloned()
        .collect()
}

/// A config with every optional populated, so all keys appear.
fn full_config() -> ExperimentConfig {
    ExperimentConfig {
        n_values: vec![4],
        r: 2,
        trials: 1,
        master_seed: 1,
        checks: CheckFlags::default(),
        output_path: Some(PathBuf::from("out.json")),
        format: ReportFormat::Json,
        record_trials: true,
        walk_steps: 10,
        thresholds: Some(Thresholds::default()),
    }
}

#[test]
fn config_schema_matches_the_serialized_shape() {
    let schema = schema("campaign-config.schema.json");
    let cfg = full_config();
    assert_eq!(property_keys(&schema), serialized_keys(&cfg));
    assert!(required_keys(&schema).is_subset(&property_keys(&schema)));

    assert_eq!(
        property_keys(&schema["properties"]["checks"]),
        serialized_keys(&cfg.checks)
    );
    assert_eq!(
        property_keys(&schema["properties"]["thresholds"]),
        serialized_keys(&cfg.thresholds.unwrap())
    );
}

#[test]
fn report_schema_matches_the_serialized_shape() {
    let schema = schema("report.schema.json");
    let report = run_campaign(&full_config()).unwrap();
    assert_eq!(property_keys(&schema), serialized_keys(&report));

    let summary_schema = &schema["definitions"]["summary"];
    assert_eq!(property_keys(summary_schema), serialized_keys(&report.summaries[0]));
    assert_eq!(required_keys(summary_schema), property_keys(summary_schema));

    let record_schema = &schema["definitions"]["trial_record"];
    let records = report.records.as_ref().unwrap();
    assert_eq!(property_keys(record_schema), serialized_keys(&records[0]));
    assert_eq!(required_keys(record_schema), property_keys(record_schema));
}

#[test]
fn shipped_default_config_satisfies_its_schema_requirements() {
    let schema = schema("campaign-config.schema.json");
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("configs")
        .join("default-campaign.json");
    let text = std::fs::read_to_string(&path).unwrap();
    // Deserialization is the authoritative validation (unknown keys are
    // rejected); the schema's required list must also be satisfied.
    let cfg: ExperimentConfig = serde_json::from_str(&text).unwrap();
    cfg.validate().unwrap();
    let raw: serde_json::Value = serde_json::from_str(&text).unwrap();
    let keys: BTreeSet<String> = raw.as_object().unwrap().keys().cloned().collect();
    assert!(required_keys(&schema).is_subset(&keys));
    assert!(keys.is_subset(&property_keys(&schema)));
}
