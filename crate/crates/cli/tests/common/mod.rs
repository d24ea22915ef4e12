//! Shared helpers for the CLI test suites: binary invocation and a small
//! structural validator for the shipped JSON schemas (the subset they use:
//! type / properties / required / items / $ref into definitions).
#![allow(dead_code)] // each test binary uses a different subset

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .expect("workspace root")
}

pub fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosphere"))
        .args(args)
        .current_dir(workspace_root())
        .output()
        .expect("binary runs")
}

pub fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

pub fn exit_code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

pub fn load_schema(name: &str) -> serde_json::Value {
    let path = workspace_root().join("schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).expect("schema file"))
        .expect("schema parses")
}

pub fn validate_schema(value: &serde_json::Value, schema: &serde_json::Value) {
    let mut errors = Vec::new();
    validate_at(value, schema, schema, "$", &mut errors);
    assert!(errors.is_empty(), "schema violations: {errors:#?}");
}

fn validate_at(
    value: &serde_json::Value,
    schema: &serde_json::Value,
    root: &serde_json::Value,
    path: &str,
    errors: &mut Vec<String>,
) {
    use serde_json::Value;
    let schema = if let Some(reference) = schema.get("$ref").and_then(Value::as_str) {
        let key = reference
            .strip_prefix("#/definitions/")
            .expect("local definition refs only");
        root.get("definitions")
            .and_then(|d| d.get(key))
            .unwrap_or_else(|| panic!("unresolved $ref {reference}"))
    } else {
        schema
    };
    if let Some(ty) = schema.get("type").and_then(Value::as_str) {
        let ok = match ty {
            "object" => value.is_object(),
            "array" => value.is_array(),
            "string" => value.is_string(),
            "number" => value.is_number(),
            "integer" => value.is_i64() || value.is_u64(),
            "boolean" => value.is_boolean(),
            other => panic!("unsupported schema type {other}"),
        };
        if !ok {
            errors.push(format!("{path}: expected {ty}, got {value}"));
            return;
        }
    }
    if let Some(required) = schema.get("required").and_then(Value::as_array) {
        for key in required.iter().filter_map(Value::as_str) {
            if value.get(key).is_none() {
                errors.push(format!("{path}: missing required field `{key}`"));
            }
        }
    }
    if let Some(props) = schema.get("properties").and_then(Value::as_object) {
        for (key, sub) in props {
            if let Some(child) = value.get(key) {
                validate_at(child, sub, root, &format!("{path}.{key}"), errors);
            }
        }
    }
    if let Some(items) = schema.get("items") {
        if let Some(arr) = value.as_array() {
            for (i, child) in arr.iter().enumerate() {
                validate_at(child, items, root, &format!("{path}[{i}]"), errors);
            }
        }
    }
}
