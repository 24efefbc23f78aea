//! Report assembly: every report carries a format-version tag and the
//! canonical configuration that produced it, so identical configurations
//! yield byte-identical output.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{Map, Value};

/// One configuration entry, as it should appear in the report.
#[derive(Debug, Clone)]
pub enum ConfigValue {
    Text(String),
    Int(u64),
    Bool(bool),
    IntList(Vec<u64>),
}

impl ConfigValue {
    fn token(&self) -> String {
        match self {
            ConfigValue::Text(s) => s.clone(),
            ConfigValue::Int(n) => n.to_string(),
            ConfigValue::Bool(b) => b.to_string(),
            ConfigValue::IntList(v) => {
                v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",")
            }
        }
    }

    fn json(&self) -> Value {
        match self {
            ConfigValue::Text(s) => Value::from(s.clone()),
            ConfigValue::Int(n) => Value::from(*n),
            ConfigValue::Bool(b) => Value::from(*b),
            ConfigValue::IntList(v) => Value::from(v.clone()),
        }
    }
}

pub type Config = Vec<(&'static str, ConfigValue)>;

/// The `command` key first, every other key alphabetical.
fn ordered(config: &Config) -> Vec<&(&'static str, ConfigValue)> {
    let mut rest: Vec<_> = config.iter().filter(|(k, _)| *k != "command").collect();
    rest.sort_by_key(|(k, _)| *k);
    let mut out: Vec<_> = config.iter().filter(|(k, _)| *k == "command").collect();
    out.extend(rest);
    out
}

/// A CSV report: `# format:` and `# config:` comment lines, then the body
/// (header row plus data rows, LF line endings, fields never quoted).
pub fn csv_report(format_tag: &str, config: &Config, body: &str) -> String {
    let mut out = format!("# format: {format_tag}\n# config:");
    for (k, v) in ordered(config) {
        out.push_str(&format!(" {k}={}", v.token()));
    }
    out.push('\n');
    out.push_str(body);
    out
}

/// A JSON report: the payload plus `format` and `config` keys, serialized
/// with sorted keys and a trailing newline.
pub fn json_report(format_tag: &str, config: &Config, payload: Map<String, Value>) -> String {
    let mut object = payload;
    object.insert("format".to_string(), Value::from(format_tag));
    object.insert("config".to_string(), config_json(config));
    format!("{}\n", Value::Object(object))
}

pub fn config_json(config: &Config) -> Value {
    let mut map = Map::new();
    for (k, v) in config {
        map.insert((*k).to_string(), v.json());
    }
    Value::Object(map)
}

/// Injects `format` (if absent) and `config` into an existing JSON document.
pub fn annotate_json(document: &str, config: &Config) -> String {
    let mut value: Value =
        serde_json::from_str(document).expect("library-produced JSON is well-formed");
    value["config"] = config_json(config);
    format!("{value}\n")
}

/// Writes the report to the file, or to stdout when no path is given.
pub fn emit(text: &str, output: Option<&Path>) -> io::Result<()> {
    match output {
        Some(path) => fs::write(path, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}
