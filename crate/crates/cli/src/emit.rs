//! Report files. Every float is rounded to 12 significant digits before it is
//! printed, so output bytes depend only on the config and the build.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use speclab::SpectrumSource;

use crate::config::Experiment;
use crate::error::CliError;
use crate::run::{ExperimentResult, Verb};

pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round12(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(items) => Value::Array(items.into_iter().map(round_value).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_value(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

/// `k,kind,value,source,h`, levels in config order, kinds in config order.
pub fn spectra_csv(result: &ExperimentResult) -> String {
    let mut out = String::from("k,kind,value,source,h\n");
    for level in &result.levels {
        for s in &level.spectra {
            let h = match s.source() {
                SpectrumSource::Fd { h } => round12(h).to_string(),
                _ => String::new(),
            };
            for (i, v) in s.values().iter().enumerate() {
                writeln!(out, "{},{},{},{},{h}", i + 1, s.kind(), round12(*v), s.source().label()).expect("string write");
            }
        }
    }
    out
}

pub fn report_json(e: &Experiment, verb: Verb, result: &ExperimentResult) -> Value {
    let spectra: Vec<Value> = result
        .levels
        .iter()
        .flat_map(|l| &l.spectra)
        .map(|s| {
            json!({
                "kind": s.kind(),
                "source": s.source(),
                "domain": s.domain(),
                "count": s.len(),
                "trusted_count": s.trusted_count(),
            })
        })
        .collect();
    let mut report = json!({
        "name": e.name,
        "verb": verb.name(),
        "status": result.status(),
        "spectra": spectra,
        "analytics": result.analytics,
    });
    if let Some(err) = &result.error {
        report["error"] = json!(err);
    }
    round_value(report)
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialise");
    s.push('\n');
    s
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `<name>.report.json` and, when spectra exist, `<name>.spectra.csv`.
pub fn emit_experiment(out: &Path, e: &Experiment, verb: Verb, result: &ExperimentResult) -> Result<Vec<PathBuf>, CliError> {
    let dir = match &e.output {
        Some(sub) => out.join(sub),
        None => out.to_path_buf(),
    };
    let mut written = Vec::new();
    if !result.levels.is_empty() {
        let csv = dir.join(format!("{}.spectra.csv", e.name));
        write_file(&csv, &spectra_csv(result))?;
        written.push(csv);
    }
    let json = dir.join(format!("{}.report.json", e.name));
    write_file(&json, &pretty(&report_json(e, verb, result)))?;
    written.push(json);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round12(1.0 / 7.0), 0.142857142857);
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
        assert_eq!(round12(0.0), 0.0);
        assert_eq!(round12(123456789012345.0), 123456789012000.0);
        assert!(round12(f64::NAN).is_nan());
    }

    #[test]
    fn nested_values_rounded() {
        let v = round_value(json!({"a": [2.0 / 3.0, 3], "b": {"c": 10f64.sqrt()}}));
        assert_eq!(v, json!({"a": [0.666666666667, 3], "b": {"c": 3.16227766017}}));
    }
}
