//! Schema-aware comparison of emitted files against pinned fixtures.
//!
//! Structure (CSV headers, row counts, JSON key order, strings, nulls) must
//! match exactly; numbers must agree to `NUMERIC_TOLERANCE` relative to
//! `max(1, |expected|)`. Set `SINEST_BLESS=1` to rewrite the fixtures.

use std::path::{Path, PathBuf};

use serde_json::Value;

pub const NUMERIC_TOLERANCE: f64 = 1e-9;

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn blessing() -> bool {
    std::env::var_os("SINEST_BLESS").is_some_and(|v| v == "1")
}

fn close(a: f64, e: f64) -> bool {
    (a - e).abs() <= NUMERIC_TOLERANCE * e.abs().max(1.0)
}

fn cell_matches(a: &str, e: &str) -> bool {
    match (a.parse::<f64>(), e.parse::<f64>()) {
        (Ok(x), Ok(y)) => close(x, y),
        _ => a == e,
    }
}

pub fn compare_csv(actual: &str, expected: &str) -> Result<(), String> {
    let a: Vec<&str> = actual.lines().collect();
    let e: Vec<&str> = expected.lines().collect();
    if actual.contains('\r') {
        return Err("CRLF line ending".into());
    }
    if a.first() != e.first() {
        return Err(format!("header {:?} != {:?}", a.first(), e.first()));
    }
    if a.len() != e.len() {
        return Err(format!("{} rows != {}", a.len(), e.len()));
    }
    for (i, (ra, re)) in a.iter().zip(&e).enumerate().skip(1) {
        let (ca, ce): (Vec<_>, Vec<_>) = (ra.split(',').collect(), re.split(',').collect());
        if ca.len() != ce.len() || !ca.iter().zip(&ce).all(|(x, y)| cell_matches(x, y)) {
            return Err(format!("line {}: `{ra}` != `{re}`", i + 1));
        }
    }
    Ok(())
}

/// Object keys in document order, including nested objects.
fn key_sequence(json: &str) -> Vec<String> {
    json.lines()
        .filter_map(|l| {
            let l = l.trim_start();
            let rest = l.strip_prefix('"')?;
            let end = rest.find("\":")?;
            Some(rest[..end].to_string())
        })
        .collect()
}

fn compare_values(a: &Value, e: &Value, path: &str) -> Result<(), String> {
    match (a, e) {
        (Value::Number(x), Value::Number(y)) => {
            let (x, y) = (x.as_f64().unwrap(), y.as_f64().unwrap());
            if close(x, y) {
                Ok(())
            } else {
                Err(format!("{path}: {x} != {y}"))
            }
        }
        (Value::Object(x), Value::Object(y)) => {
            if x.len() != y.len() {
                return Err(format!("{path}: {} keys != {}", x.len(), y.len()));
            }
            for (k, v) in y {
                let got = x.get(k).ok_or_else(|| format!("{path}.{k} missing"))?;
                compare_values(got, v, &format!("{path}.{k}"))?;
            }
            Ok(())
        }
        (Value::Array(x), Value::Array(y)) => {
            if x.len() != y.len() {
                return Err(format!("{path}: {} items != {}", x.len(), y.len()));
            }
            x.iter()
                .zip(y)
                .enumerate()
                .try_for_each(|(i, (p, q))| compare_values(p, q, &format!("{path}[{i}]")))
        }
        _ if a == e => Ok(()),
        _ => Err(format!("{path}: {a} != {e}")),
    }
}

pub fn compare_json(actual: &str, expected: &str) -> Result<(), String> {
    let (ka, ke) = (key_sequence(actual), key_sequence(expected));
    if ka != ke {
        return Err(format!("key order {ka:?} != {ke:?}"));
    }
    let a: Value = serde_json::from_str(actual).map_err(|e| e.to_string())?;
    let e: Value = serde_json::from_str(expected).map_err(|e| e.to_string())?;
    compare_values(&a, &e, "$")
}

/// Compares `actual` with fixture `name`, or rewrites it when blessing.
pub fn check_fixture(name: &str, actual: &str) -> Result<(), String> {
    let path = fixture_dir().join(name);
    if blessing() {
        std::fs::create_dir_all(path.parent().unwrap()).map_err(|e| e.to_string())?;
        std::fs::write(&path, actual).map_err(|e| e.to_string())?;
        return Ok(());
    }
    let expected =
        std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let result = if name.ends_with(".json") {
        compare_json(actual, &expected)
    } else {
        compare_csv(actual, &expected)
    };
    result.map_err(|m| format!("{name}: {m}"))
}
