//! Run manifests and curve tables with their CSV and JSON renderings.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub family: String,
    pub version: String,
    pub parameters: BTreeMap<String, String>,
    pub tolerances: BTreeMap<String, String>,
    pub units: BTreeMap<String, String>,
    pub timestamp: String,
    pub sha256: String,
}

impl RunManifest {
    pub fn new(command: &str, family: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            family: family.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            parameters: BTreeMap::new(),
            tolerances: BTreeMap::new(),
            units: BTreeMap::new(),
            timestamp: timestamp(),
            sha256: String::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn tolerance(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.tolerances.insert(key.to_string(), value.to_string());
        self
    }

    /// Manifest lines that enter the hash (everything except time and hash).
    fn stable_lines(&self) -> Vec<String> {
        let mut out = vec![
            format!("command: {}", self.command),
            format!("family: {}", self.family),
            format!("version: {}", self.version),
        ];
        out.extend(self.parameters.iter().map(|(k, v)| format!("param.{k}: {v}")));
        out.extend(self.tolerances.iter().map(|(k, v)| format!("tolerance.{k}: {v}")));
        out.extend(self.units.iter().map(|(k, v)| format!("unit.{k}: {v}")));
        out
    }
}

/// RFC 3339 time of the run; `SOURCE_DATE_EPOCH` pins it for reproducible files.
fn timestamp() -> String {
    let pinned = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|v| v.parse::<i64>().ok());
    let t = match pinned.and_then(|secs| chrono::DateTime::from_timestamp(secs, 0)) {
        Some(t) => t,
        None => chrono::Utc::now(),
    };
    t.to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

#[derive(Debug, Clone)]
pub struct CurveTable {
    pub columns: Vec<(String, String)>,
    pub rows: Vec<Vec<f64>>,
}

impl CurveTable {
    pub fn new(columns: &[(&str, &str)]) -> Self {
        CurveTable { columns: columns.iter().map(|(n, u)| (n.to_string(), u.to_string())).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn header(&self) -> String {
        self.columns.iter().map(|c| c.0.as_str()).collect::<Vec<_>>().join(",")
    }

    fn body(&self) -> String {
        let mut s = String::new();
        for row in &self.rows {
            s.push_str(&row.iter().map(|v| fmt_sci(*v)).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        s
    }
}

/// C-style `%.12e`: two-digit exponent with explicit sign.
pub fn fmt_sci(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn finish_manifest(manifest: &RunManifest, table: &CurveTable) -> RunManifest {
    let mut m = manifest.clone();
    for (name, unit) in &table.columns {
        m.units.insert(name.clone(), unit.clone());
    }
    let mut h = Sha256::new();
    for line in m.stable_lines() {
        h.update(line.as_bytes());
        h.update(b"\n");
    }
    h.update(table.header().as_bytes());
    h.update(b"\n");
    h.update(table.body().as_bytes());
    m.sha256 = hex::encode(h.finalize());
    m
}

pub fn render_csv(manifest: &RunManifest, table: &CurveTable) -> String {
    let m = finish_manifest(manifest, table);
    let mut out = String::new();
    for line in m.stable_lines() {
        out.push_str(&format!("# {line}\n"));
    }
    out.push_str(&format!("# timestamp: {}\n", m.timestamp));
    out.push_str(&format!("# sha256: {}\n", m.sha256));
    out.push_str(&table.header());
    out.push('\n');
    out.push_str(&table.body());
    out
}

pub fn render_json(manifest: &RunManifest, table: &CurveTable) -> String {
    let m = finish_manifest(manifest, table);
    let doc = serde_json::json!({
        "manifest": m,
        "columns": table.columns.iter().map(|c| c.0.clone()).collect::<Vec<_>>(),
        "rows": table.rows,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("table serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_style_exponent() {
        assert_eq!(fmt_sci(0.0), "0.000000000000e+00");
        assert_eq!(fmt_sci(1.5e-4), "1.500000000000e-04");
        assert_eq!(fmt_sci(-123.0), "-1.230000000000e+02");
        assert_eq!(fmt_sci(1e300), "1.000000000000e+300");
    }

    #[test]
    fn hash_ignores_timestamp() {
        let mut t = CurveTable::new(&[("k", "1/A"), ("f", "1")]);
        t.push(vec![0.0, 1.0]);
        let mut a = RunManifest::new("cutoff", "bump");
        a.param("kmax", 3);
        let mut b = a.clone();
        b.timestamp = "1970-01-01T00:00:00Z".into();
        assert_eq!(finish_manifest(&a, &t).sha256, finish_manifest(&b, &t).sha256);
        b.param("kmax", 4);
        assert_ne!(finish_manifest(&a, &t).sha256, finish_manifest(&b, &t).sha256);
    }

    #[test]
    fn csv_layout() {
        let mut t = CurveTable::new(&[("s", "A"), ("F", "A^-4")]);
        t.push(vec![1.0, 2.0]);
        let csv = render_csv(&RunManifest::new("force", "exponential"), &t);
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines.iter().take_while(|l| l.starts_with('#')).count() >= 5);
        assert!(lines.contains(&"s,F"));
        assert_eq!(*lines.last().unwrap(), "1.000000000000e+00,2.000000000000e+00");
    }
}
