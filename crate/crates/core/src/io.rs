//! JSON file formats: tensors, carrier Lie algebras, monoid tables, and the
//! reports emitted by the command line.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::SplitReport;
use crate::cohomology::H2Report;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{Rational, RationalMatrix};
use crate::monoid::{MonoidKind, MonoidTable};
use crate::tensor::{ExtensionTensor, Labeling, RawTensor};

pub const TENSOR_FORMAT: &str = "uext-tensor-v1";
pub const LIE_FORMAT: &str = "uext-lie-v1";
pub const MONOID_FORMAT: &str = "uext-monoid-v1";

#[derive(Serialize, Deserialize)]
struct EntryFile {
    i: usize,
    j: usize,
    k: usize,
    value: Rational,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorFile {
    format: String,
    n: usize,
    #[serde(default = "default_labeling")]
    labeling: String,
    entries: Vec<EntryFile>,
}

fn default_labeling() -> String {
    Labeling::Solvable.as_str().to_string()
}

fn check_format(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Parse(format!(
            "format is \"{found}\", expected \"{expected}\""
        )));
    }
    Ok(())
}

fn parse_labeling(s: &str) -> Result<Labeling> {
    match s {
        "solvable" => Ok(Labeling::Solvable),
        "semisimple" => Ok(Labeling::Semisimple),
        other => Err(Error::Parse(format!("unknown labeling \"{other}\""))),
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

fn tensor_file(w: &ExtensionTensor) -> TensorFile {
    let off = w.labeling().display_offset();
    TensorFile {
        format: TENSOR_FORMAT.to_string(),
        n: w.n(),
        labeling: w.labeling().as_str().to_string(),
        entries: w
            .entries()
            .map(|(i, j, k, v)| EntryFile {
                i: i - off,
                j: j - off,
                k: k - off,
                value: v.clone(),
            })
            .collect(),
    }
}

/// Entries exactly as listed in the file, indices shifted to `1..=n`.
pub fn parse_raw_tensor(text: &str) -> Result<RawTensor> {
    let file: TensorFile = serde_json::from_str(text).map_err(json_error)?;
    check_format(&file.format, TENSOR_FORMAT)?;
    if file.n == 0 {
        return Err(Error::Parse("n must be at least 1".into()));
    }
    let labeling = parse_labeling(&file.labeling)?;
    let off = labeling.display_offset();
    let mut raw = RawTensor::zero(file.n).with_labeling(labeling);
    for e in file.entries {
        let lo = 1 - off;
        let hi = file.n - off;
        for x in [e.i, e.j, e.k] {
            if x < lo || x > hi {
                return Err(Error::Parse(format!(
                    "index {x} outside {lo}..={hi} for {} labeling",
                    labeling.as_str()
                )));
            }
        }
        raw.insert(e.i + off, e.j + off, e.k + off, e.value)?;
    }
    Ok(raw)
}

/// Entries given in one orientation are mirrored; conflicting orientations
/// are a load error.
pub fn parse_tensor(text: &str) -> Result<ExtensionTensor> {
    parse_raw_tensor(text)?.to_tensor()
}

/// Deterministic text: entries sorted by `(i, j, k)` with `i <= j`.
pub fn tensor_to_string(w: &ExtensionTensor) -> String {
    let mut s = serde_json::to_string_pretty(&tensor_file(w)).expect("serializable");
    s.push('\n');
    s
}

pub fn tensor_to_value(w: &ExtensionTensor) -> Value {
    serde_json::to_value(tensor_file(w)).expect("serializable")
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Load(format!("{}: {e}", path.display())))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::Load(format!("{}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| Error::Load(format!("{}: {e}", path.display())))
}

pub fn load_tensor(path: &Path) -> Result<ExtensionTensor> {
    parse_tensor(&read_text(path)?)
}

pub fn load_raw_tensor(path: &Path) -> Result<RawTensor> {
    parse_raw_tensor(&read_text(path)?)
}

pub fn save_tensor(path: &Path, w: &ExtensionTensor) -> Result<()> {
    write_text(path, &tensor_to_string(w))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LieFile {
    format: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    dim: usize,
    c: Vec<EntryFile>,
}

pub fn parse_lie(text: &str) -> Result<LieAlgebra> {
    let file: LieFile = serde_json::from_str(text).map_err(json_error)?;
    check_format(&file.format, LIE_FORMAT)?;
    LieAlgebra::new(
        file.dim,
        file.name.unwrap_or_else(|| "custom".to_string()),
        file.c.into_iter().map(|e| (e.i, e.j, e.k, e.value)),
    )
}

pub fn lie_to_string(l: &LieAlgebra) -> String {
    let file = LieFile {
        format: LIE_FORMAT.to_string(),
        name: Some(l.name().to_string()),
        dim: l.dim(),
        c: l.constants()
            .map(|(i, j, k, v)| EntryFile {
                i,
                j,
                k,
                value: v.clone(),
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidFile {
    format: String,
    kind: MonoidKind,
    n: usize,
    table: Vec<Vec<usize>>,
}

pub fn parse_monoid(text: &str) -> Result<MonoidTable> {
    let file: MonoidFile = serde_json::from_str(text).map_err(json_error)?;
    check_format(&file.format, MONOID_FORMAT)?;
    if file.table.len() != file.n + 1 {
        return Err(Error::InvalidTable(format!(
            "n = {} needs {} rows, found {}",
            file.n,
            file.n + 1,
            file.table.len()
        )));
    }
    MonoidTable::new(file.kind, file.table)
}

fn monoid_file(t: &MonoidTable) -> MonoidFile {
    MonoidFile {
        format: MONOID_FORMAT.to_string(),
        kind: t.kind(),
        n: t.n(),
        table: t.rows().to_vec(),
    }
}

pub fn monoid_to_string(t: &MonoidTable) -> String {
    let mut s = serde_json::to_string_pretty(&monoid_file(t)).expect("serializable");
    s.push('\n');
    s
}

/// One compact JSON object per line.
pub fn census_to_jsonl(tables: &[MonoidTable]) -> String {
    tables
        .iter()
        .map(|t| serde_json::to_string(&monoid_file(t)).expect("serializable") + "\n")
        .collect()
}

pub fn parse_census(text: &str) -> Result<Vec<MonoidTable>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_monoid)
        .collect()
}

pub fn matrix_to_value(m: &RationalMatrix) -> Value {
    Value::Array(
        m.to_rows()
            .into_iter()
            .map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

fn rational_from_value(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) if n.is_i64() => Ok(Rational::from_int(n.as_i64().expect("checked"))),
        other => Err(Error::Parse(format!("expected a rational, found {other}"))),
    }
}

/// Square matrix given as an array of rows of rational strings or integers,
/// either bare or under a `"matrix"` key.
pub fn parse_matrix(text: &str) -> Result<RationalMatrix> {
    let v: Value = serde_json::from_str(text).map_err(json_error)?;
    let rows = match &v {
        Value::Object(map) => map
            .get("matrix")
            .ok_or_else(|| Error::Parse("missing \"matrix\"".into()))?,
        other => other,
    };
    let rows = rows
        .as_array()
        .ok_or_else(|| Error::Parse("matrix must be an array of rows".into()))?;
    let n = rows.len();
    let mut out = Vec::with_capacity(n);
    for r in rows {
        let r = r
            .as_array()
            .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
        if r.len() != n {
            return Err(Error::Parse(format!(
                "matrix row has {} entries, expected {n}",
                r.len()
            )));
        }
        out.push(
            r.iter()
                .map(rational_from_value)
                .collect::<Result<Vec<_>>>()?,
        );
    }
    Ok(RationalMatrix::from_rows(out, n))
}

pub fn split_report_to_value(r: &SplitReport) -> Value {
    json!({
        "blocks": r.blocks.iter().map(|b| json!({
            "dim": b.dim,
            "basis": b.basis.iter().map(|v| v.iter().map(Rational::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "tensor": tensor_to_value(&b.tensor),
        })).collect::<Vec<_>>(),
        "change": matrix_to_value(r.change.matrix()),
        "complete": r.complete,
        "stages": r.stages,
    })
}

pub fn h2_report_to_value(r: &H2Report) -> Value {
    json!({
        "dim_Z2": r.dim_z2,
        "dim_B2": r.dim_b2,
        "dim_H2": r.dim_h2,
        "representatives": r.representatives.iter().map(matrix_to_value).collect::<Vec<_>>(),
        "coboundary_basis": r.coboundary_basis.iter().map(matrix_to_value).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid;

    #[test]
    fn tensor_round_trip_is_byte_stable() {
        let c = monoid::crmhd(&Rational::new(-3, 2));
        let text = tensor_to_string(&c);
        assert!(text.contains("\"labeling\": \"semisimple\""));
        assert!(text.contains("\"value\": \"3/2\""));
        let back = parse_tensor(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.labeling(), c.labeling());
        assert_eq!(tensor_to_string(&back), text);
    }

    #[test]
    fn semisimple_indices_are_zero_based() {
        let text = r#"{"format":"uext-tensor-v1","n":2,"labeling":"semisimple",
            "entries":[{"i":0,"j":0,"k":0,"value":"1"},{"i":0,"j":1,"k":1,"value":"1"}]}"#;
        let w = parse_tensor(text).unwrap();
        assert_eq!(w.get(1, 1, 1), Rational::one());
        assert_eq!(w.get(2, 1, 2), Rational::one());
        let bad = text.replace("\"k\":1", "\"k\":2");
        assert!(matches!(parse_tensor(&bad), Err(Error::Parse(_))));
    }

    #[test]
    fn load_errors() {
        let dup = r#"{"format":"uext-tensor-v1","n":2,"labeling":"solvable",
            "entries":[{"i":1,"j":1,"k":2,"value":"1"},{"i":1,"j":1,"k":2,"value":"1"}]}"#;
        assert!(matches!(parse_tensor(dup), Err(Error::Load(_))));
        let conflict = r#"{"format":"uext-tensor-v1","n":3,"labeling":"solvable",
            "entries":[{"i":1,"j":2,"k":3,"value":"-1"},{"i":2,"j":1,"k":3,"value":"1"}]}"#;
        assert!(matches!(parse_tensor(conflict), Err(Error::Load(_))));
        let raw = parse_raw_tensor(conflict).unwrap();
        assert_eq!(raw.mirrored(), raw);
        assert!(matches!(parse_tensor("{}"), Err(Error::Parse(_))));
        let wrong = r#"{"format":"other","n":1,"entries":[]}"#;
        assert!(matches!(parse_tensor(wrong), Err(Error::Parse(_))));
        let badrat =
            r#"{"format":"uext-tensor-v1","n":2,"entries":[{"i":1,"j":1,"k":2,"value":"1/0"}]}"#;
        assert!(parse_tensor(badrat).is_err());
    }

    #[test]
    fn lie_file() {
        let text = r#"{"format":"uext-lie-v1","dim":3,"c":[{"i":1,"j":2,"k":3,"value":"1"}]}"#;
        let l = parse_lie(text).unwrap();
        assert_eq!(l.constant(2, 1, 3), Rational::from_int(-1));
        assert_eq!(
            parse_lie(&lie_to_string(&l)).unwrap().constants().count(),
            1
        );
        let bad = r#"{"format":"uext-lie-v1","dim":3,"c":[
            {"i":1,"j":2,"k":1,"value":"1"},{"i":2,"j":3,"k":2,"value":"1"},{"i":1,"j":3,"k":3,"value":"1"}]}"#;
        assert!(matches!(parse_lie(bad), Err(Error::InvalidLieAlgebra(_))));
    }

    #[test]
    fn monoid_files() {
        let t = monoid::zp_multiplicative(3).unwrap();
        let text = monoid_to_string(&t);
        assert_eq!(parse_monoid(&text).unwrap(), t);
        let census = monoid::enumerate_se(3, None).unwrap();
        let lines = census_to_jsonl(&census.tables);
        assert_eq!(lines.lines().count(), census.count());
        assert_eq!(parse_census(&lines).unwrap(), census.tables);
        let short = r#"{"format":"uext-monoid-v1","kind":"SE","n":2,"table":[[0,0],[0,0]]}"#;
        assert!(matches!(parse_monoid(short), Err(Error::InvalidTable(_))));
    }

    #[test]
    fn matrices() {
        let m = parse_matrix(r#"[["0","1"],[1,"1/2"]]"#).unwrap();
        assert_eq!(m[(1, 1)], Rational::new(1, 2));
        assert_eq!(
            parse_matrix(r#"{"matrix":[[2]]}"#).unwrap()[(0, 0)],
            Rational::from_int(2)
        );
        assert!(parse_matrix(r#"[[1,2]]"#).is_err());
        assert_eq!(matrix_to_value(&m), json!([["0", "1"], ["1", "1/2"]]));
    }
}
