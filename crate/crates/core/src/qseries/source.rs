//! Where coefficients come from: inline forms, files, bundled tables and an
//! LMFDB-compatible web API with an on-disk cache.

use std::path::{Path, PathBuf};
use std::time::Duration;

use super::format::{parse_coefficients, write_coefficients};
use super::expansion::QExpansion;
use super::forms::FormSpec;
use crate::error::{Error, Result};

/// Default API root; override with `LCENTRAL_LMFDB_URL`.
pub const DEFAULT_API_URL: &str = "https://www.lmfdb.org/api";

const BUNDLED: &[(&str, &str)] = &[
    ("37.2.a.a", include_str!("../../data/37.2.a.a.txt")),
    ("127.4.a.a", include_str!("../../data/127.4.a.a.txt")),
    ("5077.2.a.a", include_str!("../../data/5077.2.a.a.txt")),
];

#[derive(Clone, Debug)]
pub enum CoefficientSource {
    Inline(FormSpec),
    File(PathBuf),
    /// A newform label such as `37.2.a.a`.
    Remote(String),
}

/// Labels shipped with the library.
pub fn bundled_labels() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(l, _)| *l)
}

/// The bundled coefficient table for `label`, if any.
pub fn bundled(label: &str) -> Option<FormSpec> {
    BUNDLED
        .iter()
        .find(|(l, _)| *l == label)
        .map(|(l, text)| parse_coefficients(text).expect("bundled tables are well formed").with_label(*l))
}

/// `LCENTRAL_CACHE_DIR`, else the platform cache directory.
pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os("LCENTRAL_CACHE_DIR")
        .map(PathBuf::from)
        .or_else(|| dirs::cache_dir().map(|d| d.join("lcentral")))
}

fn cache_path(dir: &Path, label: &str) -> PathBuf {
    dir.join(format!("{label}.txt"))
}

fn check_label(label: &str) -> Result<()> {
    let ok = !label.is_empty() && label.chars().all(|c| c.is_ascii_alphanumeric() || c == '.' || c == '-' || c == '_');
    if ok {
        Ok(())
    } else {
        Err(Error::Fetch { label: label.into(), msg: "labels may contain only letters, digits, '.', '-' and '_'".into() })
    }
}

fn read_file(path: &Path) -> Result<FormSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_coefficients(&text)
}

/// Writes through a temporary file and renames it into place.
fn store_atomically(dir: &Path, label: &str, form: &FormSpec) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let tmp = dir.join(format!(".{label}.{}.tmp", std::process::id()));
    std::fs::write(&tmp, write_coefficients(form)).map_err(|e| Error::io(&tmp, e))?;
    let dest = cache_path(dir, label);
    std::fs::rename(&tmp, &dest).map_err(|e| Error::io(&dest, e))
}

/// Resolves `source` to a form known through at least `q^order`.
pub fn load_coefficients(source: &CoefficientSource, order: i64) -> Result<FormSpec> {
    let form = match source {
        CoefficientSource::Inline(f) => f.clone(),
        CoefficientSource::File(p) => read_file(p)?,
        CoefficientSource::Remote(label) => return load_remote(label, order),
    };
    ensure_order(form, order)
}

fn ensure_order(form: FormSpec, order: i64) -> Result<FormSpec> {
    if form.expansion().n_max() < order {
        return Err(Error::InsufficientOrder { available: form.expansion().n_max(), required: order });
    }
    Ok(form)
}

/// Cache, then bundled tables, then the network.
fn load_remote(label: &str, order: i64) -> Result<FormSpec> {
    check_label(label)?;
    let dir = cache_dir();
    if let Some(dir) = &dir {
        let path = cache_path(dir, label);
        if path.exists() {
            let f = read_file(&path)?.with_label(label);
            if f.expansion().n_max() >= order {
                return Ok(f);
            }
        }
    }
    if let Some(f) = bundled(label) {
        if f.expansion().n_max() >= order {
            return Ok(f);
        }
    }
    let base = std::env::var("LCENTRAL_LMFDB_URL").unwrap_or_else(|_| DEFAULT_API_URL.to_string());
    let form = fetch(&base, label)?;
    if let Some(dir) = &dir {
        store_atomically(dir, label, &form)?;
    }
    ensure_order(form, order)
}

/// Queries `<base>/mf_newforms/?label=<label>` for a dimension-one newform.
pub fn fetch(base: &str, label: &str) -> Result<FormSpec> {
    check_label(label)?;
    let ferr = |msg: String| Error::Fetch { label: label.into(), msg };
    let url = format!(
        "{}/mf_newforms/?label={label}&_format=json&_fields=label,level,weight,dim,fricke_eigenval,traces",
        base.trim_end_matches('/')
    );
    let agent = ureq::Agent::config_builder().timeout_global(Some(Duration::from_secs(30))).build().new_agent();
    let body = agent
        .get(&url)
        .call()
        .map_err(|e| ferr(e.to_string()))?
        .body_mut()
        .read_to_string()
        .map_err(|e| ferr(e.to_string()))?;
    parse_api_response(label, &body)
}

/// Turns an API JSON document into a form; non-integral numbers are
/// rejected rather than rounded.
pub fn parse_api_response(label: &str, body: &str) -> Result<FormSpec> {
    let ferr = |msg: &str| Error::Fetch { label: label.into(), msg: msg.into() };
    let doc: serde_json::Value = serde_json::from_str(body).map_err(|e| ferr(&format!("invalid JSON: {e}")))?;
    let rec = doc
        .get("data")
        .and_then(|d| d.as_array())
        .and_then(|a| a.iter().find(|r| r.get("label").and_then(|l| l.as_str()) == Some(label)))
        .ok_or_else(|| ferr("label not found"))?;
    let int = |key: &str| -> Result<i64> {
        let v = rec.get(key).ok_or_else(|| ferr(&format!("missing field '{key}'")))?;
        v.as_i64().ok_or_else(|| ferr(&format!("field '{key}' is not an integer: {v}")))
    };
    if int("dim")? != 1 {
        return Err(Error::Unsupported(format!("{label} has dimension > 1; its traces are not coefficients")));
    }
    let weight = int("weight")?;
    let level = int("level")?;
    let fricke = int("fricke_eigenval")?;
    let traces = rec.get("traces").and_then(|t| t.as_array()).ok_or_else(|| ferr("missing traces"))?;
    let coeffs = traces
        .iter()
        .map(|v| match v {
            serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => {
                rug::Integer::parse(n.to_string()).map(|i| rug::Rational::from(rug::Integer::from(i))).map_err(|_| ferr("bad integer"))
            }
            serde_json::Value::String(s) => rug::Integer::parse(s)
                .map(|i| rug::Rational::from(rug::Integer::from(i)))
                .map_err(|_| ferr(&format!("coefficient '{s}' is not an integer"))),
            other => Err(ferr(&format!("coefficient {other} is not an exact integer"))),
        })
        .collect::<Result<Vec<_>>>()?;
    if coeffs.is_empty() {
        return Err(ferr("empty traces"));
    }
    let n_max = coeffs.len() as i64;
    FormSpec::new(label, weight as u32, level as u64, fricke as i8, QExpansion::new(1, coeffs, n_max), None)
}
