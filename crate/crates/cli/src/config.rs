use std::ffi::OsString;
use std::path::Path;

use crate::CliError;

/// Locate `--config PATH` or `--config=PATH` in raw arguments.
pub fn config_path(argv: &[OsString]) -> Option<OsString> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(p) = s.strip_prefix("--config=") {
            return Some(p.into());
        }
    }
    None
}

/// Parse `key=value` lines; `#` starts a comment.
pub fn read_config(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("{}:{}: expected key=value", path.display(), i + 1)))?;
        let key = k.trim().replace('_', "-");
        if key == "config" {
            return Err(CliError::Usage(format!("{}:{}: nested config is not allowed", path.display(), i + 1)));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

/// Append config entries whose flag is absent from `argv`.
pub fn merge(mut argv: Vec<OsString>, entries: &[(String, String)]) -> Vec<OsString> {
    let given = |key: &str| {
        let flag = format!("--{key}");
        let eq = format!("--{key}=");
        argv.iter().any(|a| {
            let s = a.to_string_lossy();
            s == flag || s.starts_with(&eq)
        })
    };
    let extra: Vec<OsString> = entries
        .iter()
        .filter(|(k, _)| !given(k))
        .flat_map(|(k, v)| match v.as_str() {
            "true" => vec![format!("--{k}").into()],
            "false" => vec![],
            _ => vec![format!("--{k}").into(), v.into()],
        })
        .collect();
    argv.extend(extra);
    argv
}
