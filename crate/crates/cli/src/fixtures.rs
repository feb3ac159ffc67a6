//! One JSON file per (command, canonical arguments) pair, named
//! `<command>-<first 16 hex digits of sha256>.json`.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Record,
    Verify,
}

pub struct Store {
    pub dir: PathBuf,
    pub mode: Mode,
}

/// Canonical text of a JSON value: compact, keys sorted.
pub fn canonical(v: &Value) -> String {
    // serde_json maps are BTreeMaps here, so serialization sorts keys.
    serde_json::to_string(v).expect("JSON values serialize")
}

pub fn file_name(command: &str, args: &Value) -> String {
    let key = canonical(&json!({ "command": command, "args": args }));
    let digest = Sha256::digest(key.as_bytes());
    format!("{command}-{}.json", &hex::encode(digest)[..16])
}

impl Store {
    pub fn new(dir: impl AsRef<Path>, mode: Mode) -> Self {
        Store { dir: dir.as_ref().to_path_buf(), mode }
    }

    /// Records or checks one document. Returns a mismatch description in
    /// verify mode when the stored bytes differ or are missing.
    pub fn apply(&self, command: &str, args: &Value, document: &str) -> io::Result<Option<Value>> {
        let name = file_name(command, args);
        let path = self.dir.join(&name);
        match self.mode {
            Mode::Record => {
                fs::create_dir_all(&self.dir)?;
                fs::write(&path, document)?;
                Ok(None)
            }
            Mode::Verify => match fs::read_to_string(&path) {
                Ok(stored) if stored == document => Ok(None),
                Ok(stored) => Ok(Some(json!({
                    "fixture": name,
                    "reason": "content differs",
                    "first_difference": first_difference(&stored, document),
                }))),
                Err(e) if e.kind() == io::ErrorKind::NotFound => {
                    Ok(Some(json!({ "fixture": name, "reason": "missing" })))
                }
                Err(e) => Err(e),
            },
        }
    }
}

fn first_difference(a: &str, b: &str) -> Value {
    let line = a.lines().zip(b.lines()).position(|(x, y)| x != y).unwrap_or_else(|| a.lines().count().min(b.lines().count()));
    json!({
        "line": line + 1,
        "stored": a.lines().nth(line).unwrap_or(""),
        "computed": b.lines().nth(line).unwrap_or(""),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_depend_on_arguments_only() {
        let a = file_name("hl", &json!({ "n": 2, "lambda": [2, 0] }));
        let b = file_name("hl", &json!({ "lambda": [2, 0], "n": 2 }));
        assert_eq!(a, b);
        assert!(a.starts_with("hl-") && a.ends_with(".json"));
        assert_ne!(a, file_name("hl", &json!({ "n": 2, "lambda": [1, 1] })));
    }

    #[test]
    fn verify_reports_changes() {
        let dir = tempfile::tempdir().unwrap();
        let args = json!({ "p": 3 });
        Store::new(dir.path(), Mode::Record).apply("tate", &args, "{\n  \"a\": 1\n}\n").unwrap();
        let v = Store::new(dir.path(), Mode::Verify);
        assert!(v.apply("tate", &args, "{\n  \"a\": 1\n}\n").unwrap().is_none());
        let m = v.apply("tate", &args, "{\n  \"a\": 2\n}\n").unwrap().unwrap();
        assert_eq!(m["first_difference"]["line"], 2);
        assert_eq!(v.apply("tate", &json!({ "p": 5 }), "x").unwrap().unwrap()["reason"], "missing");
    }
}
