//! File writers: JSON with %.17g numbers, RFC-4180 CSV, run manifests.

use fslp_core::report::g17;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use sha2::{Digest, Sha256};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

/// Pretty JSON formatter printing floats as %.17g (non-finite values become null).
struct G17Formatter<'a>(PrettyFormatter<'a>);

impl Formatter for G17Formatter<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if value.is_finite() {
            w.write_all(g17(value).as_bytes())
        } else {
            w.write_all(b"null")
        }
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json<T: Serialize>(value: &T) -> io::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, G17Formatter(PrettyFormatter::new()));
    value.serialize(&mut ser).map_err(io::Error::other)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

/// SHA-256 of the compact JSON form of the resolved configuration.
pub fn config_hash<T: Serialize>(config: &T) -> String {
    let text = serde_json::to_string(config).expect("config serializes");
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

/// Collects the files a command writes and finishes with a manifest.
pub struct Outputs {
    dir: PathBuf,
    files: Vec<String>,
}

impl Outputs {
    pub fn new(dir: &Path) -> io::Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Self { dir: dir.to_path_buf(), files: Vec::new() })
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> io::Result<()> {
        std::fs::write(self.dir.join(name), to_json(value)?)?;
        self.files.push(name.into());
        Ok(())
    }

    pub fn csv(&mut self, name: &str, header: &[String], rows: &[Vec<String>]) -> io::Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_path(self.dir.join(name))?;
        w.write_record(header)?;
        for r in rows {
            w.write_record(r)?;
        }
        w.flush()?;
        self.files.push(name.into());
        Ok(())
    }

    pub fn manifest<C: Serialize, E: Serialize>(
        self,
        command: &str,
        config: &C,
        elapsed: f64,
        extra: E,
    ) -> io::Result<()> {
        #[derive(Serialize)]
        struct Manifest<'a, C, E> {
            command: &'a str,
            version: &'a str,
            config_hash: String,
            config: &'a C,
            outputs: &'a [String],
            elapsed_seconds: f64,
            details: E,
        }
        let m = Manifest {
            command,
            version: env!("CARGO_PKG_VERSION"),
            config_hash: config_hash(config),
            config,
            outputs: &self.files,
            elapsed_seconds: elapsed,
            details: extra,
        };
        std::fs::write(self.dir.join(format!("{command}.manifest.json")), to_json(&m)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_numbers_use_g17() {
        let s = to_json(&serde_json::json!({"a": 0.1, "b": [1.0, f64::NAN], "c": 3})).unwrap();
        assert!(s.contains("0.10000000000000001"), "{s}");
        assert!(s.contains("null"));
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["c"], 3);
    }

    #[test]
    fn hash_is_stable() {
        let h = config_hash(&serde_json::json!({"alpha": 1.5}));
        assert_eq!(h.len(), 64);
        assert_eq!(h, config_hash(&serde_json::json!({"alpha": 1.5})));
    }
}
