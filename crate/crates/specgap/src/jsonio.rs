//! Canonical JSON serialization and artifact file helpers.
//!
//! Artifacts must be byte-identical across reruns, so every float is written
//! with a fixed 17-significant-digit scientific format instead of the
//! shortest round-trip form.  Struct field order (deterministic in serde)
//! plus this float rule makes the byte stream canonical.

use std::fs;
use std::io::{self, Write as IoWrite};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::ser::{Formatter, Serializer};
use sha2::{Digest, Sha256};

use crate::error::Result;

struct CanonicalFormatter;

impl Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if !value.is_finite() {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                "non-finite float in artifact",
            ));
        }
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

/// Canonical single-line JSON: fixed-width floats, compact separators.
pub fn to_canonical_string<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, CanonicalFormatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("serde_json emits utf-8"))
}

/// Writes a canonical JSON artifact (single line plus trailing newline).
pub fn write_json_file<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut s = to_canonical_string(value)?;
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

pub fn read_json_file<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let data = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&data)?)
}

/// Appends one canonical JSON line; creates the file when missing.
pub fn append_jsonl<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut line = to_canonical_string(value)?;
    line.push('\n');
    let mut file = fs::OpenOptions::new().create(true).append(true).open(path)?;
    file.write_all(line.as_bytes())?;
    Ok(())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Digest of a value's canonical JSON form; used to key run-log records.
pub fn digest_value<T: Serialize>(value: &T) -> Result<String> {
    Ok(sha256_hex(to_canonical_string(value)?.as_bytes()))
}
