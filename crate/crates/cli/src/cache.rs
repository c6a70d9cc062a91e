//! On-disk memo of expensive quantum reports, keyed by a hash of the inputs.
//! Enabled by setting `KNOTCALC_CACHE_DIR`.

use std::path::PathBuf;

use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "KNOTCALC_CACHE_DIR";

pub fn key(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    h.update(b"knotcalc-cache-v1");
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p.as_bytes());
    }
    hex(&h.finalize())
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()).map(PathBuf::from)
}

/// Returns the cached text for `key`, or computes, stores and returns it.
/// Cache write failures are ignored.
pub fn memo<E>(key: &str, compute: impl FnOnce() -> Result<String, E>) -> Result<String, E> {
    let Some(dir) = dir() else { return compute() };
    let path = dir.join(format!("{key}.json"));
    if let Ok(text) = std::fs::read_to_string(&path) {
        return Ok(text);
    }
    let text = compute()?;
    if std::fs::create_dir_all(&dir).is_ok() {
        let tmp = dir.join(format!("{key}.tmp"));
        if std::fs::write(&tmp, &text).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_separate_parts() {
        assert_ne!(key(&["ab", "c"]), key(&["a", "bc"]));
        assert_eq!(key(&["x"]).len(), 64);
    }
}
