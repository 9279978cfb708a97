//! On-disk cache of canonical-basis manifests.
//!
//! `DIR/basis_n{N}_d{d}_v{V}.ref` holds the SHA-256 of the manifest, which is
//! stored at `DIR/{sha256}.json`. A manifest is only used if its hash matches
//! the reference; anything else is rebuilt and rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use diffhom::wronskian::{enumerate_canonical_basis, manifest_from_json, manifest_json, BasisElement};
use sha2::{Digest, Sha256};

/// Bumped whenever the manifest layout or the enumeration order changes.
pub const CACHE_VERSION: u32 = 1;

fn ref_path(dir: &Path, n: usize, d: usize) -> PathBuf {
    dir.join(format!("basis_n{n}_d{d}_v{CACHE_VERSION}.ref"))
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn read_cached(dir: &Path, n: usize, d: usize) -> Option<Vec<BasisElement>> {
    let hash = fs::read_to_string(ref_path(dir, n, d)).ok()?;
    let hash = hash.trim();
    if hash.len() != 64 || !hash.bytes().all(|b| b.is_ascii_hexdigit()) {
        return None;
    }
    let bytes = fs::read(dir.join(format!("{hash}.json"))).ok()?;
    if digest(&bytes) != hash {
        return None;
    }
    let value: serde_json::Value = serde_json::from_slice(&bytes).ok()?;
    let basis = manifest_from_json(&value).ok()?;
    (basis.len() == (n + 1).pow(d as u32)).then_some(basis)
}

fn write_cached(dir: &Path, n: usize, d: usize, basis: &[BasisElement]) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
    let bytes = serde_json::to_vec(&manifest_json(basis))?;
    let hash = digest(&bytes);
    fs::write(dir.join(format!("{hash}.json")), &bytes)?;
    fs::write(ref_path(dir, n, d), format!("{hash}\n"))?;
    Ok(())
}

/// The canonical basis for `(N, d)`, through the cache when one is given.
pub fn load_basis(cache: Option<&Path>, n: usize, d: usize) -> Result<Vec<BasisElement>> {
    if let Some(dir) = cache {
        if let Some(basis) = read_cached(dir, n, d) {
            return Ok(basis);
        }
    }
    let basis = enumerate_canonical_basis(n, d)?;
    if let Some(dir) = cache {
        write_cached(dir, n, d, &basis)?;
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let first = load_basis(Some(dir.path()), 1, 2).unwrap();
        let again = read_cached(dir.path(), 1, 2).expect("cached");
        assert_eq!(first, again);
        // tamper with the content: the hash no longer matches and the entry is ignored
        let hash = fs::read_to_string(ref_path(dir.path(), 1, 2)).unwrap();
        let content = dir.path().join(format!("{}.json", hash.trim()));
        fs::write(&content, b"[]").unwrap();
        assert!(read_cached(dir.path(), 1, 2).is_none());
        assert_eq!(load_basis(Some(dir.path()), 1, 2).unwrap(), first);
        assert!(read_cached(dir.path(), 1, 2).is_some());
    }
}
