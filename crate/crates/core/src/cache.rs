//! Optional on-disk cache, enabled by setting `ICAYLEY_CACHE_DIR`.
//!
//! Built groups are stored as `cgt1` files keyed by the SHA-256 of their
//! canonical recipe, and searched automorphisms as `aut1` files keyed by the
//! SHA-256 of the group's table together with the search kind. A corrupt or
//! unreadable entry is ignored and rebuilt.

use std::path::PathBuf;

use sha2::{Digest, Sha256};

use crate::group::FiniteGroup;
use crate::io::{read_aut1, read_cgt1, write_aut1, write_cgt1};
use crate::morphisms::AutomorphismMap;
use crate::recipe::{eval_recipe, parse_recipe, RecipeError};

pub const CACHE_ENV: &str = "ICAYLEY_CACHE_DIR";

fn hex_digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update(p);
        h.update([0u8]);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn cache_dir() -> Option<PathBuf> {
    let dir = PathBuf::from(std::env::var_os(CACHE_ENV)?);
    std::fs::create_dir_all(&dir).ok()?;
    Some(dir)
}

fn store(path: PathBuf, text: &str) {
    // write then rename so that concurrent readers never see a partial file
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    if std::fs::write(&tmp, text).is_ok() && std::fs::rename(&tmp, &path).is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
}

/// Parses and evaluates `text`, going through the cache when it is enabled.
pub fn build_cached(text: &str) -> Result<FiniteGroup, RecipeError> {
    let ast = parse_recipe(text)?;
    let Some(dir) = cache_dir() else {
        return eval_recipe(&ast);
    };
    let canonical = ast.canonical();
    let path = dir.join(format!("{}.cgt1", hex_digest(&[b"group", canonical.as_bytes()])));
    if let Ok(body) = std::fs::read_to_string(&path) {
        match read_cgt1(&body) {
            Ok(g) if g.recipe() == Some(canonical.as_str()) => {
                log::debug!("cache hit for {canonical}");
                return Ok(g);
            }
            _ => log::warn!("ignoring stale cache entry {}", path.display()),
        }
    }
    let g = eval_recipe(&ast)?;
    store(path, &write_cgt1(&g));
    Ok(g)
}

/// Looks up an automorphism of `g` stored under `kind`, or computes and
/// stores it. `compute` returning `None` is not cached.
pub fn automorphism_cached<E>(
    g: &FiniteGroup,
    kind: &str,
    compute: impl FnOnce() -> Result<Option<AutomorphismMap>, E>,
) -> Result<Option<AutomorphismMap>, E> {
    let Some(dir) = cache_dir() else {
        return compute();
    };
    let table: Vec<u8> = g.raw_table().iter().flat_map(|x| x.to_le_bytes()).collect();
    let path = dir.join(format!("{}.aut1", hex_digest(&[b"aut", kind.as_bytes(), &table])));
    if let Ok(body) = std::fs::read_to_string(&path) {
        if let Ok(phi) = read_aut1(&body, g) {
            return Ok(Some(phi));
        }
        log::warn!("ignoring unreadable cache entry {}", path.display());
    }
    let found = compute()?;
    if let Some(phi) = &found {
        store(path, &write_aut1(phi));
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_is_stable_and_separates_parts() {
        assert_eq!(hex_digest(&[b"ab", b"c"]).len(), 64);
        assert_ne!(hex_digest(&[b"ab", b"c"]), hex_digest(&[b"a", b"bc"]));
        assert_eq!(hex_digest(&[b"x"]), hex_digest(&[b"x"]));
    }
}
