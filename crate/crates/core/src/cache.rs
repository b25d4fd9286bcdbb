//! Content-addressed on-disk cache for bases and invariant records.
//!
//! Bases live under `basis/<provenance>.gb`, records under
//! `records/<key>.json` where the key hashes the spine, system and basis.
//! Files are written to a temporary name and renamed into place.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exactpoly::text::parse_polynomial;
use crate::exactpoly::{MonomialOrder, Polynomial};
use crate::groebner::{buchberger, provenance, GroebnerBasis, GroebnerConfig, GroebnerError};
use crate::invariant::InvariantRecord;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
    #[error("{path}: corrupt cache entry: {message}")]
    Corrupt { path: String, message: String },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

#[derive(Clone, Debug)]
pub struct Cache {
    root: PathBuf,
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CacheError + '_ {
    move |source| CacheError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn write_atomic(path: &Path, text: &str) -> Result<(), CacheError> {
    let dir = path.parent().expect("cache file has a parent");
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text).map_err(io_err(&tmp))?;
    fs::rename(&tmp, path).map_err(io_err(path))
}

impl Cache {
    pub fn new(root: impl Into<PathBuf>) -> Result<Self, CacheError> {
        let root = root.into();
        fs::create_dir_all(&root).map_err(io_err(&root))?;
        Ok(Cache { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn basis_path(&self, provenance: &str) -> PathBuf {
        self.root.join("basis").join(format!("{provenance}.gb"))
    }

    /// The cached basis for `provenance`, if present. A file whose digest
    /// or provenance disagrees is reported as corrupt.
    pub fn load_basis(&self, provenance: &str) -> Result<Option<GroebnerBasis>, CacheError> {
        let path = self.basis_path(provenance);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(&path)(e)),
        };
        let corrupt = |message: String| CacheError::Corrupt {
            path: path.display().to_string(),
            message,
        };
        let gb = GroebnerBasis::from_text(&text).map_err(|e| corrupt(e.to_string()))?;
        if gb.provenance() != provenance {
            return Err(corrupt(format!("provenance {} in file", gb.provenance())));
        }
        Ok(Some(gb))
    }

    pub fn store_basis(&self, gb: &GroebnerBasis) -> Result<PathBuf, CacheError> {
        let path = self.basis_path(gb.provenance());
        write_atomic(&path, &gb.to_text())?;
        Ok(path)
    }

    /// Cached reduced basis of `generators`, computing and storing it on a
    /// miss. The flag is `true` on a hit.
    pub fn basis_or_compute(
        &self,
        generators: &[Polynomial],
        order: &MonomialOrder,
        config: &GroebnerConfig,
    ) -> Result<(GroebnerBasis, bool), CacheError> {
        let prov = provenance(generators, order);
        if let Some(gb) = self.load_basis(&prov)? {
            if gb.order() == order {
                return Ok((gb, true));
            }
        }
        let gb = buchberger(generators, order, config)?;
        self.store_basis(&gb)?;
        Ok((gb, false))
    }

    pub fn record_key(spine_hash: &str, system_hash: &str, basis: &str) -> String {
        let mut h = Sha256::new();
        for part in [spine_hash, system_hash, basis] {
            h.update(part.as_bytes());
            h.update(b"\n");
        }
        hex::encode(h.finalize())
    }

    fn record_path(&self, key: &str) -> PathBuf {
        self.root.join("records").join(format!("{key}.json"))
    }

    pub fn load_record(&self, key: &str, order: &MonomialOrder) -> Result<Option<InvariantRecord>, CacheError> {
        let path = self.record_path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(&path)(e)),
        };
        let corrupt = |message: String| CacheError::Corrupt {
            path: path.display().to_string(),
            message,
        };
        let mut r: InvariantRecord = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
        r.normal_form = parse_polynomial(&r.normal_form_text, order.registry()).map_err(|e| corrupt(e.to_string()))?;
        Ok(Some(r))
    }

    pub fn store_record(&self, key: &str, record: &InvariantRecord) -> Result<(), CacheError> {
        let text = serde_json::to_string_pretty(record).expect("record serializes");
        write_atomic(&self.record_path(key), &(text + "\n"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::VariableRegistry;

    #[test]
    fn basis_round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let ord = MonomialOrder::degrevlex(VariableRegistry::new(["x", "y"]).unwrap());
        let gens = vec![
            parse_polynomial("x*y - 1", ord.registry()).unwrap(),
            parse_polynomial("y^2 - 1", ord.registry()).unwrap(),
        ];
        let cfg = GroebnerConfig::default();
        let (a, hit) = cache.basis_or_compute(&gens, &ord, &cfg).unwrap();
        assert!(!hit);
        let (b, hit) = cache.basis_or_compute(&gens, &ord, &cfg).unwrap();
        assert!(hit);
        assert_eq!(a, b);
        let path = cache.basis_path(a.provenance());
        let text = fs::read_to_string(&path).unwrap().replace("y^2 - 1", "y^2 - 2");
        fs::write(&path, text).unwrap();
        assert!(matches!(cache.load_basis(a.provenance()), Err(CacheError::Corrupt { .. })));
    }
}
