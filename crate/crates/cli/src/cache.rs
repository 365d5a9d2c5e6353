//! Content-addressed report cache.
//!
//! Entries are `<key>.txt` holding a header, the sha256 of the body, then the body.
//! An entry whose checksum does not match is ignored and rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

const HEADER: &str = "# conepair cache v1";

/// Canonical description of a computation; equal fragments give equal keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fragment {
    fields: Vec<(String, String)>,
}

impl Fragment {
    pub fn new(command: &str) -> Self {
        Fragment::default().with("command", command)
    }

    pub fn with(mut self, name: &str, value: impl ToString) -> Self {
        self.fields.push((name.to_string(), value.to_string()));
        self
    }

    fn canonical(&self) -> String {
        let mut out = String::from(HEADER);
        out.push('\n');
        for (k, v) in &self.fields {
            // length-prefixed so multi-line values cannot collide with field boundaries
            out.push_str(&format!("{k} {} {v}\n", v.len()));
        }
        out
    }
}

fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn cache_key(fragment: &Fragment) -> String {
    sha256(fragment.canonical().as_bytes())
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.txt"))
    }

    /// The stored body, when present and intact.
    pub fn get(&self, key: &str) -> Option<String> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let rest = text.strip_prefix(HEADER)?.strip_prefix('\n')?;
        let (line, body) = rest.split_once('\n')?;
        let sum = line.strip_prefix("sha256 ")?;
        (sha256(body.as_bytes()) == sum).then(|| body.to_string())
    }

    pub fn put(&self, key: &str, body: &str) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let tmp = self.dir.join(format!("{key}.tmp"));
        fs::write(&tmp, format!("{HEADER}\nsha256 {}\n{body}", sha256(body.as_bytes())))?;
        fs::rename(tmp, self.path(key))
    }

    /// Cached body for `fragment`, or the result of `compute`, stored on the way out.
    pub fn get_or_compute<E>(
        &self,
        fragment: &Fragment,
        compute: impl FnOnce() -> Result<String, E>,
    ) -> Result<String, E>
    where
        E: From<std::io::Error>,
    {
        let key = cache_key(fragment);
        if let Some(body) = self.get(&key) {
            return Ok(body);
        }
        let body = compute()?;
        self.put(&key, &body)?;
        Ok(body)
    }
}
