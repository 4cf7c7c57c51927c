//! On-disk cache of subspace enumerations.
//!
//! One file per `(q, d_v, k, modulus)`: a header line
//! `PGCACHE v1 q d_v k count` followed by one serialized [`Subspace`] per
//! line in canonical order.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::geometry::enumerate_subspaces;
use crate::gf::FieldSpec;
use crate::linalg::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Written,
}

pub fn cache_path(dir: &Path, q: u8, d: usize, k: usize) -> Result<PathBuf> {
    let key = FieldSpec::get(q as u32)?.modulus_key();
    Ok(dir.join(format!("pgcache_q{q}_d{d}_k{k}_m{key}.txt")))
}

pub fn write_cache(path: &Path, q: u8, d: usize, k: usize, spaces: &[Subspace]) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    // write-then-rename so concurrent readers never see a partial file
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        writeln!(w, "PGCACHE v1 {q} {d} {k} {}", spaces.len())?;
        for s in spaces {
            writeln!(w, "{s}")?;
        }
        w.flush()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Reads a cache file. Returns `Ok(None)` when the file is absent; malformed
/// or mismatching content is an error.
pub fn read_cache(path: &Path, q: u8, d: usize, k: usize) -> Result<Option<Vec<Subspace>>> {
    let file = match fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut lines = BufReader::new(file).lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    let fields: Vec<&str> = header.split_whitespace().collect();
    let expect_prefix = [q.to_string(), d.to_string(), k.to_string()];
    if fields.len() != 6
        || fields[0] != "PGCACHE"
        || fields[1] != "v1"
        || fields[2..5] != expect_prefix.iter().map(String::as_str).collect::<Vec<_>>()[..]
    {
        return Err(Error::Parse(format!("bad cache header `{header}` in {}", path.display())));
    }
    let count: usize =
        fields[5].parse().map_err(|_| Error::Parse(format!("bad count in {}", path.display())))?;
    let mut out = Vec::with_capacity(count);
    for line in lines {
        let line = line?;
        let s: Subspace = line.parse()?;
        if s.to_string() != line || s.dim() != k || s.ambient() != d || s.q() != q {
            return Err(Error::Parse(format!("non-canonical entry `{line}`")));
        }
        if out.last().is_some_and(|prev: &Subspace| prev >= &s) {
            return Err(Error::Parse(format!("cache out of order at `{line}`")));
        }
        out.push(s);
    }
    if out.len() != count {
        return Err(Error::Parse(format!(
            "cache {} lists {} entries, header says {count}",
            path.display(),
            out.len()
        )));
    }
    Ok(Some(out))
}

pub fn load_or_enumerate(
    dir: &Path,
    q: u8,
    d: usize,
    k: usize,
) -> Result<(Vec<Subspace>, CacheStatus)> {
    let path = cache_path(dir, q, d, k)?;
    match read_cache(&path, q, d, k) {
        Ok(Some(v)) => return Ok((v, CacheStatus::Hit)),
        Ok(None) | Err(Error::Parse(_)) => {}
        Err(e) => return Err(e),
    }
    let spaces = enumerate_subspaces(q, d, k)?;
    write_cache(&path, q, d, k, &spaces)?;
    Ok((spaces, CacheStatus::Written))
}
