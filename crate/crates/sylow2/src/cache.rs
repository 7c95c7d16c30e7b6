//! Versioned binary cache for subgroup lattices, keyed by (p, n, kind), so
//! repeated runs skip re-enumeration. Little-endian throughout; loads are
//! validated against the live parent group and re-verified by reclosure.

use crate::error::{Error, Result};
use crate::group::{closure_indices, GroupKind, MatrixGroup, Subgroup};
use crate::lattice::SubgroupLattice;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

const MAGIC: &[u8; 4] = b"S2LT";
const VERSION: u32 = 1;

fn kind_code(kind: GroupKind) -> (u8, u32) {
    match kind {
        GroupKind::Gl => (0, 0),
        GroupKind::Sl => (1, 0),
        GroupKind::SylowGl => (2, 0),
        GroupKind::SylowSl => (3, 0),
        GroupKind::KernelGl { level } => (4, level),
        GroupKind::KernelSl { level } => (5, level),
        GroupKind::Custom => (6, 0),
    }
}

/// Deterministic cache file name for a lattice.
pub fn lattice_file_name(parent: &MatrixGroup) -> String {
    format!(
        "sylow2-lattice-v{VERSION}-p{}-n{}-{}.bin",
        parent.ctx().p(),
        parent.ctx().n(),
        parent.kind().label().replace(['(', ')'], "-")
    )
}

pub fn lattice_path(dir: &Path, parent: &MatrixGroup) -> PathBuf {
    dir.join(lattice_file_name(parent))
}

pub fn save_lattice(dir: &Path, lat: &SubgroupLattice) -> Result<PathBuf> {
    std::fs::create_dir_all(dir)?;
    let parent = lat.parent();
    let path = lattice_path(dir, parent);
    let mut buf: Vec<u8> = Vec::new();
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&parent.ctx().p().to_le_bytes());
    buf.extend_from_slice(&parent.ctx().n().to_le_bytes());
    let (code, level) = kind_code(parent.kind());
    buf.push(code);
    buf.extend_from_slice(&level.to_le_bytes());
    buf.extend_from_slice(&parent.order().to_le_bytes());
    buf.extend_from_slice(&(lat.len() as u32).to_le_bytes());
    for sub in lat.subgroups() {
        buf.extend_from_slice(&(sub.gen_indices().len() as u32).to_le_bytes());
        for &g in sub.gen_indices() {
            buf.extend_from_slice(&g.to_le_bytes());
        }
        buf.extend_from_slice(&(sub.indices().len() as u32).to_le_bytes());
        for &i in sub.indices() {
            buf.extend_from_slice(&i.to_le_bytes());
        }
    }
    let mut file = std::fs::File::create(&path)?;
    file.write_all(&buf)?;
    Ok(path)
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        if self.pos + len > self.data.len() {
            return Err(Error::Cache("truncated lattice cache file".into()));
        }
        let s = &self.data[self.pos..self.pos + len];
        self.pos += len;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }
}

/// Load a cached lattice for `parent` if a valid file exists. Returns
/// `Ok(None)` when there is no file for this key; corrupt or mismatched
/// files are an error rather than silently recomputed.
pub fn load_lattice(dir: &Path, parent: &Arc<MatrixGroup>) -> Result<Option<SubgroupLattice>> {
    let path = lattice_path(dir, parent);
    if !path.exists() {
        return Ok(None);
    }
    let mut data = Vec::new();
    std::fs::File::open(&path)?.read_to_end(&mut data)?;
    let mut r = Reader { data: &data, pos: 0 };
    if r.take(4)? != MAGIC {
        return Err(Error::Cache(format!("{} is not a lattice cache", path.display())));
    }
    if r.u32()? != VERSION {
        return Err(Error::Cache("unsupported lattice cache version".into()));
    }
    let (p, n) = (r.u64()?, r.u32()?);
    let code = r.u8()?;
    let level = r.u32()?;
    let order = r.u64()?;
    let (want_code, want_level) = kind_code(parent.kind());
    if p != parent.ctx().p()
        || n != parent.ctx().n()
        || code != want_code
        || level != want_level
        || order != parent.order()
    {
        return Err(Error::Cache("lattice cache key mismatch".into()));
    }
    let count = r.u32()? as usize;
    let mut subgroups = Vec::with_capacity(count);
    for _ in 0..count {
        let gens_len = r.u32()? as usize;
        let mut gens = Vec::with_capacity(gens_len);
        for _ in 0..gens_len {
            gens.push(r.u32()?);
        }
        let len = r.u32()? as usize;
        let mut indices = Vec::with_capacity(len);
        for _ in 0..len {
            indices.push(r.u32()?);
        }
        if indices.iter().any(|&i| i as u64 >= parent.order())
            || indices.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(Error::Cache("lattice cache holds invalid indices".into()));
        }
        // Re-verify: the stored generators must close onto the stored set.
        if closure_indices(parent, &gens) != indices {
            return Err(Error::Cache("lattice cache failed closure re-check".into()));
        }
        subgroups.push(Subgroup::from_parts(parent, indices, gens));
    }
    if r.pos != data.len() {
        return Err(Error::Cache("trailing bytes in lattice cache".into()));
    }
    Ok(Some(SubgroupLattice::from_parts(Arc::clone(parent), subgroups)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Ctx;
    use crate::group::DEFAULT_BUDGET;
    use crate::lattice::{all_subgroups, DEFAULT_LATTICE_BUDGET};

    #[test]
    fn round_trip_is_byte_identical() {
        let dir = std::env::temp_dir().join(format!("sylow2-cache-test-{}", std::process::id()));
        let s = MatrixGroup::build(
            Ctx::new(3, 2).unwrap(),
            GroupKind::SylowSl,
            DEFAULT_BUDGET,
        )
        .unwrap();
        let lat = all_subgroups(&s, DEFAULT_LATTICE_BUDGET).unwrap();
        let path = save_lattice(&dir, &lat).unwrap();
        let bytes1 = std::fs::read(&path).unwrap();
        let loaded = load_lattice(&dir, &s).unwrap().expect("cache file present");
        assert_eq!(loaded.len(), lat.len());
        for (a, b) in loaded.subgroups().iter().zip(lat.subgroups()) {
            assert_eq!(a.indices(), b.indices());
        }
        let path2 = save_lattice(&dir, &loaded).unwrap();
        let bytes2 = std::fs::read(&path2).unwrap();
        assert_eq!(bytes1, bytes2);
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn missing_file_is_none_and_corrupt_file_errors() {
        let dir = std::env::temp_dir().join(format!("sylow2-cache-miss-{}", std::process::id()));
        let s = MatrixGroup::build(
            Ctx::new(3, 2).unwrap(),
            GroupKind::SylowSl,
            DEFAULT_BUDGET,
        )
        .unwrap();
        assert!(load_lattice(&dir, &s).unwrap().is_none());
        std::fs::create_dir_all(&dir).unwrap();
        std::fs::write(lattice_path(&dir, &s), b"garbage").unwrap();
        assert!(load_lattice(&dir, &s).is_err());
        std::fs::remove_dir_all(&dir).ok();
    }
}
