//! On-disk cache of group enumerations.
//!
//! One file per group, `CCH1` magic, a format version, the payload, and a
//! SHA-256 of everything before it. Files that fail any check are treated
//! as missing and rebuilt; there is no migration.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::chars::CliffordContext;
use crate::clifford::{enumerate_clifford, CliffordElement};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupEnumeration};
use crate::inertia::{enumerate_inertia, InertiaData};

pub const MAGIC: &[u8; 4] = b"CCH1";
pub const VERSION: u32 = 1;
/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "CLIFFCHAR_CACHE";

const KIND_CLIFFORD: u8 = 1;
const KIND_INERTIA: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CachePolicy {
    #[default]
    ReadWrite,
    ReadOnly,
    Off,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
    policy: CachePolicy,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>, policy: CachePolicy) -> Self {
        Cache {
            dir: Some(dir.into()),
            policy,
        }
    }

    pub fn disabled() -> Self {
        Cache {
            dir: None,
            policy: CachePolicy::Off,
        }
    }

    /// `dir`, else `$CLIFFCHAR_CACHE`, else the user cache directory.
    pub fn resolve(dir: Option<PathBuf>, policy: CachePolicy) -> Self {
        let dir = dir
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .or_else(|| dirs::cache_dir().map(|d| d.join("cliffchar")));
        Cache { dir, policy }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn policy(&self) -> CachePolicy {
        self.policy
    }

    fn path(&self, stem: &str) -> Option<PathBuf> {
        match self.policy {
            CachePolicy::Off => None,
            _ => self.dir.as_ref().map(|d| d.join(format!("{stem}.cch"))),
        }
    }

    fn load(&self, stem: &str, kind: u8) -> Option<Payload> {
        let bytes = fs::read(self.path(stem)?).ok()?;
        match decode(&bytes, kind) {
            Ok(p) => Some(p),
            Err(e) => {
                log::warn!("ignoring cache file {stem}: {e}");
                None
            }
        }
    }

    fn store(&self, stem: &str, bytes: &[u8]) -> Result<()> {
        if self.policy != CachePolicy::ReadWrite {
            return Ok(());
        }
        let Some(path) = self.path(stem) else { return Ok(()) };
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::File::create(&tmp)?.write_all(bytes)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }

    pub fn clifford(&self, n: usize, allow_large: bool) -> Result<GroupEnumeration<CliffordElement>> {
        let stem = format!("clifford-{n}");
        if let Some(p) = self.load(&stem, KIND_CLIFFORD) {
            if let Ok(g) = p.into_group::<CliffordElement>() {
                return Ok(g);
            }
        }
        let g = enumerate_clifford(n, allow_large)?;
        self.store(&stem, &encode(KIND_CLIFFORD, &g, None))?;
        Ok(g)
    }

    pub fn inertia(&self, n: usize, allow_large: bool) -> Result<InertiaData> {
        let stem = format!("inertia-{n}");
        if let Some(p) = self.load(&stem, KIND_INERTIA) {
            let sigma = p.extra.iter().map(|&b| b as i8).collect();
            if let Ok(d) = p.into_group::<CliffordElement>().and_then(|g| InertiaData::from_parts(g, sigma)) {
                return Ok(d);
            }
        }
        let d = enumerate_inertia(n, allow_large)?;
        let sigma: Vec<u8> = d.sigma_values().iter().map(|&s| s as u8).collect();
        self.store(&stem, &encode(KIND_INERTIA, d.group(), Some(&sigma)))?;
        Ok(d)
    }

    pub fn context(&self, n: usize) -> Result<CliffordContext> {
        if n == 0 || n > 2 {
            return Err(Error::SizeCap(format!(
                "the full pipeline is available for n <= 2 (got n = {n})"
            )));
        }
        CliffordContext::from_enumerations(self.clifford(n, false)?, self.inertia(n, false)?)
    }
}

/// Serialises an enumeration (elements, class labels, generators) plus an
/// optional per-element byte table.
pub fn encode<E: GroupElement>(kind: u8, g: &GroupEnumeration<E>, extra: Option<&[u8]>) -> Vec<u8> {
    let mut b = Vec::with_capacity(64 + g.order() * 21);
    b.extend_from_slice(MAGIC);
    b.extend_from_slice(&VERSION.to_le_bytes());
    b.push(kind);
    b.extend_from_slice(&(g.rank() as u32).to_le_bytes());
    b.extend_from_slice(&(g.name().len() as u32).to_le_bytes());
    b.extend_from_slice(g.name().as_bytes());
    b.extend_from_slice(&(g.order() as u64).to_le_bytes());
    for k in g.keys() {
        b.extend_from_slice(&k.to_le_bytes());
    }
    for &c in g.class_labels() {
        b.extend_from_slice(&c.to_le_bytes());
    }
    b.extend_from_slice(&(g.generators().len() as u32).to_le_bytes());
    for e in g.generators() {
        b.extend_from_slice(&e.key().to_le_bytes());
    }
    let extra = extra.unwrap_or(&[]);
    b.extend_from_slice(&(extra.len() as u64).to_le_bytes());
    b.extend_from_slice(extra);
    let digest = Sha256::digest(&b);
    b.extend_from_slice(&digest);
    b
}

/// Decoded cache contents.
pub struct Payload {
    pub name: String,
    pub rank: usize,
    pub keys: Vec<u128>,
    pub class_of: Vec<u32>,
    pub generators: Vec<u128>,
    pub extra: Vec<u8>,
}

impl Payload {
    pub fn into_group<E: GroupElement>(self) -> Result<GroupEnumeration<E>> {
        let gens = self.generators.iter().map(|&k| E::from_key(self.rank, k)).collect();
        GroupEnumeration::from_parts(self.name, self.rank, &self.keys, gens, self.class_of)
    }
}

struct Reader<'a> {
    b: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.b.len())
            .ok_or_else(|| Error::Cache("truncated file".into()))?;
        let s = &self.b[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }

    fn u128(&mut self) -> Result<u128> {
        Ok(u128::from_le_bytes(self.take(16)?.try_into().expect("16 bytes")))
    }

    fn len(&mut self, unit: usize) -> Result<usize> {
        let n = usize::try_from(self.u64()?).map_err(|_| Error::Cache("length overflow".into()))?;
        if n.saturating_mul(unit) > self.b.len() {
            return Err(Error::Cache("length exceeds file size".into()));
        }
        Ok(n)
    }
}

pub fn decode(bytes: &[u8], kind: u8) -> Result<Payload> {
    if bytes.len() < 4 + 4 + 32 || &bytes[..4] != MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let (body, digest) = bytes.split_at(bytes.len() - 32);
    if Sha256::digest(body).as_slice() != digest {
        return Err(Error::Cache("checksum mismatch".into()));
    }
    let mut r = Reader { b: body, pos: 4 };
    let version = r.u32()?;
    if version != VERSION {
        return Err(Error::Cache(format!("format version {version}, expected {VERSION}")));
    }
    let found = r.take(1)?[0];
    if found != kind {
        return Err(Error::Cache(format!("record kind {found}, expected {kind}")));
    }
    let rank = r.u32()? as usize;
    let name_len = r.u32()? as usize;
    let name = String::from_utf8(r.take(name_len)?.to_vec()).map_err(|_| Error::Cache("bad name".into()))?;
    let order = r.len(20)?;
    let keys = (0..order).map(|_| r.u128()).collect::<Result<Vec<_>>>()?;
    let class_of = (0..order).map(|_| r.u32()).collect::<Result<Vec<_>>>()?;
    let ngens = r.u32()? as usize;
    let generators = (0..ngens).map(|_| r.u128()).collect::<Result<Vec<_>>>()?;
    let extra_len = r.len(1)?;
    let extra = r.take(extra_len)?.to_vec();
    if r.pos != body.len() {
        return Err(Error::Cache("trailing bytes".into()));
    }
    Ok(Payload {
        name,
        rank,
        keys,
        class_of,
        generators,
        extra,
    })
}
