//! On-disk cache of class-representative neighbor bitsets, content-addressed
//! by (descriptor, word, format version). Blobs are versioned binary with a
//! JSON sidecar manifest; corrupt or mismatched entries are ignored and the
//! data recomputed -- I/O problems degrade to recomputation, never to wrong
//! answers.

use engel_graph::engel::Word;
use engel_graph::grp::{ClassData, Group};
use engel_graph::util::Bitset;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const CACHE_VERSION: u32 = 1;
const MAGIC: &[u8; 8] = b"ENGELNB\x01";

pub struct Cache {
    dir: PathBuf,
}

pub fn fnv64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn sanitize(s: &str) -> String {
    s.chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect()
}

impl Cache {
    pub fn at(dir: impl Into<PathBuf>) -> Cache {
        Cache { dir: dir.into() }
    }

    /// Cache directory from the environment, unless explicitly overridden.
    pub fn from_env(explicit: Option<PathBuf>) -> Option<Cache> {
        explicit
            .or_else(|| std::env::var_os("ENGEL_CACHE_DIR").map(PathBuf::from))
            .map(Cache::at)
    }

    fn blob_path(&self, desc: &str, word: Word) -> PathBuf {
        self.dir.join(format!(
            "{}__{}.v{}.bin",
            sanitize(desc),
            sanitize(&word.to_string()),
            CACHE_VERSION
        ))
    }

    fn manifest_path(&self, desc: &str, word: Word) -> PathBuf {
        self.blob_path(desc, word).with_extension("json")
    }

    pub fn load_rep_out(
        &self,
        desc: &str,
        word: Word,
        g: &Group,
        cd: &ClassData,
    ) -> Option<(Vec<u32>, Vec<Bitset>)> {
        let bytes = fs::read(self.blob_path(desc, word)).ok()?;
        decode_blob(&bytes, g.order(), cd.n_classes())
    }

    pub fn store_rep_out(
        &self,
        desc: &str,
        word: Word,
        g: &Group,
        cd: &ClassData,
        vertices: &[u32],
        rep_out: &[Bitset],
    ) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut payload = Vec::new();
        payload.extend_from_slice(MAGIC);
        payload.extend_from_slice(&CACHE_VERSION.to_le_bytes());
        payload.extend_from_slice(&(g.order() as u64).to_le_bytes());
        payload.extend_from_slice(&(cd.n_classes() as u32).to_le_bytes());
        payload.extend_from_slice(&(vertices.len() as u64).to_le_bytes());
        for &v in vertices {
            payload.extend_from_slice(&v.to_le_bytes());
        }
        for bits in rep_out {
            for &w in bits.words() {
                payload.extend_from_slice(&w.to_le_bytes());
            }
        }
        let checksum = fnv64(&payload);
        payload.extend_from_slice(&checksum.to_le_bytes());
        atomic_write(&self.blob_path(desc, word), &payload)?;
        let manifest = serde_json::json!({
            "descriptor": desc,
            "word": word.to_string(),
            "version": CACHE_VERSION,
            "order": g.order(),
            "classes": cd.n_classes(),
            "vertices": vertices.len(),
            "checksum": format!("{checksum:016x}"),
        });
        atomic_write(
            &self.manifest_path(desc, word),
            serde_json::to_string_pretty(&manifest).unwrap().as_bytes(),
        )
    }
}

/// Pure blob decoder: magic, version, shape, payload, trailing checksum.
/// Any inconsistency yields None (the entry is then ignored and recomputed).
pub fn decode_blob(
    bytes: &[u8],
    expect_order: usize,
    expect_classes: usize,
) -> Option<(Vec<u32>, Vec<Bitset>)> {
    if bytes.len() < MAGIC.len() + 4 + 8 + 4 + 8 + 8 {
        return None;
    }
    let (payload, check) = bytes.split_at(bytes.len() - 8);
    let want = u64::from_le_bytes(check.try_into().ok()?);
    if fnv64(payload) != want {
        return None;
    }
    let mut at = 0usize;
    let take = |at: &mut usize, n: usize| -> Option<&[u8]> {
        let s = payload.get(*at..*at + n)?;
        *at += n;
        Some(s)
    };
    if take(&mut at, 8)? != MAGIC {
        return None;
    }
    let version = u32::from_le_bytes(take(&mut at, 4)?.try_into().ok()?);
    if version != CACHE_VERSION {
        return None;
    }
    let order = u64::from_le_bytes(take(&mut at, 8)?.try_into().ok()?);
    let n_classes = u32::from_le_bytes(take(&mut at, 4)?.try_into().ok()?);
    if order != expect_order as u64 || n_classes != expect_classes as u32 {
        return None;
    }
    let n_vertices = u64::from_le_bytes(take(&mut at, 8)?.try_into().ok()?) as usize;
    if n_vertices > expect_order {
        return None;
    }
    let mut vertices = Vec::with_capacity(n_vertices);
    for _ in 0..n_vertices {
        let v = u32::from_le_bytes(take(&mut at, 4)?.try_into().ok()?);
        if v as usize >= expect_order {
            return None;
        }
        vertices.push(v);
    }
    let words_per = expect_order.div_ceil(64);
    let mut rep_out = Vec::with_capacity(expect_classes);
    for _ in 0..expect_classes {
        let mut words = Vec::with_capacity(words_per);
        for _ in 0..words_per {
            words.push(u64::from_le_bytes(take(&mut at, 8)?.try_into().ok()?));
        }
        rep_out.push(Bitset::from_words(words, expect_order)?);
    }
    if at != payload.len() {
        return None;
    }
    Some((vertices, rep_out))
}

fn atomic_write(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
    }
    fs::rename(tmp, path)
}
