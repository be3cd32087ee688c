//! Deduplicated enumeration of all words of one length, with a binary cache.
//!
//! Cache layout (little-endian):
//!
//! | bytes | field |
//! |-------|-------|
//! | 8     | magic `ANYONTBL` |
//! | 4     | format version |
//! | 4     | word length `l` |
//! | 1     | alphabet mask (bit `g` set for generator code `g`) |
//! | 3     | reserved, zero |
//! | 8     | entry count |
//!
//! followed by one fixed-width record per entry: the eight real components of
//! the representative's matrix as `f64`, then the word packed four letters per
//! byte (letter `i` in bits `2·(i mod 4)` of byte `i / 4`).

use std::collections::HashSet;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::brute::{check_budget, prefix_split};
use crate::braid::{Alphabet, BraidWord, Generator};
use crate::error::Result;
use crate::metric::canonical_key;
use crate::unitary::Unitary2;

pub const CACHE_VERSION: u32 = 1;
const MAGIC: &[u8; 8] = b"ANYONTBL";
const HEADER_LEN: usize = 28;

#[derive(Clone, Debug, PartialEq)]
pub struct TableEntry {
    pub key: [i64; 8],
    /// Matrix of `word` as evaluated.
    pub matrix: Unitary2,
    pub word: BraidWord,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EnumerationTable {
    pub length: usize,
    pub alphabet: Alphabet,
    /// Sorted by representative word in text order.
    pub entries: Vec<TableEntry>,
}

fn enumerate_block(
    prefix: Vec<Generator>,
    letters: &[Generator],
    remaining: usize,
) -> Vec<TableEntry> {
    fn go(
        buf: &mut Vec<Generator>,
        prod: Unitary2,
        letters: &[Generator],
        remaining: usize,
        seen: &mut HashSet<[i64; 8]>,
        out: &mut Vec<TableEntry>,
    ) {
        if remaining == 0 {
            let key = canonical_key(&prod);
            if seen.insert(key) {
                out.push(TableEntry {
                    key,
                    matrix: prod,
                    word: BraidWord::new(buf.clone()),
                });
            }
            return;
        }
        for g in letters {
            buf.push(*g);
            go(buf, prod * g.matrix(), letters, remaining - 1, seen, out);
            buf.pop();
        }
    }
    let prod = prefix
        .iter()
        .fold(Unitary2::identity(), |acc, g| acc * g.matrix());
    let mut buf = prefix;
    let mut out = Vec::new();
    go(
        &mut buf,
        prod,
        letters,
        remaining,
        &mut HashSet::new(),
        &mut out,
    );
    out
}

/// Evaluates every word of length `l` and keeps one representative per
/// canonical key: the lexicographically smallest word.
pub fn build_enumeration_table(
    l: usize,
    alphabet: Alphabet,
    budget: u64,
) -> Result<EnumerationTable> {
    check_budget(alphabet, l, budget)?;
    let letters = alphabet.letters_lex();
    let (depth, prefixes) = prefix_split(&letters, l);
    let blocks: Vec<Vec<TableEntry>> = prefixes
        .into_par_iter()
        .map(|p| enumerate_block(p, &letters, l - depth))
        .collect();
    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    for entry in blocks.into_iter().flatten() {
        if seen.insert(entry.key) {
            entries.push(entry);
        }
    }
    Ok(EnumerationTable {
        length: l,
        alphabet,
        entries,
    })
}

impl EnumerationTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn record_len(&self) -> usize {
        64 + self.length.div_ceil(4)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + self.entries.len() * self.record_len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&CACHE_VERSION.to_le_bytes());
        out.extend_from_slice(&(self.length as u32).to_le_bytes());
        out.push(self.alphabet.mask());
        out.extend_from_slice(&[0; 3]);
        out.extend_from_slice(&(self.entries.len() as u64).to_le_bytes());
        for e in &self.entries {
            for x in e.matrix.to_reals() {
                out.extend_from_slice(&x.to_le_bytes());
            }
            let mut packed = vec![0u8; self.length.div_ceil(4)];
            for (i, g) in e.word.letters().iter().enumerate() {
                packed[i / 4] |= g.code() << (2 * (i % 4));
            }
            out.extend_from_slice(&packed);
        }
        out
    }

    /// Parses a cache file, returning `None` unless it is well formed and
    /// matches `(l, alphabet)`.
    pub fn from_bytes(bytes: &[u8], l: usize, alphabet: Alphabet) -> Option<Self> {
        let header = bytes.get(..HEADER_LEN)?;
        let u32_at = |i: usize| u32::from_le_bytes(header[i..i + 4].try_into().unwrap());
        if &header[..8] != MAGIC
            || u32_at(8) != CACHE_VERSION
            || u32_at(12) as usize != l
            || header[16] != alphabet.mask()
        {
            return None;
        }
        let count = u64::from_le_bytes(header[20..28].try_into().unwrap()) as usize;
        let packed_len = l.div_ceil(4);
        let record = 64 + packed_len;
        let body = &bytes[HEADER_LEN..];
        if body.len() != count.checked_mul(record)? {
            return None;
        }
        let mut entries = Vec::with_capacity(count);
        for chunk in body.chunks_exact(record) {
            let mut reals = [0.0; 8];
            for (k, r) in reals.iter_mut().enumerate() {
                *r = f64::from_le_bytes(chunk[8 * k..8 * k + 8].try_into().unwrap());
            }
            let packed = &chunk[64..];
            let letters = (0..l)
                .map(|i| Generator::from_code((packed[i / 4] >> (2 * (i % 4))) & 0b11))
                .collect::<Option<Vec<_>>>()?;
            if !letters.iter().all(|g| alphabet.contains(*g)) {
                return None;
            }
            let matrix = Unitary2::from_reals(reals);
            entries.push(TableEntry {
                key: canonical_key(&matrix),
                matrix,
                word: BraidWord::new(letters),
            });
        }
        Some(Self {
            length: l,
            alphabet,
            entries,
        })
    }

    pub fn save(&self, path: &Path) -> io::Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let tmp = path.with_extension("tmp");
        let mut f = fs::File::create(&tmp)?;
        f.write_all(&self.to_bytes())?;
        f.sync_all()?;
        fs::rename(tmp, path)
    }
}

pub fn cache_path(dir: &Path, l: usize, alphabet: Alphabet) -> PathBuf {
    dir.join(format!("table-l{l}-m{:x}.bin", alphabet.mask()))
}

/// Loads the cached table for `(l, alphabet)` from `dir`, rebuilding and
/// rewriting it when the file is missing, corrupt or mismatched.
pub fn load_or_build_table(
    dir: &Path,
    l: usize,
    alphabet: Alphabet,
    budget: u64,
) -> Result<EnumerationTable> {
    let path = cache_path(dir, l, alphabet);
    if let Ok(bytes) = fs::read(&path) {
        if let Some(table) = EnumerationTable::from_bytes(&bytes, l, alphabet) {
            return Ok(table);
        }
    }
    let table = build_enumeration_table(l, alphabet, budget)?;
    table.save(&path)?;
    Ok(table)
}
