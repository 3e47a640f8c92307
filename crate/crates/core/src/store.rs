//! Binary format for materialized prefixes.
//!
//! Layout, all integers little-endian:
//!
//! | offset | size | field                                  |
//! |--------|------|----------------------------------------|
//! | 0      | 4    | magic `TMCF`                           |
//! | 4      | 2    | format version, currently `1`          |
//! | 6      | 1    | bits per symbol `w = ⌈log₂ m⌉`         |
//! | 7      | 1    | reserved, `0`                          |
//! | 8      | 4    | modulus `m`                            |
//! | 12     | 8    | number of symbols `L`                  |
//! | 20     | …    | `⌈L·w / 8⌉` bytes of packed symbols     |
//!
//! Symbol `i` occupies bits `i·w .. (i+1)·w` of the payload, counting from the
//! least significant bit of the first byte.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use crate::tm::{Construction, TmSequence};
use crate::words::{ModAlphabet, Symbol};
use crate::{Error, Result};

pub const MAGIC: [u8; 4] = *b"TMCF";
pub const VERSION: u16 = 1;
const HEADER_LEN: usize = 20;

/// Bits needed for the symbols `0..m`.
pub fn symbol_width(m: u32) -> u8 {
    (32 - (m - 1).leading_zeros()).max(1) as u8
}

pub fn write_prefix<W: Write>(mut out: W, m: u32, symbols: &[Symbol]) -> Result<()> {
    let alphabet = ModAlphabet::new(m)?;
    alphabet.check_all(symbols)?;
    let width = symbol_width(m);
    let mut header = [0u8; HEADER_LEN];
    header[0..4].copy_from_slice(&MAGIC);
    header[4..6].copy_from_slice(&VERSION.to_le_bytes());
    header[6] = width;
    header[8..12].copy_from_slice(&m.to_le_bytes());
    header[12..20].copy_from_slice(&(symbols.len() as u64).to_le_bytes());
    out.write_all(&header)?;

    let mut packed = Vec::with_capacity(packed_len(symbols.len() as u64, width)?);
    let (mut acc, mut bits) = (0u64, 0u32);
    for &s in symbols {
        acc |= u64::from(s) << bits;
        bits += u32::from(width);
        while bits >= 8 {
            packed.push(acc as u8);
            acc >>= 8;
            bits -= 8;
        }
    }
    if bits > 0 {
        packed.push(acc as u8);
    }
    out.write_all(&packed)?;
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoredPrefix {
    pub m: u32,
    pub symbols: Vec<Symbol>,
}

pub fn read_prefix<R: Read>(mut input: R) -> Result<StoredPrefix> {
    let mut header = [0u8; HEADER_LEN];
    input.read_exact(&mut header).map_err(truncated)?;
    if header[0..4] != MAGIC {
        return Err(Error::Store("bad magic".into()));
    }
    let version = u16::from_le_bytes([header[4], header[5]]);
    if version != VERSION {
        return Err(Error::Store(format!("unsupported version {version}")));
    }
    let width = header[6];
    let m = u32::from_le_bytes(header[8..12].try_into().unwrap());
    let len = u64::from_le_bytes(header[12..20].try_into().unwrap());
    let alphabet = ModAlphabet::new(m).map_err(|_| Error::Store(format!("bad modulus {m}")))?;
    if width != symbol_width(m) {
        return Err(Error::Store(format!("width {width} does not match modulus {m}")));
    }

    let mut packed = vec![0u8; packed_len(len, width)?];
    input.read_exact(&mut packed).map_err(truncated)?;
    let mut symbols = Vec::with_capacity(len as usize);
    let mask = (1u64 << width) - 1;
    let (mut acc, mut bits) = (0u64, 0u32);
    let mut bytes = packed.iter();
    for _ in 0..len {
        while bits < u32::from(width) {
            acc |= u64::from(*bytes.next().expect("length checked")) << bits;
            bits += 8;
        }
        let s = (acc & mask) as Symbol;
        if !alphabet.contains(s) {
            return Err(Error::Store(format!("symbol {s} outside modulus {m}")));
        }
        symbols.push(s);
        acc >>= width;
        bits -= u32::from(width);
    }
    Ok(StoredPrefix { m, symbols })
}

fn packed_len(len: u64, width: u8) -> Result<usize> {
    len.checked_mul(u64::from(width))
        .map(|b| b.div_ceil(8))
        .and_then(|b| usize::try_from(b).ok())
        .ok_or(Error::Overflow("the packed prefix size"))
}

fn truncated(e: io::Error) -> Error {
    if e.kind() == io::ErrorKind::UnexpectedEof {
        Error::Store("file is truncated".into())
    } else {
        Error::Io(e)
    }
}

/// A directory of cached `TM_m` prefixes, one file per modulus and
/// construction.
#[derive(Clone, Debug)]
pub struct PrefixCache {
    dir: PathBuf,
}

impl PrefixCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self { dir: dir.into() }
    }

    pub fn path_for(&self, m: u32, construction: Construction) -> PathBuf {
        let tag = match construction {
            Construction::DigitSum => "digit-sum",
            Construction::Morphic => "morphic",
        };
        self.dir.join(format!("tm{m}-{tag}.bin"))
    }

    /// The first `len` terms, read from the cache when it holds at least that
    /// many and regenerated (and written back) otherwise. Unreadable cache
    /// files are replaced.
    pub fn prefix(&self, seq: &TmSequence, len: usize) -> Result<Vec<Symbol>> {
        let path = self.path_for(seq.modulus(), seq.construction());
        if let Some(stored) = Self::load(&path)? {
            if stored.m == seq.modulus() && stored.symbols.len() >= len {
                let mut symbols = stored.symbols;
                symbols.truncate(len);
                return Ok(symbols);
            }
        }
        let symbols = seq.prefix(len).into_symbols();
        fs::create_dir_all(&self.dir)?;
        let tmp = path.with_extension("bin.tmp");
        write_prefix(io::BufWriter::new(fs::File::create(&tmp)?), seq.modulus(), &symbols)?;
        fs::rename(&tmp, &path)?;
        Ok(symbols)
    }

    fn load(path: &Path) -> Result<Option<StoredPrefix>> {
        match fs::File::open(path) {
            Ok(f) => match read_prefix(io::BufReader::new(f)) {
                Ok(p) => Ok(Some(p)),
                Err(Error::Store(_)) => Ok(None),
                Err(e) => Err(e),
            },
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e.into()),
        }
    }
}
