//! Byte-level n-gram extraction, frequency-ranked profiles, and the profile
//! intersection similarity.
//!
//! N-grams are raw byte windows: no decoding, no normalization, whitespace
//! and non-printing bytes included. A profile is the list of the most
//! frequent n-grams of a source, truncated to length `L`; similarity between
//! two profiles is the number of n-grams they share, ignoring counts.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io::{self, BufRead, Write};

use crate::error::{Error, Result};

/// Largest supported n-gram length in bytes.
pub const MAX_N: usize = 16;

/// A contiguous byte window of length 1..=16.
///
/// Stored inline and zero-padded so it is `Copy` and cheap to hash.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct NGram {
    len: u8,
    bytes: [u8; MAX_N],
}

impl NGram {
    /// Builds an n-gram from a window. Panics if the window is empty or
    /// longer than [`MAX_N`]; callers validate `n` before slicing windows.
    pub fn new(window: &[u8]) -> Self {
        assert!(
            !window.is_empty() && window.len() <= MAX_N,
            "n-gram window length {} out of range 1..={}",
            window.len(),
            MAX_N
        );
        let mut bytes = [0u8; MAX_N];
        bytes[..window.len()].copy_from_slice(window);
        NGram {
            len: window.len() as u8,
            bytes,
        }
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes[..self.len as usize]
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false // length is always >= 1
    }
}

impl Ord for NGram {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.as_bytes().cmp(other.as_bytes())
    }
}

impl PartialOrd for NGram {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for NGram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NGram({:?})", String::from_utf8_lossy(self.as_bytes()))
    }
}

/// Occurrence counts of every distinct n-gram in one source.
#[derive(Debug, Clone)]
pub struct FrequencyTable {
    n: usize,
    counts: HashMap<NGram, u64>,
}

impl FrequencyTable {
    /// Builds a table from explicit (n-gram, count) pairs. Counts for
    /// repeated n-grams accumulate.
    pub fn from_counts<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NGram, u64)>,
    {
        validate_n(n)?;
        let mut counts = HashMap::new();
        for (gram, count) in pairs {
            if gram.len() != n {
                return Err(Error::Parameter(format!(
                    "n-gram of length {} in table with n={n}",
                    gram.len()
                )));
            }
            *counts.entry(gram).or_insert(0) += count;
        }
        Ok(FrequencyTable { n, counts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct n-grams.
    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// Sum of all occurrence counts; equals `max(0, len(data) - n + 1)` for
    /// a table extracted from a single source.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn get(&self, gram: &NGram) -> Option<u64> {
        self.counts.get(gram).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NGram, &u64)> {
        self.counts.iter()
    }

    /// All entries in profile order: count descending, then bytes ascending
    /// among equal counts. This is the total order every profile truncation
    /// is a prefix of.
    pub fn ranked_entries(&self) -> Vec<(NGram, u64)> {
        let mut entries: Vec<(NGram, u64)> = self.counts.iter().map(|(g, c)| (*g, *c)).collect();
        entries.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        entries
    }
}

/// Extracts all contiguous n-byte windows of `data` with multiplicities.
///
/// Shorter-than-n inputs yield an empty table.
pub fn extract_ngrams(data: &[u8], n: usize) -> Result<FrequencyTable> {
    validate_n(n)?;
    let mut counts = HashMap::new();
    if data.len() >= n {
        for window in data.windows(n) {
            *counts.entry(NGram::new(window)).or_insert(0u64) += 1;
        }
    }
    Ok(FrequencyTable { n, counts })
}

fn validate_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::Parameter(format!(
            "n-gram length {n} out of range 1..={MAX_N}"
        )));
    }
    Ok(())
}

/// A frequency-ranked, truncated n-gram profile.
///
/// Entries are ordered by count descending, ties broken by ascending byte
/// order, so two profiles built from the same counts are identical no matter
/// how the counts were accumulated. When a source has fewer distinct n-grams
/// than the cutoff the whole ranking is kept and `len()` reports the actual
/// length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplifiedProfile {
    n: usize,
    cutoff: usize,
    entries: Vec<(NGram, u64)>,
}

impl SimplifiedProfile {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The requested truncation length L.
    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    /// Actual number of entries, `min(L, distinct n-grams)`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(NGram, u64)] {
        &self.entries
    }

    pub fn contains(&self, gram: &NGram) -> bool {
        self.entries.iter().any(|(g, _)| g == gram)
    }

    /// Profile holding the first `min(L, len)` entries of an already ranked
    /// entry list (see [`FrequencyTable::ranked_entries`]).
    pub fn from_ranked(n: usize, cutoff: usize, ranked: &[(NGram, u64)]) -> Result<Self> {
        validate_n(n)?;
        if cutoff == 0 {
            return Err(Error::Parameter("profile length L must be >= 1".into()));
        }
        let take = cutoff.min(ranked.len());
        Ok(SimplifiedProfile {
            n,
            cutoff,
            entries: ranked[..take].to_vec(),
        })
    }

    /// Serializes the profile in the text format:
    ///
    /// ```text
    /// scap-profile v1 n=<n> L=<L> len=<entries>
    /// <rank>\t<count>\t<hex-encoded n-gram bytes>
    /// ```
    ///
    /// N-grams are hex encoded because they may contain newlines, tabs, and
    /// arbitrary bytes.
    pub fn write_to<W: Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(
            w,
            "scap-profile v1 n={} L={} len={}",
            self.n,
            self.cutoff,
            self.entries.len()
        )?;
        for (rank, (gram, count)) in self.entries.iter().enumerate() {
            writeln!(
                w,
                "{}\t{}\t{}",
                rank + 1,
                count,
                hex_encode(gram.as_bytes())
            )?;
        }
        Ok(())
    }

    /// Parses the format produced by [`SimplifiedProfile::write_to`],
    /// re-checking the profile invariants.
    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty profile file"))??;
        let (n, cutoff, len) = parse_header(&header)?;
        validate_n(n)?;
        if cutoff == 0 {
            return Err(parse_err(1, "header L must be >= 1"));
        }
        if len > cutoff {
            return Err(parse_err(1, format!("len={len} exceeds L={cutoff}")));
        }

        let mut entries = Vec::with_capacity(len);
        for (idx, line) in lines.enumerate() {
            let line_no = idx + 2;
            let line = line?;
            let mut fields = line.split('\t');
            let rank: usize = fields
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| parse_err(line_no, "bad rank field"))?;
            let count: u64 = fields
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| parse_err(line_no, "bad count field"))?;
            let bytes = fields
                .next()
                .and_then(hex_decode)
                .ok_or_else(|| parse_err(line_no, "bad hex field"))?;
            if fields.next().is_some() {
                return Err(parse_err(line_no, "too many fields"));
            }
            if rank != idx + 1 {
                return Err(parse_err(
                    line_no,
                    format!("rank {rank}, expected {}", idx + 1),
                ));
            }
            if bytes.len() != n {
                return Err(parse_err(
                    line_no,
                    format!("n-gram is {} bytes, header says n={n}", bytes.len()),
                ));
            }
            if count == 0 {
                return Err(parse_err(line_no, "count must be >= 1"));
            }
            let gram = NGram::new(&bytes);
            if let Some(&(prev, prev_count)) = entries.last() {
                let ordered = count < prev_count || (count == prev_count && gram > prev);
                if !ordered {
                    return Err(parse_err(line_no, "entries out of profile order"));
                }
            }
            entries.push((gram, count));
        }
        if entries.len() != len {
            return Err(parse_err(
                1,
                format!("header says len={len}, found {} entries", entries.len()),
            ));
        }
        Ok(SimplifiedProfile { n, cutoff, entries })
    }
}

/// Ranks a frequency table and keeps the `L` most frequent n-grams.
///
/// Ties at equal count are broken by ascending byte order, so the result is
/// independent of the table's iteration order, and the profile at length L
/// is a prefix of the profile at length L+1.
pub fn rank_and_truncate(table: &FrequencyTable, l: usize) -> Result<SimplifiedProfile> {
    let ranked = table.ranked_entries();
    SimplifiedProfile::from_ranked(table.n(), l, &ranked)
}

/// Simplified Profile Intersection: the number of n-grams present in both
/// profiles. Counts play no role beyond the ranking already baked into the
/// profiles.
pub fn spi(a: &SimplifiedProfile, b: &SimplifiedProfile) -> Result<usize> {
    if a.n() != b.n() {
        return Err(Error::Parameter(format!(
            "profile n mismatch: {} vs {}",
            a.n(),
            b.n()
        )));
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let set: HashSet<&NGram> = small.entries.iter().map(|(g, _)| g).collect();
    Ok(large
        .entries
        .iter()
        .filter(|(g, _)| set.contains(g))
        .count())
}

fn parse_header(header: &str) -> Result<(usize, usize, usize)> {
    let mut parts = header.split(' ');
    if parts.next() != Some("scap-profile") || parts.next() != Some("v1") {
        return Err(parse_err(1, "not a scap-profile v1 header"));
    }
    let mut n = None;
    let mut l = None;
    let mut len = None;
    for part in parts {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| parse_err(1, format!("bad header field {part:?}")))?;
        let value: usize = value
            .parse()
            .map_err(|_| parse_err(1, format!("bad header value {part:?}")))?;
        match key {
            "n" => n = Some(value),
            "L" => l = Some(value),
            "len" => len = Some(value),
            _ => return Err(parse_err(1, format!("unknown header field {key:?}"))),
        }
    }
    match (n, l, len) {
        (Some(n), Some(l), Some(len)) => Ok((n, l, len)),
        _ => Err(parse_err(1, "header missing n=, L= or len=")),
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn hex_encode(bytes: &[u8]) -> String {
    let mut out = String::with_capacity(bytes.len() * 2);
    for b in bytes {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

fn hex_decode(s: &str) -> Option<Vec<u8>> {
    if !s.len().is_multiple_of(2) || s.is_empty() {
        return None;
    }
    (0..s.len())
        .step_by(2)
        .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
        .collect()
}
