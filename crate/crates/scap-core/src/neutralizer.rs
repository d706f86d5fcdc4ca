//! Identifier disguising: replace targeted identifier categories with
//! corpus-unique names of the form `a{k}b{k}`.
//!
//! Replacements are injective across the whole corpus: the same name
//! declared in two files maps to two different replacements, which is what
//! erases cross-file n-gram overlap from shared vocabulary. Within one file
//! a name maps to exactly one replacement, applied to every identifier token
//! matching it (declarations and uses alike); string literals, comments, and
//! everything else stay byte-identical.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::java::identifiers::{IdentifierCategory, IdentifierTable, Name};
use crate::java::lexer::{lex, TokenKind};

/// A disguised name `a{k}b{k}`, e.g. `a15b15`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplacementName {
    k: u64,
    text: String,
}

impl ReplacementName {
    fn new(k: u64) -> Self {
        ReplacementName {
            k,
            text: format!("a{k}b{k}"),
        }
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// True for strings shaped `a<digits>b<digits>` with both digit runs
    /// equal and non-empty.
    pub fn matches_pattern(s: &[u8]) -> bool {
        let Some(rest) = s.strip_prefix(b"a") else {
            return false;
        };
        let Some(b_at) = rest.iter().position(|&b| b == b'b') else {
            return false;
        };
        let (first, second) = (&rest[..b_at], &rest[b_at + 1..]);
        !first.is_empty() && first == second && first.iter().all(|b| b.is_ascii_digit())
    }
}

/// Returns the replacement for the smallest `k >= counter` whose text is not
/// forbidden, together with the counter to use next.
pub fn next_replacement(counter: u64, forbidden: &BTreeSet<Name>) -> (ReplacementName, u64) {
    let mut k = counter.max(1);
    loop {
        let candidate = ReplacementName::new(k);
        if !forbidden.contains(candidate.text.as_bytes()) {
            return (candidate, k + 1);
        }
        k += 1;
    }
}

/// A corpus-wide renaming: for each file, which declared names get which
/// unique replacement.
#[derive(Debug, Clone, Default)]
pub struct NeutralizationPlan {
    pub target: BTreeSet<IdentifierCategory>,
    pub per_file: BTreeMap<String, BTreeMap<Name, ReplacementName>>,
    pub counter_start: u64,
}

impl NeutralizationPlan {
    /// Total number of (file, name) replacement pairs.
    pub fn len(&self) -> usize {
        self.per_file.values().map(|m| m.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.per_file.values().all(|m| m.is_empty())
    }

    /// Export lines `<file>\t<original>\t<replacement>`, sorted by file then
    /// original name.
    pub fn write_to<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        for (file, renames) in &self.per_file {
            for (original, replacement) in renames {
                w.write_all(file.as_bytes())?;
                w.write_all(b"\t")?;
                w.write_all(original)?;
                w.write_all(b"\t")?;
                w.write_all(replacement.text.as_bytes())?;
                w.write_all(b"\n")?;
            }
        }
        Ok(())
    }

    /// Parses the export format back. The target category set is not stored
    /// in the file and is left empty.
    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut plan = NeutralizationPlan {
            counter_start: 1,
            ..Default::default()
        };
        for (idx, line) in r.lines().enumerate() {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected 3 tab-separated fields, got {}", fields.len()),
                });
            }
            let k = parse_replacement(fields[2]).ok_or_else(|| Error::Parse {
                line: idx + 1,
                message: format!("bad replacement name {:?}", fields[2]),
            })?;
            plan.per_file
                .entry(fields[0].to_string())
                .or_default()
                .insert(fields[1].as_bytes().to_vec(), ReplacementName::new(k));
        }
        Ok(plan)
    }
}

fn parse_replacement(s: &str) -> Option<u64> {
    if !ReplacementName::matches_pattern(s.as_bytes()) {
        return None;
    }
    s[1..].split('b').next()?.parse().ok()
}

/// Builds the corpus-wide plan: a name is renamed in a file iff its declared
/// category set there intersects `target`. Counters are assigned
/// deterministically in ascending (file, name) order, skipping any `a{k}b{k}`
/// text that already occurs anywhere in the corpus.
pub fn plan_neutralization(
    tables: &BTreeMap<String, IdentifierTable>,
    target: &BTreeSet<IdentifierCategory>,
) -> NeutralizationPlan {
    let mut forbidden: BTreeSet<Name> = BTreeSet::new();
    for table in tables.values() {
        forbidden.extend(table.occurring.iter().cloned());
    }
    let counter_start = 1;
    let mut counter = counter_start;
    let mut per_file = BTreeMap::new();
    for (file_id, table) in tables {
        let mut renames = BTreeMap::new();
        for (name, info) in &table.names {
            if info.categories.iter().any(|c| target.contains(c)) {
                let (replacement, next) = next_replacement(counter, &forbidden);
                counter = next;
                renames.insert(name.clone(), replacement);
            }
        }
        per_file.insert(file_id.clone(), renames);
    }
    NeutralizationPlan {
        target: target.clone(),
        per_file,
        counter_start,
    }
}

/// Result of applying a file plan to one source.
#[derive(Debug, Clone)]
pub struct NeutralizedFile {
    pub bytes: Vec<u8>,
    /// Planned names that never occurred as an identifier token in the file;
    /// reported as warnings, not failures.
    pub missing: Vec<Name>,
}

/// Rewrites every identifier token whose text is a planned name. All other
/// tokens (literals, comments, keywords, punctuation, whitespace) are
/// copied byte-for-byte.
pub fn apply_neutralization(
    source: &[u8],
    file_plan: &BTreeMap<Name, ReplacementName>,
) -> Result<NeutralizedFile> {
    let tokens = lex(source)?;
    let mut bytes = Vec::with_capacity(source.len());
    let mut seen: BTreeSet<&Name> = BTreeSet::new();
    for token in &tokens {
        if token.kind == TokenKind::Identifier {
            if let Some((name, replacement)) = file_plan.get_key_value(token.text) {
                seen.insert(name);
                bytes.extend_from_slice(replacement.text.as_bytes());
                continue;
            }
        }
        bytes.extend_from_slice(token.text);
    }
    let missing = file_plan
        .keys()
        .filter(|name| !seen.contains(name))
        .cloned()
        .collect();
    Ok(NeutralizedFile { bytes, missing })
}
