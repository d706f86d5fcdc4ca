//! Corpus manifests: authors, projects, train/test roles, and file loading.
//!
//! A corpus is described by a plain tab-separated manifest rather than
//! inferred from directory layout, because train/test splits are curated
//! decisions that deserve an explicit record. One entry per line:
//!
//! ```text
//! <author_id>\t<project_id>\t<train|test>\t<relative path>
//! ```
//!
//! Lines starting with `#` are comments; blank lines are ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Train,
    Test,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Train => "train",
            Role::Test => "test",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub author_id: String,
    pub project_id: String,
    pub role: Role,
    /// Path as written in the manifest, relative to the manifest base dir.
    pub rel_path: String,
    pub path: PathBuf,
    pub bytes: Vec<u8>,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub name: String,
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn authors(&self) -> BTreeSet<&str> {
        self.entries.iter().map(|e| e.author_id.as_str()).collect()
    }

    /// Entries of one author in one role, in manifest order.
    pub fn entries_for(&self, author_id: &str, role: Role) -> Vec<&CorpusEntry> {
        self.entries
            .iter()
            .filter(|e| e.author_id == author_id && e.role == role)
            .collect()
    }

    pub fn test_entries(&self) -> Vec<&CorpusEntry> {
        self.entries
            .iter()
            .filter(|e| e.role == Role::Test)
            .collect()
    }

    /// Renders the manifest text for this corpus (same format `load_manifest`
    /// reads).
    pub fn manifest_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\n",
                e.author_id, e.project_id, e.role, e.rel_path
            ));
        }
        out
    }
}

/// Parses a manifest and loads every referenced file, resolving paths
/// against `base_dir`. Entries keep manifest order. Structural problems
/// (missing roles, duplicates) are left to [`validate_corpus`]; this only
/// fails on malformed lines or unreadable files.
pub fn load_manifest(text: &str, base_dir: &Path) -> Result<Corpus> {
    let mut entries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim_end_matches('\r');
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split('\t').collect();
        if fields.len() != 4 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 4 tab-separated fields, got {}", fields.len()),
            });
        }
        let (author_id, project_id, role, rel_path) = (fields[0], fields[1], fields[2], fields[3]);
        if author_id.is_empty() || project_id.is_empty() || rel_path.is_empty() {
            return Err(Error::Parse {
                line: line_no,
                message: "author, project and path must be non-empty".into(),
            });
        }
        let role = match role {
            "train" => Role::Train,
            "test" => Role::Test,
            other => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("role must be train or test, got {other:?}"),
                });
            }
        };
        let path = base_dir.join(rel_path);
        let bytes = std::fs::read(&path).map_err(|source| Error::Load {
            path: path.clone(),
            source,
        })?;
        entries.push(CorpusEntry {
            author_id: author_id.to_string(),
            project_id: project_id.to_string(),
            role,
            rel_path: rel_path.to_string(),
            path,
            bytes,
        });
    }
    let name = base_dir
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".to_string());
    Ok(Corpus { name, entries })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Fewer than two authors in the corpus.
    TooFewAuthors { count: usize },
    /// An author is missing entries for one role.
    MissingRole { author_id: String, role: Role },
    /// The same path appears in more than one entry.
    DuplicatePath { rel_path: String },
    /// With the domain-independent protocol, an author shares a project
    /// between the training and test sets.
    SharedProject {
        author_id: String,
        project_id: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewAuthors { count } => {
                write!(f, "corpus has {count} author(s); at least 2 required")
            }
            Violation::MissingRole { author_id, role } => {
                write!(f, "author {author_id:?} has no {role} entries")
            }
            Violation::DuplicatePath { rel_path } => {
                write!(f, "path {rel_path:?} appears more than once")
            }
            Violation::SharedProject {
                author_id,
                project_id,
            } => write!(
                f,
                "author {author_id:?} uses project {project_id:?} in both train and test"
            ),
        }
    }
}

/// Checks corpus structure. Returns an empty list iff every author has both
/// roles, no path is duplicated, at least two authors exist, and (when
/// `domain_independent` is set) no author shares a project id between
/// train and test entries.
pub fn validate_corpus(corpus: &Corpus, domain_independent: bool) -> Vec<Violation> {
    let mut violations = Vec::new();

    let authors = corpus.authors();
    if authors.len() < 2 {
        violations.push(Violation::TooFewAuthors {
            count: authors.len(),
        });
    }
    for author in &authors {
        for role in [Role::Train, Role::Test] {
            if corpus.entries_for(author, role).is_empty() {
                violations.push(Violation::MissingRole {
                    author_id: author.to_string(),
                    role,
                });
            }
        }
    }

    let mut seen_paths = BTreeSet::new();
    for entry in &corpus.entries {
        if !seen_paths.insert(entry.rel_path.as_str()) {
            violations.push(Violation::DuplicatePath {
                rel_path: entry.rel_path.clone(),
            });
        }
    }

    if domain_independent {
        let mut projects: BTreeMap<(&str, &str), (bool, bool)> = BTreeMap::new();
        for entry in &corpus.entries {
            let slot = projects
                .entry((entry.author_id.as_str(), entry.project_id.as_str()))
                .or_insert((false, false));
            match entry.role {
                Role::Train => slot.0 = true,
                Role::Test => slot.1 = true,
            }
        }
        for ((author, project), (train, test)) in projects {
            if train && test {
                violations.push(Violation::SharedProject {
                    author_id: author.to_string(),
                    project_id: project.to_string(),
                });
            }
        }
    }

    violations
}

/// Manifest-ordered concatenation of an author's training files with one
/// `0x0A` separator between consecutive files.
pub fn concat_training(corpus: &Corpus, author_id: &str) -> Result<Vec<u8>> {
    if !corpus.authors().contains(author_id) {
        return Err(Error::Parameter(format!("unknown author {author_id:?}")));
    }
    let files: Vec<&[u8]> = corpus
        .entries_for(author_id, Role::Train)
        .iter()
        .map(|e| e.bytes.as_slice())
        .collect();
    if files.is_empty() {
        return Err(Error::Corpus(format!(
            "author {author_id:?} has no training entries"
        )));
    }
    Ok(crate::classifier::concat_with_separator(&files))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn write_corpus(dir: &Path, files: &[(&str, &str)]) {
        for (rel, content) in files {
            let path = dir.join(rel);
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent).unwrap();
            }
            fs::write(path, content).unwrap();
        }
    }

    fn two_author_corpus(dir: &Path) -> Corpus {
        write_corpus(
            dir,
            &[
                ("a1.java", "class A1 {}"),
                ("a2.java", "class A2 {}"),
                ("b1.java", "class B1 {}"),
                ("b2.java", "class B2 {}"),
            ],
        );
        let manifest = "# two authors\n\
                        alice\tp1\ttrain\ta1.java\n\
                        alice\tp2\ttest\ta2.java\n\
                        bob\tp3\ttrain\tb1.java\n\
                        bob\tp4\ttest\tb2.java\n";
        load_manifest(manifest, dir).unwrap()
    }

    #[test]
    fn loads_entries_in_manifest_order() {
        let dir = tempfile::tempdir().unwrap();
        let corpus = two_author_corpus(dir.path());
        assert_eq!(corpus.entries.len(), 4);
        assert_eq!(corpus.authors().len(), 2);
        assert_eq!(corpus.entries[0].rel_path, "a1.java");
        assert_eq!(corpus.entries[0].bytes, b"class A1 {}");
        assert!(validate_corpus(&corpus, true).is_empty());
    }

    #[test]
    fn bad_role_names_the_line() {
        let dir = tempfile::tempdir().unwrap();
        write_corpus(dir.path(), &[("a.java", "x")]);
        let manifest = "# comment\nalice\tp1\tvalidate\ta.java\n";
        match load_manifest(manifest, dir.path()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn short_line_is_a_parse_error() {
        let dir = tempfile::tempdir().unwrap();
        match load_manifest("alice\tp1\ttrain\n", dir.path()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn missing_file_is_a_load_error() {
        let dir = tempfile::tempdir().unwrap();
        match load_manifest("alice\tp1\ttrain\tnope.java\n", dir.path()) {
            Err(Error::Load { path, .. }) => {
                assert!(path.ends_with("nope.java"));
            }
            other => panic!("expected load error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_path_is_a_violation_not_a_load_failure() {
        let dir = tempfile::tempdir().unwrap();
        write_corpus(
            dir.path(),
            &[("a.java", "x"), ("b1.java", "y"), ("b2.java", "z")],
        );
        let manifest = "alice\tp1\ttrain\ta.java\n\
                        alice\tp2\ttest\ta.java\n\
                        bob\tp3\ttrain\tb1.java\n\
                        bob\tp4\ttest\tb2.java\n";
        let corpus = load_manifest(manifest, dir.path()).unwrap();
        let violations = validate_corpus(&corpus, false);
        assert_eq!(
            violations,
            vec![Violation::DuplicatePath {
                rel_path: "a.java".into()
            }]
        );
    }

    #[test]
    fn author_with_single_role_is_flagged() {
        let dir = tempfile::tempdir().unwrap();
        write_corpus(
            dir.path(),
            &[("a.java", "x"), ("b1.java", "y"), ("b2.java", "z")],
        );
        let manifest = "alice\tp1\ttrain\ta.java\n\
                        bob\tp3\ttrain\tb1.java\n\
                        bob\tp4\ttest\tb2.java\n";
        let corpus = load_manifest(manifest, dir.path()).unwrap();
        let violations = validate_corpus(&corpus, false);
        assert_eq!(
            violations,
            vec![Violation::MissingRole {
                author_id: "alice".into(),
                role: Role::Test
            }]
        );
    }

    #[test]
    fn shared_project_only_flagged_under_domain_independent() {
        let dir = tempfile::tempdir().unwrap();
        write_corpus(
            dir.path(),
            &[
                ("a1.java", "w"),
                ("a2.java", "x"),
                ("b1.java", "y"),
                ("b2.java", "z"),
            ],
        );
        let manifest = "alice\tsameproj\ttrain\ta1.java\n\
                        alice\tsameproj\ttest\ta2.java\n\
                        bob\tp3\ttrain\tb1.java\n\
                        bob\tp4\ttest\tb2.java\n";
        let corpus = load_manifest(manifest, dir.path()).unwrap();
        assert!(validate_corpus(&corpus, false).is_empty());
        let violations = validate_corpus(&corpus, true);
        assert_eq!(
            violations,
            vec![Violation::SharedProject {
                author_id: "alice".into(),
                project_id: "sameproj".into()
            }]
        );
    }

    #[test]
    fn os_protocol_shape_validates_clean() {
        // 8 authors, two projects each, disjoint across roles
        let dir = tempfile::tempdir().unwrap();
        let mut manifest = String::new();
        let mut files = Vec::new();
        for a in 0..8 {
            for (i, role) in ["train", "test"].iter().enumerate() {
                let rel = format!("auth{a}_{role}.java");
                files.push((rel.clone(), format!("class X{a}{i} {{}}")));
                manifest.push_str(&format!("auth{a}\tproj{a}_{i}\t{role}\t{rel}\n"));
            }
        }
        for (rel, content) in &files {
            fs::write(dir.path().join(rel), content).unwrap();
        }
        let corpus = load_manifest(&manifest, dir.path()).unwrap();
        assert!(validate_corpus(&corpus, true).is_empty());
        assert_eq!(corpus.authors().len(), 8);
    }

    #[test]
    fn concat_training_orders_and_separates() {
        let dir = tempfile::tempdir().unwrap();
        write_corpus(
            dir.path(),
            &[
                ("f1", "ab"),
                ("f2", "cd"),
                ("f3", "efg"),
                ("t", "zz"),
                ("u1", "q"),
                ("u2", "r"),
            ],
        );
        let manifest = "alice\tp1\ttrain\tf1\n\
                        alice\tp1\ttrain\tf2\n\
                        alice\tp1\ttrain\tf3\n\
                        alice\tp2\ttest\tt\n\
                        bob\tp3\ttrain\tu1\n\
                        bob\tp4\ttest\tu2\n";
        let corpus = load_manifest(manifest, dir.path()).unwrap();
        let joined = concat_training(&corpus, "alice").unwrap();
        assert_eq!(joined, b"ab\ncd\nefg");
        assert_eq!(joined.len(), 2 + 2 + 3 + 2); // sum of lengths + (count - 1)

        let single = concat_training(&corpus, "bob").unwrap();
        assert_eq!(single, b"q");

        assert!(matches!(
            concat_training(&corpus, "carol"),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn manifest_text_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let corpus = two_author_corpus(dir.path());
        let text = corpus.manifest_text();
        let again = load_manifest(&text, dir.path()).unwrap();
        assert_eq!(again.entries.len(), corpus.entries.len());
        for (a, b) in corpus.entries.iter().zip(again.entries.iter()) {
            assert_eq!(a.rel_path, b.rel_path);
            assert_eq!(a.role, b.role);
            assert_eq!(a.bytes, b.bytes);
        }
    }
}
