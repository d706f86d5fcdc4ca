//! Author profile construction and test-file attribution.
//!
//! An author's profile is built from the concatenation of their training
//! files; a test file keeps its own profile. The test file is attributed to
//! the candidate author whose profile shares the most n-grams with it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::ngram::{extract_ngrams, rank_and_truncate, spi, SimplifiedProfile};

/// Byte inserted between consecutive training files before extraction, so
/// that the tail of one file and the head of the next never fuse into a
/// spurious n-gram run.
pub const FILE_SEPARATOR: u8 = 0x0A;

/// Profile of one known author, built from concatenated training files.
#[derive(Debug, Clone)]
pub struct AuthorProfile {
    pub author_id: String,
    pub profile: SimplifiedProfile,
    /// Length in bytes of the concatenated training data, separators included.
    pub source_byte_count: usize,
}

/// Profile of one test file, tagged with its identifier.
#[derive(Debug, Clone)]
pub struct TestProfile {
    pub test_id: String,
    pub profile: SimplifiedProfile,
}

/// Outcome of attributing one test file against a candidate set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribution {
    pub test_id: String,
    /// Author attaining the maximum score; on ties, the lexicographically
    /// least tied author id.
    pub chosen_author: String,
    pub scores: BTreeMap<String, usize>,
    /// True iff two or more authors attain the maximum score.
    pub tie: bool,
}

impl Attribution {
    /// One-line record: `<test_id>\t<chosen_author>\t<tie 0|1>\t<author:score,...>`
    /// with authors in ascending id order.
    pub fn to_record(&self) -> String {
        let mut scores = String::new();
        for (i, (author, score)) in self.scores.iter().enumerate() {
            if i > 0 {
                scores.push(',');
            }
            let _ = write!(scores, "{author}:{score}");
        }
        format!(
            "{}\t{}\t{}\t{}",
            self.test_id,
            self.chosen_author,
            if self.tie { 1 } else { 0 },
            scores
        )
    }
}

/// Concatenates `files` with a single separator byte between consecutive
/// files and profiles the result.
pub fn build_author_profile<B: AsRef<[u8]>>(
    author_id: &str,
    training_files: &[B],
    n: usize,
    l: usize,
) -> Result<AuthorProfile> {
    if author_id.is_empty() {
        return Err(Error::Parameter("author_id must be non-empty".into()));
    }
    if training_files.is_empty() {
        return Err(Error::Corpus(format!(
            "author {author_id:?} has no training files"
        )));
    }
    let data = concat_with_separator(training_files);
    let profile = rank_and_truncate(&extract_ngrams(&data, n)?, l)?;
    Ok(AuthorProfile {
        author_id: author_id.to_string(),
        profile,
        source_byte_count: data.len(),
    })
}

/// Profiles a single test file through the same extract-and-rank pipeline.
pub fn build_test_profile(test_id: &str, file: &[u8], n: usize, l: usize) -> Result<TestProfile> {
    let profile = rank_and_truncate(&extract_ngrams(file, n)?, l)?;
    Ok(TestProfile {
        test_id: test_id.to_string(),
        profile,
    })
}

/// Joins byte sequences with one [`FILE_SEPARATOR`] between consecutive items.
pub fn concat_with_separator<B: AsRef<[u8]>>(files: &[B]) -> Vec<u8> {
    let total: usize =
        files.iter().map(|f| f.as_ref().len()).sum::<usize>() + files.len().saturating_sub(1);
    let mut data = Vec::with_capacity(total);
    for (i, file) in files.iter().enumerate() {
        if i > 0 {
            data.push(FILE_SEPARATOR);
        }
        data.extend_from_slice(file.as_ref());
    }
    data
}

/// Scores the test profile against every candidate and picks the argmax.
pub fn attribute(
    test: &TestProfile,
    candidates: &BTreeMap<String, AuthorProfile>,
) -> Result<Attribution> {
    if candidates.is_empty() {
        return Err(Error::Parameter("no candidate authors".into()));
    }
    let mut scores = BTreeMap::new();
    for (author_id, candidate) in candidates {
        scores.insert(author_id.clone(), spi(&test.profile, &candidate.profile)?);
    }
    let max = *scores.values().max().expect("non-empty scores");
    let mut tied = scores.iter().filter(|(_, &s)| s == max).map(|(a, _)| a);
    let chosen_author = tied.next().expect("max attained").clone(); // least id first
    let tie = tied.next().is_some();
    Ok(Attribution {
        test_id: test.test_id.clone(),
        chosen_author,
        scores,
        tie,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn candidates(
        entries: &[(&str, &[u8])],
        n: usize,
        l: usize,
    ) -> BTreeMap<String, AuthorProfile> {
        entries
            .iter()
            .map(|(id, data)| {
                (
                    id.to_string(),
                    build_author_profile(id, &[data], n, l).unwrap(),
                )
            })
            .collect()
    }

    #[test]
    fn single_file_author_profile() {
        let profile = build_author_profile("a", &[b"aaaa"], 2, 10).unwrap();
        assert_eq!(profile.profile.len(), 1);
        assert_eq!(profile.profile.entries()[0].1, 3);
        assert_eq!(profile.source_byte_count, 4);
    }

    #[test]
    fn concatenation_inserts_single_separator() {
        let profile = build_author_profile("a", &[b"ab".as_ref(), b"cd".as_ref()], 2, 10).unwrap();
        assert_eq!(profile.source_byte_count, 5);
        let table = extract_ngrams(b"ab\ncd", 2).unwrap();
        let expected = rank_and_truncate(&table, 10).unwrap();
        assert_eq!(profile.profile, expected);
        // hand-computed windows over "ab\ncd": ab, b\n, \nc, cd
        for gram in [b"ab".as_ref(), b"b\n", b"\nc", b"cd"] {
            assert!(profile.profile.contains(&crate::ngram::NGram::new(gram)));
        }
    }

    #[test]
    fn permuting_files_changes_only_boundary_ngrams() {
        let forward = concat_with_separator(&[b"abc".as_ref(), b"def".as_ref()]);
        let backward = concat_with_separator(&[b"def".as_ref(), b"abc".as_ref()]);
        let tf = extract_ngrams(&forward, 2).unwrap();
        let tb = extract_ngrams(&backward, 2).unwrap();
        assert_eq!(tf.total(), tb.total());
        // non-boundary bigrams keep their counts under permutation
        for inner in [b"ab".as_ref(), b"bc", b"de", b"ef"] {
            let gram = crate::ngram::NGram::new(inner);
            assert_eq!(tf.get(&gram), tb.get(&gram));
        }
    }

    #[test]
    fn empty_training_set_is_a_corpus_error() {
        let files: [&[u8]; 0] = [];
        assert!(matches!(
            build_author_profile("a", &files, 2, 10),
            Err(Error::Corpus(_))
        ));
    }

    #[test]
    fn test_profile_of_paper_example() {
        let test = build_test_profile("t1", b"The first", 3, 7).unwrap();
        assert_eq!(test.profile.len(), 7);
        for tri in ["The", "he ", "e f", " fi", "fir", "irs", "rst"] {
            assert!(test
                .profile
                .contains(&crate::ngram::NGram::new(tri.as_bytes())));
        }
    }

    #[test]
    fn empty_test_file_yields_empty_profile() {
        let test = build_test_profile("t2", b"", 3, 100).unwrap();
        assert!(test.profile.is_empty());
    }

    #[test]
    fn truncation_to_one() {
        let test = build_test_profile("t3", b"aaaa", 2, 1).unwrap();
        assert_eq!(test.profile.len(), 1);
        assert_eq!(test.profile.entries()[0].1, 3);
    }

    #[test]
    fn self_attribution_wins() {
        let cands = candidates(&[("alice", b"xyzzy plugh"), ("bob", b"qqqq")], 2, 50);
        let test = build_test_profile("t", b"xyzzy plugh", 2, 50).unwrap();
        let att = attribute(&test, &cands).unwrap();
        assert_eq!(att.chosen_author, "alice");
        assert_eq!(att.scores["alice"], test.profile.len());
        assert!(!att.tie);
    }

    #[test]
    fn clear_margin_has_no_tie() {
        let cands = candidates(&[("a", b"abcdef"), ("b", b"abzzzz")], 2, 50);
        let test = build_test_profile("t", b"abcdef", 2, 50).unwrap();
        let att = attribute(&test, &cands).unwrap();
        assert_eq!(att.chosen_author, "a");
        assert!(att.scores["a"] > att.scores["b"]);
        assert!(!att.tie);
    }

    #[test]
    fn tie_picks_least_author_and_flags() {
        let cands = candidates(&[("zeta", b"abcd"), ("beta", b"abcd")], 2, 50);
        let test = build_test_profile("t", b"abcd", 2, 50).unwrap();
        let att = attribute(&test, &cands).unwrap();
        assert!(att.tie);
        assert_eq!(att.chosen_author, "beta");
    }

    #[test]
    fn empty_candidates_rejected() {
        let test = build_test_profile("t", b"abcd", 2, 50).unwrap();
        assert!(matches!(
            attribute(&test, &BTreeMap::new()),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn mixed_n_rejected() {
        let mut cands = candidates(&[("a", b"abcd")], 2, 50);
        cands.insert(
            "b".into(),
            build_author_profile("b", &[b"abcd"], 3, 50).unwrap(),
        );
        let test = build_test_profile("t", b"abcd", 2, 50).unwrap();
        assert!(matches!(attribute(&test, &cands), Err(Error::Parameter(_))));
    }

    #[test]
    fn record_format() {
        let cands = candidates(&[("a", b"abcd"), ("b", b"zzzz")], 2, 50);
        let test = build_test_profile("t9", b"abcd", 2, 50).unwrap();
        let att = attribute(&test, &cands).unwrap();
        assert_eq!(att.to_record(), "t9\ta\t0\ta:3,b:0");
    }

    #[test]
    fn bijective_renaming_selects_the_same_profile() {
        let cands = candidates(&[("a", b"xyzzy xyzzy"), ("b", b"qq qq qq")], 2, 50);
        let test = build_test_profile("t", b"xyzzy", 2, 50).unwrap();
        let att = attribute(&test, &cands).unwrap();
        assert!(!att.tie);

        // rename a -> zz, b -> yy (reverses lexicographic order)
        let renamed: BTreeMap<String, AuthorProfile> = cands
            .iter()
            .map(|(id, profile)| {
                let new_id = if id == "a" { "zz" } else { "yy" };
                let mut profile = profile.clone();
                profile.author_id = new_id.to_string();
                (new_id.to_string(), profile)
            })
            .collect();
        let att2 = attribute(&test, &renamed).unwrap();
        assert_eq!(att2.chosen_author, "zz", "same underlying profile wins");
        assert_eq!(att.scores["a"], att2.scores["zz"]);
        assert_eq!(att.scores["b"], att2.scores["yy"]);
    }

    fn arb_corpus() -> impl Strategy<Value = (Vec<Vec<u8>>, Vec<u8>)> {
        // small alphabet to force shared n-grams between authors
        let file = proptest::collection::vec(proptest::sample::select(b"abcx ".to_vec()), 1..200);
        (proptest::collection::vec(file.clone(), 1..4), file)
    }

    proptest! {
        #[test]
        fn attribution_matches_brute_force((authors, test_data) in arb_corpus(), n in 1usize..=4, l in 1usize..=30) {
            let cands: BTreeMap<String, AuthorProfile> = authors
                .iter()
                .enumerate()
                .map(|(i, data)| {
                    let id = format!("author{i}");
                    (id.clone(), build_author_profile(&id, &[data], n, l).unwrap())
                })
                .collect();
            let test = build_test_profile("t", &test_data, n, l).unwrap();
            let att = attribute(&test, &cands).unwrap();

            // exhaustive-comparison oracle: nested-loop set intersection,
            // first maximum in ascending author order wins
            let mut best: Option<(&String, usize)> = None;
            let mut best_count = 0;
            for (id, cand) in &cands {
                let mut inter = 0;
                for (g, _) in test.profile.entries() {
                    for (h, _) in cand.profile.entries() {
                        if g == h {
                            inter += 1;
                        }
                    }
                }
                prop_assert_eq!(att.scores[id], inter);
                match best {
                    Some((_, s)) if s >= inter => {
                        if s == inter {
                            best_count += 1;
                        }
                    }
                    _ => {
                        best = Some((id, inter));
                        best_count = 1;
                    }
                }
            }
            let (expect_author, expect_score) = best.unwrap();
            prop_assert_eq!(&att.chosen_author, expect_author);
            prop_assert_eq!(att.scores[&att.chosen_author], expect_score);
            prop_assert_eq!(att.tie, best_count > 1);
            let max = att.scores.values().copied().max().unwrap();
            prop_assert_eq!(att.scores[&att.chosen_author], max);
        }
    }
}
