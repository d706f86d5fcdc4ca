//! The (n, L) accuracy grid over a corpus, and the benchmark-vs-treatment
//! comparison of two grids.
//!
//! Each cell profiles every author and every test file at one (n, L)
//! combination, attributes each test file, and records the fraction
//! attributed to the true author. A tied attribution counts as incorrect
//! even when the true author is among the tied set. Grid comparisons work
//! on exact rational accuracies (correct/total), so "same" never comes from
//! display rounding.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::classifier::{attribute, Attribution, AuthorProfile, TestProfile};
use crate::corpus::{concat_training, validate_corpus, Corpus, Role};
use crate::error::{Error, Result};
use crate::ngram::{extract_ngrams, NGram, SimplifiedProfile};
use crate::stats::{descriptive, Descriptive};

/// Default n-gram lengths: 3..=10.
pub fn default_n_values() -> Vec<usize> {
    (3..=10).collect()
}

/// Default profile lengths: 2000..=8000 in steps of 1000.
pub fn default_l_values() -> Vec<usize> {
    (2000..=8000).step_by(1000).collect()
}

/// Result of one (n, L) cell.
#[derive(Debug, Clone)]
pub struct GridCell {
    pub n: usize,
    pub l: usize,
    /// Test files attributed to their true author without a tie.
    pub correct: usize,
    /// Number of test files.
    pub total: usize,
    pub attributions: Vec<Attribution>,
}

impl GridCell {
    pub fn accuracy(&self) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            self.correct as f64 / self.total as f64
        }
    }
}

/// Accuracy results over the full parameter grid.
#[derive(Debug, Clone)]
pub struct AccuracyGrid {
    pub n_values: Vec<usize>,
    pub l_values: Vec<usize>,
    pub cells: BTreeMap<(usize, usize), GridCell>,
}

impl AccuracyGrid {
    /// Cell accuracies in percent, iterated in ascending (n, L) order.
    pub fn accuracies_percent(&self) -> Vec<f64> {
        self.cells.values().map(|c| c.accuracy() * 100.0).collect()
    }

    pub fn mean_accuracy(&self) -> f64 {
        if self.cells.is_empty() {
            return 0.0;
        }
        self.cells.values().map(|c| c.accuracy()).sum::<f64>() / self.cells.len() as f64
    }

    /// Cells attaining the maximum accuracy, in ascending (n, L) order.
    /// Accuracies are compared as exact rationals.
    pub fn best_cells(&self) -> Vec<&GridCell> {
        let mut best: Vec<&GridCell> = Vec::new();
        for cell in self.cells.values() {
            match best.first() {
                None => best.push(cell),
                Some(top) => {
                    let lhs = cell.correct as u64 * top.total as u64;
                    let rhs = top.correct as u64 * cell.total as u64;
                    if lhs > rhs {
                        best.clear();
                        best.push(cell);
                    } else if lhs == rhs {
                        best.push(cell);
                    }
                }
            }
        }
        best
    }

    /// Writes the grid file: header `n,L,correct,total,accuracy`, one row per
    /// cell in ascending (n, L) order.
    pub fn write_to<W: Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "n,L,correct,total,accuracy")?;
        for cell in self.cells.values() {
            writeln!(
                w,
                "{},{},{},{},{:.6}",
                cell.n,
                cell.l,
                cell.correct,
                cell.total,
                cell.accuracy()
            )?;
        }
        Ok(())
    }

    /// Parses a grid file. The accuracy column is recomputed from the exact
    /// correct/total counts; per-test attributions are not stored in the
    /// file and come back empty.
    pub fn read_from<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines.next().ok_or_else(|| Error::Parse {
            line: 1,
            message: "empty grid file".into(),
        })??;
        if header.trim_end() != "n,L,correct,total,accuracy" {
            return Err(Error::Parse {
                line: 1,
                message: format!("unexpected grid header {header:?}"),
            });
        }
        let mut cells = BTreeMap::new();
        for (idx, line) in lines.enumerate() {
            let line_no = idx + 2;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 5 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected 5 fields, got {}", fields.len()),
                });
            }
            let parse_int = |s: &str, what: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad {what} field {s:?}"),
                })
            };
            let n = parse_int(fields[0], "n")?;
            let l = parse_int(fields[1], "L")?;
            let correct = parse_int(fields[2], "correct")?;
            let total = parse_int(fields[3], "total")?;
            if correct > total {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("correct {correct} exceeds total {total}"),
                });
            }
            let duplicate = cells
                .insert(
                    (n, l),
                    GridCell {
                        n,
                        l,
                        correct,
                        total,
                        attributions: Vec::new(),
                    },
                )
                .is_some();
            if duplicate {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("duplicate cell ({n}, {l})"),
                });
            }
        }
        let mut n_values: Vec<usize> = cells.keys().map(|(n, _)| *n).collect();
        n_values.sort_unstable();
        n_values.dedup();
        let mut l_values: Vec<usize> = cells.keys().map(|(_, l)| *l).collect();
        l_values.sort_unstable();
        l_values.dedup();
        if cells.is_empty() || cells.len() != n_values.len() * l_values.len() {
            return Err(Error::Parse {
                line: 1,
                message: format!(
                    "grid is not rectangular: {} cells for {} n-values x {} L-values",
                    cells.len(),
                    n_values.len(),
                    l_values.len()
                ),
            });
        }
        Ok(AccuracyGrid {
            n_values,
            l_values,
            cells,
        })
    }
}

fn ensure_valid(corpus: &Corpus) -> Result<()> {
    let violations = validate_corpus(corpus, false);
    if violations.is_empty() {
        Ok(())
    } else {
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        Err(Error::Validation(list.join("\n")))
    }
}

type RankedEntries = Vec<(NGram, u64)>;

/// Ranked n-gram entries per author (training concatenation) and per test
/// file, extracted once per n and shared across every L.
struct RankedSources {
    /// (author_id, ranked entries, training byte count)
    authors: Vec<(String, RankedEntries, usize)>,
    /// (test_id, true author, ranked entries)
    tests: Vec<(String, String, RankedEntries)>,
}

fn rank_sources(corpus: &Corpus, n: usize) -> Result<RankedSources> {
    let mut authors = Vec::new();
    for author in corpus.authors() {
        let data = concat_training(corpus, author)?;
        let ranked = extract_ngrams(&data, n)?.ranked_entries();
        authors.push((author.to_string(), ranked, data.len()));
    }
    let mut tests = Vec::new();
    for entry in corpus.entries.iter().filter(|e| e.role == Role::Test) {
        let ranked = extract_ngrams(&entry.bytes, n)?.ranked_entries();
        tests.push((entry.rel_path.clone(), entry.author_id.clone(), ranked));
    }
    Ok(RankedSources { authors, tests })
}

fn cell_from_ranked(sources: &RankedSources, n: usize, l: usize) -> Result<GridCell> {
    let mut candidates = BTreeMap::new();
    for (author_id, ranked, byte_count) in &sources.authors {
        candidates.insert(
            author_id.clone(),
            AuthorProfile {
                author_id: author_id.clone(),
                profile: SimplifiedProfile::from_ranked(n, l, ranked)?,
                source_byte_count: *byte_count,
            },
        );
    }
    let mut attributions = Vec::new();
    let mut correct = 0;
    for (test_id, true_author, ranked) in &sources.tests {
        let test = TestProfile {
            test_id: test_id.clone(),
            profile: SimplifiedProfile::from_ranked(n, l, ranked)?,
        };
        let att = attribute(&test, &candidates)?;
        if !att.tie && att.chosen_author == *true_author {
            correct += 1;
        }
        attributions.push(att);
    }
    Ok(GridCell {
        n,
        l,
        correct,
        total: sources.tests.len(),
        attributions,
    })
}

/// Runs a single (n, L) cell: profiles every author and test file, attributes
/// each test file, and tallies correctness against the manifest labels.
/// Refuses corpora with validation violations.
pub fn run_cell(corpus: &Corpus, n: usize, l: usize) -> Result<GridCell> {
    ensure_valid(corpus)?;
    let sources = rank_sources(corpus, n)?;
    cell_from_ranked(&sources, n, l)
}

/// Runs the full grid. Extraction and ranking happen once per n and are
/// shared across all L values (each profile is a prefix of the full
/// ranking), which is exactly equivalent to running each cell in isolation.
pub fn run_grid(corpus: &Corpus, n_values: &[usize], l_values: &[usize]) -> Result<AccuracyGrid> {
    if n_values.is_empty() || l_values.is_empty() {
        return Err(Error::Parameter("empty n or L range".into()));
    }
    for values in [n_values, l_values] {
        let mut sorted = values.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != values.len() {
            return Err(Error::Parameter(
                "duplicate values in parameter range".into(),
            ));
        }
    }
    ensure_valid(corpus)?;
    let mut cells = BTreeMap::new();
    for &n in n_values {
        let sources = rank_sources(corpus, n)?;
        for &l in l_values {
            cells.insert((n, l), cell_from_ranked(&sources, n, l)?);
        }
    }
    let mut n_sorted = n_values.to_vec();
    n_sorted.sort_unstable();
    let mut l_sorted = l_values.to_vec();
    l_sorted.sort_unstable();
    Ok(AccuracyGrid {
        n_values: n_sorted,
        l_values: l_sorted,
        cells,
    })
}

/// Cell-by-cell comparison of a treatment grid against its benchmark.
#[derive(Debug, Clone)]
pub struct ComparisonSummary {
    /// Cells where the treatment is less accurate than the benchmark.
    pub worse: usize,
    /// Cells where the treatment is more accurate.
    pub better: usize,
    /// Cells with exactly equal accuracy (compared as rationals).
    pub same: usize,
    pub benchmark_stats: Descriptive,
    pub treatment_stats: Descriptive,
    /// benchmark minus treatment accuracy per cell, in percentage points,
    /// in ascending (n, L) order.
    pub paired_diffs: Vec<f64>,
}

/// Compares two grids over identical (n, L) ranges. Equality of cell
/// accuracies is decided by exact cross-multiplication of the correct/total
/// rationals.
pub fn compare_grids(
    benchmark: &AccuracyGrid,
    treatment: &AccuracyGrid,
) -> Result<ComparisonSummary> {
    if benchmark.n_values != treatment.n_values || benchmark.l_values != treatment.l_values {
        return Err(Error::Parameter(
            "grids cover different (n, L) ranges".into(),
        ));
    }
    let mut worse = 0;
    let mut better = 0;
    let mut same = 0;
    let mut paired_diffs = Vec::with_capacity(benchmark.cells.len());
    for (key, bench_cell) in &benchmark.cells {
        let treat_cell = treatment
            .cells
            .get(key)
            .ok_or_else(|| Error::Parameter(format!("treatment grid missing cell {key:?}")))?;
        let bench_cross = bench_cell.correct as u64 * treat_cell.total as u64;
        let treat_cross = treat_cell.correct as u64 * bench_cell.total as u64;
        if treat_cross < bench_cross {
            worse += 1;
        } else if treat_cross > bench_cross {
            better += 1;
        } else {
            same += 1;
        }
        paired_diffs.push((bench_cell.accuracy() - treat_cell.accuracy()) * 100.0);
    }
    Ok(ComparisonSummary {
        worse,
        better,
        same,
        benchmark_stats: descriptive(&benchmark.accuracies_percent())?,
        treatment_stats: descriptive(&treatment.accuracies_percent())?,
        paired_diffs,
    })
}
