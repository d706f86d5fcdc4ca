//! Command implementations. Every command is deterministic: identical
//! inputs produce byte-identical outputs and ordering.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use scap_core::corpus::{load_manifest, validate_corpus, Corpus};
use scap_core::error::{Error, Result};
use scap_core::experiment::{compare_grids, run_grid, AccuracyGrid};
use scap_core::java::identifiers::{classify_identifiers, IdentifierCategory, IdentifierTable};
use scap_core::java::lexer::strip_comments;
use scap_core::neutralizer::{apply_neutralization, plan_neutralization};
use scap_core::report::{render_comparison_table, render_significance_table, significance_row};
use scap_core::stats::{paired_t_from_summary, Direction};

fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Load {
        path: path.to_path_buf(),
        source,
    })
}

fn load_corpus(manifest: &Path) -> Result<Corpus> {
    let text = read_to_string(manifest)?;
    let base = manifest.parent().unwrap_or_else(|| Path::new("."));
    load_manifest(&text, base)
}

pub fn corpus_validate(manifest: &Path, domain_independent: bool) -> Result<u8> {
    let corpus = load_corpus(manifest)?;
    let violations = validate_corpus(&corpus, domain_independent);
    if violations.is_empty() {
        println!(
            "ok: {} entries, {} authors",
            corpus.entries.len(),
            corpus.authors().len()
        );
        Ok(0)
    } else {
        for violation in &violations {
            println!("violation: {violation}");
        }
        Ok(1)
    }
}

fn parse_target(category: &str) -> Result<BTreeSet<IdentifierCategory>> {
    if category.eq_ignore_ascii_case("all") {
        return Ok(IdentifierCategory::ALL.into_iter().collect());
    }
    IdentifierCategory::parse(category)
        .map(|c| [c].into())
        .ok_or_else(|| {
            Error::Parameter(format!(
                "unknown category {category:?}; expected simple, class, method or all"
            ))
        })
}

pub fn prepare(manifest: &Path, out: &Path, strip: bool, neutralize: Option<&str>) -> Result<u8> {
    let target = neutralize.map(parse_target).transpose()?;
    let corpus = load_corpus(manifest)?;
    let violations = validate_corpus(&corpus, false);
    if !violations.is_empty() {
        for violation in &violations {
            eprintln!("violation: {violation}");
        }
        return Ok(1);
    }

    // transform in memory first; write nothing if any file fails to lex
    let mut transformed: BTreeMap<String, Vec<u8>> = BTreeMap::new();
    let mut failures = Vec::new();
    for entry in &corpus.entries {
        let bytes = if strip {
            match strip_comments(&entry.bytes) {
                Ok(bytes) => bytes,
                Err(error) => {
                    failures.push((entry.rel_path.clone(), error));
                    continue;
                }
            }
        } else {
            entry.bytes.clone()
        };
        transformed.insert(entry.rel_path.clone(), bytes);
    }

    let mut plan_bytes = None;
    if let Some(target) = target {
        let mut tables: BTreeMap<String, IdentifierTable> = BTreeMap::new();
        for (rel_path, bytes) in &transformed {
            match classify_identifiers(bytes) {
                Ok(table) => {
                    for warning in &table.warnings {
                        eprintln!(
                            "warning: {rel_path} at byte {}: {}",
                            warning.offset, warning.message
                        );
                    }
                    tables.insert(rel_path.clone(), table);
                }
                Err(error) => failures.push((rel_path.clone(), error)),
            }
        }
        if failures.is_empty() {
            let plan = plan_neutralization(&tables, &target);
            for (rel_path, bytes) in transformed.iter_mut() {
                match apply_neutralization(bytes, &plan.per_file[rel_path]) {
                    Ok(applied) => {
                        for name in &applied.missing {
                            eprintln!(
                                "warning: {rel_path}: planned name {:?} does not occur",
                                String::from_utf8_lossy(name)
                            );
                        }
                        *bytes = applied.bytes;
                    }
                    Err(error) => failures.push((rel_path.clone(), error)),
                }
            }
            let mut buf = Vec::new();
            plan.write_to(&mut buf)?;
            plan_bytes = Some(buf);
        }
    }

    if !failures.is_empty() {
        for (rel_path, error) in &failures {
            eprintln!("failed: {rel_path}: {error}");
        }
        eprintln!("{} file(s) failed; nothing written", failures.len());
        return Ok(1);
    }

    for (rel_path, bytes) in &transformed {
        let path = out.join(rel_path);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(path, bytes)?;
    }
    fs::write(out.join("manifest.tsv"), corpus.manifest_text())?;
    if let Some(plan) = plan_bytes {
        fs::write(out.join("plan.tsv"), plan)?;
        println!(
            "wrote {} files, manifest.tsv, plan.tsv under {}",
            transformed.len(),
            out.display()
        );
    } else {
        println!(
            "wrote {} files, manifest.tsv under {}",
            transformed.len(),
            out.display()
        );
    }
    Ok(0)
}

/// Parses a parameter range spec: comma-separated terms, each a single value
/// `7`, an inclusive range `3..10`, or a stepped range `2000..8000:1000`.
pub fn parse_range_spec(spec: &str) -> Result<Vec<usize>> {
    let mut values = Vec::new();
    for term in spec.split(',') {
        let term = term.trim();
        if term.is_empty() {
            return Err(Error::Parameter(format!("empty term in range {spec:?}")));
        }
        let (range_part, step) = match term.split_once(':') {
            Some((range, step)) => {
                let step: usize = step
                    .parse()
                    .map_err(|_| Error::Parameter(format!("bad step in {term:?}")))?;
                if step == 0 {
                    return Err(Error::Parameter(format!("zero step in {term:?}")));
                }
                (range, step)
            }
            None => (term, 1),
        };
        match range_part.split_once("..") {
            Some((lo, hi)) => {
                let lo: usize = lo
                    .parse()
                    .map_err(|_| Error::Parameter(format!("bad bound in {term:?}")))?;
                let hi: usize = hi
                    .parse()
                    .map_err(|_| Error::Parameter(format!("bad bound in {term:?}")))?;
                if lo > hi {
                    return Err(Error::Parameter(format!("inverted range {term:?}")));
                }
                values.extend((lo..=hi).step_by(step));
            }
            None => {
                let v: usize = range_part
                    .parse()
                    .map_err(|_| Error::Parameter(format!("bad value {term:?}")))?;
                values.push(v);
            }
        }
    }
    Ok(values)
}

pub fn experiment(manifest: &Path, out: &Path, n_spec: &str, l_spec: &str) -> Result<u8> {
    let n_values = parse_range_spec(n_spec)?;
    let l_values = parse_range_spec(l_spec)?;
    let corpus = load_corpus(manifest)?;
    let violations = validate_corpus(&corpus, false);
    if !violations.is_empty() {
        for violation in &violations {
            eprintln!("violation: {violation}");
        }
        return Ok(1);
    }
    let grid = run_grid(&corpus, &n_values, &l_values)?;
    fs::create_dir_all(out)?;
    let grid_path = out.join("grid.csv");
    let mut buf = Vec::new();
    grid.write_to(&mut buf)?;
    fs::write(&grid_path, buf)?;
    println!("wrote {} ({} cells)", grid_path.display(), grid.cells.len());
    for cell in grid.best_cells() {
        println!(
            "best: n={} L={} accuracy={:.1}% ({}/{})",
            cell.n,
            cell.l,
            cell.accuracy() * 100.0,
            cell.correct,
            cell.total
        );
    }
    Ok(0)
}

fn grid_name(path: &Path) -> String {
    // label grids by their parent directory when the file is the generic
    // grid.csv, otherwise by file stem
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    if stem == "grid" {
        if let Some(parent) = path.parent().and_then(|p| p.file_name()) {
            return parent.to_string_lossy().into_owned();
        }
    }
    stem
}

fn load_grid(path: &Path) -> Result<AccuracyGrid> {
    let file = fs::File::open(path).map_err(|source| Error::Load {
        path: path.to_path_buf(),
        source,
    })?;
    AccuracyGrid::read_from(BufReader::new(file))
}

pub fn report(benchmark_path: &Path, treatment_paths: &[PathBuf]) -> Result<u8> {
    let benchmark = load_grid(benchmark_path)?;
    let benchmark_name = grid_name(benchmark_path);

    let mut summaries = Vec::new();
    for path in treatment_paths {
        let treatment = load_grid(path)?;
        let summary = compare_grids(&benchmark, &treatment)?;
        summaries.push((grid_name(path), summary));
    }

    let table_rows: Vec<(String, &scap_core::experiment::ComparisonSummary)> = summaries
        .iter()
        .map(|(name, summary)| (name.clone(), summary))
        .collect();
    print!("{}", render_comparison_table(&benchmark_name, &table_rows)?);
    println!();

    let mut rows = Vec::new();
    for (name, summary) in &summaries {
        rows.push(significance_row(&benchmark_name, name, summary)?);
    }
    print!("{}", render_significance_table(&rows));
    Ok(0)
}

pub fn summary_t(mean: f64, sd: f64, n: usize) -> Result<u8> {
    let result = paired_t_from_summary(mean, sd, n)?;
    let direction = match result.direction {
        Direction::Positive => "positive",
        Direction::Negative => "negative",
    };
    println!(
        "t = {:.4}  df = {}  one-tailed p = {:.4}  (observed direction: {direction})",
        result.statistic, result.df_or_n, result.p_value
    );
    Ok(0)
}
