//! Descriptive statistics and the paired tests used to compare accuracy
//! grids: a one-tailed paired t-test and the Wilcoxon signed-rank test.
//!
//! The Student-t CDF is computed from the regularized incomplete beta
//! function (continued fraction, Lentz's method) so no numeric dependency is
//! needed; accuracy is well inside the 1e-8 the t-tests require. The
//! Wilcoxon test drops zero differences, uses midranks for tied magnitudes,
//! and computes the exact one-tailed p by enumerating all 2^n sign
//! assignments up to n = 12, falling back to a tie-corrected normal
//! approximation above that.

use crate::error::{Error, Result};

/// Largest sample size for which the Wilcoxon p-value is computed by exact
/// enumeration of sign assignments.
pub const WILCOXON_EXACT_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Descriptive {
    pub mean: f64,
    pub median: f64,
    pub min: f64,
    pub max: f64,
    /// Sample standard deviation (n-1 denominator); absent for a single value.
    pub sd: Option<f64>,
}

/// Compensated (Neumaier) summation; keeps the descriptive rows stable to
/// well under the 1e-12 the oracle comparison asks for.
fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut compensation = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            compensation += (sum - t) + v;
        } else {
            compensation += (v - t) + sum;
        }
        sum = t;
    }
    sum + compensation
}

/// Mean, median, min, max and sample standard deviation of `values`.
///
/// The median of an even-length list is the midpoint average of the two
/// central values.
pub fn descriptive(values: &[f64]) -> Result<Descriptive> {
    if values.is_empty() {
        return Err(Error::Parameter("descriptive over empty list".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Parameter("values must be finite".into()));
    }
    let n = values.len();
    let mean = neumaier_sum(values.iter().copied()) / n as f64;

    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };

    let sd = if n >= 2 {
        let ss = neumaier_sum(values.iter().map(|v| (v - mean) * (v - mean)));
        Some((ss / (n - 1) as f64).sqrt())
    } else {
        None
    };

    Ok(Descriptive {
        mean,
        median,
        min: sorted[0],
        max: sorted[n - 1],
        sd,
    })
}

// Lanczos approximation, g = 7, 9 terms.
fn ln_gamma(z: f64) -> f64 {
    const COEF: [f64; 8] = [
        676.5203681218851,
        -1259.1392167224028,
        771.3234287776531,
        -176.6150291621406,
        12.507343278686905,
        -0.13857109526572012,
        9.984369578019572e-6,
        1.5056327351493116e-7,
    ];
    if z < 0.5 {
        // reflection
        (std::f64::consts::PI / (std::f64::consts::PI * z).sin()).ln() - ln_gamma(1.0 - z)
    } else {
        let z = z - 1.0;
        let mut x = 0.999_999_999_999_809_9;
        for (i, c) in COEF.iter().enumerate() {
            x += c / (z + i as f64 + 1.0);
        }
        let t = z + 7.5;
        0.5 * (2.0 * std::f64::consts::PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
    }
}

// Continued fraction for the incomplete beta function (modified Lentz).
fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITER: usize = 300;
    const EPS: f64 = 1e-16;
    const FPMIN: f64 = 1e-300;

    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < FPMIN {
        d = FPMIN;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < FPMIN {
            d = FPMIN;
        }
        c = 1.0 + aa / c;
        if c.abs() < FPMIN {
            c = FPMIN;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Regularized incomplete beta function I_x(a, b).
fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b
    }
}

/// Cumulative probability of the Student-t distribution with `df` degrees of
/// freedom.
pub fn student_t_cdf(t: f64, df: usize) -> Result<f64> {
    if df == 0 {
        return Err(Error::Parameter("degrees of freedom must be >= 1".into()));
    }
    if !t.is_finite() {
        return Err(Error::Parameter("t must be finite".into()));
    }
    let dff = df as f64;
    let x = dff / (dff + t * t);
    let tail = 0.5 * regularized_incomplete_beta(dff / 2.0, 0.5, x);
    Ok(if t > 0.0 { 1.0 - tail } else { tail })
}

/// Paired differences (benchmark minus treatment, in percentage points).
#[derive(Debug, Clone)]
pub struct PairedSample {
    diffs: Vec<f64>,
}

impl PairedSample {
    pub fn new(diffs: Vec<f64>) -> Result<Self> {
        if diffs.is_empty() {
            return Err(Error::Parameter("empty paired sample".into()));
        }
        if diffs.iter().any(|d| !d.is_finite()) {
            return Err(Error::Parameter("differences must be finite".into()));
        }
        Ok(PairedSample { diffs })
    }

    pub fn n(&self) -> usize {
        self.diffs.len()
    }

    pub fn diffs(&self) -> &[f64] {
        &self.diffs
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestMethod {
    TPairedOneTailed,
    WilcoxonSignedRank,
}

/// Sign of the observed effect; the one-tailed p-value is taken in this
/// direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub method: TestMethod,
    pub direction: Direction,
    /// Degrees of freedom for the t-test; effective sample size (zeros
    /// dropped) for Wilcoxon.
    pub df_or_n: usize,
}

/// One-tailed paired t-test over the sample's differences. The tail is taken
/// in the direction of the observed mean: p = 1 - student_t_cdf(|t|, n-1).
pub fn paired_t_one_tailed(sample: &PairedSample) -> Result<TestResult> {
    let n = sample.n();
    if n < 2 {
        return Err(Error::Parameter("t-test requires n >= 2".into()));
    }
    let stats = descriptive(sample.diffs())?;
    let sd = stats.sd.expect("n >= 2");
    if sd == 0.0 {
        return Err(Error::DegenerateSample(
            "zero standard deviation of differences".into(),
        ));
    }
    t_result(stats.mean, sd, n)
}

/// Same test computed from a (mean, sd, n) summary triple, so published
/// tables can be replayed without the underlying differences.
pub fn paired_t_from_summary(mean: f64, sd: f64, n: usize) -> Result<TestResult> {
    if !sd.is_finite() || sd <= 0.0 {
        return Err(Error::Parameter("summary sd must be > 0".into()));
    }
    if n < 2 {
        return Err(Error::Parameter("t-test requires n >= 2".into()));
    }
    if !mean.is_finite() {
        return Err(Error::Parameter("summary mean must be finite".into()));
    }
    t_result(mean, sd, n)
}

fn t_result(mean: f64, sd: f64, n: usize) -> Result<TestResult> {
    let t = mean / (sd / (n as f64).sqrt());
    let df = n - 1;
    let p_value = 1.0 - student_t_cdf(t.abs(), df)?;
    Ok(TestResult {
        statistic: t,
        p_value,
        method: TestMethod::TPairedOneTailed,
        direction: if mean < 0.0 {
            Direction::Negative
        } else {
            Direction::Positive
        },
        df_or_n: df,
    })
}

/// Wilcoxon signed-rank test, one-tailed in the observed direction.
///
/// Zero differences are dropped; tied magnitudes receive midranks. With at
/// most [`WILCOXON_EXACT_LIMIT`] non-zero differences the p-value is exact
/// over all 2^n sign assignments; beyond that a normal approximation with
/// tie correction and continuity correction is used.
pub fn wilcoxon_signed_rank(sample: &PairedSample) -> Result<TestResult> {
    let nonzero: Vec<f64> = sample
        .diffs()
        .iter()
        .copied()
        .filter(|d| *d != 0.0)
        .collect();
    if nonzero.is_empty() {
        return Err(Error::DegenerateSample("all differences are zero".into()));
    }
    let n = nonzero.len();
    let ranks2 = doubled_midranks(&nonzero);
    let total2: u64 = (n as u64) * (n as u64 + 1); // sum of doubled ranks
    let w2_plus: u64 = nonzero
        .iter()
        .zip(&ranks2)
        .filter(|(d, _)| **d > 0.0)
        .map(|(_, r)| *r)
        .sum();
    let w2_minus = total2 - w2_plus;
    let direction = if w2_plus >= w2_minus {
        Direction::Positive
    } else {
        Direction::Negative
    };

    let p_value = if n <= WILCOXON_EXACT_LIMIT {
        exact_signed_rank_p(&ranks2, w2_plus, direction)
    } else {
        normal_approx_p(&nonzero, &ranks2, w2_plus, direction)
    };

    Ok(TestResult {
        statistic: w2_plus as f64 / 2.0,
        p_value,
        method: TestMethod::WilcoxonSignedRank,
        direction,
        df_or_n: n,
    })
}

/// Midranks of |values|, doubled so ties at .5 stay exact integers.
fn doubled_midranks(values: &[f64]) -> Vec<u64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .abs()
            .partial_cmp(&values[b].abs())
            .expect("finite")
    });
    let mut ranks2 = vec![0u64; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]].abs() == values[order[i]].abs() {
            j += 1;
        }
        // positions i..=j (0-based) share the midrank ((i+1) + (j+1)) / 2
        let rank2 = (i + j + 2) as u64;
        for &idx in &order[i..=j] {
            ranks2[idx] = rank2;
        }
        i = j + 1;
    }
    ranks2
}

/// Exact tail probability of W+ over all 2^n sign assignments with the
/// observed rank values held fixed.
fn exact_signed_rank_p(ranks2: &[u64], observed2: u64, direction: Direction) -> f64 {
    let n = ranks2.len();
    let assignments = 1u64 << n;
    let mut hits = 0u64;
    for mask in 0..assignments {
        let mut w2 = 0u64;
        for (bit, rank2) in ranks2.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                w2 += rank2;
            }
        }
        let hit = match direction {
            Direction::Positive => w2 >= observed2,
            Direction::Negative => w2 <= observed2,
        };
        if hit {
            hits += 1;
        }
    }
    hits as f64 / assignments as f64
}

fn normal_approx_p(values: &[f64], ranks2: &[u64], w2_plus: u64, direction: Direction) -> f64 {
    let n = values.len() as f64;
    let w_plus = w2_plus as f64 / 2.0;
    let mean = n * (n + 1.0) / 4.0;

    // tie correction: subtract sum(t^3 - t)/48 over groups of tied |d|
    let mut sorted2 = ranks2.to_vec();
    sorted2.sort_unstable();
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted2.len() {
        let mut j = i;
        while j + 1 < sorted2.len() && sorted2[j + 1] == sorted2[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        tie_term += t * t * t - t;
        i = j + 1;
    }
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    let sigma = var.sqrt();

    // continuity-corrected tails; the upper tail is computed as the CDF of
    // the reflected argument so both tails share one code path and flipping
    // every sign flips the tail exactly
    match direction {
        Direction::Positive => normal_cdf(-((w_plus - 0.5 - mean) / sigma)),
        Direction::Negative => normal_cdf((w_plus + 0.5 - mean) / sigma),
    }
}

fn normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

// Rational Chebyshev approximation to the complementary error function,
// |relative error| <= 1.2e-7, plenty for the approximate Wilcoxon branch.
fn erfc(x: f64) -> f64 {
    let z = x.abs();
    let t = 1.0 / (1.0 + 0.5 * z);
    let ans = t
        * (-z * z - 1.26551223
            + t * (1.00002368
                + t * (0.37409196
                    + t * (0.09678418
                        + t * (-0.18628806
                            + t * (0.27886807
                                + t * (-1.13520398
                                    + t * (1.48851587 + t * (-0.82215223 + t * 0.17087277)))))))))
            .exp();
    if x >= 0.0 {
        ans
    } else {
        2.0 - ans
    }
}
