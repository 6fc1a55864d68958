//! Exterior-length statistics over `S_n`, exhaustive and sampled.
//!
//! Exhaustive runs walk `S_n` in lexicographic order, split into contiguous
//! rank blocks that are folded in parallel and merged by addition, so the
//! result does not depend on the thread count. Sampling draws chunks of
//! [`SAMPLE_CHUNK`] permutations; chunk `c` is driven by a ChaCha8 generator
//! seeded with the master seed on stream `c`.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{factorial, for_each_in_range, shard_ranges, MAX_ENUM_N};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::mobius::{has_carrier_element, mobius_recursive};
use crate::perm::{contains, Permutation, MAX_LEN};
use crate::ranks::is_lattice;
use crate::topology::has_disconnected_subinterval;

/// Default largest `n` enumerated exhaustively.
pub const DEFAULT_MAX_EXHAUSTIVE_N: usize = 10;

/// Permutations per sampling chunk; each chunk owns one generator stream.
pub const SAMPLE_CHUNK: usize = 4096;

const SHARDS: usize = 256;

/// A per-permutation statistic with a small non-negative integer value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "sigma")]
pub enum Statistic {
    /// `|x(τ)|`.
    ExteriorLength,
    /// 1 when `τ` has a carrier element. Length-2 permutations count as
    /// having one, so they never contribute to the no-carrier count.
    HasCarrier,
    /// 1 when `μ(σ, τ) = 0`; permutations not containing `σ` are excluded.
    MuZero(Permutation),
    /// 1 when `[σ, τ]` contains a disconnected subinterval of rank at
    /// least 3; 0 when `σ` is not contained in `τ`.
    DisconnectedSubinterval(Permutation),
    /// 1 when `σ <= τ`.
    ContainsSigma(Permutation),
    /// 1 when `[σ, τ]` is a lattice; permutations not containing `σ` are excluded.
    Lattice(Permutation),
}

impl Statistic {
    pub const NAMES: [&'static str; 6] = [
        "exterior-length",
        "has-carrier",
        "mu-zero",
        "disconnected-subinterval",
        "contains-sigma",
        "lattice",
    ];

    /// Build from a name and an optional `σ`; the last four require one.
    pub fn from_name(name: &str, sigma: Option<Permutation>) -> Result<Self> {
        let need = |f: fn(Permutation) -> Statistic| {
            sigma
                .map(f)
                .ok_or_else(|| Error::InvalidInput(format!("statistic {name} needs a sigma")))
        };
        match name {
            "exterior-length" => Ok(Statistic::ExteriorLength),
            "has-carrier" => Ok(Statistic::HasCarrier),
            "mu-zero" => need(Statistic::MuZero),
            "disconnected-subinterval" => need(Statistic::DisconnectedSubinterval),
            "contains-sigma" => need(Statistic::ContainsSigma),
            "lattice" => need(Statistic::Lattice),
            _ => Err(Error::InvalidInput(format!(
                "unknown statistic {name:?}; expected one of {}",
                Self::NAMES.join(", ")
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Statistic::ExteriorLength => Self::NAMES[0],
            Statistic::HasCarrier => Self::NAMES[1],
            Statistic::MuZero(_) => Self::NAMES[2],
            Statistic::DisconnectedSubinterval(_) => Self::NAMES[3],
            Statistic::ContainsSigma(_) => Self::NAMES[4],
            Statistic::Lattice(_) => Self::NAMES[5],
        }
    }

    pub fn sigma(&self) -> Option<Permutation> {
        match *self {
            Statistic::ExteriorLength | Statistic::HasCarrier => None,
            Statistic::MuZero(s)
            | Statistic::DisconnectedSubinterval(s)
            | Statistic::ContainsSigma(s)
            | Statistic::Lattice(s) => Some(s),
        }
    }

    /// Smallest `n` for which the statistic is defined on all of `S_n`.
    pub fn min_n(&self) -> usize {
        match self {
            Statistic::ExteriorLength | Statistic::HasCarrier => 2,
            _ => 1,
        }
    }

    /// The value at `τ`, or `None` when `τ` falls outside the conditioning event.
    pub fn evaluate(&self, tau: &Permutation) -> Result<Option<u64>> {
        let flag = |b: bool| Some(u64::from(b));
        Ok(match self {
            Statistic::ExteriorLength => Some(tau.exterior_len()? as u64),
            Statistic::HasCarrier => {
                if tau.len() == 2 {
                    Some(1)
                } else {
                    flag(has_carrier_element(tau)?)
                }
            }
            Statistic::MuZero(s) => {
                if contains(s, tau) {
                    flag(mobius_recursive(s, tau)?.value == 0)
                } else {
                    None
                }
            }
            Statistic::DisconnectedSubinterval(s) => {
                flag(contains(s, tau) && has_disconnected_subinterval(s, tau))
            }
            Statistic::ContainsSigma(s) => flag(contains(s, tau)),
            Statistic::Lattice(s) => {
                if contains(s, tau) {
                    flag(is_lattice(&Interval::new(s, tau)?))
                } else {
                    None
                }
            }
        })
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sigma() {
            Some(s) => write!(f, "{}:{}", self.name(), s.render(true)),
            None => f.write_str(self.name()),
        }
    }
}

/// Counts of the values of one statistic over `S_n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionRow {
    pub n: usize,
    pub total: u64,
    /// Permutations outside the conditioning event.
    pub excluded: u64,
    pub counts: BTreeMap<u64, u64>,
}

impl DistributionRow {
    pub fn count(&self, k: u64) -> u64 {
        self.counts.get(&k).copied().unwrap_or(0)
    }

    /// Sum of `value · count` over the accepted permutations.
    pub fn value_sum(&self) -> u64 {
        self.counts.iter().map(|(k, c)| k * c).sum()
    }

    pub fn accepted(&self) -> u64 {
        self.total - self.excluded
    }

    /// Mean value over accepted permutations, as an exact ratio.
    pub fn mean(&self) -> Option<Ratio<u64>> {
        (self.accepted() > 0).then(|| Ratio::new(self.value_sum(), self.accepted()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionTable {
    pub statistic: Statistic,
    pub rows: Vec<DistributionRow>,
}

impl DistributionTable {
    pub fn row(&self, n: usize) -> Option<&DistributionRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    pub fn count(&self, n: usize, k: u64) -> u64 {
        self.row(n).map_or(0, |r| r.count(k))
    }

    /// Rows `n`, columns the observed values; cells for unseen values are
    /// left blank. An `excluded` column is added when anything was excluded.
    pub fn to_csv(&self) -> String {
        let mut keys: Vec<u64> = self
            .rows
            .iter()
            .flat_map(|r| r.counts.keys().copied())
            .collect();
        keys.sort_unstable();
        keys.dedup();
        let with_excluded = self.rows.iter().any(|r| r.excluded > 0);
        let mut s = String::from("n");
        for k in &keys {
            let _ = write!(s, ",{k}");
        }
        if with_excluded {
            s.push_str(",excluded");
        }
        s.push('\n');
        for r in &self.rows {
            let _ = write!(s, "{}", r.n);
            for k in &keys {
                match r.counts.get(k) {
                    Some(c) => {
                        let _ = write!(s, ",{c}");
                    }
                    None => s.push(','),
                }
            }
            if with_excluded {
                let _ = write!(s, ",{}", r.excluded);
            }
            s.push('\n');
        }
        s
    }
}

/// Settings for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveOptions {
    /// Worker threads; 0 uses the rayon default.
    pub threads: usize,
    pub max_n: usize,
}

impl Default for ExhaustiveOptions {
    fn default() -> Self {
        ExhaustiveOptions {
            threads: 0,
            max_n: DEFAULT_MAX_EXHAUSTIVE_N,
        }
    }
}

impl ExhaustiveOptions {
    pub fn check_n(&self, n: usize) -> Result<()> {
        let max = self.max_n.min(MAX_ENUM_N);
        if n == 0 || n > max {
            return Err(Error::OutOfRange {
                what: "n",
                value: n,
                min: 1,
                max,
            });
        }
        Ok(())
    }

    /// Run `f` on a pool with the configured thread count.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
        Ok(pool.install(f))
    }
}

fn merge_rows(mut a: DistributionRow, b: DistributionRow) -> DistributionRow {
    a.total += b.total;
    a.excluded += b.excluded;
    for (k, c) in b.counts {
        *a.counts.entry(k).or_default() += c;
    }
    a
}

fn fold_block(
    n: usize,
    block: std::ops::Range<u64>,
    statistic: &Statistic,
) -> Result<DistributionRow> {
    let mut row = DistributionRow {
        n,
        ..Default::default()
    };
    let mut dense = vec![0u64; MAX_LEN + 1];
    let mut err = None;
    for_each_in_range(n, block, |tau| {
        if err.is_some() {
            return;
        }
        row.total += 1;
        match statistic.evaluate(tau) {
            Ok(Some(v)) if (v as usize) < dense.len() => dense[v as usize] += 1,
            Ok(Some(v)) => *row.counts.entry(v).or_default() += 1,
            Ok(None) => row.excluded += 1,
            Err(e) => err = Some(e),
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    for (v, &c) in dense.iter().enumerate() {
        if c > 0 {
            *row.counts.entry(v as u64).or_default() += c;
        }
    }
    Ok(row)
}

/// Exact distribution of `statistic` over `S_n`.
pub fn exhaustive_row(
    n: usize,
    statistic: &Statistic,
    opts: &ExhaustiveOptions,
) -> Result<DistributionRow> {
    opts.check_n(n)?;
    if n < statistic.min_n() {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: statistic.min_n(),
            max: opts.max_n,
        });
    }
    let blocks = shard_ranges(n, SHARDS);
    let rows: Result<Vec<DistributionRow>> = opts.install(|| {
        blocks
            .into_par_iter()
            .map(|b| fold_block(n, b, statistic))
            .collect()
    })?;
    Ok(rows?.into_iter().fold(
        DistributionRow {
            n,
            ..Default::default()
        },
        merge_rows,
    ))
}

/// Value of `statistic` at every `τ ∈ S_n`, in lexicographic order.
pub fn exhaustive_records(
    n: usize,
    statistic: &Statistic,
    opts: &ExhaustiveOptions,
) -> Result<Vec<(Permutation, Option<u64>)>> {
    opts.check_n(n)?;
    let blocks = shard_ranges(n, SHARDS);
    let parts: Result<Vec<Vec<_>>> = opts.install(|| {
        blocks
            .into_par_iter()
            .map(|b| {
                let mut out = Vec::new();
                let mut err = None;
                for_each_in_range(n, b, |tau| {
                    if err.is_none() {
                        match statistic.evaluate(tau) {
                            Ok(v) => out.push((*tau, v)),
                            Err(e) => err = Some(e),
                        }
                    }
                })?;
                err.map_or(Ok(out), Err)
            })
            .collect()
    })?;
    Ok(parts?.into_iter().flatten().collect())
}

pub fn exhaustive_table(
    statistic: Statistic,
    n_min: usize,
    n_max: usize,
    opts: &ExhaustiveOptions,
) -> Result<DistributionTable> {
    let rows = (n_min..=n_max)
        .map(|n| exhaustive_row(n, &statistic, opts))
        .collect::<Result<_>>()?;
    Ok(DistributionTable { statistic, rows })
}

/// Counts of `|x(τ)| = k` for `2 <= n <= n_max`.
pub fn exterior_length_table(n_max: usize, opts: &ExhaustiveOptions) -> Result<DistributionTable> {
    if n_max < 2 {
        return Err(Error::OutOfRange {
            what: "n_max",
            value: n_max,
            min: 2,
            max: opts.max_n,
        });
    }
    exhaustive_table(Statistic::ExteriorLength, 2, n_max, opts)
}

/// Number of `τ ∈ S_n` with `|x(τ)| = n - 2`, by enumeration.
pub fn count_exterior_n_minus_2(n: usize, opts: &ExhaustiveOptions) -> Result<u64> {
    if n < 4 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 4,
            max: opts.max_n,
        });
    }
    Ok(exhaustive_row(n, &Statistic::ExteriorLength, opts)?.count(n as u64 - 2))
}

/// `(n, |{τ ∈ S_n : x(τ) <= i(τ)}|)` for `2 <= n <= n_max`.
pub fn no_carrier_counts(n_max: usize, opts: &ExhaustiveOptions) -> Result<Vec<(usize, u64)>> {
    (2..=n_max)
        .map(|n| Ok((n, exhaustive_row(n, &Statistic::HasCarrier, opts)?.count(0))))
        .collect()
}

/// Whether the number of non-overlapping permutations of length `n` is
/// divisible by 4.
pub fn non_overlapping_divisibility(n: usize, opts: &ExhaustiveOptions) -> Result<bool> {
    if n < 3 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 3,
            max: opts.max_n,
        });
    }
    Ok(exhaustive_row(n, &Statistic::ExteriorLength, opts)?.count(1) % 4 == 0)
}

/// For each `i` in `1..n`, the number of `τ ∈ S_n` with a bifix of length `i`.
pub fn bifix_counts(n: usize, opts: &ExhaustiveOptions) -> Result<Vec<u64>> {
    opts.check_n(n)?;
    let blocks = shard_ranges(n, SHARDS);
    let parts: Result<Vec<Vec<u64>>> = opts.install(|| {
        blocks
            .into_par_iter()
            .map(|b| {
                let mut c = vec![0u64; n];
                for_each_in_range(n, b, |tau| {
                    for (i, slot) in c.iter_mut().enumerate().skip(1) {
                        *slot += u64::from(tau.has_bifix(i));
                    }
                })?;
                Ok(c)
            })
            .collect()
    })?;
    Ok(parts?.into_iter().fold(vec![0u64; n], |mut acc, c| {
        for (a, b) in acc.iter_mut().zip(c) {
            *a += b;
        }
        acc
    }))
}

/// `P_n(τ has a bifix of length i)` as an exact ratio, by enumeration.
pub fn bifix_probability_exact(n: usize, i: usize, opts: &ExhaustiveOptions) -> Result<Ratio<u64>> {
    if i == 0 || i >= n {
        return Err(Error::OutOfRange {
            what: "i",
            value: i,
            min: 1,
            max: n.saturating_sub(1),
        });
    }
    Ok(Ratio::new(bifix_counts(n, opts)?[i], factorial(n)))
}

/// Exact `E_n(|x(τ)|)` over `S_n`.
pub fn expected_exterior_exact(n: usize, opts: &ExhaustiveOptions) -> Result<Ratio<u64>> {
    let row = exhaustive_row(n, &Statistic::ExteriorLength, opts)?;
    Ok(Ratio::new(row.value_sum(), row.total))
}

fn factorial_f64(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Explicit upper bound on `P_n(|x(τ)| >= m)`:
///
/// `Σ_{i=m}^{⌊n/2⌋} 1/i!` (exact bifix probabilities; empty when `m > ⌊n/2⌋`)
/// `+ (n - ⌊√n⌋ - ⌊n/2⌋) / ⌊√n⌋!` (bifixes of length in `(⌊n/2⌋, n - ⌊√n⌋]`)
/// `+ (⌊√n⌋ - 2) / 2^(⌊√n⌋ - 1)` (bifixes of length in `(n - ⌊√n⌋, n - 2]`)
/// `+ 2/n!` (the two monotone permutations).
///
/// The middle terms come from splitting `τ` into blocks of length `n - i`
/// that must all share one relative order; term counts are clamped at zero.
pub fn xgem_bound(n: usize, m: usize) -> Result<f64> {
    if n < 2 || m == 0 || m > n - 1 {
        return Err(Error::OutOfRange {
            what: "m",
            value: m,
            min: 1,
            max: n.saturating_sub(1),
        });
    }
    let half = n / 2;
    let root = n.isqrt();
    let head: f64 = (m..=half).map(|i| 1.0 / factorial_f64(i)).sum();
    let middle = n.saturating_sub(root + half) as f64 / factorial_f64(root);
    let upper = root.saturating_sub(2) as f64 / 2f64.powi(root as i32 - 1);
    Ok(head + middle + upper + 2.0 / factorial_f64(n))
}

/// `Σ_{m=1}^{⌊n/2⌋} 1/m!`, a lower bound for `E_n(|x(τ)|)`.
pub fn expected_exterior_lower_bound(n: usize) -> Ratio<u64> {
    (1..=n / 2).fold(Ratio::from_integer(0), |acc, m| {
        acc + Ratio::new(1, factorial(m))
    })
}

/// `τ` with its exterior occurrences cut off both ends, or `None` when
/// `|x(τ)| >= n/2` and the two occurrences meet or overlap.
pub fn exterior_gap(tau: &Permutation) -> Result<Option<Permutation>> {
    let n = tau.len();
    let k = tau.exterior_len()?;
    if 2 * k >= n {
        return Ok(None);
    }
    Ok(Some(tau.pattern_at(k, n - 2 * k)))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleEstimate {
    pub statistic: Statistic,
    pub n: usize,
    pub sample_size: u64,
    pub seed: u64,
    /// Samples inside the conditioning event.
    pub accepted: u64,
    pub value_sum: u64,
    pub point_estimate: f64,
    pub standard_error: f64,
}

#[derive(Default)]
struct Moments {
    accepted: u64,
    sum: u64,
    sum_sq: u128,
}

fn sample_chunk(
    n: usize,
    seed: u64,
    chunk: u64,
    count: usize,
    statistic: &Statistic,
) -> Result<Moments> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    let mut word: Vec<u8> = (1..=n as u8).collect();
    let mut m = Moments::default();
    for _ in 0..count {
        word.shuffle(&mut rng);
        let tau = Permutation::from_slice_unchecked(&word);
        if let Some(v) = statistic.evaluate(&tau)? {
            m.accepted += 1;
            m.sum += v;
            m.sum_sq += u128::from(v) * u128::from(v);
        }
    }
    Ok(m)
}

/// Estimate the mean of `statistic` over uniform `τ ∈ S_n`.
///
/// Bit-reproducible for fixed `(n, sample_size, seed)` regardless of `threads`.
pub fn sample_statistic(
    n: usize,
    sample_size: u64,
    seed: u64,
    statistic: Statistic,
    threads: usize,
) -> Result<SampleEstimate> {
    if n < statistic.min_n() || n > MAX_LEN {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: statistic.min_n(),
            max: MAX_LEN,
        });
    }
    if sample_size == 0 {
        return Err(Error::InvalidInput("sample size must be positive".into()));
    }
    let chunk = SAMPLE_CHUNK as u64;
    let chunks = sample_size.div_ceil(chunk);
    let opts = ExhaustiveOptions {
        threads,
        ..Default::default()
    };
    let parts: Result<Vec<Moments>> = opts.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let count = (sample_size - c * chunk).min(chunk) as usize;
                sample_chunk(n, seed, c, count, &statistic)
            })
            .collect()
    })?;
    let total = parts?.into_iter().fold(Moments::default(), |a, b| Moments {
        accepted: a.accepted + b.accepted,
        sum: a.sum + b.sum,
        sum_sq: a.sum_sq + b.sum_sq,
    });
    let (point_estimate, standard_error) = if total.accepted == 0 {
        (f64::NAN, f64::NAN)
    } else {
        let k = total.accepted as f64;
        let mean = total.sum as f64 / k;
        let var = if total.accepted > 1 {
            ((total.sum_sq as f64 - k * mean * mean) / (k - 1.0)).max(0.0)
        } else {
            0.0
        };
        (mean, (var / k).sqrt())
    };
    Ok(SampleEstimate {
        statistic,
        n,
        sample_size,
        seed,
        accepted: total.accepted,
        value_sum: total.sum,
        point_estimate,
        standard_error,
    })
}

impl FromStr for Statistic {
    type Err = Error;

    /// `name` or `name:sigma`, e.g. `mu-zero:21`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((name, sigma)) => Statistic::from_name(name, Some(sigma.parse()?)),
            None => Statistic::from_name(s, None),
        }
    }
}
