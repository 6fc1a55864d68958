//! The Möbius function `μ(σ, τ)`.
//!
//! [`mobius_recursive`] follows the exterior/interior recursion; the
//! reference route [`mobius_oracle`] sums over the explicit interval.

use std::collections::HashMap;
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::perm::{contains, Permutation};

/// Default cap on interval size for the oracle.
pub const DEFAULT_ORACLE_ELEMENTS: usize = 10_000;

/// Which case of the recursion decided the value at the top-level pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MobiusBranch {
    /// `|τ| - |σ| > 2` and `σ <= x(τ)`, `x(τ)` not contained in `i(τ)`.
    RecursiveCarrier,
    /// `|τ| - |σ| = 2`, `τ` not monotone, `σ ∈ {i(τ), x(τ)}`.
    Rank2Nonmonotone,
    /// `|τ| - |σ| < 2`.
    SmallRank,
    Zero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusResult {
    pub value: i64,
    pub branch: MobiusBranch,
    /// The `(σ, τ')` pairs visited, starting with the input pair.
    pub trace: Vec<(Permutation, Permutation)>,
}

enum Step {
    Recurse(Permutation),
    Done(MobiusBranch, i64),
}

fn step(sigma: &Permutation, tau: &Permutation) -> Result<Step> {
    let d = tau.len() - sigma.len();
    if d < 2 {
        let value = if d.is_multiple_of(2) { 1 } else { -1 };
        return Ok(Step::Done(MobiusBranch::SmallRank, value));
    }
    let x = tau.exterior()?;
    let i = tau.interior()?;
    if d > 2 && contains(sigma, &x) && !contains(&x, &i) {
        return Ok(Step::Recurse(x));
    }
    if d == 2 && !tau.is_monotone() && (*sigma == i || *sigma == x) {
        return Ok(Step::Done(MobiusBranch::Rank2Nonmonotone, 1));
    }
    Ok(Step::Done(MobiusBranch::Zero, 0))
}

/// `μ(σ, τ)` by the exterior recursion. Terminates since `|x(τ)| < |τ|`.
pub fn mobius_recursive(sigma: &Permutation, tau: &Permutation) -> Result<MobiusResult> {
    if !contains(sigma, tau) {
        return Err(Error::NotComparable {
            sigma: Box::new(*sigma),
            tau: Box::new(*tau),
        });
    }
    let mut trace = vec![(*sigma, *tau)];
    let mut top: Option<MobiusBranch> = None;
    let mut current = *tau;
    loop {
        match step(sigma, &current)? {
            Step::Recurse(next) => {
                top.get_or_insert(MobiusBranch::RecursiveCarrier);
                trace.push((*sigma, next));
                current = next;
            }
            Step::Done(branch, value) => {
                return Ok(MobiusResult {
                    value,
                    branch: top.unwrap_or(branch),
                    trace,
                });
            }
        }
    }
}

/// `μ(σ, ρ)` for every element `ρ` of the interval, bottom-up from
/// `Σ_{σ <= π <= ρ} μ(σ, π) = [ρ = σ]`.
pub fn mobius_all(interval: &Interval) -> Vec<i64> {
    let mut mu = vec![0i64; interval.len()];
    mu[interval.bottom()] = 1;
    for id in 1..interval.len() {
        mu[id] = -interval.strictly_below(id).map(|q| mu[q]).sum::<i64>();
    }
    mu
}

/// Definitional `μ(σ, τ)` over the explicit interval.
pub fn mobius_oracle(sigma: &Permutation, tau: &Permutation, max_elements: usize) -> Result<i64> {
    let interval = Interval::new(sigma, tau)?;
    if interval.len() > max_elements {
        return Err(Error::TooLarge {
            what: "interval elements",
            count: interval.len(),
            cap: max_elements,
        });
    }
    Ok(mobius_all(&interval)[interval.top()])
}

/// Whether `τ` has a carrier element, i.e. `x(τ)` is not contained in `i(τ)`.
pub fn has_carrier_element(tau: &Permutation) -> Result<bool> {
    let i = tau.interior()?;
    Ok(!contains(&tau.exterior()?, &i))
}

/// The carrier element `x(τ)` of `[σ, τ]`, present when `σ <= x(τ)` and
/// `x(τ)` is not contained in `i(τ)`.
pub fn carrier_of_interval(sigma: &Permutation, tau: &Permutation) -> Result<Option<Permutation>> {
    let i = tau.interior()?;
    let x = tau.exterior()?;
    Ok((contains(sigma, &x) && !contains(&x, &i)).then_some(x))
}

/// Thread-safe memo over [`mobius_recursive`] for batch queries.
#[derive(Debug, Default)]
pub struct MobiusCache {
    memo: RwLock<HashMap<(Permutation, Permutation), MobiusResult>>,
}

impl MobiusCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, sigma: &Permutation, tau: &Permutation) -> Result<MobiusResult> {
        let key = (*sigma, *tau);
        if let Some(hit) = self.memo.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        let result = mobius_recursive(sigma, tau)?;
        self.memo.write().unwrap().insert(key, result.clone());
        Ok(result)
    }

    pub fn len(&self) -> usize {
        self.memo.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
