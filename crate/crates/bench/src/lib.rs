//! Fixed inputs shared by the benchmarks.

use consec_poset::Permutation;

/// Intervals of increasing size, as `(σ, τ)`.
pub const INTERVALS: [(&str, &str); 4] = [
    ("12", "213546"),
    ("21", "214356"),
    ("1", "2143576"),
    ("1", "68372514"),
];

pub fn interval_pairs() -> Vec<(Permutation, Permutation)> {
    INTERVALS
        .iter()
        .map(|(s, t)| {
            (
                s.parse().expect("valid fixture"),
                t.parse().expect("valid fixture"),
            )
        })
        .collect()
}

/// A long permutation with a deep exterior chain, for the recursion.
pub fn deep_tau() -> Permutation {
    let mut tau: Permutation = "213".parse().expect("valid fixture");
    let step: Permutation = "1".parse().expect("valid fixture");
    for _ in 0..4 {
        // τ ⊕ 1 ⊕ τ keeps τ as both prefix and suffix pattern
        tau = tau
            .direct_sum(&step)
            .and_then(|t| t.direct_sum(&tau))
            .expect("fits in 64");
    }
    tau
}
