//! Lexicographic enumeration of `S_n`, split into contiguous blocks by
//! factorial-number-system rank so blocks can be folded independently.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest `n` whose factorial fits in a `u64`.
pub const MAX_ENUM_N: usize = 20;

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// The permutation of lexicographic rank `rank` (0-based) in `S_n`.
pub fn unrank(n: usize, mut rank: u64) -> Result<Permutation> {
    if n == 0 || n > MAX_ENUM_N {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 1,
            max: MAX_ENUM_N,
        });
    }
    if rank >= factorial(n) {
        return Err(Error::InvalidInput(format!("rank {rank} >= {n}!")));
    }
    let mut pool: Vec<u8> = (1..=n as u8).collect();
    let mut out = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let f = factorial(i);
        let digit = (rank / f) as usize;
        rank %= f;
        out.push(pool.remove(digit));
    }
    Ok(Permutation::from_slice_unchecked(&out))
}

/// Step `word` to its lexicographic successor; false at the last permutation.
pub fn next_permutation(word: &mut [u8]) -> bool {
    let n = word.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    true
}

/// Rank ranges of `shards` contiguous, near-equal blocks covering `S_n`.
pub fn shard_ranges(n: usize, shards: usize) -> Vec<Range<u64>> {
    let total = factorial(n);
    let shards = (shards.max(1) as u64).min(total);
    (0..shards)
        .map(|s| (total * s / shards)..(total * (s + 1) / shards))
        .collect()
}

/// Visit the permutations with lexicographic ranks in `range`, in order.
pub fn for_each_in_range<F: FnMut(&Permutation)>(
    n: usize,
    range: Range<u64>,
    mut f: F,
) -> Result<()> {
    if range.is_empty() {
        return Ok(());
    }
    let first = unrank(n, range.start)?;
    let mut word = first.as_slice().to_vec();
    for _ in range {
        f(&Permutation::from_slice_unchecked(&word));
        next_permutation(&mut word);
    }
    Ok(())
}

/// All of `S_n` in lexicographic order.
pub fn permutations(n: usize) -> Permutations {
    Permutations {
        word: (1..=n as u8).collect(),
        done: n == 0,
    }
}

pub struct Permutations {
    word: Vec<u8>,
    done: bool,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if self.done {
            return None;
        }
        let out = Permutation::from_slice_unchecked(&self.word);
        self.done = !next_permutation(&mut self.word);
        Some(out)
    }
}
