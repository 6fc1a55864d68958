//! Permutations and the single-permutation operations of the consecutive
//! pattern order: reduction, occurrences, containment, prefixes, suffixes,
//! bifixes, exterior, interior, symmetries and sums.
//!
//! Permutations are always stored reduced, as words over `1..=n`. Positions
//! exposed through [`Window`] are 1-based and inclusive.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported permutation length.
pub const MAX_LEN: usize = 64;

/// A permutation of `1..=n` in one-line notation, `1 <= n <= MAX_LEN`.
///
/// Ordering is shortlex: shorter permutations first, then lexicographic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Permutation {
    len: u8,
    entries: [u8; MAX_LEN],
}

impl Hash for Permutation {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.as_slice().hash(state);
    }
}

/// The consecutive index range `[start, end]` of a host permutation (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Window {
    pub start: usize,
    pub end: usize,
}

impl Window {
    pub fn new(start: usize, end: usize) -> Result<Self> {
        if start == 0 || start > end {
            return Err(Error::InvalidInput(format!("bad window [{start},{end}]")));
        }
        Ok(Window { start, end })
    }

    /// Window of `len` entries starting at the 0-based offset `offset`.
    pub(crate) fn at(offset: usize, len: usize) -> Self {
        Window {
            start: offset + 1,
            end: offset + len,
        }
    }

    pub fn len(&self) -> usize {
        self.end + 1 - self.start
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub(crate) fn offset(&self) -> usize {
        self.start - 1
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.start, self.end)
    }
}

/// Every occurrence of `pattern` in `host`, ascending by start.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OccurrenceList {
    pub pattern: Permutation,
    pub host: Permutation,
    pub windows: Vec<Window>,
}

impl OccurrenceList {
    pub fn is_empty(&self) -> bool {
        self.windows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.windows.len()
    }

    /// 1-based start positions of the occurrences.
    pub fn starts(&self) -> Vec<usize> {
        self.windows.iter().map(|w| w.start).collect()
    }
}

/// Reduce a word of distinct values to the order-isomorphic permutation.
///
/// `reduce(&[3, 9, 4, 1, 7, 6])` is `263154`.
pub fn reduce<T: Ord>(word: &[T]) -> Result<Permutation> {
    if word.is_empty() {
        return Err(Error::InvalidInput("cannot reduce an empty word".into()));
    }
    if word.len() > MAX_LEN {
        return Err(Error::Capacity {
            len: word.len(),
            max: MAX_LEN,
        });
    }
    let mut out = Permutation::empty(word.len());
    for (p, a) in word.iter().enumerate() {
        let mut rank = 1u8;
        for (q, b) in word.iter().enumerate() {
            match b.cmp(a) {
                Ordering::Less => rank += 1,
                Ordering::Equal if p != q => {
                    return Err(Error::InvalidInput("word has repeated entries".into()))
                }
                _ => {}
            }
        }
        out.entries[p] = rank;
    }
    Ok(out)
}

/// Reduction of a slice already known to hold distinct values.
pub(crate) fn reduce_distinct(word: &[u8]) -> Permutation {
    debug_assert!(!word.is_empty() && word.len() <= MAX_LEN);
    let mut out = Permutation::empty(word.len());
    for (p, &a) in word.iter().enumerate() {
        out.entries[p] = 1 + word.iter().filter(|&&b| b < a).count() as u8;
    }
    out
}

/// Whether two equal-length words of distinct values are order-isomorphic.
pub(crate) fn same_pattern(a: &[u8], b: &[u8]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    // adjacent comparisons reject most pairs cheaply
    if a.windows(2)
        .zip(b.windows(2))
        .any(|(x, y)| (x[0] < x[1]) != (y[0] < y[1]))
    {
        return false;
    }
    let mut order: Vec<usize> = (0..a.len()).collect();
    order.sort_unstable_by_key(|&p| a[p]);
    order.windows(2).all(|w| b[w[0]] < b[w[1]])
}

/// Pattern matcher that checks a window in `O(k)` using the positions of
/// `1, 2, ..., k` in the pattern: a window matches iff the host entries at
/// those positions increase.
#[derive(Clone, Debug)]
pub struct Matcher {
    pattern: Permutation,
    positions: Vec<usize>,
}

impl Matcher {
    pub fn new(pattern: &Permutation) -> Self {
        let mut positions = vec![0; pattern.len()];
        for (p, &v) in pattern.as_slice().iter().enumerate() {
            positions[v as usize - 1] = p;
        }
        Matcher {
            pattern: *pattern,
            positions,
        }
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    /// Whether `host[offset..offset + k]` is an occurrence (0-based offset).
    pub fn matches_at(&self, host: &[u8], offset: usize) -> bool {
        let w = &host[offset..offset + self.positions.len()];
        self.positions.windows(2).all(|p| w[p[0]] < w[p[1]])
    }

    pub fn occurs_in(&self, host: &[u8]) -> bool {
        let k = self.positions.len();
        k <= host.len() && (0..=host.len() - k).any(|o| self.matches_at(host, o))
    }

    /// 0-based offsets of every occurrence in `host`.
    pub fn offsets_in<'a>(&'a self, host: &'a [u8]) -> impl Iterator<Item = usize> + 'a {
        let k = self.positions.len();
        let last = (host.len() + 1).saturating_sub(k);
        (0..last).filter(move |&o| self.matches_at(host, o))
    }
}

/// All windows of `host` that reduce to `pattern`.
pub fn occurrences(pattern: &Permutation, host: &Permutation) -> OccurrenceList {
    let matcher = Matcher::new(pattern);
    let windows = matcher
        .offsets_in(host.as_slice())
        .map(|o| Window::at(o, pattern.len()))
        .collect();
    OccurrenceList {
        pattern: *pattern,
        host: *host,
        windows,
    }
}

/// Occurrences found by reducing every window; the reference route that
/// [`occurrences`] is tested against.
pub fn occurrences_by_reduction(pattern: &Permutation, host: &Permutation) -> OccurrenceList {
    let k = pattern.len();
    let windows = (0..(host.len() + 1).saturating_sub(k))
        .filter(|&o| host.pattern_at(o, k) == *pattern)
        .map(|o| Window::at(o, k))
        .collect();
    OccurrenceList {
        pattern: *pattern,
        host: *host,
        windows,
    }
}

/// Whether `host` contains `pattern` as a consecutive pattern.
pub fn contains(pattern: &Permutation, host: &Permutation) -> bool {
    pattern.len() <= host.len() && Matcher::new(pattern).occurs_in(host.as_slice())
}

impl Permutation {
    fn empty(len: usize) -> Self {
        Permutation {
            len: len as u8,
            entries: [0; MAX_LEN],
        }
    }

    /// Build from one-line notation, checking it is a permutation of `1..=n`.
    pub fn new(entries: &[u8]) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty permutation".into()));
        }
        if n > MAX_LEN {
            return Err(Error::Capacity {
                len: n,
                max: MAX_LEN,
            });
        }
        let mut seen = [false; MAX_LEN + 1];
        for &v in entries {
            let v = v as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidInput(format!(
                    "{entries:?} is not a permutation of 1..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self::from_slice_unchecked(entries))
    }

    pub(crate) fn from_slice_unchecked(entries: &[u8]) -> Self {
        let mut p = Self::empty(entries.len());
        p.entries[..entries.len()].copy_from_slice(entries);
        p
    }

    /// `12...n`
    pub fn identity(n: usize) -> Result<Self> {
        Self::check_len(n)?;
        let v: Vec<u8> = (1..=n as u8).collect();
        Ok(Self::from_slice_unchecked(&v))
    }

    /// `n...21`
    pub fn decreasing(n: usize) -> Result<Self> {
        Self::check_len(n)?;
        let v: Vec<u8> = (1..=n as u8).rev().collect();
        Ok(Self::from_slice_unchecked(&v))
    }

    fn check_len(n: usize) -> Result<()> {
        if n == 0 {
            Err(Error::InvalidInput("empty permutation".into()))
        } else if n > MAX_LEN {
            Err(Error::Capacity {
                len: n,
                max: MAX_LEN,
            })
        } else {
            Ok(())
        }
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    /// Always false: the empty word is not a permutation here.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.entries[..self.len()]
    }

    /// Reduced pattern of the `len` entries starting at 0-based `offset`.
    pub(crate) fn pattern_at(&self, offset: usize, len: usize) -> Permutation {
        reduce_distinct(&self.as_slice()[offset..offset + len])
    }

    /// `red(τ_i ... τ_j)` for the 1-based window `[i, j]`.
    pub fn window(&self, w: Window) -> Result<Permutation> {
        if w.end > self.len() {
            return Err(Error::OutOfRange {
                what: "window end",
                value: w.end,
                min: w.start,
                max: self.len(),
            });
        }
        Ok(self.pattern_at(w.offset(), w.len()))
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.len() {
            Err(Error::OutOfRange {
                what: "k",
                value: k,
                min: 1,
                max: self.len(),
            })
        } else {
            Ok(())
        }
    }

    /// Reduction of the first `k` entries.
    pub fn prefix(&self, k: usize) -> Result<Permutation> {
        self.check_k(k)?;
        Ok(self.pattern_at(0, k))
    }

    /// Reduction of the last `k` entries.
    pub fn suffix(&self, k: usize) -> Result<Permutation> {
        self.check_k(k)?;
        Ok(self.pattern_at(self.len() - k, k))
    }

    /// Whether the length-`k` prefix and suffix reduce to the same pattern.
    pub fn has_bifix(&self, k: usize) -> bool {
        let n = self.len();
        k >= 1 && k < n && same_pattern(&self.as_slice()[..k], &self.as_slice()[n - k..])
    }

    /// All lengths `k` in `1..n` whose prefix equals the suffix.
    pub fn bifixes(&self) -> Vec<usize> {
        (1..self.len()).filter(|&k| self.has_bifix(k)).collect()
    }

    /// `|x(τ)|`, the length of the longest bifix.
    pub fn exterior_len(&self) -> Result<usize> {
        if self.len() < 2 {
            return Err(Error::UndefinedExterior);
        }
        // k = 1 always qualifies
        Ok((1..self.len())
            .rev()
            .find(|&k| self.has_bifix(k))
            .unwrap_or(1))
    }

    /// The exterior `x(τ)`: the longest proper prefix that is also a suffix.
    pub fn exterior(&self) -> Result<Permutation> {
        let k = self.exterior_len()?;
        Ok(self.pattern_at(0, k))
    }

    /// The interior `i(τ) = red(τ_2 ... τ_{n-1})`.
    pub fn interior(&self) -> Result<Permutation> {
        if self.len() < 3 {
            return Err(Error::UndefinedInterior);
        }
        Ok(self.pattern_at(1, self.len() - 2))
    }

    pub fn is_monotone(&self) -> bool {
        let s = self.as_slice();
        s.windows(2).all(|w| w[0] < w[1]) || s.windows(2).all(|w| w[0] > w[1])
    }

    /// Non-overlapping: the exterior has length 1.
    pub fn is_non_overlapping(&self) -> Result<bool> {
        Ok(self.exterior_len()? == 1)
    }

    pub fn reversal(&self) -> Permutation {
        let mut p = *self;
        p.entries[..self.len()].reverse();
        p
    }

    pub fn complement(&self) -> Permutation {
        let n = self.len;
        let mut p = *self;
        for v in &mut p.entries[..self.len()] {
            *v = n + 1 - *v;
        }
        p
    }

    pub fn inverse(&self) -> Permutation {
        let mut p = *self;
        for (i, &v) in self.as_slice().iter().enumerate() {
            p.entries[v as usize - 1] = i as u8 + 1;
        }
        p
    }

    /// `σ ⊕ τ`: `σ` followed by `τ` shifted up by `|σ|`.
    pub fn direct_sum(&self, other: &Permutation) -> Result<Permutation> {
        let m = self.len() as u8;
        self.concat(other, 0, m)
    }

    /// `σ ⊖ τ`: `σ` shifted up by `|τ|`, followed by `τ`.
    pub fn skew_sum(&self, other: &Permutation) -> Result<Permutation> {
        let n = other.len() as u8;
        self.concat(other, n, 0)
    }

    fn concat(&self, other: &Permutation, lift_left: u8, lift_right: u8) -> Result<Permutation> {
        let total = self.len() + other.len();
        Self::check_len(total)?;
        let mut p = Self::empty(total);
        for (i, &v) in self.as_slice().iter().enumerate() {
            p.entries[i] = v + lift_left;
        }
        for (i, &v) in other.as_slice().iter().enumerate() {
            p.entries[self.len() + i] = v + lift_right;
        }
        Ok(p)
    }

    /// Digit form such as `213546`, available when `n <= 9`.
    pub fn to_compact(&self) -> Option<String> {
        (self.len() <= 9).then(|| {
            self.as_slice()
                .iter()
                .map(|v| char::from(b'0' + v))
                .collect()
        })
    }

    /// Digit form when `n <= 9` and `compact` is set, comma form otherwise.
    pub fn render(&self, compact: bool) -> String {
        match compact.then(|| self.to_compact()).flatten() {
            Some(s) => s,
            None => self.to_string(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.as_slice().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts `2,1,3,5,4,6` or, for `n <= 9`, the digit form `213546`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidInput(format!("cannot parse permutation {s:?}"));
        let values: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<u8>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            if s.is_empty() || s.len() > 9 {
                return Err(bad());
            }
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::new(&values)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
pub(crate) fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}
