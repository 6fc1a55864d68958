//! The interval `[σ, τ]` as an explicit ranked DAG.
//!
//! Construction follows the window picture: every window `[i, j]` of `τ`
//! is a candidate, windows whose reduction avoids `σ` are dropped, and the
//! survivors are grouped by their reduction. Each group is one element of
//! the interval and its windows are that element's occurrences in `τ`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::perm::{occurrences, Matcher, Permutation, Window};

/// Default cap on the number of maximal chains enumerated at once.
pub const DEFAULT_MAX_CHAINS: usize = 1_000_000;

/// A finite interval of the consecutive pattern poset.
///
/// Element ids are dense indices ordered by rank; within a rank, by the
/// smallest left endpoint among the element's occurrences in `τ`. Id `0` is
/// `σ` and the last id is `τ`.
#[derive(Clone, Debug)]
pub struct Interval {
    sigma: Permutation,
    tau: Permutation,
    elements: Vec<Permutation>,
    ranks: Vec<usize>,
    rank_offsets: Vec<usize>,
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    window_classes: Vec<Vec<Window>>,
    index: HashMap<Permutation, usize>,
    below: Vec<BitSet>,
}

/// A maximal chain, listed from `τ` down to `σ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MaximalChain {
    pub elements: Vec<usize>,
}

impl MaximalChain {
    pub fn permutations(&self, interval: &Interval) -> Vec<Permutation> {
        self.elements
            .iter()
            .map(|&e| *interval.element(e))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChainReason {
    MonotoneTop,
    UniquePrefixOccurrence,
    UniqueSuffixOccurrence,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainVerdict {
    pub is_chain: bool,
    pub reason: Option<ChainReason>,
}

/// Machine-readable dump of an interval.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalExport {
    pub sigma: Permutation,
    pub tau: Permutation,
    pub ranks: Vec<Vec<Permutation>>,
    /// `[child, parent]` pairs.
    pub covers: Vec<(Permutation, Permutation)>,
}

impl Interval {
    /// Build `[σ, τ]`; fails with [`Error::NotComparable`] unless `σ <= τ`.
    pub fn new(sigma: &Permutation, tau: &Permutation) -> Result<Self> {
        let n = tau.len();
        let m = sigma.len();
        let not_comparable = || Error::NotComparable {
            sigma: Box::new(*sigma),
            tau: Box::new(*tau),
        };
        if m > n {
            return Err(not_comparable());
        }

        // survives[len - m][offset]: does window (offset, len) contain σ?
        let matcher = Matcher::new(sigma);
        let mut survives: Vec<Vec<bool>> = Vec::with_capacity(n - m + 1);
        survives.push(
            (0..=n - m)
                .map(|o| matcher.matches_at(tau.as_slice(), o))
                .collect(),
        );
        for len in m + 1..=n {
            let prev = &survives[len - 1 - m];
            let row = (0..=n - len).map(|o| prev[o] || prev[o + 1]).collect();
            survives.push(row);
        }
        if !survives[n - m][0] {
            return Err(not_comparable());
        }

        // Windows by decreasing length, grouped by reduction.
        let mut levels: Vec<Vec<(Permutation, Vec<Window>)>> = Vec::new();
        for len in (m..=n).rev() {
            let mut level: Vec<(Permutation, Vec<Window>)> = Vec::new();
            let mut seen: HashMap<Permutation, usize> = HashMap::new();
            for (o, &keep) in survives[len - m].iter().enumerate() {
                if !keep {
                    continue;
                }
                let pi = tau.pattern_at(o, len);
                let w = Window::at(o, len);
                match seen.get(&pi) {
                    Some(&c) => level[c].1.push(w),
                    None => {
                        seen.insert(pi, level.len());
                        level.push((pi, vec![w]));
                    }
                }
            }
            levels.push(level);
        }
        levels.reverse();

        let mut elements = Vec::new();
        let mut ranks = Vec::new();
        let mut rank_offsets = vec![0];
        let mut window_classes = Vec::new();
        for (r, level) in levels.into_iter().enumerate() {
            for (pi, ws) in level {
                elements.push(pi);
                ranks.push(r);
                window_classes.push(ws);
            }
            rank_offsets.push(elements.len());
        }
        let index: HashMap<Permutation, usize> =
            elements.iter().enumerate().map(|(i, p)| (*p, i)).collect();

        let count = elements.len();
        let mut children = vec![Vec::new(); count];
        let mut parents = vec![Vec::new(); count];
        for id in 0..count {
            let pi = elements[id];
            if ranks[id] == 0 {
                continue;
            }
            let k = pi.len() - 1;
            let mut kids: Vec<usize> = [pi.pattern_at(0, k), pi.pattern_at(1, k)]
                .iter()
                .filter_map(|c| index.get(c).copied())
                .collect();
            kids.sort_unstable();
            kids.dedup();
            for &c in &kids {
                parents[c].push(id);
            }
            children[id] = kids;
        }

        let mut below: Vec<BitSet> = Vec::with_capacity(count);
        for kids in &children {
            let mut set = BitSet::with_capacity(count);
            for &c in kids {
                set.insert(c);
                set.union_with(&below[c]);
            }
            below.push(set);
        }

        Ok(Interval {
            sigma: *sigma,
            tau: *tau,
            elements,
            ranks,
            rank_offsets,
            children,
            parents,
            window_classes,
            index,
            below,
        })
    }

    pub fn sigma(&self) -> &Permutation {
        &self.sigma
    }

    pub fn tau(&self) -> &Permutation {
        &self.tau
    }

    /// The rank `N = |τ| - |σ|`.
    pub fn rank(&self) -> usize {
        self.tau.len() - self.sigma.len()
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn element(&self, id: usize) -> &Permutation {
        &self.elements[id]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn id_of(&self, pi: &Permutation) -> Option<usize> {
        self.index.get(pi).copied()
    }

    pub fn rank_of(&self, id: usize) -> usize {
        self.ranks[id]
    }

    /// Ids of the elements of rank `r`.
    pub fn rank_level(&self, r: usize) -> Range<usize> {
        self.rank_offsets[r]..self.rank_offsets[r + 1]
    }

    /// Elements covered by `id`.
    pub fn children(&self, id: usize) -> &[usize] {
        &self.children[id]
    }

    /// Elements covering `id`.
    pub fn parents(&self, id: usize) -> &[usize] {
        &self.parents[id]
    }

    /// The occurrences of element `id` in `τ`, ascending.
    pub fn window_class(&self, id: usize) -> &[Window] {
        &self.window_classes[id]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Elements strictly below `id`.
    pub fn strictly_below(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[id].iter()
    }

    pub fn cover_count(&self) -> usize {
        self.children.iter().map(Vec::len).sum()
    }

    /// `a_0, ..., a_N`.
    pub fn rank_sizes(&self) -> Vec<usize> {
        self.rank_offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Chain test from the occurrence pattern: `τ` monotone, or `σ` occurring
    /// exactly once and as a prefix or suffix.
    pub fn is_chain(&self) -> ChainVerdict {
        if self.tau.is_monotone() {
            return ChainVerdict {
                is_chain: true,
                reason: Some(ChainReason::MonotoneTop),
            };
        }
        let occ = occurrences(&self.sigma, &self.tau);
        let reason = match occ.windows.as_slice() {
            [w] if w.start == 1 => Some(ChainReason::UniquePrefixOccurrence),
            [w] if w.end == self.tau.len() => Some(ChainReason::UniqueSuffixOccurrence),
            _ => None,
        };
        ChainVerdict {
            is_chain: reason.is_some(),
            reason,
        }
    }

    /// Chain test from the structure: every rank has one element.
    pub fn is_chain_structural(&self) -> bool {
        self.rank_sizes().iter().all(|&a| a == 1)
    }

    /// When `σ` occurs exactly once in `τ`, at `[i, j]`, the interval is the
    /// product of chains with `i` and `|τ| - j + 1` elements. Returns those
    /// lengths after checking the isomorphism with the grid explicitly.
    pub fn product_of_two_chains(&self) -> Option<(usize, usize)> {
        let occ = occurrences(&self.sigma, &self.tau);
        let [w] = occ.windows.as_slice() else {
            return None;
        };
        let n = self.tau.len();
        let (left, right) = (w.start, n - w.end + 1);
        if left * right != self.len() {
            return None;
        }
        // φ(a, b): delete a entries on the left and b on the right
        let phi = |a: usize, b: usize| self.id_of(&self.tau.pattern_at(a, n - a - b));
        let mut grid = vec![vec![0; right]; left];
        let mut seen = BitSet::with_capacity(self.len());
        for (a, row) in grid.iter_mut().enumerate() {
            for (b, cell) in row.iter_mut().enumerate() {
                let id = phi(a, b)?;
                if seen.contains(id) {
                    return None;
                }
                seen.insert(id);
                *cell = id;
            }
        }
        for a in 0..left {
            for b in 0..right {
                let mut expected = Vec::new();
                if a + 1 < left {
                    expected.push(grid[a + 1][b]);
                }
                if b + 1 < right {
                    expected.push(grid[a][b + 1]);
                }
                expected.sort_unstable();
                if self.children(grid[a][b]) != expected.as_slice() {
                    return None;
                }
            }
        }
        Some((left, right))
    }

    /// Number of maximal chains, by path counting.
    pub fn count_maximal_chains(&self) -> u128 {
        let mut paths = vec![0u128; self.len()];
        paths[0] = 1;
        for id in 1..self.len() {
            paths[id] = self.children[id].iter().map(|&c| paths[c]).sum();
        }
        paths[self.top()]
    }

    /// Every maximal chain, from `τ` down to `σ`, in lexicographic order of
    /// element ids. Fails when there are more than `cap`.
    pub fn maximal_chains(&self, cap: usize) -> Result<Vec<MaximalChain>> {
        let count = self.count_maximal_chains();
        if count > cap as u128 {
            return Err(Error::TooLarge {
                what: "maximal chains",
                count: usize::try_from(count).unwrap_or(usize::MAX),
                cap,
            });
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut path = vec![self.top()];
        self.collect_chains(&mut path, &mut out);
        Ok(out)
    }

    fn collect_chains(&self, path: &mut Vec<usize>, out: &mut Vec<MaximalChain>) {
        let last = *path.last().unwrap();
        if last == self.bottom() {
            out.push(MaximalChain {
                elements: path.clone(),
            });
            return;
        }
        for &c in &self.children[last] {
            path.push(c);
            self.collect_chains(path, out);
            path.pop();
        }
    }

    /// Facets of the order complex of the open interval: maximal chains with
    /// both endpoints removed. Empty when `N < 2`.
    pub fn order_complex_facets(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        if self.rank() < 2 {
            return Ok(Vec::new());
        }
        Ok(self
            .maximal_chains(cap)?
            .into_iter()
            .map(|c| c.elements[1..c.elements.len() - 1].to_vec())
            .collect())
    }

    pub fn export(&self) -> IntervalExport {
        let ranks = (0..=self.rank())
            .map(|r| self.rank_level(r).map(|id| self.elements[id]).collect())
            .collect();
        let covers = (0..self.len())
            .flat_map(|p| {
                self.children[p]
                    .iter()
                    .map(move |&c| (self.elements[c], self.elements[p]))
            })
            .collect();
        IntervalExport {
            sigma: self.sigma,
            tau: self.tau,
            ranks,
            covers,
        }
    }

    /// Graphviz rendering of the Hasse diagram, edges pointing down.
    pub fn to_dot(&self, compact: bool) -> String {
        self.to_dot_with(compact, |_, _| None)
    }

    /// As [`Interval::to_dot`], with an optional label per `(parent, child)` edge.
    pub fn to_dot_with<F>(&self, compact: bool, mut edge_label: F) -> String
    where
        F: FnMut(usize, usize) -> Option<String>,
    {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "digraph \"[{}, {}]\" {{",
            self.sigma.render(compact),
            self.tau.render(compact)
        );
        let _ = writeln!(s, "  rankdir=TB;");
        for r in (0..=self.rank()).rev() {
            let ids: Vec<String> = self.rank_level(r).map(|i| format!("n{i}")).collect();
            let _ = writeln!(s, "  {{ rank=same; {} }}", ids.join("; "));
        }
        for (id, pi) in self.elements.iter().enumerate() {
            let _ = writeln!(s, "  n{id} [label=\"{}\"];", pi.render(compact));
        }
        for p in (0..self.len()).rev() {
            for &c in &self.children[p] {
                match edge_label(p, c) {
                    Some(l) => {
                        let _ = writeln!(s, "  n{p} -> n{c} [label=\"{l}\"];");
                    }
                    None => {
                        let _ = writeln!(s, "  n{p} -> n{c};");
                    }
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::p;

    fn iv(s: &str, t: &str) -> Interval {
        Interval::new(&p(s), &p(t)).unwrap()
    }

    #[test]
    fn interval_12_213546() {
        let i = iv("12", "213546");
        assert_eq!(i.len(), 10);
        assert_eq!(i.rank_sizes(), vec![1, 3, 3, 2, 1]);
        // each element's covers, counted from the rule "prefix and suffix
        // that still contain 12": 2 + 2 + 2 + 2 + 2 + 2 + 1 + 1 + 1
        assert_eq!(i.cover_count(), 15);
        let level1: Vec<_> = i.rank_level(1).map(|id| *i.element(id)).collect();
        assert_eq!(level1, vec![p("213"), p("123"), p("132")]);
        let id = i.id_of(&p("213")).unwrap();
        assert_eq!(
            i.window_class(id),
            &[Window::new(1, 3).unwrap(), Window::new(4, 6).unwrap()]
        );
        assert!(i.lt(i.id_of(&p("123")).unwrap(), i.id_of(&p("21354")).unwrap()));
        assert!(!i.leq(i.id_of(&p("132")).unwrap(), i.id_of(&p("2134")).unwrap()));
    }

    #[test]
    fn trivial_and_incomparable() {
        let i = iv("2413", "2413");
        assert_eq!(i.len(), 1);
        assert_eq!(i.rank_sizes(), vec![1]);
        assert_eq!(i.count_maximal_chains(), 1);
        assert!(matches!(
            Interval::new(&p("123"), &p("2314")),
            Err(Error::NotComparable { .. })
        ));
        assert!(Interval::new(&p("1234"), &p("123")).is_err());
    }

    #[test]
    fn non_log_concave_ranks() {
        let i = iv("1", "1265473");
        assert_eq!(&i.rank_sizes()[..3], &[1, 2, 5]);
    }

    #[test]
    fn chain_tests() {
        assert!(iv("1", "1234").is_chain().is_chain);
        assert!(!iv("12", "213546").is_chain().is_chain);
        let v = iv("312", "51342").is_chain();
        assert_eq!(v.reason, Some(ChainReason::UniquePrefixOccurrence));
        assert!(iv("312", "51342").is_chain_structural());
    }

    #[test]
    fn product_of_chains() {
        // 21 occurs once in 12 ⊕ 21 ⊕ 1 = 12435, at [3, 4]
        let i = iv("21", "12435");
        assert_eq!(i.product_of_two_chains(), Some((3, 2)));
        assert_eq!(iv("12", "213546").product_of_two_chains(), None);
        // σ unique at [2, 4] in a length-6 host
        let t = p("415236");
        assert_eq!(occurrences(&p("132"), &t).starts(), vec![2]);
        assert_eq!(iv("132", "415236").product_of_two_chains(), Some((2, 3)));
    }

    #[test]
    fn maximal_chains_and_facets() {
        let i = iv("12", "213546");
        let chains = i.maximal_chains(DEFAULT_MAX_CHAINS).unwrap();
        assert_eq!(chains.len(), 8);
        assert!(chains.iter().all(|c| c.elements.len() == i.rank() + 1));
        let facets = i.order_complex_facets(DEFAULT_MAX_CHAINS).unwrap();
        assert_eq!(facets.len(), 8);
        assert!(facets.iter().all(|f| f.len() == 3));
        assert!(matches!(i.maximal_chains(7), Err(Error::TooLarge { .. })));
        assert_eq!(iv("1", "1234").maximal_chains(10).unwrap().len(), 1);

        // 21435 covers 2143 and 1324; both cover 21 in a rank-2 interval
        let j = iv("21", "2143");
        let f = j.order_complex_facets(10).unwrap();
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|v| v.len() == 1));
        assert!(iv("21", "213").order_complex_facets(10).unwrap().is_empty());
    }

    #[test]
    fn export_formats() {
        let i = iv("12", "213546");
        let e = i.export();
        assert_eq!(e.covers.len(), 15);
        assert_eq!(e.ranks[0], vec![p("12")]);
        let json = serde_json::to_string(&e).unwrap();
        assert!(json.starts_with("{\"sigma\":\"1,2\",\"tau\":\"2,1,3,5,4,6\""));
        let back: IntervalExport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
        let dot = i.to_dot(true);
        assert_eq!(dot.matches(" -> ").count(), 15);
        assert_eq!(dot.matches("[label=").count(), 10);
    }
}
