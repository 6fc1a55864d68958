//! Rank-level structure of intervals: breaking rank, unimodality, the
//! rank-to-rank injection, rank-intersecting chains, and Sperner checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Largest interval the k-family oracle will search.
pub const DEFAULT_ORACLE_CAP: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    pub sizes: Vec<usize>,
    /// Largest `r` with `a_r < N + 1 - r`; `None` when every rank is full.
    pub breaking_rank: Option<usize>,
    /// Smallest rank attaining the maximum size.
    pub peak_rank: usize,
}

pub fn rank_profile(interval: &Interval) -> RankProfile {
    let sizes = interval.rank_sizes();
    let n = interval.rank();
    let breaking_rank = (0..=n).rev().find(|&r| sizes[r] < n + 1 - r);
    let max = *sizes.iter().max().unwrap();
    let peak_rank = sizes.iter().position(|&a| a == max).unwrap();
    RankProfile {
        sizes,
        breaking_rank,
        peak_rank,
    }
}

/// Weakly increasing up to some peak, weakly decreasing after it.
pub fn is_unimodal(sizes: &[usize]) -> bool {
    let up = sizes.windows(2).take_while(|w| w[0] <= w[1]).count();
    sizes[up..].windows(2).all(|w| w[0] >= w[1])
}

pub fn is_rank_unimodal(interval: &Interval) -> bool {
    is_unimodal(&interval.rank_sizes())
}

/// An order-increasing injection from some rank-`r` elements into rank `r + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankInjection {
    pub rank: usize,
    /// The unused left endpoint that splits the shift.
    pub k: usize,
    /// `(π, f(π))` as element ids, in the order of the input selection.
    pub map: Vec<(usize, usize)>,
}

fn check_selection(interval: &Interval, r: usize, selection: &[usize]) -> Result<()> {
    let n = interval.rank();
    if r >= n {
        return Err(Error::OutOfRange {
            what: "rank",
            value: r,
            min: 0,
            max: n.saturating_sub(1),
        });
    }
    let level = interval.rank_level(r);
    if let Some(&bad) = selection.iter().find(|&&id| !level.contains(&id)) {
        return Err(Error::Precondition(format!(
            "element {bad} is not of rank {r}"
        )));
    }
    let mut sorted = selection.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != selection.len() {
        return Err(Error::Precondition(
            "selection has repeated elements".into(),
        ));
    }
    if selection.len() > n - r {
        return Err(Error::Precondition(format!(
            "selection of {} rank-{r} elements exceeds N - r = {}",
            selection.len(),
            n - r
        )));
    }
    Ok(())
}

fn left_endpoints(interval: &Interval, selection: &[usize]) -> Vec<usize> {
    selection
        .iter()
        .map(|&id| interval.window_class(id)[0].start)
        .collect()
}

/// The injection with the smallest admissible `k`.
pub fn rank_injection(interval: &Interval, r: usize, selection: &[usize]) -> Result<RankInjection> {
    check_selection(interval, r, selection)?;
    let starts = left_endpoints(interval, selection);
    let s = interval.sigma().len() - 1 + r;
    let k = (1..=interval.tau().len() - s)
        .find(|k| !starts.contains(k))
        .ok_or_else(|| Error::Internal("no free left endpoint".into()))?;
    rank_injection_with_k(interval, r, selection, k)
}

/// The injection for a given free left endpoint `k`: the representative
/// `[i, i+s]` with the smallest `i` goes to `[i, i+s+1]` when `i < k`
/// and to `[i-1, i+s]` when `i > k`.
pub fn rank_injection_with_k(
    interval: &Interval,
    r: usize,
    selection: &[usize],
    k: usize,
) -> Result<RankInjection> {
    check_selection(interval, r, selection)?;
    let starts = left_endpoints(interval, selection);
    let s = interval.sigma().len() - 1 + r;
    if k == 0 || k > interval.tau().len() - s || starts.contains(&k) {
        return Err(Error::Precondition(format!(
            "k = {k} is not a free left endpoint"
        )));
    }
    let tau = interval.tau();
    let mut map = Vec::with_capacity(selection.len());
    for (&id, &i) in selection.iter().zip(&starts) {
        let f = if i < k { i } else { i - 1 };
        let image = tau.pattern_at(f - 1, s + 2);
        let target = interval
            .id_of(&image)
            .ok_or_else(|| Error::Internal(format!("{image} missing from the interval")))?;
        if !interval.lt(id, target) {
            return Err(Error::Internal(format!("image {image} does not lie above")));
        }
        map.push((id, target));
    }
    let mut images: Vec<usize> = map.iter().map(|&(_, t)| t).collect();
    images.sort_unstable();
    images.dedup();
    if images.len() != map.len() {
        return Err(Error::Internal("rank injection is not injective".into()));
    }
    Ok(RankInjection { rank: r, k, map })
}

/// Disjoint chains, each meeting every rank in `first_rank..=last_rank` once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainFamily {
    /// Element ids, bottom to top.
    pub chains: Vec<Vec<usize>>,
    pub first_rank: usize,
    pub last_rank: usize,
}

impl ChainFamily {
    /// Disjointness, one element per spanned rank, and order along each chain.
    pub fn is_valid(&self, interval: &Interval) -> bool {
        let mut used = vec![false; interval.len()];
        self.chains.iter().all(|c| {
            c.len() == self.last_rank - self.first_rank + 1
                && c.iter()
                    .enumerate()
                    .all(|(j, &e)| interval.rank_of(e) == self.first_rank + j)
                && c.windows(2).all(|w| interval.lt(w[0], w[1]))
                && c.iter().all(|&e| !std::mem::replace(&mut used[e], true))
        })
    }
}

/// The `i` largest rank levels as a consecutive block `[r1, r2]` whose
/// smallest level sits at one end; the first such block in rank order.
pub fn largest_rank_block(sizes: &[usize], i: usize) -> Option<(usize, usize)> {
    if i == 0 || i > sizes.len() {
        return None;
    }
    (0..=sizes.len() - i).find_map(|r1| {
        let r2 = r1 + i - 1;
        let inside = &sizes[r1..=r2];
        let min = *inside.iter().min().unwrap();
        let outside_max = sizes[..r1].iter().chain(&sizes[r2 + 1..]).max().copied();
        let ok = outside_max.is_none_or(|m| min >= m) && min == sizes[r1].min(sizes[r2]);
        ok.then_some((r1, r2))
    })
}

/// `ℓ_i` disjoint chains through the `i` largest rank levels, built by
/// applying the rank injection from the lowest of those ranks upward.
pub fn rank_intersecting_chains(interval: &Interval, i: usize) -> Result<ChainFamily> {
    let sizes = interval.rank_sizes();
    if i == 0 || i > sizes.len() {
        return Err(Error::OutOfRange {
            what: "i",
            value: i,
            min: 1,
            max: sizes.len(),
        });
    }
    let (r1, r2) = largest_rank_block(&sizes, i)
        .ok_or_else(|| Error::Internal("rank sizes are not unimodal".into()))?;
    let width = sizes[r1].min(sizes[r2]);
    let mut chains: Vec<Vec<usize>> = interval
        .rank_level(r1)
        .take(width)
        .map(|e| vec![e])
        .collect();
    for r in r1..r2 {
        let tops: Vec<usize> = chains.iter().map(|c| *c.last().unwrap()).collect();
        let inj = rank_injection(interval, r, &tops)?;
        for (c, (_, t)) in chains.iter_mut().zip(inj.map) {
            c.push(t);
        }
    }
    let family = ChainFamily {
        chains,
        first_rank: r1,
        last_rank: r2,
    };
    if !family.is_valid(interval) {
        return Err(Error::Internal(
            "rank-intersecting chains are invalid".into(),
        ));
    }
    Ok(family)
}

struct KFamilySearch<'a> {
    below: &'a [u64],
    k: usize,
    height: Vec<usize>,
    best: usize,
}

impl KFamilySearch<'_> {
    fn run(&mut self, next: usize, chosen: u64, count: usize) {
        let total = self.below.len();
        if count + (total - next) <= self.best {
            return;
        }
        if next == total {
            self.best = count;
            return;
        }
        let mut bits = self.below[next] & chosen;
        let mut h = 0;
        while bits != 0 {
            h = h.max(self.height[bits.trailing_zeros() as usize]);
            bits &= bits - 1;
        }
        if h < self.k {
            self.height[next] = h + 1;
            self.run(next + 1, chosen | 1 << next, count + 1);
        }
        self.run(next + 1, chosen, count);
    }
}

fn sum_of_largest(sizes: &[usize], k: usize) -> usize {
    let mut s = sizes.to_vec();
    s.sort_unstable_by(|a, b| b.cmp(a));
    s.iter().take(k).sum()
}

fn longest_chain_in(interval: &Interval, members: &[bool]) -> usize {
    let mut h = vec![0usize; interval.len()];
    let mut best = 0;
    for id in 0..interval.len() {
        if members[id] {
            h[id] = 1 + interval
                .strictly_below(id)
                .filter(|&q| members[q])
                .map(|q| h[q])
                .max()
                .unwrap_or(0);
            best = best.max(h[id]);
        }
    }
    best
}

fn check_oracle_cap(interval: &Interval, cap: usize) -> Result<()> {
    let cap = cap.min(64);
    if interval.len() > cap {
        return Err(Error::TooLarge {
            what: "interval elements",
            count: interval.len(),
            cap,
        });
    }
    Ok(())
}

/// Size of the largest subset containing no chain of `k + 1` elements, by
/// exhaustive branch and bound. The search is seeded with the union of the
/// `k` largest rank levels.
pub fn max_k_family_oracle(interval: &Interval, k: usize, cap: usize) -> Result<usize> {
    check_oracle_cap(interval, cap)?;
    if k == 0 {
        return Ok(0);
    }
    let below: Vec<u64> = (0..interval.len())
        .map(|id| interval.strictly_below(id).fold(0u64, |m, q| m | 1 << q))
        .collect();
    let sizes = interval.rank_sizes();
    let mut order: Vec<usize> = (0..sizes.len()).collect();
    order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));
    let mut seed = vec![false; interval.len()];
    for &r in order.iter().take(k) {
        for id in interval.rank_level(r) {
            seed[id] = true;
        }
    }
    if longest_chain_in(interval, &seed) > k {
        return Err(Error::Internal(
            "k rank levels contain a (k+1)-chain".into(),
        ));
    }
    let mut search = KFamilySearch {
        below: &below,
        k,
        height: vec![0; interval.len()],
        best: seed.iter().filter(|&&b| b).count(),
    };
    search.run(0, 0, 0);
    Ok(search.best)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpernerMethod {
    /// Every `k` checked against the exhaustive oracle, plus the chain construction.
    Oracle,
    /// Interval above the oracle cap: unimodality and the chain construction only.
    Constructive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpernerVerdict {
    pub strongly_sperner: bool,
    pub method: SpernerMethod,
    /// First `k` at which the check failed.
    pub failing_k: Option<usize>,
}

pub fn is_strongly_sperner(interval: &Interval, cap: usize) -> Result<SpernerVerdict> {
    let sizes = interval.rank_sizes();
    let levels = sizes.len();
    let constructive = is_unimodal(&sizes)
        && (1..=levels).all(|i| {
            rank_intersecting_chains(interval, i).is_ok_and(|f| {
                f.chains.len() == sum_of_largest(&sizes, i) - sum_of_largest(&sizes, i - 1)
            })
        });
    if interval.len() > cap.min(64) {
        return Ok(SpernerVerdict {
            strongly_sperner: constructive,
            method: SpernerMethod::Constructive,
            failing_k: None,
        });
    }
    for k in 1..=levels {
        if max_k_family_oracle(interval, k, cap)? != sum_of_largest(&sizes, k) {
            return Ok(SpernerVerdict {
                strongly_sperner: false,
                method: SpernerMethod::Oracle,
                failing_k: Some(k),
            });
        }
    }
    Ok(SpernerVerdict {
        strongly_sperner: constructive,
        method: SpernerMethod::Oracle,
        failing_k: None,
    })
}

fn maximum_antichains(interval: &Interval) -> Vec<Vec<usize>> {
    fn go(
        interval: &Interval,
        next: usize,
        current: &mut Vec<usize>,
        best: &mut usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        let left = interval.len() - next;
        if current.len() + left < *best {
            return;
        }
        if next == interval.len() {
            if current.len() > *best {
                *best = current.len();
                out.clear();
            }
            out.push(current.clone());
            return;
        }
        if current.iter().all(|&c| !interval.comparable(c, next)) {
            current.push(next);
            go(interval, next + 1, current, best, out);
            current.pop();
        }
        go(interval, next + 1, current, best, out);
    }
    let mut out = Vec::new();
    let mut best = 0;
    go(interval, 0, &mut Vec::new(), &mut best, &mut out);
    out
}

/// A maximum-size antichain that is not a full rank level, if any.
/// Capped like the k-family oracle.
pub fn strictly_sperner_witness(interval: &Interval, cap: usize) -> Result<Option<Vec<usize>>> {
    check_oracle_cap(interval, cap)?;
    Ok(maximum_antichains(interval).into_iter().find(|a| {
        let r = interval.rank_of(a[0]);
        !interval.rank_level(r).eq(a.iter().copied())
    }))
}

/// Every antichain of maximum size is a rank level.
pub fn is_strictly_sperner(interval: &Interval, cap: usize) -> Result<bool> {
    Ok(strictly_sperner_witness(interval, cap)?.is_none())
}

/// Every pair of elements has a least upper bound and a greatest lower bound.
pub fn is_lattice(interval: &Interval) -> bool {
    let n = interval.len();
    let up: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).filter(|&c| interval.leq(a, c)).collect())
        .collect();
    let down: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).filter(|&c| interval.leq(c, a)).collect())
        .collect();
    let has_extreme = |common: Vec<usize>, least: bool| {
        common.iter().any(|&u| {
            common.iter().all(|&c| {
                if least {
                    interval.leq(u, c)
                } else {
                    interval.leq(c, u)
                }
            })
        })
    };
    for a in 0..n {
        for b in a + 1..n {
            if interval.comparable(a, b) {
                continue;
            }
            let ub: Vec<usize> = up[a]
                .iter()
                .copied()
                .filter(|c| up[b].contains(c))
                .collect();
            let lb: Vec<usize> = down[a]
                .iter()
                .copied()
                .filter(|c| down[b].contains(c))
                .collect();
            if !has_extreme(ub, true) || !has_extreme(lb, false) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::p;

    fn iv(s: &str, t: &str) -> Interval {
        Interval::new(&p(s), &p(t)).unwrap()
    }

    #[test]
    fn profiles() {
        let prof = rank_profile(&iv("12", "213546"));
        assert_eq!(prof.sizes, vec![1, 3, 3, 2, 1]);
        assert_eq!(prof.breaking_rank, Some(1));
        assert_eq!(prof.peak_rank, 1);

        let chain = rank_profile(&iv("1", "1234"));
        assert_eq!(chain.sizes, vec![1; 4]);
        assert_eq!(chain.breaking_rank, Some(2));

        let grid = rank_profile(&iv("132", "415236"));
        assert_eq!(
            (grid.sizes, grid.breaking_rank),
            (vec![1, 2, 2, 1], Some(1))
        );
        assert_eq!(rank_profile(&iv("21", "21")).breaking_rank, None);

        let i = iv("1", "1265473");
        assert_eq!(&i.rank_sizes()[..3], &[1, 2, 5]);
        assert!(is_rank_unimodal(&i));
        assert!(is_unimodal(&[1]));
        assert!(!is_unimodal(&[2, 1, 2]));
    }

    #[test]
    fn injection_examples() {
        let i = iv("12", "213546");
        let id = |s| i.id_of(&p(s)).unwrap();

        let inj = rank_injection(&i, 1, &[id("213"), id("132")]).unwrap();
        assert_eq!(inj.k, 2);
        assert_eq!(
            inj.map,
            vec![(id("213"), id("2134")), (id("132"), id("1243"))]
        );

        let inj = rank_injection(&i, 2, &[id("2134"), id("1243")]).unwrap();
        assert_eq!(inj.k, 3);
        assert_eq!(
            inj.map,
            vec![(id("2134"), id("21354")), (id("1243"), id("12435"))]
        );

        assert!(rank_injection(&i, 1, &[]).unwrap().map.is_empty());
        assert!(matches!(
            rank_injection(&i, 3, &[id("21354"), id("12435")]),
            Err(Error::Precondition(_))
        ));
        assert!(rank_injection_with_k(&i, 1, &[id("213")], 1).is_err());
    }

    #[test]
    fn chain_families() {
        let i = iv("12", "213546");
        let f = rank_intersecting_chains(&i, 3).unwrap();
        assert_eq!((f.first_rank, f.last_rank), (1, 3));
        assert_eq!(f.chains.len(), 2);
        assert!(f.is_valid(&i));

        let f = rank_intersecting_chains(&i, 1).unwrap();
        assert_eq!(f.chains.len(), 3);

        let c = iv("1", "1234");
        for k in 1..=4 {
            assert_eq!(rank_intersecting_chains(&c, k).unwrap().chains.len(), 1);
        }
    }

    #[test]
    fn k_family_oracle() {
        let i = iv("12", "213546");
        assert_eq!(max_k_family_oracle(&i, 1, 22).unwrap(), 3);
        assert_eq!(max_k_family_oracle(&i, 5, 22).unwrap(), i.len());
        let small = iv("12", "12543");
        assert_eq!(max_k_family_oracle(&small, 1, 22).unwrap(), 2);
        assert!(matches!(
            max_k_family_oracle(&i, 1, 5),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn sperner() {
        let v = is_strongly_sperner(&iv("12", "213546"), 22).unwrap();
        assert!(v.strongly_sperner);
        assert_eq!(v.method, SpernerMethod::Oracle);

        let i = iv("12", "12543");
        assert_eq!(i.rank_sizes(), vec![1, 2, 2, 1]);
        assert!(is_strongly_sperner(&i, 22).unwrap().strongly_sperner);
        let w = strictly_sperner_witness(&i, 22).unwrap().unwrap();
        let mut w: Vec<_> = w.iter().map(|&e| *i.element(e)).collect();
        w.sort();
        assert_eq!(w, vec![p("123"), p("1432")]);
        assert!(!is_strictly_sperner(&i, 22).unwrap());

        let v = is_strongly_sperner(&iv("1", "1234"), 2).unwrap();
        assert_eq!(v.method, SpernerMethod::Constructive);
        assert!(v.strongly_sperner);
    }

    #[test]
    fn lattices() {
        assert!(is_lattice(&iv("132", "415236")));
        for t in crate::enumerate::permutations(4) {
            let expected = t.prefix(3).unwrap().is_monotone() || t.suffix(3).unwrap().is_monotone();
            assert_eq!(
                is_lattice(&iv("1", &t.to_compact().unwrap())),
                expected,
                "{t}"
            );
        }
    }
}
