//! Disconnectivity and shellability of intervals.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{Interval, MaximalChain};
use crate::perm::{contains, Matcher, Permutation, Window};

/// Default cap on maximal chains for the labeling checks.
pub const DEFAULT_MAX_CL_CHAINS: usize = 500;

/// Facet count up to which a failed label order falls back to trying every
/// facet order.
pub const EXHAUSTIVE_SHELLING_FACETS: usize = 8;

/// `σ` occurs in `τ` exactly twice: as a prefix and as a suffix.
pub fn straddles(sigma: &Permutation, tau: &Permutation) -> bool {
    if sigma.len() >= tau.len() {
        return false;
    }
    let m = Matcher::new(sigma);
    let host = tau.as_slice();
    let last = tau.len() - sigma.len();
    m.matches_at(host, 0) && m.matches_at(host, last) && m.offsets_in(host).count() == 2
}

/// Connected components of the Hasse graph of the open interval, each
/// sorted by id; components ordered by their smallest id.
pub fn open_interval_components(interval: &Interval) -> Vec<Vec<usize>> {
    let (bottom, top) = (interval.bottom(), interval.top());
    let mut seen = vec![false; interval.len()];
    let mut out = Vec::new();
    for start in 0..interval.len() {
        if start == bottom || start == top || seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in interval.children(v).iter().chain(interval.parents(v)) {
                if w != bottom && w != top && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Whether the open interval is disconnected.
///
/// For rank at least 3 the straddle test is cross-checked against the
/// Hasse graph; a disagreement is reported as [`Error::Internal`].
pub fn is_disconnected(interval: &Interval) -> Result<bool> {
    let n = interval.rank();
    if n < 2 {
        return Ok(false);
    }
    let by_graph = open_interval_components(interval).len() >= 2;
    if n == 2 {
        return Ok(by_graph);
    }
    let by_straddle = straddles(interval.sigma(), interval.tau());
    if by_straddle != by_graph {
        return Err(Error::Internal(format!(
            "straddle test ({by_straddle}) and component count disagree on [{}, {}]",
            interval.sigma(),
            interval.tau()
        )));
    }
    Ok(by_straddle)
}

/// A disconnected subinterval `[π, red(τ restricted to window)]` of rank at least 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisconnectionWitness {
    pub pi: Permutation,
    pub window: Window,
}

impl DisconnectionWitness {
    /// The top of the witnessing subinterval.
    pub fn top(&self, tau: &Permutation) -> Result<Permutation> {
        tau.window(self.window)
    }
}

/// First pair of adjacent occurrences offset by at least 3.
fn spaced_pair(class: &[Window]) -> Option<Window> {
    class
        .windows(2)
        .find(|w| w[1].start - w[0].start >= 3)
        .map(|w| Window {
            start: w[0].start,
            end: w[1].end,
        })
}

/// Search every `π` of the interval for two adjacent occurrences in `τ`
/// offset by at least 3. Elements are tried in id order.
pub fn find_disconnected_subinterval(interval: &Interval) -> Option<DisconnectionWitness> {
    (0..interval.len()).find_map(|id| {
        spaced_pair(interval.window_class(id)).map(|window| DisconnectionWitness {
            pi: *interval.element(id),
            window,
        })
    })
}

/// As [`find_disconnected_subinterval`] but restricted to `[x(τ), τ]`.
///
/// Only valid for `σ = 1` with `|x(τ)| != 2`; otherwise a precondition error.
pub fn find_disconnected_subinterval_above_exterior(
    interval: &Interval,
) -> Result<Option<DisconnectionWitness>> {
    let tau = interval.tau();
    if interval.sigma().len() != 1 || tau.len() < 2 || tau.exterior_len()? == 2 {
        return Err(Error::Precondition(
            "the restricted search needs σ = 1 and |x(τ)| != 2".into(),
        ));
    }
    let x = interval
        .id_of(&tau.exterior()?)
        .ok_or_else(|| Error::Internal("exterior missing from [1, τ]".into()))?;
    Ok((x..interval.len())
        .filter(|&id| interval.leq(x, id))
        .find_map(|id| {
            spaced_pair(interval.window_class(id)).map(|window| DisconnectionWitness {
                pi: *interval.element(id),
                window,
            })
        }))
}

/// Whether `[σ, τ]` contains a disconnected subinterval of rank at least 3,
/// computed from the windows of `τ` without building the interval.
pub fn has_disconnected_subinterval(sigma: &Permutation, tau: &Permutation) -> bool {
    find_disconnected_window(sigma, tau).is_some()
}

/// Window-level search behind [`has_disconnected_subinterval`]; scans
/// pattern lengths upward.
pub fn find_disconnected_window(
    sigma: &Permutation,
    tau: &Permutation,
) -> Option<DisconnectionWitness> {
    let n = tau.len();
    let m = sigma.len();
    if n < m + 3 {
        return None;
    }
    let matcher = Matcher::new(sigma);
    let host = tau.as_slice();
    // contains_row[o]: does the window at offset o of the current length contain σ?
    let mut contains_row: Vec<bool> = (0..=n - m).map(|o| matcher.matches_at(host, o)).collect();
    for len in m..=n - 3 {
        if len > m {
            contains_row = (0..=n - len)
                .map(|o| contains_row[o] || contains_row[o + 1])
                .collect();
        }
        let mut last: HashMap<Permutation, usize> = HashMap::new();
        for (o, &keep) in contains_row.iter().enumerate() {
            if !keep {
                continue;
            }
            let pi = tau.pattern_at(o, len);
            if let Some(prev) = last.insert(pi, o) {
                if o - prev >= 3 {
                    return Some(DisconnectionWitness {
                        pi,
                        window: Window {
                            start: prev + 1,
                            end: o + len,
                        },
                    });
                }
            }
        }
    }
    None
}

/// An edge label `base - eps_mult·ε` for a fixed small symbolic `ε > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainLabel {
    pub base: u8,
    pub eps_mult: u32,
}

impl ChainLabel {
    pub const ZERO: ChainLabel = ChainLabel {
        base: 0,
        eps_mult: 0,
    };
    pub const ONE: ChainLabel = ChainLabel {
        base: 1,
        eps_mult: 0,
    };
}

impl Ord for ChainLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.base
            .cmp(&other.base)
            .then(other.eps_mult.cmp(&self.eps_mult))
    }
}

impl PartialOrd for ChainLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ChainLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.base, self.eps_mult) {
            (b, 0) => write!(f, "{b}"),
            (b, 1) => write!(f, "{b}-e"),
            (b, k) => write!(f, "{b}-{k}e"),
        }
    }
}

/// A maximal chain with its labels, both read from `τ` down to `σ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledChain {
    pub chain: MaximalChain,
    pub labels: Vec<ChainLabel>,
}

fn first_pass(upper: &Permutation, lower: &Permutation) -> ChainLabel {
    // deleting the leftmost entry; monotone tops land here too
    if upper.pattern_at(1, upper.len() - 1) == *lower {
        ChainLabel::ZERO
    } else {
        ChainLabel::ONE
    }
}

/// Labels for a top segment of a chain, given as permutations from the top.
fn label_path(path: &[Permutation]) -> Result<Vec<ChainLabel>> {
    let mut labels: Vec<ChainLabel> = path.windows(2).map(|e| first_pass(&e[0], &e[1])).collect();
    for t in 2..path.len() {
        if !straddles(&path[t], &path[t - 2]) {
            continue;
        }
        let (upper, lower) = (labels[t - 2], labels[t - 1]);
        if upper == ChainLabel::ZERO && lower == ChainLabel::ZERO {
            continue;
        }
        if upper.base == 0 || lower.base == 0 {
            return Err(Error::Internal(format!(
                "mixed labels at straddling triple {} > {} > {}",
                path[t - 2],
                path[t - 1],
                path[t]
            )));
        }
        labels[t - 1] = ChainLabel {
            base: upper.base,
            eps_mult: upper.eps_mult + 1,
        };
    }
    Ok(labels)
}

fn check_chain(interval: &Interval, chain: &MaximalChain) -> Result<()> {
    let e = &chain.elements;
    let ok = e.first() == Some(&interval.top())
        && e.last() == Some(&interval.bottom())
        && e.len() == interval.rank() + 1
        && e.windows(2)
            .all(|w| w[0] < interval.len() && interval.children(w[0]).contains(&w[1]));
    if ok {
        Ok(())
    } else {
        Err(Error::NotAChain(format!("{:?}", chain.elements)))
    }
}

/// The chain-dependent labels of a maximal chain of the interval.
pub fn cl_labels(interval: &Interval, chain: &MaximalChain) -> Result<LabeledChain> {
    check_chain(interval, chain)?;
    let path = chain.permutations(interval);
    Ok(LabeledChain {
        chain: chain.clone(),
        labels: label_path(&path)?,
    })
}

/// Every maximal chain with its labels, in chain enumeration order.
pub fn all_labeled_chains(interval: &Interval, cap: usize) -> Result<Vec<LabeledChain>> {
    interval
        .maximal_chains(cap)?
        .into_iter()
        .map(|c| {
            let path = c.permutations(interval);
            Ok(LabeledChain {
                labels: label_path(&path)?,
                chain: c,
            })
        })
        .collect()
}

fn weakly_increasing(labels: &[ChainLabel]) -> bool {
    labels.windows(2).all(|w| w[0] <= w[1])
}

/// A rooted subinterval `[α, β]_r` on which the labeling fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedViolation {
    /// The root `r`, from `τ` down to `β`.
    pub root: Vec<Permutation>,
    pub alpha: Permutation,
    pub beta: Permutation,
    pub increasing_chains: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClVerdict {
    pub verified: bool,
    pub rooted_intervals_checked: usize,
    pub counterexample: Option<RootedViolation>,
}

#[derive(Default)]
struct SegmentStats {
    increasing: usize,
    least: Option<Vec<ChainLabel>>,
    least_count: usize,
    least_increasing: bool,
}

/// Check the dual CL conditions on every top-rooted subinterval: exactly one
/// weakly increasing chain, and it is lexicographically first.
pub fn verify_dual_cl(interval: &Interval, cap: usize) -> Result<ClVerdict> {
    let chains = all_labeled_chains(interval, cap)?;
    // key: (root ids from τ to β, α); segments deduplicated by their ids
    let mut stats: HashMap<(Vec<usize>, usize), SegmentStats> = HashMap::new();
    let mut seen: HashSet<(Vec<usize>, usize, Vec<usize>)> = HashSet::new();
    for lc in &chains {
        let e = &lc.chain.elements;
        for p in 0..e.len() {
            for q in p + 2..e.len() {
                let root = e[..=p].to_vec();
                if !seen.insert((root.clone(), e[q], e[p..=q].to_vec())) {
                    continue;
                }
                let seg = &lc.labels[p..q];
                let inc = weakly_increasing(seg);
                let s = stats.entry((root, e[q])).or_default();
                s.increasing += usize::from(inc);
                match s.least.as_deref().map(|l| seg.cmp(l)) {
                    None | Some(Ordering::Less) => {
                        s.least = Some(seg.to_vec());
                        s.least_count = 1;
                        s.least_increasing = inc;
                    }
                    Some(Ordering::Equal) => s.least_count += 1,
                    Some(Ordering::Greater) => {}
                }
            }
        }
    }
    let checked = stats.len();
    let mut bad: Vec<_> = stats
        .into_iter()
        .filter(|(_, s)| !(s.increasing == 1 && s.least_increasing && s.least_count == 1))
        .collect();
    bad.sort_by(|a, b| (a.0 .0.len(), &a.0).cmp(&(b.0 .0.len(), &b.0)));
    let counterexample = bad
        .into_iter()
        .next()
        .map(|((root, alpha), s)| RootedViolation {
            beta: *interval.element(*root.last().unwrap()),
            root: root.iter().map(|&i| *interval.element(i)).collect(),
            alpha: *interval.element(alpha),
            increasing_chains: s.increasing,
        });
    Ok(ClVerdict {
        verified: counterexample.is_none(),
        rooted_intervals_checked: checked,
        counterexample,
    })
}

/// Shellable iff no disconnected subinterval of rank at least 3.
pub fn is_shellable(interval: &Interval) -> bool {
    find_disconnected_subinterval(interval).is_none()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShellingMethod {
    LabelOrder,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShellingVerdict {
    pub is_shelling: bool,
    pub method: ShellingMethod,
    pub facets: usize,
    /// A shelling order as facet indices into the label order, when found.
    pub order: Option<Vec<usize>>,
}

/// Whether facet `k` may follow `earlier` in a shelling: its intersection
/// with the union of the earlier facets is pure of codimension one.
fn extends_shelling(facets: &[Vec<usize>], earlier: &[usize], k: usize) -> bool {
    if earlier.is_empty() {
        return true;
    }
    let fk = &facets[k];
    let inter: Vec<BTreeSet<usize>> = earlier
        .iter()
        .map(|&i| {
            facets[i]
                .iter()
                .filter(|v| fk.contains(v))
                .copied()
                .collect()
        })
        .collect();
    let ridge: Vec<usize> = fk
        .iter()
        .copied()
        .filter(|v| {
            inter
                .iter()
                .any(|s| s.len() + 1 == fk.len() && !s.contains(v))
        })
        .collect();
    !ridge.is_empty() && inter.iter().all(|s| ridge.iter().any(|v| !s.contains(v)))
}

fn is_shelling(facets: &[Vec<usize>], order: &[usize]) -> bool {
    (0..order.len()).all(|k| extends_shelling(facets, &order[..k], order[k]))
}

fn search_shelling(facets: &[Vec<usize>], order: &mut Vec<usize>, used: &mut [bool]) -> bool {
    if order.len() == facets.len() {
        return true;
    }
    for k in 0..facets.len() {
        if used[k] || !extends_shelling(facets, order, k) {
            continue;
        }
        used[k] = true;
        order.push(k);
        if search_shelling(facets, order, used) {
            return true;
        }
        order.pop();
        used[k] = false;
    }
    false
}

/// Order the facets of the order complex by their label sequences and
/// check the shelling condition directly. If that order fails and there
/// are at most [`EXHAUSTIVE_SHELLING_FACETS`] facets, every order is tried.
pub fn verify_shelling_order(interval: &Interval, cap: usize) -> Result<ShellingVerdict> {
    let mut chains = all_labeled_chains(interval, cap)?;
    chains.sort_by(|a, b| a.labels.cmp(&b.labels).then(a.chain.cmp(&b.chain)));
    let facets: Vec<Vec<usize>> = if interval.rank() < 2 {
        Vec::new()
    } else {
        chains
            .iter()
            .map(|c| {
                let e = &c.chain.elements;
                let mut f = e[1..e.len() - 1].to_vec();
                f.sort_unstable();
                f
            })
            .collect()
    };
    let identity: Vec<usize> = (0..facets.len()).collect();
    if is_shelling(&facets, &identity) {
        return Ok(ShellingVerdict {
            is_shelling: true,
            method: ShellingMethod::LabelOrder,
            facets: facets.len(),
            order: Some(identity),
        });
    }
    if facets.len() > EXHAUSTIVE_SHELLING_FACETS {
        return Ok(ShellingVerdict {
            is_shelling: false,
            method: ShellingMethod::LabelOrder,
            facets: facets.len(),
            order: None,
        });
    }
    let mut order = Vec::new();
    let mut used = vec![false; facets.len()];
    let found = search_shelling(&facets, &mut order, &mut used);
    Ok(ShellingVerdict {
        is_shelling: found,
        method: ShellingMethod::Exhaustive,
        facets: facets.len(),
        order: found.then_some(order),
    })
}

/// Whether `a < b` and `c < d` induce a disjoint sum of two 2-chains.
pub fn is_two_plus_two(interval: &Interval, [a, b, c, d]: [usize; 4]) -> bool {
    interval.lt(a, b)
        && interval.lt(c, d)
        && [a, b]
            .iter()
            .all(|&x| [c, d].iter().all(|&y| !interval.comparable(x, y)))
}

/// `None` when the interval has no induced `2 + 2`; otherwise a witness
/// `[a, b, c, d]` with `a < b`, `c < d`.
pub fn two_plus_two_witness(interval: &Interval) -> Option<[usize; 4]> {
    let pairs: Vec<(usize, usize)> = (0..interval.len())
        .flat_map(|b| interval.strictly_below(b).map(move |a| (a, b)))
        .collect();
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for &(c, d) in &pairs[i + 1..] {
            if is_two_plus_two(interval, [a, b, c, d]) {
                return Some([a, b, c, d]);
            }
        }
    }
    None
}

pub fn is_two_plus_two_free(interval: &Interval) -> bool {
    two_plus_two_witness(interval).is_none()
}

/// Hasse diagram with each edge annotated by the labels it carries across
/// all maximal chains.
pub fn to_dot_labeled(interval: &Interval, compact: bool, cap: usize) -> Result<String> {
    let mut edge_labels: HashMap<(usize, usize), BTreeSet<ChainLabel>> = HashMap::new();
    for lc in all_labeled_chains(interval, cap)? {
        for (e, l) in lc.chain.elements.windows(2).zip(&lc.labels) {
            edge_labels.entry((e[0], e[1])).or_default().insert(*l);
        }
    }
    Ok(interval.to_dot_with(compact, |p, c| {
        edge_labels.get(&(p, c)).map(|ls| {
            ls.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        })
    }))
}

/// Whether `σ <= τ` and the windows of `τ` witness a disconnected subinterval;
/// false when `σ` is not contained in `τ`.
pub fn contains_disconnected_subinterval(sigma: &Permutation, tau: &Permutation) -> bool {
    contains(sigma, tau) && has_disconnected_subinterval(sigma, tau)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::p;

    fn iv(s: &str, t: &str) -> Interval {
        Interval::new(&p(s), &p(t)).unwrap()
    }

    #[test]
    fn straddle_examples() {
        assert!(straddles(&p("213"), &p("213546")));
        let s = p("2413");
        assert!(straddles(&s, &s.direct_sum(&s).unwrap()));
        assert!(!straddles(&p("1"), &p("213")));
        assert!(!straddles(&p("12"), &p("213546")));
    }

    #[test]
    fn disconnected_examples() {
        let i = iv("213", "213546");
        assert!(is_disconnected(&i).unwrap());
        let comps = open_interval_components(&i);
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.len() == 2));
        assert!(!is_disconnected(&iv("12", "213546")).unwrap());
        assert!(is_disconnected(&iv("21", "21354")).unwrap());
        assert!(is_disconnected(&iv("21", "2143")).unwrap());
        assert!(!is_disconnected(&iv("21", "213")).unwrap());
    }

    #[test]
    fn subinterval_examples() {
        let w = find_disconnected_subinterval(&iv("1", "2143576")).unwrap();
        assert_eq!(w.pi, p("21"));
        assert_eq!(w.window, Window::new(3, 7).unwrap());
        assert_eq!(w.top(&p("2143576")).unwrap(), p("21354"));

        assert_eq!(find_disconnected_subinterval(&iv("1", "68372514")), None);

        let w = find_disconnected_subinterval(&iv("1", "1325746")).unwrap();
        assert_eq!((w.pi, w.top(&p("1325746")).unwrap()), (p("21"), p("21453")));
        // x(τ) = 12, so the restricted search does not apply
        assert!(find_disconnected_subinterval_above_exterior(&iv("1", "1325746")).is_err());

        let w = find_disconnected_subinterval(&iv("12", "213546")).unwrap();
        assert_eq!((w.pi, w.window), (p("213"), Window::new(1, 6).unwrap()));
    }

    #[test]
    fn window_search_matches_interval_search() {
        for t in ["2143576", "68372514", "1325746", "213546", "214356"] {
            for s in ["1", "12", "21", "213"] {
                let (s, t) = (p(s), p(t));
                let Ok(i) = Interval::new(&s, &t) else {
                    assert!(!contains_disconnected_subinterval(&s, &t));
                    continue;
                };
                assert_eq!(
                    has_disconnected_subinterval(&s, &t),
                    find_disconnected_subinterval(&i).is_some(),
                    "[{s}, {t}]"
                );
            }
        }
    }

    #[test]
    fn label_order_and_display() {
        let one_e = ChainLabel {
            base: 1,
            eps_mult: 1,
        };
        let one_2e = ChainLabel {
            base: 1,
            eps_mult: 2,
        };
        assert!(ChainLabel::ZERO < one_2e && one_2e < one_e && one_e < ChainLabel::ONE);
        assert_eq!(
            [ChainLabel::ZERO, ChainLabel::ONE, one_e, one_2e].map(|l| l.to_string()),
            ["0", "1", "1-e", "1-2e"]
        );
    }

    fn chain_of(i: &Interval, perms: &[&str]) -> MaximalChain {
        MaximalChain {
            elements: perms.iter().map(|s| i.id_of(&p(s)).unwrap()).collect(),
        }
    }

    #[test]
    fn labels_on_21_214356() {
        let i = iv("21", "214356");
        let one_e = ChainLabel {
            base: 1,
            eps_mult: 1,
        };
        let one_2e = ChainLabel {
            base: 1,
            eps_mult: 2,
        };
        let c = chain_of(&i, &["214356", "21435", "2143", "213", "21"]);
        let l = cl_labels(&i, &c).unwrap().labels;
        assert_eq!(l, vec![ChainLabel::ONE, ChainLabel::ONE, one_e, one_2e]);

        let increasing = chain_of(&i, &["214356", "13245", "2134", "213", "21"]);
        let l = cl_labels(&i, &increasing).unwrap().labels;
        assert_eq!(
            l,
            vec![
                ChainLabel::ZERO,
                ChainLabel::ZERO,
                ChainLabel::ONE,
                ChainLabel::ONE
            ]
        );

        let bad = MaximalChain {
            elements: vec![i.top(), i.bottom()],
        };
        assert!(matches!(cl_labels(&i, &bad), Err(Error::NotAChain(_))));
    }

    #[test]
    fn monotone_chain_is_all_zero() {
        let i = iv("1", "12345");
        for lc in all_labeled_chains(&i, 10).unwrap() {
            assert!(lc.labels.iter().all(|&l| l == ChainLabel::ZERO));
        }
    }

    #[test]
    fn cl_verification() {
        let v = verify_dual_cl(&iv("21", "214356"), DEFAULT_MAX_CL_CHAINS).unwrap();
        assert!(v.verified, "{v:?}");
        let v = verify_dual_cl(&iv("213", "213546"), DEFAULT_MAX_CL_CHAINS).unwrap();
        assert!(!v.verified);
        assert_eq!(v.counterexample.unwrap().increasing_chains, 2);
        assert!(verify_dual_cl(&iv("12", "12435"), 10).unwrap().verified);
    }

    #[test]
    fn shelling() {
        assert!(is_shellable(&iv("21", "214356")));
        assert!(is_shellable(&iv("1", "68372514")));
        assert!(!is_shellable(&iv("12", "213546")));

        let v = verify_shelling_order(&iv("21", "214356"), 500).unwrap();
        assert!(v.is_shelling);
        assert_eq!(v.method, ShellingMethod::LabelOrder);

        let v = verify_shelling_order(&iv("12", "213546"), 500).unwrap();
        assert_eq!(v.facets, 8);
        assert!(!v.is_shelling);
        assert_eq!(v.method, ShellingMethod::Exhaustive);

        let v = verify_shelling_order(&iv("213", "2134"), 500).unwrap();
        assert!(v.is_shelling);
    }

    #[test]
    fn two_plus_two() {
        let i = iv("21", "214356");
        let id = |s| i.id_of(&p(s)).unwrap();
        assert!(is_two_plus_two(
            &i,
            [id("2143"), id("21435"), id("2134"), id("13245")]
        ));
        let w = two_plus_two_witness(&i).unwrap();
        assert!(is_two_plus_two(&i, w));
        assert!(is_two_plus_two_free(&iv("1", "1234")));
    }

    #[test]
    fn labeled_dot() {
        let dot = to_dot_labeled(&iv("21", "214356"), true, 500).unwrap();
        assert!(dot.contains("1-e"));
        assert!(dot.contains("1,1-2e") || dot.contains("1-2e,1"));
    }
}
