//! One-shot classification of an interval.

use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::mobius::{has_carrier_element, mobius_recursive, MobiusBranch};
use crate::perm::{Permutation, Window};
use crate::ranks::{is_lattice, is_strongly_sperner, rank_profile, SpernerMethod};
use crate::topology::{
    find_disconnected_subinterval, is_disconnected, is_two_plus_two_free, verify_dual_cl,
    verify_shelling_order,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusSummary {
    pub value: i64,
    pub branch: MobiusBranch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSummary {
    pub pi: Permutation,
    pub window: Window,
    /// `red` of `τ` restricted to `window`.
    pub top: Permutation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpernerSummary {
    pub verdict: bool,
    pub method: SpernerMethod,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub sigma: Permutation,
    pub tau: Permutation,
    pub rank_sizes: Vec<usize>,
    pub breaking_rank: Option<usize>,
    pub chain: bool,
    pub mobius: MobiusSummary,
    pub disconnected: bool,
    pub witness: Option<WitnessSummary>,
    pub shellable: bool,
    /// `None` when the maximal-chain cap was exceeded.
    pub cl_verified: Option<bool>,
    /// `None` when the maximal-chain cap was exceeded.
    pub shelling_verified: Option<bool>,
    pub two_plus_two_free: bool,
    pub rank_unimodal: bool,
    pub strongly_sperner: SpernerSummary,
    pub lattice: bool,
    pub exterior: Option<Permutation>,
    pub interior: Option<Permutation>,
    pub has_carrier: Option<bool>,
    /// Names of checks skipped because a cap was exceeded.
    pub capped: Vec<String>,
}

impl ClassificationReport {
    pub fn is_partial(&self) -> bool {
        !self.capped.is_empty()
    }

    /// Cross-field implications that must hold for any interval.
    pub fn check_consistency(&self) -> Result<()> {
        let n = self.rank_sizes.len() - 1;
        let rules = [
            (
                !(self.disconnected && n >= 3) || !self.shellable,
                "disconnected but shellable",
            ),
            (
                self.shellable == self.witness.is_none(),
                "shellable disagrees with witness",
            ),
            (
                !self.chain || self.rank_sizes.iter().all(|&a| a == 1),
                "chain with a wide rank",
            ),
            (!self.chain || self.lattice, "chain that is not a lattice"),
            (
                self.cl_verified != Some(true) || self.shellable,
                "CL-verified but not shellable",
            ),
            (
                self.shelling_verified != Some(true) || self.shellable,
                "shelling found but not shellable",
            ),
            (self.rank_unimodal, "not rank-unimodal"),
        ];
        match rules.iter().find(|(ok, _)| !ok) {
            Some((_, what)) => Err(Error::Internal(format!(
                "inconsistent report for [{}, {}]: {what}",
                self.sigma, self.tau
            ))),
            None => Ok(()),
        }
    }
}

fn capped<T>(r: Result<T>, name: &str, skipped: &mut Vec<String>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::TooLarge { .. }) => {
            skipped.push(name.to_string());
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Run every interval check on `[σ, τ]`.
pub fn classify(
    sigma: &Permutation,
    tau: &Permutation,
    config: &RunConfig,
) -> Result<ClassificationReport> {
    let interval = Interval::new(sigma, tau)?;
    let profile = rank_profile(&interval);
    let verdict = interval.is_chain();
    if verdict.is_chain != interval.is_chain_structural() {
        return Err(Error::Internal(format!(
            "chain tests disagree on [{sigma}, {tau}]"
        )));
    }
    let mu = mobius_recursive(sigma, tau)?;
    let witness = find_disconnected_subinterval(&interval)
        .map(|w| {
            Ok::<_, Error>(WitnessSummary {
                pi: w.pi,
                window: w.window,
                top: w.top(tau)?,
            })
        })
        .transpose()?;
    let mut skipped = Vec::new();
    let cl = capped(
        verify_dual_cl(&interval, config.max_chains),
        "cl_verified",
        &mut skipped,
    )?;
    let shelling = capped(
        verify_shelling_order(&interval, config.max_chains),
        "shelling_verified",
        &mut skipped,
    )?;
    let sperner = is_strongly_sperner(&interval, config.max_oracle)?;
    let report = ClassificationReport {
        sigma: *sigma,
        tau: *tau,
        rank_sizes: profile.sizes.clone(),
        breaking_rank: profile.breaking_rank,
        chain: verdict.is_chain,
        mobius: MobiusSummary {
            value: mu.value,
            branch: mu.branch,
        },
        disconnected: is_disconnected(&interval)?,
        shellable: witness.is_none(),
        witness,
        cl_verified: cl.map(|v| v.verified),
        shelling_verified: shelling.map(|v| v.is_shelling),
        two_plus_two_free: is_two_plus_two_free(&interval),
        rank_unimodal: crate::ranks::is_unimodal(&profile.sizes),
        strongly_sperner: SpernerSummary {
            verdict: sperner.strongly_sperner,
            method: sperner.method,
        },
        lattice: is_lattice(&interval),
        exterior: tau.exterior().ok(),
        interior: tau.interior().ok(),
        has_carrier: has_carrier_element(tau).ok(),
        capped: skipped,
    };
    report.check_consistency()?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::p;

    #[test]
    fn report_12_213546() {
        let r = classify(&p("12"), &p("213546"), &RunConfig::default()).unwrap();
        assert_eq!(r.rank_sizes, vec![1, 3, 3, 2, 1]);
        assert!(!r.disconnected && !r.shellable);
        let w = r.witness.unwrap();
        assert_eq!((w.pi, w.top), (p("213"), p("213546")));
        assert_eq!(r.mobius.value, -1);
        assert_eq!(r.cl_verified, Some(false));
        assert_eq!(r.shelling_verified, Some(false));
        assert!(!r.is_partial());

        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(
            serde_json::from_str::<ClassificationReport>(&json).unwrap(),
            r
        );
    }

    #[test]
    fn trivial_and_example_reports() {
        let r = classify(&p("21"), &p("21"), &RunConfig::default()).unwrap();
        assert_eq!(r.rank_sizes, vec![1]);
        assert!(r.chain && r.shellable && r.lattice);
        assert_eq!(r.interior, None);

        let r = classify(&p("1"), &p("68372514"), &RunConfig::default()).unwrap();
        assert!(r.shellable);
        assert_eq!(r.exterior, Some(p("2413")));

        let tight = RunConfig {
            max_chains: 1,
            ..RunConfig::default()
        };
        let r = classify(&p("21"), &p("214356"), &tight).unwrap();
        assert!(r.is_partial());
        assert_eq!(r.cl_verified, None);

        assert!(matches!(
            classify(&p("123"), &p("2314"), &RunConfig::default()),
            Err(Error::NotComparable { .. })
        ));
    }
}
