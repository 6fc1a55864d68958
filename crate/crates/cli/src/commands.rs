use std::collections::BTreeMap;

use consec_poset::interval::Interval;
use consec_poset::mobius::DEFAULT_ORACLE_ELEMENTS;
use consec_poset::ranks::{
    is_lattice, is_strongly_sperner, is_unimodal, rank_intersecting_chains, rank_profile,
};
use consec_poset::stats::{
    exhaustive_records, exhaustive_row, exterior_length_table, no_carrier_counts,
};
use consec_poset::topology::to_dot_labeled;
use consec_poset::{
    classify, mobius_oracle, mobius_recursive, ClassificationReport, DistributionTable, Error,
    Permutation, Result, RunConfig, SampleEstimate, Statistic,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::Payload;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types always serialize")
}

/// The report, plus whether any check hit a cap.
pub fn classify_cmd(
    sigma: &Permutation,
    tau: &Permutation,
    config: &RunConfig,
) -> Result<(Payload, bool)> {
    let report: ClassificationReport = classify(sigma, tau, config)?;
    let partial = report.is_partial();
    let mut v = to_value(&report);
    v["partial"] = Value::Bool(partial);
    Ok((Payload::data(v), partial))
}

pub fn mobius_cmd(
    sigma: &Permutation,
    tau: &Permutation,
    trace: bool,
    oracle: bool,
) -> Result<Payload> {
    let r = mobius_recursive(sigma, tau)?;
    let mut v = json!({
        "sigma": sigma,
        "tau": tau,
        "value": r.value,
        "branch": r.branch,
    });
    if trace {
        v["trace"] = r
            .trace
            .iter()
            .map(|(s, t)| json!({ "sigma": s, "tau": t }))
            .collect();
    }
    if oracle {
        let o = mobius_oracle(sigma, tau, DEFAULT_ORACLE_ELEMENTS)?;
        v["oracle"] = json!({ "value": o, "agrees": o == r.value });
        if o != r.value {
            return Err(Error::Internal(format!(
                "recursion gives {} but the oracle gives {o} on [{sigma}, {tau}]",
                r.value
            )));
        }
    }
    Ok(Payload::data(v))
}

pub fn ranks_cmd(
    sigma: &Permutation,
    tau: &Permutation,
    chains: Option<usize>,
    config: &RunConfig,
) -> Result<Payload> {
    let interval = Interval::new(sigma, tau)?;
    let profile = rank_profile(&interval);
    let sperner = is_strongly_sperner(&interval, config.max_oracle)?;
    let mut v = json!({
        "sigma": sigma,
        "tau": tau,
        "sizes": profile.sizes,
        "breaking_rank": profile.breaking_rank,
        "peak_rank": profile.peak_rank,
        "unimodal": is_unimodal(&profile.sizes),
        "strongly_sperner": { "verdict": sperner.strongly_sperner, "method": sperner.method },
        "lattice": is_lattice(&interval),
    });
    if let Some(i) = chains {
        let family = rank_intersecting_chains(&interval, i)?;
        let rendered: Vec<Vec<&Permutation>> = family
            .chains
            .iter()
            .map(|c| c.iter().map(|&id| interval.element(id)).collect())
            .collect();
        v["chains"] = json!({
            "i": i,
            "first_rank": family.first_rank,
            "last_rank": family.last_rank,
            "chains": rendered,
        });
    }
    Ok(Payload::data(v))
}

fn table_payload(table: &DistributionTable) -> Payload {
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "total": r.total,
                "excluded": r.excluded,
                "counts": r.counts,
                "mean": r.mean().map(|m| m.to_string()),
            })
        })
        .collect();
    Payload::with_csv(
        json!({ "statistic": table.statistic, "rows": rows }),
        table.to_csv(),
    )
}

pub fn table_exterior(n_max: usize, config: &RunConfig) -> Result<Payload> {
    Ok(table_payload(&exterior_length_table(
        n_max,
        &config.exhaustive(),
    )?))
}

pub fn sequence_no_carrier(n_max: usize, config: &RunConfig) -> Result<Payload> {
    let terms = no_carrier_counts(n_max, &config.exhaustive())?;
    let mut csv = String::from("n,count\n");
    for (n, c) in &terms {
        csv.push_str(&format!("{n},{c}\n"));
    }
    let terms: Vec<Value> = terms
        .iter()
        .map(|(n, c)| json!({ "n": n, "count": c, "residue_mod_4": c % 4 }))
        .collect();
    Ok(Payload::with_csv(
        json!({ "sequence": "no-carrier", "terms": terms }),
        csv,
    ))
}

pub struct CensusArgs {
    pub n: usize,
    pub statistic: Statistic,
    pub records: bool,
    pub sample: Option<u64>,
}

pub fn census(args: &CensusArgs, config: &RunConfig) -> Result<Payload> {
    let n = args.n;
    if let Some(size) = args.sample {
        let est = sample_statistic_cmd(n, size, config.seed, &args.statistic, config.threads)?;
        return Ok(Payload::data(json!({ "mode": "sample", "summary": est })));
    }
    if n > config.max_exhaustive_n {
        return Err(Error::TooLarge {
            what: "exhaustive census size n (use --sample)",
            count: n,
            cap: config.max_exhaustive_n,
        });
    }
    if n < args.statistic.min_n() {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: args.statistic.min_n(),
            max: config.max_exhaustive_n,
        });
    }
    let opts = config.exhaustive();
    let row = exhaustive_row(n, &args.statistic, &opts)?;
    // counts mod 4, reported as data only
    let residues: BTreeMap<u64, u64> = row.counts.iter().map(|(&k, &c)| (k, c % 4)).collect();
    let mut v = json!({
        "mode": "exhaustive",
        "statistic": args.statistic,
        "n": n,
    });
    let mut csv = String::new();
    if args.records {
        let recs = exhaustive_records(n, &args.statistic, &opts)?;
        csv.push_str("tau,value\n");
        for (t, val) in &recs {
            csv.push_str(&format!(
                "\"{t}\",{}\n",
                val.map_or(String::new(), |x| x.to_string())
            ));
        }
        v["records"] = recs
            .iter()
            .map(|(t, val)| json!({ "tau": t, "value": val }))
            .collect();
    } else {
        let table = DistributionTable {
            statistic: args.statistic,
            rows: vec![row.clone()],
        };
        csv = table.to_csv();
    }
    v["summary"] = json!({
        "total": row.total,
        "excluded": row.excluded,
        "counts": row.counts,
        "residues_mod_4": residues,
        "accepted": row.accepted(),
        "value_sum": row.value_sum(),
        "mean": row.mean().map(|m| m.to_string()),
    });
    Ok(Payload::with_csv(v, csv))
}

fn sample_statistic_cmd(
    n: usize,
    size: u64,
    seed: u64,
    stat: &Statistic,
    threads: usize,
) -> Result<SampleEstimate> {
    consec_poset::stats::sample_statistic(n, size, seed, *stat, threads)
}

pub fn sample(n: usize, size: u64, statistic: &Statistic, config: &RunConfig) -> Result<Payload> {
    let est = sample_statistic_cmd(n, size, config.seed, statistic, config.threads)?;
    let csv = format!(
        "statistic,n,sample_size,seed,accepted,value_sum,point_estimate,standard_error\n{},{},{},{},{},{},{},{}\n",
        est.statistic, est.n, est.sample_size, est.seed, est.accepted, est.value_sum, est.point_estimate,
        est.standard_error
    );
    Ok(Payload::with_csv(to_value(&est), csv))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportKind {
    Dot,
    DotLabeled,
    Json,
}

pub fn export(
    sigma: &Permutation,
    tau: &Permutation,
    kind: ExportKind,
    compact: bool,
    config: &RunConfig,
) -> Result<Payload> {
    let interval = Interval::new(sigma, tau)?;
    Ok(match kind {
        ExportKind::Dot => Payload::Raw(interval.to_dot(compact)),
        ExportKind::DotLabeled => {
            Payload::Raw(to_dot_labeled(&interval, compact, config.max_chains)?)
        }
        ExportKind::Json => Payload::data(to_value(&interval.export())),
    })
}
