use std::collections::BTreeMap;

use anyhow::Result;
use sdpke::protocol::keygen;
use sdpke::{with_platform, Platform};

use super::timed;
use crate::args::{CommonArgs, Format};
use crate::config::RunConfig;
use crate::report::{percentile, Report, ReportRow};
use crate::{EXIT_FAILED, EXIT_OK};

/// Trials run one after another so timings are not skewed by contention.
pub fn run(args: &CommonArgs) -> Result<i32> {
    let cfg = RunConfig::from_args(args, Format::Csv)?;
    let mut rows = Vec::new();
    for trial in 0..cfg.trials {
        rows.extend(bench_trial(&cfg, trial)?);
    }
    let mut by_op: BTreeMap<(&str, &str), Vec<u64>> = BTreeMap::new();
    for r in &rows {
        by_op.entry((&r.platform, &r.operation)).or_default().push(r.micros);
    }
    let mut summary = serde_json::Map::new();
    for ((platform, op), micros) in &by_op {
        let [p50, p90, p99] = [50.0, 90.0, 99.0].map(|q| percentile(micros, q).unwrap_or(0));
        eprintln!("{platform} {op}: n={} p50={p50}us p90={p90}us p99={p99}us", micros.len());
        summary.insert(format!("{platform}/{op}"), serde_json::json!({"p50": p50, "p90": p90, "p99": p99}));
    }
    let report = Report { command: "bench".into(), rows, summary: summary.into() };
    report.write(cfg.format, args.out.as_deref())?;
    report.log_failures();
    Ok(if report.all_succeeded() { EXIT_OK } else { EXIT_FAILED })
}

fn bench_trial(cfg: &RunConfig, trial: u64) -> Result<Vec<ReportRow>> {
    let mut rng = cfg.trial_rng(trial);
    let platform = cfg.params.build(&mut rng)?;
    with_platform!(&platform, p => {
        let (alice, t_keygen) = timed(|| keygen(p, &mut rng, cfg.exponent_bits));
        let alice = alice?;
        let (bob, t_bob) = timed(|| keygen(p, &mut rng, cfg.exponent_bits));
        let bob = bob?;
        let (ka, t_derive) = timed(|| alice.agree(p, &bob.public_value));
        let ka = ka?;
        let (kb, t_bob_derive) = timed(|| bob.agree(p, &alice.public_value));
        let kb = kb?;
        let name = p.name();
        let mut keygen_row = ReportRow::new(name, trial, "keygen", true, t_keygen);
        keygen_row.counters.insert("exponent_bits_used".into(), u64::from(64 - alice.exponent().leading_zeros()));
        let derive_row = ReportRow::new(name, trial, "derive_key", true, t_derive);
        let mut exchange_row = ReportRow::new(name, trial, "exchange", ka == kb, t_keygen + t_bob + t_derive + t_bob_derive);
        if ka != kb {
            exchange_row.failure = Some("K_A differs from K_B".into());
        }
        Ok(vec![keygen_row, derive_row, exchange_row])
    })
}
