use anyhow::Result;
use sdpke::attacks::mobs_solution_count;
use sdpke::holomorph::{sdp_exp, Endomorphism};
use sdpke::protocol::random_exponent;
use sdpke::{AnyPlatform, Error, Platform};
use serde_json::json;

use super::{par_trials, timed};
use crate::args::{CommonArgs, Format};
use crate::config::RunConfig;
use crate::report::{percentile, Report, ReportRow};
use crate::{EXIT_FAILED, EXIT_OK};

pub fn run(args: &CommonArgs) -> Result<i32> {
    let cfg = RunConfig::from_args(args, Format::Json)?;
    if cfg.params.kind() != "mobs" {
        return Err(Error::NotApplicable(format!(
            "solution counting needs the mobs platform, not {}",
            cfg.params.kind()
        ))
        .into());
    }
    let rows = par_trials(&cfg, |trial| count_trial(&cfg, trial))?;
    let counts: Vec<u64> = rows.iter().map(|r| r.counters["solution_count"]).collect();
    let summary = json!({
        "trials": rows.len(),
        "min": counts.iter().min(),
        "median": percentile(&counts, 50.0),
        "max": counts.iter().max(),
        "reference_always_found": rows.iter().all(|r| r.reference_found == Some(true)),
    });
    eprintln!(
        "solution counts over {} trials: min={} median={} max={}",
        rows.len(),
        summary["min"],
        summary["median"],
        summary["max"]
    );
    let report = Report { command: "count".into(), rows, summary };
    report.write(cfg.format, args.out.as_deref())?;
    report.log_failures();
    Ok(if report.all_succeeded() { EXIT_OK } else { EXIT_FAILED })
}

fn count_trial(cfg: &RunConfig, trial: u64) -> Result<ReportRow> {
    let mut rng = cfg.trial_rng(trial);
    let AnyPlatform::Mobs(p) = cfg.params.build(&mut rng)? else {
        unreachable!("kind checked by caller");
    };
    let x = random_exponent(&mut rng, cfg.exponent_bits)?;
    let pow = sdp_exp(&p, x)?;
    let reference = pow.phi_n.apply(p.generator());
    let (outcome, micros) = timed(|| mobs_solution_count(&p, &pow.a, Some(&reference)));
    Ok(ReportRow::from_outcome(p.name(), trial, "count", &outcome?, micros))
}
