use anyhow::Result;
use rayon::prelude::*;
use sdpke::algebra::codec::JsonScalar;
use sdpke::attacks::{
    dimension_attack, make_telescoping_attack, mobs_solution_count, tropical_binsearch_attack, AttackOutcome,
};
use sdpke::protocol::Transcript;
use sdpke::{AnyPlatform, Error, Matrix, Platform};

use super::{par_trials, timed};
use crate::args::{AttackArgs, Format, Method};
use crate::config::{thread_pool, trial_rng, RunConfig};
use crate::report::{Report, ReportRow};
use crate::transcript::{TranscriptEntry, TranscriptFile};
use crate::{EXIT_FAILED, EXIT_OK};

pub fn run(args: &AttackArgs) -> Result<i32> {
    let entries = match &args.transcript {
        Some(path) => {
            if args.common.platform.is_some() || args.common.params.is_some() {
                eprintln!("note: platform taken from {}, --platform/--params ignored", path.display());
            }
            TranscriptFile::read(path)?.transcripts
        }
        None => {
            let cfg = RunConfig::from_args(&args.common, Format::Json)?;
            check_applicable(args.method, cfg.params.kind())?;
            let results = par_trials(&cfg, |trial| super::exchange::exchange_trial(&cfg, trial, true))?;
            results.into_iter().map(|(_, e)| e).collect()
        }
    };
    for e in &entries {
        check_applicable(args.method, e.platform.kind())?;
    }
    let x_max = args.x_max.unwrap_or(match args.common.exponent_bits {
        64 => u64::MAX,
        b => 1 << b,
    });
    let seed = args.common.seed;
    let pool = thread_pool()?;
    let rows: Vec<ReportRow> = pool
        .install(|| entries.par_iter().map(|e| attack_entry(args.method, e, x_max, seed)).collect::<Vec<_>>())
        .into_iter()
        .collect::<Result<_>>()?;
    let report = Report { command: "attack".into(), rows, summary: serde_json::Value::Null };
    report.write(args.common.format.unwrap_or(Format::Json), args.common.out.as_deref())?;
    report.log_failures();
    Ok(if report.all_succeeded() { EXIT_OK } else { EXIT_FAILED })
}

/// Platforms each method applies to.
pub fn applicable(method: Method) -> &'static [&'static str] {
    match method {
        Method::Dimension => &["groupring", "gl", "make"],
        Method::Telescope => &["make"],
        Method::TropicalBinsearch => &["tropical"],
        Method::MobsCount => &["mobs"],
    }
}

fn check_applicable(method: Method, kind: &str) -> Result<(), Error> {
    if applicable(method).contains(&kind) {
        Ok(())
    } else {
        Err(Error::NotApplicable(format!(
            "{} attack does not apply to the {kind} platform (supported: {})",
            method.as_str(),
            applicable(method).join(", ")
        )))
    }
}

fn attack_entry(method: Method, entry: &TranscriptEntry, x_max: u64, seed: u64) -> Result<ReportRow> {
    let platform = entry.platform.build(&mut trial_rng(seed, entry.trial))?;
    let op = method.as_str();
    match (method, &platform) {
        (Method::Dimension, AnyPlatform::GroupRing(p)) => attack_one(p, entry, op, dimension_attack),
        (Method::Dimension, AnyPlatform::Gl(p)) => attack_one(p, entry, op, dimension_attack),
        (Method::Dimension, AnyPlatform::Make(p)) => attack_one(p, entry, op, dimension_attack),
        (Method::Telescope, AnyPlatform::Make(p)) => attack_one(p, entry, op, make_telescoping_attack),
        (Method::TropicalBinsearch, AnyPlatform::Tropical(p)) => {
            attack_one(p, entry, op, |p, t| tropical_binsearch_attack(p, t, x_max))
        }
        (Method::MobsCount, AnyPlatform::Mobs(p)) => attack_one(p, entry, op, |p, t| mobs_solution_count(p, &t.a, None)),
        _ => Err(check_applicable(method, entry.platform.kind()).err().unwrap_or_else(|| {
            Error::NotApplicable(format!("{op} attack does not apply to {}", platform.name()))
        }))?,
    }
}

fn attack_one<S, P>(
    p: &P,
    entry: &TranscriptEntry,
    op: &str,
    attack: impl FnOnce(&P, &Transcript<Matrix<S>>) -> sdpke::Result<AttackOutcome<Matrix<S>>>,
) -> Result<ReportRow>
where
    S: JsonScalar,
    P: Platform<Elem = Matrix<S>>,
{
    let t = entry.decode(p)?;
    let (outcome, micros) = timed(|| attack(p, &t));
    Ok(ReportRow::from_outcome(p.name(), entry.trial, op, &outcome?, micros))
}
