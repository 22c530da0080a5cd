use anyhow::Result;
use sdpke::protocol::run_exchange;
use sdpke::{with_platform, Platform};

use super::{par_trials, timed};
use crate::args::{ExchangeArgs, Format};
use crate::config::RunConfig;
use crate::report::{Report, ReportRow};
use crate::transcript::{TranscriptEntry, TranscriptFile};
use crate::{EXIT_FAILED, EXIT_OK};

pub fn run(args: &ExchangeArgs) -> Result<i32> {
    let cfg = RunConfig::from_args(&args.common, Format::Json)?;
    let results = par_trials(&cfg, |trial| exchange_trial(&cfg, trial, cfg.test_mode))?;
    let (rows, entries): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    if let Some(path) = &args.transcript {
        TranscriptFile::new(entries).write(path)?;
    }
    let report = Report { command: "exchange".into(), rows, summary: serde_json::Value::Null };
    report.write(cfg.format, args.common.out.as_deref())?;
    report.log_failures();
    Ok(if report.all_succeeded() { EXIT_OK } else { EXIT_FAILED })
}

/// One exchange on a platform built from the trial's generator.
pub(crate) fn exchange_trial(cfg: &RunConfig, trial: u64, keep_key: bool) -> Result<(ReportRow, TranscriptEntry)> {
    let mut rng = cfg.trial_rng(trial);
    let platform = cfg.params.build(&mut rng)?;
    let explicit = platform.to_params();
    with_platform!(&platform, p => {
        let (res, micros) = timed(|| run_exchange(p, &mut rng, cfg.exponent_bits));
        let (mut t, ka, kb) = res?;
        let mut row = ReportRow::new(p.name(), trial, "exchange", ka == kb, micros);
        if ka != kb {
            row.failure = Some("K_A differs from K_B".into());
        }
        if !keep_key {
            t.key = None;
        }
        Ok((row, TranscriptEntry::encode(trial, explicit, &t)))
    })
}
