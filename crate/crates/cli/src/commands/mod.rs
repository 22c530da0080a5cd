pub mod attack;
pub mod bench;
pub mod count;
pub mod exchange;

use std::time::Instant;

use anyhow::Result;
use rayon::prelude::*;

use crate::config::{thread_pool, RunConfig};

/// Runs `f` for every trial on the worker pool; results stay in trial order.
pub(crate) fn par_trials<T: Send>(cfg: &RunConfig, f: impl Fn(u64) -> Result<T> + Sync) -> Result<Vec<T>> {
    let pool = thread_pool()?;
    pool.install(|| (0..cfg.trials).into_par_iter().map(&f).collect::<Vec<_>>()).into_iter().collect()
}

pub(crate) fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed().as_micros() as u64)
}
