use std::fs;

use anyhow::{Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use sdpke::PlatformParams;

use crate::args::{CommonArgs, Format};
use crate::ConfigError;

/// Everything a run depends on. The seed fixes all randomness.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub params: PlatformParams,
    pub trials: u64,
    pub seed: u64,
    pub exponent_bits: u32,
    pub test_mode: bool,
    pub format: Format,
}

impl RunConfig {
    pub fn from_args(args: &CommonArgs, default_format: Format) -> Result<Self> {
        let params = match (&args.params, &args.platform) {
            (Some(path), platform) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                let params = PlatformParams::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
                if let Some(name) = platform {
                    if !name.eq_ignore_ascii_case(params.kind()) {
                        return Err(ConfigError(format!(
                            "--platform {name} conflicts with parameter file kind {}",
                            params.kind()
                        ))
                        .into());
                    }
                }
                params
            }
            (None, Some(name)) => PlatformParams::default_for(name)?,
            (None, None) => return Err(ConfigError("one of --platform or --params is required".into()).into()),
        };
        Ok(RunConfig {
            params,
            trials: args.trials,
            seed: args.seed,
            exponent_bits: args.exponent_bits,
            test_mode: args.test_mode,
            format: args.format.unwrap_or(default_format),
        })
    }

    /// Generator for one trial: stream `trial` of the run seed, so trials do
    /// not depend on execution order.
    pub fn trial_rng(&self, trial: u64) -> ChaCha20Rng {
        trial_rng(self.seed, trial)
    }
}

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Worker pool honouring `SDPKE_THREADS`.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("SDPKE_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| ConfigError(format!("SDPKE_THREADS={v:?} is not a count")))?;
        builder = builder.num_threads(n);
    }
    Ok(builder.build()?)
}
