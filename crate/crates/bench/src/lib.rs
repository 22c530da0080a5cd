//! Seeded fixtures shared by the criterion benches.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sdpke::platforms::{AnyPlatform, PlatformParams, PLATFORM_NAMES};

pub const SEED: u64 = 0xbe7c;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

/// A default-parameter platform of the named kind.
pub fn platform(name: &str) -> AnyPlatform {
    PlatformParams::default_for(name)
        .and_then(|p| p.build(&mut rng(0)))
        .unwrap_or_else(|e| panic!("building {name}: {e}"))
}

/// One platform of each kind, same sizes as the CLI defaults.
pub fn all_platforms() -> Vec<AnyPlatform> {
    PLATFORM_NAMES.iter().map(|n| platform(n)).collect()
}

/// A platform from an inline JSON parameter object.
pub fn platform_from_json(json: &str) -> AnyPlatform {
    PlatformParams::from_json(json)
        .and_then(|p| p.build(&mut rng(1)))
        .unwrap_or_else(|e| panic!("building {json}: {e}"))
}
