//! The five concrete platforms, their parameter files, and a type-erased
//! [`AnyPlatform`] for front ends that pick a platform at run time.

mod conjugation;
mod dh;
mod make;
mod mobs;
mod tropical;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub use conjugation::{random_invertible, ConjugationPlatform};
pub use dh::DhPlatform;
pub use make::MakePlatform;
pub use mobs::MobsPlatform;
pub use tropical::TropicalPlatform;

use crate::algebra::codec::{matrix_from_json, matrix_to_json};
use crate::algebra::{
    BitString, FiniteGroupTable, GroupName, GroupRingElement, GroupRingParams, Linear, Matrix, Permutation,
    Tropical, ZMod,
};
use crate::error::{Error, Result};
use crate::holomorph::Platform;

pub type GroupRingPlatform = ConjugationPlatform<GroupRingElement>;
pub type GlPlatform = ConjugationPlatform<ZMod>;

/// Uniformly random square matrix over a `Z_p`-algebra.
pub fn random_matrix<S: Linear>(params: &S::Params, size: usize, rng: &mut dyn RngCore) -> Matrix<S> {
    let p = S::modulus(params);
    let d = S::dimension(params);
    let coords: Vec<u64> = (0..size * size * d).map(|_| rng.gen_range(0..p)).collect();
    crate::algebra::unflatten(params, size, size, &coords)
}

/// Platform parameter file. Any matrix left out is generated, from `seed`
/// when given and from the caller's generator otherwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PlatformParams {
    GroupRing(GroupRingConfig),
    Gl(GlConfig),
    Tropical(TropicalConfig),
    Make(MakeConfig),
    Mobs(MobsConfig),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Named(GroupName),
    Table(FiniteGroupTable),
}

impl GroupSpec {
    pub fn table(&self) -> std::sync::Arc<FiniteGroupTable> {
        match self {
            GroupSpec::Named(n) => n.table(),
            GroupSpec::Table(t) => std::sync::Arc::new(t.clone()),
        }
    }

    fn describe(table: &FiniteGroupTable) -> Self {
        GroupName::ALL
            .into_iter()
            .find(|g| *g.table() == *table)
            .map(GroupSpec::Named)
            .unwrap_or_else(|| GroupSpec::Table(table.clone()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupRingConfig {
    #[serde(default = "defaults::group_ring_modulus")]
    pub modulus: u64,
    #[serde(default = "defaults::group")]
    pub group: GroupSpec,
    #[serde(default = "defaults::size3")]
    pub size: usize,
    #[serde(default, rename = "H", skip_serializing_if = "Option::is_none")]
    pub h: Option<Value>,
    #[serde(default, rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<Value>,
    #[serde(default)]
    pub allow_commuting: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlConfig {
    #[serde(default = "defaults::gl_prime")]
    pub prime: u64,
    #[serde(default = "defaults::size3")]
    pub size: usize,
    #[serde(default, rename = "H", skip_serializing_if = "Option::is_none")]
    pub h: Option<Value>,
    #[serde(default, rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TropicalConfig {
    #[serde(default = "defaults::tropical_size")]
    pub size: usize,
    #[serde(default = "defaults::tropical_lo")]
    pub lo: i64,
    #[serde(default = "defaults::tropical_hi")]
    pub hi: i64,
    #[serde(default, rename = "H", skip_serializing_if = "Option::is_none")]
    pub h: Option<Value>,
    #[serde(default, rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MakeConfig {
    #[serde(default = "defaults::make_prime")]
    pub prime: u64,
    #[serde(default = "defaults::size3")]
    pub size: usize,
    #[serde(default, rename = "H1", skip_serializing_if = "Option::is_none")]
    pub h1: Option<Value>,
    #[serde(default, rename = "H2", skip_serializing_if = "Option::is_none")]
    pub h2: Option<Value>,
    #[serde(default, rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MobsConfig {
    #[serde(default = "defaults::size3")]
    pub size: usize,
    #[serde(default = "defaults::mobs_bits")]
    pub bits: u32,
    /// Explicit permutation, `perm[i]` being the image of bit `i`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<Vec<usize>>,
    /// Cycle lengths laid out on consecutive bits; ignored when `perm` is set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cycles: Option<Vec<usize>>,
    #[serde(default, rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// Values used when a parameter file omits a field.
mod defaults {
    use super::GroupSpec;
    use crate::algebra::GroupName;

    pub fn group_ring_modulus() -> u64 {
        7
    }
    pub fn group() -> GroupSpec {
        GroupSpec::Named(GroupName::S3)
    }
    pub fn size3() -> usize {
        3
    }
    pub fn gl_prime() -> u64 {
        1009
    }
    pub fn tropical_size() -> usize {
        5
    }
    pub fn tropical_lo() -> i64 {
        -1000
    }
    pub fn tropical_hi() -> i64 {
        1000
    }
    pub fn make_prime() -> u64 {
        (1 << 31) - 1
    }
    pub fn mobs_bits() -> u32 {
        28
    }
}

/// Names accepted by `PlatformParams::default_for`.
pub const PLATFORM_NAMES: [&str; 5] = ["groupring", "gl", "tropical", "make", "mobs"];

impl PlatformParams {
    pub fn default_for(name: &str) -> Result<Self> {
        let empty = serde_json::json!({ "kind": name.to_ascii_lowercase() });
        serde_json::from_value(empty).map_err(|_| {
            Error::InvalidParameter(format!("unknown platform {name:?}; expected one of {PLATFORM_NAMES:?}"))
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            PlatformParams::GroupRing(_) => "groupring",
            PlatformParams::Gl(_) => "gl",
            PlatformParams::Tropical(_) => "tropical",
            PlatformParams::Make(_) => "make",
            PlatformParams::Mobs(_) => "mobs",
        }
    }

    fn seed(&self) -> Option<u64> {
        match self {
            PlatformParams::GroupRing(c) => c.seed,
            PlatformParams::Gl(c) => c.seed,
            PlatformParams::Tropical(c) => c.seed,
            PlatformParams::Make(c) => c.seed,
            PlatformParams::Mobs(c) => c.seed,
        }
    }

    /// Builds and validates the platform, generating whatever the file leaves
    /// out.
    pub fn build(&self, rng: &mut dyn RngCore) -> Result<AnyPlatform> {
        let mut own;
        let rng: &mut dyn RngCore = match self.seed() {
            Some(s) => {
                own = ChaCha8Rng::seed_from_u64(s);
                &mut own
            }
            None => rng,
        };
        match self {
            PlatformParams::GroupRing(c) => build_group_ring(c, rng).map(AnyPlatform::GroupRing),
            PlatformParams::Gl(c) => build_gl(c, rng).map(AnyPlatform::Gl),
            PlatformParams::Tropical(c) => build_tropical(c, rng).map(AnyPlatform::Tropical),
            PlatformParams::Make(c) => build_make(c, rng).map(AnyPlatform::Make),
            PlatformParams::Mobs(c) => build_mobs(c, rng).map(AnyPlatform::Mobs),
        }
    }
}

fn require_size(size: usize) -> Result<()> {
    if size == 0 || size > 16 {
        return Err(Error::InvalidParameter(format!("matrix size {size} outside 1..=16")));
    }
    Ok(())
}

fn decode<S: crate::algebra::codec::JsonScalar>(
    params: &S::Params,
    v: &Option<Value>,
    size: usize,
) -> Result<Option<Matrix<S>>> {
    v.as_ref().map(|v| matrix_from_json(params, v, Some((size, size)))).transpose()
}

/// Keeps sampling the missing pieces until the constructor accepts them.
fn retry<T>(mut attempt: impl FnMut() -> Result<T>) -> Result<T> {
    let mut last = None;
    for _ in 0..1000 {
        match attempt() {
            Ok(t) => return Ok(t),
            Err(e @ (Error::InvalidParameter(_) | Error::Degenerate(_))) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

pub fn make_groupring_platform(c: &GroupRingConfig, rng: &mut dyn RngCore) -> Result<GroupRingPlatform> {
    build_group_ring(c, rng)
}

fn build_group_ring(c: &GroupRingConfig, rng: &mut dyn RngCore) -> Result<GroupRingPlatform> {
    require_size(c.size)?;
    if !crate::algebra::is_prime(c.modulus) {
        return Err(Error::Unsupported(format!("group ring modulus {} is not prime", c.modulus)));
    }
    let params = GroupRingParams::new(c.group.table(), c.modulus);
    let h = decode::<GroupRingElement>(&params, &c.h, c.size)?;
    let m = decode::<GroupRingElement>(&params, &c.m, c.size)?;
    if let (Some(h), Some(m)) = (&h, &m) {
        return ConjugationPlatform::group_ring(h.clone(), m.clone(), c.allow_commuting);
    }
    retry(|| {
        let h = h.clone().unwrap_or_else(|| random_matrix(&params, c.size, rng));
        let m = m.clone().unwrap_or_else(|| random_matrix(&params, c.size, rng));
        ConjugationPlatform::group_ring(h, m, c.allow_commuting)
    })
}

pub fn make_gl_platform(c: &GlConfig, rng: &mut dyn RngCore) -> Result<GlPlatform> {
    build_gl(c, rng)
}

fn build_gl(c: &GlConfig, rng: &mut dyn RngCore) -> Result<GlPlatform> {
    require_size(c.size)?;
    if !crate::algebra::is_prime(c.prime) {
        return Err(Error::Unsupported(format!("GL modulus {} is not prime", c.prime)));
    }
    let h = decode::<ZMod>(&c.prime, &c.h, c.size)?;
    let m = decode::<ZMod>(&c.prime, &c.m, c.size)?;
    let h = h.unwrap_or_else(|| random_invertible(c.prime, c.size, rng));
    let m = m.unwrap_or_else(|| random_invertible(c.prime, c.size, rng));
    ConjugationPlatform::gl(h, m)
}

pub fn make_tropical_platform(c: &TropicalConfig, rng: &mut dyn RngCore) -> Result<TropicalPlatform> {
    build_tropical(c, rng)
}

fn build_tropical(c: &TropicalConfig, rng: &mut dyn RngCore) -> Result<TropicalPlatform> {
    require_size(c.size)?;
    if c.lo > c.hi {
        return Err(Error::InvalidParameter(format!("empty entry range [{}, {}]", c.lo, c.hi)));
    }
    let h = decode::<Tropical>(&(), &c.h, c.size)?;
    let m = decode::<Tropical>(&(), &c.m, c.size)?;
    let h = h.unwrap_or_else(|| tropical::random_tropical(c.size, c.lo, c.hi, rng));
    let m = m.unwrap_or_else(|| tropical::random_tropical(c.size, c.lo, c.hi, rng));
    TropicalPlatform::new(h, m, c.lo, c.hi)
}

pub fn make_make_platform(c: &MakeConfig, rng: &mut dyn RngCore) -> Result<MakePlatform> {
    build_make(c, rng)
}

fn build_make(c: &MakeConfig, rng: &mut dyn RngCore) -> Result<MakePlatform> {
    require_size(c.size)?;
    if !crate::algebra::is_prime(c.prime) {
        return Err(Error::Unsupported(format!("MAKE modulus {} is not prime", c.prime)));
    }
    let h1 = decode::<ZMod>(&c.prime, &c.h1, c.size)?;
    let h2 = decode::<ZMod>(&c.prime, &c.h2, c.size)?;
    let m = decode::<ZMod>(&c.prime, &c.m, c.size)?;
    if h1.is_none() && h2.is_none() && m.is_none() {
        return MakePlatform::random(c.prime, c.size, rng);
    }
    let fresh = MakePlatform::random(c.prime, c.size, rng)?;
    MakePlatform::new(
        h1.unwrap_or_else(|| fresh.h1().clone()),
        h2.unwrap_or_else(|| fresh.h2().clone()),
        m.unwrap_or_else(|| fresh.generator().clone()),
    )
}

pub fn make_mobs_platform(c: &MobsConfig, rng: &mut dyn RngCore) -> Result<MobsPlatform> {
    build_mobs(c, rng)
}

fn build_mobs(c: &MobsConfig, rng: &mut dyn RngCore) -> Result<MobsPlatform> {
    require_size(c.size)?;
    if c.bits == 0 || c.bits > 64 {
        return Err(Error::InvalidParameter(format!("bit length {} outside 1..=64", c.bits)));
    }
    let k = c.bits as usize;
    let perm = match (&c.perm, &c.cycles) {
        (Some(mapping), _) => Permutation::new(mapping.clone())?,
        (None, Some(lengths)) => Permutation::from_cycle_lengths(k, lengths)?,
        (None, None) => Permutation::default_prime_cycles(k),
    };
    let m = decode::<BitString>(&c.bits, &c.m, c.size)?;
    match m {
        Some(m) => MobsPlatform::new(perm, m),
        None => MobsPlatform::random(c.size, c.bits, perm, rng),
    }
}

/// A platform chosen at run time.
#[derive(Clone, Debug)]
pub enum AnyPlatform {
    GroupRing(GroupRingPlatform),
    Gl(GlPlatform),
    Tropical(TropicalPlatform),
    Make(MakePlatform),
    Mobs(MobsPlatform),
}

/// Runs `$body` with `$p` bound to the concrete platform inside an
/// [`AnyPlatform`]. The body is instantiated once per platform type.
#[macro_export]
macro_rules! with_platform {
    ($any:expr, $p:ident => $body:expr) => {
        match $any {
            $crate::platforms::AnyPlatform::GroupRing($p) => $body,
            $crate::platforms::AnyPlatform::Gl($p) => $body,
            $crate::platforms::AnyPlatform::Tropical($p) => $body,
            $crate::platforms::AnyPlatform::Make($p) => $body,
            $crate::platforms::AnyPlatform::Mobs($p) => $body,
        }
    };
}

impl AnyPlatform {
    pub fn name(&self) -> &'static str {
        with_platform!(self, p => p.name())
    }

    /// Fully explicit parameters (every matrix written out, no seed) that
    /// rebuild this exact platform.
    pub fn to_params(&self) -> PlatformParams {
        match self {
            AnyPlatform::GroupRing(p) => {
                let sp = p.scalar_params();
                PlatformParams::GroupRing(GroupRingConfig {
                    modulus: sp.modulus,
                    group: GroupSpec::describe(&sp.group),
                    size: p.size(),
                    h: Some(matrix_to_json(p.conjugator())),
                    m: Some(matrix_to_json(p.generator())),
                    allow_commuting: p.conjugator().commutes_with(p.generator()),
                    seed: None,
                })
            }
            AnyPlatform::Gl(p) => PlatformParams::Gl(GlConfig {
                prime: p.scalar_params(),
                size: p.size(),
                h: Some(matrix_to_json(p.conjugator())),
                m: Some(matrix_to_json(p.generator())),
                seed: None,
            }),
            AnyPlatform::Tropical(p) => PlatformParams::Tropical(TropicalConfig {
                size: p.size(),
                lo: p.range().0,
                hi: p.range().1,
                h: Some(matrix_to_json(p.conjugator())),
                m: Some(matrix_to_json(p.generator())),
                seed: None,
            }),
            AnyPlatform::Make(p) => PlatformParams::Make(MakeConfig {
                prime: p.modulus(),
                size: p.size(),
                h1: Some(matrix_to_json(p.h1())),
                h2: Some(matrix_to_json(p.h2())),
                m: Some(matrix_to_json(p.generator())),
                seed: None,
            }),
            AnyPlatform::Mobs(p) => PlatformParams::Mobs(MobsConfig {
                size: p.size(),
                bits: p.bits(),
                perm: Some(p.permutation().mapping().to_vec()),
                cycles: None,
                m: Some(matrix_to_json(p.generator())),
                seed: None,
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holomorph::check_platform;

    #[test]
    fn defaults_build_every_platform() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for name in PLATFORM_NAMES {
            let params = PlatformParams::default_for(name).unwrap();
            assert_eq!(params.kind(), name);
            let p = params.build(&mut rng).unwrap();
            assert_eq!(p.name(), name);
            with_platform!(&p, q => check_platform(q, 3, &mut rng)).unwrap();
        }
        assert!(PlatformParams::default_for("nilpotent").is_err());
    }

    #[test]
    fn explicit_params_rebuild_identical_platform() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for name in PLATFORM_NAMES {
            let p = PlatformParams::default_for(name).unwrap().build(&mut rng).unwrap();
            let explicit = p.to_params();
            let text = serde_json::to_string(&explicit).unwrap();
            let back = PlatformParams::from_json(&text).unwrap();
            assert_eq!(back, explicit);
            let q = back.build(&mut rng).unwrap();
            assert_eq!(q.to_params(), explicit, "{name}");
        }
    }

    #[test]
    fn seed_makes_generation_deterministic() {
        let text = r#"{"kind": "make", "prime": 101, "seed": 42}"#;
        let params = PlatformParams::from_json(text).unwrap();
        let a = params.build(&mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        let b = params.build(&mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert_eq!(a.to_params(), b.to_params());
    }

    #[test]
    fn malformed_params_rejected() {
        assert!(PlatformParams::from_json(r#"{"kind": "gl", "primes": 7}"#).is_err());
        assert!(PlatformParams::from_json(r#"{"kind": "gl", "prime": 8}"#)
            .unwrap()
            .build(&mut ChaCha8Rng::seed_from_u64(0))
            .is_err());
        let bad_shape = r#"{"kind": "tropical", "size": 2, "H": [[1]]}"#;
        assert!(PlatformParams::from_json(bad_shape).unwrap().build(&mut ChaCha8Rng::seed_from_u64(0)).is_err());
        let bad_cycles = r#"{"kind": "mobs", "bits": 4, "cycles": [4]}"#;
        assert!(PlatformParams::from_json(bad_cycles).unwrap().build(&mut ChaCha8Rng::seed_from_u64(0)).is_err());
    }

    #[test]
    fn inline_group_table_accepted() {
        let table = GroupName::C2.table().to_json();
        let text = format!(r#"{{"kind": "groupring", "group": {table}, "size": 2}}"#);
        let params = PlatformParams::from_json(&text).unwrap();
        let p = params.build(&mut ChaCha8Rng::seed_from_u64(3));
        // C2 is abelian but 2x2 matrices over Z_7[C2] are not, so a
        // non-commuting pair exists.
        let p = p.unwrap();
        match p.to_params() {
            PlatformParams::GroupRing(c) => assert_eq!(c.group, GroupSpec::Named(GroupName::C2)),
            _ => unreachable!(),
        }
    }

    #[test]
    fn worked_mobs_params() {
        let text = r#"{"kind": "mobs", "size": 1, "bits": 2, "perm": [1, 0], "M": [["10"]]}"#;
        let p = PlatformParams::from_json(text).unwrap().build(&mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        match p {
            AnyPlatform::Mobs(m) => assert_eq!(m.generator().get(0, 0).to_string(), "10"),
            _ => unreachable!(),
        }
    }
}
