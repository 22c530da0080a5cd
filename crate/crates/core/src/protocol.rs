//! Key exchange and the MR public-key cryptosystem.

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::algebra::{mat_inverse, Matrix, ZMod};
use crate::error::{Error, Result};
use crate::holomorph::{sdp_exp, Endomorphism, Platform};
use crate::platforms::{DhPlatform, GlPlatform};

/// A secret exponent and its public value `a_x`.
#[derive(Clone, Debug)]
pub struct KeyPair<E> {
    exponent: u64,
    pub public_value: E,
}

impl<E: Clone> KeyPair<E> {
    pub fn from_exponent<P: Platform<Elem = E> + ?Sized>(p: &P, exponent: u64) -> Result<Self> {
        Ok(KeyPair { exponent, public_value: sdp_exp(p, exponent)?.a })
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// `φ^x(B) ∘ A` for the peer's public value `B`.
    pub fn agree<P: Platform<Elem = E> + ?Sized>(&self, p: &P, peer: &E) -> Result<E> {
        derive_key(p, self.exponent, peer, &self.public_value)
    }
}

/// Draws `x` uniformly from `[2, 2^bits)`. With `bits == 1` that range is
/// empty and `x = 1`.
pub fn random_exponent(rng: &mut dyn RngCore, bits: u32) -> Result<u64> {
    match bits {
        0 | 65.. => Err(Error::InvalidParameter(format!("exponent bits {bits} outside 1..=64"))),
        1 => Ok(1),
        64 => Ok(rng.gen_range(2..=u64::MAX)),
        b => Ok(rng.gen_range(2..1u64 << b)),
    }
}

pub fn keygen<P: Platform + ?Sized>(p: &P, rng: &mut dyn RngCore, exponent_bits: u32) -> Result<KeyPair<P::Elem>> {
    KeyPair::from_exponent(p, random_exponent(rng, exponent_bits)?)
}

/// `K = φ^x(B) ∘ A`.
pub fn derive_key<P: Platform + ?Sized>(p: &P, x: u64, b: &P::Elem, a: &P::Elem) -> Result<P::Elem> {
    let phi_x = crate::holomorph::endo_pow(p, x)?;
    Ok(p.op(&phi_x.apply(b), a))
}

/// What an eavesdropper sees, plus the true key when running in test mode.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transcript<E> {
    #[serde(rename = "A")]
    pub a: E,
    #[serde(rename = "B")]
    pub b: E,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<E>,
}

/// A transcript with its ground-truth key, then Alice's and Bob's keys.
pub type ExchangeResult<E> = (Transcript<E>, E, E);

/// One full exchange. The two keys agree unless something is badly wrong.
pub fn run_exchange<P: Platform + ?Sized>(
    p: &P,
    rng: &mut dyn RngCore,
    exponent_bits: u32,
) -> Result<ExchangeResult<P::Elem>> {
    let alice = keygen(p, rng, exponent_bits)?;
    let bob = keygen(p, rng, exponent_bits)?;
    let ka = alice.agree(p, &bob.public_value)?;
    let kb = bob.agree(p, &alice.public_value)?;
    let t = Transcript { a: alice.public_value, b: bob.public_value, key: Some(ka.clone()) };
    Ok((t, ka, kb))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ciphertext<E> {
    pub c1: E,
    pub c2: E,
}

/// Platforms whose carrier is a group under `∘`, as MR requires.
pub trait InvertiblePlatform: Platform {
    fn invert(&self, e: &Self::Elem) -> Result<Self::Elem>;
}

impl InvertiblePlatform for GlPlatform {
    fn invert(&self, e: &Matrix<ZMod>) -> Result<Matrix<ZMod>> {
        mat_inverse(e)
    }
}

impl InvertiblePlatform for DhPlatform {
    fn invert(&self, e: &Matrix<ZMod>) -> Result<Matrix<ZMod>> {
        mat_inverse(e)
    }
}

/// `(c1, c2) = (a_r, φ^r(a) ∘ c1 ∘ m)` with a fresh ephemeral `r`.
pub fn mr_encrypt<P: InvertiblePlatform + ?Sized>(
    p: &P,
    public: &P::Elem,
    m: &P::Elem,
    rng: &mut dyn RngCore,
    exponent_bits: u32,
) -> Result<Ciphertext<P::Elem>> {
    let r = random_exponent(rng, exponent_bits)?;
    mr_encrypt_with(p, public, m, r)
}

/// [`mr_encrypt`] with a caller-chosen ephemeral exponent.
pub fn mr_encrypt_with<P: InvertiblePlatform + ?Sized>(
    p: &P,
    public: &P::Elem,
    m: &P::Elem,
    r: u64,
) -> Result<Ciphertext<P::Elem>> {
    let pow = sdp_exp(p, r)?;
    let c2 = p.op(&p.op(&pow.phi_n.apply(public), &pow.a), m);
    Ok(Ciphertext { c1: pow.a, c2 })
}

/// `K = φ^n(c1) ∘ a`, then `m = K^{-1} ∘ c2`.
pub fn mr_decrypt<P: InvertiblePlatform + ?Sized>(
    p: &P,
    n: u64,
    public: &P::Elem,
    ct: &Ciphertext<P::Elem>,
) -> Result<P::Elem> {
    let k = derive_key(p, n, &ct.c1, public)?;
    unmask(p, &k, &ct.c2)
}

pub(crate) fn unmask<P: InvertiblePlatform + ?Sized>(p: &P, k: &P::Elem, c2: &P::Elem) -> Result<P::Elem> {
    let k_inv = p.invert(k).map_err(|e| match e {
        Error::NotInvertible => Error::Internal("MR key is singular".into()),
        e => e,
    })?;
    Ok(p.op(&k_inv, c2))
}
