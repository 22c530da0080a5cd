//! Semidirect product key exchange over several platform semigroups, the MR
//! public-key scheme built on it, and the known attacks against each
//! instantiation.
//!
//! * [`algebra`]: scalars (`Z_p`, group rings, tropical numbers, bit strings),
//!   matrices over them and modular linear algebra.
//! * [`holomorph`]: the platform abstraction and fast exponentiation in the
//!   holomorph.
//! * [`platforms`]: the concrete platforms and their parameter files.
//! * [`protocol`]: key exchange and MR encryption.
//! * [`attacks`]: dimension, telescoping, tropical and MOBS attacks.

pub mod algebra;
pub mod attacks;
pub mod error;
pub mod holomorph;
pub mod platforms;
pub mod protocol;

pub use algebra::{BitString, GroupName, GroupRingElement, Matrix, Permutation, Tropical, ZMod};
pub use error::{Error, Result};
pub use holomorph::{sdp_exp, sdp_exp_naive, Platform};
pub use platforms::{AnyPlatform, PlatformParams};
pub use protocol::{derive_key, keygen, KeyPair, Transcript};
