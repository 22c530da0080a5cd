//! Scalars, matrices and the linear-algebra helpers everything else is built on.
//!
//! All matrix arithmetic is generic over [`Semiring`]. Scalars that carry
//! runtime parameters (a modulus, a group table, a bit length) expose them
//! through [`Semiring::Params`] so that zero and one can be built on demand
//! and so that matrices can refuse to mix incompatible entries.

use std::fmt::Debug;

mod bitstring;
pub mod codec;
mod group;
mod group_ring;
pub mod linalg;
mod matrix;
mod permutation;
mod tropical;
mod zmod;

pub use bitstring::BitString;
pub use group::{FiniteGroupTable, GroupName};
pub use group_ring::{gr_axpy, gr_mul, GroupRingElement, GroupRingParams};
pub use matrix::{flatten, mat_add, mat_inverse, mat_mul, mat_star, unflatten, unvec, vec, Matrix};
pub use permutation::{perm_apply_matrix, perm_power, Permutation};
pub(crate) use tropical::partial_cmp_entries;
pub use tropical::{trop_star, Tropical};
pub use zmod::{is_prime, ZMod};

pub trait Semiring: Clone + PartialEq + Debug + Send + Sync {
    type Params: Clone + PartialEq + Debug + Send + Sync;

    fn params(&self) -> Self::Params;
    fn zero(params: &Self::Params) -> Self;
    fn one(params: &Self::Params) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

/// A semiring with additive inverses.
pub trait Ring: Semiring {
    fn neg(&self) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
}

/// A ring that is also a finite-dimensional vector space over `Z_p`.
///
/// `write_coords`/`from_coords` form the coordinate isomorphism used by the
/// linear attacks; coordinates are always reduced into `[0, p)`.
pub trait Linear: Ring {
    fn modulus(params: &Self::Params) -> u64;
    fn dimension(params: &Self::Params) -> usize;
    fn write_coords(&self, out: &mut Vec<u64>);
    fn from_coords(params: &Self::Params, coords: &[u64]) -> Self;
    fn scale(&self, c: u64) -> Self;
}
