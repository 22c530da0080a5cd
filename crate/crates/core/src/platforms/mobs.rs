use rand::{Rng, RngCore};

use crate::algebra::{BitString, Matrix, Permutation};
use crate::error::{Error, Result};
use crate::holomorph::{PermutationPower, Platform};

/// MOBS: matrices of `k`-bit strings under OR/AND multiplication, with `φ`
/// permuting the bits of every entry.
#[derive(Clone, Debug)]
pub struct MobsPlatform {
    m: Matrix<BitString>,
    phi: PermutationPower,
}

impl MobsPlatform {
    /// Every nontrivial cycle of `perm` must have prime length; fixed points
    /// are allowed.
    pub fn new(perm: Permutation, m: Matrix<BitString>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::InvalidParameter("M must be square".into()));
        }
        if perm.len() != m.params() as usize {
            return Err(Error::InvalidParameter(format!(
                "permutation on {} points but entries have {} bits",
                perm.len(),
                m.params()
            )));
        }
        if !perm.has_prime_cycles() {
            return Err(Error::InvalidParameter(format!(
                "cycle lengths {:?} are not all prime",
                perm.cycle_lengths()
            )));
        }
        Ok(MobsPlatform { m, phi: PermutationPower { perm, n: 1 } })
    }

    pub fn random(size: usize, bits: u32, perm: Permutation, rng: &mut dyn RngCore) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidParameter("size must be positive".into()));
        }
        let m = random_bits(size, bits, rng)?;
        Self::new(perm, m)
    }

    pub fn permutation(&self) -> &Permutation {
        &self.phi.perm
    }

    pub fn bits(&self) -> u32 {
        self.m.params()
    }

    pub fn size(&self) -> usize {
        self.m.rows()
    }

    /// Order of `φ`, the lcm of the cycle lengths.
    pub fn phi_order(&self) -> u128 {
        self.phi.perm.order()
    }
}

pub(crate) fn random_bits(size: usize, bits: u32, rng: &mut dyn RngCore) -> Result<Matrix<BitString>> {
    let mask = crate::algebra::BitString::ones(bits.clamp(1, 64)).bits();
    let entries = (0..size * size)
        .map(|_| BitString::new(rng.gen::<u64>() & mask, bits))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_vec(size, size, entries)
}

impl Platform for MobsPlatform {
    type Elem = Matrix<BitString>;
    type Endo = PermutationPower;

    fn name(&self) -> &'static str {
        "mobs"
    }

    fn generator(&self) -> &Matrix<BitString> {
        &self.m
    }

    fn phi(&self) -> &PermutationPower {
        &self.phi
    }

    fn op(&self, a: &Matrix<BitString>, b: &Matrix<BitString>) -> Matrix<BitString> {
        a * b
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Matrix<BitString> {
        random_bits(self.size(), self.bits(), rng).expect("valid bit length")
    }
}
