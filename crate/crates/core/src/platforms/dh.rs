use rand::RngCore;

use super::random_matrix;
use crate::algebra::{Matrix, ZMod};
use crate::error::{Error, Result};
use crate::holomorph::{IdentityEnd, Platform};

/// Square matrices over `Z_p` under multiplication with the identity
/// endomorphism: ordinary Diffie-Hellman. The `1×1` case is DH in `Z_p^*`.
#[derive(Clone, Debug)]
pub struct DhPlatform {
    g: Matrix<ZMod>,
}

impl DhPlatform {
    pub fn new(g: Matrix<ZMod>) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::InvalidParameter("generator must be square".into()));
        }
        Ok(DhPlatform { g })
    }

    pub fn scalar(g: u64, p: u64) -> Self {
        DhPlatform { g: Matrix::from_rows(vec![vec![ZMod::new(g, p)]]).expect("1x1") }
    }
}

impl Platform for DhPlatform {
    type Elem = Matrix<ZMod>;
    type Endo = IdentityEnd;

    fn name(&self) -> &'static str {
        "dh"
    }

    fn generator(&self) -> &Matrix<ZMod> {
        &self.g
    }

    fn phi(&self) -> &IdentityEnd {
        &IdentityEnd
    }

    fn op(&self, a: &Matrix<ZMod>, b: &Matrix<ZMod>) -> Matrix<ZMod> {
        a * b
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Matrix<ZMod> {
        random_matrix(&self.g.params(), self.g.rows(), rng)
    }
}
