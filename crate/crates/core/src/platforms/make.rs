use rand::RngCore;

use super::random_matrix;
use crate::algebra::{is_prime, mat_inverse, Matrix, ZMod};
use crate::error::{Error, Result};
use crate::holomorph::{Platform, TwoSidedPower};

/// MAKE: `n×n` matrices over `Z_p` under addition, with `φ(X) = H1·X·H2`
/// for non-invertible `H1`, `H2`.
#[derive(Clone, Debug)]
pub struct MakePlatform {
    m: Matrix<ZMod>,
    phi: TwoSidedPower<ZMod>,
}

impl MakePlatform {
    /// Validates the prime modulus, shapes, and that neither `H1` nor `H2` is
    /// invertible.
    pub fn new(h1: Matrix<ZMod>, h2: Matrix<ZMod>, m: Matrix<ZMod>) -> Result<Self> {
        let p = m.params();
        if !is_prime(p) {
            return Err(Error::Unsupported(format!("modulus {p} is not prime")));
        }
        for (name, h) in [("H1", &h1), ("H2", &h2)] {
            match mat_inverse(h) {
                Err(Error::NotInvertible) => {}
                Ok(_) => return Err(Error::InvalidParameter(format!("{name} must not be invertible"))),
                Err(e) => return Err(Error::InvalidParameter(format!("{name}: {e}"))),
            }
        }
        Self::from_parts(h1, h2, m)
    }

    /// Like [`MakePlatform::new`] but without the non-invertibility check;
    /// for hand-sized examples where `H1`, `H2` happen to be units.
    pub fn from_parts(h1: Matrix<ZMod>, h2: Matrix<ZMod>, m: Matrix<ZMod>) -> Result<Self> {
        let n = m.rows();
        let ok = |x: &Matrix<ZMod>| x.is_square() && x.rows() == n && x.params() == m.params();
        if !(ok(&h1) && ok(&h2) && ok(&m)) {
            return Err(Error::InvalidParameter("H1, H2, M must be square matrices of one size and modulus".into()));
        }
        Ok(MakePlatform { m, phi: TwoSidedPower { left: h1, right: h2, n: 1 } })
    }

    /// Random `M` and random singular `H1`, `H2` built as rank-deficient
    /// products `(n×(n-1))·((n-1)×n)`.
    pub fn random(p: u64, size: usize, rng: &mut dyn RngCore) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidParameter("size must be positive".into()));
        }
        let h1 = random_singular(p, size, rng);
        let h2 = random_singular(p, size, rng);
        let m = random_matrix(&p, size, rng);
        Self::new(h1, h2, m)
    }

    pub fn h1(&self) -> &Matrix<ZMod> {
        &self.phi.left
    }

    pub fn h2(&self) -> &Matrix<ZMod> {
        &self.phi.right
    }

    pub fn modulus(&self) -> u64 {
        self.m.params()
    }

    pub fn size(&self) -> usize {
        self.m.rows()
    }

    /// Direct evaluation of `Σ_{i<n} H1^i M H2^i`.
    pub fn summation(&self, n: u64) -> Matrix<ZMod> {
        let (mut l, mut r) = (Matrix::identity(self.size(), &self.modulus()), Matrix::identity(self.size(), &self.modulus()));
        let mut acc = Matrix::zeros(self.size(), self.size(), &self.modulus());
        for _ in 0..n {
            acc = &acc + &(&(&l * &self.m) * &r);
            l = &l * self.h1();
            r = &r * self.h2();
        }
        acc
    }
}

fn random_singular(p: u64, n: usize, rng: &mut dyn RngCore) -> Matrix<ZMod> {
    if n == 1 {
        return Matrix::zeros(1, 1, &p);
    }
    let tall = Matrix::from_fn(n, n - 1, |_, _| ZMod::new(rand::Rng::gen_range(rng, 0..p), p));
    let wide = Matrix::from_fn(n - 1, n, |_, _| ZMod::new(rand::Rng::gen_range(rng, 0..p), p));
    &tall * &wide
}

impl Platform for MakePlatform {
    type Elem = Matrix<ZMod>;
    type Endo = TwoSidedPower<ZMod>;

    fn name(&self) -> &'static str {
        "make"
    }

    fn generator(&self) -> &Matrix<ZMod> {
        &self.m
    }

    fn phi(&self) -> &TwoSidedPower<ZMod> {
        &self.phi
    }

    fn op(&self, a: &Matrix<ZMod>, b: &Matrix<ZMod>) -> Matrix<ZMod> {
        a + b
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Matrix<ZMod> {
        random_matrix(&self.modulus(), self.size(), rng)
    }
}
