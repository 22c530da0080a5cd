use rand::RngCore;

use super::random_matrix;
use crate::algebra::{mat_inverse, GroupRingElement, Linear, Matrix, ZMod};
use crate::error::{Error, Result};
use crate::holomorph::{ConjugatorPower, Platform};

/// Matrices under multiplication with `φ(X) = H^{-1} X H`.
///
/// Instantiated over group rings (`M_r(Z_m[G])`) and over `Z_p` (the
/// `GL(r, p)` platform used by the MR cryptosystem).
#[derive(Clone, Debug)]
pub struct ConjugationPlatform<S> {
    name: &'static str,
    h: Matrix<S>,
    m: Matrix<S>,
    phi: ConjugatorPower<S>,
}

impl<S: Linear> ConjugationPlatform<S> {
    pub fn conjugator(&self) -> &Matrix<S> {
        &self.h
    }

    pub fn conjugator_inverse(&self) -> &Matrix<S> {
        &self.phi.h_inv_pow
    }

    pub fn size(&self) -> usize {
        self.m.rows()
    }

    pub fn scalar_params(&self) -> S::Params {
        self.m.params()
    }

    /// The closed form `H^{-n}(HM)^n` of `a_n`.
    pub fn closed_form(&self, n: u64) -> Matrix<S> {
        &self.phi.h_inv_pow.pow(n) * &(&self.h * &self.m).pow(n)
    }

    fn check_shapes(h: &Matrix<S>, m: &Matrix<S>) -> Result<()> {
        if !h.is_square() || !m.is_square() || h.rows() != m.rows() || h.params() != m.params() {
            return Err(Error::InvalidParameter("H and M must be square matrices of one size and ring".into()));
        }
        Ok(())
    }
}

impl ConjugationPlatform<GroupRingElement> {
    /// Checks that `H` is invertible over the group ring and, unless
    /// `allow_commuting`, that `H` and `M` do not commute.
    pub fn group_ring(h: Matrix<GroupRingElement>, m: Matrix<GroupRingElement>, allow_commuting: bool) -> Result<Self> {
        Self::check_shapes(&h, &m)?;
        let h_inv = match h.inverse_linear() {
            Ok(inv) => inv,
            Err(Error::NotInvertible) => return Err(Error::InvalidParameter("H is not invertible".into())),
            Err(e) => return Err(e),
        };
        if !allow_commuting && h.commutes_with(&m) {
            return Err(Error::Degenerate("H and M commute".into()));
        }
        Ok(Self::assemble("groupring", h, h_inv, m))
    }

    /// Random invertible `H` and random `M` not commuting with it.
    pub fn random_group_ring(
        params: &crate::algebra::GroupRingParams,
        size: usize,
        rng: &mut dyn RngCore,
    ) -> Result<Self> {
        for _ in 0..1000 {
            let h = random_matrix(params, size, rng);
            let m = random_matrix(params, size, rng);
            match Self::group_ring(h, m, false) {
                Ok(p) => return Ok(p),
                Err(Error::InvalidParameter(_) | Error::Degenerate(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::InvalidParameter("could not sample an invertible conjugator".into()))
    }
}

impl ConjugationPlatform<ZMod> {
    /// `GL(r, p)`: both `H` and `M` must be invertible mod the prime `p`.
    pub fn gl(h: Matrix<ZMod>, m: Matrix<ZMod>) -> Result<Self> {
        Self::check_shapes(&h, &m)?;
        let h_inv = match mat_inverse(&h) {
            Ok(inv) => inv,
            Err(Error::NotInvertible) => return Err(Error::InvalidParameter("H is singular".into())),
            Err(e) => return Err(e),
        };
        if let Err(Error::NotInvertible) = mat_inverse(&m) {
            return Err(Error::InvalidParameter("M is singular".into()));
        }
        Ok(Self::assemble("gl", h, h_inv, m))
    }

    pub fn random_gl(p: u64, size: usize, rng: &mut dyn RngCore) -> Result<Self> {
        if !crate::algebra::is_prime(p) {
            return Err(Error::Unsupported(format!("modulus {p} is not prime")));
        }
        let h = random_invertible(p, size, rng);
        let m = random_invertible(p, size, rng);
        Self::gl(h, m)
    }
}

/// Rejection-samples a nonsingular matrix mod a prime.
pub fn random_invertible(p: u64, size: usize, rng: &mut dyn RngCore) -> Matrix<ZMod> {
    loop {
        let m = random_matrix(&p, size, rng);
        if mat_inverse(&m).is_ok() {
            return m;
        }
    }
}

impl<S: Linear> ConjugationPlatform<S> {
    fn assemble(name: &'static str, h: Matrix<S>, h_inv: Matrix<S>, m: Matrix<S>) -> Self {
        let phi = ConjugatorPower { h_pow: h.clone(), h_inv_pow: h_inv, n: 1 };
        ConjugationPlatform { name, h, m, phi }
    }
}

impl<S: Linear> Platform for ConjugationPlatform<S> {
    type Elem = Matrix<S>;
    type Endo = ConjugatorPower<S>;

    fn name(&self) -> &'static str {
        self.name
    }

    fn generator(&self) -> &Matrix<S> {
        &self.m
    }

    fn phi(&self) -> &ConjugatorPower<S> {
        &self.phi
    }

    fn op(&self, a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
        a * b
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Matrix<S> {
        random_matrix(&self.m.params(), self.size(), rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{GroupName, GroupRingParams};
    use crate::holomorph::{check_platform, sdp_exp, Endomorphism};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn s3() -> GroupRingParams {
        GroupRingParams::new(GroupName::S3.table(), 7)
    }

    #[test]
    fn phi_fixes_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = ConjugationPlatform::random_group_ring(&s3(), 3, &mut rng).unwrap();
        let id = Matrix::identity(3, &s3());
        assert_eq!(p.phi().apply(&id), id);
        check_platform(&p, 5, &mut rng).unwrap();
    }

    #[test]
    fn closed_form_up_to_32() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = ConjugationPlatform::random_group_ring(&s3(), 3, &mut rng).unwrap();
        for n in 1..=32 {
            assert_eq!(sdp_exp(&p, n).unwrap().a, p.closed_form(n), "n = {n}");
        }
        let g = ConjugationPlatform::random_gl(1009, 3, &mut rng).unwrap();
        for n in 1..=32 {
            assert_eq!(sdp_exp(&g, n).unwrap().a, g.closed_form(n), "n = {n}");
        }
    }

    #[test]
    fn phi_power_matches_explicit_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = ConjugationPlatform::random_gl(1009, 3, &mut rng).unwrap();
        let g = p.generator();
        for x in 1..=64 {
            let want = &(&p.conjugator_inverse().pow(x) * g) * &p.conjugator().pow(x);
            assert_eq!(sdp_exp(&p, x).unwrap().phi_n.apply(g), want);
        }
    }

    #[test]
    fn commuting_pair_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = ConjugationPlatform::random_group_ring(&s3(), 3, &mut rng).unwrap();
        let h = p.conjugator().clone();
        let m = &h * &h;
        assert!(matches!(ConjugationPlatform::group_ring(h.clone(), m.clone(), false), Err(Error::Degenerate(_))));
        assert!(ConjugationPlatform::group_ring(h, m, true).is_ok());
    }

    #[test]
    fn singular_conjugator_rejected() {
        let zero = Matrix::zeros(2, 2, &s3());
        let one = Matrix::identity(2, &s3());
        assert!(matches!(ConjugationPlatform::group_ring(zero, one, true), Err(Error::InvalidParameter(_))));
        let sing = Matrix::from_rows(vec![vec![ZMod::new(1, 7), ZMod::new(2, 7)], vec![ZMod::new(2, 7), ZMod::new(4, 7)]]).unwrap();
        assert!(ConjugationPlatform::gl(sing, Matrix::identity(2, &7)).is_err());
    }

    #[test]
    fn gl_elements_are_invertible() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = ConjugationPlatform::random_gl(1009, 3, &mut rng).unwrap();
        assert_eq!(p.size(), 3);
        assert!(mat_inverse(p.generator()).is_ok());
    }
}
