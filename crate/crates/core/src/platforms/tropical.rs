use rand::{Rng, RngCore, SeedableRng};

use crate::algebra::{Matrix, Tropical};
use crate::error::{Error, Result};
use crate::holomorph::{Platform, TropicalStarPower};

/// Tropical matrices under `⊕` with `φ(G) = G ⋆ H`.
#[derive(Clone, Debug)]
pub struct TropicalPlatform {
    h: Matrix<Tropical>,
    m: Matrix<Tropical>,
    lo: i64,
    hi: i64,
    phi: TropicalStarPower,
}

/// Number of random triples used to confirm `(M⋆X)⋆Y = M⋆(X⋆Y)`.
const STAR_CHECKS: usize = 16;

impl TropicalPlatform {
    /// `lo..=hi` is the range random elements are drawn from.
    pub fn new(h: Matrix<Tropical>, m: Matrix<Tropical>, lo: i64, hi: i64) -> Result<Self> {
        if !h.is_square() || !m.is_square() || h.rows() != m.rows() {
            return Err(Error::InvalidParameter("H and M must be square matrices of one size".into()));
        }
        if lo > hi {
            return Err(Error::InvalidParameter(format!("empty entry range [{lo}, {hi}]")));
        }
        let mut p = TropicalPlatform {
            phi: TropicalStarPower { h: h.clone(), star: Some(h.clone()), n: 1 },
            h,
            m,
            lo,
            hi,
        };
        if !p.star_is_associative() {
            p.phi.star = None;
        }
        Ok(p)
    }

    pub fn random(size: usize, lo: i64, hi: i64, rng: &mut dyn RngCore) -> Result<Self> {
        if size == 0 || lo > hi {
            return Err(Error::InvalidParameter("bad tropical dimensions or range".into()));
        }
        let h = random_tropical(size, lo, hi, rng);
        let m = random_tropical(size, lo, hi, rng);
        Self::new(h, m, lo, hi)
    }

    pub fn conjugator(&self) -> &Matrix<Tropical> {
        &self.h
    }

    pub fn range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn size(&self) -> usize {
        self.m.rows()
    }

    /// Whether `φ^n` is applied through the precomputed `H^{⋆n}`.
    pub fn uses_fast_powers(&self) -> bool {
        self.phi.star.is_some()
    }

    fn star_is_associative(&self) -> bool {
        // Deterministic samples so construction stays reproducible.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x7a0);
        (0..STAR_CHECKS).all(|i| {
            let x = if i == 0 { self.h.clone() } else { self.sample(&mut rng) };
            let y = if i % 2 == 0 { self.h.clone() } else { self.sample(&mut rng) };
            let z = self.sample(&mut rng);
            z.star(&x).star(&y) == z.star(&x.star(&y))
        })
    }
}

pub(crate) fn random_tropical(size: usize, lo: i64, hi: i64, rng: &mut dyn RngCore) -> Matrix<Tropical> {
    Matrix::from_fn(size, size, |_, _| Tropical::Finite(rng.gen_range(lo..=hi)))
}

impl Platform for TropicalPlatform {
    type Elem = Matrix<Tropical>;
    type Endo = TropicalStarPower;

    fn name(&self) -> &'static str {
        "tropical"
    }

    fn generator(&self) -> &Matrix<Tropical> {
        &self.m
    }

    fn phi(&self) -> &TropicalStarPower {
        &self.phi
    }

    fn op(&self, a: &Matrix<Tropical>, b: &Matrix<Tropical>) -> Matrix<Tropical> {
        a + b
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Matrix<Tropical> {
        random_tropical(self.size(), self.lo, self.hi, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::mat_add;
    use crate::holomorph::{check_platform, sdp_exp, sdp_exp_naive, Endomorphism};
    use rand_chacha::ChaCha8Rng;

    fn scalar(v: i64) -> Matrix<Tropical> {
        Matrix::from_rows(vec![vec![Tropical::Finite(v)]]).unwrap()
    }

    #[test]
    fn one_by_one_sequence() {
        let p = TropicalPlatform::new(scalar(-1), scalar(5), -10, 10).unwrap();
        let seq: Vec<_> = (1..=3).map(|n| sdp_exp(&p, n).unwrap().a).collect();
        assert_eq!(seq, vec![scalar(5), scalar(-1), scalar(-2)]);
    }

    #[test]
    fn phi_distributes_over_min() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = TropicalPlatform::random(5, -1000, 1000, &mut rng).unwrap();
        assert!(p.uses_fast_powers());
        for _ in 0..100 {
            let (a, b) = (p.sample(&mut rng), p.sample(&mut rng));
            let lhs = p.phi().apply(&mat_add(&a, &b).unwrap());
            let rhs = mat_add(&p.phi().apply(&a), &p.phi().apply(&b)).unwrap();
            assert_eq!(lhs, rhs);
        }
        check_platform(&p, 20, &mut rng).unwrap();
    }

    #[test]
    fn sequence_non_increasing_for_500_steps() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = TropicalPlatform::random(5, -1000, 1000, &mut rng).unwrap();
        let g = p.generator().clone();
        let mut a = g.clone();
        for _ in 0..500 {
            let next = p.op(&p.phi().apply(&a), &g);
            assert!(next.entries().iter().zip(a.entries()).all(|(x, y)| x <= y));
            a = next;
        }
    }

    #[test]
    fn fallback_agrees_with_fast_powers() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let fast = TropicalPlatform::random(3, -20, 20, &mut rng).unwrap();
        let mut slow = fast.clone();
        slow.phi.star = None;
        for n in [1, 2, 7, 33] {
            let f = sdp_exp(&fast, n).unwrap();
            let s = sdp_exp_naive(&slow, n).unwrap();
            assert_eq!(f.a, s.a);
            let x = fast.sample(&mut rng);
            assert_eq!(f.phi_n.apply(&x), s.phi_n.apply(&x));
        }
    }

    #[test]
    fn bad_shapes_rejected() {
        let m = Matrix::from_rows(vec![vec![Tropical::Finite(0), Tropical::Finite(1)]]).unwrap();
        assert!(TropicalPlatform::new(m.clone(), m, 0, 1).is_err());
        assert!(TropicalPlatform::new(scalar(0), scalar(0), 3, 1).is_err());
    }
}
