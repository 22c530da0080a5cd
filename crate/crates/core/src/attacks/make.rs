use crate::algebra::linalg::{solve, ModMatrix};
use crate::algebra::{unvec, vec, Matrix, ZMod};
use crate::error::{Error, Result};
use crate::holomorph::Platform;
use crate::platforms::MakePlatform;
use crate::protocol::Transcript;

use super::{AttackOutcome, WorkCounters};

/// `D = H1·A·H2 + M − A`, which equals `H1^x M H2^x` when `A = a_x`.
pub fn make_residual(p: &MakePlatform, a: &Matrix<ZMod>) -> Matrix<ZMod> {
    (&(&(p.h1() * a) * p.h2()) + p.generator()).sub(a)
}

/// The `n² × d²` matrix `L(Y)` whose column `i·d + j` is `vec(H1^i Y H2^j)`.
pub fn telescope_map(p: &MakePlatform, y: &Matrix<ZMod>, d: usize) -> ModMatrix {
    let (n, q) = (p.size(), p.modulus());
    let left = powers(p.h1(), d);
    let right = powers(p.h2(), d);
    let columns: Vec<Vec<u64>> = left
        .iter()
        .flat_map(|l| {
            let ly = l * y;
            right.iter().map(move |r| vec(&(&ly * r)))
        })
        .collect();
    ModMatrix::from_columns(&columns, n * n, q)
}

fn powers(h: &Matrix<ZMod>, d: usize) -> Vec<Matrix<ZMod>> {
    let mut out = vec![Matrix::identity(h.rows(), &h.params())];
    while out.len() < d {
        let next = out.last().expect("nonempty") * h;
        out.push(next);
    }
    out
}

/// Recovers the MAKE key from `A`, `B` and the public matrices.
///
/// Solves `L(M)·t = vec(D)` and returns `K = unvec(L(B)·t) + A`. Powers of
/// degree `< n` suffice by Cayley-Hamilton; degree `< n²` is tried if that
/// system is somehow inconsistent.
pub fn make_telescoping_attack(p: &MakePlatform, t: &Transcript<Matrix<ZMod>>) -> Result<AttackOutcome<Matrix<ZMod>>> {
    let n = p.size();
    let d_vec = vec(&make_residual(p, &t.a));
    let mut work = WorkCounters::default();
    for d in [n, n * n] {
        let lm = telescope_map(p, p.generator(), d);
        work.linear_solves += 1;
        work.sequence_terms_generated += (d * d) as u64;
        let Some(sol) = solve(&lm, &d_vec)? else {
            continue;
        };
        work.rank = crate::algebra::linalg::rank(&lm)? as u64;
        let lb = telescope_map(p, &t.b, d);
        let key = &unvec(&lb.mul_vec(&sol), n, p.modulus())? + &t.a;
        return Ok(AttackOutcome::recovered(key, t.key.as_ref(), work));
    }
    Err(Error::Internal("telescoping system L(M)·t = vec(D) is inconsistent".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::holomorph::{endo_pow, Endomorphism};
    use crate::platforms::random_matrix;
    use crate::protocol::run_exchange;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn scalar(v: u64, p: u64) -> Matrix<ZMod> {
        Matrix::from_rows(vec![vec![ZMod::new(v, p)]]).unwrap()
    }

    #[test]
    fn hand_residual() {
        let p = MakePlatform::from_parts(scalar(2, 7), scalar(4, 7), scalar(3, 7)).unwrap();
        let a = crate::holomorph::sdp_exp(&p, 2).unwrap().a;
        assert_eq!(make_residual(&p, &a), scalar(3, 7));
        assert_eq!(endo_pow(&p, 2).unwrap().apply(p.generator()), scalar(3, 7));
    }

    #[test]
    fn exponent_one_uses_monomial() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let p = MakePlatform::random(101, 3, &mut rng).unwrap();
        let d = make_residual(&p, p.generator());
        assert_eq!(d, &(p.h1() * p.generator()) * p.h2());
        let l = telescope_map(&p, p.generator(), 3);
        // Column (1, 1) is exactly vec(H1·M·H2).
        let mut e = vec![0; 9];
        e[3 + 1] = 1;
        assert_eq!(l.mul_vec(&e), vec(&d));
    }

    #[test]
    fn l_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = MakePlatform::random(101, 3, &mut rng).unwrap();
        for _ in 0..20 {
            let y = random_matrix::<ZMod>(&101, 3, &mut rng);
            let z = random_matrix::<ZMod>(&101, 3, &mut rng);
            let v: Vec<u64> = (0..9).map(|_| rng.gen_range(0..101)).collect();
            let lhs = telescope_map(&p, &(&y + &z), 3).mul_vec(&v);
            let (ly, lz) = (telescope_map(&p, &y, 3).mul_vec(&v), telescope_map(&p, &z, 3).mul_vec(&v));
            let rhs: Vec<u64> = ly.iter().zip(&lz).map(|(a, b)| (a + b) % 101).collect();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn recovers_keys() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for size in [1, 2, 3, 4] {
            for _ in 0..5 {
                let p = MakePlatform::random(101, size, &mut rng).unwrap();
                let (t, _, _) = run_exchange(&p, &mut rng, 16).unwrap();
                let out = make_telescoping_attack(&p, &t).unwrap();
                assert!(out.success, "size {size}: {:?}", out.failure);
            }
        }
    }

    #[test]
    fn residual_matches_ground_truth() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = MakePlatform::random(101, 3, &mut rng).unwrap();
        for _ in 0..20 {
            let x = rng.gen_range(1..1u64 << 16);
            let pow = crate::holomorph::sdp_exp(&p, x).unwrap();
            assert_eq!(make_residual(&p, &pow.a), pow.phi_n.apply(p.generator()));
        }
    }
}
