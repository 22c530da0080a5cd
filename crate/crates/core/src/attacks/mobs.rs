use rayon::prelude::*;

use crate::algebra::{BitString, Matrix};
use crate::error::{Error, Result};
use crate::holomorph::{telescoping_residual, Platform};
use crate::platforms::MobsPlatform;

use super::{AttackOutcome, WorkCounters};

/// `mobs_solution_count` enumerates at most `2^MOBS_CAP_BITS` candidates.
pub const MOBS_CAP_BITS: u32 = 24;

/// Counts every `Y` with `Y ∘ A = φ(A) ∘ M`. The true `φ^x(M)` is always one
/// of them; `reference`, when given, is checked for membership.
pub fn mobs_solution_count(
    p: &MobsPlatform,
    a: &Matrix<BitString>,
    reference: Option<&Matrix<BitString>>,
) -> Result<AttackOutcome<Matrix<BitString>>> {
    let (n, k) = (p.size(), p.bits());
    let total_bits = (n * n) as u64 * k as u64;
    if total_bits > MOBS_CAP_BITS as u64 {
        return Err(Error::SizeLimit { log2_candidates: total_bits, log2_cap: MOBS_CAP_BITS });
    }
    let candidates = 1u64 << total_bits;
    if a.rows() != n || a.cols() != n || a.params() != k {
        return Err(Error::InvalidParameter("A does not match the platform shape".into()));
    }
    let target: Vec<u64> = telescoping_residual(p, a).entries().iter().map(BitString::bits).collect();
    let a_bits: Vec<u64> = a.entries().iter().map(BitString::bits).collect();
    let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
    let solves = |y: &[u64]| {
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).fold(0, |acc, l| acc | (y[i * n + l] & a_bits[l * n + j])) == target[i * n + j])
        })
    };
    let count = (0..candidates)
        .into_par_iter()
        .map_init(
            || vec![0u64; n * n],
            |y, idx| {
                for (e, slot) in y.iter_mut().enumerate() {
                    *slot = (idx >> (e as u64 * k as u64)) & mask;
                }
                solves(y)
            },
        )
        .filter(|&ok| ok)
        .count() as u64;
    let reference_found = reference.map(|r| p.op(r, a) == telescoping_residual(p, a));
    let work = WorkCounters { search_steps: candidates, solution_count: count, ..Default::default() };
    Ok(AttackOutcome {
        recovered_key: None,
        recovered_exponent: None,
        success: count >= 1 && reference_found != Some(false),
        failure: (count == 0).then(|| "no solutions found".to_string()),
        work,
        reference_found,
    })
}
