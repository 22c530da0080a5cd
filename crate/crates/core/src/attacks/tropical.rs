use std::cmp::Ordering;
use std::collections::HashMap;

use crate::algebra::{partial_cmp_entries, Matrix, Tropical};
use crate::error::{Error, Result};
use crate::holomorph::{sdp_exp, Platform};
use crate::platforms::TropicalPlatform;
use crate::protocol::{derive_key, Transcript};

use super::{AttackOutcome, WorkCounters};

/// Where a probe landed relative to the target exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    /// `a_n ≥ A` and `a_n ≠ A`: `n` is too small.
    Before,
    /// `a_n ≤ A`.
    AtOrPast,
    Incomparable,
}

/// Smallest `n` in `[lo, hi]` with `probe(n) == AtOrPast`, assuming the
/// probe is monotone. Returns `None` if the incomparability fallback runs out
/// of its `extra` probe budget.
fn search(mut lo: u64, mut hi: u64, extra: u64, mut probe: impl FnMut(u64) -> Side) -> Option<u64> {
    let mut spent = 0;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        let (at, side) = match probe(mid) {
            Side::Incomparable => {
                let mut found = None;
                let mut step = 1u64;
                'scan: while spent < extra {
                    for cand in [mid.checked_sub(step), mid.checked_add(step)] {
                        let Some(c) = cand.filter(|c| (lo..=hi).contains(c)) else {
                            continue;
                        };
                        if spent >= extra {
                            break 'scan;
                        }
                        spent += 1;
                        let s = probe(c);
                        if s != Side::Incomparable {
                            found = Some((c, s));
                            break 'scan;
                        }
                    }
                    if step > hi - lo {
                        break;
                    }
                    step *= 2;
                }
                found?
            }
            s => (mid, s),
        };
        if side == Side::AtOrPast {
            hi = at;
        } else {
            lo = at + 1;
        }
    }
    Some(lo)
}

/// Binary search on the monotone sequence `a_1 ≥ a_2 ≥ …` for the smallest
/// `x'` with `a_{x'} = A`; any such `x'` gives the key `φ^{x'}(B) ⊕ A`.
pub fn tropical_binsearch_attack(
    p: &TropicalPlatform,
    t: &Transcript<Matrix<Tropical>>,
    x_max: u64,
) -> Result<AttackOutcome<Matrix<Tropical>>> {
    if x_max == 0 {
        return Err(Error::InvalidParameter("x_max must be positive".into()));
    }
    let mut cache: HashMap<u64, Matrix<Tropical>> = HashMap::new();
    let mut probes = 0u64;
    let mut side_of = |n: u64| -> Result<Side> {
        if let std::collections::hash_map::Entry::Vacant(e) = cache.entry(n) {
            probes += 1;
            e.insert(sdp_exp(p, n)?.a);
        }
        Ok(match partial_cmp_entries(cache[&n].entries(), t.a.entries()) {
            Some(Ordering::Less | Ordering::Equal) => Side::AtOrPast,
            Some(Ordering::Greater) => Side::Before,
            None => Side::Incomparable,
        })
    };
    let extra = 2 * (64 - x_max.leading_zeros() as u64);
    let mut err = None;
    let found = search(1, x_max, extra, |n| {
        side_of(n).unwrap_or_else(|e| {
            err.get_or_insert(e);
            Side::Incomparable
        })
    });
    if let Some(e) = err {
        return Err(e);
    }
    let verdict = match found {
        Some(n) => side_of(n).map(|_| n)?,
        None => 0,
    };
    let work = |probes| WorkCounters { search_steps: probes, sequence_terms_generated: probes, ..Default::default() };
    if verdict == 0 {
        return Ok(AttackOutcome::failed("incomparable probes exhausted the fallback scan", work(probes)));
    }
    if cache[&verdict] != t.a {
        return Ok(AttackOutcome::failed(format!("no n ≤ {x_max} with a_n = A"), work(probes)));
    }
    let key = derive_key(p, verdict, &t.b, &t.a)?;
    let mut out = AttackOutcome::recovered(key, t.key.as_ref(), work(probes));
    out.recovered_exponent = Some(verdict);
    Ok(out)
}

/// Whether `a_{n+1} ≤ a_n` entrywise for every `n < n_max`.
pub fn tropical_is_monotone(p: &TropicalPlatform, n_max: u64) -> bool {
    let mut a = p.generator().clone();
    for _ in 1..n_max {
        let next = p.op(&crate::holomorph::Endomorphism::apply(p.phi(), &a), p.generator());
        if !matches!(partial_cmp_entries(next.entries(), a.entries()), Some(Ordering::Less | Ordering::Equal)) {
            return false;
        }
        a = next;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::protocol::run_exchange;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn t1(v: i64) -> Matrix<Tropical> {
        Matrix::from_rows(vec![vec![Tropical::Finite(v)]]).unwrap()
    }

    #[test]
    fn hand_example() {
        let p = TropicalPlatform::new(t1(-1), t1(5), -10, 10).unwrap();
        let t = Transcript { a: t1(-2), b: t1(5), key: None };
        let out = tropical_binsearch_attack(&p, &t, 100).unwrap();
        assert_eq!(out.recovered_exponent, Some(3));
        let first = Transcript { a: t1(5), b: t1(-1), key: None };
        assert_eq!(tropical_binsearch_attack(&p, &first, 100).unwrap().recovered_exponent, Some(1));
    }

    #[test]
    fn search_without_incomparable_probes() {
        for target in [1u64, 2, 17, 1000, 1 << 20] {
            let mut probes = 0;
            let got = search(1, 1 << 20, 40, |n| {
                probes += 1;
                if n >= target { Side::AtOrPast } else { Side::Before }
            });
            assert_eq!(got, Some(target));
            assert!(probes <= 20);
        }
    }

    #[test]
    fn search_steps_around_incomparable_window() {
        // Probes inside 400..=600 are incomparable; the target is 530.
        let side = |n: u64| match n {
            400..=600 => Side::Incomparable,
            n if n >= 530 => Side::AtOrPast,
            _ => Side::Before,
        };
        assert_eq!(search(1, 1024, 20, side), None);
        let side = |n: u64| match n {
            510..=515 => Side::Incomparable,
            n if n >= 530 => Side::AtOrPast,
            _ => Side::Before,
        };
        assert_eq!(search(1, 1024, 20, side), Some(530));
    }

    #[test]
    fn recovers_random_keys() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let p = TropicalPlatform::random(5, -1000, 1000, &mut rng).unwrap();
            let (t, _, _) = run_exchange(&p, &mut rng, 20).unwrap();
            let out = tropical_binsearch_attack(&p, &t, 1 << 20).unwrap();
            assert!(out.success, "{:?}", out.failure);
            assert!(out.work.search_steps <= 21);
        }
    }

    #[test]
    fn exponent_beyond_bound_fails() {
        let p = TropicalPlatform::new(t1(-1), t1(5), -10, 10).unwrap();
        let t = Transcript { a: t1(-40), b: t1(5), key: None };
        let out = tropical_binsearch_attack(&p, &t, 10).unwrap();
        assert!(!out.success && out.recovered_key.is_none());
    }

    #[test]
    fn sequences_are_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..5 {
            let p = TropicalPlatform::random(5, -1000, 1000, &mut rng).unwrap();
            assert!(tropical_is_monotone(&p, 1000));
        }
    }
}
