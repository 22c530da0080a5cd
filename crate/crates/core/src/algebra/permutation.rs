use super::bitstring::BitString;
use super::{is_prime, Matrix};
use crate::error::{mismatch, Error, Result};

/// A bijection on `{0..k}`; `mapping[i]` is where position `i` is sent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<usize>,
}

impl Permutation {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; mapping.len()];
        for &j in &mapping {
            if j >= mapping.len() || std::mem::replace(&mut seen[j], true) {
                return Err(Error::InvalidParameter(format!("{mapping:?} is not a bijection")));
            }
        }
        Ok(Permutation { mapping })
    }

    pub fn identity(k: usize) -> Self {
        Permutation { mapping: (0..k).collect() }
    }

    /// Builds the permutation whose nontrivial cycles are `cycles`, each
    /// written as `[i0, i1, ...]` meaning `i0 -> i1 -> ... -> i0`.
    pub fn from_cycles(k: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut mapping: Vec<usize> = (0..k).collect();
        let mut used = vec![false; k];
        for cycle in cycles {
            for (pos, &i) in cycle.iter().enumerate() {
                if i >= k || std::mem::replace(&mut used[i], true) {
                    return Err(Error::InvalidParameter(format!("cycles {cycles:?} overlap or exceed {k}")));
                }
                mapping[i] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Ok(Permutation { mapping })
    }

    /// Disjoint cycles of the given lengths laid out on consecutive positions,
    /// remaining positions fixed.
    pub fn from_cycle_lengths(k: usize, lengths: &[usize]) -> Result<Self> {
        let mut start = 0;
        let mut cycles = Vec::new();
        for &len in lengths {
            cycles.push((start..start + len).collect::<Vec<_>>());
            start += len;
        }
        if start > k {
            return Err(Error::InvalidParameter(format!("cycle lengths {lengths:?} exceed {k}")));
        }
        Self::from_cycles(k, &cycles)
    }

    /// The default high-order permutation on `k` points: disjoint cycles of
    /// distinct prime lengths whose product (the order) is as large as
    /// possible, with any leftover points fixed.
    pub fn default_prime_cycles(k: usize) -> Self {
        Self::from_cycle_lengths(k, &best_prime_partition(k)).expect("partition fits")
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len(), "permutation lengths differ");
        Permutation { mapping: other.mapping.iter().map(|&j| self.mapping[j]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.mapping.iter().enumerate() {
            inv[j] = i;
        }
        Permutation { mapping: inv }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.mapping[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Lengths of the cycles of length at least two.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(Vec::len).filter(|&l| l > 1).collect()
    }

    /// Fixed points are allowed; every longer cycle must have prime length.
    pub fn has_prime_cycles(&self) -> bool {
        self.cycle_lengths().into_iter().all(|l| is_prime(l as u64))
    }

    /// The order, i.e. lcm of the cycle lengths.
    pub fn order(&self) -> u128 {
        self.cycle_lengths().into_iter().fold(1u128, |acc, l| lcm(acc, l as u128))
    }

    pub fn apply_bits(&self, s: &BitString) -> BitString {
        let mut out = 0u64;
        let mut bits = s.bits();
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out |= 1 << self.mapping[i];
            bits &= bits - 1;
        }
        BitString::new(out, s.len()).expect("same length")
    }
}

fn lcm(a: u128, b: u128) -> u128 {
    fn gcd(a: u128, b: u128) -> u128 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn best_prime_partition(k: usize) -> Vec<usize> {
    // best[s] = (product, parts) over distinct primes with sum exactly s.
    let primes: Vec<usize> = (2..=k).filter(|&p| is_prime(p as u64)).collect();
    let mut best: Vec<Option<(f64, Vec<usize>)>> = vec![None; k + 1];
    best[0] = Some((0.0, Vec::new()));
    for &p in &primes {
        for s in (p..=k).rev() {
            if let Some((logp, parts)) = best[s - p].clone() {
                let cand = logp + (p as f64).ln();
                if best[s].as_ref().is_none_or(|(b, _)| cand > *b + 1e-9) {
                    let mut parts = parts;
                    parts.push(p);
                    best[s] = Some((cand, parts));
                }
            }
        }
    }
    best.into_iter()
        .flatten()
        .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap())
        .map(|(_, parts)| parts)
        .unwrap_or_default()
}

/// `h^n` by cycle decomposition, `O(k)` regardless of `n`.
pub fn perm_power(h: &Permutation, n: u64) -> Permutation {
    let mut mapping = vec![0; h.len()];
    for cycle in h.cycles() {
        let len = cycle.len();
        let shift = (n % len as u64) as usize;
        for (pos, &i) in cycle.iter().enumerate() {
            mapping[i] = cycle[(pos + shift) % len];
        }
    }
    Permutation { mapping }
}

/// Reindexes the bits of every entry of `m` by `h`.
pub fn perm_apply_matrix(h: &Permutation, m: &Matrix<BitString>) -> Result<Matrix<BitString>> {
    if h.len() != m.params() as usize {
        return Err(mismatch(format!(
            "permutation on {} points applied to {}-bit entries",
            h.len(),
            m.params()
        )));
    }
    Ok(m.map(|s| h.apply_bits(s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{mat_add, mat_mul, Semiring};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn powers() {
        let swap = Permutation::new(vec![1, 0]).unwrap();
        assert!(perm_power(&swap, 0).is_identity());
        assert!(perm_power(&swap, 2).is_identity());
        assert_eq!(perm_power(&swap, 3), swap);
        let h = Permutation::from_cycle_lengths(5, &[2, 3]).unwrap();
        assert!(perm_power(&h, 6).is_identity());
        assert!(!perm_power(&h, 3).is_identity());
        assert_eq!(h.order(), 6);
    }

    #[test]
    fn power_matches_repeated_composition() {
        let h = Permutation::default_prime_cycles(28);
        let mut acc = Permutation::identity(28);
        for n in 0..40 {
            assert_eq!(perm_power(&h, n), acc);
            acc = h.compose(&acc);
        }
    }

    #[test]
    fn default_cycles() {
        assert_eq!(Permutation::default_prime_cycles(28).cycle_lengths(), vec![2, 3, 5, 7, 11]);
        assert_eq!(Permutation::default_prime_cycles(28).order(), 2310);
        assert_eq!(Permutation::default_prime_cycles(3).cycle_lengths(), vec![3]);
        assert_eq!(Permutation::default_prime_cycles(2).cycle_lengths(), vec![2]);
        assert!(Permutation::default_prime_cycles(1).is_identity());
        assert!(Permutation::default_prime_cycles(10).has_prime_cycles());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert!(Permutation::new(vec![0, 2]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn prime_cycle_check() {
        assert!(Permutation::from_cycle_lengths(4, &[4]).map(|p| !p.has_prime_cycles()).unwrap());
        assert!(Permutation::identity(4).has_prime_cycles());
    }

    #[test]
    fn apply_matrix_examples() {
        let m = Matrix::from_rows(vec![vec!["10".parse::<BitString>().unwrap()]]).unwrap();
        let id = Permutation::identity(2);
        assert_eq!(perm_apply_matrix(&id, &m).unwrap(), m);
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let got = perm_apply_matrix(&swap, &m).unwrap();
        assert_eq!(got.get(0, 0).to_string(), "01");
        assert!(perm_apply_matrix(&Permutation::identity(3), &m).is_err());
    }

    fn random_bits(rng: &mut ChaCha8Rng, n: usize, k: u32) -> Matrix<BitString> {
        Matrix::from_fn(n, n, |_, _| BitString::new(rng.gen_range(0..1u64 << k), k).unwrap())
    }

    #[test]
    fn apply_matrix_is_semiring_automorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let h = Permutation::from_cycle_lengths(4, &[2]).unwrap();
        let h = h.compose(&Permutation::new(vec![0, 2, 3, 1]).unwrap());
        for _ in 0..200 {
            let a = random_bits(&mut rng, 2, 4);
            let b = random_bits(&mut rng, 2, 4);
            let ha = perm_apply_matrix(&h, &a).unwrap();
            let hb = perm_apply_matrix(&h, &b).unwrap();
            assert_eq!(perm_apply_matrix(&h, &mat_mul(&a, &b).unwrap()).unwrap(), mat_mul(&ha, &hb).unwrap());
            assert_eq!(perm_apply_matrix(&h, &mat_add(&a, &b).unwrap()).unwrap(), mat_add(&ha, &hb).unwrap());
        }
        let zero = Matrix::<BitString>::zeros(2, 2, &4);
        assert_eq!(perm_apply_matrix(&h, &zero).unwrap(), zero);
        assert!(zero.get(0, 0).is_zero());
    }
}
