use super::{Linear, Ring, Semiring};
use crate::error::{mismatch, Error, Result};

/// An integer modulo `modulus`, always stored reduced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ZMod {
    value: u64,
    modulus: u64,
}

impl ZMod {
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        ZMod { value: value % modulus, modulus }
    }

    pub fn from_i64(value: i64, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        ZMod { value: value.rem_euclid(modulus as i64) as u64, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(Semiring::add(self, rhs))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(Semiring::mul(self, rhs))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = ZMod::new(1, self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = Semiring::mul(&acc, &base);
            }
            base = Semiring::mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; requires `gcd(value, modulus) = 1`.
    pub fn inverse(&self) -> Result<Self> {
        let (g, s, _) = ext_gcd(self.value as i128, self.modulus as i128);
        if g != 1 {
            return Err(Error::NotInvertible);
        }
        Ok(ZMod {
            value: s.rem_euclid(self.modulus as i128) as u64,
            modulus: self.modulus,
        })
    }

    fn check(&self, rhs: &Self) -> Result<()> {
        if self.modulus != rhs.modulus {
            return Err(mismatch(format!(
                "moduli {} and {} differ",
                self.modulus, rhs.modulus
            )));
        }
        Ok(())
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    ZMod::new(a, m).inverse().ok().map(|z| z.value)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Semiring for ZMod {
    type Params = u64;

    fn params(&self) -> u64 {
        self.modulus
    }

    fn zero(modulus: &u64) -> Self {
        ZMod::new(0, *modulus)
    }

    fn one(modulus: &u64) -> Self {
        ZMod::new(1, *modulus)
    }

    fn add(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        ZMod { value: add_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }

    fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.modulus, rhs.modulus);
        ZMod { value: mul_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }

    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl Ring for ZMod {
    fn neg(&self) -> Self {
        ZMod { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
}

impl Linear for ZMod {
    fn modulus(params: &u64) -> u64 {
        *params
    }

    fn dimension(_: &u64) -> usize {
        1
    }

    fn write_coords(&self, out: &mut Vec<u64>) {
        out.push(self.value);
    }

    fn from_coords(params: &u64, coords: &[u64]) -> Self {
        ZMod::new(coords[0], *params)
    }

    fn scale(&self, c: u64) -> Self {
        ZMod { value: mul_mod(self.value, c % self.modulus, self.modulus), modulus: self.modulus }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_on_construction() {
        assert_eq!(ZMod::new(15, 7).value(), 1);
        assert_eq!(ZMod::from_i64(-1, 7).value(), 6);
    }

    #[test]
    fn inverse_mod_seven() {
        assert_eq!(ZMod::new(3, 7).inverse().unwrap().value(), 5);
        assert!(ZMod::new(0, 7).inverse().is_err());
        assert!(ZMod::new(2, 8).inverse().is_err());
    }

    #[test]
    fn mismatched_moduli_rejected() {
        assert!(ZMod::new(1, 7).checked_mul(&ZMod::new(1, 11)).is_err());
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        assert_eq!(ZMod::new(2, 11).pow(5).value(), 10);
        assert_eq!(ZMod::new(2, 11).pow(8).value(), 3);
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1009));
        assert!(is_prime((1 << 31) - 1));
    }
}
