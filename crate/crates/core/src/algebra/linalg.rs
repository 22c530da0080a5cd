//! Dense linear algebra over a prime field `Z_p`.

use super::zmod::{add_mod, inv_mod, mul_mod};
use crate::error::{mismatch, Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    rows: Vec<Vec<u64>>,
    ncols: usize,
    p: u64,
}

impl ModMatrix {
    pub fn new(rows: Vec<Vec<u64>>, p: u64) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        let rows = rows.into_iter().map(|r| r.into_iter().map(|v| v % p).collect()).collect();
        ModMatrix { rows, ncols, p }
    }

    /// Builds an `nrows × columns.len()` matrix from its columns.
    pub fn from_columns(columns: &[Vec<u64>], nrows: usize, p: u64) -> Self {
        let rows = (0..nrows).map(|i| columns.iter().map(|c| c[i] % p).collect()).collect();
        ModMatrix { rows, ncols: columns.len(), p }
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.ncols);
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(0, |acc, (&a, &b)| add_mod(acc, mul_mod(a, b, self.p), self.p)))
            .collect()
    }
}

fn require_prime(p: u64) -> Result<()> {
    if !super::is_prime(p) {
        return Err(Error::Unsupported(format!("modulus {p} is not prime")));
    }
    Ok(())
}

/// Reduces `m` in place to reduced row echelon form; returns pivot columns.
fn rref(m: &mut [Vec<u64>], ncols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p).expect("nonzero element of a prime field");
        for v in m[r].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = p - row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if y != 0 {
                    *x = add_mod(*x, mul_mod(f, y, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(a: &ModMatrix) -> Result<usize> {
    require_prime(a.p)?;
    let mut m = a.rows.clone();
    Ok(rref(&mut m, a.ncols, a.p).len())
}

/// Some solution of `a·x = b`, free variables set to zero, or `None` when the
/// system is inconsistent.
pub fn solve(a: &ModMatrix, b: &[u64]) -> Result<Option<Vec<u64>>> {
    require_prime(a.p)?;
    if b.len() != a.nrows() {
        return Err(mismatch(format!("right-hand side has length {}, expected {}", b.len(), a.nrows())));
    }
    let n = a.ncols;
    let mut aug: Vec<Vec<u64>> = a
        .rows
        .iter()
        .zip(b)
        .map(|(r, &bi)| {
            let mut row = r.clone();
            row.push(bi % a.p);
            row
        })
        .collect();
    let pivots = rref(&mut aug, n + 1, a.p);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![0u64; n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n];
    }
    Ok(Some(x))
}

pub fn inverse(a: &ModMatrix) -> Result<ModMatrix> {
    require_prime(a.p)?;
    let n = a.nrows();
    if a.ncols != n {
        return Err(mismatch("inverse of a non-square matrix"));
    }
    let mut aug: Vec<Vec<u64>> = a
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| u64::from(i == j)));
            row
        })
        .collect();
    let pivots = rref(&mut aug, n, a.p);
    if pivots.len() < n {
        return Err(Error::NotInvertible);
    }
    Ok(ModMatrix { rows: aug.into_iter().map(|r| r[n..].to_vec()).collect(), ncols: n, p: a.p })
}

/// Incrementally maintained independent set of vectors, with each echelon row
/// remembered as a combination of the inserted vectors.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    p: u64,
    dim: usize,
    /// `(pivot column, reduced row, combination over inserted vectors)`.
    rows: Vec<(usize, Vec<u64>, Vec<u64>)>,
}

impl EchelonBasis {
    pub fn new(dim: usize, p: u64) -> Result<Self> {
        require_prime(p)?;
        Ok(EchelonBasis { p, dim, rows: Vec::new() })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// Reduces `v` against the basis. Returns the residue and the coefficients
    /// `c` with `v = residue + Σ c_k·inserted_k`.
    fn reduce(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let p = self.p;
        let mut v: Vec<u64> = v.iter().map(|x| x % p).collect();
        let mut coeffs = vec![0u64; self.rows.len()];
        for (pivot, row, combo) in &self.rows {
            let f = v[*pivot];
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for (x, &y) in v.iter_mut().zip(row) {
                *x = add_mod(*x, mul_mod(neg, y, p), p);
            }
            for (c, &y) in coeffs.iter_mut().zip(combo) {
                *c = add_mod(*c, mul_mod(f, y, p), p);
            }
        }
        (v, coeffs)
    }

    /// Adds `v` if it is independent of the current basis; returns whether it
    /// was added.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        assert_eq!(v.len(), self.dim);
        let p = self.p;
        let (mut residue, coeffs) = self.reduce(v);
        let Some(pivot) = residue.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(residue[pivot], p).expect("prime field");
        for x in residue.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        // residue = v - Σ coeffs_k·inserted_k, scaled by inv.
        let k = self.rows.len();
        let mut combo: Vec<u64> = coeffs.iter().map(|&c| mul_mod((p - c) % p, inv, p)).collect();
        combo.push(inv);
        for (_, _, old) in self.rows.iter_mut() {
            old.resize(k + 1, 0);
        }
        self.rows.push((pivot, residue, combo));
        true
    }

    /// Coefficients over the inserted vectors expressing `v`, if `v` lies in
    /// their span.
    pub fn express(&self, v: &[u64]) -> Option<Vec<u64>> {
        let (residue, coeffs) = self.reduce(v);
        residue.iter().all(|&x| x == 0).then_some(coeffs)
    }
}
