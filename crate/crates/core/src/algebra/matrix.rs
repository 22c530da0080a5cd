use std::ops::{Add, Mul};

use super::linalg::{self, ModMatrix};
use super::{Linear, Ring, Semiring, ZMod};
use crate::error::{mismatch, Error, Result};

/// A dense row-major matrix whose entries all come from one semiring with
/// one set of parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: Semiring> Matrix<S> {
    pub fn from_vec(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(mismatch("matrices must have at least one row and column"));
        }
        if entries.len() != rows * cols {
            return Err(mismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        let p = entries[0].params();
        if entries.iter().skip(1).any(|e| e.params() != p) {
            return Err(mismatch("matrix entries have inconsistent parameters"));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(mismatch("ragged rows"));
        }
        Self::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let entries = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        Self::from_vec(rows, cols, entries).expect("from_fn produced an invalid matrix")
    }

    pub(crate) fn from_parts(rows: usize, cols: usize, entries: Vec<S>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        Matrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize, params: &S::Params) -> Self {
        Matrix { rows, cols, entries: vec![S::zero(params); rows * cols] }
    }

    pub fn identity(n: usize, params: &S::Params) -> Self {
        let (zero, one) = (S::zero(params), S::one(params));
        let entries = (0..n * n).map(|k| if k / n == k % n { one.clone() } else { zero.clone() }).collect();
        Matrix { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        self.entries.chunks(self.cols).map(<[S]>::to_vec).collect()
    }

    pub fn params(&self) -> S::Params {
        self.entries[0].params()
    }

    pub fn map(&self, f: impl FnMut(&S) -> S) -> Self {
        Matrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = (self.rows, self.cols);
        Matrix::from_parts(c, r, (0..r * c).map(|k| self.get(k % r, k / r).clone()).collect())
    }

    fn same_params(&self, other: &Self) -> Result<()> {
        if self.params() != other.params() {
            return Err(mismatch("matrices over different scalar parameters"));
        }
        Ok(())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(mismatch(format!(
                "shapes {}x{} and {}x{} differ",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.same_params(other)
    }

    fn mul_unchecked(&self, rhs: &Self) -> Self {
        let (n, m, p) = (self.rows, self.cols, rhs.cols);
        let mut out = Vec::with_capacity(n * p);
        for i in 0..n {
            let row = &self.entries[i * m..(i + 1) * m];
            for j in 0..p {
                let mut acc = row[0].mul(&rhs.entries[j]);
                for (k, a) in row.iter().enumerate().skip(1) {
                    acc = acc.add(&a.mul(&rhs.entries[k * p + j]));
                }
                out.push(acc);
            }
        }
        Matrix::from_parts(n, p, out)
    }

    fn add_unchecked(&self, rhs: &Self) -> Self {
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.add(b)).collect();
        Matrix::from_parts(self.rows, self.cols, entries)
    }

    /// `n`-th power by square-and-multiply; `n = 0` gives the identity.
    pub fn pow(&self, mut n: u64) -> Self {
        assert!(self.is_square(), "power of a non-square matrix");
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        if n == 0 {
            return Matrix::identity(self.rows, &self.params());
        }
        loop {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul_unchecked(&base),
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = base.mul_unchecked(&base);
        }
        acc.expect("n >= 1")
    }

    /// `self ⊕ rhs ⊕ (self ⊗ rhs)`.
    pub fn star(&self, rhs: &Self) -> Self {
        mat_star(self, rhs).expect("star of incompatible matrices")
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul_unchecked(other) == other.mul_unchecked(self)
    }
}

impl<S: Ring> Matrix<S> {
    pub fn neg(&self) -> Self {
        self.map(Ring::neg)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert!(self.same_shape(rhs).is_ok(), "subtraction of incompatible matrices");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.sub(b)).collect();
        Matrix::from_parts(self.rows, self.cols, entries)
    }
}

impl<S: Linear> Matrix<S> {
    pub fn scale(&self, c: u64) -> Self {
        self.map(|e| e.scale(c))
    }

    /// `c·self + rhs`.
    pub fn axpy(&self, c: u64, rhs: &Self) -> Self {
        assert!(self.same_shape(rhs).is_ok(), "axpy of incompatible matrices");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.scale(c).add(b)).collect();
        Matrix::from_parts(self.rows, self.cols, entries)
    }

    /// Inverse of a square matrix over a finite-dimensional algebra, found by
    /// solving `H·X = I` through the coordinate embedding. Requires a prime
    /// modulus.
    pub fn inverse_linear(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(mismatch("inverse of a non-square matrix"));
        }
        let params = self.params();
        let p = S::modulus(&params);
        if !super::is_prime(p) {
            return Err(Error::Unsupported(format!("modulus {p} is not prime")));
        }
        let n = self.rows;
        let dim = n * n * S::dimension(&params);
        // Column j of the left-multiplication map is flatten(H·E_j).
        let zero = Matrix::zeros(n, n, &params);
        let mut columns = Vec::with_capacity(dim);
        let mut unit = vec![0u64; dim];
        for j in 0..dim {
            unit[j] = 1;
            let basis = unflatten(&params, n, n, &unit);
            unit[j] = 0;
            debug_assert!(basis != zero);
            columns.push(flatten(&self.mul_unchecked(&basis)));
        }
        let map = ModMatrix::from_columns(&columns, dim, p);
        let target = flatten(&Matrix::<S>::identity(n, &params));
        let x = linalg::solve(&map, &target)?.ok_or(Error::NotInvertible)?;
        let inv = unflatten(&params, n, n, &x);
        if inv.mul_unchecked(self) != Matrix::identity(n, &params) {
            return Err(Error::Internal("one-sided inverse is not two-sided".into()));
        }
        Ok(inv)
    }
}

impl<S: Semiring> Mul for &Matrix<S> {
    type Output = Matrix<S>;

    fn mul(self, rhs: Self) -> Matrix<S> {
        mat_mul(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl<S: Semiring> Add for &Matrix<S> {
    type Output = Matrix<S>;

    fn add(self, rhs: Self) -> Matrix<S> {
        mat_add(self, rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

/// `C_ij = ⊕_k A_ik ⊗ B_kj`.
pub fn mat_mul<S: Semiring>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    if a.cols != b.rows {
        return Err(mismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    a.same_params(b)?;
    Ok(a.mul_unchecked(b))
}

pub fn mat_add<S: Semiring>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    a.same_shape(b)?;
    Ok(a.add_unchecked(b))
}

/// Adjoint multiplication `A ⊕ B ⊕ (A ⊗ B)`.
pub fn mat_star<S: Semiring>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>> {
    a.same_shape(b)?;
    if !a.is_square() {
        return Err(mismatch("adjoint multiplication needs square matrices"));
    }
    Ok(a.add_unchecked(b).add_unchecked(&a.mul_unchecked(b)))
}

/// Inverse over a prime field by Gauss-Jordan elimination.
pub fn mat_inverse(a: &Matrix<ZMod>) -> Result<Matrix<ZMod>> {
    if !a.is_square() {
        return Err(mismatch("inverse of a non-square matrix"));
    }
    let p = a.params();
    if !super::is_prime(p) {
        return Err(Error::Unsupported(format!("modulus {p} is not prime")));
    }
    let rows = a.entries.chunks(a.cols).map(|r| r.iter().map(ZMod::value).collect()).collect();
    let inv = linalg::inverse(&ModMatrix::new(rows, p))?;
    Ok(Matrix::from_parts(
        a.rows,
        a.cols,
        inv.rows().iter().flatten().map(|&v| ZMod::new(v, p)).collect(),
    ))
}

/// Coordinates of a matrix over a `Z_p`-algebra: entries in row-major order,
/// each expanded to its own coordinates.
pub fn flatten<S: Linear>(m: &Matrix<S>) -> Vec<u64> {
    let params = m.params();
    let mut out = Vec::with_capacity(m.entries.len() * S::dimension(&params));
    for e in &m.entries {
        e.write_coords(&mut out);
    }
    out
}

pub fn unflatten<S: Linear>(params: &S::Params, rows: usize, cols: usize, coords: &[u64]) -> Matrix<S> {
    let d = S::dimension(params);
    assert_eq!(coords.len(), rows * cols * d, "coordinate vector has the wrong length");
    Matrix::from_parts(rows, cols, coords.chunks(d).map(|c| S::from_coords(params, c)).collect())
}

/// Column-stacking vectorisation.
pub fn vec(m: &Matrix<ZMod>) -> Vec<u64> {
    (0..m.cols).flat_map(|j| (0..m.rows).map(move |i| m.get(i, j).value())).collect()
}

/// Inverse of [`vec`] for an `n×n` matrix.
pub fn unvec(v: &[u64], n: usize, modulus: u64) -> Result<Matrix<ZMod>> {
    if n == 0 || v.len() != n * n {
        return Err(mismatch(format!("vector of length {} is not vec of an {n}x{n} matrix", v.len())));
    }
    Ok(Matrix::from_fn(n, n, |i, j| ZMod::new(v[j * n + i], modulus)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{BitString, GroupName, GroupRingElement, GroupRingParams, Tropical};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn zmat(rows: &[&[u64]], p: u64) -> Matrix<ZMod> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| ZMod::new(v, p)).collect()).collect()).unwrap()
    }

    fn random_z(rng: &mut ChaCha8Rng, r: usize, c: usize, p: u64) -> Matrix<ZMod> {
        Matrix::from_fn(r, c, |_, _| ZMod::new(rng.gen_range(0..p), p))
    }

    fn random_trop(rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix<Tropical> {
        Matrix::from_fn(r, c, |_, _| {
            if rng.gen_bool(0.1) {
                Tropical::Infinity
            } else {
                Tropical::Finite(rng.gen_range(-50..50))
            }
        })
    }

    fn random_gr(rng: &mut ChaCha8Rng, n: usize, p: &GroupRingParams) -> Matrix<GroupRingElement> {
        Matrix::from_fn(n, n, |_, _| {
            let c = (0..p.group.order()).map(|_| rng.gen_range(0..p.modulus)).collect();
            GroupRingElement::new(p, c).unwrap()
        })
    }

    fn random_bits(rng: &mut ChaCha8Rng, r: usize, c: usize, k: u32) -> Matrix<BitString> {
        Matrix::from_fn(r, c, |_, _| BitString::new(rng.gen_range(0..1u64 << k), k).unwrap())
    }

    /// Plain triple loop with explicit min over k.
    fn minplus_oracle(a: &Matrix<Tropical>, b: &Matrix<Tropical>) -> Vec<Tropical> {
        let mut out = Vec::new();
        for i in 0..a.rows() {
            for j in 0..b.cols() {
                let mut best = Tropical::Infinity;
                for k in 0..a.cols() {
                    if let (Some(x), Some(y)) = (a.get(i, k).finite(), b.get(k, j).finite()) {
                        if best.finite().is_none_or(|b| x + y < b) {
                            best = Tropical::Finite(x + y);
                        }
                    }
                }
                out.push(best);
            }
        }
        out
    }

    #[test]
    fn identity_is_neutral() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_z(&mut rng, 3, 3, 7);
        assert_eq!(&a * &Matrix::identity(3, &7), a);
        assert_eq!(&Matrix::identity(3, &7) * &a, a);
    }

    #[test]
    fn bitstring_product_of_disjoint_bits() {
        let a = Matrix::from_rows(vec![vec!["01".parse::<BitString>().unwrap()]]).unwrap();
        let b = Matrix::from_rows(vec![vec!["10".parse::<BitString>().unwrap()]]).unwrap();
        assert_eq!(mat_mul(&a, &b).unwrap().get(0, 0).to_string(), "00");
        assert_eq!(mat_add(&a, &a).unwrap(), a);
    }

    #[test]
    fn tropical_product_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let a = random_trop(&mut rng, 3, 3);
            let b = random_trop(&mut rng, 3, 3);
            assert_eq!(mat_mul(&a, &b).unwrap().entries(), &minplus_oracle(&a, &b)[..]);
        }
    }

    #[test]
    fn tropical_star() {
        let a = Matrix::from_rows(vec![vec![Tropical::Finite(5)]]).unwrap();
        let b = Matrix::from_rows(vec![vec![Tropical::Finite(-1)]]).unwrap();
        assert_eq!(mat_star(&a, &b).unwrap().get(0, 0), &Tropical::Finite(-1));

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let a = random_trop(&mut rng, 2, 2);
            let b = random_trop(&mut rng, 2, 2);
            let prod = minplus_oracle(&a, &b);
            let got = mat_star(&a, &b).unwrap();
            for (k, p) in prod.iter().enumerate() {
                let want = a.entries()[k].min(b.entries()[k]).min(*p);
                assert_eq!(got.entries()[k], want);
            }
        }
    }

    #[test]
    fn shape_and_parameter_mismatch() {
        let a = zmat(&[&[1, 2]], 7);
        let b = zmat(&[&[1, 2]], 7);
        assert!(mat_mul(&a, &b).is_err());
        assert!(mat_add(&a, &zmat(&[&[1], &[2]], 7)).is_err());
        assert!(mat_add(&a, &zmat(&[&[1, 2]], 11)).is_err());
        assert!(mat_star(&a, &b).is_err());
        let mixed = vec![ZMod::new(1, 7), ZMod::new(1, 11)];
        assert!(Matrix::from_vec(1, 2, mixed).is_err());
        assert!(Matrix::<ZMod>::from_vec(1, 3, vec![ZMod::new(1, 7)]).is_err());
    }

    #[test]
    fn associativity_all_semirings() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let gp = GroupRingParams::new(GroupName::S3.table(), 7);
        for t in 0..1000 {
            let (n, m, k, l) = (1 + t % 4, 1 + (t / 4) % 4, 1 + (t / 16) % 4, 1 + (t / 64) % 4);
            let (a, b, c) = (random_z(&mut rng, n, m, 101), random_z(&mut rng, m, k, 101), random_z(&mut rng, k, l, 101));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            let (a, b, c) = (random_trop(&mut rng, n, m), random_trop(&mut rng, m, k), random_trop(&mut rng, k, l));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            let (a, b, c) = (random_bits(&mut rng, n, m, 6), random_bits(&mut rng, m, k, 6), random_bits(&mut rng, k, l, 6));
            assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            if t < 200 {
                let s = 1 + t % 3;
                let (a, b, c) = (random_gr(&mut rng, s, &gp), random_gr(&mut rng, s, &gp), random_gr(&mut rng, s, &gp));
                assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mat_inverse(&Matrix::identity(3, &7)).unwrap(), Matrix::identity(3, &7));
        assert_eq!(mat_inverse(&zmat(&[&[3]], 7)).unwrap(), zmat(&[&[5]], 7));
        assert!(matches!(mat_inverse(&zmat(&[&[1, 2], &[2, 4]], 7)), Err(Error::NotInvertible)));
        assert!(matches!(mat_inverse(&zmat(&[&[3]], 8)), Err(Error::Unsupported(_))));

        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut found = 0;
        while found < 50 {
            let a = random_z(&mut rng, 3, 3, 1009);
            if let Ok(inv) = mat_inverse(&a) {
                assert_eq!(&a * &inv, Matrix::identity(3, &1009));
                found += 1;
            }
        }
    }

    #[test]
    fn group_ring_inverse_via_embedding() {
        let p = GroupRingParams::new(GroupName::S3.table(), 7);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let mut found = 0;
        for _ in 0..20 {
            let h = random_gr(&mut rng, 2, &p);
            match h.inverse_linear() {
                Ok(inv) => {
                    assert_eq!(&h * &inv, Matrix::identity(2, &p));
                    found += 1;
                }
                Err(Error::NotInvertible) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(found > 0);
        assert!(matches!(Matrix::<GroupRingElement>::zeros(2, 2, &p).inverse_linear(), Err(Error::NotInvertible)));
    }

    #[test]
    fn flatten_dimensions_and_linearity() {
        assert_eq!(flatten(&Matrix::<ZMod>::zeros(2, 2, &7)), vec![0; 4]);
        assert_eq!(flatten(&zmat(&[&[3]], 7)), vec![3]);
        let p = GroupRingParams::new(GroupName::S3.table(), 7);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = random_gr(&mut rng, 3, &p);
            let b = random_gr(&mut rng, 3, &p);
            let c = rng.gen_range(0..7u64);
            let fa = flatten(&a);
            let fb = flatten(&b);
            assert_eq!(fa.len(), 54);
            let lhs = flatten(&a.axpy(c, &b));
            let rhs: Vec<u64> = fa.iter().zip(&fb).map(|(x, y)| (c * x + y) % 7).collect();
            assert_eq!(lhs, rhs);
            assert_eq!(unflatten(&p, 3, 3, &fa), a);
            assert_eq!(fa == fb, a == b);
        }
    }

    #[test]
    fn vec_is_column_major() {
        let m = zmat(&[&[1, 3], &[2, 4]], 7);
        assert_eq!(vec(&m), vec![1, 2, 3, 4]);
        assert_eq!(unvec(&vec(&m), 2, 7).unwrap(), m);
        assert!(unvec(&[1, 2, 3], 2, 7).is_err());
    }

    #[test]
    fn vec_round_trip_up_to_eight() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 1..=8 {
            for _ in 0..10 {
                let m = random_z(&mut rng, n, n, 101);
                assert_eq!(unvec(&vec(&m), n, 101).unwrap(), m);
            }
        }
    }

    #[test]
    fn pow_matches_repeated_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_z(&mut rng, 3, 3, 101);
        let mut acc = Matrix::identity(3, &101);
        for n in 0..20 {
            assert_eq!(a.pow(n), acc);
            acc = &acc * &a;
        }
    }
}
