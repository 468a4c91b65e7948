//! Dense matrices over exact scalar types, plus bit-packed linear algebra over 𝔽₂.
//!
//! `Matrix<T>` is generic over any `num_traits::Num` scalar. Elimination
//! routines that divide (`rank`, `nullspace`, `solve`, `inverse`) require a
//! field and are gated on [`FieldScalar`]; the determinant uses fraction-free
//! elimination and so works over ℤ as well.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring::ModMatrix;

/// Marker for scalar types in which every nonzero element is invertible.
pub trait FieldScalar: Num + Clone {}

impl FieldScalar for BigRational {}
impl FieldScalar for num_rational::Rational64 {}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Num + Clone> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                left: rows * cols,
                right: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
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

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &T) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| T::zero() - x.clone()).collect(),
        }
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                left: self.rows,
                right: other.rows,
            });
        }
        Ok(Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        }))
    }

    /// Sub-block of rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Self::from_fn(r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Determinant by fraction-free (Bareiss) elimination; exact in any integral domain.
    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                left: self.rows,
                right: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut a = self.data.clone();
        let mut negate = false;
        let mut prev = T::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                    Some(r) => {
                        for c in 0..n {
                            a.swap(k * n + c, r * n + c);
                        }
                        negate = !negate;
                    }
                    None => return Ok(T::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j].clone() * a[k * n + k].clone()
                        - a[i * n + k].clone() * a[k * n + j].clone())
                        / prev.clone();
                }
            }
            prev = a[k * n + k].clone();
        }
        let d = a[n * n - 1].clone();
        Ok(if negate { T::zero() - d } else { d })
    }
}

/// Reduced row echelon form data: the reduced matrix and its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: FieldScalar> Matrix<T> {
    pub fn rref(&self) -> Echelon<T> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = T::one() / m.get(r, c).clone();
            for j in 0..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right nullspace `{x : self·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let Echelon { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = T::zero() - reduced.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Some solution of `self·x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        if b.len() != self.rows {
            return None;
        }
        let aug = self
            .hstack(&Matrix::from_fn(self.rows, 1, |i, _| b[i].clone()))
            .ok()?;
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                left: self.rows,
                right: self.cols,
            });
        }
        let n = self.rows;
        let Echelon { reduced, pivots } = self.hstack(&Self::identity(n))?.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Domain("matrix is singular".into()));
        }
        Ok(reduced.block(0, n, n, 2 * n))
    }
}

impl<T: Num + Clone + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Integer matrix helpers.
impl Matrix<BigInt> {
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::from_vec(
            rows,
            cols,
            entries.iter().map(|&e| BigInt::from(e)).collect(),
        )
    }

    pub fn to_rational(&self) -> Matrix<BigRational> {
        self.map(|e| BigRational::from_integer(e.clone()))
    }

    /// Reduction modulo 2^level.
    pub fn to_mod(&self, level: u32) -> Result<ModMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                left: self.rows,
                right: self.cols,
            });
        }
        let m = BigInt::from(1u64 << level.min(62));
        let entries: Vec<i64> = self
            .data
            .iter()
            .map(|e| {
                let r = ((e % &m) + &m) % &m;
                i64::try_from(r).expect("residue fits in i64")
            })
            .collect();
        ModMatrix::from_signed(self.rows, level, &entries)
    }

    pub fn from_mod(m: &ModMatrix) -> Self {
        let n = m.dim();
        Self::from_i64(n, n, &m.signed_entries()).expect("square by construction")
    }

    /// Gcd of all entries, made non-negative.
    pub fn content(&self) -> BigInt {
        use num_integer::Integer;
        self.data
            .iter()
            .fold(BigInt::zero(), |acc, e| acc.gcd(e))
            .abs()
    }
}

/// Dense linear algebra over 𝔽₂ with vectors packed into `u64` (at most 64 coordinates).
pub mod gf2 {
    /// Incrementally built basis in reduced echelon form, remembering how each
    /// stored vector was formed from the inserted ones.
    #[derive(Debug, Clone, Default)]
    pub struct Basis {
        // (vector, combination of inserted vectors producing it, pivot bit)
        rows: Vec<(u64, u128, u32)>,
        inserted: usize,
    }

    impl Basis {
        pub fn new() -> Self {
            Self::default()
        }

        pub fn dim(&self) -> usize {
            self.rows.len()
        }

        /// Number of vectors offered so far (independent or not).
        pub fn inserted(&self) -> usize {
            self.inserted
        }

        fn reduce(&self, mut v: u64) -> (u64, u128) {
            let mut combo = 0u128;
            for &(row, c, pivot) in &self.rows {
                if v >> pivot & 1 == 1 {
                    v ^= row;
                    combo ^= c;
                }
            }
            (v, combo)
        }

        /// Adds `v`; returns `true` when it was independent of the previous vectors.
        pub fn insert(&mut self, v: u64) -> bool {
            assert!(
                self.inserted < 128,
                "gf2::Basis tracks at most 128 insertions"
            );
            let idx = self.inserted;
            self.inserted += 1;
            let (r, combo) = self.reduce(v);
            if r == 0 {
                return false;
            }
            let pivot = 63 - r.leading_zeros();
            let combo = combo ^ (1u128 << idx);
            for row in &mut self.rows {
                if row.0 >> pivot & 1 == 1 {
                    row.0 ^= r;
                    row.1 ^= combo;
                }
            }
            self.rows.push((r, combo, pivot));
            true
        }

        pub fn contains(&self, v: u64) -> bool {
            self.reduce(v).0 == 0
        }

        /// Bitmask of inserted vectors summing to `v`, if `v` is in the span.
        pub fn express(&self, v: u64) -> Option<u128> {
            let (r, combo) = self.reduce(v);
            (r == 0).then_some(combo)
        }
    }

    pub fn rank(vectors: &[u64]) -> usize {
        let mut b = Basis::new();
        for &v in vectors {
            b.insert(v);
        }
        b.dim()
    }

    /// All vectors in the span (2^rank of them), sorted.
    pub fn span(vectors: &[u64]) -> Vec<u64> {
        let mut basis: Vec<u64> = Vec::new();
        let mut b = Basis::new();
        for &v in vectors {
            if b.insert(v) {
                basis.push(v);
            }
        }
        let mut out = Vec::with_capacity(1 << basis.len());
        for mask in 0u64..(1 << basis.len()) {
            let mut s = 0;
            for (i, &v) in basis.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    s ^= v;
                }
            }
            out.push(s);
        }
        out.sort_unstable();
        out
    }

    /// Rank of `M - I` for a linear map given by the images of the unit vectors.
    pub fn deviation_rank(images: &[u64]) -> usize {
        let dev: Vec<u64> = images
            .iter()
            .enumerate()
            .map(|(i, &v)| v ^ (1u64 << i))
            .collect();
        rank(&dev)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RatMatrix;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn integer_det_and_mul() {
        let a = Matrix::<BigInt>::from_i64(3, 3, &[2, -1, 0, 1, 3, 4, 0, 5, -2]).unwrap();
        assert_eq!(a.det().unwrap(), BigInt::from(2 * (-6 - 20) + (-2)));
        let id = Matrix::<BigInt>::identity(3);
        assert_eq!(a.mul(&id).unwrap(), a);
        assert!(Matrix::<BigInt>::from_i64(2, 2, &[0, 1, 0, 2])
            .unwrap()
            .det()
            .unwrap()
            .is_zero());
    }

    #[test]
    fn rational_inverse_and_nullspace() {
        let a: RatMatrix = Matrix::<BigInt>::from_i64(2, 2, &[1, 2, 3, 4])
            .unwrap()
            .to_rational();
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        let b: RatMatrix =
            Matrix::from_vec(2, 3, vec![q(1), q(2), q(3), q(2), q(4), q(6)]).unwrap();
        assert_eq!(b.rank(), 1);
        let ns = b.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(b.mul_vec(&v).unwrap().iter().all(|x| x.is_zero()));
        }
        assert!(b.solve(&[q(1), q(3)]).is_none());
        let x = b.solve(&[q(1), q(2)]).unwrap();
        assert_eq!(b.mul_vec(&x).unwrap(), vec![q(1), q(2)]);
    }

    #[test]
    fn gf2_basis_expresses_combinations() {
        let mut b = gf2::Basis::new();
        assert!(b.insert(0b011));
        assert!(b.insert(0b110));
        assert!(!b.insert(0b101));
        assert_eq!(b.dim(), 2);
        assert_eq!(b.express(0b101), Some(0b11));
        assert_eq!(b.express(0b001), None);
        assert_eq!(gf2::span(&[0b1, 0b10]), vec![0, 1, 2, 3]);
        // transvection on 𝔽₂²: e1 -> e1, e2 -> e1 + e2
        assert_eq!(gf2::deviation_rank(&[0b01, 0b11]), 1);
    }

    #[test]
    fn mod_roundtrip() {
        let m = ModMatrix::from_rows(5, &[&[29, 8], &[24, 21]]).unwrap();
        let z = Matrix::<BigInt>::from_mod(&m);
        assert_eq!(z.data()[0], BigInt::from(-3));
        assert_eq!(z.to_mod(5).unwrap(), m);
    }
}
