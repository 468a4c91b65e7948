//! Residues and square matrices over ℤ/2ᵏ, plus classification of finite
//! abelian 2-groups from their element-order census.
//!
//! Matrices act on column vectors: `a.mul(&b)` is the map "apply `b`, then
//! `a`". Entries are always stored reduced into `[0, 2ᵏ)`, which makes the
//! row-major entry list a canonical form usable as a hash key.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported modulus exponent.
pub const MAX_LEVEL: u32 = 30;

fn check_level(level: u32) -> Result<()> {
    if (1..=MAX_LEVEL).contains(&level) {
        Ok(())
    } else {
        Err(Error::InvalidLevel(level))
    }
}

#[inline]
fn modulus(level: u32) -> u64 {
    1u64 << level
}

#[inline]
fn reduce_signed(value: i64, level: u32) -> u32 {
    value.rem_euclid(modulus(level) as i64) as u32
}

/// Inverse of an odd residue modulo 2^level (Newton iteration on 2-adic digits).
pub fn odd_inverse(a: u32, level: u32) -> Option<u32> {
    if a.is_multiple_of(2) {
        return None;
    }
    let m = modulus(level);
    let a = a as u64 % m;
    // x ≡ a⁻¹ mod 2³ since a·a ≡ 1 mod 8 for odd a; each step doubles precision.
    let mut x = a;
    for _ in 0..5 {
        x = x.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(x)));
    }
    Some((x % m) as u32)
}

/// An element of ℤ/2ᵏ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModScalar {
    value: u32,
    level: u32,
}

// Arithmetic returns Result because the operands must share a level.
#[allow(clippy::should_implement_trait)]
impl ModScalar {
    pub fn new(value: i64, level: u32) -> Result<Self> {
        check_level(level)?;
        Ok(Self {
            value: reduce_signed(value, level),
            level,
        })
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn level(self) -> u32 {
        self.level
    }

    /// Representative in `(-2^(k-1), 2^(k-1)]`.
    pub fn signed(self) -> i64 {
        let m = modulus(self.level) as i64;
        let v = self.value as i64;
        if v > m / 2 {
            v - m
        } else {
            v
        }
    }

    fn same_level(self, other: Self) -> Result<()> {
        if self.level == other.level {
            Ok(())
        } else {
            Err(Error::LevelMismatch {
                left: self.level,
                right: other.level,
            })
        }
    }

    pub fn add(self, other: Self) -> Result<Self> {
        self.same_level(other)?;
        let v = (self.value as u64 + other.value as u64) % modulus(self.level);
        Ok(Self {
            value: v as u32,
            level: self.level,
        })
    }

    pub fn sub(self, other: Self) -> Result<Self> {
        self.same_level(other)?;
        let m = modulus(self.level);
        let v = (self.value as u64 + m - other.value as u64) % m;
        Ok(Self {
            value: v as u32,
            level: self.level,
        })
    }

    pub fn mul(self, other: Self) -> Result<Self> {
        self.same_level(other)?;
        let v = (self.value as u64 * other.value as u64) % modulus(self.level);
        Ok(Self {
            value: v as u32,
            level: self.level,
        })
    }

    pub fn is_unit(self) -> bool {
        self.value % 2 == 1
    }

    pub fn inverse(self) -> Option<Self> {
        odd_inverse(self.value, self.level).map(|value| Self {
            value,
            level: self.level,
        })
    }

    /// 2-adic valuation of the residue, `level` for zero.
    pub fn valuation(self) -> u32 {
        if self.value == 0 {
            self.level
        } else {
            self.value.trailing_zeros()
        }
    }
}

impl fmt::Display for ModScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod 2^{}", self.value, self.level)
    }
}

/// A square matrix over ℤ/2ᵏ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModMatrix {
    dim: usize,
    level: u32,
    entries: Vec<u32>,
}

impl ModMatrix {
    /// Builds a matrix from row-major signed entries, reducing each.
    pub fn from_signed(dim: usize, level: u32, entries: &[i64]) -> Result<Self> {
        check_level(level)?;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: entries.len(),
            });
        }
        Ok(Self {
            dim,
            level,
            entries: entries.iter().map(|&e| reduce_signed(e, level)).collect(),
        })
    }

    pub fn from_rows(level: u32, rows: &[&[i64]]) -> Result<Self> {
        let dim = rows.len();
        let mut flat = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: row.len(),
                });
            }
            flat.extend_from_slice(row);
        }
        Self::from_signed(dim, level, &flat)
    }

    pub fn scalar(dim: usize, level: u32, c: i64) -> Result<Self> {
        check_level(level)?;
        let c = reduce_signed(c, level);
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = c;
        }
        Ok(Self {
            dim,
            level,
            entries,
        })
    }

    pub fn identity(dim: usize, level: u32) -> Result<Self> {
        Self::scalar(dim, level, 1)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Reduced entries in row-major order.
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.dim + col]
    }

    pub fn entry(&self, row: usize, col: usize) -> ModScalar {
        ModScalar {
            value: self.get(row, col),
            level: self.level,
        }
    }

    /// Entries as signed representatives in `(-2^(k-1), 2^(k-1)]`.
    pub fn signed_entries(&self) -> Vec<i64> {
        (0..self.dim * self.dim)
            .map(|i| {
                ModScalar {
                    value: self.entries[i],
                    level: self.level,
                }
                .signed()
            })
            .collect()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let n = self.dim;
        let mask = modulus(self.level) - 1;
        let mut entries = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc = acc.wrapping_add(
                        self.entries[i * n + k] as u64 * other.entries[k * n + j] as u64,
                    );
                }
                entries[i * n + j] = (acc & mask) as u32;
            }
        }
        Ok(Self {
            dim: n,
            level: self.level,
            entries,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mask = modulus(self.level) - 1;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| ((a as u64 + b as u64) & mask) as u32)
            .collect();
        Ok(Self {
            dim: self.dim,
            level: self.level,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let m = modulus(self.level);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| ((a as u64 + m - b as u64) % m) as u32)
            .collect();
        Ok(Self {
            dim: self.dim,
            level: self.level,
            entries,
        })
    }

    pub fn transpose(&self) -> Self {
        let n = self.dim;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        Self {
            dim: n,
            level: self.level,
            entries,
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        let m = modulus(self.level);
        let c = reduce_signed(c, self.level) as u64;
        Self {
            dim: self.dim,
            level: self.level,
            entries: self
                .entries
                .iter()
                .map(|&e| ((e as u64 * c) % m) as u32)
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| self.entries[i * n + j] == u32::from(i == j)))
    }

    /// Reduction to a lower modulus level.
    pub fn reduce(&self, level: u32) -> Result<Self> {
        check_level(level)?;
        if level > self.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: level,
            });
        }
        let mask = (modulus(level) - 1) as u32;
        Ok(Self {
            dim: self.dim,
            level,
            entries: self.entries.iter().map(|&e| e & mask).collect(),
        })
    }

    /// Determinant modulo 2ᵏ, via exact fraction-free elimination over ℤ.
    pub fn det(&self) -> ModScalar {
        let n = self.dim;
        let mut a: Vec<BigInt> = self
            .signed_entries()
            .into_iter()
            .map(BigInt::from)
            .collect();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k * n + k].is_zero() {
                match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                    Some(r) => {
                        for c in 0..n {
                            a.swap(k * n + c, r * n + c);
                        }
                        negate = !negate;
                    }
                    None => {
                        return ModScalar {
                            value: 0,
                            level: self.level,
                        }
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j]) / &prev;
                    a[i * n + j] = v;
                }
            }
            prev = a[k * n + k].clone();
        }
        let mut d = if n == 0 {
            BigInt::one()
        } else {
            a[n * n - 1].clone()
        };
        if negate {
            d = -d;
        }
        let m = BigInt::from(modulus(self.level));
        let r = d.mod_floor(&m);
        ModScalar {
            value: r.to_u32().expect("reduced residue fits"),
            level: self.level,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let lvl = self.level;
        let m = modulus(lvl);
        let mut a: Vec<u64> = self.entries.iter().map(|&e| e as u64).collect();
        let mut inv: Vec<u64> = Self::identity(n, lvl)?
            .entries
            .iter()
            .map(|&e| e as u64)
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[r * n + col] % 2 == 1)
                .ok_or(Error::Singular { level: lvl })?;
            if pivot != col {
                for c in 0..n {
                    a.swap(col * n + c, pivot * n + c);
                    inv.swap(col * n + c, pivot * n + c);
                }
            }
            let p_inv = odd_inverse(a[col * n + col] as u32, lvl).expect("odd pivot") as u64;
            for c in 0..n {
                a[col * n + c] = a[col * n + c] * p_inv % m;
                inv[col * n + c] = inv[col * n + c] * p_inv % m;
            }
            for r in 0..n {
                if r == col || a[r * n + col] == 0 {
                    continue;
                }
                let f = a[r * n + col];
                for c in 0..n {
                    a[r * n + c] = (a[r * n + c] + m * m - f * a[col * n + c] % m) % m;
                    inv[r * n + c] = (inv[r * n + c] + m * m - f * inv[col * n + c] % m) % m;
                }
            }
        }
        Ok(Self {
            dim: n,
            level: lvl,
            entries: inv.into_iter().map(|e| e as u32).collect(),
        })
    }

    /// `self^e` for any integer exponent (negative exponents invert first).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::identity(self.dim, self.level)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `self · other · self⁻¹`.
    pub fn conjugate(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.mul(&self.inverse()?)
    }

    /// Group commutator `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?
            .mul(&self.inverse()?)?
            .mul(&other.inverse()?)
    }

    /// Packs the entries into a single `u128` when `dim² · level ≤ 128`.
    pub fn pack(&self) -> Option<u128> {
        let bits = self.level as usize;
        if self.dim * self.dim * bits > 128 {
            return None;
        }
        let mut key = 0u128;
        for &e in self.entries.iter().rev() {
            key = (key << bits) | e as u128;
        }
        Some(key)
    }

    pub fn unpack(dim: usize, level: u32, key: u128) -> Self {
        let bits = level as usize;
        let mask = (1u128 << bits) - 1;
        let entries = (0..dim * dim)
            .map(|i| ((key >> (i * bits)) & mask) as u32)
            .collect();
        Self {
            dim,
            level,
            entries,
        }
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.signed_entries();
        write!(f, "[")?;
        for r in 0..self.dim {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = s[r * self.dim..(r + 1) * self.dim]
                .iter()
                .map(|e| e.to_string())
                .collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "] mod 2^{}", self.level)
    }
}

/// Isomorphism type of a finite abelian 2-group, as invariant factors
/// sorted in descending order (trivial factors omitted).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianType {
    factors: Vec<u64>,
}

impl AbelianType {
    pub fn new(mut factors: Vec<u64>) -> Result<Self> {
        if let Some(bad) = factors.iter().find(|&&f| !f.is_power_of_two()) {
            return Err(Error::InconsistentCensus(format!(
                "factor {bad} is not a power of 2"
            )));
        }
        factors.retain(|&f| f > 1);
        factors.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { factors })
    }

    pub fn trivial() -> Self {
        Self {
            factors: Vec::new(),
        }
    }

    /// `(ℤ/2)^twos × (ℤ/4)^fours × …` style constructor from `(order, multiplicity)` pairs.
    pub fn from_powers(powers: &[(u64, usize)]) -> Result<Self> {
        let mut v = Vec::new();
        for &(order, mult) in powers {
            v.extend(std::iter::repeat_n(order, mult));
        }
        Self::new(v)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.first().copied().unwrap_or(1)
    }

    /// Number of elements of each exact order.
    pub fn census(&self) -> OrderCensus {
        let mut census = OrderCensus::new();
        let top = self.exponent().trailing_zeros();
        let mut below = 0u64;
        for j in 0..=top {
            // elements killed by 2^j: ∏ 2^min(e_i, j)
            let killed: u64 = self
                .factors
                .iter()
                .map(|f| 1u64 << f.trailing_zeros().min(j))
                .product();
            census.insert(1u64 << j, killed - below);
            below = killed;
        }
        census
    }
}

impl fmt::Display for AbelianType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        // ascending order reads more naturally: Z/2 x (Z/8)^2
        let asc: Vec<u64> = self.factors.iter().rev().copied().collect();
        while i < asc.len() {
            let f0 = asc[i];
            let mut j = i;
            while j < asc.len() && asc[j] == f0 {
                j += 1;
            }
            let count = j - i;
            parts.push(if count == 1 {
                format!("Z/{f0}")
            } else {
                format!("(Z/{f0})^{count}")
            });
            i = j;
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Element counts keyed by exact element order.
pub type OrderCensus = BTreeMap<u64, u64>;

/// Recovers the abelian 2-group type from the number of elements of each
/// order.  For an abelian 2-group with factors 2^{e_i}, the number of
/// elements killed by 2^j is 2^{Σ min(e_i, j)}, so successive quotients of
/// these counts give the number of factors of order at least 2^j.
pub fn abelian_type_from_census(census: &OrderCensus, group_order: u64) -> Result<AbelianType> {
    let total: u64 = census.values().sum();
    if total != group_order {
        return Err(Error::InconsistentCensus(format!(
            "counts sum to {total}, group order is {group_order}"
        )));
    }
    if !group_order.is_power_of_two() {
        return Err(Error::InconsistentCensus(format!(
            "order {group_order} is not a power of 2"
        )));
    }
    if census.get(&1).copied().unwrap_or(0) != 1 {
        return Err(Error::InconsistentCensus(
            "identity must be the unique element of order 1".into(),
        ));
    }
    for &o in census.keys() {
        if !o.is_power_of_two() {
            return Err(Error::InconsistentCensus(format!(
                "element order {o} is not a power of 2"
            )));
        }
    }
    let top = census
        .keys()
        .next_back()
        .map(|o| o.trailing_zeros())
        .unwrap_or(0);
    // log2 of #{x : x^(2^j) = 1}
    let mut logs = Vec::with_capacity(top as usize + 1);
    let mut cumulative = 0u64;
    for j in 0..=top {
        cumulative += census.get(&(1u64 << j)).copied().unwrap_or(0);
        if !cumulative.is_power_of_two() {
            return Err(Error::InconsistentCensus(format!(
                "{cumulative} elements of order dividing 2^{j} is not a power of 2"
            )));
        }
        logs.push(cumulative.trailing_zeros());
    }
    // at_least[j] = number of factors of order >= 2^j, for j >= 1
    let at_least: Vec<u32> = (1..logs.len()).map(|j| logs[j] - logs[j - 1]).collect();
    let mut factors = Vec::new();
    for (idx, &count) in at_least.iter().enumerate() {
        let next = at_least.get(idx + 1).copied().unwrap_or(0);
        if next > count {
            return Err(Error::InconsistentCensus(
                "factor counts are not monotone".to_string(),
            ));
        }
        let exact = count - next;
        factors.extend(std::iter::repeat_n(1u64 << (idx + 1), exact as usize));
    }
    let ty = AbelianType::new(factors)?;
    if ty.census()
        != census
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&k, &v)| (k, v))
            .collect::<OrderCensus>()
    {
        return Err(Error::InconsistentCensus(
            "census does not match any abelian 2-group".into(),
        ));
    }
    Ok(ty)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma(level: u32) -> ModMatrix {
        ModMatrix::from_rows(level, &[&[1, -2], &[0, 1]]).unwrap()
    }

    fn tau(level: u32) -> ModMatrix {
        ModMatrix::from_rows(level, &[&[1, 0], &[2, 1]]).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let m = ModMatrix::from_rows(4, &[&[3, 5], &[7, 2]]).unwrap();
        let id = ModMatrix::identity(2, 4).unwrap();
        assert_eq!(id.mul(&m).unwrap(), m);
        assert_eq!(m.mul(&id).unwrap(), m);
    }

    #[test]
    fn rotated_commutator_at_level_five() {
        let (s, t) = (sigma(5), tau(5));
        let w = t
            .mul(&s.inverse().unwrap())
            .unwrap()
            .mul(&t.inverse().unwrap())
            .unwrap()
            .mul(&s)
            .unwrap();
        assert_eq!(w, ModMatrix::from_rows(5, &[&[29, 8], &[24, 21]]).unwrap());
        assert_eq!(w.signed_entries(), vec![-3, 8, -8, -11]);
    }

    #[test]
    fn sigma_inverse() {
        let s = sigma(4);
        let inv = s.inverse().unwrap();
        assert_eq!(inv, ModMatrix::from_rows(4, &[&[1, 2], &[0, 1]]).unwrap());
        assert!(s.mul(&inv).unwrap().is_identity());
        assert!(ModMatrix::identity(3, 4)
            .unwrap()
            .inverse()
            .unwrap()
            .is_identity());
    }

    #[test]
    fn inverse_of_odd_determinant_matrix() {
        let m = ModMatrix::from_rows(4, &[&[13, 8], &[8, 5]]).unwrap();
        assert_eq!(m.det().value(), (13 * 5 - 64i64).rem_euclid(16) as u32);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&m).unwrap().is_identity());
    }

    #[test]
    fn singular_and_mismatch_errors() {
        let m = ModMatrix::from_rows(3, &[&[2, 1], &[4, 2]]).unwrap();
        assert_eq!(m.inverse(), Err(Error::Singular { level: 3 }));
        let a = ModMatrix::identity(2, 3).unwrap();
        let b = ModMatrix::identity(2, 4).unwrap();
        assert!(matches!(a.mul(&b), Err(Error::LevelMismatch { .. })));
        let c = ModMatrix::identity(3, 3).unwrap();
        assert!(matches!(a.mul(&c), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(
            ModMatrix::identity(2, 0),
            Err(Error::InvalidLevel(0))
        ));
    }

    #[test]
    fn scalar_arithmetic() {
        let a = ModScalar::new(-2, 5).unwrap();
        assert_eq!(a.value(), 30);
        assert_eq!(a.signed(), -2);
        let b = ModScalar::new(17, 5).unwrap();
        assert_eq!(b.mul(b).unwrap().value(), 1);
        assert_eq!(b.inverse().unwrap().value(), 17);
        assert!(a.inverse().is_none());
        assert_eq!(a.valuation(), 1);
        assert!(a.add(ModScalar::new(1, 4).unwrap()).is_err());
        for lvl in 1..=MAX_LEVEL {
            for x in [1u32, 3, 5, 7, 255, 12345] {
                let x = (x % (1 << lvl)) | 1;
                let y = odd_inverse(x, lvl).unwrap();
                assert_eq!((x as u64 * y as u64) % (1u64 << lvl), 1, "level {lvl}");
            }
        }
    }

    #[test]
    fn pack_roundtrip_and_limits() {
        let m = ModMatrix::from_signed(4, 8, &(0..16).map(|i| i * 37 - 100).collect::<Vec<_>>())
            .unwrap();
        let key = m.pack().unwrap();
        assert_eq!(ModMatrix::unpack(4, 8, key), m);
        assert!(ModMatrix::identity(4, 9).unwrap().pack().is_none());
    }

    #[test]
    fn census_of_elementary_group() {
        let census: OrderCensus = [(1, 1), (2, 7)].into_iter().collect();
        let ty = abelian_type_from_census(&census, 8).unwrap();
        assert_eq!(ty.factors(), &[2, 2, 2]);
    }

    #[test]
    fn census_of_z2_z8_z8() {
        let target = AbelianType::new(vec![2, 8, 8]).unwrap();
        let census = target.census();
        assert_eq!(census.values().sum::<u64>(), 128);
        // elements of order ≤ 2: 2^3; ≤ 4: 2^(1+2+2); ≤ 8: 2^7
        assert_eq!(census[&2], 7);
        assert_eq!(census[&4], 24);
        assert_eq!(census[&8], 96);
        assert_eq!(abelian_type_from_census(&census, 128).unwrap(), target);
        assert_eq!(target.to_string(), "Z/2 x (Z/8)^2");
    }

    #[test]
    fn census_of_genus_two_abelianization() {
        let target = AbelianType::from_powers(&[(2, 6), (4, 4)]).unwrap();
        assert_eq!(target.order(), 1 << 14);
        let census = target.census();
        assert_eq!(abelian_type_from_census(&census, 1 << 14).unwrap(), target);
    }

    #[test]
    fn inconsistent_census_rejected() {
        let census: OrderCensus = [(1, 1), (2, 2)].into_iter().collect();
        assert!(abelian_type_from_census(&census, 3).is_err());
        let census: OrderCensus = [(1, 1), (2, 1), (4, 6)].into_iter().collect();
        assert!(abelian_type_from_census(&census, 8).is_err());
        let census: OrderCensus = [(1, 1), (2, 3)].into_iter().collect();
        assert!(abelian_type_from_census(&census, 8).is_err());
    }
}
