//! The alternating form on (ℤ/2ᵏ)^{2g}, similitude multipliers, congruence
//! levels, transvections, and the subset model of the 2-torsion.
//!
//! The ordered basis is a₁..a_g, b₁..b_g and the Gram matrix is
//! `[[0, -I], [I, 0]]`, so e(a_i, b_i) = -1.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{ModMatrix, ModScalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymplecticSpace {
    genus: usize,
    level: u32,
    gram: ModMatrix,
}

impl SymplecticSpace {
    pub fn new(genus: usize, level: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::Domain("genus must be positive".into()));
        }
        let n = 2 * genus;
        let mut entries = vec![0i64; n * n];
        for i in 0..genus {
            entries[i * n + genus + i] = -1;
            entries[(genus + i) * n + i] = 1;
        }
        Ok(Self {
            genus,
            level,
            gram: ModMatrix::from_signed(n, level, &entries)?,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn gram(&self) -> &ModMatrix {
        &self.gram
    }

    /// Same genus, different modulus.
    pub fn at_level(&self, level: u32) -> Result<Self> {
        Self::new(self.genus, level)
    }

    /// e(x, y) = xᵀ J y.
    pub fn pairing(&self, x: &[i64], y: &[i64]) -> Result<ModScalar> {
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: x.len().max(y.len()),
            });
        }
        let j = self.gram.signed_entries();
        let mut acc = 0i64;
        for r in 0..n {
            for c in 0..n {
                acc += x[r] * j[r * n + c] * y[c];
            }
        }
        ModScalar::new(acc, self.level)
    }

    /// Unit vector a_i (1-based `i`).
    pub fn a(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        v[i - 1] = 1;
        v
    }

    /// Unit vector b_i (1-based `i`).
    pub fn b(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        v[self.genus + i - 1] = 1;
        v
    }

    pub fn minus_one(&self) -> ModMatrix {
        ModMatrix::scalar(self.dim(), self.level, -1).expect("level validated at construction")
    }

    /// Multiplier λ with mᵀJm = λJ, if `m` is a symplectic similitude.
    pub fn multiplier(&self, m: &ModMatrix) -> Result<Option<ModScalar>> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: m.dim(),
            });
        }
        if m.level() != self.level {
            return Err(Error::LevelMismatch {
                left: self.level,
                right: m.level(),
            });
        }
        let lhs = m.transpose().mul(&self.gram)?.mul(m)?;
        // J[g][0] = 1, so λ is read off directly.
        let lambda = lhs.entry(self.genus, 0);
        if !lambda.is_unit() {
            return Ok(None);
        }
        let rhs = self.gram.scale(lambda.signed());
        Ok((lhs == rhs).then_some(lambda))
    }

    pub fn is_symplectic(&self, m: &ModMatrix) -> Result<bool> {
        Ok(self.multiplier(m)?.map(|l| l.value() == 1).unwrap_or(false))
    }

    /// Matrix of v ↦ v + m·e(v, a)·a.
    pub fn transvection_matrix(&self, t: &Transvection) -> Result<ModMatrix> {
        let n = self.dim();
        if t.direction.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: t.direction.len(),
            });
        }
        let a = &t.direction;
        // e(v, a) = vᵀ J a = (J a)·v
        let j = self.gram.signed_entries();
        let ja: Vec<i64> = (0..n)
            .map(|r| (0..n).map(|c| j[r * n + c] * a[c]).sum())
            .collect();
        let mut entries = vec![0i64; n * n];
        for r in 0..n {
            for c in 0..n {
                entries[r * n + c] = i64::from(r == c) + t.exponent * a[r] * ja[c];
            }
        }
        ModMatrix::from_signed(n, self.level, &entries)
    }
}

/// Largest n ≤ level with m ≡ I mod 2ⁿ.
pub fn congruence_level(m: &ModMatrix) -> u32 {
    let n = m.dim();
    let mut best = m.level();
    for r in 0..n {
        for c in 0..n {
            let diff = ModScalar::new(m.get(r, c) as i64 - i64::from(r == c), m.level())
                .expect("level already valid");
            best = best.min(diff.valuation());
        }
    }
    best
}

/// The automorphism v ↦ v + exponent·e(v, direction)·direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transvection {
    pub direction: Vec<i64>,
    pub exponent: i64,
}

impl Transvection {
    pub fn new(direction: Vec<i64>, exponent: i64) -> Self {
        Self {
            direction,
            exponent,
        }
    }
}

/// Two-element and tail subsets of the roots representing the symplectic basis
/// of the 2-torsion: a_i = {2i−1, 2i}, b_i = {2i, …, 2g+1}. Subsets are bitmasks
/// over root indices, bit 0 standing for the first root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilBasis {
    pub d: usize,
    pub genus: usize,
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

pub fn weil_subset_basis(d: usize) -> Result<WeilBasis> {
    if d < 3 {
        return Err(Error::Domain(format!("need at least 3 roots, got {d}")));
    }
    if d > 63 {
        return Err(Error::Domain(format!(
            "too many roots for bitmask model: {d}"
        )));
    }
    let g = (d - 1) / 2;
    let bit = |k: usize| 1u64 << (k - 1);
    let a = (1..=g).map(|i| bit(2 * i - 1) | bit(2 * i)).collect();
    let b = (1..=g)
        .map(|i| (2 * i..=2 * g + 1).fold(0u64, |acc, k| acc | bit(k)))
        .collect();
    Ok(WeilBasis { d, genus: g, a, b })
}

impl WeilBasis {
    /// Coordinates (a₁..a_g, b₁..b_g) mod 2 of an even subset, read off via the
    /// intersection pairing: the a_i coefficient is ⟨T, b_i⟩ and the b_i coefficient is ⟨T, a_i⟩.
    pub fn coordinates(&self, subset: u64) -> Result<Vec<u8>> {
        if !subset.count_ones().is_multiple_of(2) {
            return Err(Error::Domain("subset must have even cardinality".into()));
        }
        let pair = |s: u64, t: u64| ((s & t).count_ones() % 2) as u8;
        let mut out: Vec<u8> = self.b.iter().map(|&bi| pair(subset, bi)).collect();
        out.extend(self.a.iter().map(|&ai| pair(subset, ai)));
        Ok(out)
    }

    /// Level-1 matrix of the action of a root permutation (`perm[k]` is the
    /// image of root k, 0-based) on the 2-torsion.
    pub fn permutation_matrix(&self, perm: &[usize]) -> Result<ModMatrix> {
        if perm.len() != self.d {
            return Err(Error::DimensionMismatch {
                left: self.d,
                right: perm.len(),
            });
        }
        let apply = |s: u64| {
            (0..self.d)
                .filter(|&k| s >> k & 1 == 1)
                .fold(0u64, |acc, k| acc | 1 << perm[k])
        };
        let n = 2 * self.genus;
        let images: Vec<Vec<u8>> = self
            .a
            .iter()
            .chain(&self.b)
            .map(|&s| self.coordinates(apply(s)))
            .collect::<Result<_>>()?;
        let mut entries = vec![0i64; n * n];
        for (c, col) in images.iter().enumerate() {
            for (r, &x) in col.iter().enumerate() {
                entries[r * n + c] = x as i64;
            }
        }
        ModMatrix::from_signed(n, 1, &entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_sign() {
        let s = SymplecticSpace::new(2, 5).unwrap();
        assert_eq!(s.pairing(&s.a(1), &s.b(1)).unwrap().signed(), -1);
        assert_eq!(s.pairing(&s.b(2), &s.a(2)).unwrap().signed(), 1);
        assert_eq!(s.pairing(&s.a(1), &s.b(2)).unwrap().value(), 0);
    }

    #[test]
    fn similitude_multiplier() {
        let s = SymplecticSpace::new(1, 5).unwrap();
        let id = ModMatrix::identity(2, 5).unwrap();
        assert_eq!(s.multiplier(&id).unwrap().unwrap().value(), 1);
        let d = ModMatrix::from_rows(5, &[&[1, 0], &[0, 7]]).unwrap();
        assert_eq!(s.multiplier(&d).unwrap().unwrap().value(), 7);
        let bad = ModMatrix::from_rows(5, &[&[1, 1], &[0, 2]]).unwrap();
        assert_eq!(s.multiplier(&bad).unwrap(), None);
    }

    #[test]
    fn congruence_levels() {
        assert_eq!(congruence_level(&ModMatrix::identity(4, 4).unwrap()), 4);
        let sigma = ModMatrix::from_rows(5, &[&[1, -2], &[0, 1]]).unwrap();
        assert_eq!(congruence_level(&sigma), 1);
        assert_eq!(congruence_level(&ModMatrix::scalar(2, 5, 17).unwrap()), 4);
    }

    #[test]
    fn fourth_power_transvections_hit_off_diagonal_slots() {
        let s = SymplecticSpace::new(2, 3).unwrap();
        let ta = s
            .transvection_matrix(&Transvection::new(s.a(1), 4))
            .unwrap();
        let tb = s
            .transvection_matrix(&Transvection::new(s.b(1), 4))
            .unwrap();
        assert_eq!(ta.entry(0, 2).signed(), 4);
        assert_eq!(tb.entry(2, 0).signed(), 4); // −4 ≡ 4 mod 8
        assert_eq!(congruence_level(&ta), 2);
        let zero = s
            .transvection_matrix(&Transvection::new(s.a(2), 0))
            .unwrap();
        assert!(zero.is_identity());
    }

    #[test]
    fn weil_basis_subsets() {
        let w = weil_subset_basis(5).unwrap();
        assert_eq!(w.a[0], 0b00011);
        assert_eq!(w.b[1], 0b11000);
        let w1 = weil_subset_basis(3).unwrap();
        assert_eq!(w1.b[0], 0b110);
        assert!(weil_subset_basis(2).is_err());
    }

    #[test]
    fn ta1_mod_two_is_transposition() {
        let s = SymplecticSpace::new(2, 1).unwrap();
        let w = weil_subset_basis(5).unwrap();
        let t = s
            .transvection_matrix(&Transvection::new(s.a(1), 1))
            .unwrap();
        assert_eq!(w.permutation_matrix(&[1, 0, 2, 3, 4]).unwrap(), t);
        let w6 = weil_subset_basis(6).unwrap();
        assert_eq!(w6.permutation_matrix(&[1, 0, 2, 3, 4, 5]).unwrap(), t);
    }
}
