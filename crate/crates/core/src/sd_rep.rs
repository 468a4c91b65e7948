//! Symmetric-group modules spanned by unordered pairs: the 𝔽₂ spaces with
//! basis [i, j] on which S_d acts by relabelling, the rank-3 ℤ/4 module with
//! basis [2,3]′, [3,1]′, [1,2]′, and the standard representations over 𝔽₂.
//!
//! Letters are 0-based internally; public constructors that mirror the usual
//! labels (`pair(1, 2)` and friends) take 1-based letters.

use itertools::Itertools;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::gf2;
use crate::ring::{abelian_type_from_census, AbelianType, OrderCensus};

/// A permutation of `0..n`; `perm[k]` is the image of `k`.
pub type Perm = Vec<usize>;

pub fn identity_perm(n: usize) -> Perm {
    (0..n).collect()
}

/// Cycle on 1-based letters, e.g. `cycle(5, &[2, 3, 4, 5])`.
pub fn cycle(n: usize, letters: &[usize]) -> Perm {
    let mut p = identity_perm(n);
    for (k, &a) in letters.iter().enumerate() {
        let b = letters[(k + 1) % letters.len()];
        p[a - 1] = b - 1;
    }
    p
}

pub fn transposition(n: usize, a: usize, b: usize) -> Perm {
    cycle(n, &[a, b])
}

/// `p ∘ q` (apply `q` first).
pub fn compose(p: &[usize], q: &[usize]) -> Perm {
    q.iter().map(|&k| p[k]).collect()
}

pub fn all_perms(n: usize) -> impl Iterator<Item = Perm> {
    (0..n).permutations(n)
}

/// Coefficient ring of a pair space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Coefficients {
    F2,
    Z4,
}

impl Coefficients {
    fn modulus(self) -> u8 {
        match self {
            Coefficients::F2 => 2,
            Coefficients::Z4 => 4,
        }
    }
}

/// Free module on the unordered pairs of `letters` letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairBasisSpace {
    letters: usize,
    ring: Coefficients,
    pairs: Vec<(usize, usize)>,
}

impl PairBasisSpace {
    pub fn new(letters: usize, ring: Coefficients) -> Result<Self> {
        if letters < 2 || letters * (letters - 1) / 2 > 64 {
            return Err(Error::Domain(format!("unsupported letter count {letters}")));
        }
        let pairs = (0..letters).tuple_combinations().collect();
        Ok(Self {
            letters,
            ring,
            pairs,
        })
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn ring(&self) -> Coefficients {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    /// Position of the basis label {i, j} (0-based letters, any order).
    pub fn index(&self, i: usize, j: usize) -> usize {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        assert!(a != b && b < self.letters, "invalid pair ({i}, {j})");
        // pairs (a, *) are preceded by Σ_{k<a} (n−1−k) pairs
        a * (2 * self.letters - a - 1) / 2 + (b - a - 1)
    }

    pub fn label(&self, idx: usize) -> (usize, usize) {
        self.pairs[idx]
    }

    pub fn zero(&self) -> Vec<u8> {
        vec![0; self.dim()]
    }

    /// Basis vector [i, j] with 1-based letters.
    pub fn pair(&self, i: usize, j: usize) -> Vec<u8> {
        let mut v = self.zero();
        v[self.index(i - 1, j - 1)] = 1;
        v
    }

    pub fn add(&self, x: &[u8], y: &[u8]) -> Vec<u8> {
        let m = self.ring.modulus();
        x.iter().zip(y).map(|(a, b)| (a + b) % m).collect()
    }

    pub fn scale(&self, c: u8, x: &[u8]) -> Vec<u8> {
        let m = self.ring.modulus();
        x.iter().map(|a| (a * c) % m).collect()
    }

    /// [i, j] ↦ [π(i), π(j)].
    pub fn psi_action(&self, perm: &[usize], v: &[u8]) -> Result<Vec<u8>> {
        if perm.len() != self.letters {
            return Err(Error::DimensionMismatch {
                left: self.letters,
                right: perm.len(),
            });
        }
        let mut out = self.zero();
        for (idx, &(i, j)) in self.pairs.iter().enumerate() {
            out[self.index(perm[i], perm[j])] = v[idx];
        }
        Ok(out)
    }

    /// Bit-packed form of an 𝔽₂ vector.
    pub fn to_bits(&self, v: &[u8]) -> u64 {
        v.iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (u64::from(c & 1) << i))
    }

    pub fn from_bits(&self, bits: u64) -> Vec<u8> {
        (0..self.dim()).map(|i| (bits >> i & 1) as u8).collect()
    }

    /// Bit-level action table: `table[i]` is the image index of basis vector `i`.
    pub fn action_table(&self, perm: &[usize]) -> Vec<usize> {
        self.pairs
            .iter()
            .map(|&(i, j)| self.index(perm[i], perm[j]))
            .collect()
    }
}

fn apply_table(table: &[usize], bits: u64) -> u64 {
    let mut out = 0u64;
    let mut b = bits;
    while b != 0 {
        let i = b.trailing_zeros() as usize;
        out |= 1 << table[i];
        b &= b - 1;
    }
    out
}

/// All vectors of an 𝔽₂ pair space fixed by every permutation in `gens`.
fn fixed_vectors(space: &PairBasisSpace, gens: &[Perm]) -> Vec<u64> {
    let tables: Vec<Vec<usize>> = gens.iter().map(|g| space.action_table(g)).collect();
    (0u64..(1 << space.dim()))
        .filter(|&v| tables.iter().all(|t| apply_table(t, v) == v))
        .collect()
}

fn sum_pairs(space: &PairBasisSpace, pred: impl Fn(usize, usize) -> bool) -> u64 {
    (0..space.dim())
        .filter(|&k| {
            let (i, j) = space.label(k);
            pred(i, j)
        })
        .fold(0, |acc, k| acc | 1 << k)
}

/// Outcome for one candidate value of the distinguished generator.
#[derive(Debug, Clone, Serialize)]
pub struct Candidate {
    pub name: String,
    pub vector: u64,
    pub relations_hold: bool,
    pub span_dimension: usize,
    pub valid: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpanningSetReport {
    pub d: usize,
    pub fixed_nonzero: usize,
    pub candidates: Vec<Candidate>,
    /// The unique surviving candidate, if exactly one survives.
    pub survivor: Option<String>,
    pub expected_survivor: String,
    pub equivariant: bool,
    /// The spanning set, as bit vectors over the unprimed pair basis.
    pub spanning_set: Vec<u64>,
}

impl SpanningSetReport {
    pub fn holds(&self) -> bool {
        self.survivor.as_deref() == Some(self.expected_survivor.as_str()) && self.equivariant
    }
}

/// Dimension of the span and whether the only relation among `vs` is their total sum.
fn relation_profile(vs: &[u64]) -> (usize, bool) {
    let mut b = gf2::Basis::new();
    for &v in vs {
        b.insert(v);
    }
    let total = vs.iter().fold(0, |a, v| a ^ v);
    let dim = b.dim();
    (dim, total == 0 && dim + 1 == vs.len())
}

/// Odd degree: the generator v₁ is fixed by the stabilizer of letter 1, which forces
/// one of three shapes; only Σ_{j≠1}[1, j] yields a spanning set with the single
/// relation Σ v_i = 0.
pub fn verify_spanning_set_odd(d: usize) -> Result<SpanningSetReport> {
    if !(d == 5 || d == 7) {
        return Err(Error::Domain(format!(
            "odd check supports d in {{5, 7}}, got {d}"
        )));
    }
    let space = PairBasisSpace::new(d, Coefficients::F2)?;
    let rest: Vec<usize> = (2..=d).collect();
    let stab = vec![transposition(d, 2, 3), cycle(d, &rest)];
    let fixed: Vec<u64> = fixed_vectors(&space, &stab)
        .into_iter()
        .filter(|&v| v != 0)
        .collect();

    let named = [
        ("sum_1j", sum_pairs(&space, |i, _| i == 0)),
        (
            "sum_st_without_1",
            sum_pairs(&space, |i, j| i != 0 && j != 0),
        ),
        ("sum_all", sum_pairs(&space, |_, _| true)),
    ];
    let mut candidates = Vec::new();
    for &v in &fixed {
        let name = named
            .iter()
            .find(|(_, w)| *w == v)
            .map(|(n, _)| n.to_string())
            .unwrap_or_else(|| format!("unexpected_{v:#x}"));
        // v_i = ψ((1 i)) v₁
        let vs: Vec<u64> = (1..=d)
            .map(|i| {
                if i == 1 {
                    v
                } else {
                    apply_table(&space.action_table(&transposition(d, 1, i)), v)
                }
            })
            .collect();
        let (dim, single_relation) = relation_profile(&vs);
        candidates.push(Candidate {
            name,
            vector: v,
            relations_hold: single_relation,
            span_dimension: dim,
            valid: single_relation && dim == d - 1,
        });
    }
    let survivors: Vec<&Candidate> = candidates.iter().filter(|c| c.valid).collect();
    let survivor = (survivors.len() == 1).then(|| survivors[0].name.clone());

    let spanning_set: Vec<u64> = (0..d)
        .map(|i| sum_pairs(&space, |a, b| a == i || b == i))
        .collect();
    let equivariant = standard_equivariance_odd(&space, &spanning_set)?;
    Ok(SpanningSetReport {
        d,
        fixed_nonzero: fixed.len(),
        candidates,
        survivor,
        expected_survivor: "sum_1j".into(),
        equivariant,
        spanning_set,
    })
}

/// ψ(π) v_i = v_{π(i)} for generators of S_d, and ψ((1 i)) v₁ = v_i.
fn standard_equivariance_odd(space: &PairBasisSpace, vs: &[u64]) -> Result<bool> {
    let d = space.letters();
    let all: Vec<usize> = (1..=d).collect();
    let mut ok = true;
    for p in [transposition(d, 1, 2), cycle(d, &all)] {
        let t = space.action_table(&p);
        for (i, &v) in vs.iter().enumerate() {
            ok &= apply_table(&t, v) == vs[p[i]];
        }
    }
    for i in 2..=d {
        ok &= apply_table(&space.action_table(&transposition(d, 1, i)), vs[0]) == vs[i - 1];
    }
    Ok(ok)
}

/// [i, j]′ in unprimed coordinates for even degree d: [i, j] + Σ_{l ≠ i, j, l < d} [l, d]
/// (1-based letters i, j ≤ d − 1).
pub fn primed_pair(space: &PairBasisSpace, i: usize, j: usize) -> u64 {
    let d = space.letters();
    let mut v = 1u64 << space.index(i - 1, j - 1);
    for l in 1..d {
        if l != i && l != j {
            v ^= 1 << space.index(l - 1, d - 1);
        }
    }
    v
}

/// Even degree: v_{1,d} is fixed by the setwise stabilizer of {1, d}; parity,
/// nontriviality, the full-sum exclusion and v_{s,t} + v_{s,j} = v_{t,j} leave
/// exactly Σ_{2≤j≤d−1}([1, j] + [d, j]) = Σ_{2≤j≤d−1}[1, j]′.
pub fn verify_spanning_set_even(d: usize) -> Result<SpanningSetReport> {
    if d != 6 {
        return Err(Error::Domain(format!("even check supports d = 6, got {d}")));
    }
    let space = PairBasisSpace::new(d, Coefficients::F2)?;
    let middle: Vec<usize> = (2..d).collect();
    let stab = vec![
        transposition(d, 2, 3),
        cycle(d, &middle),
        transposition(d, 1, d),
    ];
    let fixed: Vec<u64> = fixed_vectors(&space, &stab)
        .into_iter()
        .filter(|&v| v != 0)
        .collect();
    let (first, last) = (0usize, d - 1);
    let one_d = sum_pairs(&space, |i, j| i == first && j == last);
    let cross = sum_pairs(&space, |i, j| (i == first) != (j == last) && i != j);
    let cross = cross & !one_d;
    let inner = sum_pairs(&space, |i, j| i != first && j != last);
    let full = sum_pairs(&space, |_, _| true);

    let mut candidates = Vec::new();
    for &v in &fixed {
        let mut parts = Vec::new();
        if v & one_d != 0 {
            parts.push("pair_1d");
        }
        if v & cross != 0 {
            parts.push("cross");
        }
        if v & inner != 0 {
            parts.push("inner");
        }
        let name = parts.join("+");
        // v_{i,j} = ψ(π) v_{1,d} for any π with {π(1), π(d)} = {i, j}
        let vij = |i: usize, j: usize| -> u64 {
            let mut p = identity_perm(d);
            // build π sending 0 -> i, d−1 -> j
            let mut rest: Vec<usize> = (0..d).filter(|&k| k != i && k != j).collect();
            p[0] = i;
            p[d - 1] = j;
            for slot in p.iter_mut().take(d - 1).skip(1) {
                *slot = rest.remove(0);
            }
            apply_table(&space.action_table(&p), v)
        };
        let odd_terms = v.count_ones() % 2 == 1;
        let mut sums_vanish = true;
        for i in 0..d {
            let s = (0..d).filter(|&j| j != i).fold(0, |acc, j| acc ^ vij(i, j));
            sums_vanish &= s == 0;
        }
        let mut triangle = true;
        for (s, t, j) in (0..d).tuple_combinations() {
            for (a, b, c) in [(s, t, j), (t, j, s), (j, s, t)] {
                triangle &= vij(a, b) ^ vij(a, c) == vij(b, c);
            }
        }
        let spanning: Vec<u64> = (1..d).map(|j| vij(0, j)).collect();
        let (dim, _) = relation_profile(&spanning);
        let relations_hold = !odd_terms && sums_vanish && triangle && v != full;
        candidates.push(Candidate {
            name,
            vector: v,
            relations_hold,
            span_dimension: dim,
            valid: relations_hold && dim == d - 2,
        });
    }
    let survivors: Vec<&Candidate> = candidates.iter().filter(|c| c.valid).collect();
    let survivor = (survivors.len() == 1).then(|| survivors[0].name.clone());

    let primed_sum = (2..d).fold(0u64, |acc, j| acc ^ primed_pair(&space, 1, j));
    let spanning_set: Vec<u64> = (1..d)
        .map(|i| {
            (1..d)
                .filter(|&j| j != i)
                .fold(0u64, |acc, j| acc ^ primed_pair(&space, i, j))
        })
        .collect();
    // ψ((1 i)) carries v_{1,d} to v_{i,d}
    let mut equivariant = primed_sum == cross && spanning_set[0] == cross;
    for i in 2..d {
        equivariant &=
            apply_table(&space.action_table(&transposition(d, 1, i)), cross) == spanning_set[i - 1];
    }
    Ok(SpanningSetReport {
        d,
        fixed_nonzero: fixed.len(),
        candidates,
        survivor,
        expected_survivor: "cross".into(),
        equivariant,
        spanning_set,
    })
}

/// Φ(c₁[2,3]′ + c₂[3,1]′ + c₃[1,2]′) = c₁ + c₂ + c₃ mod 4, with coordinates in that order.
pub fn phi(v: &[u8; 3]) -> u8 {
    (v[0] + v[1] + v[2]) % 4
}

/// Coordinates (c₁, c₂, c₃) of a vector of the ℤ/4 pair space on three letters.
fn phi_coords(space: &PairBasisSpace, v: &[u8]) -> [u8; 3] {
    [
        v[space.index(1, 2)],
        v[space.index(2, 0)],
        v[space.index(0, 1)],
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct PhiKernelReport {
    pub generators_in_kernel: bool,
    pub kernel_order: usize,
    pub generated_order: usize,
    pub kernel_type: AbelianType,
    pub doubled_sum_phi: u8,
    pub phi_invariant: bool,
    pub doubled_pairs_in_span: bool,
}

impl PhiKernelReport {
    pub fn holds(&self) -> bool {
        self.generators_in_kernel
            && self.kernel_order == 16
            && self.generated_order == 16
            && self.kernel_type == AbelianType::new(vec![4, 4]).expect("powers of 2")
            && self.doubled_sum_phi == 2
            && self.phi_invariant
            && self.doubled_pairs_in_span
    }
}

/// The three generators [1,2]′ + [1,3]′ + 2[2,3]′ and its two rotations.
pub fn phi_kernel_generators(space: &PairBasisSpace) -> Vec<Vec<u8>> {
    let p = |i, j| space.pair(i, j);
    let gen = |a: (usize, usize), b: (usize, usize), c: (usize, usize)| {
        space.add(
            &space.add(&p(a.0, a.1), &p(b.0, b.1)),
            &space.scale(2, &p(c.0, c.1)),
        )
    };
    vec![
        gen((1, 2), (1, 3), (2, 3)),
        gen((2, 3), (2, 1), (3, 1)),
        gen((3, 1), (3, 2), (1, 2)),
    ]
}

fn all_z4_vectors() -> impl Iterator<Item = Vec<u8>> {
    (0u32..64).map(|code| (0..3).map(|k| ((code >> (2 * k)) & 3) as u8).collect())
}

pub fn verify_phi_kernel() -> Result<PhiKernelReport> {
    let space = PairBasisSpace::new(3, Coefficients::Z4)?;
    let gens = phi_kernel_generators(&space);
    let generators_in_kernel = gens.iter().all(|g| phi(&phi_coords(&space, g)) == 0);
    let kernel: Vec<Vec<u8>> = all_z4_vectors()
        .filter(|v| phi(&phi_coords(&space, v)) == 0)
        .collect();

    let mut span: Vec<Vec<u8>> = vec![space.zero()];
    let mut frontier = span.clone();
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = space.add(&x, g);
            if !span.contains(&y) {
                span.push(y.clone());
                frontier.push(y);
            }
        }
    }
    let generated_order = span.len();
    let span_is_kernel = span.iter().all(|v| kernel.contains(v));

    let mut census = OrderCensus::new();
    for v in &kernel {
        let order = if v.iter().all(|&c| c == 0) {
            1
        } else if v.iter().all(|&c| c % 2 == 0) {
            2
        } else {
            4
        };
        *census.entry(order).or_insert(0) += 1;
    }
    let kernel_type = abelian_type_from_census(&census, kernel.len() as u64)?;

    let doubled = space.scale(2, &[1, 1, 1]);
    let doubled_sum_phi = phi(&phi_coords(&space, &doubled));

    let mut phi_invariant = true;
    for p in all_perms(3) {
        for v in all_z4_vectors() {
            phi_invariant &= phi(&phi_coords(&space, &space.psi_action(&p, &v)?))
                == phi(&phi_coords(&space, &v));
        }
    }
    let doubled_pairs_in_span = [((1, 2), (1, 3)), ((2, 3), (2, 1)), ((3, 1), (3, 2))]
        .iter()
        .all(|&((a, b), (c, e))| {
            let w = space.scale(2, &space.add(&space.pair(a, b), &space.pair(c, e)));
            span.contains(&w)
        });
    Ok(PhiKernelReport {
        generators_in_kernel,
        kernel_order: kernel.len(),
        generated_order: if span_is_kernel { generated_order } else { 0 },
        kernel_type,
        doubled_sum_phi,
        phi_invariant,
        doubled_pairs_in_span,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EvenSumReport {
    pub d: usize,
    pub genus: usize,
    pub gamma_weights: Vec<u32>,
    pub beta_weight: u32,
    pub gamma_span_dimension: usize,
    pub beta_outside_gamma_span: bool,
    pub even_subspace_codimension: usize,
}

impl EvenSumReport {
    pub fn holds(&self) -> bool {
        let g = self.genus as u32;
        self.gamma_weights.iter().all(|&w| w == 2 * g)
            && self.beta_weight == 2 * g + 1
            && self.gamma_span_dimension == 2 * self.genus * self.genus + self.genus
            && self.beta_outside_gamma_span
            && self.even_subspace_codimension >= 1
    }
}

/// Parity facts in the pair space on d = 2g + 2 letters: each γ class has even
/// weight 2g, the β² class has odd weight 2g + 1, and the γ classes span 2g² + g dimensions.
pub fn even_sum_subspace_check(d: usize) -> Result<EvenSumReport> {
    if !(d == 4 || d == 6) {
        return Err(Error::Domain(format!(
            "parity check supports d in {{4, 6}}, got {d}"
        )));
    }
    let g = (d - 2) / 2;
    let space = PairBasisSpace::new(d, Coefficients::F2)?;
    let gammas: Vec<u64> = (1..d)
        .tuple_combinations()
        .map(|(i, j)| primed_pair(&space, i, j))
        .collect();
    let beta = (1..d).fold(0u64, |acc, i| acc | 1 << space.index(i - 1, d - 1));
    let mut basis = gf2::Basis::new();
    for &v in &gammas {
        basis.insert(v);
    }
    // codimension of the even-weight subspace (all γ classes live there)
    let even_dim = space.dim() - 1;
    Ok(EvenSumReport {
        d,
        genus: g,
        gamma_weights: gammas.iter().map(|v| v.count_ones()).collect(),
        beta_weight: beta.count_ones(),
        gamma_span_dimension: basis.dim(),
        beta_outside_gamma_span: !basis.contains(beta),
        even_subspace_codimension: space.dim() - even_dim,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct StandardRepReport {
    pub genus: usize,
    pub d: usize,
    pub dimension: usize,
    pub group_order: usize,
    pub kernel_size: usize,
    pub isomorphic_to_standard: bool,
    /// Rank of A − 1 for each transposition, when checked.
    pub transposition_ranks: Vec<usize>,
}

impl StandardRepReport {
    pub fn holds(&self) -> bool {
        self.dimension == 2 * self.genus
            && self.kernel_size == 1
            && self.isomorphic_to_standard
            && self.transposition_ranks.iter().all(|&r| r == 1)
    }
}

/// Matrix (as column images in basis coordinates) of ψ(π) restricted to V = span(basis).
fn restricted_action(
    space: &PairBasisSpace,
    basis_vecs: &[u64],
    coords: &gf2::Basis,
    p: &[usize],
) -> Result<Vec<u64>> {
    let t = space.action_table(p);
    basis_vecs
        .iter()
        .map(|&v| {
            coords
                .express(apply_table(&t, v))
                .map(|c| c as u64)
                .ok_or_else(|| Error::Invariant("V is not stable under the action".into()))
        })
        .collect()
}

/// The module V spanned by {Σ_{j≠i}[i, j]′} under S_d (or S₃ in genus 1):
/// dimension 2g, trivial kernel, isomorphic to the standard representation, and
/// in genus 2 transpositions act as transvections.
pub fn standard_rep_mod2_of_v(g: usize, d: usize) -> Result<StandardRepReport> {
    if !(1..=3).contains(&g) || !(d == 2 * g + 1 || d == 2 * g + 2) {
        return Err(Error::Domain(format!(
            "need g in 1..=3 and d in {{2g+1, 2g+2}}, got g={g}, d={d}"
        )));
    }
    // In genus 1 the action factors through S₃ on the primed labels.
    let letters = if g == 1 { 3 } else { d };
    let space = PairBasisSpace::new(letters, Coefficients::F2)?;
    let odd = letters % 2 == 1;
    let primed = |i: usize, j: usize| {
        if odd {
            1u64 << space.index(i - 1, j - 1)
        } else {
            primed_pair(&space, i, j)
        }
    };
    let top = 2 * g + 1;
    let gens: Vec<u64> = (1..=top)
        .map(|i| {
            (1..=top)
                .filter(|&j| j != i)
                .fold(0, |acc, j| acc ^ primed(i, j))
        })
        .collect();
    let mut coords = gf2::Basis::new();
    let mut basis_vecs = Vec::new();
    for &v in &gens {
        if coords.insert(v) {
            basis_vecs.push(v);
        }
    }
    let mut coords = gf2::Basis::new();
    for &v in &basis_vecs {
        coords.insert(v);
    }
    let dimension = basis_vecs.len();

    let mut kernel_size = 0;
    let mut group_order = 0;
    for p in all_perms(letters) {
        group_order += 1;
        let imgs = restricted_action(&space, &basis_vecs, &coords, &p)?;
        if imgs.iter().enumerate().all(|(i, &c)| c == 1 << i) {
            kernel_size += 1;
        }
    }

    // Compare with the standard module: the spanning map from the permutation
    // module (d odd) or its even-weight part (d even) must have kernel exactly
    // the diagonal, and be equivariant.
    let isomorphic_to_standard = if odd {
        // e_i ↦ gens[i]; kernel should be {0, all-ones}
        let (dim, single) = relation_profile(&gens);
        dim == letters - 1 && single && standard_equivariance_odd(&space, &gens)?
    } else {
        // v_{i,d} = gens[i], v_{i,j} = v_{i,d} + v_{j,d}; Σ_{j≠i} v_{i,j} = 0 for every i
        let n = letters;
        let v = |i: usize, j: usize| -> u64 {
            match (i == n - 1, j == n - 1) {
                (true, _) => gens[j],
                (_, true) => gens[i],
                _ => gens[i] ^ gens[j],
            }
        };
        let sums = (0..n).all(|i| (0..n).filter(|&j| j != i).fold(0, |acc, j| acc ^ v(i, j)) == 0);
        let all: Vec<usize> = (1..=n).collect();
        let mut equivariant = true;
        for p in [transposition(n, 1, 2), cycle(n, &all)] {
            let t = space.action_table(&p);
            for (i, j) in (0..n).tuple_combinations() {
                equivariant &= apply_table(&t, v(i, j)) == v(p[i], p[j]);
            }
        }
        dimension == n - 2 && sums && equivariant
    };

    let transposition_ranks = if g == 2 {
        (1..=letters)
            .tuple_combinations()
            .map(|(a, b)| {
                restricted_action(&space, &basis_vecs, &coords, &transposition(letters, a, b))
                    .map(|imgs| gf2::deviation_rank(&imgs))
            })
            .collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    Ok(StandardRepReport {
        genus: g,
        d,
        dimension,
        group_order,
        kernel_size,
        isomorphic_to_standard,
        transposition_ranks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_examples() {
        let s = PairBasisSpace::new(3, Coefficients::F2).unwrap();
        assert_eq!(
            s.psi_action(&identity_perm(3), &s.pair(1, 3)).unwrap(),
            s.pair(1, 3)
        );
        assert_eq!(
            s.psi_action(&transposition(3, 1, 2), &s.pair(1, 3))
                .unwrap(),
            s.pair(2, 3)
        );
        let z = PairBasisSpace::new(3, Coefficients::Z4).unwrap();
        let v = z.add(&z.pair(1, 2), &z.scale(2, &z.pair(2, 3)));
        let w = z.add(&z.pair(2, 3), &z.scale(2, &z.pair(3, 1)));
        assert_eq!(z.psi_action(&cycle(3, &[1, 2, 3]), &v).unwrap(), w);
    }

    #[test]
    fn pair_index_is_bijective() {
        let s = PairBasisSpace::new(7, Coefficients::F2).unwrap();
        for k in 0..s.dim() {
            let (i, j) = s.label(k);
            assert_eq!(s.index(i, j), k);
            assert_eq!(s.index(j, i), k);
        }
    }

    #[test]
    fn spanning_set_five_letters() {
        let r = verify_spanning_set_odd(5).unwrap();
        assert_eq!(r.fixed_nonzero, 3);
        assert!(r.holds(), "{r:?}");
        let ii = r
            .candidates
            .iter()
            .find(|c| c.name == "sum_st_without_1")
            .unwrap();
        assert!(!ii.relations_hold);
    }

    #[test]
    fn spanning_set_six_letters() {
        let r = verify_spanning_set_even(6).unwrap();
        assert_eq!(r.fixed_nonzero, 7);
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn phi_kernel_on_three_letters() {
        let r = verify_phi_kernel().unwrap();
        assert!(r.holds(), "{r:?}");
    }

    #[test]
    fn parity() {
        for d in [4, 6] {
            let r = even_sum_subspace_check(d).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn standard_reps() {
        for (g, d) in [(1, 3), (1, 4), (2, 5), (2, 6)] {
            let r = standard_rep_mod2_of_v(g, d).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }
}
