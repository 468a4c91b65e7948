//! Explicit quotients Γ(2)/Γ(2ᵐ) of symplectic groups over ℤ/2ᵐ: BFS
//! enumeration, commutator subgroups, abelianizations, and the genus 1 and
//! genus 2 computations built on them.

use rustc_hash::FxHashSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::gf2;
use crate::ring::{abelian_type_from_census, AbelianType, ModMatrix, OrderCensus};
use crate::symplectic::{congruence_level, SymplecticSpace, Transvection};
use crate::IntMatrix;

/// Default element cap for enumerations.
pub const DEFAULT_CAP: usize = 1 << 21;

/// Arithmetic on matrices packed into a `u128` (see [`ModMatrix::pack`]).
#[derive(Debug, Clone, Copy)]
struct Packed {
    dim: usize,
    level: u32,
}

impl Packed {
    fn new(dim: usize, level: u32) -> Result<Self> {
        if dim * dim * level as usize > 128 || dim > 8 {
            return Err(Error::Domain(format!(
                "{dim}x{dim} matrices mod 2^{level} do not fit the packed representation"
            )));
        }
        Ok(Self { dim, level })
    }

    #[inline]
    fn unpack(&self, key: u128, out: &mut [u64; 64]) {
        let bits = self.level as usize;
        let mask = (1u128 << bits) - 1;
        for (i, slot) in out.iter_mut().take(self.dim * self.dim).enumerate() {
            *slot = ((key >> (i * bits)) & mask) as u64;
        }
    }

    #[inline]
    fn mul(&self, a: u128, b: u128) -> u128 {
        let n = self.dim;
        let bits = self.level as usize;
        let mask = (1u64 << bits) - 1;
        let (mut x, mut y) = ([0u64; 64], [0u64; 64]);
        self.unpack(a, &mut x);
        self.unpack(b, &mut y);
        let mut key = 0u128;
        for idx in (0..n * n).rev() {
            let (i, j) = (idx / n, idx % n);
            let mut acc = 0u64;
            for k in 0..n {
                acc = acc.wrapping_add(x[i * n + k] * y[k * n + j]);
            }
            key = (key << bits) | (acc & mask) as u128;
        }
        key
    }

    fn pack(&self, m: &ModMatrix) -> u128 {
        m.pack().expect("size checked in Packed::new")
    }

    fn identity(&self) -> u128 {
        self.pack(&ModMatrix::identity(self.dim, self.level).expect("valid level"))
    }
}

/// An explicitly enumerated finite matrix group over ℤ/2ᵐ.
#[derive(Debug, Clone)]
pub struct QuotientGroup {
    dim: usize,
    level: u32,
    elements: FxHashSet<u128>,
    generators: Vec<ModMatrix>,
}

impl QuotientGroup {
    /// Closure of `generators` under multiplication; every generator must be ≡ I mod 2.
    pub fn generated(dim: usize, level: u32, generators: &[ModMatrix], cap: usize) -> Result<Self> {
        let ops = Packed::new(dim, level)?;
        for g in generators {
            if g.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: g.dim(),
                });
            }
            if g.level() != level {
                return Err(Error::LevelMismatch {
                    left: level,
                    right: g.level(),
                });
            }
            if congruence_level(g) < 1 {
                return Err(Error::Domain(format!(
                    "generator {g} is not congruent to 1 mod 2"
                )));
            }
        }
        let gens: Vec<u128> = generators.iter().map(|g| ops.pack(g)).collect();
        let elements = bfs_closure(&ops, &[ops.identity()], &gens, &[], cap)?;
        Ok(Self {
            dim,
            level,
            elements,
            generators: generators.to_vec(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn genus(&self) -> usize {
        self.dim / 2
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn generators(&self) -> &[ModMatrix] {
        &self.generators
    }

    pub fn contains(&self, m: &ModMatrix) -> bool {
        m.dim() == self.dim
            && m.level() == self.level
            && m.pack().is_some_and(|k| self.elements.contains(&k))
    }

    /// Elements as matrices, sorted by packed key for determinism.
    pub fn elements(&self) -> Vec<ModMatrix> {
        let mut keys: Vec<u128> = self.elements.iter().copied().collect();
        keys.sort_unstable();
        keys.into_iter()
            .map(|k| ModMatrix::unpack(self.dim, self.level, k))
            .collect()
    }

    /// Same set of elements, ignoring generators.
    pub fn same_elements(&self, other: &Self) -> bool {
        self.dim == other.dim && self.level == other.level && self.elements == other.elements
    }

    pub fn is_abelian(&self) -> Result<bool> {
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                if a.mul(b)? != b.mul(a)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn ops(&self) -> Packed {
        Packed::new(self.dim, self.level).expect("validated at construction")
    }
}

/// BFS closure of `start` under right multiplication by `right` and conjugation
/// by each `(c, c⁻¹)` pair in `conj`.
fn bfs_closure(
    ops: &Packed,
    start: &[u128],
    right: &[u128],
    conj: &[(u128, u128)],
    cap: usize,
) -> Result<FxHashSet<u128>> {
    let mut seen: FxHashSet<u128> = FxHashSet::default();
    let mut frontier: Vec<u128> = Vec::new();
    for &s in start {
        if seen.insert(s) {
            frontier.push(s);
        }
    }
    while let Some(x) = frontier.pop() {
        let neighbours = right
            .iter()
            .map(|&r| ops.mul(x, r))
            .chain(conj.iter().map(|&(c, ci)| ops.mul(ops.mul(c, x), ci)));
        for y in neighbours {
            if seen.insert(y) {
                if seen.len() > cap {
                    return Err(Error::Capacity { cap });
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen)
}

/// 2^{(m−1)(2g²+g)}, the order of Γ(2)/Γ(2ᵐ) in Sp_{2g}.
pub fn gamma2_order(g: usize, m: u32) -> u64 {
    1u64 << ((m as usize - 1) * (2 * g * g + g))
}

/// σ = [[1, −2], [0, 1]].
pub fn sigma(level: u32) -> ModMatrix {
    ModMatrix::from_rows(level, &[&[1, -2], &[0, 1]]).expect("valid level")
}

/// τ = [[1, 0], [2, 1]].
pub fn tau(level: u32) -> ModMatrix {
    ModMatrix::from_rows(level, &[&[1, 0], &[2, 1]]).expect("valid level")
}

/// Seed generators for Γ(2): {σ, τ, −1} in genus 1; in higher genus −1
/// together with the squares of transvections along every nonzero 0/1 vector.
pub fn default_seeds(g: usize, level: u32) -> Result<Vec<ModMatrix>> {
    let space = SymplecticSpace::new(g, level)?;
    if g == 1 {
        return Ok(vec![sigma(level), tau(level), space.minus_one()]);
    }
    let n = 2 * g;
    let mut seeds = vec![space.minus_one()];
    for mask in 1u32..(1 << n) {
        let v: Vec<i64> = (0..n).map(|i| i64::from(mask >> i & 1)).collect();
        seeds.push(space.transvection_matrix(&Transvection::new(v, 2))?);
    }
    Ok(seeds)
}

/// Enumerates Γ(2)/Γ(2ᵐ) from `seeds` and insists the closure is the whole group.
pub fn enumerate_gamma2(
    g: usize,
    m: u32,
    seeds: &[ModMatrix],
    cap: usize,
) -> Result<QuotientGroup> {
    let expected = gamma2_order(g, m);
    if expected > cap as u64 {
        return Err(Error::Capacity { cap });
    }
    let space = SymplecticSpace::new(g, m)?;
    for s in seeds {
        if !space.is_symplectic(s)? {
            return Err(Error::Domain(format!("seed {s} is not symplectic")));
        }
    }
    let q = QuotientGroup::generated(2 * g, m, seeds, cap)?;
    if q.order() != expected {
        return Err(Error::IncompleteGenerators {
            expected,
            found: q.order(),
        });
    }
    Ok(q)
}

/// Normal closure in `q` of the commutators of all generator pairs.
pub fn commutator_subgroup(q: &QuotientGroup, cap: usize) -> Result<QuotientGroup> {
    let ops = q.ops();
    let mut comms = Vec::new();
    for (i, a) in q.generators.iter().enumerate() {
        for b in &q.generators[i + 1..] {
            let c = a.commutator(b)?;
            if !c.is_identity() && !comms.contains(&c) {
                comms.push(c);
            }
        }
    }
    let right: Vec<u128> = comms.iter().map(|c| ops.pack(c)).collect();
    let conj: Vec<(u128, u128)> = q
        .generators
        .iter()
        .map(|g| Ok((ops.pack(g), ops.pack(&g.inverse()?))))
        .collect::<Result<_>>()?;
    let elements = bfs_closure(&ops, &[ops.identity()], &right, &conj, cap)?;
    Ok(QuotientGroup {
        dim: q.dim,
        level: q.level,
        elements,
        generators: comms,
    })
}

/// The quotient of a group by its commutator subgroup, realized by coset enumeration.
#[derive(Debug, Clone)]
pub struct Abelianization {
    pub commutator: QuotientGroup,
    pub census: OrderCensus,
    pub abelian_type: AbelianType,
}

impl Abelianization {
    /// Order of the class of `x` in the abelianization.
    pub fn class_order(&self, x: &ModMatrix) -> Result<u64> {
        let mut order = 1u64;
        let mut y = x.clone();
        while !self.commutator.contains(&y) {
            y = y.mul(&y)?;
            order *= 2;
            if order > 1 << 32 {
                return Err(Error::Invariant(
                    "class order is not a small power of 2".into(),
                ));
            }
        }
        Ok(order)
    }

    /// Whether `x` and `y` have the same class.
    pub fn same_class(&self, x: &ModMatrix, y: &ModMatrix) -> Result<bool> {
        Ok(self.commutator.contains(&x.mul(&y.inverse()?)?))
    }
}

pub fn abelianization(q: &QuotientGroup, cap: usize) -> Result<Abelianization> {
    let commutator = commutator_subgroup(q, cap)?;
    let ops = q.ops();
    let c: Vec<u128> = commutator.elements.iter().copied().collect();
    let mut visited: FxHashSet<u128> = FxHashSet::default();
    let mut census = OrderCensus::new();
    let mut keys: Vec<u128> = q.elements.iter().copied().collect();
    keys.sort_unstable();
    for x in keys {
        if visited.contains(&x) {
            continue;
        }
        for &k in &c {
            visited.insert(ops.mul(x, k));
        }
        let mut order = 1u64;
        let mut y = x;
        while !commutator.elements.contains(&y) {
            y = ops.mul(y, y);
            order *= 2;
        }
        *census.entry(order).or_insert(0) += 1;
    }
    if !q.order().is_multiple_of(commutator.order()) {
        return Err(Error::Invariant(
            "commutator subgroup order does not divide group order".into(),
        ));
    }
    let abelian_type = abelian_type_from_census(&census, q.order() / commutator.order())?;
    Ok(Abelianization {
        commutator,
        census,
        abelian_type,
    })
}

/// All symplectic matrices at `level` that are ≡ I mod 2^`from`, by exhaustive scan
/// over I + 2^from·X. An oracle independent of any generating set.
pub fn brute_force_congruence_set(g: usize, from: u32, level: u32) -> Result<Vec<ModMatrix>> {
    if from == 0 || from > level {
        return Err(Error::Domain(format!(
            "need 1 <= from <= level, got {from}, {level}"
        )));
    }
    let space = SymplecticSpace::new(g, level)?;
    let n = 2 * g;
    let free_bits = (level - from) as usize;
    let total_bits = free_bits * n * n;
    if total_bits > 24 {
        return Err(Error::Capacity { cap: 1 << 24 });
    }
    let mut out = Vec::new();
    let id = ModMatrix::identity(n, level)?;
    for code in 0u64..(1 << total_bits) {
        let entries: Vec<i64> = (0..n * n)
            .map(|i| {
                let x = (code >> (i * free_bits)) & ((1 << free_bits) - 1);
                i64::from(i / n == i % n) + (x as i64) * (1i64 << from)
            })
            .collect();
        let m = ModMatrix::from_signed(n, level, &entries)?;
        if space.is_symplectic(&m)? {
            out.push(m);
        }
    }
    debug_assert!(out.contains(&id));
    Ok(out)
}

/// Membership test for [Γ(2), Γ(2)] modulo 8 in genus ≥ 2: the matrix lies in
/// Γ(4) and its (i, i+g), (i+g, i) entries vanish mod 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SatoOracle {
    pub genus: usize,
    pub level: u32,
}

impl SatoOracle {
    pub fn new(genus: usize, level: u32) -> Result<Self> {
        if genus < 2 || !(1..=3).contains(&level) {
            return Err(Error::Domain(format!(
                "oracle is only used for genus >= 2 and level <= 3, got g={genus}, level={level}"
            )));
        }
        Ok(Self { genus, level })
    }

    pub fn contains(&self, m: &ModMatrix) -> bool {
        if congruence_level(m) < 2.min(self.level) {
            return false;
        }
        let g = self.genus;
        let mask = (1u32 << self.level.min(3)) - 1;
        (0..g).all(|i| m.get(i, i + g) & mask == 0 && m.get(i + g, i) & mask == 0)
    }

    /// The four-bit (in general 2g-bit) residue (X_{i,i+g}, X_{i+g,i}) of m = I + 4X,
    /// which identifies Γ(4)/[Γ(2),Γ(2)] mod 8 with 𝔽₂^{2g}.
    pub fn coordinates(&self, m: &ModMatrix) -> Result<u64> {
        if self.level != 3 || congruence_level(m) < 2 {
            return Err(Error::Domain(
                "coordinates are defined on Γ(4) mod 8".into(),
            ));
        }
        let g = self.genus;
        let mut v = 0u64;
        for i in 0..g {
            v |= u64::from(m.get(i, i + g) >> 2 & 1) << i;
            v |= u64::from(m.get(i + g, i) >> 2 & 1) << (g + i);
        }
        Ok(v)
    }
}

fn int_sigma_tau(m_exp: i64, n_exp: i64) -> (IntMatrix, IntMatrix) {
    let s = IntMatrix::from_i64(2, 2, &[1, -2, 0, 1]).expect("2x2");
    let t = IntMatrix::from_i64(2, 2, &[1, 0, 2, 1]).expect("2x2");
    (int_pow(&s, m_exp), int_pow(&t, n_exp))
}

fn int_pow(m: &IntMatrix, e: i64) -> IntMatrix {
    let base = if e < 0 {
        // unipotent 2×2 with det 1: inverse is the adjugate
        let d = m.data();
        IntMatrix::from_vec(
            2,
            2,
            vec![d[3].clone(), -d[1].clone(), -d[2].clone(), d[0].clone()],
        )
        .expect("2x2")
    } else {
        m.clone()
    };
    let mut acc = IntMatrix::identity(2);
    for _ in 0..e.unsigned_abs() {
        acc = acc.mul(&base).expect("2x2");
    }
    acc
}

/// Exact integer matrix realizing the commutator word with σ-exponent 2^{m−1}
/// and τ-exponent 2^{n−1}. Under the column-vector product the closed form is
/// matched by τ^b σ^{−a} τ^{−b} σ^a (a = 2^{m−1}, b = 2^{n−1}), the σ^a-conjugate
/// of the left-to-right product σ^a τ^b σ^{−a} τ^{−b}.
pub fn commutator_word(m: u32, n: u32) -> IntMatrix {
    let (a, b) = (1i64 << (m - 1), 1i64 << (n - 1));
    let (sa, tb) = int_sigma_tau(a, b);
    let (sa_inv, tb_inv) = int_sigma_tau(-a, -b);
    tb.mul(&sa_inv)
        .and_then(|x| x.mul(&tb_inv))
        .and_then(|x| x.mul(&sa))
        .expect("2x2")
}

/// [[1 − 2^{m+n}, 2^{2m+n}], [−2^{m+2n}, 1 + 2^{m+n} + 2^{2m+2n}]].
pub fn commutator_closed_form(m: u32, n: u32) -> IntMatrix {
    let p = |e: u32| 1i64 << e;
    IntMatrix::from_i64(
        2,
        2,
        &[
            1 - p(m + n),
            p(2 * m + n),
            -p(m + 2 * n),
            1 + p(m + n) + p(2 * m + 2 * n),
        ],
    )
    .expect("2x2")
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutatorFormulaCase {
    pub m: u32,
    pub n: u32,
    pub closed_form: Vec<String>,
    pub word_matches: bool,
    pub in_commutator_mod_32: bool,
    /// Whether the left-to-right product σ^a τ^b σ^{−a} τ^{−b} is the σ^a-conjugate of the word.
    pub left_to_right_is_conjugate: bool,
    /// Whether the reading with plain exponents (σ^m, τ^n) also gives the closed form.
    pub plain_exponents_match: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutatorFormulaReport {
    pub max: u32,
    pub cases: Vec<CommutatorFormulaCase>,
}

impl CommutatorFormulaReport {
    pub fn holds(&self) -> bool {
        self.cases
            .iter()
            .all(|c| c.word_matches && c.in_commutator_mod_32 && c.left_to_right_is_conjugate)
    }
}

/// Checks the closed form against the expanded word over ℤ for 1 ≤ m, n ≤ max.
pub fn verify_commutator_formula(max: u32) -> Result<CommutatorFormulaReport> {
    if !(1..=6).contains(&max) {
        return Err(Error::Domain(format!("max must be in 1..=6, got {max}")));
    }
    let q = enumerate_gamma2(1, 5, &default_seeds(1, 5)?, DEFAULT_CAP)?;
    let comm = commutator_subgroup(&q, DEFAULT_CAP)?;
    let mut cases = Vec::new();
    for m in 1..=max {
        for n in 1..=max {
            let closed = commutator_closed_form(m, n);
            let word = commutator_word(m, n);
            let (a, b) = (1i64 << (m - 1), 1i64 << (n - 1));
            let (sa, tb) = int_sigma_tau(a, b);
            let (sa_inv, tb_inv) = int_sigma_tau(-a, -b);
            let ltr = sa.mul(&tb)?.mul(&sa_inv)?.mul(&tb_inv)?;
            let conj = sa.mul(&word)?.mul(&sa_inv)?;
            let (sm, tn) = int_sigma_tau(m as i64, n as i64);
            let (sm_inv, tn_inv) = int_sigma_tau(-(m as i64), -(n as i64));
            let plain = tn.mul(&sm_inv)?.mul(&tn_inv)?.mul(&sm)?;
            cases.push(CommutatorFormulaCase {
                m,
                n,
                closed_form: closed.data().iter().map(|e| e.to_string()).collect(),
                word_matches: word == closed,
                in_commutator_mod_32: comm.contains(&closed.to_mod(5)?),
                left_to_right_is_conjugate: ltr == conj,
                plain_exponents_match: plain == closed,
            });
        }
    }
    Ok(CommutatorFormulaReport { max, cases })
}

#[derive(Debug, Clone, Serialize)]
pub struct Mod32Report {
    /// (σ²τσ⁻²τ⁻¹)(στσ⁻¹τ⁻¹)² mod 32
    pub first_product: String,
    /// (στ²σ⁻¹τ⁻²)(στσ⁻¹τ⁻¹)² mod 32
    pub second_product: String,
    pub first_is_sigma8: bool,
    pub first_is_tau8: bool,
    pub second_is_sigma8: bool,
    pub second_is_tau8: bool,
    pub fourth_power_is_17: bool,
}

impl Mod32Report {
    /// The two products are σ⁸ and τ⁸ in some order, and the fourth power is 17.
    pub fn holds(&self) -> bool {
        let pairing = (self.first_is_sigma8 && self.second_is_tau8)
            || (self.first_is_tau8 && self.second_is_sigma8);
        pairing && self.fourth_power_is_17
    }
}

pub fn verify_mod32_congruences() -> Result<Mod32Report> {
    let c = |m, n| commutator_word(m, n).to_mod(5);
    let c11 = c(1, 1)?;
    let sq = c11.mul(&c11)?;
    let first = c(2, 1)?.mul(&sq)?;
    let second = c(1, 2)?.mul(&sq)?;
    let s8 = sigma(5).pow(8)?;
    let t8 = tau(5).pow(8)?;
    Ok(Mod32Report {
        first_product: first.to_string(),
        second_product: second.to_string(),
        first_is_sigma8: first == s8,
        first_is_tau8: first == t8,
        second_is_sigma8: second == s8,
        second_is_tau8: second == t8,
        fourth_power_is_17: c11.pow(4)? == ModMatrix::scalar(2, 5, 17)?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LayerReport {
    pub n: u32,
    pub layer_order: u64,
    pub generated_order: u64,
    pub elementary_abelian: bool,
    /// `None` when the squaring step is not part of the induction (n < 3).
    pub squaring_step: Option<bool>,
}

impl LayerReport {
    pub fn holds(&self) -> bool {
        self.layer_order == 8
            && self.generated_order == 8
            && self.elementary_abelian
            && self.squaring_step.unwrap_or(true)
    }
}

/// The layer Γ(2ⁿ)/Γ(2ⁿ⁺¹) in genus 1: brute-force it, check it is (ℤ/2)³ and
/// generated by σ^{2^{n−1}}, τ^{2^{n−1}}, 1 + 2ⁿ. For n ≥ 3 also check that
/// every symplectic lift of the previous layer's generators squares to the
/// current ones modulo 2^{n+1}.
pub fn layer_generation_check(n: u32) -> Result<LayerReport> {
    if !(1..=4).contains(&n) {
        return Err(Error::Domain(format!(
            "layer index must be in 1..=4, got {n}"
        )));
    }
    let level = n + 1;
    let layer = brute_force_congruence_set(1, n, level)?;
    let gens = layer_generators(n, level)?;
    let generated = QuotientGroup::generated(2, level, &gens, DEFAULT_CAP)?;
    let id = ModMatrix::identity(2, level)?;
    let elementary_abelian = layer
        .iter()
        .all(|x| x.mul(x).map(|y| y == id).unwrap_or(false))
        && layer.iter().all(|x| generated.contains(x));
    let squaring_step = if n >= 3 {
        let prev = layer_generators(n - 1, level)?;
        let space = SymplecticSpace::new(1, level)?;
        let mut ok = true;
        for (p, target) in prev.iter().zip(&gens) {
            // lifts of p from level n to level n + 1
            for code in 0u32..16 {
                let delta: Vec<i64> = (0..4).map(|i| i64::from(code >> i & 1) << n).collect();
                let base = p.signed_entries();
                let entries: Vec<i64> = base.iter().zip(&delta).map(|(a, b)| a + b).collect();
                let x = ModMatrix::from_signed(2, level, &entries)?;
                if space.multiplier(&x)?.is_none() {
                    continue;
                }
                ok &= x.mul(&x)? == *target;
            }
        }
        Some(ok)
    } else {
        None
    };
    Ok(LayerReport {
        n,
        layer_order: layer.len() as u64,
        generated_order: generated.order(),
        elementary_abelian,
        squaring_step,
    })
}

fn layer_generators(n: u32, level: u32) -> Result<Vec<ModMatrix>> {
    let e = 1i64 << (n - 1);
    Ok(vec![
        sigma(level).pow(e)?,
        tau(level).pow(e)?,
        ModMatrix::scalar(2, level, 1 + (1i64 << n))?,
    ])
}

#[derive(Debug, Clone, Serialize)]
pub struct GenusOneReport {
    pub order_mod_4: u64,
    pub order_mod_8: u64,
    pub order_mod_16: u64,
    pub brute_force_orders: Vec<u64>,
    pub commutator_order: u64,
    pub commutator_cyclic_from_basic: bool,
    pub basic_commutator_central: bool,
    pub abelianization: AbelianType,
    pub sigma_class_order: u64,
    pub tau_class_order: u64,
    pub minus_one_class_order: u64,
    pub level5_abelianization: AbelianType,
    pub level5_commutator_contains_gamma16: bool,
    pub minus_one_direct_factor: bool,
}

impl GenusOneReport {
    pub fn expected_type() -> AbelianType {
        AbelianType::new(vec![2, 8, 8]).expect("powers of 2")
    }

    pub fn holds(&self) -> bool {
        self.order_mod_4 == 8
            && self.order_mod_8 == 64
            && self.order_mod_16 == 512
            && self.brute_force_orders == [8, 64, 512]
            && self.commutator_order == 4
            && self.commutator_cyclic_from_basic
            && self.basic_commutator_central
            && self.abelianization == Self::expected_type()
            && self.sigma_class_order == 8
            && self.tau_class_order == 8
            && self.minus_one_class_order == 2
            && self.level5_abelianization == self.abelianization
            && self.level5_commutator_contains_gamma16
            && self.minus_one_direct_factor
    }
}

/// Everything about Γ(2) in genus 1 that is decided at levels 2 through 5.
pub fn genus_one_suite() -> Result<GenusOneReport> {
    let cap = DEFAULT_CAP;
    let mut orders = Vec::new();
    let mut brute = Vec::new();
    for m in 2..=4 {
        orders.push(enumerate_gamma2(1, m, &default_seeds(1, m)?, cap)?.order());
        brute.push(brute_force_congruence_set(1, 1, m)?.len() as u64);
    }
    let q = enumerate_gamma2(1, 4, &default_seeds(1, 4)?, cap)?;
    let ab = abelianization(&q, cap)?;
    let basic = commutator_word(1, 1).to_mod(4)?;
    let cyclic = QuotientGroup::generated(2, 4, std::slice::from_ref(&basic), cap)?;
    let central = basic.mul(&sigma(4))? == sigma(4).mul(&basic)?
        && basic.mul(&tau(4))? == tau(4).mul(&basic)?;

    let q5 = enumerate_gamma2(1, 5, &default_seeds(1, 5)?, cap)?;
    let ab5 = abelianization(&q5, cap)?;
    let gamma16 = brute_force_congruence_set(1, 4, 5)?;
    let contains16 = gamma16.iter().all(|x| ab5.commutator.contains(x));

    let st = QuotientGroup::generated(2, 4, &[sigma(4), tau(4)], cap)?;
    let minus = ModMatrix::scalar(2, 4, -1)?;
    let direct = !st.contains(&minus) && 2 * st.order() == q.order();

    Ok(GenusOneReport {
        order_mod_4: orders[0],
        order_mod_8: orders[1],
        order_mod_16: orders[2],
        brute_force_orders: brute,
        commutator_order: ab.commutator.order(),
        commutator_cyclic_from_basic: cyclic.same_elements(&ab.commutator),
        basic_commutator_central: central,
        sigma_class_order: ab.class_order(&sigma(4))?,
        tau_class_order: ab.class_order(&tau(4))?,
        minus_one_class_order: ab.class_order(&minus)?,
        abelianization: ab.abelian_type,
        level5_abelianization: ab5.abelian_type,
        level5_commutator_contains_gamma16: contains16,
        minus_one_direct_factor: direct,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GenusTwoReport {
    pub layer_orders: Vec<u64>,
    pub order: u64,
    pub commutator_order: u64,
    pub sato_set_order: u64,
    pub commutator_equals_sato: bool,
    pub abelianization: AbelianType,
}

impl GenusTwoReport {
    pub fn expected_type() -> AbelianType {
        AbelianType::from_powers(&[(2, 6), (4, 4)]).expect("powers of 2")
    }

    pub fn holds(&self) -> bool {
        self.layer_orders == [1 << 10, 1 << 10]
            && self.order == 1 << 20
            && self.commutator_order == 64
            && self.sato_set_order == 64
            && self.commutator_equals_sato
            && self.abelianization == Self::expected_type()
    }
}

/// Γ(2)/Γ(8) in genus 2: enumeration, commutator subgroup against the oracle, abelianization.
pub fn genus_two_suite(cap: usize) -> Result<GenusTwoReport> {
    let layer_orders = vec![
        brute_force_congruence_set(2, 1, 2)?.len() as u64,
        brute_force_congruence_set(2, 2, 3)?.len() as u64,
    ];
    let q = enumerate_gamma2(2, 3, &default_seeds(2, 3)?, cap)?;
    let ab = abelianization(&q, cap)?;
    let oracle = SatoOracle::new(2, 3)?;
    let sato: Vec<ModMatrix> = q
        .elements()
        .into_iter()
        .filter(|m| oracle.contains(m))
        .collect();
    let equal = sato.len() as u64 == ab.commutator.order()
        && sato.iter().all(|m| ab.commutator.contains(m));
    Ok(GenusTwoReport {
        layer_orders,
        order: q.order(),
        commutator_order: ab.commutator.order(),
        sato_set_order: sato.len() as u64,
        commutator_equals_sato: equal,
        abelianization: ab.abelian_type,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TransvectionBasisReport {
    pub gamma4_order: u64,
    pub sato_order: u64,
    pub quotient_dimension: u32,
    pub coordinate_kernel_is_sato: bool,
    /// Coordinates of T_{a1}⁴, T_{a2}⁴, T_{b1}⁴, T_{b2}⁴.
    pub images: Vec<u64>,
    pub all_nontrivial: bool,
    pub independent: bool,
}

impl TransvectionBasisReport {
    pub fn holds(&self) -> bool {
        self.gamma4_order == 1 << 10
            && self.sato_order == 64
            && self.quotient_dimension == 4
            && self.coordinate_kernel_is_sato
            && self.all_nontrivial
            && self.independent
    }
}

fn genus_two_transvections(level: u32, exponent: i64) -> Result<Vec<ModMatrix>> {
    let s = SymplecticSpace::new(2, level)?;
    [s.a(1), s.a(2), s.b(1), s.b(2)]
        .into_iter()
        .map(|v| s.transvection_matrix(&Transvection::new(v, exponent)))
        .collect()
}

/// Γ(4)/[Γ(2),Γ(2)] modulo 8 in genus 2 and the images of the four fourth-power transvections.
pub fn gamma4_mod_commutator_basis(g: usize) -> Result<TransvectionBasisReport> {
    if g != 2 {
        return Err(Error::Domain("only genus 2 is supported".into()));
    }
    let oracle = SatoOracle::new(2, 3)?;
    let gamma4 = brute_force_congruence_set(2, 2, 3)?;
    let sato_order = gamma4.iter().filter(|m| oracle.contains(m)).count() as u64;
    let gamma4_order = gamma4.len() as u64;
    let ratio = gamma4_order / sato_order.max(1);
    let quotient_dimension = if ratio.is_power_of_two() {
        ratio.trailing_zeros()
    } else {
        0
    };
    let mut kernel_ok = true;
    for m in &gamma4 {
        kernel_ok &= (oracle.coordinates(m)? == 0) == oracle.contains(m);
    }
    let images: Vec<u64> = genus_two_transvections(3, 4)?
        .iter()
        .map(|t| oracle.coordinates(t))
        .collect::<Result<_>>()?;
    Ok(TransvectionBasisReport {
        gamma4_order,
        sato_order,
        quotient_dimension,
        coordinate_kernel_is_sato: kernel_ok,
        all_nontrivial: images.iter().all(|&v| v != 0),
        independent: gf2::rank(&images) == 4,
        images,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugationReport {
    pub preserves_sato_set: bool,
    pub displayed_congruence: bool,
    pub fixes_other_three: bool,
    /// Images under conjugation by T_{a1} of the coordinates of T_{a1}⁴, T_{a2}⁴, T_{b1}⁴, T_{b2}⁴.
    pub operator_images: Vec<u64>,
    pub deviation_rank: usize,
}

impl ConjugationReport {
    pub fn holds(&self) -> bool {
        self.preserves_sato_set
            && self.displayed_congruence
            && self.fixes_other_three
            && self.deviation_rank == 1
    }
}

/// Conjugation by T_{a1} on Γ(4)/[Γ(2),Γ(2)] modulo 8.
pub fn transvection_conjugation_check() -> Result<ConjugationReport> {
    let oracle = SatoOracle::new(2, 3)?;
    let s = SymplecticSpace::new(2, 3)?;
    let ta1 = s.transvection_matrix(&Transvection::new(s.a(1), 1))?;
    let fourth = genus_two_transvections(3, 4)?;
    let (ta1_4, ta2_4, tb1_4, tb2_4) = (&fourth[0], &fourth[1], &fourth[2], &fourth[3]);
    let gamma4 = brute_force_congruence_set(2, 2, 3)?;
    let mut preserves = true;
    for m in gamma4.iter().filter(|m| oracle.contains(m)) {
        preserves &= oracle.contains(&ta1.conjugate(m)?);
    }
    let same = |x: &ModMatrix, y: &ModMatrix| -> Result<bool> {
        Ok(oracle.contains(&x.mul(&y.inverse()?)?))
    };
    let displayed = same(&ta1.conjugate(tb1_4)?, &tb1_4.mul(ta1_4)?)?;
    let fixes = same(&ta1.conjugate(ta1_4)?, ta1_4)?
        && same(&ta1.conjugate(ta2_4)?, ta2_4)?
        && same(&ta1.conjugate(tb2_4)?, tb2_4)?;
    // Express the operator in the basis given by the four transvection images.
    let coords: Vec<u64> = fourth
        .iter()
        .map(|t| oracle.coordinates(t))
        .collect::<Result<_>>()?;
    let mut basis = gf2::Basis::new();
    for &c in &coords {
        basis.insert(c);
    }
    let mut operator_images = Vec::new();
    for t in &fourth {
        let img = oracle.coordinates(&ta1.conjugate(t)?)?;
        let combo = basis
            .express(img)
            .ok_or_else(|| Error::Invariant("conjugate leaves the transvection span".into()))?;
        operator_images.push(combo as u64);
    }
    Ok(ConjugationReport {
        preserves_sato_set: preserves,
        displayed_congruence: displayed,
        fixes_other_three: fixes,
        deviation_rank: gf2::deviation_rank(&operator_images),
        operator_images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_genus_one_orders() {
        for (m, order) in [(2, 8), (3, 64)] {
            let q = enumerate_gamma2(1, m, &default_seeds(1, m).unwrap(), DEFAULT_CAP).unwrap();
            assert_eq!(q.order(), order);
        }
    }

    #[test]
    fn incomplete_seeds_are_reported() {
        let err = enumerate_gamma2(1, 3, &[sigma(3), tau(3)], DEFAULT_CAP).unwrap_err();
        assert_eq!(
            err,
            Error::IncompleteGenerators {
                expected: 64,
                found: 32
            }
        );
    }

    #[test]
    fn capacity_is_enforced() {
        let seeds = default_seeds(1, 4).unwrap();
        assert_eq!(
            enumerate_gamma2(1, 4, &seeds, 100).unwrap_err(),
            Error::Capacity { cap: 100 }
        );
    }

    #[test]
    fn abelian_group_has_trivial_commutator() {
        let g = QuotientGroup::generated(2, 4, &[sigma(4)], DEFAULT_CAP).unwrap();
        assert!(g.is_abelian().unwrap());
        let ab = abelianization(&g, DEFAULT_CAP).unwrap();
        assert_eq!(ab.commutator.order(), 1);
        assert_eq!(ab.abelian_type, AbelianType::new(vec![8]).unwrap());
    }

    #[test]
    fn commutator_formula_first_cases() {
        assert_eq!(
            commutator_word(1, 1),
            IntMatrix::from_i64(2, 2, &[-3, 8, -8, 21]).unwrap()
        );
        assert_eq!(
            commutator_word(2, 1),
            IntMatrix::from_i64(2, 2, &[-7, 32, -16, 73]).unwrap()
        );
        assert_eq!(
            commutator_word(1, 2),
            IntMatrix::from_i64(2, 2, &[-7, 16, -32, 73]).unwrap()
        );
    }

    #[test]
    fn layers() {
        for n in 1..=4 {
            let r = layer_generation_check(n).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn sato_oracle_rejects_bad_parameters() {
        assert!(SatoOracle::new(1, 3).is_err());
        assert!(SatoOracle::new(2, 4).is_err());
    }
}
