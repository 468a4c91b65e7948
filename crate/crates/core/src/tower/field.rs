//! Iterated quadratic extensions of a base field with exact arithmetic.
//!
//! Every proper step adjoins r with r² = a for some non-square a of the field
//! built so far, so an element is a sparse combination of radical products
//! r_S = ∏_{k∈S} r_k indexed by bitmasks. A step whose radicand is already a
//! square collapses: its value is recorded as an element and no bit is spent.
//! Each radical is pinned to a complex number by a branch rule (Im > 0, or
//! Im = 0 and Re > 0) certified with interval enclosures.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::interval::{ComplexInterval, IntervalSummary};
use crate::error::{Error, Result};
use crate::linalg::FieldScalar;

/// Square class of a nonzero base scalar: its sign and the primes of odd valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareClass {
    pub negative: bool,
    pub primes: BTreeSet<BigInt>,
}

/// Base fields a tower can be built over.
pub trait TowerScalar: FieldScalar + PartialEq + fmt::Debug + fmt::Display {
    fn enclose(&self, prec: u32) -> ComplexInterval;
    fn exact_sqrt(&self) -> Option<Self>;
    /// `None` when the class cannot be computed cheaply; the solver then
    /// falls back to the general recursion.
    fn square_class(&self) -> Option<SquareClass>;
}

const TRIAL_LIMIT: u64 = 1 << 20;

fn odd_primes_of(n: &BigInt, acc: &mut BTreeSet<BigInt>) -> bool {
    let mut n = n.abs();
    let mut p = 2u64;
    while p < TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut odd = false;
        while (&n % &bp).is_zero() {
            n /= &bp;
            odd = !odd;
        }
        if odd && !acc.insert(bp.clone()) {
            acc.remove(&bp);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return true;
    }
    // no factor below the trial limit: primes up to the limit squared are safe
    let limit_sq = BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT);
    if n < limit_sq {
        if !acc.insert(n.clone()) {
            acc.remove(&n);
        }
        return true;
    }
    let r = n.sqrt();
    &r * &r == n
}

impl TowerScalar for BigRational {
    fn enclose(&self, prec: u32) -> ComplexInterval {
        ComplexInterval::from_rational(self, prec)
    }

    fn exact_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let (n, d) = (self.numer(), self.denom());
        let (rn, rd) = (n.sqrt(), d.sqrt());
        (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
    }

    fn square_class(&self) -> Option<SquareClass> {
        if self.is_zero() {
            return None;
        }
        let mut primes = BTreeSet::new();
        if !odd_primes_of(self.numer(), &mut primes) || !odd_primes_of(self.denom(), &mut primes) {
            return None;
        }
        Some(SquareClass {
            negative: self.is_negative(),
            primes,
        })
    }
}

/// Sparse element: radical-product bitmask ↦ base coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct Element<T> {
    terms: BTreeMap<u64, T>,
}

impl<T: TowerScalar> Element<T> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(mask: u64, c: T) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mask, c);
        }
        Self { terms }
    }

    pub fn terms(&self) -> &BTreeMap<u64, T> {
        &self.terms
    }

    /// Number of nonzero monomials.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<T> {
        match self.terms.len() {
            0 => Some(T::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn support(&self) -> u64 {
        self.terms.keys().fold(0, |a, m| a | m)
    }

    pub fn max_bit(&self) -> Option<usize> {
        let s = self.support();
        (s != 0).then(|| 63 - s.leading_zeros() as usize)
    }

    fn accumulate(terms: &mut BTreeMap<u64, T>, mask: u64, c: T) {
        if c.is_zero() {
            return;
        }
        match terms.remove(&mask) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    terms.insert(mask, s);
                }
            }
            None => {
                terms.insert(mask, c);
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (&m, c) in &o.terms {
            Self::accumulate(&mut terms, m, c.clone());
        }
        Self { terms }
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&m, c)| (m, T::zero() - c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&m, x)| (m, x.clone() * c.clone()))
                .collect(),
        }
    }

    /// Splits x = x₀ + x₁·r_bit with x₀, x₁ free of `bit`.
    fn split(&self, bit: usize) -> (Self, Self) {
        let flag = 1u64 << bit;
        let (mut lo, mut hi) = (BTreeMap::new(), BTreeMap::new());
        for (&m, c) in &self.terms {
            if m & flag == 0 {
                lo.insert(m, c.clone());
            } else {
                hi.insert(m ^ flag, c.clone());
            }
        }
        (Self { terms: lo }, Self { terms: hi })
    }

    fn with_bit(&self, bit: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&m, c)| (m | 1 << bit, c.clone()))
                .collect(),
        }
    }
}

/// Handle to a tower step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct StepId(pub usize);

#[derive(Debug, Clone, PartialEq)]
pub enum StepKind<T> {
    /// A new radical occupying bit `bit`.
    Proper { bit: usize },
    /// The radicand was already a square; `value` is its chosen root.
    Collapsed { value: Element<T> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Step<T> {
    pub label: String,
    pub radicand: Element<T>,
    /// Set when the radicand is the value of an earlier step; its enclosure
    /// is then inherited from that step rather than re-evaluated.
    pub parent: Option<StepId>,
    pub kind: StepKind<T>,
}

impl<T> Step<T> {
    pub fn is_proper(&self) -> bool {
        matches!(self.kind, StepKind::Proper { .. })
    }
}

/// Precision schedule for enclosures: `start_bits`, doubled up to `rounds` times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    pub start_bits: u32,
    pub rounds: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Self {
            start_bits: 512,
            rounds: 10,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Tower<T> {
    steps: Vec<Step<T>>,
    bit_steps: Vec<usize>,
    radicands: Vec<Element<T>>,
    /// Radicands of the leading run of proper steps with base radicands.
    prefix: Vec<(T, Option<SquareClass>)>,
    precision: Precision,
}

pub type RadicalTower = Tower<BigRational>;

impl<T: TowerScalar> Default for Tower<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: TowerScalar> Tower<T> {
    pub fn new() -> Self {
        Self::with_precision(Precision::default())
    }

    pub fn with_precision(precision: Precision) -> Self {
        Self {
            steps: Vec::new(),
            bit_steps: Vec::new(),
            radicands: Vec::new(),
            prefix: Vec::new(),
            precision,
        }
    }

    pub fn steps(&self) -> &[Step<T>] {
        &self.steps
    }

    pub fn step(&self, id: StepId) -> &Step<T> {
        &self.steps[id.0]
    }

    pub fn find(&self, label: &str) -> Option<StepId> {
        self.steps.iter().position(|s| s.label == label).map(StepId)
    }

    /// Number of proper steps; the degree over the base is 2 to this power.
    pub fn log2_degree(&self) -> usize {
        self.bit_steps.len()
    }

    pub fn degree(&self) -> BigInt {
        BigInt::one() << self.log2_degree()
    }

    pub fn proper_steps(&self) -> impl Iterator<Item = StepId> + '_ {
        self.bit_steps.iter().map(|&s| StepId(s))
    }

    /// The designated root adjoined at step `id`.
    pub fn value(&self, id: StepId) -> Element<T> {
        match &self.steps[id.0].kind {
            StepKind::Proper { bit } => Element::monomial(1 << bit, T::one()),
            StepKind::Collapsed { value } => value.clone(),
        }
    }

    fn check_support(&self, x: &Element<T>) -> Result<()> {
        let n = self.bit_steps.len();
        if n < 64 && x.support() >> n != 0 {
            return Err(Error::Tower(
                "element uses radicals outside the tower".into(),
            ));
        }
        Ok(())
    }

    /// Adjoins the branch-rule square root of `radicand`.
    pub fn adjoin_sqrt(
        &mut self,
        label: impl Into<String>,
        radicand: Element<T>,
    ) -> Result<StepId> {
        self.adjoin(label.into(), radicand, None)
    }

    /// Adjoins the branch-rule square root of the value of step `parent`.
    pub fn adjoin_sqrt_of(&mut self, label: impl Into<String>, parent: StepId) -> Result<StepId> {
        if parent.0 >= self.steps.len() {
            return Err(Error::Tower(format!("no step {}", parent.0)));
        }
        self.adjoin(label.into(), self.value(parent), Some(parent))
    }

    fn adjoin(
        &mut self,
        label: String,
        radicand: Element<T>,
        parent: Option<StepId>,
    ) -> Result<StepId> {
        self.check_support(&radicand)?;
        if radicand.is_zero() {
            return Err(Error::Domain(format!("radicand of {label} is zero")));
        }
        let id = StepId(self.steps.len());
        match self.sqrt(&radicand)? {
            Some(s) => {
                let neg = s.neg();
                let value = self.certify(|emb| {
                    let root = emb.radicand_box(&radicand, parent).sqrt_branch().ok()?;
                    let es = emb.eval(&s);
                    let (pos, negs) = (es.overlaps(&root), es.neg().overlaps(&root));
                    match (pos, negs) {
                        (true, false) => Some(s.clone()),
                        (false, true) => Some(neg.clone()),
                        _ => None,
                    }
                })?;
                self.steps.push(Step {
                    label,
                    radicand,
                    parent,
                    kind: StepKind::Collapsed { value },
                });
            }
            None => {
                let bit = self.bit_steps.len();
                if bit >= 63 {
                    return Err(Error::Tower("more than 63 proper steps".into()));
                }
                // make sure the branch is decidable before committing
                self.certify(|emb| emb.radicand_box(&radicand, parent).sqrt_branch().ok())?;
                if self.prefix.len() == bit {
                    if let Some(c) = radicand.as_constant() {
                        let class = c.square_class();
                        self.prefix.push((c, class));
                    }
                }
                self.bit_steps.push(id.0);
                self.radicands.push(radicand.clone());
                self.steps.push(Step {
                    label,
                    radicand,
                    parent,
                    kind: StepKind::Proper { bit },
                });
            }
        }
        Ok(id)
    }

    pub fn mul(&self, x: &Element<T>, y: &Element<T>) -> Element<T> {
        if x.is_zero() || y.is_zero() {
            return Element::zero();
        }
        let top = match (x.max_bit(), y.max_bit()) {
            (None, None) => {
                let c = x.as_constant().expect("constant") * y.as_constant().expect("constant");
                return Element::constant(c);
            }
            (a, b) => a.max(b).expect("some bit"),
        };
        if top < self.prefix.len() {
            let mut terms = BTreeMap::new();
            for (&s, c) in &x.terms {
                for (&t, d) in &y.terms {
                    let mut coef = c.clone() * d.clone();
                    let mut both = s & t;
                    while both != 0 {
                        let k = both.trailing_zeros() as usize;
                        coef = coef * self.prefix[k].0.clone();
                        both &= both - 1;
                    }
                    Element::accumulate(&mut terms, s ^ t, coef);
                }
            }
            return Element { terms };
        }
        let (x0, x1) = x.split(top);
        let (y0, y1) = y.split(top);
        let low = self
            .mul(&x0, &y0)
            .add(&self.mul(&self.radicands[top], &self.mul(&x1, &y1)));
        let high = self.mul(&x0, &y1).add(&self.mul(&x1, &y0));
        low.add(&high.with_bit(top))
    }

    pub fn square(&self, x: &Element<T>) -> Element<T> {
        self.mul(x, x)
    }

    pub fn inv(&self, x: &Element<T>) -> Result<Element<T>> {
        if x.is_zero() {
            return Err(Error::Domain("inverse of zero".into()));
        }
        let Some(k) = x.max_bit() else {
            let c = x.as_constant().expect("constant");
            return Ok(Element::constant(T::one() / c));
        };
        let (u, v) = x.split(k);
        let norm = self
            .square(&u)
            .sub(&self.mul(&self.radicands[k], &self.square(&v)));
        let ni = self.inv(&norm)?;
        Ok(self.mul(&u.sub(&v.with_bit(k)), &ni))
    }

    pub fn div(&self, x: &Element<T>, y: &Element<T>) -> Result<Element<T>> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn pow(&self, x: &Element<T>, e: i64) -> Result<Element<T>> {
        let base = if e < 0 { self.inv(x)? } else { x.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Element::one();
        let mut b = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            n >>= 1;
            if n > 0 {
                b = self.square(&b);
            }
        }
        Ok(acc)
    }

    /// Some square root of `x` inside the tower, if one exists.
    pub fn sqrt(&self, x: &Element<T>) -> Result<Option<Element<T>>> {
        self.check_support(x)?;
        self.sqrt_at(x, self.bit_steps.len())
    }

    pub fn is_square(&self, x: &Element<T>) -> Result<bool> {
        Ok(self.sqrt(x)?.is_some())
    }

    /// Solves c·∏_E extras = r²·∏_P a_p over the square classes of the first
    /// `count` prefix radicands. Returns (P, E, r); the outer `None` means some
    /// class was unavailable.
    fn class_solve(&self, c: &T, count: usize, extras: &[T]) -> Option<Option<(u64, u64, T)>> {
        let vector = |sc: &SquareClass| {
            let mut v = sc.primes.clone();
            if sc.negative {
                v.insert(BigInt::from(-1));
            }
            v
        };
        // sparse F₂ elimination; combination bits: prefix k ↦ k, extra e ↦ 32 + e
        type Row = (BTreeSet<BigInt>, u64);
        fn reduce(rows: &[Row], mut v: BTreeSet<BigInt>, mut comb: u64) -> Row {
            while let Some(top) = v.iter().next_back().cloned() {
                match rows
                    .iter()
                    .find(|(r, _)| r.iter().next_back() == Some(&top))
                {
                    Some((r, rc)) => {
                        v = v.symmetric_difference(r).cloned().collect();
                        comb ^= rc;
                    }
                    None => break,
                }
            }
            (v, comb)
        }
        if count > 32 || extras.len() > 32 {
            return None;
        }
        let mut rows: Vec<Row> = Vec::new();
        let gens = self.prefix[..count]
            .iter()
            .map(|(_, sc)| sc.clone())
            .chain(extras.iter().map(|e| e.square_class()));
        for (k, sc) in gens.enumerate() {
            let flag = if k < count {
                1u64 << k
            } else {
                1u64 << (32 + k - count)
            };
            let (v, comb) = reduce(&rows, vector(&sc?), flag);
            if !v.is_empty() {
                rows.push((v, comb));
            }
        }
        let (rest, comb) = reduce(&rows, vector(&c.square_class()?), 0);
        if !rest.is_empty() {
            return Some(None);
        }
        let (pmask, emask) = (comb & 0xffff_ffff, comb >> 32);
        let mut q = c.clone();
        for (e, x) in extras.iter().enumerate() {
            if emask >> e & 1 == 1 {
                q = q * x.clone();
            }
        }
        for k in 0..count {
            if pmask >> k & 1 == 1 {
                q = q / self.prefix[k].0.clone();
            }
        }
        Some(q.exact_sqrt().map(|r| (pmask, emask, r)))
    }

    fn prefix_product(&self, mask: u64) -> T {
        let mut p = T::one();
        let mut m = mask;
        while m != 0 {
            p = p * self.prefix[m.trailing_zeros() as usize].0.clone();
            m &= m - 1;
        }
        p
    }

    /// Finds E ⊆ extras and x with x² = (∏_E extras)·c·r_S inside the
    /// multiquadratic prefix of length `level`.
    fn prefix_monomial_sqrt(
        &self,
        c: &T,
        s: u64,
        level: usize,
        extras: &[T],
    ) -> Option<Option<(u64, Element<T>)>> {
        if s == 0 {
            return Some(
                self.class_solve(c, level, extras)?
                    .map(|(p, e, r)| (e, Element::monomial(p, r))),
            );
        }
        let t = 63 - s.leading_zeros() as usize;
        let m = t + 1;
        // rational radicands above the support join the multiplier search
        let mut ext: Vec<T> = extras.to_vec();
        ext.extend((m..level).map(|k| self.prefix[k].0.clone()));
        let rest = s & !(1 << t);
        let n0 = T::zero() - self.prefix[t].0.clone() * self.prefix_product(rest);
        let Some((p0, _, r0)) = self.class_solve(&n0, t, &[])? else {
            return Some(None);
        };
        let two = T::one() + T::one();
        for sign in [T::one(), T::zero() - T::one()] {
            let wc = sign * c.clone() * r0.clone() / two.clone();
            let Some((emask, x)) = self.prefix_monomial_sqrt(&wc, p0, t, &ext)? else {
                continue;
            };
            let mut q = T::one();
            for (e, val) in ext.iter().enumerate() {
                if emask >> e & 1 == 1 {
                    q = q * val.clone();
                }
            }
            let inv2x = self.inv(&x.scale(&two)).ok()?;
            let y = self.mul(&Element::monomial(rest, q * c.clone()), &inv2x);
            let z = x.add(&y.with_bit(t));
            // undo the radicands a_k (k ≥ m) folded into the multiplier
            let kmask = (emask >> extras.len()) << m;
            let fixed = self.mul(
                &z,
                &Element::monomial(kmask, T::one() / self.prefix_product(kmask)),
            );
            let own = emask & ((1u64 << extras.len()) - 1);
            return Some(Some((own, fixed)));
        }
        Some(None)
    }

    fn sqrt_at(&self, a: &Element<T>, level: usize) -> Result<Option<Element<T>>> {
        if a.is_zero() {
            return Ok(Some(Element::zero()));
        }
        if let Some(c) = a.as_constant() {
            if level == 0 {
                return Ok(c.exact_sqrt().map(Element::constant));
            }
        }
        if level <= self.prefix.len() && a.term_count() == 1 {
            let (&mask, c) = a.terms.iter().next().expect("one term");
            if let Some(r) = self.prefix_monomial_sqrt(c, mask, level, &[]) {
                return Ok(r.map(|(_, x)| x));
            }
        }
        let k = level - 1;
        let b = &self.radicands[k];
        let (u, v) = a.split(k);
        if v.is_zero() {
            if let Some(x) = self.sqrt_at(&u, k)? {
                return Ok(Some(x));
            }
            let q = self.div(&u, b)?;
            return Ok(self.sqrt_at(&q, k)?.map(|t| t.with_bit(k)));
        }
        let n = self.square(&u).sub(&self.mul(b, &self.square(&v)));
        let Some(s) = self.sqrt_at(&n, k)? else {
            return Ok(None);
        };
        let half = T::one() / (T::one() + T::one());
        for w in [u.add(&s).scale(&half), u.sub(&s).scale(&half)] {
            if w.is_zero() {
                continue;
            }
            if let Some(x) = self.sqrt_at(&w, k)? {
                let two_x = x.scale(&(T::one() + T::one()));
                let y = self.div(&v, &two_x)?;
                return Ok(Some(x.add(&y.with_bit(k))));
            }
        }
        Ok(None)
    }

    // ---- enclosures ----

    /// Enclosures of every proper radical at `prec` bits, or `None` if some
    /// branch cannot be decided at that precision.
    pub fn embedding(&self, prec: u32) -> Option<Embedding> {
        let mut emb = Embedding {
            prec,
            roots: Vec::with_capacity(self.radicands.len()),
            boxes: Vec::with_capacity(self.steps.len()),
        };
        for step in &self.steps {
            let b = emb
                .radicand_box(&step.radicand, step.parent)
                .sqrt_branch()
                .ok()?;
            if step.is_proper() {
                emb.roots.push(b.clone());
            }
            emb.boxes.push(b);
        }
        Some(emb)
    }

    /// Runs `f` at increasing precision until it returns a verdict.
    pub fn certify<R>(&self, mut f: impl FnMut(&Embedding) -> Option<R>) -> Result<R> {
        for k in 0..self.precision.rounds {
            let prec = self.precision.start_bits << k;
            if let Some(emb) = self.embedding(prec) {
                if let Some(r) = f(&emb) {
                    return Ok(r);
                }
            }
        }
        Err(Error::BranchUndecidable {
            rounds: self.precision.rounds,
        })
    }

    pub fn enclose(&self, x: &Element<T>) -> Result<ComplexInterval> {
        self.check_support(x)?;
        self.certify(|emb| Some(emb.eval(x)))
    }

    /// Checks that the value of step `id` squares into its radicand's box and
    /// obeys the branch rule.
    pub fn branch_certificate(&self, id: StepId) -> Result<BranchCertificate> {
        let step = &self.steps[id.0];
        let value = self.value(id);
        self.certify(|emb| {
            let v = emb.eval(&value);
            let r = emb.radicand_box(&step.radicand, step.parent);
            let w = emb.step_box(id).clone();
            let (pos, neg) = (v.overlaps(&w), v.neg().overlaps(&w));
            (pos != neg).then(|| BranchCertificate {
                label: step.label.clone(),
                proper: step.is_proper(),
                squares_into_radicand: v.mul(&v).overlaps(&r),
                matches_branch_rule: pos,
                value: v.summary(),
                precision_bits: emb.prec,
            })
        })
    }

    /// Image of `x` under the automorphism multiplying proper radical k by `signs[k]`.
    pub fn apply_signs(&self, signs: &[i8], x: &Element<T>) -> Element<T> {
        let mut out = BTreeMap::new();
        for (&m, c) in &x.terms {
            let mut mm = m;
            let mut neg = false;
            while mm != 0 {
                let k = mm.trailing_zeros() as usize;
                neg ^= signs[k] < 0;
                mm &= mm - 1;
            }
            out.insert(
                m,
                if neg {
                    T::zero() - c.clone()
                } else {
                    c.clone()
                },
            );
        }
        Element { terms: out }
    }

    /// Checks whether prescribed signs on the steps extend to a field automorphism.
    pub fn check_character(&self, ch: &SignCharacter) -> Result<CharacterCheck> {
        if ch.signs.len() != self.steps.len() {
            return Err(Error::DimensionMismatch {
                left: self.steps.len(),
                right: ch.signs.len(),
            });
        }
        let bit_signs: Vec<i8> = self.bit_steps.iter().map(|&s| ch.signs[s]).collect();
        let mut violations = Vec::new();
        for (i, step) in self.steps.iter().enumerate() {
            if self.apply_signs(&bit_signs, &step.radicand) != step.radicand {
                violations.push(format!("{}: radicand not fixed", step.label));
                continue;
            }
            if let StepKind::Collapsed { value } = &step.kind {
                let image = self.apply_signs(&bit_signs, value);
                let expected = if ch.signs[i] < 0 {
                    value.neg()
                } else {
                    value.clone()
                };
                if image != expected {
                    violations.push(format!(
                        "{}: collapsed value maps to the wrong sign",
                        step.label
                    ));
                }
            }
        }
        Ok(CharacterCheck {
            consistent: violations.is_empty(),
            violations,
        })
    }

    /// ℚ-basis of the subring generated by `gens`, which is a subfield.
    pub fn subfield(&self, gens: &[Element<T>]) -> Result<Subfield<T>> {
        for g in gens {
            self.check_support(g)?;
        }
        let mut sub = Subfield {
            basis: Vec::new(),
            echelon: Vec::new(),
        };
        sub.insert(Element::one());
        let mut i = 0;
        while i < sub.basis.len() {
            let b = sub.basis[i].clone();
            for g in gens {
                sub.insert(self.mul(&b, g));
            }
            i += 1;
        }
        Ok(sub)
    }

    /// Decides whether `x` lies in the subfield generated by `gens`.
    pub fn membership(&self, gens: &[Element<T>], x: &Element<T>) -> Result<Membership<T>> {
        self.check_support(x)?;
        let sub = self.subfield(gens)?;
        let coordinates = sub.coordinates(x);
        Ok(Membership {
            member: coordinates.is_some(),
            subfield_degree: sub.degree(),
            coordinates,
        })
    }
}

/// A fixed-precision embedding of the tower into ℂ.
pub struct Embedding {
    prec: u32,
    roots: Vec<ComplexInterval>,
    boxes: Vec<ComplexInterval>,
}

impl Embedding {
    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// Enclosure of the designated root of step `id`.
    pub fn step_box(&self, id: StepId) -> &ComplexInterval {
        &self.boxes[id.0]
    }

    fn radicand_box<T: TowerScalar>(
        &self,
        radicand: &Element<T>,
        parent: Option<StepId>,
    ) -> ComplexInterval {
        match parent {
            Some(p) => self.boxes[p.0].clone(),
            None => self.eval(radicand),
        }
    }

    pub fn eval<T: TowerScalar>(&self, x: &Element<T>) -> ComplexInterval {
        let mut acc = T::zero().enclose(self.prec);
        for (&m, c) in &x.terms {
            let mut t = c.enclose(self.prec);
            let mut mm = m;
            while mm != 0 {
                let k = mm.trailing_zeros() as usize;
                t = t.mul(&self.roots[k]);
                mm &= mm - 1;
            }
            acc = acc.add(&t);
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchCertificate {
    pub label: String,
    pub proper: bool,
    pub squares_into_radicand: bool,
    /// The value, not its negative, is the root with Im > 0 or Im = 0, Re > 0.
    pub matches_branch_rule: bool,
    pub value: IntervalSummary,
    pub precision_bits: u32,
}

impl BranchCertificate {
    pub fn holds(&self) -> bool {
        self.squares_into_radicand && self.matches_branch_rule
    }
}

/// Signs ±1 on every step of a tower, proper or collapsed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignCharacter {
    pub signs: Vec<i8>,
}

impl SignCharacter {
    pub fn trivial(steps: usize) -> Self {
        Self {
            signs: vec![1; steps],
        }
    }

    pub fn flipped(&self, id: StepId) -> Self {
        let mut signs = self.signs.clone();
        signs[id.0] = -signs[id.0];
        Self { signs }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterCheck {
    pub consistent: bool,
    pub violations: Vec<String>,
}

/// A subfield stored as a ℚ-basis plus a reduced echelon form for span tests.
#[derive(Debug, Clone)]
pub struct Subfield<T> {
    basis: Vec<Element<T>>,
    /// (row, combination of basis elements), row normalized at its largest mask
    echelon: Vec<(Element<T>, Vec<T>)>,
}

impl<T: TowerScalar> Subfield<T> {
    pub fn degree(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Element<T>] {
        &self.basis
    }

    fn reduce(&self, x: &Element<T>) -> (Element<T>, Vec<T>) {
        let mut r = x.clone();
        let mut comb = vec![T::zero(); self.basis.len()];
        for (row, rc) in &self.echelon {
            let pivot = *row.terms.keys().next_back().expect("nonzero row");
            if let Some(c) = r.terms.get(&pivot).cloned() {
                r = r.sub(&row.scale(&c));
                for (a, b) in comb.iter_mut().zip(rc) {
                    *a = a.clone() + c.clone() * b.clone();
                }
            }
        }
        (r, comb)
    }

    fn insert(&mut self, x: Element<T>) -> bool {
        let (r, comb) = self.reduce(&x);
        if r.is_zero() {
            return false;
        }
        let n = self.basis.len();
        // r = x − Σ comb·basis, so in basis coordinates r = e_n − comb
        let mut rc: Vec<T> = comb.into_iter().map(|c| T::zero() - c).collect();
        rc.push(T::one());
        for (_, c) in self.echelon.iter_mut() {
            c.push(T::zero());
        }
        let pivot = *r.terms.keys().next_back().expect("nonzero");
        let lead = r.terms[&pivot].clone();
        let inv = T::one() / lead;
        let row = r.scale(&inv);
        let rc: Vec<T> = rc.into_iter().map(|c| c * inv.clone()).collect();
        // keep rows sorted by descending pivot so one pass reduces fully
        let pos = self
            .echelon
            .iter()
            .position(|(e, _)| *e.terms.keys().next_back().expect("nonzero") < pivot)
            .unwrap_or(self.echelon.len());
        self.echelon.insert(pos, (row, rc));
        self.basis.push(x);
        debug_assert_eq!(self.basis.len(), n + 1);
        true
    }

    /// Coordinates of `x` in [`Self::basis`], if it lies in the span.
    pub fn coordinates(&self, x: &Element<T>) -> Option<Vec<T>> {
        let (r, comb) = self.reduce(x);
        r.is_zero().then_some(comb)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Membership<T> {
    pub member: bool,
    pub subfield_degree: usize,
    pub coordinates: Option<Vec<T>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Element<BigRational> {
        Element::constant(BigRational::from_integer(n.into()))
    }

    #[test]
    fn proper_and_collapsed_steps() {
        let mut t = RadicalTower::new();
        let s2 = t.adjoin_sqrt("sqrt(2)", q(2)).unwrap();
        let s8 = t.adjoin_sqrt("sqrt(8)", q(8)).unwrap();
        assert!(t.step(s2).is_proper());
        assert!(!t.step(s8).is_proper());
        assert_eq!(
            t.value(s8),
            t.value(s2).scale(&BigRational::from_integer(2.into()))
        );
        assert_eq!(t.log2_degree(), 1);
        // −2 is not a square in ℚ(√2)
        let m2 = t.adjoin_sqrt("sqrt(-2)", q(-2)).unwrap();
        assert!(t.step(m2).is_proper());
        assert_eq!(t.degree(), BigInt::from(4));
    }

    #[test]
    fn eighth_root_of_unity_collapses_with_branch() {
        let mut t = RadicalTower::new();
        let i = t.adjoin_sqrt("i", q(-1)).unwrap();
        t.adjoin_sqrt("sqrt(2)", q(2)).unwrap();
        let z = t.adjoin_sqrt_of("zeta8", i).unwrap();
        assert!(!t.step(z).is_proper());
        let v = t.value(z);
        assert_eq!(t.square(&v), t.value(i));
        let cert = t.branch_certificate(z).unwrap();
        assert!(cert.holds());
        assert!(cert.value.re > 0.7 && cert.value.im > 0.7);
    }

    #[test]
    fn inverse_and_distributivity() {
        let mut t = RadicalTower::new();
        let a = t.adjoin_sqrt("a", q(3)).unwrap();
        let b = t.adjoin_sqrt("b", q(5)).unwrap();
        let c = t.adjoin_sqrt_of("c", b).unwrap();
        let x = q(1).add(&t.value(a)).add(&t.mul(&t.value(b), &t.value(c)));
        let y = q(2).sub(&t.value(c));
        let inv = t.inv(&x).unwrap();
        assert_eq!(t.mul(&x, &inv), Element::one());
        let z = t.value(a).add(&q(7));
        assert_eq!(t.mul(&x, &y.add(&z)), t.mul(&x, &y).add(&t.mul(&x, &z)));
        assert!(t.inv(&Element::zero()).is_err());
    }

    #[test]
    fn membership_examples() {
        let mut t = RadicalTower::new();
        let s3 = t.adjoin_sqrt("sqrt(3)", q(3)).unwrap();
        let s2 = t.adjoin_sqrt("sqrt(2)", q(2)).unwrap();
        let m = t.membership(&[t.value(s3)], &t.value(s2)).unwrap();
        assert!(!m.member);
        assert_eq!(m.subfield_degree, 2);
        let mut u = RadicalTower::new();
        let a = u.adjoin_sqrt("sqrt(3)", q(3)).unwrap();
        let b = u.adjoin_sqrt("sqrt(5)", q(5)).unwrap();
        let ab = u.adjoin_sqrt("sqrt(15)", q(15)).unwrap();
        let prod = u.mul(&u.value(a), &u.value(b));
        let m = u.membership(&[u.value(ab)], &prod).unwrap();
        assert!(m.member);
        assert_eq!(
            m.coordinates.unwrap(),
            vec![BigRational::zero(), BigRational::one()]
        );
    }

    #[test]
    fn sqrt_of_sums() {
        let mut t = RadicalTower::new();
        let s2 = t.adjoin_sqrt("sqrt(2)", q(2)).unwrap();
        // 3 + 2√2 = (1 + √2)²
        let x = q(3).add(&t.value(s2).scale(&BigRational::from_integer(2.into())));
        let r = t.sqrt(&x).unwrap().unwrap();
        assert_eq!(t.square(&r), x);
        assert!(!t.is_square(&q(1).add(&t.value(s2))).unwrap());
    }

    #[test]
    fn sign_characters() {
        let mut t = RadicalTower::new();
        let a = t.adjoin_sqrt("sqrt(3)", q(3)).unwrap();
        let b = t.adjoin_sqrt("sqrt(5)", q(5)).unwrap();
        let ab = t.adjoin_sqrt("sqrt(15)", q(15)).unwrap();
        let ok = SignCharacter {
            signs: vec![-1, -1, 1],
        };
        assert!(t.check_character(&ok).unwrap().consistent);
        let bad = ok.flipped(ab);
        assert!(!t.check_character(&bad).unwrap().consistent);
        let _ = (a, b);
    }
}
