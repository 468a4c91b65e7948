//! Specialized hyperelliptic curves y² = ∏(x − α_i) over ℚ and the towers
//! generated by their γ values.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::field::{
    BranchCertificate, Element, Precision, RadicalTower, SignCharacter, StepId, StepKind,
    TowerScalar,
};
use super::poly::QPoly;
use crate::error::{Error, Result};
use crate::ring::{abelian_type_from_census, AbelianType, OrderCensus};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn konst(c: BigRational) -> Element<BigRational> {
    Element::constant(c)
}

/// Parses a rational written as `p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Domain(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// The branch points α₁..α_d of y² = ∏(x − α_i).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveRoots {
    roots: Vec<BigRational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaValue {
    pub i: usize,
    pub j: usize,
    pub value: BigRational,
}

impl CurveRoots {
    pub fn new(roots: Vec<BigRational>) -> Result<Self> {
        if roots.len() < 3 {
            return Err(Error::Domain(format!(
                "need at least 3 roots, got {}",
                roots.len()
            )));
        }
        if roots.len() > 12 {
            return Err(Error::Domain(format!(
                "at most 12 roots supported, got {}",
                roots.len()
            )));
        }
        if let Some((a, _)) = roots.iter().tuple_combinations().find(|(a, b)| a == b) {
            return Err(Error::Domain(format!(
                "coincident roots: {a} appears twice"
            )));
        }
        Ok(Self { roots })
    }

    pub fn from_integers(roots: &[i64]) -> Result<Self> {
        Self::new(roots.iter().map(|&r| q(r)).collect())
    }

    /// Comma-separated rationals, e.g. `0,1/2,3`.
    pub fn parse(list: &str) -> Result<Self> {
        Self::new(list.split(',').map(parse_rational).collect::<Result<_>>()?)
    }

    /// Small integer roots for each degree 3 ≤ d ≤ 6.
    pub fn default_fixture(d: usize) -> Result<Self> {
        let all = [0, 1, 3, 7, 12, 20];
        if !(3..=6).contains(&d) {
            return Err(Error::Domain(format!("no default fixture for d = {d}")));
        }
        Self::from_integers(&all[..d])
    }

    /// Roots whose γ values have independent square classes modulo ⟨−1, 2⟩,
    /// so that no radical collapses in the generic towers.
    pub fn generic_fixture(d: usize) -> Result<Self> {
        match d {
            3 => Self::from_integers(&[0, 3, 10]),
            4 => Self::from_integers(&[0, 1, 2, 7]),
            5 => Self::from_integers(&[0, 61, 94, 146, 173]),
            6 => Self::from_integers(&[0, 1, 2, 16, 33, 39]),
            _ => Err(Error::Domain(format!("no generic fixture for d = {d}"))),
        }
    }

    pub fn d(&self) -> usize {
        self.roots.len()
    }

    pub fn genus(&self) -> usize {
        (self.d() - 1) / 2
    }

    pub fn is_odd(&self) -> bool {
        self.d() % 2 == 1
    }

    pub fn roots(&self) -> &[BigRational] {
        &self.roots
    }

    /// α_i, 1-based.
    pub fn root(&self, i: usize) -> &BigRational {
        &self.roots[i - 1]
    }

    /// γ_{i,j} for distinct i, j ≤ 2g + 1, in either order.
    pub fn gamma(&self, i: usize, j: usize) -> Result<BigRational> {
        let top = 2 * self.genus() + 1;
        if i == j || !(1..=top).contains(&i) || !(1..=top).contains(&j) {
            return Err(Error::Domain(format!(
                "gamma index ({i}, {j}) out of range 1..={top}"
            )));
        }
        let diff = self.root(j) - self.root(i);
        if self.is_odd() {
            return Ok(diff);
        }
        let ad = self.root(self.d());
        Ok((1..=top)
            .filter(|&l| l != i && l != j)
            .fold(diff, |acc, l| acc * (ad - self.root(l))))
    }

    pub fn gamma_values(&self) -> Vec<GammaValue> {
        let top = 2 * self.genus() + 1;
        (1..=top)
            .tuple_combinations()
            .map(|(i, j)| GammaValue {
                i,
                j,
                value: self.gamma(i, j).expect("indices in range"),
            })
            .collect()
    }

    /// β² = ∏_{l<d} (α_d − α_l) for even d.
    pub fn beta_squared(&self) -> Option<BigRational> {
        (!self.is_odd()).then(|| {
            let ad = self.root(self.d());
            (1..self.d()).fold(BigRational::one(), |acc, l| acc * (ad - self.root(l)))
        })
    }

    pub fn polynomial(&self) -> QPoly {
        QPoly::from_roots(&self.roots)
    }

    pub fn roots_display(&self) -> Vec<String> {
        self.roots.iter().map(ToString::to_string).collect()
    }
}

// ---------------------------------------------------------------------------
// Even degree: the map to an odd model

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairIdentity {
    pub i: usize,
    pub j: usize,
    pub gamma: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveIsoReport {
    pub d: usize,
    pub genus: usize,
    pub roots: Vec<String>,
    pub beta_squared: String,
    pub pair_identities: Vec<PairIdentity>,
    pub sample_points: usize,
    /// (x, y) ↦ (1/(α−x), y/(β(α−x)^{g+1})) pulls y′² − F′(x′) back to (y² − f)·K.
    pub printed_map_identity: bool,
    /// The same map pulls it back to (y² + f)·K: it lands on the −1 twist.
    pub printed_map_gives_twist: bool,
    /// With y′ = y/(β√−1(α−x)^{g+1}) the pullback is −(y² − f)·K.
    pub corrected_map_identity: bool,
    pub factor: String,
}

impl CurveIsoReport {
    pub fn pairs_hold(&self) -> bool {
        self.pair_identities.iter().all(|p| p.holds)
    }

    pub fn holds(&self) -> bool {
        self.pairs_hold() && self.corrected_map_identity
    }
}

pub fn verify_curve_isomorphism(curve: &CurveRoots) -> Result<CurveIsoReport> {
    let beta2 = curve.beta_squared().ok_or_else(|| {
        Error::Domain(format!("curve isomorphism needs even d, got {}", curve.d()))
    })?;
    let g = curve.genus();
    let d = curve.d();
    let alpha = curve.root(d).clone();
    let pair_identities = curve
        .gamma_values()
        .into_iter()
        .map(|gv| {
            let lhs = (&alpha - curve.root(gv.j)).recip() - (&alpha - curve.root(gv.i)).recip();
            PairIdentity {
                i: gv.i,
                j: gv.j,
                gamma: gv.value.to_string(),
                holds: lhs == &gv.value / &beta2,
            }
        })
        .collect();

    let f = curve.polynomial();
    let images: Vec<BigRational> = (1..=2 * g + 1)
        .map(|i| (&alpha - curve.root(i)).recip())
        .collect();
    // degree 2g+2 in x after clearing (α − x)^{2g+2}, quadratic in y
    let xs: Vec<BigRational> = (0..(2 * g + 3) as i64)
        .map(|k| BigRational::new(BigInt::from(2 * k + 1), BigInt::from(3)) + &alpha + q(1) / q(7))
        .collect();
    let ys = [q(0), q(1), BigRational::new(5.into(), 3.into())];
    let (mut printed, mut twist, mut corrected) = (true, true, true);
    let mut samples = 0;
    for x in &xs {
        let xp = (&alpha - x).recip();
        let k = (beta2.clone() * (&alpha - x).pow(2 * g as i32 + 2)).recip();
        let fprime = images
            .iter()
            .fold(BigRational::one(), |acc, r| acc * (&xp - r));
        let fx = f.eval(x);
        for y in &ys {
            samples += 1;
            let y2 = y * y;
            let lhs = &y2 * &k - &fprime;
            printed &= lhs == (&y2 - &fx) * &k;
            twist &= lhs == (&y2 + &fx) * &k;
            let lhs_c = -(&y2 * &k) - &fprime;
            corrected &= lhs_c == -((&y2 - &fx) * &k);
        }
    }
    Ok(CurveIsoReport {
        d,
        genus: g,
        roots: curve.roots_display(),
        beta_squared: beta2.to_string(),
        pair_identities,
        sample_points: samples,
        printed_map_identity: printed,
        printed_map_gives_twist: twist,
        corrected_map_identity: corrected,
        factor: format!("1/(beta^2 (alpha_d - x)^{})", 2 * g + 2),
    })
}

// ---------------------------------------------------------------------------
// Elliptic curves: points of order 4

/// F₂-rank of the images of nonzero rationals in ℚˣ/(ℚˣ)², by exponent parity.
pub fn square_class_rank(values: &[BigRational]) -> Result<usize> {
    let mut rows: Vec<std::collections::BTreeSet<BigInt>> = Vec::new();
    for v in values {
        let sc = TowerScalar::square_class(v)
            .ok_or_else(|| Error::Domain(format!("cannot factor {v}")))?;
        let mut vec = sc.primes.clone();
        if sc.negative {
            vec.insert(BigInt::from(-1));
        }
        while let Some(top) = vec.iter().next_back().cloned() {
            match rows.iter().find(|r| r.iter().next_back() == Some(&top)) {
                Some(r) => vec = vec.symmetric_difference(r).cloned().collect(),
                None => break,
            }
        }
        if !vec.is_empty() {
            rows.push(vec);
        }
    }
    Ok(rows.len())
}

/// The order-4 factor ψ₄/ψ₂ of the 4-division polynomial of y² = x³ + a₂x² + a₄x + a₆.
pub fn fourth_division_factor(f: &QPoly) -> QPoly {
    let (a2, a4, a6) = (f.coeff(2), f.coeff(1), f.coeff(0));
    let b2 = q(4) * &a2;
    let b4 = q(2) * &a4;
    let b6 = q(4) * &a6;
    let b8 = q(4) * &a2 * &a6 - &a4 * &a4;
    QPoly::new(vec![
        &b4 * &b8 - &b6 * &b6,
        &b2 * &b8 - &b4 * &b6,
        q(10) * &b8,
        q(10) * &b6,
        q(5) * &b4,
        b2,
        q(2),
    ])
}

/// Numerator φ₂ and denominator ψ₂² of the duplication map x ↦ x(2P).
pub fn duplication_map(f: &QPoly) -> (QPoly, QPoly) {
    let (a2, a4, a6) = (f.coeff(2), f.coeff(1), f.coeff(0));
    let b4 = q(2) * &a4;
    let b6 = q(4) * &a6;
    let b8 = q(4) * &a2 * &a6 - &a4 * &a4;
    let phi = QPoly::new(vec![-b8, -(q(2) * &b6), -b4, q(0), q(1)]);
    (phi, f.scale(&q(4)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsionPoint {
    pub x: String,
    pub y: String,
    pub doubles_to_root: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoordinateMembership {
    pub generator: String,
    pub member: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Elliptic4TorsionReport {
    pub roots: Vec<String>,
    pub division_factor: String,
    /// ∏_i (φ₂ − e_i ψ₂²) = (ψ₄/2ψ₂)²: the explicit factor agrees with duplication.
    pub oracles_agree: bool,
    pub tower_log2_degree: usize,
    pub expected_log2_degree: usize,
    pub x_roots_found: usize,
    pub x_roots_distinct: bool,
    pub all_roots_of_factor: bool,
    pub y_in_tower: bool,
    pub doubling_hits_two_torsion: bool,
    pub points: Vec<TorsionPoint>,
    pub coordinate_field_degree: usize,
    pub generators_in_coordinate_field: Vec<CoordinateMembership>,
}

impl Elliptic4TorsionReport {
    pub fn holds(&self) -> bool {
        self.oracles_agree
            && self.tower_log2_degree == self.expected_log2_degree
            && self.x_roots_found == 6
            && self.x_roots_distinct
            && self.all_roots_of_factor
            && self.y_in_tower
            && self.doubling_hits_two_torsion
            && self.points.len() == 12
            && self.generators_in_coordinate_field.iter().all(|m| m.member)
    }
}

fn element_string(t: &RadicalTower, x: &Element<BigRational>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let labels: Vec<String> = t
        .proper_steps()
        .map(|id| t.step(id).label.clone())
        .collect();
    x.terms()
        .iter()
        .map(|(&m, c)| {
            let rad: Vec<&str> = (0..64)
                .filter(|k| m >> k & 1 == 1)
                .map(|k| labels[k].as_str())
                .collect();
            let one = BigRational::one();
            match (rad.is_empty(), c) {
                (true, _) => c.to_string(),
                (false, c) if *c == one => rad.join("*"),
                (false, c) if *c == -one.clone() => format!("-{}", rad.join("*")),
                (false, c) => format!("{c}*{}", rad.join("*")),
            }
        })
        .join(" + ")
        .replace("+ -", "- ")
}

pub fn verify_elliptic_4torsion(curve: &CurveRoots) -> Result<Elliptic4TorsionReport> {
    verify_elliptic_4torsion_with(curve, Precision::default())
}

/// As [`verify_elliptic_4torsion`], with an explicit enclosure precision schedule.
pub fn verify_elliptic_4torsion_with(
    curve: &CurveRoots,
    precision: Precision,
) -> Result<Elliptic4TorsionReport> {
    if curve.d() != 3 {
        return Err(Error::Domain(format!(
            "elliptic check needs 3 roots, got {}",
            curve.d()
        )));
    }
    let e: Vec<BigRational> = curve.roots().to_vec();
    let f = curve.polynomial();
    let f4 = fourth_division_factor(&f);
    let (phi, psi2sq) = duplication_map(&f);
    let half_f4 = f4.scale(&BigRational::new(1.into(), 2.into()));
    let product = e.iter().fold(QPoly::constant(q(1)), |acc, ei| {
        acc.mul(&phi.sub(&psi2sq.scale(ei)))
    });
    let oracles_agree = product == half_f4.mul(&half_f4);

    let mut t = RadicalTower::with_precision(precision);
    let i_id = t.adjoin_sqrt("sqrt(-1)", konst(q(-1)))?;
    let mut diff_roots = Vec::new();
    let mut classes: Vec<BigRational> = vec![q(-1)];
    for (a, b) in (0..3).tuple_combinations() {
        let delta = &e[b] - &e[a];
        let id = t.adjoin_sqrt(format!("sqrt(e{}-e{})", b + 1, a + 1), konst(delta.clone()))?;
        diff_roots.push((format!("sqrt(e{}-e{})", b + 1, a + 1), t.value(id)));
        classes.push(delta);
    }
    // independent count: F₂-rank of the square classes of −1 and the differences
    let expected_log2_degree = square_class_rank(&classes)?;

    let mut xs: Vec<(Element<BigRational>, usize)> = Vec::new();
    for i in 0..3 {
        let (j, k) = match i {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        let r = konst((&e[i] - &e[j]) * (&e[i] - &e[k]));
        let s = t.sqrt(&r)?.ok_or_else(|| {
            Error::Invariant("product of differences is not a square in the tower".into())
        })?;
        for sign in [1, -1] {
            xs.push((konst(e[i].clone()).add(&s.scale(&q(sign))), i));
        }
    }
    let x_roots_distinct = xs.iter().tuple_combinations().all(|(a, b)| a.0 != b.0);
    let all_roots_of_factor = xs.iter().all(|(x, _)| f4.eval_in(&t, x).is_zero());

    let mut points = Vec::new();
    let mut gens = vec![];
    let mut y_in_tower = true;
    for (x, i) in &xs {
        let fx = f.eval_in(&t, x);
        let Some(y) = t.sqrt(&fx)? else {
            y_in_tower = false;
            continue;
        };
        // x(2P) = φ₂(x)/ψ₂²(x) should be e_i
        let dbl = t.div(&phi.eval_in(&t, x), &psi2sq.eval_in(&t, x))?;
        let doubles_to_root = if dbl == konst(e[*i].clone()) {
            i + 1
        } else {
            0
        };
        for yy in [y.clone(), y.neg()] {
            points.push(TorsionPoint {
                x: element_string(&t, x),
                y: element_string(&t, &yy),
                doubles_to_root,
            });
        }
        gens.push(x.clone());
        gens.push(y);
    }
    let doubling_hits_two_torsion = points.iter().all(|p| p.doubles_to_root > 0);
    let sub = t.subfield(&gens)?;
    let mut generators_in_coordinate_field = vec![CoordinateMembership {
        generator: "sqrt(-1)".into(),
        member: sub.coordinates(&t.value(i_id)).is_some(),
    }];
    for (label, v) in &diff_roots {
        generators_in_coordinate_field.push(CoordinateMembership {
            generator: label.clone(),
            member: sub.coordinates(v).is_some(),
        });
    }
    Ok(Elliptic4TorsionReport {
        roots: curve.roots_display(),
        division_factor: f4.to_string(),
        oracles_agree,
        tower_log2_degree: t.log2_degree(),
        expected_log2_degree,
        x_roots_found: xs.len(),
        x_roots_distinct,
        all_roots_of_factor,
        y_in_tower,
        doubling_hits_two_torsion,
        points,
        coordinate_field_degree: sub.degree(),
        generators_in_coordinate_field,
    })
}

// ---------------------------------------------------------------------------
// Remark-level identities for three roots

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EighthRootReport {
    pub roots: Vec<String>,
    pub tower_log2_degree: usize,
    /// ⁴√(−γ₂₃)·⁸√γ₁₂·⁸√γ₁₃ = √(−γ₂₃)·√(√γ₁₂+√γ₁₃)·⁸√γ₁₂·⁸√γ₁₃ / B₁ exactly.
    pub identity_exact: bool,
    pub identity_numeric: bool,
    pub psi_product: String,
    pub psi_product_holds: bool,
    pub psi_sum: String,
    pub psi_sum_holds: bool,
    pub eighth_power_radicand: String,
    pub eighth_power_holds: bool,
    pub chain_squares_hold: bool,
    pub branches: Vec<BranchCertificate>,
}

impl EighthRootReport {
    pub fn branches_compatible(&self) -> bool {
        self.branches.iter().all(BranchCertificate::holds)
    }

    pub fn holds(&self) -> bool {
        self.identity_exact
            && self.identity_numeric
            && self.psi_product_holds
            && self.psi_sum_holds
            && self.eighth_power_holds
            && self.chain_squares_hold
            && self.branches_compatible()
    }
}

/// Adjoins √r, ⁴√r, …, 2^depth-th roots of a rational and returns the step ids.
fn adjoin_chain(
    t: &mut RadicalTower,
    name: &str,
    r: &BigRational,
    depth: u32,
) -> Result<Vec<StepId>> {
    let mut ids: Vec<StepId> = Vec::new();
    for level in 1..=depth {
        let id = match ids.last() {
            None => t.adjoin_sqrt(format!("sqrt({name})"), konst(r.clone()))?,
            Some(&prev) => t.adjoin_sqrt_of(format!("{}rt({name})", 1u32 << level), prev)?,
        };
        ids.push(id);
    }
    Ok(ids)
}

pub fn verify_eighth_root_identities(curve: &CurveRoots) -> Result<EighthRootReport> {
    verify_eighth_root_identities_with(curve, Precision::default())
}

/// As [`verify_eighth_root_identities`], with an explicit enclosure precision schedule.
pub fn verify_eighth_root_identities_with(
    curve: &CurveRoots,
    precision: Precision,
) -> Result<EighthRootReport> {
    if curve.d() != 3 {
        return Err(Error::Domain(format!(
            "remark identities need 3 roots, got {}",
            curve.d()
        )));
    }
    let g12 = curve.gamma(1, 2)?;
    let g13 = curve.gamma(1, 3)?;
    let g23 = curve.gamma(2, 3)?;
    let mut t = RadicalTower::with_precision(precision);
    t.adjoin_sqrt("sqrt(-1)", konst(q(-1)))?;
    t.adjoin_sqrt("sqrt(2)", konst(q(2)))?;
    let c12 = adjoin_chain(&mut t, "g12", &g12, 3)?;
    let c13 = adjoin_chain(&mut t, "g13", &g13, 3)?;
    let c23 = adjoin_chain(&mut t, "-g23", &-g23.clone(), 2)?;
    let r8 = &g12 * &g13 * &g23 * &g23;
    let c8 = adjoin_chain(&mut t, "g12*g13*g23^2", &r8, 3)?;
    let s12 = t.value(c12[0]);
    let s13 = t.value(c13[0]);
    let lam = t.adjoin_sqrt("sqrt(sqrt(g12)+sqrt(g13))", s12.add(&s13))?;
    let (e12, e13) = (t.value(c12[2]), t.value(c13[2]));
    let (sq23, fr23) = (t.value(c23[0]), t.value(c23[1]));
    let lam_v = t.value(lam);

    let eighths = t.mul(&e12, &e13);
    let lhs = t.mul(&fr23, &eighths);
    let b1 = t.mul(&fr23, &lam_v);
    let rhs = t.div(&t.mul(&t.mul(&sq23, &lam_v), &eighths), &b1)?;
    let identity_exact = lhs == rhs;
    let identity_numeric = t.certify(|emb| {
        let (a, b) = (emb.eval(&lhs), emb.eval(&rhs));
        Some(a.overlaps(&b))
    })?;

    let cross = t.mul(&s12, &s13).scale(&q(2));
    let base = konst(&g12 + &g13);
    let (p, pp) = (base.add(&cross), base.sub(&cross));
    let prod = t.mul(&p, &pp);
    let sum = p.add(&pp);
    let diff = &g12 - &g13;

    let top = t.value(c8[2]);
    let eighth = t.pow(&top, 8)?;
    let mut chain_squares_hold = true;
    for chain in [&c12, &c13, &c23, &c8] {
        for w in chain.windows(2) {
            chain_squares_hold &= t.square(&t.value(w[1])) == t.value(w[0]);
        }
    }
    let branches = (0..t.steps().len())
        .map(|k| t.branch_certificate(StepId(k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EighthRootReport {
        roots: curve.roots_display(),
        tower_log2_degree: t.log2_degree(),
        identity_exact,
        identity_numeric,
        psi_product: element_string(&t, &prod),
        psi_product_holds: prod == konst(&diff * &diff),
        psi_sum: element_string(&t, &sum),
        psi_sum_holds: sum == konst(q(2) * (&g12 + &g13)),
        eighth_power_radicand: r8.to_string(),
        eighth_power_holds: eighth == konst(r8.clone()),
        chain_squares_hold,
        branches,
    })
}

// ---------------------------------------------------------------------------
// The abelian 2-power tower

/// What a step of the tower stands for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum StepRole {
    /// √−1, √2 or ζ₁₆.
    RootOfUnity,
    SqrtGamma {
        i: usize,
        j: usize,
    },
    /// The 2^depth-th root of the `generator`-th higher radicand.
    Chain {
        generator: usize,
        depth: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepSummary {
    pub label: String,
    pub proper: bool,
    pub role: StepRole,
    pub radicand: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerStructureReport {
    pub d: usize,
    pub genus: usize,
    pub roots: Vec<String>,
    /// 2-power exponent of the Kummer generators: 4th roots for g ≥ 2, 8th roots for g = 1.
    pub kummer_exponent: u32,
    pub higher_radicands: Vec<String>,
    pub steps: Vec<StepSummary>,
    pub base_log2_degree: usize,
    pub gamma_log2_degree: usize,
    pub higher_log2_degree: usize,
    pub relative_log2_degree: usize,
    pub expected_relative_log2_degree: usize,
    pub dependent_steps: Vec<String>,
    /// ∏ of the higher radicands is ± a square (g ≥ 2) or ± a 4th power times (∏γ)⁴ (g = 1).
    pub radicand_product_relation: bool,
    /// N_t = number of Galois elements killed by 2^t, t = 0..exponent.
    pub killed_by_power: Vec<u64>,
    pub galois_type: String,
    pub expected_type: String,
    pub degenerate: bool,
    pub branches_certified: bool,
}

impl TowerStructureReport {
    pub fn holds(&self) -> bool {
        !self.degenerate
            && self.relative_log2_degree == self.expected_relative_log2_degree
            && self.galois_type == self.expected_type
            && self.radicand_product_relation
            && self.branches_certified
    }
}

#[derive(Debug, Clone)]
pub struct HigherRadicalTower {
    pub curve: CurveRoots,
    pub tower: RadicalTower,
    pub roles: Vec<StepRole>,
    pub kummer_exponent: u32,
}

/// The radicands whose 2^E-th roots generate the tower over K₂(μ).
pub fn higher_radicands(curve: &CurveRoots) -> Result<Vec<BigRational>> {
    let g = curve.genus();
    let gm = |i, j| curve.gamma(i, j);
    if g == 1 {
        Ok(vec![
            gm(1, 2)? * gm(1, 3)? * gm(2, 3)?.pow(2),
            gm(2, 3)? * gm(2, 1)? * gm(3, 1)?.pow(2),
            gm(3, 1)? * gm(3, 2)? * gm(1, 2)?.pow(2),
        ])
    } else {
        (1..=2 * g + 1)
            .map(|i| {
                (1..=2 * g + 1)
                    .filter(|&j| j != i)
                    .try_fold(BigRational::one(), |acc, j| Ok(acc * gm(i, j)?))
            })
            .collect()
    }
}

fn zeta8(t: &RadicalTower, i: StepId, s2: StepId) -> Element<BigRational> {
    // ζ₈ = (1 + i)/√2 = (√2 + i√2)/2
    let one_plus_i = konst(q(1)).add(&t.value(i));
    t.mul(&one_plus_i, &t.value(s2))
        .scale(&BigRational::new(1.into(), 2.into()))
}

/// Base field ℚ(ζ₈) or ℚ(ζ₁₆) followed by iterated roots of rationals, adjoined
/// level by level so all rational radicands come first.
struct ChainPlan {
    name: String,
    radicand: BigRational,
    depth: u32,
    role: fn(usize, u32) -> StepRole,
    index: usize,
}

fn build_leveled(
    plans: &[ChainPlan],
    with_zeta16: bool,
    precision: Precision,
    roles: &mut Vec<StepRole>,
) -> Result<(RadicalTower, Vec<Vec<StepId>>)> {
    let mut t = RadicalTower::with_precision(precision);
    let i = t.adjoin_sqrt("sqrt(-1)", konst(q(-1)))?;
    let s2 = t.adjoin_sqrt("sqrt(2)", konst(q(2)))?;
    roles.extend([StepRole::RootOfUnity, StepRole::RootOfUnity]);
    let mut ids: Vec<Vec<StepId>> = vec![Vec::new(); plans.len()];
    let max_depth = plans.iter().map(|p| p.depth).max().unwrap_or(0);
    for level in 1..=max_depth.max(1) {
        if level == 2 && with_zeta16 {
            let z8 = zeta8(&t, i, s2);
            t.adjoin_sqrt("zeta16", z8)?;
            roles.push(StepRole::RootOfUnity);
        }
        for (k, p) in plans.iter().enumerate() {
            if p.depth < level {
                continue;
            }
            let id = match ids[k].last() {
                Some(&prev) => {
                    t.adjoin_sqrt_of(format!("{}rt({})", 1u32 << level, p.name), prev)?
                }
                None => t.adjoin_sqrt(format!("sqrt({})", p.name), konst(p.radicand.clone()))?,
            };
            ids[k].push(id);
            roles.push((p.role)(p.index, level));
        }
    }
    if with_zeta16 && max_depth < 2 {
        let z8 = zeta8(&t, i, s2);
        t.adjoin_sqrt("zeta16", z8)?;
        roles.push(StepRole::RootOfUnity);
    }
    Ok((t, ids))
}

fn gamma_role(index: usize, _: u32) -> StepRole {
    // index packs (i, j) as i*64 + j
    StepRole::SqrtGamma {
        i: index / 64,
        j: index % 64,
    }
}

fn chain_role(index: usize, depth: u32) -> StepRole {
    StepRole::Chain {
        generator: index,
        depth,
    }
}

fn base_log2(g: usize) -> Result<usize> {
    let (t, _) = build_leveled(&[], g == 1, Precision::default(), &mut Vec::new())?;
    Ok(t.log2_degree())
}

/// Builds K₂(μ) with all √γ_{i,j} and then the 2^E-th roots of the higher radicands.
pub fn build_higher_radical_tower(
    curve: &CurveRoots,
) -> Result<(HigherRadicalTower, TowerStructureReport)> {
    build_higher_radical_tower_with(curve, Precision::default())
}

/// As [`build_higher_radical_tower`], with an explicit enclosure precision schedule.
pub fn build_higher_radical_tower_with(
    curve: &CurveRoots,
    precision: Precision,
) -> Result<(HigherRadicalTower, TowerStructureReport)> {
    let g = curve.genus();
    let e = if g == 1 { 3 } else { 2 };
    let gammas = curve.gamma_values();
    let highs = higher_radicands(curve)?;
    let mut plans: Vec<ChainPlan> = gammas
        .iter()
        .map(|gv| ChainPlan {
            name: format!("g{}{}", gv.i, gv.j),
            radicand: gv.value.clone(),
            depth: 1,
            role: gamma_role,
            index: gv.i * 64 + gv.j,
        })
        .collect();
    let n_gamma = plans.len();
    plans.extend(highs.iter().enumerate().map(|(k, r)| ChainPlan {
        name: format!("R{}", k + 1),
        radicand: r.clone(),
        depth: e,
        role: chain_role,
        index: k + 1,
    }));
    let mut roles = Vec::new();
    let (tower, ids) = build_leveled(&plans, g == 1, precision, &mut roles)?;

    let base = base_log2(g)?;
    let mut k2_roles = Vec::new();
    let (k2, _) = build_leveled(&plans[..n_gamma], g == 1, precision, &mut k2_roles)?;
    let total = tower.log2_degree();
    let relative = total - base;

    // Kummer census: |2^t W| is the degree of the tower of 2^{E−t}-th roots
    let mut killed = vec![1u64];
    for t_pow in 1..=e {
        let sub_plans: Vec<ChainPlan> = gammas
            .iter()
            .map(|gv| ChainPlan {
                name: format!("g{}{}", gv.i, gv.j),
                radicand: gv.value.pow(1 << (e - 1)),
                depth: e - t_pow,
                role: gamma_role,
                index: gv.i * 64 + gv.j,
            })
            .chain(highs.iter().enumerate().map(|(k, r)| ChainPlan {
                name: format!("R{}", k + 1),
                radicand: r.clone(),
                depth: e - t_pow,
                role: chain_role,
                index: k + 1,
            }))
            .filter(|p| p.depth > 0)
            .collect();
        let (sub, _) = build_leveled(&sub_plans, g == 1, precision, &mut Vec::new())?;
        let sub_rel = sub.log2_degree() - base;
        killed.push(1u64 << (relative - sub_rel));
    }
    let order = 1u64 << relative;
    let mut census = OrderCensus::new();
    census.insert(1, 1);
    for t_pow in 1..killed.len() {
        let c = killed[t_pow] - killed[t_pow - 1];
        if c > 0 {
            census.insert(1 << t_pow, c);
        }
    }
    let galois_type = abelian_type_from_census(&census, order)
        .map(|ty| ty.to_string())
        .unwrap_or_else(|err| format!("inconsistent: {err}"));
    let expected_type = if g == 1 {
        AbelianType::new(vec![2, 8, 8])?
    } else {
        let mut f = vec![2; 2 * g * g - g];
        f.extend(std::iter::repeat_n(4, 2 * g));
        AbelianType::new(f)?
    };
    let expected_relative = if g == 1 { 7 } else { 2 * g * g + 3 * g };

    let radicand_product_relation = {
        let prod = highs.iter().fold(BigRational::one(), |a, r| a * r);
        let gprod = gammas
            .iter()
            .fold(BigRational::one(), |a, gv| a * &gv.value);
        if g == 1 {
            prod.abs() == gprod.pow(4)
        } else {
            prod.abs() == &gprod * &gprod
        }
    };
    let dependent_steps: Vec<String> = ids[n_gamma..]
        .iter()
        .filter_map(|chain| chain.last())
        .filter(|id| !tower.step(**id).is_proper())
        .map(|id| tower.step(*id).label.clone())
        .collect();
    let gamma_collapsed = ids[..n_gamma].iter().any(|c| !tower.step(c[0]).is_proper());
    let unity_collapsed = tower
        .steps()
        .iter()
        .zip(&roles)
        .any(|(s, r)| *r == StepRole::RootOfUnity && !s.is_proper());
    let degenerate = gamma_collapsed || unity_collapsed || relative != expected_relative;
    let branches_certified = (0..tower.steps().len())
        .map(|k| tower.branch_certificate(StepId(k)).map(|c| c.holds()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .all(|b| b);

    let steps = tower
        .steps()
        .iter()
        .enumerate()
        .map(|(k, s)| StepSummary {
            label: s.label.clone(),
            proper: s.is_proper(),
            role: roles[k].clone(),
            radicand: element_string(&tower, &s.radicand),
            value: element_string(&tower, &tower.value(StepId(k))),
        })
        .collect();
    let report = TowerStructureReport {
        d: curve.d(),
        genus: g,
        roots: curve.roots_display(),
        kummer_exponent: 1 << e,
        higher_radicands: highs.iter().map(ToString::to_string).collect(),
        steps,
        base_log2_degree: base,
        gamma_log2_degree: k2.log2_degree() - base,
        higher_log2_degree: total - k2.log2_degree(),
        relative_log2_degree: relative,
        expected_relative_log2_degree: expected_relative,
        dependent_steps,
        radicand_product_relation,
        killed_by_power: killed,
        galois_type,
        expected_type: expected_type.to_string(),
        degenerate,
        branches_certified,
    };
    Ok((
        HigherRadicalTower {
            curve: curve.clone(),
            tower,
            roles,
            kummer_exponent: e,
        },
        report,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinusOneReport {
    pub genus: usize,
    pub higher_sign: i8,
    pub negated_steps: Vec<String>,
    pub consistent: bool,
    pub violations: Vec<String>,
    pub mutated_step: Option<String>,
    pub mutation_rejected: bool,
}

impl MinusOneReport {
    pub fn holds(&self) -> bool {
        self.consistent && self.mutation_rejected
    }
}

/// The character of −1: √γ ↦ −√γ, roots of unity fixed, top higher radicals
/// multiplied by (−1)^g, and lower links of each chain by the matching power.
pub fn minus_one_character(t: &HigherRadicalTower) -> SignCharacter {
    let eps: i8 = if t.curve.genus().is_multiple_of(2) {
        1
    } else {
        -1
    };
    let signs = t
        .roles
        .iter()
        .map(|r| match r {
            StepRole::RootOfUnity => 1,
            StepRole::SqrtGamma { .. } => -1,
            StepRole::Chain { depth, .. } if *depth == t.kummer_exponent => eps,
            StepRole::Chain { .. } => 1,
        })
        .collect();
    SignCharacter { signs }
}

pub fn verify_minus_one_action(t: &HigherRadicalTower) -> Result<MinusOneReport> {
    let ch = minus_one_character(t);
    let check = t.tower.check_character(&ch)?;
    // mutate a proper top-level radical that a collapsed top-level radical depends on
    let top = |k: usize| matches!(t.roles[k], StepRole::Chain { depth, .. } if depth == t.kummer_exponent);
    let bit_of = |k: usize| match t.tower.step(StepId(k)).kind {
        StepKind::Proper { bit } => Some(bit),
        StepKind::Collapsed { .. } => None,
    };
    let mut mutated = None;
    'outer: for (k, s) in t.tower.steps().iter().enumerate() {
        if let (true, StepKind::Collapsed { value }) = (top(k), &s.kind) {
            for m in 0..t.tower.steps().len() {
                if top(m) && bit_of(m).is_some_and(|b| value.support() >> b & 1 == 1) {
                    mutated = Some(StepId(m));
                    break 'outer;
                }
            }
        }
    }
    let (mutated_step, mutation_rejected) = match mutated {
        Some(id) => {
            let bad = t.tower.check_character(&ch.flipped(id))?;
            (Some(t.tower.step(id).label.clone()), !bad.consistent)
        }
        None => (None, false),
    };
    Ok(MinusOneReport {
        genus: t.curve.genus(),
        higher_sign: if t.curve.genus().is_multiple_of(2) {
            1
        } else {
            -1
        },
        negated_steps: t
            .tower
            .steps()
            .iter()
            .zip(&ch.signs)
            .filter(|(_, &s)| s < 0)
            .map(|(s, _)| s.label.clone())
            .collect(),
        consistent: check.consistent,
        violations: check.violations,
        mutated_step,
        mutation_rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_examples() {
        let c = CurveRoots::from_integers(&[0, 1, 3]).unwrap();
        let g: Vec<String> = c
            .gamma_values()
            .iter()
            .map(|v| v.value.to_string())
            .collect();
        assert_eq!(g, ["1", "3", "2"]);
        assert_eq!(c.gamma(2, 1).unwrap(), -c.gamma(1, 2).unwrap());
        let c4 = CurveRoots::from_integers(&[0, 1, 3, 7]).unwrap();
        assert_eq!(c4.gamma(1, 2).unwrap(), q(4));
        assert_eq!(c4.gamma(2, 1).unwrap(), q(-4));
        assert_eq!(c4.beta_squared().unwrap(), q(168));
        assert!(CurveRoots::from_integers(&[0, 1, 1]).is_err());
        assert!(c.gamma(1, 1).is_err());
    }

    #[test]
    fn parse_roots() {
        let c = CurveRoots::parse("0, 1/2,-3").unwrap();
        assert_eq!(c.root(2), &BigRational::new(1.into(), 2.into()));
        assert!(CurveRoots::parse("0,1/0,2").is_err());
        assert!(CurveRoots::parse("0,x,2").is_err());
    }

    #[test]
    fn pair_identity_d4() {
        let r =
            verify_curve_isomorphism(&CurveRoots::from_integers(&[0, 1, 3, 7]).unwrap()).unwrap();
        assert!(r.pairs_hold());
        assert_eq!(r.beta_squared, "168");
        assert!(r.printed_map_gives_twist && !r.printed_map_identity);
        assert!(r.corrected_map_identity);
    }

    #[test]
    fn division_factor_oracles() {
        let f = QPoly::from_roots(&[q(0), q(1), q(3)]);
        let f4 = fourth_division_factor(&f);
        assert_eq!(f4.degree(), Some(6));
        let (phi, den) = duplication_map(&f);
        let prod = [q(0), q(1), q(3)]
            .iter()
            .fold(QPoly::constant(q(1)), |acc, e| {
                acc.mul(&phi.sub(&den.scale(e)))
            });
        let half = f4.scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(prod, half.mul(&half));
    }

    #[test]
    fn square_class_ranks() {
        assert_eq!(square_class_rank(&[q(-1), q(1), q(3), q(2)]).unwrap(), 3);
        assert_eq!(square_class_rank(&[q(6), q(2), q(3)]).unwrap(), 2);
    }
}
