use serde_json::{json, Value};

use hyperjac::braid::verify_monodromy;
use hyperjac::congruence::{
    gamma4_mod_commutator_basis, genus_one_suite, genus_two_suite, transvection_conjugation_check,
    verify_commutator_formula, verify_mod32_congruences,
};
use hyperjac::sd_rep::{
    even_sum_subspace_check, standard_rep_mod2_of_v, verify_phi_kernel, verify_spanning_set_even,
    verify_spanning_set_odd,
};
use hyperjac::tower::curves::{
    build_higher_radical_tower_with, verify_curve_isomorphism, verify_eighth_root_identities_with,
    verify_elliptic_4torsion_with, verify_minus_one_action, CurveRoots,
};

use crate::{RunConfig, Suite, Unit};

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).unwrap_or(Value::Null)
}

/// The requested value if allowed, every allowed value if none was requested.
fn pick(requested: Option<usize>, allowed: &[usize]) -> Vec<usize> {
    match requested {
        Some(x) if allowed.contains(&x) => vec![x],
        Some(_) => Vec::new(),
        None => allowed.to_vec(),
    }
}

fn degree(config: &RunConfig) -> Option<usize> {
    config.d.or(config.roots.as_ref().map(CurveRoots::d))
}

/// Explicit roots when they have `d` entries, otherwise the named fixture.
fn fixture(
    config: &RunConfig,
    d: usize,
    fallback: fn(usize) -> hyperjac::Result<CurveRoots>,
) -> hyperjac::Result<CurveRoots> {
    match &config.roots {
        Some(curve) if curve.d() == d => Ok(curve.clone()),
        _ => fallback(d),
    }
}

pub(crate) fn units(suite: Suite, config: &RunConfig) -> Vec<Unit> {
    match suite {
        Suite::Congruence => congruence(config),
        Suite::CommutatorFormula => commutator_formula(config),
        Suite::Transvections => transvections(config),
        Suite::Monodromy => monodromy(config),
        Suite::SpanningSets => spanning_sets(config),
        Suite::PhiKernel => phi_kernel(),
        Suite::Parity => parity(config),
        Suite::Tower => tower(config),
        Suite::EighthRoots => eighth_roots(config),
        Suite::Elliptic => elliptic(config),
        Suite::All => Vec::new(),
    }
}

fn congruence(config: &RunConfig) -> Vec<Unit> {
    let mut out = Vec::new();
    let gs = pick(config.g, &[1, 2]);
    if gs.contains(&1) {
        out.push(Unit::new(
            vec![
                ("congruence.g1.order-mod4".into(), "Γ(2)/Γ(4) has order 8 in genus 1"),
                ("congruence.g1.order-mod8".into(), "Γ(2)/Γ(8) has order 64 in genus 1"),
                ("congruence.g1.order-mod16".into(), "Γ(2)/Γ(16) has order 512 in genus 1"),
                (
                    "congruence.g1.commutator".into(),
                    "the commutator subgroup of Γ(2)/Γ(16) is cyclic of order 4, generated by the basic commutator",
                ),
                ("congruence.g1.abelianization".into(), "Γ(2) has abelianization ℤ/2 × (ℤ/8)²"),
            ],
            || {
                let r = genus_one_suite()?;
                let w = to_value(&r);
                let orders = r.brute_force_orders == [r.order_mod_4, r.order_mod_8, r.order_mod_16];
                Ok(vec![
                    (r.order_mod_4 == 8 && orders, w.clone()),
                    (r.order_mod_8 == 64 && orders, w.clone()),
                    (r.order_mod_16 == 512 && orders, w.clone()),
                    (
                        r.commutator_order == 4 && r.commutator_cyclic_from_basic && r.basic_commutator_central,
                        w.clone(),
                    ),
                    (r.holds(), w),
                ])
            },
        ));
        out.push(Unit::new(
            vec![(
                "congruence.g1.mod32".into(),
                "the eighth powers of the two generators and the scalar 17 satisfy the mod-32 congruences",
            )],
            || {
                let r = verify_mod32_congruences()?;
                Ok(vec![(r.holds(), to_value(&r))])
            },
        ));
    }
    if gs.contains(&2) {
        let cap = config.effective_cap();
        out.push(Unit::new(
            vec![
                ("congruence.g2.order".into(), "Γ(2)/Γ(8) has order 2^20 in genus 2"),
                (
                    "congruence.g2.commutator-oracle".into(),
                    "the commutator subgroup of Γ(2)/Γ(8) equals the explicit congruence description, element for element",
                ),
                ("congruence.g2.abelianization".into(), "Γ(2)/Γ(8) has abelianization (ℤ/2)⁶ × (ℤ/4)⁴ in genus 2"),
            ],
            move || {
                let r = genus_two_suite(cap)?;
                let w = to_value(&r);
                Ok(vec![
                    (r.order == 1 << 20 && r.layer_orders == [1 << 10, 1 << 10], w.clone()),
                    (r.commutator_equals_sato && r.commutator_order == 64, w.clone()),
                    (r.holds(), w),
                ])
            },
        ));
    }
    out
}

fn commutator_formula(config: &RunConfig) -> Vec<Unit> {
    let max = config.max_exponent;
    vec![Unit::new(
        vec![(
            "commutator.closed-form".into(),
            "the commutator of the level-2^m and level-2^n generators matches its closed form over ℤ",
        )],
        move || {
            let r = verify_commutator_formula(max)?;
            let failing: Vec<_> = r.cases.iter().filter(|c| !c.word_matches).collect();
            Ok(vec![(r.holds(), json!({ "max": max, "cases": r.cases.len(), "failing": to_value(&failing) }))])
        },
    )]
}

fn transvections(config: &RunConfig) -> Vec<Unit> {
    if pick(config.g, &[2]).is_empty() {
        return Vec::new();
    }
    vec![
        Unit::new(
            vec![(
                "transvections.g2.fourth-power-basis".into(),
                "the fourth powers of the four basic transvections form a basis of Γ(4) modulo the commutator subgroup",
            )],
            || {
                let r = gamma4_mod_commutator_basis(2)?;
                Ok(vec![(r.holds(), to_value(&r))])
            },
        ),
        Unit::new(
            vec![
                (
                    "transvections.g2.conjugation".into(),
                    "conjugating the fourth power of T_b1 by T_a1 gives T_b1⁴T_a1⁴ modulo the commutator subgroup",
                ),
                (
                    "transvections.g2.induced-operator".into(),
                    "conjugation by T_a1 induces a transvection on Γ(4) modulo the commutator subgroup",
                ),
            ],
            || {
                let r = transvection_conjugation_check()?;
                let w = to_value(&r);
                Ok(vec![
                    (r.preserves_sato_set && r.displayed_congruence, w.clone()),
                    (r.fixes_other_three && r.deviation_rank == 1, w),
                ])
            },
        ),
    ]
}

fn monodromy(config: &RunConfig) -> Vec<Unit> {
    pick(degree(config), &[3, 4, 5, 6])
        .into_iter()
        .map(|d| {
            Unit::new(
                vec![
                    (
                        format!("monodromy.d{d}.full-twist"),
                        "the full twist acts as −1 for odd d; for even d it acts trivially and the partial twist acts as −1",
                    ),
                    (
                        format!("monodromy.d{d}.level-two"),
                        "every pure generator acts symplectically, with determinant 1, and trivially mod 2",
                    ),
                    (
                        format!("monodromy.d{d}.mod4-span"),
                        "the mod-4 images of the pure generators span a space of dimension 2g² + g",
                    ),
                ],
                move || {
                    let r = verify_monodromy(d)?;
                    let w = to_value(&r);
                    let twist = r.sigma_matches && r.sigma_prime_matches.unwrap_or(true) && r.sigma_central;
                    let level = r.form.solution_dimension == 1
                        && r.all_preserve_form
                        && r.determinants_one
                        && r.all_identity_mod_2;
                    let span = r.mod4_rank == r.expected_rank
                        && r.independent.unwrap_or(true)
                        && r.sum_relations.unwrap_or(true);
                    Ok(vec![(twist, w.clone()), (level, w.clone()), (span, w)])
                },
            )
        })
        .collect()
}

fn spanning_sets(config: &RunConfig) -> Vec<Unit> {
    let mut out = Vec::new();
    for d in pick(degree(config), &[5, 6, 7]) {
        out.push(Unit::new(
            vec![(
                format!("spanning-sets.d{d}.unique"),
                "exactly one stabilizer-fixed candidate yields an equivariant spanning set with a single relation",
            )],
            move || {
                let r = if d % 2 == 0 { verify_spanning_set_even(d)? } else { verify_spanning_set_odd(d)? };
                Ok(vec![(r.holds(), to_value(&r))])
            },
        ));
    }
    let d_filter = degree(config);
    for (g, d) in [(1, 3), (1, 4), (2, 5), (2, 6), (3, 7), (3, 8)] {
        if d_filter.is_some_and(|x| x != d) {
            continue;
        }
        out.push(Unit::new(
            vec![(
                format!("spanning-sets.g{g}.d{d}.standard-rep"),
                "the spanned module is the faithful standard representation of dimension 2g",
            )],
            move || {
                let r = standard_rep_mod2_of_v(g, d)?;
                Ok(vec![(r.holds(), to_value(&r))])
            },
        ));
    }
    if d_filter.is_none_or(|x| x == 5) {
        out.push(Unit::new(
            vec![(
                "spanning-sets.d5.transpositions".into(),
                "for five letters every transposition acts as a transvection",
            )],
            || {
                let r = standard_rep_mod2_of_v(2, 5)?;
                let ok = !r.transposition_ranks.is_empty()
                    && r.transposition_ranks.iter().all(|&x| x == 1);
                Ok(vec![(
                    ok,
                    json!({ "transposition_ranks": r.transposition_ranks }),
                )])
            },
        ));
    }
    out
}

fn phi_kernel() -> Vec<Unit> {
    vec![Unit::new(
        vec![
            (
                "phi-kernel.order".into(),
                "the kernel of the mod-4 sum map has order 16 and is spanned by the three listed generators",
            ),
            (
                "phi-kernel.doubling".into(),
                "doubled pairs lie in the span and the map is invariant under the symmetric group",
            ),
        ],
        || {
            let r = verify_phi_kernel()?;
            let w = to_value(&r);
            Ok(vec![
                (
                    r.generators_in_kernel && r.kernel_order == 16 && r.generated_order == 16,
                    w.clone(),
                ),
                (r.doubled_pairs_in_span && r.phi_invariant && r.doubled_sum_phi == 2, w),
            ])
        },
    )]
}

fn parity(config: &RunConfig) -> Vec<Unit> {
    let mut out = Vec::new();
    for d in pick(degree(config), &[4, 6]) {
        let curve = fixture(config, d, CurveRoots::default_fixture);
        out.push(Unit::new(
            vec![
                (
                    format!("parity.d{d}.gamma-identities"),
                    "β² times the difference of reciprocals equals γ_ij for every pair",
                ),
                (
                    format!("parity.d{d}.curve-isomorphism"),
                    "the corrected coordinate change identifies the two curve equations",
                ),
            ],
            move || {
                let r = verify_curve_isomorphism(&curve?)?;
                let w = to_value(&r);
                Ok(vec![
                    (r.pairs_hold(), w.clone()),
                    (r.corrected_map_identity, w),
                ])
            },
        ));
        out.push(Unit::new(
            vec![(
                format!("parity.d{d}.classes"),
                "the γ classes have even weight and span 2g² + g dimensions; the β² class has odd weight",
            )],
            move || {
                let r = even_sum_subspace_check(d)?;
                Ok(vec![(r.holds(), to_value(&r))])
            },
        ));
    }
    out
}

fn tower(config: &RunConfig) -> Vec<Unit> {
    let precision = config.precision();
    let genera = match &config.roots {
        Some(curve) => vec![curve.genus()],
        None => pick(config.g, &[1, 2]),
    };
    genera
        .into_iter()
        .map(|g| {
            let curve = match &config.roots {
                Some(curve) => Ok(curve.clone()),
                None => CurveRoots::generic_fixture(2 * g + 1),
            };
            let structure = if g == 1 {
                "the Galois group of the higher radicals over the 2-torsion field is ℤ/2 × (ℤ/8)²"
            } else {
                "the higher radicals generate an extension of relative degree 2^(2g) with the predicted Galois type"
            };
            Unit::new(
                vec![
                    (format!("tower.g{g}.structure"), structure),
                    (
                        format!("tower.g{g}.minus-one"),
                        "−1 acts by a consistent sign character that fixes the higher radicals for even g and negates them for odd g",
                    ),
                    (
                        format!("tower.g{g}.mutation-rejected"),
                        "flipping one higher radical in that character breaks consistency",
                    ),
                ],
                move || {
                    let (t, r) = build_higher_radical_tower_with(&curve?, precision)?;
                    let m = verify_minus_one_action(&t)?;
                    let expected_sign = if g % 2 == 0 { 1 } else { -1 };
                    let rw = to_value(&r);
                    let mw = to_value(&m);
                    Ok(vec![
                        (r.holds(), rw),
                        (m.consistent && m.higher_sign == expected_sign, mw.clone()),
                        (m.mutation_rejected, mw),
                    ])
                },
            )
        })
        .collect()
}

fn small_roots(config: &RunConfig) -> hyperjac::Result<CurveRoots> {
    fixture(config, 3, |_| CurveRoots::from_integers(&[0, 1, 3]))
}

fn eighth_roots(config: &RunConfig) -> Vec<Unit> {
    let curve = small_roots(config);
    let precision = config.precision();
    vec![Unit::new(
        vec![
            (
                "eighth-roots.identity".into(),
                "the eighth-root identity among the γ radicals holds exactly in the tower",
            ),
            (
                "eighth-roots.psi-relations".into(),
                "the product and sum relations among the fourth-root combinations hold",
            ),
            (
                "eighth-roots.branches".into(),
                "each chosen root is certified against its branch rule by interval enclosures",
            ),
        ],
        move || {
            let r = verify_eighth_root_identities_with(&curve?, precision)?;
            let w = to_value(&r);
            Ok(vec![
                (
                    r.identity_exact
                        && r.identity_numeric
                        && r.eighth_power_holds
                        && r.chain_squares_hold,
                    w.clone(),
                ),
                (r.psi_product_holds && r.psi_sum_holds, w.clone()),
                (r.branches_compatible(), w),
            ])
        },
    )]
}

fn elliptic(config: &RunConfig) -> Vec<Unit> {
    let curve = small_roots(config);
    let precision = config.precision();
    vec![Unit::new(
        vec![
            (
                "elliptic.four-torsion.coordinates".into(),
                "every point of exact order 4 has coordinates in ℚ(i, √(e_i − e_j))",
            ),
            (
                "elliptic.four-torsion.generators".into(),
                "i and every √(e_i − e_j) lie in the field generated by the 4-torsion coordinates",
            ),
        ],
        move || {
            let r = verify_elliptic_4torsion_with(&curve?, precision)?;
            let w = to_value(&r);
            let coords = r.oracles_agree
                && r.all_roots_of_factor
                && r.x_roots_distinct
                && r.y_in_tower
                && r.doubling_hits_two_torsion
                && r.points.len() == 12;
            let gens = !r.generators_in_coordinate_field.is_empty()
                && r.generators_in_coordinate_field.iter().all(|m| m.member);
            Ok(vec![(coords, w.clone()), (gens && r.holds(), w)])
        },
    )]
}
