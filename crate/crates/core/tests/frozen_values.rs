//! Values computed once by the kernels and pinned here.

use hyperjac::braid::verify_monodromy;
use hyperjac::congruence::{commutator_closed_form, commutator_word};
use hyperjac::sd_rep::{verify_spanning_set_even, verify_spanning_set_odd};
use hyperjac::tower::curves::{
    build_higher_radical_tower, verify_curve_isomorphism, verify_eighth_root_identities,
    verify_elliptic_4torsion, CurveRoots,
};
use hyperjac::IntMatrix;

#[test]
fn commutator_closed_form_small_cases() {
    let m12 = IntMatrix::from_i64(2, 2, &[-7, 16, -32, 73]).unwrap();
    assert_eq!(commutator_closed_form(1, 2), m12);
    assert_eq!(commutator_word(1, 2), m12);
    assert_eq!(
        commutator_closed_form(2, 1),
        IntMatrix::from_i64(2, 2, &[-7, 32, -16, 73]).unwrap()
    );
}

#[test]
fn full_twist_images() {
    let r3 = verify_monodromy(3).unwrap();
    assert_eq!(r3.sigma, vec![vec![-1, 0], vec![0, -1]]);
    assert_eq!(r3.form.form, vec![vec![0, 1], vec![-1, 0]]);
    let r4 = verify_monodromy(4).unwrap();
    assert_eq!(r4.sigma, vec![vec![1, 0], vec![0, 1]]);
    assert_eq!(r4.sigma_prime, Some(vec![vec![-1, 0], vec![0, -1]]));
    let ranks: Vec<usize> = (3..=6)
        .map(|d| verify_monodromy(d).unwrap().mod4_rank)
        .collect();
    assert_eq!(ranks, [3, 3, 10, 10]);
}

#[test]
fn spanning_set_survivors() {
    let survivors: Vec<(usize, Option<String>, usize)> = [5, 6, 7]
        .into_iter()
        .map(|d| {
            let r = if d == 6 {
                verify_spanning_set_even(d)
            } else {
                verify_spanning_set_odd(d)
            }
            .unwrap();
            (d, r.survivor, r.fixed_nonzero)
        })
        .collect();
    assert_eq!(
        survivors,
        [
            (5, Some("sum_1j".into()), 3),
            (6, Some("cross".into()), 7),
            (7, Some("sum_1j".into()), 3)
        ]
    );
}

#[test]
fn elliptic_four_torsion_points() {
    let r = verify_elliptic_4torsion(&CurveRoots::from_integers(&[0, 1, 3]).unwrap()).unwrap();
    assert_eq!(
        r.division_factor,
        "2*x^6 + -16*x^5 + 30*x^4 + -90*x^2 + 144*x + -54"
    );
    let xs: Vec<&str> = r.points.iter().step_by(2).map(|p| p.x.as_str()).collect();
    assert_eq!(
        xs,
        [
            "sqrt(e3-e1)",
            "-sqrt(e3-e1)",
            "1 + sqrt(-1)*sqrt(e3-e2)",
            "1 - sqrt(-1)*sqrt(e3-e2)",
            "3 + sqrt(e3-e1)*sqrt(e3-e2)",
            "3 - sqrt(e3-e1)*sqrt(e3-e2)",
        ]
    );
    assert_eq!(r.points[0].y, "3*sqrt(-1) - sqrt(-1)*sqrt(e3-e1)");
    assert_eq!(r.coordinate_field_degree, 8);
}

#[test]
fn curve_isomorphism_gammas() {
    let r = verify_curve_isomorphism(&CurveRoots::default_fixture(4).unwrap()).unwrap();
    assert_eq!(r.beta_squared, "168");
    let gammas: Vec<&str> = r.pair_identities.iter().map(|p| p.gamma.as_str()).collect();
    assert_eq!(gammas, ["4", "18", "14"]);
    assert!(r.printed_map_gives_twist && !r.printed_map_identity && r.corrected_map_identity);
}

#[test]
fn eighth_root_identities_on_small_roots() {
    let r = verify_eighth_root_identities(&CurveRoots::from_integers(&[0, 1, 3]).unwrap()).unwrap();
    assert_eq!((r.psi_product.as_str(), r.psi_sum.as_str()), ("4", "8"));
    assert_eq!(r.eighth_power_radicand, "12");
}

#[test]
fn generic_towers() {
    let (_, g1) = build_higher_radical_tower(&CurveRoots::generic_fixture(3).unwrap()).unwrap();
    assert_eq!(g1.higher_radicands, ["1470", "-2100", "630"]);
    assert_eq!(g1.killed_by_power, [1, 8, 32, 128]);
    assert_eq!(g1.dependent_steps, ["8rt(R3)"]);
    let (_, g2) = build_higher_radical_tower(&CurveRoots::generic_fixture(5).unwrap()).unwrap();
    assert_eq!(
        g2.higher_radicands,
        [
            "144829372",
            "-19163760",
            "12743016",
            "-17423640",
            "41329008"
        ]
    );
    assert_eq!(g2.killed_by_power, [1, 1024, 16384]);
    assert_eq!(g2.dependent_steps, ["4rt(R5)"]);
}

#[test]
fn small_root_fixtures_are_degenerate() {
    let rel: Vec<(bool, usize)> = (3..=6)
        .map(|d| {
            let (_, r) =
                build_higher_radical_tower(&CurveRoots::default_fixture(d).unwrap()).unwrap();
            (r.degenerate, r.relative_log2_degree)
        })
        .collect();
    assert_eq!(rel, [(true, 5), (true, 5), (true, 8), (true, 11)]);
}
