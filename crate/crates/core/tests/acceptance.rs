//! Acceptance run: one PASS/FAIL line per criterion, with wall time against budget.
//! Runs without the libtest harness so the lines always reach stdout.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hyperjac::braid::verify_monodromy;
use hyperjac::congruence::{
    gamma4_mod_commutator_basis, genus_one_suite, genus_two_suite, transvection_conjugation_check,
    verify_commutator_formula, verify_mod32_congruences, DEFAULT_CAP,
};
use hyperjac::sd_rep::{
    even_sum_subspace_check, standard_rep_mod2_of_v, verify_phi_kernel, verify_spanning_set_even,
    verify_spanning_set_odd,
};
use hyperjac::tower::curves::{
    build_higher_radical_tower, verify_curve_isomorphism, verify_eighth_root_identities,
    verify_elliptic_4torsion, verify_minus_one_action, CurveRoots,
};
use hyperjac::Result;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

fn c1() -> Result<Outcome> {
    let r = genus_one_suite()?;
    outcome(
        r.holds(),
        format!(
            "orders {}/{}/{}, commutator {}, ab {}",
            r.order_mod_4, r.order_mod_8, r.order_mod_16, r.commutator_order, r.abelianization
        ),
    )
}

fn c2() -> Result<Outcome> {
    let f = verify_commutator_formula(6)?;
    let m = verify_mod32_congruences()?;
    outcome(
        f.holds() && m.holds(),
        format!("{} cases, mod-32 congruences {}", f.cases.len(), m.holds()),
    )
}

fn c3() -> Result<Outcome> {
    let r = genus_two_suite(DEFAULT_CAP)?;
    outcome(
        r.holds(),
        format!(
            "order {}, commutator {} vs oracle {}, ab {}",
            r.order, r.commutator_order, r.sato_set_order, r.abelianization
        ),
    )
}

fn c4() -> Result<Outcome> {
    let b = gamma4_mod_commutator_basis(2)?;
    let c = transvection_conjugation_check()?;
    outcome(
        b.holds() && c.holds(),
        format!(
            "quotient dim {}, images {:?}, deviation rank {}",
            b.quotient_dimension, b.images, c.deviation_rank
        ),
    )
}

fn c5() -> Result<Outcome> {
    let mut ok = true;
    let mut ranks = Vec::new();
    for d in 3..=6 {
        let r = verify_monodromy(d)?;
        ok &= r.holds();
        ranks.push(r.mod4_rank);
    }
    outcome(ok, format!("mod-4 ranks {ranks:?}"))
}

fn c6() -> Result<Outcome> {
    let reports = [
        verify_spanning_set_odd(5)?,
        verify_spanning_set_even(6)?,
        verify_spanning_set_odd(7)?,
    ];
    let unique = reports.iter().all(|r| r.holds());
    let kernel = verify_phi_kernel()?;
    let mut faithful = true;
    for (g, d) in [(1, 3), (1, 4), (2, 5), (2, 6), (3, 7), (3, 8)] {
        faithful &= standard_rep_mod2_of_v(g, d)?.holds();
    }
    let d5 = standard_rep_mod2_of_v(2, 5)?;
    let transvections =
        !d5.transposition_ranks.is_empty() && d5.transposition_ranks.iter().all(|&r| r == 1);
    outcome(
        unique && kernel.holds() && faithful && transvections,
        format!(
            "unique spanning sets {unique}, ker order {} type {}, faithful {faithful}, d=5 transvections {transvections}",
            kernel.kernel_order, kernel.kernel_type
        ),
    )
}

fn c7() -> Result<Outcome> {
    let mut ok = true;
    let mut dims = Vec::new();
    for d in [4, 6] {
        let iso = verify_curve_isomorphism(&CurveRoots::default_fixture(d)?)?;
        let parity = even_sum_subspace_check(d)?;
        ok &= iso.pairs_hold() && iso.corrected_map_identity && parity.holds();
        dims.push(parity.gamma_span_dimension);
    }
    outcome(
        ok,
        format!("all pair identities hold, gamma span dims {dims:?}"),
    )
}

fn c8() -> Result<Outcome> {
    let r = verify_elliptic_4torsion(&CurveRoots::from_integers(&[0, 1, 3])?)?;
    let members = r
        .generators_in_coordinate_field
        .iter()
        .filter(|m| m.member)
        .count();
    outcome(
        r.holds(),
        format!(
            "{} points, coordinate field degree {}, {members}/{} generators inside",
            r.points.len(),
            r.coordinate_field_degree,
            r.generators_in_coordinate_field.len()
        ),
    )
}

fn c9() -> Result<Outcome> {
    let (t2, r2) = build_higher_radical_tower(&CurveRoots::generic_fixture(5)?)?;
    let (t1, r1) = build_higher_radical_tower(&CurveRoots::generic_fixture(3)?)?;
    let m2 = verify_minus_one_action(&t2)?;
    let m1 = verify_minus_one_action(&t1)?;
    let degree_ok = r2.holds() && r2.relative_log2_degree == 14;
    let type_ok = r1.holds() && r1.galois_type == r1.expected_type;
    let sign_ok = m2.holds() && m2.higher_sign == 1 && m1.holds() && m1.higher_sign == -1;
    outcome(
        degree_ok && type_ok && sign_ok,
        format!(
            "g=2 relative degree 2^{}, g=1 type {}, signs +{}/-{} consistent, mutations rejected {}",
            r2.relative_log2_degree,
            r1.galois_type,
            u8::from(m2.consistent),
            u8::from(m1.consistent),
            m2.mutation_rejected && m1.mutation_rejected
        ),
    )
}

fn c10() -> Result<Outcome> {
    let r = verify_eighth_root_identities(&CurveRoots::from_integers(&[0, 1, 3])?)?;
    outcome(
        r.holds(),
        format!(
            "exact {}, product {}, sum {}, {} branches certified {}",
            r.identity_exact,
            r.psi_product_holds,
            r.psi_sum_holds,
            r.branches.len(),
            r.branches_compatible()
        ),
    )
}

fn main() -> ExitCode {
    type Check = fn() -> Result<Outcome>;
    let criteria: [(&str, Check, u64); 10] = [
        ("genus-one congruence quotients", c1, 1),
        ("commutator closed form and mod-32 congruences", c2, 1),
        ("genus-two quotient mod 8", c3, 120),
        ("fourth-power transvection basis", c4, 5),
        ("pure-braid monodromy", c5, 30),
        ("symmetric-group modules", c6, 30),
        ("curve isomorphism and parity", c7, 5),
        ("elliptic 4-torsion coordinates", c8, 10),
        ("radical tower structure", c9, 30),
        ("radical identities with certified branches", c10, 10),
    ];
    let mut failures = 0;
    for (k, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= Duration::from_secs(*budget);
        let (pass, detail) = match result {
            Ok(o) => (o.pass && in_budget, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failures += usize::from(!pass);
        println!(
            "criterion {:>2} {} {name}: {detail} [{:.3}s / {budget}s]",
            k + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
