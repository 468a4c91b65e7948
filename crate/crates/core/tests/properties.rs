use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use hyperjac::braid::{
    artin_apply, homology_rep, pure_generators, BraidWord, FreeWord, HomologyBasis,
};
use hyperjac::congruence::{default_seeds, SatoOracle};
use hyperjac::symplectic::{congruence_level, SymplecticSpace, Transvection};
use hyperjac::tower::{Element, RadicalTower};
use hyperjac::{IntMatrix, ModMatrix};

fn mod_matrix(dim: usize, level: u32) -> impl Strategy<Value = ModMatrix> {
    prop::collection::vec(-1000i64..1000, dim * dim)
        .prop_map(move |e| ModMatrix::from_signed(dim, level, &e).unwrap())
}

fn reduce(m: &IntMatrix, level: u32) -> ModMatrix {
    m.to_mod(level).unwrap()
}

proptest! {
    #[test]
    fn mod_product_agrees_with_integer_product(
        level in 1u32..=30,
        a in prop::collection::vec(-1000i64..1000, 16),
        b in prop::collection::vec(-1000i64..1000, 16),
    ) {
        let (za, zb) = (IntMatrix::from_i64(4, 4, &a).unwrap(), IntMatrix::from_i64(4, 4, &b).unwrap());
        let (ma, mb) = (reduce(&za, level), reduce(&zb, level));
        prop_assert_eq!(ma.mul(&mb).unwrap(), reduce(&za.mul(&zb).unwrap(), level));
    }

    #[test]
    fn mod_product_is_associative(a in mod_matrix(4, 7), b in mod_matrix(4, 7), c in mod_matrix(4, 7)) {
        let left = a.mul(&b).unwrap().mul(&c).unwrap();
        let right = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn odd_determinant_matrices_invert(a in mod_matrix(3, 9)) {
        let inv = a.inverse();
        if a.det().is_unit() {
            let inv = inv.unwrap();
            prop_assert!(a.mul(&inv).unwrap().is_identity());
            prop_assert!(inv.mul(&a).unwrap().is_identity());
        } else {
            prop_assert!(inv.is_err());
        }
    }

    #[test]
    fn packing_round_trips(a in mod_matrix(4, 6)) {
        let key = a.pack().unwrap();
        prop_assert_eq!(ModMatrix::unpack(4, 6, key), a);
    }

    #[test]
    fn transvection_exponents_add(
        dir in prop::collection::vec(-3i64..=3, 4),
        m in -20i64..20,
        n in -20i64..20,
    ) {
        let s = SymplecticSpace::new(2, 8).unwrap();
        let t = |e| s.transvection_matrix(&Transvection::new(dir.clone(), e)).unwrap();
        prop_assert_eq!(t(m).mul(&t(n)).unwrap(), t(m + n));
        prop_assert!(s.is_symplectic(&t(m)).unwrap());
    }

    #[test]
    fn congruence_level_is_submultiplicative(
        a in prop::collection::vec(-2i64..=2, 4),
        b in prop::collection::vec(-2i64..=2, 4),
        k in 1u32..=4,
        l in 1u32..=4,
    ) {
        let s = SymplecticSpace::new(2, 7).unwrap();
        let x = s.transvection_matrix(&Transvection::new(a, 1 << k)).unwrap();
        let y = s.transvection_matrix(&Transvection::new(b, 1 << l)).unwrap();
        prop_assert!(congruence_level(&x.mul(&y).unwrap()) >= congruence_level(&x).min(congruence_level(&y)));
    }

    #[test]
    fn commutators_of_level_two_words_satisfy_oracle(
        x in prop::collection::vec((0usize..16, any::<bool>()), 1..8),
        y in prop::collection::vec((0usize..16, any::<bool>()), 1..8),
    ) {
        let oracle = SatoOracle::new(2, 3).unwrap();
        let seeds = default_seeds(2, 3).unwrap();
        let word = |choice: &[(usize, bool)]| {
            choice.iter().fold(ModMatrix::identity(4, 3).unwrap(), |acc, &(k, inv)| {
                let g = &seeds[k % seeds.len()];
                acc.mul(&if inv { g.inverse().unwrap() } else { g.clone() }).unwrap()
            })
        };
        let (a, b) = (word(&x), word(&y));
        prop_assert!(congruence_level(&a) >= 1);
        prop_assert!(oracle.contains(&a.commutator(&b).unwrap()));
    }

    #[test]
    fn artin_action_composes(
        x in prop::collection::vec(prop_oneof![-4i32..=-1, 1i32..=4], 0..6),
        y in prop::collection::vec(prop_oneof![-4i32..=-1, 1i32..=4], 0..6),
        f in prop::collection::vec(prop_oneof![-5i32..=-1, 1i32..=5], 0..6),
    ) {
        let (bx, by) = (BraidWord::new(5, x).unwrap(), BraidWord::new(5, y).unwrap());
        let f = FreeWord::new(f);
        let composed = artin_apply(&bx, &artin_apply(&by, &f).unwrap()).unwrap();
        prop_assert_eq!(artin_apply(&bx.mul(&by).unwrap(), &f).unwrap(), composed);
        let back = artin_apply(&bx.inverse(), &artin_apply(&bx, &f).unwrap()).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn homology_rep_is_multiplicative(
        d in 3usize..=6,
        p in prop::collection::vec((0usize..15, any::<bool>()), 1..4),
        q in prop::collection::vec((0usize..15, any::<bool>()), 1..4),
    ) {
        let basis = HomologyBasis::new(d).unwrap();
        let gens = pure_generators(d).unwrap();
        let word = |choice: &[(usize, bool)]| {
            choice.iter().fold(BraidWord::empty(d), |acc, &(k, inv)| {
                let g = &gens[k % gens.len()].1;
                acc.mul(&if inv { g.inverse() } else { g.clone() }).unwrap()
            })
        };
        let (wp, wq) = (word(&p), word(&q));
        let lhs = homology_rep(&wp.mul(&wq).unwrap(), &basis).unwrap();
        let rhs = homology_rep(&wp, &basis).unwrap().mul(&homology_rep(&wq, &basis).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tower_arithmetic_is_a_field(
        x in prop::collection::vec(-9i64..=9, 8),
        y in prop::collection::vec(-9i64..=9, 8),
        z in prop::collection::vec(-9i64..=9, 8),
    ) {
        let t = tower();
        let (x, y, z) = (element(&x), element(&y), element(&z));
        let lhs = t.mul(&x, &y.add(&z));
        prop_assert_eq!(lhs, t.mul(&x, &y).add(&t.mul(&x, &z)));
        prop_assert_eq!(t.mul(&t.mul(&x, &y), &z), t.mul(&x, &t.mul(&y, &z)));
        if !x.is_zero() {
            let inv = t.inv(&x).unwrap();
            prop_assert_eq!(t.mul(&x, &inv), Element::one());
        }
    }

    #[test]
    fn squares_have_square_roots(x in prop::collection::vec(-9i64..=9, 8)) {
        let t = tower();
        let x = element(&x);
        let sq = t.square(&x);
        let r = t.sqrt(&sq).unwrap().expect("a square has a root");
        prop_assert_eq!(t.square(&r), sq);
    }
}

/// ℚ(√2, √3, i).
fn tower() -> RadicalTower {
    let mut t = RadicalTower::new();
    let q = |n: i64| Element::constant(BigRational::from_integer(BigInt::from(n)));
    for (label, n) in [("r2", 2), ("r3", 3), ("i", -1)] {
        t.adjoin_sqrt(label, q(n)).unwrap();
    }
    t
}

fn element(coeffs: &[i64]) -> Element<BigRational> {
    coeffs
        .iter()
        .enumerate()
        .fold(Element::zero(), |acc, (mask, &c)| {
            acc.add(&Element::monomial(
                mask as u64,
                BigRational::from_integer(BigInt::from(c)),
            ))
        })
}
