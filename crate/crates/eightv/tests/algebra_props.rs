//! Algebraic properties of the field, signatures, gadgets and class deciders.

mod common;

use common::{cyclo, nonzero_cyclo, small_eight, table};
use eightv::classes::{in_a_table, in_alpha_a_table, in_l_table, in_p_table, membership_profile};
use eightv::gadgets::{binary_modify, chain_power, connect_via_n, View};
use eightv::numeric::{ComplexApprox, Cyclo8, Scalar};
use eightv::signatures::{apply_perm, holographic_transform, pair_orbit, EightVertexSig, Signature, Transform2x2, VarPerm};
use proptest::prelude::*;

fn perm() -> impl Strategy<Value = VarPerm> {
    Just(vec![0usize, 1, 2, 3]).prop_shuffle().prop_map(|v| VarPerm([v[0], v[1], v[2], v[3]]))
}

fn sig4() -> impl Strategy<Value = Signature> {
    table(4).prop_map(|v| Signature::from_exact(4, v).unwrap())
}

#[derive(Clone, Debug)]
enum Op {
    Add(Cyclo8),
    Sub(Cyclo8),
    Mul(Cyclo8),
    Div(Cyclo8),
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        cyclo().prop_map(Op::Add),
        cyclo().prop_map(Op::Sub),
        common::small_entry().prop_filter("nonzero", |c| !c.is_zero()).prop_map(Op::Mul),
        common::small_entry().prop_filter("nonzero", |c| !c.is_zero()).prop_map(Op::Div),
    ]
}

fn close(a: &ComplexApprox, b: &ComplexApprox) -> bool {
    let scale = 1.0f64.max(a.re.abs()).max(a.im.abs());
    (a.re - b.re).abs() <= 1e-9 * scale && (a.im - b.im).abs() <= 1e-9 * scale
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn inverse(x in nonzero_cyclo()) {
        prop_assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn unit_modulus_is_multiplicative(j in 0i64..8, k in 0i64..8, x in cyclo(), y in cyclo()) {
        let (u, v) = (Cyclo8::zeta_pow(j), Cyclo8::zeta_pow(k));
        prop_assert!((&u * &v).unit_modulus());
        if x.unit_modulus() && y.unit_modulus() {
            prop_assert!((&x * &y).unit_modulus());
        }
    }

    #[test]
    fn conjugation_is_an_automorphism(x in cyclo(), y in cyclo()) {
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn powers_of_i(k in 0i64..4, x in cyclo()) {
        let u = Cyclo8::i_pow(k);
        prop_assert_eq!(u.as_power_of_i(), Some(k as u8));
        for v in [u, x] {
            if v.as_power_of_i().is_some() {
                prop_assert!(v.pow(4).is_one());
                prop_assert_eq!(4 % v.root_of_unity_order().unwrap(), 0);
            }
        }
    }

    #[test]
    fn exact_and_approx_agree(start in cyclo(), ops in proptest::collection::vec(op(), 1..=20)) {
        let mut exact = start.clone();
        let mut approx = start.to_approx();
        for o in &ops {
            match o {
                Op::Add(c) => { exact = &exact + c; approx = approx.add(&c.to_approx()); }
                Op::Sub(c) => { exact = &exact - c; approx = approx.sub(&c.to_approx()); }
                Op::Mul(c) => { exact = &exact * c; approx = approx.mul(&c.to_approx()); }
                Op::Div(c) => { exact = exact.div(c).unwrap(); approx = approx.div(&c.to_approx()).unwrap(); }
            }
        }
        prop_assert!(close(&exact.to_approx(), &approx), "{} vs {:?}", exact, approx);
    }

    #[test]
    fn permutation_action(f in sig4(), s in perm(), t in perm()) {
        let lhs = apply_perm(&f, &s.compose(&t)).unwrap();
        let rhs = apply_perm(&apply_perm(&f, &t).unwrap(), &s).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pair_orbit_matches_permutations(f in small_eight()) {
        let mut expected: Vec<EightVertexSig> = Vec::new();
        for s in VarPerm::all() {
            let g = EightVertexSig::from_signature(&apply_perm(&f.to_signature(), &s).unwrap()).unwrap();
            if !expected.contains(&g) {
                expected.push(g);
            }
        }
        let orbit = pair_orbit(&f);
        prop_assert_eq!(orbit.len(), expected.len());
        for g in &expected {
            prop_assert!(orbit.contains(g));
        }
    }

    #[test]
    fn transforms_compose(
        arity in 1usize..=4,
        seed in proptest::collection::vec(common::small_entry(), 16),
        m1 in [cyclo(), cyclo(), cyclo(), cyclo()],
        m2 in [cyclo(), cyclo(), cyclo(), cyclo()],
    ) {
        let f = Signature::from_exact(arity, seed[..1 << arity].to_vec()).unwrap();
        let (Ok(t1), Ok(t2)) = (Transform2x2::exact(m1.clone()), Transform2x2::exact(m2.clone())) else {
            return Ok(());
        };
        let p = [
            &(&m1[0] * &m2[0]) + &(&m1[1] * &m2[2]),
            &(&m1[0] * &m2[1]) + &(&m1[1] * &m2[3]),
            &(&m1[2] * &m2[0]) + &(&m1[3] * &m2[2]),
            &(&m1[2] * &m2[1]) + &(&m1[3] * &m2[3]),
        ];
        let t12 = Transform2x2::exact(p).unwrap();
        let lhs = holographic_transform(&f, &t12).unwrap();
        let rhs = holographic_transform(&holographic_transform(&f, &t2).unwrap(), &t1).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chains_concatenate(f in common::rational_eight(), k1 in 1u64..4, k2 in 1u64..4) {
        let f = f.to_signature();
        let whole = chain_power(&f, View::STANDARD, k1 + k2).unwrap().signature;
        let left = chain_power(&f, View::STANDARD, k1).unwrap().signature;
        let right = chain_power(&f, View::STANDARD, k2).unwrap().signature;
        prop_assert_eq!(whole, connect_via_n(&left, View::STANDARD, &right, View::STANDARD).unwrap());
    }

    #[test]
    fn modifications_commute(f in sig4(), i in 1usize..=4, j in 1usize..=4, s in cyclo(), t in cyclo()) {
        prop_assume!(i != j);
        let (s, t) = (Scalar::Exact(s), Scalar::Exact(t));
        let a = binary_modify(&binary_modify(&f, i, &s).unwrap(), j, &t).unwrap();
        let b = binary_modify(&binary_modify(&f, j, &t).unwrap(), i, &s).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn membership_ignores_scaling(arity in 1usize..=4, seed in proptest::collection::vec(common::small_entry(), 16), l in nonzero_cyclo()) {
        let v = seed[..1 << arity].to_vec();
        let w: Vec<Cyclo8> = v.iter().map(|e| e * &l).collect();
        prop_assert_eq!(in_a_table(&v).is_some(), in_a_table(&w).is_some());
        prop_assert_eq!(in_p_table(&v).is_some(), in_p_table(&w).is_some());
        prop_assert_eq!(in_l_table(&v), in_l_table(&w));
        prop_assert_eq!(in_alpha_a_table(&v), in_alpha_a_table(&w));
    }

    #[test]
    fn membership_ignores_variable_order(f in sig4(), s in perm()) {
        let g = apply_perm(&f, &s).unwrap();
        prop_assert_eq!(membership_profile(&f).unwrap(), membership_profile(&g).unwrap());
    }

    #[test]
    fn local_affine_with_nonzero_origin_is_affine(arity in 1usize..=4, seed in proptest::collection::vec(common::small_entry(), 16)) {
        let v = seed[..1 << arity].to_vec();
        if in_l_table(&v) && !v[0].is_zero() {
            prop_assert!(in_a_table(&v).is_some());
        }
    }
}
