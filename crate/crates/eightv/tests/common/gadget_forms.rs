//! Closed-form gadget matrices, each checked by composing the gadget
//! operations on random rational (and Gaussian-rational) parameters.

use eightv::gadgets::{binary_modify, connect_via_n, matrix_signature, view_matrix, Mat4, View};
use eightv::numeric::{Cyclo8, Rational, Scalar};
use eightv::signatures::{EightVertexSig, Signature};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn rat(rng: &mut StdRng) -> Cyclo8 {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-9i64..=9);
    }
    Cyclo8::from_rational(Rational::new(p, rng.gen_range(1i64..=7)).unwrap())
}

fn gauss(rng: &mut StdRng) -> Cyclo8 {
    let re = rat(rng);
    let im = if rng.gen_bool(0.5) { rat(rng) } else { Cyclo8::zero() };
    &re + &(&im * &Cyclo8::i())
}

fn ev(e: [&Cyclo8; 8]) -> Signature {
    EightVertexSig::from_exact(e.map(Clone::clone)).to_signature()
}

fn full(m: [[Cyclo8; 4]; 4]) -> Signature {
    let m: Mat4 = m.map(|r| r.map(Scalar::Exact));
    matrix_signature(&m)
}

fn q(p: &Cyclo8, r: &Cyclo8) -> Cyclo8 {
    p.div(r).unwrap()
}

fn k(n: i64) -> Cyclo8 {
    Cyclo8::from_int(n)
}

fn o() -> Cyclo8 {
    Cyclo8::zero()
}

fn s(c: &Cyclo8) -> Scalar {
    Scalar::Exact(c.clone())
}

const STD: View = View::STANDARD;

pub fn self_connection_with_unit_circle_inner_block(trials: usize) {
    let mut rng = StdRng::seed_from_u64(1);
    for _ in 0..trials {
        let (a, b, y) = (rat(&mut rng), rat(&mut rng), rat(&mut rng));
        let lambda = gauss(&mut rng);
        let phase = Cyclo8::zeta_pow(rng.gen_range(0..8));
        let lb = lambda.conj();
        let f = ev([&a, &b, &phase, &(&phase * &lambda), &lb, &Cyclo8::one(), &y, &a]);
        let f1 = connect_via_n(&f, STD, &f, View::new((3, 4), (2, 1))).unwrap();
        let n2 = &Cyclo8::one() + &(&lambda * &lb);
        let outer = &(&a * &a) + &(&b * &y);
        let expect = full([
            [&k(2) * &(&a * &b), o(), o(), outer.clone()],
            [o(), &phase * &n2, &(&k(2) * &(&phase * &phase)) * &lambda, o()],
            [o(), &k(2) * &lb, &phase * &n2, o()],
            [outer, o(), o(), &k(2) * &(&a * &y)],
        ]);
        assert_eq!(f1, expect);
        // Divided by s = e^{iθ}(1+|λ|²) the inner block is [[1, δ], [δ̄, 1]].
        let sc = &phase * &n2;
        let g = view_matrix(&f1, STD).unwrap();
        let delta = q(&(&(&k(2) * &phase) * &lambda), &n2);
        assert_eq!(g[1][1].div(&s(&sc)).unwrap(), Scalar::one());
        assert_eq!(g[1][2].div(&s(&sc)).unwrap(), s(&delta));
        assert_eq!(g[2][1].div(&s(&sc)).unwrap(), s(&delta.conj()));
    }
}

pub fn equal_pair_products_symmetrize(trials: usize) {
    let mut rng = StdRng::seed_from_u64(2);
    for _ in 0..trials {
        let (b, c, d) = (rat(&mut rng), rat(&mut rng), rat(&mut rng));
        let one = Cyclo8::one();
        let inv = |u: &Cyclo8| u.inv().unwrap();
        // a = 1 and by = cz = dw = 1
        let f = ev([&one, &b, &c, &d, &inv(&d), &inv(&c), &inv(&b), &one]);
        let f1 = connect_via_n(&f, STD, &f, View::new((3, 4), (1, 2))).unwrap();
        let cd = &c * &d;
        let two = k(2);
        let e1 = full([
            [&two * &b, o(), o(), two.clone()],
            [o(), &two * &cd, two.clone(), o()],
            [o(), two.clone(), &two * &inv(&cd), o()],
            [two.clone(), o(), o(), &two * &inv(&b)],
        ]);
        assert_eq!(f1, e1);
        let f2 = connect_via_n(&f1, View::new((1, 3), (2, 4)), &f1, View::new((2, 4), (1, 3))).unwrap();
        let t = &b * &cd;
        let eight = k(8);
        let e2 = full([
            [&eight * &t, o(), o(), eight.clone()],
            [o(), eight.clone(), eight.clone(), o()],
            [o(), eight.clone(), eight.clone(), o()],
            [eight.clone(), o(), o(), &eight * &inv(&t)],
        ]);
        assert_eq!(f2, e2);
    }
}

pub fn any_binary_chain(trials: usize) {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..trials {
        let (a, b, d, w, y, z) =
            (rat(&mut rng), rat(&mut rng), rat(&mut rng), rat(&mut rng), rat(&mut rng), rat(&mut rng));
        let one = Cyclo8::one();
        // c = 1; modify x₁ by 1/w and x₃ by 1/d.
        let f = ev([&a, &b, &one, &d, &w, &z, &y, &a]);
        let f1 = binary_modify(&binary_modify(&f, 1, &s(&w.inv().unwrap())).unwrap(), 3, &s(&d.inv().unwrap())).unwrap();
        let dw = &d * &w;
        let r = q(&z, &dw);
        assert_eq!(f1, ev([&a, &q(&b, &d), &one, &one, &one, &r, &q(&y, &w), &q(&a, &dw)]));
        // f₂ = f₁ modified on x₃ by −z/(dw), then f₃ = M(f₂) N M(f₁).
        let f2 = binary_modify(&f1, 3, &s(&-&r)).unwrap();
        let f3 = connect_via_n(&f2, STD, &f1, STD).unwrap();
        let d2 = &d * &d;
        let t00 = &q(&a, &w) * &(&y - &q(&(&b * &z), &d2));
        let t03 = &q(&one, &dw) * &(&(&a * &a) - &q(&(&(&b * &b) * &z), &d2));
        let t30 = &q(&one, &(&w * &w)) * &(&(&y * &y) - &q(&(&(&a * &a) * &z), &d2));
        let t33 = &q(&a, &(&d * &(&w * &w))) * &(&y - &q(&(&b * &z), &d2));
        let e3 = full([
            [t00, o(), o(), t03],
            [o(), &one - &r, o(), o()],
            [o(), &one - &(&r * &r), &r * &(&one - &r), o()],
            [t30, o(), o(), t33],
        ]);
        assert_eq!(f3, e3);

        // With z/(dw) = −1 and a² = dw: the symmetric end of the chain.
        let a2 = rat(&mut rng);
        let dd = rat(&mut rng);
        let ww = q(&(&a2 * &a2), &dd);
        let bb = rat(&mut rng);
        let bd = q(&bb, &dd);
        // y/w = −d/b
        let g1 = ev([&a2, &bd, &one, &one, &one, &k(-1), &-&bd.inv().unwrap(), &q(&a2, &(&dd * &ww))]);
        let g1p = matrix_signature(&view_matrix(&g1, View::new((1, 4), (3, 2))).unwrap());
        assert_eq!(g1p, full([
            [a2.clone(), o(), o(), one.clone()],
            [o(), one.clone(), bd.clone(), o()],
            [o(), -&bd.inv().unwrap(), k(-1), o()],
            [one.clone(), o(), o(), a2.inv().unwrap()],
        ]));
        let g6 = binary_modify(&binary_modify(&g1p, 1, &s(&-&bd)).unwrap(), 3, &s(&bd.inv().unwrap())).unwrap();
        let db = bd.inv().unwrap();
        assert_eq!(g6, ev([&a2, &db, &one, &one, &one, &one, &-&bd, &-&a2.inv().unwrap()]));
        let g7 = connect_via_n(&g6, STD, &g6, View::new((3, 4), (1, 2))).unwrap();
        let sval = -&(&a2 * &db);
        let two = k(2);
        assert_eq!(g7, full([
            [&two * &(&a2 * &db), o(), o(), k(-2)],
            [o(), two.clone(), two.clone(), o()],
            [o(), two.clone(), two.clone(), o()],
            [k(-2), o(), o(), &two * &q(&bd, &a2)],
        ]));
        // Up to the factor −2 this is [s, 0, 1, 0, 1/s] on the outer corners with s = −ad/b.
        let m7 = view_matrix(&g7, STD).unwrap();
        assert_eq!(m7[0][0].div(&m7[0][3]).unwrap(), s(&sval));
        assert_eq!(m7[3][3].div(&m7[0][3]).unwrap(), s(&sval.inv().unwrap()));
    }
}

pub fn two_pair_self_connection(trials: usize) {
    let mut rng = StdRng::seed_from_u64(4);
    for _ in 0..trials {
        let (c, d, w, z) = (rat(&mut rng), rat(&mut rng), rat(&mut rng), rat(&mut rng));
        let one = Cyclo8::one();
        let f = ev([&one, &o(), &c, &d, &w, &z, &o(), &one]);
        let f2 = connect_via_n(&f, STD, &f, STD).unwrap();
        let dpw = &d + &w;
        let cz = &c * &z;
        assert_eq!(f2, full([
            [o(), o(), o(), one.clone()],
            [o(), &c * &dpw, &cz + &(&d * &d), o()],
            [o(), &cz + &(&w * &w), &z * &dpw, o()],
            [one.clone(), o(), o(), o()],
        ]));
        // degenerate block [[c, −c], [−c, c]]
        let g = ev([&one, &o(), &c, &-&c, &-&c, &c, &o(), &one]);
        let c2 = &k(2) * &(&c * &c);
        assert_eq!(connect_via_n(&g, STD, &g, STD).unwrap(), full([
            [o(), o(), o(), one.clone()],
            [o(), -&c2, c2.clone(), o()],
            [o(), c2.clone(), -&c2, o()],
            [one.clone(), o(), o(), o()],
        ]));
    }
}

pub fn three_nonzero_one_pair_self_connection(trials: usize) {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..trials {
        let (a, c, d, z) = (rat(&mut rng), rat(&mut rng), rat(&mut rng), rat(&mut rng));
        let f = ev([&a, &o(), &c, &d, &o(), &z, &o(), &a]);
        let f1 = connect_via_n(&f, STD, &f, STD).unwrap();
        let a2 = &a * &a;
        assert_eq!(f1, full([
            [o(), o(), o(), a2.clone()],
            [o(), &c * &d, &(&c * &z) + &(&d * &d), o()],
            [o(), &c * &z, &d * &z, o()],
            [a2, o(), o(), o()],
        ]));
        let support = f1.support().len();
        assert!(support == 5 || support == 6);
    }
}
