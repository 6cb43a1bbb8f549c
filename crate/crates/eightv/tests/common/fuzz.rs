//! Fuzzing strategies for eight-vertex signatures aimed at every branch of
//! the classifier.

use eightv::classify::{check_certificate, classify};
use eightv::numeric::{Cyclo8, Scalar};
use eightv::signatures::{pair_orbit, EightVertexSig};
use proptest::prelude::*;

const POOL: [&str; 9] = ["1", "-1", "i", "-i", "2", "-2", "a", "-a", "1/2"];

pub fn nonzero() -> impl Strategy<Value = Cyclo8> {
    proptest::sample::select(&POOL[..]).prop_map(|s| s.parse().unwrap())
}

pub fn entry() -> impl Strategy<Value = Cyclo8> {
    prop_oneof![1 => Just(Cyclo8::zero()), 3 => nonzero()]
}

pub fn ipow() -> impl Strategy<Value = Cyclo8> {
    (0i64..4).prop_map(Cyclo8::i_pow)
}

pub fn mk(v: [Cyclo8; 8]) -> EightVertexSig {
    EightVertexSig::from_exact(v)
}

/// (y, z, w) = ε(b, c, d).
pub fn three_equal_pairs() -> impl Strategy<Value = EightVertexSig> {
    (nonzero(), nonzero(), nonzero(), nonzero(), nonzero(), prop_oneof![Just(1i64), Just(-1)]).prop_map(
        |(a, b, c, d, x, e)| {
            let e = Cyclo8::from_int(e);
            mk([a, b.clone(), c.clone(), d.clone(), &e * &d, &e * &c, &e * &b, x])
        },
    )
}

/// by = cz = dw = k, usually also equal to ax.
pub fn equal_products() -> impl Strategy<Value = EightVertexSig> {
    (nonzero(), nonzero(), nonzero(), nonzero(), nonzero(), nonzero(), proptest::bool::weighted(0.7)).prop_map(
        |(a, b, c, d, k, other_x, tie)| {
            let x = if tie { k.div(&a).unwrap() } else { other_x };
            let q = |u: &Cyclo8| k.div(u).unwrap();
            mk([a, b.clone(), c.clone(), d.clone(), q(&d), q(&c), q(&b), x])
        },
    )
}

/// Entries of the explicit generic family, optionally perturbed.
pub fn generic_family() -> impl Strategy<Value = EightVertexSig> {
    (nonzero(), nonzero(), [ipow(), ipow(), ipow(), ipow()], ipow(), ipow(), proptest::bool::weighted(0.2), proptest::bool::weighted(0.2))
        .prop_map(|(a, c, [jb, ky, md, nw], zp, axp, perturb_z, perturb_ax)| {
            let (b, y, d, w) = (&c * &jb, &c * &ky, &c * &md, &c * &nw);
            let mut z = -&(&d * &w).div(&c).unwrap();
            if perturb_z {
                z = &z * &zp;
            }
            let jk = i64::from(jb.as_power_of_i().unwrap() + ky.as_power_of_i().unwrap());
            let mut ax = -&(&(&c * &c) * &Cyclo8::i_pow(jk));
            if perturb_ax {
                ax = &ax * &axp;
            }
            let x = ax.div(&a).unwrap();
            mk([a, b, c, d, w, z, y, x])
        })
}

/// Two zero pairs, the remaining pair in any of the three positions.
pub fn two_zero_pairs() -> impl Strategy<Value = EightVertexSig> {
    (nonzero(), nonzero(), nonzero(), nonzero(), 0usize..3).prop_map(|(a, c, z, x, p)| {
        let o = Cyclo8::zero;
        let mut v = [a, o(), c, o(), o(), z, o(), x];
        let idx = [(1usize, 6usize), (2, 5), (3, 4)];
        v.swap(idx[p].0, 2);
        v.swap(idx[p].1, 5);
        mk(v)
    })
}

pub fn fuzzed() -> impl Strategy<Value = EightVertexSig> {
    prop_oneof![
        3 => proptest::array::uniform8(entry()).prop_map(mk),
        2 => super::small_eight(),
        2 => three_equal_pairs(),
        2 => equal_products(),
        3 => generic_family(),
        1 => two_zero_pairs(),
    ]
}


/// Certificate soundness and invariance of the verdict kind across the pair
/// orbit, under scaling by `s`, and under (a, x) → (ka, x/k).
pub fn check_verdict(f: &EightVertexSig, s: &Cyclo8, k: &Cyclo8) -> Result<(), String> {
    let classify = |g: &EightVertexSig| classify(g).map_err(|e| format!("{g}: {e}"));
    let v = classify(f)?;
    if let Some(c) = v.certificate() {
        if !check_certificate(f, c) {
            return Err(format!("certificate fails for {f}"));
        }
    }
    for g in pair_orbit(f) {
        let w = classify(&g)?;
        if v.kind() != w.kind() {
            return Err(format!("{f} is {} but orbit image {g} is {}", v.kind(), w.kind()));
        }
    }
    let scaled = classify(&f.scale(&Scalar::Exact(s.clone())))?;
    if v.kind() != scaled.kind() {
        return Err(format!("{f} changes kind under scaling by {s}"));
    }
    if let (Some(c1), Some(c2)) = (v.certificate(), scaled.certificate()) {
        if c1.class != c2.class {
            return Err(format!("{f} changes class under scaling by {s}"));
        }
    }
    let mut traded = f.clone();
    traded.a = traded.a.mul(&Scalar::Exact(k.clone()));
    traded.x = traded.x.div(&Scalar::Exact(k.clone())).map_err(|e| e.to_string())?;
    if v.kind() != classify(&traded)?.kind() {
        return Err(format!("{f} and {traded} have the same ax but different kinds"));
    }
    Ok(())
}
