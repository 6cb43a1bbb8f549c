#![allow(dead_code)]

pub mod fuzz;
pub mod gadget_forms;
pub mod oracles;

use eightv::evaluate::Grid;
use eightv::numeric::{Cyclo8, Rational};
use eightv::signatures::{EightVertexSig, Signature};
use proptest::prelude::*;

/// Small rational.
pub fn rational() -> impl Strategy<Value = Cyclo8> {
    (-6i64..=6, 1i64..=4).prop_map(|(p, q)| Cyclo8::from_rational(Rational::new(p, q).unwrap()))
}

pub fn nonzero_rational() -> impl Strategy<Value = Cyclo8> {
    rational().prop_filter("nonzero", |c| !c.is_zero())
}

/// General element c₀ + c₁ζ + c₂ζ² + c₃ζ³ with small rational coefficients.
pub fn cyclo() -> impl Strategy<Value = Cyclo8> {
    [rational(), rational(), rational(), rational()].prop_map(|[a, b, c, d]| {
        let r = |x: &Cyclo8| x.as_rational().unwrap().clone();
        Cyclo8::new(r(&a), r(&b), r(&c), r(&d))
    })
}

pub fn nonzero_cyclo() -> impl Strategy<Value = Cyclo8> {
    cyclo().prop_filter("nonzero", |c| !c.is_zero())
}

/// Entries from {0, ±1, ±i, ±2, ±α} as in the fuzzing brief.
pub fn small_entry() -> impl Strategy<Value = Cyclo8> {
    prop_oneof![
        3 => Just(Cyclo8::zero()),
        2 => (0i64..4).prop_map(Cyclo8::i_pow),
        1 => prop_oneof![Just(2i64), Just(-2)].prop_map(Cyclo8::from_int),
        1 => prop_oneof![Just(1i64), Just(5)].prop_map(Cyclo8::zeta_pow),
    ]
}

pub fn small_eight() -> impl Strategy<Value = EightVertexSig> {
    proptest::array::uniform8(small_entry()).prop_map(EightVertexSig::from_exact)
}

pub fn rational_eight() -> impl Strategy<Value = EightVertexSig> {
    proptest::array::uniform8(prop_oneof![1 => Just(Cyclo8::zero()), 3 => rational()])
        .prop_map(EightVertexSig::from_exact)
}

pub fn table(arity: usize) -> impl Strategy<Value = Vec<Cyclo8>> {
    proptest::collection::vec(small_entry(), 1 << arity)
}

/// A perfect matching of the 4n ports of n arity-4 vertices named `f`.
pub fn four_regular_grid(max_vertices: usize) -> impl Strategy<Value = Grid> {
    (1..=max_vertices)
        .prop_flat_map(|n| (Just(n), Just((0..4 * n).collect::<Vec<_>>()).prop_shuffle()))
        .prop_map(|(n, ports)| {
            let mut g = Grid::new();
            g.add_signature("f", Signature::zero(4));
            for _ in 0..n {
                g.add_vertex("f");
            }
            for pair in ports.chunks(2) {
                g.add_edge((pair[0] / 4, pair[0] % 4), (pair[1] / 4, pair[1] % 4));
            }
            g
        })
}

pub fn with_f(g: &Grid, f: &EightVertexSig) -> Grid {
    g.with_signature("f", f.to_signature())
}

pub fn bitv(x: usize, k: usize, n: usize) -> usize {
    (x >> (n - 1 - k)) & 1
}

/// λ·χ_{offset + span(basis)}·i^{Q} with random data.
pub fn affine_table() -> impl Strategy<Value = Signature> {
    (1usize..=4).prop_flat_map(|n| {
        (
            Just(n),
            prop_oneof![
                1 => proptest::collection::vec(0usize..1 << n, 0..=n),
                3 => proptest::collection::vec(0usize..1 << n, n..=n + 2),
            ],
            0usize..1 << n,
            proptest::collection::vec(0usize..4, n),
            proptest::collection::vec(any::<bool>(), n * n),
            0i64..8,
            1i64..4,
        )
            .prop_map(|(n, basis, offset, lin, cross, phase, size)| {
                let lam = Cyclo8::zeta_pow(phase).scale(&eightv::numeric::Rational::new(size, 1).unwrap());
                let mut v = vec![Cyclo8::zero(); 1 << n];
                for comb in 0..1usize << basis.len() {
                    let x = basis.iter().enumerate().fold(offset, |x, (j, &b)| if (comb >> j) & 1 == 1 { x ^ b } else { x });
                    let mut t = 0;
                    for k in 0..n {
                        t += lin[k] * bitv(x, k, n);
                        for l in k + 1..n {
                            t += 2 * usize::from(cross[k * n + l]) * bitv(x, k, n) * bitv(x, l, n);
                        }
                    }
                    v[x] = lam.mul_i_pow(t as i64);
                }
                Signature::from_exact(n, v).unwrap()
            })
    })
}

/// Random wiring of affine vertices, at most 16 edges.
pub fn affine_grid() -> impl Strategy<Value = Grid> {
    proptest::collection::vec(affine_table(), 1..=8)
        .prop_map(|mut sigs| {
            let mut ports: usize = sigs.iter().map(|s| s.arity).sum();
            while ports > 32 {
                ports -= sigs.pop().unwrap().arity;
            }
            if ports % 2 == 1 {
                sigs.push(Signature::from_ints(1, &[1, -1]).unwrap());
            }
            sigs
        })
        .prop_flat_map(|sigs| {
            let ports: Vec<(usize, usize)> =
                sigs.iter().enumerate().flat_map(|(v, s)| (0..s.arity).map(move |p| (v, p))).collect();
            (Just(sigs), Just(ports).prop_shuffle())
        })
        .prop_map(|(sigs, ports)| {
            let mut g = Grid::new();
            for (k, s) in sigs.into_iter().enumerate() {
                let name = format!("s{k}");
                g.add_signature(&name, s);
                g.add_vertex(&name);
            }
            for pair in ports.chunks(2) {
                g.add_edge(pair[0], pair[1]);
            }
            g
        })
}

