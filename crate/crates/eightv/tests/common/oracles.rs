//! Independent exhaustive oracles used by the oracle and acceptance tests.

use eightv::classes::{in_a_table, in_p_table};
use eightv::numeric::{Cyclo8, Rational, Scalar};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn bitv(x: usize, k: usize, n: usize) -> usize {
    (x >> (n - 1 - k)) & 1
}

pub fn affine_oracle(v: &[Cyclo8]) -> bool {
    let n = v.len().trailing_zeros() as usize;
    let support: Vec<usize> = (0..v.len()).filter(|&x| !v[x].is_zero()).collect();
    let Some(&s0) = support.first() else { return true };
    // affine iff closed under x ⊕ y ⊕ z
    for &p in &support {
        for &q in &support {
            if v[s0 ^ p ^ q].is_zero() {
                return false;
            }
        }
    }
    let mut expo = vec![0u8; v.len()];
    for &x in &support {
        match v[x].div(&v[s0]).unwrap().as_power_of_i() {
            Some(e) => expo[x] = e,
            None => return false,
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    for lin in 0..4usize.pow(n as u32) {
        for cross in 0..1usize << pairs.len() {
            let q = |x: usize| {
                let mut t = 0usize;
                for k in 0..n {
                    t += ((lin / 4usize.pow(k as u32)) % 4) * bitv(x, k, n);
                }
                for (m, &(i, j)) in pairs.iter().enumerate() {
                    t += 2 * ((cross >> m) & 1) * bitv(x, i, n) * bitv(x, j, n);
                }
                t
            };
            let base = q(s0);
            if support.iter().all(|&x| (q(x) + 4 - base % 4) % 4 == expo[x] as usize) {
                return true;
            }
        }
    }
    false
}

pub fn random_affine_table(rng: &mut StdRng, n: usize) -> Vec<Cyclo8> {
    let dim = rng.gen_range(0..=n);
    let basis: Vec<usize> = (0..dim).map(|_| rng.gen_range(0..1usize << n)).collect();
    let offset = rng.gen_range(0..1usize << n);
    let lin: Vec<usize> = (0..n).map(|_| rng.gen_range(0..4)).collect();
    let cross: Vec<Vec<bool>> = (0..n).map(|_| (0..n).map(|_| rng.gen_bool(0.5)).collect()).collect();
    let lam = Cyclo8::zeta_pow(rng.gen_range(0..8)).scale(&Rational::new(rng.gen_range(1..5), 1).unwrap());
    let mut v = vec![Cyclo8::zero(); 1 << n];
    for comb in 0..1usize << dim {
        let mut x = offset;
        for (j, &b) in basis.iter().enumerate() {
            if (comb >> j) & 1 == 1 {
                x ^= b;
            }
        }
        let mut t = 0;
        for k in 0..n {
            t += lin[k] * bitv(x, k, n);
            for l in k + 1..n {
                t += 2 * usize::from(cross[k][l]) * bitv(x, k, n) * bitv(x, l, n);
            }
        }
        v[x] = lam.mul_i_pow(t as i64);
    }
    v
}

pub fn small_value(rng: &mut StdRng) -> Cyclo8 {
    match rng.gen_range(0..6) {
        0 | 1 => Cyclo8::zero(),
        2 => Cyclo8::i_pow(rng.gen_range(0..4)),
        3 => Cyclo8::zeta_pow(rng.gen_range(0..8)),
        4 => Cyclo8::from_int(rng.gen_range(-2..=2)),
        _ => Cyclo8::one(),
    }
}

pub fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = items.split_first() else { return vec![vec![]] };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        for k in 0..p.len() {
            let mut q = p.clone();
            q[k].insert(0, first);
            out.push(q);
        }
        let mut q = p;
        q.insert(0, vec![first]);
        out.push(q);
    }
    out
}

pub fn project(x: usize, n: usize, block: &[usize]) -> usize {
    block.iter().fold(0, |acc, &k| (acc << 1) | bitv(x, k, n))
}

/// f is zero or a product, over some partition of the variables, of factors
/// each supported on a pair of complementary points.

pub fn product_oracle(v: &[Cyclo8]) -> bool {
    let n = v.len().trailing_zeros() as usize;
    let Some(p) = (0..v.len()).find(|&x| !v[x].is_zero()) else { return true };
    let vars: Vec<usize> = (0..n).collect();
    'partition: for part in set_partitions(&vars) {
        let mut factors = Vec::new();
        for block in &part {
            // restrict f to the block with the other variables frozen at p
            let m = block.len();
            let mut t = vec![Cyclo8::zero(); 1 << m];
            for x in 0..v.len() {
                let agrees = (0..n).all(|k| block.contains(&k) || bitv(x, k, n) == bitv(p, k, n));
                if agrees {
                    t[project(x, n, block)] = v[x].clone();
                }
            }
            let sup: Vec<usize> = (0..t.len()).filter(|&y| !t[y].is_zero()).collect();
            let full = (1 << m) - 1;
            if sup.len() > 2 || (sup.len() == 2 && sup[0] ^ sup[1] != full) {
                continue 'partition;
            }
            factors.push(t);
        }
        let norm = v[p].pow(part.len() as u64 - 1);
        let ok = (0..v.len()).all(|x| {
            let prod = part.iter().zip(&factors).fold(Cyclo8::one(), |acc, (b, t)| &acc * &t[project(x, n, b)]);
            prod == &v[x] * &norm
        });
        if ok {
            return true;
        }
    }
    false
}

pub fn random_product_table(rng: &mut StdRng, n: usize) -> Vec<Cyclo8> {
    let vars: Vec<usize> = (0..n).collect();
    let parts = set_partitions(&vars);
    let part = &parts[rng.gen_range(0..parts.len())];
    let blocks: Vec<(Vec<usize>, usize, Cyclo8, Cyclo8)> = part
        .iter()
        .map(|b| (b.clone(), rng.gen_range(0..1usize << b.len()), small_value(rng), small_value(rng)))
        .collect();
    (0..1usize << n)
        .map(|x| {
            blocks.iter().fold(Cyclo8::one(), |acc, (b, u, p, q)| {
                let y = project(x, n, b);
                let full = (1 << b.len()) - 1;
                let val = if y == *u {
                    p.clone()
                } else if y == u ^ full {
                    q.clone()
                } else {
                    Cyclo8::zero()
                };
                &acc * &val
            })
        })
        .collect()
}

pub fn eulerian_orientations(n: usize, edges: &[(usize, usize)]) -> u64 {
    (0..1u64 << edges.len())
        .filter(|mask| {
            let mut bal = vec![0i32; n];
            for (e, &(u, v)) in edges.iter().enumerate() {
                let (s, t) = if (mask >> e) & 1 == 1 { (u, v) } else { (v, u) };
                bal[s] += 1;
                bal[t] -= 1;
            }
            bal.iter().all(|&b| b == 0)
        })
        .count() as u64
}

pub fn int(s: Scalar) -> i64 {
    let c = s.exact().unwrap().as_rational().expect("rational").clone();
    assert!(c.is_integer());
    c.numer().try_into().unwrap()
}

pub fn tutte(n: usize, edges: &[(usize, usize)], x: i64, y: i64) -> i64 {
    let Some((&(u, v), rest)) = edges.split_first() else { return 1 };
    if u == v {
        return y * tutte(n, rest, x, y);
    }
    let connected_without = {
        let mut reach = vec![false; n];
        let mut stack = vec![u];
        reach[u] = true;
        while let Some(a) = stack.pop() {
            for &(p, q) in rest {
                for (s, t) in [(p, q), (q, p)] {
                    if s == a && !reach[t] {
                        reach[t] = true;
                        stack.push(t);
                    }
                }
            }
        }
        reach[v]
    };
    let contracted: Vec<(usize, usize)> = rest
        .iter()
        .map(|&(p, q)| (if p == v { u } else { p }, if q == v { u } else { q }))
        .collect();
    if !connected_without {
        return x * tutte(n, &contracted, x, y);
    }
    tutte(n, rest, x, y) + tutte(n, &contracted, x, y)
}


/// Random tables checked against the 𝒜 oracle; returns (members, total).
pub fn affine_sweep(seed: u64, count: usize) -> Result<(usize, usize), String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut yes = 0;
    for _ in 0..count {
        let n = rng.gen_range(1..=4);
        let mut v = if rng.gen_bool(0.6) {
            random_affine_table(&mut rng, n)
        } else {
            (0..1 << n).map(|_| small_value(&mut rng)).collect()
        };
        if rng.gen_bool(0.2) {
            let k = rng.gen_range(0..v.len());
            v[k] = small_value(&mut rng);
        }
        let got = in_a_table(&v);
        if got.is_some() != affine_oracle(&v) {
            return Err(format!("in_A disagrees with the oracle on {v:?}"));
        }
        if let Some(cert) = got {
            if cert.reconstruct().map_err(|e| e.to_string())? != v {
                return Err(format!("certificate does not reconstruct {v:?}"));
            }
            yes += 1;
        }
    }
    Ok((yes, count))
}

/// Random tables checked against the 𝒫 oracle; returns (members, total).
pub fn product_sweep(seed: u64, count: usize) -> Result<(usize, usize), String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut yes = 0;
    for _ in 0..count {
        let n = rng.gen_range(1..=3);
        let mut v = if rng.gen_bool(0.6) {
            random_product_table(&mut rng, n)
        } else {
            (0..1 << n).map(|_| small_value(&mut rng)).collect()
        };
        if rng.gen_bool(0.15) {
            let k = rng.gen_range(0..v.len());
            v[k] = small_value(&mut rng);
        }
        let got = in_p_table(&v);
        if got.is_some() != product_oracle(&v) {
            return Err(format!("in_P disagrees with the oracle on {v:?}"));
        }
        if let Some(dec) = got {
            if dec.reconstruct().map_err(|e| e.to_string())? != v {
                return Err(format!("decomposition does not reconstruct {v:?}"));
            }
            yes += 1;
        }
    }
    Ok((yes, count))
}
