//! Recovering a grid value at an arbitrary λ from chain gadgets.
//!
//! g_λ has matrix 2·P·diag(1,1,λ,λ)·P. A chain of 4s copies of
//! f_t = (a,b,c,d,w,z,y,x) = (1,t,1,t,t,1,t,1) equals ((t+1)^{4s}/2)·g_{−ρ^{4s}}
//! with ρ = (t−1)/(t+1). The grid value with every slot set to g_λ is a
//! polynomial of degree m in λ, so m+1 chain lengths determine it.

use serde::{Deserialize, Serialize};

use crate::gadgets::{chain_power, View};
use crate::numeric::{Cyclo8, Scalar};
use crate::signatures::{EightVertexSig, Signature};

use super::brute::{brute_force_with, EvalOptions};
use super::grid::Grid;
use super::EvalError;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InterpolationReport {
    pub slots: usize,
    /// (−ρ^{4s}, grid value with the 4s-chain in every slot) for s = 1…m+1.
    pub samples: Vec<(Cyclo8, Cyclo8)>,
    /// Coefficients of the grid value as a polynomial in λ.
    pub coefficients: Vec<Cyclo8>,
    pub value: Cyclo8,
    /// Brute force with g_λ substituted directly.
    pub direct: Cyclo8,
}

pub fn g_lambda(lambda: &Cyclo8) -> Signature {
    let one = Cyclo8::one();
    let p = Scalar::Exact(&one + lambda);
    let q = Scalar::Exact(&one - lambda);
    let mut values = vec![Scalar::zero(); 16];
    for (idx, v) in [(0b0000, &p), (0b0011, &q), (0b0101, &p), (0b0110, &q), (0b1001, &q), (0b1010, &p), (0b1100, &q), (0b1111, &p)] {
        values[idx] = v.clone();
    }
    Signature::new(4, values).expect("arity 4")
}

/// Two slots named `slot` and two copies of f = (1,2,3,1,2,1,1,2), eight edges.
pub fn demo_grid() -> Grid {
    let mut g = Grid::new();
    g.add_signature("slot", Signature::zero(4));
    g.add_signature("f", EightVertexSig::from_ints([1, 2, 3, 1, 2, 1, 1, 2]).to_signature());
    let (s0, s1, f0, f1) = (g.add_vertex("slot"), g.add_vertex("slot"), g.add_vertex("f"), g.add_vertex("f"));
    for (u, v, p, q) in [(s0, f0, 0, 0), (s0, f0, 1, 1), (s0, s1, 2, 2), (s0, f1, 3, 3), (s1, f1, 0, 0), (s1, f1, 1, 1), (s1, f0, 3, 2), (f0, f1, 3, 2)] {
        g.add_edge((u, p), (v, q));
    }
    g
}

pub fn chain_signature(t: &Cyclo8) -> EightVertexSig {
    let one = Cyclo8::one();
    EightVertexSig::from_exact([one.clone(), t.clone(), one.clone(), t.clone(), t.clone(), one.clone(), t.clone(), one])
}

fn solve(mut a: Vec<Vec<Cyclo8>>, mut b: Vec<Cyclo8>) -> Option<Vec<Cyclo8>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].inv().ok()?;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let k = &a[r][col] * &inv;
            for c in col..n {
                let t = &k * &a[col][c];
                a[r][c] = &a[r][c] - &t;
            }
            let t = &k * &b[col];
            b[r] = &b[r] - &t;
        }
    }
    Some((0..n).map(|r| &b[r] * &a[r][r].inv().expect("pivot")).collect())
}

fn exact_brute(grid: &Grid, opts: &EvalOptions) -> Result<Cyclo8, EvalError> {
    Ok(brute_force_with(grid, opts)?.exact()?.clone())
}

pub fn interpolation_demo(
    grid: &Grid,
    slot: &str,
    lambda: &Cyclo8,
    t: &Cyclo8,
    opts: &EvalOptions,
) -> Result<InterpolationReport, EvalError> {
    let one = Cyclo8::one();
    if *t == one || *t == -&one || (t + &t.conj()).is_zero() {
        return Err(EvalError::BadChainParameter);
    }
    let m = grid.vertices.iter().filter(|v| v.sig == slot).count();
    let rho = (t - &one).div(&(t + &one))?;
    let f = chain_signature(t).to_signature();
    let two_inv = Cyclo8::from_int(2).inv()?;
    let mut samples = Vec::with_capacity(m + 1);
    for s in 1..=(m as u64 + 1) {
        let chain = chain_power(&f, View::STANDARD, 4 * s)?.signature;
        let value = exact_brute(&grid.with_signature(slot, chain), opts)?;
        let scale = (&(t + &one).pow(4 * s) * &two_inv).pow(m as u64);
        let x = -&rho.pow(4 * s);
        samples.push((x, value.div(&scale)?));
    }
    let rows: Vec<Vec<Cyclo8>> = samples.iter().map(|(x, _)| (0..=m).map(|j| x.pow(j as u64)).collect()).collect();
    let rhs: Vec<Cyclo8> = samples.iter().map(|(_, y)| y.clone()).collect();
    let coefficients = solve(rows, rhs).ok_or(EvalError::SingularSystem)?;
    let mut value = Cyclo8::zero();
    for c in coefficients.iter().rev() {
        value = &(&value * lambda) + c;
    }
    let direct = exact_brute(&grid.with_signature(slot, g_lambda(lambda)), opts)?;
    Ok(InterpolationReport { slots: m, samples, coefficients, value, direct })
}
