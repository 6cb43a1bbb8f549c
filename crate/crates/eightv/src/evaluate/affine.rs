//! Polynomial-time evaluation of grids whose signatures all lie in 𝒜.
//!
//! The grid value is λ · Σ_{x : Ax = b} i^{Q(x)} over the edge variables,
//! with Q a Z₄ quadratic form whose cross terms are even. Linear constraints
//! are solved by substitution and the remaining variables are summed out one
//! at a time.

use std::collections::BTreeSet;

use crate::classes::in_a;
use crate::numeric::{Cyclo8, Scalar};

use super::grid::Grid;
use super::EvalError;

/// c ⊕ (⊕_{j ∈ vars} x_j).
#[derive(Clone, Debug, Default)]
struct Lin {
    vars: BTreeSet<usize>,
    c: bool,
}

impl Lin {
    fn var(x: usize, c: bool) -> Self {
        Lin { vars: BTreeSet::from([x]), c }
    }

    fn xor(&mut self, o: &Lin) {
        for &v in &o.vars {
            if !self.vars.remove(&v) {
                self.vars.insert(v);
            }
        }
        self.c ^= o.c;
    }
}

struct Quad {
    konst: u8,
    lin: Vec<u8>,
    cross: Vec<Vec<bool>>,
}

impl Quad {
    fn new(n: usize) -> Self {
        Quad { konst: 0, lin: vec![0; n], cross: vec![vec![false; n]; n] }
    }

    fn add_const(&mut self, k: u8) {
        self.konst = (self.konst + k) % 4;
    }

    fn add_lin(&mut self, x: usize, k: u8) {
        self.lin[x] = (self.lin[x] + k) % 4;
    }

    /// Adds 2·x·y.
    fn add_cross2(&mut self, x: usize, y: usize) {
        if x == y {
            self.add_lin(x, 2);
        } else {
            self.cross[x][y] ^= true;
            self.cross[y][x] ^= true;
        }
    }

    /// Adds k times the 0/1 integer value of `l`, using
    /// ⊕S = Σ_{S} x − 2·Σ_{pairs} x·x′ (mod 4).
    fn add_xor_int(&mut self, k: u8, l: &Lin) {
        let k = k % 4;
        let s = if l.c {
            self.add_const(k);
            (4 - k) % 4
        } else {
            k
        };
        let vars: Vec<usize> = l.vars.iter().copied().collect();
        for &x in &vars {
            self.add_lin(x, s);
        }
        if s % 2 == 1 {
            for (i, &x) in vars.iter().enumerate() {
                for &y in &vars[i + 1..] {
                    self.add_cross2(x, y);
                }
            }
        }
    }

    /// Adds 2·l₁·l₂, where only parities matter.
    fn add_double_product(&mut self, l1: &Lin, l2: &Lin) {
        if l1.c && l2.c {
            self.add_const(2);
        }
        if l1.c {
            for &y in &l2.vars {
                self.add_lin(y, 2);
            }
        }
        if l2.c {
            for &x in &l1.vars {
                self.add_lin(x, 2);
            }
        }
        for &x in &l1.vars {
            for &y in &l2.vars {
                self.add_cross2(x, y);
            }
        }
    }

    fn neighbours(&self, x: usize) -> BTreeSet<usize> {
        (0..self.lin.len()).filter(|&q| self.cross[x][q]).collect()
    }

    fn remove(&mut self, x: usize) {
        self.lin[x] = 0;
        for q in 0..self.lin.len() {
            self.cross[x][q] = false;
            self.cross[q][x] = false;
        }
    }

    /// Replaces x_p by the affine form `l` (p not in l).
    fn substitute(&mut self, p: usize, l: &Lin) {
        let a = self.lin[p];
        let nb = self.neighbours(p);
        self.remove(p);
        self.add_xor_int(a, l);
        for q in nb {
            self.add_double_product(l, &Lin::var(q, false));
        }
    }
}

struct State {
    quad: Quad,
    alive: Vec<bool>,
    factor: Cyclo8,
}

impl State {
    /// Imposes ⊕_{S} x = c; returns false when the constraint is unsatisfiable.
    fn constrain(&mut self, mut l: Lin, pending: &mut [Lin]) -> bool {
        let Some(&p) = l.vars.iter().next() else {
            return !l.c;
        };
        l.vars.remove(&p);
        // x_p = c ⊕ (rest)
        self.quad.substitute(p, &l);
        self.alive[p] = false;
        let mut with_p = l.clone();
        with_p.vars.insert(p);
        for other in pending.iter_mut() {
            if other.vars.contains(&p) {
                other.xor(&with_p);
            }
        }
        true
    }

    /// Sums out x: Σ_{x} i^{a·x + 2·x·ℓ}.
    fn eliminate(&mut self, x: usize) -> bool {
        let a = self.quad.lin[x];
        let ell = Lin { vars: self.quad.neighbours(x), c: false };
        self.quad.remove(x);
        self.alive[x] = false;
        match a {
            0 | 2 => {
                self.factor = &self.factor * &Cyclo8::from_int(2);
                let l = Lin { vars: ell.vars, c: a == 2 };
                self.constrain(l, &mut [])
            }
            1 => {
                // 1 + i·(−1)^ℓ = √2·ζ·i^{3ℓ}
                self.factor = &(&self.factor * &Cyclo8::sqrt2()) * &Cyclo8::zeta();
                self.quad.add_xor_int(3, &ell);
                true
            }
            _ => {
                // 1 − i·(−1)^ℓ = √2·ζ⁻¹·i^{ℓ}
                self.factor = &(&self.factor * &Cyclo8::sqrt2()) * &Cyclo8::zeta_pow(-1);
                self.quad.add_xor_int(1, &ell);
                true
            }
        }
    }
}

/// Parity checks cutting out the support: masks h with h·b = 0 for every
/// basis vector b, reported as (h, h·offset).
fn dual_checks(arity: usize, offset: usize, basis: &[usize]) -> Vec<(usize, bool)> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    for h in 1..(1usize << arity) {
        if basis.iter().any(|&b| (h & b).count_ones() % 2 == 1) {
            continue;
        }
        let mut r = h;
        for &c in &chosen {
            let top = usize::BITS - 1 - c.leading_zeros();
            if (r >> top) & 1 == 1 {
                r ^= c;
            }
        }
        if r == 0 {
            continue;
        }
        chosen.push(r);
        chosen.sort_unstable_by(|a, b| b.cmp(a));
        out.push((h, (h & offset).count_ones() % 2 == 1));
    }
    out
}

pub fn affine_eval(grid: &Grid) -> Result<Scalar, EvalError> {
    grid.validate()?;
    let m = grid.edges.len();
    // Port literal: the edge variable, complemented at the second endpoint.
    let mut port_lit: Vec<Vec<Lin>> = grid.arities()?.iter().map(|&n| vec![Lin::default(); n]).collect();
    for (e, &((u, p), (v, q))) in grid.edges.iter().enumerate() {
        port_lit[u][p] = Lin::var(e, false);
        port_lit[v][q] = Lin::var(e, true);
    }
    let mut state = State { quad: Quad::new(m), alive: vec![true; m], factor: Cyclo8::one() };
    let mut constraints = Vec::new();
    for (v, lits) in port_lit.iter().enumerate() {
        let sig = grid.signature_of(v)?;
        let name = &grid.vertices[v].sig;
        let cert = in_a(sig)?.ok_or_else(|| EvalError::NotAffineSignature(name.clone()))?;
        if cert.space.empty {
            return Ok(Scalar::zero());
        }
        state.factor = &state.factor * cert.lambda.exact()?;
        let n = sig.arity;
        state.quad.add_const(cert.a0);
        for (k, &a) in cert.linear.iter().enumerate() {
            state.quad.add_xor_int(a, &lits[k]);
        }
        for &(i, j) in &cert.cross {
            state.quad.add_double_product(&lits[i], &lits[j]);
        }
        for (h, parity) in dual_checks(n, cert.space.offset, &cert.space.basis) {
            let mut l = Lin { vars: BTreeSet::new(), c: parity };
            for (k, lit) in lits.iter().enumerate() {
                if (h >> (n - 1 - k)) & 1 == 1 {
                    l.xor(lit);
                }
            }
            constraints.push(l);
        }
    }
    let mut pending = constraints;
    while !pending.is_empty() {
        let l = pending.remove(0);
        if !state.constrain(l, &mut pending) {
            return Ok(Scalar::zero());
        }
    }
    for x in 0..m {
        if state.alive[x] && !state.eliminate(x) {
            return Ok(Scalar::zero());
        }
    }
    Ok(Scalar::Exact(state.factor.mul_i_pow(state.quad.konst as i64)))
}
