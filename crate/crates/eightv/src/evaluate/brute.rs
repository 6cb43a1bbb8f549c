//! Exhaustive evaluation: the sum over all edge assignments of the product
//! of vertex signature entries.
//!
//! Edge variable σ(e) is read by the first endpoint and its complement by the
//! second. Branches die as soon as a completed vertex reads a zero entry.
//! Exact grids run over integer-coefficient Q(ζ₈) values in i128 and fall
//! back to big rationals on overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::numeric::{ComplexApprox, Cyclo8, Rational, Scalar};

use super::grid::{Endpoint, Grid};
use super::EvalError;

pub const DEFAULT_MAX_EDGES: usize = 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalOptions {
    pub max_edges: usize,
    /// Worker threads; `None` uses the global pool, `Some(1)` stays serial.
    pub threads: Option<usize>,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { max_edges: DEFAULT_MAX_EDGES, threads: None }
    }
}

trait Ring: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
}

/// Element of Z[ζ₈] with machine coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct IntCyclo([i128; 4]);

impl Ring for IntCyclo {
    fn zero() -> Self {
        IntCyclo([0; 4])
    }
    fn one() -> Self {
        IntCyclo([1, 0, 0, 0])
    }
    fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }
    fn add(&self, o: &Self) -> Option<Self> {
        let mut r = [0i128; 4];
        for k in 0..4 {
            r[k] = self.0[k].checked_add(o.0[k])?;
        }
        Some(IntCyclo(r))
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        let mut r = [0i128; 4];
        for i in 0..4 {
            if self.0[i] == 0 {
                continue;
            }
            for j in 0..4 {
                let t = self.0[i].checked_mul(o.0[j])?;
                let k = i + j;
                if k < 4 {
                    r[k] = r[k].checked_add(t)?;
                } else {
                    r[k - 4] = r[k - 4].checked_sub(t)?;
                }
            }
        }
        Some(IntCyclo(r))
    }
}

impl Ring for Cyclo8 {
    fn zero() -> Self {
        Cyclo8::zero()
    }
    fn one() -> Self {
        Cyclo8::one()
    }
    fn is_zero(&self) -> bool {
        Cyclo8::is_zero(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
}

impl Ring for ComplexApprox {
    fn zero() -> Self {
        ComplexApprox::new(0.0, 0.0)
    }
    fn one() -> Self {
        ComplexApprox::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(ComplexApprox::add(self, o))
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(ComplexApprox::mul(self, o))
    }
}

struct Plan<T> {
    edges: Vec<(Endpoint, Endpoint)>,
    arity: Vec<usize>,
    tables: Vec<Vec<T>>,
    /// Vertices whose last port is assigned by edge e.
    completes: Vec<Vec<usize>>,
}

impl<T: Ring> Plan<T> {
    fn set(&self, idx: &mut [usize], e: usize, bit: usize) {
        let ((u, p), (v, q)) = self.edges[e];
        idx[u] ^= bit << (self.arity[u] - 1 - p);
        idx[v] ^= (1 - bit) << (self.arity[v] - 1 - q);
    }

    /// Product of the entries of vertices completed at edge e, or None when one is zero.
    fn close(&self, idx: &[usize], e: usize, acc: &T) -> Result<Option<T>, ()> {
        let mut cur = acc.clone();
        for &v in &self.completes[e] {
            let val = &self.tables[v][idx[v]];
            if val.is_zero() {
                return Ok(None);
            }
            cur = cur.mul(val).ok_or(())?;
        }
        Ok(Some(cur))
    }

    fn dfs(&self, e: usize, acc: &T, idx: &mut [usize]) -> Result<T, ()> {
        if e == self.edges.len() {
            return Ok(acc.clone());
        }
        let mut sum = T::zero();
        for bit in 0..2 {
            self.set(idx, e, bit);
            let next = self.close(idx, e, acc);
            let part = match next {
                Ok(Some(cur)) => self.dfs(e + 1, &cur, idx),
                Ok(None) => Ok(T::zero()),
                Err(()) => Err(()),
            };
            self.set(idx, e, bit);
            sum = sum.add(&part?).ok_or(())?;
        }
        Ok(sum)
    }

    /// Sum over assignments whose first `k` edge bits spell a prefix in `range`.
    fn run_range(&self, k: usize, range: std::ops::Range<usize>) -> Result<T, ()> {
        let mut idx = vec![0usize; self.arity.len()];
        let mut sum = T::zero();
        'prefix: for prefix in range {
            let mut acc = T::one();
            for e in 0..k {
                let bit = (prefix >> (k - 1 - e)) & 1;
                self.set(&mut idx, e, bit);
            }
            for e in 0..k {
                match self.close(&idx, e, &acc)? {
                    Some(cur) => acc = cur,
                    None => {
                        for e2 in 0..k {
                            self.set(&mut idx, e2, (prefix >> (k - 1 - e2)) & 1);
                        }
                        continue 'prefix;
                    }
                }
            }
            let part = self.dfs(k, &acc, &mut idx);
            for e in 0..k {
                self.set(&mut idx, e, (prefix >> (k - 1 - e)) & 1);
            }
            sum = sum.add(&part?).ok_or(())?;
        }
        Ok(sum)
    }

    fn run(&self, threads: Option<usize>) -> Result<T, ()> {
        let workers = threads.unwrap_or_else(rayon::current_num_threads).max(1);
        if workers == 1 || self.edges.len() < 8 {
            return self.run_range(0, 0..1);
        }
        let k = (usize::BITS - (workers * 8 - 1).leading_zeros()) as usize;
        let k = k.min(self.edges.len());
        let total = 1usize << k;
        let chunk = total.div_ceil(workers);
        let ranges: Vec<_> = (0..total).step_by(chunk).map(|s| s..(s + chunk).min(total)).collect();
        let job = || ranges.par_iter().map(|r| self.run_range(k, r.clone())).collect::<Vec<_>>();
        let parts = match threads {
            Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|_| ())?.install(job),
            None => job(),
        };
        // Contiguous ranges merged in index order.
        let mut sum = T::zero();
        for p in parts {
            sum = sum.add(&p?).ok_or(())?;
        }
        Ok(sum)
    }
}

/// Edges reordered so that vertices close early in the search.
fn edge_order(grid: &Grid) -> Vec<(Endpoint, Endpoint)> {
    let n = grid.vertices.len();
    let mut adj = vec![Vec::new(); n];
    for &((u, _), (v, _)) in &grid.edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut rank = vec![usize::MAX; n];
    let mut next = 0;
    for start in 0..n {
        if rank[start] != usize::MAX {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([start]);
        rank[start] = next;
        next += 1;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if rank[v] == usize::MAX {
                    rank[v] = next;
                    next += 1;
                    queue.push_back(v);
                }
            }
        }
    }
    let mut edges = grid.edges.clone();
    edges.sort_by_key(|&((u, _), (v, _))| (rank[u].max(rank[v]), rank[u].min(rank[v])));
    edges
}

fn build_plan<T: Ring>(grid: &Grid, tables: Vec<Vec<T>>) -> Result<Plan<T>, EvalError> {
    let arity = grid.arities()?;
    let edges = edge_order(grid);
    let mut last = vec![None; arity.len()];
    for (e, &((u, _), (v, _))) in edges.iter().enumerate() {
        last[u] = Some(e);
        last[v] = Some(e);
    }
    let mut completes = vec![Vec::new(); edges.len()];
    for (v, l) in last.iter().enumerate() {
        if let Some(e) = l {
            completes[*e].push(v);
        }
    }
    Ok(Plan { edges, arity, tables, completes })
}

fn lcm_denominator(values: &[Cyclo8]) -> BigInt {
    let mut d = BigInt::one();
    for v in values {
        for c in v.coeffs() {
            d = d.lcm(c.denom());
        }
    }
    d
}

fn int_table(values: &[Cyclo8], d: &BigInt) -> Option<Vec<IntCyclo>> {
    values
        .iter()
        .map(|v| {
            let mut out = [0i128; 4];
            for (k, c) in v.coeffs().iter().enumerate() {
                let scaled = c.numer() * (d / c.denom());
                out[k] = scaled.to_i128()?;
            }
            Some(IntCyclo(out))
        })
        .collect()
}

fn exact_value(grid: &Grid, threads: Option<usize>) -> Result<Cyclo8, EvalError> {
    let mut exact_tables = Vec::with_capacity(grid.vertices.len());
    for v in 0..grid.vertices.len() {
        exact_tables.push(grid.signature_of(v)?.exact_values()?);
    }
    let mut denom = BigInt::one();
    let mut ints = Some(Vec::with_capacity(exact_tables.len()));
    for t in &exact_tables {
        let d = lcm_denominator(t);
        ints = ints.and_then(|mut acc: Vec<Vec<IntCyclo>>| {
            acc.push(int_table(t, &d)?);
            Some(acc)
        });
        denom *= d;
    }
    if let Some(tables) = ints {
        if let Ok(IntCyclo(c)) = build_plan(grid, tables)?.run(threads) {
            let scale = Rational::from(BigRational::new(BigInt::one(), denom));
            let c = c.map(|x| Rational::from(BigRational::from_integer(BigInt::from(x))));
            return Ok(Cyclo8::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()).scale(&scale));
        }
    }
    build_plan(grid, exact_tables)?.run(threads).map_err(|_| EvalError::Overflow)
}

pub fn brute_force(grid: &Grid) -> Result<Scalar, EvalError> {
    brute_force_with(grid, &EvalOptions::default())
}

pub fn brute_force_with(grid: &Grid, opts: &EvalOptions) -> Result<Scalar, EvalError> {
    grid.validate()?;
    if grid.edges.len() > opts.max_edges {
        return Err(EvalError::TooManyEdges { edges: grid.edges.len(), max: opts.max_edges });
    }
    let exact = (0..grid.vertices.len()).all(|v| grid.signature_of(v).map(|s| s.is_exact()).unwrap_or(false));
    if exact {
        return Ok(Scalar::Exact(exact_value(grid, opts.threads)?));
    }
    let mut tables = Vec::with_capacity(grid.vertices.len());
    for v in 0..grid.vertices.len() {
        tables.push(grid.signature_of(v)?.values.iter().map(Scalar::to_approx).collect());
    }
    let value: ComplexApprox = build_plan(grid, tables)?.run(opts.threads).map_err(|_| EvalError::Overflow)?;
    Ok(Scalar::Approx(value))
}
