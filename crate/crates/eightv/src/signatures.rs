//! Signature value tables, the eight-vertex parameterization, the S4 action
//! on variables and holographic transformations.
//!
//! Tables are indexed lexicographically: input `(x₁,…,xₙ)` sits at
//! `Σ xₖ·2^(n−k)`, so x₁ is the most significant bit.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{Cyclo8, NumericError, Scalar};

pub const MAX_ARITY: usize = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SigError {
    #[error("arity {0} outside 1..=6")]
    BadArity(usize),
    #[error("value table has length {got}, expected {expected}")]
    BadLength { got: usize, expected: usize },
    #[error("({0:?}, {1:?}) is not a permutation of the four variables")]
    BadPermutation((usize, usize), (usize, usize)),
    #[error("half-diagonal transform needs an even-weight support")]
    OddSupportWithHalfTransform,
    #[error("signature has support on an odd-weight input")]
    OddSupport,
    #[error("expected arity {expected}, got {got}")]
    WrongArity { got: usize, expected: usize },
    #[error("eight-vertex text needs 8 comma-separated entries, got {0}")]
    EightEntries(usize),
    #[error("singular transform")]
    Singular,
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Bit of variable `k` (0-based) in table index `idx` of an arity-`n` table.
#[inline]
pub fn bit(idx: usize, k: usize, n: usize) -> usize {
    (idx >> (n - 1 - k)) & 1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Signature {
    pub arity: usize,
    pub values: Vec<Scalar>,
}

impl Signature {
    pub fn new(arity: usize, values: Vec<Scalar>) -> Result<Self, SigError> {
        if arity == 0 || arity > MAX_ARITY {
            return Err(SigError::BadArity(arity));
        }
        if values.len() != 1 << arity {
            return Err(SigError::BadLength { got: values.len(), expected: 1 << arity });
        }
        Ok(Signature { arity, values })
    }

    pub fn from_exact(arity: usize, values: Vec<Cyclo8>) -> Result<Self, SigError> {
        Signature::new(arity, values.into_iter().map(Scalar::Exact).collect())
    }

    pub fn from_ints(arity: usize, values: &[i64]) -> Result<Self, SigError> {
        Signature::new(arity, values.iter().map(|&v| Scalar::int(v)).collect())
    }

    pub fn zero(arity: usize) -> Self {
        Signature { arity, values: vec![Scalar::zero(); 1 << arity] }
    }

    /// The equality signature (=ₙ).
    pub fn equality(arity: usize) -> Self {
        let mut s = Signature::zero(arity);
        s.values[0] = Scalar::one();
        s.values[(1 << arity) - 1] = Scalar::one();
        s
    }

    /// The binary disequality (≠₂).
    pub fn disequality() -> Self {
        Signature::from_ints(2, &[0, 1, 1, 0]).unwrap()
    }

    pub fn is_exact(&self) -> bool {
        self.values.iter().all(Scalar::is_exact)
    }

    pub fn exact_values(&self) -> Result<Vec<Cyclo8>, NumericError> {
        self.values.iter().map(|v| v.exact().cloned()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.values.len()).filter(|&k| !self.values[k].is_zero()).collect()
    }

    pub fn scale(&self, s: &Scalar) -> Signature {
        Signature { arity: self.arity, values: self.values.iter().map(|v| v.mul(s)).collect() }
    }

    /// Entry-wise tensor product, variables of `self` first.
    pub fn tensor(&self, other: &Signature) -> Result<Signature, SigError> {
        let n = self.arity + other.arity;
        let mut values = Vec::with_capacity(1 << n);
        for u in &self.values {
            for v in &other.values {
                values.push(u.mul(v));
            }
        }
        Signature::new(n, values)
    }

    /// Exact equality up to a nonzero scalar factor.
    pub fn proportional(&self, other: &Signature) -> bool {
        match (self.exact_values(), other.exact_values()) {
            (Ok(a), Ok(b)) => proportional(&a, &b),
            _ => false,
        }
    }
}

/// True when `b = λ·a` for some nonzero λ (two zero tables count as proportional).
pub fn proportional(a: &[Cyclo8], b: &[Cyclo8]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(p) = a.iter().position(|v| !v.is_zero()) else {
        return b.iter().all(Cyclo8::is_zero);
    };
    if b[p].is_zero() {
        return false;
    }
    a.iter().zip(b).all(|(u, v)| &(u * &b[p]) == &(v * &a[p]))
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join("; "))
    }
}

/// Index in a 4-ary table of each of the eight named entries, in the
/// order (a,b,c,d,w,z,y,x).
pub const EIGHT_INDEX: [usize; 8] = [0b0000, 0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100, 0b1111];

/// The eight entries (a,b,c,d,w,z,y,x) of
/// M(f) = [[a,0,0,b],[0,c,d,0],[0,w,z,0],[y,0,0,x]].
#[derive(Clone, Debug, PartialEq)]
pub struct EightVertexSig {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
    pub w: Scalar,
    pub z: Scalar,
    pub y: Scalar,
    pub x: Scalar,
}

impl EightVertexSig {
    pub fn from_entries(e: [Scalar; 8]) -> Self {
        let [a, b, c, d, w, z, y, x] = e;
        EightVertexSig { a, b, c, d, w, z, y, x }
    }

    pub fn from_exact(e: [Cyclo8; 8]) -> Self {
        EightVertexSig::from_entries(e.map(Scalar::Exact))
    }

    pub fn from_ints(e: [i64; 8]) -> Self {
        EightVertexSig::from_entries(e.map(Scalar::int))
    }

    pub fn entries(&self) -> [Scalar; 8] {
        [
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            self.w.clone(),
            self.z.clone(),
            self.y.clone(),
            self.x.clone(),
        ]
    }

    pub fn exact_entries(&self) -> Result<[Cyclo8; 8], NumericError> {
        let e = self.entries();
        let mut out: [Cyclo8; 8] = Default::default();
        for (k, v) in e.iter().enumerate() {
            out[k] = v.exact()?.clone();
        }
        Ok(out)
    }

    pub fn is_exact(&self) -> bool {
        self.entries().iter().all(Scalar::is_exact)
    }

    pub fn to_signature(&self) -> Signature {
        let mut s = Signature::zero(4);
        for (v, &idx) in self.entries().into_iter().zip(EIGHT_INDEX.iter()) {
            s.values[idx] = v;
        }
        s
    }

    /// Reads the eight entries back; fails if the table has odd-weight support.
    pub fn from_signature(f: &Signature) -> Result<Self, SigError> {
        if f.arity != 4 {
            return Err(SigError::WrongArity { got: f.arity, expected: 4 });
        }
        if (0..16usize).any(|k| k.count_ones() % 2 == 1 && !f.values[k].is_zero()) {
            return Err(SigError::OddSupport);
        }
        Ok(EightVertexSig::from_entries(EIGHT_INDEX.map(|k| f.values[k].clone())))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        EightVertexSig::from_entries(self.entries().map(|v| v.mul(s)))
    }

    /// Inner pairs (b,y), (c,z), (d,w).
    pub fn inner_pairs(&self) -> [(Scalar, Scalar); 3] {
        [
            (self.b.clone(), self.y.clone()),
            (self.c.clone(), self.z.clone()),
            (self.d.clone(), self.w.clone()),
        ]
    }

    pub fn from_pairs(a: Scalar, x: Scalar, p: [(Scalar, Scalar); 3]) -> Self {
        let [(b, y), (c, z), (d, w)] = p;
        EightVertexSig { a, b, c, d, w, z, y, x }
    }

    /// 4×4 signature matrix M(f).
    pub fn matrix(&self) -> [[Scalar; 4]; 4] {
        let o = Scalar::zero;
        [
            [self.a.clone(), o(), o(), self.b.clone()],
            [o(), self.c.clone(), self.d.clone(), o()],
            [o(), self.w.clone(), self.z.clone(), o()],
            [self.y.clone(), o(), o(), self.x.clone()],
        ]
    }
}

impl fmt::Display for EightVertexSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries().iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Text form "a,b,c,d,w,z,y,x". Entries that need the coefficient-list
/// spelling must be parenthesized, e.g. "(0,1,0,0)".
impl FromStr for EightVertexSig {
    type Err = SigError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts = split_top_level(s);
        if parts.len() != 8 {
            return Err(SigError::EightEntries(parts.len()));
        }
        let mut e: Vec<Scalar> = Vec::with_capacity(8);
        for p in parts {
            e.push(p.parse()?);
        }
        let e: [Scalar; 8] = e.try_into().expect("length checked");
        Ok(EightVertexSig::from_entries(e))
    }
}

/// Splits on commas that are not inside parentheses or brackets.
pub fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..k].trim());
                start = k + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

/// Field-wise JSON form `{"a": "...", "b": "...", ...}`.
#[derive(Serialize, Deserialize)]
struct EightVertexJson {
    a: Scalar,
    b: Scalar,
    c: Scalar,
    d: Scalar,
    w: Scalar,
    z: Scalar,
    y: Scalar,
    x: Scalar,
}

impl Serialize for EightVertexSig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let [a, b, c, d, w, z, y, x] = self.entries();
        EightVertexJson { a, b, c, d, w, z, y, x }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for EightVertexSig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = EightVertexJson::deserialize(d)?;
        Ok(EightVertexSig::from_entries([j.a, j.b, j.c, j.d, j.w, j.z, j.y, j.x]))
    }
}

/// Permutation σ of the four variables, stored 0-based: `perm[k] = σ(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VarPerm(pub [usize; 4]);

impl VarPerm {
    pub fn identity() -> Self {
        VarPerm([0, 1, 2, 3])
    }

    pub fn new(p: [usize; 4]) -> Option<Self> {
        let mut seen = [false; 4];
        for &v in &p {
            if v >= 4 || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(VarPerm(p))
    }

    /// All 24 permutations in lexicographic order.
    pub fn all() -> Vec<VarPerm> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        if let Some(p) = VarPerm::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    /// (σ∘τ)(k) = σ(τ(k)).
    pub fn compose(&self, tau: &VarPerm) -> VarPerm {
        VarPerm([0, 1, 2, 3].map(|k| self.0[tau.0[k]]))
    }
}

/// Permutes variables: the result g satisfies g(x_{σ(1)},…,x_{σ(4)}) = f(x₁,…,x₄),
/// i.e. g(y) = f(y_{σ(1)},…,y_{σ(4)}).
pub fn apply_perm(f: &Signature, sigma: &VarPerm) -> Result<Signature, SigError> {
    if f.arity != 4 {
        return Err(SigError::WrongArity { got: f.arity, expected: 4 });
    }
    let mut values = vec![Scalar::zero(); 16];
    for (y, slot) in values.iter_mut().enumerate() {
        let mut src = 0;
        for k in 0..4 {
            src |= bit(y, sigma.0[k], 4) << (3 - k);
        }
        *slot = f.values[src].clone();
    }
    Signature::new(4, values)
}

/// M_{x_i x_j, x_k x_l}(f) with 1-based variable indices.
pub fn matrix_view(
    f: &Signature,
    row_vars: (usize, usize),
    col_vars: (usize, usize),
) -> Result<[[Scalar; 4]; 4], SigError> {
    if f.arity != 4 {
        return Err(SigError::WrongArity { got: f.arity, expected: 4 });
    }
    let vars = [row_vars.0, row_vars.1, col_vars.0, col_vars.1];
    let perm = VarPerm::new(vars.map(|v| v.wrapping_sub(1)))
        .ok_or(SigError::BadPermutation(row_vars, col_vars))?;
    let mut m: [[Scalar; 4]; 4] = Default::default();
    for (r, row) in m.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let local = (r << 2) | c;
            let mut idx = 0;
            for k in 0..4 {
                idx |= bit(local, k, 4) << (3 - perm.0[k]);
            }
            *cell = f.values[idx].clone();
        }
    }
    Ok(m)
}

/// Rebuilds a signature from a matrix view (inverse of [`matrix_view`]).
pub fn from_matrix_view(
    m: &[[Scalar; 4]; 4],
    row_vars: (usize, usize),
    col_vars: (usize, usize),
) -> Result<Signature, SigError> {
    let vars = [row_vars.0, row_vars.1, col_vars.0, col_vars.1];
    let perm = VarPerm::new(vars.map(|v| v.wrapping_sub(1)))
        .ok_or(SigError::BadPermutation(row_vars, col_vars))?;
    let mut f = Signature::zero(4);
    for (r, row) in m.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            let local = (r << 2) | c;
            let mut idx = 0;
            for k in 0..4 {
                idx |= bit(local, k, 4) << (3 - perm.0[k]);
            }
            f.values[idx] = cell.clone();
        }
    }
    Ok(f)
}

/// Every image of `f` under the induced action on inner pairs: any
/// reordering of the three pairs combined with reversing an even number
/// of them. Duplicates are removed; the first element is `f` itself.
pub fn pair_orbit(f: &EightVertexSig) -> Vec<EightVertexSig> {
    const PERMS3: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    const FLIPS: [[bool; 3]; 4] =
        [[false, false, false], [true, true, false], [true, false, true], [false, true, true]];
    let pairs = f.inner_pairs();
    let mut out: Vec<EightVertexSig> = Vec::new();
    for p in PERMS3 {
        for fl in FLIPS {
            let mut q: [(Scalar, Scalar); 3] = Default::default();
            for k in 0..3 {
                let (u, v) = pairs[p[k]].clone();
                q[k] = if fl[k] { (v, u) } else { (u, v) };
            }
            let g = EightVertexSig::from_pairs(f.a.clone(), f.x.clone(), q);
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out
}

/// 2×2 basis change. `half` marks the squared-only form diag(1,γ) for
/// which only γ² is stored; `m` is then ignored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Transform2x2 {
    pub m: [Scalar; 4],
    pub half: Option<Scalar>,
}

impl Transform2x2 {
    pub fn new(m: [Scalar; 4]) -> Result<Self, SigError> {
        let det = m[0].mul(&m[3]).sub(&m[1].mul(&m[2]));
        if det.is_zero() {
            return Err(SigError::Singular);
        }
        Ok(Transform2x2 { m, half: None })
    }

    pub fn exact(m: [Cyclo8; 4]) -> Result<Self, SigError> {
        Transform2x2::new(m.map(Scalar::Exact))
    }

    pub fn identity() -> Self {
        Transform2x2 { m: [1, 0, 0, 1].map(Scalar::int), half: None }
    }

    /// diag(1, γ) with only γ² known.
    pub fn half_diag(gamma_sq: Scalar) -> Result<Self, SigError> {
        if gamma_sq.is_zero() {
            return Err(SigError::Singular);
        }
        Ok(Transform2x2 { m: [1, 0, 0, 1].map(Scalar::int), half: Some(gamma_sq) })
    }

    pub fn is_half(&self) -> bool {
        self.half.is_some()
    }
}

fn apply_axis(values: &mut [Scalar], n: usize, k: usize, t: &[Scalar; 4]) {
    let stride = 1 << (n - 1 - k);
    for idx in 0..values.len() {
        if idx & stride != 0 {
            continue;
        }
        let v0 = values[idx].clone();
        let v1 = values[idx | stride].clone();
        values[idx] = t[0].mul(&v0).add(&t[1].mul(&v1));
        values[idx | stride] = t[2].mul(&v0).add(&t[3].mul(&v1));
    }
}

/// T^{⊗n} f. A squared-only diag(1,γ) scales the entry at a weight-2k
/// input by (γ²)ᵏ and requires even-weight support.
pub fn holographic_transform(f: &Signature, t: &Transform2x2) -> Result<Signature, SigError> {
    if let Some(g2) = &t.half {
        let mut out = f.clone();
        for (idx, v) in out.values.iter_mut().enumerate() {
            if v.is_zero() {
                continue;
            }
            let w = idx.count_ones();
            if w % 2 == 1 {
                return Err(SigError::OddSupportWithHalfTransform);
            }
            *v = v.mul(&scalar_pow(g2, w / 2));
        }
        return Ok(out);
    }
    let mut values = f.values.clone();
    for k in 0..f.arity {
        apply_axis(&mut values, f.arity, k, &t.m);
    }
    Ok(Signature { arity: f.arity, values })
}

/// Like [`holographic_transform`] but only up to a nonzero scalar: a
/// squared-only transform also accepts support that is entirely of odd
/// weight, where weight 2k+1 is scaled by (γ²)ᵏ.
pub fn holographic_transform_projective(f: &Signature, t: &Transform2x2) -> Result<Signature, SigError> {
    if let Some(g2) = &t.half {
        let supp = f.support();
        let parity = supp.first().map(|i| i.count_ones() % 2).unwrap_or(0);
        if supp.iter().any(|i| i.count_ones() % 2 != parity) {
            return Err(SigError::OddSupportWithHalfTransform);
        }
        let mut out = f.clone();
        for &idx in &supp {
            out.values[idx] = out.values[idx].mul(&scalar_pow(g2, idx.count_ones() / 2));
        }
        return Ok(out);
    }
    holographic_transform(f, t)
}

pub fn scalar_pow(s: &Scalar, e: u32) -> Scalar {
    match s {
        Scalar::Exact(c) => Scalar::Exact(c.pow(e as u64)),
        Scalar::Approx(_) => {
            let mut acc = Scalar::one();
            for _ in 0..e {
                acc = acc.mul(s);
            }
            acc
        }
    }
}

/// Structural summary of an eight-vertex signature.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Structure {
    /// Number of zeros among b,c,d,w,z,y.
    pub zero_count: usize,
    pub zero_pairs: usize,
    pub is_redundant: bool,
    pub compressed: Option<[[Scalar; 3]; 3]>,
    pub inner_rank: usize,
    /// (by, cz, dw).
    pub pair_products: [Scalar; 3],
}

pub fn structural_queries(f: &EightVertexSig) -> Structure {
    let pairs = f.inner_pairs();
    let zero_count = pairs.iter().map(|(u, v)| u.is_zero() as usize + v.is_zero() as usize).sum();
    let zero_pairs = pairs.iter().filter(|(u, v)| u.is_zero() && v.is_zero()).count();
    let is_redundant = f.c == f.w && f.d == f.z && f.c == f.d;
    let g = f.to_signature();
    let compressed = is_redundant.then(|| {
        let e = |k: usize| g.values[k].clone();
        [[e(0b0000), e(0b0001), e(0b0011)], [e(0b0100), e(0b0101), e(0b0111)], [e(0b1100), e(0b1101), e(0b1111)]]
    });
    let det = f.c.mul(&f.z).sub(&f.d.mul(&f.w));
    let inner_rank = if !det.is_zero() {
        2
    } else if [&f.c, &f.d, &f.w, &f.z].iter().any(|v| !v.is_zero()) {
        1
    } else {
        0
    };
    Structure {
        zero_count,
        zero_pairs,
        is_redundant,
        compressed,
        inner_rank,
        pair_products: [f.b.mul(&f.y), f.c.mul(&f.z), f.d.mul(&f.w)],
    }
}

/// Determinant of a 3×3 exact matrix.
pub fn det3(m: &[[Cyclo8; 3]; 3]) -> Cyclo8 {
    let t1 = &m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1]));
    let t2 = &m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0]));
    let t3 = &m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]));
    &(&t1 - &t2) + &t3
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str) -> EightVertexSig {
        s.parse().unwrap()
    }

    #[test]
    fn swap_first_two_variables() {
        let f = ev("1,2,3,4,5,6,7,8");
        let g = apply_perm(&f.to_signature(), &VarPerm([1, 0, 2, 3])).unwrap();
        assert_eq!(EightVertexSig::from_signature(&g).unwrap(), ev("1,2,5,6,3,4,7,8"));
    }

    #[test]
    fn transpose_permutation() {
        let f = ev("1,2,3,4,5,6,7,8");
        let g = apply_perm(&f.to_signature(), &VarPerm([2, 3, 0, 1])).unwrap();
        assert_eq!(EightVertexSig::from_signature(&g).unwrap(), ev("1,7,3,5,4,6,2,8"));
        let m = matrix_view(&f.to_signature(), (3, 4), (1, 2)).unwrap();
        let base = f.matrix();
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(m[r][c], base[c][r]);
            }
        }
    }

    #[test]
    fn swapped_row_variables_swap_middle_rows() {
        let f = ev("1,2,3,4,5,6,7,8");
        let m = matrix_view(&f.to_signature(), (2, 1), (3, 4)).unwrap();
        let base = f.matrix();
        assert_eq!(m[0], base[0]);
        assert_eq!(m[1], base[2]);
        assert_eq!(m[2], base[1]);
        assert_eq!(m[3], base[3]);
        assert!(matrix_view(&f.to_signature(), (1, 1), (3, 4)).is_err());
    }

    #[test]
    fn orbit_shape() {
        let f = ev("1,2,3,4,5,6,7,8");
        let orbit = pair_orbit(&f);
        assert_eq!(orbit.len(), 24);
        // reorder rows: (c,z),(b,y),(d,w)
        assert!(orbit.contains(&ev("1,3,2,4,5,7,6,8")));
        // a single reversed pair is not reachable
        assert!(!orbit.contains(&ev("1,7,3,4,5,6,2,8")));
        assert_eq!(pair_orbit(&ev("1,1,1,1,1,1,1,1")).len(), 1);
    }

    #[test]
    fn equality_to_disequality_under_z() {
        // Row-vector form (=₂)·Z^{⊗2} is the column action of Zᵀ.
        let t = Transform2x2::exact([1.into(), Cyclo8::i(), 1.into(), -Cyclo8::i()]).unwrap();
        let g = holographic_transform(&Signature::equality(2), &t).unwrap();
        assert!(g.proportional(&Signature::disequality()));
    }

    #[test]
    fn diagonal_keeps_disequality() {
        let t = Transform2x2::exact([2.into(), 0.into(), 0.into(), 3.into()]).unwrap();
        let g = holographic_transform(&Signature::disequality(), &t).unwrap();
        assert_eq!(g, Signature::from_ints(2, &[0, 6, 6, 0]).unwrap());
    }

    #[test]
    fn symmetrizing_transform_gives_equality() {
        // [t,0,1,0,1/t] is the symmetric signature with weight-w value t^{1-w/2}.
        let t = Cyclo8::from_int(3);
        let mut f = Signature::zero(4);
        for idx in 0..16usize {
            let w = idx.count_ones() as i64;
            if w % 2 == 0 {
                f.values[idx] = Scalar::Exact(t.powi(1 - w / 2).unwrap());
            }
        }
        let g = holographic_transform(&f, &Transform2x2::half_diag(Scalar::Exact(t)).unwrap()).unwrap();
        let z = Transform2x2::exact([1.into(), 1.into(), Cyclo8::i(), -Cyclo8::i()]).unwrap();
        let h = holographic_transform(&g, &z).unwrap();
        assert!(h.proportional(&Signature::equality(4)));
    }

    #[test]
    fn half_transform_rejects_odd_support() {
        let t = Transform2x2::half_diag(Scalar::Exact(Cyclo8::i())).unwrap();
        assert_eq!(
            holographic_transform(&Signature::disequality(), &t),
            Err(SigError::OddSupportWithHalfTransform)
        );
        let g = holographic_transform_projective(&Signature::disequality(), &t).unwrap();
        assert_eq!(g, Signature::disequality());
    }

    #[test]
    fn structure_of_eulerian_signature() {
        let s = structural_queries(&ev("0,1,1,1,1,1,1,0"));
        assert_eq!(s.zero_count, 0);
        assert!(s.is_redundant);
        let c = s.compressed.unwrap();
        let expect = [[0, 0, 1], [0, 1, 0], [1, 0, 0]];
        for r in 0..3 {
            for k in 0..3 {
                assert_eq!(c[r][k], Scalar::int(expect[r][k]));
            }
        }
        assert_eq!(structural_queries(&ev("1,0,1,0,0,1,0,1")).zero_pairs, 2);
        assert_eq!(structural_queries(&ev("1,1,2,3,4,6,1,1")).inner_rank, 1);
        assert_eq!(structural_queries(&ev("1,1,2,3,5,4,1,1")).inner_rank, 2);
    }

    #[test]
    fn text_forms() {
        let f = ev("1,(0,1,0,0),i,-a,1/2+i,0,2,-1");
        assert_eq!(f.b, Scalar::Exact(Cyclo8::zeta()));
        assert!("1,2,3".parse::<EightVertexSig>().is_err());
        let json = serde_json::to_string(&f).unwrap();
        let back: EightVertexSig = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
