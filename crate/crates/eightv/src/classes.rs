//! Membership deciders for the tractable classes 𝒜, 𝒫, ℒ and α𝒜.
//!
//! All deciders are invariant under nonzero scaling. The identically zero
//! signature belongs to every class (in 𝒜 it is the certificate with λ = 0).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{Cyclo8, NumericError, Scalar};
use crate::signatures::Signature;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error("membership tests need exact values")]
    NotExact,
    #[error("the square of the scale must be nonzero")]
    ZeroScale,
}

impl From<NumericError> for ClassError {
    fn from(_: NumericError) -> Self {
        ClassError::NotExact
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Class {
    A,
    P,
    L,
    #[serde(rename = "alphaA")]
    AlphaA,
}

impl Class {
    pub fn name(&self) -> &'static str {
        match self {
            Class::A => "A",
            Class::P => "P",
            Class::L => "L",
            Class::AlphaA => "alphaA",
        }
    }
}

/// Affine subspace of {0,1}ⁿ. Vectors use the table-index bit layout
/// (variable k is bit n−1−k). The basis is in reduced echelon form and
/// the offset is zero on every pivot bit, so each point has a unique
/// expansion `offset ⊕ Σ yⱼ·basis[j]` with yⱼ equal to the pivot bit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineSpace {
    pub arity: usize,
    pub offset: usize,
    pub basis: Vec<usize>,
    /// The empty set, used for the zero signature.
    pub empty: bool,
}

impl AffineSpace {
    pub fn empty(arity: usize) -> Self {
        AffineSpace { arity, offset: 0, basis: Vec::new(), empty: true }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn pivot_bits(&self) -> Vec<usize> {
        self.basis.iter().map(|v| pivot(*v)).collect()
    }

    /// Variable index (0-based) of each basis vector's pivot.
    pub fn pivot_vars(&self) -> Vec<usize> {
        self.pivot_bits().into_iter().map(|p| self.arity - 1 - p).collect()
    }

    pub fn contains(&self, x: usize) -> bool {
        !self.empty && reduce(&self.basis, x ^ self.offset) == 0
    }

    pub fn points(&self) -> Vec<usize> {
        if self.empty {
            return Vec::new();
        }
        (0..1usize << self.dim()).map(|y| self.point(y)).collect()
    }

    /// Point with free coordinates `y` (bit j of y is yⱼ).
    pub fn point(&self, y: usize) -> usize {
        let mut p = self.offset;
        for (j, v) in self.basis.iter().enumerate() {
            if (y >> j) & 1 == 1 {
                p ^= v;
            }
        }
        p
    }
}

fn pivot(v: usize) -> usize {
    usize::BITS as usize - 1 - v.leading_zeros() as usize
}

fn reduce(basis: &[usize], mut x: usize) -> usize {
    for &v in basis {
        if (x >> pivot(v)) & 1 == 1 {
            x ^= v;
        }
    }
    x
}

/// Inserts `v` keeping the basis in reduced echelon form; returns false
/// if `v` is already in the span.
fn insert(basis: &mut Vec<usize>, v: usize) -> bool {
    let r = reduce(basis, v);
    if r == 0 {
        return false;
    }
    let p = pivot(r);
    for b in basis.iter_mut() {
        if (*b >> p) & 1 == 1 {
            *b ^= r;
        }
    }
    basis.push(r);
    basis.sort_unstable_by(|a, b| b.cmp(a));
    true
}

fn support_of(v: &[Cyclo8]) -> Vec<usize> {
    (0..v.len()).filter(|&k| !v[k].is_zero()).collect()
}

fn arity_of(v: &[Cyclo8]) -> usize {
    v.len().trailing_zeros() as usize
}

pub fn affine_support_table(v: &[Cyclo8]) -> Option<AffineSpace> {
    let n = arity_of(v);
    let supp = support_of(v);
    let Some(&s0) = supp.first() else {
        return Some(AffineSpace::empty(n));
    };
    if !supp.len().is_power_of_two() {
        return None;
    }
    let mut basis = Vec::new();
    for &s in &supp[1..] {
        insert(&mut basis, s ^ s0);
        if 1 << basis.len() > supp.len() {
            return None;
        }
    }
    if 1 << basis.len() != supp.len() {
        return None;
    }
    let offset = reduce(&basis, s0);
    Some(AffineSpace { arity: n, offset, basis, empty: false })
}

/// The support of `f` as an affine space, or `None` when it is not affine.
pub fn affine_support(f: &Signature) -> Result<Option<AffineSpace>, ClassError> {
    Ok(affine_support_table(&f.exact_values()?))
}

/// Witness for f = λ·χ_space·i^{Q(x)} with
/// Q(x) = a₀ + Σ aₖxₖ + 2·Σ_{(i,j)∈cross} xᵢxⱼ over Z₄.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ACertificate {
    pub lambda: Scalar,
    pub space: AffineSpace,
    pub a0: u8,
    /// Linear coefficients aₖ ∈ Z₄, one per variable.
    pub linear: Vec<u8>,
    /// Pairs (i, j), i < j, of 0-based variables with halved cross coefficient 1.
    pub cross: Vec<(usize, usize)>,
}

impl ACertificate {
    pub fn q_at(&self, x: usize) -> u8 {
        let n = self.space.arity;
        let xb = |k: usize| (x >> (n - 1 - k)) & 1;
        let mut q = self.a0 as usize;
        for (k, &a) in self.linear.iter().enumerate() {
            q += a as usize * xb(k);
        }
        for &(i, j) in &self.cross {
            q += 2 * xb(i) * xb(j);
        }
        (q % 4) as u8
    }

    /// The value table this certificate describes.
    pub fn reconstruct(&self) -> Result<Vec<Cyclo8>, ClassError> {
        let lam = self.lambda.exact()?;
        Ok((0..1usize << self.space.arity)
            .map(|x| {
                if self.space.contains(x) {
                    lam.mul_i_pow(self.q_at(x) as i64)
                } else {
                    Cyclo8::zero()
                }
            })
            .collect())
    }
}

pub fn in_a_table(v: &[Cyclo8]) -> Option<ACertificate> {
    let n = arity_of(v);
    let space = affine_support_table(v)?;
    if space.empty {
        return Some(ACertificate {
            lambda: Scalar::zero(),
            space,
            a0: 0,
            linear: vec![0; n],
            cross: Vec::new(),
        });
    }
    let s0 = space.offset;
    let base = &v[s0];
    let expo = |s: usize| -> Option<u8> { (0..4u8).find(|&k| v[s] == base.mul_i_pow(k as i64)) };
    let k = space.dim();
    let mut lin = vec![0u8; k];
    for (j, l) in lin.iter_mut().enumerate() {
        *l = expo(space.point(1 << j))?;
    }
    let mut b = vec![vec![false; k]; k];
    for j in 0..k {
        for l in j + 1..k {
            let e = expo(space.point((1 << j) | (1 << l)))?;
            let d = (e as i32 - lin[j] as i32 - lin[l] as i32).rem_euclid(4);
            if d % 2 == 1 {
                return None;
            }
            b[j][l] = d == 2;
        }
    }
    for y in 0..1usize << k {
        let mut q = 0usize;
        for j in 0..k {
            if (y >> j) & 1 == 1 {
                q += lin[j] as usize;
                for l in j + 1..k {
                    if (y >> l) & 1 == 1 && b[j][l] {
                        q += 2;
                    }
                }
            }
        }
        if expo(space.point(y))? as usize != q % 4 {
            return None;
        }
    }
    let vars = space.pivot_vars();
    let mut linear = vec![0u8; n];
    let mut cross = Vec::new();
    for j in 0..k {
        linear[vars[j]] = lin[j];
        for l in j + 1..k {
            if b[j][l] {
                let (p, q) = (vars[j].min(vars[l]), vars[j].max(vars[l]));
                cross.push((p, q));
            }
        }
    }
    cross.sort_unstable();
    Some(ACertificate { lambda: Scalar::Exact(base.clone()), space, a0: 0, linear, cross })
}

pub fn in_a(f: &Signature) -> Result<Option<ACertificate>, ClassError> {
    Ok(in_a_table(&f.exact_values()?))
}

/// Index of the all-ones input of an arity-n table.
fn top(n: usize) -> usize {
    (1 << n) - 1
}

/// Square-root-free scaled membership. The signature is read with its two
/// outer entries (at 0…0 and 1…1) carrying an extra factor μ, where only
/// μ² is known; the result says whether some square root μ puts that
/// signature in 𝒜. A binary (ã, c, z, ã) with ã² = ax is presented as
/// (1, c, z, 1) together with μ² = ax.
pub fn in_a_scaled_table(v: &[Cyclo8], mu_sq: &Cyclo8) -> Result<bool, ClassError> {
    let n = arity_of(v);
    if mu_sq.is_zero() {
        return Err(ClassError::ZeroScale);
    }
    let supp = support_of(v);
    let outer = [0, top(n)];
    let o = supp.iter().find(|s| outer.contains(s));
    let u = supp.iter().find(|s| !outer.contains(s));
    let (Some(&o), Some(&u)) = (o, u) else {
        // One side is empty, so μ is an overall scalar.
        return Ok(in_a_table(v).is_some());
    };
    // In 𝒜 every ratio of entries is a power of i, which pins μ down to
    // four candidates inside the field.
    for k in 0..4 {
        let mu = v[u].mul_i_pow(k).div(&v[o]).expect("nonzero outer entry");
        if &(&mu * &mu) != mu_sq {
            continue;
        }
        let mut g = v.to_vec();
        for &s in &outer {
            g[s] = &g[s] * &mu;
        }
        if in_a_table(&g).is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn in_a_scaled(f: &Signature, mu_sq: &Scalar) -> Result<bool, ClassError> {
    in_a_scaled_table(&f.exact_values()?, mu_sq.exact()?)
}

/// One tensor factor of a 𝒫 decomposition: a signature on `vars`
/// (0-based, increasing) whose support is inside a pair of antipodal points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PFactor {
    pub vars: Vec<usize>,
    pub sig: Signature,
}

/// Flattened factor tree: f equals the product of the leaves over the
/// recorded variable partition. The zero signature has no leaves.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PDecomposition {
    pub arity: usize,
    pub zero: bool,
    pub leaves: Vec<PFactor>,
}

impl PDecomposition {
    pub fn reconstruct(&self) -> Result<Vec<Cyclo8>, ClassError> {
        let n = self.arity;
        if self.zero {
            return Ok(vec![Cyclo8::zero(); 1 << n]);
        }
        let leaves: Vec<(Vec<usize>, Vec<Cyclo8>)> = self
            .leaves
            .iter()
            .map(|l| Ok((l.vars.clone(), l.sig.exact_values()?)))
            .collect::<Result<_, ClassError>>()?;
        Ok((0..1usize << n)
            .map(|x| {
                let mut acc = Cyclo8::one();
                for (vars, vals) in &leaves {
                    acc = &acc * &vals[restrict(x, n, vars)];
                }
                acc
            })
            .collect())
    }
}

/// Index into a table over `vars` of the restriction of the arity-n input x.
fn restrict(x: usize, n: usize, vars: &[usize]) -> usize {
    let m = vars.len();
    let mut idx = 0;
    for (k, &v) in vars.iter().enumerate() {
        idx |= ((x >> (n - 1 - v)) & 1) << (m - 1 - k);
    }
    idx
}

fn is_antipodal_leaf(v: &[Cyclo8]) -> bool {
    let supp = support_of(v);
    match supp.len() {
        0 | 1 => true,
        2 => supp[0] ^ supp[1] == top(arity_of(v)),
        _ => false,
    }
}

fn decompose(vars: &[usize], v: &[Cyclo8], out: &mut Vec<PFactor>) -> bool {
    let m = vars.len();
    if is_antipodal_leaf(v) {
        out.push(PFactor {
            vars: vars.to_vec(),
            sig: Signature::from_exact(m, v.to_vec()).expect("arity in range"),
        });
        return true;
    }
    // Subsets containing the first local variable, excluding the full set.
    for mask in 0..(1usize << (m - 1)) - 1 {
        let left: Vec<usize> = std::iter::once(0).chain((1..m).filter(|k| (mask >> (k - 1)) & 1 == 1)).collect();
        let right: Vec<usize> = (0..m).filter(|k| !left.contains(k)).collect();
        if let Some((g, h)) = split(m, v, &left, &right) {
            let lv: Vec<usize> = left.iter().map(|&k| vars[k]).collect();
            let rv: Vec<usize> = right.iter().map(|&k| vars[k]).collect();
            // Both factors are pinnings of v, and 𝒫 is closed under pinning,
            // so the first exact split decides.
            return decompose(&lv, &g, out) && decompose(&rv, &h, out);
        }
    }
    false
}

/// Rank-one test of the reshaped matrix rows=left, cols=right.
fn split(m: usize, v: &[Cyclo8], left: &[usize], right: &[usize]) -> Option<(Vec<Cyclo8>, Vec<Cyclo8>)> {
    let (nl, nr) = (left.len(), right.len());
    let index = |r: usize, c: usize| -> usize {
        let mut idx = 0;
        for (k, &var) in left.iter().enumerate() {
            idx |= ((r >> (nl - 1 - k)) & 1) << (m - 1 - var);
        }
        for (k, &var) in right.iter().enumerate() {
            idx |= ((c >> (nr - 1 - k)) & 1) << (m - 1 - var);
        }
        idx
    };
    let (r0, c0) = (0..1usize << nl)
        .flat_map(|r| (0..1usize << nr).map(move |c| (r, c)))
        .find(|&(r, c)| !v[index(r, c)].is_zero())?;
    let p = &v[index(r0, c0)];
    for r in 0..1usize << nl {
        let rc0 = &v[index(r, c0)];
        for c in 0..1usize << nr {
            if &v[index(r, c)] * p != rc0 * &v[index(r0, c)] {
                return None;
            }
        }
    }
    let g: Vec<Cyclo8> = (0..1usize << nl).map(|r| v[index(r, c0)].clone()).collect();
    let pinv = p.inv().expect("nonzero pivot");
    let h: Vec<Cyclo8> = (0..1usize << nr).map(|c| &v[index(r0, c)] * &pinv).collect();
    Some((g, h))
}

pub fn in_p_table(v: &[Cyclo8]) -> Option<PDecomposition> {
    let n = arity_of(v);
    if v.iter().all(Cyclo8::is_zero) {
        return Some(PDecomposition { arity: n, zero: true, leaves: Vec::new() });
    }
    let vars: Vec<usize> = (0..n).collect();
    let mut leaves = Vec::new();
    decompose(&vars, v, &mut leaves).then_some(PDecomposition { arity: n, zero: false, leaves })
}

pub fn in_p(f: &Signature) -> Result<Option<PDecomposition>, ClassError> {
    Ok(in_p_table(&f.exact_values()?))
}

/// Multiplies the entry at x by ζ^{popcount(x & mask)}.
fn alpha_twist(v: &[Cyclo8], mask: usize) -> Vec<Cyclo8> {
    v.iter()
        .enumerate()
        .map(|(x, e)| if e.is_zero() { e.clone() } else { e.mul_zeta_pow((x & mask).count_ones() as i64) })
        .collect()
}

pub fn in_l_table(v: &[Cyclo8]) -> bool {
    support_of(v).into_iter().all(|s| in_a_table(&alpha_twist(v, s)).is_some())
}

pub fn in_l(f: &Signature) -> Result<bool, ClassError> {
    Ok(in_l_table(&f.exact_values()?))
}

pub fn in_alpha_a_table(v: &[Cyclo8]) -> bool {
    in_a_table(&alpha_twist(v, top(arity_of(v)))).is_some()
}

pub fn in_alpha_a(f: &Signature) -> Result<bool, ClassError> {
    Ok(in_alpha_a_table(&f.exact_values()?))
}

pub fn in_class_table(v: &[Cyclo8], class: Class) -> bool {
    match class {
        Class::A => in_a_table(v).is_some(),
        Class::P => in_p_table(v).is_some(),
        Class::L => in_l_table(v),
        Class::AlphaA => in_alpha_a_table(v),
    }
}

pub fn membership_profile_table(v: &[Cyclo8]) -> BTreeSet<Class> {
    [Class::A, Class::P, Class::L, Class::AlphaA].into_iter().filter(|&c| in_class_table(v, c)).collect()
}

pub fn membership_profile(f: &Signature) -> Result<BTreeSet<Class>, ClassError> {
    Ok(membership_profile_table(&f.exact_values()?))
}
