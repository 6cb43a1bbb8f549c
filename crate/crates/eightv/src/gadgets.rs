//! Gadget calculus: wiring 4-ary signatures through the double
//! disequality N, loops, pins, binary modifications and chains.
//!
//! Every operation returns the true value, prefactors included.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numeric::{Cyclo8, Scalar};
use crate::signatures::{from_matrix_view, matrix_view, SigError, Signature};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GadgetError {
    #[error("chain eigen-factorization needs a = x, b = y, c = z, d = w")]
    ChainFormUnsupported,
    #[error("chain length must be at least 1")]
    ZeroChain,
    #[error("pinned variables must be distinct and within 1..=4")]
    BadPin,
    #[error("variable index {0} outside the signature")]
    BadVariable(usize),
    #[error(transparent)]
    Sig(#[from] SigError),
}

pub type Mat4 = [[Scalar; 4]; 4];

/// Binary signature (g₀₀, g₀₁, g₁₀, g₁₁), matrix [[g₀₀, g₀₁], [g₁₀, g₁₁]].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinarySig(pub [Scalar; 4]);

impl BinarySig {
    pub fn from_ints(v: [i64; 4]) -> Self {
        BinarySig(v.map(Scalar::int))
    }

    pub fn to_signature(&self) -> Signature {
        Signature::new(2, self.0.to_vec()).expect("binary table")
    }

    /// Matrix product g₁ · [[0,1],[1,0]] · g₂, i.e. two binaries joined by (≠₂).
    pub fn connect(&self, other: &BinarySig) -> BinarySig {
        let [p, q, r, s] = &self.0;
        // g₁·N swaps the columns of g₁.
        let left = [q.clone(), p.clone(), s.clone(), r.clone()];
        let [e, f, g, h] = &other.0;
        BinarySig([
            left[0].mul(e).add(&left[1].mul(g)),
            left[0].mul(f).add(&left[1].mul(h)),
            left[2].mul(e).add(&left[3].mul(g)),
            left[2].mul(f).add(&left[3].mul(h)),
        ])
    }
}

/// Row and column variable pairs of a signature-matrix view, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct View {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
}

impl View {
    pub const STANDARD: View = View { rows: (1, 2), cols: (3, 4) };

    pub fn new(rows: (usize, usize), cols: (usize, usize)) -> Self {
        View { rows, cols }
    }
}

pub fn view_matrix(f: &Signature, v: View) -> Result<Mat4, GadgetError> {
    Ok(matrix_view(f, v.rows, v.cols)?)
}

pub fn matrix_signature(m: &Mat4) -> Signature {
    from_matrix_view(m, (1, 2), (3, 4)).expect("standard view")
}

pub fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out: Mat4 = Default::default();
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            let mut acc = Scalar::zero();
            for k in 0..4 {
                if !a[r][k].is_zero() && !b[k][c].is_zero() {
                    acc = acc.add(&a[r][k].mul(&b[k][c]));
                }
            }
            *cell = acc;
        }
    }
    out
}

/// N·M reverses the row order of M.
pub fn n_times(m: &Mat4) -> Mat4 {
    [m[3].clone(), m[2].clone(), m[1].clone(), m[0].clone()]
}

/// The double disequality N = [[0,1],[1,0]] ⊗ [[0,1],[1,0]].
pub fn n_matrix() -> Mat4 {
    let mut m: Mat4 = Default::default();
    for r in 0..4 {
        m[r][3 - r] = Scalar::one();
    }
    m
}

pub fn identity4() -> Mat4 {
    let mut m: Mat4 = Default::default();
    for (r, row) in m.iter_mut().enumerate() {
        row[r] = Scalar::one();
    }
    m
}

/// Joins the column variables of `fa` (in view `va`) to the row variables
/// of `fb` (in view `vb`) through (≠₂) links. The result has matrix
/// M_va(fa) · N · M_vb(fb) in the standard view.
pub fn connect_via_n(fa: &Signature, va: View, fb: &Signature, vb: View) -> Result<Signature, GadgetError> {
    let ma = view_matrix(fa, va)?;
    let mb = view_matrix(fb, vb)?;
    Ok(matrix_signature(&mat_mul(&ma, &n_times(&mb))))
}

/// Loop on the column variables of `f` closed by the binary `g`:
/// the column vector M_view(f) · N · g.
pub fn loop_binary(f: &Signature, view: View, g: &BinarySig) -> Result<BinarySig, GadgetError> {
    let m = view_matrix(f, view)?;
    let ng = [g.0[3].clone(), g.0[2].clone(), g.0[1].clone(), g.0[0].clone()];
    let mut out: [Scalar; 4] = Default::default();
    for (r, slot) in out.iter_mut().enumerate() {
        let mut acc = Scalar::zero();
        for k in 0..4 {
            acc = acc.add(&m[r][k].mul(&ng[k]));
        }
        *slot = acc;
    }
    Ok(BinarySig(out))
}

/// Scales every entry with xᵢ = 1 by `t` (i is 1-based).
pub fn binary_modify(f: &Signature, i: usize, t: &Scalar) -> Result<Signature, GadgetError> {
    if i == 0 || i > f.arity {
        return Err(GadgetError::BadVariable(i));
    }
    let mut out = f.clone();
    for (idx, v) in out.values.iter_mut().enumerate() {
        if (idx >> (f.arity - i)) & 1 == 1 {
            *v = v.mul(t);
        }
    }
    Ok(out)
}

/// Restriction with x_{i_one} = 1 and x_{j_zero} = 0, as a binary on the
/// two remaining variables in increasing order (indices 1-based).
pub fn pin(f: &Signature, i_one: usize, j_zero: usize) -> Result<BinarySig, GadgetError> {
    if f.arity != 4 {
        return Err(SigError::WrongArity { got: f.arity, expected: 4 }.into());
    }
    if i_one == j_zero || !(1..=4).contains(&i_one) || !(1..=4).contains(&j_zero) {
        return Err(GadgetError::BadPin);
    }
    let rest: Vec<usize> = (1..=4).filter(|&v| v != i_one && v != j_zero).collect();
    let mut out: [Scalar; 4] = Default::default();
    for (local, slot) in out.iter_mut().enumerate() {
        let mut idx = 1 << (4 - i_one);
        idx |= ((local >> 1) & 1) << (4 - rest[0]);
        idx |= (local & 1) << (4 - rest[1]);
        *slot = f.values[idx].clone();
    }
    Ok(BinarySig(out))
}

/// Factorization D_k = N·P·diag(λ₁ᵏ,…,λ₄ᵏ)·P of a chain of a signature
/// with a = x, b = y, c = z, d = w, where
/// P = (1/√2)[[1,0,0,1],[0,1,1,0],[0,1,−1,0],[1,0,0,−1]] diagonalizes N·M.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenReport {
    pub p: Mat4,
    /// Eigenvalues of N·M: (b+a, d+c, d−c, b−a).
    pub eigenvalues: [Scalar; 4],
    /// (b+a)ᵏ, pulled out so that D_k = scale · P · diag(delta) · P.
    pub scale: Scalar,
    pub delta: [Scalar; 4],
    /// (b−a)/(b+a), defined when b+a ≠ 0.
    pub rho: Option<Scalar>,
    /// The factorization reproduces the powered matrix exactly.
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChainResult {
    pub signature: Signature,
    pub eigen: Result<EigenReport, GadgetError>,
}

/// k copies of f chained column-to-row through N: D_k = M (N M)^{k−1}.
pub fn chain_power(f: &Signature, view: View, k: u64) -> Result<ChainResult, GadgetError> {
    if k == 0 {
        return Err(GadgetError::ZeroChain);
    }
    let m = view_matrix(f, view)?;
    let nm = n_times(&m);
    let mut base = nm.clone();
    let mut acc = identity4();
    let mut e = k - 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        base = mat_mul(&base, &base);
        e >>= 1;
    }
    let d = mat_mul(&m, &acc);
    let eigen = eigen_report(&m, k, &d);
    Ok(ChainResult { signature: matrix_signature(&d), eigen })
}

fn eigen_report(m: &Mat4, k: u64, d: &Mat4) -> Result<EigenReport, GadgetError> {
    let (a, b, c, dd) = (&m[0][0], &m[0][3], &m[1][1], &m[1][2]);
    let shape_ok = m[3][3] == *a
        && m[3][0] == *b
        && m[2][2] == *c
        && m[2][1] == *dd
        && [(0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2)]
            .iter()
            .all(|&(r, s)| m[r][s].is_zero());
    if !shape_ok || !a.is_exact() {
        return Err(GadgetError::ChainFormUnsupported);
    }
    let lam = [b.add(a), dd.add(c), dd.sub(c), b.sub(a)];
    let pow = |s: &Scalar| crate::signatures::scalar_pow(s, k as u32);
    let inv_sqrt2 = Scalar::Exact(Cyclo8::sqrt2().inv().expect("nonzero"));
    let pm = [[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, -1, 0], [1, 0, 0, -1]].map(|r| r.map(|v| Scalar::int(v).mul(&inv_sqrt2)));
    let powered: [Scalar; 4] = [pow(&lam[0]), pow(&lam[1]), pow(&lam[2]), pow(&lam[3])];
    let mut diag: Mat4 = Default::default();
    for j in 0..4 {
        diag[j][j] = powered[j].clone();
    }
    let rebuilt = n_times(&mat_mul(&mat_mul(&pm, &diag), &pm));
    let verified = rebuilt == *d;
    let scale = powered[0].clone();
    // N·P = P·diag(1,1,−1,−1), so D_k = P·diag(λ₁ᵏ, λ₂ᵏ, −λ₃ᵏ, −λ₄ᵏ)·P.
    let signs = [1, 1, -1, -1];
    let delta = if scale.is_zero() {
        [0, 1, 2, 3].map(|j| powered[j].mul(&Scalar::int(signs[j])))
    } else {
        [0, 1, 2, 3].map(|j| powered[j].mul(&Scalar::int(signs[j])).div(&scale).expect("nonzero scale"))
    };
    let rho = if lam[0].is_zero() { None } else { Some(lam[3].div(&lam[0]).expect("nonzero")) };
    Ok(EigenReport { p: pm, eigenvalues: lam, scale, delta, rho, verified })
}
