//! Eight-vertex weights of the 2,4-spin Ising model on a square lattice.
//!
//! The eight local configurations have energies ε₁…ε₈ that are linear in the
//! couplings (J_h, J_v, J, J′, J″), and the weights are w_j = e^{−ε_j}.
//! Configuration j lands on entry c, z, d, w, b, y, a, x for j = 1…8.

use serde::{Deserialize, Serialize};

use crate::numeric::{ComplexApprox, Cyclo8, Rational, Scalar};
use crate::signatures::EightVertexSig;

use super::EvalError;

/// Coefficients of (J_h, J_v, J, J′, J″) in ε₁…ε₈.
pub const ENERGY: [[i64; 5]; 8] = [
    [-1, -1, -1, -1, -1],
    [1, 1, -1, -1, -1],
    [-1, 1, 1, 1, -1],
    [1, -1, 1, 1, -1],
    [0, 0, 1, -1, 1],
    [0, 0, 1, -1, 1],
    [0, 0, -1, 1, 1],
    [0, 0, -1, 1, 1],
];

/// Entry index in (a,b,c,d,w,z,y,x) for each configuration.
const TARGET: [usize; 8] = [2, 5, 3, 4, 1, 6, 0, 7];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum IsingParams {
    /// Couplings as multiples of πi/4.
    Exact([Rational; 5]),
    Approx([ComplexApprox; 5]),
}

pub fn ising_signature(p: &IsingParams) -> Result<EightVertexSig, EvalError> {
    let mut entries: [Scalar; 8] = Default::default();
    for (j, row) in ENERGY.iter().enumerate() {
        let w = match p {
            IsingParams::Exact(k) => {
                let mut eps = Rational::zero();
                for (c, kj) in row.iter().zip(k) {
                    eps = eps + Rational::from(*c) * kj.clone();
                }
                if !eps.is_integer() {
                    return Err(EvalError::NotRepresentable(format!("e^(-{eps}·πi/4)")));
                }
                let n: i64 = eps.to_string().parse().map_err(|_| EvalError::NotRepresentable(eps.to_string()))?;
                Scalar::Exact(Cyclo8::zeta_pow(-n))
            }
            IsingParams::Approx(js) => {
                let mut eps = ComplexApprox::new(0.0, 0.0);
                for (c, jv) in row.iter().zip(js) {
                    eps = eps.add(&ComplexApprox::new(*c as f64 * jv.re, *c as f64 * jv.im));
                }
                Scalar::Approx(ComplexApprox::new(-eps.re, -eps.im).exp())
            }
        };
        entries[TARGET[j]] = w;
    }
    Ok(EightVertexSig::from_entries(entries))
}
