//! Holant(≠₂ | 𝓕) evaluation and instance builders.

mod affine;
mod brute;
mod graphs;
mod grid;
mod interp;
mod ising;

use thiserror::Error;

use crate::classes::ClassError;
use crate::gadgets::GadgetError;
use crate::numeric::NumericError;
use crate::signatures::SigError;

pub use affine::affine_eval;
pub use brute::{brute_force, brute_force_with, EvalOptions, DEFAULT_MAX_EDGES};
pub use graphs::{eo_count, eo_signature, medial_graph, tutte33, tutte_signature, Dart, RotationGraph};
pub use grid::{Endpoint, Grid, GridVertex};
pub use interp::{chain_signature, demo_grid, g_lambda, interpolation_demo, InterpolationReport};
pub use ising::{ising_signature, IsingParams, ENERGY};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("{edges} edges exceed the brute-force limit of {max}")]
    TooManyEdges { edges: usize, max: usize },
    #[error("port {port} of vertex {vertex} is not used by any edge or does not exist")]
    DanglingPort { vertex: usize, port: usize },
    #[error("port {port} of vertex {vertex} is used twice")]
    PortReused { vertex: usize, port: usize },
    #[error("vertex {0} does not exist")]
    BadVertex(usize),
    #[error("unknown signature `{0}`")]
    UnknownSignature(String),
    #[error("signature `{0}` is not in the affine class")]
    NotAffineSignature(String),
    #[error("vertex {0} does not have degree 4")]
    NotFourRegular(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("rotation system is not a plane embedding")]
    NonPlanarRotation,
    #[error("bad graph: {0}")]
    BadGraph(String),
    #[error("bad rotation: {0}")]
    BadRotation(String),
    #[error("{0} is not an element of Q(ζ₈)")]
    NotRepresentable(String),
    #[error("chain parameter t must not be ±1 or purely imaginary")]
    BadChainParameter,
    #[error("interpolation system is singular")]
    SingularSystem,
    #[error("arithmetic overflow")]
    Overflow,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Sig(#[from] SigError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{Cyclo8, Rational, Scalar};
    use crate::signatures::{EightVertexSig, Signature};

    fn single_vertex(sig: Signature) -> Grid {
        let mut g = Grid::new();
        g.add_signature("f", sig);
        g.add_vertex("f");
        g.add_edge((0, 0), (0, 1));
        g.add_edge((0, 2), (0, 3));
        g
    }

    #[test]
    fn double_self_loop() {
        let f = EightVertexSig::from_ints([1, 2, 3, 5, 7, 11, 13, 17]);
        assert_eq!(brute_force(&single_vertex(f.to_signature())).unwrap(), Scalar::int(3 + 5 + 7 + 11));
        assert_eq!(brute_force(&single_vertex(eo_signature().to_signature())).unwrap(), Scalar::int(4));
        assert_eq!(brute_force(&single_vertex(Signature::zero(4))).unwrap(), Scalar::int(0));
    }

    #[test]
    fn dipole_orientations() {
        let g = RotationGraph::dipole();
        assert_eq!(eo_count(&g, &EvalOptions::default()).unwrap(), Scalar::int(6));
    }

    #[test]
    fn small_tutte_values() {
        let opts = EvalOptions::default();
        assert_eq!(tutte33(&RotationGraph::k(3), &opts).unwrap(), Scalar::int(15));
        assert_eq!(tutte33(&RotationGraph::k4_plane(), &opts).unwrap(), Scalar::int(156));
        assert_eq!(tutte33(&RotationGraph::k(2), &opts).unwrap(), Scalar::int(3));
        let looped: RotationGraph = "0 0\nrot 0: 0 0".parse().unwrap();
        assert_eq!(tutte33(&looped, &opts).unwrap(), Scalar::int(3));
        assert_eq!(tutte33(&RotationGraph::k(4), &opts), Err(EvalError::NonPlanarRotation));
    }

    #[test]
    fn medial_of_triangle() {
        let m = medial_graph(&RotationGraph::k(3)).unwrap();
        assert_eq!(m.vertices, 3);
        assert!((0..3).all(|v| m.degree(v) == 4));
        for (u, v) in [(0, 1), (0, 2), (1, 2)] {
            let k = m.edges.iter().filter(|&&(a, b)| (a.min(b), a.max(b)) == (u, v)).count();
            assert_eq!(k, 2);
        }
    }

    #[test]
    fn affine_agrees_on_small_grids() {
        let eq4 = Signature::from_ints(4, &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]).unwrap();
        let g = single_vertex(eq4);
        assert_eq!(affine_eval(&g).unwrap(), brute_force(&g).unwrap());
        let f = EightVertexSig::from_ints([1, 1, 1, 1, -1, -1, 1, 1]).to_signature();
        let g = single_vertex(f);
        assert_eq!(affine_eval(&g).unwrap(), brute_force(&g).unwrap());
        assert_eq!(affine_eval(&Grid::new()).unwrap(), Scalar::int(1));
    }

    #[test]
    fn ising_point() {
        let k = [0, 2, -1, -1, 0].map(Rational::from);
        let f = ising_signature(&IsingParams::Exact(k)).unwrap();
        assert_eq!(f, EightVertexSig::from_ints([1, 1, 1, 1, -1, -1, 1, 1]));
        let zero = ising_signature(&IsingParams::Exact([0, 0, 0, 0, 0].map(Rational::from))).unwrap();
        assert_eq!(zero, EightVertexSig::from_ints([1; 8]));
        let half = [Rational::new(1, 2).unwrap(), 0.into(), 0.into(), 0.into(), 0.into()];
        assert!(ising_signature(&IsingParams::Exact(half)).is_err());
    }

    #[test]
    fn interpolation_on_two_vertices() {
        let mut g = Grid::new();
        g.add_signature("slot", Signature::zero(4));
        g.add_signature("f", EightVertexSig::from_ints([1, 2, 3, 1, 2, 1, 1, 2]).to_signature());
        g.add_vertex("slot");
        g.add_vertex("f");
        for p in 0..4 {
            g.add_edge((0, p), (1, p));
        }
        let r = interpolation_demo(&g, "slot", &Cyclo8::from_int(3), &Cyclo8::from_int(2), &EvalOptions::default()).unwrap();
        assert_eq!(r.value, r.direct);
        assert!(interpolation_demo(&g, "slot", &Cyclo8::one(), &Cyclo8::one(), &EvalOptions::default()).is_err());
    }
}
