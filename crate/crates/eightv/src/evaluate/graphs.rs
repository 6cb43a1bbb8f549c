//! Graphs with rotation systems, and the grids built from them: Eulerian
//! orientation counts and T(G; 3, 3) through the medial graph.
//!
//! Text format, one item per line, `#` starts a comment:
//!
//! ```text
//! 0 1          # edge 0 joins vertices 0 and 1
//! 1 2          # edge 1
//! rot 1: 0 1   # cyclic order of edge ids around vertex 1
//! ```
//!
//! A loop appears twice in its vertex's rotation; the first occurrence is
//! the end listed first on the edge line. Vertices without a `rot` line use
//! the order in which their edges were listed.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::numeric::{Rational, Scalar};
use crate::signatures::EightVertexSig;

use super::brute::{brute_force_with, EvalOptions};
use super::grid::Grid;
use super::EvalError;

/// One end of an edge: `end` 0 is the first listed vertex, 1 the second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dart {
    pub edge: usize,
    pub end: u8,
}

impl Dart {
    fn rev(self) -> Dart {
        Dart { edge: self.edge, end: 1 - self.end }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationGraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
    pub rotation: Vec<Vec<Dart>>,
}

impl RotationGraph {
    /// Builds a graph whose rotations follow the edge listing order.
    pub fn from_edges(vertices: usize, edges: &[(usize, usize)]) -> Result<Self, EvalError> {
        let mut rotation = vec![Vec::new(); vertices];
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(EvalError::BadGraph(format!("edge {e} uses a missing vertex")));
            }
            rotation[u].push(Dart { edge: e, end: 0 });
            rotation[v].push(Dart { edge: e, end: 1 });
        }
        Ok(RotationGraph { vertices, edges: edges.to_vec(), rotation })
    }

    /// Sets the cyclic order at `v` from a list of edge ids.
    pub fn set_rotation(&mut self, v: usize, edge_ids: &[usize]) -> Result<(), EvalError> {
        let mut seen_first = vec![false; self.edges.len()];
        let mut darts = Vec::with_capacity(edge_ids.len());
        for &e in edge_ids {
            let &(a, b) = self.edges.get(e).ok_or_else(|| EvalError::BadRotation(format!("unknown edge {e}")))?;
            let end = if a == v && b == v {
                let end = u8::from(seen_first[e]);
                seen_first[e] = true;
                end
            } else if a == v {
                0
            } else if b == v {
                1
            } else {
                return Err(EvalError::BadRotation(format!("edge {e} does not meet vertex {v}")));
            };
            darts.push(Dart { edge: e, end });
        }
        let mut want = self.rotation[v].clone();
        let mut got = darts.clone();
        want.sort_by_key(|d| (d.edge, d.end));
        got.sort_by_key(|d| (d.edge, d.end));
        if want != got {
            return Err(EvalError::BadRotation(format!("rotation at {v} is not a permutation of its edges")));
        }
        self.rotation[v] = darts;
        Ok(())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    fn tail(&self, d: Dart) -> usize {
        let (a, b) = self.edges[d.edge];
        if d.end == 0 {
            a
        } else {
            b
        }
    }

    fn position(&self, d: Dart) -> (usize, usize) {
        let v = self.tail(d);
        let k = self.rotation[v].iter().position(|&x| x == d).expect("dart in rotation");
        (v, k)
    }

    fn succ(&self, d: Dart) -> Dart {
        let (v, k) = self.position(d);
        self.rotation[v][(k + 1) % self.rotation[v].len()]
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices == 0 {
            return true;
        }
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for &(u, v) in &self.edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru] = rv;
        }
        let root = find(&mut parent, 0);
        (0..self.vertices).all(|v| find(&mut parent, v) == root)
    }

    /// Number of faces of the embedding given by the rotation system.
    pub fn face_count(&self) -> usize {
        let mut seen = vec![[false; 2]; self.edges.len()];
        let mut faces = 0;
        for e in 0..self.edges.len() {
            for end in 0..2u8 {
                if seen[e][end as usize] {
                    continue;
                }
                faces += 1;
                let start = Dart { edge: e, end };
                let mut d = start;
                loop {
                    seen[d.edge][d.end as usize] = true;
                    d = self.succ(d.rev());
                    if d == start {
                        break;
                    }
                }
            }
        }
        faces
    }

    pub fn is_plane(&self) -> bool {
        self.is_connected() && self.vertices + self.face_count() == self.edges.len() + 2
    }

    /// Grid with one vertex per graph vertex, ports in rotation order.
    pub fn grid(&self, name: &str, sig: EightVertexSig) -> Result<Grid, EvalError> {
        let mut grid = Grid::new();
        grid.add_signature(name, sig.to_signature());
        for v in 0..self.vertices {
            if self.degree(v) != 4 {
                return Err(EvalError::NotFourRegular(v));
            }
            grid.add_vertex(name);
        }
        for e in 0..self.edges.len() {
            let a = self.position(Dart { edge: e, end: 0 });
            let b = self.position(Dart { edge: e, end: 1 });
            grid.add_edge(a, b);
        }
        Ok(grid)
    }

    pub fn k(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        RotationGraph::from_edges(n, &edges).expect("complete graph")
    }

    /// K₄ with a plane rotation system.
    pub fn k4_plane() -> Self {
        let mut g = RotationGraph::k(4);
        let id = |a: usize, b: usize| g.edges.iter().position(|&(u, v)| (u, v) == (a.min(b), a.max(b))).unwrap();
        let rot: Vec<Vec<usize>> = [[1, 2, 3], [2, 0, 3], [3, 0, 1], [1, 0, 2]]
            .iter()
            .enumerate()
            .map(|(v, nb)| nb.iter().map(|&w| id(v, w)).collect())
            .collect();
        for (v, r) in rot.iter().enumerate() {
            g.set_rotation(v, r).expect("valid rotation");
        }
        g
    }

    /// Two vertices joined by four parallel edges.
    pub fn dipole() -> Self {
        RotationGraph::from_edges(2, &[(0, 1); 4]).expect("dipole")
    }
}

impl FromStr for RotationGraph {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, EvalError> {
        let mut edges = Vec::new();
        let mut rots = Vec::new();
        let bad = |line: &str| EvalError::BadGraph(format!("cannot read line `{line}`"));
        for raw in s.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("rot") {
                let (v, list) = rest.split_once(':').ok_or_else(|| bad(line))?;
                let v: usize = v.trim().parse().map_err(|_| bad(line))?;
                let ids: Vec<usize> =
                    list.split_whitespace().map(str::parse).collect::<Result<_, _>>().map_err(|_| bad(line))?;
                rots.push((v, ids));
            } else {
                let parts: Vec<usize> =
                    line.split_whitespace().map(str::parse).collect::<Result<_, _>>().map_err(|_| bad(line))?;
                match parts[..] {
                    [u, v] => edges.push((u, v)),
                    _ => return Err(bad(line)),
                }
            }
        }
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        let mut g = RotationGraph::from_edges(n, &edges)?;
        for (v, ids) in rots {
            if v >= n {
                return Err(EvalError::BadRotation(format!("vertex {v} has no edges")));
            }
            g.set_rotation(v, &ids)?;
        }
        Ok(g)
    }
}

impl fmt::Display for RotationGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        for (v, r) in self.rotation.iter().enumerate() {
            let ids: Vec<String> = r.iter().map(|d| d.edge.to_string()).collect();
            writeln!(f, "rot {v}: {}", ids.join(" "))?;
        }
        Ok(())
    }
}

/// a = x = 0 and the six inner entries equal to 1.
pub fn eo_signature() -> EightVertexSig {
    EightVertexSig::from_ints([0, 1, 1, 1, 1, 1, 1, 0])
}

/// Entries (0,1,1,2,2,1,1,0): weight 2 on the two saddle configurations.
pub fn tutte_signature() -> EightVertexSig {
    EightVertexSig::from_ints([0, 1, 1, 2, 2, 1, 1, 0])
}

pub fn eo_count(g: &RotationGraph, opts: &EvalOptions) -> Result<Scalar, EvalError> {
    brute_force_with(&g.grid("eo", eo_signature())?, opts)
}

/// Medial graph: one vertex per edge of g, and one edge for every pair of
/// edges consecutive in some rotation. Around the medial vertex of an edge
/// u–v the cyclic order is (prev at v, next at u, prev at u, next at v);
/// ports are numbered so that variables x₁…x₄ read prev·v, next·u, next·v,
/// prev·u.
pub fn medial_graph(g: &RotationGraph) -> Result<RotationGraph, EvalError> {
    if g.edges.is_empty() {
        return Err(EvalError::BadGraph("medial graph of an edgeless graph".into()));
    }
    if !g.is_connected() {
        return Err(EvalError::Disconnected);
    }
    let port = |d: Dart, next: bool| match (d.end, next) {
        (1, false) => 0,
        (0, true) => 1,
        (1, true) => 2,
        _ => 3,
    };
    let mut ports: Vec<[Option<usize>; 4]> = vec![[None; 4]; g.edges.len()];
    let mut edges = Vec::new();
    for rot in &g.rotation {
        for &d in rot {
            let s = g.succ(d);
            let id = edges.len();
            edges.push((d.edge, s.edge));
            ports[d.edge][port(d, true)] = Some(id);
            ports[s.edge][port(s, false)] = Some(id);
        }
    }
    let mut m = RotationGraph::from_edges(g.edges.len(), &edges)?;
    // Rotation lists follow port order so that `grid` maps port k to variable k.
    for (v, p) in ports.iter().enumerate() {
        let ids: Vec<usize> = p.iter().map(|x| x.expect("every medial port is used")).collect();
        let mut darts = Vec::with_capacity(4);
        for (k, &e) in ids.iter().enumerate() {
            let (a, b) = m.edges[e];
            // At a loop the first endpoint is the `next` port.
            let end = if a == b { u8::from(!matches!(k, 1 | 2)) } else { u8::from(a != v) };
            darts.push(Dart { edge: e, end });
        }
        m.rotation[v] = darts;
    }
    Ok(m)
}

/// T(g; 3, 3) as half the medial-graph Holant value with the saddle-weighted signature.
pub fn tutte33(g: &RotationGraph, opts: &EvalOptions) -> Result<Scalar, EvalError> {
    if g.edges.is_empty() {
        return Err(EvalError::BadGraph("edgeless graph".into()));
    }
    if !g.is_plane() {
        return Err(EvalError::NonPlanarRotation);
    }
    let medial = medial_graph(g)?;
    let total = brute_force_with(&medial.grid("tutte", tutte_signature())?, opts)?;
    let half = Scalar::Exact(crate::numeric::Cyclo8::from_rational(Rational::new(1, 2).expect("nonzero")));
    Ok(total.mul(&half))
}
