//! Finite simple graphs with at most one loop per vertex, and their arcs.
//!
//! Arc layout is fixed by the input: edge `k` given as `(u, v)` produces arcs
//! `2k = (u, v)` and `2k + 1 = (v, u)`; loops come after all edges, in input
//! order. Indices here are 0-based.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arc {
    pub origin: usize,
    pub terminus: usize,
    pub index: usize,
}

impl Arc {
    pub fn is_loop(&self) -> bool {
        self.origin == self.terminus
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    loops: Vec<usize>,
    arcs: Vec<Arc>,
    lookup: HashMap<(usize, usize), usize>,
}

/// Validates and lays out a graph.
pub fn build_graph(n: usize, edges: &[(usize, usize)], loops: &[usize]) -> Result<Graph> {
    let mut seen = BTreeSet::new();
    for (k, &(u, v)) in edges.iter().enumerate() {
        for w in [u, v] {
            if w >= n {
                return Err(Error::Validation(format!("edge {k} ({u}, {v}): vertex {w} out of range 0..{n}")));
            }
        }
        if u == v {
            return Err(Error::Validation(format!("edge {k} ({u}, {v}) joins a vertex to itself; list it as a loop")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::Validation(format!("duplicate edge {k} ({u}, {v})")));
        }
    }
    let mut looped = BTreeSet::new();
    for &u in loops {
        if u >= n {
            return Err(Error::Validation(format!("loop at vertex {u} out of range 0..{n}")));
        }
        if !looped.insert(u) {
            return Err(Error::Validation(format!("duplicate loop at vertex {u}")));
        }
    }
    let mut arcs = Vec::with_capacity(2 * edges.len() + loops.len());
    for &(u, v) in edges {
        let i = arcs.len();
        arcs.push(Arc { origin: u, terminus: v, index: i });
        arcs.push(Arc { origin: v, terminus: u, index: i + 1 });
    }
    for &u in loops {
        let i = arcs.len();
        arcs.push(Arc { origin: u, terminus: u, index: i });
    }
    let lookup = arcs.iter().map(|a| ((a.origin, a.terminus), a.index)).collect();
    Ok(Graph { n, edges: edges.to_vec(), loops: loops.to_vec(), arcs, lookup })
}

impl Graph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn loops(&self) -> &[usize] {
        &self.loops
    }

    /// Number of non-loop edges.
    pub fn m0(&self) -> usize {
        self.edges.len()
    }

    /// Number of loops.
    pub fn m1(&self) -> usize {
        self.loops.len()
    }

    /// Number of arcs, `2 m0 + m1`.
    pub fn m_prime(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, index: usize) -> Arc {
        self.arcs[index]
    }

    pub fn arc_index(&self, origin: usize, terminus: usize) -> Option<usize> {
        self.lookup.get(&(origin, terminus)).copied()
    }

    /// Index of `e⁻¹`; a loop is its own inverse.
    pub fn inverse_index(&self, index: usize) -> usize {
        if index < 2 * self.m0() {
            index ^ 1
        } else {
            index
        }
    }

    pub fn out_arcs(&self, u: usize) -> impl Iterator<Item = &Arc> + '_ {
        self.arcs.iter().filter(move |a| a.origin == u)
    }

    /// Number of arcs leaving `u`, a loop counting once.
    pub fn out_degree(&self, u: usize) -> usize {
        self.out_arcs(u).count()
    }

    /// `J₀`: the permutation matrix sending each arc to its inverse.
    pub fn j0_matrix(&self) -> CMatrix {
        let m = self.m_prime();
        CMatrix::from_real(m, m, |e, f| if f == self.inverse_index(e) { 1.0 } else { 0.0 })
    }

    /// `A_{uv}` = number of arcs from `u` to `v`.
    pub fn adjacency_matrix(&self) -> CMatrix {
        let mut a = CMatrix::from_real(self.n, self.n, |_, _| 0.0);
        for arc in &self.arcs {
            a[(arc.origin, arc.terminus)] += 1.0;
        }
        a
    }

    /// Diagonal out-degree matrix.
    pub fn degree_matrix(&self) -> CMatrix {
        CMatrix::from_real(self.n, self.n, |u, v| if u == v { self.out_degree(u) as f64 } else { 0.0 })
    }

    fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a] = b;
            }
        }
        (0..self.n).filter(|&i| find(&mut parent, i) == i).count()
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components() == 1
    }

    /// True iff the graph with loops removed is a tree.
    pub fn is_tree_core(&self) -> bool {
        self.is_connected() && self.m0() + 1 == self.n
    }

    /// Cycle rank `m0 - n + 1` of a connected graph.
    pub fn betti_number(&self) -> isize {
        self.m0() as isize - self.n as isize + 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3_loops() -> Graph {
        build_graph(3, &[(0, 1), (1, 2), (2, 0)], &[0, 1, 2]).unwrap()
    }

    #[test]
    fn k3_with_loops_counts() {
        let g = k3_loops();
        assert_eq!((g.n(), g.m0(), g.m1(), g.m_prime()), (3, 3, 3, 9));
        assert_eq!(g.arc(0), Arc { origin: 0, terminus: 1, index: 0 });
        assert_eq!(g.arc(1), Arc { origin: 1, terminus: 0, index: 1 });
        assert_eq!(g.arc(6), Arc { origin: 0, terminus: 0, index: 6 });
        assert!(!g.is_tree_core());
        assert_eq!(g.out_degree(1), 3);
    }

    #[test]
    fn single_edge() {
        let g = build_graph(2, &[(0, 1)], &[]).unwrap();
        assert_eq!(g.m_prime(), 2);
        assert_eq!(g.arc_index(1, 0), Some(1));
        let j = g.j0_matrix();
        assert_eq!(j, CMatrix::from_real(2, 2, |r, c| if r != c { 1.0 } else { 0.0 }));
    }

    #[test]
    fn single_loop_j0() {
        let g = build_graph(1, &[], &[0]).unwrap();
        assert_eq!(g.j0_matrix(), CMatrix::identity(1));
    }

    #[test]
    fn j0_is_involution_and_matches_inverse() {
        let g = k3_loops();
        let j = g.j0_matrix();
        assert_eq!(j.matmul(&j).unwrap(), CMatrix::identity(9));
        for a in g.arcs() {
            let inv = g.arc(g.inverse_index(a.index));
            assert_eq!((inv.origin, inv.terminus), (a.terminus, a.origin));
            assert_eq!(j[(a.index, inv.index)].re, 1.0);
        }
    }

    #[test]
    fn trees() {
        assert!(build_graph(3, &[(0, 1), (1, 2)], &[]).unwrap().is_tree_core());
        assert!(build_graph(4, &[(0, 1), (0, 2), (0, 3)], &[0]).unwrap().is_tree_core());
        assert!(!build_graph(4, &[(0, 1), (2, 3)], &[]).unwrap().is_tree_core());
    }

    #[test]
    fn validation_names_offender() {
        let e = build_graph(3, &[(0, 1), (1, 0)], &[]).unwrap_err();
        assert!(e.to_string().contains("duplicate edge 1 (1, 0)"), "{e}");
        let e = build_graph(3, &[(0, 3)], &[]).unwrap_err();
        assert!(e.to_string().contains("vertex 3"), "{e}");
        let e = build_graph(3, &[], &[2, 2]).unwrap_err();
        assert!(e.to_string().contains("duplicate loop at vertex 2"), "{e}");
        assert!(build_graph(3, &[(1, 1)], &[]).is_err());
    }

    #[test]
    fn adjacency_and_degree() {
        let g = k3_loops();
        let a = g.adjacency_matrix();
        assert!((0..3).all(|u| (0..3).all(|v| a[(u, v)].re == 1.0)));
        assert_eq!(g.degree_matrix()[(2, 2)].re, 3.0);
    }
}
