use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::quaternion::Quaternion;
use crate::tol;

/// Arc weights, indexed by arc position.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightMap {
    q: Vec<Quaternion>,
}

impl WeightMap {
    pub fn new(g: &Graph, q: Vec<Quaternion>) -> Result<Self> {
        if q.len() != g.m_prime() {
            return Err(Error::Validation(format!("{} weights for {} arcs", q.len(), g.m_prime())));
        }
        Ok(WeightMap { q })
    }

    pub fn from_fn(g: &Graph, f: impl Fn(usize, usize) -> Quaternion) -> Self {
        WeightMap { q: g.arcs().iter().map(|a| f(a.origin, a.terminus)).collect() }
    }

    /// `q(e) = 1/√deg(o(e))`, which always satisfies the unitarity condition.
    pub fn uniform(g: &Graph) -> Self {
        WeightMap::from_fn(g, |u, _| Quaternion::real(1.0 / (g.out_degree(u) as f64).sqrt()))
    }

    pub fn get(&self, arc: usize) -> Quaternion {
        self.q[arc]
    }

    pub fn set(&mut self, arc: usize, value: Quaternion) {
        self.q[arc] = value;
    }

    pub fn as_slice(&self) -> &[Quaternion] {
        &self.q
    }

    /// First arc carrying an exactly zero weight.
    pub fn first_zero(&self) -> Option<usize> {
        self.q.iter().position(|x| x.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexSum {
    pub vertex: usize,
    /// `Σ_{o(g)=u} |q(g)|²`
    pub sum: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitarityReport {
    pub vertices: Vec<VertexSum>,
    pub tolerance: f64,
    pub pass: bool,
}

impl UnitarityReport {
    pub fn failing(&self) -> Vec<usize> {
        self.vertices.iter().filter(|v| !v.pass).map(|v| v.vertex).collect()
    }
}

/// Per-vertex sums of squared weight moduli over outgoing arcs.
pub fn check_unitary_condition(g: &Graph, q: &WeightMap) -> Result<UnitarityReport> {
    if q.as_slice().len() != g.m_prime() {
        return Err(Error::Validation(format!("{} weights for {} arcs", q.as_slice().len(), g.m_prime())));
    }
    if let Some(i) = q.first_zero() {
        let a = g.arc(i);
        return Err(Error::Validation(format!("arc {}->{} has zero weight", a.origin, a.terminus)));
    }
    let mut sums = vec![0.0; g.n()];
    for a in g.arcs() {
        sums[a.origin] += q.get(a.index).norm_sqr();
    }
    let vertices: Vec<VertexSum> = sums
        .into_iter()
        .enumerate()
        .map(|(vertex, sum)| VertexSum { vertex, sum, pass: (sum - 1.0).abs() <= tol::UNITARY_CONDITION })
        .collect();
    let pass = vertices.iter().all(|v| v.pass);
    Ok(UnitarityReport { vertices, tolerance: tol::UNITARY_CONDITION, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn uniform_weights_pass() {
        let g = build_graph(4, &[(0, 1), (0, 2), (0, 3)], &[1]).unwrap();
        let r = check_unitary_condition(&g, &WeightMap::uniform(&g)).unwrap();
        assert!(r.pass);
        assert!(r.vertices.iter().all(|v| (v.sum - 1.0).abs() < 1e-15));
    }

    #[test]
    fn doubled_weight_fails_at_its_origin() {
        let g = build_graph(3, &[(0, 1), (1, 2)], &[]).unwrap();
        let mut q = WeightMap::uniform(&g);
        q.set(2, q.get(2).scale(2.0));
        let r = check_unitary_condition(&g, &q).unwrap();
        assert!(!r.pass);
        assert_eq!(r.failing(), vec![1]);
    }

    #[test]
    fn zero_weight_is_rejected() {
        let g = build_graph(2, &[(0, 1)], &[]).unwrap();
        let q = WeightMap::new(&g, vec![Quaternion::ONE, Quaternion::ZERO]).unwrap();
        let e = check_unitary_condition(&g, &q).unwrap_err();
        assert!(e.to_string().contains("1->0"), "{e}");
    }
}
