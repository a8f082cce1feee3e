use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::quaternion::Quaternion;

use super::weights::WeightMap;

fn gaussian_quaternion(rng: &mut impl Rng) -> Quaternion {
    loop {
        let q = Quaternion::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        if q.norm() >= 1e-6 {
            return q;
        }
    }
}

/// Random weights satisfying the unitarity condition: Gaussian quaternions on
/// each vertex's outgoing arcs, rescaled so their squared moduli sum to one.
pub fn random_instance(g: &Graph, seed: u64) -> Result<WeightMap> {
    if let Some(u) = (0..g.n()).find(|&u| g.out_degree(u) == 0) {
        return Err(Error::Precondition(format!("vertex {u} has no outgoing arcs")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut q = vec![Quaternion::ZERO; g.m_prime()];
    for u in 0..g.n() {
        let idx: Vec<usize> = g.out_arcs(u).map(|a| a.index).collect();
        for &i in &idx {
            q[i] = gaussian_quaternion(&mut rng);
        }
        let s = idx.iter().map(|&i| q[i].norm_sqr()).sum::<f64>().sqrt();
        for &i in &idx {
            q[i] = q[i].scale(1.0 / s);
        }
    }
    WeightMap::new(g, q)
}

/// Independent Gaussian arc data `(a, b)` with no normalization.
pub fn random_ab(g: &Graph, seed: u64) -> (Vec<Quaternion>, Vec<Quaternion>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = (0..g.m_prime()).map(|_| gaussian_quaternion(&mut rng)).collect();
    let b = (0..g.m_prime()).map(|_| gaussian_quaternion(&mut rng)).collect();
    (a, b)
}

/// Scales the weight of the first arc leaving `vertex` by `factor`.
pub fn perturb_vertex(g: &Graph, q: &WeightMap, vertex: usize, factor: f64) -> Result<WeightMap> {
    let arc = g
        .out_arcs(vertex)
        .next()
        .ok_or_else(|| Error::Precondition(format!("vertex {vertex} has no outgoing arcs")))?;
    let mut out = q.clone();
    out.set(arc.index, q.get(arc.index).scale(factor));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::szegedy::check_unitary_condition;

    #[test]
    fn deterministic_and_unitary() {
        let g = build_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)], &[1]).unwrap();
        let a = random_instance(&g, 42).unwrap();
        assert_eq!(a, random_instance(&g, 42).unwrap());
        assert_ne!(a, random_instance(&g, 43).unwrap());
        assert!(check_unitary_condition(&g, &a).unwrap().pass);
        assert!(a.first_zero().is_none());
    }

    #[test]
    fn isolated_vertex_is_rejected() {
        let g = build_graph(3, &[(0, 1)], &[]).unwrap();
        assert!(random_instance(&g, 1).is_err());
    }

    #[test]
    fn perturbation_fails_at_chosen_vertex() {
        let g = build_graph(3, &[(0, 1), (1, 2), (2, 0)], &[]).unwrap();
        let q = perturb_vertex(&g, &random_instance(&g, 5).unwrap(), 2, 1.5).unwrap();
        assert_eq!(check_unitary_condition(&g, &q).unwrap().failing(), vec![2]);
    }
}
