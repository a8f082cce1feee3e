use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::qmatrix::QMatrix;
use crate::quaternion::Quaternion;
use crate::tol;

use super::weights::WeightMap;

/// `K`, `L` and the matrices built from them, for arbitrary arc data `a`, `b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeOperators {
    pub k: QMatrix,
    pub l: QMatrix,
    pub j0: QMatrix,
    /// `K L* - J₀`
    pub kl_minus_j0: QMatrix,
    /// `L* K`
    pub w_tilde: QMatrix,
    /// `L* J₀ K`
    pub d_tilde: QMatrix,
}

fn j0_quaternionic(g: &Graph) -> QMatrix {
    let m = g.m_prime();
    QMatrix::from_fn(m, m, |e, f| if f == g.inverse_index(e) { Quaternion::ONE } else { Quaternion::ZERO })
}

/// `K_{ev} = a(e)` when `o(e) = v`, `L_{ev} = b(e)` when `t(e) = v`.
pub fn edge_operators(g: &Graph, a: &[Quaternion], b: &[Quaternion]) -> Result<EdgeOperators> {
    let m = g.m_prime();
    if a.len() != m || b.len() != m {
        return Err(Error::Validation(format!("arc data of lengths {} and {} for {m} arcs", a.len(), b.len())));
    }
    let n = g.n();
    let mut k = QMatrix::zeros(m, n);
    let mut l = QMatrix::zeros(m, n);
    for arc in g.arcs() {
        k[(arc.index, arc.origin)] = a[arc.index];
        l[(arc.index, arc.terminus)] = b[arc.index];
    }
    let j0 = j0_quaternionic(g);
    let ls = l.adjoint();
    let kl_minus_j0 = &k.matmul(&ls)? - &j0;
    let w_tilde = ls.matmul(&k)?;
    let d_tilde = ls.matmul(&j0.matmul(&k)?)?;
    Ok(EdgeOperators { k, l, j0, kl_minus_j0, w_tilde, d_tilde })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WalkOperators {
    pub u: QMatrix,
    pub k: QMatrix,
    pub l: QMatrix,
    pub w_tilde: QMatrix,
    pub d_tilde: QMatrix,
    /// `W̃ / 2`
    pub t: QMatrix,
    pub j0: QMatrix,
}

/// `U` written out entrywise from the weights.
pub fn transition_matrix(g: &Graph, q: &WeightMap) -> QMatrix {
    let m = g.m_prime();
    QMatrix::from_fn(m, m, |e, f| {
        let (ae, af) = (g.arc(e), g.arc(f));
        let finv = g.inverse_index(f);
        if f == g.inverse_index(e) {
            Quaternion::real(2.0 * q.get(e).norm_sqr() - 1.0)
        } else if af.terminus == ae.origin {
            (q.get(e) * q.get(finv).conj()).scale(2.0)
        } else {
            Quaternion::ZERO
        }
    })
}

/// Coin `C` (a reflection `2|φ_u⟩⟨φ_u| - I` on the arcs entering each vertex)
/// and shift `S|e⟩ = |e⁻¹⟩`, returned as `(C, S)`.
pub fn coin_and_shift(g: &Graph, q: &WeightMap) -> (QMatrix, QMatrix) {
    let m = g.m_prime();
    let coin = QMatrix::from_fn(m, m, |gi, fi| {
        let (ag, af) = (g.arc(gi), g.arc(fi));
        if ag.terminus != af.terminus {
            return Quaternion::ZERO;
        }
        let phi_g = q.get(g.inverse_index(gi));
        let phi_f = q.get(g.inverse_index(fi));
        let mut x = (phi_g * phi_f.conj()).scale(2.0);
        if gi == fi {
            x -= Quaternion::ONE;
        }
        x
    });
    (coin, j0_quaternionic(g))
}

/// Builds `U` and the `K`, `L`, `W̃`, `D̃`, `T` apparatus, checking that the
/// three constructions of `U` agree and that `W̃` is Hermitian.
pub fn build_walk(g: &Graph, q: &WeightMap) -> Result<WalkOperators> {
    if q.as_slice().len() != g.m_prime() {
        return Err(Error::Validation(format!("{} weights for {} arcs", q.as_slice().len(), g.m_prime())));
    }
    if let Some(i) = q.first_zero() {
        let a = g.arc(i);
        return Err(Error::Validation(format!("arc {}->{} has zero weight", a.origin, a.terminus)));
    }
    let r2 = std::f64::consts::SQRT_2;
    let a: Vec<Quaternion> = (0..g.m_prime()).map(|e| q.get(e).scale(r2)).collect();
    let b: Vec<Quaternion> = (0..g.m_prime()).map(|e| q.get(g.inverse_index(e)).scale(r2)).collect();
    let ops = edge_operators(g, &a, &b)?;
    let u = transition_matrix(g, q);
    let (coin, shift) = coin_and_shift(g, q);
    let sc = shift.matmul(&coin)?;
    let scale = q.as_slice().iter().fold(1.0f64, |m, x| m.max(x.norm_sqr()));
    let d = u.max_diff(&sc);
    if d > tol::CONSTRUCTION * scale {
        return Err(Error::Internal(format!("entrywise U and S·C differ by {d:.3e}")));
    }
    let d = u.max_diff(&ops.kl_minus_j0);
    if d > tol::CONSTRUCTION * 4.0 * scale {
        return Err(Error::Internal(format!("entrywise U and KL*-J0 differ by {d:.3e}")));
    }
    let h = ops.w_tilde.max_diff(&ops.w_tilde.adjoint());
    if h > tol::STRUCTURE * scale {
        return Err(Error::Internal(format!("W̃ deviates from Hermitian by {h:.3e}")));
    }
    let t = ops.w_tilde.scale(0.5);
    Ok(WalkOperators { u, k: ops.k, l: ops.l, w_tilde: ops.w_tilde, d_tilde: ops.d_tilde, t, j0: ops.j0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn single_loop_walk_is_one() {
        let g = build_graph(1, &[], &[0]).unwrap();
        let ops = build_walk(&g, &WeightMap::uniform(&g)).unwrap();
        assert_eq!(ops.u, QMatrix::identity(1));
        assert!(ops.w_tilde[(0, 0)].max_abs_diff(Quaternion::real(2.0)) < 1e-15);
    }

    #[test]
    fn single_edge_walk() {
        // each vertex has one outgoing arc of weight 1: U_{e,e⁻¹} = 1, nothing else
        let g = build_graph(2, &[(0, 1)], &[]).unwrap();
        let ops = build_walk(&g, &WeightMap::uniform(&g)).unwrap();
        assert_eq!(ops.u, QMatrix::from_fn(2, 2, |r, c| Quaternion::real(if r != c { 1.0 } else { 0.0 })));
        assert!(ops.d_tilde.max_diff(&QMatrix::identity(2).scale(2.0)) < 1e-15);
    }

    #[test]
    fn j0_k_equals_l() {
        let g = build_graph(3, &[(0, 1), (1, 2)], &[2]).unwrap();
        let q = WeightMap::from_fn(&g, |u, v| Quaternion::new(1.0 + u as f64, 0.5, -(v as f64), 0.25));
        let ops = build_walk(&g, &q).unwrap();
        assert!(ops.j0.matmul(&ops.k).unwrap().max_diff(&ops.l) < 1e-15);
    }
}
