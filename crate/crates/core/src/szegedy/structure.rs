use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::qmatrix::QMatrix;
use crate::tol;

use super::walk::WalkOperators;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureCheck {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub checks: Vec<StructureCheck>,
    pub pass: bool,
}

fn check(name: &str, lhs: &QMatrix, rhs: &QMatrix, tolerance: f64) -> StructureCheck {
    let residual = lhs.max_diff(rhs);
    StructureCheck { name: name.to_string(), residual, tolerance, pass: residual <= tolerance }
}

/// The identities tying `K`, `L`, `J₀`, `W̃` and `U` together, each as a max
/// entry residual. The first needs the unitarity condition.
pub fn verify_structure(ops: &WalkOperators) -> Result<StructureReport> {
    let n = ops.w_tilde.rows();
    let m = ops.u.rows();
    let two = QMatrix::identity(n).scale(2.0);
    let (ks, ls) = (ops.k.adjoint(), ops.l.adjoint());
    let us = ops.u.adjoint();
    let checks = vec![
        check("K*K = 2I", &ks.matmul(&ops.k)?, &two, tol::STRUCTURE),
        check("L*L = 2I", &ls.matmul(&ops.l)?, &two, tol::STRUCTURE),
        check("J0 K L* = L L*", &ops.j0.matmul(&ops.k)?.matmul(&ls)?, &ops.l.matmul(&ls)?, tol::STRUCTURE),
        check("L* J0 L = W~", &ls.matmul(&ops.j0)?.matmul(&ops.l)?, &ops.w_tilde, tol::STRUCTURE),
        check("U*U = I", &us.matmul(&ops.u)?, &QMatrix::identity(m), tol::UNITARY),
        check("UU* = I", &ops.u.matmul(&us)?, &QMatrix::identity(m), tol::UNITARY),
    ];
    let pass = checks.iter().all(|c| c.pass);
    Ok(StructureReport { checks, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;
    use crate::szegedy::{build_walk, WeightMap};

    #[test]
    fn uniform_star_passes() {
        let g = build_graph(4, &[(0, 1), (0, 2), (0, 3)], &[0]).unwrap();
        let r = verify_structure(&build_walk(&g, &WeightMap::uniform(&g)).unwrap()).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn non_unitary_weights_flag_kk() {
        let g = build_graph(3, &[(0, 1), (1, 2)], &[]).unwrap();
        let mut q = WeightMap::uniform(&g);
        q.set(0, q.get(0).scale(2.0));
        let r = verify_structure(&build_walk(&g, &q).unwrap()).unwrap();
        assert!(!r.pass);
        assert!(!r.checks[0].pass);
        assert!(r.checks[2].pass && r.checks[3].pass);
    }
}
