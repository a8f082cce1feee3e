use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmatrix::{self, QVector};
use crate::quaternion::Quaternion;
use crate::tol;

use super::spectrum::spectral_map;
use super::walk::WalkOperators;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftedEigenvector {
    pub lambda: Complex64,
    pub mu: f64,
    /// The `W̃`-eigenvector that was lifted.
    pub source: QVector,
    /// `e = J₀Lv - Lv λ⁻¹`, unnormalized.
    pub vector: QVector,
    pub normalized: QVector,
    /// `‖Ue - eλ‖ / ‖e‖`
    pub residual: f64,
    /// `e j`, an eigenvector for `λ̄`.
    pub companion: QVector,
    pub companion_residual: f64,
}

/// Lifts `v` with `W̃v = vμ`, `μ = λ + 1/λ`, to an eigenvector of `U` for `λ`.
pub fn lift_eigenvector(ops: &WalkOperators, v: &[Quaternion], lambda: Complex64) -> Result<LiftedEigenvector> {
    if lambda.norm() == 0.0 {
        return Err(Error::Domain("λ = 0 cannot be lifted".into()));
    }
    let mu_c = lambda + lambda.inv();
    if mu_c.im.abs() > tol::EIGENVECTOR * mu_c.norm().max(1.0) {
        return Err(Error::Domain(format!("λ + 1/λ = {mu_c} is not real")));
    }
    let mu = mu_c.re;
    let nv = qmatrix::vec_norm(v);
    if nv == 0.0 {
        return Err(Error::Precondition("zero vector cannot be lifted".into()));
    }
    let wv = ops.w_tilde.mul_vec(v)?;
    let pre = qmatrix::vec_norm(&qmatrix::vec_sub(&wv, &qmatrix::vec_scale(v, mu))) / nv;
    if pre > tol::EIGENVECTOR * mu.abs().max(1.0) {
        return Err(Error::Precondition(format!("v is not a W̃-eigenvector for μ = {mu:.9} (residual {pre:.3e})")));
    }
    let lv = ops.l.mul_vec(v)?;
    let j0lv = ops.j0.mul_vec(&lv)?;
    let linv = Quaternion::from(lambda.inv());
    let vector = qmatrix::vec_sub(&j0lv, &qmatrix::right_mul(&lv, linv));
    let norm = qmatrix::vec_norm(&vector);
    let reference = qmatrix::vec_norm(&lv);
    if norm <= 1e-10 * reference {
        return Err(Error::DegenerateLift { norm, reference });
    }
    let residual = qmatrix::eigen_residual(&ops.u, &vector, lambda.into())?;
    let companion = qmatrix::right_mul(&vector, Quaternion::J);
    let companion_residual = qmatrix::eigen_residual(&ops.u, &companion, lambda.conj().into())?;
    Ok(LiftedEigenvector {
        lambda,
        mu,
        source: v.to_vec(),
        normalized: qmatrix::vec_scale(&vector, 1.0 / norm),
        vector,
        residual,
        companion,
        companion_residual,
    })
}

/// Canonical ℍ-basis (reduced column echelon) of `{v : W̃v = vμ}`.
pub fn eigenspace_basis(ops: &WalkOperators, mu: f64) -> Result<Vec<QVector>> {
    qmatrix::quaternionic_kernel(&ops.w_tilde.shift(mu))
}

/// Lifts of `v` and `v j` for every canonical basis vector `v` of the
/// `μ`-eigenspace, all for the eigenvalue `λ₊` with nonnegative imaginary part.
pub fn lift_family(ops: &WalkOperators, mu: f64) -> Result<Vec<LiftedEigenvector>> {
    let img = spectral_map(mu)?;
    let basis = eigenspace_basis(ops, img.mu_used)?;
    if basis.is_empty() {
        return Err(Error::Domain(format!("μ = {mu} is not an eigenvalue of ψ(W̃)")));
    }
    let mut out = Vec::with_capacity(2 * basis.len());
    for v in &basis {
        out.push(lift_eigenvector(ops, v, img.plus)?);
        out.push(lift_eigenvector(ops, &qmatrix::right_mul(v, Quaternion::J), img.plus)?);
    }
    Ok(out)
}
