use crate::cmatrix::{dot_conj, vec_norm, CMatrix, C64, CZERO};
use crate::error::Result;

const MAX_SWEEPS: usize = 80;

/// Singular value decomposition `A V = W` where the columns of `W` are
/// mutually orthogonal with norms equal to the singular values.
#[derive(Clone, Debug)]
pub struct Svd {
    /// One value per column of `A`, in column order (not sorted).
    pub singular_values: Vec<f64>,
    /// Unitary `n x n` right factor.
    pub v: CMatrix,
}

impl Svd {
    pub fn max_singular(&self) -> f64 {
        self.singular_values.iter().cloned().fold(0.0, f64::max)
    }
}

/// One-sided (Hestenes) Jacobi SVD. Works for any shape; columns that end up
/// dependent are driven to zero.
pub fn svd(a: &CMatrix) -> Result<Svd> {
    let m = a.rows();
    let n = a.cols();
    let mut cols: Vec<Vec<C64>> = (0..n).map(|j| a.column(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { C64::new(1.0, 0.0) } else { CZERO }).collect())
        .collect();
    let eps = f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let alpha: f64 = cols[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = cols[q].iter().map(|z| z.norm_sqr()).sum();
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma = dot_conj(&cols[p], &cols[q]);
                let g = gamma.norm();
                if g <= eps * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                // columns: a_p' = c a_p - s e^{-iφ} a_q ; a_q' = s e^{iφ} a_p + c a_q
                let sp = phase.conj() * s;
                let sq = phase * s;
                for i in 0..m {
                    let ap = cols[p][i];
                    let aq = cols[q][i];
                    cols[p][i] = ap * c - aq * sp;
                    cols[q][i] = ap * sq + aq * c;
                }
                for i in 0..n {
                    let vp = v[p][i];
                    let vq = v[q][i];
                    v[p][i] = vp * c - vq * sp;
                    v[q][i] = vp * sq + vq * c;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let singular_values = cols.iter().map(|c| vec_norm(c)).collect();
    let v = CMatrix::from_columns(&v)?;
    Ok(Svd { singular_values, v })
}

/// Number of singular values above `rel_tol * σ_max`.
pub fn numerical_rank(a: &CMatrix, rel_tol: f64) -> Result<usize> {
    let s = svd(a)?;
    let smax = s.max_singular();
    if smax == 0.0 {
        return Ok(0);
    }
    Ok(s.singular_values.iter().filter(|&&x| x > rel_tol * smax).count())
}

/// Orthonormal basis of the right null space: columns of `V` whose singular
/// value is at most `rel_tol * σ_max`.
pub fn nullspace(a: &CMatrix, rel_tol: f64) -> Result<Vec<Vec<C64>>> {
    let s = svd(a)?;
    let smax = s.max_singular();
    Ok(s.singular_values
        .iter()
        .enumerate()
        .filter(|(_, &x)| smax == 0.0 || x <= rel_tol * smax)
        .map(|(j, _)| s.v.column(j))
        .collect())
}

/// Orthonormal basis (modified Gram-Schmidt, two passes) for the span of the
/// given vectors. Vectors whose remainder falls below `rel_tol` of their
/// original norm are dropped.
pub fn orthonormal_basis(vectors: &[Vec<C64>], rel_tol: f64) -> Vec<Vec<C64>> {
    let mut basis: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        let n0 = vec_norm(v);
        if n0 == 0.0 {
            continue;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let p = dot_conj(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= bi * p;
                }
            }
        }
        let n1 = vec_norm(&w);
        if n1 > rel_tol * n0 {
            for wi in &mut w {
                *wi /= n1;
            }
            basis.push(w);
        }
    }
    basis
}
