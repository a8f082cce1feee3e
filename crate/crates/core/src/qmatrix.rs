//! Dense quaternionic matrices, the complexification ψ, and right spectra.
//!
//! Every matrix splits uniquely as `M = A + jB` with complex `A` and `B`;
//! ψ sends it to the complex block matrix `[[A, -B̄], [B, Ā]]`. ψ is
//! multiplicative and compatible with conjugate transposition, so right
//! eigenvalue problems reduce to ordinary complex ones.

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmatrix::{CMatrix, C64, CZERO};
use crate::error::{Error, Result};
use crate::linalg;
use crate::quaternion::{ConjugacyClass, Quaternion};
use crate::tol;

/// Column vector over ℍ, acted on by matrices from the left and by scalars from the right.
pub type QVector = Vec<Quaternion>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Quaternion::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Quaternion::ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(QMatrix::from_fn(r, c, |i, j| rows[i][j]))
    }

    pub fn from_columns(columns: &[QVector]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Shape("columns of unequal length".into()));
        }
        Ok(QMatrix::from_fn(rows, cols, |i, j| columns[j][i]))
    }

    pub fn diagonal(values: &[Quaternion]) -> Self {
        let n = values.len();
        QMatrix::from_fn(n, n, |i, j| if i == j { values[i] } else { Quaternion::ZERO })
    }

    /// Inverse of ψ on matrices with the ψ block structure: reads `A` and `B`
    /// from the left block column.
    pub fn from_psi(c: &CMatrix) -> Result<Self> {
        if !c.rows().is_multiple_of(2) || !c.cols().is_multiple_of(2) {
            return Err(Error::Shape("ψ-images have even dimensions".into()));
        }
        let (m, n) = (c.rows() / 2, c.cols() / 2);
        Ok(QMatrix::from_fn(m, n, |i, j| Quaternion::from_symplectic(c[(i, j)], c[(m + i, j)])))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, c: usize) -> QVector {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    /// Conjugate transpose `(M*)_{rs} = (M_{sr})*`.
    pub fn adjoint(&self) -> Self {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: f64) -> Self {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|q| q.scale(s)).collect() }
    }

    pub fn matmul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    out.data[i * other.cols + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Quaternion]) -> Result<QVector> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, q| m.max(q.norm()))
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_diff(&self, other: &QMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        self.data.iter().zip(&other.data).fold(0.0, |m, (a, b)| m.max((*a - *b).norm()))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.max_diff(&self.adjoint()) <= tol
    }

    /// Simplex part `A` of `M = A + jB`.
    pub fn simplex(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].simplex())
    }

    /// Perplex part `B` of `M = A + jB`.
    pub fn perplex(&self) -> CMatrix {
        CMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].perplex())
    }

    /// The complexification `[[A, -B̄], [B, Ā]]`.
    pub fn psi(&self) -> CMatrix {
        let (m, n) = (self.rows, self.cols);
        let mut out = CMatrix::zeros(2 * m, 2 * n);
        for i in 0..m {
            for j in 0..n {
                let (a, b) = self[(i, j)].symplectic();
                out[(i, j)] = a;
                out[(i, n + j)] = -b.conj();
                out[(m + i, j)] = b;
                out[(m + i, n + j)] = a.conj();
            }
        }
        out
    }

    /// `self - s I` for a real shift.
    pub fn shift(&self, s: f64) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] -= Quaternion::real(s);
        }
        m
    }

    /// Evaluates a real-coefficient polynomial (ascending coefficients) at a square matrix.
    pub fn eval_real_poly(&self, coeffs: &[f64]) -> Result<QMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut acc = QMatrix::zeros(n, n);
        for &c in coeffs.iter().rev() {
            acc = acc.matmul(self)?;
            for i in 0..n {
                acc[(i, i)] += Quaternion::real(c);
            }
        }
        Ok(acc)
    }

    pub fn pow(&self, k: usize) -> Result<QMatrix> {
        let mut acc = QMatrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (r, c): (usize, usize)) -> &Quaternion {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Quaternion {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, o: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in add");
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| *a + *b).collect() }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, o: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch in sub");
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| *a - *b).collect() }
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, o: &QMatrix) -> QMatrix {
        self.matmul(o).expect("shape mismatch in mul")
    }
}

// ---------------------------------------------------------------------------
// vectors

pub fn vec_norm(v: &[Quaternion]) -> f64 {
    v.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
}

/// `v x` with the scalar acting from the right.
pub fn right_mul(v: &[Quaternion], x: Quaternion) -> QVector {
    v.iter().map(|&q| q * x).collect()
}

pub fn vec_sub(a: &[Quaternion], b: &[Quaternion]) -> QVector {
    a.iter().zip(b).map(|(x, y)| *x - *y).collect()
}

pub fn vec_scale(v: &[Quaternion], s: f64) -> QVector {
    v.iter().map(|q| q.scale(s)).collect()
}

/// The complex column `(u; w)` of a vector `v = u + j w`.
pub fn vec_to_complex(v: &[Quaternion]) -> Vec<C64> {
    let n = v.len();
    let mut out = vec![CZERO; 2 * n];
    for (i, q) in v.iter().enumerate() {
        let (a, b) = q.symplectic();
        out[i] = a;
        out[n + i] = b;
    }
    out
}

/// Inverse of [`vec_to_complex`].
pub fn vec_from_complex(c: &[C64]) -> Result<QVector> {
    if !c.len().is_multiple_of(2) {
        return Err(Error::Shape("complex image of a quaternion vector has even length".into()));
    }
    let n = c.len() / 2;
    Ok((0..n).map(|i| Quaternion::from_symplectic(c[i], c[n + i])).collect())
}

/// `‖M v - v λ‖ / ‖v‖` for a quaternion scalar λ.
pub fn eigen_residual(m: &QMatrix, v: &[Quaternion], lambda: Quaternion) -> Result<f64> {
    let mv = m.mul_vec(v)?;
    let vl = right_mul(v, lambda);
    let nv = vec_norm(v);
    if nv == 0.0 {
        return Err(Error::Domain("zero vector is not an eigenvector".into()));
    }
    Ok(vec_norm(&vec_sub(&mv, &vl)) / nv)
}

// ---------------------------------------------------------------------------
// right spectrum

/// A right eigenvalue class together with its multiplicity: the number of
/// ψ-eigenvalues in the class, halved.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RightEigenvalue {
    pub class: ConjugacyClass,
    pub multiplicity: usize,
}

/// A cluster of class representatives.
#[derive(Clone, Debug)]
pub(crate) struct Cluster {
    pub rep: C64,
    pub count: usize,
}

/// Single-linkage grouping of the values' class representatives (`Im ≥ 0`).
/// Returns clusters ordered by ascending real part then modulus, and the
/// smallest distance between distinct clusters (relative), if any.
pub(crate) fn cluster_classes(values: &[C64], tau: f64) -> (Vec<Cluster>, Option<f64>) {
    let reps: Vec<C64> = values.iter().map(|z| C64::new(z.re, z.im.abs())).collect();
    let n = reps.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut k = i;
        while p[k] != r {
            let next = p[k];
            p[k] = r;
            k = next;
        }
        r
    }
    let dist = |a: C64, b: C64| (a - b).norm() / a.norm().max(b.norm()).max(1.0);
    for i in 0..n {
        for j in i + 1..n {
            if dist(reps[i], reps[j]) <= tau {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Vec<C64>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, members)) => members.push(reps[i]),
            None => groups.push((r, vec![reps[i]])),
        }
    }
    let mut clusters: Vec<Cluster> = groups
        .into_iter()
        .map(|(_, members)| {
            let count = members.len();
            let mean = members.iter().sum::<C64>() / count as f64;
            let rep = if mean.im <= tau * mean.norm().max(1.0) { C64::new(mean.re, 0.0) } else { mean };
            Cluster { rep, count }
        })
        .collect();
    clusters.sort_by(|a, b| a.rep.re.total_cmp(&b.rep.re).then(a.rep.norm().total_cmp(&b.rep.norm())));
    let mut gap: Option<f64> = None;
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            let d = dist(clusters[i].rep, clusters[j].rep);
            gap = Some(gap.map_or(d, |g: f64| g.min(d)));
        }
    }
    (clusters, gap)
}

/// Right eigenvalues of a square quaternionic matrix as conjugacy classes
/// with multiplicities summing to `n`.
pub fn right_eigenvalues(m: &QMatrix) -> Result<Vec<RightEigenvalue>> {
    if !m.is_square() {
        return Err(Error::Shape("right eigenvalues of a non-square matrix".into()));
    }
    let vals = linalg::eigenvalues(&m.psi())?;
    classes_from_psi_spectrum(&vals)
}

/// Groups a ψ-spectrum (which comes in conjugate pairs) into classes.
pub fn classes_from_psi_spectrum(vals: &[C64]) -> Result<Vec<RightEigenvalue>> {
    for tau in [tol::CLASS, tol::CLUSTER] {
        let (clusters, _) = cluster_classes(vals, tau);
        if clusters.iter().all(|c| c.count % 2 == 0) {
            return Ok(clusters
                .into_iter()
                .map(|c| RightEigenvalue { class: ConjugacyClass { rep: c.rep }, multiplicity: c.count / 2 })
                .collect());
        }
    }
    Err(Error::Internal("ψ-spectrum does not split into conjugate pairs".into()))
}

/// A right eigenvector for a complex eigenvalue λ together with `v j`, which
/// is an eigenvector for λ̄.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RightEigenvector {
    pub eigenvalue: Complex64,
    pub vector: QVector,
    pub conjugate_vector: QVector,
    pub residual: f64,
    pub conjugate_residual: f64,
}

/// Fixes the phase of a complex vector: unit norm, and the first entry of
/// significant size is real positive.
fn normalize_phase(v: &mut [C64]) {
    let norm = crate::cmatrix::vec_norm(v);
    if norm == 0.0 {
        return;
    }
    let big = v.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if let Some(p) = v.iter().find(|z| z.norm() > 0.5 * big).copied() {
        let phase = p.conj() / (p.norm() * norm);
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

/// Computes `v` with `M v = v λ` from a null vector of `ψ(M) - λ I`.
pub fn right_eigenvector(m: &QMatrix, lambda: Complex64) -> Result<RightEigenvector> {
    if !m.is_square() {
        return Err(Error::Shape("right eigenvector of a non-square matrix".into()));
    }
    let p = m.psi();
    let shifted = p.shift(lambda);
    let svd = linalg::svd(&shifted)?;
    let (jmin, smin) = svd
        .singular_values
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best });
    let scale = p.frobenius().max(lambda.norm()).max(1.0);
    if m.rows() == 0 || smin > tol::RANK * scale {
        return Err(Error::Domain(format!(
            "{lambda} is not an eigenvalue of ψ(M) (smallest singular value {smin:.3e})"
        )));
    }
    let mut c = svd.v.column(jmin);
    normalize_phase(&mut c);
    let vector = vec_from_complex(&c)?;
    let conjugate_vector = right_mul(&vector, Quaternion::J);
    let residual = eigen_residual(m, &vector, lambda.into())?;
    let conjugate_residual = eigen_residual(m, &conjugate_vector, lambda.conj().into())?;
    Ok(RightEigenvector { eigenvalue: lambda, vector, conjugate_vector, residual, conjugate_residual })
}

// ---------------------------------------------------------------------------
// ℍ-linear algebra

/// Rank over ℍ of a family of vectors: half the complex rank of ψ of the
/// matrix with those columns.
pub fn h_rank(vectors: &[QVector]) -> Result<usize> {
    if vectors.is_empty() {
        return Ok(0);
    }
    let m = QMatrix::from_columns(vectors)?;
    let r = linalg::numerical_rank(&m.psi(), tol::RANK)?;
    Ok(r / 2)
}

/// ℍ-linear independence via the complex column rank of `ψ([v₁ … v_m])`.
pub fn h_linear_independent(vectors: &[QVector]) -> Result<bool> {
    if vectors.is_empty() {
        return Err(Error::Precondition("independence of an empty family".into()));
    }
    let m = QMatrix::from_columns(vectors)?;
    let r = linalg::numerical_rank(&m.psi(), tol::RANK)?;
    Ok(r == 2 * vectors.len())
}

/// True when `a = b x` for some nonzero quaternion `x`.
pub fn right_proportional(a: &[Quaternion], b: &[Quaternion]) -> Result<bool> {
    let scale = vec_norm(a).max(vec_norm(b));
    if vec_norm(a) <= tol::RANK * scale || vec_norm(b) <= tol::RANK * scale || scale == 0.0 {
        return Ok(false);
    }
    Ok(!h_linear_independent(&[a.to_vec(), b.to_vec()])?)
}

/// Canonical basis for the right ℍ-span of `vectors`: reduced column echelon
/// form, each pivot entry equal to one and every other basis vector zero
/// there. Numerically dependent vectors are dropped.
pub fn column_echelon(vectors: &[QVector]) -> Result<Vec<QVector>> {
    let mut cols: Vec<QVector> = vectors.to_vec();
    if cols.is_empty() {
        return Ok(cols);
    }
    let n = cols[0].len();
    if cols.iter().any(|c| c.len() != n) {
        return Err(Error::Shape("vectors of unequal length".into()));
    }
    let scale = cols.iter().flat_map(|c| c.iter()).fold(0.0f64, |m, q| m.max(q.norm()));
    if scale == 0.0 {
        return Ok(Vec::new());
    }
    let thresh = tol::RANK * scale;
    let mut k = 0;
    for row in 0..n {
        if k == cols.len() {
            break;
        }
        let (best, bmag) = (k..cols.len())
            .map(|c| (c, cols[c][row].norm()))
            .fold((k, -1.0), |b, cur| if cur.1 > b.1 { cur } else { b });
        if bmag <= thresh {
            continue;
        }
        cols.swap(k, best);
        let pinv = cols[k][row].inv()?;
        cols[k] = right_mul(&cols[k], pinv);
        cols[k][row] = Quaternion::ONE;
        for c in 0..cols.len() {
            if c == k {
                continue;
            }
            let f = cols[c][row];
            if f.is_zero() {
                continue;
            }
            let sub = right_mul(&cols[k], f);
            cols[c] = vec_sub(&cols[c], &sub);
            cols[c][row] = Quaternion::ZERO;
        }
        k += 1;
    }
    cols.truncate(k);
    Ok(cols)
}

/// ℍ-basis of the right kernel `{v : M v = 0}`, in reduced column echelon form.
///
/// The complex kernel of ψ(M) is closed under `(u, w) ↦ (-w̄, ū)`; each
/// quaternionic vector accounts for one such pair, so half of the complex
/// kernel dimension is selected greedily.
pub fn quaternionic_kernel(m: &QMatrix) -> Result<Vec<QVector>> {
    let null = linalg::nullspace(&m.psi(), tol::RANK)?;
    let target = null.len() / 2;
    let mut basis: Vec<QVector> = Vec::with_capacity(target);
    for c in &null {
        if basis.len() == target {
            break;
        }
        let v = vec_from_complex(c)?;
        let mut trial = basis.clone();
        trial.push(v);
        if h_linear_independent(&trial)? {
            basis = trial;
        }
    }
    if basis.len() != target {
        return Err(Error::Internal(format!(
            "kernel pairing selected {} of {} quaternionic directions",
            basis.len(),
            target
        )));
    }
    column_echelon(&basis)
}

/// True iff `max |M*M - I| ≤ tol`.
pub fn is_unitary(m: &QMatrix, tol: f64) -> Result<bool> {
    Ok(unitarity_residual(m)? <= tol)
}

/// `max |M*M - I|` entrywise.
pub fn unitarity_residual(m: &QMatrix) -> Result<f64> {
    if !m.is_square() {
        return Err(Error::Shape("unitarity of a non-square matrix".into()));
    }
    Ok(m.adjoint().matmul(m)?.max_diff(&QMatrix::identity(m.rows())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(x0: f64, x1: f64, x2: f64, x3: f64) -> Quaternion {
        Quaternion::new(x0, x1, x2, x3)
    }

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn diag_1_k() -> QMatrix {
        QMatrix::diagonal(&[Quaternion::ONE, Quaternion::K])
    }

    fn zero_i_j() -> QMatrix {
        QMatrix::from_rows(&[vec![Quaternion::ZERO, Quaternion::I], vec![Quaternion::J, Quaternion::ZERO]]).unwrap()
    }

    #[test]
    fn psi_of_j() {
        let p = QMatrix::from_rows(&[vec![Quaternion::J]]).unwrap().psi();
        let expect = CMatrix::from_rows(&[vec![c(0.0, 0.0), c(-1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap();
        assert_eq!(p, expect);
    }

    #[test]
    fn psi_of_real_matrix_is_block_diagonal() {
        let m = QMatrix::from_fn(2, 3, |i, j| Quaternion::real((i * 3 + j) as f64));
        let p = m.psi();
        for i in 0..2 {
            for j in 0..3 {
                let x = c((i * 3 + j) as f64, 0.0);
                assert_eq!(p[(i, j)], x);
                assert_eq!(p[(2 + i, 3 + j)], x);
                assert_eq!(p[(2 + i, j)], CZERO);
                assert_eq!(p[(i, 3 + j)], CZERO);
            }
        }
    }

    #[test]
    fn psi_of_diag_1_k_matches_worked_example() {
        // λI - ψ(M) has (1, 3) entry i and (3, 1) entry i
        let p = diag_1_k().psi();
        assert_eq!(p[(1, 3)], c(0.0, -1.0));
        assert_eq!(p[(3, 1)], c(0.0, -1.0));
        let vals = linalg::eigenvalues(&p).unwrap();
        for e in [c(0.0, -1.0), c(0.0, 1.0), c(1.0, 0.0)] {
            let hits = vals.iter().filter(|g| (*g - e).norm() < 1e-12).count();
            assert_eq!(hits, if e.im == 0.0 { 2 } else { 1 }, "{vals:?}");
        }
    }

    #[test]
    fn from_psi_inverts_psi() {
        let m = zero_i_j();
        assert_eq!(QMatrix::from_psi(&m.psi()).unwrap(), m);
    }

    #[test]
    fn right_spectrum_diag_1_k() {
        let ev = right_eigenvalues(&diag_1_k()).unwrap();
        assert_eq!(ev.len(), 2);
        assert!((ev[0].class.rep - c(0.0, 1.0)).norm() < 1e-9);
        assert!((ev[1].class.rep - c(1.0, 0.0)).norm() < 1e-9);
        assert!(ev.iter().all(|e| e.multiplicity == 1));
    }

    #[test]
    fn right_spectrum_zero_i_j() {
        let ev = right_eigenvalues(&zero_i_j()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(ev.len(), 2);
        assert!((ev[0].class.rep - c(-h, h)).norm() < 1e-9);
        assert!((ev[1].class.rep - c(h, h)).norm() < 1e-9);
    }

    #[test]
    fn zero_matrix_spectrum() {
        let ev = right_eigenvalues(&QMatrix::zeros(3, 3)).unwrap();
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].multiplicity, 3);
        assert!(ev[0].class.rep.norm() < 1e-12);
    }

    #[test]
    fn eigenvector_diag_1_k() {
        let m = diag_1_k();
        let e = right_eigenvector(&m, c(0.0, 1.0)).unwrap();
        assert!(e.residual < 1e-12 && e.conjugate_residual < 1e-12);
        assert!(right_proportional(&e.vector, &[Quaternion::ZERO, q(1.0, 0.0, -1.0, 0.0)]).unwrap());
        let e1 = right_eigenvector(&m, c(1.0, 0.0)).unwrap();
        assert!(right_proportional(&e1.vector, &[Quaternion::ONE, Quaternion::ZERO]).unwrap());
        assert!(matches!(right_eigenvector(&m, c(2.0, 0.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn eigenvector_identity() {
        let e = right_eigenvector(&QMatrix::identity(3), c(1.0, 0.0)).unwrap();
        assert!(e.residual < 1e-14);
        assert!((vec_norm(&e.vector) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn independence_examples() {
        let e1 = vec![Quaternion::ONE, Quaternion::ZERO];
        let e2 = vec![Quaternion::ZERO, Quaternion::ONE];
        assert!(h_linear_independent(&[e1.clone(), e2]).unwrap());
        let e1j = right_mul(&e1, Quaternion::J);
        assert!(!h_linear_independent(&[e1, e1j]).unwrap());
        assert!(h_linear_independent(&[]).is_err());
    }

    #[test]
    fn echelon_is_canonical() {
        let a = vec![q(1.0, 0.0, 0.0, 0.0), q(0.0, 0.0, 0.0, 0.0), q(-1.0, 0.0, 0.0, 0.0)];
        let b = vec![q(0.0, 0.0, 0.0, 0.0), q(1.0, 0.0, 0.0, 0.0), q(-1.0, 0.0, 0.0, 0.0)];
        let x = q(0.3, -0.2, 0.9, 0.1);
        let y = q(-1.0, 0.5, 0.0, 2.0);
        let mixed1 = vec_sub(&right_mul(&a, x), &right_mul(&b, y));
        let mixed2: QVector = right_mul(&a, y).iter().zip(right_mul(&b, x)).map(|(p, r)| *p + r).collect();
        let ech = column_echelon(&[mixed1, mixed2]).unwrap();
        assert_eq!(ech.len(), 2);
        for (got, want) in ech.iter().zip([&a, &b]) {
            for (g, w) in got.iter().zip(want.iter()) {
                assert!(g.max_abs_diff(*w) < 1e-12, "{ech:?}");
            }
        }
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        // rows (1, j, 0) and (0, 0, 1): kernel spanned by (j, 1, 0) up to right scaling
        let m = QMatrix::from_rows(&[
            vec![Quaternion::ONE, Quaternion::J, Quaternion::ZERO],
            vec![Quaternion::ZERO, Quaternion::ZERO, Quaternion::ONE],
        ])
        .unwrap();
        let ker = quaternionic_kernel(&m).unwrap();
        assert_eq!(ker.len(), 1);
        let mv = m.mul_vec(&ker[0]).unwrap();
        assert!(vec_norm(&mv) < 1e-12);
        assert!(right_proportional(&ker[0], &[-Quaternion::J, Quaternion::ONE, Quaternion::ZERO]).unwrap());
    }

    #[test]
    fn unitary_examples() {
        assert!(is_unitary(&QMatrix::identity(4), 1e-12).unwrap());
        assert!(is_unitary(&diag_1_k(), 1e-12).unwrap());
        assert!(!is_unitary(&QMatrix::identity(2).scale(2.0), 1e-12).unwrap());
    }

    #[test]
    fn polynomial_evaluation() {
        // k² + 1 = 0
        let m = QMatrix::diagonal(&[Quaternion::K]);
        let p = m.eval_real_poly(&[1.0, 0.0, 1.0]).unwrap();
        assert!(p.max_abs() < 1e-15);
    }
}
