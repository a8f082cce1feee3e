//! Minimal polynomials and root subspaces of quaternionic matrices.
//!
//! The minimal polynomial of `M` is the one of ψ(M); it has real
//! coefficients, so it factors into real linear and irreducible quadratic
//! pieces. Each factor `p_s` with exponent `m_s` carves out the root subspace
//! `ker p_s(M)^{m_s}`, and ℍⁿ is their direct sum.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cmatrix::C64;
use crate::error::{Error, Result};
use crate::linalg;
use crate::qmatrix::{self, cluster_classes, QMatrix, QVector};
use crate::quaternion::{format_sig, Quaternion};
use crate::tol;

/// Real polynomial with ascending coefficients; `coeffs[k]` multiplies `y^k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealPoly {
    pub coeffs: Vec<f64>,
}

impl RealPoly {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        RealPoly { coeffs }
    }

    pub fn one() -> Self {
        RealPoly { coeffs: vec![1.0] }
    }

    /// `y - r`.
    pub fn linear(r: f64) -> Self {
        RealPoly { coeffs: vec![-r, 1.0] }
    }

    /// `y² - 2 Re(z) y + |z|²`, whose roots are `z` and `z̄`.
    pub fn quadratic(z: Complex64) -> Self {
        RealPoly { coeffs: vec![z.norm_sqr(), -2.0 * z.re, 1.0] }
    }

    /// Real polynomial with the given roots, which must close under conjugation.
    pub fn from_roots(roots: &[C64]) -> Self {
        let mut c = vec![C64::new(1.0, 0.0)];
        for &r in roots {
            let mut next = vec![C64::new(0.0, 0.0); c.len() + 1];
            for (k, &ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * r;
            }
            c = next;
        }
        RealPoly::new(c.iter().map(|z| z.re).collect())
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, y: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * y + c)
    }

    pub fn mul(&self, other: &RealPoly) -> RealPoly {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RealPoly::new(out)
    }

    pub fn pow(&self, k: usize) -> RealPoly {
        (0..k).fold(RealPoly::one(), |acc, _| acc.mul(self))
    }

    /// Long division by a monic divisor: `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &RealPoly) -> Result<(RealPoly, RealPoly)> {
        let lead = *divisor.coeffs.last().expect("nonempty");
        if lead == 0.0 {
            return Err(Error::Domain("division by the zero polynomial".into()));
        }
        let d = divisor.degree();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Ok((RealPoly::new(vec![0.0]), self.clone()));
        }
        let mut quot = vec![0.0; rem.len() - d];
        for k in (0..quot.len()).rev() {
            let f = rem[k + d] / lead;
            quot[k] = f;
            for (i, &c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= f * c;
            }
        }
        rem.truncate(d.max(1));
        Ok((RealPoly::new(quot), RealPoly { coeffs: rem }))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Renders with variable `var`, highest power first, 6 significant digits.
    /// Coefficients below `1e-12` of the largest one print as zero.
    pub fn format_with(&self, var: &str) -> String {
        let floor = 1e-12 * self.max_abs_coeff();
        let mut s = String::new();
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c.abs() <= floor && self.degree() > 0 {
                continue;
            }
            let mag = c.abs();
            let body = match k {
                0 => format_sig(mag, 6),
                _ => {
                    let pw = if k == 1 { var.to_string() } else { format!("{var}^{k}") };
                    if (mag - 1.0).abs() < 1e-12 { pw } else { format!("{}{}", format_sig(mag, 6), pw) }
                }
            };
            if s.is_empty() {
                if c < 0.0 {
                    s.push('-');
                }
            } else {
                s.push_str(if c < 0.0 { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        s
    }
}

impl fmt::Display for RealPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("y"))
    }
}

/// One irreducible factor `p_s` together with its exponent `m_s`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Factor {
    pub poly: RealPoly,
    pub exponent: usize,
    /// Root with nonnegative imaginary part.
    pub root: Complex64,
    /// Number of ψ(M)-eigenvalues attributed to this factor.
    pub psi_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MinimalPolynomial {
    pub factors: Vec<Factor>,
    pub warnings: Vec<String>,
    /// Max entry modulus of the full product evaluated at `M`.
    pub residual: f64,
    /// The annihilation tolerance the residual was held to.
    pub tolerance: f64,
}

impl MinimalPolynomial {
    pub fn product(&self) -> RealPoly {
        self.factors.iter().fold(RealPoly::one(), |acc, f| acc.mul(&f.poly.pow(f.exponent)))
    }

    pub fn annihilates(&self) -> bool {
        self.residual <= self.tolerance
    }

    pub fn format_with(&self, var: &str) -> String {
        self.factors
            .iter()
            .map(|f| {
                let body = format!("({})", f.poly.format_with(var));
                if f.exponent == 1 { body } else { format!("{body}^{}", f.exponent) }
            })
            .collect::<Vec<_>>()
            .join("")
    }
}

impl fmt::Display for MinimalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("y"))
    }
}

fn factor_poly(root: C64) -> RealPoly {
    if root.im == 0.0 { RealPoly::linear(root.re) } else { RealPoly::quadratic(root) }
}

/// Operator norm of `M`, which is the largest singular value of ψ(M).
fn operator_norm(m: &QMatrix) -> Result<f64> {
    if m.rows() == 0 {
        return Ok(0.0);
    }
    Ok(linalg::svd(&m.psi())?.max_singular())
}

/// Complex nullity of ψ(m), counting singular values at or below `floor`.
fn nullity(m: &QMatrix, floor: f64) -> Result<usize> {
    let svd = linalg::svd(&m.psi())?;
    let small = svd.singular_values.iter().filter(|&&s| s <= floor).count();
    Ok(small + (2 * m.rows()).saturating_sub(svd.singular_values.len()))
}

/// Minimal polynomial of a square quaternionic matrix.
pub fn minimal_polynomial(m: &QMatrix) -> Result<MinimalPolynomial> {
    if !m.is_square() {
        return Err(Error::Shape("minimal polynomial of a non-square matrix".into()));
    }
    let n = m.rows();
    let norm = operator_norm(m)?.max(1.0);
    let vals = linalg::eigenvalues(&m.psi())?;
    let (clusters, gap) = cluster_classes(&vals, tol::CLUSTER);
    let mut warnings = Vec::new();
    if let Some(g) = gap {
        if g < 10.0 * tol::CLUSTER {
            warnings.push(format!("eigenvalue clusters separated by only {g:.3e}; factor grouping may be ambiguous"));
        }
    }
    let mut factors = Vec::with_capacity(clusters.len());
    for c in &clusters {
        let poly = factor_poly(c.rep);
        let base = m.eval_real_poly(&poly.coeffs)?;
        let mut power = base.clone();
        let mut prev = 0usize;
        let mut exponent = None;
        for k in 1..=n.max(1) {
            if k > 1 {
                power = power.matmul(&base)?;
            }
            let floor = tol::RANK * norm.powi((k * poly.degree()) as i32);
            let nul = nullity(&power, floor)?;
            if nul >= c.count {
                if nul > c.count {
                    warnings.push(format!(
                        "factor {} has kernel dimension {} above its eigenvalue count {}",
                        poly, nul, c.count
                    ));
                }
                exponent = Some(k);
                break;
            }
            if k > 1 && nul == prev {
                warnings.push(format!(
                    "kernel of factor {} stalled at dimension {} below eigenvalue count {}",
                    poly, nul, c.count
                ));
                exponent = Some(k - 1);
                break;
            }
            prev = nul;
        }
        let exponent = exponent.ok_or_else(|| {
            Error::Internal(format!("exponent search for factor {poly} exceeded the cap {n}"))
        })?;
        factors.push(Factor { poly, exponent, root: c.rep, psi_count: c.count });
    }
    let mut mp = MinimalPolynomial { factors, warnings, residual: 0.0, tolerance: 0.0 };
    let product = mp.product();
    mp.residual = m.eval_real_poly(&product.coeffs)?.max_abs();
    mp.tolerance = tol::MINPOLY * norm.powi(product.degree() as i32);
    if !mp.annihilates() {
        mp.warnings.push(format!(
            "product leaves residual {:.3e} above tolerance {:.3e}",
            mp.residual, mp.tolerance
        ));
    }
    Ok(mp)
}

/// Characteristic polynomial of ψ(M), from its eigenvalues.
pub fn psi_characteristic_polynomial(m: &QMatrix) -> Result<RealPoly> {
    let vals = linalg::eigenvalues(&m.psi())?;
    Ok(RealPoly::from_roots(&vals))
}

/// Largest remainder coefficient when the characteristic polynomial of ψ(M)
/// is divided by the minimal polynomial, relative to the dividend's scale.
pub fn divisibility_residual(m: &QMatrix, mp: &MinimalPolynomial) -> Result<f64> {
    let chi = psi_characteristic_polynomial(m)?;
    let (_, rem) = chi.div_rem(&mp.product())?;
    Ok(rem.max_abs_coeff() / chi.max_abs_coeff().max(1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSubspace {
    pub factor_index: usize,
    pub basis: Vec<QVector>,
    /// Max over the basis of `|p_s(M)^{m_s} v| / |v|`.
    pub annihilation_residual: f64,
    /// Max over the basis of the distance from `M v` to the span.
    pub invariance_residual: f64,
}

impl RootSubspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Distance from `x` to the right ℍ-span of `basis`, relative to `|x|`.
pub fn span_residual(basis: &[QVector], x: &[Quaternion]) -> Result<f64> {
    let nx = qmatrix::vec_norm(x);
    if nx == 0.0 {
        return Ok(0.0);
    }
    let mut cols = Vec::with_capacity(2 * basis.len());
    for v in basis {
        cols.push(qmatrix::vec_to_complex(v));
        cols.push(qmatrix::vec_to_complex(&qmatrix::right_mul(v, Quaternion::J)));
    }
    let ortho = linalg::orthonormal_basis(&cols, tol::RANK);
    let mut r = qmatrix::vec_to_complex(x);
    for q in &ortho {
        let c: C64 = q.iter().zip(&r).map(|(a, b)| a.conj() * b).sum();
        for (ri, qi) in r.iter_mut().zip(q) {
            *ri -= c * qi;
        }
    }
    Ok(r.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / nx)
}

/// Root subspaces `ker p_s(M)^{m_s}`, one per factor of the minimal polynomial.
pub fn root_subspaces(m: &QMatrix, mp: &MinimalPolynomial) -> Result<Vec<RootSubspace>> {
    let mut out = Vec::with_capacity(mp.factors.len());
    for (idx, f) in mp.factors.iter().enumerate() {
        let kmat = m.eval_real_poly(&f.poly.pow(f.exponent).coeffs)?;
        let basis = qmatrix::quaternionic_kernel(&kmat)?;
        let mut ann = 0.0f64;
        let mut inv = 0.0f64;
        for v in &basis {
            let nv = qmatrix::vec_norm(v);
            ann = ann.max(qmatrix::vec_norm(&kmat.mul_vec(v)?) / nv);
            let mv = m.mul_vec(v)?;
            inv = inv.max(span_residual(&basis, &mv)? * qmatrix::vec_norm(&mv) / nv);
        }
        out.push(RootSubspace { factor_index: idx, basis, annihilation_residual: ann, invariance_residual: inv });
    }
    Ok(out)
}

/// True when the concatenated bases are ℍ-independent and fill ℍⁿ.
pub fn is_direct_sum(n: usize, spaces: &[RootSubspace]) -> Result<bool> {
    let all: Vec<QVector> = spaces.iter().flat_map(|s| s.basis.iter().cloned()).collect();
    if all.len() != n {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }
    qmatrix::h_linear_independent(&all)
}
