//! Two-sided numerical checks of the zeta determinant formulas: Ihara's,
//! the second weighted formula and its transposed form, the quaternionic
//! formula for `KL* - J₀`, and `det(αI - AB) αⁿ = α^m det(αI - BA)`.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cmatrix::{CMatrix, C64};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::det;
use crate::quaternion::Quaternion;
use crate::szegedy::{edge_operators, WeightMap};
use crate::tol;

/// `B` (`B_{ef} = 1` iff `t(e) = o(f)`), its weighted form, and `J₀`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeMatrices {
    pub b: CMatrix,
    pub bw: CMatrix,
    pub j0: CMatrix,
}

/// Edge matrices with `B^w_{ef} = w(f)` where `w(f) = W_{o(f) t(f)}`.
pub fn edge_matrices(g: &Graph, w: &CMatrix) -> Result<EdgeMatrices> {
    check_weighted_matrix(g, w)?;
    let m = g.m_prime();
    let b = CMatrix::from_real(m, m, |e, f| if g.arc(e).terminus == g.arc(f).origin { 1.0 } else { 0.0 });
    let bw = CMatrix::from_fn(m, m, |e, f| {
        let (ae, af) = (g.arc(e), g.arc(f));
        if ae.terminus == af.origin {
            w[(af.origin, af.terminus)]
        } else {
            C64::new(0.0, 0.0)
        }
    });
    Ok(EdgeMatrices { b, bw, j0: g.j0_matrix() })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub t: Complex64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub rel_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub samples: Vec<SamplePoint>,
    pub max_rel_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Largest coefficient gap when both sides are interpolated as
    /// polynomials in `t`, if requested.
    pub polynomial_gap: Option<f64>,
}

/// `count` points on `|t| = radius` at uniform angles, plus `t = 0`. With a
/// seed the angles are offset by a random phase drawn from it.
pub fn sample_points(count: usize, radius: f64, seed: Option<u64>) -> Vec<Complex64> {
    let phase = match seed {
        Some(s) => ChaCha8Rng::seed_from_u64(s).random_range(0.0..std::f64::consts::TAU),
        None => 0.3,
    };
    let mut pts: Vec<Complex64> = (0..count)
        .map(|k| Complex64::from_polar(radius, phase + std::f64::consts::TAU * k as f64 / count as f64))
        .collect();
    pts.push(Complex64::new(0.0, 0.0));
    pts
}

/// Eight points on `|t| = 1/4` plus the origin.
pub fn default_samples() -> Vec<Complex64> {
    sample_points(8, 0.25, None)
}

fn rel_error(l: C64, r: C64) -> f64 {
    let scale = l.norm().max(r.norm());
    if scale == 0.0 {
        0.0
    } else {
        (l - r).norm() / scale
    }
}

fn evaluate(
    name: &str,
    samples: &[Complex64],
    tolerance: f64,
    f: impl Fn(C64) -> Result<(C64, C64)>,
) -> Result<IdentityCheck> {
    let mut pts = Vec::with_capacity(samples.len());
    for &t in samples {
        let (lhs, rhs) = f(t)?;
        pts.push(SamplePoint { t, lhs, rhs, rel_error: rel_error(lhs, rhs) });
    }
    let max_rel_error = pts.iter().fold(0.0f64, |m, p| m.max(p.rel_error));
    Ok(IdentityCheck {
        name: name.to_string(),
        samples: pts,
        max_rel_error,
        tolerance,
        pass: max_rel_error <= tolerance && max_rel_error.is_finite(),
        polynomial_gap: None,
    })
}

/// Interpolates both sides at the `degree + 1` roots of unity and returns the
/// largest coefficient difference relative to the largest coefficient.
fn polynomial_gap(degree: usize, f: impl Fn(C64) -> Result<(C64, C64)>) -> Result<f64> {
    let n = degree + 1;
    let mut lv = Vec::with_capacity(n);
    let mut rv = Vec::with_capacity(n);
    for j in 0..n {
        let (l, r) = f(Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / n as f64))?;
        lv.push(l);
        rv.push(r);
    }
    let mut gap = 0.0f64;
    let mut big = 0.0f64;
    for k in 0..n {
        let mut cl = C64::new(0.0, 0.0);
        let mut cr = C64::new(0.0, 0.0);
        for j in 0..n {
            let w = Complex64::from_polar(1.0, -std::f64::consts::TAU * (j * k) as f64 / n as f64);
            cl += lv[j] * w;
            cr += rv[j] * w;
        }
        cl /= n as f64;
        cr /= n as f64;
        gap = gap.max((cl - cr).norm());
        big = big.max(cl.norm()).max(cr.norm());
    }
    Ok(if big == 0.0 { 0.0 } else { gap / big })
}

fn one_minus_t2_pow(t: C64, e: i64) -> C64 {
    (C64::new(1.0, 0.0) - t * t).powi(e.unsigned_abs() as i32)
}

/// Multiplies the side that would carry a negative power of `(1 - t²)`.
fn balance(lhs: C64, rhs: C64, t: C64, exponent: i64) -> (C64, C64) {
    if exponent >= 0 {
        (lhs, rhs * one_minus_t2_pow(t, exponent))
    } else {
        (lhs * one_minus_t2_pow(t, exponent), rhs)
    }
}

fn require_simple_connected(g: &Graph, what: &str) -> Result<()> {
    if g.m1() > 0 {
        return Err(Error::Precondition(format!("{what} needs a loopless graph; found {} loops", g.m1())));
    }
    if !g.is_connected() {
        return Err(Error::Precondition(format!("{what} needs a connected graph")));
    }
    Ok(())
}

fn require_samples(samples: &[Complex64]) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::Precondition("no sample points".into()));
    }
    Ok(())
}

/// `I - t X`.
fn i_minus_t(x: &CMatrix, t: C64) -> CMatrix {
    let n = x.rows();
    &CMatrix::identity(n) - &x.scale(t)
}

/// `det(I - t(B - J₀)) = (1 - t²)^{m-n} det(I - tA + t²(D - I))`.
pub fn ihara_identity(g: &Graph, samples: &[Complex64], polynomial: bool) -> Result<IdentityCheck> {
    require_simple_connected(g, "the Ihara identity")?;
    require_samples(samples)?;
    let ones = CMatrix::from_fn(g.n(), g.n(), |u, v| {
        if g.arc_index(u, v).is_some() { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) }
    });
    let em = edge_matrices(g, &ones)?;
    let edge = &em.b - &em.j0;
    let a = g.adjacency_matrix();
    let d_minus_i = &g.degree_matrix() - &CMatrix::identity(g.n());
    let e = g.m0() as i64 - g.n() as i64;
    let f = |t: C64| -> Result<(C64, C64)> {
        let lhs = det(&i_minus_t(&edge, t))?;
        let inner = &(&CMatrix::identity(g.n()) - &a.scale(t)) + &d_minus_i.scale(t * t);
        Ok(balance(lhs, det(&inner)?, t, e))
    };
    let mut check = evaluate("ihara", samples, tol::IDENTITY, f)?;
    if polynomial {
        check.polynomial_gap = Some(polynomial_gap(2 * g.m_prime() + 2, f)?);
    }
    Ok(check)
}

/// `W` must vanish off the arcs.
pub fn check_weighted_matrix(g: &Graph, w: &CMatrix) -> Result<()> {
    if w.rows() != g.n() || w.cols() != g.n() {
        return Err(Error::Shape(format!("weighted matrix is {}x{}, graph has {} vertices", w.rows(), w.cols(), g.n())));
    }
    for u in 0..g.n() {
        for v in 0..g.n() {
            if w[(u, v)].norm() != 0.0 && g.arc_index(u, v).is_none() {
                return Err(Error::Validation(format!("weighted matrix entry ({u}, {v}) is nonzero off the arcs")));
            }
        }
    }
    Ok(())
}

/// `(D_w)_{uu} = Σ_{o(e)=u} w(e)`.
pub fn weighted_degree(g: &Graph, w: &CMatrix) -> CMatrix {
    let mut d = CMatrix::zeros(g.n(), g.n());
    for a in g.arcs() {
        d[(a.origin, a.origin)] += w[(a.origin, a.terminus)];
    }
    d
}

/// The weighted identity
/// `det(I - t(B_w - J₀)) = (1 - t²)^{m-n} det(I - tW + t²(D_w - I))`
/// and, with `transposed`, the same with `ᵀB_w` and `ᵀW`.
pub fn second_weighted_identity(
    g: &Graph,
    w: &CMatrix,
    samples: &[Complex64],
    transposed: bool,
    polynomial: bool,
) -> Result<IdentityCheck> {
    require_simple_connected(g, "the weighted identity")?;
    require_samples(samples)?;
    let em = edge_matrices(g, w)?;
    let (bw, wm) = if transposed { (em.bw.transpose(), w.transpose()) } else { (em.bw.clone(), w.clone()) };
    let edge = &bw - &em.j0;
    let dw_minus_i = &weighted_degree(g, w) - &CMatrix::identity(g.n());
    let e = g.m0() as i64 - g.n() as i64;
    let f = |t: C64| -> Result<(C64, C64)> {
        let lhs = det(&i_minus_t(&edge, t))?;
        let inner = &(&CMatrix::identity(g.n()) - &wm.scale(t)) + &dw_minus_i.scale(t * t);
        Ok(balance(lhs, det(&inner)?, t, e))
    };
    let name = if transposed { "second weighted (transposed)" } else { "second weighted" };
    let mut check = evaluate(name, samples, tol::IDENTITY, f)?;
    if polynomial {
        check.polynomial_gap = Some(polynomial_gap(2 * g.m_prime() + 2, f)?);
    }
    Ok(check)
}

/// `a(e) = √2 q(e)` and `b(e) = √2 q(e⁻¹)`.
pub fn walk_arc_data(g: &Graph, q: &WeightMap) -> (Vec<Quaternion>, Vec<Quaternion>) {
    let r2 = std::f64::consts::SQRT_2;
    let a = (0..g.m_prime()).map(|e| q.get(e).scale(r2)).collect();
    let b = (0..g.m_prime()).map(|e| q.get(g.inverse_index(e)).scale(r2)).collect();
    (a, b)
}

/// `det(I - tψ(KL* - J₀)) = (1 - t²)^{2m0-2n} (1 + t)^{2m1} det(I - tψ(W̃) + t²(ψ(D̃) - I))`
/// for arbitrary arc data `a`, `b`.
pub fn quaternionic_identity(
    g: &Graph,
    a: &[Quaternion],
    b: &[Quaternion],
    samples: &[Complex64],
    polynomial: bool,
) -> Result<IdentityCheck> {
    require_samples(samples)?;
    let ops = edge_operators(g, a, b)?;
    let big = ops.kl_minus_j0.psi();
    let w = ops.w_tilde.psi();
    let n2 = 2 * g.n();
    let d_minus_i = &ops.d_tilde.psi() - &CMatrix::identity(n2);
    let e = 2 * g.m0() as i64 - 2 * g.n() as i64;
    let loops = 2 * g.m1() as i32;
    let f = |t: C64| -> Result<(C64, C64)> {
        let lhs = det(&i_minus_t(&big, t))?;
        let inner = &(&CMatrix::identity(n2) - &w.scale(t)) + &d_minus_i.scale(t * t);
        let rhs = det(&inner)? * (C64::new(1.0, 0.0) + t).powi(loops);
        Ok(balance(lhs, rhs, t, e))
    };
    let mut check = evaluate("quaternionic", samples, tol::IDENTITY, f)?;
    if polynomial {
        let degree = 2 * g.m_prime() + e.unsigned_abs() as usize * 2 + 2;
        check.polynomial_gap = Some(polynomial_gap(degree, f)?);
    }
    Ok(check)
}

/// `det(αI_m - AB) αⁿ = α^m det(αI_n - BA)` for `A` m×n and `B` n×m.
pub fn sylvester_det_property(a: &CMatrix, b: &CMatrix, alpha: Complex64) -> Result<IdentityCheck> {
    let (m, n) = (a.rows(), a.cols());
    if b.rows() != n || b.cols() != m {
        return Err(Error::Shape(format!("A is {m}x{n} but B is {}x{}", b.rows(), b.cols())));
    }
    let f = |x: C64| -> Result<(C64, C64)> {
        let ab = a.matmul(b)?;
        let ba = b.matmul(a)?;
        let lhs = det(&(&CMatrix::identity(m).scale(x) - &ab))? * x.powi(n as i32);
        let rhs = det(&(&CMatrix::identity(n).scale(x) - &ba))? * x.powi(m as i32);
        Ok((lhs, rhs))
    };
    evaluate("sylvester", &[alpha], tol::SYLVESTER, f)
}
