use std::f64::consts::TAU;

use crate::cmatrix::{vec_norm, CMatrix, C64, CZERO};
use crate::error::{Error, Result};
use crate::tol;

/// Complex Schur form `A = Z T Z*` with `T` upper triangular and `Z` unitary.
#[derive(Clone, Debug)]
pub struct Schur {
    pub t: CMatrix,
    pub z: CMatrix,
}

/// Eigenvalue with a unit-norm eigenvector and its relative residual
/// `‖Cv - λv‖ / (‖C‖_F ‖v‖)`.
#[derive(Clone, Debug)]
pub struct EigenPair {
    pub value: C64,
    pub vector: Vec<C64>,
    pub residual: f64,
}

fn givens(x: C64, y: C64) -> (f64, C64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, CZERO);
    }
    if ax == 0.0 {
        return (0.0, C64::new(1.0, 0.0));
    }
    let r = ax.hypot(ay);
    let c = ax / r;
    let s = (x / ax) * y.conj() / r;
    (c, s)
}

fn wilkinson_shift(h: &CMatrix, hi: usize) -> C64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let tr = (a + d) * 0.5;
    let p = (a - d) * 0.5;
    let disc = (p * p + b * c).sqrt();
    let mu1 = tr + disc;
    let mu2 = tr - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// Reduces `h` to upper Hessenberg form with Householder reflectors,
/// accumulating them in `z`.
fn hessenberg(h: &mut CMatrix, z: &mut CMatrix) {
    let n = h.rows();
    if n < 3 {
        return;
    }
    for k in 0..n - 2 {
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let tail: f64 = x[1..].iter().map(|v| v.norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let xnorm = (x[0].norm_sqr() + tail).sqrt();
        let phase = if x[0].norm() == 0.0 { C64::new(1.0, 0.0) } else { x[0] / x[0].norm() };
        let alpha = -phase * xnorm;
        let mut v = x.clone();
        v[0] -= alpha;
        let vn = vec_norm(&v);
        for vi in &mut v {
            *vi /= vn;
        }
        // H <- (I - 2 v v*) H on rows k+1..n
        for j in 0..n {
            let s: C64 = v.iter().enumerate().map(|(r, vr)| vr.conj() * h[(k + 1 + r, j)]).sum();
            let s2 = s * 2.0;
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= vr * s2;
            }
        }
        // H <- H (I - 2 v v*) and Z <- Z (I - 2 v v*) on columns k+1..n
        for m in [&mut *h, &mut *z] {
            for i in 0..n {
                let s: C64 = v.iter().enumerate().map(|(c, vc)| m[(i, k + 1 + c)] * vc).sum();
                let s2 = s * 2.0;
                for (c, vc) in v.iter().enumerate() {
                    m[(i, k + 1 + c)] -= s2 * vc.conj();
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = CZERO;
        }
    }
}

/// Complex Schur decomposition by Hessenberg reduction and single-shift QR
/// with Wilkinson shifts (exceptional shifts every tenth stalled sweep).
pub fn schur(a: &CMatrix) -> Result<Schur> {
    if !a.is_square() {
        return Err(Error::Shape(format!("Schur form of a {}x{} matrix", a.rows(), a.cols())));
    }
    let n = a.rows();
    let mut h = a.clone();
    let mut z = CMatrix::identity(n);
    if n <= 1 {
        return Ok(Schur { t: h, z });
    }
    hessenberg(&mut h, &mut z);
    let norm = h.frobenius();
    if norm == 0.0 {
        return Ok(Schur { t: h, z });
    }
    let eps = f64::EPSILON;
    let max_iter = tol::QR_ITERATIONS_PER_DIM * n;
    let mut total = 0usize;
    let mut stalled = 0usize;
    let mut hi = n - 1;
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let mut s = h[(lo - 1, lo - 1)].l1_norm() + h[(lo, lo)].l1_norm();
            if s == 0.0 {
                s = norm;
            }
            if h[(lo, lo - 1)].l1_norm() <= eps * s {
                h[(lo, lo - 1)] = CZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            stalled = 0;
            continue;
        }
        total += 1;
        stalled += 1;
        if total > max_iter {
            return Err(Error::NoConvergence { iterations: total - 1, fingerprint: a.fingerprint() });
        }
        let mu = if stalled.is_multiple_of(10) {
            h[(hi, hi)] + C64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(&h, hi)
        };
        let mut x = h[(lo, lo)] - mu;
        let mut y = h[(lo + 1, lo)];
        for k in lo..hi {
            let (c, s) = givens(x, y);
            let start = if k > lo { k - 1 } else { lo };
            for j in start..n {
                let a0 = h[(k, j)];
                let b0 = h[(k + 1, j)];
                h[(k, j)] = a0 * c + s * b0;
                h[(k + 1, j)] = -s.conj() * a0 + b0 * c;
            }
            let last = (k + 2).min(hi);
            for i in 0..=last {
                let a0 = h[(i, k)];
                let b0 = h[(i, k + 1)];
                h[(i, k)] = a0 * c + b0 * s.conj();
                h[(i, k + 1)] = -a0 * s + b0 * c;
            }
            for i in 0..n {
                let a0 = z[(i, k)];
                let b0 = z[(i, k + 1)];
                z[(i, k)] = a0 * c + b0 * s.conj();
                z[(i, k + 1)] = -a0 * s + b0 * c;
            }
            if k + 1 < hi {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
            }
            if k > lo {
                h[(k + 1, k - 1)] = CZERO;
            }
        }
    }
    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = CZERO;
        }
    }
    Ok(Schur { t: h, z })
}

/// Eigenvalues of a square complex matrix, in the canonical ordering.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<C64>> {
    let s = schur(a)?;
    let mut vals: Vec<C64> = (0..a.rows()).map(|i| s.t[(i, i)]).collect();
    sort_canonical(&mut vals, |z| *z);
    Ok(vals)
}

fn order_key(z: C64) -> (i64, f64) {
    let modulus = (z.norm() * 1e9).round() as i64;
    let mut arg = z.im.atan2(z.re);
    if arg < 0.0 {
        arg += TAU;
    }
    if arg >= TAU - 1e-12 {
        arg = 0.0;
    }
    (-modulus, arg)
}

/// Orders by descending modulus (bucketed at 1e-9), then ascending argument in [0, 2π).
pub fn sort_canonical<T>(items: &mut [T], value: impl Fn(&T) -> C64) {
    items.sort_by(|a, b| {
        let ka = order_key(value(a));
        let kb = order_key(value(b));
        ka.0.cmp(&kb.0).then(ka.1.total_cmp(&kb.1))
    });
}

/// Eigenvalues with eigenvectors, obtained by back substitution on the
/// Schur form. Ordered by descending |λ|, then ascending arg λ.
pub fn complex_eigen(a: &CMatrix) -> Result<Vec<EigenPair>> {
    let n = a.rows();
    let Schur { t, z } = schur(a)?;
    let anorm = a.frobenius();
    let smin = (f64::EPSILON * t.frobenius()).max(f64::MIN_POSITIVE);
    let mut pairs = Vec::with_capacity(n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut x = vec![CZERO; n];
        x[k] = C64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let s: C64 = (i + 1..=k).map(|j| t[(i, j)] * x[j]).sum();
            let mut d = t[(i, i)] - lambda;
            if d.norm() < smin {
                d = C64::new(smin, 0.0);
            }
            x[i] = -s / d;
        }
        let mut v = z.mul_vec(&x)?;
        let vn = vec_norm(&v);
        for vi in &mut v {
            *vi /= vn;
        }
        let av = a.mul_vec(&v)?;
        let r: f64 = av.iter().zip(&v).map(|(p, q)| (p - q * lambda).norm_sqr()).sum::<f64>().sqrt();
        let residual = if anorm == 0.0 { r } else { r / anorm };
        pairs.push(EigenPair { value: lambda, vector: v, residual });
    }
    sort_canonical(&mut pairs, |p| p.value);
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pseudo_random(n: usize, seed: u64) -> CMatrix {
        let mut state = seed;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        CMatrix::from_fn(n, n, |_, _| c(next(), next()))
    }

    #[test]
    fn identity_eigenvalues() {
        let vals = eigenvalues(&CMatrix::identity(3)).unwrap();
        assert_eq!(vals.len(), 3);
        for v in vals {
            assert!((v - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn schur_reconstructs_random_matrices() {
        for (n, seed) in [(1, 1), (2, 2), (5, 3), (12, 4), (30, 5)] {
            let a = pseudo_random(n, seed);
            let s = schur(&a).unwrap();
            let back = &(&s.z * &s.t) * &s.z.adjoint();
            assert!((&back - &a).max_abs() < 1e-12 * a.frobenius().max(1.0), "n={n}");
            let zz = &s.z.adjoint() * &s.z;
            assert!((&zz - &CMatrix::identity(n)).max_abs() < 1e-13);
            for i in 1..n {
                for j in 0..i {
                    assert_eq!(s.t[(i, j)], CZERO);
                }
            }
        }
    }

    #[test]
    fn eigenpairs_have_small_residuals() {
        for seed in 0..10 {
            let a = pseudo_random(9, 100 + seed);
            for p in complex_eigen(&a).unwrap() {
                assert!(p.residual < tol::EIG_RESIDUAL, "residual {}", p.residual);
            }
        }
    }

    #[test]
    fn trace_equals_eigenvalue_sum() {
        let a = pseudo_random(15, 77);
        let sum: C64 = eigenvalues(&a).unwrap().into_iter().sum();
        assert!((sum - a.trace()).norm() < 1e-11);
    }

    #[test]
    fn rotation_and_nilpotent_matrices() {
        let rot = CMatrix::from_rows(&[vec![c(0.0, 0.0), c(-1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap();
        let vals = eigenvalues(&rot).unwrap();
        assert!((vals[0] - c(0.0, 1.0)).norm() < 1e-14);
        assert!((vals[1] - c(0.0, -1.0)).norm() < 1e-14);
        let nil = CMatrix::from_fn(4, 4, |i, j| if j == i + 1 { c(1.0, 0.0) } else { CZERO });
        for v in eigenvalues(&nil).unwrap() {
            assert!(v.norm() < 1e-12);
        }
    }

    #[test]
    fn canonical_order() {
        let d = CMatrix::diagonal(&[c(0.5, 0.0), c(0.0, -2.0), c(-2.0, 0.0), c(0.0, 2.0)]);
        let vals = eigenvalues(&d).unwrap();
        let expect = [c(0.0, 2.0), c(-2.0, 0.0), c(0.0, -2.0), c(0.5, 0.0)];
        for (v, e) in vals.iter().zip(&expect) {
            assert!((v - e).norm() < 1e-15, "{vals:?}");
        }
    }

    #[test]
    fn non_square_is_rejected() {
        assert!(matches!(schur(&CMatrix::zeros(2, 3)), Err(Error::Shape(_))));
    }
}
