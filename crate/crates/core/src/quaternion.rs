//! Real quaternions and their conjugacy classes.
//!
//! A quaternion `x0 + x1 i + x2 j + x3 k` is stored by its four real
//! coefficients. The symplectic decomposition writes it uniquely as
//! `a + j b` with complex `a` (simplex part) and `b` (perplex part); this is
//! the convention used by [`crate::qmatrix::QMatrix::psi`].

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl From<[f64; 4]> for Quaternion {
    fn from(c: [f64; 4]) -> Self {
        Quaternion::new(c[0], c[1], c[2], c[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        [q.x0, q.x1, q.x2, q.x3]
    }
}

impl From<f64> for Quaternion {
    fn from(x: f64) -> Self {
        Quaternion::real(x)
    }
}

impl From<Complex64> for Quaternion {
    fn from(z: Complex64) -> Self {
        Quaternion::new(z.re, z.im, 0.0, 0.0)
    }
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion { x0: 0.0, x1: 0.0, x2: 0.0, x3: 0.0 };
    pub const ONE: Quaternion = Quaternion { x0: 1.0, x1: 0.0, x2: 0.0, x3: 0.0 };
    pub const I: Quaternion = Quaternion { x0: 0.0, x1: 1.0, x2: 0.0, x3: 0.0 };
    pub const J: Quaternion = Quaternion { x0: 0.0, x1: 0.0, x2: 1.0, x3: 0.0 };
    pub const K: Quaternion = Quaternion { x0: 0.0, x1: 0.0, x2: 0.0, x3: 1.0 };

    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Quaternion { x0, x1, x2, x3 }
    }

    pub const fn real(x: f64) -> Self {
        Quaternion::new(x, 0.0, 0.0, 0.0)
    }

    /// Builds `simplex + j * perplex`.
    pub fn from_symplectic(simplex: Complex64, perplex: Complex64) -> Self {
        // j (c + d i) = c j - d k
        Quaternion::new(simplex.re, simplex.im, perplex.re, -perplex.im)
    }

    /// Returns `(a, b)` with `self = a + j b`.
    pub fn symplectic(self) -> (Complex64, Complex64) {
        (Complex64::new(self.x0, self.x1), Complex64::new(self.x2, -self.x3))
    }

    pub fn simplex(self) -> Complex64 {
        Complex64::new(self.x0, self.x1)
    }

    pub fn perplex(self) -> Complex64 {
        Complex64::new(self.x2, -self.x3)
    }

    pub fn conj(self) -> Self {
        Quaternion::new(self.x0, -self.x1, -self.x2, -self.x3)
    }

    pub fn norm_sqr(self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Norm of the imaginary part `x1 i + x2 j + x3 k`.
    pub fn imag_norm(self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    pub fn re(self) -> f64 {
        self.x0
    }

    pub fn is_zero(self) -> bool {
        self == Quaternion::ZERO
    }

    /// Multiplicative inverse `x* / |x|^2`.
    pub fn inv(self) -> Result<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 {
            return Err(Error::Domain("inverse of the zero quaternion".into()));
        }
        Ok(self.conj() / n2)
    }

    pub fn scale(self, s: f64) -> Self {
        Quaternion::new(self.x0 * s, self.x1 * s, self.x2 * s, self.x3 * s)
    }

    /// Returns `u^-1 self u`.
    pub fn conjugate_by(self, u: Quaternion) -> Result<Self> {
        Ok(u.inv()? * self * u)
    }

    pub fn class(self) -> ConjugacyClass {
        class_of(self)
    }

    /// Largest coefficient difference, used by tolerance checks.
    pub fn max_abs_diff(self, other: Quaternion) -> f64 {
        (self - other).max_abs()
    }

    pub fn max_abs(self) -> f64 {
        self.x0.abs().max(self.x1.abs()).max(self.x2.abs()).max(self.x3.abs())
    }
}

impl Add for Quaternion {
    type Output = Quaternion;
    fn add(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.x0 + o.x0, self.x1 + o.x1, self.x2 + o.x2, self.x3 + o.x3)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;
    fn sub(self, o: Quaternion) -> Quaternion {
        Quaternion::new(self.x0 - o.x0, self.x1 - o.x1, self.x2 - o.x2, self.x3 - o.x3)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.x0, -self.x1, -self.x2, -self.x3)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, o: Quaternion) -> Quaternion {
        let (a0, a1, a2, a3) = (self.x0, self.x1, self.x2, self.x3);
        let (b0, b1, b2, b3) = (o.x0, o.x1, o.x2, o.x3);
        Quaternion::new(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl Mul<Complex64> for Quaternion {
    type Output = Quaternion;
    fn mul(self, z: Complex64) -> Quaternion {
        self * Quaternion::from(z)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.x0 / s, self.x1 / s, self.x2 / s, self.x3 / s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Quaternion) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Quaternion) {
        *self = *self - o;
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, o: Quaternion) {
        *self = *self * o;
    }
}

impl std::iter::Sum for Quaternion {
    fn sum<I: Iterator<Item = Quaternion>>(iter: I) -> Self {
        iter.fold(Quaternion::ZERO, |acc, q| acc + q)
    }
}

impl fmt::Display for Quaternion {
    /// Renders as `a+bi+cj+dk` with six significant digits, dropping zero
    /// components.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_quaternion(*self, 6))
    }
}

/// Formats a quaternion as `a±bi±cj±dk` with `digits` significant digits.
/// Components with magnitude below `1e-12` are treated as zero.
pub fn format_quaternion(q: Quaternion, digits: usize) -> String {
    let parts = [(q.x0, ""), (q.x1, "i"), (q.x2, "j"), (q.x3, "k")];
    let mut out = String::new();
    for (value, unit) in parts {
        if value.abs() < 1e-12 {
            continue;
        }
        let mag = format_sig(value.abs(), digits);
        let sign = if value < 0.0 { "-" } else if out.is_empty() { "" } else { "+" };
        out.push_str(sign);
        if unit.is_empty() || mag != "1" {
            out.push_str(&mag);
        }
        out.push_str(unit);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Formats a complex number as `a±bi` with `digits` significant digits.
pub fn format_complex(z: Complex64, digits: usize) -> String {
    format_quaternion(Quaternion::from(z), digits)
}

pub(crate) fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-5..=15).contains(&exp) {
        return format!("{:.*e}", digits.saturating_sub(1), x);
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let mut s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// The conjugacy class `λ^{ℍ*} = { x⁻¹ λ x }` of a quaternion, represented by
/// the unique complex member with nonnegative imaginary part.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    pub rep: Complex64,
}

impl ConjugacyClass {
    /// Class of the complex number `z` (its representative is `z` or `z̄`).
    pub fn of_complex(z: Complex64) -> Self {
        ConjugacyClass { rep: Complex64::new(z.re, z.im.abs()) }
    }

    pub fn is_real(&self) -> bool {
        self.rep.im == 0.0
    }

    /// True when the class is numerically a singleton `{real}`.
    pub fn is_real_within(&self, tau: f64) -> bool {
        self.rep.im <= tau * self.rep.norm().max(1.0)
    }

    pub fn modulus(&self) -> f64 {
        self.rep.norm()
    }

    /// Two classes agree when their real parts and moduli agree within `tau`
    /// relative to `max(1, |p|)`.
    pub fn same_as(&self, other: &ConjugacyClass, tau: f64) -> bool {
        let scale = self.rep.norm().max(1.0);
        (self.rep.re - other.rep.re).abs() <= tau * scale
            && (self.rep.norm() - other.rep.norm()).abs() <= tau * scale
    }

    pub fn contains(&self, q: Quaternion) -> bool {
        self.same_as(&class_of(q), tol::CLASS)
    }
}

impl fmt::Display for ConjugacyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rep.im.abs() < 1e-12 {
            write!(f, "{{{}}}", format_sig_signed(self.rep.re))
        } else {
            write!(f, "({})^H*", format_complex(self.rep, 6))
        }
    }
}

fn format_sig_signed(x: f64) -> String {
    if x < 0.0 {
        format!("-{}", format_sig(-x, 6))
    } else {
        format_sig(x, 6)
    }
}

/// Class of `x`: representative `Re x + i |Im x|`.
pub fn class_of(x: Quaternion) -> ConjugacyClass {
    ConjugacyClass { rep: Complex64::new(x.x0, x.imag_norm()) }
}

/// Same-class test with the default tolerance.
pub fn same_class(p: Quaternion, q: Quaternion) -> bool {
    class_of(p).same_as(&class_of(q), tol::CLASS)
}
