use crate::cmatrix::{CMatrix, C64, CONE, CZERO};
use crate::error::{Error, Result};

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Clone, Debug)]
pub struct Lu {
    factors: CMatrix,
    perm: Vec<usize>,
    sign: f64,
    singular: bool,
}

impl Lu {
    pub fn new(a: &CMatrix) -> Result<Lu> {
        if !a.is_square() {
            return Err(Error::Shape(format!("LU of a {}x{} matrix", a.rows(), a.cols())));
        }
        let n = a.rows();
        let mut f = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let mut singular = false;
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, f[(i, k)].norm()))
                .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmax == 0.0 {
                singular = true;
                continue;
            }
            if p != k {
                for j in 0..n {
                    let tmp = f[(k, j)];
                    f[(k, j)] = f[(p, j)];
                    f[(p, j)] = tmp;
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = f[(k, k)];
            for i in k + 1..n {
                let l = f[(i, k)] / pivot;
                f[(i, k)] = l;
                if l == CZERO {
                    continue;
                }
                for j in k + 1..n {
                    let u = f[(k, j)];
                    f[(i, j)] -= l * u;
                }
            }
        }
        Ok(Lu { factors: f, perm, sign, singular })
    }

    pub fn det(&self) -> C64 {
        if self.singular {
            return CZERO;
        }
        let n = self.factors.rows();
        (0..n).fold(C64::new(self.sign, 0.0), |acc, i| acc * self.factors[(i, i)])
    }

    pub fn is_singular(&self) -> bool {
        self.singular
    }

    pub fn solve(&self, b: &[C64]) -> Result<Vec<C64>> {
        let n = self.factors.rows();
        if b.len() != n {
            return Err(Error::Shape("right-hand side length".into()));
        }
        if self.singular {
            return Err(Error::Domain("singular matrix".into()));
        }
        let mut x: Vec<C64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: C64 = (0..i).map(|j| self.factors[(i, j)] * x[j]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: C64 = (i + 1..n).map(|j| self.factors[(i, j)] * x[j]).sum();
            x[i] = (x[i] - s) / self.factors[(i, i)];
        }
        Ok(x)
    }
}

/// Determinant by pivoted LU. The empty matrix has determinant one.
pub fn det(a: &CMatrix) -> Result<C64> {
    if a.rows() == 0 && a.cols() == 0 {
        return Ok(CONE);
    }
    Ok(Lu::new(a)?.det())
}
