//! Plain real dense matrices for the inner numerical kernels.

use crate::error::{Error, Result};
use crate::matrix::StarMatrix;
use crate::scalars::{Scalar, REAL};

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl RMat {
    pub fn zeros(rows: usize, cols: usize) -> RMat {
        RMat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> RMat {
        let mut m = RMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> RMat {
        let mut m = RMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn put(&mut self, i: usize, j: usize, x: f64) {
        self.data[i * self.cols + j] = x;
    }

    pub fn mul(&self, o: &RMat) -> RMat {
        assert_eq!(self.cols, o.rows);
        let mut out = RMat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0.0 {
                    continue;
                }
                let row = &o.data[k * o.cols..(k + 1) * o.cols];
                let dst = &mut out.data[i * o.cols..(i + 1) * o.cols];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }

    pub fn t(&self) -> RMat {
        RMat::from_fn(self.cols, self.rows, |i, j| self.at(j, i))
    }

    pub fn add(&self, o: &RMat) -> RMat {
        RMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    #[cfg(test)]
    pub fn sub(&self, o: &RMat) -> RMat {
        RMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    pub fn frob(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    pub fn sub_block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> RMat {
        RMat::from_fn(nr, nc, |i, j| self.at(r0 + i, c0 + j))
    }

    pub fn select_cols(&self, idx: &[usize]) -> RMat {
        RMat::from_fn(self.rows, idx.len(), |i, j| self.at(i, idx[j]))
    }

    /// Leading components of a matrix whose entries are embedded reals.
    pub fn from_star_leading(m: &StarMatrix) -> RMat {
        RMat::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).re())
    }

    /// The `k`-th component of every entry.
    pub fn from_star_component(m: &StarMatrix, k: usize) -> RMat {
        RMat::from_fn(m.rows(), m.cols(), |i, j| m.get(i, j).components()[k])
    }

    pub fn to_star(&self) -> StarMatrix {
        StarMatrix::from_fn(REAL, self.rows, self.cols, |i, j| Scalar::from_real(REAL, self.at(i, j)))
    }

    pub fn symmetric_part(&self) -> RMat {
        RMat::from_fn(self.rows, self.cols, |i, j| 0.5 * (self.at(i, j) + self.at(j, i)))
    }
}

/// Cyclic Jacobi eigen-decomposition of a symmetric matrix.
///
/// Returns eigenvalues in descending order and orthonormal eigenvectors as
/// columns, each with its first component of magnitude above `1e-8` made
/// positive.
pub(crate) fn jacobi_eigen(s: &RMat) -> Result<(Vec<f64>, RMat)> {
    let n = s.rows;
    let mut a = s.symmetric_part();
    let mut v = RMat::identity(n);
    let threshold = 1e-14 * a.frob();
    let off = |a: &RMat| {
        let mut o = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    o += a.at(i, j) * a.at(i, j);
                }
            }
        }
        o.sqrt()
    };
    let mut sweeps = 0;
    while off(&a) > threshold {
        sweeps += 1;
        if sweeps > 100 {
            return Err(Error::Numerical(format!("Jacobi did not converge for n = {n}")));
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.at(p, q);
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * c;
                for k in 0..n {
                    let akp = a.at(k, p);
                    let akq = a.at(k, q);
                    a.put(k, p, c * akp - sn * akq);
                    a.put(k, q, sn * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.at(p, k);
                    let aqk = a.at(q, k);
                    a.put(p, k, c * apk - sn * aqk);
                    a.put(q, k, sn * apk + c * aqk);
                }
                for k in 0..n {
                    let vkp = v.at(k, p);
                    let vkq = v.at(k, q);
                    v.put(k, p, c * vkp - sn * vkq);
                    v.put(k, q, sn * vkp + c * vkq);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.at(j, j).total_cmp(&a.at(i, i)).then(i.cmp(&j)));
    let vals = order.iter().map(|&i| a.at(i, i)).collect();
    let mut vecs = v.select_cols(&order);
    for j in 0..n {
        fix_column_sign(&mut vecs, j, None);
    }
    Ok((vals, vecs))
}

/// Flips column `j` (and the same column of `companion`) so its first
/// component with magnitude above `1e-8` is positive.
pub(crate) fn fix_column_sign(m: &mut RMat, j: usize, companion: Option<&mut RMat>) {
    let lead = (0..m.rows).map(|i| m.at(i, j)).find(|x| x.abs() > 1e-8);
    if let Some(x) = lead {
        if x < 0.0 {
            for i in 0..m.rows {
                let y = m.at(i, j);
                m.put(i, j, -y);
            }
            if let Some(c) = companion {
                for i in 0..c.rows {
                    let y = c.at(i, j);
                    c.put(i, j, -y);
                }
            }
        }
    }
}

/// `need` orthonormal columns completing the orthonormal columns of `q`,
/// chosen by pivoted Gram–Schmidt over coordinate vectors and returned in
/// increasing pivot order.
pub(crate) fn complete_orthonormal(q: &RMat, need: usize) -> Result<RMat> {
    let n = q.rows;
    let mut basis: Vec<Vec<f64>> = (0..q.cols).map(|j| q.col(j)).collect();
    // residuals of e_i against the basis, column i of I − QQᵀ
    let mut resid: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let mut r = vec![0.0; n];
            r[i] = 1.0;
            for b in &basis {
                let d = b[i];
                r.iter_mut().zip(b).for_each(|(x, y)| *x -= d * y);
            }
            r
        })
        .collect();
    let mut found: Vec<(usize, Vec<f64>)> = Vec::with_capacity(need);
    for _ in 0..need {
        let (best, norm) = resid
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.iter().map(|x| x * x).sum::<f64>().sqrt()))
            .fold((0, -1.0), |a, b| if b.1 > a.1 { b } else { a });
        if !(norm > 1e-6) {
            return Err(Error::Complement(format!("no independent direction left (residual {norm:e})")));
        }
        let mut x = resid[best].clone();
        for b in &basis {
            let d: f64 = b.iter().zip(&x).map(|(p, q)| p * q).sum();
            x.iter_mut().zip(b).for_each(|(v, w)| *v -= d * w);
        }
        let nx = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        x.iter_mut().for_each(|v| *v /= nx);
        for r in resid.iter_mut() {
            let d: f64 = r.iter().zip(&x).map(|(p, q)| p * q).sum();
            r.iter_mut().zip(&x).for_each(|(v, w)| *v -= d * w);
        }
        basis.push(x.clone());
        found.push((best, x));
    }
    found.sort_by_key(|(i, _)| *i);
    Ok(RMat::from_fn(n, need, |i, j| found[j].1[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_small() {
        let s = RMat { rows: 2, cols: 2, data: vec![0.0, 1.0, 1.0, 0.0] };
        let (vals, vecs) = jacobi_eigen(&s).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-15 && (vals[1] + 1.0).abs() < 1e-15);
        let recon = vecs.mul(&RMat::from_fn(2, 2, |i, j| if i == j { vals[i] } else { 0.0 })).mul(&vecs.t());
        assert!(recon.sub(&s).frob() < 1e-14);
    }
}
