//! Unpack/unwind pairs: matrix and vector maps from a larger algebra down to
//! a smaller one.
//!
//! Each pair is built from a scalar representation `ρ: A → M_k(B)` and a
//! fixed vector `e ∈ B^k`. An `m × n` matrix over `A` unpacks to the
//! `km × kn` matrix over `B` with
//!
//! ```text
//! unpack(X)[p·m + i][q·n + j] = ρ(X_ij)[p][q]
//! ```
//!
//! and a vector unwinds to `unwind(v)[p·n + i] = (ρ(v_i)·e)[p]`, so
//! `unwind(X v) = unpack(X)·unwind(v)` holds by construction. `rewind` is the
//! explicit inverse of `unwind`.
//!
//! The ℂ and ℍ pairs also preserve self-inner-products (`re(v*v)` equals
//! `unwind(v)ᵀunwind(v)`). The δ-algebra pairs do not: over the SVD algebra
//! `v*v` lives in ℝ⊕ℝ⊕δ(ℝ⊕ℝ), which a single dual number cannot record.
//!
//! | pair                  | source        | target                 | k |
//! |-----------------------|---------------|------------------------|---|
//! | [`pair_complex`]      | ℂ             | ℝ                      | 2 |
//! | [`pair_quaternion`]   | ℍ             | ℝ (through ℂ)          | 4 |
//! | [`pair_quaternion_skew`] | ℍ          | ℂ                      | 2 |
//! | [`pair_takagi`]       | Takagi alg.   | 𝔻                      | 2 |
//! | [`pair_skewtakagi`]   | skew-Takagi   | 𝔻 with `ε* = -ε`       | 2 |
//! | [`pair_svdalg`]       | SVD algebra   | 𝔻                      | 2 |
//! | [`pair_quatdual`]     | ℍ⊗𝔻           | 𝔻 with `ε* = -ε`       | 4 |

use crate::error::{Error, Result};
use crate::matrix::StarMatrix;
use crate::scalars::{Algebra, Scalar, COMPLEX, DUAL, DUAL_CONJ, QUATERNION, QUAT_DUAL, REAL, SKEW_TAKAGI, SVD, TAKAGI};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum PairKind {
    Complex,
    Quaternion,
    QuaternionSkew,
    Takagi,
    SkewTakagi,
    SvdAlgebra,
    QuaternionDual,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct UnpackPair {
    kind: PairKind,
    source: Algebra,
    target: Algebra,
    k: usize,
}

pub fn pair_complex() -> UnpackPair {
    UnpackPair { kind: PairKind::Complex, source: COMPLEX, target: REAL, k: 2 }
}

/// ℍ → ℝ, the composite of the ℍ → ℂ block map with the ℂ → ℝ map.
pub fn pair_quaternion() -> UnpackPair {
    UnpackPair { kind: PairKind::Quaternion, source: QUATERNION, target: REAL, k: 4 }
}

/// ℍ → ℂ, `a+bi+cj+dk ↦ [[a−bi, −c+di], [c+di, a+bi]]`.
pub fn pair_quaternion_skew() -> UnpackPair {
    UnpackPair { kind: PairKind::QuaternionSkew, source: QUATERNION, target: COMPLEX, k: 2 }
}

/// Takagi algebra → 𝔻 with `i ↦ [[0,1],[−1,0]]`, `δ ↦ diag(−ε, ε)`.
pub fn pair_takagi() -> UnpackPair {
    UnpackPair { kind: PairKind::Takagi, source: TAKAGI, target: DUAL, k: 2 }
}

/// Skew-Takagi algebra → (𝔻, `ε* = −ε`) with `i ↦ [[0,1],[−1,0]]`, `δ ↦ diag(ε, −ε)`.
pub fn pair_skewtakagi() -> UnpackPair {
    UnpackPair { kind: PairKind::SkewTakagi, source: SKEW_TAKAGI, target: DUAL_CONJ, k: 2 }
}

/// SVD algebra → 𝔻, `(a,b) + (c,d)δ ↦ [[a, cε], [dε, b]]`.
pub fn pair_svdalg() -> UnpackPair {
    UnpackPair { kind: PairKind::SvdAlgebra, source: SVD, target: DUAL, k: 2 }
}

/// ℍ⊗𝔻 → (𝔻, `ε* = −ε`), the ℍ → ℝ map applied to both parts.
pub fn pair_quatdual() -> UnpackPair {
    UnpackPair { kind: PairKind::QuaternionDual, source: QUAT_DUAL, target: DUAL_CONJ, k: 4 }
}

fn re(x: f64) -> Scalar {
    Scalar::from_real(REAL, x)
}

fn cx(re: f64, im: f64) -> Scalar {
    Scalar::new(COMPLEX, &[re, im]).expect("two components")
}

fn du(alg: Algebra, st: f64, nst: f64) -> Scalar {
    Scalar::new(alg, &[st, nst]).expect("two components")
}

fn rep_complex(a: f64, b: f64) -> [f64; 4] {
    [a, -b, b, a]
}

/// Rows of the ℍ → ℂ block, as (re, im) pairs.
fn rep_quat_complex(q: &[f64]) -> [[f64; 2]; 4] {
    let (a, b, c, d) = (q[0], q[1], q[2], q[3]);
    [[a, -b], [-c, d], [c, d], [a, b]]
}

/// ℍ → ℝ 4×4 block, row-major: `R[p2·2 + p1][q2·2 + q1] = ρ_ℂ(C[p1][q1])[p2][q2]`.
fn rep_quat_real(q: &[f64]) -> [f64; 16] {
    let c = rep_quat_complex(q);
    let mut r = [0.0; 16];
    for p1 in 0..2 {
        for q1 in 0..2 {
            let z = c[p1 * 2 + q1];
            let blk = rep_complex(z[0], z[1]);
            for p2 in 0..2 {
                for q2 in 0..2 {
                    r[(p2 * 2 + p1) * 4 + q2 * 2 + q1] = blk[p2 * 2 + q2];
                }
            }
        }
    }
    r
}

impl UnpackPair {
    pub fn kind(&self) -> PairKind {
        self.kind
    }

    pub fn source(&self) -> Algebra {
        self.source
    }

    pub fn target(&self) -> Algebra {
        self.target
    }

    /// Dimension multiplier `k`.
    pub fn factor(&self) -> usize {
        self.k
    }

    /// `ρ(x)` as a row-major `k × k` block of target scalars.
    pub fn represent(&self, x: &Scalar) -> Vec<Scalar> {
        let c = x.components();
        let t = self.target;
        match self.kind {
            PairKind::Complex => rep_complex(c[0], c[1]).iter().map(|&v| re(v)).collect(),
            PairKind::Quaternion => rep_quat_real(c).iter().map(|&v| re(v)).collect(),
            PairKind::QuaternionSkew => rep_quat_complex(c).iter().map(|z| cx(z[0], z[1])).collect(),
            PairKind::Takagi => {
                let (a, b, cc, d) = (c[0], c[1], c[2], c[3]);
                vec![du(t, a, -cc), du(t, b, d), du(t, -b, d), du(t, a, cc)]
            }
            PairKind::SkewTakagi => {
                let (a, b, cc, d) = (c[0], c[1], c[2], c[3]);
                vec![du(t, a, cc), du(t, b, -d), du(t, -b, -d), du(t, a, -cc)]
            }
            PairKind::SvdAlgebra => {
                let (a, b, cc, d) = (c[0], c[1], c[2], c[3]);
                vec![du(t, a, 0.0), du(t, 0.0, cc), du(t, 0.0, d), du(t, b, 0.0)]
            }
            PairKind::QuaternionDual => {
                let w = rep_quat_real(&c[..4]);
                let z = rep_quat_real(&c[4..8]);
                w.iter().zip(z.iter()).map(|(&s, &n)| du(t, s, n)).collect()
            }
        }
    }

    /// The fixed vector `e` with `unwind(x) = ρ(x)·e`.
    fn anchor(&self) -> Vec<Scalar> {
        let t = self.target;
        let mut e = vec![Scalar::zero(t); self.k];
        e[0] = Scalar::one(t);
        if self.kind == PairKind::SvdAlgebra {
            e[1] = Scalar::one(t);
        }
        e
    }

    /// Unwind of a single scalar, `ρ(x)·e`.
    pub fn unwind_scalar(&self, x: &Scalar) -> Vec<Scalar> {
        let r = self.represent(x);
        let e = self.anchor();
        let k = self.k;
        (0..k)
            .map(|p| (0..k).fold(Scalar::zero(self.target), |acc, q| acc + r[p * k + q] * e[q]))
            .collect()
    }

    /// Inverse of [`UnpackPair::unwind_scalar`].
    pub fn rewind_scalar(&self, y: &[Scalar]) -> Scalar {
        let s = |i: usize| y[i].components()[0];
        let n = |i: usize| y[i].components()[1];
        let comps: Vec<f64> = match self.kind {
            PairKind::Complex => vec![s(0), s(1)],
            // unwind = (a, c, −b, d)
            PairKind::Quaternion => vec![s(0), -s(2), s(1), s(3)],
            // unwind = (a − bi, c + di)
            PairKind::QuaternionSkew => vec![s(0), -n(0), s(1), n(1)],
            // unwind = (a − cε, −b + dε)
            PairKind::Takagi => vec![s(0), -s(1), -n(0), n(1)],
            // unwind = (a + cε, −b − dε)
            PairKind::SkewTakagi => vec![s(0), -s(1), n(0), -n(1)],
            // unwind = (a + cε, b + dε)
            PairKind::SvdAlgebra => vec![s(0), s(1), n(0), n(1)],
            PairKind::QuaternionDual => {
                vec![s(0), -s(2), s(1), s(3), n(0), -n(2), n(1), n(3)]
            }
        };
        Scalar::new(self.source, &comps).expect("component count fixed per pair")
    }

    fn check_source(&self, m: &StarMatrix) -> Result<()> {
        if m.algebra() == self.source {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch { left: m.algebra(), right: self.source })
        }
    }

    pub fn unpack(&self, m: &StarMatrix) -> Result<StarMatrix> {
        self.check_source(m)?;
        let (rows, cols, k) = (m.rows(), m.cols(), self.k);
        let mut out = StarMatrix::zeros(self.target, k * rows, k * cols);
        for i in 0..rows {
            for j in 0..cols {
                let r = self.represent(&m.get(i, j));
                for p in 0..k {
                    for q in 0..k {
                        out.set(p * rows + i, q * cols + j, r[p * k + q]);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Unwinds every column of `v`.
    pub fn unwind(&self, v: &StarMatrix) -> Result<StarMatrix> {
        self.check_source(v)?;
        let (n, k) = (v.rows(), self.k);
        let mut out = StarMatrix::zeros(self.target, k * n, v.cols());
        for j in 0..v.cols() {
            for i in 0..n {
                for (p, y) in self.unwind_scalar(&v.get(i, j)).into_iter().enumerate() {
                    out.set(p * n + i, j, y);
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`UnpackPair::unwind`], column by column.
    pub fn rewind(&self, u: &StarMatrix) -> Result<StarMatrix> {
        if u.algebra() != self.target {
            return Err(Error::AlgebraMismatch { left: u.algebra(), right: self.target });
        }
        if u.rows() % self.k != 0 {
            return Err(Error::Dimension(format!("{} rows is not a multiple of {}", u.rows(), self.k)));
        }
        let n = u.rows() / self.k;
        Ok(StarMatrix::from_fn(self.source, n, u.cols(), |i, j| {
            let y: Vec<Scalar> = (0..self.k).map(|p| u.get(p * n + i, j)).collect();
            self.rewind_scalar(&y)
        }))
    }
}

/// `|re(v*v) − re(w*w)|` for a column `v` and a candidate unwinding `w`.
/// Zero when `w` transports the self-inner-product of `v`.
pub fn norm_transport_defect(v: &StarMatrix, w: &StarMatrix) -> Result<f64> {
    let vv = v.adjoint().matmul(v)?;
    let ww = w.adjoint().matmul(w)?;
    if vv.rows() != 1 || ww.rows() != 1 {
        return Err(Error::Dimension("expected single columns".into()));
    }
    Ok((vv.get(0, 0).re() - ww.get(0, 0).re()).abs())
}

/// The map `u + vi ↦ (u + v, u)` on complex columns. It is linear and
/// bijective but neither intertwines the ℂ → ℝ unpack nor preserves norms;
/// kept as a counterexample.
pub fn skewed_complex_unwind(v: &StarMatrix) -> Result<StarMatrix> {
    if v.algebra() != COMPLEX {
        return Err(Error::AlgebraMismatch { left: v.algebra(), right: COMPLEX });
    }
    let n = v.rows();
    Ok(StarMatrix::from_fn(REAL, 2 * n, v.cols(), |r, j| {
        let z = v.get(r % n, j);
        let (u, w) = (z.components()[0], z.components()[1]);
        re(if r < n { u + w } else { u })
    }))
}

/// Every shipped pair.
pub fn all_pairs() -> [UnpackPair; 7] {
    [
        pair_complex(),
        pair_quaternion(),
        pair_quaternion_skew(),
        pair_takagi(),
        pair_skewtakagi(),
        pair_svdalg(),
        pair_quatdual(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: [f64; 4]) -> StarMatrix {
        StarMatrix::from_components(QUATERNION, 1, 1, &c).unwrap()
    }

    #[test]
    fn complex_i_is_rotation() {
        let i = StarMatrix::from_components(COMPLEX, 1, 1, &[0.0, 1.0]).unwrap();
        let u = pair_complex().unpack(&i).unwrap();
        assert_eq!(u.leading_components(), vec![0.0, -1.0, 1.0, 0.0]);
    }

    #[test]
    fn quaternion_table_survives() {
        let p = pair_quaternion();
        let (i, j, k) = (q([0.0, 1.0, 0.0, 0.0]), q([0.0, 0.0, 1.0, 0.0]), q([0.0, 0.0, 0.0, 1.0]));
        let jk = p.unpack(&j).unwrap().matmul(&p.unpack(&k).unwrap()).unwrap();
        assert_eq!(jk, p.unpack(&i).unwrap());
        assert_eq!(p.unpack(&q([1.0, 0.0, 0.0, 0.0])).unwrap(), StarMatrix::identity(REAL, 4));
    }

    #[test]
    fn quaternion_skew_j_and_e1() {
        let p = pair_quaternion_skew();
        let u = p.unpack(&q([0.0, 0.0, 1.0, 0.0])).unwrap();
        assert_eq!(u.leading_components(), vec![0.0, -1.0, 1.0, 0.0]);
        assert!(u.entries().iter().all(|z| z.components()[1] == 0.0));
        let w = p.unwind(&q([1.0, 0.0, 0.0, 0.0])).unwrap();
        assert_eq!(w.components(), vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn svd_pair_off_diagonal_delta() {
        let m = [1.0, 2.0, 3.0, 4.0];
        // (M, Mᵀ)δ
        let x = StarMatrix::from_fn(SVD, 2, 2, |i, j| {
            Scalar::new(SVD, &[0.0, 0.0, m[i * 2 + j], m[j * 2 + i]]).unwrap()
        });
        let u = pair_svdalg().unpack(&x).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(u.get(i, 2 + j).components(), &[0.0, m[i * 2 + j]]);
                assert_eq!(u.get(2 + i, j).components(), &[0.0, m[j * 2 + i]]);
                assert!(u.get(i, j).is_zero() && u.get(2 + i, 2 + j).is_zero());
            }
        }
    }

    #[test]
    fn takagi_pair_delta_block() {
        // M = 1 + 2i as a 1×1 matrix times δ
        let x = StarMatrix::from_components(TAKAGI, 1, 1, &[0.0, 0.0, 1.0, 2.0]).unwrap();
        let u = pair_takagi().unpack(&x).unwrap();
        let nst: Vec<f64> = u.entries().iter().map(|z| z.components()[1]).collect();
        assert_eq!(nst, vec![-1.0, 2.0, 2.0, 1.0]);
    }

    #[test]
    fn units_unpack_to_identity() {
        for p in all_pairs() {
            let i = StarMatrix::identity(p.source(), 3);
            assert_eq!(p.unpack(&i).unwrap(), StarMatrix::identity(p.target(), 3 * p.factor()), "{p:?}");
        }
    }
}
