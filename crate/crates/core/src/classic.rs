//! Classic decompositions, each read off a single spectral call over a
//! δ-algebra, plus the exact Jordan form over ℚ.

use num_traits::{One, Zero};

use crate::dense::{complete_orthonormal, RMat};
use crate::error::{Error, Result};
use crate::infinitesimal::{spectral_skewtakagi_alg, spectral_svdalg, spectral_takagi_alg, CanonicalBlock, SvdAlgEigenvalue};
use crate::matrix::StarMatrix;
use crate::rational::{format_rational, QMatrix, Rational};
use crate::scalars::{Scalar, COMPLEX, REAL, SKEW_TAKAGI, SPLIT_STERILE, SVD, TAKAGI};
use crate::spectral::{cluster_tol, eig_real_symmetric, EigenDecomp};

pub use crate::spectral::canon_quaternion_skew as quaternion_skew_spectral;

/// `M = U Σ Vᵀ` with `U` (rows×rows) and `V` (cols×cols) orthogonal and
/// `Σ` rows×cols with `sigma` on its diagonal.
#[derive(Clone, Debug)]
pub struct SvdResult {
    pub u: StarMatrix,
    pub sigma: Vec<f64>,
    pub v: StarMatrix,
}

impl SvdResult {
    /// Σ as a rows×cols real matrix.
    pub fn sigma_matrix(&self) -> StarMatrix {
        let mut s = StarMatrix::zeros(REAL, self.u.rows(), self.v.rows());
        for (k, &x) in self.sigma.iter().enumerate() {
            s.set(k, k, Scalar::from_real(REAL, x));
        }
        s
    }

    pub fn reconstruct(&self) -> StarMatrix {
        self.u.matmul(&self.sigma_matrix()).and_then(|x| x.matmul(&self.v.transpose())).expect("conforming factors")
    }
}

fn expect_alg(m: &StarMatrix, alg: crate::scalars::Algebra) -> Result<()> {
    if m.algebra() != alg {
        return Err(Error::AlgebraMismatch { left: m.algebra(), right: alg });
    }
    Ok(())
}

/// Singular value decomposition through the SVD algebra: the matrix
/// `(M, Mᵀ)δ` is self-adjoint, and its eigenvectors `(a, b) + …δ` with
/// eigenvalue `σδ` satisfy `M b = σ a`, `Mᵀ a = σ b`.
pub fn svd(m: &StarMatrix, tol: f64) -> Result<SvdResult> {
    expect_alg(m, REAL)?;
    let (rows, cols) = (m.rows(), m.cols());
    let n = rows.max(cols);
    let at = |i: usize, j: usize| if i < rows && j < cols { m.get(i, j).re() } else { 0.0 };
    let h = StarMatrix::from_fn(SVD, n, n, |i, j| Scalar::new(SVD, &[0.0, 0.0, at(i, j), at(j, i)]).expect("four"));
    let e = spectral_svdalg(&h, tol)?;
    let mut triples: Vec<(f64, Vec<f64>, Vec<f64>)> = (0..n)
        .map(|k| {
            let sigma = match e.eigenvalues[k] {
                SvdAlgEigenvalue::Dual { nst, .. } => nst,
                SvdAlgEigenvalue::Pair { .. } => 0.0,
            };
            let a = (0..n).map(|i| e.u.get(i, k).components()[0]).collect();
            let b = (0..n).map(|i| e.u.get(i, k).components()[1]).collect();
            (sigma, a, b)
        })
        .collect();
    triples.sort_by(|x, y| y.0.total_cmp(&x.0));
    let k = rows.min(cols);
    let sigma: Vec<f64> = triples.iter().take(k).map(|t| t.0).collect();
    let ztol = cluster_tol(m.frobenius_norm());
    // directions with σ > 0 live in the unpadded coordinates
    let side = |dim: usize, pick: &dyn Fn(&(f64, Vec<f64>, Vec<f64>)) -> &Vec<f64>| -> Result<StarMatrix> {
        let q = if dim == n {
            RMat::from_fn(n, n, |i, j| pick(&triples[j])[i])
        } else {
            let live: Vec<&(f64, Vec<f64>, Vec<f64>)> = triples.iter().filter(|t| t.0 > ztol).collect();
            let base = RMat::from_fn(dim, live.len(), |i, j| pick(live[j])[i]);
            let rest = complete_orthonormal(&base, dim - live.len())?;
            RMat::from_fn(dim, dim, |i, j| if j < live.len() { base.at(i, j) } else { rest.at(i, j - live.len()) })
        };
        Ok(q.to_star())
    };
    let u = side(rows, &|t| &t.1)?;
    let v = side(cols, &|t| &t.2)?;
    Ok(SvdResult { u, sigma, v })
}

fn symmetric_defect(s: &StarMatrix, skew: bool) -> Result<f64> {
    let t = s.transpose();
    let d = if skew { s.try_add(&t)? } else { s.try_sub(&t)? };
    Ok(d.frobenius_norm())
}

/// Takagi factorisation `S = U D Uᵀ` of a complex symmetric matrix, `U`
/// unitary and `D` real, non-negative and descending.
pub fn takagi(s: &StarMatrix, tol: f64) -> Result<(StarMatrix, Vec<f64>)> {
    expect_alg(s, COMPLEX)?;
    if !s.is_square() {
        return Err(Error::NotSquare { rows: s.rows(), cols: s.cols() });
    }
    let defect = symmetric_defect(s, false)?;
    let bound = tol * (1.0 + s.frobenius_norm());
    if defect > bound {
        return Err(Error::precondition("S must be symmetric, ‖S−Sᵀ‖_F", defect, bound));
    }
    let n = s.rows();
    let h = StarMatrix::from_parts(TAKAGI, &StarMatrix::zeros(COMPLEX, n, n), s)?;
    let e = spectral_takagi_alg(&h, tol)?;
    Ok((e.u.std_part(), e.blocks.iter().map(|b| b.coupling()).collect()))
}

/// `S = U D Uᵀ` for complex skew-symmetric `S`, with `D` a direct sum of
/// `[[0, −μ], [μ, 0]]` (μ > 0, descending) and zeros. Returns `U`, `D` and
/// the μ's.
pub fn skew_takagi(s: &StarMatrix, tol: f64) -> Result<(StarMatrix, StarMatrix, Vec<f64>)> {
    expect_alg(s, COMPLEX)?;
    if !s.is_square() {
        return Err(Error::NotSquare { rows: s.rows(), cols: s.cols() });
    }
    let defect = symmetric_defect(s, true)?;
    let bound = tol * (1.0 + s.frobenius_norm());
    if defect > bound {
        return Err(Error::precondition("S must be skew-symmetric, ‖S+Sᵀ‖_F", defect, bound));
    }
    let n = s.rows();
    let h = StarMatrix::from_parts(SKEW_TAKAGI, &StarMatrix::zeros(COMPLEX, n, n), s)?;
    let e = spectral_skewtakagi_alg(&h, tol)?;
    let mut d = StarMatrix::zeros(COMPLEX, n, n);
    let mut mus = Vec::new();
    let mut at = 0;
    for b in &e.blocks {
        if let CanonicalBlock::Pair { coupling, .. } = *b {
            d.set(at, at + 1, Scalar::from_real(COMPLEX, -coupling));
            d.set(at + 1, at, Scalar::from_real(COMPLEX, coupling));
            mus.push(coupling);
        }
        at += b.size();
    }
    Ok((e.u.std_part(), d, mus))
}

/// Spectral theorem over (ℝ⊕ℝ, *₁): `(H, K) = (U, V)(D, E)(U, V)*`.
#[derive(Clone, Debug)]
pub struct PairDiag {
    pub unitary: StarMatrix,
    pub diagonal: StarMatrix,
}

pub fn pair_diag(h: &StarMatrix, k: &StarMatrix, tol: f64) -> Result<PairDiag> {
    if h.rows() != k.rows() || h.cols() != k.cols() {
        return Err(Error::Dimension("the two matrices differ in shape".into()));
    }
    let eh: EigenDecomp = eig_real_symmetric(h, tol)?;
    let ek = eig_real_symmetric(k, tol)?;
    let pair = |a: &StarMatrix, b: &StarMatrix| {
        StarMatrix::from_fn(SPLIT_STERILE, a.rows(), a.cols(), |i, j| {
            Scalar::new(SPLIT_STERILE, &[a.get(i, j).re(), b.get(i, j).re()]).expect("two")
        })
    };
    Ok(PairDiag { unitary: pair(&eh.u, &ek.u), diagonal: pair(&eh.d, &ek.d) })
}

/// One Jordan block `J_size(value)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanBlock {
    pub value: Rational,
    pub size: usize,
}

/// `M = P J P⁻¹` exactly, blocks ordered by eigenvalue ascending then size
/// descending.
#[derive(Clone, Debug)]
pub struct JordanResult {
    pub p: QMatrix,
    pub j: QMatrix,
    pub blocks: Vec<JordanBlock>,
}

/// `J` assembled from blocks (ones on the superdiagonal).
pub fn jordan_matrix(blocks: &[JordanBlock]) -> QMatrix {
    let n = blocks.iter().map(|b| b.size).sum();
    let mut j = QMatrix::zeros(n, n);
    let mut at = 0;
    for b in blocks {
        for i in 0..b.size {
            j.set(at + i, at + i, b.value.clone());
            if i + 1 < b.size {
                j.set(at + i, at + i + 1, Rational::one());
            }
        }
        at += b.size;
    }
    j
}

fn independent_of(span: &[Vec<Rational>], v: &[Rational]) -> bool {
    let rows = v.len();
    let mut cols: Vec<Vec<Rational>> = span.to_vec();
    let before = QMatrix::from_columns(rows, &cols).rank();
    cols.push(v.to_vec());
    QMatrix::from_columns(rows, &cols).rank() > before
}

fn pow_apply(n: &QMatrix, v: &[Rational], k: usize) -> Vec<Rational> {
    (0..k).fold(v.to_vec(), |acc, _| n.mul_vec(&acc))
}

/// Exact Jordan form of a rational matrix with rational eigenvalues.
pub fn jordan(m: &QMatrix) -> Result<JordanResult> {
    if m.rows() != m.cols() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let dim = m.rows();
    let (roots, rest) = m.characteristic_polynomial().rational_roots()?;
    if rest.degree() > 0 {
        return Err(Error::IrrationalEigenvalues { factor: rest.to_string() });
    }
    let mut blocks = Vec::new();
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(dim);
    for (lam, mult) in &roots {
        let nmat = m.shift(lam);
        // kernels of N^k until the generalised eigenspace is reached
        let mut kernels: Vec<Vec<Vec<Rational>>> = vec![Vec::new()];
        let mut power = QMatrix::identity(dim);
        while kernels.last().map_or(0, |k| k.len()) < *mult {
            power = power.mul(&nmat);
            kernels.push(power.kernel());
            if kernels.len() > dim + 1 {
                return Err(Error::Numerical("generalised eigenspace did not stabilise".into()));
            }
        }
        let top = kernels.len() - 1;
        let mut tops: Vec<(Vec<Rational>, usize)> = Vec::new();
        for s in (1..=top).rev() {
            // span that a new chain top of height s must avoid
            let mut avoid: Vec<Vec<Rational>> = kernels[s - 1].clone();
            for (y, t) in &tops {
                avoid.push(pow_apply(&nmat, y, t - s));
            }
            for cand in &kernels[s] {
                if independent_of(&avoid, cand) {
                    avoid.push(cand.clone());
                    tops.push((cand.clone(), s));
                }
            }
        }
        tops.sort_by(|a, b| b.1.cmp(&a.1));
        for (y, s) in &tops {
            for k in (0..*s).rev() {
                columns.push(pow_apply(&nmat, y, k));
            }
            blocks.push(JordanBlock { value: lam.clone(), size: *s });
        }
    }
    let p = QMatrix::from_columns(dim, &columns);
    let j = jordan_matrix(&blocks);
    if m.mul(&p) != p.mul(&j) || p.rank() != dim {
        return Err(Error::Numerical("Jordan chains failed to reproduce the matrix".into()));
    }
    Ok(JordanResult { p, j, blocks })
}

/// An exact bracket matrix `[L, R]` over (ℝ⊕ℝ, *₋₁), with
/// `[A, B][C, D] = [AC, DB]` and `[A, B]* = [B, A]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QBracket {
    pub left: QMatrix,
    pub right: QMatrix,
}

impl QBracket {
    pub fn mul(&self, o: &QBracket) -> QBracket {
        QBracket { left: self.left.mul(&o.left), right: o.right.mul(&self.right) }
    }

    pub fn adjoint(&self) -> QBracket {
        QBracket { left: self.right.clone(), right: self.left.clone() }
    }
}

/// Checks `[M, M] = [P, P⁻¹][J, J][P⁻¹, P]` exactly and that `[P, P⁻¹]` is
/// unitary.
pub fn bracket_identity_holds(m: &QMatrix, r: &JordanResult) -> Result<bool> {
    let pinv = r.p.inverse()?;
    let u = QBracket { left: r.p.clone(), right: pinv.clone() };
    let jj = QBracket { left: r.j.clone(), right: r.j.clone() };
    let lhs = QBracket { left: m.clone(), right: m.clone() };
    let unit = u.mul(&u.adjoint());
    let id = QBracket { left: QMatrix::identity(m.rows()), right: QMatrix::identity(m.rows()) };
    Ok(u.mul(&jj).mul(&u.adjoint()) == lhs && unit == id)
}

/// `J_size(value)` blocks as readable text, e.g. `J2(1) J1(-1/2)`.
pub fn describe_blocks(blocks: &[JordanBlock]) -> String {
    blocks.iter().map(|b| format!("J{}({})", b.size, format_rational(&b.value))).collect::<Vec<_>>().join(" ")
}

/// Whether `j` is upper bidiagonal with unit superdiagonal entries only
/// between equal diagonal entries.
pub fn is_jordan_shape(j: &QMatrix) -> bool {
    let n = j.rows();
    (0..n).all(|r| {
        (0..n).all(|c| {
            let x = j.get(r, c);
            match c {
                _ if c == r => true,
                _ if c == r + 1 => x.is_zero() || (x.is_one() && j.get(r, r) == j.get(c, c)),
                _ => x.is_zero(),
            }
        })
    })
}
