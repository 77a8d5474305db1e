//! Ground-level eigensolvers: real symmetric, complex and quaternion
//! Hermitian, real skew-symmetric and quaternion skew-Hermitian canonical
//! forms, and the spectral theorem for symmetric dual-number matrices.

use std::ops::Range;

use crate::dense::{complete_orthonormal, fix_column_sign, jacobi_eigen, RMat};
use crate::error::{Error, Result};
use crate::matrix::{inner, restrict_to_complement, StarMatrix};
use crate::scalars::{Algebra, Scalar, COMPLEX, DUAL, QUATERNION, REAL};
use crate::unpack::{pair_complex, pair_quaternion, UnpackPair};

/// Relative width used to decide that two standard eigenvalues coincide.
pub const CLUSTER_RTOL: f64 = 1e-8;

/// Clusters wider than this many cluster tolerances are rejected.
const MAX_CLUSTER_SPREAD: f64 = 8.0;

pub fn cluster_tol(norm: f64) -> f64 {
    CLUSTER_RTOL * (1.0 + norm)
}

/// `H = U D U*`.
#[derive(Clone, Debug)]
pub struct EigenDecomp {
    pub u: StarMatrix,
    pub d: StarMatrix,
    /// `‖U D U* − H‖_F`.
    pub residual: f64,
}

impl EigenDecomp {
    pub(crate) fn assemble(h: &StarMatrix, u: StarMatrix, d: StarMatrix) -> Result<EigenDecomp> {
        let residual = u.matmul(&d)?.matmul(&u.adjoint())?.try_sub(h)?.frobenius_norm();
        Ok(EigenDecomp { u, d, residual })
    }

    /// Diagonal entries of `D`.
    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.d.rows()).map(|i| self.d.get(i, i)).collect()
    }

    /// `‖U*U − I‖_F`.
    pub fn unitarity_defect(&self) -> f64 {
        self.u.orthonormality_defect()
    }
}

fn expect_algebra(m: &StarMatrix, alg: Algebra) -> Result<()> {
    if m.algebra() != alg {
        return Err(Error::AlgebraMismatch { left: m.algebra(), right: alg });
    }
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    Ok(())
}

fn require_self_adjoint(m: &StarMatrix, tol: f64) -> Result<()> {
    let defect = m.self_adjoint_defect()?;
    let bound = tol * (1.0 + m.frobenius_norm());
    if defect > bound {
        return Err(Error::precondition("matrix is self-adjoint", defect, bound));
    }
    Ok(())
}

fn require_skew_adjoint(m: &StarMatrix, tol: f64) -> Result<()> {
    let defect = m.try_add(&m.adjoint())?.frobenius_norm();
    let bound = tol * (1.0 + m.frobenius_norm());
    if defect > bound {
        return Err(Error::precondition("matrix is skew-adjoint", defect, bound));
    }
    Ok(())
}

/// Groups descending values into runs whose neighbours differ by at most `tol`.
pub(crate) fn clusters(vals: &[f64], tol: f64) -> Result<Vec<Range<usize>>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=vals.len() {
        if i == vals.len() || vals[i - 1] - vals[i] > tol {
            if vals[start] - vals[i - 1] > MAX_CLUSTER_SPREAD * tol {
                return Err(Error::ClusterSeparation(format!(
                    "eigenvalues {} … {} chain together within {tol:e}",
                    vals[start],
                    vals[i - 1]
                )));
            }
            if i > start {
                out.push(start..i);
            }
            start = i;
        }
    }
    Ok(out)
}

fn real_diag(alg: Algebra, vals: &[f64]) -> StarMatrix {
    let d: Vec<Scalar> = vals.iter().map(|&x| Scalar::from_real(alg, x)).collect();
    StarMatrix::diagonal(alg, &d)
}

/// Real symmetric eigen-decomposition, eigenvalues descending.
pub fn eig_real_symmetric(s: &StarMatrix, tol: f64) -> Result<EigenDecomp> {
    expect_algebra(s, REAL)?;
    require_self_adjoint(s, tol)?;
    let (vals, vecs) = jacobi_eigen(&RMat::from_star_leading(s))?;
    EigenDecomp::assemble(s, vecs.to_star(), real_diag(REAL, &vals))
}

/// How far an eigenvector may be rotated when fixing its phase.
#[derive(Copy, Clone, PartialEq, Eq)]
enum Phase {
    /// Any unit scalar (eigenvalue is real and central).
    Full,
    /// Only complex units `e^{iθ}` (eigenvalue is `iμ`).
    ComplexOnly,
}

/// Right-multiplies `v` by a unit scalar so its first significant entry is
/// real and positive (or has positive real complex part, for [`Phase::ComplexOnly`]).
fn fix_phase(v: &StarMatrix, mode: Phase) -> StarMatrix {
    let alg = v.algebra();
    let Some(lead) = (0..v.rows()).map(|i| v.get(i, 0)).find(|x| x.max_abs() > 1e-8) else {
        return v.clone();
    };
    let unit = match mode {
        Phase::Full => {
            let n = lead.norm_sqr().sqrt();
            lead.involute().scale(1.0 / n)
        }
        Phase::ComplexOnly => {
            let c = lead.components();
            let n = (c[0] * c[0] + c[1] * c[1]).sqrt();
            if n <= 1e-8 {
                return v.clone();
            }
            let mut comps = vec![0.0; alg.component_count()];
            comps[0] = c[0] / n;
            comps[1] = -c[1] / n;
            Scalar::new(alg, &comps).expect("matching count")
        }
    };
    v.mul_scalar_right(&unit)
}

/// Hermitian solve through a real unpacking, extracting all eigenvectors
/// from one real decomposition: within each eigenvalue cluster, unwound real
/// eigenvectors are rewound and orthogonalised over the source algebra.
fn hermitian_batched(h: &StarMatrix, pair: UnpackPair) -> Result<EigenDecomp> {
    let n = h.rows();
    let real = RMat::from_star_leading(&pair.unpack(h)?);
    let (vals, vecs) = jacobi_eigen(&real)?;
    let ctol = cluster_tol(h.frobenius_norm());
    let mut cols: Vec<StarMatrix> = Vec::with_capacity(n);
    let mut evals = Vec::with_capacity(n);
    for range in clusters(&vals, ctol)? {
        let want = range.len() / pair.factor();
        let mut accepted: Vec<StarMatrix> = Vec::new();
        for t in range.clone() {
            if accepted.len() == want {
                break;
            }
            let mut v = pair.rewind(&RMat::from_fn(real.rows, 1, |i, _| vecs.at(i, t)).to_star())?;
            for _ in 0..2 {
                for w in &accepted {
                    v = v.try_sub(&w.mul_scalar_right(&inner(w, &v)?))?;
                }
            }
            let nv = v.frobenius_norm();
            if nv > 0.5 {
                accepted.push(v.scale(1.0 / nv));
            }
        }
        if accepted.len() != want {
            return Err(Error::Numerical(format!(
                "eigenspace of dimension {} yielded {} vectors over {}",
                range.len(),
                accepted.len(),
                h.algebra()
            )));
        }
        for v in accepted {
            let v = fix_phase(&v, Phase::Full);
            evals.push(inner(&v, &h.matmul(&v)?)?.re());
            cols.push(v);
        }
    }
    let u = if n == 0 { StarMatrix::zeros(h.algebra(), 0, 0) } else { StarMatrix::hstack(&cols)? };
    EigenDecomp::assemble(h, u, real_diag(h.algebra(), &evals))
}

/// Complex Hermitian eigen-decomposition, eigenvalues descending.
pub fn eig_complex_hermitian(h: &StarMatrix, tol: f64) -> Result<EigenDecomp> {
    expect_algebra(h, COMPLEX)?;
    require_self_adjoint(h, tol)?;
    hermitian_batched(h, pair_complex())
}

/// Quaternion Hermitian eigen-decomposition, one eigenvector per step:
/// unpack to ℝ, take the top eigenvector, rewind it, restrict to its
/// complement and repeat.
pub fn eig_quaternion_hermitian(h: &StarMatrix, tol: f64) -> Result<EigenDecomp> {
    expect_algebra(h, QUATERNION)?;
    require_self_adjoint(h, tol)?;
    let n = h.rows();
    let pair = pair_quaternion();
    let mut current = h.clone();
    let mut basis = StarMatrix::identity(QUATERNION, n);
    let mut cols = Vec::with_capacity(n);
    let mut evals = Vec::with_capacity(n);
    while current.rows() > 0 {
        let real = RMat::from_star_leading(&pair.unpack(&current)?);
        let (_, vecs) = jacobi_eigen(&real)?;
        let local = pair.rewind(&RMat::from_fn(real.rows, 1, |i, _| vecs.at(i, 0)).to_star())?;
        let local = local.scale(1.0 / local.frobenius_norm());
        evals.push(inner(&local, &current.matmul(&local)?)?.re());
        cols.push(fix_phase(&basis.matmul(&local)?, Phase::Full));
        let r = restrict_to_complement(&current, &local, 1e-8)?;
        current = r.matrix;
        basis = basis.matmul(&r.basis)?;
    }
    let u = if n == 0 { StarMatrix::zeros(QUATERNION, 0, 0) } else { StarMatrix::hstack(&cols)? };
    EigenDecomp::assemble(h, u, real_diag(QUATERNION, &evals))
}

/// Invariant planes of a real skew matrix: `(u, v, μ)` with `S u = μ v`,
/// `S v = −μ u`, μ descending, plus an orthonormal basis of the kernel.
pub(crate) struct SkewPlanes {
    pub planes: Vec<(Vec<f64>, Vec<f64>, f64)>,
    pub kernel: RMat,
}

pub(crate) fn real_skew_planes(s: &RMat, zero_tol: f64) -> Result<SkewPlanes> {
    let n = s.rows;
    // iS as a complex Hermitian matrix
    let is = StarMatrix::from_fn(COMPLEX, n, n, |i, j| Scalar::new(COMPLEX, &[0.0, s.at(i, j)]).expect("two"));
    let eig = hermitian_batched(&is, pair_complex())?;
    let mut planes = Vec::new();
    for (k, mu) in eig.diagonal().iter().map(|x| x.re()).enumerate() {
        if mu <= zero_tol {
            break;
        }
        let z = eig.u.column(k);
        let u: Vec<f64> = (0..n).map(|i| std::f64::consts::SQRT_2 * z.get(i, 0).components()[0]).collect();
        let v: Vec<f64> = (0..n).map(|i| std::f64::consts::SQRT_2 * z.get(i, 0).components()[1]).collect();
        planes.push((u, v, mu));
    }
    let mut q = RMat::zeros(n, 2 * planes.len());
    for (k, (u, v, _)) in planes.iter().enumerate() {
        for i in 0..n {
            q.put(i, 2 * k, u[i]);
            q.put(i, 2 * k + 1, v[i]);
        }
    }
    let kernel = complete_orthonormal(&q, n - 2 * planes.len())?;
    Ok(SkewPlanes { planes, kernel })
}

/// Canonical form `S = U D Uᵀ` of a real skew-symmetric matrix, with
/// `D = ⊕ [[0, −μ], [μ, 0]] ⊕ 0`, μ descending.
pub fn canon_real_skew(s: &StarMatrix, tol: f64) -> Result<EigenDecomp> {
    expect_algebra(s, REAL)?;
    require_skew_adjoint(s, tol)?;
    let n = s.rows();
    let sp = real_skew_planes(&RMat::from_star_leading(s), cluster_tol(s.frobenius_norm()))?;
    let mut u = RMat::zeros(n, n);
    let mut d = RMat::zeros(n, n);
    for (k, (a, b, mu)) in sp.planes.iter().enumerate() {
        for i in 0..n {
            u.put(i, 2 * k, a[i]);
            u.put(i, 2 * k + 1, b[i]);
        }
        d.put(2 * k, 2 * k + 1, -mu);
        d.put(2 * k + 1, 2 * k, *mu);
    }
    let off = 2 * sp.planes.len();
    for j in 0..sp.kernel.cols {
        for i in 0..n {
            u.put(i, off + j, sp.kernel.at(i, j));
        }
    }
    EigenDecomp::assemble(s, u.to_star(), d.to_star())
}

/// Canonical form `M = U D U*` of a quaternion skew-Hermitian matrix with
/// `D = diag(iμ₁, …, iμ_n)`, `μ₁ ≥ … ≥ μ_n ≥ 0`.
///
/// Each step unpacks to a real skew matrix, lifts its top invariant plane
/// `(x, y)` (with `Mx = yμ`, `My = −xμ`) to the eigenvector `x − y·i`, or
/// `(x + y·i)·j` when that vanishes, and restricts to the complement.
pub fn canon_quaternion_skew(m: &StarMatrix, tol: f64) -> Result<EigenDecomp> {
    expect_algebra(m, QUATERNION)?;
    require_skew_adjoint(m, tol)?;
    let n = m.rows();
    let pair = pair_quaternion();
    let zero_tol = cluster_tol(m.frobenius_norm());
    let qi = Scalar::new(QUATERNION, &[0.0, 1.0, 0.0, 0.0])?;
    let qj = Scalar::new(QUATERNION, &[0.0, 0.0, 1.0, 0.0])?;
    let mut current = m.clone();
    let mut basis = StarMatrix::identity(QUATERNION, n);
    let mut cols = Vec::with_capacity(n);
    let mut mus = Vec::with_capacity(n);
    while current.rows() > 0 {
        let real = RMat::from_star_leading(&pair.unpack(&current)?);
        let sp = real_skew_planes(&real, zero_tol)?;
        let Some((a, b, mu)) = sp.planes.first() else {
            // what is left is numerically zero
            for j in 0..basis.cols() {
                cols.push(fix_phase(&basis.column(j), Phase::ComplexOnly));
                mus.push(0.0);
            }
            break;
        };
        let to_star = |w: &[f64]| RMat::from_fn(w.len(), 1, |i, _| w[i]).to_star();
        let x = pair.rewind(&to_star(a))?;
        let y = pair.rewind(&to_star(b))?;
        let w1 = x.try_sub(&y.mul_scalar_right(&qi))?;
        let w2 = x.try_add(&y.mul_scalar_right(&qi))?.mul_scalar_right(&qj);
        let w = if w1.frobenius_norm() >= w2.frobenius_norm() { w1 } else { w2 };
        let w = w.scale(1.0 / w.frobenius_norm());
        mus.push(*mu);
        cols.push(fix_phase(&basis.matmul(&w)?, Phase::ComplexOnly));
        let r = restrict_to_complement(&current, &w, 1e-8)?;
        current = r.matrix;
        basis = basis.matmul(&r.basis)?;
    }
    let u = if n == 0 { StarMatrix::zeros(QUATERNION, 0, 0) } else { StarMatrix::hstack(&cols)? };
    let d: Vec<Scalar> = mus.iter().map(|&mu| Scalar::new(QUATERNION, &[0.0, mu, 0.0, 0.0]).expect("four")).collect();
    EigenDecomp::assemble(m, u, StarMatrix::diagonal(QUATERNION, &d))
}

/// Dense result of the dual-number spectral theorem: `U = st + nst·ε`.
#[derive(Clone, Debug)]
pub(crate) struct DualEig {
    pub st: RMat,
    pub nst: RMat,
    pub vals: Vec<(f64, f64)>,
}

/// Spectral theorem for `A + Bε` with `A`, `B` real symmetric.
///
/// `A = QΛQᵀ`; across distinct clusters of Λ the skew perturbation
/// `K_ij = (QᵀBQ)_ij / (λ_j − λ_i)` removes the infinitesimal coupling, and
/// each remaining within-cluster block of `QᵀBQ` is diagonalised by a real
/// rotation `R_c`. Then `U = Q(I + Kε)R`.
pub(crate) fn dual_eig_dense(a: &RMat, b: &RMat, norm: f64) -> Result<DualEig> {
    let n = a.rows;
    let (lam, q) = jacobi_eigen(a)?;
    let groups = clusters(&lam, cluster_tol(norm))?;
    let bp = q.t().mul(&b.symmetric_part()).mul(&q);
    let mut cluster_of = vec![0; n];
    for (c, r) in groups.iter().enumerate() {
        for i in r.clone() {
            cluster_of[i] = c;
        }
    }
    let mut k = RMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if cluster_of[i] != cluster_of[j] {
                k.put(i, j, bp.at(i, j) / (lam[j] - lam[i]));
            }
        }
    }
    let mut r = RMat::zeros(n, n);
    for g in &groups {
        let blk = bp.sub_block(g.start, g.start, g.len(), g.len());
        let (_, rc) = jacobi_eigen(&blk)?;
        for i in 0..g.len() {
            for j in 0..g.len() {
                r.put(g.start + i, g.start + j, rc.at(i, j));
            }
        }
    }
    let mut st = q.mul(&r);
    let mut nst = q.mul(&k).mul(&r);
    // nst(UᵀHU) on the diagonal
    let ast = a.mul(&st);
    let quad = st.t().mul(&b.mul(&st)).add(&nst.t().mul(&ast)).add(&ast.t().mul(&nst));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| cluster_of[i].cmp(&cluster_of[j]).then(quad.at(j, j).total_cmp(&quad.at(i, i))));
    st = st.select_cols(&order);
    nst = nst.select_cols(&order);
    let vals = (0..n).map(|t| (lam[t], quad.at(order[t], order[t]))).collect();
    for j in 0..n {
        fix_column_sign(&mut st, j, Some(&mut nst));
    }
    Ok(DualEig { st, nst, vals })
}

pub(crate) fn dual_matrix(alg: Algebra, st: &RMat, nst: &RMat) -> StarMatrix {
    StarMatrix::from_fn(alg, st.rows, st.cols, |i, j| {
        Scalar::new(alg, &[st.at(i, j), nst.at(i, j)]).expect("two components")
    })
}

/// Spectral theorem over (𝔻, id): `H = U D Uᵀ` with `U` dual-orthogonal and
/// `D` dual diagonal, sorted by standard part then non-standard part, both
/// descending.
pub fn eig_dual_selfadjoint(h: &StarMatrix, tol: f64) -> Result<EigenDecomp> {
    expect_algebra(h, DUAL)?;
    require_self_adjoint(h, tol)?;
    let a = RMat::from_star_component(h, 0);
    let b = RMat::from_star_component(h, 1);
    let e = dual_eig_dense(&a, &b, h.frobenius_norm())?;
    let d: Vec<Scalar> = e.vals.iter().map(|&(s, t)| Scalar::new(DUAL, &[s, t]).expect("two")).collect();
    EigenDecomp::assemble(h, dual_matrix(DUAL, &e.st, &e.nst), StarMatrix::diagonal(DUAL, &d))
}
