//! Unitary diagonalisation of self-adjoint matrices over the δ-algebras:
//! the SVD algebra (and its `*₋₁` twin), the Takagi and skew-Takagi
//! algebras, and ℍ⊗𝔻.
//!
//! Over the SVD algebra the matrix is unpacked to a symmetric dual-number
//! matrix and eigenvectors are peeled off one at a time. The other three
//! algebras share one scheme: diagonalise the standard part, remove the
//! δ-coupling between distinct standard eigenvalues with a first-order
//! unitary correction, then bring each remaining δ-block into canonical form
//! with a base-field decomposition.

use std::cmp::Ordering;
use std::ops::Range;

use crate::dense::RMat;
use crate::error::{Error, Result};
use crate::instrument;
use crate::matrix::{inner, normalize, restrict_to_complement, StarMatrix};
use crate::scalars::{iso_cl101, Algebra, DualScalar, Scalar, COMPLEX, QUATERNION, QUAT_DUAL, SKEW_TAKAGI, SVD, SVD_NEG, TAKAGI};
use crate::spectral::{
    canon_quaternion_skew, cluster_tol, clusters, dual_eig_dense, dual_matrix, eig_complex_hermitian,
    eig_quaternion_hermitian, real_skew_planes, EigenDecomp,
};
use crate::unpack::{pair_skewtakagi, pair_svdalg, pair_takagi};

fn expect_square(m: &StarMatrix, alg: Algebra) -> Result<()> {
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

fn stack(alg: Algebra, n: usize, cols: &[StarMatrix]) -> Result<StarMatrix> {
    if cols.is_empty() {
        Ok(StarMatrix::zeros(alg, n, 0))
    } else {
        StarMatrix::hstack(cols)
    }
}

/// Removes from `v` its components along the orthonormal `basis` (twice).
fn orthogonalize(v: &StarMatrix, basis: &[StarMatrix]) -> Result<StarMatrix> {
    let mut v = v.clone();
    for _ in 0..2 {
        for w in basis {
            v = v.try_sub(&w.mul_scalar_right(&inner(w, &v)?))?;
        }
    }
    Ok(v)
}

fn conj(v: &StarMatrix) -> StarMatrix {
    v.map(|x| x.involute())
}

/// Multiplies a complex vector by ±1 so that its first significant entry
/// has positive real part (or positive imaginary part if that is zero).
fn fix_sign(v: StarMatrix) -> StarMatrix {
    let lead = (0..v.rows()).map(|i| v.get(i, 0)).find(|x| x.max_abs() > 1e-8);
    match lead {
        Some(x) => {
            let c = x.components();
            let key = if c[0].abs() > 1e-8 { c[0] } else { c[1] };
            if key < 0.0 {
                v.scale(-1.0)
            } else {
                v
            }
        }
        None => v,
    }
}

/// Multiplies a complex vector by a unit so that its first significant
/// entry is real and positive.
fn fix_unit_phase(v: StarMatrix) -> StarMatrix {
    match (0..v.rows()).map(|i| v.get(i, 0)).find(|x| x.max_abs() > 1e-8) {
        Some(x) => v.mul_scalar_right(&x.involute().scale(1.0 / x.norm_sqr().sqrt())),
        None => v,
    }
}

/// Real matrix from the non-standard component of an unpacked `Sδ`.
fn unpacked_delta(alg: Algebra, s: &StarMatrix) -> Result<RMat> {
    let pair = match alg {
        a if a == TAKAGI => pair_takagi(),
        _ => pair_skewtakagi(),
    };
    let n = s.rows();
    let m = StarMatrix::from_parts(alg, &StarMatrix::zeros(COMPLEX, n, n), s)?;
    Ok(RMat::from_star_component(&pair.unpack(&m)?, 1))
}

fn real_column(x: &[f64], alg: Algebra) -> StarMatrix {
    StarMatrix::from_fn(alg, x.len(), 1, |i, _| {
        let mut c = vec![0.0; alg.component_count()];
        c[0] = x[i];
        Scalar::new(alg, &c).expect("component count")
    })
}

/// Takagi factorisation `S = Q diag(d) Qᵀ` of a complex symmetric matrix,
/// `Q` unitary and `d` descending non-negative, read off one real
/// decomposition of the unpacked `Sδ`.
pub(crate) fn takagi_by_unpack(s: &StarMatrix) -> Result<(StarMatrix, Vec<f64>)> {
    let n = s.rows();
    let pair = pair_takagi();
    let real = unpacked_delta(TAKAGI, s)?;
    let (_, vecs) = crate::dense::jacobi_eigen(&real)?;
    let ztol = cluster_tol(s.frobenius_norm());
    let candidates: Vec<StarMatrix> = (0..2 * n)
        .map(|t| Ok(pair.rewind(&real_column(&vecs.col(t), crate::scalars::DUAL))?.std_part()))
        .collect::<Result<_>>()?;
    let value = |v: &StarMatrix| -> Result<f64> { Ok(inner(v, &s.matmul(&conj(v))?)?.re()) };
    let mut scored: Vec<(f64, &StarMatrix)> =
        candidates.iter().map(|v| Ok((value(v)?, v))).collect::<Result<_>>()?;
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut accepted: Vec<StarMatrix> = Vec::with_capacity(n);
    let mut ds = Vec::with_capacity(n);
    for pass_positive in [true, false] {
        for (d, v) in &scored {
            if accepted.len() == n {
                break;
            }
            if pass_positive != (*d > ztol) {
                continue;
            }
            let w = orthogonalize(v, &accepted)?;
            let nw = w.frobenius_norm();
            if nw > 0.5 {
                let w = fix_sign(w.scale(1.0 / nw));
                ds.push(value(&w)?.max(0.0));
                accepted.push(w);
            }
        }
    }
    if accepted.len() != n {
        return Err(Error::Numerical(format!("Takagi factorisation found {} of {n} vectors", accepted.len())));
    }
    Ok((stack(COMPLEX, n, &accepted)?, ds))
}

/// Canonical form `S = Q D Qᵀ` of a complex skew-symmetric matrix with
/// `D = ⊕ [[0, −μ], [μ, 0]] ⊕ 0`, μ descending. Returns `Q` and the μ's.
pub(crate) fn skew_takagi_by_unpack(s: &StarMatrix) -> Result<(StarMatrix, Vec<f64>)> {
    let n = s.rows();
    let pair = pair_skewtakagi();
    let ztol = cluster_tol(s.frobenius_norm());
    let sp = real_skew_planes(&unpacked_delta(SKEW_TAKAGI, s)?, ztol)?;
    let lift = |x: &[f64]| -> Result<StarMatrix> {
        Ok(pair.rewind(&real_column(x, crate::scalars::DUAL_CONJ))?.std_part())
    };
    let mut accepted: Vec<StarMatrix> = Vec::with_capacity(n);
    let mut cols: Vec<StarMatrix> = Vec::with_capacity(n);
    let mut mus = Vec::new();
    for (u, _, _) in &sp.planes {
        if accepted.len() + 2 > n {
            break;
        }
        let x = orthogonalize(&lift(u)?, &accepted)?;
        let nx = x.frobenius_norm();
        if nx <= 0.5 {
            continue;
        }
        let x = fix_unit_phase(x.scale(1.0 / nx));
        let sx = s.matmul(&conj(&x))?;
        let mu = sx.frobenius_norm();
        if mu <= ztol {
            continue;
        }
        let y = sx.scale(1.0 / mu);
        accepted.push(x.clone());
        accepted.push(y.clone());
        cols.push(x);
        cols.push(y);
        mus.push(mu);
    }
    let mut kernel: Vec<StarMatrix> = Vec::new();
    let extra = (0..sp.kernel.cols).map(|j| sp.kernel.col(j)).chain(sp.planes.iter().flat_map(|(u, v, _)| [u.clone(), v.clone()]));
    for x in extra {
        if accepted.len() == n {
            break;
        }
        let w = orthogonalize(&lift(&x)?, &accepted)?;
        let nw = w.frobenius_norm();
        if nw > 0.5 {
            let w = fix_unit_phase(w.scale(1.0 / nw));
            accepted.push(w.clone());
            kernel.push(w);
        }
    }
    if accepted.len() != n {
        return Err(Error::Numerical(format!("skew-Takagi form found {} of {n} vectors", accepted.len())));
    }
    cols.extend(kernel);
    Ok((stack(COMPLEX, n, &cols)?, mus))
}

/// First-order unitary correction that decouples distinct standard
/// eigenvalues of `Λ + Bδ` (Λ real diagonal, descending).
#[derive(Clone, Debug)]
pub struct BlockPerturbation {
    /// Index ranges of equal standard eigenvalues.
    pub clusters: Vec<Range<usize>>,
    /// `I + Kδ` with `K_ij = B_ij / (λ_i − λ_j)` across clusters.
    pub p: StarMatrix,
}

impl BlockPerturbation {
    /// `m` must have a real diagonal standard part sorted descending.
    pub fn new(m: &StarMatrix, tol: f64) -> Result<BlockPerturbation> {
        if !m.algebra().has_delta() {
            return Err(Error::Unsupported(format!("{} has no δ", m.algebra())));
        }
        if !m.is_square() {
            return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
        }
        let n = m.rows();
        let lam: Vec<f64> = (0..n).map(|i| m.get(i, i).re()).collect();
        let groups = clusters(&lam, tol)?;
        let mut owner = vec![0; n];
        for (c, r) in groups.iter().enumerate() {
            r.clone().for_each(|i| owner[i] = c);
        }
        let b = m.delta_part();
        let base = b.algebra();
        let k = StarMatrix::from_fn(base, n, n, |i, j| {
            if owner[i] == owner[j] {
                Scalar::zero(base)
            } else {
                b.get(i, j).scale(1.0 / (lam[i] - lam[j]))
            }
        });
        let p = StarMatrix::from_parts(m.algebra(), &StarMatrix::identity(base, n), &k)?;
        Ok(BlockPerturbation { clusters: groups, p })
    }

    /// `‖P P* − I‖_F`.
    pub fn unitarity_defect(&self) -> f64 {
        self.p.orthonormality_defect()
    }
}

/// One diagonal block of a canonical form.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum CanonicalBlock {
    /// A 1×1 block `λ + λ′·uδ`, where `u` is 1 over the Takagi algebra, `i`
    /// over ℍ⊗𝔻, and λ′ = 0 over the skew-Takagi algebra.
    Single { value: f64, coupling: f64 },
    /// The 2×2 block `[[λ, −λ′δ], [λ′δ, λ]]`.
    Pair { value: f64, coupling: f64 },
}

impl CanonicalBlock {
    pub fn size(&self) -> usize {
        match self {
            CanonicalBlock::Single { .. } => 1,
            CanonicalBlock::Pair { .. } => 2,
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            CanonicalBlock::Single { value, .. } | CanonicalBlock::Pair { value, .. } => value,
        }
    }

    pub fn coupling(&self) -> f64 {
        match *self {
            CanonicalBlock::Single { coupling, .. } | CanonicalBlock::Pair { coupling, .. } => coupling,
        }
    }
}

/// `H = U D U*` with `D` a direct sum of canonical blocks.
#[derive(Clone, Debug)]
pub struct BlockDecomp {
    pub u: StarMatrix,
    pub d: StarMatrix,
    pub blocks: Vec<CanonicalBlock>,
    pub residual: f64,
}

impl BlockDecomp {
    pub fn unitarity_defect(&self) -> f64 {
        self.u.orthonormality_defect()
    }

    pub fn to_eigen(&self) -> EigenDecomp {
        EigenDecomp { u: self.u.clone(), d: self.d.clone(), residual: self.residual }
    }
}

/// Per-cluster normal form of the δ-block: a unitary `W_c` over the base
/// algebra and the blocks it produces.
type BlockSolver<'a> = dyn FnMut(&StarMatrix, f64) -> Result<(StarMatrix, Vec<CanonicalBlock>)> + 'a;

fn perturbative(h: &StarMatrix, u0: &StarMatrix, solve: &mut BlockSolver<'_>) -> Result<BlockDecomp> {
    let alg = h.algebra();
    let n = h.rows();
    let ue = StarMatrix::embed(alg, u0)?;
    let m = ue.adjoint().matmul(&h.matmul(&ue)?)?;
    let bp = BlockPerturbation::new(&m, cluster_tol(h.frobenius_norm()))?;
    let delta = m.delta_part();
    let base = delta.algebra();
    let mut w = StarMatrix::zeros(base, n, n);
    let mut blocks = Vec::with_capacity(n);
    for r in &bp.clusters {
        let lam = r.clone().map(|i| m.get(i, i).re()).sum::<f64>() / r.len() as f64;
        let (wc, mut bc) = solve(&delta.submatrix(r.start, r.start, r.len(), r.len()), lam)?;
        w.set_block(r.start, r.start, &wc);
        blocks.append(&mut bc);
    }
    let u = ue.matmul(&bp.p.adjoint())?.matmul(&StarMatrix::embed(alg, &w)?)?;
    let d = block_matrix(alg, &blocks);
    let residual = u.matmul(&d)?.matmul(&u.adjoint())?.try_sub(h)?.frobenius_norm();
    Ok(BlockDecomp { u, d, blocks, residual })
}

fn block_matrix(alg: Algebra, blocks: &[CanonicalBlock]) -> StarMatrix {
    let n: usize = blocks.iter().map(|b| b.size()).sum();
    let mut d = StarMatrix::zeros(alg, n, n);
    let mk = |c: &[f64]| {
        let mut v = vec![0.0; alg.component_count()];
        v[..c.len()].copy_from_slice(c);
        Scalar::new(alg, &v).expect("component count")
    };
    let half = alg.component_count() / 2;
    let mut at = 0;
    for b in blocks {
        match *b {
            CanonicalBlock::Single { value, coupling } => {
                let mut c = vec![0.0; alg.component_count()];
                c[0] = value;
                // λ′δ over the Takagi algebra, λ′iδ over ℍ⊗𝔻
                c[if alg == QUAT_DUAL { half + 1 } else { half }] = coupling;
                d.set(at, at, mk(&c));
                at += 1;
            }
            CanonicalBlock::Pair { value, coupling } => {
                let mut off = vec![0.0; alg.component_count()];
                off[half] = coupling;
                d.set(at, at, mk(&[value]));
                d.set(at + 1, at + 1, mk(&[value]));
                d.set(at + 1, at, mk(&off));
                off[half] = -coupling;
                d.set(at, at + 1, mk(&off));
                at += 2;
            }
        }
    }
    d
}

fn takagi_alg_impl(h: &StarMatrix, tol: f64) -> Result<BlockDecomp> {
    expect_square(h, TAKAGI)?;
    require_self_adjoint(h, tol)?;
    let base = eig_complex_hermitian(&h.std_part(), tol)?;
    perturbative(h, &base.u, &mut |b, lam| {
        let (q, ds) = takagi_by_unpack(b)?;
        Ok((q, ds.into_iter().map(|d| CanonicalBlock::Single { value: lam, coupling: d }).collect()))
    })
}

/// Self-adjoint matrices over the Takagi algebra: `D = diag(λ_k + λ′_k δ)`
/// with λ′ ≥ 0, sorted by λ then λ′, both descending.
pub fn spectral_takagi_alg(h: &StarMatrix, tol: f64) -> Result<BlockDecomp> {
    instrument::record("spectral_takagi_alg");
    takagi_alg_impl(h, tol)
}

fn skewtakagi_alg_impl(h: &StarMatrix, tol: f64) -> Result<BlockDecomp> {
    expect_square(h, SKEW_TAKAGI)?;
    require_self_adjoint(h, tol)?;
    let base = eig_complex_hermitian(&h.std_part(), tol)?;
    perturbative(h, &base.u, &mut |b, lam| {
        let (q, mus) = skew_takagi_by_unpack(b)?;
        let mut blocks: Vec<CanonicalBlock> =
            mus.iter().map(|&mu| CanonicalBlock::Pair { value: lam, coupling: mu }).collect();
        let used = 2 * mus.len();
        blocks.extend((used..b.rows()).map(|_| CanonicalBlock::Single { value: lam, coupling: 0.0 }));
        Ok((q, blocks))
    })
}

/// Self-adjoint matrices over the skew-Takagi algebra: `D` is a direct sum
/// of `[[λ, −λ′δ], [λ′δ, λ]]` (λ′ > 0) and `(λ)`, sorted by λ then λ′.
pub fn spectral_skewtakagi_alg(h: &StarMatrix, tol: f64) -> Result<BlockDecomp> {
    instrument::record("spectral_skewtakagi_alg");
    skewtakagi_alg_impl(h, tol)
}

fn quatdual_impl(h: &StarMatrix, tol: f64) -> Result<BlockDecomp> {
    expect_square(h, QUAT_DUAL)?;
    require_self_adjoint(h, tol)?;
    let base = eig_quaternion_hermitian(&h.std_part(), tol)?;
    perturbative(h, &base.u, &mut |b, lam| {
        if b.rows() == 0 {
            return Ok((StarMatrix::zeros(QUATERNION, 0, 0), Vec::new()));
        }
        // the block is skew-Hermitian up to rounding of the conjugation
        let b = b.try_sub(&b.adjoint())?.scale(0.5);
        let e = canon_quaternion_skew(&b, 1e-6)?;
        let blocks = e.diagonal().iter().map(|x| CanonicalBlock::Single { value: lam, coupling: x.components()[1] }).collect();
        Ok((e.u, blocks))
    })
}

/// Self-adjoint matrices over ℍ⊗𝔻: `D = diag(λ_k + λ′_k iδ)`, λ′ ≥ 0,
/// sorted by λ then λ′, both descending.
pub fn spectral_quatdual(h: &StarMatrix, tol: f64) -> Result<BlockDecomp> {
    instrument::record("spectral_quatdual");
    quatdual_impl(h, tol)
}

/// An eigenvalue over the SVD algebra.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum SvdAlgEigenvalue {
    /// `(s, s) + (t, t)δ`, identified with the dual number `s + tε`.
    Dual { st: f64, nst: f64 },
    /// `(left, right)`.
    Pair { left: f64, right: f64 },
}

impl SvdAlgEigenvalue {
    pub fn to_scalar(&self) -> Scalar {
        let c = match *self {
            SvdAlgEigenvalue::Dual { st, nst } => [st, st, nst, nst],
            SvdAlgEigenvalue::Pair { left, right } => [left, right, 0.0, 0.0],
        };
        Scalar::new(SVD, &c).expect("four components")
    }
}

#[derive(Clone, Debug)]
pub struct SvdAlgDecomp {
    pub u: StarMatrix,
    pub d: StarMatrix,
    pub eigenvalues: Vec<SvdAlgEigenvalue>,
    pub residual: f64,
}

impl SvdAlgDecomp {
    pub fn unitarity_defect(&self) -> f64 {
        self.u.orthonormality_defect()
    }

    pub fn to_eigen(&self) -> EigenDecomp {
        EigenDecomp { u: self.u.clone(), d: self.d.clone(), residual: self.residual }
    }
}

/// Sums one-sided eigenvectors: `w_L = w_L·(1,0)` with `H w_L = w_L λ_L`
/// on the left, `w_R = w_R·(0,1)` likewise on the right. For `λ_L ≠ λ_R`
/// the sum is a unit eigenvector with eigenvalue `(λ_L, λ_R)`.
pub fn promote_semi_eigenpair(w_l: &StarMatrix, w_r: &StarMatrix, lam_l: f64, lam_r: f64, tol: f64) -> Result<StarMatrix> {
    if (lam_l - lam_r).abs() <= tol {
        return Err(Error::precondition("one-sided eigenvalues differ", (lam_l - lam_r).abs(), tol));
    }
    w_l.try_add(w_r)
}

/// `v (v*v)^{-1/2}` for an eigenvector whose eigenvalue has non-zero
/// non-standard part.
pub fn normalize_dual_eigenvector(v: &StarMatrix, nst: f64, tol: f64) -> Result<StarMatrix> {
    if nst.abs() <= tol {
        return Err(Error::precondition("eigenvalue has a non-zero δ-part", nst.abs(), tol));
    }
    normalize(v)
}

/// Finds a unit eigenvector whose eigenvalue is a real pair, from the
/// unpacked dense decomposition of `h` (all non-standard parts zero).
/// Falls back to `e₁` when `h` is a real multiple of the identity.
pub fn real_eigencase(h: &StarMatrix, tol: f64) -> Result<(StarMatrix, SvdAlgEigenvalue)> {
    let un = pair_svdalg().unpack(h)?;
    let e = dual_eig_dense(&RMat::from_star_component(&un, 0), &RMat::from_star_component(&un, 1), h.frobenius_norm())?;
    real_case_from(h, &e, tol)
}

fn real_case_from(h: &StarMatrix, e: &crate::spectral::DualEig, tol: f64) -> Result<(StarMatrix, SvdAlgEigenvalue)> {
    let pair = pair_svdalg();
    let m = h.rows();
    let half = |j: usize, top: bool| -> f64 {
        let r = if top { 0..m } else { m..2 * m };
        r.map(|i| e.st.at(i, j).powi(2)).sum::<f64>().sqrt()
    };
    let dual_col = |j: usize| dual_matrix(crate::scalars::DUAL, &e.st.select_cols(&[j]), &e.nst.select_cols(&[j]));
    let proj = |v: &StarMatrix, left: bool| -> Result<StarMatrix> {
        let unit = Scalar::new(SVD, if left { &[1.0, 0.0, 0.0, 0.0] } else { &[0.0, 1.0, 0.0, 0.0] })?;
        Ok(v.mul_scalar_right(&unit))
    };
    for thr in [0.5, 1e-6] {
        for i in 0..2 * m {
            let a = half(i, true);
            if a <= thr {
                continue;
            }
            let li = e.vals[i].0;
            for j in 0..2 * m {
                let b = half(j, false);
                let lj = e.vals[j].0;
                if b <= thr || (li - lj).abs() <= tol {
                    continue;
                }
                let wl = proj(&pair.rewind(&dual_col(i))?, true)?.scale(1.0 / a);
                let wr = proj(&pair.rewind(&dual_col(j))?, false)?.scale(1.0 / b);
                let w = promote_semi_eigenpair(&wl, &wr, li, lj, tol)?;
                return Ok((w, SvdAlgEigenvalue::Pair { left: li, right: lj }));
            }
        }
    }
    // no pair of distinct one-sided eigenvalues: H must be λI
    let lam = if m == 0 { 0.0 } else { e.vals.iter().map(|v| v.0).sum::<f64>() / (2 * m) as f64 };
    let dev = h.try_sub(&StarMatrix::identity(SVD, m).scale(lam))?.frobenius_norm();
    let bound = 1e-6 * (1.0 + h.frobenius_norm());
    if dev > bound {
        return Err(Error::Numerical(format!("no real eigenpair and H is not scalar (deviation {dev:e})")));
    }
    let mut w = StarMatrix::zeros(SVD, m, 1);
    w.set(0, 0, Scalar::new(SVD, &[1.0, 1.0, 0.0, 0.0])?);
    Ok((w, SvdAlgEigenvalue::Pair { left: lam, right: lam }))
}

fn svdalg_impl(h: &StarMatrix, tol: f64) -> Result<SvdAlgDecomp> {
    expect_square(h, SVD)?;
    require_self_adjoint(h, tol)?;
    let n = h.rows();
    let pair = pair_svdalg();
    let norm = h.frobenius_norm();
    let tau = cluster_tol(norm);
    let mut current = h.clone();
    let mut basis = StarMatrix::identity(SVD, n);
    let mut cols = Vec::with_capacity(n);
    let mut evs = Vec::with_capacity(n);
    while current.rows() > 0 {
        let un = pair.unpack(&current)?;
        let e = dual_eig_dense(&RMat::from_star_component(&un, 0), &RMat::from_star_component(&un, 1), norm)?;
        let (w, ev) = match e.vals.iter().position(|v| v.1 > tau) {
            Some(t) => {
                let u = dual_matrix(crate::scalars::DUAL, &e.st.select_cols(&[t]), &e.nst.select_cols(&[t]));
                let w = normalize_dual_eigenvector(&pair.rewind(&u)?, e.vals[t].1, tau)?;
                (w, SvdAlgEigenvalue::Dual { st: e.vals[t].0, nst: e.vals[t].1 })
            }
            None => real_case_from(&current, &e, tau)?,
        };
        cols.push(basis.matmul(&w)?);
        evs.push(ev);
        let r = restrict_to_complement(&current, &w, 1e-6)?;
        current = r.matrix;
        basis = basis.matmul(&r.basis)?;
    }
    let u = stack(SVD, n, &cols)?;
    let d = StarMatrix::diagonal(SVD, &evs.iter().map(|e| e.to_scalar()).collect::<Vec<_>>());
    let residual = u.matmul(&d)?.matmul(&u.adjoint())?.try_sub(h)?.frobenius_norm();
    Ok(SvdAlgDecomp { u, d, eigenvalues: evs, residual })
}

/// Self-adjoint matrices over the SVD algebra: `H = U D U*` with every
/// diagonal entry of `D` a dual number or a real pair.
pub fn spectral_svdalg(h: &StarMatrix, tol: f64) -> Result<SvdAlgDecomp> {
    instrument::record("spectral_svdalg");
    svdalg_impl(h, tol)
}

/// The same over the `*₋₁` involution, transported through [`iso_cl101`].
pub fn spectral_cl101_neg(h: &StarMatrix, tol: f64) -> Result<SvdAlgDecomp> {
    instrument::record("spectral_cl101_neg");
    expect_square(h, SVD_NEG)?;
    let iso = |m: &StarMatrix| -> Result<StarMatrix> {
        let e = m.entries().iter().map(iso_cl101).collect::<Result<Vec<_>>>()?;
        StarMatrix::from_entries(if m.algebra() == SVD { SVD_NEG } else { SVD }, m.rows(), m.cols(), e)
    };
    let inner = svdalg_impl(&iso(h)?, tol)?;
    let u = iso(&inner.u)?;
    let d = iso(&inner.d)?;
    let residual = u.matmul(&d)?.matmul(&u.adjoint())?.try_sub(h)?.frobenius_norm();
    Ok(SvdAlgDecomp { u, d, eigenvalues: inner.eigenvalues, residual })
}

/// Canonical spectrum `(C, L, R)` over the SVD algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct SvdAlgSpectrum {
    /// Dual eigenvalues, non-standard part positive, descending.
    pub c: Vec<DualScalar>,
    /// Left components of the pair eigenvalues, descending.
    pub l: Vec<f64>,
    /// Right components, descending.
    pub r: Vec<f64>,
}

impl SvdAlgSpectrum {
    pub fn from_eigenvalues(evs: &[SvdAlgEigenvalue]) -> SvdAlgSpectrum {
        let mut c = Vec::new();
        let mut l = Vec::new();
        let mut r = Vec::new();
        for ev in evs {
            match *ev {
                SvdAlgEigenvalue::Dual { st, nst } if nst != 0.0 => c.push(DualScalar::new(st, nst.abs())),
                SvdAlgEigenvalue::Dual { st, .. } => {
                    l.push(st);
                    r.push(st);
                }
                SvdAlgEigenvalue::Pair { left, right } => {
                    l.push(left);
                    r.push(right);
                }
            }
        }
        let desc = |a: &f64, b: &f64| b.total_cmp(a);
        c.sort_by(|a, b| b.st.total_cmp(&a.st).then(b.nst.total_cmp(&a.nst)));
        l.sort_by(desc);
        r.sort_by(desc);
        SvdAlgSpectrum { c, l, r }
    }

    /// Multiset union.
    pub fn add(&self, o: &SvdAlgSpectrum) -> SvdAlgSpectrum {
        let mut evs: Vec<SvdAlgEigenvalue> = Vec::new();
        for s in [self, o] {
            evs.extend(s.c.iter().map(|x| SvdAlgEigenvalue::Dual { st: x.st, nst: x.nst }));
            evs.extend(s.l.iter().zip(&s.r).map(|(&left, &right)| SvdAlgEigenvalue::Pair { left, right }));
        }
        SvdAlgSpectrum::from_eigenvalues(&evs)
    }

    pub fn len(&self) -> usize {
        self.c.len() + self.l.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn spectrum_svdalg(h: &StarMatrix, tol: f64) -> Result<SvdAlgSpectrum> {
    Ok(SvdAlgSpectrum::from_eigenvalues(&spectral_svdalg(h, tol)?.eigenvalues))
}

/// Orders blocks by value then coupling, both descending.
pub fn block_order(a: &CanonicalBlock, b: &CanonicalBlock) -> Ordering {
    b.value().total_cmp(&a.value()).then(b.coupling().total_cmp(&a.coupling()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::DUAL;

    fn svd_diag(entries: &[[f64; 4]]) -> StarMatrix {
        let d: Vec<Scalar> = entries.iter().map(|c| Scalar::new(SVD, c).unwrap()).collect();
        StarMatrix::diagonal(SVD, &d)
    }

    fn mm_delta(m: &[f64], n: usize) -> StarMatrix {
        // (M, Mᵀ)δ
        StarMatrix::from_fn(SVD, n, n, |i, j| Scalar::new(SVD, &[0.0, 0.0, m[i * n + j], m[j * n + i]]).unwrap())
    }

    #[test]
    fn pair_eigenvalue_one_by_one() {
        let h = svd_diag(&[[2.0, 5.0, 0.0, 0.0]]);
        let e = spectral_svdalg(&h, 1e-10).unwrap();
        assert_eq!(e.eigenvalues, vec![SvdAlgEigenvalue::Pair { left: 2.0, right: 5.0 }]);
        assert!(e.residual < 1e-14);
    }

    #[test]
    fn identity_gives_identity() {
        let h = StarMatrix::identity(SVD, 3);
        let e = spectral_svdalg(&h, 1e-10).unwrap();
        assert!(e.d.max_diff(&h) < 1e-14);
        assert!(e.u.max_diff(&h) < 1e-14);
    }

    #[test]
    fn singular_values_as_dual_eigenvalues() {
        let h = mm_delta(&[3.0, 0.0, 0.0, 2.0], 2);
        let s = spectrum_svdalg(&h, 1e-10).unwrap();
        assert!(s.l.is_empty() && s.r.is_empty());
        assert!((s.c[0].nst - 3.0).abs() < 1e-12 && (s.c[1].nst - 2.0).abs() < 1e-12);
        let h = mm_delta(&[0.0, 1.0, 0.0, 0.0], 2);
        let e = spectral_svdalg(&h, 1e-10).unwrap();
        assert!(e.residual < 1e-12 && e.unitarity_defect() < 1e-12, "{e:?}");
        let s = SvdAlgSpectrum::from_eigenvalues(&e.eigenvalues);
        assert_eq!(s.c.len(), 1);
        assert_eq!(s.l, vec![0.0]);
    }

    #[test]
    fn zero_matrix_spectrum() {
        let s = spectrum_svdalg(&StarMatrix::zeros(SVD, 3, 3), 1e-10).unwrap();
        assert!(s.c.is_empty() && s.l == vec![0.0; 3] && s.r == vec![0.0; 3]);
    }

    #[test]
    fn perturbation_is_unitary() {
        let m = StarMatrix::from_components(DUAL, 2, 2, &[2.0, 0.3, 0.0, 1.5, 0.0, 1.5, 1.0, -0.2]).unwrap();
        let bp = BlockPerturbation::new(&m, 1e-8).unwrap();
        assert_eq!(bp.clusters.len(), 2);
        assert!(bp.unitarity_defect() < 1e-15);
    }

    #[test]
    fn skew_takagi_single_block() {
        let s = StarMatrix::from_components(COMPLEX, 2, 2, &[0.0, 0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0]).unwrap();
        let h = StarMatrix::from_parts(SKEW_TAKAGI, &StarMatrix::zeros(COMPLEX, 2, 2), &s).unwrap();
        let e = spectral_skewtakagi_alg(&h, 1e-10).unwrap();
        assert_eq!(e.blocks.len(), 1);
        assert!((e.blocks[0].coupling() - 1.0).abs() < 1e-13);
        assert!(e.residual < 1e-13 && e.unitarity_defect() < 1e-13);
    }

    #[test]
    fn takagi_single_cluster() {
        let s = StarMatrix::from_components(COMPLEX, 2, 2, &[1.0, 0.5, 0.0, 2.0, 0.0, 2.0, -1.0, 0.0]).unwrap();
        let h = StarMatrix::from_parts(TAKAGI, &StarMatrix::identity(COMPLEX, 2), &s).unwrap();
        let e = spectral_takagi_alg(&h, 1e-10).unwrap();
        assert!(e.residual < 1e-12 && e.unitarity_defect() < 1e-12, "{e:?}");
    }

    #[test]
    fn quatdual_j() {
        let h = StarMatrix::from_components(QUAT_DUAL, 1, 1, &[2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0]).unwrap();
        let e = spectral_quatdual(&h, 1e-10).unwrap();
        assert!((e.blocks[0].coupling() - 1.0).abs() < 1e-13);
        assert!((e.blocks[0].value() - 2.0).abs() < 1e-13);
        assert!(e.residual < 1e-13);
    }

    #[test]
    fn instrumentation_counts_calls() {
        let h = svd_diag(&[[2.0, 5.0, 0.0, 0.0]]);
        let (_, calls) = instrument::capture(|| spectral_cl101_neg(&iso_svd(&h), 1e-10).unwrap());
        assert_eq!(calls, vec!["spectral_cl101_neg"]);
    }

    fn iso_svd(m: &StarMatrix) -> StarMatrix {
        StarMatrix::from_entries(SVD_NEG, m.rows(), m.cols(), m.entries().iter().map(|x| iso_cl101(x).unwrap()).collect())
            .unwrap()
    }
}
