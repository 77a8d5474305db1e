//! Dense matrices over any [`Algebra`].
//!
//! Column vectors are `n × 1` matrices, and scalars act on vectors from the
//! right (`v·λ`), which matters over ℍ and the δ-algebras.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::{Algebra, Base, Scalar, REAL, SPLIT_SWAP, SVD};

/// Relative tolerance used when a predicate is called without an explicit one.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Clone, PartialEq)]
pub struct StarMatrix {
    alg: Algebra,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for StarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "StarMatrix<{}> {}x{}", self.alg, self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<_> = (0..self.cols).map(|j| self.get(i, j).components().to_vec()).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl StarMatrix {
    pub fn zeros(alg: Algebra, rows: usize, cols: usize) -> StarMatrix {
        StarMatrix { alg, rows, cols, data: vec![Scalar::zero(alg); rows * cols] }
    }

    pub fn identity(alg: Algebra, n: usize) -> StarMatrix {
        let mut m = StarMatrix::zeros(alg, n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one(alg);
        }
        m
    }

    pub fn from_fn(alg: Algebra, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> StarMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                assert!(s.algebra() == alg, "entry over {} in a matrix over {alg}", s.algebra());
                data.push(s);
            }
        }
        StarMatrix { alg, rows, cols, data }
    }

    /// Row-major scalars.
    pub fn from_entries(alg: Algebra, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<StarMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if let Some(bad) = entries.iter().find(|s| s.algebra() != alg) {
            return Err(Error::AlgebraMismatch { left: bad.algebra(), right: alg });
        }
        Ok(StarMatrix { alg, rows, cols, data: entries })
    }

    /// Row-major entries with each entry's components stored contiguously.
    pub fn from_components(alg: Algebra, rows: usize, cols: usize, comps: &[f64]) -> Result<StarMatrix> {
        let k = alg.component_count();
        if comps.len() != rows * cols * k {
            return Err(Error::ComponentCount { algebra: alg, expected: rows * cols * k, got: comps.len() });
        }
        let data = comps.chunks(k).map(|c| Scalar::new(alg, c)).collect::<Result<Vec<_>>>()?;
        Ok(StarMatrix { alg, rows, cols, data })
    }

    /// Real row-major values embedded as `x·1`.
    pub fn from_real(alg: Algebra, rows: usize, cols: usize, values: &[f64]) -> Result<StarMatrix> {
        if values.len() != rows * cols {
            return Err(Error::Dimension(format!("{} values for a {rows}x{cols} matrix", values.len())));
        }
        Ok(StarMatrix { alg, rows, cols, data: values.iter().map(|&x| Scalar::from_real(alg, x)).collect() })
    }

    pub fn diagonal(alg: Algebra, diag: &[Scalar]) -> StarMatrix {
        let n = diag.len();
        StarMatrix::from_fn(alg, n, n, |i, j| if i == j { diag[i] } else { Scalar::zero(alg) })
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        assert!(x.algebra() == self.alg, "entry over {} in a matrix over {}", x.algebra(), self.alg);
        self.data[i * self.cols + j] = x;
    }

    /// All components, row-major.
    pub fn components(&self) -> Vec<f64> {
        self.data.iter().flat_map(|s| s.components().iter().copied()).collect()
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    fn same_algebra(&self, o: &StarMatrix) -> Result<()> {
        if self.alg == o.alg {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch { left: self.alg, right: o.alg })
        }
    }

    pub fn matmul(&self, o: &StarMatrix) -> Result<StarMatrix> {
        self.same_algebra(o)?;
        if self.cols != o.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = StarMatrix::zeros(self.alg, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = out.data[idx] + a * o.data[k * o.cols + j];
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, o: &StarMatrix, f: impl Fn(Scalar, Scalar) -> Scalar) -> Result<StarMatrix> {
        self.same_algebra(o)?;
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::Dimension(format!(
                "{}x{} and {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f(*a, *b)).collect();
        Ok(StarMatrix { alg: self.alg, rows: self.rows, cols: self.cols, data })
    }

    pub fn try_add(&self, o: &StarMatrix) -> Result<StarMatrix> {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn try_sub(&self, o: &StarMatrix) -> Result<StarMatrix> {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> StarMatrix {
        StarMatrix::from_fn(self.alg, self.rows, self.cols, |i, j| f(&self.get(i, j)))
    }

    pub fn scale(&self, k: f64) -> StarMatrix {
        self.map(|s| s.scale(k))
    }

    /// `A·λ`, entrywise right multiplication.
    pub fn mul_scalar_right(&self, x: &Scalar) -> StarMatrix {
        self.map(|s| *s * *x)
    }

    /// `λ·A`.
    pub fn mul_scalar_left(&self, x: &Scalar) -> StarMatrix {
        self.map(|s| *x * *s)
    }

    pub fn adjoint(&self) -> StarMatrix {
        StarMatrix::from_fn(self.alg, self.cols, self.rows, |i, j| self.get(j, i).involute())
    }

    /// Transpose without involution.
    pub fn transpose(&self) -> StarMatrix {
        StarMatrix::from_fn(self.alg, self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Square root of the sum of all squared components.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|s| s.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest componentwise difference; infinite when shapes or algebras differ.
    pub fn max_diff(&self, o: &StarMatrix) -> f64 {
        if self.alg != o.alg || self.rows != o.rows || self.cols != o.cols {
            return f64::INFINITY;
        }
        self.data.iter().zip(&o.data).fold(0.0, |m, (a, b)| m.max(a.max_diff(b)))
    }

    /// `‖A − A*‖_F`.
    pub fn self_adjoint_defect(&self) -> Result<f64> {
        self.require_square()?;
        Ok(self.try_sub(&self.adjoint())?.frobenius_norm())
    }

    /// `‖A − A*‖_F ≤ tol·(1 + ‖A‖_F)`.
    pub fn is_self_adjoint(&self, tol: f64) -> Result<bool> {
        Ok(self.self_adjoint_defect()? <= tol * (1.0 + self.frobenius_norm()))
    }

    /// `‖A·A* − I‖_F`.
    pub fn unitary_defect(&self) -> Result<f64> {
        self.require_square()?;
        let p = self.matmul(&self.adjoint())?;
        Ok(p.try_sub(&StarMatrix::identity(self.alg, self.rows))?.frobenius_norm())
    }

    pub fn is_unitary(&self, tol: f64) -> Result<bool> {
        Ok(self.unitary_defect()? <= tol)
    }

    /// `‖A*·A − I‖_F` for a tall matrix of columns.
    pub fn orthonormality_defect(&self) -> f64 {
        let g = self.adjoint().matmul(self).expect("shapes agree");
        g.try_sub(&StarMatrix::identity(self.alg, self.cols)).expect("shapes agree").frobenius_norm()
    }

    pub fn direct_sum(&self, o: &StarMatrix) -> Result<StarMatrix> {
        direct_sum(self, o)
    }

    pub fn submatrix(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> StarMatrix {
        assert!(r0 + nr <= self.rows && c0 + nc <= self.cols, "submatrix out of range");
        StarMatrix::from_fn(self.alg, nr, nc, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &StarMatrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "block out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j));
            }
        }
    }

    pub fn column(&self, j: usize) -> StarMatrix {
        self.submatrix(0, j, self.rows, 1)
    }

    pub fn select_columns(&self, idx: &[usize]) -> StarMatrix {
        StarMatrix::from_fn(self.alg, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    /// Side-by-side concatenation.
    pub fn hstack(parts: &[StarMatrix]) -> Result<StarMatrix> {
        let first = parts.first().ok_or_else(|| Error::Dimension("nothing to stack".into()))?;
        let mut cols = 0;
        for p in parts {
            first.same_algebra(p)?;
            if p.rows != first.rows {
                return Err(Error::Dimension(format!("row counts {} and {}", first.rows, p.rows)));
            }
            cols += p.cols;
        }
        let mut out = StarMatrix::zeros(first.alg, first.rows, cols);
        let mut c = 0;
        for p in parts {
            out.set_block(0, c, p);
            c += p.cols;
        }
        Ok(out)
    }

    /// Entrywise standard parts, as a matrix over the base algebra.
    pub fn std_part(&self) -> StarMatrix {
        let b = self.alg.base_algebra();
        StarMatrix::from_fn(b, self.rows, self.cols, |i, j| self.get(i, j).std_part())
    }

    /// Entrywise δ-coefficients, as a matrix over the base algebra.
    pub fn delta_part(&self) -> StarMatrix {
        let b = self.alg.base_algebra();
        StarMatrix::from_fn(b, self.rows, self.cols, |i, j| self.get(i, j).delta_part())
    }

    /// `W + Zδ` from two base-algebra matrices.
    pub fn from_parts(alg: Algebra, w: &StarMatrix, z: &StarMatrix) -> Result<StarMatrix> {
        if w.rows != z.rows || w.cols != z.cols {
            return Err(Error::Dimension("standard and δ parts differ in shape".into()));
        }
        let data = w
            .data
            .iter()
            .zip(&z.data)
            .map(|(a, b)| Scalar::from_parts(alg, *a, *b))
            .collect::<Result<Vec<_>>>()?;
        Ok(StarMatrix { alg, rows: w.rows, cols: w.cols, data })
    }

    /// Embeds a matrix over the base algebra as `W + 0δ`.
    pub fn embed(alg: Algebra, w: &StarMatrix) -> Result<StarMatrix> {
        StarMatrix::from_parts(alg, w, &StarMatrix::zeros(alg.base_algebra(), w.rows, w.cols))
    }

    /// Leading component of every entry, row-major.
    pub fn leading_components(&self) -> Vec<f64> {
        self.data.iter().map(|s| s.re()).collect()
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $call:ident) => {
        impl $tr<&StarMatrix> for &StarMatrix {
            type Output = StarMatrix;
            /// Panics on shape or algebra mismatch.
            fn $f(self, o: &StarMatrix) -> StarMatrix {
                self.$call(o).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}
binop!(Mul, mul, matmul);
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);

impl Neg for &StarMatrix {
    type Output = StarMatrix;
    fn neg(self) -> StarMatrix {
        self.scale(-1.0)
    }
}

/// Block-diagonal `A ⊕ B`.
pub fn direct_sum(a: &StarMatrix, b: &StarMatrix) -> Result<StarMatrix> {
    a.same_algebra(b)?;
    let mut out = StarMatrix::zeros(a.alg, a.rows + b.rows, a.cols + b.cols);
    out.set_block(0, 0, a);
    out.set_block(a.rows, a.cols, b);
    Ok(out)
}

fn require_column(v: &StarMatrix) -> Result<()> {
    if v.cols == 1 {
        Ok(())
    } else {
        Err(Error::Dimension(format!("expected a column vector, got {}x{}", v.rows, v.cols)))
    }
}

/// `v*·w` for column vectors.
pub fn inner(v: &StarMatrix, w: &StarMatrix) -> Result<Scalar> {
    require_column(v)?;
    require_column(w)?;
    Ok(v.adjoint().matmul(w)?.get(0, 0))
}

/// `v·(v*v)^{-1/2}`.
pub fn normalize(v: &StarMatrix) -> Result<StarMatrix> {
    let n = inner(v, v)?;
    let r = n.inv_sqrt_positive().map_err(|e| match e {
        Error::DegenerateNorm(m) | Error::ZeroDivisor(m) => Error::DegenerateNorm(format!("v*v: {m}")),
        other => other,
    })?;
    Ok(v.mul_scalar_right(&r))
}

/// Pivoted Gram–Schmidt over ℝ, ℂ or ℍ: `need` unit columns orthogonal to
/// the orthonormal columns of `q` and to each other.
fn extend_orthonormal(q: &StarMatrix, need: usize) -> Result<StarMatrix> {
    let alg = q.alg;
    let n = q.rows;
    // residuals of the coordinate vectors: R = I − Q Q*
    let mut r = StarMatrix::identity(alg, n).try_sub(&q.matmul(&q.adjoint())?)?;
    let mut basis = q.clone();
    let mut found = Vec::with_capacity(need);
    for _ in 0..need {
        let (best, norm) = (0..n)
            .map(|j| (j, (0..n).map(|i| r.get(i, j).norm_sqr()).sum::<f64>().sqrt()))
            .fold((0, -1.0), |a, b| if b.1 > a.1 { b } else { a });
        if !(norm > 1e-6) {
            return Err(Error::Complement(format!("no independent direction left (residual {norm:e})")));
        }
        let mut x = r.column(best);
        // one reorthogonalisation pass
        x = x.try_sub(&basis.matmul(&basis.adjoint().matmul(&x)?)?)?;
        let nx = x.frobenius_norm();
        x = x.scale(1.0 / nx);
        // R ← R − x (x* R)
        r = r.try_sub(&x.matmul(&x.adjoint().matmul(&r)?)?)?;
        basis = StarMatrix::hstack(&[basis, x.clone()])?;
        found.push(x);
    }
    if found.is_empty() {
        return Ok(StarMatrix::zeros(alg, n, 0));
    }
    StarMatrix::hstack(&found)
}

fn split_halves(m: &StarMatrix) -> (StarMatrix, StarMatrix) {
    let l = StarMatrix::from_fn(REAL, m.rows, m.cols, |i, j| Scalar::from_real(REAL, m.get(i, j).components()[0]));
    let r = StarMatrix::from_fn(REAL, m.rows, m.cols, |i, j| Scalar::from_real(REAL, m.get(i, j).components()[1]));
    (l, r)
}

/// Orthonormal basis of the complement of the columns of a base-algebra matrix.
fn base_complement(w0: &StarMatrix) -> Result<StarMatrix> {
    let need = w0.rows - w0.cols;
    match w0.alg.base() {
        Base::Real | Base::Complex | Base::Quaternion => extend_orthonormal(w0, need),
        Base::SplitSterile => {
            // (u, v)⊥ = u⊥ × v⊥, bases paired index-wise
            let (l, r) = split_halves(w0);
            let (cl, cr) = (extend_orthonormal(&l, need)?, extend_orthonormal(&r, need)?);
            Ok(StarMatrix::from_fn(w0.alg, w0.rows, need, |i, j| {
                Scalar::new(w0.alg, &[cl.get(i, j).re(), cr.get(i, j).re()]).expect("two components")
            }))
        }
        Base::SplitSwap => Err(Error::Unsupported(
            "orthogonal complements over (ℝ⊕ℝ, *_{-1}) are not positive-definite".into(),
        )),
    }
}

/// An orthonormal basis `Y` of the complement of the orthonormal columns `W`.
///
/// The complement is built over the base algebra from the standard parts of
/// `W` and then corrected by `Y = Y₀ − W(W*Y₀)`, which is exactly orthonormal
/// and orthogonal to `W` because the correction is purely infinitesimal.
pub fn orthonormal_complement(w: &StarMatrix, tol: f64) -> Result<StarMatrix> {
    let defect = w.orthonormality_defect();
    if defect > tol {
        return Err(Error::NotOrthonormal(defect));
    }
    if w.cols > w.rows {
        return Err(Error::Dimension(format!("{} columns in dimension {}", w.cols, w.rows)));
    }
    let alg = w.alg;
    let y = if alg.has_delta() {
        let y0 = StarMatrix::embed(alg, &base_complement(&w.std_part())?)?;
        let corr = w.matmul(&w.adjoint().matmul(&y0)?)?;
        y0.try_sub(&corr)?
    } else {
        base_complement(w)?
    };
    let d1 = y.orthonormality_defect();
    let d2 = w.adjoint().matmul(&y)?.frobenius_norm();
    if d1.max(d2) > tol {
        return Err(Error::Complement(format!("complement defect {:e}", d1.max(d2))));
    }
    Ok(y)
}

/// `H` restricted to the orthogonal complement of some orthonormal columns.
#[derive(Clone, Debug)]
pub struct Restriction {
    /// `Y* H Y`.
    pub matrix: StarMatrix,
    /// Orthonormal basis `Y` of the complement, one column per direction.
    pub basis: StarMatrix,
}

pub fn restrict_to_complement(h: &StarMatrix, w: &StarMatrix, tol: f64) -> Result<Restriction> {
    h.require_square()?;
    h.same_algebra(w)?;
    if w.rows != h.rows {
        return Err(Error::Dimension(format!("{}-vectors for a {}x{} matrix", w.rows, h.rows, h.rows)));
    }
    let basis = orthonormal_complement(w, tol)?;
    let matrix = basis.adjoint().matmul(&h.matmul(&basis)?)?;
    Ok(Restriction { matrix, basis })
}

/// Unitary diagonalisation of a projector over the SVD algebra.
#[derive(Clone, Debug)]
pub struct ProjectorDiagonalization {
    /// Columns are eigenvectors; `P·U = U·diag(1,…,1,0,…,0)`.
    pub unitary: StarMatrix,
    pub rank: usize,
}

/// Diagonalises `P = (Q,Q) + δ(K,Kᵀ)` with `Q` a real orthogonal projector.
///
/// Only projectors displaced from a real one by an infinitesimal are handled;
/// anything else is a precondition error.
pub fn diagonalize_displaced_projector(p: &StarMatrix, tol: f64) -> Result<ProjectorDiagonalization> {
    if p.alg != SVD {
        return Err(Error::AlgebraMismatch { left: p.alg, right: SVD });
    }
    p.require_square()?;
    let n = p.rows;
    let scale = 1.0 + p.frobenius_norm();
    let sa = p.self_adjoint_defect()?;
    if sa > tol * scale {
        return Err(Error::precondition("P* = P", sa, tol * scale));
    }
    let idem = p.matmul(p)?.try_sub(p)?.frobenius_norm();
    if idem > tol * scale {
        return Err(Error::precondition("P² = P", idem, tol * scale));
    }
    let (ql, qr) = split_halves(&p.std_part());
    let real_defect = ql.try_sub(&qr)?.frobenius_norm();
    if real_defect > tol * scale {
        return Err(Error::precondition("standard part is a real projector", real_defect, tol * scale));
    }
    // real orthonormal basis adapted to range(Q) ⊕ ker(Q)
    let mut range = StarMatrix::zeros(REAL, n, 0);
    loop {
        let resid = ql.try_sub(&range.matmul(&range.adjoint().matmul(&ql)?)?)?;
        let (best, norm) = (0..n)
            .map(|j| (j, resid.column(j).frobenius_norm()))
            .fold((0, -1.0), |a, b| if b.1 > a.1 { b } else { a });
        if n == 0 || norm < 0.5 {
            break;
        }
        let x = resid.column(best).scale(1.0 / norm);
        range = StarMatrix::hstack(&[range, x])?;
    }
    let rank = range.cols;
    let kernel = extend_orthonormal(&range, n - rank)?;
    let u_real = if n == 0 { range } else { StarMatrix::hstack(&[range, kernel])? };
    let u = StarMatrix::embed(SVD, &StarMatrix::from_fn(SVD.base_algebra(), n, n, |i, j| {
        Scalar::from_real(SVD.base_algebra(), u_real.get(i, j).re())
    }))?;
    // P' = U*PU = [[I, B], [B*, 0]] with B infinitesimal; W = [[I, −B], [B*, I]]
    let pp = u.adjoint().matmul(&p.matmul(&u)?)?;
    let b = pp.submatrix(0, rank, rank, n - rank);
    let mut wm = StarMatrix::identity(SVD, n);
    wm.set_block(0, rank, &-&b);
    wm.set_block(rank, 0, &b.adjoint());
    Ok(ProjectorDiagonalization { unitary: u.matmul(&wm)?, rank })
}

/// The pair `[M, K] = (1,0)M + (0,1)Kᵀ` over `(ℝ⊕ℝ, *_{-1})`.
#[derive(Clone, Debug, PartialEq)]
pub struct BracketMatrix {
    pub left: StarMatrix,
    pub right: StarMatrix,
}

impl BracketMatrix {
    pub fn new(left: StarMatrix, right: StarMatrix) -> Result<BracketMatrix> {
        if left.alg != REAL || right.alg != REAL {
            return Err(Error::AlgebraMismatch { left: left.alg, right: REAL });
        }
        if left.rows != right.cols || left.cols != right.rows {
            return Err(Error::Dimension("[M,K] needs K to have the shape of Mᵀ".into()));
        }
        Ok(BracketMatrix { left, right })
    }

    pub fn to_star(&self) -> StarMatrix {
        StarMatrix::from_fn(SPLIT_SWAP, self.left.rows, self.left.cols, |i, j| {
            Scalar::new(SPLIT_SWAP, &[self.left.get(i, j).re(), self.right.get(j, i).re()]).expect("two components")
        })
    }

    pub fn from_star(m: &StarMatrix) -> Result<BracketMatrix> {
        if m.alg != SPLIT_SWAP {
            return Err(Error::AlgebraMismatch { left: m.alg, right: SPLIT_SWAP });
        }
        let (l, r) = split_halves(m);
        Ok(BracketMatrix { left: l, right: r.transpose() })
    }

    /// `[A,B][C,D] = [AC, DB]`.
    pub fn mul(&self, o: &BracketMatrix) -> Result<BracketMatrix> {
        Ok(BracketMatrix { left: self.left.matmul(&o.left)?, right: o.right.matmul(&self.right)? })
    }

    pub fn add(&self, o: &BracketMatrix) -> Result<BracketMatrix> {
        Ok(BracketMatrix { left: self.left.try_add(&o.left)?, right: self.right.try_add(&o.right)? })
    }

    /// `[A,B]* = [B,A]`.
    pub fn adjoint(&self) -> BracketMatrix {
        BracketMatrix { left: self.right.clone(), right: self.left.clone() }
    }
}
