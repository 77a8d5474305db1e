//! Seeded random scalars, self-adjoint matrices and unitaries for tests,
//! examples and the probes.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classic::{jordan_matrix, JordanBlock};
use crate::matrix::{inner, StarMatrix};
use crate::rational::{rat, QMatrix};
use crate::scalars::{Algebra, Base, Scalar, REAL, SPLIT_STERILE};

/// The generator used throughout; reproducible from a `u64` seed.
pub type StarRng = ChaCha8Rng;

pub fn rng(seed: u64) -> StarRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Components uniform in `[−1, 1]`.
pub fn scalar(alg: Algebra, rng: &mut impl Rng) -> Scalar {
    let c: Vec<f64> = (0..alg.component_count()).map(|_| rng.gen_range(-1.0..=1.0)).collect();
    Scalar::new(alg, &c).expect("component count")
}

pub fn matrix(alg: Algebra, rows: usize, cols: usize, rng: &mut impl Rng) -> StarMatrix {
    StarMatrix::from_fn(alg, rows, cols, |_, _| scalar(alg, rng))
}

/// `(X + X*)/2` for a random `X`.
pub fn self_adjoint(alg: Algebra, n: usize, rng: &mut impl Rng) -> StarMatrix {
    let x = matrix(alg, n, n, rng);
    x.try_add(&x.adjoint()).expect("same shape").scale(0.5)
}

/// `(Xδ + (Xδ)*)/2` for a random base matrix `X`.
pub fn infinitesimal_self_adjoint(alg: Algebra, n: usize, rng: &mut impl Rng) -> StarMatrix {
    let x = matrix(alg.base_algebra(), n, n, rng);
    let zeros = StarMatrix::zeros(alg.base_algebra(), n, n);
    let xd = StarMatrix::from_parts(alg, &zeros, &x).expect("δ-algebra");
    xd.try_add(&xd.adjoint()).expect("same shape").scale(0.5)
}

/// Gram–Schmidt on a random square matrix over ℝ, ℂ or ℍ.
fn division_unitary(alg: Algebra, n: usize, rng: &mut impl Rng) -> StarMatrix {
    let mut cols: Vec<StarMatrix> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v = matrix(alg, n, 1, rng);
        for _ in 0..2 {
            for w in &cols {
                v = v.try_sub(&w.mul_scalar_right(&inner(w, &v).expect("columns"))).expect("shape");
            }
        }
        let nv = v.frobenius_norm();
        if nv > 1e-3 {
            cols.push(v.scale(1.0 / nv));
        }
    }
    if n == 0 {
        StarMatrix::zeros(alg, 0, 0)
    } else {
        StarMatrix::hstack(&cols).expect("n columns")
    }
}

/// Random unitary over the base algebra of `alg`.
fn base_unitary(base: Algebra, n: usize, rng: &mut impl Rng) -> StarMatrix {
    match base.base() {
        Base::SplitSterile => {
            let l = division_unitary(REAL, n, rng);
            let r = division_unitary(REAL, n, rng);
            StarMatrix::from_fn(SPLIT_STERILE, n, n, |i, j| {
                Scalar::new(SPLIT_STERILE, &[l.get(i, j).re(), r.get(i, j).re()]).expect("two")
            })
        }
        _ => division_unitary(base, n, rng),
    }
}

/// Random unitary over any shipped algebra except the split-swap one:
/// a base unitary times `I + (S − S*)/2` for a random infinitesimal `S`.
pub fn unitary(alg: Algebra, n: usize, rng: &mut impl Rng) -> StarMatrix {
    let base = alg.base_algebra();
    let u0 = base_unitary(base, n, rng);
    if !alg.has_delta() {
        return u0;
    }
    let x = matrix(base, n, n, rng);
    let s = StarMatrix::from_parts(alg, &StarMatrix::zeros(base, n, n), &x).expect("δ-algebra");
    let p = StarMatrix::identity(alg, n).try_add(&s.try_sub(&s.adjoint()).expect("shape").scale(0.5)).expect("shape");
    StarMatrix::embed(alg, &u0).expect("base").matmul(&p).expect("shape")
}

/// A self-adjoint matrix with repeated standard eigenvalues: `V (Λ + Bδ) V*`
/// with Λ drawn from a few small integers and `V` random unitary. Over
/// algebras without δ the δ-term is dropped. Over split bases both halves
/// of Λ agree.
pub fn clustered_self_adjoint(alg: Algebra, n: usize, rng: &mut impl Rng) -> StarMatrix {
    let levels = rng.gen_range(1..=n.max(1).min(3)) as i64;
    let lam: Vec<Scalar> =
        (0..n).map(|_| Scalar::from_real(alg, rng.gen_range(-levels..=levels) as f64)).collect();
    let mut core = StarMatrix::diagonal(alg, &lam);
    if alg.has_delta() {
        core = core.try_add(&infinitesimal_self_adjoint(alg, n, rng)).expect("shape");
    }
    let v = unitary(alg, n, rng);
    let h = v.matmul(&core).expect("shape").matmul(&v.adjoint()).expect("shape");
    // restore exact self-adjointness lost to rounding
    h.try_add(&h.adjoint()).expect("shape").scale(0.5)
}

/// A rational matrix `P J P⁻¹` with `n` rows, where `J` has random blocks
/// over eigenvalues `k/2` (|k| ≤ 4) and `P` is a random invertible matrix
/// with small integer and half-integer entries. Returns `(M, P, blocks)`.
pub fn rational_jordan_case(n: usize, rng: &mut impl Rng) -> (QMatrix, QMatrix, Vec<JordanBlock>) {
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let size = rng.gen_range(1..=left.min(3));
        blocks.push(JordanBlock { value: rat(rng.gen_range(-4..=4), 2), size });
        left -= size;
    }
    let j = jordan_matrix(&blocks);
    loop {
        let mut p = QMatrix::zeros(n, n);
        for i in 0..n {
            for k in 0..n {
                p.set(i, k, rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)));
            }
        }
        if let Ok(pinv) = p.inverse() {
            return (p.mul(&j).mul(&pinv), p, blocks);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Algebra;

    #[test]
    fn unitaries_are_unitary() {
        let mut r = rng(1);
        for alg in Algebra::shipped().filter(|a| a.base() != Base::SplitSwap) {
            let u = unitary(alg, 4, &mut r);
            assert!(u.orthonormality_defect() < 1e-12, "{alg}");
            let h = self_adjoint(alg, 4, &mut r);
            assert!(h.self_adjoint_defect().unwrap() < 1e-14, "{alg}");
            let c = clustered_self_adjoint(alg, 4, &mut r);
            assert!(c.self_adjoint_defect().unwrap() < 1e-14, "{alg}");
        }
    }
}
