use star_spectral::infinitesimal::{spectral_cl101_neg, spectral_quatdual, spectral_skewtakagi_alg, spectral_svdalg, spectral_takagi_alg};
use star_spectral::matrix::StarMatrix;
use star_spectral::random;
use star_spectral::scalars::*;
use star_spectral::spectral::{eig_complex_hermitian, eig_dual_selfadjoint, eig_quaternion_hermitian};

fn decompose(h: &StarMatrix) -> (StarMatrix, StarMatrix) {
    let alg = h.algebra();
    let tol = 1e-10;
    if alg == SVD {
        let e = spectral_svdalg(h, tol).unwrap();
        (e.u, e.d)
    } else if alg == SVD_NEG {
        let e = spectral_cl101_neg(h, tol).unwrap();
        (e.u, e.d)
    } else if alg == TAKAGI {
        let e = spectral_takagi_alg(h, tol).unwrap();
        (e.u, e.d)
    } else if alg == SKEW_TAKAGI {
        let e = spectral_skewtakagi_alg(h, tol).unwrap();
        (e.u, e.d)
    } else if alg == QUAT_DUAL {
        let e = spectral_quatdual(h, tol).unwrap();
        (e.u, e.d)
    } else if alg == DUAL {
        let e = eig_dual_selfadjoint(h, tol).unwrap();
        (e.u, e.d)
    } else if alg == COMPLEX {
        let e = eig_complex_hermitian(h, tol).unwrap();
        (e.u, e.d)
    } else {
        let e = eig_quaternion_hermitian(h, tol).unwrap();
        (e.u, e.d)
    }
}

#[test]
fn random_reconstruction_all_algebras() {
    let mut rng = random::rng(11);
    for alg in [SVD, SVD_NEG, TAKAGI, SKEW_TAKAGI, QUAT_DUAL, DUAL, COMPLEX, QUATERNION] {
        for trial in 0..60 {
            let n = 1 + trial % 10;
            let h = match trial % 3 {
                0 => random::self_adjoint(alg, n, &mut rng),
                1 => random::clustered_self_adjoint(alg, n, &mut rng),
                _ => if alg.has_delta() { random::infinitesimal_self_adjoint(alg, n, &mut rng) } else { random::self_adjoint(alg, n, &mut rng) },
            };
            let (u, d) = decompose(&h);
            let res = u.matmul(&d).unwrap().matmul(&u.adjoint()).unwrap().try_sub(&h).unwrap().frobenius_norm();
            let bound = 1e-8 * (1.0 + h.frobenius_norm());
            assert!(res <= bound, "{alg} trial {trial} n {n}: residual {res:e}");
            let def = u.orthonormality_defect();
            assert!(def <= 1e-9, "{alg} trial {trial} n {n}: unitarity {def:e}");
        }
    }
}
