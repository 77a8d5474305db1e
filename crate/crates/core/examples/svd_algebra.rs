//! The spectral theorem over the SVD algebra and its (C, L, R) spectrum.

use star_spectral::infinitesimal::{spectral_svdalg, SvdAlgSpectrum};
use star_spectral::matrix::StarMatrix;
use star_spectral::random;
use star_spectral::scalars::*;

fn main() -> star_spectral::Result<()> {
    let mut rng = random::rng(3);
    for (name, h) in [
        ("generic", random::self_adjoint(SVD, 4, &mut rng)),
        ("clustered", random::clustered_self_adjoint(SVD, 4, &mut rng)),
        ("purely infinitesimal", random::infinitesimal_self_adjoint(SVD, 4, &mut rng)),
    ] {
        let e = spectral_svdalg(&h, 1e-10)?;
        let s = SvdAlgSpectrum::from_eigenvalues(&e.eigenvalues);
        println!("{name}: residual {:.1e}, unitarity {:.1e}", e.residual, e.unitarity_defect());
        println!("  C {:?}\n  L {:?}\n  R {:?}", s.c, s.l, s.r);
    }

    // (M, Mᵀ)δ has eigenvalues σδ: the singular values of M
    let m = [3.0, 0.0, 4.0, 5.0];
    let h = StarMatrix::from_fn(SVD, 2, 2, |i, j| Scalar::new(SVD, &[0.0, 0.0, m[i * 2 + j], m[j * 2 + i]]).unwrap());
    let e = spectral_svdalg(&h, 1e-10)?;
    println!("(M, Mᵀ)δ for M = [[3, 0], [4, 5]]: {:?}", e.eigenvalues);
    Ok(())
}
