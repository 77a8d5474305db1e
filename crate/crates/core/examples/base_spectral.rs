//! Spectral theorems over ℝ, ℂ, ℍ and the dual numbers, plus skew forms.

use star_spectral::random;
use star_spectral::scalars::*;
use star_spectral::spectral::*;

fn main() -> star_spectral::Result<()> {
    let mut rng = random::rng(5);
    let tol = 1e-10;
    let runs = [
        ("real symmetric", eig_real_symmetric(&random::self_adjoint(REAL, 5, &mut rng), tol)?),
        ("complex Hermitian", eig_complex_hermitian(&random::self_adjoint(COMPLEX, 5, &mut rng), tol)?),
        ("quaternion Hermitian", eig_quaternion_hermitian(&random::self_adjoint(QUATERNION, 5, &mut rng), tol)?),
        ("dual, repeated st", eig_dual_selfadjoint(&random::clustered_self_adjoint(DUAL, 5, &mut rng), tol)?),
    ];
    for (name, e) in &runs {
        let d: Vec<Vec<f64>> = e.diagonal().iter().map(|x| x.components().iter().map(|c| (c * 1e4).round() / 1e4).collect()).collect();
        println!("{name:<22} residual {:.1e}  unitarity {:.1e}  D {d:?}", e.residual, e.unitarity_defect());
    }

    let x = random::matrix(REAL, 5, 5, &mut rng);
    let skew = x.try_sub(&x.transpose())?.scale(0.5);
    let e = canon_real_skew(&skew, tol)?;
    println!("real skew {:?}", e.d);

    let q = random::matrix(QUATERNION, 3, 3, &mut rng);
    let e = canon_quaternion_skew(&q.try_sub(&q.adjoint())?.scale(0.5), tol)?;
    println!("quaternion skew-Hermitian: residual {:.1e}, D = diag(iμ) with μ {:?}", e.residual,
        e.diagonal().iter().map(|x| x.components()[1]).collect::<Vec<_>>());
    Ok(())
}
