//! SVD, Takagi, skew-Takagi, simultaneous diagonalisation and Jordan form,
//! each obtained from a single spectral call.

use star_spectral::classic::*;
use star_spectral::instrument;
use star_spectral::random;
use star_spectral::rational::QMatrix;
use star_spectral::scalars::*;

fn main() -> star_spectral::Result<()> {
    let mut rng = random::rng(21);
    let m = random::matrix(REAL, 4, 3, &mut rng);
    let (r, calls) = instrument::capture(|| svd(&m, 1e-10));
    let r = r?;
    println!("svd: σ {:?}, ‖UΣVᵀ − M‖ {:.1e}, spectral calls {calls:?}", r.sigma, r.reconstruct().max_diff(&m));

    let x = random::matrix(COMPLEX, 4, 4, &mut rng);
    let sym = x.try_add(&x.transpose())?.scale(0.5);
    let (_, d) = takagi(&sym, 1e-10)?;
    println!("takagi: d {d:?}");
    let skew = x.try_sub(&x.transpose())?.scale(0.5);
    let (_, _, mus) = skew_takagi(&skew, 1e-10)?;
    println!("skew-takagi: μ {mus:?}");

    let h = random::self_adjoint(REAL, 3, &mut rng);
    let k = random::self_adjoint(REAL, 3, &mut rng);
    let p = pair_diag(&h, &k, 1e-10)?;
    let diag: Vec<Vec<f64>> = (0..3).map(|i| p.diagonal.get(i, i).components().to_vec()).collect();
    println!("pair-diag: (D, E) entries {diag:?}, unitary defect {:.1e}", p.unitary.orthonormality_defect());

    // companion matrix of (x − 1)²(x − 2)
    let c = QMatrix::from_i64(3, 3, &[0, 0, 2, 1, 0, -5, 0, 1, 4]);
    let j = jordan(&c)?;
    println!("jordan: {}  bracket identity {}", describe_blocks(&j.blocks), bracket_identity_holds(&c, &j)?);
    match jordan(&QMatrix::from_i64(2, 2, &[0, 2, 1, 0])) {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("jordan of [[0, 2], [1, 0]]: {e}"),
    }
    Ok(())
}
