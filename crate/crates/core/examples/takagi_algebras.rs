//! Block canonical forms over the Takagi, skew-Takagi and ℍ⊗𝔻 algebras.

use star_spectral::infinitesimal::{spectral_quatdual, spectral_skewtakagi_alg, spectral_takagi_alg};
use star_spectral::random;
use star_spectral::scalars::*;

fn main() -> star_spectral::Result<()> {
    let mut rng = random::rng(8);
    let tol = 1e-10;
    let h = random::clustered_self_adjoint(TAKAGI, 4, &mut rng);
    let e = spectral_takagi_alg(&h, tol)?;
    println!("Takagi algebra: residual {:.1e}\n  {:?}", e.residual, e.blocks);

    let h = random::infinitesimal_self_adjoint(SKEW_TAKAGI, 5, &mut rng);
    let e = spectral_skewtakagi_alg(&h, tol)?;
    println!("skew-Takagi algebra: residual {:.1e}\n  {:?}", e.residual, e.blocks);

    let h = random::self_adjoint(QUAT_DUAL, 3, &mut rng);
    let e = spectral_quatdual(&h, tol)?;
    println!("ℍ⊗𝔻: residual {:.1e}, unitarity {:.1e}\n  {:?}", e.residual, e.unitarity_defect(), e.blocks);
    Ok(())
}
