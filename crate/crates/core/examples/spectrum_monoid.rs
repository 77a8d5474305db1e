//! Canonical spectra, their sums under direct sum, and the uniqueness probe.

use star_spectral::monoid::{probe_conjecture, spectrum_of};
use star_spectral::random;
use star_spectral::scalars::*;

fn main() -> star_spectral::Result<()> {
    let mut rng = random::rng(4);
    let a = random::self_adjoint(SVD, 2, &mut rng);
    let b = random::clustered_self_adjoint(SVD, 3, &mut rng);
    let sa = spectrum_of(&a, 1e-10)?;
    let sb = spectrum_of(&b, 1e-10)?;
    let whole = spectrum_of(&a.direct_sum(&b)?, 1e-10)?;
    println!("spectrum(A ⊕ B) = spectrum(A) + spectrum(B): {}", whole == sa.add(&sb)?);
    println!("{}", serde_json::to_string_pretty(&whole.to_json()).unwrap());

    for alg in [SVD, TAKAGI, QUAT_DUAL] {
        print!("{}", probe_conjecture(alg, 4, 50, 1)?.render());
    }
    Ok(())
}
