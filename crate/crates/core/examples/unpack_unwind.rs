//! Unpacking matrices and unwinding vectors: `unwind(Xv) = unpack(X)·unwind(v)`.

use star_spectral::random;
use star_spectral::unpack::{all_pairs, norm_transport_defect, pair_complex, skewed_complex_unwind};
use star_spectral::scalars::COMPLEX;

fn main() -> star_spectral::Result<()> {
    let mut rng = random::rng(11);
    for p in all_pairs() {
        let x = random::matrix(p.source(), 3, 3, &mut rng);
        let v = random::matrix(p.source(), 3, 1, &mut rng);
        let lhs = p.unwind(&x.matmul(&v)?)?;
        let rhs = p.unpack(&x)?.matmul(&p.unwind(&v)?)?;
        let back = p.rewind(&p.unwind(&v)?)?;
        println!(
            "{:<15?} {} → {}  intertwining {:.1e}  rewind {:.1e}",
            p.kind(),
            p.source(),
            p.target(),
            lhs.max_diff(&rhs),
            back.max_diff(&v)
        );
    }

    let v = random::matrix(COMPLEX, 4, 1, &mut rng);
    println!("norm defect, ℂ → ℝ unwind: {:.1e}", norm_transport_defect(&v, &pair_complex().unwind(&v)?)?);
    println!("norm defect, u+vi ↦ (u+v, u): {:.3}", norm_transport_defect(&v, &skewed_complex_unwind(&v)?)?);
    Ok(())
}
