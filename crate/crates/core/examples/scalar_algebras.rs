//! Scalars of the shipped *-algebras, and adjoining δ to a base algebra.

use star_spectral::scalars::*;

fn main() -> star_spectral::Result<()> {
    for alg in Algebra::shipped() {
        println!("{:<22} {} components", alg.tag().unwrap_or("-"), alg.component_count());
    }

    // δ anticommutes with i in the Takagi algebra and squares to zero
    let i = Scalar::new(TAKAGI, &[0.0, 1.0, 0.0, 0.0])?;
    let d = Scalar::delta(TAKAGI)?;
    println!("iδ = {:?}", (i * d).components());
    println!("δi = {:?}", (d * i).components());
    println!("δ² = {:?}", (d * d).components());

    // the involution on the SVD algebra swaps the two halves
    let x = Scalar::new(SVD, &[1.0, 2.0, 3.0, 4.0])?;
    println!("x  = {:?}\nx* = {:?}", x.components(), x.involute().components());

    // adjoin_delta rebuilds a shipped algebra and rejects a non-automorphism
    println!("ℂ + (conj, +1) = {}", adjoin_delta(COMPLEX, Phi::Conjugate, Sign::Plus)?);
    match adjoin_delta(QUATERNION, Phi::Conjugate, Sign::Plus) {
        Ok(a) => println!("unexpected: {a}"),
        Err(e) => println!("ℍ + (conj, +1): {e}"),
    }

    // dual-number inverse
    let z = DualScalar::new(2.0, 3.0);
    println!("1/(2 + 3ε) = {:?}", z.invert()?);
    Ok(())
}
