//! Drives the command line in-process: decompose a file, verify the factors,
//! print a spectrum.

use star_spectral::cli::{run, MatrixFile};
use star_spectral::random;
use star_spectral::scalars::TAKAGI;

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let h = random::self_adjoint(TAKAGI, 3, &mut random::rng(9));
    let input = dir.path().join("h.json");
    std::fs::write(&input, serde_json::to_string_pretty(&MatrixFile::from_star(&h)).unwrap()).unwrap();
    let factors = dir.path().join("factors.json");
    let (i, f) = (input.to_str().unwrap(), factors.to_str().unwrap());

    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    for args in [
        vec!["starspec", "decompose", "--kind", "spectral", "--input", i, "--output", f],
        vec!["starspec", "verify", "--input", i, "--factors", f],
        vec!["starspec", "spectrum", "--input", i],
    ] {
        println!("$ {}", args[1..].join(" "));
        let code = run(args, &mut out, &mut err);
        println!("exit {code}");
    }
}
