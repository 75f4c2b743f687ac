// Exact distributions, their characteristic functions, and the convolution
// theorem.

use heyde::{Dist, FinGroup};

pub fn run_example() -> heyde::Result<()> {
    let z5: FinGroup = "Z5".parse()?;
    let mu = Dist::from_weights(&z5, &[3, 1, 0, 0, 2])?;
    let nu = Dist::from_weights(&z5, &[1, 1, 1, 0, 0])?;
    println!("μ = {}", mu.to_json());

    let f = mu.fourier();
    print!("{}", f.to_csv());
    assert_eq!(f.inverse_fourier()?, mu);

    let conv = mu.convolve(&nu)?;
    let product = mu.fourier().mul(&nu.fourier())?;
    let gap = conv.fourier().max_distance(&product);
    println!("μ * ν = {}; |FT(μ*ν) − μ̂ν̂| = {gap:.2e}", conv.to_json());
    assert!(gap < 1e-12);
    println!("μ̂ nonvanishing: {}", mu.is_nonvanishing());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("fourier example");
}
