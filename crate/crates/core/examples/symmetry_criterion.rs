// Conditional symmetry of L₂ = ξ₁ + αξ₂ given L₁ = ξ₁ + ξ₂, decided both on
// the joint table and through characteristic functions.

use heyde::{
    check_unimodular_on_h, compute_h, haar_on, symmetry_direct, symmetry_fourier, Dist, FinGroup,
    GroupMap, SymmetryInstance,
};

pub fn run_example() -> heyde::Result<()> {
    let z9: FinGroup = "Z9".parse()?;
    let alpha = GroupMap::scalar(&z9, 2);
    let k = alpha.plus_identity(true).kernel();
    let omega = haar_on(&k);
    let x2 = z9.elem(&[1])?;
    let x1 = z9.neg(&alpha.apply(&x2)?);
    let inst = SymmetryInstance::new(alpha.clone(), omega.shift(&x1)?, omega.shift(&x2)?)?;
    let (d, f) = (symmetry_direct(&inst), symmetry_fourier(&inst));
    println!("constructed instance: direct = {d}, fourier = {f}");
    assert!(d && f);
    println!(
        "H has order {}; unimodular on H: {}",
        compute_h(&alpha).order(),
        check_unimodular_on_h(&inst)
    );

    let skew = Dist::from_weights(&z9, &[2, 1, 0, 0, 0, 0, 0, 0, 1])?;
    let other = SymmetryInstance::new(alpha, skew.clone(), skew)?;
    println!(
        "μ₁ = μ₂ skewed: direct = {}, fourier = {}",
        symmetry_direct(&other),
        symmetry_fourier(&other)
    );
    assert_eq!(symmetry_direct(&other), symmetry_fourier(&other));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("symmetry example");
}
