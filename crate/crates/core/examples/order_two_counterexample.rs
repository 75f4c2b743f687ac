// On ℝ × ℤ(2) the decomposition fails: a symmetric pair whose laws are not
// Gaussians times a law on Ker(I + α_G).

use heyde::rg::{rg_symmetry_certificate, DensityGrid};
use heyde::{make_remark_family, rg_decompose, rg_positive_definite_check, RemarkKappa, Q};

pub fn run_example() -> heyde::Result<()> {
    let inst = make_remark_family(
        Q::from_integer(2),
        Q::from_integer(1),
        RemarkKappa::Boundary,
        Q::from_integer(-2),
    )?;
    let cert = rg_symmetry_certificate(&inst);
    for e in &cert.entries {
        println!("(h1, h2) = ({}, {}): {:?} matched = {}", e.h1, e.h2, e.lhs, e.matched);
    }
    let dec = rg_decompose(&inst)?;
    println!("decomposition: {}", dec.to_json());
    assert!(cert.symmetric && dec.is_irreducible());

    for f in [&inst.f1, &inst.f2] {
        let p = rg_positive_definite_check(f, &DensityGrid::default())?;
        println!("min density {:.3e} at t = {}, g = {}", p.min_density, p.argmin_t, p.argmin_g);
        assert!(p.passed);
    }

    let err = make_remark_family(
        Q::from_integer(2),
        Q::from_integer(1),
        RemarkKappa::Rational(Q::new(4, 5)),
        Q::from_integer(-2),
    )
    .unwrap_err();
    println!("κ₁ = 4/5 rejected: {err}");
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("counterexample example");
}
