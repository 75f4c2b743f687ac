// Gaussian-type characteristic functions on ℝ × G: coefficient matching and
// decomposition into a Gaussian, a law on Ker(I + α_G) and a shift.

use heyde::rg::{rg_symmetry_certificate, RgPoint};
use heyde::{rg_decompose, Dist, FinGroup, GroupMap, RGCharFn, RGInstance, RgDecomposition, Q};

pub fn run_example() -> heyde::Result<()> {
    let z9: FinGroup = "Z9".parse()?;
    let alpha_g = GroupMap::scalar(&z9, 2);
    let omega = Dist::from_weights(&z9, &[2, 0, 0, 1, 0, 0, 1, 0, 0])?;
    let a = Q::new(-1, 3);
    let (sigma1, sigma2) = (Q::new(1, 2), Q::new(3, 2));
    let x2 = RgPoint {
        t: Q::new(1, 1),
        g: z9.elem(&[5])?,
    };
    let x1 = RgPoint {
        t: -a * x2.t,
        g: z9.neg(&alpha_g.apply(&x2.g)?),
    };
    let inst = RGInstance::new(
        RGCharFn::gaussian_times(sigma1, &omega, &x1)?,
        RGCharFn::gaussian_times(sigma2, &omega, &x2)?,
        a,
        alpha_g,
    )?;
    let cert = rg_symmetry_certificate(&inst);
    println!("symmetric: {} over {} character pairs", cert.symmetric, cert.entries.len());
    assert!(cert.symmetric);

    let dec = rg_decompose(&inst)?;
    println!("{}", serde_json::to_string_pretty(&dec.to_json())?);
    match dec {
        RgDecomposition::Gaussian { sigma1: s1, sigma2: s2, .. } => {
            assert_eq!((s1, s2), (sigma1, sigma2))
        }
        other => panic!("expected a Gaussian decomposition, got {other:?}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("real line example");
}
