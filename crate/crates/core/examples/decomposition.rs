// Recovering μ_j = ω * E_{x_j} with ω supported in Ker(I + α).

use heyde::{decompose, Dist, FinGroup, GroupMap, SymmetryInstance};

pub fn run_example() -> heyde::Result<()> {
    let x: FinGroup = "Z3xZ3".parse()?;
    let alpha = GroupMap::new(&x, vec![vec![0, 2], vec![2, 0]])?;
    let omega = Dist::from_pairs(
        &x,
        [
            (&x.elem(&[0, 0])?, heyde::Q::new(1, 2)),
            (&x.elem(&[1, 1])?, heyde::Q::new(1, 3)),
            (&x.elem(&[2, 2])?, heyde::Q::new(1, 6)),
        ],
    )?;
    let x2 = x.elem(&[1, 0])?;
    let x1 = x.neg(&alpha.apply(&x2)?);
    let inst = SymmetryInstance::new(alpha, omega.shift(&x1)?, omega.shift(&x2)?)?;

    let d = decompose(&inst)?;
    println!("{}", serde_json::to_string_pretty(&d.to_json())?);
    assert!(d.omega.is_supported_in(&d.kernel_k));
    assert_eq!(d.omega.shift(&d.x1)?, *inst.mu1());
    assert_eq!(d.omega.shift(&d.x2)?, *inst.mu2());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("decomposition example");
}
