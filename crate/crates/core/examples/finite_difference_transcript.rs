// The difference-operator argument on an instance with I − α invertible.

use heyde::dist::random_dominant_dist;
use heyde::{second_proof_reduction, FinGroup, GroupMap, SymmetryInstance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn run_example() -> heyde::Result<()> {
    let x: FinGroup = "Z5xZ5".parse()?;
    let alpha = GroupMap::new(&x, vec![vec![4, 0], vec![0, 2]])?;
    let k = alpha.plus_identity(true).kernel();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let omega = random_dominant_dist(&k, 8, &mut rng);
    let x2 = x.elem(&[2, 3])?;
    let x1 = x.neg(&alpha.apply(&x2)?);
    let inst = SymmetryInstance::new(alpha, omega.shift(&x1)?, omega.shift(&x2)?)?;

    let report = second_proof_reduction(&inst)?;
    for step in &report.steps {
        println!("{:<20} residual {:.1e}  {}", step.name, step.max_residual, step.identity);
    }
    println!(
        "|H| = {}, max |P| on H = {:.1e}, concluded = {}",
        report.h_order, report.max_abs_p_on_h, report.concluded
    );
    assert!(report.concluded);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("transcript example");
}
