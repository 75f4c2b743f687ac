// Endomorphisms as integer matrices: adjoints, kernels and automorphism
// enumeration.

use heyde::{enumerate_automorphisms, FinGroup, GroupMap};

pub fn run_example() -> heyde::Result<()> {
    let x: FinGroup = "Z3xZ3".parse()?;
    let auts = enumerate_automorphisms(&x, 100)?;
    println!("|Aut({})| = {}", x.spec(), auts.len());
    assert_eq!(auts.len(), 48);

    let swap_neg = GroupMap::new(&x, vec![vec![0, 2], vec![2, 0]])?;
    let k = swap_neg.plus_identity(true).kernel();
    println!(
        "Ker(I + α) for α = {swap_neg}: {:?}",
        k.elements().iter().map(|e| e.to_string()).collect::<Vec<_>>()
    );
    assert_eq!(k.order(), 3);

    let mixed: FinGroup = "Z3xZ9".parse()?;
    let alpha = GroupMap::new(&mixed, vec![vec![1, 1], vec![3, 2]])?;
    let adj = alpha.adjoint();
    println!("α = {alpha}, adjoint = {adj}");
    for x in mixed.elements() {
        for y in mixed.elements() {
            assert_eq!(
                mixed.pairing_exponent(&alpha.apply(&x)?, &y)?,
                mixed.pairing_exponent(&x, &adj.apply(&y)?)?
            );
        }
    }
    println!("order of α in Aut: {:?}", alpha.order_in_aut(1000));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("automorphisms example");
}
