// Finite Abelian groups, the character pairing, and annihilators.

use heyde::{annihilator, FinGroup, Subgroup};

pub fn run_example() -> heyde::Result<()> {
    let x: FinGroup = "Z3xZ9".parse()?;
    println!("{} has order {} and exponent {}", x.spec(), x.order(), x.exponent());

    let a = x.elem(&[1, 3])?;
    let b = x.elem(&[2, 6])?;
    // (a, b) = exp 2πi (1·2/3 + 3·6/9) = exp 2πi (2/3 + 2)
    println!("(a, b) phase = {}", x.pairing_exponent(&a, &b)?);
    assert_eq!(x.pairing_exponent(&a, &b)?, heyde::Q::new(2, 3));

    let l = Subgroup::from_generators(&x, &[x.elem(&[0, 3])?])?;
    let ann = annihilator(&x, &l)?;
    println!("|L| = {}, |A(Y, L)| = {}", l.order(), ann.order());
    assert_eq!(l.order() * ann.order(), x.order());
    assert_eq!(annihilator(&x, &ann)?, l);

    let odd: FinGroup = "Z5xZ15".parse()?;
    println!("{} has elements of order 2: {}", odd.spec(), odd.has_order_two());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("groups example");
}
