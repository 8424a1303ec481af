// The model manifolds X_q(n) and what a blow-up does to them.

use swd_invariants::manifold::example_xqn;
use swd_invariants::Result;

pub fn run() -> Result<()> {
    for q in [2, 3] {
        for n in 0..=3 {
            let x = example_xqn(q, n)?;
            let c = x.char_numbers()?;
            println!(
                "X_{q}({n}): rank {:>2}  chi_h {}  c1^2 {:>3}  c {}  |B| {:>2}  simple type {}",
                x.lattice().rank(),
                c.chi_h,
                c.c1sq,
                c.c,
                x.basic_classes().len(),
                x.has_simple_type()
            );
        }
    }

    let x = example_xqn(2, 1)?;
    let xt = x.blow_up()?;
    println!("\nbasic classes of X_2(2) with their SW' values:");
    for k in xt.fundamental_domain() {
        let tail: Vec<i64> = k.0[k.0.len() - 2..].to_vec();
        println!("  K ... {tail:?}  SW' = {}", xt.sw().get(&k));
    }

    let json = serde_json::to_string(&x).expect("manifolds serialize");
    println!("\nX_2(1) as JSON: {} bytes", json.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
