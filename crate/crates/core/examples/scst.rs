// Superconformal simple type: the signed Seiberg-Witten power sums that
// must vanish, and a table where they do not.

use swd_invariants::invariants::scst_vanishing_sum;
use swd_invariants::lattice::HClass;
use swd_invariants::manifold::{example_xqn, SwTable};
use swd_invariants::rational::{format_rational, rat};
use swd_invariants::Result;

pub fn run() -> Result<()> {
    let x = example_xqn(2, 3)?;
    let w = x.named("K0").cloned().expect("fixture");
    let rank = x.lattice().rank();
    let h1 = HClass((0..rank as i64).map(|i| rat(i % 5 - 2, 1 + i % 3)).collect());
    let h2 = HClass((0..rank as i64).map(|i| rat(3 - i % 7, 2)).collect());
    println!("X_2(3): c = {}, scst = {}", x.c(), x.is_scst(&w)?);
    for (j, u) in [(0, 0), (2, 0), (1, 1), (0, 2)] {
        let s = scst_vanishing_sum(&x, &w, j, u, &h1, &h2)?;
        println!("  j={j} u={u}: {}", format_rational(&s));
    }

    // Keep only ±K0 on X_2(2): c = 5 and the degree-1 sum survives.
    let y = example_xqn(2, 2)?;
    let k0 = y.named("K0").cloned().expect("fixture");
    let mut sw = SwTable::new();
    sw.insert(k0.clone(), 1);
    sw.insert(-&k0, 1);
    let y = y.with_sw(sw)?;
    let h = HClass(h1.0[..y.lattice().rank()].to_vec());
    let s = scst_vanishing_sum(&y, &k0, 1, 0, &h, &h)?;
    println!("truncated X_2(2): scst = {}, j=1 sum = {}", y.is_scst(&k0)?, format_rational(&s));

    // Preconditions are named.
    println!("{}", scst_vanishing_sum(&x, &w, 1, 0, &h1, &h2).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
