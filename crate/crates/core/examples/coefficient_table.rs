// The seeded model of the universal coefficients: closed-form rows,
// polynomial rows with forced parity zeros, and the kernel relation.

use swd_invariants::diffops::{iterated_nabla1_binomial, SeqFn};
use swd_invariants::invariants::CoeffTable;
use swd_invariants::rational::{format_rational, int};
use swd_invariants::Result;

pub fn run() -> Result<()> {
    // χ_h = 2, c₁² = −4: n = χ_h − c₁² − 3 = 3
    let t = CoeffTable::new(2, -4, 8, 1, 7);
    println!("n = {}", t.n());
    for i in 0..5 {
        let kind = if t.is_closed_form(i) { "closed" } else { "model " };
        println!("  row {i} ({kind}): b(i,0,1)(x) = {}", t.row(i, 0, 1));
    }
    for p in 1..t.n() as u32 {
        let row = t.row(p, 1, 0);
        let f = SeqFn::new(-60, 60, move |x| row.eval(&int(x)));
        let vals: Vec<String> = (-2..=2)
            .map(|x| iterated_nabla1_binomial(4, (t.n() - i64::from(p)) as usize, &f, 4 * x).map(|v| format_rational(&v)))
            .collect::<Result<_>>()?;
        println!("  (nabla^1_4)^{} b(p={p},1,0) on 4*(-2..2): {vals:?}", t.n() - i64::from(p));
    }
    let other = CoeffTable::new(2, -4, 8, 1, 8);
    println!("seed 7 vs 8 at (1,0,0,4): {} vs {}", format_rational(&t.eval(1, 0, 0, 4)), format_rational(&other.eval(1, 0, 0, 4)));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
