// Witten's formula against the cobordism formula computed through one
// blow-up, on the X_q(n) fixtures, for several coefficient-table seeds.

use swd_invariants::invariants::{compare_evaluators, main_theorem_check, InvariantQuery};
use swd_invariants::lattice::{Class, HClass};
use swd_invariants::manifold::{example_xqn, FourManifold};
use swd_invariants::rational::{format_rational, rat};
use swd_invariants::verify::non_scst_counterfixture;
use swd_invariants::Result;

fn lam_of(x: &FourManifold) -> Class {
    2 * &(x.named("f1").expect("fixture") + x.named("f2").expect("fixture"))
}

pub fn run() -> Result<()> {
    let seeds = [0, 1, 2, 3, 4];
    for (q, n) in [(2, 2), (3, 2), (2, 3)] {
        let x = example_xqn(q, n)?;
        let w = x.named("K0").cloned().expect("fixture");
        let lam = lam_of(&x);
        let h = HClass((0..x.lattice().rank() as i64).map(|i| rat((3 * i) % 7 - 3, 1 + i % 4)).collect());
        println!("X_{q}({n}), c = {}", x.c());
        for delta in (x.c() as u32..=10).step_by(4) {
            for m in 0..=1 {
                let rep = main_theorem_check(&x, &InvariantQuery::new(w.clone(), delta, m, h.clone()), &lam, &seeds)?;
                println!(
                    "  delta {delta:>2} m {m}: witten {:>14}  equal {}  seed independent {}",
                    format_rational(&rep.witten),
                    rep.equal,
                    rep.seed_independent
                );
            }
        }
    }

    // A Λ with K·Λ ≡ 2 (mod 4) is turned away by the gate.
    let x = example_xqn(2, 2)?;
    let w = x.named("K0").cloned().expect("fixture");
    let h = HClass((0..x.lattice().rank() as i64).map(|i| rat((3 * i) % 7 - 3, 1 + i % 4)).collect());
    let q = InvariantQuery::new(w, 5, 1, h);
    let bad = &lam_of(&x) + &(2 * x.named("e1").expect("fixture"));
    println!("gated: {}", main_theorem_check(&x, &q, &bad, &seeds).unwrap_err());

    // Without superconformal simple type the seeds disagree with each other.
    let (y, k0) = non_scst_counterfixture()?;
    let q = InvariantQuery { w: k0, ..q };
    println!("non-SCST gated: {}", main_theorem_check(&y, &q, &lam_of(&y), &seeds).unwrap_err());
    let rep = compare_evaluators(&y, &q, &lam_of(&y), &seeds)?;
    let values: Vec<String> = rep.cobordism.iter().map(|s| format_rational(&s.value)).collect();
    println!("non-SCST ungated: witten {} cobordism {values:?}", format_rational(&rep.witten));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
