// Extract a single coefficient identity from the blown-up cobordism
// formula on X_q(n), then break the table and watch it fail.

use swd_invariants::invariants::blownup_identity_report;
use swd_invariants::polyalg::UniPoly;
use swd_invariants::rational::int;
use swd_invariants::verify::extraction_setup;
use swd_invariants::Result;

pub fn run() -> Result<()> {
    for (n, p, j, k, m) in [(3, 1, 0, 0, 0), (3, 2, 1, 0, 0), (4, 1, 0, 1, 1), (4, 3, 0, 0, 0)] {
        let (eq, t) = extraction_setup(2, n, p, j, k, m, 11);
        let rep = blownup_identity_report(&eq, &t)?;
        println!("{}", serde_json::to_string(&rep).expect("report serializes"));
    }
    let (eq, t) = extraction_setup(2, 3, 1, 0, 0, 0, 11);
    let bad = t.inject(1, 0, 0, UniPoly::new(vec![int(0), int(0), int(1)]));
    let rep = blownup_identity_report(&eq, &bad)?;
    println!("injected x^2: vanishes {} closed form {}", rep.vanishes, serde_json::to_value(&rep).expect("json")["closed_form"]);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
