// Polarizing homogeneous forms: the one-slot shortcut against the full
// multilinear expansion, and the blow-up closed form.

use swd_invariants::lattice::HClass;
use swd_invariants::manifold::example_xqn;
use swd_invariants::polyalg::{full_polarize, polarize_slot, FormPoly, Poly};
use swd_invariants::rational::{format_rational, int, rat};
use swd_invariants::Result;

pub fn run() -> Result<()> {
    // F = x0³ x1 − 2 x1² x2² on Q³
    let f = Poly::monomial(3, vec![3, 1, 0], int(1)).add(&Poly::monomial(3, vec![0, 2, 2], int(-2)));
    let e = HClass(vec![rat(1, 2), int(0), int(3)]);
    let h = HClass(vec![int(1), int(-1), rat(2, 3)]);
    let slot = polarize_slot(&f, &e, &h)?;
    let full = full_polarize(&f, &[e.clone(), h.clone(), h.clone(), h.clone()])?;
    println!("F = {f}\n  slot {}  full {}", format_rational(&slot), format_rational(&full));

    // ⟨K+e, ·⟩² ⟨Λ, ·⟩ on X_2(0) # CP²-bar, polarized against the exceptional class.
    let x = example_xqn(2, 0)?;
    let xt = x.blow_up()?;
    let lt = xt.lattice();
    let e_cls = lt.basis(x.lattice().rank());
    let k = x.named("K").cloned().expect("fixture").extend(1);
    let lam = (2 * &(x.named("f1").expect("fixture") + x.named("f2").expect("fixture"))).extend(1);
    let body = Poly::monomial(3, vec![2, 1, 0], int(1));
    let form = FormPoly::new(lt.clone(), vec![&k + &e_cls, lam], body)?;
    let h: HClass = HClass((0..x.lattice().rank() as i64).map(|i| rat(i % 4 - 1, 1 + i % 2)).collect());
    let v = polarize_slot(&form, &e_cls.to_h(), &h.extend(1))?;
    println!("blow-up slot value {}", format_rational(&v));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
