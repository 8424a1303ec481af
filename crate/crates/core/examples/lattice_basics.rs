// Build a few unimodular lattices, read off their invariants and
// evaluate pairings between integral classes and rational homology.

use swd_invariants::lattice::{Class, HClass, Lattice};
use swd_invariants::rational::{format_rational, rat};
use swd_invariants::Result;

pub fn run() -> Result<()> {
    // H ⊕ ⟨1⟩ ⊕ ⟨−1⟩³
    let l = Lattice::hyperbolic().direct_sum(&Lattice::diagonal(&[1, -1, -1, -1])?);
    let (bp, bm) = l.signature()?;
    println!("rank {} b+ {bp} b- {bm} sigma {} odd {}", l.rank(), l.sigma(), l.is_odd());

    let k = Class(vec![0, 0, 1, 1, 1, 1]);
    let w = Class(vec![1, 2, 1, 3, -1, 1]);
    println!("K characteristic: {}", l.is_characteristic(&k));
    println!("K^2 = {} (≡ σ mod 8: {})", l.square(&k)?, (l.square(&k)? - l.sigma()) % 8 == 0);
    println!("eps(w, K) = {}", l.eps(&w, &k)?);

    let h = HClass(vec![rat(1, 2), rat(-1, 3), rat(2, 1), rat(0, 1), rat(1, 1), rat(-5, 4)]);
    println!("<K, h> = {}", format_rational(&l.eval(&k, &h)?));
    println!("Q(h)   = {}", format_rational(&l.qform(&h)?));

    // Non-symmetric and non-unimodular grams are rejected.
    println!("{:?}", Lattice::new(vec![vec![1, 1], vec![0, -1]]).unwrap_err());
    println!("{}", Lattice::diagonal(&[2, 1]).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
