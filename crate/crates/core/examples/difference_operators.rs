// Difference operators on sampled sequences: chains, the binomial route,
// and recovering a polynomial from its kernel condition.

use swd_invariants::diffops::{
    iterated_nabla1, iterated_nabla1_binomial, nabla_chain, permutation_sum, poly_from_kernel, SeqFn,
};
use swd_invariants::polyalg::UniPoly;
use swd_invariants::rational::{format_rational, int, rat};
use swd_invariants::{Parity, Result};

pub fn run() -> Result<()> {
    let f = SeqFn::new(-40, 40, |x| rat(x * x * x - 2 * x, 3));
    let p = [2, -1, 3];
    let q = [Parity::EVEN, Parity::ODD, Parity::EVEN];
    let chain = nabla_chain(&p, &q, &f)?;
    println!("chain window {:?}", chain.window());
    for x in [-3, 0, 5] {
        println!(
            "  x={x}: chain {} permutation sum {}",
            format_rational(&chain.at(x)?),
            format_rational(&permutation_sum(&f, x, &p, &q)?)
        );
    }

    // (∇¹_4)³ kills quadratics only up to sign: ∇¹ is a sum, not a difference.
    let g = iterated_nabla1(4, 3, &f);
    println!("(nabla^1_4)^3 f(0) = {} = {}", format_rational(&g.at(0)?), format_rational(&iterated_nabla1_binomial(4, 3, &f, 0)?));

    // Samples of 1 - x + x²/2 at 0..=6 and the kernel of (∇¹_2)³.
    let poly = UniPoly::new(vec![int(1), int(-1), rat(1, 2)]);
    let samples: Vec<_> = (0..=6).map(|t| poly.eval(&int(t))).collect();
    println!("recovered {}", poly_from_kernel(2, 3, &samples)?);
    println!("{}", poly_from_kernel(2, 2, &samples).unwrap_err());

    // Window bookkeeping is exact: the chain shrinks the domain.
    println!("{}", chain.at(40).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run()
}
