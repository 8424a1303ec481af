//! Difference operators ∇^q_p f(x) = f(x) + (−1)^q f(x+p) on integer-indexed
//! rational sequences, with explicit window bookkeeping.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::parity::Parity;
use crate::polyalg::UniPoly;
use crate::rational::{binomial, int, Rational};

/// A sequence Z → Q known on the closed window [lo, hi].
///
/// The closure must be pure; operators never extrapolate outside the window.
#[derive(Clone)]
pub struct SeqFn {
    f: Arc<dyn Fn(i64) -> Rational + Send + Sync>,
    lo: i64,
    hi: i64,
}

impl fmt::Debug for SeqFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SeqFn[{}, {}]", self.lo, self.hi)
    }
}

impl SeqFn {
    pub fn new(lo: i64, hi: i64, f: impl Fn(i64) -> Rational + Send + Sync + 'static) -> SeqFn {
        SeqFn {
            f: Arc::new(f),
            lo,
            hi,
        }
    }

    /// Backed by `values[t]` at x = lo + t.
    pub fn from_table(lo: i64, values: Vec<Rational>) -> SeqFn {
        let hi = lo + values.len() as i64 - 1;
        SeqFn::new(lo, hi, move |x| values[(x - lo) as usize].clone())
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn at(&self, x: i64) -> Result<Rational> {
        if !self.contains(x) {
            return Err(Error::Window {
                point: x,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok((self.f)(x))
    }
}

/// pa ∈ Z for a ∈ Z/2: 0 if a is even, p if a is odd.
pub fn z2_scale(a: Parity, p: i64) -> i64 {
    if a.is_odd() {
        p
    } else {
        0
    }
}

/// An element of (Z/2)ⁿ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Z2Vector(pub Vec<Parity>);

impl Z2Vector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// π_u, the projection to the u-th factor (0-based).
    pub fn pi(&self, u: usize) -> Parity {
        self.0[u]
    }

    /// All 2ⁿ elements, bit u of the enumeration index giving π_u.
    pub fn all(n: usize) -> impl Iterator<Item = Z2Vector> {
        (0u64..(1u64 << n))
            .map(move |bits| Z2Vector((0..n).map(|u| Parity::from((bits >> u & 1) as u8)).collect()))
    }

    /// Σ_u q_u·π_u(φ) in Z/2.
    pub fn dot(&self, q: &[Parity]) -> Parity {
        self.0
            .iter()
            .zip(q)
            .filter(|(a, _)| a.is_odd())
            .fold(Parity::EVEN, |acc, (_, &b)| acc + b)
    }

    /// Σ_u p_u·π_u(φ) in Z.
    pub fn scale_sum(&self, p: &[i64]) -> i64 {
        self.0.iter().zip(p).map(|(&a, &x)| z2_scale(a, x)).sum()
    }
}

/// ∇^q_p f.
pub fn nabla(q: Parity, p: i64, f: &SeqFn) -> SeqFn {
    let g = f.clone();
    let sign = int(q.sign());
    SeqFn {
        f: Arc::new(move |x| (g.f)(x) + &sign * (g.f)(x + p)),
        lo: f.lo - p.min(0),
        hi: f.hi - p.max(0),
    }
}

/// ∇^{q₁}_{p₁} ⋯ ∇^{qₙ}_{pₙ} f by composition.
pub fn nabla_chain(p: &[i64], q: &[Parity], f: &SeqFn) -> Result<SeqFn> {
    check_dim(p.len(), q.len())?;
    Ok(p.iter()
        .zip(q)
        .rev()
        .fold(f.clone(), |acc, (&pu, &qu)| nabla(qu, pu, &acc)))
}

/// Σ_{φ∈(Z/2)ⁿ} (−1)^{Σ q_u π_u(φ)} f(x + Σ p_u π_u(φ)), summed directly.
pub fn permutation_sum(f: &SeqFn, x: i64, p: &[i64], q: &[Parity]) -> Result<Rational> {
    check_dim(p.len(), q.len())?;
    let mut total = Rational::zero();
    for phi in Z2Vector::all(p.len()) {
        let v = f.at(x + phi.scale_sum(p))?;
        if phi.dot(q).is_odd() {
            total -= v;
        } else {
            total += v;
        }
    }
    Ok(total)
}

/// (∇¹_λ)ⁿ f by composition.
pub fn iterated_nabla1(lam: i64, n: usize, f: &SeqFn) -> SeqFn {
    (0..n).fold(f.clone(), |acc, _| nabla(Parity::ODD, lam, &acc))
}

/// (∇¹_λ)ⁿ f(x) = Σ_i (−1)^i C(n,i) f(x + iλ).
pub fn iterated_nabla1_binomial(lam: i64, n: usize, f: &SeqFn, x: i64) -> Result<Rational> {
    let mut total = Rational::zero();
    for i in 0..=n {
        let term = Rational::from_integer(binomial(n as u32, i as u32)) * f.at(x + i as i64 * lam)?;
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// Recovers p with p(x) = f(λx), from samples `samples[t] = f(tλ)` for
/// t = 0..=m, given that (∇¹_λ)ⁿ f vanishes on the grid.
///
/// The kernel condition is checked at every grid point where it is
/// computable; the first failure is reported with its witness x = tλ.
/// Requires m ≥ 2n. The result has degree ≤ n − 1.
pub fn poly_from_kernel(lam: i64, n: usize, samples: &[Rational]) -> Result<UniPoly> {
    if lam == 0 {
        return Err(Error::violated("λ ≠ 0", "λ = 0"));
    }
    let m = samples.len().saturating_sub(1);
    if samples.is_empty() || m < 2 * n {
        return Err(Error::violated(
            "at least 2n + 1 samples",
            format!("n = {n}, {} samples", samples.len()),
        ));
    }
    let f = SeqFn::from_table(0, samples.to_vec());
    for t in 0..=(m - n) {
        let v = iterated_nabla1_binomial(1, n, &f, t as i64)?;
        if !v.is_zero() {
            return Err(Error::KernelViolated {
                witness: t as i64 * lam,
                value: crate::rational::format_rational(&v),
            });
        }
    }
    // Newton forward differences: g(x) = Σ_{r<n} Δ^r g(0) · C(x, r).
    let mut diffs = samples.to_vec();
    let mut out = UniPoly::default();
    let mut falling = UniPoly::constant(int(1));
    for r in 0..n {
        out = out.add(&falling.scale(&diffs[0]));
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        // C(x, r+1) = C(x, r)·(x − r)/(r + 1)
        falling = falling
            .mul(&UniPoly::linear(int(-(r as i64)), int(1)))
            .scale(&Rational::new(1.into(), (r as i64 + 1).into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn square() -> SeqFn {
        SeqFn::new(-50, 50, |x| int(x * x))
    }

    #[test]
    fn nabla_examples() {
        let c = SeqFn::new(-10, 10, |_| int(7));
        let z = nabla(Parity::ODD, 3, &c);
        assert_eq!(z.at(0).unwrap(), int(0));
        assert_eq!(nabla(Parity::EVEN, 3, &c).at(2).unwrap(), int(14));
        let d = nabla(Parity::ODD, 2, &square());
        for x in -10..10 {
            assert_eq!(d.at(x).unwrap(), int(-4 * x - 4));
        }
    }

    #[test]
    fn windows_shrink_and_error() {
        let f = SeqFn::new(0, 10, |x| int(x));
        let g = nabla(Parity::ODD, 4, &f);
        assert_eq!(g.window(), (0, 6));
        assert!(matches!(g.at(7), Err(Error::Window { point: 7, .. })));
        let g = nabla(Parity::ODD, -4, &f);
        assert_eq!(g.window(), (4, 10));
    }

    #[test]
    fn z2_scale_examples() {
        assert_eq!(z2_scale(Parity::EVEN, 5), 0);
        assert_eq!(z2_scale(Parity::ODD, 5), 5);
        assert_eq!(z2_scale(Parity::ODD, 0), 0);
    }

    #[test]
    fn permutation_sum_examples() {
        let f = SeqFn::new(-10, 10, |x| int(3 * x + 1));
        assert_eq!(
            permutation_sum(&f, 2, &[3], &[Parity::ODD]).unwrap(),
            f.at(2).unwrap() - f.at(5).unwrap()
        );
        let c = SeqFn::new(-10, 10, |_| rat(5, 2));
        let p = [1, 2, 3];
        assert_eq!(permutation_sum(&c, 0, &p, &[Parity::EVEN; 3]).unwrap(), int(20));
        let lin = SeqFn::new(-10, 10, int);
        assert_eq!(permutation_sum(&lin, 0, &[1, 1], &[Parity::ODD; 2]).unwrap(), int(0));
        assert!(permutation_sum(&lin, 9, &[1, 1], &[Parity::ODD; 2]).is_err());
    }

    #[test]
    fn iterated_examples() {
        let f = square();
        assert_eq!(iterated_nabla1(2, 0, &f).at(3).unwrap(), int(9));
        for x in -5..5 {
            assert_eq!(iterated_nabla1(2, 2, &f).at(x).unwrap(), int(8));
            assert_eq!(iterated_nabla1_binomial(2, 2, &f, x).unwrap(), int(8));
            assert_eq!(iterated_nabla1(3, 3, &f).at(x).unwrap(), int(0));
        }
    }

    #[test]
    fn reconstruction_examples() {
        // n = 1: constant on λZ.
        let p = poly_from_kernel(4, 1, &vec![int(3); 5]).unwrap();
        assert_eq!(p, UniPoly::constant(int(3)));
        // f(λx) = x² − x
        let samples: Vec<Rational> = (0..=6).map(|x| int(x * x - x)).collect();
        let p = poly_from_kernel(2, 3, &samples).unwrap();
        assert_eq!(p.coeffs(), &[int(0), int(-1), int(1)]);
        // f(λx) = 2^x
        let samples: Vec<Rational> = (0..=4).map(|x| int(1 << x)).collect();
        match poly_from_kernel(2, 2, &samples) {
            Err(Error::KernelViolated { witness, value }) => {
                assert_eq!(witness, 0);
                assert_eq!(value, "1/1");
            }
            other => panic!("expected kernel violation, got {other:?}"),
        }
        assert!(poly_from_kernel(2, 3, &samples).is_err());
        assert_eq!(poly_from_kernel(1, 0, &[int(0)]).unwrap(), UniPoly::default());
    }
}
