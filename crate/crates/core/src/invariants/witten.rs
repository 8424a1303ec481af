use num_traits::Zero;

use super::{require_admissible, require_simple_type, InvariantQuery};
use crate::error::Result;
use crate::lattice::Class;
use crate::manifold::{nu, FourManifold};
use crate::polyalg::{FormPoly, Poly};
use crate::rational::{factorial, int, pow2, Rational};

/// (δ−2m)!/(2^{k+c−3−m}·k!·i!) with i = d − 2k.
pub(super) fn coefficient(d: u32, k: u32, c: i64, m: u32) -> Rational {
    let i = d - 2 * k;
    Rational::new(factorial(d), factorial(k) * factorial(i))
        * pow2(3 + i64::from(m) - c - i64::from(k))
}

/// ν(K)·(−1)^{ε(w,K)}·SW'(K) for each K ∈ B'(X).
fn signed_weights(x: &FourManifold, w: &Class) -> Result<Vec<(Class, Rational)>> {
    x.fundamental_domain()
        .into_iter()
        .map(|k| {
            let s = x.lattice().eps(w, &k)?.sign() * x.sw().get(&k);
            let weight = nu(&k) * int(s);
            Ok((k, weight))
        })
        .collect()
}

/// The sum of Witten's formula without the degree-parity gate.
pub fn witten_sum(x: &FourManifold, q: &InvariantQuery) -> Result<Rational> {
    require_simple_type(x)?;
    q.check_dims(x)?;
    let d = q.h_power()?;
    let qh = x.lattice().qform(&q.h)?;
    let c = x.c();
    let mut total = Rational::zero();
    for (k_class, weight) in signed_weights(x, &q.w)? {
        let a = x.lattice().eval(&k_class, &q.h)?;
        let mut inner = Rational::zero();
        for k in 0..=d / 2 {
            let i = d - 2 * k;
            inner += coefficient(d, k, c, q.m) * num_traits::pow(a.clone(), i as usize)
                * num_traits::pow(qh.clone(), k as usize);
        }
        total += weight * inner;
    }
    Ok(total)
}

/// D^w_X(h^{δ−2m} x^m) by Witten's formula: zero unless
/// δ ≡ −w² − 3χ_h (mod 4), otherwise the sum over K ∈ B'(X) and i + 2k = δ − 2m.
pub fn witten_invariant(x: &FourManifold, q: &InvariantQuery) -> Result<Rational> {
    require_simple_type(x)?;
    q.check_dims(x)?;
    q.h_power()?;
    if require_admissible(x, q).is_err() {
        return Ok(Rational::zero());
    }
    witten_sum(x, q)
}

/// h ↦ D^w_X(h^{δ−2m} x^m) as a polynomial in {⟨K,·⟩ : K ∈ B'(X)} and Q_X.
pub fn witten_form(x: &FourManifold, w: &Class, delta: u32, m: u32) -> Result<FormPoly> {
    require_simple_type(x)?;
    let q = InvariantQuery::new(w.clone(), delta, m, crate::lattice::HClass::zero(x.lattice().rank()));
    q.check_dims(x)?;
    let d = q.h_power()?;
    let weights = signed_weights(x, w)?;
    let gens: Vec<Class> = weights.iter().map(|(k, _)| k.clone()).collect();
    let nv = gens.len() + 1;
    let mut body = Poly::zero(nv);
    if require_admissible(x, &q).is_ok() {
        for (g, (_, weight)) in weights.iter().enumerate() {
            for k in 0..=d / 2 {
                let mut e = vec![0; nv];
                e[g] = d - 2 * k;
                e[nv - 1] = k;
                body = body.add(&Poly::monomial(nv, e, coefficient(d, k, x.c(), m) * weight));
            }
        }
    }
    FormPoly::new(x.lattice().clone(), gens, body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::HClass;
    use crate::manifold::{example_xq, SwTable};
    use crate::polyalg::HomogeneousForm;
    use crate::rational::rat;

    fn generic_h(rank: usize) -> HClass {
        HClass((0..rank).map(|i| rat(i as i64 % 5 - 2, 1 + (i as i64 % 3))).collect())
    }

    #[test]
    fn empty_table_gives_zero() {
        let fx = example_xq(2).unwrap();
        let x = fx.manifold.with_sw(SwTable::new()).unwrap();
        let q = InvariantQuery::new(fx.k.clone(), 4, 1, generic_h(23));
        assert_eq!(witten_invariant(&x, &q).unwrap(), int(0));
    }

    #[test]
    fn single_term_when_delta_is_2m() {
        // c = 3: δ ≡ 3 (mod 4) for characteristic w; δ = 2m forces i = k = 0.
        let fx = example_xq(2).unwrap();
        let x = &fx.manifold;
        let w = fx.k.clone();
        for m in [0u32, 2] {
            let delta = 2 * m;
            let q = InvariantQuery::new(w.clone(), delta, m, generic_h(23));
            let eps = x.lattice().eps(&w, &fx.k).unwrap().sign();
            let expected = if super::super::degree_admissible(2, x.lattice().square(&w).unwrap(), i64::from(delta)) {
                int(eps) * pow2(i64::from(m))
            } else {
                int(0)
            };
            assert_eq!(witten_invariant(x, &q).unwrap(), expected);
        }
        // δ = 2m is admissible only for non-characteristic w here.
        for (w, m, expected) in [(&fx.f1 + &fx.f2, 0u32, -1i64), (&(2 * &fx.f1) + &fx.f2, 1, 2)] {
            let w_sq = x.lattice().square(&w).unwrap();
            assert!(super::super::degree_admissible(2, w_sq, i64::from(2 * m)));
            let q = InvariantQuery::new(w, 2 * m, m, generic_h(23));
            assert_eq!(witten_invariant(x, &q).unwrap(), int(expected));
        }
    }

    #[test]
    fn linear_in_sw_values() {
        let fx = example_xq(3).unwrap();
        let x = &fx.manifold;
        let doubled = x.with_sw(x.sw().scaled(2)).unwrap();
        let q = InvariantQuery::new(fx.k.clone(), 7, 1, generic_h(x.lattice().rank()));
        let a = witten_invariant(x, &q).unwrap();
        assert!(!a.is_zero());
        assert_eq!(witten_invariant(&doubled, &q).unwrap(), a * int(2));
    }

    #[test]
    fn form_agrees_with_direct_sum() {
        let x = crate::manifold::example_xqn(2, 1).unwrap();
        let w = x.named("K0").unwrap().clone();
        let h = generic_h(x.lattice().rank());
        for delta in 0..9u32 {
            for m in 0..=delta / 2 {
                let f = witten_form(&x, &w, delta, m).unwrap();
                let q = InvariantQuery::new(w.clone(), delta, m, h.clone());
                assert_eq!(f.value(&h).unwrap(), witten_invariant(&x, &q).unwrap());
            }
        }
    }
}
