use num_traits::Zero;

use super::{degree_admissible, InvariantQuery};
use crate::error::{check_dim, Error, Result};
use crate::invariants::CoeffTable;
use crate::lattice::{Class, Lattice};
use crate::manifold::{nu, FourManifold};
use crate::rational::{int, Rational};

/// The cobordism hypotheses on (w, Λ, δ, m): w − Λ characteristic,
/// I(Λ) = Λ² + c + 4χ_h > δ, δ ≡ −w² − 3χ_h (mod 4) and δ − 2m ≥ 0.
pub fn check_cobordism_conditions(
    x: &FourManifold,
    w: &Class,
    lam: &Class,
    delta: u32,
    m: u32,
) -> Result<()> {
    check_conditions_on(x.lattice(), x.c(), x.chi_h(), w, lam, delta, m)
}

fn check_conditions_on(
    l: &Lattice,
    c: i64,
    chi_h: i64,
    w: &Class,
    lam: &Class,
    delta: u32,
    m: u32,
) -> Result<()> {
    check_dim(l.rank(), w.len())?;
    check_dim(l.rank(), lam.len())?;
    if !l.is_characteristic(&(w - lam)) {
        return Err(Error::violated(
            "w − Λ characteristic",
            format!("w − Λ = {:?}", (w - lam).0),
        ));
    }
    let i_lam = l.square(lam)? + c + 4 * chi_h;
    if i_lam <= i64::from(delta) {
        return Err(Error::violated(
            "I(Λ) = Λ² + c + 4χ_h > δ",
            format!("I(Λ) = {i_lam}, δ = {delta}"),
        ));
    }
    let w_sq = l.square(w)?;
    if !degree_admissible(chi_h, w_sq, i64::from(delta)) {
        return Err(Error::violated(
            "δ ≡ −w² − 3χ_h (mod 4)",
            format!("δ = {delta}, w² = {w_sq}, χ_h = {chi_h}"),
        ));
    }
    if delta < 2 * m {
        return Err(Error::violated(
            "δ − 2m ≥ 0",
            format!("δ = {delta}, m = {m}"),
        ));
    }
    Ok(())
}

fn check_table(t: &CoeffTable, chi_h: i64, c1sq: i64, lam_sq: i64, m: u32) -> Result<()> {
    if (t.chi_h(), t.c1sq(), t.lam_sq(), t.m()) != (chi_h, c1sq, lam_sq, m) {
        return Err(Error::violated(
            "coefficient table built at (χ_h, c₁², Λ², m)",
            format!(
                "table at ({}, {}, {}, {}), expected ({chi_h}, {c1sq}, {lam_sq}, {m})",
                t.chi_h(),
                t.c1sq(),
                t.lam_sq(),
                t.m()
            ),
        ));
    }
    Ok(())
}

/// Triples (i, j, k) with i + j + 2k = d.
fn index_triples(d: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    (0..=d / 2).flat_map(move |k| (0..=d - 2 * k).map(move |j| (d - 2 * k - j, j, k)))
}

/// The cobordism formula on X itself: the sum over K ∈ B'(X) and
/// i + j + 2k = δ − 2m of ν(K)(−1)^{ε(w,K)} SW'(K) b̃_{i,j,k}(K·Λ)
/// ⟨K,h⟩^i ⟨Λ,h⟩^j Q(h)^k, with the table at (χ_h, c₁², Λ², m).
pub fn cobordism_invariant(
    x: &FourManifold,
    q: &InvariantQuery,
    lam: &Class,
    t: &CoeffTable,
) -> Result<Rational> {
    q.check_dims(x)?;
    check_cobordism_conditions(x, &q.w, lam, q.delta, q.m)?;
    let l = x.lattice();
    check_table(t, x.chi_h(), x.c1sq(), l.square(lam)?, q.m)?;
    let d = q.h_power()?;
    let lh = l.eval(lam, &q.h)?;
    let qh = l.qform(&q.h)?;
    let mut total = Rational::zero();
    for k_class in x.fundamental_domain() {
        let s = l.eps(&q.w, &k_class)?.sign() * x.sw().get(&k_class);
        let weight = nu(&k_class) * int(s);
        let kl = l.pair(&k_class, lam)?;
        let kh = l.eval(&k_class, &q.h)?;
        for (i, j, k) in index_triples(d) {
            let b = t.eval(i, j, k, kl);
            if b.is_zero() {
                continue;
            }
            total += &weight
                * b
                * num_traits::pow(kh.clone(), i as usize)
                * num_traits::pow(lh.clone(), j as usize)
                * num_traits::pow(qh.clone(), k as usize);
        }
    }
    Ok(total)
}

/// One summand of the blown-up cobordism formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlownTerm {
    pub class: Class,
    pub i: u32,
    pub j: u32,
    pub k: u32,
    /// b̃_{i+1,j,k}(K·Λ) at (χ_h, c₁² − 1, Λ², m).
    pub coefficient: Rational,
    pub value: Rational,
}

/// The summands of the cobordism formula computed through one blow-up:
/// (−1)^{ε(w,K)} SW'(K) · 2(i+1)/(δ−2m+1) · b̃_{i+1,j,k}(K·Λ) ⟨K,h⟩^i ⟨Λ,h⟩^j Q(h)^k
/// for K ∈ B'(X) and i + j + 2k = δ − 2m. The table must be at c₁²(X) − 1
/// and row i = 0 is never read.
pub fn cobordism_blown_terms(
    x: &FourManifold,
    q: &InvariantQuery,
    lam: &Class,
    t: &CoeffTable,
) -> Result<Vec<BlownTerm>> {
    q.check_dims(x)?;
    check_dim(x.lattice().rank(), lam.len())?;
    if x.contains_zero_class() {
        return Err(Error::violated(
            "0 ∉ B(X)",
            "the blown-up formula carries no ν(K) weight",
        ));
    }
    // Hypotheses for (w + e*, Λ, δ + 1, m) on the blow-up.
    let l = x.lattice();
    let lt = l.direct_sum(&Lattice::diagonal(&[-1]).expect("⟨−1⟩ is unimodular"));
    let e_star = lt.basis(l.rank());
    let wt = &q.w.extend(1) + &e_star;
    check_conditions_on(&lt, x.c() + 1, x.chi_h(), &wt, &lam.extend(1), q.delta + 1, q.m)?;
    check_table(t, x.chi_h(), x.c1sq() - 1, l.square(lam)?, q.m)?;

    let d = q.h_power()?;
    let lh = l.eval(lam, &q.h)?;
    let qh = l.qform(&q.h)?;
    let mut terms = Vec::new();
    for k_class in x.fundamental_domain() {
        let s = int(l.eps(&q.w, &k_class)?.sign() * x.sw().get(&k_class));
        let kl = l.pair(&k_class, lam)?;
        let kh = l.eval(&k_class, &q.h)?;
        for (i, j, k) in index_triples(d) {
            let b = t.eval(i + 1, j, k, kl);
            let factor = Rational::new((2 * (i + 1)).into(), (d + 1).into());
            let value = &s
                * factor
                * &b
                * num_traits::pow(kh.clone(), i as usize)
                * num_traits::pow(lh.clone(), j as usize)
                * num_traits::pow(qh.clone(), k as usize);
            terms.push(BlownTerm {
                class: k_class.clone(),
                i,
                j,
                k,
                coefficient: b,
                value,
            });
        }
    }
    Ok(terms)
}

pub fn cobordism_invariant_blown(
    x: &FourManifold,
    q: &InvariantQuery,
    lam: &Class,
    t: &CoeffTable,
) -> Result<Rational> {
    Ok(cobordism_blown_terms(x, q, lam, t)?
        .into_iter()
        .map(|term| term.value)
        .sum())
}
