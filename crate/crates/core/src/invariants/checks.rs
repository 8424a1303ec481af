use num_traits::Zero;
use serde::Serialize;

use super::{
    cobordism_invariant_blown, require_admissible, require_simple_type, witten_form,
    witten_invariant, CoeffTable, InvariantQuery,
};
use crate::error::{check_dim, Error, Result};
use crate::lattice::{Class, HClass, Lattice};
use crate::manifold::FourManifold;
use crate::parity::Parity;
use crate::polyalg::polarize_slot;
use crate::rational::{int, serde_rational, Rational};

/// Compares ½(2w² − σ + (w−Λ)·K) with ε(w,K) − ½(Λ² + Λ·K) mod 2, for
/// w − Λ and K characteristic.
pub fn orientation_identity_check(l: &Lattice, w: &Class, lam: &Class, k: &Class) -> Result<bool> {
    check_dim(l.rank(), w.len())?;
    check_dim(l.rank(), lam.len())?;
    check_dim(l.rank(), k.len())?;
    let wl = w - lam;
    if !l.is_characteristic(&wl) {
        return Err(Error::violated(
            "w − Λ characteristic",
            format!("w − Λ = {:?}", wl.0),
        ));
    }
    if !l.is_characteristic(k) {
        return Err(Error::NotCharacteristic(k.0.clone()));
    }
    let w_sq = l.square(w)?;
    let left = 2 * w_sq - l.sigma() + l.pair(&wl, k)?;
    debug_assert_eq!(left.rem_euclid(2), 0);
    let right = l.eps(w, k)? - Parity::of((l.square(lam)? + l.pair(lam, k)?) / 2);
    Ok(Parity::of(left / 2) == right)
}

/// Σ_{K∈B'(X)} (−1)^{ε(w,K)} SW'(K) ⟨K,h₁⟩^j ⟨K,h₂⟩^u, for w characteristic,
/// 0 ∉ B(X), j + u < c(X) − 3 and j + u ≡ c(X) (mod 2).
pub fn scst_vanishing_sum(
    x: &FourManifold,
    w: &Class,
    j: u32,
    u: u32,
    h1: &HClass,
    h2: &HClass,
) -> Result<Rational> {
    let l = x.lattice();
    check_dim(l.rank(), w.len())?;
    check_dim(l.rank(), h1.len())?;
    check_dim(l.rank(), h2.len())?;
    if !l.is_characteristic(w) {
        return Err(Error::NotCharacteristic(w.0.clone()));
    }
    if x.contains_zero_class() {
        return Err(Error::violated("0 ∉ B(X)", "the zero class is basic"));
    }
    let (s, c) = (i64::from(j + u), x.c());
    if s >= c - 3 {
        return Err(Error::violated(
            "j + u < c(X) − 3",
            format!("j + u = {s}, c = {c}"),
        ));
    }
    if (s - c).rem_euclid(2) != 0 {
        return Err(Error::violated(
            "j + u ≡ c(X) (mod 2)",
            format!("j + u = {s}, c = {c}"),
        ));
    }
    let mut total = Rational::zero();
    for k in x.fundamental_domain() {
        let sign = l.eps(w, &k)?.sign() * x.sw().get(&k);
        total += int(sign)
            * num_traits::pow(l.eval(&k, h1)?, j as usize)
            * num_traits::pow(l.eval(&k, h2)?, u as usize);
    }
    Ok(total)
}

/// D^w_X(h^{δ−2m}x^m) and D^{w̃}_{X̃}(h^{δ−2m} e x^m) with w̃ = w + e*.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupConsistency {
    pub lhs: Rational,
    pub rhs: Rational,
}

pub fn blowup_consistency(x: &FourManifold, q: &InvariantQuery) -> Result<BlowupConsistency> {
    require_simple_type(x)?;
    q.check_dims(x)?;
    q.h_power()?;
    require_admissible(x, q)?;
    let lhs = witten_invariant(x, q)?;
    let xt = x.blow_up()?;
    let r = x.lattice().rank();
    let e_star = xt.lattice().basis(r);
    let wt = &q.w.extend(1) + &e_star;
    let form = witten_form(&xt, &wt, q.delta + 1, q.m)?;
    let rhs = polarize_slot(&form, &e_star.to_h(), &q.h.extend(1))?;
    Ok(BlowupConsistency { lhs, rhs })
}

pub fn blowup_consistency_check(x: &FourManifold, q: &InvariantQuery) -> Result<bool> {
    let b = blowup_consistency(x, q)?;
    Ok(b.lhs == b.rhs)
}

/// D^w_X(h^{δ−2m} x^{m+2}) = 4·D^w_X(h^{δ−2m} x^m), both sides by Witten's formula.
pub fn km_multiplicativity_check(
    x: &FourManifold,
    w: &Class,
    delta: u32,
    m: u32,
    h: &HClass,
) -> Result<bool> {
    let base = InvariantQuery::new(w.clone(), delta, m, h.clone());
    let raised = InvariantQuery::new(w.clone(), delta + 4, m + 2, h.clone());
    Ok(witten_invariant(x, &raised)? == int(4) * witten_invariant(x, &base)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedValue {
    pub seed: u64,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportQuery {
    #[serde(flatten)]
    pub invariant: InvariantQuery,
    pub lambda: Class,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainTheoremReport {
    pub query: ReportQuery,
    #[serde(with = "serde_rational")]
    pub witten: Rational,
    pub cobordism: Vec<SeedValue>,
    /// Every seed's cobordism value equals the Witten value.
    pub equal: bool,
    pub seed_independent: bool,
}

/// Witten's value against the blown-up cobordism value for each seed, with
/// only the evaluators' own preconditions.
pub fn compare_evaluators(
    x: &FourManifold,
    q: &InvariantQuery,
    lam: &Class,
    seeds: &[u64],
) -> Result<MainTheoremReport> {
    let witten = witten_invariant(x, q)?;
    let lam_sq = x.lattice().square(lam)?;
    let mut cobordism = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let t = CoeffTable::new(x.chi_h(), x.c1sq() - 1, lam_sq, q.m, seed);
        cobordism.push(SeedValue {
            seed,
            value: cobordism_invariant_blown(x, q, lam, &t)?,
        });
    }
    let equal = cobordism.iter().all(|s| s.value == witten);
    let seed_independent = cobordism.windows(2).all(|p| p[0].value == p[1].value);
    Ok(MainTheoremReport {
        query: ReportQuery {
            invariant: q.clone(),
            lambda: lam.clone(),
        },
        witten,
        cobordism,
        equal,
        seed_independent,
    })
}

/// The end-to-end check: gates every hypothesis of the theorem, then
/// compares the evaluators across seeds.
pub fn main_theorem_check(
    x: &FourManifold,
    q: &InvariantQuery,
    lam: &Class,
    seeds: &[u64],
) -> Result<MainTheoremReport> {
    require_simple_type(x)?;
    q.check_dims(x)?;
    let l = x.lattice();
    check_dim(l.rank(), lam.len())?;
    if !l.is_characteristic(&q.w) {
        return Err(Error::NotCharacteristic(q.w.0.clone()));
    }
    if !x.is_scst(&q.w)? {
        return Err(Error::violated(
            "superconformal simple type",
            "some signed Seiberg-Witten power sum of degree ≤ c(X) − 4 is nonzero",
        ));
    }
    if x.c() < 5 {
        return Err(Error::violated("c(X) ≥ 5", format!("c = {}", x.c())));
    }
    if x.contains_zero_class() {
        return Err(Error::violated("0 ∉ B(X)", "the zero class is basic"));
    }
    if !l.is_odd() {
        return Err(Error::violated("Q_X odd", "the intersection form is even"));
    }
    if lam.0.iter().any(|v| v % 2 != 0) {
        return Err(Error::violated(
            "Λ = 2b·Λ₀",
            format!("Λ = {:?} is not divisible by 2", lam.0),
        ));
    }
    let basic = x.basic_classes();
    let mut pairings = Vec::with_capacity(basic.len());
    for k in &basic {
        pairings.push(l.pair(k, lam)?);
    }
    if let Some(v) = pairings.iter().find(|v| v.rem_euclid(4) != 0) {
        return Err(Error::violated(
            "K·Λ ≡ 0 (mod 4) for all K ∈ B(X)",
            format!("K·Λ = {v}"),
        ));
    }
    if !basic.is_empty() && !pairings.contains(&0) {
        return Err(Error::violated(
            "K₀·Λ = 0 for some K₀ ∈ B(X)",
            format!("pairings {pairings:?}"),
        ));
    }
    require_admissible(x, q)?;
    compare_evaluators(x, q, lam, seeds)
}
