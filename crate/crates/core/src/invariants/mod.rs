//! Donaldson invariant evaluators: Witten's formula and the cobordism
//! formula with its coefficient table, plus the checks that tie them together.

mod checks;
mod cobordism;
mod coeffs;
mod extraction;
mod witten;

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::lattice::{Class, HClass};
use crate::manifold::FourManifold;

pub use checks::{
    blowup_consistency, blowup_consistency_check, compare_evaluators, km_multiplicativity_check,
    main_theorem_check, orientation_identity_check, scst_vanishing_sum, BlowupConsistency,
    MainTheoremReport, SeedValue,
};
pub use cobordism::{
    check_cobordism_conditions, cobordism_blown_terms, cobordism_invariant,
    cobordism_invariant_blown, BlownTerm,
};
pub use coeffs::CoeffTable;
pub use extraction::{
    blownup_identity_report, blownup_identity_sides, p_factor, verify_blownup_identity,
    ExtractionQuery, IdentityReport, IdentitySides,
};
pub use witten::{witten_form, witten_invariant, witten_sum};

/// Evaluation point D^w_X(h^{δ−2m} x^m).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantQuery {
    pub w: Class,
    pub delta: u32,
    pub m: u32,
    pub h: HClass,
}

impl InvariantQuery {
    pub fn new(w: Class, delta: u32, m: u32, h: HClass) -> InvariantQuery {
        InvariantQuery { w, delta, m, h }
    }

    /// δ − 2m, the power of h.
    pub fn h_power(&self) -> Result<u32> {
        self.delta.checked_sub(2 * self.m).ok_or_else(|| {
            Error::violated(
                "δ − 2m ≥ 0",
                format!("δ = {}, m = {}", self.delta, self.m),
            )
        })
    }

    pub(crate) fn check_dims(&self, x: &FourManifold) -> Result<()> {
        let r = x.lattice().rank();
        check_dim(r, self.w.len())?;
        check_dim(r, self.h.len())
    }
}

/// δ ≡ −w² − 3χ_h (mod 4), the degree condition for a nonzero invariant.
pub fn degree_admissible(chi_h: i64, w_sq: i64, delta: i64) -> bool {
    (delta + w_sq + 3 * chi_h).rem_euclid(4) == 0
}

pub(crate) fn require_simple_type(x: &FourManifold) -> Result<()> {
    if x.has_simple_type() {
        Ok(())
    } else {
        Err(Error::violated(
            "Seiberg-Witten simple type",
            "some basic class K has K² ≠ c₁²(X)",
        ))
    }
}

pub(crate) fn require_admissible(x: &FourManifold, q: &InvariantQuery) -> Result<()> {
    let w_sq = x.lattice().square(&q.w)?;
    if degree_admissible(x.chi_h(), w_sq, i64::from(q.delta)) {
        Ok(())
    } else {
        Err(Error::violated(
            "δ ≡ −w² − 3χ_h (mod 4)",
            format!("δ = {}, w² = {w_sq}, χ_h = {}", q.delta, x.chi_h()),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility_examples() {
        assert!(degree_admissible(2, -1, 3));
        for d in 0..12 {
            assert_eq!(degree_admissible(2, -1, d), degree_admissible(2, -1, d + 4));
        }
    }

    #[test]
    fn characteristic_w_admits_delta_congruent_to_c() {
        for (q, n) in [(2, 0), (2, 2), (3, 1), (3, 3)] {
            let x = crate::manifold::example_xqn(q, n).unwrap();
            let w = x.named("K").unwrap().clone();
            let w = (1..=n).fold(w, |acc, u| &acc + x.named(&format!("e{u}")).unwrap());
            let w_sq = x.lattice().square(&w).unwrap();
            for d in 0..16 {
                assert_eq!(
                    degree_admissible(x.chi_h(), w_sq, d),
                    (d - x.c()).rem_euclid(4) == 0
                );
            }
        }
    }

    #[test]
    fn h_power_gate() {
        let q = InvariantQuery::new(Class(vec![0]), 1, 1, HClass::zero(1));
        let err = q.h_power().unwrap_err();
        assert!(err.to_string().contains("δ − 2m ≥ 0"));
    }
}
