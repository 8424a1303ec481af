use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polyalg::UniPoly;
use crate::rational::{factorial, int, pow2, Rational};

/// The coefficients b̃_{i,j,k}(χ_h, c₁², K·Λ, Λ², m) at fixed (χ_h, c₁², Λ², m).
///
/// With n = χ_h − c₁² − 3, rows i ≥ n take the known closed form. Rows
/// i < n are unknown; they are modelled as polynomials Σ_u β_u x^u of
/// degree ≤ n − 1 − i in x = K·Λ with β_u = 0 whenever u ≡ n + i (mod 2),
/// and the free β's are drawn deterministically from the seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    chi_h: i64,
    c1sq: i64,
    lam_sq: i64,
    m: u32,
    seed: u64,
    scale: Rational,
    overrides: BTreeMap<(u32, u32, u32), UniPoly>,
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl CoeffTable {
    pub fn new(chi_h: i64, c1sq: i64, lam_sq: i64, m: u32, seed: u64) -> CoeffTable {
        CoeffTable {
            chi_h,
            c1sq,
            lam_sq,
            m,
            seed,
            scale: int(1),
            overrides: BTreeMap::new(),
        }
    }

    /// Multiplies every modelled β by `s`; closed-form rows are untouched.
    pub fn with_scale(mut self, s: Rational) -> CoeffTable {
        self.scale = s;
        self
    }

    /// Replaces the modelled row (i, j, k) by an arbitrary polynomial in x,
    /// e.g. to plant a degree that violates the difference relation.
    pub fn inject(mut self, i: u32, j: u32, k: u32, poly: UniPoly) -> CoeffTable {
        self.overrides.insert((i, j, k), poly);
        self
    }

    pub fn chi_h(&self) -> i64 {
        self.chi_h
    }

    pub fn c1sq(&self) -> i64 {
        self.c1sq
    }

    pub fn lam_sq(&self) -> i64 {
        self.lam_sq
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// n = χ_h − c₁² − 3, the first row given in closed form.
    pub fn n(&self) -> i64 {
        self.chi_h - self.c1sq - 3
    }

    pub fn is_closed_form(&self, i: u32) -> bool {
        i64::from(i) >= self.n()
    }

    /// (A − 2m)!/(k!·i!)·2^{m−k−n} if j = 0, else 0, with A = i + j + 2k + 2m.
    pub fn closed_form(&self, i: u32, j: u32, k: u32) -> Rational {
        if j > 0 {
            return Rational::zero();
        }
        let top = factorial(i + 2 * k);
        Rational::new(top, factorial(k) * factorial(i))
            * pow2(i64::from(self.m) - i64::from(k) - self.n())
    }

    /// The model parameter β_{u,i,j,k}; zero on the forced parity class and
    /// above degree n − 1 − i.
    pub fn beta(&self, u: u32, i: u32, j: u32, k: u32) -> Rational {
        let n = self.n();
        let (u64_, i64_) = (i64::from(u), i64::from(i));
        if self.is_closed_form(i) || u64_ > n - 1 - i64_ || (u64_ - n - i64_).rem_euclid(2) == 0 {
            return Rational::zero();
        }
        let mut h = splitmix(self.seed);
        for part in [
            u64::from(u),
            u64::from(i),
            u64::from(j),
            u64::from(k),
            self.chi_h as u64,
            self.c1sq as u64,
            self.lam_sq as u64,
            u64::from(self.m),
        ] {
            h = splitmix(h ^ part);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(h);
        let num: i64 = rng.gen_range(1..=20) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let den: i64 = rng.gen_range(1..=9);
        Rational::new(num.into(), den.into()) * &self.scale
    }

    /// The row (i, j, k) as a polynomial in x = K·Λ (constant for closed-form rows).
    pub fn row(&self, i: u32, j: u32, k: u32) -> UniPoly {
        if self.is_closed_form(i) {
            return UniPoly::constant(self.closed_form(i, j, k));
        }
        if let Some(p) = self.overrides.get(&(i, j, k)) {
            return p.clone();
        }
        let top = (self.n() - 1 - i64::from(i)) as u32;
        UniPoly::new((0..=top).map(|u| self.beta(u, i, j, k)).collect())
    }

    /// b̃_{i,j,k}(x).
    pub fn eval(&self, i: u32, j: u32, k: u32, x: i64) -> Rational {
        if self.is_closed_form(i) {
            return self.closed_form(i, j, k);
        }
        self.row(i, j, k).eval(&int(x))
    }
}
