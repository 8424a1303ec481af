//! Lattice-level model of a standard four-manifold: intersection lattice,
//! Seiberg-Witten table, characteristic numbers, blow-ups, and the model
//! family X_q(n) used as fixtures throughout.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::lattice::{Class, Lattice};
use crate::rational::{int, rat, Rational};

/// SW'_X: characteristic classes with nonzero Seiberg-Witten value.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SwTable {
    entries: BTreeMap<Class, i64>,
}

impl SwTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Zero values are dropped, so the keys are exactly B(X).
    pub fn insert(&mut self, k: Class, value: i64) {
        if value == 0 {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, value);
        }
    }

    pub fn get(&self, k: &Class) -> i64 {
        self.entries.get(k).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Class, i64)> {
        self.entries.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Multiplies every value by `factor`.
    pub fn scaled(&self, factor: i64) -> SwTable {
        let mut t = SwTable::new();
        for (k, v) in self.iter() {
            t.insert(k.clone(), v * factor);
        }
        t
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharNumbers {
    pub e: i64,
    pub sigma: i64,
    pub chi_h: i64,
    pub c1sq: i64,
    pub c: i64,
}

/// A standard four-manifold at the level of its intersection lattice and
/// Seiberg-Witten table (b¹ = 0 throughout).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourManifold {
    lattice: Lattice,
    sw: SwTable,
    /// Optional named classes (K, f1, e1, ...) used to resolve class expressions.
    names: BTreeMap<String, Class>,
}

#[derive(Serialize, Deserialize)]
struct SwEntry {
    class: Class,
    value: i64,
}

#[derive(Serialize, Deserialize)]
struct ManifoldRepr {
    lattice: Lattice,
    sw: Vec<SwEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    classes: BTreeMap<String, Class>,
}

impl Serialize for FourManifold {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ManifoldRepr {
            lattice: self.lattice.clone(),
            sw: self
                .sw
                .iter()
                .map(|(k, v)| SwEntry {
                    class: k.clone(),
                    value: v,
                })
                .collect(),
            classes: self.names.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FourManifold {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ManifoldRepr::deserialize(d)?;
        let mut sw = SwTable::new();
        for e in repr.sw {
            if sw.entries.contains_key(&e.class) {
                return Err(serde::de::Error::custom(format!(
                    "duplicate sw entry for {:?}",
                    e.class.0
                )));
            }
            sw.insert(e.class, e.value);
        }
        let mut x = FourManifold::new(repr.lattice, sw).map_err(serde::de::Error::custom)?;
        for (name, class) in repr.classes {
            x.set_name(&name, class).map_err(serde::de::Error::custom)?;
        }
        Ok(x)
    }
}

impl FourManifold {
    /// Validates b⁺ ≥ 3 odd, integrality of χ_h, characteristic keys and
    /// conjugation symmetry SW'(−K) = (−1)^{χ_h} SW'(K).
    pub fn new(lattice: Lattice, sw: SwTable) -> Result<Self> {
        let (bp, _) = lattice.signature()?;
        if bp < 3 || bp % 2 == 0 {
            return Err(Error::violated("b⁺ ≥ 3 and odd", format!("b⁺ = {bp}")));
        }
        let x = FourManifold {
            lattice,
            sw,
            names: BTreeMap::new(),
        };
        let cn = x.char_numbers()?;
        for (k, v) in x.sw.iter() {
            check_dim(x.lattice.rank(), k.len())?;
            if !x.lattice.is_characteristic(k) {
                return Err(Error::NotCharacteristic(k.0.clone()));
            }
            let expected = crate::rational::sign(cn.chi_h) * v;
            if x.sw.get(&-k) != expected {
                return Err(Error::violated(
                    "conjugation symmetry SW'(−K) = (−1)^χ_h SW'(K)",
                    format!("K = {:?}", k.0),
                ));
            }
        }
        Ok(x)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn sw(&self) -> &SwTable {
        &self.sw
    }

    pub fn names(&self) -> &BTreeMap<String, Class> {
        &self.names
    }

    pub fn named(&self, name: &str) -> Option<&Class> {
        self.names.get(name)
    }

    pub fn set_name(&mut self, name: &str, class: Class) -> Result<()> {
        check_dim(self.lattice.rank(), class.len())?;
        self.names.insert(name.to_string(), class);
        Ok(())
    }

    /// Replaces the Seiberg-Witten table, revalidating the invariants.
    pub fn with_sw(&self, sw: SwTable) -> Result<Self> {
        let mut x = FourManifold::new(self.lattice.clone(), sw)?;
        x.names = self.names.clone();
        Ok(x)
    }

    /// e, σ, χ_h = (e+σ)/4, c₁² = 2e+3σ and c = χ_h − c₁².
    pub fn char_numbers(&self) -> Result<CharNumbers> {
        let e = 2 + self.lattice.rank() as i64;
        let sigma = self.lattice.sigma();
        if (e + sigma).rem_euclid(4) != 0 {
            return Err(Error::violated(
                "χ_h integral",
                format!("e + σ = {}", e + sigma),
            ));
        }
        let chi_h = (e + sigma) / 4;
        let c1sq = 2 * e + 3 * sigma;
        Ok(CharNumbers {
            e,
            sigma,
            chi_h,
            c1sq,
            c: chi_h - c1sq,
        })
    }

    fn numbers(&self) -> CharNumbers {
        self.char_numbers()
            .expect("validated at construction")
    }

    pub fn chi_h(&self) -> i64 {
        self.numbers().chi_h
    }

    pub fn c1sq(&self) -> i64 {
        self.numbers().c1sq
    }

    pub fn c(&self) -> i64 {
        self.numbers().c
    }

    /// B(X).
    pub fn basic_classes(&self) -> Vec<Class> {
        self.sw.iter().map(|(k, _)| k.clone()).collect()
    }

    /// B'(X): one representative of each {K, −K}, the one whose first
    /// nonzero coordinate is positive (0 on its own).
    pub fn fundamental_domain(&self) -> Vec<Class> {
        self.sw
            .iter()
            .map(|(k, _)| k)
            .filter(|k| k.is_zero() || k.leads_positive())
            .cloned()
            .collect()
    }

    pub fn contains_zero_class(&self) -> bool {
        self.sw.iter().any(|(k, _)| k.is_zero())
    }

    /// Seiberg-Witten simple type: K² = c₁²(X) for every basic class.
    pub fn has_simple_type(&self) -> bool {
        let c1sq = self.c1sq();
        self.sw
            .iter()
            .all(|(k, _)| self.lattice.square(k).ok() == Some(c1sq))
    }

    /// X # CP̄²: lattice ⊕ ⟨−1⟩ and basic classes K ± e*, each carrying SW'(K).
    /// Named classes are carried over and the new exceptional class is named
    /// `e{n}` with n one more than the largest existing exceptional index.
    pub fn blow_up(&self) -> Result<FourManifold> {
        if !self.has_simple_type() {
            return Err(Error::violated(
                "simple type",
                "the blow-up formula is stated for manifolds of Seiberg-Witten simple type",
            ));
        }
        let lattice = self
            .lattice
            .direct_sum(&Lattice::diagonal(&[-1]).expect("⟨−1⟩ is unimodular"));
        let n = lattice.rank();
        let e_star = lattice.basis(n - 1);
        let mut sw = SwTable::new();
        for (k, v) in self.sw.iter() {
            let k = k.extend(1);
            sw.insert(&k + &e_star, v);
            sw.insert(&k - &e_star, v);
        }
        let mut x = FourManifold::new(lattice, sw)?;
        for (name, class) in &self.names {
            x.names.insert(name.clone(), class.extend(1));
        }
        let next = (1..)
            .find(|u| !self.names.contains_key(&format!("e{u}")))
            .expect("unbounded range");
        x.names.insert(format!("e{next}"), e_star);
        Ok(x)
    }

    /// Superconformal simple type with respect to the characteristic class `w`:
    /// c(X) ≤ 3, or for each i ≤ c(X) − 4 every monomial coefficient of
    /// h ↦ Σ_{K∈B(X)} (−1)^{ε(w,K)} SW'(K) ⟨K,h⟩^i vanishes.
    pub fn is_scst(&self, w: &Class) -> Result<bool> {
        check_dim(self.lattice.rank(), w.len())?;
        if !self.lattice.is_characteristic(w) {
            return Err(Error::NotCharacteristic(w.0.clone()));
        }
        let c = self.c();
        if c <= 3 {
            return Ok(true);
        }
        let mut weighted = Vec::new();
        for (k, v) in self.sw.iter() {
            let s = self.lattice.eps(w, k)?.sign() * v;
            weighted.push((self.lattice.dual(k)?, s));
        }
        for i in 0..=(c - 4) as u32 {
            if !monomial_sums_vanish(&weighted, i) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Whether Σ_K s_K Π_j (gram·K)_j^{α_j} = 0 for every multi-index α with |α| = degree.
fn monomial_sums_vanish(weighted: &[(Vec<i64>, i64)], degree: u32) -> bool {
    let Some((first, _)) = weighted.first() else {
        return true;
    };
    let rank = first.len();
    // Coordinates on which every form vanishes contribute only zero monomials.
    let support: Vec<usize> = (0..rank)
        .filter(|&j| weighted.iter().any(|(g, _)| g[j] != 0))
        .collect();
    let start: Vec<Rational> = weighted.iter().map(|(_, s)| int(*s)).collect();
    fn walk(
        weighted: &[(Vec<i64>, i64)],
        support: &[usize],
        pos: usize,
        remaining: u32,
        partial: Vec<Rational>,
    ) -> bool {
        if remaining == 0 {
            return partial.iter().sum::<Rational>().is_zero();
        }
        if pos == support.len() {
            return true;
        }
        let j = support[pos];
        let mut cur = partial;
        for take in 0..=remaining {
            if take > 0 {
                cur = cur
                    .iter()
                    .zip(weighted)
                    .map(|(p, (g, _))| p * int(g[j]))
                    .collect();
            }
            if pos + 1 == support.len() && take != remaining {
                continue;
            }
            if !walk(weighted, support, pos + 1, remaining - take, cur.clone()) {
                return false;
            }
        }
        true
    }
    walk(weighted, &support, 0, degree, start)
}

/// ν(K): ½ on the zero class, 1 otherwise.
pub fn nu(k: &Class) -> Rational {
    if k.is_zero() {
        rat(1, 2)
    } else {
        int(1)
    }
}

/// The model manifold X_q with its distinguished classes.
#[derive(Clone, Debug)]
pub struct XqFixture {
    pub manifold: FourManifold,
    pub k: Class,
    pub f1: Class,
    pub f2: Class,
}

/// X_q for q ≥ 2, synthesized as H ⊕ ⟨1⟩^{2q−2} ⊕ ⟨−1⟩^{9q+1}.
///
/// b⁺ = 2q − 1, χ_h = q, c₁² = q − 3 and c = 3. f₁, f₂ span the hyperbolic
/// summand; K is odd on every diagonal coordinate (q threes and q − 2 ones
/// on the positive part, ones on the negative part) so K² = q − 3, and
/// B(X_q) = {K, −K} with SW'(K) = 1.
pub fn example_xq(q: i64) -> Result<XqFixture> {
    if q < 2 {
        return Err(Error::violated("q ≥ 2", format!("q = {q}")));
    }
    let pos = (2 * q - 2) as usize;
    let neg = (9 * q + 1) as usize;
    let mut diag = vec![1; pos];
    diag.extend(std::iter::repeat(-1).take(neg));
    let lattice = Lattice::hyperbolic().direct_sum(&Lattice::diagonal(&diag)?);
    let rank = lattice.rank();

    let mut k = vec![0i64; rank];
    for (idx, slot) in k[2..2 + pos].iter_mut().enumerate() {
        *slot = if (idx as i64) < q { 3 } else { 1 };
    }
    for slot in k[2 + pos..].iter_mut() {
        *slot = 1;
    }
    let k = Class(k);
    let f1 = lattice.basis(0);
    let f2 = lattice.basis(1);

    let mut sw = SwTable::new();
    sw.insert(k.clone(), 1);
    sw.insert(-&k, crate::rational::sign(q));
    let mut manifold = FourManifold::new(lattice, sw)?;
    manifold.set_name("K", k.clone())?;
    manifold.set_name("f1", f1.clone())?;
    manifold.set_name("f2", f2.clone())?;
    Ok(XqFixture { manifold, k, f1, f2 })
}

/// X_q(n), the n-fold blow-up of X_q. Named classes: K, f1, f2, e1..en and
/// K0 = K + Σ e_u*.
pub fn example_xqn(q: i64, n: usize) -> Result<FourManifold> {
    let mut x = example_xq(q)?.manifold;
    for _ in 0..n {
        x = x.blow_up()?;
    }
    let k = x.named("K").expect("named by example_xq").clone();
    let k0 = (1..=n).fold(k, |acc, u| &acc + x.named(&format!("e{u}")).expect("named by blow_up"));
    x.set_name("K0", k0)?;
    Ok(x)
}
