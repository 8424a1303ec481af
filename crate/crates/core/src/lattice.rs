//! Integral unimodular lattices modelling H²(X; Z) with its intersection form.
//!
//! Cohomology classes and homology elements share one coordinate system:
//! Poincaré duality is the identity on coordinates and every pairing routes
//! through the gram matrix, so ⟨K, h⟩ = Kᵀ · gram · h.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::linalg;
use crate::parity::Parity;
use crate::rational::{int, serde_rational_vec, Rational};

/// A symmetric unimodular integer bilinear form in a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct Lattice {
    gram: Vec<Vec<i64>>,
    /// (b⁺, b⁻), fixed at construction.
    signature: (usize, usize),
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    rank: usize,
    gram: Vec<Vec<i64>>,
}

impl TryFrom<LatticeRepr> for Lattice {
    type Error = Error;
    fn try_from(r: LatticeRepr) -> Result<Self> {
        check_dim(r.rank, r.gram.len())?;
        Lattice::new(r.gram)
    }
}

impl From<Lattice> for LatticeRepr {
    fn from(l: Lattice) -> Self {
        LatticeRepr {
            rank: l.rank(),
            gram: l.gram,
        }
    }
}

/// An integral class in H²(X; Z), by coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Class(pub Vec<i64>);

/// A real (here: rational) homology element h ∈ H₂(X; R).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HClass(#[serde(with = "serde_rational_vec")] pub Vec<Rational>);

impl Lattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::Malformed("lattice of rank 0".into()));
        }
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::NotSquare);
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric(i, j));
                }
            }
        }
        let det = linalg::det_int(&gram);
        if det.abs() != num_bigint::BigInt::from(1) {
            return Err(Error::NotUnimodular(det));
        }
        let signature = signature_of(&gram)?;
        Ok(Lattice { gram, signature })
    }

    pub fn diagonal(entries: &[i64]) -> Result<Self> {
        let n = entries.len();
        let mut gram = vec![vec![0; n]; n];
        for (i, &d) in entries.iter().enumerate() {
            gram[i][i] = d;
        }
        Lattice::new(gram)
    }

    /// The hyperbolic plane H = [[0, 1], [1, 0]].
    pub fn hyperbolic() -> Self {
        Lattice {
            gram: vec![vec![0, 1], vec![1, 0]],
            signature: (1, 1),
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn basis(&self, i: usize) -> Class {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        Class(v)
    }

    pub fn zero(&self) -> Class {
        Class(vec![0; self.rank()])
    }

    /// gram · a, the coefficient vector of the linear form h ↦ ⟨a, h⟩.
    pub fn dual(&self, a: &Class) -> Result<Vec<i64>> {
        check_dim(self.rank(), a.0.len())?;
        Ok(self
            .gram
            .iter()
            .map(|row| row.iter().zip(&a.0).map(|(g, x)| g * x).sum())
            .collect())
    }

    /// Cup-product pairing a · b.
    pub fn pair(&self, a: &Class, b: &Class) -> Result<i64> {
        check_dim(self.rank(), b.0.len())?;
        let ga = self.dual(a)?;
        Ok(ga.iter().zip(&b.0).map(|(x, y)| x * y).sum())
    }

    pub fn square(&self, a: &Class) -> Result<i64> {
        self.pair(a, a)
    }

    /// ⟨K, h⟩.
    pub fn eval(&self, k: &Class, h: &HClass) -> Result<Rational> {
        check_dim(self.rank(), h.0.len())?;
        let gk = self.dual(k)?;
        Ok(gk
            .iter()
            .zip(&h.0)
            .filter(|(g, _)| **g != 0)
            .map(|(g, x)| x * int(*g))
            .sum())
    }

    /// The symmetric bilinear form on H₂(X; R), hᵀ · gram · e.
    pub fn bilinear(&self, h: &HClass, e: &HClass) -> Result<Rational> {
        check_dim(self.rank(), h.0.len())?;
        check_dim(self.rank(), e.0.len())?;
        let mut acc = Rational::zero();
        for (i, row) in self.gram.iter().enumerate() {
            if h.0[i].is_zero() {
                continue;
            }
            let mut inner = Rational::zero();
            for (j, g) in row.iter().enumerate() {
                if *g != 0 && !e.0[j].is_zero() {
                    inner += &e.0[j] * int(*g);
                }
            }
            acc += &h.0[i] * inner;
        }
        Ok(acc)
    }

    /// Q_X(h).
    pub fn qform(&self, h: &HClass) -> Result<Rational> {
        self.bilinear(h, h)
    }

    /// Whether `k` pairs with every basis vector like that vector's square, mod 2.
    /// A class of the wrong dimension is never characteristic.
    pub fn is_characteristic(&self, k: &Class) -> bool {
        let Ok(gk) = self.dual(k) else {
            return false;
        };
        (0..self.rank()).all(|i| (gk[i] - self.gram[i][i]).rem_euclid(2) == 0)
    }

    pub fn is_odd(&self) -> bool {
        (0..self.rank()).any(|i| self.gram[i][i].rem_euclid(2) == 1)
    }

    /// (b⁺, b⁻) by exact rational congruence diagonalization.
    pub fn signature(&self) -> Result<(usize, usize)> {
        Ok(self.signature)
    }

    pub fn sigma(&self) -> i64 {
        self.signature.0 as i64 - self.signature.1 as i64
    }

    pub fn b_plus(&self) -> usize {
        self.signature.0
    }

    /// The orientation sign ε(w, K) = ½(w² + w·K) mod 2, defined for characteristic K.
    pub fn eps(&self, w: &Class, k: &Class) -> Result<Parity> {
        if !self.is_characteristic(k) {
            check_dim(self.rank(), k.0.len())?;
            return Err(Error::NotCharacteristic(k.0.clone()));
        }
        let twice = self.square(w)? + self.pair(w, k)?;
        debug_assert_eq!(twice.rem_euclid(2), 0);
        Ok(Parity::of(twice / 2))
    }

    fn is_diagonal_pm1(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let g = self.gram[i][j];
                if i == j {
                    g == 1 || g == -1
                } else {
                    g == 0
                }
            })
        })
    }

    /// For a diagonal ±1 form with at least three positive basis vectors,
    /// returns Λ = a₂e₁ − a₁e₂ built from the coefficients a₁, a₂ of `k` on
    /// the first two positive basis vectors. Then Λ·K = 0 and Λ² = a₁² + a₂².
    pub fn find_orthogonal_positive(&self, k: &Class) -> Result<Class> {
        if !self.is_diagonal_pm1() {
            return Err(Error::violated(
                "diagonal ±1 form",
                "find_orthogonal_positive needs a diagonal basis",
            ));
        }
        check_dim(self.rank(), k.0.len())?;
        if !self.is_characteristic(k) {
            return Err(Error::NotCharacteristic(k.0.clone()));
        }
        let positive: Vec<usize> = (0..self.rank()).filter(|&i| self.gram[i][i] == 1).collect();
        if positive.len() < 2 {
            return Err(Error::violated(
                "two positive basis vectors",
                format!("form has {} positive entries", positive.len()),
            ));
        }
        let (e1, e2) = (positive[0], positive[1]);
        let mut lam = vec![0; self.rank()];
        lam[e1] = k.0[e2];
        lam[e2] = -k.0[e1];
        Ok(Class(lam))
    }

    /// Orthogonal direct sum, block diagonal gram.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![0; n + m]; n + m];
        for i in 0..n {
            gram[i][..n].copy_from_slice(&self.gram[i]);
        }
        for i in 0..m {
            gram[n + i][n..].copy_from_slice(&other.gram[i]);
        }
        let signature = (
            self.signature.0 + other.signature.0,
            self.signature.1 + other.signature.1,
        );
        Lattice { gram, signature }
    }
}

/// Signature of a symmetric integer matrix.
pub fn signature_of(gram: &[Vec<i64>]) -> Result<(usize, usize)> {
    let mut a: Vec<Vec<Rational>> = gram
        .iter()
        .map(|r| r.iter().map(|&x| int(x)).collect())
        .collect();
    let (mut pos, mut neg) = (0, 0);
    while !a.is_empty() {
        let n = a.len();
        let pivot = match (0..n).find(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                // Zero diagonal: combine a hyperbolic pair e_i + e_j to create one.
                let Some((i, j)) = (0..n)
                    .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero())
                else {
                    return Err(Error::Degenerate);
                };
                // row/col i += row/col j; new diagonal = 2 a_ij
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let d = a[pivot][pivot].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&k| k != pivot).collect();
        let next: Vec<Vec<Rational>> = rest
            .iter()
            .map(|&r| {
                rest.iter()
                    .map(|&c| &a[r][c] - &a[r][pivot] * &a[pivot][c] / &d)
                    .collect()
            })
            .collect();
        a = next;
    }
    Ok((pos, neg))
}

impl Class {
    pub fn zero(n: usize) -> Class {
        Class(vec![0; n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The same class viewed in a larger lattice L ⊕ M (zero on M).
    pub fn extend(&self, extra: usize) -> Class {
        let mut v = self.0.clone();
        v.resize(v.len() + extra, 0);
        Class(v)
    }

    /// The homology element with the same coordinates (Poincaré dual).
    pub fn to_h(&self) -> HClass {
        HClass(self.0.iter().map(|&x| int(x)).collect())
    }

    /// Whether the first nonzero coordinate is positive.
    pub fn leads_positive(&self) -> bool {
        self.0.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
    }
}

impl Add for &Class {
    type Output = Class;
    fn add(self, rhs: &Class) -> Class {
        assert_eq!(self.len(), rhs.len(), "class dimension mismatch");
        Class(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Class {
    type Output = Class;
    fn sub(self, rhs: &Class) -> Class {
        assert_eq!(self.len(), rhs.len(), "class dimension mismatch");
        Class(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Class {
    type Output = Class;
    fn neg(self) -> Class {
        Class(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Class> for i64 {
    type Output = Class;
    fn mul(self, rhs: &Class) -> Class {
        Class(rhs.0.iter().map(|a| self * a).collect())
    }
}

impl HClass {
    pub fn zero(n: usize) -> HClass {
        HClass(vec![Rational::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn extend(&self, extra: usize) -> HClass {
        let mut v = self.0.clone();
        v.resize(v.len() + extra, Rational::zero());
        HClass(v)
    }

    pub fn scaled(&self, s: &Rational) -> HClass {
        HClass(self.0.iter().map(|x| x * s).collect())
    }
}

impl Add for &HClass {
    type Output = HClass;
    fn add(self, rhs: &HClass) -> HClass {
        assert_eq!(self.len(), rhs.len(), "homology dimension mismatch");
        HClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}
