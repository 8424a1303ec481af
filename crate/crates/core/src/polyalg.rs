//! Exact multivariate polynomials over Q, polarization of homogeneous forms,
//! and the algebraic-independence test for linear forms plus the quadratic form.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{check_dim, Error, Result};
use crate::lattice::{Class, HClass, Lattice};
use crate::linalg;
use crate::rational::{factorial, int, Rational};

/// Sparse polynomial: exponent vector → nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

/// The commutative-algebra operations polynomial evaluation needs.
trait Algebra: Clone {
    fn unit(like: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn add_scaled(&mut self, other: &Self, c: &Rational);
    fn nothing(like: &Self) -> Self;
}

impl Algebra for Rational {
    fn unit(_: &Self) -> Self {
        Rational::one()
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        *self += other * c;
    }
    fn nothing(_: &Self) -> Self {
        Rational::zero()
    }
}

impl Algebra for UniPoly {
    fn unit(_: &Self) -> Self {
        UniPoly::constant(Rational::one())
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        *self = self.add(&other.scale(c));
    }
    fn nothing(_: &Self) -> Self {
        UniPoly::default()
    }
}

impl Algebra for Poly {
    fn unit(like: &Self) -> Self {
        Poly::constant(like.nvars, Rational::one())
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn add_scaled(&mut self, other: &Self, c: &Rational) {
        *self = self.add(&other.scale(c));
    }
    fn nothing(like: &Self) -> Self {
        Poly::zero(like.nvars)
    }
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Poly {
        Poly::monomial(nvars, vec![0; nvars], c)
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Poly::monomial(nvars, e, Rational::one())
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>, c: Rational) -> Poly {
        assert_eq!(exps.len(), nvars, "exponent length");
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    fn accumulate(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable count");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.accumulate(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars, "variable count");
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.accumulate(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Rational::one());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The common total degree of every term, or `None` if mixed. The zero
    /// polynomial is homogeneous of every degree and reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let Some(d) = degrees.next() else {
            return Some(0);
        };
        degrees.all(|x| x == d).then_some(d)
    }

    fn evaluate_in<A: Algebra>(&self, vals: &[A], like: &A) -> A {
        // Powers are cached per variable since exponents repeat across terms.
        let mut cache: Vec<Vec<A>> = vals.iter().map(|v| vec![A::unit(like), v.clone()]).collect();
        let mut out = A::nothing(like);
        for (e, c) in &self.terms {
            let mut m = A::unit(like);
            for (i, &a) in e.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                while cache[i].len() <= a as usize {
                    let next = cache[i].last().expect("seeded").times(&vals[i]);
                    cache[i].push(next);
                }
                m = m.times(&cache[i][a as usize]);
            }
            out.add_scaled(&m, c);
        }
        out
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        check_dim(self.nvars, point.len())?;
        Ok(self.evaluate_in(point, &Rational::zero()))
    }

    /// Evaluates at univariate polynomials, e.g. the line t ↦ h + t·e.
    pub fn evaluate_uni(&self, point: &[UniPoly]) -> Result<UniPoly> {
        check_dim(self.nvars, point.len())?;
        Ok(self.evaluate_in(point, &UniPoly::default()))
    }

    /// Substitutes `images[i]` for variable i.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly> {
        check_dim(self.nvars, images.len())?;
        let like = images
            .first()
            .map(|p| Poly::zero(p.nvars))
            .unwrap_or_else(|| Poly::zero(0));
        Ok(self.evaluate_in(images, &like))
    }

    /// Sorted `coeff * x1^a1*x2^a2` lines, one per term.
    pub fn dump(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0/1");
        }
        for (e, c) in self.terms.iter().rev() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| {
                    if a == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, a)
                    }
                })
                .collect();
            let c = crate::rational::format_rational(c);
            if vars.is_empty() {
                writeln!(f, "{c}")?;
            } else {
                writeln!(f, "{c} * {}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> UniPoly {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn constant(c: Rational) -> UniPoly {
        UniPoly::new(vec![c])
    }

    /// a + b·t.
    pub fn linear(a: Rational, b: Rational) -> UniPoly {
        UniPoly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            for (b, y) in other.coeffs.iter().enumerate() {
                out[a + b] += x * y;
            }
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0/1");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let c = crate::rational::format_rational(c);
                match k {
                    0 => c,
                    1 => format!("{c}*x"),
                    _ => format!("{c}*x^{k}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// h ↦ ⟨K,h⟩ as a degree-1 polynomial in the coordinates of h.
pub fn linear_form(l: &Lattice, k: &Class) -> Result<Poly> {
    let g = l.dual(k)?;
    let n = l.rank();
    Ok(g.iter()
        .enumerate()
        .fold(Poly::zero(n), |acc, (j, &c)| acc.add(&Poly::var(n, j).scale(&int(c)))))
}

/// h ↦ Q_X(h) = hᵀ·gram·h.
pub fn quad_form(l: &Lattice) -> Poly {
    let n = l.rank();
    let mut p = Poly::zero(n);
    for (i, row) in l.gram().iter().enumerate() {
        for (j, &g) in row.iter().enumerate() {
            if g != 0 {
                p = p.add(&Poly::var(n, i).mul(&Poly::var(n, j)).scale(&int(g)));
            }
        }
    }
    p
}

/// A homogeneous function on H₂(X;R) that can be restricted to lines.
pub trait HomogeneousForm {
    /// Number of coordinates of the ambient space.
    fn dim(&self) -> usize;
    /// Degree of homogeneity; errors when the form is not homogeneous.
    fn degree(&self) -> Result<u32>;
    fn value(&self, h: &HClass) -> Result<Rational>;
    /// t ↦ F(h + t·e).
    fn along_line(&self, h: &HClass, e: &HClass) -> Result<UniPoly>;
}

impl HomogeneousForm for Poly {
    fn dim(&self) -> usize {
        self.nvars
    }

    fn degree(&self) -> Result<u32> {
        self.homogeneous_degree().ok_or(Error::NotHomogeneous)
    }

    fn value(&self, h: &HClass) -> Result<Rational> {
        self.evaluate(&h.0)
    }

    fn along_line(&self, h: &HClass, e: &HClass) -> Result<UniPoly> {
        check_dim(self.nvars, h.len())?;
        check_dim(self.nvars, e.len())?;
        let line: Vec<UniPoly> = h
            .0
            .iter()
            .zip(&e.0)
            .map(|(a, b)| UniPoly::linear(a.clone(), b.clone()))
            .collect();
        self.evaluate_uni(&line)
    }
}

/// M(e, h, …, h) for the symmetric d-linear form M with M(h,…,h) = F(h):
/// (1/d) times the t¹ coefficient of F(h + t·e).
pub fn polarize_slot<F: HomogeneousForm + ?Sized>(f: &F, e: &HClass, h: &HClass) -> Result<Rational> {
    let d = f.degree()?;
    if d == 0 {
        // The zero form reports degree 0; its polarization is 0 in every degree.
        if f.value(h)?.is_zero() {
            return Ok(Rational::zero());
        }
        return Err(Error::violated(
            "polarization degree d ≥ 1",
            "the form is constant",
        ));
    }
    Ok(f.along_line(h, e)?.coeff(1) / int(i64::from(d)))
}

/// M(h₁, …, h_d) by inclusion–exclusion over the 2^d subsets of arguments.
pub fn full_polarize<F: HomogeneousForm + ?Sized>(f: &F, args: &[HClass]) -> Result<Rational> {
    let d = f.degree()? as usize;
    check_dim(d, args.len())?;
    for a in args {
        check_dim(f.dim(), a.len())?;
    }
    let mut total = Rational::zero();
    for mask in 0u64..(1u64 << d) {
        let mut point = HClass::zero(f.dim());
        for (i, a) in args.iter().enumerate() {
            if mask >> i & 1 == 1 {
                point = &point + a;
            }
        }
        let v = f.value(&point)?;
        if (d - mask.count_ones() as usize) % 2 == 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    Ok(total / Rational::from_integer(factorial(d as u32)))
}

/// A polynomial in the linear forms ⟨T_i,·⟩ and Q_X: variable i of `body`
/// stands for ⟨gens[i],h⟩ and the last variable for Q_X(h).
///
/// Expanding such an expression in the coordinates of h is infeasible for
/// high powers on rank-20+ lattices, so evaluation and line restriction go
/// through the generator values instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormPoly {
    lattice: Lattice,
    gens: Vec<Class>,
    body: Poly,
}

impl FormPoly {
    pub fn new(lattice: Lattice, gens: Vec<Class>, body: Poly) -> Result<FormPoly> {
        check_dim(gens.len() + 1, body.nvars())?;
        for g in &gens {
            check_dim(lattice.rank(), g.len())?;
        }
        Ok(FormPoly {
            lattice,
            gens,
            body,
        })
    }

    pub fn zero(lattice: Lattice, gens: Vec<Class>) -> Result<FormPoly> {
        let n = gens.len() + 1;
        FormPoly::new(lattice, gens, Poly::zero(n))
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn gens(&self) -> &[Class] {
        &self.gens
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn nvars(&self) -> usize {
        self.gens.len() + 1
    }

    /// The body variable for ⟨gens[i],h⟩.
    pub fn gen_var(&self, i: usize) -> Poly {
        Poly::var(self.nvars(), i)
    }

    /// The body variable for Q_X(h).
    pub fn q_var(&self) -> Poly {
        Poly::var(self.nvars(), self.gens.len())
    }

    /// Coefficient of Π z_i^{a_i} · Q^{a_Q} in the body.
    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.body.coefficient(exps)
    }

    /// Weight 1 for each generator and 2 for Q.
    pub fn weighted_degree(&self) -> Option<u32> {
        let q = self.gens.len();
        let mut degrees = self
            .body
            .terms()
            .map(|(e, _)| e.iter().sum::<u32>() + e[q]);
        let Some(d) = degrees.next() else {
            return Some(0);
        };
        degrees.all(|x| x == d).then_some(d)
    }

    fn generator_values(&self, h: &HClass) -> Result<Vec<Rational>> {
        let mut v = self
            .gens
            .iter()
            .map(|g| self.lattice.eval(g, h))
            .collect::<Result<Vec<_>>>()?;
        v.push(self.lattice.qform(h)?);
        Ok(v)
    }

    /// Full expansion in the coordinates of h.
    pub fn to_poly(&self) -> Result<Poly> {
        let mut images = self
            .gens
            .iter()
            .map(|g| linear_form(&self.lattice, g))
            .collect::<Result<Vec<_>>>()?;
        images.push(quad_form(&self.lattice));
        self.body.compose(&images)
    }
}

impl HomogeneousForm for FormPoly {
    fn dim(&self) -> usize {
        self.lattice.rank()
    }

    fn degree(&self) -> Result<u32> {
        self.weighted_degree().ok_or(Error::NotHomogeneous)
    }

    fn value(&self, h: &HClass) -> Result<Rational> {
        let v = self.generator_values(h)?;
        self.body.evaluate(&v)
    }

    fn along_line(&self, h: &HClass, e: &HClass) -> Result<UniPoly> {
        let mut line = Vec::with_capacity(self.nvars());
        for g in &self.gens {
            line.push(UniPoly::linear(
                self.lattice.eval(g, h)?,
                self.lattice.eval(g, e)?,
            ));
        }
        // Q(h + te) = Q(h) + 2t·B(h,e) + t²·Q(e)
        line.push(UniPoly::new(vec![
            self.lattice.qform(h)?,
            int(2) * self.lattice.bilinear(h, e)?,
            self.lattice.qform(e)?,
        ]));
        self.body.evaluate_uni(&line)
    }
}

/// Whether {⟨T_i,·⟩} (and Q_X when `use_q`) is algebraically independent:
/// the T_i are linearly independent and Q_X is not identically zero on
/// the common kernel ∩ Ker⟨T_i,·⟩.
pub fn check_algebraic_independence(l: &Lattice, t: &[Class], use_q: bool) -> Result<bool> {
    let n = l.rank();
    let mut rows = Vec::with_capacity(t.len());
    for c in t {
        rows.push(l.dual(c)?.into_iter().map(int).collect::<Vec<_>>());
    }
    if linalg::rank(&rows) < t.len() {
        return Ok(false);
    }
    if !use_q {
        return Ok(true);
    }
    let kernel: Vec<HClass> = if rows.is_empty() {
        (0..n).map(|i| l.basis(i).to_h()).collect()
    } else {
        linalg::nullspace(&rows, n).into_iter().map(HClass).collect()
    };
    for (a, u) in kernel.iter().enumerate() {
        for v in &kernel[a..] {
            if !l.bilinear(u, v)?.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Exponent vectors over `nvars` variables whose last variable has weight 2
/// and the rest weight 1, with total weight `degree`.
pub fn weighted_monomials(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn walk(nvars: usize, pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos + 1 == nvars {
            if left % 2 == 0 {
                cur.push(left / 2);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        for a in 0..=left {
            cur.push(a);
            walk(nvars, pos + 1, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        walk(nvars, 0, degree, &mut Vec::new(), &mut out);
    }
    out
}

/// Recovers the unique expression of a black-box function as a weighted
/// homogeneous polynomial of degree `degree` in {⟨T_i,·⟩, Q_X}, by an exact
/// linear solve on integer sample points.
///
/// Errors if the sampled system does not determine the coefficients (the
/// generators are not independent enough at the sample points) or if no
/// such expression fits the samples.
pub fn express_in_generators<F>(
    l: &Lattice,
    gens: &[Class],
    degree: u32,
    f: F,
    seed: u64,
) -> Result<FormPoly>
where
    F: Fn(&HClass) -> Result<Rational>,
{
    let probe = FormPoly::zero(l.clone(), gens.to_vec())?;
    let monos = weighted_monomials(probe.nvars(), degree);
    let samples = monos.len() + 6;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(samples);
    let mut rhs = Vec::with_capacity(samples);
    for _ in 0..samples {
        let h = HClass((0..l.rank()).map(|_| int(rng.gen_range(-6..=6))).collect());
        let vals = probe.generator_values(&h)?;
        rows.push(
            monos
                .iter()
                .map(|e| Poly::monomial(vals.len(), e.clone(), Rational::one()).evaluate(&vals))
                .collect::<Result<Vec<_>>>()?,
        );
        rhs.push(f(&h)?);
    }
    if linalg::rank(&rows) < monos.len() {
        return Err(Error::violated(
            "algebraic independence of the generators",
            format!("{} monomials but sampled rank {}", monos.len(), linalg::rank(&rows)),
        ));
    }
    let sol = linalg::solve(&rows, &rhs).ok_or_else(|| {
        Error::violated(
            "expressible in the generators",
            "no polynomial in the generators matches the samples",
        )
    })?;
    let mut body = Poly::zero(probe.nvars());
    for (e, c) in monos.into_iter().zip(sol) {
        body = body.add(&Poly::monomial(probe.nvars(), e, c));
    }
    FormPoly::new(l.clone(), gens.to_vec(), body)
}
