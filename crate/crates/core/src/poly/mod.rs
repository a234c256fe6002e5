//! Sparse multivariate polynomials over exact rationals.
//!
//! A [`Polynomial`] is a finite map from exponent vectors to nonzero
//! rational coefficients under a fixed [`VarOrder`]. Position 0 of the
//! order is the lowest variable (the one projected to last); the highest
//! variable is the first projection's main variable.
//!
//! The canonical form produced by [`Polynomial::normalize`] — integer,
//! collectively coprime coefficients with positive leading coefficient in
//! lexicographic term order — is what [`PolySet`] deduplicates on, so a set
//! never holds two constant multiples of the same polynomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::CadError;
use crate::Result;

mod gcd;
mod resultant;
mod text;

pub use gcd::{content, gcd, primitive_part, square_free_basis, square_free_part};
pub use resultant::{discriminant, resultant, resultant_sylvester};

/// Exact rational scalar used for every coefficient and sample point.
pub type Rational = BigRational;

/// Ordered list of variable names. Position 0 is the lowest variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarOrder {
    names: Vec<String>,
}

impl VarOrder {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(CadError::InvalidInput("variable order is empty".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty()
                || !n.chars().next().unwrap().is_ascii_alphabetic() && !n.starts_with('_')
                || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(CadError::InvalidInput(format!(
                    "invalid variable name `{n}`"
                )));
            }
            if names[..i].contains(n) {
                return Err(CadError::InvalidInput(format!(
                    "duplicate variable name `{n}`"
                )));
            }
        }
        Ok(VarOrder { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Invariants: no zero coefficients are stored, every exponent vector has
/// length `nvars`, and the zero polynomial is the empty term map.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Polynomial::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Rational::one())
    }

    pub fn variable(nvars: usize, v: usize) -> Self {
        assert!(v < nvars, "variable index out of range");
        let mut exps = vec![0u32; nvars];
        exps[v] = 1;
        let mut p = Polynomial::zero(nvars);
        p.terms.insert(exps, Rational::one());
        p
    }

    /// Build from (exponent vector, coefficient) pairs, dropping zeros.
    pub fn from_terms(nvars: usize, terms: Vec<(Vec<u32>, Rational)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    /// Value of a constant polynomial; zero polynomial gives 0.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    fn check_var(&self, v: usize) -> Result<()> {
        if v >= self.nvars {
            Err(CadError::UnknownVariable(format!(
                "variable index {v} out of range for {} variables",
                self.nvars
            )))
        } else {
            Ok(())
        }
    }

    /// Highest exponent of `v`; −1 for the zero polynomial.
    pub fn degree(&self, v: usize) -> Result<i64> {
        self.check_var(v)?;
        Ok(self
            .terms
            .keys()
            .map(|e| e[v] as i64)
            .max()
            .unwrap_or(-1))
    }

    /// Degree without the error plumbing, for internal use with a checked var.
    pub(crate) fn deg(&self, v: usize) -> i64 {
        self.terms.keys().map(|e| e[v] as i64).max().unwrap_or(-1)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as i64).sum())
            .max()
            .unwrap_or(-1)
    }

    /// Indices of variables that actually occur.
    pub fn vars_present(&self) -> Vec<usize> {
        let mut present = vec![false; self.nvars];
        for e in self.terms.keys() {
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    present[i] = true;
                }
            }
        }
        present
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| p.then_some(i))
            .collect()
    }

    /// Highest-index variable that occurs, if any.
    pub fn main_var(&self) -> Option<usize> {
        self.vars_present().into_iter().max()
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables
    /// (same variable count, exponent of `v` zeroed).
    pub fn coeff_of_power(&self, v: usize, k: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] == k {
                let mut e2 = e.clone();
                e2[v] = 0;
                out.terms.insert(e2, c.clone());
            }
        }
        out
    }

    /// Dense coefficient list of `self` viewed as univariate in `v`,
    /// index = power of `v`. Empty for the zero polynomial.
    pub fn coeffs_in(&self, v: usize) -> Vec<Polynomial> {
        let d = self.deg(v);
        if d < 0 {
            return Vec::new();
        }
        let mut out = vec![Polynomial::zero(self.nvars); d as usize + 1];
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut e2 = e.clone();
            e2[v] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    /// Rebuild Σ coeffs[k]·v^k.
    pub fn from_coeffs_in(nvars: usize, v: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut out = Polynomial::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (e, q) in &c.terms {
                debug_assert_eq!(e[v], 0);
                let mut e2 = e.clone();
                e2[v] = k as u32;
                out.add_term(e2, q.clone());
            }
        }
        out
    }

    /// Coefficient of the highest power of `v`.
    pub fn leading_coeff(&self, v: usize) -> Result<Polynomial> {
        self.check_var(v)?;
        if self.is_zero() {
            return Err(CadError::InvalidInput(
                "leading coefficient of the zero polynomial".into(),
            ));
        }
        let d = self.deg(v);
        Ok(self.coeff_of_power(v, d as u32))
    }

    /// Coefficient of the lowest power of `v` present (the constant-in-`v`
    /// part when a `v⁰` term exists).
    pub fn trailing_coeff(&self, v: usize) -> Result<Polynomial> {
        self.check_var(v)?;
        if self.is_zero() {
            return Err(CadError::InvalidInput(
                "trailing coefficient of the zero polynomial".into(),
            ));
        }
        let low = self.terms.keys().map(|e| e[v]).min().unwrap();
        Ok(self.coeff_of_power(v, low))
    }

    pub fn map_coeffs<F: Fn(&Rational) -> Rational>(&self, f: F) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let c2 = f(c);
            if !c2.is_zero() {
                out.terms.insert(e.clone(), c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        self.map_coeffs(|x| x * c)
    }

    /// ∂self/∂v.
    pub fn derivative(&self, v: usize) -> Result<Polynomial> {
        self.check_var(v)?;
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] > 0 {
                let mut e2 = e.clone();
                e2[v] -= 1;
                out.add_term(e2, c * Rational::from(BigInt::from(e[v])));
            }
        }
        Ok(out)
    }

    /// Exact evaluation of `v` at `r`; the result no longer involves `v`.
    pub fn substitute(&self, v: usize, r: &Rational) -> Result<Polynomial> {
        self.check_var(v)?;
        let coeffs = self.coeffs_in(v);
        if coeffs.is_empty() {
            return Ok(Polynomial::zero(self.nvars));
        }
        // Horner over the coefficient polynomials.
        let mut acc = coeffs.last().unwrap().clone();
        for c in coeffs.iter().rev().skip(1) {
            acc = &acc.scale(r) + c;
        }
        Ok(acc)
    }

    /// Exact quotient `self / (v − r)`; errors when `(v − r)` does not divide.
    pub fn lazard_divide(&self, v: usize, r: &Rational) -> Result<Polynomial> {
        self.check_var(v)?;
        if self.is_zero() {
            return Err(CadError::InvalidInput(
                "cannot divide the zero polynomial".into(),
            ));
        }
        let coeffs = self.coeffs_in(v);
        let d = coeffs.len() - 1;
        if d == 0 {
            return Err(CadError::NotDivisible(format!(
                "polynomial has degree 0 in variable {v}"
            )));
        }
        // Synthetic division: quotient b_{k-1} = a_k + r·b_k, remainder a_0 + r·b_0.
        let mut quot = vec![Polynomial::zero(self.nvars); d];
        quot[d - 1] = coeffs[d].clone();
        for k in (1..d).rev() {
            quot[k - 1] = &coeffs[k] + &quot[k].scale(r);
        }
        let rem = &coeffs[0] + &quot[0].scale(r);
        if !rem.is_zero() {
            return Err(CadError::NotDivisible(format!(
                "polynomial does not vanish identically at substitution of variable {v}"
            )));
        }
        Ok(Polynomial::from_coeffs_in(self.nvars, v, &quot))
    }

    /// Exact value at a full-length rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(CadError::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= &point[i];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Leading (lexicographically greatest) term.
    pub(crate) fn leading_term(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.last_key_value()
    }

    /// Canonical representative: integer, collectively coprime coefficients
    /// and positive leading coefficient in lexicographic term order.
    /// Idempotent; equal up to constant multiples maps to equal outputs.
    pub fn normalize(&self) -> Result<Polynomial> {
        let f = self.normalizing_factor().ok_or_else(|| {
            CadError::InvalidInput("cannot normalize the zero polynomial".into())
        })?;
        Ok(self.scale(&f))
    }

    /// The rational `c` with `normalize(self) = c·self` (sign included),
    /// for callers that need the exact relation.
    pub(crate) fn normalizing_factor(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c.numer() * (&den_lcm / c.denom());
            num_gcd = num_gcd.gcd(&scaled);
        }
        let mut factor = Rational::new(den_lcm, num_gcd);
        if self.leading_term().unwrap().1.is_negative() {
            factor = -factor;
        }
        Some(factor)
    }

    /// Multivariate exact division; `None` when `d` does not divide exactly.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        gcd::exact_div(self, d)
    }
}

impl Polynomial {
    fn add_impl(&self, other: &Polynomial, negate: bool) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let c = if negate { -c.clone() } else { c.clone() };
            out.add_term(e.clone(), c);
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_impl(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.add_impl(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.map_coeffs(|c| -c.clone())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_generic(self, f)
    }
}

pub use text::{format_poly, format_rational, parse_poly, parse_rational};

/// Deduplicated set of normalized, nonconstant polynomials.
///
/// Constant multiples collapse to one element via normalization; constants
/// are discarded on insert. Iteration order is insertion order.
#[derive(Debug, Clone, Default)]
pub struct PolySet {
    elems: Vec<Polynomial>,
    seen: std::collections::BTreeSet<Polynomial>,
}

impl PolySet {
    pub fn new() -> Self {
        PolySet::default()
    }

    /// Normalize and insert; constants and duplicates are dropped.
    /// Returns true when the set gained an element.
    pub fn insert(&mut self, p: &Polynomial) -> bool {
        if p.is_zero() || p.is_constant() {
            return false;
        }
        let n = p.normalize().expect("nonzero");
        if self.seen.contains(&n) {
            return false;
        }
        self.seen.insert(n.clone());
        self.elems.push(n);
        true
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        match p.normalize() {
            Ok(n) => self.seen.contains(&n),
            Err(_) => false,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Polynomial> {
        self.elems.iter()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[Polynomial] {
        &self.elems
    }

    /// Set equality (canonical forms, order-insensitive).
    pub fn set_eq(&self, other: &PolySet) -> bool {
        self.seen == other.seen
    }
}

impl PartialEq for PolySet {
    fn eq(&self, other: &Self) -> bool {
        self.set_eq(other)
    }
}
impl Eq for PolySet {}

impl FromIterator<Polynomial> for PolySet {
    fn from_iter<T: IntoIterator<Item = Polynomial>>(iter: T) -> Self {
        let mut s = PolySet::new();
        for p in iter {
            s.insert(&p);
        }
        s
    }
}

/// Compare two polynomials up to a constant multiple.
pub fn eq_up_to_constant(a: &Polynomial, b: &Polynomial) -> bool {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => true,
        (false, false) => a.normalize().unwrap() == b.normalize().unwrap(),
        _ => false,
    }
}

/// Exact sign of a rational: −1, 0, or 1.
pub fn sign(r: &Rational) -> i32 {
    match r.cmp(&Rational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}
