//! Resultants by polynomial remainder sequences, and discriminants.
//!
//! The remainder sequence is kept primitive (contents stripped each step)
//! while the exact similarity factors are tracked in a factored ledger of
//! leading coefficients and contents with integer exponents. The resultant
//! is assembled at the end with a single exact division, so the value is
//! exact up to the sign convention this bookkeeping fixes; `normalize`
//! erases sign and constants downstream.

use std::collections::BTreeMap;

use num::{One, Zero};

use super::gcd::{exact_div, pseudo_rem};
use super::{Polynomial, Rational};
use crate::error::CadError;
use crate::Result;

/// Factored accumulator: sign/rational constant and canonical-polynomial
/// powers with integer exponents (negative allowed).
struct FactorLedger {
    rat: Rational,
    powers: BTreeMap<Polynomial, i64>,
    nvars: usize,
}

impl FactorLedger {
    fn new(nvars: usize) -> Self {
        FactorLedger {
            rat: Rational::one(),
            powers: BTreeMap::new(),
            nvars,
        }
    }

    /// Multiply the accumulator by `q^e` for nonzero `q`.
    fn push(&mut self, q: &Polynomial, e: i64) {
        if e == 0 {
            return;
        }
        debug_assert!(!q.is_zero());
        let canon = q.normalize().expect("nonzero");
        let c = q.normalizing_factor().expect("nonzero");
        // q = canon / c, so q^e contributes c^{-e} and canon^e.
        self.push_rat(&c, -e);
        if !canon.is_constant() {
            use std::collections::btree_map::Entry;
            match self.powers.entry(canon) {
                Entry::Vacant(slot) => {
                    slot.insert(e);
                }
                Entry::Occupied(mut slot) => {
                    *slot.get_mut() += e;
                    if *slot.get() == 0 {
                        slot.remove();
                    }
                }
            }
        }
    }

    fn push_rat(&mut self, c: &Rational, e: i64) {
        debug_assert!(!c.is_zero());
        if e >= 0 {
            for _ in 0..e {
                self.rat *= c;
            }
        } else {
            for _ in 0..(-e) {
                self.rat /= c;
            }
        }
    }

    fn flip_sign(&mut self) {
        self.rat = -self.rat.clone();
    }

    /// Assemble `rat · Π powers · tail`, performing the one exact division.
    fn assemble(self, tail: &Polynomial) -> Polynomial {
        if tail.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let mut num = tail.clone();
        let mut den = Polynomial::one(self.nvars);
        for (p, e) in &self.powers {
            if *e > 0 {
                num = &num * &poly_pow(p, *e as u64);
            } else {
                den = &den * &poly_pow(p, (-*e) as u64);
            }
        }
        let q = exact_div(&num, &den)
            .expect("resultant ledger must divide exactly");
        q.scale(&self.rat)
    }
}

fn poly_pow(p: &Polynomial, mut e: u64) -> Polynomial {
    let mut base = p.clone();
    let mut acc = Polynomial::one(p.nvars());
    while e > 0 {
        if e & 1 == 1 {
            acc = &acc * &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// Resultant of `p` and `q` with respect to `v`.
///
/// Vanishes at a point of the lower space iff `p` and `q` share a root in
/// `v` there or both leading coefficients vanish. Both arguments must have
/// positive degree in `v`.
pub fn resultant(p: &Polynomial, q: &Polynomial, v: usize) -> Result<Polynomial> {
    if v >= p.nvars() {
        return Err(CadError::UnknownVariable(format!(
            "variable index {v} out of range"
        )));
    }
    if p.is_zero() || q.is_zero() || p.deg(v) < 1 || q.deg(v) < 1 {
        return Err(CadError::InvalidInput(
            "resultant needs two polynomials of positive degree in the main variable".into(),
        ));
    }
    Ok(resultant_impl(p, q, v))
}

fn resultant_impl(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let nvars = a.nvars();
    let mut ledger = FactorLedger::new(nvars);
    let mut f = a.clone();
    let mut g = b.clone();
    if f.deg(v) < g.deg(v) {
        std::mem::swap(&mut f, &mut g);
        if (f.deg(v) * g.deg(v)) % 2 == 1 {
            ledger.flip_sign();
        }
    }
    // Invariant: res(a, b) = ledger · res(f, g), deg f ≥ deg g.
    let tail = loop {
        let m = f.deg(v);
        let n = g.deg(v);
        if n == 0 {
            // res(f, const) = const^deg(f).
            break poly_pow(&g, m as u64);
        }
        let delta = m - n;
        let rp = pseudo_rem(&f, &g, v); // lc(g)^(δ+1)·f − Q·g
        if rp.is_zero() {
            // Nontrivial common factor in v.
            return Polynomial::zero(nvars);
        }
        let r = rp.deg(v);
        let lc_g = g.coeff_of_power(v, n as u32);
        // res(f, g) = (−1)^{mn} lc(g)^{m−r−(δ+1)n} cont^n res(g, prim)
        if (m * n) % 2 == 1 {
            ledger.flip_sign();
        }
        ledger.push(&lc_g, m - r - (delta + 1) * n);
        let prim = content_strip(&rp, v);
        let cont = exact_div(&rp, &prim).expect("primitive part divides");
        ledger.push(&cont, n);
        f = g;
        g = prim;
    };
    ledger.assemble(&tail)
}

/// Primitive-in-`v` normalized form used inside the remainder sequence.
fn content_strip(p: &Polynomial, v: usize) -> Polynomial {
    super::gcd::primitive_part(p, v)
        .expect("nonzero")
        .normalize()
        .expect("nonzero")
}

/// Discriminant with respect to `v`: `resultant(p, ∂p/∂v, v) / lc(p, v)`,
/// exact up to the resultant's sign convention. Requires degree ≥ 2 in `v`.
pub fn discriminant(p: &Polynomial, v: usize) -> Result<Polynomial> {
    if v >= p.nvars() {
        return Err(CadError::UnknownVariable(format!(
            "variable index {v} out of range"
        )));
    }
    if p.is_zero() || p.deg(v) < 2 {
        return Err(CadError::InvalidInput(
            "discriminant needs degree at least 2 in the main variable".into(),
        ));
    }
    let dp = p.derivative(v)?;
    let res = resultant(p, &dp, v)?;
    let lc = p.leading_coeff(v)?;
    exact_div(&res, &lc)
        .ok_or_else(|| CadError::InvalidInput("discriminant division failed".into()))
}

/// Sylvester-matrix resultant by fraction-free (Bareiss) elimination.
///
/// Exponentially slower than the remainder sequence on large inputs but
/// independent of it; kept for cross-checking on small instances.
pub fn resultant_sylvester(p: &Polynomial, q: &Polynomial, v: usize) -> Result<Polynomial> {
    if p.is_zero() || q.is_zero() || p.deg(v) < 1 || q.deg(v) < 1 {
        return Err(CadError::InvalidInput(
            "resultant needs two polynomials of positive degree in the main variable".into(),
        ));
    }
    let m = p.deg(v) as usize;
    let n = q.deg(v) as usize;
    let nvars = p.nvars();
    let pc = p.coeffs_in(v);
    let qc = q.coeffs_in(v);
    let size = m + n;
    let zero = Polynomial::zero(nvars);
    let mut mat = vec![vec![zero.clone(); size]; size];
    for row in 0..n {
        for (k, c) in pc.iter().enumerate() {
            mat[row][row + (m - k)] = c.clone();
        }
    }
    for row in 0..m {
        for (k, c) in qc.iter().enumerate() {
            mat[n + row][row + (n - k)] = c.clone();
        }
    }
    // Bareiss: entries stay polynomial, divisions are exact.
    let mut sign_flip = false;
    let mut prev = Polynomial::one(nvars);
    for k in 0..size - 1 {
        if mat[k][k].is_zero() {
            let swap = (k + 1..size).find(|&r| !mat[r][k].is_zero());
            match swap {
                Some(r) => {
                    mat.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Ok(Polynomial::zero(nvars)),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = &(&mat[i][j] * &mat[k][k]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = exact_div(&t, &prev).expect("Bareiss division is exact");
            }
            mat[i][k] = Polynomial::zero(nvars);
        }
        prev = mat[k][k].clone();
    }
    let mut det = mat[size - 1][size - 1].clone();
    if sign_flip {
        det = -&det;
    }
    Ok(det)
}
