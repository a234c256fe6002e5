//! Real root isolation by Descartes' rule of signs on bisected dyadic
//! intervals (Vincent–Collins–Akritas).
//!
//! Each node carries the integer polynomial whose roots in (0,1)
//! correspond to the node interval's roots, so child transforms are one
//! scale and one Taylor shift. Termination holds for square-free input.

use num::{BigInt, One, Zero};

use super::super::poly::Rational;
use super::zpoly::ZPoly;

/// Isolating intervals for all real roots of a square-free `p`, in
/// ascending order. Roots hit exactly (dyadic midpoints) come back as
/// degenerate pairs `(r, r)`; proper intervals are open with nonzero
/// endpoint signs and exactly one root inside.
pub fn isolate_intervals(p: &ZPoly) -> Vec<(Rational, Rational)> {
    debug_assert!(!p.is_zero());
    if p.is_constant() {
        return Vec::new();
    }
    let b = p.root_bound_pow2();
    // p01 over (−B, B): p(2B·x − B).
    let p01 = p.taylor_shift(&-&b).stretch(&(&b * 2));
    let mut out = Vec::new();
    recurse(
        p,
        &Rational::from(-b.clone()),
        &Rational::from(b),
        p01,
        &mut out,
    );
    out
}

/// Descartes bound on the number of roots of `p01` in open (0,1):
/// variations of `(x+1)^n · p01(1/(x+1))`.
fn var_count(p01: &ZPoly) -> usize {
    p01.reversed().taylor_shift(&BigInt::one()).variations()
}

fn recurse(
    p: &ZPoly,
    lo: &Rational,
    hi: &Rational,
    p01: ZPoly,
    out: &mut Vec<(Rational, Rational)>,
) {
    let v = var_count(&p01);
    if v == 0 {
        return;
    }
    if v == 1 {
        // One root strictly inside; make sure the stored endpoints are not
        // roots themselves (they can be when a sibling root was exact).
        if p.sign_at(lo) != 0 && p.sign_at(hi) != 0 {
            out.push((lo.clone(), hi.clone()));
            return;
        }
    }
    // Bisect.
    let n = if p01.is_zero() { 0 } else { p01.deg() };
    let two = BigInt::from(2);
    let left = ZPoly::new(
        p01.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * two.pow((n - i) as u32))
            .collect(),
    );
    let mid = (lo + hi) / Rational::from(BigInt::from(2));
    let mid_val: BigInt = left.coeffs.iter().sum();
    let right = left.taylor_shift(&BigInt::one());
    recurse(p, lo, &mid, left, out);
    if mid_val.is_zero() {
        out.push((mid.clone(), mid.clone()));
    }
    recurse(p, &mid, hi, right, out);
}
