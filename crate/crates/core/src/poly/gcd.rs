//! Multivariate gcd, contents, and square-free / gcd-free bases.
//!
//! The gcd is a primitive polynomial remainder sequence over the rationals,
//! recursing on the coefficient ring: contents are stripped at every step,
//! which keeps intermediate coefficients tame at the scales projection
//! produces. Results are canonical (normalized), so gcds are unique
//! representatives rather than "up to units".

use num::Zero;

use super::{Polynomial, Rational};
use crate::error::CadError;
use crate::Result;

/// Multivariate exact division; `None` when `d` does not divide `f`.
pub(crate) fn exact_div(f: &Polynomial, d: &Polynomial) -> Option<Polynomial> {
    assert_eq!(f.nvars(), d.nvars(), "variable count mismatch");
    if d.is_zero() {
        return None;
    }
    if f.is_zero() {
        return Some(Polynomial::zero(f.nvars()));
    }
    let (dle, dlc) = d.leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();
    let mut rem = f.clone();
    let mut quot = Polynomial::zero(f.nvars());
    while !rem.is_zero() {
        let (rle, rlc) = rem.leading_term().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        // If d divides f, every intermediate leading monomial is divisible.
        let mut qe = Vec::with_capacity(rle.len());
        for (a, b) in rle.iter().zip(dle.iter()) {
            if a < b {
                return None;
            }
            qe.push(a - b);
        }
        let qc = &rlc / &dlc;
        let t = Polynomial::from_terms(f.nvars(), vec![(qe, qc)]);
        rem = &rem - &(&t * d);
        quot = &quot + &t;
    }
    Some(quot)
}

/// Fraction-free pseudo-remainder of `f` by `d` with respect to `v`:
/// exactly `lc(d)^(δ+1)·f − q·d` with `δ = deg f − deg d`, degree in `v`
/// strictly below `deg d`.
pub(crate) fn pseudo_rem(f: &Polynomial, d: &Polynomial, v: usize) -> Polynomial {
    let dd = d.deg(v);
    debug_assert!(dd >= 0, "pseudo-division by zero");
    let df = f.deg(v);
    if df < dd {
        return f.clone();
    }
    if dd == 0 {
        // Constant-in-v divisor divides after scaling; remainder is zero.
        return Polynomial::zero(f.nvars());
    }
    let lc_d = d.coeff_of_power(v, dd as u32);
    let delta = df - dd;
    let mut r = f.clone();
    let mut mults: i64 = 0;
    while !r.is_zero() && r.deg(v) >= dd {
        let rd = r.deg(v);
        let lc_r = r.coeff_of_power(v, rd as u32);
        let mut shift_exps = vec![0u32; f.nvars()];
        shift_exps[v] = (rd - dd) as u32;
        let shift = Polynomial::from_terms(f.nvars(), vec![(shift_exps, Rational::from(num::BigInt::from(1)))]);
        r = &(&lc_d * &r) - &(&(&shift * &lc_r) * d);
        mults += 1;
    }
    for _ in mults..=delta {
        r = &lc_d * &r;
    }
    r
}

/// Canonical gcd of the coefficient polynomials of `p` viewed in `v`
/// (1 when the coefficients are collectively coprime).
fn coeff_gcd(p: &Polynomial, v: usize) -> Polynomial {
    let mut g = Polynomial::zero(p.nvars());
    for c in p.coeffs_in(v) {
        if !c.is_zero() {
            g = gcd(&g, &c);
        }
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

/// Canonical (normalized) multivariate gcd over the rationals.
/// `gcd(0, 0) = 0`; any nonzero constant argument gives 1.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert_eq!(a.nvars(), b.nvars(), "variable count mismatch");
    if a.is_zero() {
        return if b.is_zero() {
            Polynomial::zero(a.nvars())
        } else {
            b.normalize().expect("nonzero")
        };
    }
    if b.is_zero() {
        return a.normalize().expect("nonzero");
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.nvars());
    }
    let v = a.main_var().max(b.main_var()).expect("nonconstant");
    let da = a.deg(v);
    let db = b.deg(v);
    if da == 0 {
        // a is free of v, so the gcd divides the content of b in v.
        return gcd(a, &coeff_gcd(b, v));
    }
    if db == 0 {
        return gcd(&coeff_gcd(a, v), b);
    }
    let ca = coeff_gcd(a, v);
    let cb = coeff_gcd(b, v);
    let cg = gcd(&ca, &cb);
    let pa = exact_div(a, &ca).expect("content divides");
    let pb = exact_div(b, &cb).expect("content divides");

    // Primitive PRS on the primitive parts.
    let (mut f, mut g) = if pa.deg(v) >= pb.deg(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    let prim = loop {
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            break primitive_wrt(&g, v);
        }
        if r.deg(v) == 0 {
            break Polynomial::one(a.nvars());
        }
        f = g;
        g = primitive_wrt(&r, v);
    };
    (&cg * &prim).normalize().expect("nonzero")
}

/// Primitive-in-`v`, normalized copy of `p`.
fn primitive_wrt(p: &Polynomial, v: usize) -> Polynomial {
    let c = coeff_gcd(p, v);
    exact_div(p, &c)
        .expect("content divides")
        .normalize()
        .expect("nonzero")
}

/// Content of `p` viewed as univariate in `v`: the exact cofactor
/// `p / primitive_part(p, v)`.
pub fn content(p: &Polynomial, v: usize) -> Result<Polynomial> {
    let pp = primitive_part(p, v)?;
    Ok(exact_div(p, &pp).expect("primitive part divides"))
}

/// Canonical primitive part of `p` in `v`; `p = content · primitive_part`
/// exactly.
pub fn primitive_part(p: &Polynomial, v: usize) -> Result<Polynomial> {
    if v >= p.nvars() {
        return Err(CadError::UnknownVariable(format!(
            "variable index {v} out of range"
        )));
    }
    if p.is_zero() {
        return Err(CadError::InvalidInput(
            "content of the zero polynomial".into(),
        ));
    }
    Ok(primitive_wrt(p, v))
}

/// Square-free part of `p` with respect to `v`: the primitive part divided
/// by `gcd(p, ∂p/∂v)`, normalized. Requires positive degree in `v`.
pub fn square_free_part(p: &Polynomial, v: usize) -> Result<Polynomial> {
    if v >= p.nvars() {
        return Err(CadError::UnknownVariable(format!(
            "variable index {v} out of range"
        )));
    }
    if p.is_zero() || p.deg(v) < 1 {
        return Err(CadError::InvalidInput(
            "square-free part needs positive degree in the main variable".into(),
        ));
    }
    let pp = primitive_wrt(p, v);
    let dp = pp.derivative(v)?;
    let g = gcd(&pp, &dp);
    exact_div(&pp, &g).expect("gcd divides").normalize()
}

/// Square-free, pairwise-coprime (gcd-free) basis in `v`.
///
/// Every output element is square-free in `v` with positive degree in `v`,
/// pairwise gcds are constant, and over any point of the lower space the
/// product has the same roots in `v` as the product of the input.
pub fn square_free_basis<'a, I>(elems: I, v: usize) -> Result<Vec<Polynomial>>
where
    I: IntoIterator<Item = &'a Polynomial>,
{
    let mut work: Vec<Polynomial> = Vec::new();
    for p in elems {
        let sf = square_free_part(p, v)?;
        if sf.deg(v) >= 1 && !work.contains(&sf) {
            work.push(sf);
        }
    }
    // Pairwise refinement: split common factors until all gcds are constant.
    // Each split strictly reduces total degree, so this terminates.
    'outer: loop {
        for i in 0..work.len() {
            for j in (i + 1)..work.len() {
                let g = gcd(&work[i], &work[j]);
                if g.is_constant() {
                    continue;
                }
                let pi = exact_div(&work[i], &g)
                    .expect("gcd divides")
                    .normalize()
                    .expect("nonzero");
                let pj = exact_div(&work[j], &g)
                    .expect("gcd divides")
                    .normalize()
                    .expect("nonzero");
                // Remove the higher index first.
                work.remove(j);
                work.remove(i);
                for piece in [g, pi, pj] {
                    if !piece.is_constant() && !work.contains(&piece) {
                        work.push(piece);
                    }
                }
                continue 'outer;
            }
        }
        break;
    }
    Ok(work)
}

/// True when `r` is the zero rational (small helper for internal asserts).
#[allow(dead_code)]
fn is_zero_rat(r: &Rational) -> bool {
    r.is_zero()
}
