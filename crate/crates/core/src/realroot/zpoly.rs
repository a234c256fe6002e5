//! Dense univariate integer polynomials: the workhorse behind root
//! isolation.
//!
//! Rational roots are found exactly without integer factorization: a root
//! `u/w` of `p` in lowest terms has `w | lc(p)`, so `y = lc·x` turns them
//! into integer roots of the monic transform `lc^(n−1)·p(y/lc)`, and those
//! are found by Hensel lifting a small-prime root to the Cauchy bound.
//! Deflating them out first leaves a cofactor with no rational roots at
//! all, which keeps the Descartes bisection free of endpoint special
//! cases.

use num::{BigInt, Integer, One, Signed, Zero};

use super::super::poly::Rational;

/// Dense univariate polynomial over Z, coefficients in ascending degree
/// order with a nonzero last entry (the zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ZPoly {
    pub(crate) coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ZPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial.
    pub fn deg(&self) -> usize {
        debug_assert!(!self.is_zero());
        self.coeffs.len() - 1
    }

    pub fn lc(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero")
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `p(x)·den(x)^deg` — integer-valued, same sign as `p(x)`.
    pub fn eval_scaled(&self, x: &Rational) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        let num = x.numer();
        let den = x.denom();
        let mut acc = self.coeffs.last().unwrap().clone();
        let mut den_pow = BigInt::one();
        for c in self.coeffs.iter().rev().skip(1) {
            den_pow *= den;
            acc = acc * num + c * &den_pow;
        }
        acc
    }

    /// Exact sign of `p(x)`.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let v = self.eval_scaled(x);
        if v.is_zero() {
            0
        } else if v.is_negative() {
            -1
        } else {
            1
        }
    }

    pub fn derivative(&self) -> ZPoly {
        if self.coeffs.len() <= 1 {
            return ZPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        ZPoly::new(coeffs)
    }

    /// Positive gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Content-free copy with positive leading coefficient.
    pub fn canonical(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut c = self.content();
        if self.lc().is_negative() {
            c = -c;
        }
        ZPoly::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    fn scale(&self, c: &BigInt) -> ZPoly {
        ZPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    fn sub(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            let b = other.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero);
            out.push(a - b);
        }
        ZPoly::new(out)
    }

    /// Pseudo-remainder of `self` by `d` (`d` nonzero).
    fn pseudo_rem(&self, d: &ZPoly) -> ZPoly {
        debug_assert!(!d.is_zero());
        if self.is_zero() || self.deg() < d.deg() {
            return self.clone();
        }
        if d.is_constant() {
            return ZPoly::zero();
        }
        let dd = d.deg();
        let lc_d = d.lc().clone();
        let mut r = self.clone();
        while !r.is_zero() && r.deg() >= dd {
            let shift = r.deg() - dd;
            let lc_r = r.lc().clone();
            let mut sub = vec![BigInt::zero(); shift];
            sub.extend(d.coeffs.iter().map(|c| c * &lc_r));
            r = r.scale(&lc_d).sub(&ZPoly::new(sub));
        }
        r
    }

    /// Canonical gcd via a primitive remainder sequence.
    pub fn gcd(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() {
            return other.canonical();
        }
        if other.is_zero() {
            return self.canonical();
        }
        let (mut f, mut g) = if self.deg() >= other.deg() {
            (self.canonical(), other.canonical())
        } else {
            (other.canonical(), self.canonical())
        };
        loop {
            if g.is_constant() {
                return ZPoly::new(vec![BigInt::one()]);
            }
            let r = f.pseudo_rem(&g);
            if r.is_zero() {
                return g.canonical();
            }
            f = g;
            g = r.canonical();
        }
    }

    /// Square-free part: canonical `p / gcd(p, p')`.
    pub fn square_free(&self) -> ZPoly {
        debug_assert!(!self.is_zero());
        let p = self.canonical();
        if p.is_constant() {
            return p;
        }
        let g = p.gcd(&p.derivative());
        if g.is_constant() {
            return p;
        }
        p.exact_div(&g).expect("gcd divides").canonical()
    }

    /// Exact division over Q, `None` when not divisible or not integral.
    pub fn exact_div(&self, d: &ZPoly) -> Option<ZPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if self.deg() < d.deg() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let n = self.deg();
        let m = d.deg();
        let mut quot = vec![BigInt::zero(); n - m + 1];
        for k in (0..=n - m).rev() {
            let top = rem[k + m].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(d.lc());
            if !r.is_zero() {
                return None;
            }
            quot[k] = q.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(ZPoly::new(quot))
    }

    /// Divide out the linear factor `w·x − u` (must divide exactly).
    pub fn deflate_rational(&self, root: &Rational) -> ZPoly {
        let u = root.numer().clone();
        let w = root.denom().clone();
        let lin = ZPoly::new(vec![-u, w]);
        self.exact_div(&lin).expect("rational root divides")
    }

    /// `p(x + c)` by Horner composition.
    pub fn taylor_shift(&self, c: &BigInt) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero();
        }
        let mut res = vec![self.coeffs.last().unwrap().clone()];
        for a in self.coeffs.iter().rev().skip(1) {
            // res = res·(x + c) + a
            let mut next = vec![BigInt::zero(); res.len() + 1];
            for (i, r) in res.iter().enumerate() {
                next[i + 1] += r;
                next[i] += r * c;
            }
            next[0] += a;
            res = next;
        }
        ZPoly::new(res)
    }

    /// `p(s·x)`: coefficient `i` scaled by `s^i`.
    pub fn stretch(&self, s: &BigInt) -> ZPoly {
        let mut pow = BigInt::one();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i > 0 {
                    pow *= s;
                }
                c * &pow
            })
            .collect();
        ZPoly::new(coeffs)
    }

    /// Number of sign variations in the coefficient sequence.
    pub fn variations(&self) -> usize {
        let mut count = 0;
        let mut last = 0i32;
        for c in &self.coeffs {
            let s = if c.is_zero() {
                0
            } else if c.is_negative() {
                -1
            } else {
                1
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Coefficients reversed: `x^n · p(1/x)`.
    pub fn reversed(&self) -> ZPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        ZPoly::new(c)
    }

    /// Power-of-two Cauchy bound: `2^k > 1 + max|a_i| / |lc|`, so every
    /// real root lies strictly inside `(−2^k, 2^k)`.
    pub fn root_bound_pow2(&self) -> BigInt {
        debug_assert!(!self.is_zero() && !self.is_constant());
        let lc = self.lc().abs();
        let max = self
            .coeffs
            .iter()
            .map(|c| c.abs())
            .max()
            .expect("nonzero");
        // ceil(max/lc) + 1 ≤ 2^k
        let target = max.div_ceil(&lc) + 2;
        let mut b = BigInt::one();
        while b < target {
            b *= 2;
        }
        b
    }
}

/// All rational roots of a nonzero squarefree polynomial, exactly.
///
/// Uses the monic transform + Hensel lifting; falls back to interval
/// sieving against the `1/lc` lattice if no usable prime is found.
pub fn rational_roots(p: &ZPoly) -> Vec<Rational> {
    debug_assert!(!p.is_zero());
    if p.is_constant() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut work = p.canonical();
    if work.coeffs[0].is_zero() {
        // Squarefree input has at most one root at the origin.
        out.push(Rational::zero());
        let mut c = work.coeffs;
        c.remove(0);
        work = ZPoly::new(c);
    }
    if work.is_constant() {
        return out;
    }
    if work.deg() == 1 {
        out.push(Rational::new(-work.coeffs[0].clone(), work.coeffs[1].clone()));
        out.sort();
        return out;
    }
    let candidates = match hensel_integer_candidates(&work) {
        Some(c) => c,
        None => sieve_candidates(&work),
    };
    let lc = work.lc().clone();
    for y in candidates {
        let r = Rational::new(y, lc.clone());
        if work.sign_at(&r) == 0 && !out.contains(&r) {
            out.push(r);
        }
    }
    out.sort();
    out
}

/// Candidate integer roots of the monic transform `q(y) = lc^(n−1)·p(y/lc)`
/// via Hensel lifting modulo a prime where every modular root is simple.
/// `None` when no prime in the list works.
fn hensel_integer_candidates(p: &ZPoly) -> Option<Vec<BigInt>> {
    const PRIMES: [u32; 25] = [
        101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
        193, 197, 199, 211, 223, 227, 229,
    ];
    let lc = p.lc().clone();
    // Integer roots y of q satisfy |y| = |lc·x| ≤ lc·B(p) ≤ |lc| + max|p_i|.
    let bound: BigInt = p.coeffs.iter().map(|c| c.abs()).max().unwrap() + lc.abs() + 1;
    let target: BigInt = &bound * 2 + 1;
    // q coefficients: p_i · lc^(n−1−i); computed modulo what we need.
    'prime: for &pr in &PRIMES {
        let m = BigInt::from(pr);
        let q_mod: Vec<BigInt> = monic_transform_mod(p, &m);
        let dq_mod: Vec<BigInt> = poly_derivative_coeffs(&q_mod, &m);
        // Enumerate roots mod pr.
        let mut roots_mod = Vec::new();
        for r in 0..pr {
            let rb = BigInt::from(r);
            if horner_mod(&q_mod, &rb, &m).is_zero() {
                if horner_mod(&dq_mod, &rb, &m).is_zero() {
                    continue 'prime; // multiple modular root, unusable prime
                }
                roots_mod.push(rb);
            }
        }
        let mut candidates = Vec::new();
        for r0 in roots_mod {
            if let Some(y) = hensel_lift(p, &r0, &m, &target) {
                candidates.push(y);
            }
        }
        return Some(candidates);
    }
    None
}

/// Coefficients of `q(y) = lc^(n−1)·p(y/lc)` reduced modulo `m`.
fn monic_transform_mod(p: &ZPoly, m: &BigInt) -> Vec<BigInt> {
    let n = p.deg();
    let lc = p.lc();
    let mut out = Vec::with_capacity(n + 1);
    for (i, c) in p.coeffs.iter().enumerate() {
        let e = (n - 1).saturating_sub(i) as u32;
        let v = if i == n {
            BigInt::one()
        } else {
            c * lc.modpow(&BigInt::from(e), m)
        };
        out.push(v.mod_floor(m));
    }
    out
}

fn poly_derivative_coeffs(c: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, x)| (x * BigInt::from(i)).mod_floor(m))
        .collect()
}

fn horner_mod(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for ci in c.iter().rev() {
        acc = (acc * x + ci).mod_floor(m);
    }
    acc
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Quadratically lift a simple root of the monic transform mod `p0` until
/// the modulus exceeds `target`; returns the balanced representative.
fn hensel_lift(p: &ZPoly, r0: &BigInt, p0: &BigInt, target: &BigInt) -> Option<BigInt> {
    let mut modulus = p0.clone();
    let mut r = r0.clone();
    let q0 = monic_transform_mod(p, &modulus);
    let dq0 = poly_derivative_coeffs(&q0, &modulus);
    let mut inv = mod_inverse(&horner_mod(&dq0, &r, &modulus), &modulus)?;
    while modulus <= *target {
        let m2 = &modulus * &modulus;
        let q = monic_transform_mod(p, &m2);
        // Newton step for the root, then lift the derivative inverse.
        let qr = horner_mod(&q, &r, &m2);
        r = (&r - qr * &inv).mod_floor(&m2);
        let dq = poly_derivative_coeffs(&q, &m2);
        let dr = horner_mod(&dq, &r, &m2);
        inv = (&inv * ((BigInt::from(2) - dr * &inv).mod_floor(&m2))).mod_floor(&m2);
        modulus = m2;
    }
    // Balanced representative in (−modulus/2, modulus/2].
    let half = &modulus / 2;
    if r > half {
        r -= &modulus;
    }
    Some(r)
}

/// Fallback candidate generation: isolate roots and refine each interval
/// until it contains at most one point of the `(1/lc)·Z` lattice.
fn sieve_candidates(p: &ZPoly) -> Vec<BigInt> {
    let lc = p.lc().abs();
    let intervals = super::descartes::isolate_intervals(p);
    let mut out = Vec::new();
    for (mut lo, mut hi) in intervals {
        let sign_lo = p.sign_at(&lo);
        if sign_lo == 0 {
            // Degenerate pair: the root itself, rational by construction.
            out.push(candidate_from(&lo, &lc));
            continue;
        }
        // Shrink until (lc·lo, lc·hi) spans less than 1.
        loop {
            let width = (&hi - &lo) * Rational::from(lc.clone());
            if width < Rational::one() {
                break;
            }
            let mid = (&lo + &hi) / Rational::from(BigInt::from(2));
            let s = p.sign_at(&mid);
            if s == 0 {
                lo = mid.clone();
                hi = mid;
                break;
            }
            if s == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // Unique lattice point m/lc in [lo, hi], if any.
        let m_lo = (&lo * Rational::from(lc.clone())).ceil();
        let m = m_lo.numer().clone();
        let cand = Rational::new(m.clone(), lc.clone());
        if cand >= lo && cand <= hi {
            out.push(m);
        }
    }
    out
}

fn candidate_from(x: &Rational, lc: &BigInt) -> BigInt {
    // x = m/lc exactly when lc·x is integral.
    let scaled = x * Rational::from(lc.clone());
    debug_assert!(scaled.is_integer());
    scaled.numer().clone()
}
