//! Shared test support: an independent Sturm-chain root counter, a
//! univariate Euclidean gcd over Q, and a seeded sparse random polynomial
//! generator. Deliberately separate from the library's own algorithms so
//! they can serve as oracles for it.

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cad_core::poly::{Polynomial, Rational, VarOrder};

/// Dense univariate polynomial over Q for oracle arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct QPoly {
    pub coeffs: Vec<BigRational>, // ascending, last nonzero (empty = zero)
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg(&self) -> usize {
        assert!(!self.is_zero());
        self.coeffs.len() - 1
    }

    pub fn lc(&self) -> &BigRational {
        self.coeffs.last().unwrap()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::new(vec![]);
        }
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
                .collect(),
        )
    }

    /// Remainder of `self` by `d` under ordinary field division.
    pub fn rem(&self, d: &QPoly) -> QPoly {
        assert!(!d.is_zero());
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        while r.len() > dd {
            let k = r.len() - 1;
            let factor = r[k].clone() / d.lc();
            for (i, dc) in d.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                let v = r[idx].clone() - &factor * dc;
                r[idx] = v;
            }
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
            if r.len() <= dd {
                break;
            }
        }
        QPoly::new(r)
    }

    /// Monic Euclidean gcd over Q.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lc = a.lc().clone();
        QPoly::new(a.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn square_free_part(&self) -> QPoly {
        assert!(!self.is_zero());
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            return self.clone();
        }
        // Exact division: (self / g) via repeated remainder elimination.
        let mut quot = vec![BigRational::zero(); self.deg() - g.deg() + 1];
        let mut r = self.coeffs.clone();
        let gd = g.deg();
        for k in (0..quot.len()).rev() {
            if r.len() < k + gd + 1 {
                continue;
            }
            let c = r[k + gd].clone() / g.lc();
            quot[k] = c.clone();
            for (i, gc) in g.coeffs.iter().enumerate() {
                let v = r[k + i].clone() - &c * gc;
                r[k + i] = v;
            }
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        QPoly::new(quot)
    }
}

fn sign_of(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_negative() {
        -1
    } else {
        1
    }
}

fn variations(signs: &[i32]) -> usize {
    let mut count = 0;
    let mut last = 0;
    for &s in signs {
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Sturm chain of the square-free part.
pub fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let sf = p.square_free_part();
    let mut chain = vec![sf.clone()];
    if sf.is_constant() {
        return chain;
    }
    chain.push(sf.derivative());
    loop {
        let k = chain.len();
        let r = chain[k - 2].rem(&chain[k - 1]);
        if r.is_zero() {
            return chain;
        }
        chain.push(QPoly::new(r.coeffs.iter().map(|c| -c).collect()));
    }
}

/// Number of distinct real roots, by Sturm's theorem over (−∞, ∞).
pub fn sturm_count_all(p: &QPoly) -> usize {
    let chain = sturm_chain(p);
    if chain[0].is_constant() {
        return 0;
    }
    let at_neg: Vec<i32> = chain
        .iter()
        .map(|q| {
            if q.is_zero() {
                0
            } else if q.deg() % 2 == 0 {
                sign_of(q.lc())
            } else {
                -sign_of(q.lc())
            }
        })
        .collect();
    let at_pos: Vec<i32> = chain
        .iter()
        .map(|q| if q.is_zero() { 0 } else { sign_of(q.lc()) })
        .collect();
    variations(&at_neg) - variations(&at_pos)
}

/// Number of distinct real roots in (a, b], with `p(a) ≠ 0 ≠ p(b)` for the
/// square-free part.
pub fn sturm_count_interval(p: &QPoly, a: &BigRational, b: &BigRational) -> usize {
    let chain = sturm_chain(p);
    if chain[0].is_constant() {
        return 0;
    }
    let at_a: Vec<i32> = chain.iter().map(|q| sign_of(&q.eval(a))).collect();
    let at_b: Vec<i32> = chain.iter().map(|q| sign_of(&q.eval(b))).collect();
    variations(&at_a) - variations(&at_b)
}

/// View a univariate `Polynomial` as a dense oracle polynomial.
pub fn qpoly_of(p: &Polynomial) -> QPoly {
    let vars = p.vars_present();
    assert!(vars.len() <= 1, "oracle needs univariate input");
    let v = vars.first().copied().unwrap_or(0);
    QPoly::new(
        p.coeffs_in(v)
            .iter()
            .map(|c| c.constant_value().expect("constant coefficient"))
            .collect(),
    )
}

/// Seeded sparse random polynomial: at most `terms` monomials of total
/// degree ≤ `degree`, nonzero integer coefficients in [−max_coeff,
/// max_coeff], guaranteed nonconstant.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    terms: usize,
    degree: u32,
    max_coeff: i64,
) -> Polynomial {
    loop {
        let mut entries = Vec::new();
        for _ in 0..terms {
            let d = rng.gen_range(0..=degree);
            let mut exps = vec![0u32; nvars];
            for _ in 0..d {
                exps[rng.gen_range(0..nvars)] += 1;
            }
            let mut c = 0i64;
            while c == 0 {
                c = rng.gen_range(-max_coeff..=max_coeff);
            }
            entries.push((exps, Rational::from(BigInt::from(c))));
        }
        let p = Polynomial::from_terms(nvars, entries);
        if !p.is_zero() && !p.is_constant() {
            return p;
        }
    }
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random rational with small numerator/denominator.
pub fn random_rational(rng: &mut ChaCha8Rng, span: i64) -> Rational {
    let num = rng.gen_range(-span..=span);
    let den = rng.gen_range(1..=span);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[allow(dead_code)]
pub fn order_n(n: usize) -> VarOrder {
    VarOrder::new((1..=n).map(|i| format!("x{i}")).collect::<Vec<_>>()).unwrap()
}
