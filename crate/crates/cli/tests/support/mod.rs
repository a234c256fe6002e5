//! Support for the acceptance suite: an independent Sturm-chain root
//! counter (kept separate from the engine's Descartes isolation so it can
//! act as an oracle) and the seeded corpus generator.

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cad_core::poly::{Polynomial, Rational};

/// Dense univariate polynomial over Q for oracle arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
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

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn deg(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn lc(&self) -> &BigRational {
        self.coeffs.last().unwrap()
    }

    fn derivative(&self) -> QPoly {
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
                .collect(),
        )
    }

    fn rem(&self, d: &QPoly) -> QPoly {
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
        }
        QPoly::new(r)
    }

    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            if b.is_constant() {
                return QPoly::new(vec![BigRational::one()]);
            }
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a
    }

    fn square_free_part(&self) -> QPoly {
        if self.is_constant() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            return self.clone();
        }
        // self / g by synthetic elimination.
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

/// Distinct real roots of `p` over (−∞, ∞), by Sturm's theorem on the
/// square-free part.
pub fn sturm_count_all(p: &QPoly) -> usize {
    let sf = p.square_free_part();
    if sf.is_constant() {
        return 0;
    }
    let mut chain = vec![sf.clone(), sf.derivative()];
    loop {
        let k = chain.len();
        let r = chain[k - 2].rem(&chain[k - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(QPoly::new(r.coeffs.iter().map(|c| -c).collect()));
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

/// A univariate `Polynomial` viewed densely for the oracle.
pub fn qpoly_of(p: &Polynomial) -> QPoly {
    let vars = p.vars_present();
    assert!(vars.len() <= 1);
    let v = vars.first().copied().unwrap_or(0);
    QPoly::new(
        p.coeffs_in(v)
            .iter()
            .map(|c| c.constant_value().expect("constant coefficient"))
            .collect(),
    )
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sparse random polynomial for the equivalence corpus.
pub fn corpus_poly(
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
