//! Seeded sparse random polynomial generation for the benchmark.

use num::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cad_core::poly::{Polynomial, Rational};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sparse random polynomial: at most `terms` monomials of total degree ≤
/// `degree`, nonzero integer coefficients in [−99, 99], never constant.
pub fn random_polynomial(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    terms: usize,
    degree: u32,
) -> Polynomial {
    loop {
        let mut entries: Vec<(Vec<u32>, Rational)> = Vec::with_capacity(terms);
        for _ in 0..terms {
            // Distinct monomials keep coefficients inside the drawn range.
            let mut exps = vec![0u32; nvars];
            for attempt in 0..8 {
                let d = rng.gen_range(0..=degree);
                exps = vec![0u32; nvars];
                for _ in 0..d {
                    exps[rng.gen_range(0..nvars)] += 1;
                }
                if !entries.iter().any(|(e, _)| e == &exps) {
                    break;
                }
                if attempt == 7 {
                    exps.clear();
                }
            }
            if exps.is_empty() {
                continue;
            }
            let mut c: i64 = 0;
            while c == 0 {
                c = rng.gen_range(-99..=99);
            }
            entries.push((exps, Rational::from(BigInt::from(c))));
        }
        let p = Polynomial::from_terms(nvars, entries);
        if !p.is_zero() && !p.is_constant() {
            return p;
        }
    }
}

/// A pair of random polynomials drawn from the same stream.
pub fn random_pair(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    terms: usize,
    degree: u32,
) -> (Polynomial, Polynomial) {
    let p = random_polynomial(rng, nvars, terms, degree);
    let q = random_polynomial(rng, nvars, terms, degree);
    (p, q)
}
