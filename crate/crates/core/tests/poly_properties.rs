//! Property tests for the polynomial layer: ring laws, canonical forms,
//! the resultant's vanishing semantics against a brute-force oracle, and
//! square-free-basis root-set preservation.

mod common;

use common::{qpoly_of, random_poly, random_rational, rng_for, QPoly};

use num::Zero;
use proptest::prelude::*;

use cad_core::poly::{
    eq_up_to_constant, gcd, parse_poly, resultant, square_free_basis, PolySet, Polynomial,
    Rational, VarOrder,
};
use cad_core::realroot::{isolate, roots_equal};

fn ord2() -> VarOrder {
    VarOrder::new(vec!["x1", "x2"]).unwrap()
}

fn p2(s: &str) -> Polynomial {
    parse_poly(s, &ord2()).unwrap()
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec(
        (
            proptest::collection::vec(0u32..4, 2),
            -9i64..=9,
        ),
        0..5,
    )
    .prop_map(|terms| {
        Polynomial::from_terms(
            2,
            terms
                .into_iter()
                .filter(|(_, c)| *c != 0)
                .map(|(e, c)| (e, Rational::from(num::BigInt::from(c))))
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        let left = &(&p + &q) * &r;
        let right = &(&p * &r) + &(&q * &r);
        prop_assert_eq!(left, right);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
    }

    #[test]
    fn normalize_idempotent_and_scale_free(p in arb_poly(), c in 1i64..=7) {
        prop_assume!(!p.is_zero());
        let n = p.normalize().unwrap();
        prop_assert_eq!(n.normalize().unwrap(), n.clone());
        let scaled = p.scale(&Rational::new(num::BigInt::from(c), num::BigInt::from(3)));
        prop_assert_eq!(scaled.normalize().unwrap(), n.clone());
        let negated = -&p;
        prop_assert_eq!(negated.normalize().unwrap(), n);
    }

    #[test]
    fn polyset_rejects_constant_multiples(p in arb_poly(), c in 1i64..=5) {
        prop_assume!(!p.is_zero() && !p.is_constant());
        let mut s = PolySet::new();
        s.insert(&p);
        let scaled = p.scale(&Rational::from(num::BigInt::from(c)));
        s.insert(&scaled);
        s.insert(&-&p);
        prop_assert_eq!(s.len(), 1);
    }
}

/// Brute-force semantics: res(p, q, x2) vanishes at rational x1 = a iff
/// the substituted univariate images share a root (nonconstant gcd) or
/// both leading coefficients vanish there.
fn check_resultant_at_points(p: &Polynomial, q: &Polynomial, points: &[Rational]) {
    let res = resultant(p, q, 1).unwrap();
    let lc_p = p.leading_coeff(1).unwrap();
    let lc_q = q.leading_coeff(1).unwrap();
    for a in points {
        let res_at = res.substitute(0, a).unwrap();
        let res_vanishes = res_at.is_zero()
            || res_at.constant_value().map(|c| c.is_zero()).unwrap_or(false);
        let pa = qpoly_of(&p.substitute(0, a).unwrap());
        let qa = qpoly_of(&q.substitute(0, a).unwrap());
        let oracle = if pa.is_zero() || qa.is_zero() {
            true
        } else {
            let g = pa.gcd(&qa);
            let common_root = !g.is_zero() && !g.is_constant();
            let lcs_vanish = lc_p.substitute(0, a).unwrap().is_zero()
                || lc_p
                    .substitute(0, a)
                    .unwrap()
                    .constant_value()
                    .map(|c| c.is_zero())
                    .unwrap_or(false);
            let lcs_vanish_q = lc_q
                .substitute(0, a)
                .unwrap()
                .constant_value()
                .map(|c| c.is_zero())
                .unwrap_or(false);
            common_root || (lcs_vanish && lcs_vanish_q)
        };
        assert_eq!(
            res_vanishes, oracle,
            "resultant vanishing mismatch at x1 = {a} for\n  p = {p}\n  q = {q}"
        );
    }
}

#[test]
fn resultant_vanishing_matches_brute_force() {
    let mut rng = rng_for(0xCAD_1);
    // 200 random evaluation points across a mix of instances.
    let crafted = [
        // Shared factor: resultant is identically zero.
        (p2("(x2 - x1)*(x2 + 1)"), p2("(x2 - x1)*(x2 - 2)")),
        // Intersecting curves.
        (p2("x1^2 + x2^2 - 1"), p2("x1^3 - x2^2")),
        // Leading coefficients vanish together at x1 = 0.
        (p2("x1*x2^2 + x2 + 1"), p2("x1*x2^2 - x2 + 3")),
        (p2("x1*x2 + 1"), p2("x1*x2 - 1")),
    ];
    let mut points = Vec::new();
    for _ in 0..40 {
        points.push(random_rational(&mut rng, 6));
    }
    points.push(Rational::zero());
    points.push(Rational::from(num::BigInt::from(1)));
    for (p, q) in &crafted {
        check_resultant_at_points(p, q, &points);
    }
    for _ in 0..12 {
        let p = random_poly(&mut rng, 2, 4, 4, 9);
        let q = random_poly(&mut rng, 2, 4, 4, 9);
        if p.degree(1).unwrap() < 1 || q.degree(1).unwrap() < 1 {
            continue;
        }
        let pts: Vec<Rational> = (0..10).map(|_| random_rational(&mut rng, 9)).collect();
        check_resultant_at_points(&p, &q, &pts);
    }
}

#[test]
fn square_free_basis_preserves_roots_at_random_points() {
    let mut rng = rng_for(0xCAD_2);
    let sets: Vec<Vec<Polynomial>> = vec![
        vec![p2("(x2^2 - x1)^2"), p2("x2^3 - x1*x2")],
        vec![p2("x2^2 - 1"), p2("x2 - 1"), p2("x2^2 + x2 - 2")],
        vec![p2("(x2 - x1)^3"), p2("x2^2 - x1^2")],
    ];
    let mut checked = 0;
    for input in &sets {
        let basis = square_free_basis(input.iter(), 1).unwrap();
        // Basis structure: square-free, pairwise coprime elements.
        for (i, a) in basis.iter().enumerate() {
            assert!(gcd(a, &a.derivative(1).unwrap()).is_constant());
            for b in basis.iter().skip(i + 1) {
                assert!(gcd(a, b).is_constant());
            }
        }
        // Root-set equality over random lower-space points.
        'point: for _ in 0..17 {
            let a = random_rational(&mut rng, 8);
            let mut in_roots = Vec::new();
            for p in input {
                let img = p.substitute(0, &a).unwrap();
                if img.is_zero() || img.is_constant() {
                    // Nullified input: the product's root set degenerates.
                    continue 'point;
                }
                in_roots.push(isolate(&img).unwrap());
            }
            let mut out_roots = Vec::new();
            for p in &basis {
                let img = p.substitute(0, &a).unwrap();
                if img.is_zero() || img.is_constant() {
                    continue 'point;
                }
                out_roots.push(isolate(&img).unwrap());
            }
            let merged_in = cad_core::realroot::merge_roots(&in_roots);
            let merged_out = cad_core::realroot::merge_roots(&out_roots);
            assert_eq!(merged_in.len(), merged_out.len(), "at x1 = {a}");
            for (x, y) in merged_in.iter().zip(merged_out.iter()) {
                assert!(roots_equal(x, y), "at x1 = {a}");
            }
            checked += 1;
        }
    }
    assert!(checked >= 50, "only {checked} points checked");
}

#[test]
fn isolate_counts_match_sturm_oracle() {
    let mut rng = rng_for(0xCAD_3);
    let o1 = VarOrder::new(vec!["x1"]).unwrap();
    let mut nontrivial = 0;
    for _ in 0..100 {
        let p = random_poly(&mut rng, 1, 4, 6, 20);
        let roots = isolate(&p).unwrap();
        let oracle = common::sturm_count_all(&qpoly_of(&p));
        assert_eq!(roots.len(), oracle, "count mismatch for {p}");
        if roots.len() > 1 {
            nontrivial += 1;
        }
        // Each algebraic isolating interval contains exactly one root of
        // the square-free part, and endpoints straddle a sign change.
        let sf = qpoly_of(&p).square_free_part();
        for r in roots.iter() {
            if r.as_rational().is_some() {
                continue;
            }
            let (lo, hi) = r.interval();
            let s_lo = sf.eval(&lo);
            let s_hi = sf.eval(&hi);
            assert!(!s_lo.is_zero() && !s_hi.is_zero());
            assert!(
                (s_lo < Rational::zero()) != (s_hi < Rational::zero()),
                "no sign change across the isolating interval of {p}"
            );
            assert_eq!(common::sturm_count_interval(&qpoly_of(&p), &lo, &hi), 1);
        }
    }
    assert!(nontrivial >= 10);
    // A couple of crafted multi-root cases.
    for s in ["(x1 - 1)*(x1 + 1)*(x1^2 - 2)", "(2*x1 - 1)^2*(x1^2 - 3)^2"] {
        let p = parse_poly(s, &o1).unwrap();
        assert_eq!(
            isolate(&p).unwrap().len(),
            common::sturm_count_all(&qpoly_of(&p))
        );
    }
}

#[test]
fn qpoly_oracle_sanity() {
    // The oracle itself on known data: (x−1)x(x+2) has three real roots.
    let o1 = VarOrder::new(vec!["x1"]).unwrap();
    let p = parse_poly("(x1 - 1)*x1*(x1 + 2)", &o1).unwrap();
    assert_eq!(common::sturm_count_all(&qpoly_of(&p)), 3);
    let q = parse_poly("x1^2 + 1", &o1).unwrap();
    assert_eq!(common::sturm_count_all(&qpoly_of(&q)), 0);
    let cube = parse_poly("x1^3 + x1^2 - 1", &o1).unwrap();
    assert_eq!(common::sturm_count_all(&qpoly_of(&cube)), 1);
}

#[test]
fn resultant_is_symmetric_up_to_constant() {
    let mut rng = rng_for(0xCAD_4);
    for _ in 0..10 {
        let p = random_poly(&mut rng, 2, 3, 3, 9);
        let q = random_poly(&mut rng, 2, 3, 3, 9);
        if p.degree(1).unwrap() < 1 || q.degree(1).unwrap() < 1 {
            continue;
        }
        let a = resultant(&p, &q, 1).unwrap();
        let b = resultant(&q, &p, 1).unwrap();
        if a.is_zero() {
            assert!(b.is_zero());
        } else {
            assert!(eq_up_to_constant(&a, &b));
        }
    }
}

#[test]
fn qpoly_rem_and_gcd_sanity() {
    let of = |cs: &[i64]| {
        QPoly::new(
            cs.iter()
                .map(|&c| Rational::from(num::BigInt::from(c)))
                .collect(),
        )
    };
    // (x² + 2x + 1)(x² + 3) leaves remainder 0 by x² + 2x + 1.
    let prod = of(&[3, 6, 4, 2, 1]);
    assert!(prod.rem(&of(&[1, 2, 1])).is_zero());
    // x² + 1 mod x² is the constant 1.
    let r = of(&[1, 0, 1]).rem(&of(&[0, 0, 1]));
    assert_eq!(r, of(&[1]));
    // gcd of (x−1)(x+2) and (x−1)(x−5) is monic (x−1).
    let g = of(&[-2, 1, 1]).gcd(&of(&[5, -6, 1]));
    assert_eq!(g, of(&[-1, 1]));
    // Square-free part of (x−1)²(x+1) has the same two roots, each once.
    let sf = of(&[1, -1, -1, 1]).square_free_part();
    assert_eq!(sf.deg(), 2);
    assert!(sf.eval(&Rational::from(num::BigInt::from(1))).is_zero());
    assert!(sf.eval(&Rational::from(num::BigInt::from(-1))).is_zero());
}
