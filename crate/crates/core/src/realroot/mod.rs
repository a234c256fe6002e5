//! Isolation, exact ordering and deduplication of real roots of
//! univariate polynomials over Q, plus rational sample selection.
//!
//! Roots are either exact rationals or algebraic numbers held as a
//! square-free defining polynomial with an open isolating interval. All
//! comparisons are exact: overlapping intervals are resolved by gcd of
//! the defining polynomials (equality) or by refinement (ordering), never
//! by tolerance.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, One, Zero};

use crate::error::CadError;
use crate::poly::{format_rational, parse_poly, Polynomial, Rational, VarOrder};
use crate::Result;

mod descartes;
mod zpoly;

pub(crate) use zpoly::ZPoly;

/// Default isolating-interval width: 2⁻²⁰.
pub fn default_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(1u32 << 20))
}

/// A real algebraic number: square-free defining polynomial (primitive,
/// positive leading coefficient, no rational roots) and an open isolating
/// interval with nonzero endpoint signs.
#[derive(Debug, Clone)]
pub struct AlgebraicRoot {
    poly: ZPoly,
    lo: Rational,
    hi: Rational,
    sign_lo: i32,
}

impl AlgebraicRoot {
    fn new(poly: ZPoly, lo: Rational, hi: Rational) -> Self {
        let sign_lo = poly.sign_at(&lo);
        debug_assert!(sign_lo != 0 && poly.sign_at(&hi) != 0);
        debug_assert!(sign_lo != poly.sign_at(&hi));
        AlgebraicRoot { poly, lo, hi, sign_lo }
    }

    fn refine_step(&mut self) {
        let mid = (&self.lo + &self.hi) / Rational::from(BigInt::from(2));
        let s = self.poly.sign_at(&mid);
        debug_assert!(s != 0, "defining polynomial has no rational roots");
        if s == self.sign_lo {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    fn refine_to(&mut self, width: &Rational) {
        while &self.hi - &self.lo > *width {
            self.refine_step();
        }
    }
}

/// One isolated real root: an exact rational, or an algebraic number.
/// Rational roots are always stored as `Rational`, never as intervals.
#[derive(Debug, Clone)]
pub enum IsolatedRoot {
    Rational(Rational),
    Algebraic(AlgebraicRoot),
}

impl IsolatedRoot {
    pub fn from_rational(q: Rational) -> Self {
        IsolatedRoot::Rational(q)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            IsolatedRoot::Rational(q) => Some(q),
            IsolatedRoot::Algebraic(_) => None,
        }
    }

    /// (defining polynomial text in `x`, lo, hi) for algebraic roots.
    pub fn algebraic_parts(&self) -> Option<(String, &Rational, &Rational)> {
        match self {
            IsolatedRoot::Rational(_) => None,
            IsolatedRoot::Algebraic(a) => {
                Some((zpoly_text(&a.poly), &a.lo, &a.hi))
            }
        }
    }

    /// Rebuild an algebraic root from its state-file parts, validating the
    /// isolating-interval invariants.
    pub fn from_algebraic_parts(poly_text: &str, lo: Rational, hi: Rational) -> Result<Self> {
        let order = VarOrder::new(vec!["x"]).expect("valid");
        let p = parse_poly(poly_text, &order)?;
        let zp = zpoly_from_polynomial(&p)?;
        if zp.is_zero() || zp.is_constant() {
            return Err(CadError::Schema {
                location: "root.poly".into(),
                message: "defining polynomial must be nonconstant".into(),
            });
        }
        if lo >= hi {
            return Err(CadError::Schema {
                location: "root.interval".into(),
                message: "interval must satisfy lo < hi".into(),
            });
        }
        let zp = zp.canonical();
        let s_lo = zp.sign_at(&lo);
        let s_hi = zp.sign_at(&hi);
        if s_lo == 0 || s_hi == 0 || s_lo == s_hi {
            return Err(CadError::Schema {
                location: "root.interval".into(),
                message: "interval endpoints must straddle exactly one sign change".into(),
            });
        }
        if !zp.gcd(&zp.derivative()).is_constant() {
            return Err(CadError::Schema {
                location: "root.poly".into(),
                message: "defining polynomial must be square-free".into(),
            });
        }
        if !zpoly::rational_roots(&zp).is_empty() {
            return Err(CadError::Schema {
                location: "root.poly".into(),
                message: "defining polynomial must have no rational roots; rational roots are stored exactly".into(),
            });
        }
        Ok(IsolatedRoot::Algebraic(AlgebraicRoot::new(zp, lo, hi)))
    }

    /// Midpoint approximation after refining to the given width.
    pub fn approximate(&self, width: &Rational) -> Rational {
        match self {
            IsolatedRoot::Rational(q) => q.clone(),
            IsolatedRoot::Algebraic(a) => {
                let mut a = a.clone();
                a.refine_to(width);
                (&a.lo + &a.hi) / Rational::from(BigInt::from(2))
            }
        }
    }

    /// Current isolating interval (degenerate for rationals).
    pub fn interval(&self) -> (Rational, Rational) {
        match self {
            IsolatedRoot::Rational(q) => (q.clone(), q.clone()),
            IsolatedRoot::Algebraic(a) => (a.lo.clone(), a.hi.clone()),
        }
    }
}

impl fmt::Display for IsolatedRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsolatedRoot::Rational(q) => write!(f, "{}", format_rational(q)),
            IsolatedRoot::Algebraic(a) => write!(
                f,
                "root({}, ({}, {}))",
                zpoly_text(&a.poly),
                format_rational(&a.lo),
                format_rational(&a.hi)
            ),
        }
    }
}

fn zpoly_text(zp: &ZPoly) -> String {
    let order = VarOrder::new(vec!["x"]).expect("valid");
    crate::poly::format_poly(&polynomial_from_zpoly(zp), &order)
}

pub(crate) fn zpoly_from_polynomial(p: &Polynomial) -> Result<ZPoly> {
    let vars = p.vars_present();
    if vars.len() > 1 {
        return Err(CadError::InvalidInput(format!(
            "expected a univariate polynomial, found {} variables",
            vars.len()
        )));
    }
    if p.is_zero() {
        return Ok(ZPoly::zero());
    }
    let v = vars.first().copied().unwrap_or(0);
    let coeffs: Vec<Rational> = p
        .coeffs_in(v)
        .iter()
        .map(|c| c.constant_value().expect("coefficients are constants"))
        .collect();
    let mut den_lcm = BigInt::one();
    for c in &coeffs {
        den_lcm = num::Integer::lcm(&den_lcm, c.denom());
    }
    Ok(ZPoly::new(
        coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect(),
    ))
}

fn polynomial_from_zpoly(zp: &ZPoly) -> Polynomial {
    Polynomial::from_terms(
        1,
        zp.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (vec![i as u32], Rational::from(c.clone())))
            .collect(),
    )
}

/// Strictly increasing, pairwise-disjoint list of isolated roots.
#[derive(Debug, Clone, Default)]
pub struct RootSet {
    roots: Vec<IsolatedRoot>,
}

impl RootSet {
    pub fn empty() -> Self {
        RootSet::default()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &IsolatedRoot> {
        self.roots.iter()
    }

    pub fn get(&self, i: usize) -> Option<&IsolatedRoot> {
        self.roots.get(i)
    }

    pub fn roots(&self) -> &[IsolatedRoot] {
        &self.roots
    }

    /// Construct from roots already known to be strictly increasing and
    /// disjoint (state-file load path).
    pub fn from_sorted_unchecked(roots: Vec<IsolatedRoot>) -> Self {
        RootSet { roots }
    }
}

/// All distinct real roots of a univariate polynomial, rationals exact,
/// algebraic roots with isolating intervals of width ≤ 2⁻²⁰.
pub fn isolate(p: &Polynomial) -> Result<RootSet> {
    if p.is_zero() {
        return Err(CadError::InvalidInput(
            "cannot isolate roots of the zero polynomial".into(),
        ));
    }
    let zp = zpoly_from_polynomial(p)?;
    if zp.is_constant() {
        return Ok(RootSet::empty());
    }
    Ok(RootSet {
        roots: isolate_z(&zp),
    })
}

/// Isolation driver on the integer polynomial: square-free part, exact
/// rational-root extraction, deflation, Descartes bisection on the
/// rational-root-free cofactor.
pub(crate) fn isolate_z(zp: &ZPoly) -> Vec<IsolatedRoot> {
    let sf = zp.square_free();
    if sf.is_constant() {
        return Vec::new();
    }
    let rats = zpoly::rational_roots(&sf);
    let mut cofactor = sf;
    for r in &rats {
        cofactor = cofactor.deflate_rational(r);
    }
    cofactor = cofactor.canonical();
    let mut roots: Vec<IsolatedRoot> = rats.into_iter().map(IsolatedRoot::Rational).collect();
    if !cofactor.is_constant() {
        let default = default_width();
        for (lo, hi) in descartes::isolate_intervals(&cofactor) {
            debug_assert!(lo < hi, "deflated cofactor has no rational roots");
            let mut a = AlgebraicRoot::new(cofactor.clone(), lo, hi);
            a.refine_to(&default);
            roots.push(IsolatedRoot::Algebraic(a));
        }
    }
    // Separate algebraic intervals from the extracted rational points.
    let rat_points: Vec<Rational> = roots
        .iter()
        .filter_map(|r| r.as_rational().cloned())
        .collect();
    for r in roots.iter_mut() {
        if let IsolatedRoot::Algebraic(a) = r {
            for q in &rat_points {
                while *q > a.lo && *q < a.hi {
                    a.refine_step();
                }
            }
        }
    }
    sort_disjoint(&mut roots);
    roots
}

/// Exact comparison of a rational against a root.
pub fn cmp_rat_root(q: &Rational, r: &IsolatedRoot) -> Ordering {
    match r {
        IsolatedRoot::Rational(x) => q.cmp(x),
        IsolatedRoot::Algebraic(a) => {
            if *q <= a.lo {
                return Ordering::Less;
            }
            if *q >= a.hi {
                return Ordering::Greater;
            }
            let s = a.poly.sign_at(q);
            if s == 0 {
                Ordering::Equal
            } else if s == a.sign_lo {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
    }
}

fn alg_equal(a: &AlgebraicRoot, b: &AlgebraicRoot) -> bool {
    let lo = if a.lo >= b.lo { &a.lo } else { &b.lo };
    let hi = if a.hi <= b.hi { &a.hi } else { &b.hi };
    if lo >= hi {
        return false;
    }
    let g = a.poly.gcd(&b.poly);
    if g.is_constant() {
        return false;
    }
    // Any root of g inside both isolating intervals is both roots at once.
    g.sign_at(lo) * g.sign_at(hi) < 0
}

/// Exact comparison, refining the (mutable) roots as needed.
fn cmp_roots_mut(a: &mut IsolatedRoot, b: &mut IsolatedRoot) -> Ordering {
    match (&mut *a, &mut *b) {
        (IsolatedRoot::Rational(x), IsolatedRoot::Rational(y)) => (*x).cmp(y),
        (IsolatedRoot::Rational(x), IsolatedRoot::Algebraic(_)) => cmp_rat_root(&x.clone(), b),
        (IsolatedRoot::Algebraic(_), IsolatedRoot::Rational(y)) => {
            cmp_rat_root(&y.clone(), a).reverse()
        }
        (IsolatedRoot::Algebraic(x), IsolatedRoot::Algebraic(y)) => {
            if x.hi <= y.lo {
                return Ordering::Less;
            }
            if y.hi <= x.lo {
                return Ordering::Greater;
            }
            if alg_equal(x, y) {
                return Ordering::Equal;
            }
            loop {
                x.refine_step();
                y.refine_step();
                if x.hi <= y.lo {
                    return Ordering::Less;
                }
                if y.hi <= x.lo {
                    return Ordering::Greater;
                }
            }
        }
    }
}

/// Exact comparison on immutable roots (refinement work is discarded).
pub fn cmp_roots(a: &IsolatedRoot, b: &IsolatedRoot) -> Ordering {
    let mut ca = a.clone();
    let mut cb = b.clone();
    cmp_roots_mut(&mut ca, &mut cb)
}

/// True iff the two roots are exactly equal as real numbers.
pub fn roots_equal(a: &IsolatedRoot, b: &IsolatedRoot) -> bool {
    cmp_roots(a, b) == Ordering::Equal
}

/// Syntactic tiebreak for choosing a canonical representative among equal
/// roots: smaller defining polynomial first, then tighter interval.
fn representative_key(r: &IsolatedRoot) -> (usize, Vec<BigInt>, Rational, Rational) {
    match r {
        IsolatedRoot::Rational(q) => (0, vec![q.numer().clone(), q.denom().clone()], q.clone(), q.clone()),
        IsolatedRoot::Algebraic(a) => (
            a.poly.coeffs.len(),
            a.poly.coeffs.clone(),
            a.lo.clone(),
            a.hi.clone(),
        ),
    }
}

/// Same root, same defining polynomial: intersect the intervals.
fn intersect_same_poly(keep: &mut IsolatedRoot, other: &IsolatedRoot) {
    if let (IsolatedRoot::Algebraic(k), IsolatedRoot::Algebraic(o)) = (&mut *keep, other) {
        if k.poly == o.poly {
            if o.lo > k.lo {
                k.lo = o.lo.clone();
            }
            if o.hi < k.hi {
                k.hi = o.hi.clone();
            }
            k.sign_lo = k.poly.sign_at(&k.lo);
        }
    }
}

fn sort_disjoint(roots: &mut Vec<IsolatedRoot>) {
    // Insertion sort with exact comparisons and canonical dedup.
    let mut sorted: Vec<IsolatedRoot> = Vec::with_capacity(roots.len());
    for mut r in roots.drain(..) {
        let mut insert_at = sorted.len();
        let mut duplicate = false;
        for i in (0..sorted.len()).rev() {
            match cmp_roots_mut(&mut sorted[i], &mut r) {
                Ordering::Less => {
                    insert_at = i + 1;
                    break;
                }
                Ordering::Equal => {
                    // Keep the canonical representative of the pair.
                    if representative_key(&r) < representative_key(&sorted[i]) {
                        let old = sorted[i].clone();
                        sorted[i] = r.clone();
                        intersect_same_poly(&mut sorted[i], &old);
                    } else {
                        let rc = r.clone();
                        intersect_same_poly(&mut sorted[i], &rc);
                    }
                    duplicate = true;
                    break;
                }
                Ordering::Greater => {
                    insert_at = i;
                }
            }
        }
        if !duplicate {
            sorted.insert(insert_at, r);
        }
    }
    // Disjointify neighbours: strictly separated intervals.
    for i in 1..sorted.len() {
        let (left, right) = sorted.split_at_mut(i);
        let a = &mut left[i - 1];
        let b = &mut right[0];
        loop {
            let (_, a_hi) = a.interval();
            let (b_lo, _) = b.interval();
            if a_hi <= b_lo {
                break;
            }
            if let IsolatedRoot::Algebraic(x) = &mut *a {
                x.refine_step();
            }
            if let IsolatedRoot::Algebraic(y) = &mut *b {
                y.refine_step();
            }
        }
    }
    *roots = sorted;
}

/// Union of all roots, strictly ordered, duplicates across different
/// defining polynomials identified exactly. Idempotent and insensitive to
/// input permutation.
pub fn merge_roots(sets: &[RootSet]) -> RootSet {
    let mut all: Vec<IsolatedRoot> = sets.iter().flat_map(|s| s.roots.iter().cloned()).collect();
    sort_disjoint(&mut all);
    RootSet { roots: all }
}

/// True iff `candidate` is not exactly equal to any existing root.
pub fn is_new_root(existing: &RootSet, candidate: &IsolatedRoot) -> bool {
    !existing.roots.iter().any(|r| roots_equal(r, candidate))
}

/// Same root with isolating-interval width ≤ `width` (no-op for
/// rationals and for nonpositive widths).
pub fn refine(r: &IsolatedRoot, width: &Rational) -> IsolatedRoot {
    match r {
        IsolatedRoot::Rational(_) => r.clone(),
        IsolatedRoot::Algebraic(a) => {
            if width <= &Rational::zero() {
                return r.clone();
            }
            let mut a = a.clone();
            a.refine_to(width);
            IsolatedRoot::Algebraic(a)
        }
    }
}

/// ⌊r⌋ as an exact integer.
pub fn root_floor(r: &IsolatedRoot) -> BigInt {
    match r {
        IsolatedRoot::Rational(q) => q.floor().to_integer(),
        IsolatedRoot::Algebraic(a) => {
            let mut a = a.clone();
            while a.lo.floor() != a.hi.floor() {
                a.refine_step();
            }
            a.lo.floor().to_integer()
        }
    }
}

/// ⌈r⌉ as an exact integer.
pub fn root_ceil(r: &IsolatedRoot) -> BigInt {
    match r {
        IsolatedRoot::Rational(q) => q.ceil().to_integer(),
        IsolatedRoot::Algebraic(a) => {
            let mut a = a.clone();
            while a.lo.ceil() != a.hi.ceil() {
                a.refine_step();
            }
            a.lo.ceil().to_integer()
        }
    }
}

/// A rational strictly below the root: `floor(r) − 1`.
pub fn sample_below(r: &IsolatedRoot) -> Rational {
    Rational::from(root_floor(r) - 1)
}

/// A rational strictly above the root: `ceil(r) + 1`.
pub fn sample_above(r: &IsolatedRoot) -> Rational {
    Rational::from(root_ceil(r) + 1)
}

/// The simplest rational strictly between two roots `a < b`: minimal
/// denominator, then minimal magnitude, found by Stern–Brocot descent
/// with exact comparisons. A pure function of the two real values.
pub fn sample_between(a: &IsolatedRoot, b: &IsolatedRoot) -> Rational {
    debug_assert_eq!(cmp_roots(a, b), Ordering::Less);
    let lo_int = root_floor(a) + 1;
    let hi_int = root_ceil(b) - 1;
    if lo_int <= hi_int {
        // Integers exist strictly inside; take the smallest magnitude.
        let zero = BigInt::zero();
        let n = if lo_int > zero {
            lo_int
        } else if hi_int < zero {
            hi_int
        } else {
            zero
        };
        return Rational::from(n);
    }
    // Both roots lie in (n, n+1); walk the Stern–Brocot tree.
    let n = root_floor(a);
    let mut l = (n.clone(), BigInt::one());
    let mut r = (n + 1, BigInt::one());
    loop {
        let med = Rational::new(&l.0 + &r.0, &l.1 + &r.1);
        if cmp_rat_root(&med, a) != Ordering::Greater {
            l = (med.numer().clone(), med.denom().clone());
        } else if cmp_rat_root(&med, b) != Ordering::Less {
            r = (med.numer().clone(), med.denom().clone());
        } else {
            return med;
        }
    }
}

/// One sample inside each open interval the roots cut out of the line:
/// below the least root, between consecutive roots, above the greatest.
/// `[0]` for an empty set. Deterministic.
pub fn choose_samples(rs: &RootSet) -> Vec<Rational> {
    if rs.is_empty() {
        return vec![Rational::zero()];
    }
    let mut out = Vec::with_capacity(rs.len() + 1);
    out.push(sample_below(&rs.roots[0]));
    for w in rs.roots.windows(2) {
        out.push(sample_between(&w[0], &w[1]));
    }
    out.push(sample_above(rs.roots.last().unwrap()));
    out
}

/// Exact sign of a univariate polynomial at a root (0 when the root is a
/// zero of `p`).
pub fn sign_at_root(p: &Polynomial, r: &IsolatedRoot) -> Result<i32> {
    let zp = zpoly_from_polynomial(p)?;
    if zp.is_zero() {
        return Ok(0);
    }
    match r {
        IsolatedRoot::Rational(q) => Ok(zp.sign_at(q)),
        IsolatedRoot::Algebraic(a) => {
            let g = zp.gcd(&a.poly);
            if !g.is_constant() && g.sign_at(&a.lo) * g.sign_at(&a.hi) < 0 {
                return Ok(0);
            }
            // p has no root equal to r; push the interval away from all
            // roots of p, then the sign is constant on it.
            let mut iso = a.clone();
            for other in isolate_z(&zp) {
                let mut other = other;
                loop {
                    let (olo, ohi) = other.interval();
                    if ohi <= iso.lo || iso.hi <= olo {
                        break;
                    }
                    iso.refine_step();
                    if let IsolatedRoot::Algebraic(o) = &mut other {
                        o.refine_step();
                    }
                }
            }
            let mid = (&iso.lo + &iso.hi) / Rational::from(BigInt::from(2));
            Ok(zp.sign_at(&mid))
        }
    }
}
