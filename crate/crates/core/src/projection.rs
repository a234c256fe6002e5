//! Lazard projection: from-scratch and incremental computation of the
//! per-level projection polynomial sets.
//!
//! A [`ProjectionTable`] keeps one level per variable: level `i` holds the
//! processed (primitive, square-free, gcd-free, normalized) polynomials in
//! variables `x1..x_{n−i}`; level 0 is the processed input level and level
//! `n−1` the univariate set. Incremental calls compute projections only
//! for operand pairs that involve a polynomial not already in the previous
//! table, matching a from-scratch run level set for level set.
//!
//! The projection operator takes leading and trailing coefficients,
//! discriminants, and pairwise resultants; contents are carried one level
//! down.

use std::collections::BTreeSet;

use crate::error::CadError;
use crate::poly::{
    content, discriminant, primitive_part, resultant, PolySet, Polynomial, VarOrder,
};
use crate::Result;

/// Input-polynomial identifiers a table entry derives from.
pub type Provenance = BTreeSet<u64>;

/// One table level: normalized polynomials in insertion order, with
/// parallel provenance sets.
#[derive(Debug, Clone, Default)]
pub struct Level {
    polys: Vec<Polynomial>,
    prov: Vec<Provenance>,
}

impl Level {
    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn provenance(&self, i: usize) -> &Provenance {
        &self.prov[i]
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Polynomial, &Provenance)> {
        self.polys.iter().zip(self.prov.iter())
    }

    fn contains(&self, p: &Polynomial) -> bool {
        self.polys.contains(p)
    }

    /// Insert a normalized polynomial, unioning provenance on duplicates.
    fn insert(&mut self, p: Polynomial, prov: Provenance) -> bool {
        if let Some(i) = self.polys.iter().position(|q| q == &p) {
            self.prov[i].extend(prov);
            false
        } else {
            self.polys.push(p);
            self.prov.push(prov);
            true
        }
    }

    pub fn as_polyset(&self) -> PolySet {
        self.polys.iter().cloned().collect()
    }
}

/// Per-level projection polynomial sets with provenance, the state reused
/// by incremental projection.
#[derive(Debug, Clone)]
pub struct ProjectionTable {
    nvars: usize,
    levels: Vec<Level>,
}

/// Counters for one projection call, for reporting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProjectionStats {
    /// Polynomials newly inserted into table levels by this call.
    pub polys_added: u64,
    /// Projection-operator invocations (coefficients, discriminants,
    /// resultants, contents) this call performed.
    pub ops_computed: u64,
}

impl ProjectionTable {
    pub fn empty(nvars: usize) -> Self {
        ProjectionTable {
            nvars,
            levels: vec![Level::default(); nvars],
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &Level {
        &self.levels[i]
    }

    /// The univariate level (in the lowest variable).
    pub fn univariate_level(&self) -> &Level {
        self.levels.last().expect("at least one level")
    }

    /// Main variable of level `i`: `x_{n−i}` (index `n−1−i`).
    pub fn main_var_of_level(&self, i: usize) -> usize {
        self.nvars - 1 - i
    }

    /// Level whose polynomials decompose the `x_k` axis when lifting from
    /// level `k−1` to level `k` (1-based `k`).
    pub fn lift_level(&self, k: usize) -> &Level {
        &self.levels[self.nvars - k]
    }

    pub fn total_polys(&self) -> u64 {
        self.levels.iter().map(|l| l.len() as u64).sum()
    }

    /// Rebuild from serialized parts (levels of canonical polynomials with
    /// provenance); polynomials must already be normalized.
    pub fn from_parts(nvars: usize, parts: Vec<Vec<(Polynomial, Provenance)>>) -> Result<Self> {
        if parts.len() != nvars {
            return Err(CadError::Schema {
                location: "projection.levels".into(),
                message: format!("expected {} levels, found {}", nvars, parts.len()),
            });
        }
        let mut t = ProjectionTable::empty(nvars);
        for (i, level) in parts.into_iter().enumerate() {
            for (p, prov) in level {
                if prov.is_empty() {
                    return Err(CadError::Schema {
                        location: format!("projection.levels[{i}]"),
                        message: "provenance must be nonempty".into(),
                    });
                }
                t.levels[i].insert(p, prov);
            }
        }
        Ok(t)
    }
}

/// The Lazard coefficient set of `p` in `v`: leading and trailing
/// coefficients, constants removed, normalized.
pub fn lazard_coeffs(p: &Polynomial, v: usize) -> Result<PolySet> {
    if p.is_zero() || p.degree(v)? < 1 {
        return Err(CadError::InvalidInput(
            "Lazard coefficients need positive degree in the main variable".into(),
        ));
    }
    let mut out = PolySet::new();
    out.insert(&p.leading_coeff(v)?);
    out.insert(&p.trailing_coeff(v)?);
    Ok(out)
}

/// One incremental projection step: everything the Lazard operator
/// produces from `new` (contents, coefficients, discriminants, pairwise
/// resultants) plus the cross resultants of `new` against `old`, as a
/// normalized set.
pub fn projection_add(new: &PolySet, old: &PolySet, v: usize) -> Result<PolySet> {
    let mut ops = 0u64;
    let mut contents: Vec<(Polynomial, Provenance)> = Vec::new();
    let mut primitive: Vec<(Polynomial, Provenance)> = Vec::new();
    for p in new.iter() {
        split_content(p, Provenance::new(), v, &mut contents, &mut primitive, &mut ops)?;
    }
    let basis = basis_of(primitive, v, &mut ops)?;
    let old_entries: Vec<(Polynomial, Provenance)> = old
        .iter()
        .map(|p| (p.clone(), Provenance::new()))
        .collect();
    let pieces = project_pieces(&basis, &old_entries, v, &mut ops)?;
    let mut out = PolySet::new();
    for (p, _) in contents.iter().chain(pieces.iter()) {
        out.insert(p);
    }
    Ok(out)
}

/// Route a raw polynomial into its content (forwarded down) and its
/// primitive part (kept at this level); constants vanish.
fn split_content(
    p: &Polynomial,
    prov: Provenance,
    v: usize,
    contents: &mut Vec<(Polynomial, Provenance)>,
    primitive: &mut Vec<(Polynomial, Provenance)>,
    ops: &mut u64,
) -> Result<()> {
    if p.is_zero() || p.is_constant() {
        return Ok(());
    }
    if p.degree(v)? == 0 {
        // Constant in the main variable: contributes only its content.
        contents.push((p.normalize()?, prov));
        return Ok(());
    }
    *ops += 1;
    let c = content(p, v)?;
    if !c.is_constant() {
        contents.push((c.normalize()?, prov.clone()));
    }
    primitive.push((primitive_part(p, v)?, prov));
    Ok(())
}

/// Square-free, gcd-free basis with provenance: square-free parts, then
/// pairwise gcd splitting to a fixpoint. Deterministic for a fixed input
/// order; the resulting set is canonical regardless of it.
fn basis_of(
    elems: Vec<(Polynomial, Provenance)>,
    v: usize,
    ops: &mut u64,
) -> Result<Vec<(Polynomial, Provenance)>> {
    let mut work: Vec<(Polynomial, Provenance)> = Vec::new();
    for (p, prov) in elems {
        *ops += 1;
        let sf = crate::poly::square_free_part(&p, v)?;
        push_entry(&mut work, sf, prov);
    }
    refine_gcd_free(&mut work, 0, ops);
    Ok(work)
}

fn push_entry(work: &mut Vec<(Polynomial, Provenance)>, p: Polynomial, prov: Provenance) {
    if p.is_constant() {
        return;
    }
    if let Some(i) = work.iter().position(|(q, _)| q == &p) {
        work[i].1.extend(prov);
    } else {
        work.push((p, prov));
    }
}

/// Pairwise gcd refinement to a gcd-free set; splits strictly reduce total
/// degree, so the fixpoint terminates. Pairs entirely inside the first
/// `trusted` entries are known coprime already and are skipped until a
/// split disturbs the set.
fn refine_gcd_free(work: &mut Vec<(Polynomial, Provenance)>, trusted: usize, ops: &mut u64) {
    let mut trusted = trusted.min(work.len());
    'outer: loop {
        for i in 0..work.len() {
            for j in (i + 1)..work.len() {
                if j < trusted {
                    continue;
                }
                let g = crate::poly::gcd(&work[i].0, &work[j].0);
                if g.is_constant() {
                    continue;
                }
                *ops += 1;
                let (pi, prov_i) = work[i].clone();
                let (pj, prov_j) = work[j].clone();
                let qi = pi
                    .exact_div(&g)
                    .expect("gcd divides")
                    .normalize()
                    .expect("nonzero");
                let qj = pj
                    .exact_div(&g)
                    .expect("gcd divides")
                    .normalize()
                    .expect("nonzero");
                let mut prov_g = prov_i.clone();
                prov_g.extend(prov_j.iter().cloned());
                work.remove(j);
                work.remove(i);
                push_entry(work, g, prov_g);
                push_entry(work, qi, prov_i);
                push_entry(work, qj, prov_j);
                trusted = 0;
                continue 'outer;
            }
        }
        return;
    }
}

/// Lazard coefficients, discriminants, pairwise resultants inside `new`,
/// and cross resultants of `new` against `old`.
fn project_pieces(
    new: &[(Polynomial, Provenance)],
    old: &[(Polynomial, Provenance)],
    v: usize,
    ops: &mut u64,
) -> Result<Vec<(Polynomial, Provenance)>> {
    let mut out: Vec<(Polynomial, Provenance)> = Vec::new();
    for (p, prov) in new {
        *ops += 1;
        let lc = p.leading_coeff(v)?;
        if !lc.is_constant() {
            push_entry(&mut out, lc.normalize()?, prov.clone());
        }
        let tc = p.trailing_coeff(v)?;
        if !tc.is_constant() {
            push_entry(&mut out, tc.normalize()?, prov.clone());
        }
        if p.degree(v)? >= 2 {
            *ops += 1;
            let d = discriminant(p, v)?;
            if !d.is_constant() {
                push_entry(&mut out, d.normalize()?, prov.clone());
            }
        }
    }
    for i in 0..new.len() {
        for j in (i + 1)..new.len() {
            *ops += 1;
            let r = resultant(&new[i].0, &new[j].0, v)?;
            if !r.is_zero() && !r.is_constant() {
                let mut prov = new[i].1.clone();
                prov.extend(new[j].1.iter().cloned());
                push_entry(&mut out, r.normalize()?, prov);
            }
        }
    }
    for (p, prov_p) in new {
        for (q, prov_q) in old {
            *ops += 1;
            let r = resultant(p, q, v)?;
            if !r.is_zero() && !r.is_constant() {
                let mut prov = prov_p.clone();
                prov.extend(prov_q.iter().cloned());
                push_entry(&mut out, r.normalize()?, prov);
            }
        }
    }
    Ok(out)
}

/// Compute (or extend) the full projection table for `inputs(prev) ∪
/// new_inputs`. Level sets equal a from-scratch run's as normalized sets;
/// only polynomials not already in `prev` are computed.
pub fn projection_polys_add(
    prev: Option<&ProjectionTable>,
    new_inputs: &[(u64, Polynomial)],
    order: &VarOrder,
) -> Result<(ProjectionTable, ProjectionStats)> {
    let n = order.len();
    if let Some(t) = prev {
        if t.nvars != n {
            return Err(CadError::DimensionMismatch {
                expected: n,
                got: t.nvars,
            });
        }
    }
    if new_inputs.is_empty() && prev.is_none() {
        return Err(CadError::EmptyInput("no input polynomials".into()));
    }
    for (_, p) in new_inputs {
        if p.is_zero() {
            return Err(CadError::ZeroPolynomial);
        }
        if p.nvars() != n {
            return Err(CadError::UnknownVariable(format!(
                "polynomial over {} variables does not fit a {}-variable order",
                p.nvars(),
                n
            )));
        }
    }
    let mut table = prev.cloned().unwrap_or_else(|| ProjectionTable::empty(n));
    let mut stats = ProjectionStats::default();

    // Raw polynomials entering level 0.
    let mut raw: Vec<(Polynomial, Provenance)> = Vec::new();
    for (id, p) in new_inputs {
        push_entry(&mut raw, p.normalize()?, Provenance::from([*id]));
    }

    for i in 0..n {
        let main = table.main_var_of_level(i);
        // Split raw into carry-down contents and primitive parts.
        let mut contents: Vec<(Polynomial, Provenance)> = Vec::new();
        let mut primitive: Vec<(Polynomial, Provenance)> = Vec::new();
        for (p, prov) in std::mem::take(&mut raw) {
            split_content(
                &p,
                prov,
                main,
                &mut contents,
                &mut primitive,
                &mut stats.ops_computed,
            )?;
        }
        let incoming = basis_of(primitive, main, &mut stats.ops_computed)?;

        // Refine the combined level: stored elements are already primitive,
        // square-free and pairwise gcd-free, so only old/new splits occur.
        let mut combined: Vec<(Polynomial, Provenance)> = table.levels[i]
            .iter()
            .map(|(p, pr)| (p.clone(), pr.clone()))
            .collect();
        let trusted = combined.len();
        for (p, prov) in incoming {
            push_entry(&mut combined, p, prov);
        }
        refine_gcd_free(&mut combined, trusted, &mut stats.ops_computed);

        let old_level = std::mem::take(&mut table.levels[i]);
        let mut new_level = Level::default();
        // Deterministic order: surviving old elements first, then new ones.
        for (p, _) in old_level.iter() {
            if let Some(pos) = combined.iter().position(|(q, _)| q == p) {
                let (q, prov) = combined[pos].clone();
                new_level.insert(q, prov);
            }
        }
        let mut added: Vec<(Polynomial, Provenance)> = Vec::new();
        for (p, prov) in combined {
            if !new_level.contains(&p) {
                added.push((p.clone(), prov.clone()));
                new_level.insert(p, prov);
                stats.polys_added += 1;
            }
        }
        let survivors: Vec<(Polynomial, Provenance)> = new_level
            .iter()
            .filter(|(p, _)| old_level.contains(p) && !added.iter().any(|(a, _)| a == *p))
            .map(|(p, pr)| (p.clone(), pr.clone()))
            .collect();
        table.levels[i] = new_level;

        if i + 1 < n {
            // Project only the pairs that involve a new polynomial.
            let mut out = project_pieces(&added, &survivors, main, &mut stats.ops_computed)?;
            out.extend(contents);
            raw = out;
        }
        // Univariate-level contents are rational constants and were dropped
        // by split_content already.
    }
    Ok((table, stats))
}
