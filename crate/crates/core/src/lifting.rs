//! Lifting: building the Open CAD tree and refining it incrementally.
//!
//! The base phase decomposes the line at the univariate level's roots into
//! alternating open intervals and section markers; stacks above open cells
//! are produced by isolating the roots of the Lazard valuations of the
//! next level's polynomials at the cell sample. Only open cells are lifted
//! and carry children, so every sample stays rational; sections exist only
//! at the base level, as markers.
//!
//! Incremental refinement treats the old tree as an attachment/detachment
//! problem: cells whose stacks gain roots from the new polynomials are
//! pruned and fully re-lifted against all polynomials (new subtrees);
//! cells whose valuations of the new polynomials produce no new roots are
//! kept and the walk descends. The merged result equals a from-scratch
//! lift cell for cell.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use crate::error::CadError;
use crate::poly::{Polynomial, Rational};
use crate::projection::ProjectionTable;
use crate::realroot::{
    choose_samples, cmp_roots, is_new_root, isolate, merge_roots, roots_equal, sample_above,
    sample_below, sample_between, IsolatedRoot, RootSet,
};
use crate::Result;

/// Cylindrical bound of a cell at its own level.
#[derive(Debug, Clone)]
pub enum Bound {
    NegInf,
    Root(IsolatedRoot),
    PosInf,
}

impl Bound {
    pub fn as_root(&self) -> Option<&IsolatedRoot> {
        match self {
            Bound::Root(r) => Some(r),
            _ => None,
        }
    }
}

/// Exact order on bounds (roots compared as real numbers).
pub fn cmp_bounds(a: &Bound, b: &Bound) -> Ordering {
    match (a, b) {
        (Bound::NegInf, Bound::NegInf) => Ordering::Equal,
        (Bound::NegInf, _) => Ordering::Less,
        (_, Bound::NegInf) => Ordering::Greater,
        (Bound::PosInf, Bound::PosInf) => Ordering::Equal,
        (Bound::PosInf, _) => Ordering::Greater,
        (_, Bound::PosInf) => Ordering::Less,
        (Bound::Root(x), Bound::Root(y)) => cmp_roots(x, y),
    }
}

pub fn bounds_equal(a: &Bound, b: &Bound) -> bool {
    match (a, b) {
        (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, Bound::PosInf) => true,
        (Bound::Root(x), Bound::Root(y)) => roots_equal(x, y),
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellKind {
    Open,
    Section,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellFlag {
    New,
    Unchanged,
}

/// One CAD cell: level, index path, rational sample (absent only for
/// section markers at irrational roots), and cylindrical bounds.
#[derive(Debug, Clone)]
pub struct Cell {
    pub level: usize,
    pub index: Vec<usize>,
    pub kind: CellKind,
    pub flag: CellFlag,
    pub lower: Bound,
    pub upper: Bound,
    pub sample: Option<Vec<Rational>>,
}

impl Cell {
    /// The cell's own-level sample coordinate.
    pub fn own_coordinate(&self) -> Option<&Rational> {
        self.sample.as_ref().map(|s| &s[self.level - 1])
    }

    /// Exact test: does `q` lie strictly inside this cell's own-level
    /// bounds?
    pub fn contains_coordinate(&self, q: &Rational) -> bool {
        let above_lower = match &self.lower {
            Bound::NegInf => true,
            Bound::PosInf => false,
            Bound::Root(r) => crate::realroot::cmp_rat_root(q, r) == Ordering::Greater,
        };
        let below_upper = match &self.upper {
            Bound::NegInf => false,
            Bound::PosInf => true,
            Bound::Root(r) => crate::realroot::cmp_rat_root(q, r) == Ordering::Less,
        };
        above_lower && below_upper
    }
}

/// The CAD tree: levels of cells, parent/child links by index prefix.
/// Level 1 contains the alternating open/section base cells; every level
/// above holds open cells only.
#[derive(Debug, Clone)]
pub struct CadTree {
    nvars: usize,
    levels: Vec<Vec<Cell>>,
}

impl CadTree {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn levels(&self) -> &[Vec<Cell>] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> &[Cell] {
        &self.levels[k - 1]
    }

    pub fn cell(&self, path: &[usize]) -> Option<&Cell> {
        self.levels
            .get(path.len().wrapping_sub(1))?
            .iter()
            .find(|c| c.index == path)
    }

    pub fn children(&self, path: &[usize]) -> Vec<&Cell> {
        match self.levels.get(path.len()) {
            Some(cells) => cells
                .iter()
                .filter(|c| c.index[..path.len()] == *path)
                .collect(),
            None => Vec::new(),
        }
    }

    /// Distinct bounding roots of the stack above the cell at `path`.
    fn stack_roots_of(&self, path: &[usize]) -> RootSet {
        let kids = self.children(path);
        let mut roots = Vec::new();
        for c in kids.iter().skip(1) {
            if let Bound::Root(r) = &c.lower {
                roots.push(r.clone());
            }
        }
        RootSet::from_sorted_unchecked(roots)
    }

    pub fn open_cell_count(&self, k: usize) -> usize {
        self.level(k)
            .iter()
            .filter(|c| c.kind == CellKind::Open)
            .count()
    }

    pub fn total_cells(&self) -> u64 {
        self.levels.iter().map(|l| l.len() as u64).sum()
    }

    /// Rebuild from deserialized levels (trusted to be canonically
    /// ordered; engine validation covers the rest).
    pub fn from_parts(nvars: usize, levels: Vec<Vec<Cell>>) -> Result<Self> {
        if levels.len() != nvars {
            return Err(CadError::Schema {
                location: "tree.levels".into(),
                message: format!("expected {} levels, found {}", nvars, levels.len()),
            });
        }
        Ok(CadTree { nvars, levels })
    }
}

/// Lazard valuation of `f` at the partial rational sample point `sp`:
/// whenever the partial substitution vanishes identically, divide by
/// `(x_j − r_j)` before substituting, recovering the information lost to
/// nullification. Never returns zero for nonzero input.
pub fn lazard_valuation(f: &Polynomial, sp: &[Rational]) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(CadError::InvalidInput(
            "Lazard valuation of the zero polynomial".into(),
        ));
    }
    if sp.len() >= f.nvars() {
        return Err(CadError::DimensionMismatch {
            expected: f.nvars() - 1,
            got: sp.len(),
        });
    }
    let mut cur = f.clone();
    for (j, r) in sp.iter().enumerate() {
        loop {
            let sub = cur.substitute(j, r)?;
            if sub.is_zero() {
                cur = cur.lazard_divide(j, r)?;
            } else {
                cur = sub;
                break;
            }
        }
    }
    debug_assert!(!cur.is_zero());
    Ok(cur)
}

/// Roots of the valuations of `polys` above the sample prefix.
pub(crate) fn stack_roots(polys: &[Polynomial], prefix: &[Rational]) -> Result<RootSet> {
    let mut sets = Vec::with_capacity(polys.len());
    for p in polys {
        let v = lazard_valuation(p, prefix)?;
        if !v.is_constant() {
            sets.push(isolate(&v)?);
        }
    }
    Ok(merge_roots(&sets))
}

fn section_sample(root: &IsolatedRoot, prefix: &[Rational]) -> Option<Vec<Rational>> {
    root.as_rational().map(|q| {
        let mut s = prefix.to_vec();
        s.push(q.clone());
        s
    })
}

/// Alternating open/section cells over a root set (base level).
fn base_cells_from_roots(roots: &RootSet, flag: CellFlag) -> Vec<Cell> {
    let samples = choose_samples(roots);
    let mut cells = Vec::with_capacity(2 * roots.len() + 1);
    for i in 0..=roots.len() {
        let lower = if i == 0 {
            Bound::NegInf
        } else {
            Bound::Root(roots.get(i - 1).unwrap().clone())
        };
        let upper = if i == roots.len() {
            Bound::PosInf
        } else {
            Bound::Root(roots.get(i).unwrap().clone())
        };
        cells.push(Cell {
            level: 1,
            index: vec![cells.len() + 1],
            kind: CellKind::Open,
            flag,
            lower,
            upper,
            sample: Some(vec![samples[i].clone()]),
        });
        if i < roots.len() {
            let r = roots.get(i).unwrap().clone();
            cells.push(Cell {
                level: 1,
                index: vec![cells.len() + 1],
                kind: CellKind::Section,
                flag,
                lower: Bound::Root(r.clone()),
                upper: Bound::Root(r.clone()),
                sample: section_sample(&r, &[]),
            });
        }
    }
    cells
}

/// Base phase: isolate and merge the univariate level's roots and emit the
/// alternating decomposition of the line. Sections are markers and are
/// never lifted.
pub fn lift_base(table: &ProjectionTable) -> Result<Vec<Cell>> {
    let uni = table.univariate_level();
    let mut sets = Vec::with_capacity(uni.len());
    for p in uni.polys() {
        sets.push(isolate(p)?);
    }
    let roots = merge_roots(&sets);
    Ok(base_cells_from_roots(&roots, CellFlag::Unchanged))
}

/// Decompose the cylinder above an open cell: valuate, isolate, and emit
/// the open intervals as children with fresh rational samples.
pub fn lift_cell(cell: &Cell, polys: &[Polynomial]) -> Result<Vec<Cell>> {
    if cell.kind != CellKind::Open {
        return Err(CadError::InvalidInput(
            "only open cells are lifted".into(),
        ));
    }
    let prefix = cell
        .sample
        .as_ref()
        .expect("open cells carry samples")
        .clone();
    let roots = stack_roots(polys, &prefix)?;
    Ok(open_children(cell, &roots))
}

fn open_children(cell: &Cell, roots: &RootSet) -> Vec<Cell> {
    let prefix = cell.sample.as_ref().expect("open cell").clone();
    let samples = choose_samples(roots);
    let mut out = Vec::with_capacity(roots.len() + 1);
    for i in 0..=roots.len() {
        let lower = if i == 0 {
            Bound::NegInf
        } else {
            Bound::Root(roots.get(i - 1).unwrap().clone())
        };
        let upper = if i == roots.len() {
            Bound::PosInf
        } else {
            Bound::Root(roots.get(i).unwrap().clone())
        };
        let mut sample = prefix.clone();
        sample.push(samples[i].clone());
        let mut index = cell.index.clone();
        index.push(i + 1);
        out.push(Cell {
            level: cell.level + 1,
            index,
            kind: CellKind::Open,
            flag: cell.flag,
            lower,
            upper,
            sample: Some(sample),
        });
    }
    out
}

/// Full lift: base phase, then stacks level by level over all open cells.
pub fn lift_full(table: &ProjectionTable) -> Result<CadTree> {
    let n = table.nvars();
    let mut levels = vec![lift_base(table)?];
    for k in 2..=n {
        let polys = table.lift_level(k).polys();
        let mut next = Vec::new();
        for cell in levels[k - 2].iter().filter(|c| c.kind == CellKind::Open) {
            next.extend(lift_cell(cell, polys)?);
        }
        levels.push(next);
    }
    Ok(CadTree {
        nvars: n,
        levels,
    })
}

/// Base cells scheduled for re-decomposition at the next level, with the
/// new roots that triggered them.
#[derive(Debug, Clone, Default)]
pub struct StackRequest {
    pub entries: Vec<(Vec<usize>, RootSet)>,
}

/// Base-phase analysis of an incremental add: re-derives the line
/// decomposition with the new univariate polynomials, splits affected
/// open cells (new), keeps the rest (unchanged), and schedules stack
/// re-decomposition where the new next-level polynomials valuate to new
/// roots over surviving samples.
pub fn lift_setup_add(
    new_entries: &[Vec<Polynomial>],
    old: &CadTree,
    _full_table: &ProjectionTable,
) -> Result<(Vec<Cell>, Vec<Cell>, StackRequest)> {
    let n = old.nvars;
    let mut sets = Vec::new();
    for p in &new_entries[n - 1] {
        sets.push(isolate(p)?);
    }
    let new_roots = merge_roots(&sets);
    let old_roots: Vec<IsolatedRoot> = old.levels[0]
        .iter()
        .filter(|c| c.kind == CellKind::Section)
        .filter_map(|c| c.lower.as_root().cloned())
        .collect();
    let old_root_set = RootSet::from_sorted_unchecked(old_roots);
    let fresh: Vec<&IsolatedRoot> = new_roots
        .iter()
        .filter(|r| is_new_root(&old_root_set, r))
        .collect();

    let mut new_cells = Vec::new();
    let mut unchanged = Vec::new();
    for cell in &old.levels[0] {
        match cell.kind {
            CellKind::Section => unchanged.push(cell.clone()),
            CellKind::Open => {
                let inside: Vec<&IsolatedRoot> = fresh
                    .iter()
                    .copied()
                    .filter(|r| root_inside(r, cell))
                    .collect();
                if inside.is_empty() {
                    unchanged.push(cell.clone());
                } else {
                    new_cells.extend(split_open_cell(cell, &inside));
                }
            }
        }
    }

    // Schedule stack checks over surviving open cells.
    let mut req = StackRequest::default();
    if n >= 2 && !new_entries[n - 2].is_empty() {
        for cell in unchanged.iter().filter(|c| c.kind == CellKind::Open) {
            let prefix = cell.sample.as_ref().expect("open cell");
            let roots = stack_roots(&new_entries[n - 2], prefix)?;
            let existing = old.stack_roots_of(&cell.index);
            let genuinely_new: Vec<IsolatedRoot> = roots
                .iter()
                .filter(|r| is_new_root(&existing, r))
                .cloned()
                .collect();
            if !genuinely_new.is_empty() {
                req.entries.push((
                    cell.index.clone(),
                    RootSet::from_sorted_unchecked(genuinely_new),
                ));
            }
        }
    }
    Ok((new_cells, unchanged, req))
}

fn root_inside(r: &IsolatedRoot, cell: &Cell) -> bool {
    let above = match &cell.lower {
        Bound::NegInf => true,
        Bound::PosInf => false,
        Bound::Root(l) => cmp_roots(r, l) == Ordering::Greater,
    };
    let below = match &cell.upper {
        Bound::NegInf => false,
        Bound::PosInf => true,
        Bound::Root(u) => cmp_roots(r, u) == Ordering::Less,
    };
    above && below
}

/// Replace an open base cell by the alternating decomposition its interior
/// gained from fresh roots; all pieces are flagged new.
fn split_open_cell(cell: &Cell, fresh: &[&IsolatedRoot]) -> Vec<Cell> {
    let mut bounds: Vec<Bound> = Vec::with_capacity(fresh.len() + 2);
    bounds.push(cell.lower.clone());
    for r in fresh {
        bounds.push(Bound::Root((*r).clone()));
    }
    bounds.push(cell.upper.clone());
    let mut out = Vec::new();
    for w in bounds.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        out.push(Cell {
            level: 1,
            index: cell.index.clone(),
            kind: CellKind::Open,
            flag: CellFlag::New,
            lower: lo.clone(),
            upper: hi.clone(),
            sample: Some(vec![sample_in_bounds(lo, hi)]),
        });
        if let Bound::Root(r) = hi {
            if !matches!(cmp_bounds(hi, &cell.upper), Ordering::Equal) {
                out.push(Cell {
                    level: 1,
                    index: cell.index.clone(),
                    kind: CellKind::Section,
                    flag: CellFlag::New,
                    lower: hi.clone(),
                    upper: hi.clone(),
                    sample: section_sample(r, &[]),
                });
            }
        }
    }
    out
}

/// Deterministic rational sample strictly inside the bound pair.
pub fn sample_in_bounds(lower: &Bound, upper: &Bound) -> Rational {
    match (lower, upper) {
        (Bound::NegInf, Bound::PosInf) => Rational::from(num::BigInt::from(0)),
        (Bound::NegInf, Bound::Root(r)) => sample_below(r),
        (Bound::Root(r), Bound::PosInf) => sample_above(r),
        (Bound::Root(a), Bound::Root(b)) => sample_between(a, b),
        _ => unreachable!("degenerate bound pair"),
    }
}

/// How a cell's subtree is produced during the incremental walk.
#[derive(Debug, Clone)]
enum Disp {
    /// Full re-lift against all polynomials (new cell or CASE 1).
    FullLift,
    /// Keep the old children and keep checking (CASE 2); carries the
    /// cell's index path in the old tree.
    Keep(Vec<usize>),
}

/// Incremental lift: merge of the unchanged subtree with freshly lifted
/// subtrees over split or re-triggered cells. The result equals
/// `lift_full` of the full table as a cell set.
pub fn lift_add(
    new_entries: &[Vec<Polynomial>],
    old: &CadTree,
    full_table: &ProjectionTable,
) -> Result<CadTree> {
    let n = old.nvars;
    let (new_base, unchanged_base, req) = lift_setup_add(new_entries, old, full_table)?;
    let case1: BTreeSet<Vec<usize>> = req.entries.iter().map(|(p, _)| p.clone()).collect();

    // Merge the base level by bound order and renumber.
    let mut work: Vec<(Cell, Option<Vec<usize>>)> = Vec::new();
    for c in unchanged_base {
        let old_path = c.index.clone();
        work.push((c, Some(old_path)));
    }
    for c in new_base {
        work.push((c, None));
    }
    work.sort_by(|(a, _), (b, _)| {
        cmp_bounds(&a.lower, &b.lower).then_with(|| cmp_bounds(&a.upper, &b.upper))
    });
    let mut level1 = Vec::with_capacity(work.len());
    let mut dispositions: Vec<(Cell, Disp)> = Vec::new();
    for (i, (mut cell, old_path)) in work.into_iter().enumerate() {
        cell.index = vec![i + 1];
        level1.push(cell.clone());
        if cell.kind != CellKind::Open {
            continue;
        }
        let disp = match old_path {
            None => Disp::FullLift,
            Some(p) if case1.contains(&p) => Disp::FullLift,
            Some(p) => Disp::Keep(p),
        };
        dispositions.push((cell, disp));
    }

    let mut levels = vec![level1];
    for k in 2..=n {
        let polys_full = full_table.lift_level(k).polys();
        let new_next: Option<&Vec<Polynomial>> = if k < n {
            Some(&new_entries[n - k - 1])
        } else {
            None
        };
        let mut next_cells = Vec::new();
        let mut next_disp: Vec<(Cell, Disp)> = Vec::new();
        for (parent, disp) in dispositions {
            match disp {
                Disp::FullLift => {
                    let mut kids = lift_cell(&parent, polys_full)?;
                    for kid in kids.iter_mut() {
                        kid.flag = CellFlag::New;
                        next_cells.push(kid.clone());
                        next_disp.push((kid.clone(), Disp::FullLift));
                    }
                }
                Disp::Keep(old_path) => {
                    let old_kids = old.children(&old_path);
                    for (j, ok) in old_kids.iter().enumerate() {
                        let mut kid = (*ok).clone();
                        kid.flag = CellFlag::Unchanged;
                        let mut idx = parent.index.clone();
                        idx.push(j + 1);
                        kid.index = idx;
                        let old_kid_path = ok.index.clone();
                        // CASE check for the next level: do the new
                        // polynomials create roots this stack lacks?
                        let disp = match new_next {
                            Some(new_polys) if !new_polys.is_empty() => {
                                let prefix = kid.sample.as_ref().expect("open cell");
                                let roots = stack_roots(new_polys, prefix)?;
                                let existing = old.stack_roots_of(&old_kid_path);
                                let has_new =
                                    roots.iter().any(|r| is_new_root(&existing, r));
                                if has_new {
                                    Disp::FullLift
                                } else {
                                    Disp::Keep(old_kid_path)
                                }
                            }
                            _ => Disp::Keep(old_kid_path),
                        };
                        next_cells.push(kid.clone());
                        next_disp.push((kid, disp));
                    }
                }
            }
        }
        levels.push(next_cells);
        dispositions = next_disp;
    }
    Ok(CadTree { nvars: n, levels })
}

/// Cell-set differences between two trees: equal index paths must agree on
/// kind and bounds, and each sample must lie inside the other tree's cell.
/// Flags are reporting metadata and are not compared.
pub fn diff_trees(a: &CadTree, b: &CadTree) -> Vec<String> {
    let mut diffs = Vec::new();
    if a.nvars != b.nvars {
        diffs.push(format!(
            "variable count differs: {} vs {}",
            a.nvars, b.nvars
        ));
        return diffs;
    }
    for k in 1..=a.nvars {
        let la = a.level(k);
        let lb = b.level(k);
        if la.len() != lb.len() {
            diffs.push(format!(
                "level {k}: cell count differs: {} vs {}",
                la.len(),
                lb.len()
            ));
            continue;
        }
        for (ca, cb) in la.iter().zip(lb.iter()) {
            if ca.index != cb.index {
                diffs.push(format!(
                    "level {k}: index mismatch {:?} vs {:?}",
                    ca.index, cb.index
                ));
                continue;
            }
            if ca.kind != cb.kind {
                diffs.push(format!("cell {:?}: kind differs", ca.index));
                continue;
            }
            if !bounds_equal(&ca.lower, &cb.lower) || !bounds_equal(&ca.upper, &cb.upper) {
                diffs.push(format!("cell {:?}: bounds differ", ca.index));
                continue;
            }
            if let (Some(qa), Some(_)) = (ca.own_coordinate(), cb.sample.as_ref()) {
                if !cb.contains_coordinate(qa) && ca.kind == CellKind::Open {
                    diffs.push(format!(
                        "cell {:?}: sample not inside counterpart",
                        ca.index
                    ));
                }
            }
            if let (Some(qb), Some(_)) = (cb.own_coordinate(), ca.sample.as_ref()) {
                if !ca.contains_coordinate(qb) && ca.kind == CellKind::Open {
                    diffs.push(format!(
                        "cell {:?}: counterpart sample not inside cell",
                        ca.index
                    ));
                }
            }
        }
    }
    diffs
}

/// Structural cylindricity check: same-level cells have equal or disjoint
/// projections; within a stack, children interleave in strict bound order.
pub fn check_cylindricity(tree: &CadTree) -> Vec<String> {
    let mut errs = Vec::new();
    for k in 2..=tree.nvars {
        let mut by_parent: BTreeMap<Vec<usize>, Vec<&Cell>> = BTreeMap::new();
        for c in tree.level(k) {
            by_parent
                .entry(c.index[..c.index.len() - 1].to_vec())
                .or_default()
                .push(c);
        }
        for (parent, kids) in &by_parent {
            if tree.cell(parent).is_none() {
                errs.push(format!("stack over missing parent {parent:?}"));
                continue;
            }
            for w in kids.windows(2) {
                let hi_of_first = &w[0].upper;
                let lo_of_second = &w[1].lower;
                if !bounds_equal(hi_of_first, lo_of_second) {
                    errs.push(format!(
                        "stack over {parent:?}: consecutive cells do not share a bound"
                    ));
                }
            }
        }
    }
    // Base level: strictly ordered, alternating decomposition of the line.
    let base = tree.level(1);
    for w in base.windows(2) {
        if !bounds_equal(&w[0].upper, &w[1].lower) {
            errs.push(format!(
                "base cells {:?}/{:?} do not share a bound",
                w[0].index, w[1].index
            ));
        }
    }
    errs
}
