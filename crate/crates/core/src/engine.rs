//! Sessions: build a CAD, refine it incrementally, answer point-location
//! and sign queries, persist and reload state, and recompute from scratch
//! as a correctness oracle.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::CadError;
use crate::lifting::{
    self, diff_trees, lift_add, lift_full, Bound, CadTree, Cell, CellFlag, CellKind,
};
use crate::poly::{format_poly, parse_poly, parse_rational, Polynomial, Rational, VarOrder};
use crate::projection::{projection_polys_add, ProjectionTable, Provenance};
use crate::realroot::{cmp_rat_root, sign_at_root, IsolatedRoot};
use crate::Result;

/// Build statistics for the most recent operation on a state. The wall
/// times are in-memory only; the persisted document keeps the counts, so
/// state files are byte-deterministic for identical inputs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Meta {
    /// "build", "add", or "add-duplicate".
    pub last_op: String,
    pub projection_nanos: u64,
    pub lifting_nanos: u64,
    /// Projection polynomials newly computed by the last operation.
    pub projection_polys_added: u64,
    /// Projection polynomials in the table (what a from-scratch run
    /// computes).
    pub projection_polys_total: u64,
    /// Cells created (flagged new) by the last operation.
    pub cells_new: u64,
    /// Cells kept from the previous tree by the last operation.
    pub cells_unchanged: u64,
    pub cells_total: u64,
}

#[derive(Serialize, Deserialize)]
struct MetaDoc {
    last_op: String,
    projection_polys_added: u64,
    projection_polys_total: u64,
    cells_new: u64,
    cells_unchanged: u64,
    cells_total: u64,
}

impl MetaDoc {
    fn of(m: &Meta) -> MetaDoc {
        MetaDoc {
            last_op: m.last_op.clone(),
            projection_polys_added: m.projection_polys_added,
            projection_polys_total: m.projection_polys_total,
            cells_new: m.cells_new,
            cells_unchanged: m.cells_unchanged,
            cells_total: m.cells_total,
        }
    }

    fn into_meta(self) -> Meta {
        Meta {
            last_op: self.last_op,
            projection_nanos: 0,
            lifting_nanos: 0,
            projection_polys_added: self.projection_polys_added,
            projection_polys_total: self.projection_polys_total,
            cells_new: self.cells_new,
            cells_unchanged: self.cells_unchanged,
            cells_total: self.cells_total,
        }
    }
}

/// A persistent CAD session: inputs, projection table, tree, statistics.
#[derive(Debug, Clone)]
pub struct CadState {
    order: VarOrder,
    inputs: Vec<(u64, Polynomial)>,
    table: ProjectionTable,
    tree: CadTree,
    meta: Meta,
}

/// Result of a point-location query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Located {
    /// Index path of the unique open cell containing the point.
    Cell(Vec<usize>),
    /// The point lies on a cell wall.
    Boundary,
}

/// Differences reported by the recompute oracle (empty means the
/// incremental state matches a from-scratch rebuild).
#[derive(Debug, Clone, Default)]
pub struct CellSetDiff {
    pub diffs: Vec<String>,
}

impl CellSetDiff {
    pub fn is_empty(&self) -> bool {
        self.diffs.is_empty()
    }
}

impl CadState {
    /// Full projection and full lift over the given constraints.
    pub fn build(polys: &[Polynomial], order: &VarOrder) -> Result<CadState> {
        if polys.is_empty() {
            return Err(CadError::EmptyInput("no input polynomials".into()));
        }
        let mut inputs: Vec<(u64, Polynomial)> = Vec::new();
        for p in polys {
            if p.is_zero() {
                return Err(CadError::ZeroPolynomial);
            }
            if p.nvars() != order.len() {
                return Err(CadError::UnknownVariable(format!(
                    "polynomial over {} variables does not fit a {}-variable order",
                    p.nvars(),
                    order.len()
                )));
            }
            let canon = p.normalize()?;
            if !inputs.iter().any(|(_, q)| q == &canon) {
                inputs.push((inputs.len() as u64 + 1, canon));
            }
        }
        let t0 = Instant::now();
        let (table, stats) = projection_polys_add(None, &inputs, order)?;
        let projection_nanos = t0.elapsed().as_nanos() as u64;
        let t1 = Instant::now();
        let tree = lift_full(&table)?;
        let lifting_nanos = t1.elapsed().as_nanos() as u64;
        let meta = Meta {
            last_op: "build".into(),
            projection_nanos,
            lifting_nanos,
            projection_polys_added: stats.polys_added,
            projection_polys_total: table.total_polys(),
            cells_new: tree.total_cells(),
            cells_unchanged: 0,
            cells_total: tree.total_cells(),
        };
        Ok(CadState {
            order: order.clone(),
            inputs,
            table,
            tree,
            meta,
        })
    }

    /// Refine for one additional constraint: incremental projection plus
    /// the tree merge. Cell-set equal to a from-scratch build of all
    /// inputs. Adding a polynomial already present returns an unchanged
    /// state (last_op "add-duplicate").
    pub fn add(&self, g: &Polynomial) -> Result<CadState> {
        if g.is_zero() {
            return Err(CadError::ZeroPolynomial);
        }
        if g.nvars() != self.order.len() {
            return Err(CadError::UnknownVariable(format!(
                "polynomial over {} variables does not fit a {}-variable order",
                g.nvars(),
                self.order.len()
            )));
        }
        let canon = g.normalize()?;
        if self.inputs.iter().any(|(_, q)| q == &canon) {
            let mut out = self.clone();
            out.meta = Meta {
                last_op: "add-duplicate".into(),
                projection_polys_total: self.table.total_polys(),
                cells_unchanged: self.tree.total_cells(),
                cells_total: self.tree.total_cells(),
                ..Meta::default()
            };
            return Ok(out);
        }
        let id = self.inputs.iter().map(|(i, _)| *i).max().unwrap_or(0) + 1;
        let t0 = Instant::now();
        let (table, stats) =
            projection_polys_add(Some(&self.table), &[(id, canon.clone())], &self.order)?;
        let projection_nanos = t0.elapsed().as_nanos() as u64;
        let new_entries: Vec<Vec<Polynomial>> = (0..table.nvars())
            .map(|i| {
                let old = self.table.level(i).as_polyset();
                table
                    .level(i)
                    .polys()
                    .iter()
                    .filter(|p| !old.contains(p))
                    .cloned()
                    .collect()
            })
            .collect();
        let t1 = Instant::now();
        let tree = lift_add(&new_entries, &self.tree, &table)?;
        let lifting_nanos = t1.elapsed().as_nanos() as u64;
        let cells_new = tree
            .levels()
            .iter()
            .flatten()
            .filter(|c| c.flag == CellFlag::New)
            .count() as u64;
        let meta = Meta {
            last_op: "add".into(),
            projection_nanos,
            lifting_nanos,
            projection_polys_added: stats.polys_added,
            projection_polys_total: table.total_polys(),
            cells_new,
            cells_unchanged: tree.total_cells() - cells_new,
            cells_total: tree.total_cells(),
        };
        let mut inputs = self.inputs.clone();
        inputs.push((id, canon));
        Ok(CadState {
            order: self.order.clone(),
            inputs,
            table,
            tree,
            meta,
        })
    }

    pub fn order(&self) -> &VarOrder {
        &self.order
    }

    pub fn inputs(&self) -> &[(u64, Polynomial)] {
        &self.inputs
    }

    pub fn table(&self) -> &ProjectionTable {
        &self.table
    }

    pub fn tree(&self) -> &CadTree {
        &self.tree
    }

    pub fn meta(&self) -> &Meta {
        &self.meta
    }

    /// (level, total cells, open cells) per level.
    pub fn cell_counts(&self) -> Vec<(usize, usize, usize)> {
        (1..=self.order.len())
            .map(|k| {
                (
                    k,
                    self.tree.level(k).len(),
                    self.tree.open_cell_count(k),
                )
            })
            .collect()
    }

    /// The unique open cell containing the point, or Boundary when the
    /// point lies on a cell wall. Exact.
    pub fn locate(&self, point: &[Rational]) -> Result<Located> {
        let n = self.order.len();
        if point.len() != n {
            return Err(CadError::DimensionMismatch {
                expected: n,
                got: point.len(),
            });
        }
        let mut path = Vec::with_capacity(n);
        for k in 1..=n {
            let polys = self.table.lift_level(k).polys();
            let roots = lifting::stack_roots(polys, &point[..k - 1])?;
            let mut below = 0usize;
            for r in roots.iter() {
                match cmp_rat_root(&point[k - 1], r) {
                    Ordering::Equal => return Ok(Located::Boundary),
                    Ordering::Greater => below += 1,
                    Ordering::Less => {}
                }
            }
            // Open-cell position `below` (0-based); at the base level,
            // sections interleave, so the overall index is 2·below + 1.
            if k == 1 {
                path.push(2 * below + 1);
            } else {
                path.push(below + 1);
            }
        }
        debug_assert!(self.tree.cell(&path).is_some());
        Ok(Located::Cell(path))
    }

    /// Signs of every input polynomial at the cell's sample, in input
    /// order. Defined for full-dimension cells, and for base sections of
    /// one-variable states (where algebraic evaluation stays exact).
    pub fn sign_vector(&self, path: &[usize]) -> Result<Vec<i32>> {
        let n = self.order.len();
        let cell = self
            .tree
            .cell(path)
            .ok_or_else(|| CadError::StaleCell(format!("{path:?}")))?;
        if self.inputs.is_empty() {
            return Ok(Vec::new());
        }
        if cell.level != n {
            return Err(CadError::InvalidInput(
                "sign_vector needs a full-dimension cell".into(),
            ));
        }
        match (&cell.sample, cell.kind) {
            (Some(sample), _) => {
                let mut out = Vec::with_capacity(self.inputs.len());
                for (_, f) in &self.inputs {
                    out.push(crate::poly::sign(&f.evaluate(sample)?));
                }
                Ok(out)
            }
            (None, CellKind::Section) => {
                // One-variable state, irrational section: exact algebraic
                // evaluation against the defining root.
                let root = cell
                    .lower
                    .as_root()
                    .ok_or_else(|| CadError::StaleCell(format!("{path:?}")))?;
                let mut out = Vec::with_capacity(self.inputs.len());
                for (_, f) in &self.inputs {
                    out.push(sign_at_root(f, root)?);
                }
                Ok(out)
            }
            (None, CellKind::Open) => Err(CadError::StaleCell(format!("{path:?}"))),
        }
    }

    /// Rebuild from scratch from the inputs and report cell-set and
    /// projection-level differences. Expected empty.
    pub fn recompute_oracle(&self) -> Result<CellSetDiff> {
        let polys: Vec<Polynomial> = self.inputs.iter().map(|(_, p)| p.clone()).collect();
        let rebuilt = CadState::build(&polys, &self.order)?;
        let mut diffs = diff_trees(&self.tree, &rebuilt.tree);
        for i in 0..self.table.nvars() {
            if !self
                .table
                .level(i)
                .as_polyset()
                .set_eq(&rebuilt.table.level(i).as_polyset())
            {
                diffs.push(format!("projection level {i} differs from recompute"));
            }
        }
        Ok(CellSetDiff { diffs })
    }

    /// Sign-invariance probes: for every full-dimension open cell, every
    /// input keeps its (nonzero) sample sign at `probes` deterministic
    /// pseudo-random interior rational points. Returns violations.
    pub fn sign_invariance_violations(&self, probes: usize) -> Result<Vec<String>> {
        let n = self.order.len();
        let mut violations = Vec::new();
        for cell in self.tree.level(n).iter() {
            if cell.kind != CellKind::Open {
                continue;
            }
            let sample = cell.sample.as_ref().expect("open cells carry samples");
            let mut expected = Vec::new();
            for (id, f) in &self.inputs {
                let s = crate::poly::sign(&f.evaluate(sample)?);
                if s == 0 {
                    violations.push(format!(
                        "input {id} vanishes at the sample of cell {:?}",
                        cell.index
                    ));
                }
                expected.push(s);
            }
            for j in 0..probes {
                let point = match self.probe_point(cell, j as u64) {
                    Ok(p) => p,
                    Err(e) => {
                        violations.push(format!(
                            "cell {:?}: probe {j} failed: {e}",
                            cell.index
                        ));
                        continue;
                    }
                };
                for ((id, f), want) in self.inputs.iter().zip(&expected) {
                    let got = crate::poly::sign(&f.evaluate(&point)?);
                    if got != *want {
                        violations.push(format!(
                            "input {id} changes sign inside cell {:?} (sample sign {want}, probe sign {got})",
                            cell.index
                        ));
                    }
                }
            }
        }
        Ok(violations)
    }

    /// Deterministic pseudo-random rational point strictly inside an open
    /// full-dimension cell: descend level by level, re-deriving the stack
    /// interval over the jittered prefix.
    fn probe_point(&self, cell: &Cell, salt: u64) -> Result<Vec<Rational>> {
        let n = self.order.len();
        let mut lcg = 0x9e3779b97f4a7c15u64 ^ salt.wrapping_mul(0xd1342543de82ef95);
        for &i in &cell.index {
            lcg = lcg.wrapping_mul(31).wrapping_add(i as u64);
        }
        let mut next = move || {
            lcg = lcg
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            lcg >> 33
        };
        let mut prefix: Vec<Rational> = Vec::with_capacity(n);
        for k in 1..=n {
            let polys = self.table.lift_level(k).polys();
            let roots = lifting::stack_roots(polys, &prefix)?;
            let pos = if k == 1 {
                (cell.index[0] - 1) / 2
            } else {
                cell.index[k - 1] - 1
            };
            if pos > roots.len() {
                return Err(CadError::StaleCell(format!(
                    "stack over {:?} has fewer intervals than the cell index expects",
                    &cell.index[..k]
                )));
            }
            let lower = if pos == 0 {
                Bound::NegInf
            } else {
                Bound::Root(roots.get(pos - 1).unwrap().clone())
            };
            let upper = if pos == roots.len() {
                Bound::PosInf
            } else {
                Bound::Root(roots.get(pos).unwrap().clone())
            };
            let base = lifting::sample_in_bounds(&lower, &upper);
            // Jitter strictly inside (lower, upper) around the base sample.
            let pa = match &lower {
                Bound::Root(r) => {
                    crate::realroot::sample_between(r, &IsolatedRoot::from_rational(base.clone()))
                }
                _ => &base - Rational::from(num::BigInt::from(1)),
            };
            let pb = match &upper {
                Bound::Root(r) => {
                    crate::realroot::sample_between(&IsolatedRoot::from_rational(base.clone()), r)
                }
                _ => &base + Rational::from(num::BigInt::from(1)),
            };
            let t = Rational::new(num::BigInt::from(next() % 2047 + 1), num::BigInt::from(2048));
            let coord = &pa + (&pb - &pa) * t;
            prefix.push(coord);
        }
        Ok(prefix)
    }

    /// Canonical textual state document.
    pub fn save(&self) -> String {
        let doc = self.to_doc();
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    /// Parse and validate a state document.
    pub fn load(text: &str) -> Result<CadState> {
        let doc: StateDoc = serde_json::from_str(text).map_err(|e| CadError::Schema {
            location: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        CadState::from_doc(doc)
    }

    fn to_doc(&self) -> StateDoc {
        let order = self.order.names().to_vec();
        let inputs = self
            .inputs
            .iter()
            .map(|(id, p)| InputDoc {
                id: *id,
                poly: format_poly(p, &self.order),
            })
            .collect();
        let projection = ProjectionDoc {
            levels: (0..self.table.nvars())
                .map(|i| LevelDoc {
                    main_var: self
                        .order
                        .name(self.table.main_var_of_level(i))
                        .to_string(),
                    polys: self
                        .table
                        .level(i)
                        .iter()
                        .map(|(p, prov)| ProjPolyDoc {
                            poly: format_poly(p, &self.order),
                            sources: prov.iter().copied().collect(),
                        })
                        .collect(),
                })
                .collect(),
        };
        let tree = TreeDoc {
            levels: self
                .tree
                .levels()
                .iter()
                .map(|cells| TreeLevelDoc {
                    cells: cells.iter().map(cell_to_doc).collect(),
                })
                .collect(),
        };
        StateDoc {
            format_version: FORMAT_VERSION,
            order,
            inputs,
            projection,
            tree,
            meta: MetaDoc::of(&self.meta),
        }
    }

    fn from_doc(doc: StateDoc) -> Result<CadState> {
        if doc.format_version != FORMAT_VERSION {
            return Err(CadError::Schema {
                location: "format_version".into(),
                message: format!(
                    "unsupported version {} (expected {FORMAT_VERSION})",
                    doc.format_version
                ),
            });
        }
        let order = VarOrder::new(doc.order.clone()).map_err(|e| CadError::Schema {
            location: "order".into(),
            message: e.to_string(),
        })?;
        let n = order.len();
        let mut inputs = Vec::new();
        let mut seen_ids = BTreeSet::new();
        for (i, inp) in doc.inputs.iter().enumerate() {
            let p = parse_poly(&inp.poly, &order).map_err(|e| CadError::Schema {
                location: format!("inputs[{i}].poly"),
                message: e.to_string(),
            })?;
            if p.is_zero() {
                return Err(CadError::Schema {
                    location: format!("inputs[{i}].poly"),
                    message: "zero polynomial".into(),
                });
            }
            if !seen_ids.insert(inp.id) {
                return Err(CadError::Schema {
                    location: format!("inputs[{i}].id"),
                    message: "duplicate input id".into(),
                });
            }
            inputs.push((inp.id, p));
        }
        if inputs.is_empty() {
            return Err(CadError::Schema {
                location: "inputs".into(),
                message: "empty input list".into(),
            });
        }
        let mut proj_parts: Vec<Vec<(Polynomial, Provenance)>> = Vec::new();
        for (i, level) in doc.projection.levels.iter().enumerate() {
            let main = n
                .checked_sub(1 + i)
                .ok_or_else(|| CadError::Schema {
                    location: "projection.levels".into(),
                    message: "more levels than variables".into(),
                })?;
            if level.main_var != order.name(main) {
                return Err(CadError::Schema {
                    location: format!("projection.levels[{i}].main_var"),
                    message: format!(
                        "expected `{}`, found `{}`",
                        order.name(main),
                        level.main_var
                    ),
                });
            }
            let mut entries = Vec::new();
            for (j, pd) in level.polys.iter().enumerate() {
                let loc = format!("projection.levels[{i}].polys[{j}]");
                let p = parse_poly(&pd.poly, &order).map_err(|e| CadError::Schema {
                    location: loc.clone(),
                    message: e.to_string(),
                })?;
                if p.is_zero() || p.normalize().ok().as_ref() != Some(&p) {
                    return Err(CadError::Schema {
                        location: loc.clone(),
                        message: "polynomial is not in canonical form".into(),
                    });
                }
                if p.vars_present().into_iter().any(|v| v > main) {
                    return Err(CadError::Schema {
                        location: loc,
                        message: "level polynomial mentions a variable above its level".into(),
                    });
                }
                entries.push((p, pd.sources.iter().copied().collect::<Provenance>()));
            }
            proj_parts.push(entries);
        }
        let table = ProjectionTable::from_parts(n, proj_parts)?;
        let mut levels: Vec<Vec<Cell>> = Vec::new();
        for (k, level) in doc.tree.levels.iter().enumerate() {
            let mut cells = Vec::new();
            for (c, cd) in level.cells.iter().enumerate() {
                cells.push(cell_from_doc(cd, k + 1, &format!("tree.levels[{k}].cells[{c}]"))?);
            }
            levels.push(cells);
        }
        let tree = CadTree::from_parts(n, levels)?;
        Ok(CadState {
            order,
            inputs,
            table,
            tree,
            meta: doc.meta.into_meta(),
        })
    }
}

const FORMAT_VERSION: u32 = 1;

/// Rational in the state document: always `num/den`.
fn rat_to_doc(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn rat_from_doc(s: &str, loc: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| CadError::Schema {
        location: loc.to_string(),
        message: e.to_string(),
    })
}

#[derive(Serialize, Deserialize)]
struct StateDoc {
    format_version: u32,
    order: Vec<String>,
    inputs: Vec<InputDoc>,
    projection: ProjectionDoc,
    tree: TreeDoc,
    meta: MetaDoc,
}

#[derive(Serialize, Deserialize)]
struct InputDoc {
    id: u64,
    poly: String,
}

#[derive(Serialize, Deserialize)]
struct ProjectionDoc {
    levels: Vec<LevelDoc>,
}

#[derive(Serialize, Deserialize)]
struct LevelDoc {
    main_var: String,
    polys: Vec<ProjPolyDoc>,
}

#[derive(Serialize, Deserialize)]
struct ProjPolyDoc {
    poly: String,
    sources: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct TreeDoc {
    levels: Vec<TreeLevelDoc>,
}

#[derive(Serialize, Deserialize)]
struct TreeLevelDoc {
    cells: Vec<CellDoc>,
}

#[derive(Serialize, Deserialize)]
struct CellDoc {
    index: Vec<usize>,
    kind: String,
    flag: String,
    lower: BoundDoc,
    upper: BoundDoc,
    sample: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum BoundDoc {
    NegInf,
    PosInf,
    Root { root: RootDoc },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RootDoc {
    Rational {
        value: String,
    },
    Algebraic {
        poly: String,
        lo: String,
        hi: String,
    },
}

fn root_to_doc(r: &IsolatedRoot) -> RootDoc {
    match r.as_rational() {
        Some(q) => RootDoc::Rational {
            value: rat_to_doc(q),
        },
        None => {
            let (poly, lo, hi) = r.algebraic_parts().expect("algebraic");
            RootDoc::Algebraic {
                poly,
                lo: rat_to_doc(lo),
                hi: rat_to_doc(hi),
            }
        }
    }
}

fn root_from_doc(d: &RootDoc, loc: &str) -> Result<IsolatedRoot> {
    match d {
        RootDoc::Rational { value } => Ok(IsolatedRoot::from_rational(rat_from_doc(value, loc)?)),
        RootDoc::Algebraic { poly, lo, hi } => IsolatedRoot::from_algebraic_parts(
            poly,
            rat_from_doc(lo, &format!("{loc}.lo"))?,
            rat_from_doc(hi, &format!("{loc}.hi"))?,
        ),
    }
}

fn bound_to_doc(b: &Bound) -> BoundDoc {
    match b {
        Bound::NegInf => BoundDoc::NegInf,
        Bound::PosInf => BoundDoc::PosInf,
        Bound::Root(r) => BoundDoc::Root {
            root: root_to_doc(r),
        },
    }
}

fn bound_from_doc(d: &BoundDoc, loc: &str) -> Result<Bound> {
    Ok(match d {
        BoundDoc::NegInf => Bound::NegInf,
        BoundDoc::PosInf => Bound::PosInf,
        BoundDoc::Root { root } => Bound::Root(root_from_doc(root, loc)?),
    })
}

fn cell_to_doc(c: &Cell) -> CellDoc {
    CellDoc {
        index: c.index.clone(),
        kind: match c.kind {
            CellKind::Open => "open",
            CellKind::Section => "section",
        }
        .to_string(),
        flag: match c.flag {
            CellFlag::New => "new",
            CellFlag::Unchanged => "unchanged",
        }
        .to_string(),
        lower: bound_to_doc(&c.lower),
        upper: bound_to_doc(&c.upper),
        sample: c
            .sample
            .as_ref()
            .map(|s| s.iter().map(rat_to_doc).collect()),
    }
}

fn cell_from_doc(d: &CellDoc, level: usize, loc: &str) -> Result<Cell> {
    if d.index.len() != level {
        return Err(CadError::Schema {
            location: format!("{loc}.index"),
            message: format!("index length {} does not match level {level}", d.index.len()),
        });
    }
    let kind = match d.kind.as_str() {
        "open" => CellKind::Open,
        "section" => CellKind::Section,
        other => {
            return Err(CadError::Schema {
                location: format!("{loc}.kind"),
                message: format!("unknown cell kind `{other}`"),
            })
        }
    };
    let flag = match d.flag.as_str() {
        "new" => CellFlag::New,
        "unchanged" => CellFlag::Unchanged,
        other => {
            return Err(CadError::Schema {
                location: format!("{loc}.flag"),
                message: format!("unknown cell flag `{other}`"),
            })
        }
    };
    let sample = match &d.sample {
        None => None,
        Some(coords) => {
            if coords.len() != level {
                return Err(CadError::Schema {
                    location: format!("{loc}.sample"),
                    message: format!(
                        "sample length {} does not match level {level}",
                        coords.len()
                    ),
                });
            }
            let mut s = Vec::with_capacity(coords.len());
            for (i, c) in coords.iter().enumerate() {
                s.push(rat_from_doc(c, &format!("{loc}.sample[{i}]"))?);
            }
            Some(s)
        }
    };
    if kind == CellKind::Open && sample.is_none() {
        return Err(CadError::Schema {
            location: format!("{loc}.sample"),
            message: "open cells must carry a sample".into(),
        });
    }
    Ok(Cell {
        level,
        index: d.index.clone(),
        kind,
        flag,
        lower: bound_from_doc(&d.lower, &format!("{loc}.lower"))?,
        upper: bound_from_doc(&d.upper, &format!("{loc}.upper"))?,
        sample,
    })
}

#[cfg(test)]
mod tests;
