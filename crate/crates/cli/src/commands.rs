//! Implementations of the CLI subcommands.

use std::fs;
use std::path::Path;

use serde::Serialize;

use cad_core::engine::CadState;
use cad_core::lifting::{check_cylindricity, Bound, Cell, CellFlag, CellKind};
use cad_core::poly::{format_rational, parse_poly, Polynomial, VarOrder};

use crate::bench::{self, BenchConfig};
use crate::plot;
use crate::{CmdError, CmdResult, EXIT_CHECK_FAILED, EXIT_OK};

fn read_file(path: &Path) -> Result<String, CmdError> {
    fs::read_to_string(path).map_err(|e| CmdError::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), CmdError> {
    fs::write(path, content).map_err(|e| CmdError::Io(format!("{}: {e}", path.display())))
}

fn load_state(path: &Path) -> Result<CadState, CmdError> {
    let text = read_file(path)?;
    CadState::load(&text).map_err(CmdError::Input)
}

fn parse_vars(arg: &str) -> Result<VarOrder, CmdError> {
    let names: Vec<String> = arg
        .split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect();
    VarOrder::new(names).map_err(CmdError::Input)
}

/// `--polys` accepts a file path (one polynomial per line, `#` comments)
/// or an inline list separated by `;` or `,`.
fn parse_polys_arg(arg: &str, order: &VarOrder) -> Result<Vec<Polynomial>, CmdError> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        read_file(path)?
    } else {
        arg.replace(';', "\n").replace(',', "\n")
    };
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_poly(line, order).map_err(CmdError::Input)?);
    }
    Ok(out)
}

fn print_cell_counts(state: &CadState) {
    for (level, total, open) in state.cell_counts() {
        println!("cells level={level} total={total} open={open}");
    }
}

pub fn cmd_build(vars: &str, polys: &str, out: &Path) -> CmdResult {
    let order = parse_vars(vars)?;
    let inputs = parse_polys_arg(polys, &order)?;
    let state = CadState::build(&inputs, &order).map_err(CmdError::Input)?;
    print_cell_counts(&state);
    write_file(out, &state.save())?;
    println!("state written to {}", out.display());
    eprintln!(
        "projection: {:.3} ms, lifting: {:.3} ms",
        state.meta().projection_nanos as f64 * 1e-6,
        state.meta().lifting_nanos as f64 * 1e-6
    );
    Ok(EXIT_OK)
}

pub fn cmd_add(state_path: &Path, poly: &str, out: &Path) -> CmdResult {
    let state = load_state(state_path)?;
    let g = parse_poly(poly, state.order()).map_err(CmdError::Input)?;
    let next = state.add(&g).map_err(CmdError::Input)?;
    if next.meta().last_op == "add-duplicate" {
        println!("duplicate input, state unchanged");
        eprintln!("E_DUP_INPUT: polynomial is already part of the system");
        write_file(out, &next.save())?;
        println!("state written to {}", out.display());
        return Ok(EXIT_OK);
    }
    let new_base_points = next
        .tree()
        .level(1)
        .iter()
        .filter(|c| c.kind == CellKind::Section && c.flag == CellFlag::New)
        .count();
    println!("new base points: {new_base_points}");
    for k in 1..=next.order().len() {
        let cells = next.tree().level(k);
        let new = cells.iter().filter(|c| c.flag == CellFlag::New).count();
        println!(
            "cells level={k} total={} new={} unchanged={}",
            cells.len(),
            new,
            cells.len() - new
        );
    }
    write_file(out, &next.save())?;
    println!("state written to {}", out.display());
    eprintln!(
        "projection: {:.3} ms ({} new polynomials), lifting: {:.3} ms",
        next.meta().projection_nanos as f64 * 1e-6,
        next.meta().projection_polys_added,
        next.meta().lifting_nanos as f64 * 1e-6
    );
    Ok(EXIT_OK)
}

fn bound_text(b: &Bound) -> String {
    match b {
        Bound::NegInf => "-inf".into(),
        Bound::PosInf => "+inf".into(),
        Bound::Root(r) => format!("{r}"),
    }
}

fn cell_region_text(cell: &Cell, var: &str) -> String {
    match (&cell.lower, &cell.upper, cell.kind) {
        (Bound::Root(r), _, CellKind::Section) => format!("{{{var} = {r}}}"),
        (Bound::NegInf, Bound::PosInf, _) => format!("{{-inf < {var} < +inf}}"),
        (Bound::NegInf, Bound::Root(u), _) => format!("{{{var} < {u}}}"),
        (Bound::Root(l), Bound::PosInf, _) => format!("{{{l} < {var}}}"),
        (Bound::Root(l), Bound::Root(u), _) => format!("{{{l} < {var} < {u}}}"),
        _ => format!("{{{} < {var} < {}}}", bound_text(&cell.lower), bound_text(&cell.upper)),
    }
}

fn sample_text(cell: &Cell) -> Option<String> {
    cell.sample.as_ref().map(|s| {
        if s.len() == 1 {
            format_rational(&s[0])
        } else {
            format!(
                "({})",
                s.iter().map(format_rational).collect::<Vec<_>>().join(", ")
            )
        }
    })
}

#[derive(Serialize)]
struct CellJson {
    index: Vec<usize>,
    level: usize,
    kind: &'static str,
    flag: &'static str,
    lower: String,
    upper: String,
    sample: Option<Vec<String>>,
}

fn cell_json(cell: &Cell) -> CellJson {
    CellJson {
        index: cell.index.clone(),
        level: cell.level,
        kind: match cell.kind {
            CellKind::Open => "open",
            CellKind::Section => "section",
        },
        flag: match cell.flag {
            CellFlag::New => "new",
            CellFlag::Unchanged => "unchanged",
        },
        lower: bound_text(&cell.lower),
        upper: bound_text(&cell.upper),
        sample: cell
            .sample
            .as_ref()
            .map(|s| s.iter().map(format_rational).collect()),
    }
}

pub fn cmd_cells(state_path: &Path, level: Option<usize>, format: &str) -> CmdResult {
    let state = load_state(state_path)?;
    let n = state.order().len();
    if let Some(k) = level {
        if k == 0 || k > n {
            return Err(CmdError::Usage(format!(
                "level {k} out of range for a {n}-variable state"
            )));
        }
    }
    let levels: Vec<usize> = match level {
        Some(k) => vec![k],
        None => (1..=n).collect(),
    };
    match format {
        "text" => {
            for k in &levels {
                println!("level {k}:");
                let var = state.order().name(*k - 1);
                for cell in state.tree().level(*k) {
                    let label = cell
                        .index
                        .iter()
                        .map(|i| i.to_string())
                        .collect::<Vec<_>>()
                        .join(".");
                    let kind = match cell.kind {
                        CellKind::Open => "open",
                        CellKind::Section => "section",
                    };
                    let mut line =
                        format!("  a{label} = {}  [{kind}]", cell_region_text(cell, var));
                    if let Some(s) = sample_text(cell) {
                        line.push_str(&format!("  sample: {s}"));
                    }
                    println!("{line}");
                }
            }
        }
        "json" => {
            let cells: Vec<CellJson> = levels
                .iter()
                .flat_map(|k| state.tree().level(*k).iter().map(cell_json))
                .collect();
            let doc = serde_json::json!({ "cells": cells });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        other => {
            return Err(CmdError::Usage(format!(
                "unknown format `{other}` (expected text or json)"
            )))
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_check(state_path: &Path) -> CmdResult {
    let state = load_state(state_path)?;
    let mut failed = false;

    let diff = state.recompute_oracle().map_err(CmdError::Input)?;
    if diff.is_empty() {
        println!("recompute oracle: clean");
    } else {
        failed = true;
        println!("recompute oracle: {} difference(s)", diff.diffs.len());
        for d in &diff.diffs {
            println!("  {d}");
        }
    }

    let n = state.order().len();
    let open_cells = state
        .tree()
        .level(n)
        .iter()
        .filter(|c| c.kind == CellKind::Open)
        .count();
    let violations = state
        .sign_invariance_violations(10)
        .map_err(CmdError::Input)?;
    if violations.is_empty() {
        println!("sign invariance: {open_cells} cells x 10 probes: clean");
    } else {
        failed = true;
        println!("sign invariance: {} violation(s)", violations.len());
        for v in &violations {
            println!("  {v}");
        }
    }

    let cyl = check_cylindricity(state.tree());
    if cyl.is_empty() {
        println!("cylindricity: clean");
    } else {
        failed = true;
        println!("cylindricity: {} violation(s)", cyl.len());
        for c in &cyl {
            println!("  {c}");
        }
    }

    if failed {
        println!("FAIL");
        Ok(EXIT_CHECK_FAILED)
    } else {
        println!("PASS");
        Ok(EXIT_OK)
    }
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_bench(
    dims: usize,
    count: usize,
    terms: Option<usize>,
    degree: Option<u32>,
    seed: u64,
    format: &str,
) -> CmdResult {
    let mut cfg = BenchConfig::defaults_for(dims, count, seed);
    if let Some(t) = terms {
        cfg.terms = t;
    }
    if let Some(d) = degree {
        cfg.degree = d;
    }
    let report = bench::run(cfg)?;
    match format {
        "table" => print!("{}", bench::format_table(&report)),
        "json" => print!("{}", bench::format_json(&report)),
        other => {
            return Err(CmdError::Usage(format!(
                "unknown format `{other}` (expected table or json)"
            )))
        }
    }
    if report.equivalence_failures > 0 {
        Ok(EXIT_CHECK_FAILED)
    } else {
        Ok(EXIT_OK)
    }
}

pub fn cmd_plot(state_path: &Path, out: &Path, window: &str) -> CmdResult {
    let state = load_state(state_path)?;
    if state.order().len() != 2 {
        return Err(CmdError::Usage(format!(
            "plot needs a 2-variable state, this one has {} variables",
            state.order().len()
        )));
    }
    let ext = out
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or("")
        .to_ascii_lowercase();
    match ext.as_str() {
        "svg" => {
            let w = plot::parse_window(window)?;
            write_file(out, &plot::render_svg(&state, &w))?;
        }
        "csv" => {
            write_file(out, &plot::render_csv(&state))?;
        }
        other => {
            return Err(CmdError::Usage(format!(
                "unknown output extension `{other}` (expected .svg or .csv)"
            )))
        }
    }
    println!("plot written to {}", out.display());
    Ok(EXIT_OK)
}
