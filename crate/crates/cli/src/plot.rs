//! SVG and CSV emitters for 2-variable states.
//!
//! Floating-point approximation is confined to this presentation layer:
//! curves are traced by dense column evaluation with sign-change
//! bisection, roots and bounds are printed as decimal approximations of
//! exactly refined intervals.

use num::{BigInt, ToPrimitive};

use cad_core::engine::CadState;
use cad_core::lifting::{Bound, CellKind};
use cad_core::poly::{format_rational, Polynomial, Rational};
use cad_core::realroot::IsolatedRoot;

use crate::CmdError;

#[derive(Debug, Clone, Copy)]
pub struct Window {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

pub fn parse_window(s: &str) -> Result<Window, CmdError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(CmdError::Usage(format!(
            "--window expects xmin,xmax,ymin,ymax, got `{s}`"
        )));
    }
    let vals: Vec<f64> = parts
        .iter()
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| CmdError::Usage(format!("bad window coordinate `{p}`")))
        })
        .collect::<Result<_, _>>()?;
    if !(vals[0] < vals[1]) || !(vals[2] < vals[3]) {
        return Err(CmdError::Usage("window must satisfy xmin < xmax and ymin < ymax".into()));
    }
    Ok(Window {
        xmin: vals[0],
        xmax: vals[1],
        ymin: vals[2],
        ymax: vals[3],
    })
}

fn root_to_f64(r: &IsolatedRoot) -> f64 {
    let width = Rational::new(BigInt::from(1), BigInt::from(10_000_000i64));
    r.approximate(&width).to_f64().unwrap_or(f64::NAN)
}

fn approx6(x: f64) -> String {
    format!("{x:.6}")
}

fn bound_approx(b: &Bound) -> String {
    match b {
        Bound::NegInf => "-inf".into(),
        Bound::PosInf => "inf".into(),
        Bound::Root(r) => approx6(root_to_f64(r)),
    }
}

/// CSV listing of every cell: `index,lower,upper,sample` with bounds to
/// six decimals and the cell's own-level sample coordinate exact.
pub fn render_csv(state: &CadState) -> String {
    let mut out = String::from("index,lower,upper,sample\n");
    for level in state.tree().levels() {
        for cell in level {
            let index = cell
                .index
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(".");
            let sample = cell
                .own_coordinate()
                .map(format_rational)
                .unwrap_or_default();
            out.push_str(&format!(
                "{index},{},{},{sample}\n",
                bound_approx(&cell.lower),
                bound_approx(&cell.upper)
            ));
        }
    }
    out
}

struct Mapper {
    w: Window,
    size: f64,
    margin: f64,
}

impl Mapper {
    fn px(&self, x: f64) -> f64 {
        self.margin + (x - self.w.xmin) / (self.w.xmax - self.w.xmin) * self.size
    }
    fn py(&self, y: f64) -> f64 {
        // SVG y grows downward.
        self.margin + (self.w.ymax - y) / (self.w.ymax - self.w.ymin) * self.size
    }
}

const PALETTE: [&str; 6] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

/// Trace the zero set of a bivariate polynomial by dense column
/// evaluation: 1000 columns, sign changes refined by bisection.
fn curve_points(f: &Polynomial, w: &Window) -> Vec<(f64, f64)> {
    let terms: Vec<(u32, u32, f64)> = f
        .terms()
        .map(|(e, c)| (e[0], e[1], c.to_f64().unwrap_or(f64::NAN)))
        .collect();
    let eval = |x: f64, y: f64| -> f64 {
        terms
            .iter()
            .map(|(i, j, c)| c * x.powi(*i as i32) * y.powi(*j as i32))
            .sum()
    };
    let cols = 1000usize;
    let rows = 256usize;
    let mut pts = Vec::new();
    for ci in 0..=cols {
        let x = w.xmin + (w.xmax - w.xmin) * ci as f64 / cols as f64;
        let mut prev_y = w.ymin;
        let mut prev_v = eval(x, prev_y);
        for ri in 1..=rows {
            let y = w.ymin + (w.ymax - w.ymin) * ri as f64 / rows as f64;
            let v = eval(x, y);
            if prev_v == 0.0 {
                pts.push((x, prev_y));
            } else if v != 0.0 && prev_v.signum() != v.signum() {
                // Bisect for the crossing.
                let (mut a, mut b, mut va) = (prev_y, y, prev_v);
                for _ in 0..40 {
                    let m = 0.5 * (a + b);
                    let vm = eval(x, m);
                    if vm == 0.0 {
                        a = m;
                        b = m;
                        break;
                    }
                    if va.signum() != vm.signum() {
                        b = m;
                    } else {
                        a = m;
                        va = vm;
                    }
                }
                pts.push((x, 0.5 * (a + b)));
            }
            prev_y = y;
            prev_v = v;
        }
        if prev_v == 0.0 {
            pts.push((x, prev_y));
        }
    }
    pts
}

/// SVG rendering: input curves as point sets, dashed vertical lines at the
/// base roots, dashed horizontal stack-boundary marks per open base cell,
/// and numbered open-cell labels.
pub fn render_svg(state: &CadState, w: &Window) -> String {
    let m = Mapper {
        w: *w,
        size: 800.0,
        margin: 40.0,
    };
    let total = m.size + 2.0 * m.margin;
    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{total}\" height=\"{total}\" viewBox=\"0 0 {total} {total}\">\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{total}\" height=\"{total}\" fill=\"white\"/>\n"
    ));
    svg.push_str(&format!(
        "  <rect x=\"{0}\" y=\"{0}\" width=\"{1}\" height=\"{1}\" fill=\"none\" stroke=\"#444\"/>\n",
        m.margin, m.size
    ));
    // Axes when visible.
    if w.xmin < 0.0 && w.xmax > 0.0 {
        let x0 = m.px(0.0);
        svg.push_str(&format!(
            "  <line x1=\"{x0}\" y1=\"{}\" x2=\"{x0}\" y2=\"{}\" stroke=\"#bbb\"/>\n",
            m.margin,
            m.margin + m.size
        ));
    }
    if w.ymin < 0.0 && w.ymax > 0.0 {
        let y0 = m.py(0.0);
        svg.push_str(&format!(
            "  <line x1=\"{}\" y1=\"{y0}\" x2=\"{}\" y2=\"{y0}\" stroke=\"#bbb\"/>\n",
            m.margin,
            m.margin + m.size
        ));
    }

    // Dashed vertical lines at the base (projection) roots.
    let tree = state.tree();
    let mut base_root_xs = Vec::new();
    for cell in tree.level(1) {
        if cell.kind == CellKind::Section {
            if let Bound::Root(r) = &cell.lower {
                base_root_xs.push(root_to_f64(r));
            }
        }
    }
    for x in &base_root_xs {
        if *x >= w.xmin && *x <= w.xmax {
            let px = m.px(*x);
            svg.push_str(&format!(
                "  <line x1=\"{px}\" y1=\"{}\" x2=\"{px}\" y2=\"{}\" stroke=\"#888\" stroke-dasharray=\"6,4\"/>\n",
                m.margin,
                m.margin + m.size
            ));
        }
    }

    // Per-stack horizontal boundary marks across each open base cell.
    for cell in tree.level(1) {
        if cell.kind != CellKind::Open {
            continue;
        }
        let x_lo = match &cell.lower {
            Bound::NegInf => w.xmin,
            Bound::Root(r) => root_to_f64(r).max(w.xmin),
            Bound::PosInf => continue,
        };
        let x_hi = match &cell.upper {
            Bound::PosInf => w.xmax,
            Bound::Root(r) => root_to_f64(r).min(w.xmax),
            Bound::NegInf => continue,
        };
        if x_lo >= x_hi {
            continue;
        }
        for child in tree.children(&cell.index) {
            if let Bound::Root(r) = &child.lower {
                let y = root_to_f64(r);
                if y >= w.ymin && y <= w.ymax {
                    svg.push_str(&format!(
                        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#bbb\" stroke-dasharray=\"3,5\"/>\n",
                        m.px(x_lo),
                        m.py(y),
                        m.px(x_hi),
                        m.py(y)
                    ));
                }
            }
        }
    }

    // Input curves as dense point sets.
    for (k, (_, f)) in state.inputs().iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        svg.push_str(&format!("  <g fill=\"{color}\">\n"));
        for (x, y) in curve_points(f, w) {
            svg.push_str(&format!(
                "    <circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"1.2\"/>\n",
                m.px(x),
                m.py(y)
            ));
        }
        svg.push_str("  </g>\n");
    }

    // Numbered open full-dimension cells at their samples.
    let mut label = 0usize;
    for cell in tree.level(2) {
        if cell.kind != CellKind::Open {
            continue;
        }
        label += 1;
        if let Some(s) = &cell.sample {
            let x = s[0].to_f64().unwrap_or(f64::NAN);
            let y = s[1].to_f64().unwrap_or(f64::NAN);
            if x >= w.xmin && x <= w.xmax && y >= w.ymin && y <= w.ymax {
                svg.push_str(&format!(
                    "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" fill=\"#222\" text-anchor=\"middle\">{label}</text>\n",
                    m.px(x),
                    m.py(y)
                ));
            }
        }
    }
    svg.push_str("</svg>\n");
    svg
}
