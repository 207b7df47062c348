//! Static SVG and JSON renderings of a fundamental domain.

use std::fmt::Write;

use num_complex::Complex64;
use serde::Serialize;

use super::domain::{Base, Edge, ExactPoint, FundamentalDomain};
use super::subgroup::{mul, M2, T};

pub const DEFAULT_YMAX: f64 = 2.5;
pub const CONVENTION: &str = "right cosets: SL(2,Z) = union of Gamma*g_i, domain = union of g_i*F";

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 360.0;
const TINTS: [&str; 12] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd",
    "#ccebc5", "#ffed6f",
];

/// Points along the geodesic from `p` to `q`, clipped at `ymax`; `None` marks `∞`.
fn geodesic(p: Option<Complex64>, q: Option<Complex64>, ymax: f64, steps: usize) -> Vec<Complex64> {
    match (p, q) {
        (None, None) => Vec::new(),
        (Some(a), None) => vec![a, Complex64::new(a.re, ymax.max(a.im))],
        (None, Some(b)) => vec![Complex64::new(b.re, ymax.max(b.im)), b],
        (Some(a), Some(b)) if (a.re - b.re).abs() < 1e-12 => vec![a, b],
        (Some(a), Some(b)) => {
            // Circle centred on the real axis through a and b.
            let c = (b.norm_sqr() - a.norm_sqr()) / (2.0 * (b.re - a.re));
            let r = (a - c).norm();
            let (ta, tb) = ((a.im).atan2(a.re - c), (b.im).atan2(b.re - c));
            (0..=steps)
                .map(|k| {
                    let t = ta + (tb - ta) * k as f64 / steps as f64;
                    Complex64::new(c + r * t.cos(), r * t.sin())
                })
                .collect()
        }
    }
}

fn edge_polyline(e: &Edge, ymax: f64) -> Vec<Complex64> {
    geodesic(e.from.numeric(), e.to.numeric(), ymax, 24)
}

fn view(domain: &FundamentalDomain, ymax: f64) -> (f64, f64) {
    let mut lo = -1.0f64;
    let mut hi = 1.0f64;
    for e in &domain.edges {
        for p in edge_polyline(e, ymax) {
            lo = lo.min(p.re);
            hi = hi.max(p.re);
        }
    }
    (lo - 0.25, hi + 0.25)
}

fn fmt_m2(m: &M2) -> String {
    format!("[[{},{}],[{},{}]]", m[0], m[1], m[2], m[3])
}

/// Renders the domain in the upper half plane, `0 < y ≤ ymax`.
pub fn domain_svg(domain: &FundamentalDomain, ymax: f64) -> String {
    let (x0, x1) = view(domain, ymax);
    let sx = WIDTH / (x1 - x0);
    let sy = HEIGHT / ymax;
    let px = |z: Complex64| (((z.re - x0) * sx), (HEIGHT - z.im.min(ymax) * sy));
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{:.0}" viewBox="0 0 {WIDTH:.0} {:.0}">"#, HEIGHT + 40.0, HEIGHT + 40.0);
    let _ = writeln!(out, r#"<title>{}</title>"#, domain.subgroup.name());
    for (i, c) in domain.cells.iter().enumerate() {
        let gt = mul(&c.matrix, &T);
        let corners = [
            ExactPoint::new(c.matrix, Base::Inf),
            ExactPoint::new(c.matrix, Base::Rho),
            ExactPoint::new(c.matrix, Base::I),
            ExactPoint::new(gt, Base::Rho),
        ];
        let mut ring = Vec::new();
        for k in 0..4 {
            let seg = geodesic(corners[k].numeric(), corners[(k + 1) % 4].numeric(), ymax, 24);
            ring.extend(seg);
        }
        let pts: Vec<String> = ring.iter().map(|z| px(*z)).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="{}" fill-opacity="0.6" stroke="none"><title>{}</title></polygon>"#,
            pts.join(" "),
            TINTS[i % TINTS.len()],
            c.word
        );
    }
    for e in &domain.edges {
        let pts: Vec<String> = edge_polyline(e, ymax).iter().map(|z| px(*z)).map(|(x, y)| format!("{x:.3},{y:.3}")).collect();
        let (stroke, width) = if e.internal { ("#888888", 0.8) } else { ("#000000", 1.6) };
        let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="{stroke}" stroke-width="{width}"/>"#, pts.join(" "));
    }
    for p in &domain.pairings {
        for id in [p.source, p.target] {
            let line = edge_polyline(&domain.edges[id], ymax);
            if let Some(mid) = line.get(line.len() / 2) {
                let (x, y) = px(*mid);
                let _ = writeln!(out, r##"<text x="{x:.3}" y="{y:.3}" font-size="9" fill="#b00000">{}</text>"##, fmt_m2(&p.matrix));
            }
        }
    }
    let axis = HEIGHT;
    let _ = writeln!(out, r##"<line x1="0" y1="{axis:.3}" x2="{WIDTH:.0}" y2="{axis:.3}" stroke="#000000" stroke-width="0.5"/>"##);
    let mut k = x0.ceil() as i64;
    while (k as f64) <= x1 {
        let (x, _) = px(Complex64::new(k as f64, 0.0));
        let _ = writeln!(out, r#"<text x="{x:.3}" y="{:.3}" font-size="10" text-anchor="middle">{k}</text>"#, axis + 14.0);
        k += 1;
    }
    out.push_str("</svg>\n");
    out
}

#[derive(Serialize)]
struct EdgeJson {
    id: usize,
    cell: usize,
    tag: String,
    from: String,
    to: String,
    internal: bool,
}

#[derive(Serialize)]
struct PairingJson {
    matrix: M2,
    word: String,
    edges: [usize; 2],
}

#[derive(Serialize)]
struct DomainJson {
    subgroup: String,
    index: usize,
    convention: &'static str,
    cells: Vec<String>,
    cell_matrices: Vec<M2>,
    edges: Vec<EdgeJson>,
    pairings: Vec<PairingJson>,
}

fn point_label(p: &ExactPoint) -> String {
    format!("{}*{:?}", fmt_m2(&p.matrix), p.base).to_lowercase()
}

pub fn domain_json(domain: &FundamentalDomain) -> String {
    let j = DomainJson {
        subgroup: domain.subgroup.name().to_string(),
        index: domain.cells.len(),
        convention: CONVENTION,
        cells: domain.cells.iter().map(|c| c.word.clone()).collect(),
        cell_matrices: domain.cells.iter().map(|c| c.matrix).collect(),
        edges: domain
            .edges
            .iter()
            .map(|e| EdgeJson {
                id: e.id,
                cell: e.cell,
                tag: serde_json::to_value(e.tag).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
                from: point_label(&e.from),
                to: point_label(&e.to),
                internal: e.internal,
            })
            .collect(),
        pairings: domain.pairings.iter().map(|p| PairingJson { matrix: p.matrix, word: p.word.clone(), edges: [p.source, p.target] }).collect(),
    };
    serde_json::to_string_pretty(&j).expect("domain serializes")
}
