//! Static Poincaré-disk pictures of a bracket computation.

use std::fmt::Write;

use crate::formal::format_rational;
use crate::fuchsian::{Geodesic, MobiusMap};
use crate::goldman::BracketTrace;

const SIZE: f64 = 640.0;
const RADIUS: f64 = 300.0;

/// Möbius action on a point `x + iy` of the upper half-plane.
fn act(m: &MobiusMap, (x, y): (f64, f64)) -> (f64, f64) {
    let (nr, ni) = (m.a * x + m.b, m.a * y);
    let (dr, di) = (m.c * x + m.d, m.c * y);
    let den = dr * dr + di * di;
    ((nr * dr + ni * di) / den, (ni * dr - nr * di) / den)
}

/// Cayley map to the unit disk, then to SVG coordinates (y pointing down).
fn to_screen((x, y): (f64, f64)) -> (f64, f64) {
    // (z - i) / (z + i)
    let (nr, ni) = (x, y - 1.0);
    let (dr, di) = (x, y + 1.0);
    let den = dr * dr + di * di;
    let (u, v) = ((nr * dr + ni * di) / den, (ni * dr - nr * di) / den);
    (SIZE / 2.0 + RADIUS * u, SIZE / 2.0 - RADIUS * v)
}

fn geodesic_path(g: &Geodesic) -> String {
    let back = g.straightening().inverse();
    let mut d = String::new();
    for k in 0..=160 {
        let t = -12.0 + 24.0 * k as f64 / 160.0;
        let (sx, sy) = to_screen(act(&back, (0.0, t.exp())));
        let _ = write!(d, "{}{sx:.2},{sy:.2} ", if k == 0 { "M" } else { "L" });
    }
    d
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Axis of `x` in black, crossing lifts of `y` in grey, crossings colored by sign.
pub fn render_trace(trace: &BracketTrace, x_label: &str, y_label: &str) -> String {
    let mut out = String::new();
    let c = SIZE / 2.0;
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{h}" viewBox="0 0 {SIZE} {h}">"##,
        h = SIZE + 40.0
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="white"/>"##);
    let _ = writeln!(out, r##"<circle cx="{c}" cy="{c}" r="{RADIUS}" fill="none" stroke="#444" stroke-width="1.5"/>"##);
    if let Some((ax, ay)) = &trace.axes {
        let straight = ax.straightening();
        let (bu, bv) = straight.apply_to_basepoint();
        let foot = bu.hypot(bv);
        let back = straight.inverse();
        let _ = writeln!(
            out,
            r##"<path d="{}" fill="none" stroke="#bbb" stroke-width="1" stroke-dasharray="4 3"/>"##,
            geodesic_path(ay)
        );
        for cr in &trace.crossings {
            let _ = writeln!(
                out,
                r##"<path d="{}" fill="none" stroke="#888" stroke-width="1.2"/>"##,
                geodesic_path(&cr.lift)
            );
        }
        let _ = writeln!(out, r##"<path d="{}" fill="none" stroke="black" stroke-width="2"/>"##, geodesic_path(ax));
        for cr in &trace.crossings {
            let (sx, sy) = to_screen(act(&back, (0.0, foot * cr.position.exp())));
            let color = if cr.sign > 0 { "#1f63c6" } else { "#c62f1f" };
            let _ = writeln!(
                out,
                r##"<circle cx="{sx:.2}" cy="{sy:.2}" r="5" fill="{color}"><title>{} [{}]</title></circle>"##,
                if cr.sign > 0 { "+" } else { "-" },
                escape(&cr.product.to_string())
            );
        }
    }
    let (bx, by) = to_screen((0.0, 1.0));
    let _ = writeln!(out, r##"<circle cx="{bx:.2}" cy="{by:.2}" r="2.5" fill="#444"/>"##);
    let terms: Vec<String> = trace
        .result
        .iter()
        .map(|(class, coeff)| format!("{} [{}]", format_rational(coeff), class))
        .collect();
    let caption = format!(
        "[{}, {}] = {}",
        x_label,
        y_label,
        if terms.is_empty() { "0".to_string() } else { terms.join(" + ") }
    );
    let _ = writeln!(
        out,
        r##"<text x="{c}" y="{}" font-family="monospace" font-size="14" text-anchor="middle">{}</text>"##,
        SIZE + 20.0,
        escape(&caption)
    );
    out.push_str("</svg>\n");
    out
}
