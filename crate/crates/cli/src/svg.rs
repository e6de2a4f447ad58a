//! Nested-iterate figures as SVG 1.1.
//!
//! Coordinates are written with six decimals and the y axis flipped, so the
//! output bytes depend only on the input geometry.

use std::fmt::Write;

use pentagram_core::geom::Point2;

const MARGIN: f64 = 0.05;

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    // avoid "-0.000000"
    if s.trim_start_matches('-').bytes().all(|b| b == b'0' || b == b'.') {
        s.trim_start_matches('-').to_string()
    } else {
        s
    }
}

/// Renders `polygons` outermost first; `mark` adds a point marker.
pub fn render(polygons: &[Vec<Point2<f64>>], mark: Option<&Point2<f64>>) -> String {
    let all = polygons.iter().flatten();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in all.chain(mark) {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    let size = (x1 - x0).max(y1 - y0).max(1e-12);
    let pad = MARGIN * size;
    let (vx, vy) = (x0 - pad, -y1 - pad);
    let (vw, vh) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let stroke = size / 400.0;

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="600" height="{}" viewBox="{} {} {} {}">"#,
        num(600.0 * vh / vw),
        num(vx),
        num(vy),
        num(vw),
        num(vh)
    )
    .unwrap();
    writeln!(out, r#"  <g fill="none" stroke="black" stroke-width="{}" stroke-linejoin="round">"#, num(stroke))
        .unwrap();
    for (k, poly) in polygons.iter().enumerate() {
        let pts: Vec<String> = poly.iter().map(|p| format!("{},{}", num(p.x), num(-p.y))).collect();
        writeln!(out, r#"    <polygon data-iterate="{k}" points="{}"/>"#, pts.join(" ")).unwrap();
    }
    writeln!(out, "  </g>").unwrap();
    if let Some(p) = mark {
        writeln!(
            out,
            r#"  <circle class="limit" cx="{}" cy="{}" r="{}" fill="red"/>"#,
            num(p.x),
            num(-p.y),
            num(4.0 * stroke)
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(num(-0.0), "0.000000");
        assert_eq!(num(-1e-9), "0.000000");
        assert_eq!(num(-1.5), "-1.500000");
    }

    #[test]
    fn single_outline() {
        let sq = vec![Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Point2::new(1.0, 1.0)];
        let svg = render(&[sq], None);
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert!(svg.contains(r#"points="0.000000,0.000000 1.000000,0.000000 1.000000,-1.000000""#));
        assert!(!svg.contains("<circle"));
    }
}
