//! Self-contained SVG overlay of a traced curve and a zero set.

use std::fmt::Write;

use pascal_rays::Complex64;
use pascal_rays::attractor::{AttractorCurve, Window};

const SIZE: f64 = 1000.0;

fn to_canvas(w: &Window, z: Complex64) -> (f64, f64) {
    let u = (z.re - w.re_min) / (w.re_max - w.re_min) * SIZE;
    let v = (w.im_max - z.im) / (w.im_max - w.im_min) * SIZE;
    (u, v)
}

/// One `polyline` per curve branch and one `circle` of radius 2 per zero.
/// Zeros outside the window still get a circle, off the canvas.
pub fn render(curve: &AttractorCurve, zeros: &[Complex64], title: &str) -> String {
    let w = &curve.window;
    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="1000" height="1000" viewBox="0 0 1000 1000">"#
    )
    .unwrap();
    writeln!(s, "<title>{title}</title>").unwrap();
    writeln!(s, r##"<rect x="0" y="0" width="1000" height="1000" style="fill:#ffffff;stroke:none"/>"##).unwrap();
    let (ax0, ay) = to_canvas(w, Complex64::new(w.re_min, 0.0));
    let (ax1, _) = to_canvas(w, Complex64::new(w.re_max, 0.0));
    let (bx, by0) = to_canvas(w, Complex64::new(0.0, w.im_max));
    let (_, by1) = to_canvas(w, Complex64::new(0.0, w.im_min));
    writeln!(
        s,
        r##"<g style="stroke:#bbbbbb;stroke-width:1"><line x1="{ax0:.3}" y1="{ay:.3}" x2="{ax1:.3}" y2="{ay:.3}"/><line x1="{bx:.3}" y1="{by0:.3}" x2="{bx:.3}" y2="{by1:.3}"/></g>"##
    )
    .unwrap();
    for b in curve.branches() {
        let pts: Vec<String> = b
            .iter()
            .map(|smp| {
                let (u, v) = to_canvas(w, smp.x);
                format!("{u:.3},{v:.3}")
            })
            .collect();
        writeln!(
            s,
            r##"<polyline points="{}" style="fill:none;stroke:#1f4e9c;stroke-width:1.5"/>"##,
            pts.join(" ")
        )
        .unwrap();
    }
    for z in zeros {
        let (u, v) = to_canvas(w, *z);
        writeln!(s, r##"<circle cx="{u:.3}" cy="{v:.3}" r="2" style="fill:#c0392b"/>"##).unwrap();
    }
    s.push_str("</svg>\n");
    s
}
