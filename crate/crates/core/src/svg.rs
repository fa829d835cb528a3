//! SVG pictures of a patch of `P + X`.
//!
//! The window is the half-open square `[-W/2, W/2)²`. Every translate
//! meeting it is outlined; optionally each cell of the edge arrangement
//! inside the window is filled by its open multiplicity. Output is
//! byte-deterministic: translates are drawn in sorted order and
//! coordinates are printed with fixed precision.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::arrangement::decompose;
use crate::field::Scalar;
use crate::geometry::{ConvexRegion, Segment, SymPolygon, Vec2};
use crate::tiling::{translates_meeting, TileMultiset};

const CANVAS: f64 = 480.0;
const LEGEND: f64 = 36.0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("window would draw about {count} translates, more than the cap of {cap}")]
    WindowTooLarge { count: usize, cap: usize },
    #[error("window width must be non-negative")]
    NegativeWindow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderOptions {
    pub color_by_multiplicity: bool,
    pub max_translates: usize,
    /// Multiplicity to show in the legend, when known.
    pub k: Option<usize>,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            color_by_multiplicity: false,
            max_translates: 4000,
            k: None,
        }
    }
}

/// Clips a convex polygon to the closed half-plane `f <= 0` of an affine `f`.
fn clip(points: Vec<Vec2>, keep: impl Fn(&Vec2) -> Scalar) -> Vec<Vec2> {
    let n = points.len();
    let mut out = Vec::new();
    for i in 0..n {
        let (p, q) = (&points[i], &points[(i + 1) % n]);
        let (fp, fq) = (keep(p), keep(q));
        if !fp.is_positive() {
            out.push(p.clone());
        }
        if (fp.is_positive() && fq.is_negative()) || (fp.is_negative() && fq.is_positive()) {
            let t = &fp / &(&fp - &fq);
            out.push(p + &(q - p).scale(&t));
        }
    }
    out
}

/// Whether the convex polygon `vertices` meets `[-a, a)²`.
fn meets_half_open_square(vertices: &[Vec2], a: &Scalar) -> bool {
    let mut pts = vertices.to_vec();
    pts = clip(pts, |p| &p.x - a);
    pts = clip(pts, |p| -&p.x - a);
    pts = clip(pts, |p| &p.y - a);
    pts = clip(pts, |p| -&p.y - a);
    // a non-empty convex piece avoids the open square only if it lies on
    // the right or top side of the closed one
    !pts.is_empty() && !pts.iter().all(|p| p.x == *a) && !pts.iter().all(|p| p.y == *a)
}

/// Translates drawn in the window of width `w`, sorted.
pub fn window_translates(
    polygon: &SymPolygon,
    x: &TileMultiset,
    w: &Scalar,
    cap: usize,
) -> Result<Vec<Vec2>, RenderError> {
    if w.is_negative() {
        return Err(RenderError::NegativeWindow);
    }
    if w.is_zero() {
        return Ok(Vec::new());
    }
    let a = w * &Scalar::ratio(1, 2);
    let window = ConvexRegion::rect(&Vec2::new(-&a, -&a), &Vec2::new(a.clone(), a.clone()));
    let reach = window.minkowski_sum(&polygon.region().reflected());
    let estimate: f64 = x.parts().map(|(l, _)| (reach.area() / l.covolume()).to_f64()).sum();
    if estimate > 2.0 * cap as f64 {
        return Err(RenderError::WindowTooLarge {
            count: estimate as usize,
            cap,
        });
    }
    let shown: Vec<Vec2> = translates_meeting(x, polygon, &window)
        .into_iter()
        .filter(|t| {
            let moved: Vec<Vec2> = polygon.vertices().iter().map(|v| v + t).collect();
            meets_half_open_square(&moved, &a)
        })
        .collect();
    if shown.len() > cap {
        return Err(RenderError::WindowTooLarge {
            count: shown.len(),
            cap,
        });
    }
    Ok(shown)
}

fn color(count: usize) -> String {
    const PALETTE: [&str; 10] = [
        "#f7fbff", "#deebf7", "#c6dbef", "#9ecae1", "#6baed6", "#4292c6", "#2171b5", "#08519c", "#08306b", "#041b3d",
    ];
    PALETTE[count.min(PALETTE.len() - 1)].to_string()
}

pub fn render_svg(
    polygon: &SymPolygon,
    x: &TileMultiset,
    w: &Scalar,
    options: &RenderOptions,
) -> Result<String, RenderError> {
    let translates = window_translates(polygon, x, w, options.max_translates)?;
    let mut svg = String::new();
    let height = CANVAS + LEGEND;
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{height}" viewBox="0 0 {CANVAS} {height}">"#
    );

    let mut counts = BTreeSet::new();
    if !w.is_zero() {
        let a = w * &Scalar::ratio(1, 2);
        let scale = CANVAS / w.to_f64();
        let af = a.to_f64();
        let px = |p: &Vec2| {
            let (x, y) = p.to_f64();
            ((x + af) * scale, (af - y) * scale)
        };
        let _ = writeln!(
            svg,
            r#"<defs><clipPath id="window"><rect x="0" y="0" width="{CANVAS}" height="{CANVAS}"/></clipPath></defs>"#
        );
        let _ = writeln!(svg, r#"<g clip-path="url(#window)">"#);
        let _ = writeln!(
            svg,
            r##"<rect x="0" y="0" width="{CANVAS}" height="{CANVAS}" fill="#ffffff"/>"##
        );

        if options.color_by_multiplicity {
            let window = ConvexRegion::rect(&Vec2::new(-&a, -&a), &Vec2::new(a.clone(), a.clone()));
            let candidates = translates_meeting(x, polygon, &window);
            let segments: Vec<Segment> = candidates
                .iter()
                .flat_map(|t| {
                    polygon.edges().map(move |e| Segment {
                        a: &e.a + t,
                        b: &e.b + t,
                    })
                })
                .collect();
            let _ = writeln!(svg, r#"<g stroke="none">"#);
            for cell in decompose(&window, &segments).cells {
                let open = candidates
                    .iter()
                    .filter(|t| polygon.locate(&(&cell.witness - *t)).in_open())
                    .count();
                counts.insert(open);
                let pts: Vec<String> = cell
                    .corners()
                    .iter()
                    .map(|p| {
                        let (x, y) = px(p);
                        format!("{x:.3},{y:.3}")
                    })
                    .collect();
                let _ = writeln!(
                    svg,
                    r#"<polygon points="{}" fill="{}" data-multiplicity="{open}"/>"#,
                    pts.join(" "),
                    color(open)
                );
            }
            let _ = writeln!(svg, "</g>");
        }

        let _ = writeln!(svg, r##"<g fill="none" stroke="#202020" stroke-width="1">"##);
        for t in &translates {
            let pts: Vec<String> = polygon
                .vertices()
                .iter()
                .map(|v| {
                    let (x, y) = px(&(v + t));
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            let _ = writeln!(svg, r#"<polygon points="{}"/>"#, pts.join(" "));
        }
        let _ = writeln!(svg, "</g>");
        let _ = writeln!(svg, "</g>");
    }

    let mut legend = format!("{} translates", translates.len());
    match options.k {
        Some(k) => {
            let _ = write!(legend, ", k = {k}");
        }
        None if counts.len() == 1 => {
            let _ = write!(legend, ", k = {}", counts.iter().next().expect("one count"));
        }
        None => {}
    }
    if counts.len() > 1 {
        let listed: Vec<String> = counts.iter().map(usize::to_string).collect();
        let _ = write!(legend, ", multiplicities {}", listed.join(" "));
    }
    let base = CANVAS + 24.0;
    let mut x_text = 8.0;
    if options.color_by_multiplicity {
        for c in &counts {
            let _ = writeln!(
                svg,
                r##"<rect x="{x_text}" y="{}" width="12" height="12" fill="{}" stroke="#202020" stroke-width="0.5"/>"##,
                base - 11.0,
                color(*c)
            );
            x_text += 16.0;
        }
    }
    let _ = writeln!(
        svg,
        r#"<text x="{x_text}" y="{base}" font-family="sans-serif" font-size="14">{legend}</text>"#
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}
