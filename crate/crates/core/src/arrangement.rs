//! Vertical slab decomposition of a convex domain cut by segments.
//!
//! The abscissae of all segment endpoints and pairwise crossings split the
//! domain into open vertical slabs. Inside a slab no two segments cross, so
//! the segments met by the vertical line through the slab's middle are
//! totally ordered and consecutive pairs bound open trapezoids. Each
//! trapezoid lies inside a single face of the arrangement; its centre is an
//! exact witness point for that face.

use crate::field::Scalar;
use crate::geometry::{segment_intersection, ConvexRegion, Segment, SegmentIntersection, Vec2};

/// One open trapezoid of the decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlabCell {
    pub x_left: Scalar,
    pub x_right: Scalar,
    pub lower: Segment,
    pub upper: Segment,
    pub witness: Vec2,
    pub area: Scalar,
}

impl SlabCell {
    /// Corners in counterclockwise order.
    pub fn corners(&self) -> [Vec2; 4] {
        let at = |s: &Segment, x: &Scalar| Vec2::new(x.clone(), s.y_at(x).expect("slab segments are not vertical"));
        [
            at(&self.lower, &self.x_left),
            at(&self.lower, &self.x_right),
            at(&self.upper, &self.x_right),
            at(&self.upper, &self.x_left),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlabDecomposition {
    pub cells: Vec<SlabCell>,
}

impl SlabDecomposition {
    pub fn total_area(&self) -> Scalar {
        self.cells.iter().map(|c| c.area.clone()).sum()
    }
}

/// Float bounding box `[x0, x1, y0, y1]`, padded so that it always contains
/// the exact one. Only used to skip pairs that are clearly apart.
fn float_box(s: &Segment) -> [f64; 4] {
    let (ax, ay) = s.a.to_f64();
    let (bx, by) = s.b.to_f64();
    let pad = |t: f64| 1e-9 * (1.0 + t.abs());
    [
        ax.min(bx) - pad(ax.min(bx)),
        ax.max(bx) + pad(ax.max(bx)),
        ay.min(by) - pad(ay.min(by)),
        ay.max(by) + pad(ay.max(by)),
    ]
}

fn boxes_overlap(s: &Segment, t: &Segment) -> bool {
    let (sx0, sx1) = s.x_range();
    let (tx0, tx1) = t.x_range();
    let (sy0, sy1) = s.y_range();
    let (ty0, ty1) = t.y_range();
    sx0 <= tx1 && tx0 <= sx1 && sy0 <= ty1 && ty0 <= sy1
}

/// Decomposes the interior of `domain` (a convex polygon with non-empty
/// interior) by the segments that meet it. Cells are ordered by slab, then
/// bottom to top.
pub fn decompose(domain: &ConvexRegion, segments: &[Segment]) -> SlabDecomposition {
    let (lo, hi) = domain.bounds();
    let mut segs: Vec<Segment> = domain.boundary();
    let dbox = float_box(&Segment {
        a: lo.clone(),
        b: hi.clone(),
    });
    segs.extend(
        segments
            .iter()
            .filter(|s| {
                let f = float_box(s);
                f[0] <= dbox[1] && dbox[0] <= f[1] && f[2] <= dbox[3] && dbox[2] <= f[3]
            })
            .filter(|s| domain.meets_segment(s))
            .cloned(),
    );

    let in_range = |x: &Scalar| lo.x <= *x && *x <= hi.x;
    let mut xs: Vec<Scalar> = vec![lo.x.clone(), hi.x.clone()];
    for s in &segs {
        xs.extend([&s.a.x, &s.b.x].into_iter().filter(|x| in_range(x)).cloned());
    }
    let fboxes: Vec<[f64; 4]> = segs.iter().map(float_box).collect();
    for (i, s) in segs.iter().enumerate() {
        let f = &fboxes[i];
        for (j, t) in segs.iter().enumerate().skip(i + 1) {
            let g = &fboxes[j];
            if f[0] > g[1] || g[0] > f[1] || f[2] > g[3] || g[2] > f[3] || !boxes_overlap(s, t) {
                continue;
            }
            if let SegmentIntersection::Point(p) = segment_intersection(s, t) {
                if in_range(&p.x) {
                    xs.push(p.x);
                }
            }
        }
    }
    xs.sort();
    xs.dedup();

    let half = Scalar::ratio(1, 2);
    let mut cells = Vec::new();
    for w in xs.windows(2) {
        let (x0, x1) = (&w[0], &w[1]);
        let xm = (x0 + x1) * &half;
        let xf = xm.to_f64();
        let mut crossing: Vec<(Scalar, &Segment)> = segs
            .iter()
            .zip(&fboxes)
            .filter(|(_, f)| f[0] <= xf && xf <= f[1])
            .map(|(s, _)| s)
            .filter(|s| {
                let (a, b) = s.x_range();
                *a < xm && xm < *b
            })
            .map(|s| (s.y_at(&xm).expect("non-vertical"), s))
            .collect();
        crossing.sort_by(|a, b| a.0.cmp(&b.0));
        crossing.dedup_by(|a, b| a.0 == b.0);
        for pair in crossing.windows(2) {
            let (y0, lower) = &pair[0];
            let (y1, upper) = &pair[1];
            let witness = Vec2::new(xm.clone(), (y0 + y1) * &half);
            if !domain.contains_strictly(&witness) {
                continue;
            }
            cells.push(SlabCell {
                x_left: x0.clone(),
                x_right: x1.clone(),
                lower: (*lower).clone(),
                upper: (*upper).clone(),
                witness,
                area: (x1 - x0) * (y1 - y0),
            });
        }
    }
    SlabDecomposition { cells }
}
