//! Exact planar primitives: vectors, segments, centrally symmetric polygons
//! and small convex regions.
//!
//! Every predicate here reduces to the sign of a cross product of
//! [`Scalar`] coordinates, so classification is exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Scalar, Sign};

/// A point or a vector of the plane.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[Scalar; 2]", into = "[Scalar; 2]")]
pub struct Vec2 {
    pub x: Scalar,
    pub y: Scalar,
}

pub type Point = Vec2;

impl From<[Scalar; 2]> for Vec2 {
    fn from([x, y]: [Scalar; 2]) -> Self {
        Vec2 { x, y }
    }
}

impl From<Vec2> for [Scalar; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Vec2 {
    pub fn new(x: Scalar, y: Scalar) -> Vec2 {
        Vec2 { x, y }
    }

    pub fn int(x: i64, y: i64) -> Vec2 {
        Vec2::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    pub fn zero() -> Vec2 {
        Vec2::int(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn cross(&self, other: &Vec2) -> Scalar {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Vec2) -> Scalar {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn scale(&self, k: &Scalar) -> Vec2 {
        Vec2::new(&self.x * k, &self.y * k)
    }

    pub fn midpoint(&self, other: &Vec2) -> Vec2 {
        let half = Scalar::ratio(1, 2);
        (self + other).scale(&half)
    }

    pub fn is_rational(&self) -> bool {
        self.x.is_rational() && self.y.is_rational()
    }

    /// Radicand shared by the coordinates, `0` when both are rational.
    pub fn radicand(&self) -> u64 {
        self.x.radicand().max(self.y.radicand())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

/// Sign of the turn `a -> b -> c` (positive for counterclockwise).
pub fn orient(a: &Vec2, b: &Vec2, c: &Vec2) -> Sign {
    (b - a).cross(&(c - a)).sign()
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl fmt::Debug for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &Vec2 {
    type Output = Vec2;
    fn add(self, rhs: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl Sub for &Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: &Vec2) -> Vec2 {
        Vec2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        &self + &rhs
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        &self - &rhs
    }
}

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-&self.x, -&self.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        -&self
    }
}

impl Mul<&Vec2> for &Scalar {
    type Output = Vec2;
    fn mul(self, rhs: &Vec2) -> Vec2 {
        rhs.scale(self)
    }
}

/// Closed segment between two distinct points.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Segment {
    pub a: Vec2,
    pub b: Vec2,
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} -> {}]", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("segment endpoints coincide at {0}")]
pub struct DegenerateSegment(pub Vec2);

impl Segment {
    pub fn new(a: Vec2, b: Vec2) -> Result<Segment, DegenerateSegment> {
        if a == b {
            return Err(DegenerateSegment(a));
        }
        Ok(Segment { a, b })
    }

    pub fn direction(&self) -> Vec2 {
        &self.b - &self.a
    }

    pub fn midpoint(&self) -> Vec2 {
        self.a.midpoint(&self.b)
    }

    /// `a + t (b - a)`.
    pub fn point_at(&self, t: &Scalar) -> Vec2 {
        &self.a + &self.direction().scale(t)
    }

    /// Parameter of the projection of `p` onto the carrier line.
    pub fn param_of(&self, p: &Vec2) -> Scalar {
        let d = self.direction();
        (p - &self.a).dot(&d) / d.dot(&d)
    }

    /// Side of the directed carrier line on which `p` lies (positive = left).
    pub fn side(&self, p: &Vec2) -> Sign {
        orient(&self.a, &self.b, p)
    }

    pub fn contains(&self, p: &Vec2) -> bool {
        if self.side(p) != Sign::Zero {
            return false;
        }
        let t = self.param_of(p);
        t.sign() != Sign::Negative && t <= Scalar::one()
    }

    /// Membership in the relative interior.
    pub fn contains_open(&self, p: &Vec2) -> bool {
        if self.side(p) != Sign::Zero {
            return false;
        }
        let t = self.param_of(p);
        t.is_positive() && t < Scalar::one()
    }

    pub fn x_range(&self) -> (&Scalar, &Scalar) {
        if self.a.x <= self.b.x {
            (&self.a.x, &self.b.x)
        } else {
            (&self.b.x, &self.a.x)
        }
    }

    pub fn y_range(&self) -> (&Scalar, &Scalar) {
        if self.a.y <= self.b.y {
            (&self.a.y, &self.b.y)
        } else {
            (&self.b.y, &self.a.y)
        }
    }

    pub fn is_vertical(&self) -> bool {
        self.a.x == self.b.x
    }

    /// Ordinate of the carrier line at abscissa `x`; `None` for vertical segments.
    pub fn y_at(&self, x: &Scalar) -> Option<Scalar> {
        if self.is_vertical() {
            return None;
        }
        let d = self.direction();
        Some(&self.a.y + &((x - &self.a.x) * &d.y / &d.x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentIntersection {
    Empty,
    Point(Vec2),
    Overlap(Segment),
}

/// Exact intersection of two closed segments.
pub fn segment_intersection(s: &Segment, t: &Segment) -> SegmentIntersection {
    let r = s.direction();
    let q = t.direction();
    let offset = &t.a - &s.a;
    let denom = r.cross(&q);
    if !denom.is_zero() {
        let u = offset.cross(&q) / &denom;
        let w = offset.cross(&r) / &denom;
        let one = Scalar::one();
        let inside = |x: &Scalar| !x.is_negative() && *x <= one;
        if inside(&u) && inside(&w) {
            return SegmentIntersection::Point(s.point_at(&u));
        }
        return SegmentIntersection::Empty;
    }
    if !offset.cross(&r).is_zero() {
        return SegmentIntersection::Empty;
    }
    let t0 = s.param_of(&t.a);
    let t1 = s.param_of(&t.b);
    let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
    let lo = lo.max(Scalar::zero());
    let hi = hi.min(Scalar::one());
    match lo.cmp(&hi) {
        std::cmp::Ordering::Greater => SegmentIntersection::Empty,
        std::cmp::Ordering::Equal => SegmentIntersection::Point(s.point_at(&lo)),
        std::cmp::Ordering::Less => SegmentIntersection::Overlap(Segment {
            a: s.point_at(&lo),
            b: s.point_at(&hi),
        }),
    }
}

/// Where a point lies relative to a convex polygon. Indices are 0-based:
/// `Edge(i)` is the open edge from vertex `i` to vertex `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Location {
    Interior,
    Edge(usize),
    Vertex(usize),
    Outside,
}

impl Location {
    pub fn in_closed(self) -> bool {
        self != Location::Outside
    }

    pub fn in_open(self) -> bool {
        self == Location::Interior
    }

    pub fn on_boundary(self) -> bool {
        matches!(self, Location::Edge(_) | Location::Vertex(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("a centrally symmetric polygon needs an even number of vertices, got {0}")]
    OddVertexCount(usize),
    #[error("a centrally symmetric polygon needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertices {0}, {1}, {2} do not make a strict counterclockwise turn")]
    NotStrictlyConvex(usize, usize, usize),
    #[error("the boundary winds {0} times around the polygon")]
    NotSimple(usize),
    #[error("vertex {index} is not the reflection of vertex {opposite} through the center")]
    NotCentrallySymmetric { index: usize, opposite: usize },
    #[error("vertex coordinates use incompatible square roots")]
    MixedRadicands,
}

/// Centrally symmetric, strictly convex polygon with `2m` counterclockwise
/// vertices, `m >= 2`.
///
/// Edge vectors follow the usual convention (0-based here): `e_i = v_{i+1} - v_i`
/// for `0 <= i < 2m` and `e*_i = v_{i+m} - v_{i+1}` for `0 <= i < m`. For a
/// polygon centered at the origin, `midpoint(e_i) = -e*_i / 2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SymPolygon {
    vertices: Vec<Vec2>,
    center: Vec2,
    #[serde(skip)]
    approx: FloatVertices,
}

/// Float copies of the vertices with magnitude bounds, for filtered
/// predicates. Derived from the exact vertices, so ignored by comparisons.
#[derive(Clone, Default)]
struct FloatVertices(Vec<[f64; 3]>);

impl FloatVertices {
    fn of(vertices: &[Vec2]) -> FloatVertices {
        FloatVertices(vertices.iter().map(approx).collect())
    }
}

impl PartialEq for FloatVertices {
    fn eq(&self, _: &FloatVertices) -> bool {
        true
    }
}

impl Eq for FloatVertices {}

impl std::hash::Hash for FloatVertices {
    fn hash<H: std::hash::Hasher>(&self, _: &mut H) {}
}

/// `[x, y, scale]` with `scale` bounding the magnitude of both coordinates.
fn approx(p: &Vec2) -> [f64; 3] {
    let (x, sx) = p.x.to_f64_with_scale();
    let (y, sy) = p.y.to_f64_with_scale();
    [x, y, sx.max(sy)]
}

impl fmt::Debug for SymPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.vertices).finish()
    }
}

fn upper_half(v: &Vec2) -> bool {
    v.y.is_positive() || (v.y.is_zero() && v.x.is_positive())
}

impl SymPolygon {
    /// Validates the vertex list, keeping the given (counterclockwise) order.
    pub fn new(vertices: Vec<Vec2>) -> Result<SymPolygon, PolygonError> {
        let n = vertices.len();
        if n % 2 == 1 {
            return Err(PolygonError::OddVertexCount(n));
        }
        if n < 4 {
            return Err(PolygonError::TooFewVertices(n));
        }
        let radicands: Vec<u64> = vertices.iter().map(Vec2::radicand).filter(|&d| d != 0).collect();
        if radicands.windows(2).any(|w| w[0] != w[1]) {
            return Err(PolygonError::MixedRadicands);
        }
        for i in 0..n {
            let (a, b, c) = (&vertices[(i + n - 1) % n], &vertices[i], &vertices[(i + 1) % n]);
            if orient(a, b, c) != Sign::Positive {
                return Err(PolygonError::NotStrictlyConvex((i + n - 1) % n, i, (i + 1) % n));
            }
        }
        // all left turns; the boundary is simple iff edge directions wrap around once
        let edges: Vec<Vec2> = (0..n).map(|i| &vertices[(i + 1) % n] - &vertices[i]).collect();
        let wraps = (0..n)
            .filter(|&i| !upper_half(&edges[i]) && upper_half(&edges[(i + 1) % n]))
            .count();
        if wraps != 1 {
            return Err(PolygonError::NotSimple(wraps));
        }
        let m = n / 2;
        let center = vertices[0].midpoint(&vertices[m]);
        for i in 1..m {
            if vertices[i].midpoint(&vertices[i + m]) != center {
                return Err(PolygonError::NotCentrallySymmetric {
                    index: i + m,
                    opposite: i,
                });
            }
        }
        let approx = FloatVertices::of(&vertices);
        Ok(SymPolygon {
            vertices,
            center,
            approx,
        })
    }

    /// Builds the polygon centered at the origin whose first `m` edge vectors
    /// are `edges` (the remaining ones are their negatives).
    pub fn from_half_edges(edges: &[Vec2]) -> Result<SymPolygon, PolygonError> {
        let total = edges.iter().fold(Vec2::zero(), |acc, e| &acc + e);
        let mut v = (-&total).scale(&Scalar::ratio(1, 2));
        let mut vertices = Vec::with_capacity(2 * edges.len());
        for e in edges.iter().cloned().chain(edges.iter().map(|e| -e)) {
            vertices.push(v.clone());
            v = &v + &e;
        }
        SymPolygon::new(vertices)
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vec2 {
        &self.vertices[i % self.vertices.len()]
    }

    pub fn center(&self) -> &Vec2 {
        &self.center
    }

    /// Half the number of vertices.
    pub fn m(&self) -> usize {
        self.vertices.len() / 2
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn radicand(&self) -> u64 {
        self.vertices.iter().map(Vec2::radicand).max().unwrap_or(0)
    }

    /// `e_i = v_{i+1} - v_i`, 0-based.
    pub fn edge_vector(&self, i: usize) -> Vec2 {
        self.vertex(i + 1) - self.vertex(i)
    }

    /// `e*_i = v_{i+m} - v_{i+1}`, 0-based, `i < m`.
    pub fn star_vector(&self, i: usize) -> Vec2 {
        assert!(i < self.m(), "e* is only defined for the first m edges");
        self.vertex(i + self.m()) - self.vertex(i + 1)
    }

    /// All `2m` edge vectors and the `m` vectors `e*_i`.
    pub fn edge_vectors(&self) -> (Vec<Vec2>, Vec<Vec2>) {
        let edges = (0..self.len()).map(|i| self.edge_vector(i)).collect();
        let stars = (0..self.m()).map(|i| self.star_vector(i)).collect();
        (edges, stars)
    }

    /// Closed edge segment from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> Segment {
        Segment {
            a: self.vertex(i).clone(),
            b: self.vertex(i + 1).clone(),
        }
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.len()).map(|i| self.edge(i))
    }

    /// Shoelace area.
    pub fn area(&self) -> Scalar {
        let n = self.len();
        let twice: Scalar = (0..n)
            .map(|i| self.vertices[i].cross(&self.vertices[(i + 1) % n]))
            .sum();
        twice * Scalar::ratio(1, 2)
    }

    pub fn locate(&self, p: &Vec2) -> Location {
        match self.locate_float(p) {
            Some(loc) => loc,
            None => self.locate_exact(p),
        }
    }

    /// Answers only when every edge test is decided by a wide margin in
    /// floating point; boundary and near-boundary points get `None`.
    fn locate_float(&self, p: &Vec2) -> Option<Location> {
        let [px, py, ps] = approx(p);
        let vs = &self.approx.0;
        let n = vs.len();
        let mut interior = true;
        for i in 0..n {
            let ([ax, ay, sa], [bx, by, sb]) = (vs[i], vs[(i + 1) % n]);
            let det = (bx - ax) * (py - ay) - (by - ay) * (px - ax);
            let scale = sa.max(sb).max(ps);
            let tolerance = 1e-9 * scale * scale;
            if !(det.is_finite() && tolerance.is_finite()) {
                return None;
            }
            if det < -tolerance {
                return Some(Location::Outside);
            }
            interior &= det > tolerance;
        }
        interior.then_some(Location::Interior)
    }

    fn locate_exact(&self, p: &Vec2) -> Location {
        let n = self.len();
        let mut on_edge = None;
        for i in 0..n {
            match orient(&self.vertices[i], &self.vertices[(i + 1) % n], p) {
                Sign::Negative => return Location::Outside,
                Sign::Zero if on_edge.is_none() => on_edge = Some(i),
                _ => {}
            }
        }
        // inside the closed polygon; a second supporting line through p would
        // make it a vertex, which the endpoint comparison below catches
        match on_edge {
            None => Location::Interior,
            Some(i) if *p == self.vertices[i] => Location::Vertex(i),
            Some(i) if *p == self.vertices[(i + 1) % n] => Location::Vertex((i + 1) % n),
            Some(i) => Location::Edge(i),
        }
    }

    pub fn translate(&self, by: &Vec2) -> SymPolygon {
        let vertices: Vec<Vec2> = self.vertices.iter().map(|v| v + by).collect();
        SymPolygon {
            approx: FloatVertices::of(&vertices),
            vertices,
            center: &self.center + by,
        }
    }

    /// The polygon moved so its center is the origin, with the applied translation.
    pub fn centered(&self) -> (SymPolygon, Vec2) {
        let shift = -&self.center;
        (self.translate(&shift), shift)
    }

    /// Same polygon with the vertex list rotated to start at the
    /// lexicographically smallest vertex.
    pub fn canonicalized(&self) -> SymPolygon {
        let start = (0..self.len())
            .min_by(|&i, &j| self.vertices[i].cmp(&self.vertices[j]))
            .unwrap_or(0);
        let mut vertices = self.vertices.clone();
        vertices.rotate_left(start);
        SymPolygon {
            approx: FloatVertices::of(&vertices),
            vertices,
            center: self.center.clone(),
        }
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounds(&self) -> (Vec2, Vec2) {
        bounds(&self.vertices)
    }

    pub fn region(&self) -> ConvexRegion {
        ConvexRegion {
            vertices: self.vertices.clone(),
        }
    }
}

pub(crate) fn bounds(points: &[Vec2]) -> (Vec2, Vec2) {
    let mut min = points[0].clone();
    let mut max = points[0].clone();
    for p in &points[1..] {
        if p.x < min.x {
            min.x = p.x.clone();
        }
        if p.y < min.y {
            min.y = p.y.clone();
        }
        if p.x > max.x {
            max.x = p.x.clone();
        }
        if p.y > max.y {
            max.y = p.y.clone();
        }
    }
    (min, max)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegionError {
    #[error("a region needs at least one point")]
    Empty,
}

/// Compact convex set given by its hull vertices in counterclockwise order.
/// Degenerate regions (a single point or a segment) are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexRegion {
    vertices: Vec<Vec2>,
}

impl ConvexRegion {
    /// Convex hull of `points` (monotone chain, collinear points dropped).
    pub fn hull(points: impl IntoIterator<Item = Vec2>) -> Result<ConvexRegion, RegionError> {
        let mut pts: Vec<Vec2> = points.into_iter().collect();
        if pts.is_empty() {
            return Err(RegionError::Empty);
        }
        pts.sort();
        pts.dedup();
        if pts.len() <= 2 {
            return Ok(ConvexRegion { vertices: pts });
        }
        let mut lower: Vec<Vec2> = Vec::new();
        for p in &pts {
            while lower.len() >= 2 && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) != Sign::Positive {
                lower.pop();
            }
            lower.push(p.clone());
        }
        let mut upper: Vec<Vec2> = Vec::new();
        for p in pts.iter().rev() {
            while upper.len() >= 2 && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) != Sign::Positive {
                upper.pop();
            }
            upper.push(p.clone());
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        Ok(ConvexRegion { vertices: lower })
    }

    pub fn point(p: Vec2) -> ConvexRegion {
        ConvexRegion { vertices: vec![p] }
    }

    /// Closed parallelogram `origin + s u + t v`, `s, t` in `[0, 1]`.
    pub fn parallelogram(origin: &Vec2, u: &Vec2, v: &Vec2) -> ConvexRegion {
        let corners = [origin.clone(), origin + u, &(origin + u) + v, origin + v];
        ConvexRegion::hull(corners).expect("non-empty")
    }

    /// Axis-aligned closed box.
    pub fn rect(min: &Vec2, max: &Vec2) -> ConvexRegion {
        let corners = [
            min.clone(),
            Vec2::new(max.x.clone(), min.y.clone()),
            max.clone(),
            Vec2::new(min.x.clone(), max.y.clone()),
        ];
        ConvexRegion::hull(corners).expect("non-empty")
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    pub fn contains(&self, p: &Vec2) -> bool {
        match self.vertices.len() {
            1 => self.vertices[0] == *p,
            2 => Segment {
                a: self.vertices[0].clone(),
                b: self.vertices[1].clone(),
            }
            .contains(p),
            n => (0..n).all(|i| orient(&self.vertices[i], &self.vertices[(i + 1) % n], p) != Sign::Negative),
        }
    }

    /// Membership in the interior (empty for degenerate regions).
    pub fn contains_strictly(&self, p: &Vec2) -> bool {
        let n = self.vertices.len();
        n >= 3 && (0..n).all(|i| orient(&self.vertices[i], &self.vertices[(i + 1) % n], p) == Sign::Positive)
    }

    pub fn minkowski_sum(&self, other: &ConvexRegion) -> ConvexRegion {
        let sums = self
            .vertices
            .iter()
            .flat_map(|a| other.vertices.iter().map(move |b| a + b))
            .collect::<Vec<_>>();
        ConvexRegion::hull(sums).expect("non-empty")
    }

    pub fn reflected(&self) -> ConvexRegion {
        ConvexRegion::hull(self.vertices.iter().map(|v| -v)).expect("non-empty")
    }

    pub fn translate(&self, by: &Vec2) -> ConvexRegion {
        ConvexRegion {
            vertices: self.vertices.iter().map(|v| v + by).collect(),
        }
    }

    pub fn bounds(&self) -> (Vec2, Vec2) {
        bounds(&self.vertices)
    }

    pub fn boundary(&self) -> Vec<Segment> {
        let n = self.vertices.len();
        match n {
            1 => Vec::new(),
            2 => vec![Segment {
                a: self.vertices[0].clone(),
                b: self.vertices[1].clone(),
            }],
            _ => (0..n)
                .map(|i| Segment {
                    a: self.vertices[i].clone(),
                    b: self.vertices[(i + 1) % n].clone(),
                })
                .collect(),
        }
    }

    pub fn area(&self) -> Scalar {
        let n = self.vertices.len();
        if n < 3 {
            return Scalar::zero();
        }
        let twice: Scalar = (0..n)
            .map(|i| self.vertices[i].cross(&self.vertices[(i + 1) % n]))
            .sum();
        twice * Scalar::ratio(1, 2)
    }

    /// Whether the closed segment meets the closed region.
    pub fn meets_segment(&self, s: &Segment) -> bool {
        if self.contains(&s.a) || self.contains(&s.b) {
            return true;
        }
        self.boundary()
            .iter()
            .any(|edge| segment_intersection(edge, s) != SegmentIntersection::Empty)
    }
}
