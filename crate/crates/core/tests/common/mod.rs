//! Brute-force oracles and random instance generators shared by the
//! integration tests. The oracles only use field arithmetic and the raw
//! polygon and lattice data, not the library's enumeration or point
//! location code.

#![allow(dead_code)]

use multitile::{Lattice2, Scalar, SymPolygon, TileMultiset, TranslatedLattice, Vec2};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn v(x: i64, y: i64) -> Vec2 {
    Vec2::int(x, y)
}

pub fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

pub fn square() -> SymPolygon {
    SymPolygon::new(vec![v(1, -1), v(1, 1), v(-1, 1), v(-1, -1)]).unwrap()
}

pub fn hexagon() -> SymPolygon {
    SymPolygon::new(vec![v(1, 0), v(0, 1), v(-1, 1), v(-1, 0), v(0, -1), v(1, -1)]).unwrap()
}

pub fn part(l: &Lattice2, o: Vec2) -> TranslatedLattice {
    TranslatedLattice {
        lattice: l.clone(),
        offset: o,
    }
}

/// Closed and open membership of `p` in the polygon, via the slab
/// description: a centrally symmetric polygon is the intersection of the
/// `m` slabs bounded by pairs of opposite edge lines.
pub fn slab_membership(polygon: &SymPolygon, p: &Vec2) -> (bool, bool) {
    let c = polygon.center();
    let vs = polygon.vertices();
    let m = vs.len() / 2;
    let (mut closed, mut open) = (true, true);
    for i in 0..m {
        let e = &vs[i + 1] - &vs[i];
        let width = e.cross(&(&vs[i] - c)).abs();
        let at = e.cross(&(p - c)).abs();
        closed &= at <= width;
        open &= at < width;
    }
    (closed, open)
}

/// Float slab data `(edge, width)` of the polygon about its centre.
fn float_slabs(polygon: &SymPolygon) -> Vec<((f64, f64), f64)> {
    let c = polygon.center();
    let vs = polygon.vertices();
    (0..vs.len() / 2)
        .map(|i| {
            let e = (&vs[i + 1] - &vs[i]).to_f64();
            let (wx, wy) = (&vs[i] - c).to_f64();
            (e, (e.0 * wy - e.1 * wx).abs())
        })
        .collect()
}

/// Points `t` of `offset + L` for which `p` may lie in the closed polygon
/// translated by `t`. Scans a float-estimated coefficient box with a wide
/// margin; a candidate is dropped only if a float slab test puts it far
/// outside. Callers decide membership exactly.
fn nearby_points(polygon: &SymPolygon, l: &Lattice2, offset: &Vec2, p: &Vec2) -> Vec<Vec2> {
    let slabs = float_slabs(polygon);
    let radius = circumradius(polygon);
    let (ux, uy) = l.u().to_f64();
    let (vx, vy) = l.v().to_f64();
    let det = ux * vy - uy * vx;
    let (px, py) = (&(p - polygon.center()) - offset).to_f64();
    let a0 = (px * vy - py * vx) / det;
    let b0 = (ux * py - uy * px) / det;
    let ra = radius * (vx * vx + vy * vy).sqrt() / det.abs() + 2.0;
    let rb = radius * (ux * ux + uy * uy).sqrt() / det.abs() + 2.0;
    let mut out = Vec::new();
    for a in (a0 - ra).floor() as i64..=(a0 + ra).ceil() as i64 {
        for b in (b0 - rb).floor() as i64..=(b0 + rb).ceil() as i64 {
            let (dx, dy) = (px - a as f64 * ux - b as f64 * vx, py - a as f64 * uy - b as f64 * vy);
            let far = slabs
                .iter()
                .any(|&((ex, ey), w)| (ex * dy - ey * dx).abs() > w * 1.001 + 1e-6);
            if far {
                continue;
            }
            let (sa, sb) = (Scalar::from_int(a), Scalar::from_int(b));
            out.push(&(offset + &l.u().scale(&sa)) + &l.v().scale(&sb));
        }
    }
    out
}

fn circumradius(polygon: &SymPolygon) -> f64 {
    let (cx, cy) = polygon.center().to_f64();
    polygon
        .vertices()
        .iter()
        .map(|w| {
            let (x, y) = w.to_f64();
            ((x - cx).powi(2) + (y - cy).powi(2)).sqrt()
        })
        .fold(0.0, f64::max)
        + 1e-6
}

/// `(closed, open)` multiplicity of `p` by brute force.
pub fn oracle_counts(polygon: &SymPolygon, x: &TileMultiset, p: &Vec2) -> (usize, usize) {
    let (mut closed, mut open) = (0, 0);
    for (l, o) in x.parts() {
        for t in nearby_points(polygon, l, o, p) {
            let (c, op) = slab_membership(polygon, &(p - &t));
            closed += usize::from(c);
            open += usize::from(op);
        }
    }
    (closed, open)
}

const PROBE_DEN: i64 = 1_000_033;

/// A random rational point in `[-span, span]²` that lies on no translate
/// boundary according to the oracle, with its open count.
pub fn generic_probe(rng: &mut ChaCha8Rng, polygon: &SymPolygon, x: &TileMultiset, span: i64) -> (Vec2, usize) {
    loop {
        let mut c = || q(rng.gen_range(-span * PROBE_DEN..=span * PROBE_DEN), PROBE_DEN);
        let p = Vec2::new(c(), c());
        let (closed, open) = oracle_counts(polygon, x, &p);
        if closed == open {
            return (p, open);
        }
    }
}

/// `m` pairwise non-parallel integer vectors in the open upper half-plane
/// (plus the positive x-axis), sorted by angle.
pub fn random_half_edges(rng: &mut ChaCha8Rng, m: usize, bound: i64) -> Vec<Vec2> {
    loop {
        let mut hs: Vec<(i64, i64)> = Vec::new();
        while hs.len() < m {
            let (x, y) = (rng.gen_range(-bound..=bound), rng.gen_range(0..=bound));
            if (y == 0 && x <= 0) || hs.iter().any(|&(a, b)| a * y - b * x == 0) {
                continue;
            }
            hs.push((x, y));
        }
        // counterclockwise order of directions in the upper half-plane
        hs.sort_by(|a, b| (b.0 * a.1).cmp(&(a.0 * b.1)));
        let vs: Vec<Vec2> = hs.iter().map(|&(x, y)| v(x, y)).collect();
        if SymPolygon::from_half_edges(&vs).is_ok() {
            return vs;
        }
    }
}

/// A random 2×2 rational matrix with positive determinant.
pub fn random_map(rng: &mut ChaCha8Rng) -> [[Scalar; 2]; 2] {
    loop {
        let mut e = || q(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        let m = [[e(), e()], [e(), e()]];
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if det.is_positive() {
            return m;
        }
    }
}

pub fn apply(m: &[[Scalar; 2]; 2], w: &Vec2) -> Vec2 {
    Vec2::new(&m[0][0] * &w.x + &m[0][1] * &w.y, &m[1][0] * &w.x + &m[1][1] * &w.y)
}

pub fn map_lattice(m: &[[Scalar; 2]; 2], l: &Lattice2) -> Lattice2 {
    Lattice2::new(apply(m, l.u()), apply(m, l.v())).unwrap()
}

pub fn random_rational_point(rng: &mut ChaCha8Rng) -> Vec2 {
    let mut c = || q(rng.gen_range(-6..=6), rng.gen_range(1..=5));
    Vec2::new(c(), c())
}

/// Integer basis of a random sublattice of `Z²` of small index, with its
/// coset representatives `(i, j)`, `0 <= i < a`, `0 <= j < c`, for the
/// Hermite basis `(a, b), (0, c)`.
pub fn random_sublattice(rng: &mut ChaCha8Rng) -> (Lattice2, Vec<Vec2>) {
    let a = rng.gen_range(1..=2);
    let c = rng.gen_range(1..=2);
    let b = rng.gen_range(0..c.max(1));
    let l = Lattice2::new(v(a, b), v(0, c)).unwrap();
    let mut reps = Vec::new();
    for i in 0..a {
        for j in 0..c {
            reps.push(v(i, j));
        }
    }
    (l, reps)
}

/// A labelled random instance over rational coordinates.
pub struct RandomInstance {
    pub label: String,
    pub polygon: SymPolygon,
    pub x: TileMultiset,
}

/// Random instance of one of several shapes: the integer lattice, a full
/// union of sublattice cosets, a superlattice, a single sublattice coset,
/// a doubled translated lattice, or two nested lattices; all mapped by a
/// random rational linear map and shifted.
pub fn random_instance(rng: &mut ChaCha8Rng, m: usize) -> RandomInstance {
    let hs = random_half_edges(rng, m, 2);
    let map = random_map(rng);
    let mapped: Vec<Vec2> = hs.iter().map(|h| apply(&map, h)).collect();
    let polygon = SymPolygon::from_half_edges(&mapped).unwrap();
    let shift = random_rational_point(rng);
    let polygon = polygon.translate(&shift);
    let z = map_lattice(&map, &Lattice2::integer());
    let kind = rng.gen_range(0..6);
    let (label, parts) = match kind {
        0 => ("lattice", vec![part(&z, random_rational_point(rng))]),
        1 => {
            let (sub, reps) = random_sublattice(rng);
            let sub = map_lattice(&map, &sub);
            let base = random_rational_point(rng);
            let parts = reps.iter().map(|r| part(&sub, &base + &apply(&map, r))).collect();
            ("coset union", parts)
        }
        2 => {
            let den = rng.gen_range(2..=3);
            let fine = Lattice2::new(apply(&map, &Vec2::new(q(1, den), q(0, 1))), apply(&map, &v(0, 1))).unwrap();
            ("superlattice", vec![part(&fine, Vec2::zero())])
        }
        3 => {
            let (sub, _) = random_sublattice(rng);
            (
                "single sublattice coset",
                vec![part(&map_lattice(&map, &sub), Vec2::zero())],
            )
        }
        4 => (
            "two translated copies",
            vec![part(&z, Vec2::zero()), part(&z, random_rational_point(rng))],
        ),
        _ => {
            let (sub, _) = random_sublattice(rng);
            (
                "nested lattices",
                vec![
                    part(&z, Vec2::zero()),
                    part(&map_lattice(&map, &sub), random_rational_point(rng)),
                ],
            )
        }
    };
    RandomInstance {
        label: format!("m={m} {label}"),
        polygon,
        x: TileMultiset::new(parts).unwrap(),
    }
}

/// Cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<BigRational>]) -> BigRational {
    if m.is_empty() {
        return BigRational::from_integer(BigInt::from(1));
    }
    let mut total = BigRational::from_integer(BigInt::from(0));
    for (c, entry) in m[0].iter().enumerate() {
        let minor: Vec<Vec<BigRational>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = entry * cofactor_det(&minor);
        total = if c % 2 == 0 { total + term } else { total - term };
    }
    total
}

/// The matrix with diagonal `p`, `+1` above it and `-1` below it.
pub fn sign_matrix(p: &[BigRational]) -> Vec<Vec<BigRational>> {
    let n = p.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        p[i].clone()
                    } else if i < j {
                        BigRational::from_integer(BigInt::from(1))
                    } else {
                        BigRational::from_integer(BigInt::from(-1))
                    }
                })
                .collect()
        })
        .collect()
}
