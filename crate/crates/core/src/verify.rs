//! Deciding whether `P + X` is a k-fold tiling.
//!
//! A multiset of translates is a k-fold tiling when every point lies in at
//! least `k` closed translates and at most `k` open ones. The exact verifier
//! checks a weaker-looking condition: every open cell of the arrangement of
//! translate edges lies in exactly `k` open translates. The two agree. If a
//! point `p` were inside `k + 1` open translates, so would a small disc around
//! it, and that disc contains points of some open cell. Conversely every
//! point is a limit of cell points; only finitely many translates come near
//! `p`, so some `k` of them contain cell points arbitrarily close to `p` and
//! therefore contain `p` in their closures.
//!
//! When all lattices of `X` share a rank-2 sublattice `Λc`, the covering
//! pattern is `Λc`-periodic and the cells of one fundamental parallelogram
//! settle the question. Otherwise only sampling is available, and a sampled
//! success is evidence, not proof. A sampled failure is conclusive.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::decompose;
use crate::field::Scalar;
use crate::geometry::{ConvexRegion, Segment, SymPolygon, Vec2};
use crate::lattice::{Lattice2, LatticeIntersection};
use crate::tiling::{multiplicity_at, translates_meeting, Multiplicity, TileMultiset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("the lattices of the translate set have no common rank-2 sublattice")]
    Incommensurable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    Exact,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Status {
    Verified,
    /// `witness` disagrees with `reference`, the first cell or probe looked at.
    NotATiling {
        witness: Vec2,
        closed: usize,
        open: usize,
        reference: Vec2,
        reference_open: usize,
    },
    Inconclusive,
}

/// `{origin + s u + t v : 0 <= s, t <= 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Parallelogram {
    pub origin: Vec2,
    pub u: Vec2,
    pub v: Vec2,
}

impl Parallelogram {
    pub fn region(&self) -> ConvexRegion {
        ConvexRegion::parallelogram(&self.origin, &self.u, &self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TilingCertificate {
    pub mode: Mode,
    pub k: Option<usize>,
    pub status: Status,
    pub cells_checked: usize,
    pub samples_checked: usize,
    pub fundamental_domain: Option<Parallelogram>,
}

impl TilingCertificate {
    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    /// Whether the outcome is a proof. Sampled successes are not.
    pub fn is_conclusive(&self) -> bool {
        match self.status {
            Status::Verified => self.mode == Mode::Exact,
            Status::NotATiling { .. } => true,
            Status::Inconclusive => false,
        }
    }
}

/// A rank-2 lattice contained in every lattice of `X`, or `None` when two of
/// them meet in rank at most 1.
pub fn common_sublattice(x: &TileMultiset) -> Option<Lattice2> {
    let mut groups = x.groups().iter();
    let mut common = groups.next()?.lattice.clone();
    for g in groups {
        match common.intersection(&g.lattice) {
            LatticeIntersection::Full(l) => common = l,
            _ => return None,
        }
    }
    Some(common)
}

/// Float copies of the translates and the polygon's bounding box, used to
/// skip translates that are clearly far from a point.
struct Prefilter {
    translates: Vec<(f64, f64)>,
    lo: (f64, f64),
    hi: (f64, f64),
}

impl Prefilter {
    fn new(polygon: &SymPolygon, candidates: &[Vec2]) -> Prefilter {
        let (lo, hi) = polygon.bounds();
        let pad = |(x, y): (f64, f64), s: f64| (x + s * 1e-9 * (1.0 + x.abs()), y + s * 1e-9 * (1.0 + y.abs()));
        Prefilter {
            translates: candidates.iter().map(Vec2::to_f64).collect(),
            lo: pad(lo.to_f64(), -1.0),
            hi: pad(hi.to_f64(), 1.0),
        }
    }

    fn far(&self, n: usize, p: (f64, f64)) -> bool {
        let (tx, ty) = self.translates[n];
        let (qx, qy) = (p.0 - tx, p.1 - ty);
        let slack = 1e-9 * (1.0 + qx.abs() + qy.abs());
        qx < self.lo.0 - slack || qx > self.hi.0 + slack || qy < self.lo.1 - slack || qy > self.hi.1 + slack
    }
}

fn count_open(
    polygon: &SymPolygon,
    lo: &Vec2,
    hi: &Vec2,
    candidates: &[Vec2],
    filter: &Prefilter,
    p: &Vec2,
) -> Multiplicity {
    let mut m = Multiplicity { closed: 0, open: 0 };
    let pf = p.to_f64();
    for (n, t) in candidates.iter().enumerate() {
        if filter.far(n, pf) {
            continue;
        }
        let q = p - t;
        if q.x < lo.x || q.x > hi.x || q.y < lo.y || q.y > hi.y {
            continue;
        }
        let loc = polygon.locate(&q);
        m.closed += usize::from(loc.in_closed());
        m.open += usize::from(loc.in_open());
    }
    m
}

/// Exact verification over a fundamental parallelogram of the common
/// sublattice.
pub fn verify_exact(polygon: &SymPolygon, x: &TileMultiset) -> Result<TilingCertificate, VerifyError> {
    let common = common_sublattice(x).ok_or(VerifyError::Incommensurable)?;
    let domain = Parallelogram {
        origin: Vec2::zero(),
        u: common.u().clone(),
        v: common.v().clone(),
    };
    let region = domain.region();
    let candidates = translates_meeting(x, polygon, &region);
    let segments: Vec<Segment> = candidates
        .iter()
        .flat_map(|t| {
            polygon.edges().map(move |e| Segment {
                a: &e.a + t,
                b: &e.b + t,
            })
        })
        .collect();
    let cells = decompose(&region, &segments).cells;
    let (lo, hi) = polygon.bounds();
    let filter = Prefilter::new(polygon, &candidates);

    let mut reference: Option<(Vec2, usize)> = None;
    for (n, cell) in cells.iter().enumerate() {
        let m = count_open(polygon, &lo, &hi, &candidates, &filter, &cell.witness);
        match &reference {
            None => reference = Some((cell.witness.clone(), m.open)),
            Some((r, k)) if *k != m.open => {
                return Ok(TilingCertificate {
                    mode: Mode::Exact,
                    k: None,
                    status: Status::NotATiling {
                        witness: cell.witness.clone(),
                        closed: m.closed,
                        open: m.open,
                        reference: r.clone(),
                        reference_open: *k,
                    },
                    cells_checked: n + 1,
                    samples_checked: 0,
                    fundamental_domain: Some(domain),
                })
            }
            Some(_) => {}
        }
    }
    let k = reference.map(|(_, k)| k).filter(|&k| k > 0);
    Ok(TilingCertificate {
        mode: Mode::Exact,
        k,
        status: if k.is_some() {
            Status::Verified
        } else {
            Status::Inconclusive
        },
        cells_checked: cells.len(),
        samples_checked: 0,
        fundamental_domain: Some(domain),
    })
}

const PROBE_DENOMINATOR: u64 = 1_000_003;

/// Half-width of the sampling window: one and a half times an integer bound
/// on the polygon's diameter.
fn sampling_half_width(polygon: &SymPolygon) -> BigInt {
    let (lo, hi) = polygon.bounds();
    let extent = (&hi.x - &lo.x).max(&hi.y - &lo.y);
    let d = extent.ceil() * 3;
    (d + 1) / 2
}

/// Sampled verification at `probes` seeded pseudo-random rational points.
/// Probes landing on a translate boundary are moved by `(1/F, 1/F²)` with
/// `F` doubling until they are off every boundary.
pub fn verify_sampled(polygon: &SymPolygon, x: &TileMultiset, probes: usize, seed: u64) -> TilingCertificate {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let half = sampling_half_width(polygon);
    let den = BigInt::from(PROBE_DENOMINATOR);
    let coordinate = |rng: &mut ChaCha8Rng| {
        let r = BigInt::from(rng.gen_range(0..PROBE_DENOMINATOR));
        // uniform on [-half, half) with denominator PROBE_DENOMINATOR
        let num = (r * 2 - &den) * &half;
        Scalar::from_rational(num_rational::BigRational::new(num, den.clone()))
    };

    let mut reference: Option<(Vec2, usize)> = None;
    for n in 0..probes {
        let base = Vec2::new(coordinate(&mut rng), coordinate(&mut rng));
        let mut p = base.clone();
        let mut m = multiplicity_at(x, polygon, &p);
        let mut f = BigInt::from(2 * PROBE_DENOMINATOR);
        while m.closed != m.open {
            let step = Vec2::new(
                Scalar::from_rational(num_rational::BigRational::new(1.into(), f.clone())),
                Scalar::from_rational(num_rational::BigRational::new(1.into(), &f * &f)),
            );
            p = &base + &step;
            m = multiplicity_at(x, polygon, &p);
            f *= 2;
        }
        match &reference {
            None => reference = Some((p, m.open)),
            Some((r, k)) if *k != m.open => {
                return TilingCertificate {
                    mode: Mode::Sampled,
                    k: None,
                    status: Status::NotATiling {
                        witness: p,
                        closed: m.closed,
                        open: m.open,
                        reference: r.clone(),
                        reference_open: *k,
                    },
                    cells_checked: 0,
                    samples_checked: n + 1,
                    fundamental_domain: None,
                };
            }
            Some(_) => {}
        }
    }
    let k = reference.map(|(_, k)| k).filter(|&k| k > 0);
    TilingCertificate {
        mode: Mode::Sampled,
        k,
        status: if k.is_some() {
            Status::Verified
        } else {
            Status::Inconclusive
        },
        cells_checked: 0,
        samples_checked: probes,
        fundamental_domain: None,
    }
}
