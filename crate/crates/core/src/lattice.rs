//! Planar lattices with exact bases.
//!
//! A [`Lattice2`] is stored by an arbitrary basis; two lattices are the same
//! when each contains the other's basis ([`Lattice2::same_lattice`]). All
//! integer linear algebra (intersections, coset representatives) is done by
//! clearing denominators and reducing with [`crate::hnf`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::field::Scalar;
use crate::geometry::{ConvexRegion, Segment, Vec2};
use crate::hnf;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("basis vectors {0} and {1} are linearly dependent")]
    Degenerate(Vec2, Vec2),
    #[error("basis vectors use incompatible square roots")]
    MixedRadicands,
}

/// Full-rank lattice `Z u + Z v`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Lattice2 {
    u: Vec2,
    v: Vec2,
    det: Scalar,
}

impl fmt::Debug for Lattice2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lattice2[{}; {}]", self.u, self.v)
    }
}

impl fmt::Display for Lattice2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "basis {}, {}", self.u, self.v)
    }
}

/// `lattice + offset`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct TranslatedLattice {
    pub lattice: Lattice2,
    pub offset: Vec2,
}

/// `L1 ∩ L2` as an abelian group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIntersection {
    Trivial,
    /// Rank one, generated by the given vector.
    Line(Vec2),
    Full(Lattice2),
}

impl LatticeIntersection {
    pub fn rank(&self) -> usize {
        match self {
            LatticeIntersection::Trivial => 0,
            LatticeIntersection::Line(_) => 1,
            LatticeIntersection::Full(_) => 2,
        }
    }
}

impl Lattice2 {
    pub fn new(u: Vec2, v: Vec2) -> Result<Lattice2, LatticeError> {
        let radicands = [u.radicand(), v.radicand()];
        if radicands[0] != 0 && radicands[1] != 0 && radicands[0] != radicands[1] {
            return Err(LatticeError::MixedRadicands);
        }
        let det = u.cross(&v);
        if det.is_zero() {
            return Err(LatticeError::Degenerate(u, v));
        }
        Ok(Lattice2 { u, v, det })
    }

    /// The integer lattice `Z^2`.
    pub fn integer() -> Lattice2 {
        Lattice2::new(Vec2::int(1, 0), Vec2::int(0, 1)).expect("unit basis")
    }

    pub fn u(&self) -> &Vec2 {
        &self.u
    }

    pub fn v(&self) -> &Vec2 {
        &self.v
    }

    /// Signed determinant `u × v`.
    pub fn det(&self) -> &Scalar {
        &self.det
    }

    /// Area of a fundamental cell.
    pub fn covolume(&self) -> Scalar {
        self.det.abs()
    }

    pub fn radicand(&self) -> u64 {
        self.u.radicand().max(self.v.radicand())
    }

    /// `a u + b v`.
    pub fn point(&self, a: &BigInt, b: &BigInt) -> Vec2 {
        let a = Scalar::from_bigint(a.clone());
        let b = Scalar::from_bigint(b.clone());
        &self.u.scale(&a) + &self.v.scale(&b)
    }

    /// Coordinates `(c1, c2)` with `w = c1 u + c2 v`.
    pub fn coords(&self, w: &Vec2) -> (Scalar, Scalar) {
        (w.cross(&self.v) / &self.det, self.u.cross(w) / &self.det)
    }

    /// Integer coordinates of `w` when it is a lattice vector.
    pub fn member(&self, w: &Vec2) -> Option<(BigInt, BigInt)> {
        let (a, b) = self.coords(w);
        Some((a.to_integer()?, b.to_integer()?))
    }

    pub fn contains(&self, w: &Vec2) -> bool {
        self.member(w).is_some()
    }

    /// Smallest `q > 0` with `w ∈ (1/q) L`, if any exists.
    pub fn rational_commensurate(&self, w: &Vec2) -> Option<BigInt> {
        let (a, b) = self.coords(w);
        Some(crate::field::denominator_lcm(a.as_rational()?, b.as_rational()?))
    }

    /// Lattice spanned by `(num/den) u, (num/den) v`.
    pub fn scale(&self, num: impl Into<BigInt>, den: impl Into<BigInt>) -> Lattice2 {
        let factor = Scalar::from_rational(BigRational::new(num.into(), den.into()));
        self.scale_by(&factor)
    }

    pub fn scale_by(&self, factor: &Scalar) -> Lattice2 {
        Lattice2::new(self.u.scale(factor), self.v.scale(factor)).expect("nonzero factor keeps rank")
    }

    /// `other ⊆ self`.
    pub fn contains_lattice(&self, other: &Lattice2) -> bool {
        self.contains(&other.u) && self.contains(&other.v)
    }

    pub fn same_lattice(&self, other: &Lattice2) -> bool {
        self.contains_lattice(other) && other.contains_lattice(self)
    }

    /// Exact intersection `self ∩ other`.
    pub fn intersection(&self, other: &Lattice2) -> LatticeIntersection {
        // other's basis in self's coordinates: columns of M = R + S sqrt(d)
        let (m00, m10) = self.coords(&other.u);
        let (m01, m11) = self.coords(&other.v);
        let entries = [&m00, &m01, &m10, &m11];
        let denom = entries.iter().fold(BigInt::one(), |acc, s| {
            acc.lcm(s.rational_part().denom()).lcm(s.surd_part().denom())
        });
        let scaled = |r: &BigRational| (r * BigRational::from_integer(denom.clone())).to_integer();
        let rat = |s: &Scalar| scaled(s.rational_part());
        let surd = |s: &Scalar| scaled(s.surd_part());
        let zero = BigInt::zero;
        // c in Z^2 lies in the intersection iff S c = 0 and R c = a for some a in Z^2
        let system = vec![
            vec![surd(&m00), surd(&m01), zero(), zero()],
            vec![surd(&m10), surd(&m11), zero(), zero()],
            vec![rat(&m00), rat(&m01), -denom.clone(), zero()],
            vec![rat(&m10), rat(&m11), zero(), -denom.clone()],
        ];
        let kernel = hnf::integer_kernel(&system, 4);
        let gens: Vec<Vec2> = kernel.iter().map(|row| other.point(&row[0], &row[1])).collect();
        match gens.len() {
            0 => LatticeIntersection::Trivial,
            1 => LatticeIntersection::Line(gens[0].clone()),
            _ => LatticeIntersection::Full(
                Lattice2::new(gens[0].clone(), gens[1].clone()).expect("kernel rows are independent"),
            ),
        }
    }

    pub fn intersection_rank(&self, other: &Lattice2) -> usize {
        self.intersection(other).rank()
    }

    /// Representatives of `self / sub` when `sub` is a sublattice of `self`.
    pub fn coset_representatives(&self, sub: &Lattice2) -> Option<Vec<Vec2>> {
        let (a, b) = self.member(&sub.u)?;
        let (c, d) = self.member(&sub.v)?;
        let h = hnf::hermite_rows(&[vec![a, b], vec![c, d]]);
        let (rows, cols) = (h[0][0].clone(), h[1][1].clone());
        let mut reps = Vec::new();
        let mut i = BigInt::zero();
        while i < rows {
            let mut j = BigInt::zero();
            while j < cols {
                reps.push(self.point(&i, &j));
                j += 1;
            }
            i += 1;
        }
        Some(reps)
    }

    /// Points of `self + offset` in the closed region, sorted.
    pub fn enumerate_in_region(&self, offset: &Vec2, region: &ConvexRegion) -> Vec<Vec2> {
        let coords: Vec<(Scalar, Scalar)> = region.vertices().iter().map(|p| self.coords(&(p - offset))).collect();
        let lo_a = coords.iter().map(|c| c.0.floor()).min().expect("non-empty region");
        let hi_a = coords.iter().map(|c| c.0.ceil()).max().expect("non-empty region");
        let lo_b = coords.iter().map(|c| c.1.floor()).min().expect("non-empty region");
        let hi_b = coords.iter().map(|c| c.1.ceil()).max().expect("non-empty region");
        let mut out = Vec::new();
        let mut a = lo_a;
        while a <= hi_a {
            let base = offset + &self.u.scale(&Scalar::from_bigint(a.clone()));
            let mut b = lo_b.clone();
            while b <= hi_b {
                let p = &base + &self.v.scale(&Scalar::from_bigint(b.clone()));
                if region.contains(&p) {
                    out.push(p);
                }
                b += 1;
            }
            a += 1;
        }
        out.sort();
        out
    }

    /// A lattice point in the relative interior of `s`, if any; the one
    /// closest to the midpoint is returned.
    pub fn point_on_open_segment(&self, s: &Segment) -> Option<Vec2> {
        let start = self.coords(&s.a);
        let delta = self.coords(&s.direction());
        // parametrize by the coordinate with nonzero change
        let swap = delta.0.is_zero();
        let (ak, aj, dk, dj) = if swap {
            (&start.1, &start.0, &delta.1, &delta.0)
        } else {
            (&start.0, &start.1, &delta.0, &delta.1)
        };
        let ratio = dj / dk;
        let c = aj - &(ak * &ratio);
        let (r0, r1) = (ratio.rational_part(), ratio.surd_part());
        let (c0, c1) = (c.rational_part(), c.surd_part());
        let one = Scalar::one();
        let t_of = |nk: &BigInt| (Scalar::from_bigint(nk.clone()) - ak) / dk;
        let build = |nk: BigInt, nj: BigInt| {
            if swap {
                self.point(&nj, &nk)
            } else {
                self.point(&nk, &nj)
            }
        };

        if !r1.is_zero() {
            // irrational slope in lattice coordinates: at most one lattice point on the line
            let nk = -(c1 / r1);
            let nj = c0 + r0 * &nk;
            if !nk.is_integer() || !nj.is_integer() {
                return None;
            }
            let t = t_of(&nk.to_integer());
            return (t.is_positive() && t < one).then(|| build(nk.to_integer(), nj.to_integer()));
        }
        if !c1.is_zero() {
            return None;
        }
        // n_j - r0 n_k = c0 with r0 = p/q:  q n_j - p n_k = q c0
        let (p, q) = (r0.numer().clone(), r0.denom().clone());
        let g = c0 * BigRational::from_integer(q.clone());
        if !g.is_integer() {
            return None;
        }
        let g = g.to_integer();
        let egcd = q.extended_gcd(&p);
        debug_assert!(egcd.gcd.is_one());
        let nj0 = &g * &egcd.x;
        let nk0 = -(&g * &egcd.y);
        // n_k = nk0 + q s, n_j = nj0 + p s, t(s) = t0 + s tau
        let t0 = t_of(&nk0);
        let tau = Scalar::from_bigint(q.clone()) / dk;
        let bound_a = -&t0 / &tau;
        let bound_b = (&one - &t0) / &tau;
        let (lo, hi) = if tau.is_positive() {
            (bound_a, bound_b)
        } else {
            (bound_b, bound_a)
        };
        let s_lo = lo.floor() + 1;
        let s_hi = hi.ceil() - 1;
        if s_lo > s_hi {
            return None;
        }
        let target = (Scalar::ratio(1, 2) - &t0) / &tau + Scalar::ratio(1, 2);
        let s = target.floor().clamp(s_lo, s_hi);
        Some(build(&nk0 + &q * &s, &nj0 + &p * &s))
    }
}
