//! Lattice multiple tilings of centrally symmetric polygons.
//!
//! [`bolle_check`] decides whether `P + L` is a multiple lattice tiling by
//! Bolle's criterion: every edge of `P` must contain a point of `½L` in its
//! relative interior, and an edge whose midpoint is not in `½L` must itself
//! be a vector of `L`. The multiplicity is then `area(P) / det(L)`, which
//! must be an integer.
//!
//! [`theorem1_pipeline`] turns a verified multiple translative tiling by a
//! union of translated lattices into a multiple lattice tiling by a
//! rescaled lattice `(1/β) Λ_j`. For each lattice of `X`, every `i` has
//! `e_i` or `e*_i` rationally commensurate to `Λ_j`; `β` clears the
//! denominators. Since `midpoint(e_i) = -e*_i / 2` for a centred polygon,
//! preferring `e*_i` puts the edge midpoint in `(1/2β) Λ_j` directly.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::field::Scalar;
use crate::geometry::{Segment, SymPolygon, Vec2};
use crate::lattice::Lattice2;
use crate::tiling::TileMultiset;
use crate::verify::{verify_exact, Mode, TilingCertificate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EdgeVerdict {
    Ok,
    /// No point of `½L` in the open edge.
    NoHalfLatticePoint,
    /// Midpoint outside `½L` and the edge vector outside `L`.
    NotLatticeVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeReport {
    /// 0-based, over all `2m` edges of the centred polygon.
    pub index: usize,
    pub edge: Segment,
    pub midpoint_in_half_lattice: bool,
    pub interior_witness: Option<Vec2>,
    /// Only evaluated when the midpoint misses `½L`.
    pub edge_is_lattice_vector: Option<bool>,
    pub verdict: EdgeVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BolleReport {
    pub lattice: Lattice2,
    pub passed: bool,
    /// `area(P) / det(L)`.
    pub density: Scalar,
    /// The density when it is a positive integer.
    #[serde(serialize_with = "crate::serde_util::option_display")]
    pub k: Option<BigInt>,
    pub per_edge: Vec<EdgeReport>,
    /// Translation that moved the polygon's centre to the origin.
    pub applied_centering: Vec2,
}

pub fn bolle_check(polygon: &SymPolygon, lattice: &Lattice2) -> BolleReport {
    let (centred, shift) = polygon.centered();
    let half = lattice.scale(1, 2);
    let per_edge: Vec<EdgeReport> = centred
        .edges()
        .enumerate()
        .map(|(index, edge)| {
            let witness = half.point_on_open_segment(&edge);
            let midpoint_in_half_lattice = half.contains(&edge.midpoint());
            let edge_is_lattice_vector = (!midpoint_in_half_lattice).then(|| lattice.contains(&edge.direction()));
            let verdict = if witness.is_none() {
                EdgeVerdict::NoHalfLatticePoint
            } else if edge_is_lattice_vector == Some(false) {
                EdgeVerdict::NotLatticeVector
            } else {
                EdgeVerdict::Ok
            };
            EdgeReport {
                index,
                edge,
                midpoint_in_half_lattice,
                interior_witness: witness,
                edge_is_lattice_vector,
                verdict,
            }
        })
        .collect();
    let density = centred.area() / lattice.covolume();
    let k = density.to_integer().filter(|k| k.is_positive());
    let passed = k.is_some() && per_edge.iter().all(|e| e.verdict == EdgeVerdict::Ok);
    BolleReport {
        lattice: lattice.clone(),
        passed,
        density,
        k,
        per_edge,
        applied_centering: shift,
    }
}

/// Determinant of the `n × n` matrix with diagonal `p`, `+1` above the
/// diagonal and `-1` below it.
pub fn det_a(p: &[BigRational]) -> BigRational {
    let n = p.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => p[i].clone(),
                    std::cmp::Ordering::Less => BigRational::one(),
                    std::cmp::Ordering::Greater => -BigRational::one(),
                })
                .collect()
        })
        .collect();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &m[col][col];
            let (pivot_rows, rest) = m.split_at_mut(r);
            for (target, source) in rest[0][col..].iter_mut().zip(&pivot_rows[col][col..]) {
                *target -= &f * source;
            }
        }
    }
    det
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Choice {
    Edge,
    Star,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Lemma5 {
    /// `choices[i]` says which of `e_i`, `e*_i` lies in `(1/β) L`.
    Beta {
        #[serde(serialize_with = "crate::serde_util::display")]
        beta: BigInt,
        choices: Vec<Choice>,
    },
    /// Neither `e_i` nor `e*_i` is rationally commensurate to `L` (0-based `i`).
    Fails(usize),
}

pub fn lemma5_beta(polygon: &SymPolygon, lattice: &Lattice2) -> Lemma5 {
    let mut beta = BigInt::one();
    let mut choices = Vec::with_capacity(polygon.m());
    for i in 0..polygon.m() {
        let (denominator, choice) = match lattice.rational_commensurate(&polygon.star_vector(i)) {
            Some(d) => (d, Choice::Star),
            None => match lattice.rational_commensurate(&polygon.edge_vector(i)) {
                Some(d) => (d, Choice::Edge),
                None => return Lemma5::Fails(i),
            },
        };
        beta = beta.lcm(&denominator);
        choices.push(choice);
    }
    Lemma5::Beta { beta, choices }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error("the translate set has no verified tiling certificate")]
    PreconditionUnverified,
    #[error("the tiling certificate is only sampled; sampled input must be allowed explicitly")]
    SampledNotAllowed,
    #[error("exact re-verification of {lattice} gave {found:?}, expected k = {expected}")]
    CrossCheckFailed {
        lattice: Lattice2,
        expected: BigInt,
        found: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineOptions {
    pub beta_escalation_bound: u32,
    pub allow_sampled: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            beta_escalation_bound: 4,
            allow_sampled: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Theorem1Certificate {
    /// 0-based index of the lattice group of `X` that was used.
    pub chosen_j: usize,
    /// Effective scaling: `lattice = (1/beta) Λ_j`.
    #[serde(serialize_with = "crate::serde_util::display")]
    pub beta: BigInt,
    /// The escalation factor `γ` with `beta = γ · lemma5_beta`.
    pub escalation: u32,
    pub lattice: Lattice2,
    #[serde(serialize_with = "crate::serde_util::display")]
    pub k_lattice: BigInt,
    pub bolle: BolleReport,
    pub source_certificate: TilingCertificate,
    pub cross_check: TilingCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeAttempt {
    pub j: usize,
    pub lattice: Lattice2,
    pub lemma5: Lemma5,
    pub bolle_reports: Vec<BolleReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PipelineOutcome {
    Certificate(Box<Theorem1Certificate>),
    NoLatticeFound(Vec<LatticeAttempt>),
}

/// Extracts a multiple lattice tiling from a verified multiple translative
/// tiling. Lattice groups are taken from [`TileMultiset::regrouped`]; the
/// first success in order of group, then escalation factor, is returned.
pub fn theorem1_pipeline(
    polygon: &SymPolygon,
    x: &TileMultiset,
    source: &TilingCertificate,
    options: &PipelineOptions,
) -> Result<PipelineOutcome, PipelineError> {
    if !source.is_verified() {
        return Err(PipelineError::PreconditionUnverified);
    }
    if source.mode == Mode::Sampled && !options.allow_sampled {
        return Err(PipelineError::SampledNotAllowed);
    }
    let (centred, _) = polygon.centered();
    let groups = x.regrouped();
    let mut attempts = Vec::new();
    for (j, group) in groups.groups().iter().enumerate() {
        let lemma5 = lemma5_beta(&centred, &group.lattice);
        let mut bolle_reports = Vec::new();
        if let Lemma5::Beta { beta, .. } = &lemma5 {
            for gamma in 1..=options.beta_escalation_bound {
                let scale = beta * BigInt::from(gamma);
                let lattice = group.lattice.scale(1, scale.clone());
                let bolle = bolle_check(&centred, &lattice);
                if !bolle.passed {
                    bolle_reports.push(bolle);
                    continue;
                }
                let k_lattice = bolle.k.clone().expect("passed reports carry k");
                let cross_check = verify_exact(&centred, &TileMultiset::lattice(lattice.clone()))
                    .expect("a single lattice is commensurable with itself");
                if cross_check.k.map(BigInt::from) != Some(k_lattice.clone()) {
                    return Err(PipelineError::CrossCheckFailed {
                        lattice,
                        expected: k_lattice,
                        found: cross_check.k,
                    });
                }
                return Ok(PipelineOutcome::Certificate(Box::new(Theorem1Certificate {
                    chosen_j: j,
                    beta: scale,
                    escalation: gamma,
                    lattice,
                    k_lattice,
                    bolle,
                    source_certificate: source.clone(),
                    cross_check,
                })));
            }
        }
        attempts.push(LatticeAttempt {
            j,
            lattice: group.lattice.clone(),
            lemma5,
            bolle_reports,
        });
    }
    Ok(PipelineOutcome::NoLatticeFound(attempts))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum TauStar {
    /// `k` is an upper bound for the least multiplicity of a lattice tiling.
    Found {
        #[serde(serialize_with = "crate::serde_util::display")]
        k: BigInt,
        lattice: Lattice2,
        report: Box<BolleReport>,
    },
    NotFoundWithinBounds,
}

/// Candidate lattice generators: `e_i`, then `e*_i`, then `v_i - v_j`, with
/// repeats and negatives dropped.
pub fn candidate_generators(polygon: &SymPolygon) -> Vec<Vec2> {
    let (centred, _) = polygon.centered();
    let m = centred.m();
    let mut out: Vec<Vec2> = Vec::new();
    let mut push = |w: Vec2| {
        if !w.is_zero() && !out.iter().any(|g| *g == w || *g == -&w) {
            out.push(w);
        }
    };
    for i in 0..m {
        push(centred.edge_vector(i));
    }
    for i in 0..m {
        push(centred.star_vector(i));
    }
    for i in 0..centred.len() {
        for j in i + 1..centred.len() {
            push(centred.vertex(i) - centred.vertex(j));
        }
    }
    out
}

/// Searches lattices spanned by pairs of the first `generator_bound`
/// candidate generators scaled by `1/β`, `β <= beta_bound`, for the passing
/// lattice of least multiplicity. Ties go to the first found.
pub fn tau_star_search(polygon: &SymPolygon, beta_bound: u32, generator_bound: usize) -> TauStar {
    let (centred, _) = polygon.centered();
    let area = centred.area();
    let mut generators = candidate_generators(&centred);
    generators.truncate(generator_bound);

    let mut seen: HashMap<Scalar, Vec<Lattice2>> = HashMap::new();
    let mut best: Option<(BigInt, Lattice2, BolleReport)> = None;
    for beta in 1..=beta_bound {
        let factor = Scalar::ratio(1, i64::from(beta));
        for a in 0..generators.len() {
            for b in a + 1..generators.len() {
                let Ok(lattice) = Lattice2::new(generators[a].scale(&factor), generators[b].scale(&factor)) else {
                    continue;
                };
                let covolume = lattice.covolume();
                let Some(k) = (&area / &covolume).to_integer() else {
                    continue;
                };
                if best.as_ref().is_some_and(|(bk, _, _)| *bk <= k) {
                    continue;
                }
                let bucket = seen.entry(covolume).or_default();
                if bucket.iter().any(|l| l.same_lattice(&lattice)) {
                    continue;
                }
                bucket.push(lattice.clone());
                let report = bolle_check(&centred, &lattice);
                if report.passed {
                    best = Some((k, lattice, report));
                }
            }
        }
    }
    match best {
        Some((k, lattice, report)) => TauStar::Found {
            k,
            lattice,
            report: Box::new(report),
        },
        None => TauStar::NotFoundWithinBounds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::TranslatedLattice;
    use crate::verify::verify_sampled;

    fn v(x: i64, y: i64) -> Vec2 {
        Vec2::int(x, y)
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn square() -> SymPolygon {
        SymPolygon::new(vec![v(1, -1), v(1, 1), v(-1, 1), v(-1, -1)]).unwrap()
    }

    fn hexagon() -> SymPolygon {
        SymPolygon::new(vec![v(1, 0), v(0, 1), v(-1, 1), v(-1, 0), v(0, -1), v(1, -1)]).unwrap()
    }

    fn hex_lattice() -> Lattice2 {
        Lattice2::new(v(2, -1), v(1, 1)).unwrap()
    }

    fn rationals(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    fn cofactor_det(m: &[Vec<BigRational>]) -> BigRational {
        if m.is_empty() {
            return BigRational::one();
        }
        let mut total = BigRational::zero();
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

    #[test]
    fn square_on_integer_lattice() {
        let r = bolle_check(&square(), &Lattice2::integer());
        assert!(r.passed);
        assert_eq!(r.k, Some(BigInt::from(4)));
        assert!(r.per_edge.iter().all(|e| e.midpoint_in_half_lattice));
        assert_eq!(r.per_edge.len(), 4);
    }

    #[test]
    fn hexagon_witnesses() {
        let r = bolle_check(&hexagon(), &hex_lattice());
        assert!(r.passed);
        assert_eq!(r.k, Some(BigInt::one()));
        let w: Vec<_> = r.per_edge[..3]
            .iter()
            .map(|e| e.interior_witness.clone().unwrap())
            .collect();
        assert_eq!(
            w,
            vec![
                Vec2::new(q(1, 2), q(1, 2)),
                Vec2::new(q(-1, 2), q(1, 1)),
                Vec2::new(q(-1, 1), q(1, 2))
            ]
        );
    }

    #[test]
    fn square_on_sparse_lattice_fails() {
        let r = bolle_check(&square(), &Lattice2::new(v(3, 0), v(0, 1)).unwrap());
        assert!(!r.passed);
        assert_eq!(r.k, None);
        assert_eq!(r.density, q(4, 3));
        assert_eq!(r.per_edge[0].verdict, EdgeVerdict::NoHalfLatticePoint);
        assert_eq!(r.per_edge[1].verdict, EdgeVerdict::Ok);
    }

    #[test]
    fn off_centre_polygon_is_centred() {
        let moved = square().translate(&Vec2::new(q(1, 3), q(2, 1)));
        let r = bolle_check(&moved, &Lattice2::integer());
        assert!(r.passed);
        assert_eq!(r.applied_centering, Vec2::new(q(-1, 3), q(-2, 1)));
    }

    #[test]
    fn det_a_values() {
        assert_eq!(det_a(&rationals(&[0, 0, 0])), BigRational::zero());
        assert_eq!(det_a(&rationals(&[0, 0])), BigRational::one());
        assert_eq!(det_a(&rationals(&[1, 1, 1])), BigRational::from_integer(4.into()));
        assert_eq!(det_a(&[]), BigRational::one());
    }

    #[test]
    fn det_a_matches_cofactor_expansion() {
        let p: Vec<BigRational> = vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::zero(),
            BigRational::new(3.into(), 7.into()),
            BigRational::from_integer(2.into()),
            BigRational::zero(),
        ];
        let n = p.len();
        let m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.cmp(&j) {
                        std::cmp::Ordering::Equal => p[i].clone(),
                        std::cmp::Ordering::Less => BigRational::one(),
                        std::cmp::Ordering::Greater => -BigRational::one(),
                    })
                    .collect()
            })
            .collect();
        assert_eq!(det_a(&p), cofactor_det(&m));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(
            lemma5_beta(&square(), &Lattice2::integer()),
            Lemma5::Beta {
                beta: BigInt::one(),
                choices: vec![Choice::Star, Choice::Star]
            }
        );
        assert_eq!(
            lemma5_beta(&hexagon(), &hex_lattice()),
            Lemma5::Beta {
                beta: BigInt::one(),
                choices: vec![Choice::Star; 3]
            }
        );
        let coarse = Lattice2::new(v(3, 0), v(0, 4)).unwrap();
        assert_eq!(
            lemma5_beta(&square(), &coarse),
            Lemma5::Beta {
                beta: BigInt::from(6),
                choices: vec![Choice::Star, Choice::Star]
            }
        );
        let root2: Scalar = "sqrt(2)".parse().unwrap();
        let irr = SymPolygon::from_half_edges(&[
            Vec2::new(root2.clone(), Scalar::zero()),
            Vec2::new(Scalar::zero(), root2),
        ])
        .unwrap();
        assert_eq!(lemma5_beta(&irr, &Lattice2::integer()), Lemma5::Fails(0));
    }

    fn part(l: &Lattice2, o: Vec2) -> TranslatedLattice {
        TranslatedLattice {
            lattice: l.clone(),
            offset: o,
        }
    }

    #[test]
    fn pipeline_on_irrational_union() {
        let z = Lattice2::integer();
        let shift = Vec2::new("sqrt(2)/2".parse().unwrap(), Scalar::zero());
        let x = TileMultiset::new([part(&z, v(0, 0)), part(&z, shift)]).unwrap();
        let source = verify_sampled(&square(), &x, 30, 1);
        assert_eq!(source.k, Some(8));
        assert_eq!(
            theorem1_pipeline(&square(), &x, &source, &PipelineOptions::default()),
            Err(PipelineError::SampledNotAllowed)
        );
        let options = PipelineOptions {
            allow_sampled: true,
            ..PipelineOptions::default()
        };
        let PipelineOutcome::Certificate(c) = theorem1_pipeline(&square(), &x, &source, &options).unwrap() else {
            panic!("expected a certificate");
        };
        assert!(c.lattice.same_lattice(&z));
        assert_eq!(
            (c.chosen_j, c.beta.clone(), c.k_lattice.clone()),
            (0, BigInt::one(), BigInt::from(4))
        );
        assert_eq!(c.cross_check.k, Some(4));
    }

    #[test]
    fn pipeline_on_two_cosets() {
        let l = Lattice2::new(v(2, 0), v(0, 1)).unwrap();
        let x = TileMultiset::new([part(&l, v(0, 0)), part(&l, v(1, 0))]).unwrap();
        let source = verify_exact(&square(), &x).unwrap();
        assert_eq!(source.k, Some(4));
        let PipelineOutcome::Certificate(c) =
            theorem1_pipeline(&square(), &x, &source, &PipelineOptions::default()).unwrap()
        else {
            panic!("expected a certificate");
        };
        assert!(c.lattice.same_lattice(&l));
        assert_eq!(c.k_lattice, BigInt::from(2));
    }

    #[test]
    fn pipeline_needs_a_verified_source() {
        let x = TileMultiset::lattice(Lattice2::new(v(3, 0), v(0, 1)).unwrap());
        let source = verify_exact(&square(), &x).unwrap();
        assert_eq!(
            theorem1_pipeline(&square(), &x, &source, &PipelineOptions::default()),
            Err(PipelineError::PreconditionUnverified)
        );
    }

    #[test]
    fn tau_star_examples() {
        let TauStar::Found { k, lattice, .. } = tau_star_search(&square(), 2, 8) else {
            panic!("square lattice tiles");
        };
        assert_eq!(k, BigInt::one());
        assert_eq!((lattice.u(), lattice.v()), (&v(0, 2), &v(-2, 0)));

        let TauStar::Found { k, lattice, .. } = tau_star_search(&hexagon(), 2, 8) else {
            panic!("hexagon lattice tiles");
        };
        assert_eq!(k, BigInt::one());
        assert!(bolle_check(&hexagon(), &lattice).passed);

        assert_eq!(tau_star_search(&square(), 1, 1), TauStar::NotFoundWithinBounds);
    }
}
