//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use multitile::report::json_report;
use multitile::tiling::{lemma3_check, normal_point_scan, Lemma3};
use multitile::{
    bolle_check, det_a, multiplicity_at, parse_instance, render_svg, theorem1_pipeline, translates_meeting,
    verify_exact, verify_sampled, Lattice2, Mode, PipelineOptions, PipelineOutcome, RenderOptions, Scalar, Status,
    SymPolygon, TileMultiset, Vec2,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> String {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// Instances found to be tilings in criterion 1, reused by criterion 6.
struct Verified {
    polygon: SymPolygon,
    x: TileMultiset,
}

const INSTANCES: usize = 240;
const PROBES: usize = 50;

fn oracle_equivalence(verified: &mut Vec<Verified>) -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut tilings, mut failures) = (0, 0);
    let mut verifying = Duration::ZERO;
    for n in 0..INSTANCES {
        let m = 2 + n % 4;
        let inst = random_instance(&mut rng, m);
        let t = Instant::now();
        let cert = verify_exact(&inst.polygon, &inst.x).map_err(|e| format!("instance {n} ({}): {e}", inst.label))?;
        verifying += t.elapsed();
        match &cert.status {
            Status::Verified => {
                let k = cert.k.expect("verified carries k");
                for _ in 0..PROBES {
                    let (p, open) = generic_probe(&mut rng, &inst.polygon, &inst.x, 6);
                    ensure(open == k, || {
                        format!(
                            "instance {n} ({}): verified k={k} but the oracle counts {open} at {p}",
                            inst.label
                        )
                    })?;
                }
                let sampled = verify_sampled(&inst.polygon, &inst.x, 10, n as u64);
                ensure(sampled.k == Some(k), || {
                    format!("instance {n}: sampled mode gave {:?}, exact gave {k}", sampled.k)
                })?;
                tilings += 1;
                verified.push(Verified {
                    polygon: inst.polygon,
                    x: inst.x,
                });
            }
            Status::NotATiling {
                witness,
                closed,
                open,
                reference,
                reference_open,
            } => {
                let at_witness = oracle_counts(&inst.polygon, &inst.x, witness);
                let at_reference = oracle_counts(&inst.polygon, &inst.x, reference);
                ensure(at_witness == (*closed, *open), || {
                    format!(
                        "instance {n}: witness counts {:?} vs oracle {:?}",
                        (closed, open),
                        at_witness
                    )
                })?;
                ensure(
                    at_reference.1 == *reference_open && at_reference.1 != at_witness.1,
                    || format!("instance {n}: reference witness does not reproduce"),
                )?;
                failures += 1;
            }
            Status::Inconclusive => return Err(format!("instance {n}: exact verification was inconclusive")),
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:.1?}, budget 60 s")
    })?;
    Ok(format!(
        "{INSTANCES} instances ({tilings} tilings checked at {PROBES} probes each, {failures} non-tilings with reproduced witnesses) in {elapsed:.1?}, {verifying:.1?} of it verifying"
    ))
}

fn bolle_two_way() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut both, mut neither) = (0, 0);
    for n in 0..150 {
        let m = 2 + n % 3;
        let hs = random_half_edges(&mut rng, m, 2);
        let map = random_map(&mut rng);
        let polygon = SymPolygon::from_half_edges(&hs.iter().map(|h| apply(&map, h)).collect::<Vec<_>>()).unwrap();
        let lattice = match n % 3 {
            0 => map_lattice(&map, &random_sublattice(&mut rng).0),
            1 => {
                let d = rng.gen_range(1..=3);
                map_lattice(
                    &map,
                    &Lattice2::new(Vec2::new(q(1, d), q(0, 1)), random_sublattice(&mut rng).0.v().clone()).unwrap(),
                )
            }
            _ => {
                let mut e = || q(rng.gen_range(-3..=3), rng.gen_range(1..=2));
                match Lattice2::new(Vec2::new(e(), e()), Vec2::new(e(), e())) {
                    Ok(l) => l,
                    Err(_) => continue,
                }
            }
        };
        let report = bolle_check(&polygon, &lattice);
        let cert = verify_exact(&polygon, &TileMultiset::lattice(lattice.clone())).map_err(|e| e.to_string())?;
        ensure(report.passed == cert.is_verified(), || {
            format!(
                "instance {n}: criterion says {} but verification says {:?}",
                report.passed, cert.status
            )
        })?;
        if report.passed {
            ensure(report.k.clone() == cert.k.map(BigInt::from), || {
                format!("instance {n}: criterion k={:?}, verified k={:?}", report.k, cert.k)
            })?;
            both += 1;
        } else {
            neither += 1;
        }
    }
    ensure(both >= 20 && neither >= 20, || {
        format!("unbalanced sample: {both} passing, {neither} failing")
    })?;
    Ok(format!(
        "{both} lattice tilings confirmed both ways, {neither} non-tilings rejected both ways"
    ))
}

fn fixtures() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut details = Vec::new();
    for (name, expected) in [("square_z2.json", 4), ("hexagon.json", 1)] {
        let inst = parse_instance(&fixture(name)).map_err(|e| e.to_string())?;
        for _ in 0..PROBES {
            let (p, open) = generic_probe(&mut rng, &inst.polygon, &inst.parts, 5);
            ensure(open == expected, || format!("{name}: oracle counts {open} at {p}"))?;
        }
        let cert = verify_exact(&inst.polygon, &inst.parts).map_err(|e| e.to_string())?;
        ensure(cert.k == Some(expected), || format!("{name}: verified {:?}", cert.k))?;
        details.push(format!("{name} k={expected}"));
    }
    let inst = parse_instance(&fixture("square_sparse.json")).map_err(|e| e.to_string())?;
    let cert = verify_exact(&inst.polygon, &inst.parts).map_err(|e| e.to_string())?;
    let Status::NotATiling {
        witness,
        closed,
        open,
        reference,
        reference_open,
    } = &cert.status
    else {
        return Err(format!(
            "square_sparse.json: expected NotATiling, got {:?}",
            cert.status
        ));
    };
    let m = multiplicity_at(&inst.parts, &inst.polygon, witness);
    ensure((m.closed, m.open) == (*closed, *open), || {
        "witness does not reproduce".into()
    })?;
    ensure(
        oracle_counts(&inst.polygon, &inst.parts, witness) == (*closed, *open),
        || "oracle disagrees".into(),
    )?;
    ensure(
        oracle_counts(&inst.polygon, &inst.parts, reference).1 == *reference_open,
        || "reference disagrees".into(),
    )?;
    ensure(
        bolle_check(&inst.polygon, &inst.parts.groups()[0].lattice).k.is_none(),
        || "density should not be an integer".into(),
    )?;
    details.push(format!(
        "square_sparse.json NotATiling at {witness} ({open} vs {reference_open})"
    ));
    Ok(details.join("; "))
}

fn lattice_extraction_end_to_end() -> Outcome {
    let inst = parse_instance(&fixture("sq_irrational_union.json")).map_err(|e| e.to_string())?;
    let source = verify_sampled(&inst.polygon, &inst.parts, 100, 0);
    ensure(source.mode == Mode::Sampled && source.k == Some(8), || {
        format!("sampled gave {:?}", source.k)
    })?;
    let options = PipelineOptions {
        allow_sampled: true,
        ..PipelineOptions::default()
    };
    let outcome = theorem1_pipeline(&inst.polygon, &inst.parts, &source, &options).map_err(|e| e.to_string())?;
    let PipelineOutcome::Certificate(c) = outcome else {
        return Err("no lattice found".into());
    };
    ensure(c.lattice.same_lattice(&Lattice2::integer()), || {
        format!("lattice {}", c.lattice)
    })?;
    ensure(c.beta == BigInt::one() && c.k_lattice == BigInt::from(4), || {
        format!("beta={}, k_lattice={}", c.beta, c.k_lattice)
    })?;
    let confirm = verify_exact(&inst.polygon, &TileMultiset::lattice(c.lattice.clone())).map_err(|e| e.to_string())?;
    ensure(confirm.k == Some(4), || format!("re-verification gave {:?}", confirm.k))?;

    // two lattices meeting in rank one: no exact verification is possible
    let inst = parse_instance(&fixture("square_incommensurable.json")).map_err(|e| e.to_string())?;
    ensure(verify_exact(&inst.polygon, &inst.parts).is_err(), || {
        "expected incommensurable".into()
    })?;
    let source = verify_sampled(&inst.polygon, &inst.parts, 100, 0);
    ensure(source.k == Some(5), || {
        format!("incommensurable union sampled {:?}", source.k)
    })?;
    let PipelineOutcome::Certificate(c2) =
        theorem1_pipeline(&inst.polygon, &inst.parts, &source, &options).map_err(|e| e.to_string())?
    else {
        return Err("no lattice found for the incommensurable union".into());
    };
    ensure(c2.cross_check.is_verified(), || "cross-check failed".into())?;
    Ok(format!(
        "lattice {}, beta={}, k_lattice={} confirmed exactly; incommensurable union k=5 gives {} with k_lattice={}",
        c.lattice, c.beta, c.k_lattice, c2.lattice, c2.k_lattice
    ))
}

fn det_a_properties() -> Outcome {
    for l in 1..=8 {
        let zeros = vec![BigRational::zero(); l];
        let want = if l % 2 == 1 {
            BigRational::zero()
        } else {
            BigRational::one()
        };
        ensure(det_a(&zeros) == want, || {
            format!("l'={l}: det of zeros is {}", det_a(&zeros))
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 0..500 {
        let l = rng.gen_range(1..=8);
        let mut p: Vec<BigRational> = (0..l)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    BigRational::zero()
                } else {
                    BigRational::new(rng.gen_range(0..20).into(), rng.gen_range(1..10).into())
                }
            })
            .collect();
        let i = rng.gen_range(0..l);
        p[i] = BigRational::new(rng.gen_range(1..20).into(), rng.gen_range(1..10).into());
        let d = det_a(&p);
        ensure(d.is_positive(), || format!("vector {n}: det_A{p:?} = {d}"))?;
        if l <= 6 {
            ensure(d == cofactor_det(&sign_matrix(&p)), || {
                format!("vector {n}: cofactor mismatch")
            })?;
        }
    }
    Ok("zero vectors give 0 (odd) / 1 (even) for l' <= 8; 500 random non-negative vectors give det > 0".into())
}

fn structural_properties(verified: &[Verified]) -> Outcome {
    let (mut edges_scanned, mut samples, mut neighbour_checks) = (0, 0, 0);
    for (n, inst) in verified.iter().enumerate() {
        let doubled = inst.polygon.region().minkowski_sum(&inst.polygon.centered().0.region());
        let near = translates_meeting(&inst.x, &inst.polygon, &doubled);
        let mut edges = Vec::new();
        for t in &near {
            for e in inst.polygon.edges() {
                edges.push(multitile::Segment {
                    a: &e.a + t,
                    b: &e.b + t,
                });
            }
        }
        ensure(edges.len() >= 20, || {
            format!("instance {n}: only {} edges near the polygon", edges.len())
        })?;
        for edge in edges.iter().take(24) {
            let scan = normal_point_scan(&inst.x, &inst.polygon, edge, edge).map_err(|e| e.to_string())?;
            for s in &scan.samples {
                ensure(s.n1 == s.n2, || {
                    format!("instance {n}: n1={} n2={} at {}", s.n1, s.n2, s.point)
                })?;
                samples += 1;
            }
            edges_scanned += 1;
        }
        for (_, offset) in inst.x.parts() {
            for i in 0..inst.polygon.m() {
                let r = lemma3_check(&inst.x, &inst.polygon, offset, i).map_err(|e| e.to_string())?;
                ensure(r != Lemma3::Fails, || {
                    format!("instance {n}: edge {} fails at {offset}", i + 1)
                })?;
                neighbour_checks += 1;
            }
        }
    }
    ensure(!verified.is_empty(), || "no verified instances".into())?;
    Ok(format!(
        "{} tilings: n1 = n2 at {samples} normal points on {edges_scanned} edges; {neighbour_checks} neighbour checks hold",
        verified.len()
    ))
}

fn determinism() -> Outcome {
    let sq = parse_instance(&fixture("square_sparse.json")).map_err(|e| e.to_string())?;
    let union = parse_instance(&fixture("square_incommensurable.json")).map_err(|e| e.to_string())?;
    let hex = parse_instance(&fixture("hexagon.json")).map_err(|e| e.to_string())?;
    let golden = fixture("golden/hexagon_w6.svg");
    let run = || {
        let exact = json_report("verify", &verify_exact(&sq.polygon, &sq.parts).unwrap());
        let sampled = json_report("verify", &verify_sampled(&union.polygon, &union.parts, 40, 99));
        let options = RenderOptions {
            color_by_multiplicity: true,
            ..RenderOptions::default()
        };
        let svg = render_svg(&hex.polygon, &hex.parts, &Scalar::from_int(6), &options).unwrap();
        (exact, sampled, svg)
    };
    let first = run();
    ensure(first.2 == golden, || {
        "hexagon render differs from the golden file".into()
    })?;
    ensure(run() == first, || "sequential reruns differ".into())?;
    let parallel: Vec<_> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..4).map(|_| s.spawn(run)).collect();
        handles.into_iter().map(|h| h.join().expect("worker")).collect()
    });
    ensure(parallel.iter().all(|r| *r == first), || "parallel runs differ".into())?;
    Ok(
        "exact and sampled certificates and SVG identical across 2 sequential and 4 parallel runs; golden SVG matches"
            .into(),
    )
}

fn main() {
    let mut verified = Vec::new();
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    let mut run = |name: &'static str, f: &mut dyn FnMut() -> Outcome| {
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        results.push((name, r));
    };
    run("1 oracle equivalence", &mut || oracle_equivalence(&mut verified));
    run("2 lattice criterion both ways", &mut bolle_two_way);
    run("3 fixtures", &mut fixtures);
    run("4 lattice extraction end to end", &mut lattice_extraction_end_to_end);
    run("5 determinant properties", &mut det_a_properties);
    run("6 structural properties", &mut || structural_properties(&verified));
    run("7 determinism", &mut determinism);

    let mut failed = false;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(why) => {
                failed = true;
                println!("[FAIL] {name}: {why}");
            }
        }
    }
    if failed {
        std::process::exit(1);
    }
}
