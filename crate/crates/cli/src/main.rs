#![allow(clippy::result_large_err, clippy::large_enum_variant)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use multitile::report::{bolle_text, certificate_text, error_json, json_report, pipeline_text, tau_star_text};
use multitile::{
    bolle_check, common_sublattice, parse_instance, render_svg, tau_star_search, theorem1_pipeline, verify_exact,
    verify_sampled, Error, Instance, Lattice2, PipelineOptions, PipelineOutcome, RenderOptions, Scalar, Status,
    TauStar, TilingCertificate, Vec2,
};

const SUCCESS: u8 = 0;
const FAILURE: u8 = 1;
const NEGATIVE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "multitile",
    version,
    about = "Exact checks for multiple tilings by centrally symmetric polygons"
)]
struct Cli {
    /// Print machine-readable JSON reports
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Sampling {
    /// Number of random probes for sampled verification
    #[arg(long, default_value_t = 200)]
    probes: usize,
    /// Seed for the probe generator
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the instance is a k-fold tiling
    Verify {
        /// Exact verification (needs commensurable lattices)
        #[arg(long, conflicts_with = "sampled")]
        exact: bool,
        /// Sampled verification
        #[arg(long)]
        sampled: bool,
        #[command(flatten)]
        sampling: Sampling,
        file: PathBuf,
    },
    /// Check the lattice tiling criterion for one lattice
    Bolle {
        /// 1-based index of a lattice of the instance
        #[arg(long, conflicts_with = "basis")]
        lattice_index: Option<usize>,
        /// Lattice basis "u1,u2;v1,v2"
        #[arg(long)]
        basis: Option<String>,
        file: PathBuf,
    },
    /// Extract a lattice tiling from a verified translative tiling
    Construct {
        /// Largest escalation factor tried on top of the computed beta
        #[arg(long, default_value_t = 4)]
        beta_bound: u32,
        /// Accept a sampled (non-conclusive) tiling certificate as input
        #[arg(long)]
        allow_sampled: bool,
        #[command(flatten)]
        sampling: Sampling,
        file: PathBuf,
    },
    /// Search for a lattice tiling of least multiplicity
    TauStar {
        #[arg(long, default_value_t = 2)]
        beta_bound: u32,
        /// Number of candidate generators used
        #[arg(long, default_value_t = 12)]
        gen_bound: usize,
        file: PathBuf,
    },
    /// Draw a patch of the tiling as SVG
    Render {
        #[arg(long)]
        out: PathBuf,
        /// Width of the square window centred at the origin
        #[arg(long, default_value = "4")]
        window: String,
        #[arg(long)]
        color_by_multiplicity: bool,
        #[arg(long, default_value_t = 4000)]
        max_translates: usize,
        file: PathBuf,
    },
    /// Run the built-in fixtures
    Selftest,
}

enum Failure {
    Library(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl Failure {
    fn code(&self) -> &str {
        match self {
            Failure::Library(e) => e.code(),
            Failure::Usage(_) => "USAGE",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Library(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
        }
    }
}

struct Outcome {
    text: String,
    json: String,
    exit: u8,
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_instance(&text).map_err(Error::from)?)
}

fn certificate_exit(c: &TilingCertificate) -> u8 {
    match c.status {
        Status::Verified => SUCCESS,
        _ => NEGATIVE,
    }
}

fn certify(instance: &Instance, exact: bool, sampled: bool, sampling: &Sampling) -> Result<TilingCertificate, Failure> {
    let commensurable = common_sublattice(&instance.parts).is_some();
    if sampled || (!exact && !commensurable) {
        return Ok(verify_sampled(
            &instance.polygon,
            &instance.parts,
            sampling.probes,
            sampling.seed,
        ));
    }
    Ok(verify_exact(&instance.polygon, &instance.parts).map_err(Error::from)?)
}

fn parse_basis(text: &str) -> Result<Lattice2, Failure> {
    let bad = || Failure::Usage(format!("basis {text:?} should look like \"u1,u2;v1,v2\""));
    let vectors: Vec<Vec2> = text
        .split(';')
        .map(|v| {
            let coords: Vec<&str> = v.split(',').collect();
            let [x, y] = coords.as_slice() else {
                return Err(bad());
            };
            let x: Scalar = x.trim().parse().map_err(Error::from)?;
            let y: Scalar = y.trim().parse().map_err(Error::from)?;
            Ok(Vec2::new(x, y))
        })
        .collect::<Result<_, Failure>>()?;
    let [u, v] = <[Vec2; 2]>::try_from(vectors).map_err(|_| bad())?;
    Ok(Lattice2::new(u, v).map_err(Error::from)?)
}

fn verify_command(exact: bool, sampled: bool, sampling: &Sampling, file: &Path) -> Result<Outcome, Failure> {
    let instance = load(file)?;
    let c = certify(&instance, exact, sampled, sampling)?;
    let mut text = certificate_text(&c);
    if let (Some(expected), Some(k)) = (instance.expected_k, c.k) {
        if expected != k as u64 {
            text.push_str(&format!("note: the instance file expects k={expected}\n"));
        }
    }
    Ok(Outcome {
        exit: certificate_exit(&c),
        json: json_report("verify", &c),
        text,
    })
}

fn bolle_command(lattice_index: Option<usize>, basis: Option<&str>, file: &Path) -> Result<Outcome, Failure> {
    let instance = load(file)?;
    let lattice = match basis {
        Some(b) => parse_basis(b)?,
        None => {
            let j = lattice_index.unwrap_or(1);
            let groups = instance.parts.groups();
            if j == 0 || j > groups.len() {
                return Err(Failure::Usage(format!(
                    "lattice index {j} is out of range (the instance has {} lattices)",
                    groups.len()
                )));
            }
            groups[j - 1].lattice.clone()
        }
    };
    let r = bolle_check(&instance.polygon, &lattice);
    Ok(Outcome {
        exit: if r.passed { SUCCESS } else { NEGATIVE },
        json: json_report("bolle", &r),
        text: bolle_text(&r),
    })
}

fn construct_command(
    beta_bound: u32,
    allow_sampled: bool,
    sampling: &Sampling,
    file: &Path,
) -> Result<Outcome, Failure> {
    let instance = load(file)?;
    let source = certify(&instance, false, false, sampling)?;
    let options = PipelineOptions {
        beta_escalation_bound: beta_bound,
        allow_sampled,
    };
    let outcome = theorem1_pipeline(&instance.polygon, &instance.parts, &source, &options).map_err(Error::from)?;
    Ok(Outcome {
        exit: match outcome {
            PipelineOutcome::Certificate(_) => SUCCESS,
            PipelineOutcome::NoLatticeFound(_) => NEGATIVE,
        },
        json: json_report("construct", &outcome),
        text: pipeline_text(&outcome),
    })
}

fn tau_star_command(beta_bound: u32, gen_bound: usize, file: &Path) -> Result<Outcome, Failure> {
    let instance = load(file)?;
    let t = tau_star_search(&instance.polygon, beta_bound, gen_bound);
    Ok(Outcome {
        exit: match t {
            TauStar::Found { .. } => SUCCESS,
            TauStar::NotFoundWithinBounds => NEGATIVE,
        },
        json: json_report("tau-star", &t),
        text: tau_star_text(&t),
    })
}

fn render_command(
    out: &Path,
    window: &str,
    color: bool,
    max_translates: usize,
    file: &Path,
) -> Result<Outcome, Failure> {
    let instance = load(file)?;
    let w: Scalar = window.parse().map_err(Error::from)?;
    let k = if color {
        None
    } else {
        verify_exact(&instance.polygon, &instance.parts).ok().and_then(|c| c.k)
    };
    let options = RenderOptions {
        color_by_multiplicity: color,
        max_translates,
        k,
    };
    let svg = render_svg(&instance.polygon, &instance.parts, &w, &options).map_err(Error::from)?;
    fs::write(out, &svg).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", out.display())))?;
    let summary = format!("wrote {} ({} bytes)", out.display(), svg.len());
    Ok(Outcome {
        exit: SUCCESS,
        json: json_report(
            "render",
            &BTreeMap::from([("out", out.display().to_string()), ("bytes", svg.len().to_string())]),
        ),
        text: summary + "\n",
    })
}

const FIXTURES: [(&str, &str); 4] = [
    ("square_z2", include_str!("../../../fixtures/square_z2.json")),
    ("hexagon", include_str!("../../../fixtures/hexagon.json")),
    ("square_sparse", include_str!("../../../fixtures/square_sparse.json")),
    (
        "sq_irrational_union",
        include_str!("../../../fixtures/sq_irrational_union.json"),
    ),
];

fn selftest() -> Result<Outcome, Failure> {
    let mut lines = Vec::new();
    let mut all = true;
    let mut check = |name: &str, ok: bool, detail: String| {
        all &= ok;
        lines.push(format!("[{}] {name}: {detail}", if ok { "PASS" } else { "FAIL" }));
    };
    for (name, text) in FIXTURES {
        let instance = parse_instance(text).map_err(Error::from)?;
        let c = match verify_exact(&instance.polygon, &instance.parts) {
            Ok(c) => c,
            Err(_) => verify_sampled(&instance.polygon, &instance.parts, 100, 0),
        };
        let ok = match instance.expected_k {
            Some(k) => c.k == Some(k as usize),
            None => matches!(c.status, Status::NotATiling { .. }),
        };
        let got = c.k.map_or("not a tiling".to_string(), |k| format!("k={k}"));
        check(&format!("verify {name}"), ok, got);
    }
    let instance = parse_instance(FIXTURES[3].1).map_err(Error::from)?;
    let source = verify_sampled(&instance.polygon, &instance.parts, 100, 0);
    let options = PipelineOptions {
        allow_sampled: true,
        ..PipelineOptions::default()
    };
    let outcome = theorem1_pipeline(&instance.polygon, &instance.parts, &source, &options).map_err(Error::from)?;
    let (ok, detail) = match &outcome {
        PipelineOutcome::Certificate(c) => (
            c.lattice.same_lattice(&Lattice2::integer()) && c.k_lattice == 4.into(),
            format!("{}, k_lattice={}", c.lattice, c.k_lattice),
        ),
        PipelineOutcome::NoLatticeFound(_) => (false, "no lattice".into()),
    };
    check("construct sq_irrational_union", ok, detail);
    let text = lines.join("\n") + "\n";
    Ok(Outcome {
        exit: if all { SUCCESS } else { NEGATIVE },
        json: json_report("selftest", &lines),
        text,
    })
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Verify {
            exact,
            sampled,
            sampling,
            file,
        } => verify_command(*exact, *sampled, sampling, file),
        Command::Bolle {
            lattice_index,
            basis,
            file,
        } => bolle_command(*lattice_index, basis.as_deref(), file),
        Command::Construct {
            beta_bound,
            allow_sampled,
            sampling,
            file,
        } => construct_command(*beta_bound, *allow_sampled, sampling, file),
        Command::TauStar {
            beta_bound,
            gen_bound,
            file,
        } => tau_star_command(*beta_bound, *gen_bound, file),
        Command::Render {
            out,
            window,
            color_by_multiplicity,
            max_translates,
            file,
        } => render_command(out, window, *color_by_multiplicity, *max_translates, file),
        Command::Selftest => selftest(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", if cli.json { &outcome.json } else { &outcome.text });
            ExitCode::from(outcome.exit)
        }
        Err(failure) => {
            if cli.json {
                print!("{}", error_json(failure.code(), &failure.message()));
            } else {
                eprintln!("error[{}]: {}", failure.code(), failure.message());
            }
            ExitCode::from(FAILURE)
        }
    }
}
