//! `ptekit`: verify, construct, lift and certify Prouhet-Tarry-Escott
//! solutions. Reports go to standard output as JSON, diagnostics to
//! standard error. Exit codes: 0 success, 1 negative result, 2 bad input.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use ptekit::bounds::{check_bound, BoundStatus, DomainSpec};
use ptekit::constructions::{self, default_lat_pairs};
use ptekit::designs::{
    DesignDocument, GroupDivisibleDesign, LatinSquare, OrthogonalArray, TypeIOrthogonalArray,
};
use ptekit::lifting::{self, SignedBase};
use ptekit::oracle::{brute_search, SearchSpec};
use ptekit::pte::DEFAULT_EXHAUSTIVE_LIMIT;
use ptekit::{Linearity, PteInstance, Rational};

#[derive(Parser)]
#[command(name = "ptekit", version, about = "Exact Prouhet-Tarry-Escott solutions from combinatorial designs")]
struct Cli {
    /// Worker threads for parallel verification (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify an instance and optional extra properties.
    Verify {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        /// Comma-separated extra checks.
        #[arg(long, value_enum, value_delimiter = ',')]
        check: Vec<Check>,
        /// Highest degree tried when computing the maximal verified degree.
        #[arg(long, value_name = "CAP")]
        max_degree: Option<u32>,
    },
    /// Build an instance.
    #[command(subcommand)]
    Construct(Construct),
    /// Lift lower-dimensional solutions.
    #[command(subcommand)]
    Lift(Lift),
    /// Check the combinatorial bound on a finite domain.
    Bound {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        /// `hypercube`, `sphere:K`, or `explicit:FILE` (a JSON list of points).
        #[arg(long)]
        domain: String,
        /// Half the degree.
        #[arg(long)]
        t: u32,
        /// Exit 0 only for a tight certificate.
        #[arg(long)]
        require_tight: bool,
    },
    /// Check a design document.
    Design {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
    },
    /// Exhaustive search for small integer solutions, one JSON line each.
    Search {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 2)]
        classes: usize,
        #[arg(long, allow_hyphen_values = true)]
        min: i64,
        #[arg(long, allow_hyphen_values = true)]
        max: i64,
        #[arg(long)]
        limit: Option<usize>,
        /// Merge translates (minimum 0 in every coordinate).
        #[arg(long)]
        translate: bool,
        /// Classes without repeated points.
        #[arg(long)]
        distinct: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Proper,
    Symmetric,
    Linear,
    Ideal,
    Degree,
}

#[derive(Subcommand)]
enum Construct {
    /// Parity halves of {0,1}^3.
    Halving,
    /// Parity halves of {0,1}^r.
    Parity {
        #[arg(long)]
        r: usize,
    },
    /// The two Fano planes on 𝔽_7.
    Fano,
    /// The 4-(23,7,1) design and its reversal.
    Witt,
    /// Two GDDs of type 2^4 on ℤ_8.
    Gddz8,
    /// Residue and non-residue designs for a prime p ≡ 3 (mod 4).
    Paley {
        #[arg(long)]
        p: usize,
    },
    /// Planar recursive doubling of degree k.
    Lat {
        #[arg(long)]
        k: usize,
        /// Comma-separated θ_2..θ_k; chosen automatically if omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta: Option<Vec<Rational>>,
    },
    /// Base-α digit-sum partition of 0..α^{m+1}.
    Prouhet {
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        m: u32,
    },
    /// Six points against six in {0..5}^2, degree 4.
    Nonbinary,
    /// Two disjoint orthogonal arrays (design documents).
    Oa(PairFiles),
    /// Two disjoint group divisible designs (design documents).
    Gdd(PairFiles),
    /// Two disjoint t-designs (design documents).
    Tdesign(PairFiles),
}

#[derive(Args)]
struct PairFiles {
    #[arg(long, value_name = "FILE")]
    a: PathBuf,
    #[arg(long, value_name = "FILE")]
    b: PathBuf,
}

#[derive(Subcommand)]
enum Lift {
    /// Signed substitution into a full-strength orthogonal array.
    Oa(SignedArgs),
    /// Signed substitution into a Type-I orthogonal array.
    Type1(SignedArgs),
    /// Cartesian product over a Latin square.
    Cartesian {
        #[arg(long, value_name = "FILE")]
        s: PathBuf,
        #[arg(long, value_name = "FILE")]
        t: PathBuf,
        /// Latin square design document.
        #[arg(long, value_name = "FILE")]
        latin: PathBuf,
    },
    /// Reduce planar classes to integers.
    Jacroux {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        ns: usize,
    },
    /// The Borwein solutions.
    Borwein {
        #[arg(long, value_parser = ["1", "2", "3"])]
        dim: String,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<Rational>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<Rational>,
        /// For dim 3: a file {"aValues": [...], "bValues": [...]} with triples.
        #[arg(long, value_name = "FILE")]
        triples: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SignedArgs {
    /// Array design document.
    #[arg(long, value_name = "FILE")]
    oa: PathBuf,
    /// {"aValues": [...], "bValues": [...]}
    #[arg(long, value_name = "FILE")]
    base: PathBuf,
    #[arg(long)]
    m: u32,
}

/// Text to emit and the exit code.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn new(value: &impl Serialize, success: bool) -> anyhow::Result<Self> {
        Ok(Output {
            text: serde_json::to_string(value)? + "\n",
            code: if success { 0 } else { 1 },
        })
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_instance(path: &Path) -> anyhow::Result<PteInstance> {
    PteInstance::from_json(&read(path)?).with_context(|| format!("invalid instance in {}", path.display()))
}

fn read_design(path: &Path) -> anyhow::Result<DesignDocument> {
    DesignDocument::from_json(&read(path)?).with_context(|| format!("invalid design in {}", path.display()))
}

fn read_oa(path: &Path) -> anyhow::Result<OrthogonalArray> {
    match read_design(path)? {
        DesignDocument::Oa { params, rows } => Ok(OrthogonalArray::new(rows, params.strength)?),
        _ => bail!("{} is not an \"oa\" document", path.display()),
    }
}

fn read_type1(path: &Path) -> anyhow::Result<TypeIOrthogonalArray> {
    match read_design(path)? {
        DesignDocument::Type1Oa { params, rows } => Ok(TypeIOrthogonalArray::new(rows, params.strength)?),
        _ => bail!("{} is not a \"type1oa\" document", path.display()),
    }
}

fn read_gdd(path: &Path) -> anyhow::Result<GroupDivisibleDesign> {
    match read_design(path)? {
        DesignDocument::Gdd { params, blocks } => Ok(match params.groups {
            Some(groups) => GroupDivisibleDesign::new(params.point_count, groups, blocks, params.strength, params.index)?,
            None => GroupDivisibleDesign::t_design(params.point_count, blocks, params.strength, params.index)?,
        }),
        _ => bail!("{} is not a \"gdd\" document", path.display()),
    }
}

fn read_base(path: &Path) -> anyhow::Result<SignedBase> {
    let raw: SignedBase = serde_json::from_str(&read(path)?)
        .with_context(|| format!("invalid base in {}", path.display()))?;
    Ok(SignedBase::new(raw.a_values, raw.b_values)?)
}

fn verify(input: &Path, checks: &[Check], max_degree: Option<u32>) -> anyhow::Result<Output> {
    let inst = read_instance(input)?;
    let report = inst.verify();
    let mut ok = report.holds;
    let mut extra = serde_json::Map::new();
    for check in checks {
        let (key, value, passed) = match check {
            Check::Proper => {
                let p = inst.is_proper();
                extra.insert("classRanks".into(), json!(inst.class_ranks()));
                ("proper", json!(p), p)
            }
            Check::Symmetric => {
                let s = inst.is_symmetric();
                ("symmetric", json!(s), s)
            }
            Check::Linear => {
                let l = inst.is_linear(Some(DEFAULT_EXHAUSTIVE_LIMIT));
                let found = matches!(l, Linearity::Subset(_));
                ("linear", serde_json::to_value(&l)?, found)
            }
            Check::Ideal => {
                let i = inst.is_ideal();
                ("ideal", json!(i), i)
            }
            Check::Degree => continue,
        };
        extra.insert(key.into(), value);
        ok &= passed;
    }
    if checks.contains(&Check::Degree) || max_degree.is_some() {
        let cap = max_degree.unwrap_or(inst.degree() + 4);
        extra.insert("maxVerifiedDegree".into(), json!(inst.max_verified_degree(cap)));
    }
    let mut value = serde_json::to_value(&report)?;
    value.as_object_mut().expect("report is an object").extend(extra);
    Output::new(&value, ok)
}

fn construct(which: Construct) -> anyhow::Result<Output> {
    let inst = match which {
        Construct::Halving => constructions::halving()?,
        Construct::Parity { r } => constructions::parity(r)?,
        Construct::Fano => constructions::fano()?,
        Construct::Witt => constructions::witt()?,
        Construct::Gddz8 => constructions::gdd_z8()?,
        Construct::Paley { p } => {
            let (inst, cert) = constructions::paley_tight(p)?;
            eprintln!("certificate: {}", serde_json::to_string(&cert)?);
            inst
        }
        Construct::Lat { k, theta } => {
            let pairs = default_lat_pairs(k.max(2));
            let (inst, generator) = constructions::lat_construction(&pairs, k, theta.as_deref())?;
            eprintln!("generator: {}", serde_json::to_string(&generator)?);
            inst
        }
        Construct::Prouhet { alpha, m } => constructions::prouhet_partition(alpha, m)?,
        Construct::Nonbinary => constructions::nonbinary()?,
        Construct::Oa(f) => constructions::oa_to_pte(&read_oa(&f.a)?, &read_oa(&f.b)?)?,
        Construct::Gdd(f) => constructions::gdd_to_pte(&read_gdd(&f.a)?, &read_gdd(&f.b)?)?,
        Construct::Tdesign(f) => constructions::tdesign_to_pte(&read_gdd(&f.a)?, &read_gdd(&f.b)?)?,
    };
    Output::new(&inst, true)
}

fn lift(which: Lift) -> anyhow::Result<Output> {
    let inst = match which {
        Lift::Oa(a) => lifting::oa_lift(&read_oa(&a.oa)?, &read_base(&a.base)?, a.m)?,
        Lift::Type1(a) => {
            let inst = lifting::type1_oa_lift(&read_type1(&a.oa)?, &read_base(&a.base)?, a.m)?;
            eprintln!("class ranks: {:?}", inst.class_ranks());
            inst
        }
        Lift::Cartesian { s, t, latin } => {
            let square = match read_design(&latin)? {
                DesignDocument::Latin { grid, .. } => LatinSquare::new(grid)?,
                _ => bail!("{} is not a \"latin\" document", latin.display()),
            };
            let inst = lifting::cartesian_lift(&read_instance(&s)?, &read_instance(&t)?, &square)?;
            eprintln!("class ranks: {:?}", inst.class_ranks());
            inst
        }
        Lift::Jacroux { input, alpha, ns } => lifting::jacroux_reduce(&read_instance(&input)?, alpha, ns)?,
        Lift::Borwein { dim, a, b, triples } => match (dim.as_str(), a, b, triples) {
            ("3", None, None, Some(path)) => {
                let raw: SignedBase = serde_json::from_str(&read(&path)?)
                    .with_context(|| format!("invalid triples in {}", path.display()))?;
                let triple = |v: Vec<Rational>| -> anyhow::Result<[Rational; 3]> {
                    v.try_into().map_err(|_| anyhow!("triples must have exactly three values"))
                };
                lifting::borwein3d(&triple(raw.a_values)?, &triple(raw.b_values)?)?
            }
            (d, Some(a), Some(b), None) => match d {
                "1" => lifting::borwein1d(&a, &b)?,
                "2" => lifting::borwein2d(&a, &b)?,
                _ => {
                    let (x, y) = lifting::borwein_values(&a, &b);
                    lifting::borwein3d(&x, &y)?
                }
            },
            _ => bail!("give either --a and --b, or (for --dim 3) --triples"),
        },
    };
    Output::new(&inst, true)
}

fn parse_domain(text: &str, r: usize) -> anyhow::Result<DomainSpec> {
    let (kind, arg) = text.split_once(':').unwrap_or((text, ""));
    Ok(match (kind, arg) {
        ("hypercube", "") => DomainSpec::hypercube(r)?,
        ("sphere", k) => DomainSpec::sphere(r, k.parse().with_context(|| format!("bad sphere weight `{k}`"))?)?,
        ("explicit", file) if !file.is_empty() => {
            let points: Vec<Vec<Rational>> = serde_json::from_str(&read(Path::new(file))?)
                .with_context(|| format!("invalid point list in {file}"))?;
            DomainSpec::explicit(points)?
        }
        _ => bail!("unknown domain `{text}`; use hypercube, sphere:K or explicit:FILE"),
    })
}

fn bound(input: &Path, domain: &str, t: u32, require_tight: bool) -> anyhow::Result<Output> {
    let inst = read_instance(input)?;
    let spec = parse_domain(domain, inst.dimension())?;
    let cert = check_bound(&inst, &spec, t)?;
    let ok = cert.bound_holds == BoundStatus::Holds && (!require_tight || cert.tight);
    Output::new(&cert, ok)
}

fn design(input: &Path) -> anyhow::Result<Output> {
    let report = read_design(input)?.check()?;
    let valid = report.valid;
    Output::new(&report, valid)
}

#[allow(clippy::too_many_arguments)]
fn search(
    dim: usize,
    degree: u32,
    size: usize,
    classes: usize,
    min: i64,
    max: i64,
    limit: Option<usize>,
    translate: bool,
    distinct: bool,
) -> anyhow::Result<Output> {
    let spec = SearchSpec {
        dimension: dim,
        degree,
        size,
        class_count: classes,
        lo: min,
        hi: max,
        translate,
        distinct,
    };
    let outcome = brute_search(&spec, limit)?;
    eprintln!(
        "{} candidates, {} solutions, {} shown",
        outcome.candidates,
        outcome.total,
        outcome.instances.len()
    );
    let text: String = outcome.instances.iter().map(|i| i.to_json() + "\n").collect();
    Ok(Output {
        text,
        code: if outcome.total > 0 { 0 } else { 1 },
    })
}

fn run(cli: Cli) -> anyhow::Result<Output> {
    match cli.command {
        Command::Verify { input, check, max_degree } => verify(&input, &check, max_degree),
        Command::Construct(c) => construct(c),
        Command::Lift(l) => lift(l),
        Command::Bound { input, domain, t, require_tight } => bound(&input, &domain, t, require_tight),
        Command::Design { input } => design(&input),
        Command::Search { dim, degree, size, classes, min, max, limit, translate, distinct } => {
            search(dim, degree, size, classes, min, max, limit, translate, distinct)
        }
    }
}

/// Failed re-verification is a negative result; everything else is bad input.
fn error_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<ptekit::Error>() {
        Some(ptekit::Error::VerificationFailed(_)) => 1,
        _ => 2,
    }
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = cli.out.clone();
    match run(cli) {
        Ok(output) => match emit(out.as_deref(), &output.text) {
            Ok(()) => ExitCode::from(output.code),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}
