use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use thickem::families::FamilySpec;
use thickem::formats;
use thickem::output::{
    CertifyOutput, CrossingOutput, EmbedOutput, ErrorOutput, LinkOutput, NetOutput,
    SubdivisionMapJson,
};
use thickem::study::{
    records_csv, records_jsonl, run_scaling_study, StudyConfig, StudyFamily, TSubdiv,
};
use thickem_core::embedder::{crossing_profile, run_pipeline, PipelineParams};
use thickem_core::geometry::{link_embedding, link_thickness, thickness_report};
use thickem_core::net::{greedy_net, MetricSample};
use thickem_core::subdivision::{edgewise_subdivide, subdivide_embedding};

/// Construct, perturb, and certify thick piecewise-linear embeddings of
/// simplicial complexes.
#[derive(Parser)]
#[command(name = "thickem", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full embedding pipeline on an SCX complex.
    Embed(EmbedArgs),
    /// Measure and certify an EMB embedding.
    Certify(CertifyArgs),
    /// Edgewise-subdivide a complex (SCX) or an embedding (EMB).
    Subdivide(SubdivideArgs),
    /// Compute the spherical link of a simplex in an EMB embedding.
    Link(LinkArgs),
    /// Build a greedy epsilon-net over the graph-geodesic metric of a mesh.
    Net(NetArgs),
    /// Run a seeded radius/crossing scaling study.
    ScaleStudy(ScaleStudyArgs),
    /// Ball-crossing statistics of an embedding.
    Crossing(CrossingArgs),
}

#[derive(Args)]
struct EmbedArgs {
    /// Input complex (SCX). Mutually exclusive with --family.
    #[arg(long, conflicts_with = "family")]
    complex: Option<PathBuf>,
    /// Generate the input instead: cycle:V, rrg:V:D, torus:A:B, icosphere:L.
    #[arg(long)]
    family: Option<FamilySpec>,
    #[arg(long)]
    ambient: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    alpha0: f64,
    /// Edgewise subdivision parameter.
    #[arg(long, default_value_t = 1)]
    subdiv: usize,
    /// Perturbation radius (default: edge_min of the subdivided complex / 4).
    #[arg(long)]
    tau: Option<f64>,
    /// Placement sphere radius (default: V^(1/(n-k))).
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long, default_value_t = 16)]
    budget: usize,
    #[arg(long, default_value_t = 200)]
    crossing_samples: usize,
    /// Crossing-profile ball radius (default: edge_min / 10 of the final
    /// embedding).
    #[arg(long)]
    crossing_radius: Option<f64>,
    /// Pipeline report (JSON).
    #[arg(long)]
    out: PathBuf,
    /// Also write the final embedding (EMB).
    #[arg(long)]
    emb_out: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    embedding: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct SubdivideArgs {
    /// Input complex (SCX); output is SCX.
    #[arg(long, conflicts_with = "embedding")]
    complex: Option<PathBuf>,
    /// Input embedding (EMB); output is EMB.
    #[arg(long)]
    embedding: Option<PathBuf>,
    /// Subdivision parameter t.
    #[arg(long)]
    param: usize,
    #[arg(long)]
    out: PathBuf,
    /// Also write the subdivision map (JSON).
    #[arg(long)]
    map_out: Option<PathBuf>,
}

#[derive(Args)]
struct LinkArgs {
    #[arg(long)]
    embedding: PathBuf,
    /// Base simplex, comma-separated vertex ids (e.g. `0,3`).
    #[arg(long)]
    simplex: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct NetArgs {
    /// Mesh as an EMB file; distances are graph geodesics on the 1-skeleton.
    #[arg(long)]
    mesh: PathBuf,
    #[arg(long)]
    epsilon: f64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ScaleStudyArgs {
    /// `cycle` or `rrg:D`.
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 3)]
    ambient: usize,
    /// Comma-separated vertex counts, e.g. `64,128,256`.
    #[arg(long)]
    v_grid: String,
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    /// Subdivision parameter: `auto` or a fixed integer.
    #[arg(long, default_value = "auto")]
    t_subdiv: String,
    #[arg(long, default_value_t = 0.5)]
    alpha0: f64,
    #[arg(long, default_value_t = 12)]
    budget: usize,
    #[arg(long, default_value_t = 64)]
    crossing_samples: usize,
    /// Directory receiving records.csv, records.jsonl, summary.json.
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct CrossingArgs {
    #[arg(long)]
    embedding: PathBuf,
    /// Ball radius (default: edge_min / 10).
    #[arg(long)]
    ball_radius: Option<f64>,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

enum CliError {
    /// Exit 1: domain/runtime failures.
    Runtime(String),
    /// Exit 2: bad invocations and malformed/mismatched input schemas.
    Usage(String),
    /// Exit 3: filesystem failures.
    Io(String),
}

impl From<thickem_core::Error> for CliError {
    fn from(e: thickem_core::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<formats::FormatError> for CliError {
    fn from(e: formats::FormatError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Relative output paths land under $THICKEM_OUT_DIR when it is set.
fn out_path(p: &Path) -> PathBuf {
    if p.is_relative() {
        if let Ok(dir) = std::env::var("THICKEM_OUT_DIR") {
            if !dir.is_empty() {
                return PathBuf::from(dir).join(p);
            }
        }
    }
    p.to_path_buf()
}

fn read_file(p: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("reading {}: {}", p.display(), e)))
}

fn write_file(p: &Path, contents: &str) -> Result<(), CliError> {
    let p = out_path(p);
    if let Some(parent) = p.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| CliError::Io(format!("creating {}: {}", parent.display(), e)))?;
        }
    }
    std::fs::write(&p, contents)
        .map_err(|e| CliError::Io(format!("writing {}: {}", p.display(), e)))
}

fn write_json<T: serde::Serialize>(p: &Path, value: &T) -> Result<(), CliError> {
    let mut body = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Runtime(format!("serializing output: {}", e)))?;
    body.push('\n');
    write_file(p, &body)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Embed(args) => {
            let x = match (&args.complex, &args.family) {
                (Some(path), None) => formats::parse_scx(&read_file(path)?)?,
                (None, Some(spec)) => thickem::families::generate_family(spec, args.seed)?,
                _ => {
                    return Err(CliError::Usage(String::from(
                        "exactly one of --complex or --family is required",
                    )))
                }
            };
            let params = PipelineParams {
                ambient_dim: args.ambient,
                radius: args.radius,
                alpha0: args.alpha0,
                max_resample_rounds: 20_000,
                rng_seed: args.seed,
                t_subdiv: args.subdiv,
                tau: args.tau,
                perturb_budget: args.budget,
                crossing_samples: args.crossing_samples,
                crossing_radius: args.crossing_radius,
            };
            let res = run_pipeline(&x, &params)?;
            write_json(&args.out, &EmbedOutput::new(&res))?;
            if let Some(emb_out) = &args.emb_out {
                write_file(emb_out, &formats::write_emb(&res.embedding))?;
            }
            Ok(())
        }
        Command::Certify(args) => {
            let e = formats::parse_emb(&read_file(&args.embedding)?)?;
            let report = thickness_report(&e)?;
            write_json(&args.out, &CertifyOutput::new(report))
        }
        Command::Subdivide(args) => match (&args.complex, &args.embedding) {
            (Some(path), None) => {
                let x = formats::parse_scx(&read_file(path)?)?;
                let map = edgewise_subdivide(&x, args.param)?;
                write_file(&args.out, &formats::write_scx(&map.child))?;
                if let Some(map_out) = &args.map_out {
                    write_json(map_out, &SubdivisionMapJson::new(&map))?;
                }
                Ok(())
            }
            (None, Some(path)) => {
                let e = formats::parse_emb(&read_file(path)?)?;
                let (child, map) = subdivide_embedding(&e, args.param)?;
                write_file(&args.out, &formats::write_emb(&child))?;
                if let Some(map_out) = &args.map_out {
                    write_json(map_out, &SubdivisionMapJson::new(&map))?;
                }
                Ok(())
            }
            _ => Err(CliError::Usage(String::from(
                "exactly one of --complex or --embedding is required",
            ))),
        },
        Command::Link(args) => {
            let e = formats::parse_emb(&read_file(&args.embedding)?)?;
            let sigma: Vec<usize> = args
                .simplex
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| CliError::Usage(format!("bad vertex id `{}` in --simplex", t)))
                })
                .collect::<Result<_, _>>()?;
            let link = link_embedding(&e, &sigma)?;
            let thickness = link_thickness(&link)?;
            write_json(&args.out, &LinkOutput::new(&link, &thickness))
        }
        Command::Net(args) => {
            let e = formats::parse_emb(&read_file(&args.mesh)?)?;
            let sample = MetricSample::from_mesh(&e)?;
            let net = greedy_net(&sample, args.epsilon)?;
            write_json(
                &args.out,
                &NetOutput {
                    schema_version: thickem::output::SCHEMA_VERSION,
                    point_count: sample.point_count(),
                    net,
                },
            )
        }
        Command::ScaleStudy(args) => {
            let family =
                StudyFamily::parse(&args.family).map_err(CliError::Usage)?;
            let v_grid: Vec<usize> = args
                .v_grid
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| CliError::Usage(format!("bad vertex count `{}` in --v-grid", t)))
                })
                .collect::<Result<_, _>>()?;
            let t_subdiv = if args.t_subdiv == "auto" {
                TSubdiv::Auto
            } else {
                TSubdiv::Fixed(args.t_subdiv.parse().map_err(|_| {
                    CliError::Usage(format!("bad --t-subdiv `{}` (expected `auto` or integer)", args.t_subdiv))
                })?)
            };
            let mut config = StudyConfig::new(family, args.ambient, v_grid, args.seeds);
            config.t_subdiv = t_subdiv;
            config.alpha0 = args.alpha0;
            config.perturb_budget = args.budget;
            config.crossing_samples = args.crossing_samples;
            let study = run_scaling_study(&config)?;
            write_file(&args.out_dir.join("records.csv"), &records_csv(&study.records))?;
            write_file(&args.out_dir.join("records.jsonl"), &records_jsonl(&study.records))?;
            let mut summary = study.clone();
            summary.records.clear();
            write_json(&args.out_dir.join("summary.json"), &summary)
        }
        Command::Crossing(args) => {
            let e = formats::parse_emb(&read_file(&args.embedding)?)?;
            let profile = crossing_profile(&e, args.ball_radius, args.samples, args.seed);
            write_json(
                &args.out,
                &CrossingOutput { schema_version: thickem::output::SCHEMA_VERSION, profile },
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{}", e);
                return ExitCode::SUCCESS;
            }
            eprintln!(
                "{}",
                serde_json::to_string(&ErrorOutput::new("usage", e.to_string())).unwrap()
            );
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let (kind, message, code) = match err {
                CliError::Runtime(m) => ("runtime", m, 1),
                CliError::Usage(m) => ("usage", m, 2),
                CliError::Io(m) => ("io", m, 3),
            };
            eprintln!(
                "{}",
                serde_json::to_string(&ErrorOutput::new(kind, message)).unwrap()
            );
            ExitCode::from(code)
        }
    }
}
