#![allow(clippy::type_complexity)]

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use building_core::corpus::{self, NegativeKind, Rank2Kind};
use building_core::coxeter::{CoxeterMatrix, FormType};
use building_core::decompose::{euclidean_hints, join_decompose};
use building_core::geodesic::{extend_geodesic, geodesic_between, propagate_apartment, Between, GeodesicLab, PropagationFailure};
use building_core::graph::MetricGraph;
use building_core::recognize::{outcome, recognize, BoundaryPolicy, Outcome};
use building_core::report::CheckReport;
use building_core::{Angle, Budgets, Error, Geometry, MetricComplex};

const EXIT_OK: u8 = 0;
const EXIT_DIAGNOSED: u8 = 1;
const EXIT_UNDECIDED: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "buildctl", version, about = "Recognize, certify and diagnose metric buildings")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    report: Format,
    /// Write output to a file instead of stdout.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an example complex as JSON.
    #[command(subcommand)]
    Gen(Gen),
    /// Check that a complex file is well formed and realizable.
    Validate { file: PathBuf },
    /// Run recognition and print a report.
    Check {
        #[arg(required_unless_present = "all")]
        file: Option<PathBuf>,
        /// Check every `.json` file in a directory.
        #[arg(long, value_name = "DIR", conflicts_with = "file")]
        all: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = GeometryArg::Auto)]
        geometry: GeometryArg,
        #[arg(long, value_enum, default_value_t = BoundaryArg::Window)]
        boundary: BoundaryArg,
    },
    /// Metric graph queries on a 1-dimensional complex.
    Graph {
        #[arg(value_enum)]
        op: GraphOp,
        file: PathBuf,
        /// Base point for `antipodes`: a vertex name or `e:t`.
        #[arg(long)]
        point: Option<String>,
    },
    /// Coxeter matrices: a JSON file or a type name such as `A3` or `~A2`.
    Coxeter {
        #[arg(value_enum)]
        op: CoxeterOp,
        input: String,
        /// Window radius for Euclidean types.
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Extend a geodesic from a vertex, or find one between two vertices.
    Geodesic {
        file: PathBuf,
        #[arg(long)]
        from: String,
        /// Initial direction: a link point (`e:i@t` or a link vertex).
        #[arg(long)]
        dir: Option<String>,
        /// Target vertex.
        #[arg(long)]
        to: Option<String>,
        #[arg(long)]
        len: Option<String>,
    },
    /// Build an apartment by sweeping geodesics over a circle of a vertex link.
    Apartment {
        file: PathBuf,
        #[arg(long)]
        from: String,
        /// Link vertices of the circle, in order.
        #[arg(long, num_args = 2.., required = true)]
        cycle: Vec<String>,
        /// Opposite vertex; found by shooting if omitted.
        #[arg(long)]
        to: Option<String>,
    },
    /// Join factors of a spherical building, or link factor hints of a
    /// Euclidean one.
    Decompose {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = BoundaryArg::Window)]
        boundary: BoundaryArg,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Incidence graph of the projective plane of order q.
    ProjectivePlane {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value = "pi/3")]
        length: String,
    },
    /// Incidence graph of the generalized quadrangle of order q.
    Quadrangle {
        #[arg(long, default_value_t = 2)]
        q: u32,
        #[arg(long, default_value = "pi/4")]
        length: String,
    },
    /// Complete bipartite graph K(s,t), a generalized digon
    CompleteBipartite {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "pi/2")]
        length: String,
    },
    /// A negative control.
    Negative { kind: String },
    /// Coxeter complex of a spherical type.
    Coxeter { name: String },
    /// Window of a Euclidean Coxeter complex.
    Window {
        name: String,
        #[arg(long, default_value_t = 3)]
        radius: usize,
    },
    /// A named example (see `--list`).
    Example {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Orthogonal join of two complex files.
    Join { a: PathBuf, b: PathBuf },
    /// Suspension of a complex file.
    Suspension { file: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeometryArg {
    Auto,
    Spherical,
    Euclidean,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundaryArg {
    Window,
    Strict,
}

impl From<BoundaryArg> for BoundaryPolicy {
    fn from(b: BoundaryArg) -> Self {
        match b {
            BoundaryArg::Window => BoundaryPolicy::Window,
            BoundaryArg::Strict => BoundaryPolicy::Strict,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphOp {
    Diameter,
    Systole,
    Antipodes,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoxeterOp {
    Classify,
    Complex,
}

/// Text and JSON renderings of a command result.
struct Output {
    json: String,
    text: String,
    code: u8,
}

impl Output {
    fn ok<T: Serialize>(value: &T, text: String) -> Self {
        Output { json: pretty(value), text, code: EXIT_OK }
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    let budgets = match std::env::var("BUILDCTL_BUDGETS") {
        Ok(s) if !s.trim().is_empty() => match Budgets::from_json(&s) {
            Ok(b) => b,
            Err(e) => {
                eprintln!("buildctl: BUILDCTL_BUDGETS: {e}");
                return ExitCode::from(EXIT_INPUT);
            }
        },
        _ => Budgets::default(),
    };
    let out = match run(&cli, &budgets) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("buildctl: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    };
    let mut body = match cli.report {
        Format::Json => out.json,
        Format::Text => out.text,
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                eprintln!("buildctl: {}: {e}", path.display());
                return ExitCode::from(EXIT_INPUT);
            }
        }
        None => print!("{body}"),
    }
    ExitCode::from(out.code)
}

fn load(path: &Path) -> Result<MetricComplex, Error> {
    let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    MetricComplex::from_json(&s)
}

fn parse_angle(s: &str) -> Result<Angle, Error> {
    s.parse()
}

fn run(cli: &Cli, budgets: &Budgets) -> Result<Output, Error> {
    match &cli.cmd {
        Cmd::Gen(g) => generate(g),
        Cmd::Validate { file } => {
            let c = load(file)?;
            let r = c.validate();
            let text = if r.is_valid() {
                format!("valid: dimension {}, {} vertices, {} cells", c.dimension(), c.vertex_count(), c.top_cells().len())
            } else {
                format!("invalid:\n{}", pretty(&r.issues))
            };
            Ok(Output { json: pretty(&r), text, code: if r.is_valid() { EXIT_OK } else { EXIT_DIAGNOSED } })
        }
        Cmd::Check { file, all, geometry, boundary } => match (file, all) {
            (Some(f), _) => {
                let (report, code) = check_file(f, *geometry, (*boundary).into(), budgets)?;
                Ok(Output { json: report.to_json(), text: report.to_text(), code })
            }
            (None, Some(dir)) => check_all(dir, *geometry, (*boundary).into(), budgets),
            (None, None) => Err(Error::Parse("check needs a file or --all".into())),
        },
        Cmd::Graph { op, file, point } => graph(*op, file, point.as_deref()),
        Cmd::Coxeter { op, input, radius } => coxeter(*op, input, *radius),
        Cmd::Geodesic { file, from, dir, to, len } => {
            geodesic(file, from, dir.as_deref(), to.as_deref(), len.as_deref(), budgets)
        }
        Cmd::Apartment { file, from, cycle, to } => apartment(file, from, cycle, to.as_deref(), budgets),
        Cmd::Decompose { file, boundary } => decompose(file, (*boundary).into(), budgets),
    }
}

fn generate(g: &Gen) -> Result<Output, Error> {
    let c = match g {
        Gen::ProjectivePlane { q, length } => {
            corpus::rank2_building(Rank2Kind::ProjectivePlane { q: *q }, parse_angle(length)?)?.to_complex()?
        }
        Gen::Quadrangle { q, length } => {
            corpus::rank2_building(Rank2Kind::GeneralizedQuadrangle { q: *q }, parse_angle(length)?)?.to_complex()?
        }
        Gen::CompleteBipartite { s, t, length } => {
            corpus::rank2_building(Rank2Kind::CompleteBipartite { s: *s, t: *t }, parse_angle(length)?)?
                .to_complex()?
        }
        Gen::Negative { kind } => corpus::negative(kind.parse::<NegativeKind>()?)?,
        Gen::Coxeter { name } => corpus::coxeter_complex(name)?,
        Gen::Window { name, radius } => corpus::euclidean_window(name, *radius)?,
        Gen::Example { name, list } => {
            if *list || name.is_none() {
                return Ok(Output::ok(&corpus::NAMED, corpus::NAMED.join("\n")));
            }
            corpus::named(name.as_deref().expect("name"))?
        }
        Gen::Join { a, b } => load(a)?.join(&load(b)?)?,
        Gen::Suspension { file } => load(file)?.suspension()?,
    };
    let json = c.to_json_pretty();
    Ok(Output { text: json.clone(), json, code: EXIT_OK })
}

fn check_complex(
    c: &MetricComplex,
    geometry: GeometryArg,
    policy: BoundaryPolicy,
    budgets: &Budgets,
) -> Result<(CheckReport, u8), Error> {
    let want = match geometry {
        GeometryArg::Auto => None,
        GeometryArg::Spherical => Some(Geometry::Spherical),
        GeometryArg::Euclidean => Some(Geometry::Euclidean),
    };
    if let Some(g) = want {
        if g != c.geometry() {
            return Err(Error::Geometry(format!("file is {:?}, --geometry asks for {g:?}", c.geometry())));
        }
    }
    let r = recognize(c, policy, budgets)?;
    let code = match outcome(&r) {
        Outcome::Certified => EXIT_OK,
        Outcome::Diagnosed => EXIT_DIAGNOSED,
        Outcome::Undecided => EXIT_UNDECIDED,
    };
    Ok((CheckReport::new(&r), code))
}

fn check_file(
    path: &Path,
    geometry: GeometryArg,
    policy: BoundaryPolicy,
    budgets: &Budgets,
) -> Result<(CheckReport, u8), Error> {
    let (r, code) = check_complex(&load(path)?, geometry, policy, budgets)?;
    Ok((r.with_file(path.display().to_string()), code))
}

/// Checks every `.json` file in `dir` in name order; the exit code is the
/// largest per-file code.
fn check_all(dir: &Path, geometry: GeometryArg, policy: BoundaryPolicy, budgets: &Budgets) -> Result<Output, Error> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let results: Vec<(PathBuf, Result<(CheckReport, u8), Error>)> = std::thread::scope(|s| {
        let handles: Vec<_> = files
            .iter()
            .map(|f| (f.clone(), s.spawn(move || check_file(f, geometry, policy, budgets))))
            .collect();
        handles
            .into_iter()
            .map(|(f, h)| {
                let r = h.join().unwrap_or_else(|_| Err(Error::Parse("check panicked".into())));
                (f, r)
            })
            .collect()
    });
    let mut code = EXIT_OK;
    let mut json = vec![];
    let mut text = String::new();
    for (f, r) in results {
        match r {
            Ok((report, c)) => {
                code = code.max(c);
                text.push_str(&report.to_text());
                json.push(serde_json::to_value(&report).expect("report"));
            }
            Err(e) => {
                code = EXIT_INPUT;
                text.push_str(&format!("file: {}\nerror: {e}\n", f.display()));
                json.push(json!({ "schema": 1, "file": f.display().to_string(), "error": e.to_string() }));
            }
        }
        text.push('\n');
    }
    Ok(Output { json: pretty(&json), text, code })
}

fn graph(op: GraphOp, file: &Path, point: Option<&str>) -> Result<Output, Error> {
    let g = MetricGraph::from_complex(&load(file)?)?;
    match op {
        GraphOp::Diameter => {
            let d = g.diameter().ok_or_else(|| Error::Precondition("graph is disconnected or empty".into()))?;
            let (p, q) = (g.describe(&d.witness.0), g.describe(&d.witness.1));
            let text = format!("diameter: {} between {p} and {q}", d.value);
            Ok(Output::ok(&json!({ "diameter": d.value, "radians": d.value.radians(), "witness": [p, q] }), text))
        }
        GraphOp::Systole => {
            let s = g.systole();
            let vertices: Vec<&str> = s.cycle_vertices.iter().map(|&v| g.name(v)).collect();
            let text = match s.length {
                Some(l) => format!("systole: {l} along {}", vertices.join(" ")),
                None => "systole: none (forest)".into(),
            };
            let value = json!({
                "systole": s.length,
                "radians": s.length.map(|l| l.radians()),
                "cycle": vertices,
            });
            Ok(Output::ok(&value, text))
        }
        GraphOp::Antipodes => {
            let p = match point {
                Some(s) => g.parse_point(s)?,
                None => building_core::graph::GraphPoint::vertex(0),
            };
            let a = g.antipode_set(&p);
            let points: Vec<String> = a.points.iter().map(|q| g.describe(q)).collect();
            let text = format!(
                "antipodes of {}: {}{}",
                g.describe(&p),
                if points.is_empty() { "none".to_string() } else { points.join(" ") },
                if a.discrete { "" } else { " (not discrete)" }
            );
            let value = json!({
                "point": g.describe(&p),
                "points": points,
                "intervals": a.intervals,
                "discrete": a.discrete,
                "nonempty": a.nonempty,
            });
            Ok(Output::ok(&value, text))
        }
    }
}

fn coxeter_input(input: &str) -> Result<CoxeterMatrix, Error> {
    let path = Path::new(input);
    if path.exists() {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{input}: {e}")))?;
        CoxeterMatrix::from_json(&s)
    } else {
        CoxeterMatrix::named(input)
    }
}

fn coxeter(op: CoxeterOp, input: &str, radius: usize) -> Result<Output, Error> {
    let m = coxeter_input(input)?;
    match op {
        CoxeterOp::Classify => {
            let c = m.classify();
            let text = format!(
                "type: {}\nform: {:?}\norder: {}\neigenvalues: {:?}\ndeterminant: {:e}",
                m.type_name(),
                c.verdict,
                c.group_order.map_or("infinite".to_string(), |o| o.to_string()),
                c.eigenvalues,
                c.determinant
            );
            Ok(Output::ok(&json!({ "type": m.type_name(), "classification": c }), text))
        }
        CoxeterOp::Complex => {
            let c = match m.classify().verdict {
                FormType::Spherical => m.coxeter_complex()?.complex,
                FormType::Euclidean => m.euclidean_window(radius)?.complex,
                _ => return Err(Error::Coxeter("only spherical and Euclidean types have complexes".into())),
            };
            let json = c.to_json_pretty();
            Ok(Output { text: json.clone(), json, code: EXIT_OK })
        }
    }
}

fn geodesic(
    file: &Path,
    from: &str,
    dir: Option<&str>,
    to: Option<&str>,
    len: Option<&str>,
    budgets: &Budgets,
) -> Result<Output, Error> {
    let lab = GeodesicLab::new(&load(file)?)?;
    if let Some(to) = to {
        let r = geodesic_between(&lab, from, to, dir, budgets)?;
        let (text, code) = match &r {
            Between::Found { geodesic, direction } => {
                (format!("found: length {:.12} leaving {from} towards {direction}", geodesic.length), EXIT_OK)
            }
            Between::Missed { best_miss, .. } => (format!("missed: closest approach {best_miss:.3e}"), EXIT_DIAGNOSED),
        };
        return Ok(Output { json: pretty(&r), text, code });
    }
    let dir = dir.ok_or_else(|| Error::Parse("geodesic needs --dir or --to".into()))?;
    let len = parse_angle(len.unwrap_or("pi"))?.radians();
    let start = lab.start(from, dir)?;
    let ext = extend_geodesic(&lab, &start, len, budgets);
    let mut text = format!("{} branch(es){}\n", ext.geodesics.len(), if ext.budget_exceeded { ", budget exceeded" } else { "" });
    for g in &ext.geodesics {
        let via: Vec<&str> = g.vertices.iter().map(|(v, _)| v.as_str()).collect();
        text.push_str(&format!(
            "length {:.12} via [{}] ending {}\n",
            g.length,
            via.join(" "),
            g.end_vertex.as_deref().unwrap_or("inside a cell")
        ));
    }
    Ok(Output::ok(&ext, text))
}

fn apartment(file: &Path, from: &str, cycle: &[String], to: Option<&str>, budgets: &Budgets) -> Result<Output, Error> {
    let lab = GeodesicLab::new(&load(file)?)?;
    let to = match to {
        Some(t) => t.to_string(),
        None => opposite_vertex(&lab, from, cycle, budgets)?,
    };
    let r = propagate_apartment(&lab, from, cycle, &to, budgets)?;
    Ok(match r {
        Ok(a) => {
            let text = format!(
                "{} cells, euler characteristic {}, {}\n{}",
                a.cells.len(),
                a.euler,
                if a.verified { "verified sphere" } else { "not verified" },
                a.issues.join("\n")
            );
            let code = if a.verified { EXIT_OK } else { EXIT_DIAGNOSED };
            Output { json: pretty(&a), text, code }
        }
        Err(f) => {
            let code = match f {
                PropagationFailure::Unreached { .. } => EXIT_DIAGNOSED,
                PropagationFailure::BadCycle { .. } | PropagationFailure::NotAntipodal { .. } => EXIT_INPUT,
            };
            Output { json: pretty(&f), text: format!("failed: {}", pretty(&f)), code }
        }
    })
}

/// End vertex of the geodesic of length `π` leaving `from` through the
/// middle of the first wedge of `cycle`.
fn opposite_vertex(lab: &GeodesicLab, from: &str, cycle: &[String], budgets: &Budgets) -> Result<String, Error> {
    let g = lab.link(from)?.ok_or_else(|| Error::Precondition("apartments need a 2-dimensional complex".into()))?;
    let a = g.vertex_by_name(&cycle[0]).ok_or_else(|| Error::UnknownVertex(cycle[0].clone()))?;
    let b = g.vertex_by_name(&cycle[1]).ok_or_else(|| Error::UnknownVertex(cycle[1].clone()))?;
    let e = g
        .incident(a)
        .iter()
        .find(|&&(_, n)| n == b)
        .map(|&(e, _)| e)
        .ok_or_else(|| Error::Precondition(format!("{} and {} are not adjacent in the link", cycle[0], cycle[1])))?;
    let mid = g.edge(e).len.radians() / 2.0;
    let start = lab.start(from, &format!("e:{e}@{mid:.17}"))?;
    let ext = extend_geodesic(lab, &start, std::f64::consts::PI, budgets);
    ext.geodesics
        .iter()
        .find_map(|g| g.end_vertex.clone())
        .ok_or_else(|| Error::Precondition(format!("no vertex at distance pi from {from}; pass --to")))
}

fn decompose(file: &Path, policy: BoundaryPolicy, budgets: &Budgets) -> Result<Output, Error> {
    let c = load(file)?;
    match c.geometry() {
        Geometry::Spherical => {
            let r = recognize(&c, policy, budgets)?;
            let cert = match r {
                Ok(cert) => cert,
                Err(d) => {
                    let report = CheckReport::new(&Err(d));
                    return Ok(Output { json: report.to_json(), text: report.to_text(), code: EXIT_DIAGNOSED });
                }
            };
            let factors = join_decompose(&c, &cert, budgets)?;
            let mut text = format!("{} join factor(s)\n", factors.len());
            for f in &factors {
                text.push_str(&format!(
                    "{} dim {} [{}]\n",
                    f.coxeter_type,
                    f.dimension,
                    f.vertices.join(" ")
                ));
            }
            Ok(Output::ok(&json!({ "schema": 1, "verdict": cert.verdict, "factors": factors }), text))
        }
        Geometry::Euclidean => {
            let (hints, best) = euclidean_hints(&c, budgets)?;
            let mut text = String::new();
            if let Some(b) = &best {
                text.push_str(&format!("most singular vertex: {b}\n"));
            }
            for h in &hints {
                text.push_str(&format!("{}: {}\n", h.vertex, serde_json::to_string(&h.hints).expect("hints")));
            }
            Ok(Output::ok(&json!({ "schema": 1, "best_vertex": best, "vertices": hints }), text))
        }
    }
}
