//! `sfh`: batch front end for the sutured Floer engine.
//!
//! Exit status 0 on success, 1 when an input is rejected, 2 when a computed
//! object breaks an invariant (a bug; a repro dump goes to stderr).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sfh_core::catalog;
use sfh_core::glue::{
    equivalence_report, glue_one_handle, glue_two_handle, sigma_map, GlueError, HandleSpec, ReportOptions,
};
use sfh_core::modules::{bordered_invariant, check_relations, Kind};
use sfh_core::sfc::{self, ChainComplexF2};
use sfh_core::strands::{ArcDiagram, StrandAlgebra};
use sfh_core::surface::{from_json, to_json, validate, BypassSign, Diagram, TransversePath};

#[derive(Parser)]
#[command(name = "sfh", version, about = "Sutured Floer homology of nice diagrams over F2")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModuleKind {
    D,
    A,
    Aa,
}

#[derive(clap::Args)]
struct HandleArgs {
    /// one, two, bypass+ or bypass-
    #[arg(long)]
    handle: String,
    /// First foot (boundary edge id).
    #[arg(long)]
    p: Option<String>,
    /// Second foot.
    #[arg(long)]
    q: Option<String>,
    /// Face crossed by both attaching paths of a 2-handle.
    #[arg(long)]
    face: Option<String>,
    /// Boundary edge of a bypass.
    #[arg(long)]
    site: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a diagram: structure, niceness, admissibility.
    Validate { file: PathBuf },
    /// List generators with their Spin^c classes.
    Generators { file: PathBuf },
    /// Homology ranks, total and per Spin^c class.
    Homology { file: PathBuf },
    /// Attach a contact handle; prints the gluing map and the new diagram.
    Attach {
        file: PathBuf,
        #[command(flatten)]
        handle: HandleArgs,
        /// Write the new diagram here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the bordered gluing pipeline for one handle.
    Glue {
        file: PathBuf,
        #[command(flatten)]
        handle: HandleArgs,
    },
    /// Strand algebra of a built-in arc diagram.
    Algebra {
        #[arg(long, default_value = "Z2")]
        arc_diagram: String,
        /// Print the multiplication and differential tables.
        #[arg(long)]
        table: bool,
    },
    /// Bordered invariant of a diagram with interfaces.
    Bordered {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModuleKind::A)]
        kind: ModuleKind,
    },
    /// Compare the diagrammatic and bordered routes stage by stage.
    VerifyEquivalence {
        file: PathBuf,
        /// JSON list of handle attachments.
        #[arg(long)]
        handles: PathBuf,
        /// Inject a wrong x0 when transporting the EH tag.
        #[arg(long)]
        wrong_x0: bool,
    },
    /// List the built-in fixtures, print one, or write all to a directory.
    Examples {
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Why a command stopped.
enum Stop {
    Rejected(String),
    Violation { what: String, repro: String },
}

impl From<anyhow::Error> for Stop {
    fn from(e: anyhow::Error) -> Self {
        Stop::Rejected(format!("{e:#}"))
    }
}

impl From<GlueError> for Stop {
    fn from(e: GlueError) -> Self {
        match e {
            GlueError::Law(v) => Stop::Violation {
                what: format!("chain-map law fails: {v:?}"),
                repro: String::new(),
            },
            e => Stop::Rejected(e.to_string()),
        }
    }
}

type Run = Result<(), Stop>;

fn load(path: &Path) -> Result<Diagram, Stop> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    from_json(&text).map_err(|e| Stop::Rejected(format!("{}: {e}", path.display())))
}

fn reject<T>(msg: impl Into<String>) -> Result<T, Stop> {
    Err(Stop::Rejected(msg.into()))
}

fn emit(format: Format, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) {
    match format {
        Format::Text => print!("{}", text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value()).unwrap()),
    }
}

/// SFC with the invariants every computed complex must satisfy.
fn complex(d: &Diagram) -> Result<ChainComplexF2, Stop> {
    let c = sfc::differential(d).map_err(|e| Stop::Rejected(e.to_string()))?;
    if !c.squares_to_zero() || !c.respects_spinc() {
        return Err(Stop::Violation {
            what: "differential squares to nonzero or mixes Spin^c classes".into(),
            repro: to_json(d),
        });
    }
    Ok(c)
}

fn plural(n: usize, word: &str) -> String {
    if n == 1 {
        format!("{n} {word}")
    } else {
        format!("{n} {word}es")
    }
}

fn handle_spec(d: &Diagram, h: &HandleArgs) -> Result<HandleSpec, Stop> {
    let sign = || if h.handle == "bypass+" { BypassSign::Positive } else { BypassSign::Negative };
    let spec = match (h.handle.as_str(), &h.p, &h.q, &h.site) {
        ("one", Some(p), Some(q), _) => HandleSpec::One { p: p.clone(), q: q.clone() },
        ("two", Some(p), Some(q), _) => {
            let Some(face) = &h.face else { return reject("a 2-handle with explicit feet needs --face") };
            let a = TransversePath::within(face, p, q);
            HandleSpec::Two {
                p: p.clone(),
                q: q.clone(),
                b: a.clone(),
                a,
            }
        }
        ("bypass+" | "bypass-", _, _, Some(site)) => HandleSpec::Bypass {
            site: site.clone(),
            sign: sign(),
        },
        (kind @ ("one" | "two" | "bypass+" | "bypass-"), None, None, None) => match HandleSpec::standard(kind, d) {
            Some(s) => s,
            None => return reject(format!("no suture face with two free boundary edges for a {kind}")),
        },
        (kind, ..) => return reject(format!("cannot read handle {kind} with the given feet")),
    };
    Ok(spec)
}

fn run(cli: &Cli) -> Run {
    let f = cli.format;
    match &cli.command {
        Command::Validate { file } => {
            let d = load(file)?;
            let v = validate(&d);
            if !v.is_empty() {
                emit(
                    f,
                    || v.iter().map(|x| format!("{}: {} {:?}\n", x.code, x.detail, x.ids)).collect(),
                    || json!({ "valid": false, "violations": v }),
                );
                return reject(format!("{} violations", v.len()));
            }
            let (nice, bad) = sfc::is_nice(&d);
            let (admissible, witness) = sfc::is_admissible(&d);
            emit(
                f,
                || {
                    let mut s = String::from("valid\n");
                    s += &if nice { "nice\n".into() } else { format!("not nice: {bad:?}\n") };
                    s += &if admissible { "admissible\n".into() } else { format!("not admissible: {witness:?}\n") };
                    s
                },
                || json!({ "valid": true, "nice": nice, "bad_faces": bad, "admissible": admissible, "periodic_domain": witness }),
            );
            if !(nice && admissible) {
                return reject("the diagram cannot be computed");
            }
        }
        Command::Generators { file } => {
            let c = complex(&load(file)?)?;
            emit(
                f,
                || c.basis.iter().zip(&c.spinc).map(|(g, s)| format!("{g}  class {s}\n")).collect(),
                || json!(c.basis.iter().zip(&c.spinc).map(|(g, s)| json!({ "points": g, "class": s })).collect::<Vec<_>>()),
            );
        }
        Command::Homology { file } => {
            let h = complex(&load(file)?)?.homology();
            emit(
                f,
                || {
                    let mut s = format!("rank {} ({})\n", h.total, plural(h.classes.len(), "Spin^c class"));
                    if h.classes.len() > 1 {
                        for c in &h.classes {
                            s += &format!("  class {}: {} generators, rank {}\n", c.class, c.generators, c.rank);
                        }
                    }
                    s
                },
                || json!(h),
            );
        }
        Command::Attach { file, handle, out } => {
            let d = load(file)?;
            let spec = handle_spec(&d, handle)?;
            let s = sigma_map(&d, &spec)?;
            let text = to_json(&s.diagram);
            if let Some(path) = out {
                fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            }
            emit(
                f,
                || {
                    let mut o = format!("{} ({})\n", s.table.name, spec.kind());
                    if let Some(x) = &s.x0 {
                        o += &format!("x0 = {x}\n");
                    }
                    o += &s.table.lines().join("\n");
                    o += "\n";
                    if out.is_none() {
                        o += &text;
                    }
                    o
                },
                || {
                    let diagram: Value = serde_json::from_str(&text).unwrap();
                    json!({ "handle": spec, "x0": s.x0, "table": s.table.lines(), "diagram": diagram })
                },
            );
        }
        Command::Glue { file, handle } => {
            let d = load(file)?;
            let spec = handle_spec(&d, handle)?;
            let (psi, lines, agree) = match &spec {
                HandleSpec::One { p, q } => {
                    let g = glue_one_handle(&d, p, q)?;
                    let lines = vec![
                        format!("forced point {}", g.forced),
                        format!("Ψ1 = σ1: {}", g.tables_agree()),
                        format!("destabilized diagram = σ1 diagram: {}", g.diagrams_agree()),
                    ];
                    let agree = g.tables_agree() && g.diagrams_agree();
                    (g.psi, lines, agree)
                }
                _ => {
                    let g = glue_two_handle(&d, &spec)?;
                    let mut lines = vec![
                        format!("ranks H3 {} H4 {} H5 {} H6 {}", g.ranks[0], g.ranks[1], g.ranks[2], g.ranks[3]),
                        format!("H5 identity over {} cycles: {}", g.identity.cycles, g.identity.holds()),
                    ];
                    lines.extend(g.identity.failures.iter().cloned());
                    let agree = g.ranks_agree() && g.identity.holds();
                    (g.psi, lines, agree)
                }
            };
            emit(
                f,
                || format!("{}\n{}\n", lines.join("\n"), psi.lines().join("\n")),
                || json!({ "handle": spec, "checks": lines, "table": psi.lines(), "agree": agree }),
            );
            if !agree {
                return Err(Stop::Violation {
                    what: lines.join("; "),
                    repro: to_json(&d),
                });
            }
        }
        Command::Algebra { arc_diagram, table } => {
            let z = match arc_diagram.as_str() {
                "Z1" => ArcDiagram::z1(),
                "Z2" => ArcDiagram::z2(),
                other => return reject(format!("unknown arc diagram {other}; try Z1 or Z2")),
            };
            let a = StrandAlgebra::new(z);
            let ranks = a.summand_ranks();
            let mut products = Vec::new();
            let mut differentials = Vec::new();
            if *table {
                for x in 0..a.dim() {
                    let dx = a.diff_basis(x);
                    if !dx.is_empty() {
                        differentials.push(format!("∂{} = {}", a.name(x), a.element_name(&dx)));
                    }
                    for y in 0..a.dim() {
                        let both_idempotent = a.basis[x].is_idempotent() && a.basis[y].is_idempotent();
                        let p = a.mul_basis(x, y);
                        if !p.is_empty() && !both_idempotent {
                            products.push(format!("{} · {} = {}", a.name(x), a.name(y), a.element_name(&p)));
                        }
                    }
                }
            }
            emit(
                f,
                || {
                    let mut s = format!("A({arc_diagram}) summand ranks {ranks:?}, total {}\n", a.dim());
                    for l in products.iter().chain(&differentials) {
                        s += l;
                        s += "\n";
                    }
                    s
                },
                || json!({ "arc_diagram": arc_diagram, "summand_ranks": ranks, "basis": (0..a.dim()).map(|k| a.name(k)).collect::<Vec<_>>(), "products": products, "differentials": differentials }),
            );
        }
        Command::Bordered { file, kind } => {
            let d = load(file)?;
            let kind = match kind {
                ModuleKind::D => Kind::D,
                ModuleKind::A => Kind::A,
                ModuleKind::Aa => Kind::AA,
            };
            let name = file.file_stem().map_or("diagram".into(), |s| s.to_string_lossy().to_string());
            let m = bordered_invariant(&d, kind, &name).map_err(|e| Stop::Rejected(e.to_string()))?;
            let bad = check_relations(&m);
            let dump = m.dump();
            emit(f, || dump.clone(), || json!({ "generators": m.labels, "table": dump.lines().collect::<Vec<_>>(), "violations": bad }));
            if !bad.is_empty() {
                return Err(Stop::Violation {
                    what: format!("structure relations fail: {bad:?}"),
                    repro: to_json(&d),
                });
            }
        }
        Command::VerifyEquivalence { file, handles, wrong_x0 } => {
            let d = load(file)?;
            let text = fs::read_to_string(handles).with_context(|| format!("reading {}", handles.display()))?;
            let plan: Vec<HandleSpec> =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", handles.display()))?;
            let r = equivalence_report(&d, &plan, &ReportOptions { wrong_x0: *wrong_x0 });
            emit(f, || r.text(), || json!(r));
            if !r.passed() {
                return Err(Stop::Violation {
                    what: r.failures.join("; "),
                    repro: format!("{}\nhandles: {text}", to_json(&d)),
                });
            }
        }
        Command::Examples { name, out } => examples(f, name.as_deref(), out.as_deref())?,
    }
    Ok(())
}

/// Built-in fixtures plus the stages of the standard 2-handle over the disk.
fn example(name: &str) -> Result<Diagram, Stop> {
    if let Some(stage) = name.strip_prefix("disk-") {
        let d = catalog::disk();
        let h = HandleSpec::standard("two", &d).expect("the disk has room for a 2-handle");
        let g = glue_two_handle(&d, &h)?;
        return match stage {
            "H3" => Ok(g.prepared.h3),
            "H4" => Ok(g.join.h4),
            "H5" => Ok(g.h5),
            "H6" => Ok(g.sigma.diagram),
            _ => reject(format!("unknown stage {stage}")),
        };
    }
    catalog::fixture(name).map_err(|e| Stop::Rejected(e.to_string()))
}

fn example_names() -> Vec<String> {
    catalog::NAMES
        .iter()
        .map(|s| s.to_string())
        .chain(["disk-H3", "disk-H4", "disk-H5", "disk-H6"].map(String::from))
        .collect()
}

fn examples(f: Format, name: Option<&str>, out: Option<&Path>) -> Run {
    let names = match name {
        Some(n) => vec![n.to_string()],
        None => example_names(),
    };
    if let Some(dir) = out {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for n in &names {
            let path = dir.join(format!("{n}.json"));
            fs::write(&path, to_json(&example(n)?)).with_context(|| format!("writing {}", path.display()))?;
        }
        emit(f, || format!("wrote {} files to {}\n", names.len(), dir.display()), || json!(names));
        return Ok(());
    }
    match name {
        Some(n) => print!("{}", to_json(&example(n)?)),
        None => emit(f, || names.iter().map(|n| format!("{n}\n")).collect(), || json!(names)),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Stop::Rejected(why)) => {
            match cli.format {
                Format::Json => eprintln!("{}", json!({ "rejected": why })),
                Format::Text => eprintln!("rejected: {why}"),
            }
            ExitCode::from(1)
        }
        Err(Stop::Violation { what, repro }) => {
            eprintln!("invariant violation: {what}");
            if !repro.is_empty() {
                eprintln!("repro:\n{repro}");
            }
            ExitCode::from(2)
        }
    }
}
