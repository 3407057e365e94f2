//! Command-line front end and HTTP service for the plabic workbench.
//!
//! Exit codes: 0 on success, 1 when a violation is found (for example an
//! invalid document or a failed verification), 2 on usage errors such as an
//! unreadable file.

pub mod service;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use plabic_core::io::{parse_value, with_default_anchor, SiteDoc};
use plabic_core::tiling::{build_tiling, embed_tiling, plabic_to_tiling};
use plabic_core::{
    enumerate_maximal, render_graph, render_tiling, verify, Budget, DecoratedPermutation, Document, EnumerationMode,
    Error, GrassmannNecklace, SvgOptions, WSCollection,
};

pub use service::router;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "plabic", version, about = "Weakly separated collections, plabic graphs and tilings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a document; collections are also checked for maximality.
    Check { file: PathBuf },
    /// Convert a permutation document to its necklace, or back.
    Necklace { file: PathBuf },
    /// List the bases of the positroid of a necklace, permutation or anchored collection.
    Bases {
        file: PathBuf,
        #[arg(long)]
        count: bool,
    },
    /// Extend a collection to a maximal one.
    Maximalize { file: PathBuf },
    /// List the mutation sites of a collection.
    Mutations {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Mutate a collection at a site given by index or as JSON.
    Mutate {
        file: PathBuf,
        /// Position in the list printed by `mutations`.
        #[arg(long, conflicts_with = "site", required_unless_present = "site")]
        index: Option<usize>,
        /// A site such as '{"s":[],"a":1,"b":2,"c":3,"d":4}'.
        #[arg(long)]
        site: Option<String>,
    },
    /// Enumerate the maximal collections of a positroid.
    Enumerate(EnumerateArgs),
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
        #[arg(long, global = true)]
        json: bool,
    },
    /// Render a collection, tiling or plabic graph as SVG.
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 640)]
        width: u32,
        #[arg(long)]
        no_labels: bool,
        /// Draw the dual plabic graph of a collection instead of its tiling.
        #[arg(long)]
        graph: bool,
    },
    /// Serve the JSON API.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, default_value_t = 8080)]
        port: u16,
    },
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// Use the uniform positroid of rank k on [n].
    #[arg(long, requires_all = ["n", "k"], conflicts_with = "file")]
    pub uniform: bool,
    #[arg(short)]
    pub n: Option<usize>,
    #[arg(short)]
    pub k: Option<usize>,
    /// A necklace, permutation or anchored collection document.
    #[arg(required_unless_present = "uniform")]
    pub file: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Mode::Closure)]
    pub mode: Mode,
    /// Print only the number of collections.
    #[arg(long)]
    pub count: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Closure,
    Bruteforce,
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// Every maximal collection of the uniform positroid has k(n-k)+1 members.
    Purity {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        k: usize,
    },
    /// Mutation connects all maximal collections, for every positroid on [n].
    Connectedness {
        #[arg(short)]
        n: usize,
    },
    /// Dual graphs are reduced with the expected permutation and face labels.
    Duality {
        #[arg(short)]
        n: usize,
    },
    /// Dual graphs have one face per member.
    Faces {
        #[arg(short)]
        n: usize,
    },
    /// The necklace curve winds around exactly the positroid's admissible sets.
    Winding {
        #[arg(short)]
        n: usize,
    },
    /// Face labels over all dual graphs fill the alignment hull.
    Hull {
        #[arg(short)]
        n: usize,
    },
    /// Purity of the chamber sets H(w) for every w in S_m.
    Lz {
        #[arg(short)]
        m: usize,
    },
    /// The hole left by a non-maximal collection closes on extension.
    Holes { file: PathBuf },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Violation(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Violation(_) => EXIT_VIOLATION,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Violation(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Violation(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs a parsed command; reports go to `out`, diagnostics to `err`.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let budget = Budget::from_env();
    let result = match cli.command {
        Command::Check { file } => check(&file, &budget, out),
        Command::Necklace { file } => necklace(&file, out),
        Command::Bases { file, count } => bases(&file, count, &budget, out),
        Command::Maximalize { file } => maximalize(&file, &budget, out),
        Command::Mutations { file, json } => mutations(&file, json, out),
        Command::Mutate { file, index, site } => mutate(&file, index, site.as_deref(), out),
        Command::Enumerate(args) => enumerate(&args, &budget, out),
        Command::Verify { suite, json } => verify_suite(suite, json, &budget, out),
        Command::Render { file, output, width, no_labels, graph } => {
            render(&file, output.as_deref(), SvgOptions { width, labels: !no_labels }, graph, &budget, out)
        }
        Command::Serve { host, port } => serve(&host, port, err),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "plabic: {}", f.message());
            f.code()
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
}

fn read_text(path: &std::path::Path) -> Result<String, Failure> {
    let mut text = String::new();
    let read = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

/// Reads and parses a document; JSON and schema errors count as violations.
fn load(path: &std::path::Path) -> Result<Document, Failure> {
    let text = read_text(path)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| {
        Failure::Violation(format!("{}: parse error at line {} column {}: {e}", path.display(), e.line(), e.column()))
    })?;
    parse_value(value).map_err(|e| Failure::Violation(format!("{}: {e}", path.display())))
}

fn load_collection(path: &std::path::Path) -> Result<WSCollection, Failure> {
    match load(path)? {
        Document::Collection(c) => Ok(c),
        other => {
            Err(Failure::Usage(format!("{}: expected a collection document, got {}", path.display(), other.kind())))
        }
    }
}

/// The necklace named by a necklace, permutation or anchored collection document.
fn load_necklace(path: &std::path::Path) -> Result<GrassmannNecklace, Failure> {
    match load(path)? {
        Document::Necklace(nk) => Ok(nk),
        Document::Permutation(p) => Ok(p.to_necklace()),
        Document::Collection(c) => Ok(with_default_anchor(&c)?.anchor().cloned().expect("anchored")),
        other => Err(Failure::Usage(format!("{}: a {} document names no positroid", path.display(), other.kind()))),
    }
}

fn check(path: &std::path::Path, budget: &Budget, out: &mut dyn Write) -> Outcome {
    let line = match load(path)? {
        Document::Collection(c) => {
            let anchored = with_default_anchor(&c)?;
            let maximal = if anchored.is_maximal(budget)? { "maximal" } else { "not maximal" };
            let anchor = if c.anchor().is_some() { "anchored" } else { "uniform anchor" };
            format!("valid collection: n={} k={}, {} sets, {maximal} ({anchor})", c.n(), c.k(), c.len())
        }
        Document::PlabicGraph(g) => {
            let verdict = g.check_reduced();
            if !g.is_reduced() {
                emit(out, &format!("plabic graph on n={}: {verdict}\n", g.n()))?;
                return Ok(EXIT_VIOLATION);
            }
            format!("valid plabic graph on n={}: {verdict}, strand permutation {}", g.n(), g.strand_permutation())
        }
        Document::Necklace(nk) => format!("valid necklace: n={} k={}, {nk}", nk.n(), nk.k()),
        Document::Permutation(p) => format!("valid decorated permutation: n={} k={}, {p}", p.n(), p.rank()),
        Document::Tiling(t) => {
            format!("valid tiling: {} vertices, {} faces", t.tiling().vertices().len(), t.tiling().faces().len())
        }
        Document::Report(r) => {
            emit(out, &format!("{r}\n"))?;
            return Ok(if r.verified { EXIT_OK } else { EXIT_VIOLATION });
        }
    };
    emit(out, &format!("{line}\n"))?;
    Ok(EXIT_OK)
}

fn necklace(path: &std::path::Path, out: &mut dyn Write) -> Outcome {
    let doc = match load(path)? {
        Document::Permutation(p) => Document::from(p.to_necklace()),
        Document::Necklace(nk) => Document::from(nk.to_decorated()?),
        other => {
            return Err(Failure::Usage(format!(
                "{}: expected a permutation or necklace, got {}",
                path.display(),
                other.kind()
            )))
        }
    };
    emit(out, &doc.to_text())?;
    Ok(EXIT_OK)
}

fn bases(path: &std::path::Path, count: bool, budget: &Budget, out: &mut dyn Write) -> Outcome {
    let all = load_necklace(path)?.positroid().bases(budget)?;
    if count {
        emit(out, &format!("{}\n", all.len()))?;
    } else {
        let text: String = all.iter().map(|s| format!("{}\n", s.label())).collect();
        emit(out, &text)?;
    }
    Ok(EXIT_OK)
}

fn maximalize(path: &std::path::Path, budget: &Budget, out: &mut dyn Write) -> Outcome {
    let c = with_default_anchor(&load_collection(path)?)?;
    emit(out, &Document::from(c.extend_to_maximal(budget)?).to_text())?;
    Ok(EXIT_OK)
}

fn mutations(path: &std::path::Path, json: bool, out: &mut dyn Write) -> Outcome {
    let sites = load_collection(path)?.mutation_sites();
    if json {
        let docs: Vec<SiteDoc> = sites.iter().map(SiteDoc::from_site).collect();
        let text = serde_json::to_string_pretty(&docs).expect("sites serialize");
        emit(out, &format!("{text}\n"))?;
    } else {
        let text: String = sites
            .iter()
            .enumerate()
            .map(|(i, m)| format!("{i}: {m}  {} -> {}\n", m.removed().label(), m.added().label()))
            .collect();
        emit(out, &text)?;
    }
    Ok(EXIT_OK)
}

fn mutate(path: &std::path::Path, index: Option<usize>, site: Option<&str>, out: &mut dyn Write) -> Outcome {
    let c = load_collection(path)?;
    let site = match (index, site) {
        (Some(i), _) => {
            let sites = c.mutation_sites();
            let count = sites.len();
            sites
                .into_iter()
                .nth(i)
                .ok_or_else(|| Failure::Violation(format!("no mutation site {i}; the collection has {count}")))?
        }
        (None, Some(json)) => {
            let doc: SiteDoc =
                serde_json::from_str(json).map_err(|e| Failure::Usage(format!("cannot read --site: {e}")))?;
            doc.to_site(c.ground())?
        }
        (None, None) => return Err(Failure::Usage("give --index or --site".into())),
    };
    emit(out, &Document::from(c.apply_mutation(&site)?).to_text())?;
    Ok(EXIT_OK)
}

fn enumerate(args: &EnumerateArgs, budget: &Budget, out: &mut dyn Write) -> Outcome {
    let nk = match (&args.file, args.n, args.k) {
        (Some(path), _, _) => load_necklace(path)?,
        (None, Some(n), Some(k)) => GrassmannNecklace::uniform(n, k).map_err(|e| Failure::Usage(e.to_string()))?,
        _ => return Err(Failure::Usage("give a document or --uniform -n N -k K".into())),
    };
    let mode = match args.mode {
        Mode::Closure => EnumerationMode::Closure,
        Mode::Bruteforce => EnumerationMode::BruteForce,
    };
    let all = enumerate_maximal(&nk, mode, budget)?;
    if args.count {
        emit(out, &format!("{}\n", all.len()))?;
    } else {
        let text: String = all.iter().map(|c| format!("{c}\n")).collect();
        emit(out, &text)?;
    }
    Ok(EXIT_OK)
}

fn verify_suite(suite: Suite, json: bool, budget: &Budget, out: &mut dyn Write) -> Outcome {
    let sweep = |n: usize| -> Result<verify::PositroidSweep, Failure> {
        let perms = DecoratedPermutation::all(n).map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(verify::positroid_sweep(&perms, &format!("n={n}"), budget)?)
    };
    let report = match suite {
        Suite::Purity { n, k } => verify::uniform_purity(n, k, budget)?,
        Suite::Connectedness { n } => sweep(n)?.connectedness,
        Suite::Duality { n } => sweep(n)?.duality,
        Suite::Faces { n } => sweep(n)?.face_count,
        Suite::Winding { n } => verify::winding(n, budget)?,
        Suite::Hull { n } => verify::hull(n, budget)?,
        Suite::Lz { m } => verify::lz(m, budget)?,
        Suite::Holes { file } => verify::holes(&with_default_anchor(&load_collection(&file)?)?, budget)?,
    };
    let verified = report.verified;
    if json {
        emit(out, &Document::from(report).to_text())?;
    } else {
        emit(out, &format!("{report}\n"))?;
    }
    Ok(if verified { EXIT_OK } else { EXIT_VIOLATION })
}

fn render(
    path: &std::path::Path,
    output: Option<&std::path::Path>,
    opts: SvgOptions,
    graph: bool,
    budget: &Budget,
    out: &mut dyn Write,
) -> Outcome {
    let svg = match load(path)? {
        Document::Collection(c) if graph => {
            render_graph(&plabic_core::tiling_to_plabic(&with_default_anchor(&c)?, budget)?, &opts)?
        }
        Document::Collection(c) => render_tiling(&embed_tiling(&build_tiling(&c), None)?, &opts),
        Document::Tiling(t) => render_tiling(&t, &opts),
        Document::PlabicGraph(g) if graph => render_graph(&g, &opts)?,
        Document::PlabicGraph(g) => render_tiling(&embed_tiling(&plabic_to_tiling(&g)?, None)?, &opts),
        other => return Err(Failure::Usage(format!("{}: cannot render a {} document", path.display(), other.kind()))),
    };
    match output {
        Some(file) => {
            std::fs::write(file, svg).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", file.display())))?
        }
        None => emit(out, &svg)?,
    }
    Ok(EXIT_OK)
}

fn serve(host: &str, port: u16, err: &mut dyn Write) -> Outcome {
    let runtime = tokio::runtime::Builder::new_multi_thread()
        .enable_all()
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start runtime: {e}")))?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind((host, port))
            .await
            .map_err(|e| Failure::Usage(format!("cannot bind {host}:{port}: {e}")))?;
        let addr = listener.local_addr().map_err(|e| Failure::Usage(e.to_string()))?;
        let _ = writeln!(err, "listening on http://{addr}");
        axum::serve(listener, router()).await.map_err(|e| Failure::Usage(format!("server error: {e}")))
    })?;
    Ok(EXIT_OK)
}
