mod instance;
mod report;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use scrollex::corpus::{cycle_extension, random_chordal, random_extension, rng, ExtensionParams};
use scrollex::{
    betti_table_with, buchberger_is_groebner, chordless_cycles, generators, initial_complex_from_order, p2_from_table,
    poligon_betti, Analysis, BettiOptions, CliqueComplex, CycleSearch, Error, ExtensionSpec, FieldSpec, Graph,
    GroebnerVerdict, UpperBound, DEFAULT_CYCLE_CAP, DEFAULT_MAX_VERTICES,
};

use instance::{parse_instance, InputError, ProblemInstance};

#[derive(Parser)]
#[command(name = "scrollex", version, about = "Linearity bounds for scroll extensions of clique complexes")]
struct Cli {
    /// Abort cycle enumeration past this many cycles.
    #[arg(long, global = true, default_value_t = DEFAULT_CYCLE_CAP)]
    cycle_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an instance and print its facets and matrices.
    Validate { file: PathBuf },
    /// Find an admissible order of the matrices, or a cycle of heads.
    Order { file: PathBuf },
    /// Run Buchberger's criterion on the generators and compare initial complexes.
    Groebner { file: PathBuf },
    /// Chordless cycles of the base graph, or the virtual cycles of the extension.
    Cycles {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = CycleKind::Minimal)]
        kind: CycleKind,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Graded Betti table of the Stanley-Reisner ideal of the base or the initial clique complex.
    Betti {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Ideal::Gamma)]
        ideal: Ideal,
        /// `q` or a prime.
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, default_value_t = DEFAULT_MAX_VERTICES)]
        max_vertices: usize,
    },
    /// Bounds on the index of linearity of the extended ideal.
    P2 {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
    },
    /// Closed-form Betti table of an n-gon with s new variables.
    Poligon { n: usize, s: usize },
    /// Random chordal base with random scroll data.
    GenChordal {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 7)]
        vertices: usize,
    },
    /// Random cycle with stretched edges.
    GenCycleExt {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 5)]
        length: usize,
        #[arg(long, default_value_t = 2)]
        max_y: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CycleKind {
    Minimal,
    Virtual,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ideal {
    Gamma,
    Initial,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Lower,
    Upper,
    Exact,
    Auto,
}

enum Failure {
    Input(InputError),
    Library(Error),
    /// The method does not apply; the payload is still reported.
    NotApplicable(Value),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

type Outcome = Result<Value, Failure>;

fn read_instance(path: &PathBuf) -> Result<ProblemInstance, InputError> {
    let mut text = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| InputError { pointer: String::new(), message: format!("{}: {e}", path.display()) })?;
    parse_instance(&text)
}

fn parse_field(s: &str) -> Result<FieldSpec, Failure> {
    if s.eq_ignore_ascii_case("q") {
        return Ok(FieldSpec::Rationals);
    }
    let p: u64 = s.parse().map_err(|_| {
        Failure::Input(InputError { pointer: String::new(), message: format!("field `{s}` is neither q nor a prime") })
    })?;
    Ok(FieldSpec::prime(p)?)
}

fn validate(ext: &ExtensionSpec) -> Value {
    let base = ext.base();
    let g = ext.graph();
    json!({
        "valid": true,
        "base_vertices": ext.base_len(),
        "vertices": g.len(),
        "facets": base.facets().iter().map(|f| base.skeleton().names_of(f)).collect::<Vec<_>>(),
        "proper_edges": base.proper_edges().iter().map(|e| {
            let (u, v) = e.ends();
            [g.name(u), g.name(v)]
        }).collect::<Vec<_>>(),
        "matrices": ext.matrices().iter().enumerate().map(|(i, m)| json!({
            "extension": m.source,
            "facet": ext.facet_names(i),
            "top": report::names(g, &m.top_row()),
            "bottom": report::names(g, &m.bottom_row()),
        })).collect::<Vec<_>>(),
    })
}

fn groebner(ext: &ExtensionSpec, cap: usize) -> Outcome {
    let a = Analysis::new(ext, cap)?;
    let vo = match a.var_order() {
        Ok(vo) => vo,
        Err(Error::NotOrderable { .. }) => {
            return Err(Failure::NotApplicable(json!({ "order": report::order(ext, &a.order) })));
        }
        Err(e) => return Err(e.into()),
    };
    let g = ext.graph();
    let verdict = buchberger_is_groebner(&generators(ext), &vo)?;
    let leads = initial_complex_from_order(ext, &vo)?;
    let edge_names = |es: &[scrollex::Edge]| {
        es.iter()
            .map(|e| {
                let (u, v) = e.ends();
                [g.name(u), g.name(v)]
            })
            .collect::<Vec<_>>()
    };
    let verdict = match verdict {
        GroebnerVerdict::Yes { pairs_reduced, pairs_skipped } => json!({
            "groebner": true,
            "pairs_reduced": pairs_reduced,
            "pairs_skipped": pairs_skipped,
        }),
        GroebnerVerdict::No { first, second, normal_form } => {
            let basis = scrollex::basis_order(&generators(ext));
            json!({
                "groebner": false,
                "pair": [basis[first].display(g), basis[second].display(g)],
                "normal_form": normal_form.display(g),
            })
        }
    };
    Ok(json!({
        "order": report::order(ext, &a.order),
        "variable_order": report::names(g, vo.sequence()),
        "verdict": verdict,
        "deleted_diagonal": edge_names(&a.initial.deleted),
        "deleted_leads": edge_names(&leads.deleted),
        "routes_agree": a.initial.deleted == leads.deleted,
    }))
}

fn cycles(ext: &ExtensionSpec, kind: CycleKind, max_len: Option<usize>, cap: usize) -> Outcome {
    match kind {
        CycleKind::Minimal => {
            let g = ext.base_graph();
            let cs = chordless_cycles(g, CycleSearch { max_len, cap })?;
            Ok(json!({
                "kind": "minimal",
                "count": cs.len(),
                "cycles": cs.iter().map(|c| report::cycle(g, c)).collect::<Vec<_>>(),
            }))
        }
        CycleKind::Virtual => {
            let a = Analysis::new(ext, cap)?;
            let mut vcs = a.virtual_cycles()?;
            if let Some(m) = max_len {
                vcs.retain(|c| c.cycle.len() <= m);
            }
            let list = vcs
                .iter()
                .map(|vc| {
                    let ct = if vc.in_ctilde_family { Some(scrollex::c_tilde(ext, vc)?) } else { None };
                    Ok(report::virtual_cycle(ext, vc, ct.as_ref()))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            Ok(json!({
                "kind": "virtual",
                "count": list.len(),
                "virtual_edges": a.virtual_edges.iter().map(|e| {
                    let (u, v) = e.ends();
                    [ext.name(u), ext.name(v)]
                }).collect::<Vec<_>>(),
                "cycles": list,
            }))
        }
    }
}

fn betti(ext: &ExtensionSpec, ideal: Ideal, field: FieldSpec, max_vertices: usize, cap: usize) -> Outcome {
    let (name, g): (&str, Graph) = match ideal {
        Ideal::Gamma => ("gamma", ext.base_graph().clone()),
        Ideal::Initial => ("initial", Analysis::new(ext, cap)?.initial.graph),
    };
    let t = betti_table_with(&g, BettiOptions { field, max_vertices, multigraded: false })?;
    let p2 = p2_from_table(&t, 2);
    Ok(json!({
        "ideal": name,
        "field": field,
        "vertices": g.len(),
        "table": report::betti(&t),
        "two_linear": t.is_linear(2),
        "p2": report::p2_result(&p2),
    }))
}

fn p2(ext: &ExtensionSpec, mode: Mode, cap: usize) -> Outcome {
    let a = Analysis::new(ext, cap)?;
    match mode {
        Mode::Lower => {
            let cycles = a.virtual_cycles()?;
            match a.lower_bound(&cycles) {
                Ok(l) => Ok(json!({ "lower": report::lower(ext, &l) })),
                Err(Error::NotOrderable { .. }) => {
                    Err(Failure::NotApplicable(json!({ "lower": null, "order": report::order(ext, &a.order) })))
                }
                Err(e) => Err(e.into()),
            }
        }
        Mode::Upper => {
            let u = a.upper_bound(&a.virtual_cycles()?)?;
            let body = json!({ "upper": report::upper(ext, &u) });
            match u {
                UpperBound::Value { .. } => Ok(body),
                UpperBound::NotApplicable(_) => Err(Failure::NotApplicable(body)),
            }
        }
        Mode::Exact => {
            let r = a.report()?;
            Ok(json!({ "exact": report::exact(&r.exact), "hypotheses": report::p2_report(ext, &r)["hypotheses"] }))
        }
        Mode::Auto => Ok(report::p2_report(ext, &a.report()?)),
    }
}

fn as_instance(g: &Graph, extensions: Vec<scrollex::RawMatrix>) -> ProblemInstance {
    ProblemInstance {
        vertices: g.names().to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|e| {
                let (u, v) = e.ends();
                (g.name(u).to_string(), g.name(v).to_string())
            })
            .collect(),
        facets: None,
        extensions,
    }
}

/// Rebuilds objects so keys come out sorted whatever map the JSON crate uses.
fn canonical(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut pairs: Vec<(String, Value)> = m.into_iter().collect();
            pairs.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(pairs.into_iter().map(|(k, v)| (k, canonical(v))).collect::<Map<_, _>>())
        }
        Value::Array(xs) => Value::Array(xs.into_iter().map(canonical).collect()),
        other => other,
    }
}

fn emit(v: Value) {
    let text = serde_json::to_string_pretty(&canonical(v)).expect("reports serialize");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn envelope(command: &str, digest: Option<&str>, result: Value) -> Value {
    json!({
        "command": command,
        "instance_digest": digest,
        "version": env!("CARGO_PKG_VERSION"),
        "result": result,
    })
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::GuardExceeded { .. } | Error::CycleCapExceeded { .. } => 3,
        Error::NotOrderable { .. } => 2,
        _ => 1,
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("SCROLLEX_THREADS") else { return Ok(()) };
    let n: usize = raw.trim().parse().map_err(|_| format!("SCROLLEX_THREADS=`{raw}` is not a count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<Value, (String, Option<String>, Failure)> {
    let cap = cli.cycle_cap;
    let (name, file) = match &cli.command {
        Command::Validate { file } => ("validate", Some(file)),
        Command::Order { file } => ("order", Some(file)),
        Command::Groebner { file } => ("groebner", Some(file)),
        Command::Cycles { file, .. } => ("cycles", Some(file)),
        Command::Betti { file, .. } => ("betti", Some(file)),
        Command::P2 { file, .. } => ("p2", Some(file)),
        Command::Poligon { .. } => ("poligon", None),
        Command::GenChordal { .. } => ("gen-chordal", None),
        Command::GenCycleExt { .. } => ("gen-cycle-ext", None),
    };
    let name = name.to_string();
    let mut digest = None;
    let loaded = match file {
        Some(path) => {
            let inst = read_instance(path).map_err(|e| (name.clone(), None, e.into()))?;
            digest = Some(inst.digest());
            let ext = inst.extension().map_err(|e| (name.clone(), digest.clone(), e.into()))?;
            Some(ext)
        }
        None => None,
    };
    let fail = |f: Failure| (name.clone(), digest.clone(), f);
    let ext = || loaded.as_ref().expect("command reads an instance");
    let result = match cli.command {
        Command::Validate { .. } => Ok(validate(ext())),
        Command::Order { .. } => Ok(report::order(ext(), &scrollex::find_admissible_order(ext().matrices()))),
        Command::Groebner { .. } => groebner(ext(), cap),
        Command::Cycles { kind, max_len, .. } => cycles(ext(), kind, max_len, cap),
        Command::Betti { ideal, field, max_vertices, .. } => {
            parse_field(&field).and_then(|f| betti(ext(), ideal, f, max_vertices, cap))
        }
        Command::P2 { mode, .. } => p2(ext(), mode, cap),
        Command::Poligon { n, s } => poligon_betti(n, s)
            .map(|t| json!({ "n": n, "s": s, "table": report::betti(&t) }))
            .map_err(Failure::from),
        Command::GenChordal { seed, vertices } => {
            let mut r = rng(seed);
            let g = random_chordal(&mut r, vertices);
            let raw = random_extension(&mut r, &CliqueComplex::new(g.clone()), ExtensionParams::default());
            return Ok(serde_json::to_value(as_instance(&g, raw)).expect("instances serialize"));
        }
        Command::GenCycleExt { seed, length, max_y } => {
            let (g, raw) = cycle_extension(&mut rng(seed), length, max_y);
            return Ok(serde_json::to_value(as_instance(&g, raw)).expect("instances serialize"));
        }
    };
    match result {
        Ok(v) => Ok(envelope(&name, digest.as_deref(), v)),
        Err(f) => Err(fail(f)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(1);
    }
    match run(cli) {
        Ok(v) => {
            emit(v);
            ExitCode::SUCCESS
        }
        Err((name, digest, failure)) => match failure {
            Failure::Input(e) => {
                if e.pointer.is_empty() {
                    eprintln!("error: {}", e.message);
                } else {
                    eprintln!("error at {}: {}", e.pointer, e.message);
                }
                ExitCode::from(1)
            }
            Failure::Library(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_for(&e))
            }
            Failure::NotApplicable(v) => {
                eprintln!("error: method not applicable to this instance");
                emit(envelope(&name, digest.as_deref(), v));
                ExitCode::from(2)
            }
        },
    }
}
