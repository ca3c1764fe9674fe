//! `hbck`: validate, cut, map and combine finite (fuzzy) hyper BCK-algebras.
//!
//! Every command writes one JSON object per line on stdout. Exit codes:
//! 0 success, 1 the input violates a checked property, 2 unreadable or
//! ill-formed input, 3 a construction contradicted a claimed theorem.

mod load;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hyperbck::construct::{self, ConstructionResult, Provenance, DEFAULT_CONGRUENCE_BOUND};
use hyperbck::enumerate::{self, Policy};
use hyperbck::format::{render_structure, Structure, StructureDocument};
use hyperbck::fuzzy::{alpha_cut, validate_fuzzy};
use hyperbck::morphism::{enumerate_fuzzy_homs, enumerate_homs, is_fuzzy_hom};
use hyperbck::{Error, FuzzyHom, FuzzyValue, Hom, HyperBCK, ValidationReport};
use serde_json::{json, Value};

use load::InputError;

#[derive(Parser)]
#[command(name = "hbck", version, about = "Finite hyper BCK-algebra toolkit")]
struct Cli {
    /// Worker threads for enumeration and search (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check HK1-HK3 (and the fuzzy inequality when `mu` is present).
    Verify {
        file: PathBuf,
        /// Also require x<y and y<x to imply x=y.
        #[arg(long = "strict-hk4")]
        strict_hk4: bool,
    },
    /// Print the α-cut {x : μ(x) >= α}.
    Cut {
        file: PathBuf,
        #[arg(long)]
        alpha: String,
    },
    /// Check a morphism file, or list every homomorphism between two structures.
    Hom(HomArgs),
    /// Product of one or more structures.
    Product {
        /// Structure files; crisp inputs get μ ≡ 1.
        #[arg(required = true)]
        factors: Vec<PathBuf>,
    },
    /// Equalizer of two parallel morphism files.
    Equalizer {
        /// First morphism file.
        f: PathBuf,
        /// Second morphism file, same source and target.
        g: PathBuf,
    },
    /// Coequalizer of two parallel morphism files.
    Coequalizer {
        /// First morphism file.
        f: PathBuf,
        /// Second morphism file, same source and target.
        g: PathBuf,
        /// Largest carrier whose partitions are searched.
        #[arg(long, default_value_t = DEFAULT_CONGRUENCE_BOUND)]
        max_size: usize,
    },
    /// Pullback of two morphism files with a common target.
    Pullback {
        /// Morphism file A -> C.
        f: PathBuf,
        /// Morphism file B -> C.
        g: PathBuf,
    },
    /// List every algebra on a carrier of the given size (at most 3).
    Enumerate {
        /// Carrier size, 1 to 3.
        #[arg(long)]
        size: usize,
        /// Keep one representative per isomorphism class.
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Print a built-in example structure.
    Example {
        /// Size of the chain example.
        #[arg(long)]
        chain: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct HomArgs {
    /// Morphism file: {"source": path, "target": path, "map": {label: label}}.
    #[arg(long, value_name = "MORPHFILE")]
    check: Option<PathBuf>,
    /// Source and target structure files.
    #[arg(long, num_args = 2, value_names = ["SRC", "DST"])]
    enumerate: Option<Vec<PathBuf>>,
}

enum Failure {
    Input(InputError),
    Claim(Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

/// Distinguishes refuted theorems from ordinary input problems.
fn lib_error(e: Error) -> Failure {
    if e.is_claim_violation() {
        Failure::Claim(e)
    } else {
        Failure::Input(InputError::Usage(e.to_string()))
    }
}

struct Out {
    lines: Vec<Value>,
}

impl Out {
    fn emit(&mut self, v: Value) {
        self.lines.push(v);
    }

    fn flush(&self) -> io::Result<()> {
        let mut stdout = io::stdout().lock();
        for v in &self.lines {
            writeln!(stdout, "{v}")?;
        }
        stdout.flush()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("hbck: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = Out { lines: Vec::new() };
    let code = match run(cli.command, &mut out) {
        Ok(passed) => u8::from(!passed),
        Err(Failure::Input(e)) => {
            let rec = e.to_record();
            eprintln!("hbck: {}", rec["message"].as_str().unwrap_or("invalid input"));
            out.emit(rec);
            2
        }
        Err(Failure::Claim(e)) => {
            let Error::ClaimViolation { claim, witness } = &e else { unreachable!() };
            eprintln!("hbck: {e}");
            out.emit(json!({"record": "claim-violation", "claim": claim, "witness": witness}));
            3
        }
    };
    if out.flush().is_err() {
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}

fn labels(alg: &HyperBCK, s: hyperbck::Subset) -> Vec<String> {
    alg.carrier().labels_of(s).into_iter().map(str::to_string).collect()
}

fn map_record(hom: &Hom) -> Value {
    hom.label_pairs()
        .into_iter()
        .map(|(a, b)| (a.to_string(), Value::from(b)))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn structure_value(s: Structure) -> Value {
    serde_json::to_value(StructureDocument::from_structure(&s)).expect("documents serialize")
}

fn report_records(out: &mut Out, alg: &HyperBCK, report: &ValidationReport) {
    for v in report.violations() {
        out.emit(json!({
            "record": "violation",
            "check": v.check.id(),
            "witness": v.witness_labels(alg.carrier()),
        }));
    }
    for n in report.notes() {
        out.emit(json!({"record": "note", "name": n.name, "holds": n.holds, "detail": n.detail}));
    }
}

fn run(command: Command, out: &mut Out) -> Result<bool, Failure> {
    match command {
        Command::Verify { file, strict_hk4 } => {
            let s = load::structure(&file)?;
            let mut report = s.alg().validate(strict_hk4);
            if let Some(f) = s.fuzzy() {
                report = report.merge(validate_fuzzy(f));
            }
            report_records(out, s.alg(), &report);
            out.emit(json!({
                "record": "summary",
                "command": "verify",
                "fuzzy": s.fuzzy().is_some(),
                "strict_hk4": strict_hk4,
                "violations": report.violations().len(),
                "passed": report.passed(),
            }));
            Ok(report.passed())
        }
        Command::Cut { file, alpha } => {
            let alpha: FuzzyValue = alpha
                .parse()
                .map_err(|e: Error| InputError::Usage(format!("--alpha: {e}")))?;
            let f = load::fuzzy_structure(&file)?;
            let cut = alpha_cut(&f, alpha);
            let closed = !cut.is_empty() && f.alg().is_subalgebra(cut).unwrap_or(false);
            out.emit(json!({
                "record": "cut",
                "alpha": alpha.to_string(),
                "subset": labels(f.alg(), cut),
                "contains_zero": cut.contains(f.alg().zero()),
                "subalgebra": closed,
            }));
            Ok(true)
        }
        Command::Hom(args) => hom(args, out),
        Command::Product { factors } => {
            let factors = factors
                .iter()
                .map(|p| load::structure(p).map(load::as_fuzzy))
                .collect::<Result<Vec<_>, _>>()?;
            construction(out, construct::product(&factors).map_err(lib_error)?)
        }
        Command::Equalizer { f, g } => {
            let (f, g) = (load::fuzzy_morphism(&f)?, load::fuzzy_morphism(&g)?);
            construction(out, construct::equalizer(&f, &g).map_err(lib_error)?)
        }
        Command::Coequalizer { f, g, max_size } => {
            let (f, g) = (load::fuzzy_morphism(&f)?, load::fuzzy_morphism(&g)?);
            construction(out, construct::coequalizer(&f, &g, max_size).map_err(lib_error)?)
        }
        Command::Pullback { f, g } => {
            let (f, g) = (load::fuzzy_morphism(&f)?, load::fuzzy_morphism(&g)?);
            construction(out, construct::pullback(&f, &g).map_err(lib_error)?)
        }
        Command::Enumerate { size, up_to_iso } => {
            let policy = if up_to_iso { Policy::UpToIso } else { Policy::Raw };
            let corpus = enumerate::corpus(size, policy).map_err(lib_error)?;
            for (i, m) in corpus.models.iter().enumerate() {
                out.emit(json!({
                    "record": "model",
                    "index": i,
                    "structure": structure_value(Structure::Crisp(m.clone())),
                }));
            }
            out.emit(json!({
                "record": "summary",
                "command": "enumerate",
                "size": size,
                "up_to_iso": up_to_iso,
                "count": corpus.models.len(),
            }));
            Ok(true)
        }
        Command::Example { chain } => {
            let f = enumerate::chain_example(chain).map_err(lib_error)?;
            print!("{}", render_structure(&Structure::Fuzzy(f)));
            Ok(true)
        }
    }
}

fn hom(args: HomArgs, out: &mut Out) -> Result<bool, Failure> {
    if let Some(path) = args.check {
        let m = load::morphism(&path)?;
        let fuzzy_ends = m.source.fuzzy().zip(m.target.fuzzy());
        let (is_hom, fuzzy, detail, map) = match &m.hom {
            Ok(h) => {
                let fuzzy = fuzzy_ends.map(|(s, t)| is_fuzzy_hom(h, s, t).expect("matching ends"));
                (true, fuzzy, None, Some(map_record(h)))
            }
            Err(e) => (false, fuzzy_ends.map(|_| false), Some(e.to_string()), None),
        };
        let mut rec = json!({
            "record": "hom",
            "hom": is_hom,
            "fuzzy_hom": fuzzy,
        });
        if let Ok(h) = m.hom.as_ref() {
            rec["injective"] = h.is_injective().into();
            rec["surjective"] = h.is_surjective().into();
        }
        if let Some(map) = map {
            rec["map"] = map;
        }
        if let Some(detail) = detail {
            rec["witness"] = detail.into();
        }
        out.emit(rec);
        return Ok(is_hom && fuzzy.unwrap_or(true));
    }
    let paths = args.enumerate.expect("clap enforces one of the two modes");
    let (src, dst) = (load::structure(&paths[0])?, load::structure(&paths[1])?);
    let homs: Vec<Hom> = match (src.fuzzy(), dst.fuzzy()) {
        (Some(s), Some(t)) => enumerate_fuzzy_homs(s, t).into_iter().map(|f| f.hom().clone()).collect(),
        _ => enumerate_homs(src.alg(), dst.alg()),
    };
    for h in &homs {
        out.emit(json!({
            "record": "hom",
            "map": map_record(h),
            "injective": h.is_injective(),
            "surjective": h.is_surjective(),
        }));
    }
    out.emit(json!({
        "record": "summary",
        "command": "hom",
        "fuzzy": src.fuzzy().is_some() && dst.fuzzy().is_some(),
        "count": homs.len(),
    }));
    Ok(true)
}

fn leg_record(name: &str, arrow: &FuzzyHom) -> Value {
    json!({"record": "leg", "name": name, "map": map_record(arrow.hom())})
}

fn construction(out: &mut Out, r: ConstructionResult) -> Result<bool, Failure> {
    let mut rec = json!({
        "record": "object",
        "kind": r.provenance.kind(),
        "structure": structure_value(Structure::Fuzzy(r.object.clone())),
    });
    if let Provenance::Coequalizer { sigma, rho, .. } = &r.provenance {
        let blocks = |c: &construct::Congruence| -> Vec<Vec<String>> {
            c.blocks().iter().map(|&b| labels(c.base(), b)).collect()
        };
        rec["rho"] = json!(blocks(rho));
        rec["sigma_size"] = sigma.len().into();
    }
    out.emit(rec);
    for leg in &r.legs {
        out.emit(leg_record(&leg.name, &leg.arrow));
    }
    Ok(true)
}
