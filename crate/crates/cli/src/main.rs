use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use digroup::cayley::{self, CayleyError};
use digroup::enumerate::{self, EnumError};
use digroup::io::{self, DgtFile, PermNotation, TdsFile};
use digroup::report::{CatalogSection, ClassificationReport, EmbeddingSection, ReportDocument};
use digroup::transform::DEFAULT_MATERIALIZATION_GUARD;
use digroup::{find_isomorphism, validate_digroup, Digroup};

const GUARD_VAR: &str = "DIGROUP_MAX_ORDER";

#[derive(Parser)]
#[command(
    name = "digroup",
    version,
    about = "Check, analyze, construct and classify finite digroups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every digroup axiom on a .dgt file
    Verify { path: PathBuf },
    /// Report halo, identities, centers and inverses of a .dgt file
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Materialize a .tds construction as a .dgt file
    Construct {
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Read permutations in cycle notation
        #[arg(long)]
        cycles: bool,
    },
    /// Embed a .dgt digroup into a transformation digroup and verify the embedding
    Embed {
        path: PathBuf,
        /// Output prefix: writes <prefix>.tds, <prefix>.map and <prefix>.json
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Bar-unit to embed with respect to (default: the least one)
        #[arg(long)]
        bar_unit: Option<usize>,
        /// Write permutations in cycle notation
        #[arg(long)]
        cycles: bool,
    },
    /// Search for an isomorphism between two .dgt files
    Iso { a: PathBuf, b: PathBuf },
    /// Enumerate digroups of a given order up to isomorphism
    Classify {
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value_t = MethodArg::Constructive)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Constructive,
    Both,
}

/// A reason to stop, with its exit code.
enum Failure {
    /// Unreadable or malformed input, or input rejected by a guard.
    Input(String),
    /// The tables are not a digroup, or a verification failed.
    Invalid(String),
    NotIsomorphic,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Input(_) => 2,
            Failure::NotIsomorphic => 3,
        }
    }
}

type Outcome = Result<(), Failure>;

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_dgt(path: &Path) -> Result<DgtFile, Failure> {
    io::parse_dgt(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Parses and validates; invalid tables print their violations and fail with code 1.
fn load_digroup(path: &Path) -> Result<Digroup, Failure> {
    let file = load_dgt(path)?;
    let report = validate_digroup(&file.left, &file.right).expect("parsed tables have equal order");
    if !report.valid {
        return Err(Failure::Invalid(format!(
            "{}: not a digroup\n{}",
            path.display(),
            ReportDocument::invalid(&report).to_text().trim_end()
        )));
    }
    Ok(file.into_digroup().expect("validated"))
}

fn materialization_guard() -> Result<usize, Failure> {
    match std::env::var(GUARD_VAR) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Input(format!("{GUARD_VAR} must be a positive integer, got `{v}`"))
        }),
        Err(_) => Ok(DEFAULT_MATERIALIZATION_GUARD),
    }
}

fn notation(cycles: bool) -> PermNotation {
    if cycles {
        PermNotation::Cycles
    } else {
        PermNotation::OneLine
    }
}

fn verify(path: &Path) -> Outcome {
    let file = load_dgt(path)?;
    let report = validate_digroup(&file.left, &file.right).expect("parsed tables have equal order");
    if report.valid {
        emit(&format!("valid digroup of order {}\n", file.order()));
        Ok(())
    } else {
        Err(Failure::Invalid(
            ReportDocument::invalid(&report)
                .to_text()
                .trim_end()
                .to_string(),
        ))
    }
}

fn analyze(path: &Path, format: Format) -> Outcome {
    let d = load_digroup(path)?;
    let doc = ReportDocument::analyze(&d).map_err(|e| Failure::Invalid(e.to_string()))?;
    match format {
        Format::Text => emit(&doc.to_text()),
        Format::Json => emit(&format!("{}\n", doc.to_json())),
    }
    Ok(())
}

fn construct(spec_path: &Path, output: Option<&Path>, cycles: bool) -> Outcome {
    let text = read(spec_path)?;
    let tds = io::parse_tds(&text, notation(cycles))
        .map_err(|e| Failure::Input(format!("{}: {e}", spec_path.display())))?;
    let spec = tds
        .to_spec()
        .map_err(|e| Failure::Input(format!("{}: {e}", spec_path.display())))?;
    let built = spec
        .build_guarded(materialization_guard()?)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let out = io::format_dgt(&DgtFile::from_construction(&built));
    match output {
        Some(p) => {
            write(p, &out)?;
            eprintln!("wrote {} (order {})", p.display(), built.digroup.order());
        }
        None => emit(&out),
    }
    Ok(())
}

fn map_table(emb: &cayley::Embedding) -> String {
    let mut out = String::from("# element target\n");
    for (x, l) in emb.map.iter().enumerate() {
        let _ = writeln!(out, "# {x} = {l}");
    }
    for (x, t) in emb.target_indices().into_iter().enumerate() {
        let _ = writeln!(out, "{x} {t}");
    }
    out
}

fn embed(path: &Path, output: Option<&Path>, bar_unit: Option<usize>, cycles: bool) -> Outcome {
    let d = load_digroup(path)?;
    let e = bar_unit.unwrap_or_else(|| d.default_bar_unit());
    if !d.is_bar_unit(e) {
        return Err(Failure::Input(format!("{e} is not a bar-unit")));
    }
    let emb = cayley::embed(&d, e).map_err(|err| match err {
        CayleyError::Verification { .. } | CayleyError::Digroup(_) => {
            Failure::Invalid(err.to_string())
        }
        other => Failure::Input(other.to_string()),
    })?;
    let mut tds = TdsFile::from_spec(emb.spec());
    tds.comments.push(format!(
        "embedding of {} w.r.t. bar-unit {e}",
        path.display()
    ));
    let tds_text = io::format_tds(&tds, notation(cycles));
    let map_text = map_table(&emb);
    let json =
        serde_json::to_string_pretty(&EmbeddingSection::new(&emb)).expect("evidence serializes");
    match output {
        Some(prefix) => {
            let with = |ext: &str| {
                let mut p = prefix.as_os_str().to_owned();
                p.push(ext);
                PathBuf::from(p)
            };
            write(&with(".tds"), &tds_text)?;
            write(&with(".map"), &map_text)?;
            write(&with(".json"), &format!("{json}\n"))?;
        }
        None => emit(&format!("{tds_text}{map_text}")),
    }
    let ev = emb.evidence;
    eprintln!(
        "embedding verified: injective, preserves both products, surjective; {} = {} * {}",
        ev.order, ev.halo_size, ev.translation_group_order
    );
    Ok(())
}

fn iso(a: &Path, b: &Path) -> Outcome {
    let (da, db) = (load_digroup(a)?, load_digroup(b)?);
    match find_isomorphism(&da, &db) {
        Some(map) => {
            let mut out = String::from("isomorphic\n");
            for (x, y) in map.iter().enumerate() {
                let _ = writeln!(out, "{x} {y}");
            }
            emit(&out);
            Ok(())
        }
        None => {
            emit("not isomorphic\n");
            Err(Failure::NotIsomorphic)
        }
    }
}

fn classify(order: usize, method: MethodArg, format: Format) -> Outcome {
    let enum_err = |e: EnumError| Failure::Input(e.to_string());
    let brute = matches!(method, MethodArg::Brute | MethodArg::Both)
        .then(|| enumerate::brute_enumerate(order))
        .transpose()
        .map_err(enum_err)?;
    let constructive = matches!(method, MethodArg::Constructive | MethodArg::Both)
        .then(|| enumerate::constructive_enumerate(order))
        .transpose()
        .map_err(enum_err)?;
    let cross_check = match (&brute, &constructive) {
        (Some(b), Some(c)) => Some(enumerate::match_catalogs(b, c)),
        _ => None,
    };
    let agrees = cross_check.as_ref().is_none_or(|cc| cc.agrees());
    let report = ClassificationReport {
        order,
        catalogs: brute
            .iter()
            .chain(&constructive)
            .map(CatalogSection::new)
            .collect(),
        cross_check,
    };
    match format {
        Format::Text => emit(&report.to_text()),
        Format::Json => emit(&format!("{}\n", report.to_json())),
    }
    if agrees {
        Ok(())
    } else {
        Err(Failure::Invalid(
            "brute and constructive catalogs disagree".into(),
        ))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Verify { path } => verify(path),
        Command::Analyze { path, format } => analyze(path, *format),
        Command::Construct {
            spec,
            output,
            cycles,
        } => construct(spec, output.as_deref(), *cycles),
        Command::Embed {
            path,
            output,
            bar_unit,
            cycles,
        } => embed(path, output.as_deref(), *bar_unit, *cycles),
        Command::Iso { a, b } => iso(a, b),
        Command::Classify {
            order,
            method,
            format,
        } => classify(*order, *method, *format),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Input(msg) => eprintln!("error: {msg}"),
                Failure::Invalid(msg) => emit(&format!("{msg}\n")),
                Failure::NotIsomorphic => {}
            }
            ExitCode::from(f.code())
        }
    }
}
