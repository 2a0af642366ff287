mod workspace;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use semispec::kernel::{construct, enumerate_homs, verify_axioms};
use semispec::localize::harden;
use semispec::report::Report;
use semispec::sheaf::{equalizer_sections, principal_generator, Presheaf};
use semispec::spectra::{enumerate, SpectrumKind};
use semispec::valuation::{build_mra, vstar_homeo_check, DEFAULT_MODULE_LIMIT};
use semispec::verify::{self, VerifyConfig, CHECKS};
use semispec::{Error, FiniteSemiring, Result};

use workspace::{load_file, Config, Workspace};

/// `println!` that stops quietly when stdout is closed early (`| head`).
macro_rules! emit {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

/// Spectra, structure sheaves and universal valuations of finite semirings.
///
/// A NAME is either registered with `load` or one of the built-ins listed by
/// `list`. Exit codes: 0 pass, 1 fail, 2 parse error, 3 resource limit,
/// 4 precondition violated, 5 any other error.
#[derive(Parser)]
#[command(name = "semispec", version)]
struct Cli {
    /// Directory holding registered semirings.
    #[arg(long, env = "SEMISPEC_WORKSPACE", default_value = ".semispec", global = true)]
    workspace: PathBuf,
    /// Term size bound for congruence closure on presentations.
    #[arg(long, env = "SEMISPEC_CONGRUENCE_BOUND", default_value_t = 6, global = true)]
    congruence_bound: u32,
    /// Largest carrier accepted by the spectrum enumerators.
    #[arg(long, env = "SEMISPEC_SPECTRUM_LIMIT", default_value_t = 16, global = true)]
    spectrum_limit: usize,
    /// Largest exponent tried in localized equality searches.
    #[arg(long, env = "SEMISPEC_WITNESS_BOUND", default_value_t = 6, global = true)]
    witness_bound: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Spec,
    Sp,
}

impl From<Kind> for SpectrumKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Spec => SpectrumKind::Spec,
            Kind::Sp => SpectrumKind::Sp,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Register a semiring from a table or presentation JSON file.
    Load {
        path: PathBuf,
        /// Registry name; defaults to the file stem.
        #[arg(long)]
        name: Option<String>,
        /// Largest finite quotient taken from a presentation.
        #[arg(long, default_value_t = 64)]
        max_classes: usize,
        /// Replace an existing entry.
        #[arg(long)]
        force: bool,
    },
    /// Registered and built-in names.
    List,
    /// Check the semiring laws.
    Axioms { name: String },
    /// List the prime ideals.
    Spec { name: String },
    /// List the prime kernels.
    Sp { name: String },
    /// Export the Zariski topology.
    Topology {
        name: String,
        #[arg(long, value_enum, default_value = "spec")]
        kind: Kind,
        /// Graphviz output, specialization edges from generic to special points.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        /// Write to a file instead of stdout.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Sections over the union of D(a) for a cover, as an equalizer.
    Sheaf {
        name: String,
        /// Comma-separated element names; `#i` refers to index i.
        #[arg(long, value_delimiter = ',', required = true)]
        cover: Vec<String>,
        #[arg(long, value_enum, default_value = "spec")]
        kind: Kind,
    },
    /// Localize at the semi-invertible elements.
    Harden {
        name: String,
        /// Register the result under this name.
        #[arg(long)]
        save: Option<String>,
    },
    /// Build M_R(A) and check Sp M_R(A) ≅ Spec A.
    Mra {
        name: String,
        #[arg(long, default_value = "boolean")]
        scalars: String,
        #[arg(long, default_value_t = DEFAULT_MODULE_LIMIT)]
        module_limit: usize,
    },
    /// Run a named check, or `all`.
    Verify { id: String },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Json(_) | Error::Structural(_) => 2,
        Error::Resource(_) | Error::BoundExhausted(_) => 3,
        Error::Precondition(_) | Error::Unsupported(_) => 4,
        _ => 5,
    }
}

fn element(a: &FiniteSemiring, token: &str) -> Result<usize> {
    if let Some(i) = token.strip_prefix('#') {
        let i: usize = i.parse().map_err(|_| Error::Parse(format!("bad index {token:?}")))?;
        return if i < a.size() { Ok(i) } else { Err(Error::Precondition(format!("index {i} out of range"))) };
    }
    a.elements()
        .find(|&x| a.name(x) == token)
        .ok_or_else(|| Error::Parse(format!("no element named {token:?} in {}", a.label())))
}

fn print_report(r: &Report) -> bool {
    emit!("{}", r.to_json());
    r.passed()
}

fn run(cli: Cli) -> Result<bool> {
    let config = Config {
        congruence_bound: cli.congruence_bound,
        spectrum_limit: cli.spectrum_limit,
        witness_bound: cli.witness_bound,
    };
    let ws = Workspace::new(cli.workspace, config);
    match cli.command {
        Command::Load { path, name, max_classes, force } => {
            let (a, provenance) = load_file(&path, &ws.config, max_classes)?;
            let axioms = verify_axioms(&a);
            if !axioms.is_valid() {
                return Err(Error::Precondition(format!("not a semiring: {}", serde_json::to_string(&axioms)?)));
            }
            let name = match name {
                Some(n) => n,
                None => path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default(),
            };
            let stored = ws.register(&name, &a, provenance, force)?;
            emit!("{name}: {} elements -> {}", a.size(), stored.display());
        }
        Command::List => {
            for n in ws.names()? {
                emit!("{n}");
            }
            for (n, d) in construct::NAMED {
                emit!("{n:<12} {d}");
            }
        }
        Command::Axioms { name } => {
            let a = ws.resolve(&name)?;
            let r = verify_axioms(&a);
            emit!("{}", serde_json::to_string_pretty(&r)?);
            return Ok(r.is_valid());
        }
        Command::Spec { name } => list_points(&ws, &name, SpectrumKind::Spec)?,
        Command::Sp { name } => list_points(&ws, &name, SpectrumKind::Sp)?,
        Command::Topology { name, kind, dot, json: _, out } => {
            let a = ws.resolve(&name)?;
            let space = enumerate(&a, kind.into(), ws.config.spectrum_limit)?;
            let text = if dot { space.to_dot(&a) } else { space.to_json() };
            match out {
                Some(path) => fs::write(path, text + "\n")?,
                None => emit!("{text}"),
            }
        }
        Command::Sheaf { name, cover, kind } => {
            let a = ws.resolve(&name)?;
            let cover = cover.iter().map(|t| element(&a, t)).collect::<Result<Vec<_>>>()?;
            let space = enumerate(&a, kind.into(), ws.config.spectrum_limit)?;
            let union = cover.iter().fold(semispec::Subset::empty(), |acc, &x| acc.union(space.d(x)));
            let target = principal_generator(&space, union)
                .ok_or_else(|| Error::Precondition("the union of the cover is not a principal open".into()))?;
            let p = Presheaf::new(&a, &space);
            let eq = equalizer_sections(&p, &cover, target)?;
            let sections = &eq.sections.semiring;
            let names = |xs: &[usize]| xs.iter().map(|&x| a.name(x)).collect::<Vec<_>>();
            let r = Report::new(
                format!("S^-1 A -> sections over D({}) is an isomorphism", a.name(target)),
                eq.is_isomorphism(),
                vec![json!({
                    "cover": names(&cover),
                    "target": a.name(target),
                    "sections": serde_json::from_str::<serde_json::Value>(&sections.to_json())?,
                    "canonical": eq.canonical.map,
                    "hard": semispec::localize::is_hard(sections),
                })],
            );
            return Ok(print_report(&r));
        }
        Command::Harden { name, save } => {
            let a = ws.resolve(&name)?;
            let h = harden(&a);
            if let Some(target) = save {
                let provenance = json!({ "derived_from": name, "operation": "harden" });
                ws.register(&target, &h.semiring, provenance, false)?;
            }
            emit!("{}", serde_json::to_string_pretty(&json!({
                "semiring": serde_json::from_str::<serde_json::Value>(&h.semiring.to_json())?,
                "phi": h.phi.map,
            }))?);
        }
        Command::Mra { name, scalars, module_limit } => {
            let a = ws.resolve(&name)?;
            let r = ws.resolve(&scalars)?;
            let iota = enumerate_homs(&r, &a).into_iter().next().ok_or_else(|| {
                Error::Precondition(format!("no homomorphism {} -> {}", r.label(), a.label()))
            })?;
            let lattice = build_mra(&a, &r, &iota, module_limit)?;
            for i in 0..lattice.len() {
                let gens: Vec<String> = lattice.generators(i).iter().map(|&x| a.name(x)).collect();
                emit!("<{}>", gens.join(","));
            }
            let limit = ws.config.spectrum_limit.max(lattice.len());
            return Ok(print_report(&vstar_homeo_check(&lattice, limit)?));
        }
        Command::Verify { id } => {
            let cfg = VerifyConfig {
                congruence_bound: ws.config.congruence_bound,
                raised_congruence_bound: ws.config.congruence_bound + 2,
                spectrum_limit: ws.config.spectrum_limit,
                witness_bound: ws.config.witness_bound,
                ..VerifyConfig::default()
            };
            let ids: Vec<&str> = if id == "all" { CHECKS.iter().map(|(id, _)| *id).collect() } else { vec![&id] };
            let mut passed = true;
            for id in ids {
                let r = verify::run(id, &cfg)?;
                passed &= print_report(&r);
                eprintln!("{id}: {}", if r.passed() { "PASS" } else { "FAIL" });
            }
            return Ok(passed);
        }
    }
    Ok(true)
}

fn list_points(ws: &Workspace, name: &str, kind: SpectrumKind) -> Result<()> {
    let a = ws.resolve(name)?;
    let space = enumerate(&a, kind, ws.config.spectrum_limit)?;
    for i in 0..space.len() {
        let tag = if space.subtractive[i] { "  subtractive" } else { "" };
        emit!("p{i} = {}{tag}", space.point_name(&a, i));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
