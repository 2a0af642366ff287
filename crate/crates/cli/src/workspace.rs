use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use semispec::kernel::construct;
use semispec::presented::{Bound, CongruenceIndex, Presentation};
use semispec::{Error, FiniteSemiring, Result};

/// Bounds shared by every command.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Config {
    pub congruence_bound: u32,
    pub spectrum_limit: usize,
    pub witness_bound: u32,
}

/// Named semirings on disk: `<dir>/<name>.json` holds the tables and
/// `<dir>/<name>.meta.json` where they came from.
pub struct Workspace {
    dir: PathBuf,
    pub config: Config,
}

impl Workspace {
    pub fn new(dir: PathBuf, config: Config) -> Self {
        Workspace { dir, config }
    }

    fn table_path(&self, name: &str) -> PathBuf {
        self.dir.join(format!("{name}.json"))
    }

    fn check_name(name: &str) -> Result<()> {
        let ok = !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || "-_.".contains(c));
        if !ok || name.starts_with('.') {
            return Err(Error::Parse(format!("invalid registry name {name:?}")));
        }
        Ok(())
    }

    /// Registered names first, then the built-in constructions.
    pub fn resolve(&self, name: &str) -> Result<FiniteSemiring> {
        let path = self.table_path(name);
        if Self::check_name(name).is_ok() && path.is_file() {
            return FiniteSemiring::from_json(&fs::read_to_string(path)?);
        }
        construct::by_name(name).ok_or_else(|| {
            Error::Precondition(format!("no semiring named {name:?} in {} or among the built-ins", self.dir.display()))
        })
    }

    /// Stores `a` under `name` together with its provenance; names are unique.
    pub fn register(&self, name: &str, a: &FiniteSemiring, provenance: Value, force: bool) -> Result<PathBuf> {
        Self::check_name(name)?;
        if construct::by_name(name).is_some() {
            return Err(Error::Precondition(format!("{name:?} is a built-in name")));
        }
        let path = self.table_path(name);
        if path.exists() && !force {
            return Err(Error::Precondition(format!("{name:?} is already registered")));
        }
        fs::create_dir_all(&self.dir)?;
        fs::write(&path, a.to_json())?;
        let meta = json!({ "name": name, "provenance": provenance, "config": self.config });
        fs::write(self.dir.join(format!("{name}.meta.json")), serde_json::to_string_pretty(&meta)?)?;
        Ok(path)
    }

    pub fn names(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        if self.dir.is_dir() {
            for entry in fs::read_dir(&self.dir)? {
                let file = entry?.file_name().to_string_lossy().into_owned();
                if let Some(name) = file.strip_suffix(".json").filter(|n| !n.ends_with(".meta")) {
                    out.push(name.to_string());
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Reads a table file, or a presentation file whose bounded finite quotient
/// is taken.
pub fn load_file(path: &Path, config: &Config, max_classes: usize) -> Result<(FiniteSemiring, Value)> {
    let text = fs::read_to_string(path)?;
    let doc: Value = serde_json::from_str(&text)?;
    if doc.get("gens").is_some() {
        let p = Presentation::from_json(&text)?;
        let mut index = CongruenceIndex::build(&p, Bound::uniform(config.congruence_bound))?;
        let (a, reps) = index.finite_quotient(max_classes)?;
        let reps: Vec<String> = reps.iter().map(|t| p.format(t)).collect();
        let provenance = json!({ "source": path.display().to_string(), "kind": "presentation", "classes": reps });
        Ok((a, provenance))
    } else {
        let a = FiniteSemiring::from_json(&text)?;
        Ok((a, json!({ "source": path.display().to_string(), "kind": "tables" })))
    }
}
