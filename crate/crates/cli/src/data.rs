//! Loading catalogs, witnesses, cocycles and fact lists from disk.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use nilvar_core::catalog::Catalog;
use nilvar_core::format::{self, AlgebraFile, CocycleFile, IsoWitness, ListedPair, ParseError};
use nilvar_core::obstructions::ExternalFact;
use nilvar_core::{DegenerationWitness, LieAlgebra};

#[derive(Debug, thiserror::Error)]
pub enum DataError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}:{}:{}: {}", path.display(), error.line, error.column, error.message)]
    Parse { path: PathBuf, error: ParseError },
    #[error("{}: {source}", path.display())]
    Core { path: PathBuf, source: nilvar_core::Error },
    #[error("{}: algebra {name} is defined twice", path.display())]
    Duplicate { path: PathBuf, name: String },
    #[error("unknown algebra `{0}`: not a catalog entry, presentation or readable file")]
    Unresolved(String),
}

pub type Result<T> = std::result::Result<T, DataError>;

/// The `data` directory shipped with the sources.
pub fn default_data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| DataError::Io { path: path.into(), source })
}

fn parsed<T>(path: &Path, r: std::result::Result<T, ParseError>) -> Result<T> {
    r.map_err(|error| DataError::Parse { path: path.into(), error })
}

/// Files in `dir` with the given extension, sorted by file name.
pub fn files_with_extension(dir: &Path, ext: &str) -> Result<Vec<PathBuf>> {
    let entries = fs::read_dir(dir).map_err(|source| DataError::Io { path: dir.into(), source })?;
    let mut out = Vec::new();
    for e in entries {
        let p = e.map_err(|source| DataError::Io { path: dir.into(), source })?.path();
        if p.extension().is_some_and(|x| x == ext) {
            out.push(p);
        }
    }
    out.sort();
    Ok(out)
}

pub fn load_algebra_file(path: &Path) -> Result<AlgebraFile> {
    let text = read(path)?;
    parsed(path, format::parse_algebra_file(&text))
}

/// Every `*.alg` file in `dir`; each needs an `orbit` line.
pub fn load_catalog(dir: &Path) -> Result<Catalog> {
    let mut cat = Catalog::new();
    for p in files_with_extension(dir, "alg")? {
        let entry = load_algebra_file(&p)?.into_catalog_entry().map_err(|source| DataError::Core { path: p.clone(), source })?;
        if cat.contains(entry.name()) {
            return Err(DataError::Duplicate { path: p, name: entry.name().into() });
        }
        cat.insert(entry);
    }
    Ok(cat)
}

/// Presentations keyed by their `name` line.
pub fn load_presentations(dir: &Path) -> Result<BTreeMap<String, LieAlgebra>> {
    let mut out = BTreeMap::new();
    for p in files_with_extension(dir, "alg")? {
        let a = load_algebra_file(&p)?.algebra;
        if out.contains_key(a.name()) {
            return Err(DataError::Duplicate { path: p, name: a.name().into() });
        }
        out.insert(a.name().to_string(), a);
    }
    Ok(out)
}

pub fn load_witness(path: &Path) -> Result<DegenerationWitness> {
    let text = read(path)?;
    parsed(path, format::parse_witness(&text))
}

/// Every `*.wit` file in `dir`, sorted by file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<(PathBuf, DegenerationWitness)>> {
    files_with_extension(dir, "wit")?.into_iter().map(|p| load_witness(&p).map(|w| (p, w))).collect()
}

pub fn load_external(path: &Path) -> Result<Vec<ExternalFact>> {
    let text = read(path)?;
    parsed(path, format::parse_external_facts(&text))
}

pub fn load_listed_pairs(path: &Path) -> Result<Vec<ListedPair>> {
    let text = read(path)?;
    parsed(path, format::parse_listed_pairs(&text))
}

pub fn load_cocycle(path: &Path) -> Result<CocycleFile> {
    let text = read(path)?;
    parsed(path, format::parse_cocycle(&text))
}

pub fn load_iso(path: &Path) -> Result<IsoWitness> {
    let text = read(path)?;
    parsed(path, format::parse_iso(&text))
}

/// Locations of the shipped data, overridable piece by piece.
#[derive(Clone, Debug)]
pub struct DataPaths {
    pub catalog: PathBuf,
    pub corpus: PathBuf,
    pub external: PathBuf,
    pub presentations: PathBuf,
    pub cocycles: PathBuf,
    pub iso: PathBuf,
    pub nondeg_table: PathBuf,
    pub families: PathBuf,
}

impl DataPaths {
    pub fn under(root: &Path) -> Self {
        DataPaths {
            catalog: root.join("catalog"),
            corpus: root.join("corpus"),
            external: root.join("external.txt"),
            presentations: root.join("presentations"),
            cocycles: root.join("cocycles"),
            iso: root.join("iso"),
            nondeg_table: root.join("nondeg_table.txt"),
            families: root.join("families"),
        }
    }
}

impl Default for DataPaths {
    fn default() -> Self {
        Self::under(&default_data_dir())
    }
}

/// Looks a name up in the catalog, then among presentations, then as a path.
pub fn resolve_algebra(name: &str, catalog: &Catalog, presentations: &BTreeMap<String, LieAlgebra>) -> Result<LieAlgebra> {
    if let Ok(a) = catalog.algebra(name) {
        return Ok(a.clone());
    }
    if let Some(a) = presentations.get(name) {
        return Ok(a.clone());
    }
    let p = Path::new(name);
    if p.is_file() {
        return Ok(load_algebra_file(p)?.algebra);
    }
    Err(DataError::Unresolved(name.into()))
}

pub fn load_family(path: &Path) -> Result<format::Family> {
    let text = read(path)?;
    parsed(path, format::parse_family(&text))
}
