//! Named algebras with their expected orbit dimensions.

use alloc::collections::BTreeMap;
use alloc::string::String;

use crate::algebra::LieAlgebra;
use crate::error::{Error, Result};
use crate::format;
use crate::invariants::{profile_with, InvariantProfile, MaxAbelianConfig};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub algebra: LieAlgebra,
    pub orbit_dim: usize,
    pub label: String,
}

impl CatalogEntry {
    pub fn name(&self) -> &str {
        self.algebra.name()
    }
}

/// Catalog entries keyed by name; iteration is in name order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Replaces any entry with the same name.
    pub fn insert(&mut self, entry: CatalogEntry) {
        self.entries.insert(entry.name().into(), entry);
    }

    pub fn get(&self, name: &str) -> Result<&CatalogEntry> {
        self.entries.get(name).ok_or_else(|| Error::UnknownAlgebra(name.into()))
    }

    pub fn algebra(&self, name: &str) -> Result<&LieAlgebra> {
        self.get(name).map(|e| &e.algebra)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = &CatalogEntry> {
        self.entries.values()
    }

    /// Keeps only the named entries.
    pub fn restricted(&self, names: &[&str]) -> Result<Catalog> {
        let mut out = Catalog::new();
        for n in names {
            out.insert(self.get(n)?.clone());
        }
        Ok(out)
    }

    /// The 35 algebras of the classification, in dimension 8.
    pub fn builtin() -> Catalog {
        let mut c = Catalog::new();
        for (file, text) in BUILTIN {
            let parsed = format::parse_algebra_file(text).unwrap_or_else(|e| panic!("bundled {file}: {e}"));
            let entry = parsed.into_catalog_entry().unwrap_or_else(|e| panic!("bundled {file}: {e}"));
            c.insert(entry);
        }
        c
    }
}

/// Profiles of every catalog entry, keyed by name.
pub type ProfileTable = BTreeMap<String, InvariantProfile>;

pub fn profile_table(catalog: &Catalog) -> Result<ProfileTable> {
    profile_table_with(catalog, &MaxAbelianConfig::default())
}

pub fn profile_table_with(catalog: &Catalog, cfg: &MaxAbelianConfig) -> Result<ProfileTable> {
    catalog.entries().map(|e| Ok((e.name().into(), profile_with(&e.algebra, cfg)?))).collect()
}

/// Names in the order the classification table lists them.
pub const TABLE_ORDER: [&str; 35] = [
    "N1_8_2", "N2_8_2", "N3_8_2", "N4_8_2", "N5_8_2", "N1_8_3", "N2_8_3", "N3_8_3", "N4_8_3", "N5_8_3", "N6_8_3",
    "N7_8_3", "N8_8_3", "N9_8_3", "N10_8_3", "N11_8_3", "N1_8_4", "N2_8_4", "N3_8_4", "G17", "G27A", "G27B", "G37A",
    "G37B", "G37C", "G37D", "n6_1", "n6_2", "n5_1+n3_1", "n5_1", "n5_3+n3_1", "n5_3", "n3_1+n3_1", "n3_1", "A8",
];

macro_rules! bundled {
    ($($file:literal),* $(,)?) => {
        [$(($file, include_str!(concat!("../../../data/catalog/", $file)))),*]
    };
}

const BUILTIN: [(&str, &str); 35] = bundled!(
    "N1_8_2.alg", "N2_8_2.alg", "N3_8_2.alg", "N4_8_2.alg", "N5_8_2.alg", "N1_8_3.alg", "N2_8_3.alg", "N3_8_3.alg",
    "N4_8_3.alg", "N5_8_3.alg", "N6_8_3.alg", "N7_8_3.alg", "N8_8_3.alg", "N9_8_3.alg", "N10_8_3.alg", "N11_8_3.alg",
    "N1_8_4.alg", "N2_8_4.alg", "N3_8_4.alg", "G17.alg", "G27A.alg", "G27B.alg", "G37A.alg", "G37B.alg", "G37C.alg",
    "G37D.alg", "n6_1.alg", "n6_2.alg", "n5_1_n3_1.alg", "n5_1.alg", "n5_3_n3_1.alg", "n5_3.alg", "n3_1_n3_1.alg",
    "n3_1.alg", "A8.alg",
);

/// Text of a bundled catalog file, by algebra name.
pub fn bundled_source(name: &str) -> Option<&'static str> {
    let pos = TABLE_ORDER.iter().position(|n| *n == name)?;
    Some(BUILTIN[pos].1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_has_every_table_entry() {
        let c = Catalog::builtin();
        assert_eq!(c.len(), 35);
        for name in TABLE_ORDER {
            let e = c.get(name).unwrap();
            assert_eq!(e.algebra.dim(), 8);
            assert_eq!(bundled_source(name).map(|s| s.contains(name)), Some(true));
        }
        assert!(matches!(c.get("N12_8_3"), Err(Error::UnknownAlgebra(_))));
    }

    #[test]
    fn every_entry_is_two_step() {
        for e in Catalog::builtin().entries() {
            assert!(e.algebra.jacobi_residual().is_empty(), "{}", e.name());
            assert!(e.algebra.is_two_step(), "{}", e.name());
        }
    }
}
