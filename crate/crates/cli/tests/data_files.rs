use nilvar::data::{self, DataPaths};
use nilvar_core::catalog::TABLE_ORDER;
use nilvar_core::extensions::cocycle_check;
use nilvar_core::format::ListedReason;

fn ctx() -> nilvar::checks::Context {
    nilvar::checks::Context::load(DataPaths::default(), nilvar::checks::DEFAULT_SEED).unwrap()
}

#[test]
fn catalog_files_match_the_bundled_table() {
    let paths = DataPaths::default();
    let cat = data::load_catalog(&paths.catalog).unwrap();
    assert_eq!(cat.len(), TABLE_ORDER.len());
    let builtin = nilvar_core::Catalog::builtin();
    for e in cat.entries() {
        let b = builtin.get(e.name()).unwrap();
        assert!(e.algebra.same_constants(&b.algebra), "{}", e.name());
        assert_eq!(e.orbit_dim, b.orbit_dim, "{}", e.name());
    }
}

#[test]
fn every_shipped_file_parses() {
    let paths = DataPaths::default();
    assert_eq!(data::load_corpus(&paths.corpus).unwrap().len(), 40);
    assert_eq!(data::load_external(&paths.external).unwrap().len(), 7);
    assert_eq!(data::load_listed_pairs(&paths.nondeg_table).unwrap().len(), 202);
    assert_eq!(data::load_presentations(&paths.presentations).unwrap().len(), 3);
    for f in data::files_with_extension(&paths.families, "fam").unwrap() {
        data::load_family(&f).unwrap();
    }
}

#[test]
fn fact_lists_name_catalog_entries() {
    let c = ctx();
    for f in &c.external {
        assert!(c.catalog.contains(&f.source) && c.catalog.contains(&f.target), "{f:?}");
    }
    for p in data::load_listed_pairs(&c.paths.nondeg_table).unwrap() {
        assert!(c.catalog.contains(&p.source) && c.catalog.contains(&p.target), "{p:?}");
        assert!(matches!(p.reason, ListedReason::Invariant(_)));
    }
}

#[test]
fn shipped_cocycles_are_cocycles() {
    let c = ctx();
    let base = c.algebra("h3+C3").unwrap();
    for f in data::files_with_extension(&c.paths.cocycles, "coc").unwrap() {
        let b = data::load_cocycle(&f).unwrap();
        assert_eq!(b.base.as_deref(), Some("h3+C3"));
        assert!(cocycle_check(&base, &b.cocycle).unwrap(), "{}", f.display());
    }
}

#[test]
fn presentations_resolve_through_their_witnesses() {
    let c = ctx();
    let iso = data::load_iso(&c.paths.iso.join("adapted_to_n5_1_n3_1.iso")).unwrap();
    assert!(iso.check(&c.algebra(&iso.source).unwrap(), &c.algebra(&iso.target).unwrap()).unwrap());
    let table = c.algebra("N7_8_3:table").unwrap();
    let b1a = data::load_iso(&c.paths.iso.join("b1A_to_N7_8_3.iso")).unwrap();
    assert!(b1a.check(&table, c.catalog.algebra("N7_8_3").unwrap()).unwrap());
}

#[test]
fn universal_witnesses_verify() {
    let c = ctx();
    let (g, reports) = nilvar::checks::corpus_graph(&c, &c.paths.corpus).unwrap();
    let failing: Vec<&String> = reports.iter().filter(|(_, r)| !r.passed()).map(|(f, _)| f).collect();
    assert_eq!(failing, vec!["n5_8_2_to_n53_n31.wit"]);
    assert_eq!(g.verified().len(), 39);
    assert!(g.has_edge("n5_1+n3_1", "n3_1"));
    assert!(g.consistency_check(&nilvar_core::obstructions::obstruction_matrix(&c.profiles)).is_consistent());
}

#[test]
fn parse_errors_carry_file_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.alg");
    std::fs::write(&p, "name x\ndim 3\n[1,2] = e9\n").unwrap();
    let e = data::load_algebra_file(&p).unwrap_err().to_string();
    assert!(e.starts_with(&format!("{}:3:", p.display())), "{e}");
    let dup = dir.path().join("cat");
    std::fs::create_dir(&dup).unwrap();
    for f in ["a.alg", "b.alg"] {
        std::fs::write(dup.join(f), "name x\ndim 2\norbit 0\n").unwrap();
    }
    assert!(matches!(data::load_catalog(&dup), Err(data::DataError::Duplicate { .. })));
}
