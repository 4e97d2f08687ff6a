use nilvar_core::catalog::{profile_table, Catalog, TABLE_ORDER};
use nilvar_core::invariants::{betti, ce_betti, center, derived, orbit_dim};

#[test]
fn orbit_dimensions_match_the_table() {
    let cat = Catalog::builtin();
    assert_eq!(cat.len(), 35);
    for e in cat.entries() {
        assert_eq!(orbit_dim(&e.algebra), e.orbit_dim, "{}", e.name());
    }
}

#[test]
fn table_order_names_every_entry() {
    let cat = Catalog::builtin();
    for name in TABLE_ORDER {
        assert!(cat.contains(name), "{name}");
    }
}

#[test]
fn degree_four_anchors() {
    let cat = Catalog::builtin();
    assert_eq!(ce_betti(cat.algebra("N1_8_3").unwrap(), 4).unwrap(), 30);
    assert_eq!(ce_betti(cat.algebra("G37D").unwrap(), 4).unwrap(), 28);
}

#[test]
fn betti_numbers_obey_duality() {
    for e in Catalog::builtin().entries() {
        let b = betti(&e.algebra);
        let euler: i64 = b.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        assert_eq!(euler, 0, "{}", e.name());
        for k in 0..=8 {
            assert_eq!(b[k], b[8 - k], "{} degree {k}", e.name());
        }
        assert_eq!(b[0], 1);
        assert_eq!(b[1], 8 - derived(&e.algebra).dim(), "{}", e.name());
    }
}

#[test]
fn two_step_means_derived_inside_center() {
    for e in Catalog::builtin().entries() {
        assert!(center(&e.algebra).contains_subspace(&derived(&e.algebra)), "{}", e.name());
    }
}

#[test]
fn max_abelian_is_certified_everywhere() {
    let table = profile_table(&Catalog::builtin()).unwrap();
    for (name, p) in &table {
        assert!(p.max_abelian.is_certified(), "{name}: {:?}", (p.max_abelian.lower, p.max_abelian.upper));
    }
    assert_eq!(table["N2_8_2"].max_abelian.exact(), Some(6));
    assert_eq!(table["n5_3+n3_1"].max_abelian.exact(), Some(5));
    assert_eq!(table["A8"].max_abelian.exact(), Some(8));
}
