use std::collections::BTreeSet;

use nilvar_core::degeneration::{transformed_constants, DegenerationWitness, Orientation, Provenance};
use nilvar_core::extensions::{cocycle_check, Cocycle};
use nilvar_core::format::{parse_algebra_file, parse_cocycle, parse_ratfunc, render_algebra, render_cocycle};
use nilvar_core::invariants::{betti, center, derived, max_abelian, orbit_dim};
use nilvar_core::poset::{DegenerationGraph, EdgeProvenance};
use nilvar_core::{BasisChange, Field, LieAlgebra, Matrix, Poly, RatFunc, Rational};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// A 2-step algebra on `n` generators: brackets of the first `g` basis
/// vectors land in the span of the rest.
fn two_step(n: usize) -> impl Strategy<Value = LieAlgebra> {
    (2..n).prop_flat_map(move |g| {
        let pairs = g * (g - 1) / 2;
        prop::collection::vec(prop::collection::vec(-1i64..=1, n - g), pairs).prop_map(move |vals| {
            let mut a = LieAlgebra::new("r", n);
            let mut it = vals.into_iter();
            for i in 0..g {
                for j in i + 1..g {
                    for (k, c) in it.next().unwrap().into_iter().enumerate() {
                        if c != 0 {
                            a.add_to_bracket(i, j, g + k, q(c)).unwrap();
                        }
                    }
                }
            }
            a
        })
    })
}

fn invertible(n: usize) -> impl Strategy<Value = BasisChange> {
    prop::collection::vec(-2i64..=2, n * n)
        .prop_filter_map("singular", move |v| BasisChange::new(Matrix::from_fn(n, n, |r, c| q(v[r * n + c]))).ok())
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-3i64..=3, 0..4).prop_map(|c| Poly::new(c.into_iter().map(q).collect()))
}

fn ratfunc() -> impl Strategy<Value = RatFunc> {
    (poly(), poly().prop_filter("zero denominator", |p| !p.is_zero())).prop_map(|(n, d)| RatFunc::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn action_is_a_group_action(a in two_step(5), g in invertible(5), h in invertible(5)) {
        let step = a.change_basis(&g).unwrap().change_basis(&h).unwrap();
        let once = a.change_basis(&h.compose(&g)).unwrap();
        prop_assert!(step.same_constants(&once));
        prop_assert!(a.change_basis(&BasisChange::identity(5)).unwrap().same_constants(&a));
        prop_assert!(a.change_basis(&g).unwrap().change_basis(&g.inverted()).unwrap().same_constants(&a));
    }

    #[test]
    fn transported_products_stay_two_step(a in two_step(6), g in invertible(6)) {
        let b = a.change_basis(&g).unwrap();
        prop_assert!(b.is_lie());
        prop_assert!(b.is_two_step());
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(a.clone() + (b.clone() + c.clone()), (a.clone() + b.clone()) + c.clone());
        prop_assert_eq!(a.clone() * (b.clone() * c.clone()), (a.clone() * b.clone()) * c.clone());
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
        if !a.is_zero() {
            prop_assert!((a.clone() * a.inv()).is_one());
        }
    }

    #[test]
    fn ratfunc_display_parses_back(a in ratfunc()) {
        prop_assert_eq!(parse_ratfunc(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn ratfunc_evaluation_is_a_homomorphism(a in ratfunc(), b in ratfunc(), x in -4i64..=4) {
        let x = q(x);
        if let (Some(va), Some(vb)) = (a.eval(&x), b.eval(&x)) {
            if let Some(vp) = (a.clone() * b.clone()).eval(&x) {
                prop_assert_eq!(vp, va.clone() * vb.clone());
            }
            if let Some(vs) = (a + b).eval(&x) {
                prop_assert_eq!(vs, va + vb);
            }
        }
    }

    #[test]
    fn curve_matches_pointwise_action(a in two_step(4), w in prop::collection::vec(-2i64..=2, 4), shear in -2i64..=2) {
        // Operator diag(t^w) composed with a constant shear e2 += shear e1.
        let n = 4;
        let m = Matrix::from_fn(n, n, |r, c| {
            if r == c {
                RatFunc::monomial(Rational::one(), w[r])
            } else if r == 0 && c == 1 {
                RatFunc::constant(q(shear))
            } else {
                RatFunc::zero()
            }
        });
        let wit = DegenerationWitness::new("r", "r", Orientation::Operator, Provenance::Derived, m).unwrap();
        let curve = transformed_constants(&a, &wit).unwrap();
        for t0 in [q(1), q(2), q(-1), Rational::new(1.into(), 2.into()), q(3)] {
            let op = wit.operator_at(&t0).unwrap();
            let point = a.change_basis(&op).unwrap();
            for i in 0..n {
                for j in i + 1..n {
                    for k in 0..n {
                        let val = curve.get(&(i, j)).map_or(Rational::zero(), |v| v[k].eval(&t0).unwrap());
                        prop_assert_eq!(val, point.constant(i, j, k));
                    }
                }
            }
        }
    }

    #[test]
    fn algebra_files_round_trip(a in two_step(7), orbit in 0usize..60) {
        let text = render_algebra(&a, Some(orbit), Some("L"));
        let back = parse_algebra_file(&text).unwrap();
        prop_assert!(back.algebra.same_constants(&a));
        prop_assert_eq!(back.orbit_dim, Some(orbit));
        prop_assert_eq!(render_algebra(&back.algebra, back.orbit_dim, back.label.as_deref()), text);
    }

    #[test]
    fn coboundaries_are_cocycles(a in two_step(6), f in prop::collection::vec(-3i64..=3, 12)) {
        let f = Matrix::from_fn(2, 6, |r, c| q(f[r * 6 + c]));
        let b = Cocycle::coboundary(&a, &f).unwrap();
        prop_assert!(cocycle_check(&a, &b).unwrap());
        let back = parse_cocycle(&render_cocycle("b", &b)).unwrap();
        prop_assert_eq!(back.cocycle, b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn profiles_are_basis_independent(a in two_step(6), g in invertible(6)) {
        let b = a.change_basis(&g).unwrap();
        prop_assert_eq!(orbit_dim(&a), orbit_dim(&b));
        prop_assert_eq!(center(&a).dim(), center(&b).dim());
        prop_assert_eq!(derived(&a).dim(), derived(&b).dim());
        prop_assert_eq!(betti(&a), betti(&b));
        let (x, y) = (max_abelian(&a).unwrap(), max_abelian(&b).unwrap());
        // The value is invariant; certification depends on the search height.
        prop_assert!(x.lower <= y.upper && y.lower <= x.upper);
        if x.is_certified() && y.is_certified() {
            prop_assert_eq!(x.lower, y.lower);
        }
    }
}

/// Reachability by repeated squaring of the adjacency relation.
fn brute_closure(n: usize, edges: &BTreeSet<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in edges {
        reach[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if reach[i][k] && reach[k][j] {
                    reach[i][j] = true;
                }
            }
        }
    }
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| reach[i][j]).collect()
}

fn dag() -> impl Strategy<Value = (usize, BTreeSet<(usize, usize)>)> {
    (1usize..=10).prop_flat_map(|n| {
        let all: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let len = all.len();
        (Just(n), prop::collection::vec(any::<bool>(), len))
            .prop_map(move |(n, keep)| (n, all.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e).collect()))
    })
}

fn graph(n: usize, edges: &BTreeSet<(usize, usize)>) -> DegenerationGraph {
    let mut g = DegenerationGraph::new();
    for i in 0..n {
        g.add_node(format!("v{i}"), None);
    }
    for &(a, b) in edges {
        g.add_edge(format!("v{a}"), format!("v{b}"), EdgeProvenance::Derived);
    }
    g
}

fn names(p: &BTreeSet<(usize, usize)>) -> BTreeSet<(String, String)> {
    p.iter().map(|(a, b)| (format!("v{a}"), format!("v{b}"))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closure_and_reduction_match_brute_force((n, edges) in dag()) {
        let g = graph(n, &edges);
        let closure = brute_closure(n, &edges);
        let got: BTreeSet<(String, String)> = g.transitive_closure().unwrap().verified().keys().cloned().collect();
        prop_assert_eq!(&got, &names(&closure));
        let reduction: BTreeSet<(usize, usize)> = closure
            .iter()
            .copied()
            .filter(|&(a, c)| !(0..n).any(|b| closure.contains(&(a, b)) && closure.contains(&(b, c))))
            .collect();
        let hasse = g.hasse().unwrap();
        prop_assert_eq!(&hasse, &names(&reduction));
        let reduced = graph(n, &reduction);
        let back: BTreeSet<(String, String)> = reduced.transitive_closure().unwrap().verified().keys().cloned().collect();
        prop_assert_eq!(back, got);
        prop_assert_eq!(reduced.maximal_elements(), g.maximal_elements());
        let maxima: BTreeSet<String> = (0..n).filter(|&v| !closure.iter().any(|&(_, b)| b == v)).map(|v| format!("v{v}")).collect();
        prop_assert_eq!(g.maximal_elements(), maxima);
    }
}

#[test]
fn orbit_decrease_is_flagged() {
    let mut g = DegenerationGraph::new();
    g.add_node("a", Some(3));
    g.add_node("b", Some(5));
    g.add_edge("a", "b", EdgeProvenance::Derived);
    assert_eq!(g.orbit_violations(), vec![("a".to_string(), "b".to_string())]);
}
