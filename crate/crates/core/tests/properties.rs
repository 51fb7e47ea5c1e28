use proptest::prelude::*;

use icayley::constructors::{builtin, cyclic, dihedral, direct_product, elem_abelian};
use icayley::group::FiniteGroup;
use icayley::io::{read_aut1, read_cgt1, write_aut1, write_cgt1};
use icayley::morphisms::AutomorphismMap;
use icayley::recipe::{build, parse_recipe};
use icayley::spectra::{cayley_adjacency, enumerate_3_subsets, integral_spectrum_3valent};

/// A small pool of groups, indexed by the strategy below.
fn pool(i: usize) -> FiniteGroup {
    match i % 8 {
        0 => cyclic(6).unwrap(),
        1 => dihedral(4).unwrap(),
        2 => builtin("Q8").unwrap(),
        3 => builtin("A4").unwrap(),
        4 => elem_abelian(2, 3).unwrap(),
        5 => direct_product(&cyclic(2).unwrap(), &cyclic(4).unwrap()).unwrap(),
        6 => dihedral(6).unwrap(),
        _ => builtin("H16").unwrap(),
    }
}

fn recipe_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (1usize..7).prop_map(|n| format!("cyclic({n})")),
        (2usize..5).prop_map(|n| format!("dihedral({n})")),
        (1usize..3).prop_map(|k| format!("ea(2,{k})")),
        Just("builtin(Q8)".to_string()),
        Just("builtin(A4)".to_string()),
    ];
    leaf.prop_recursive(2, 4, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} x {b}")),
            (inner, 1usize..3).prop_map(|(a, k)| format!("({a})^{k}")),
        ]
    })
    .prop_filter("small enough", |t| build(t).map(|g| g.order() <= 256).unwrap_or(false))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn canonical_text_is_a_fixed_point(text in recipe_text()) {
        let ast = parse_recipe(&text).unwrap();
        let canon = ast.canonical();
        prop_assert_eq!(parse_recipe(&canon).unwrap(), ast);
        let a = build(&text).unwrap();
        let b = build(&canon).unwrap();
        prop_assert_eq!(a.order(), b.order());
        prop_assert_eq!(a.fingerprint(), b.fingerprint());
    }

    #[test]
    fn cgt1_round_trip(text in recipe_text()) {
        let g = build(&text).unwrap();
        let written = write_cgt1(&g);
        let back = read_cgt1(&written).unwrap();
        prop_assert_eq!(write_cgt1(&back), written);
        prop_assert_eq!(back.gens(), g.gens());
        for a in 0..g.order() {
            prop_assert_eq!(back.row(a), g.row(a));
        }
    }

    #[test]
    fn adjacency_is_invariant_under_right_translation(i in 0usize..8, pick in any::<prop::sample::Index>(), t in any::<prop::sample::Index>()) {
        let g = pool(i);
        let sets = enumerate_3_subsets(&g);
        prop_assume!(!sets.is_empty());
        let x = &sets[pick.index(sets.len())];
        let a = cayley_adjacency(&g, x);
        let t = t.index(g.order());
        for u in 0..g.order() {
            prop_assert_eq!(a[u].iter().sum::<i64>(), 3);
            for v in 0..g.order() {
                prop_assert_eq!(a[u][v], a[v][u]);
                prop_assert_eq!(a[u][v], a[g.mul(u, t)][g.mul(v, t)]);
            }
        }
    }

    #[test]
    fn spectrum_counts_are_bounded(i in 0usize..8, pick in any::<prop::sample::Index>()) {
        let g = pool(i);
        let sets = enumerate_3_subsets(&g);
        prop_assume!(!sets.is_empty());
        let x = &sets[pick.index(sets.len())];
        let r = integral_spectrum_3valent(&g, x).unwrap();
        let total: usize = r.mult.iter().sum();
        prop_assert_eq!(total, r.nullity_sum);
        prop_assert!(total <= g.order());
        prop_assert_eq!(r.integral, total == g.order());
        // the trivial eigenvalue 3 appears once per connected component
        let h = g.closure(&x.elems());
        prop_assert_eq!(r.multiplicity(3), g.order() / h.len());
        if r.integral {
            // trace of A is 0 and trace of A² is 3n
            let k: Vec<i64> = (-3..=3).collect();
            let tr1: i64 = k.iter().zip(r.mult.iter()).map(|(k, m)| k * *m as i64).sum();
            let tr2: i64 = k.iter().zip(r.mult.iter()).map(|(k, m)| k * k * *m as i64).sum();
            prop_assert_eq!(tr1, 0);
            prop_assert_eq!(tr2, 3 * g.order() as i64);
        }
    }

    #[test]
    fn inner_automorphisms_behave(i in 0usize..8, t in any::<prop::sample::Index>(), s in any::<prop::sample::Index>()) {
        let g = pool(i);
        let t = t.index(g.order());
        let s = s.index(g.order());
        let phi = AutomorphismMap::inner(&g, t);
        let psi = AutomorphismMap::inner(&g, s);
        prop_assert!(phi.then(&phi.inverse()).is_identity());
        prop_assert_eq!(g.order() % phi.order(), 0);
        prop_assert!(phi.pow(phi.order()).is_identity());
        for a in 0..g.order() {
            for b in 0..g.order() {
                prop_assert_eq!(phi.apply(g.mul(a, b)), g.mul(phi.apply(a), phi.apply(b)));
            }
            prop_assert_eq!(phi.apply(a), g.conj(a, t));
            // conjugating by t then by s is conjugation by ts
            prop_assert_eq!(psi.apply(phi.apply(a)), g.conj(a, g.mul(t, s)));
        }
        prop_assert_eq!(phi.fix(), g.centralizer(&[t]));
        let back = read_aut1(&write_aut1(&phi), &g).unwrap();
        prop_assert_eq!(back.perm(), phi.perm());
    }
}
