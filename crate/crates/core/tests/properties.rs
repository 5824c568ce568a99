use proptest::prelude::*;

use mvkit::axioms::{check_axioms, Mode};
use mvkit::galois::{classify_extension, e_member, em_factorize, m_member};
use mvkit::ideals::{kernel, quotient, radical, RadicalMethod};
use mvkit::io::{parse, render, AlgebraFile, IdealFile};
use mvkit::pretorsion::{functor_p, functor_s, is_perfect, is_semisimple};
use mvkit::{Algebra, Block, Marker, Markers, Morphism, SymMorphism, SymbolicAlgebra};

fn block() -> impl Strategy<Value = Block> {
    prop_oneof![
        (1u32..=5).prop_map(Block::Chain),
        ((1u32..=3), (1u32..=3)).prop_map(|(m, r)| Block::Komori { m, r }),
    ]
}

fn algebra() -> impl Strategy<Value = SymbolicAlgebra> {
    prop::collection::vec(block(), 0..4).prop_map(|b| SymbolicAlgebra::new(b).unwrap())
}

/// An algebra together with an arbitrary ideal of it.
fn with_ideal() -> impl Strategy<Value = (SymbolicAlgebra, Markers)> {
    algebra().prop_flat_map(|a| {
        let all = Markers::all(&a);
        (Just(a), prop::sample::select(all))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_satisfy_the_axioms(a in algebra(), seed in any::<u64>()) {
        prop_assert!(check_axioms(&a, Mode::sample(200, 6, seed)).unwrap().all_passed());
    }

    #[test]
    fn reflection_is_semisimple_and_coreflection_perfect(a in algebra()) {
        let a = Algebra::Symbolic(a);
        prop_assert!(is_semisimple(&functor_s(&a).algebra));
        prop_assert!(is_perfect(&functor_p(&a).algebra));
    }

    #[test]
    fn radical_methods_agree(a in algebra()) {
        let a = Algebra::Symbolic(a);
        let inf = radical(&a, RadicalMethod::Infinitesimal);
        prop_assert_eq!(&radical(&a, RadicalMethod::Maximal), &inf);
        prop_assert_eq!(&radical(&a, RadicalMethod::Nilpotent), &inf);
    }

    #[test]
    fn quotient_kernel_is_the_ideal((a, i) in with_ideal()) {
        let q = SymMorphism::quotient(&a, &i).unwrap();
        prop_assert!(q.is_surjective());
        prop_assert_eq!(q.kernel(), i);
    }

    #[test]
    fn marker_lattice_laws((a, i) in with_ideal(), j in any::<prop::sample::Index>()) {
        let all = Markers::all(&a);
        let j = &all[j.index(all.len())];
        prop_assert!(i.meet(j).leq(&i) && i.meet(j).leq(j));
        prop_assert!(i.leq(&i.join(j)) && j.leq(&i.join(j)));
        prop_assert_eq!(i.meet(&i.join(j)), i.clone());
    }

    #[test]
    fn quotients_by_radical_ideals_are_central((a, i) in with_ideal()) {
        let rad = Markers::radical(&a);
        let inside = i.meet(&rad);
        let q = Morphism::Symbolic(SymMorphism::quotient(&a, &inside).unwrap());
        prop_assert!(e_member(&q).unwrap());
        let c = classify_extension(&q).unwrap();
        prop_assert_eq!(c.central, inside.is_zero());
        prop_assert_eq!(c.normal, c.central);
    }

    #[test]
    fn factorisation_recomposes((a, i) in with_ideal()) {
        let f = Morphism::Symbolic(SymMorphism::quotient(&a, &i).unwrap());
        let fac = em_factorize(&f).unwrap();
        prop_assert!(e_member(&fac.q).unwrap());
        prop_assert!(m_member(&fac.i).unwrap());
        let back = fac.q.then(&fac.i).unwrap();
        prop_assert!(back.agrees(&f, 7).unwrap());
        prop_assert_eq!(kernel(&back), kernel(&f));
    }

    #[test]
    fn quotient_by_full_ideal_is_terminal(a in algebra()) {
        let alg = Algebra::Symbolic(a.clone());
        let (q, _) = quotient(&alg, &mvkit::IdealDesc::Symbolic(Markers::full(&a))).unwrap();
        prop_assert!(q.is_terminal());
    }

    #[test]
    fn files_round_trip((a, i) in with_ideal()) {
        let alg = Algebra::Symbolic(a.clone());
        let text = render(&AlgebraFile::from_algebra(&alg));
        prop_assert_eq!(parse::<AlgebraFile>(&text).unwrap().to_algebra().unwrap(), alg.clone());
        let d = mvkit::IdealDesc::Symbolic(i);
        let text = render(&IdealFile::from_ideal(&d));
        prop_assert_eq!(parse::<IdealFile>(&text).unwrap().to_ideal(&alg).unwrap(), d);
    }

    #[test]
    fn sub_markers_only_on_komori_blocks((a, i) in with_ideal()) {
        for (m, b) in i.0.iter().zip(a.blocks()) {
            if let Marker::Sub(c) = m {
                prop_assert!(b.is_komori() && !c.is_empty() && c.iter().all(|&k| k < b.rank()));
            }
        }
    }
}
