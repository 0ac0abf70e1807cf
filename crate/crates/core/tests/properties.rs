use std::collections::BTreeSet;

use num_traits::Zero;
use proptest::prelude::*;
use proptest::sample::subsequence;

use thicklat::koszul::{evaluate, homology_dims, koszul_complex, koszul_tensor_module};
use thicklat::linalg::Matrix;
use thicklat::nc::bfs_interval;
use thicklat::poly::PolyRing;
use thicklat::rep::{FieldRep, TreeModule};
use thicklat::spec_model::{is_specialization_closed, monotone_functions, SpecFunction};
use thicklat::{
    DynkinType, FinitePoset, Fp, Gf2, Gf3, NcLattice, Quiver, Rational, RootSystem, ThickContext,
};

fn ty(s: &str) -> DynkinType {
    s.parse().unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

/// A random representation of a quiver over GF(3) with small dimensions.
fn random_rep(q: &Quiver, dims: &[i64], entries: &[u64]) -> FieldRep<Gf3> {
    let mut k = 0;
    let maps = q
        .arrows()
        .iter()
        .map(|&(s, t)| {
            Matrix::from_fn(dims[t] as usize, dims[s] as usize, |_, _| {
                k += 1;
                Fp::new(entries[k % entries.len()])
            })
        })
        .collect();
    FieldRep::new(q.clone(), dims.to_vec(), maps).unwrap()
}

const ORIENTATIONS: [(&str, &str); 4] = [
    ("A3", ""),
    ("A3", "2>1,2>3"),
    ("D4", ""),
    ("D4", "2>1,3>2,4>2"),
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ext_by_presentation_equals_euler_form_shortcut(
        which in 0usize..ORIENTATIONS.len(),
        d in proptest::collection::vec(0i64..=2, 4),
        e in proptest::collection::vec(0i64..=2, 4),
        xs in proptest::collection::vec(0u64..3, 1..20),
        ys in proptest::collection::vec(0u64..3, 1..20),
    ) {
        let (t, o) = ORIENTATIONS[which];
        let q = Quiver::parse(ty(t), o).unwrap();
        let n = q.vertex_count();
        let m = random_rep(&q, &d[..n], &xs);
        let nn = random_rep(&q, &e[..n], &ys);
        prop_assert_eq!(m.ext_dim(&nn).unwrap(), m.ext_dim_presentation(&nn).unwrap());
        let euler = q.euler_form(&d[..n], &e[..n]).unwrap();
        prop_assert_eq!(
            m.hom_dim(&nn).unwrap() as i64 - m.ext_dim_presentation(&nn).unwrap() as i64,
            euler
        );
    }

    #[test]
    fn random_representations_split_into_roots(
        which in 0usize..ORIENTATIONS.len(),
        d in proptest::collection::vec(0i64..=2, 4),
        xs in proptest::collection::vec(0u64..3, 1..20),
    ) {
        let (t, o) = ORIENTATIONS[which];
        let q = Quiver::parse(ty(t), o).unwrap();
        let n = q.vertex_count();
        let m = random_rep(&q, &d[..n], &xs);
        let rs = RootSystem::new(q.dynkin());
        let parts = m.summand_dims();
        let mut total = vec![0; n];
        for p in &parts {
            prop_assert!(rs.is_positive_root(p));
            for (a, b) in total.iter_mut().zip(p) {
                *a += b;
            }
        }
        prop_assert_eq!(total, d[..n].to_vec());
    }

    #[test]
    fn interval_does_not_depend_on_reflection_order(
        which in 0usize..3,
        perm in Just((0..12).collect::<Vec<usize>>()).prop_shuffle(),
    ) {
        let t = ["A3", "A4", "D4"][which];
        let rs = RootSystem::new(ty(t));
        let c = rs.coxeter_element(&Quiver::standard(ty(t))).unwrap();
        let refl = rs.reflections();
        let shuffled: Vec<_> = perm.iter().filter(|&&i| i < refl.len()).map(|&i| refl[i].clone())
            .chain(refl.iter().skip(12).cloned())
            .collect();
        let (e1, c1) = bfs_interval(&rs, &c, &refl).unwrap();
        let (e2, c2) = bfs_interval(&rs, &c, &shuffled).unwrap();
        prop_assert_eq!(e1, e2);
        let s1: BTreeSet<_> = c1.into_iter().collect();
        let s2: BTreeSet<_> = c2.into_iter().collect();
        prop_assert_eq!(s1, s2);
    }

    #[test]
    fn koszul_support_dichotomy(
        ideal in 0usize..3,
        x in rational(),
        y in rational(),
        on_variety in any::<bool>(),
    ) {
        let r = PolyRing::new(&["x", "y"]).unwrap();
        let gens_src: &[&str] = [&["x", "y"][..], &["x"][..], &["x - 1", "y - 2"][..]][ideal];
        let gens: Vec<_> = gens_src.iter().map(|g| r.parse(g).unwrap()).collect();
        let pt = if on_variety {
            match ideal {
                0 => vec![Rational::zero(), Rational::zero()],
                1 => vec![Rational::zero(), y.clone()],
                _ => vec![Rational::from_integer(1.into()), Rational::from_integer(2.into())],
            }
        } else {
            vec![x.clone(), y.clone()]
        };
        let k = koszul_complex(&r, &gens).unwrap();
        let h = homology_dims(&evaluate(&k, &pt).unwrap()).unwrap();
        let vanishes = gens.iter().all(|g| g.eval(&pt).unwrap().is_zero());
        prop_assert_eq!(h.iter().all(|&d| d == 0), !vanishes);
        let euler: i64 = h.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        prop_assert_eq!(euler, k.euler_characteristic());
        // module homology is a multiple of the dimension vector, degree by degree
        let m = TreeModule::new(&Quiver::standard(ty("A3")), &[1, 1, 1]).unwrap();
        let hm = koszul_tensor_module(&k, &m, &pt).unwrap();
        for (deg, v) in hm.iter().enumerate() {
            prop_assert_eq!(v, &vec![h[deg] as i64; 3]);
        }
    }

    #[test]
    fn polynomial_format_round_trips(
        coeffs in proptest::collection::vec((rational(), 0u32..3, 0u32..3), 0..6),
    ) {
        let r = PolyRing::new(&["x", "y"]).unwrap();
        let src: Vec<String> = coeffs
            .iter()
            .map(|(c, a, b)| format!("({})*x^{a}*y^{b}", thicklat::field::format_rational(c)))
            .collect();
        let src = if src.is_empty() { "0".to_string() } else { src.join(" + ") };
        let p = r.parse(&src).unwrap();
        prop_assert_eq!(r.parse(&r.format(&p)).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wide_closure_is_a_closure_operator(
        which in 0usize..3,
        a in subsequence((0..12).collect::<Vec<usize>>(), 0..=5),
        b in subsequence((0..12).collect::<Vec<usize>>(), 0..=5),
    ) {
        thread_local! {
            static CTX: Vec<ThickContext<Gf2>> = ["A3", "A4", "D4"]
                .iter()
                .map(|t| ThickContext::new(&Quiver::standard(ty(t))).unwrap())
                .collect();
        }
        CTX.with(|ctxs| {
            let ctx = &ctxs[which];
            let roots = ctx.roots();
            let pick = |s: &[usize]| -> Vec<Vec<i64>> { s.iter().filter(|&&i| i < roots.len()).map(|&i| roots[i].clone()).collect() };
            let (sa, sb) = (pick(&a), pick(&b));
            let ca = ctx.closure(&sa).unwrap();
            let objs: Vec<_> = ca.objects().iter().cloned().collect();
            assert_eq!(ctx.closure(&objs).unwrap(), ca);
            assert!(sa.iter().all(|d| ca.contains(d)));
            let union: Vec<_> = sa.iter().chain(&sb).cloned().collect();
            let cu = ctx.closure(&union).unwrap();
            assert!(ca.is_subcategory_of(&cu));
        });
    }
}

#[test]
fn thick_families_agree_across_fields() {
    for t in ["A3", "D4"] {
        let q = Quiver::standard(ty(t));
        let f2: Vec<_> = ThickContext::<Gf2>::new(&q)
            .unwrap()
            .enumerate()
            .into_iter()
            .map(|w| w.objects().clone())
            .collect();
        let f3: Vec<_> = ThickContext::<Gf3>::new(&q)
            .unwrap()
            .enumerate()
            .into_iter()
            .map(|w| w.objects().clone())
            .collect();
        let f5: Vec<_> = ThickContext::<Fp<5>>::new(&q)
            .unwrap()
            .enumerate()
            .into_iter()
            .map(|w| w.objects().clone())
            .collect();
        assert_eq!(f2, f3, "{t}");
        assert_eq!(f2, f5, "{t}");
    }
}

#[test]
fn thick_lattice_operations_match_nc() {
    let q = Quiver::standard(ty("A3"));
    let ctx = ThickContext::<Gf2>::new(&q).unwrap();
    let nc = NcLattice::for_quiver(&q).unwrap();
    let rs = nc.root_system().clone();
    let subs = ctx.enumerate();
    let img: Vec<usize> = subs
        .iter()
        .map(|w| nc.index_of(&ctx.it_map(&rs, w)).unwrap())
        .collect();
    for (i, a) in subs.iter().enumerate() {
        for (j, b) in subs.iter().enumerate() {
            let meet: Vec<_> = a.objects().intersection(b.objects()).cloned().collect();
            let m = ctx.closure(&meet).unwrap();
            let join: Vec<_> = a.objects().union(b.objects()).cloned().collect();
            let k = ctx.closure(&join).unwrap();
            let pos = |w| subs.iter().position(|x| *x == w).unwrap();
            assert_eq!(img[pos(m)], nc.meet(img[i], img[j]));
            assert_eq!(img[pos(k)], nc.join(img[i], img[j]));
        }
    }
}

#[test]
fn antitone_functions_are_monotone_on_the_dual() {
    let nc = NcLattice::for_quiver(&Quiver::standard(ty("A2"))).unwrap();
    for p in [
        FinitePoset::chain(2),
        FinitePoset::diamond(),
        FinitePoset::chain(3),
    ] {
        let dual = p.dual();
        let on_dual = monotone_functions(&dual, &nc).unwrap();
        let antitone = (0..nc.len().pow(p.len() as u32))
            .filter(|&code| {
                let values: Vec<usize> = (0..p.len())
                    .map(|i| code / nc.len().pow(i as u32) % nc.len())
                    .collect();
                p.strict_relations()
                    .iter()
                    .all(|&(a, b)| nc.leq(values[b], values[a]))
            })
            .count();
        assert_eq!(on_dual.len(), antitone);
        for f in on_dual.members() {
            let g = SpecFunction::new(&dual, &nc, f.values().to_vec()).unwrap();
            assert!(is_specialization_closed(&dual, &nc, &g));
        }
    }
}

#[test]
fn monotone_functions_are_closed_under_pointwise_operations() {
    let nc = NcLattice::for_quiver(&Quiver::standard(ty("A3"))).unwrap();
    let l = monotone_functions(&FinitePoset::chain(2), &nc).unwrap();
    for i in 0..l.len() {
        for j in 0..l.len() {
            let (m, k) = (l.meet(i, j), l.join(i, j));
            assert!(l.leq(m, i) && l.leq(m, j) && l.leq(i, k) && l.leq(j, k));
            for x in 0..l.len() {
                if l.leq(x, i) && l.leq(x, j) {
                    assert!(l.leq(x, m));
                }
                if l.leq(i, x) && l.leq(j, x) {
                    assert!(l.leq(k, x));
                }
            }
        }
    }
}
