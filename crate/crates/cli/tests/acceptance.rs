//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Time limits are wall-clock and pinned below.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thicklat::koszul::{evaluate, homology_dims, koszul_complex, koszul_tensor_module};
use thicklat::nc::{enumerate_nc, nc_leq, w_catalan};
use thicklat::poly::PolyRing;
use thicklat::rep::{FieldRep, TreeModule};
use thicklat::spec_model::{
    all_functions, lattice_iso, monotone_functions, reference_two_point_a2,
};
use thicklat::{
    DynkinType, Field, FinitePoset, Fp, Gf2, Gf3, Gf5, NcLattice, Quiver, Rational, RootSystem,
    ThickContext,
};

const FIGURE_LIMIT: Duration = Duration::from_secs(1);
const COUNT_LIMIT: Duration = Duration::from_secs(5);
const E6_LIMIT: Duration = Duration::from_secs(60);
const D4_THICK_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_POINTS: usize = 20;
const RANDOM_SEEDS_PER_TYPE: usize = 200;
const RNG_SEED: u64 = 0x7e1e5c09e;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ty(s: &str) -> DynkinType {
    s.parse().unwrap()
}

fn nc_of(t: &str) -> NcLattice {
    NcLattice::for_quiver(&Quiver::standard(ty(t))).unwrap()
}

fn figure1() -> Check {
    let start = Instant::now();
    let nc = nc_of("A2");
    ensure(nc.len() == 5, format!("{} elements", nc.len()))?;
    ensure(
        nc.covers().len() == 6,
        format!("{} covers", nc.covers().len()),
    )?;
    ensure(
        nc.label(nc.top()) == "(1,2,3)",
        format!("top {}", nc.label(nc.top())),
    )?;
    ensure(
        nc.label(nc.bottom()) == "(1),(2),(3)",
        format!("bottom {}", nc.label(nc.bottom())),
    )?;
    let atoms: BTreeSet<String> = (0..nc.len())
        .filter(|&i| nc.length(i) == 1)
        .map(|i| nc.label(i))
        .collect();
    let expected: BTreeSet<String> = ["(1,2),(3)", "(1),(2,3)", "(1,3),(2)"]
        .map(String::from)
        .into();
    ensure(atoms == expected, format!("atoms {atoms:?}"))?;
    let t = start.elapsed();
    ensure(t < FIGURE_LIMIT, format!("took {t:?}"))?;
    Ok(format!("5 elements, 6 covers, atoms {atoms:?} in {t:?}"))
}

fn figure2() -> Check {
    let start = Instant::now();
    let l = monotone_functions(&FinitePoset::chain(2), &nc_of("A2")).map_err(|e| e.to_string())?;
    ensure(l.len() == 12, format!("{} members", l.len()))?;
    ensure(
        thicklat::poset::order_isomorphic(&l.hasse(), &reference_two_point_a2()),
        "not isomorphic to the transcribed diagram",
    )?;
    ensure(lattice_iso(&l, &l), "not isomorphic to itself")?;
    let t = start.elapsed();
    ensure(t < FIGURE_LIMIT, format!("took {t:?}"))?;
    Ok(format!(
        "12 members, {} covers, isomorphic to reference in {t:?}",
        l.covers().len()
    ))
}

fn catalan_counts() -> Check {
    let mut parts = Vec::new();
    for (t, expected) in [
        ("A1", 2),
        ("A2", 5),
        ("A3", 14),
        ("A4", 42),
        ("D4", 50),
        ("D5", 182),
        ("E6", 833),
    ] {
        let start = Instant::now();
        let rs = RootSystem::new(ty(t));
        let c = rs.coxeter_element(&Quiver::standard(ty(t))).unwrap();
        let n = enumerate_nc(&rs, &c).map_err(|e| e.to_string())?.len() as u64;
        let took = start.elapsed();
        let d = ty(t).degrees();
        let h = ty(t).coxeter_number();
        let (num, den) = d.iter().fold((1u128, 1u128), |(a, b), &di| {
            (a * (h + di) as u128, b * di as u128)
        });
        let formula = (num / den) as u64;
        ensure(
            n == expected && formula == expected && w_catalan(ty(t)) == expected,
            format!("{t}: {n} vs {formula}"),
        )?;
        let limit = if t == "E6" { E6_LIMIT } else { COUNT_LIMIT };
        ensure(took < limit, format!("{t} took {took:?}"))?;
        parts.push(format!("{t}={n}"));
    }
    Ok(parts.join(" "))
}

fn thick_counts() -> Check {
    let mut parts = Vec::new();
    for (t, expected) in [("A1", 2), ("A2", 5), ("A3", 14), ("D4", 50)] {
        let start = Instant::now();
        let ctx = ThickContext::<Gf2>::new(&Quiver::standard(ty(t))).map_err(|e| e.to_string())?;
        let n = ctx.enumerate().len();
        let report = ctx.verify_bijection().map_err(|e| e.to_string())?;
        let took = start.elapsed();
        ensure(n == expected, format!("{t}: {n} thick subcategories"))?;
        ensure(report.ok(), format!("{t}: {:?}", report.violations))?;
        ensure(took < D4_THICK_LIMIT, format!("{t} took {took:?}"))?;
        parts.push(format!("{t}={n}"));
    }
    Ok(format!("{} with bijections", parts.join(" ")))
}

fn field_independence() -> Check {
    fn family<F: thicklat::FiniteField>() -> Vec<BTreeSet<Vec<i64>>> {
        ThickContext::<F>::new(&Quiver::standard(DynkinType::a(3)))
            .unwrap()
            .enumerate()
            .into_iter()
            .map(|w| w.objects().clone())
            .collect()
    }
    let (f2, f3, f5) = (family::<Gf2>(), family::<Gf3>(), family::<Gf5>());
    ensure(f2 == f3 && f2 == f5, "families differ")?;
    Ok(format!(
        "A3: {} identical families over GF(2), GF(3), GF(5)",
        f2.len()
    ))
}

fn rigid_lifts() -> Check {
    fn rigid<F: Field>(m: &TreeModule) -> bool {
        let r: FieldRep<F> = m.base_change();
        r.hom_dim(&r).unwrap() == 1 && r.ext_dim(&r).unwrap() == 0
    }
    let mut count = 0;
    for t in ["A2", "A3", "A4", "D4"] {
        let q = Quiver::standard(ty(t));
        for alpha in q.indecomposable_dims() {
            let m = TreeModule::new(&q, &alpha).map_err(|e| e.to_string())?;
            ensure(
                m.is_zero_one(),
                format!("{t} {alpha:?} has entries outside {{0,1}}"),
            )?;
            ensure(
                rigid::<Gf2>(&m) && rigid::<Gf3>(&m) && rigid::<Gf5>(&m) && rigid::<Rational>(&m),
                format!("{t} {alpha:?} is not a rigid brick"),
            )?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} roots, 0/1 entries, End = k and Ext = 0 over GF(2), GF(3), GF(5), Q"
    ))
}

fn function_counts() -> Check {
    let mut parts = Vec::new();
    for (t, p, all, mono) in [
        ("A2", "chain2", 25, 12),
        ("A1", "chain3", 8, 4),
        ("A2", "point", 5, 5),
    ] {
        let nc = nc_of(t);
        let poset = FinitePoset::builtin(p).unwrap();
        let a = all_functions(&poset, &nc).map_err(|e| e.to_string())?.len();
        let m = monotone_functions(&poset, &nc)
            .map_err(|e| e.to_string())?
            .len();
        let power = nc.len().pow(poset.len() as u32);
        ensure(
            a == all && a == power && m == mono,
            format!("({t}, {p}): all {a}, monotone {m}"),
        )?;
        parts.push(format!("({t},{p}) {a}/{m}"));
    }
    Ok(parts.join(" "))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    BigRational::new(
        BigInt::from(rng.gen_range(-20i64..=20)),
        BigInt::from(rng.gen_range(1i64..=7)),
    )
}

fn koszul_dichotomy() -> Check {
    let r = PolyRing::new(&["x", "y"]).unwrap();
    let gens = vec![r.parse("x").unwrap(), r.parse("y").unwrap()];
    let k = koszul_complex(&r, &gens).map_err(|e| e.to_string())?;
    let m = TreeModule::new(&Quiver::standard(DynkinType::a(2)), &[1, 1]).unwrap();
    let zero = vec![Rational::from_integer(0.into()); 2];
    let h0 = homology_dims(&evaluate(&k, &zero).unwrap()).unwrap();
    ensure(h0 == [1, 2, 1], format!("origin: {h0:?}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    let mut points = vec![zero];
    while points.len() < RANDOM_POINTS + 1 {
        let p = vec![random_rational(&mut rng), random_rational(&mut rng)];
        if p.iter().any(|c| *c != Rational::from_integer(0.into())) {
            points.push(p);
        }
    }
    for p in &points[1..] {
        let h = homology_dims(&evaluate(&k, p).unwrap()).unwrap();
        ensure(h.iter().all(|&d| d == 0), format!("{p:?}: {h:?}"))?;
    }
    for p in &points {
        let h = homology_dims(&evaluate(&k, p).unwrap()).unwrap();
        let hm = koszul_tensor_module(&k, &m, p).map_err(|e| e.to_string())?;
        for (deg, v) in hm.iter().enumerate() {
            ensure(
                v == &vec![h[deg] as i64; 2],
                format!("{p:?} degree {deg}: {v:?}"),
            )?;
        }
    }
    Ok(format!(
        "(1,2,1) at origin, zero at {RANDOM_POINTS} random points, module multiples of (1,1)"
    ))
}

fn lattice_laws(nc: &NcLattice) -> Result<(), String> {
    let rs = nc.root_system();
    let n = nc.len();
    let el: Vec<_> = (0..n).map(|i| nc.element(i)).collect();
    let leq = |a: usize, b: usize| nc_leq(rs, &el[a], &el[b]).unwrap();
    for a in 0..n {
        ensure(leq(a, a), "reflexivity")?;
        for b in 0..n {
            ensure(
                leq(a, b) == nc.leq(a, b),
                "table disagrees with absolute order",
            )?;
            if a != b && leq(a, b) {
                ensure(!leq(b, a), "antisymmetry")?;
            }
            let (m, j) = (nc.meet(a, b), nc.join(a, b));
            ensure(m == nc.meet(b, a) && j == nc.join(b, a), "commutativity")?;
            ensure(nc.meet(a, j) == a && nc.join(a, m) == a, "absorption")?;
            for c in 0..n {
                if leq(a, b) && leq(b, c) {
                    ensure(leq(a, c), "transitivity")?;
                }
                ensure(
                    nc.meet(nc.meet(a, b), c) == nc.meet(a, nc.meet(b, c)),
                    "meet associativity",
                )?;
                ensure(
                    nc.join(nc.join(a, b), c) == nc.join(a, nc.join(b, c)),
                    "join associativity",
                )?;
                if leq(c, a) && leq(c, b) {
                    ensure(leq(c, m), "meet is not greatest")?;
                }
            }
        }
        ensure(nc.meet(a, a) == a && nc.join(a, a) == a, "idempotence")?;
    }
    Ok(())
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_thicklat"))
        .args(args)
        .output()
        .unwrap();
    assert!(out.status.success(), "thicklat {args:?} failed");
    out.stdout
}

fn property_suites() -> Check {
    for t in ["A3", "D4"] {
        lattice_laws(&nc_of(t)).map_err(|e| format!("NC({t}): {e}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(RNG_SEED);
    for t in ["A2", "A3", "A4", "D4"] {
        let ctx = ThickContext::<Fp<2>>::new(&Quiver::standard(ty(t))).unwrap();
        let roots = ctx.roots().to_vec();
        for _ in 0..RANDOM_SEEDS_PER_TYPE {
            let seed: Vec<Vec<i64>> = roots
                .iter()
                .filter(|_| rng.gen_bool(0.25))
                .cloned()
                .collect();
            let once = ctx.closure(&seed).unwrap();
            let again = ctx
                .closure(&once.objects().iter().cloned().collect::<Vec<_>>())
                .unwrap();
            ensure(
                once == again,
                format!("{t}: closure of {seed:?} is not idempotent"),
            )?;
        }
    }
    let dir = std::env::temp_dir().join(format!("thicklat-acceptance-{}", std::process::id()));
    let runs: [&[&str]; 6] = [
        &["nc", "--type", "D4", "--format", "json"],
        &["nc", "--type", "A3", "--format", "dot"],
        &["thick", "--type", "A3", "--field", "3", "--verify"],
        &[
            "specfn", "--type", "A2", "--poset", "diamond", "--mode", "monotone", "--format", "dot",
        ],
        &[
            "koszul", "--vars", "x,y", "--gens", "x,y", "--at", "0,0", "--module", "A2:(1,1)",
        ],
        &["figures", "--out", dir.to_str().unwrap()],
    ];
    for args in runs {
        ensure(
            run_cli(args) == run_cli(args),
            format!("{args:?} is not deterministic"),
        )?;
    }
    let f1 = std::fs::read(dir.join("figure2.json")).unwrap();
    run_cli(&["figures", "--out", dir.to_str().unwrap()]);
    ensure(
        f1 == std::fs::read(dir.join("figure2.json")).unwrap(),
        "figure files differ between runs",
    )?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!(
        "lattice laws on NC(A3), NC(D4); {RANDOM_SEEDS_PER_TYPE} closure seeds per type; byte-identical CLI reruns"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("1 figure 1 reproduction", figure1),
        ("2 figure 2 reproduction", figure2),
        ("3 W-Catalan counts", catalan_counts),
        ("4 thick-subcategory counts", thick_counts),
        ("5 field independence", field_independence),
        ("6 rigid lattice lifts", rigid_lifts),
        ("7 function-lattice counts", function_counts),
        ("8 Koszul support dichotomy", koszul_dichotomy),
        ("9 property suites", property_suites),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS  {name}: {detail} [{:.2?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why} [{:.2?}]", start.elapsed());
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
