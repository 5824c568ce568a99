//! Acceptance suite: one line per criterion, non-zero exit if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use mvkit::axioms::{check_axioms, check_lattice_laws, Mode};
use mvkit::catalog::{catalog, CatalogEntry};
use mvkit::double::{
    classify_double, commutator_subalgebras, comparison_is_surjective, is_regular_pushout, s1_reflect, ExtensionSquare,
    SquareShape,
};
use mvkit::galois::{
    classify_extension, e_member, em_factorize, fill_diagonal, finite_diagonal_count, kernel_in_radical_polar,
    m_member, pullback_in_e, stability_check,
};
use mvkit::homs::enumerate_homs;
use mvkit::ideals::{all_ideals, radical, RadicalMethod};
use mvkit::io::{parse, render, AlgebraFile, IdealFile, MorphismFile, SquareFile};
use mvkit::mundici::{gamma, order_unit_check, semidirect_laws, UnitalLexGroup};
use mvkit::pretorsion::{
    counit_universal_property, is_perfect, is_trivial_morphism, pretorsion_report, unit_universal_property,
};
use mvkit::terms::{lemma_squares, check_lemma_square, pullback_lemma_harness, verify_terms};
use mvkit::{Algebra, Block, FiniteAlgebra, FiniteMorphism, IdealDesc, Markers, Morphism, SymMorphism, SymbolicAlgebra};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Block products from a fixed palette, in a fixed order.
fn symbolic_products(count: usize) -> Vec<SymbolicAlgebra> {
    let palette = [
        Block::Komori { m: 1, r: 1 },
        Block::Chain(1),
        Block::Komori { m: 2, r: 1 },
        Block::Chain(3),
        Block::Komori { m: 1, r: 2 },
        Block::Chain(2),
        Block::Komori { m: 3, r: 2 },
        Block::Komori { m: 2, r: 3 },
    ];
    let n = palette.len();
    let mut out = Vec::new();
    for len in 1..=3usize {
        for code in 0..n.pow(len as u32) {
            let blocks = (0..len).map(|i| palette[code / n.pow(i as u32) % n]).collect();
            let a = SymbolicAlgebra::new(blocks).unwrap();
            if !out.contains(&a) {
                out.push(a);
            }
            if out.len() == count {
                return out;
            }
        }
    }
    out
}

/// `(A, I)` pairs walking the ideals of each product in turn.
fn symbolic_ideal_pairs(count: usize) -> Vec<(SymbolicAlgebra, Markers)> {
    let mut out = Vec::new();
    for a in symbolic_products(200) {
        for i in Markers::all(&a).into_iter().step_by(3) {
            out.push((a.clone(), i));
            if out.len() == count {
                return out;
            }
        }
    }
    out
}

fn finite_entries(max: usize) -> Vec<CatalogEntry> {
    catalog(max)
}

fn axioms() -> Outcome {
    let mut tuples = 0u64;
    for e in finite_entries(60) {
        for r in [check_axioms(e.finite.as_ref(), Mode::Exhaustive).map_err(err)?, check_lattice_laws(e.finite.as_ref(), Mode::Exhaustive).map_err(err)?] {
            ensure(r.all_passed(), format!("{} fails {:?}", e.name(), r.laws.iter().find(|l| !l.passed)))?;
            tuples += r.laws.iter().map(|l| l.checked).sum::<u64>();
        }
    }
    let mut constructors = 0;
    for m in 1..=3 {
        for r in 1..=3 {
            let a = SymbolicAlgebra::komori(m, r).map_err(err)?;
            let mode = Mode::sample(10_000, 8, u64::from(m * 10 + r));
            ensure(check_axioms(&a, mode).map_err(err)?.all_passed(), format!("Komori({m},{r}) fails"))?;
            constructors += 1;
        }
    }
    Ok(format!("{tuples} finite instances, {constructors} symbolic constructors x 10^4 samples"))
}

fn radicals() -> Outcome {
    let methods = [RadicalMethod::Maximal, RadicalMethod::Infinitesimal, RadicalMethod::Nilpotent];
    let entries = finite_entries(60);
    for e in &entries {
        let a = Algebra::Finite(e.finite.clone());
        let r: Vec<IdealDesc> = methods.iter().map(|&m| radical(&a, m)).collect();
        ensure(r[0] == r[1] && r[1] == r[2], format!("methods disagree on {}", e.name()))?;
    }
    let products = symbolic_products(50);
    for s in &products {
        let a = Algebra::Symbolic(s.clone());
        let r: Vec<IdealDesc> = methods.iter().map(|&m| radical(&a, m)).collect();
        ensure(r[0] == r[1] && r[1] == r[2], format!("methods disagree on {s}"))?;
    }
    Ok(format!("{} catalog algebras, {} symbolic products", entries.len(), products.len()))
}

fn kernel_lemma() -> Outcome {
    let r = pullback_lemma_harness(6).map_err(err)?;
    ensure(r.passed(), format!("violations: {:?}", r.violations))?;
    ensure(r.squares >= 200 && r.negatives >= 20, format!("{} squares, {} negatives", r.squares, r.negatives))?;
    Ok(format!("{} squares, {} negative, {} pullbacks, 0 violations", r.squares, r.negatives, r.pullbacks))
}

fn pretorsion() -> Outcome {
    let small = finite_entries(8);
    let perfect: Vec<&CatalogEntry> = small.iter().filter(|e| is_perfect(&Algebra::Finite(e.finite.clone()))).collect();
    let mut homs = 0;
    for p in &perfect {
        for s in &small {
            for f in enumerate_homs(&p.finite, &s.finite) {
                ensure(is_trivial_morphism(&Morphism::Finite(f)).map_err(err)?.is_some(), format!("{} -> {}", p.name(), s.name()))?;
                homs += 1;
            }
        }
    }
    let probes: Vec<Arc<FiniteAlgebra>> = finite_entries(6).into_iter().map(|e| e.finite).collect();
    let entries = finite_entries(60);
    for e in &entries {
        let checks = pretorsion_report(&Algebra::Finite(e.finite.clone()), &probes, 0).map_err(err)?;
        ensure(checks.iter().all(|c| c.passed), format!("{}: {:?}", e.name(), checks.iter().find(|c| !c.passed)))?;
    }
    let products = symbolic_products(20);
    for s in &products {
        let checks = pretorsion_report(&Algebra::Symbolic(s.clone()), &probes, 1).map_err(err)?;
        ensure(checks.iter().all(|c| c.passed), format!("{s}: {:?}", checks.iter().find(|c| !c.passed)))?;
    }
    Ok(format!("{homs} perfect-to-semisimple maps trivial, {} catalog and {} symbolic pre-exact sequences", entries.len(), products.len()))
}

fn adjunctions() -> Outcome {
    let entries = finite_entries(6);
    let mut maps = 0;
    for a in &entries {
        for b in &entries {
            maps += unit_universal_property(&a.finite, &b.finite).map_err(err)?;
            if is_perfect(&Algebra::Finite(a.finite.clone())) {
                maps += counit_universal_property(&a.finite, &b.finite).map_err(err)?;
            }
        }
    }
    Ok(format!("{maps} factorisations unique over {} pairs", entries.len() * entries.len()))
}

fn coherent(f: &Morphism) -> Result<(), String> {
    let c = classify_extension(f).map_err(err)?;
    ensure(!c.trivial || c.central, "trivial but not central")?;
    ensure(c.central == c.normal, "central differs from normal")?;
    ensure(c.central == c.radical_meet.is_zero(), "central differs from the meet condition")?;
    ensure(c.central == kernel_in_radical_polar(f).map_err(err)?, "central differs from the polar condition")?;
    ensure(c.pullback_agrees != Some(false), "literal pullback test disagrees")
}

fn galois() -> Outcome {
    let entries = finite_entries(6);
    let mut finite = 0;
    for a in &entries {
        for b in &entries {
            for f in enumerate_homs(&a.finite, &b.finite).into_iter().filter(FiniteMorphism::is_surjective) {
                let f = Morphism::Finite(f);
                coherent(&f).map_err(|e| format!("{} -> {}: {e}", a.name(), b.name()))?;
                ensure(classify_extension(&f).map_err(err)?.pullback_agrees == Some(true), "pullback test missing")?;
                finite += 1;
            }
        }
    }
    let pairs = symbolic_ideal_pairs(100);
    for (a, i) in &pairs {
        let q = Morphism::Symbolic(SymMorphism::quotient(a, i).map_err(err)?);
        coherent(&q).map_err(|e| format!("{a} / {i}: {e}"))?;
    }
    Ok(format!("{finite} finite surjections, {} symbolic quotients", pairs.len()))
}

fn factorisation() -> Outcome {
    let entries = finite_entries(8);
    let mut split = 0;
    let mut check_split = |f: &Morphism| -> Result<(), String> {
        let fac = em_factorize(f).map_err(err)?;
        ensure(e_member(&fac.q).map_err(err)? && m_member(&fac.i).map_err(err)?, "factors outside E or M")?;
        ensure(fac.q.then(&fac.i).map_err(err)?.agrees(f, 3).map_err(err)?, "factors do not recompose")?;
        split += 1;
        Ok(())
    };
    let mut diagonals = 0;
    let mut pullbacks = 0;
    for b in &entries {
        let autos: Vec<FiniteMorphism> =
            enumerate_homs(&b.finite, &b.finite).into_iter().filter(FiniteMorphism::is_bijective).collect();
        for c in &entries {
            for g in enumerate_homs(&c.finite, &b.finite) {
                check_split(&Morphism::Finite(g.clone()))?;
                for e in &autos {
                    let (e, gm) = (Morphism::Finite(e.clone()), Morphism::Finite(g.clone()));
                    ensure(e_member(&e).map_err(err)?, "automorphism outside E")?;
                    ensure(pullback_in_e(&e, &gm).map_err(err)?, "pullback leaves E")?;
                    ensure(stability_check(&e, &gm).map_err(err)?, "stability fails")?;
                    pullbacks += 1;
                }
            }
            // Squares with a known diagonal d: e an automorphism of B, g = d ∘ e, m = id, h = d.
            let m = FiniteMorphism::identity(&c.finite);
            for d in enumerate_homs(&b.finite, &c.finite) {
                for e in &autos {
                    let g = d.after(e).map_err(err)?;
                    ensure(finite_diagonal_count(e, &m, &g, &d) == 1, "diagonal not unique")?;
                    let found = fill_diagonal(
                        &Morphism::Finite(e.clone()),
                        &Morphism::Finite(m.clone()),
                        &Morphism::Finite(g),
                        &Morphism::Finite(d.clone()),
                        0,
                    )
                    .map_err(err)?;
                    ensure(found == Morphism::Finite(d.clone()), "diagonal differs")?;
                    diagonals += 1;
                }
            }
        }
    }
    let pairs = symbolic_ideal_pairs(60);
    for (a, i) in &pairs {
        let q = SymMorphism::quotient(a, i).map_err(err)?;
        check_split(&Morphism::Symbolic(q.clone()))?;
        let eta = Morphism::Symbolic(SymMorphism::eta(a));
        check_split(&eta)?;
        ensure(pullback_in_e(&eta, &eta).map_err(err)?, "kernel pair of eta leaves E")?;
        pullbacks += 1;
    }
    ensure(diagonals >= 100 && pullbacks >= 100, format!("{diagonals} diagonals, {pullbacks} pullbacks"))?;
    Ok(format!("{split} factorisations, {diagonals} unique diagonals, {pullbacks} pullbacks in E"))
}

fn terms() -> Outcome {
    let mut tuples = 0u64;
    for e in finite_entries(60) {
        for r in verify_terms(e.finite.as_ref(), Mode::Exhaustive).map_err(err)? {
            ensure(r.passed, format!("{} fails {}", e.name(), r.identity))?;
            tuples += r.tuples_checked;
        }
    }
    for (seed, a) in symbolic_products(4).iter().enumerate() {
        for r in verify_terms(a, Mode::sample(10_000, 8, seed as u64)).map_err(err)? {
            ensure(r.passed, format!("{a} fails {}", r.identity))?;
        }
    }
    let c3 = SymbolicAlgebra::chain(3).to_finite().map_err(err)?;
    let mut plus = c3.plus_rows();
    plus[1][1] = 3;
    let bad = FiniteAlgebra::from_tables(4, 0, c3.neg_table().to_vec(), plus).map_err(err)?;
    let negative = verify_terms(&bad, Mode::Exhaustive).map_err(err)?;
    ensure(negative.iter().any(|r| !r.passed), "corrupted table passes every identity")?;
    Ok(format!("{tuples} finite tuples, 4 symbolic algebras x 10^4 samples, corrupted table rejected"))
}

fn double() -> Outcome {
    let mut finite = 0;
    for sq in lemma_squares(6) {
        if !sq.h.is_surjective() {
            continue;
        }
        let ext = ExtensionSquare::new(
            Morphism::Finite(sq.f.clone()),
            Morphism::Finite(sq.h.clone()),
            Morphism::Finite(sq.k.clone()),
            Morphism::Finite(sq.g.clone()),
        )
        .map_err(err)?;
        let regular = is_regular_pushout(&ext).map_err(err)?;
        ensure(regular == comparison_is_surjective(&ext).map_err(err)?, "regular pushout differs from comparison")?;
        ensure(check_lemma_square(&sq).map_err(err)?.consistent(), "lemma square inconsistent")?;
        finite += 1;
    }
    let (mut clubs, mut spades, mut instances) = (0, 0, 0);
    for a in symbolic_products(60) {
        let alg = Algebra::Symbolic(a.clone());
        let ideals = all_ideals(&alg);
        let n = ideals.len();
        for t in 0..2 {
            if instances == 100 {
                break;
            }
            let (i, j) = (&ideals[(instances * 7 + t) % n], &ideals[(instances * 3 + 1) % n]);
            let sq = ExtensionSquare::from_ideals(&alg, i, j).map_err(err)?;
            let d = classify_double(&sq).map_err(err)?;
            let rad = radical(&alg, RadicalMethod::Infinitesimal);
            let meet = i.meet(j).map_err(err)?.meet(&rad).map_err(err)?;
            let c = commutator_subalgebras(&alg, i, j).map_err(err)?;
            ensure(d.central == meet.is_zero() && d.central == c.in_z, format!("{a}: {i} / {j}"))?;
            match c.shape {
                SquareShape::Club => clubs += 1,
                SquareShape::Spade => spades += 1,
            }
            for ideal in [i, j] {
                let f = Morphism::Symbolic(SymMorphism::quotient(&a, ideal.as_symbolic().map_err(err)?).map_err(err)?);
                let r = s1_reflect(&f).map_err(err)?;
                ensure(classify_extension(&r.central).map_err(err)?.central, "reflection is not central")?;
                ensure(s1_reflect(&r.central).map_err(err)?.theta.is_zero(), "reflection is not idempotent")?;
            }
            instances += 1;
        }
    }
    ensure(instances == 100 && clubs > 0 && spades > 0, format!("{instances} instances, {clubs} club, {spades} spade"))?;
    Ok(format!("{finite} finite squares, {instances} symbolic instances ({clubs} club, {spades} spade)"))
}

fn mundici() -> Outcome {
    for m in 1..=10u32 {
        let g = gamma(&UnitalLexGroup::integers(i64::from(m))).map_err(err)?;
        ensure(g.to_finite().map_err(err)? == SymbolicAlgebra::chain(m).to_finite().map_err(err)?, format!("m = {m}"))?;
    }
    let laws = semidirect_laws(2, 10_000, 20, 11).map_err(err)?;
    ensure(laws.iter().all(|l| l.passed), format!("{:?}", laws.iter().find(|l| !l.passed)))?;
    let good = UnitalLexGroup::lex(vec![1, 0]).map_err(err)?;
    let bad = UnitalLexGroup::lex(vec![0, 1]).map_err(err)?;
    ensure(order_unit_check(&good, 0, 1000, 20).passed, "(1,0) rejected")?;
    ensure(!order_unit_check(&bad, 0, 1000, 20).passed, "(0,1) accepted")?;
    Ok(format!("m <= 10 tables identical, {} laws x 10^4 samples, order units (1,0) yes (0,1) no", laws.len()))
}

fn fixtures_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn round_trip(text: &str) -> Result<&'static str, String> {
    fn same<T: serde::Serialize + serde::de::DeserializeOwned + PartialEq>(text: &str) -> Option<bool> {
        let first: T = parse(text).ok()?;
        Some(parse::<T>(&render(&first)).ok()? == first)
    }
    let checks: [(&'static str, Option<bool>); 5] = [
        ("algebra", same::<AlgebraFile>(text)),
        ("morphism", same::<MorphismFile>(text)),
        ("square", same::<SquareFile>(text)),
        ("ideal", same::<IdealFile>(text)),
        ("group", same::<UnitalLexGroup>(text)),
    ];
    match checks.iter().find(|(_, r)| r.is_some()) {
        Some((kind, Some(true))) => Ok(kind),
        Some((kind, _)) => Err(format!("{kind} file does not round-trip")),
        None => Err("matches no schema".into()),
    }
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_mvkit")).args(args).output().map_err(err)?;
    Ok(out.stdout)
}

fn cli() -> Outcome {
    let mut files = 0;
    let mut paths: Vec<PathBuf> = std::fs::read_dir(fixtures_dir()).map_err(err)?.map(|e| e.map(|e| e.path())).collect::<Result<_, _>>().map_err(err)?;
    paths.sort();
    for p in &paths {
        let text = std::fs::read_to_string(p).map_err(err)?;
        let kind = round_trip(&text).map_err(|e| format!("{}: {e}", p.display()))?;
        // Domain-level round trip as well.
        match kind {
            "algebra" => {
                let a = parse::<AlgebraFile>(&text).map_err(err)?.to_algebra().map_err(err)?;
                ensure(AlgebraFile::from_algebra(&a).to_algebra().map_err(err)? == a, "algebra changes")?;
            }
            "morphism" => {
                let f = parse::<MorphismFile>(&text).map_err(err)?.to_morphism().map_err(err)?;
                ensure(MorphismFile::from_morphism(&f).to_morphism().map_err(err)? == f, "morphism changes")?;
            }
            _ => {}
        }
        files += 1;
    }
    let dir = fixtures_dir();
    let f = |name: &str| dir.join(name).to_string_lossy().into_owned();
    let runs: Vec<Vec<String>> = vec![
        vec!["check-axioms".into(), f("mixed.json"), "--mode".into(), "sample".into()],
        vec!["terms".into(), f("mixed.json"), "--count".into(), "500".into()],
        vec!["gamma".into(), f("group_mixed.json")],
        vec!["pretorsion".into(), f("mixed.json")],
    ];
    for run in &runs {
        let mut args: Vec<&str> = run.iter().map(String::as_str).collect();
        args.extend(["--json", "--seed", "17"]);
        let (a, b) = (run_cli(&args)?, run_cli(&args)?);
        ensure(!a.is_empty() && a == b, format!("{} is not reproducible", run[0]))?;
    }
    Ok(format!("{files} fixtures round-trip, {} seeded commands byte-identical", runs.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 axioms", axioms),
        ("2 radical agreement", radicals),
        ("3 kernel-restriction lemma", kernel_lemma),
        ("4 pretorsion", pretorsion),
        ("5 adjunctions", adjunctions),
        ("6 galois coherence", galois),
        ("7 factorization system", factorisation),
        ("8 terms", terms),
        ("9 double extensions", double),
        ("10 mundici", mundici),
        ("11 cli", cli),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail} [{:.1}s]", t.elapsed().as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL  {name}: {e} [{:.1}s]", t.elapsed().as_secs_f64());
            }
        }
    }
    println!("{} of 11 criteria passed in {:.1}s", 11 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
