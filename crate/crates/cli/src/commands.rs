//! One function per subcommand. Each returns a JSON report, the text
//! rendering of it, and whether the verified property held.

use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use mvkit::axioms::{check_axioms as axioms_report, check_lattice_laws, LawReport, Mode};
use mvkit::catalog::{catalog as build_catalog, CatalogRecord};
use mvkit::double::{
    classify_double, commutator_subalgebras, comparison_is_surjective, is_regular_pushout, regular_pushout_sides,
    ExtensionSquare,
};
use mvkit::galois::{classify_extension, commutator_kf, e_member, em_factorize, m_member};
use mvkit::homs::{enumerate_homs, find_isomorphism};
use mvkit::ideals::{all_ideals, maximal_ideals, radical as radical_by, RadicalMethod};
use mvkit::io::{AlgebraFile, IdealFile, MorphismFile, SquareFile, SquareInput};
use mvkit::mundici::{gamma as gamma_of, order_unit_check, UnitalLexGroup};
use mvkit::pretorsion::{is_perfect, is_semisimple, pretorsion_report};
use mvkit::terms::verify_terms;
use mvkit::{Algebra, FiniteAlgebra, IdealDesc, Morphism};

use crate::{Expectation, ModeArg, Options};

pub struct Report {
    pub value: Value,
    pub lines: Vec<String>,
    pub ok: bool,
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_algebra(path: &Path) -> Result<Algebra> {
    Ok(load::<AlgebraFile>(path)?.to_algebra()?)
}

fn load_morphism(path: &Path) -> Result<Morphism> {
    Ok(load::<MorphismFile>(path)?.to_morphism()?)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn ideal_value(i: &IdealDesc) -> Value {
    to_value(&IdealFile::from_ideal(i))
}

fn describe(a: &Algebra) -> String {
    match a {
        Algebra::Finite(f) => format!("finite algebra of size {}", f.size()),
        Algebra::Symbolic(s) => s.to_string(),
    }
}

fn resolve_mode(opts: &Options, a: &Algebra) -> Mode {
    match opts.mode {
        Some(ModeArg::Exhaustive) => Mode::Exhaustive,
        Some(ModeArg::Sample) => Mode::sample(opts.count, opts.bound, opts.seed),
        None if a.cardinality().is_some() => Mode::Exhaustive,
        None => Mode::sample(opts.count, opts.bound, opts.seed),
    }
}

fn law_lines(r: &LawReport, lines: &mut Vec<String>) {
    for law in &r.laws {
        let status = if law.passed { "pass" } else { "FAIL" };
        let mut line = format!("{}: {status} ({} tuples)", law.name, law.checked);
        if let Some(w) = &law.witness {
            line.push_str(&format!(", witness {}", serde_json::to_string(w).expect("elements serialize")));
        }
        lines.push(line);
    }
}

pub fn check_axioms(path: &Path, opts: &Options) -> Result<Report> {
    let a = load_algebra(path)?;
    let mode = resolve_mode(opts, &a);
    let (axioms, lattice) = match &a {
        Algebra::Finite(f) => (axioms_report(f.as_ref(), mode)?, check_lattice_laws(f.as_ref(), mode)?),
        Algebra::Symbolic(s) => (axioms_report(s, mode)?, check_lattice_laws(s, mode)?),
    };
    let ok = axioms.all_passed() && lattice.all_passed();
    let mut lines = vec![describe(&a)];
    law_lines(&axioms, &mut lines);
    law_lines(&lattice, &mut lines);
    let value = json!({ "algebra": describe(&a), "axioms": axioms, "lattice": lattice, "passed": ok });
    Ok(Report { value, lines, ok })
}

pub fn radical(path: &Path) -> Result<Report> {
    let a = load_algebra(path)?;
    let methods = [RadicalMethod::Maximal, RadicalMethod::Infinitesimal, RadicalMethod::Nilpotent];
    let results: Vec<(RadicalMethod, IdealDesc)> = methods.iter().map(|&m| (m, radical_by(&a, m))).collect();
    let agree = results.windows(2).all(|w| w[0].1 == w[1].1);
    let rad = &results[1].1;
    let summary = if rad.is_full() {
        "full".to_string()
    } else if rad.is_zero() {
        "zero".to_string()
    } else {
        rad.to_string()
    };
    let mut lines = vec![describe(&a), format!("radical: {summary}")];
    for (m, r) in &results {
        lines.push(format!("  {}: {r}", m.name()));
    }
    lines.push(format!("methods agree: {agree}"));
    let by_method: serde_json::Map<String, Value> =
        results.iter().map(|(m, r)| (m.name().to_string(), ideal_value(r))).collect();
    let value = json!({
        "radical": ideal_value(rad),
        "summary": summary,
        "methods": by_method,
        "agree": agree,
        "semisimple": is_semisimple(&a),
        "perfect": is_perfect(&a),
    });
    Ok(Report { value, lines, ok: agree })
}

pub fn ideals(path: &Path) -> Result<Report> {
    let a = load_algebra(path)?;
    let all = all_ideals(&a);
    let maximal = maximal_ideals(&a);
    let mut lines = vec![describe(&a), format!("{} ideals", all.len())];
    lines.extend(all.iter().map(|i| format!("  {i}{}", if maximal.contains(i) { "  (maximal)" } else { "" })));
    let value = json!({
        "count": all.len(),
        "ideals": all.iter().map(ideal_value).collect::<Vec<_>>(),
        "maximal": maximal.iter().map(ideal_value).collect::<Vec<_>>(),
    });
    Ok(Report { value, lines, ok: true })
}

fn finite_of(a: &Algebra) -> Result<Arc<FiniteAlgebra>> {
    match a {
        Algebra::Finite(f) => Ok(f.clone()),
        Algebra::Symbolic(s) => Ok(Arc::new(s.to_finite()?)),
    }
}

pub fn homs(dom: &Path, cod: &Path, limit: usize) -> Result<Report> {
    let (a, b) = (finite_of(&load_algebra(dom)?)?, finite_of(&load_algebra(cod)?)?);
    let all = enumerate_homs(&a, &b);
    let iso = find_isomorphism(&a, &b);
    let shown: Vec<&Vec<usize>> = all.iter().take(limit).map(|h| &h.map).collect();
    let mut lines = vec![format!("{} homomorphisms", all.len())];
    lines.extend(shown.iter().map(|m| format!("  {m:?}")));
    if all.len() > limit {
        lines.push(format!("  ... {} more", all.len() - limit));
    }
    lines.push(format!("isomorphic: {}", iso.is_some()));
    let value = json!({ "count": all.len(), "homs": shown, "isomorphism": iso });
    Ok(Report { value, lines, ok: true })
}

pub fn classify(path: &Path, expect: Option<Expectation>) -> Result<Report> {
    let f = load_morphism(path)?;
    let c = classify_extension(&f)?;
    let mut value = json!({
        "surjective": c.is_surjective,
        "trivial": c.trivial,
        "normal": c.normal,
        "central": c.central,
        "kernel": ideal_value(&c.kernel),
        "radical_meet": ideal_value(&c.radical_meet),
        "branch": c.branch,
    });
    if let Some(p) = c.pullback_agrees {
        value["pullback_agrees"] = json!(p);
    }
    let mut lines = vec![
        format!("{} -> {}", describe(&f.dom()), describe(&f.cod())),
        format!("surjective: {}", c.is_surjective),
        format!("trivial: {}", c.trivial),
        format!("normal: {}", c.normal),
        format!("central: {}", c.central),
        format!("kernel: {}", c.kernel),
        format!("kernel meet radical: {}", c.radical_meet),
        format!("branch: {}", to_value(&c.branch).as_str().unwrap_or_default()),
    ];
    let mut ok = c.pullback_agrees != Some(false);
    if let Some(e) = expect {
        let held = match e {
            Expectation::Surjective => c.is_surjective,
            Expectation::Trivial => c.trivial,
            Expectation::Normal => c.normal,
            Expectation::Central => c.central,
            Expectation::InZ => bail!("in-z applies to the commutator command"),
        };
        if !held {
            lines.push(format!("expected {e:?} failed; witness: kernel meet radical = {}", c.radical_meet));
        }
        value["expectation"] = json!({ "property": format!("{e:?}").to_lowercase(), "held": held });
        ok &= held;
    }
    Ok(Report { value, lines, ok })
}

pub fn factorize(path: &Path) -> Result<Report> {
    let f = load_morphism(path)?;
    let fac = em_factorize(&f)?;
    let q_in_e = e_member(&fac.q)?;
    let i_in_m = m_member(&fac.i)?;
    let recomposes = fac.q.then(&fac.i)?.agrees(&f, 0)?;
    let ok = q_in_e && i_in_m && recomposes;
    let lines = vec![
        format!("theta: {}", fac.theta),
        format!("middle: {}", describe(&fac.q.cod())),
        format!("q in E: {q_in_e}"),
        format!("i in M: {i_in_m}"),
        format!("i after q equals f: {recomposes}"),
    ];
    let value = json!({
        "theta": ideal_value(&fac.theta),
        "q": MorphismFile::from_morphism(&fac.q),
        "i": MorphismFile::from_morphism(&fac.i),
        "q_in_e": q_in_e,
        "i_in_m": i_in_m,
        "recomposes": recomposes,
    });
    Ok(Report { value, lines, ok })
}

pub fn pretorsion(path: &Path, opts: &Options) -> Result<Report> {
    let a = load_algebra(path)?;
    let probes: Vec<Arc<FiniteAlgebra>> = build_catalog(6).into_iter().map(|e| e.finite).collect();
    let checks = pretorsion_report(&a, &probes, opts.seed)?;
    let ok = checks.iter().all(|c| c.passed);
    let mut lines = vec![describe(&a)];
    for c in &checks {
        let detail = c.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default();
        lines.push(format!("{}: {}{detail}", c.name, if c.passed { "pass" } else { "FAIL" }));
    }
    Ok(Report { value: json!({ "checks": checks, "passed": ok }), lines, ok })
}

fn load_square(path: &Path) -> Result<(SquareInput, ExtensionSquare)> {
    let input = load::<SquareFile>(path)?.to_input()?;
    let sq = match &input {
        SquareInput::Ideals { algebra, i, j } => ExtensionSquare::from_ideals(algebra, i, j)?,
        SquareInput::Arrows { f, h, k, g } => ExtensionSquare::new(f.clone(), h.clone(), k.clone(), g.clone())?,
    };
    Ok((input, sq))
}

pub fn square_classify(path: &Path) -> Result<Report> {
    let (_, sq) = load_square(path)?;
    let regular = is_regular_pushout(&sq)?;
    let comparison = match sq.f {
        Morphism::Finite(_) => Some(comparison_is_surjective(&sq)?),
        Morphism::Symbolic(_) => None,
    };
    let mut lines = vec![format!("regular pushout: {regular}")];
    if let Some(c) = comparison {
        lines.push(format!("comparison map surjective: {c}"));
    }
    let mut value = json!({ "regular_pushout": regular, "comparison_surjective": comparison });
    if !regular {
        let (image, ker_g) = regular_pushout_sides(&sq)?;
        lines.push(format!("witness: h(ker f) = {image} but ker g = {ker_g}"));
        value["witness"] = json!({ "image_of_kernel": ideal_value(&image), "kernel_g": ideal_value(&ker_g) });
        return Ok(Report { value, lines, ok: false });
    }
    let d = classify_double(&sq)?;
    lines.push(format!("normal: {}", d.normal));
    lines.push(format!("central: {}", d.central));
    lines.push(format!("ker h meet ker f meet radical: {}", d.meet));
    value["normal"] = json!(d.normal);
    value["central"] = json!(d.central);
    value["meet"] = ideal_value(&d.meet);
    let ok = comparison.unwrap_or(true);
    Ok(Report { value, lines, ok })
}

pub fn commutator(morphism: Option<&Path>, square: Option<&Path>, expect: Option<Expectation>) -> Result<Report> {
    if !matches!(expect, None | Some(Expectation::InZ)) {
        bail!("commutator only supports --expect in-z");
    }
    let (mut value, mut lines, in_z) = match (morphism, square) {
        (Some(path), None) => {
            let c = commutator_kf(&load_morphism(path)?)?;
            let lines = vec![format!("commutator ideal: {}", c.subalgebra.ideal), format!("in Z: {}", c.in_z)];
            (json!({ "ideal": ideal_value(&c.subalgebra.ideal), "in_z": c.in_z }), lines, c.in_z)
        }
        (None, Some(path)) => {
            let SquareInput::Ideals { algebra, i, j } = load::<SquareFile>(path)?.to_input()? else {
                bail!("the commutator of a square needs the ideal form of the square file");
            };
            let c = commutator_subalgebras(&algebra, &i, &j)?;
            let lines = vec![
                format!("shape: {}", to_value(&c.shape).as_str().unwrap_or_default()),
                format!("commutator ideal: {}", c.subalgebra.ideal),
                format!("in Z: {}", c.in_z),
                format!("square is a regular pushout: {}", c.regular_pushout),
                format!("square is central: {}", c.square_central),
            ];
            let value = json!({
                "shape": c.shape,
                "ideal": ideal_value(&c.subalgebra.ideal),
                "in_z": c.in_z,
                "regular_pushout": c.regular_pushout,
                "square_central": c.square_central,
            });
            (value, lines, c.in_z)
        }
        _ => bail!("give exactly one of --morphism and --square"),
    };
    let ok = expect.is_none() || in_z;
    if expect.is_some() {
        value["expectation"] = json!({ "property": "in-z", "held": in_z });
        if !in_z {
            lines.push("expected in-z failed".into());
        }
    }
    Ok(Report { value, lines, ok })
}

pub fn terms(path: &Path, opts: &Options) -> Result<Report> {
    let a = load_algebra(path)?;
    let mode = resolve_mode(opts, &a);
    let reports = match &a {
        Algebra::Finite(f) => verify_terms(f.as_ref(), mode)?,
        Algebra::Symbolic(s) => verify_terms(s, mode)?,
    };
    let ok = reports.iter().all(|r| r.passed);
    let mut lines = vec![describe(&a)];
    for r in &reports {
        let mut line = format!("{}: {} ({} tuples)", r.identity, if r.passed { "pass" } else { "FAIL" }, r.tuples_checked);
        if let Some(w) = &r.witness {
            line.push_str(&format!(", witness {}", serde_json::to_string(w).expect("elements serialize")));
        }
        lines.push(line);
    }
    Ok(Report { value: to_value(&reports), lines, ok })
}

pub fn gamma(path: &Path, opts: &Options) -> Result<Report> {
    let g: UnitalLexGroup = load(path)?;
    let check = order_unit_check(&g, opts.seed, opts.count, opts.bound);
    let mut lines = vec![format!("order unit: {} ({} samples)", if check.passed { "pass" } else { "FAIL" }, check.sampled)];
    if let Some(w) = &check.witness {
        lines.push(format!("witness: {}", serde_json::to_string(w).expect("elements serialize")));
        return Ok(Report { value: json!({ "order_unit": check }), lines, ok: false });
    }
    let a = gamma_of(&g)?;
    lines.push(format!("interval: {a}"));
    let file = AlgebraFile::from_algebra(&Algebra::Symbolic(a));
    Ok(Report { value: json!({ "order_unit": check, "algebra": file }), lines, ok: true })
}

pub fn entry_file_name(heights: &[u32]) -> String {
    if heights.is_empty() {
        return "terminal.json".into();
    }
    let parts: Vec<String> = heights.iter().map(u32::to_string).collect();
    format!("chains-{}.json", parts.join("-"))
}

pub fn catalog(max: usize, dir: Option<&Path>) -> Result<Report> {
    let entries = build_catalog(max);
    if let Some(dir) = dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for e in &entries {
            let file = AlgebraFile::from_algebra(&Algebra::Symbolic(e.symbolic.clone()));
            let path = dir.join(entry_file_name(&e.heights));
            let text = serde_json::to_string_pretty(&file).expect("algebra files serialize");
            std::fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
        }
    }
    let records: Vec<CatalogRecord> = entries.iter().map(CatalogRecord::from).collect();
    let mut lines = vec![format!("{} algebras of size at most {max}", records.len())];
    lines.extend(records.iter().map(|r| format!("  {:>4}  {}", r.size, r.name)));
    Ok(Report { value: to_value(&records), lines, ok: true })
}
