//! Semisimple and perfect algebras, the reflector `S = A/Rad(A)`, the
//! coreflector `P = Rad(A) ∪ ¬Rad(A)`, trivial morphisms, and the
//! prekernel/precokernel probes for the sequence `P(B) → B → S(B)`.

use std::ops::ControlFlow;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, MvAlgebra};
use crate::error::{Error, Result};
use crate::finite::{elem_set, FiniteAlgebra, FiniteMorphism, Pullback};
use crate::homs::for_each_hom;
use crate::ideals::{quotient_finite, radical_finite, radical_symbolic, RadicalMethod};
use crate::markers::{Marker, Markers};
use crate::morphism::{quotient_algebra, sample_pool, Body, Morphism, SymMorphism};
use crate::symbolic::{Block, SymbolicAlgebra};

pub fn is_semisimple(a: &Algebra) -> bool {
    match a {
        Algebra::Finite(f) => radical_finite(f, RadicalMethod::Infinitesimal).count_ones(..) == 1,
        Algebra::Symbolic(s) => radical_symbolic(s, RadicalMethod::Infinitesimal).is_zero(),
    }
}

/// `A = Rad(A) ∪ ¬Rad(A)`. For block products this holds exactly for the
/// one-element algebra and single blocks of height 1: any second block, or a
/// height above 1, yields an element that is neither infinitesimal nor
/// co-infinitesimal.
pub fn is_perfect(a: &Algebra) -> bool {
    match a {
        Algebra::Finite(f) => {
            let rad = radical_finite(f, RadicalMethod::Infinitesimal);
            (0..f.size()).all(|x| rad.contains(x) || rad.contains(f.not(x)))
        }
        Algebra::Symbolic(s) => s.is_terminal() || (s.blocks().len() == 1 && s.blocks()[0].height() == 1),
    }
}

/// `S(A)` with its unit `η: A → S(A)`.
#[derive(Debug, Clone)]
pub struct Reflection {
    pub algebra: Algebra,
    pub unit: Morphism,
}

pub fn functor_s(a: &Algebra) -> Reflection {
    match a {
        Algebra::Finite(f) => {
            let q = quotient_finite(f, &radical_finite(f, RadicalMethod::Infinitesimal)).expect("the radical is an ideal");
            Reflection { algebra: Algebra::Finite(q.algebra), unit: Morphism::Finite(q.projection) }
        }
        Algebra::Symbolic(s) => {
            let eta = SymMorphism::eta(s);
            Reflection { algebra: Algebra::Symbolic(eta.cod().clone()), unit: Morphism::Symbolic(eta) }
        }
    }
}

fn unit_finite(a: &Arc<FiniteAlgebra>) -> FiniteMorphism {
    match functor_s(&Algebra::Finite(a.clone())).unit {
        Morphism::Finite(f) => f,
        Morphism::Symbolic(_) => unreachable!(),
    }
}

/// `S(f)([a]) = [f(a)]`.
pub fn map_s(f: &Morphism) -> Result<Morphism> {
    match f {
        Morphism::Finite(f) => {
            let (ea, eb) = (unit_finite(&f.dom), unit_finite(&f.cod));
            let mut table = vec![usize::MAX; ea.cod.size()];
            for x in 0..f.dom.size() {
                let v = eb.at(f.at(x));
                let slot = &mut table[ea.at(x)];
                if *slot != usize::MAX && *slot != v {
                    return Err(Error::NotAMorphism("map does not respect the radical".into()));
                }
                *slot = v;
            }
            Ok(Morphism::Finite(FiniteMorphism::new(ea.cod.clone(), eb.cod.clone(), table)?))
        }
        Morphism::Symbolic(f) => {
            let eta_a = SymMorphism::eta(f.dom());
            let through = f.then(&SymMorphism::eta(f.cod()))?;
            Ok(Morphism::Symbolic(SymMorphism::induced(&eta_a, &through)?))
        }
    }
}

/// `P(A)` with its counit `ε: P(A) → A`.
#[derive(Debug, Clone)]
pub struct Coreflection {
    pub algebra: Algebra,
    pub counit: Morphism,
}

pub fn functor_p(a: &Algebra) -> Coreflection {
    match a {
        Algebra::Finite(f) => {
            let rad = radical_finite(f, RadicalMethod::Infinitesimal);
            let mut both = rad.clone();
            both.union_with(&f.neg_set(&rad));
            let (sub, incl) = f.subalgebra(&both).expect("Rad ∪ ¬Rad is a subalgebra");
            Coreflection { algebra: Algebra::Finite(sub), counit: Morphism::Finite(incl) }
        }
        Algebra::Symbolic(s) => {
            let eps = SymMorphism::epsilon_p(s);
            Coreflection { algebra: Algebra::Symbolic(eps.dom().clone()), counit: Morphism::Symbolic(eps) }
        }
    }
}

fn counit_finite(a: &Arc<FiniteAlgebra>) -> FiniteMorphism {
    match functor_p(&Algebra::Finite(a.clone())).counit {
        Morphism::Finite(f) => f,
        Morphism::Symbolic(_) => unreachable!(),
    }
}

/// `P(f)`, the restriction of `f` to the perfect subalgebras.
pub fn map_p(f: &Morphism) -> Result<Morphism> {
    match f {
        Morphism::Finite(f) => {
            let (ea, eb) = (counit_finite(&f.dom), counit_finite(&f.cod));
            let mut back = vec![usize::MAX; f.cod.size()];
            for (i, &y) in eb.map.iter().enumerate() {
                back[y] = i;
            }
            let table = ea.map.iter().map(|&x| back[f.at(x)]).collect::<Vec<_>>();
            if table.contains(&usize::MAX) {
                return Err(Error::NotAMorphism("image leaves the perfect subalgebra".into()));
            }
            Ok(Morphism::Finite(FiniteMorphism::new(ea.dom.clone(), eb.dom.clone(), table)?))
        }
        Morphism::Symbolic(f) => {
            let eps = SymMorphism::epsilon_p(f.dom());
            Ok(Morphism::Symbolic(SymMorphism::into_p(&eps.then(f)?)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Through {
    Terminal,
    Initial,
}

/// A factorisation of a morphism through the one- or two-element algebra.
#[derive(Debug, Clone)]
pub struct TrivialWitness {
    pub through: Through,
    pub left: Morphism,
    pub right: Morphism,
}

fn finite_chain(m: u32) -> Arc<FiniteAlgebra> {
    Arc::new(SymbolicAlgebra::chain(m).to_finite().expect("chains are finite"))
}

/// Does `f` factor through a trivial object? Through the one-element algebra
/// iff the codomain is one-element; through the two-element chain iff the
/// image is `{0, 1}`. Symbolically, the image is `{0, 1}` iff the domain
/// modulo the kernel is the two-element chain.
pub fn is_trivial_morphism(f: &Morphism) -> Result<Option<TrivialWitness>> {
    match f {
        Morphism::Finite(f) => {
            if f.cod.size() == 1 {
                let t = Arc::new(FiniteAlgebra::terminal());
                return Ok(Some(TrivialWitness {
                    through: Through::Terminal,
                    left: Morphism::Finite(FiniteMorphism::new(f.dom.clone(), t.clone(), vec![0; f.dom.size()])?),
                    right: Morphism::Finite(FiniteMorphism::new(t, f.cod.clone(), vec![0])?),
                }));
            }
            let (zero, one) = (f.cod.zero(), f.cod.one());
            if f.map.iter().any(|&y| y != zero && y != one) {
                return Ok(None);
            }
            let c1 = finite_chain(1);
            let left = f.map.iter().map(|&y| usize::from(y == one)).collect();
            Ok(Some(TrivialWitness {
                through: Through::Initial,
                left: Morphism::Finite(FiniteMorphism::new(f.dom.clone(), c1.clone(), left)?),
                right: Morphism::Finite(FiniteMorphism::new(c1, f.cod.clone(), vec![zero, one])?),
            }))
        }
        Morphism::Symbolic(f) => {
            if f.cod().is_terminal() {
                return Ok(Some(TrivialWitness {
                    through: Through::Terminal,
                    left: Morphism::Symbolic(SymMorphism::to_terminal(f.dom())),
                    right: Morphism::Symbolic(SymMorphism::identity(f.cod())),
                }));
            }
            let k = f.kernel();
            if quotient_algebra(f.dom(), &k).0 != SymbolicAlgebra::initial() {
                return Ok(None);
            }
            Ok(Some(TrivialWitness {
                through: Through::Initial,
                left: Morphism::Symbolic(SymMorphism::quotient(f.dom(), &k)?),
                right: Morphism::Symbolic(SymMorphism::from_initial(f.cod())),
            }))
        }
    }
}

/// The map sending infinitesimals to 0 and co-infinitesimals to 1 on a
/// perfect algebra.
pub fn chi_neg_rad(a: &Algebra) -> Result<Morphism> {
    if !is_perfect(a) || a.is_terminal() {
        return Err(Error::NotPerfect);
    }
    match a {
        Algebra::Finite(f) => {
            let rad = radical_finite(f, RadicalMethod::Infinitesimal);
            let map = (0..f.size()).map(|x| usize::from(!rad.contains(x))).collect();
            Ok(Morphism::Finite(FiniteMorphism::new(f.clone(), finite_chain(1), map)?))
        }
        Algebra::Symbolic(s) => Ok(Morphism::Symbolic(SymMorphism::chi(s)?)),
    }
}

/// `P(B) --ε--> B --η--> S(B)`.
#[derive(Debug, Clone)]
pub struct PreExact {
    pub kernel: Morphism,
    pub middle: Algebra,
    pub cokernel: Morphism,
}

pub fn pre_exact(b: &Algebra) -> PreExact {
    PreExact { kernel: functor_p(b).counit, middle: b.clone(), cokernel: functor_s(b).unit }
}

/// Outcome of a universal-property probe run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub probes: usize,
    /// Probes whose composite with the test arrow was trivial.
    pub relevant: usize,
    pub failures: Vec<String>,
}

impl ProbeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn count_factorisations(
    x: &Arc<FiniteAlgebra>,
    y: &Arc<FiniteAlgebra>,
    accept: impl Fn(&[usize]) -> bool,
) -> usize {
    let mut n = 0;
    for_each_hom(x, y, false, |m| {
        if accept(m) {
            n += 1;
        }
        ControlFlow::Continue(())
    });
    n
}

/// `k` is a prekernel of `g`: `g∘k` is trivial and every probe `e` with
/// `g∘e` trivial factors through `k` in exactly one way.
pub fn is_prekernel_finite(k: &FiniteMorphism, g: &FiniteMorphism, probes: &[FiniteMorphism]) -> Result<ProbeReport> {
    let mut report = ProbeReport { probes: probes.len(), ..Default::default() };
    if is_trivial_morphism(&Morphism::Finite(g.after(k)?))?.is_none() {
        report.failures.push("composite is not trivial".into());
    }
    for e in probes {
        if is_trivial_morphism(&Morphism::Finite(g.after(e)?))?.is_none() {
            continue;
        }
        report.relevant += 1;
        let n = count_factorisations(&e.dom, &k.dom, |phi| phi.iter().map(|&v| k.at(v)).eq(e.map.iter().copied()));
        if n != 1 {
            report.failures.push(format!("probe {:?} factors {n} ways", e.map));
        }
    }
    Ok(report)
}

/// `g` is a precokernel of `k`: `g∘k` is trivial and every probe `θ` with
/// `θ∘k` trivial factors through `g` in exactly one way.
pub fn is_precokernel_finite(g: &FiniteMorphism, k: &FiniteMorphism, probes: &[FiniteMorphism]) -> Result<ProbeReport> {
    let mut report = ProbeReport { probes: probes.len(), ..Default::default() };
    if is_trivial_morphism(&Morphism::Finite(g.after(k)?))?.is_none() {
        report.failures.push("composite is not trivial".into());
    }
    for t in probes {
        if is_trivial_morphism(&Morphism::Finite(t.after(k)?))?.is_none() {
            continue;
        }
        report.relevant += 1;
        let n = count_factorisations(&g.cod, &t.cod, |phi| g.map.iter().map(|&v| phi[v]).eq(t.map.iter().copied()));
        if n != 1 {
            report.failures.push(format!("probe {:?} factors {n} ways", t.map));
        }
    }
    Ok(report)
}

/// Every morphism from the given algebras into `b`.
pub fn finite_probes_into(b: &Arc<FiniteAlgebra>, sources: &[Arc<FiniteAlgebra>]) -> Vec<FiniteMorphism> {
    sources.iter().flat_map(|x| crate::homs::enumerate_homs(x, b)).collect()
}

/// Every morphism from `b` into the given algebras.
pub fn finite_probes_from(b: &Arc<FiniteAlgebra>, targets: &[Arc<FiniteAlgebra>]) -> Vec<FiniteMorphism> {
    targets.iter().flat_map(|y| crate::homs::enumerate_homs(b, y)).collect()
}

const PROBE_SAMPLES: usize = 64;
const PROBE_BOUND: i64 = 5;

fn is_trivial_sym(f: &SymMorphism) -> Result<bool> {
    Ok(is_trivial_morphism(&Morphism::Symbolic(f.clone()))?.is_some())
}

/// Prekernel probes for the inclusion of a perfect subalgebra. The factor
/// through `k` is the corestriction of the probe; it is unique because `k`
/// has zero kernel.
pub fn is_prekernel_symbolic(k: &SymMorphism, g: &SymMorphism, probes: &[SymMorphism], seed: u64) -> Result<ProbeReport> {
    if !matches!(k.body(), Body::EpsilonP) {
        return Err(Error::Unsupported("symbolic prekernel probes need the perfect-subalgebra inclusion".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ProbeReport { probes: probes.len(), ..Default::default() };
    if !is_trivial_sym(&k.then(g)?)? {
        report.failures.push("composite is not trivial".into());
    }
    if !k.is_injective() {
        report.failures.push("inclusion has a nonzero kernel".into());
    }
    for e in probes {
        if !is_trivial_sym(&e.then(g)?)? {
            continue;
        }
        report.relevant += 1;
        let phi = SymMorphism::into_p(e);
        let factors = phi.then(k)?;
        let ok = sample_pool(e.dom(), &mut rng, PROBE_SAMPLES, PROBE_BOUND)
            .iter()
            .all(|x| matches!((factors.apply(x), e.apply(x)), (Ok(u), Ok(v)) if u == v));
        if !ok {
            report.failures.push(format!("probe from {} does not factor", e.dom()));
        }
    }
    Ok(report)
}

/// Precokernel probes for a surjection `g`. The factor is the induced map
/// `[b] ↦ θ(b)`; it is unique because `g` is onto, which the lift check
/// confirms on samples.
pub fn is_precokernel_symbolic(g: &SymMorphism, k: &SymMorphism, probes: &[SymMorphism], seed: u64) -> Result<ProbeReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ProbeReport { probes: probes.len(), ..Default::default() };
    if !is_trivial_sym(&k.then(g)?)? {
        report.failures.push("composite is not trivial".into());
    }
    let onto = sample_pool(g.cod(), &mut rng, PROBE_SAMPLES, PROBE_BOUND)
        .iter()
        .all(|y| matches!(g.lift(y).and_then(|x| g.apply(&x)), Ok(z) if z == *y));
    if !onto {
        report.failures.push("quotient is not onto".into());
    }
    for t in probes {
        if !is_trivial_sym(&k.then(t)?)? {
            continue;
        }
        report.relevant += 1;
        let ok = match SymMorphism::induced(g, t) {
            Ok(phi) => g.then(&phi)?.agrees_sampled(t, &mut rng, PROBE_SAMPLES, PROBE_BOUND)?,
            Err(_) => false,
        };
        if !ok {
            report.failures.push(format!("probe into {} does not factor", t.cod()));
        }
    }
    Ok(report)
}

/// Vocabulary morphisms into `b`: the identity, the perfect inclusion, the
/// map from the two-element chain, projections from `b × C`, quotients of
/// rank-raised copies of `b`, and the perfect inclusions of those sources
/// composed with them.
pub fn symbolic_probes_into(b: &SymbolicAlgebra) -> Vec<SymMorphism> {
    let mut out = vec![SymMorphism::identity(b), SymMorphism::epsilon_p(b), SymMorphism::from_initial(b)];
    let extras = [
        SymbolicAlgebra::chain(1),
        SymbolicAlgebra::chain(2),
        SymbolicAlgebra::komori(1, 1).expect("valid"),
        SymbolicAlgebra::komori(2, 1).expect("valid"),
    ];
    for c in &extras {
        let (x, placement) = SymbolicAlgebra::product_with_placement(&[b, c]);
        let kept: Vec<usize> = placement.slots()[..b.blocks().len()].iter().flatten().copied().collect();
        if let Ok(p) = SymMorphism::projection(&x, kept) {
            if p.cod() == b {
                out.push(SymMorphism::epsilon_p(&x).then(&p).expect("composable"));
                out.push(p);
            }
        }
    }
    for (i, blk) in b.blocks().iter().enumerate() {
        let (raised, killed) = match *blk {
            Block::Chain(m) => (Block::Komori { m, r: 1 }, 0),
            Block::Komori { m, r } => (Block::Komori { m, r: r + 1 }, r as usize),
        };
        let mut raw = b.blocks().to_vec();
        raw[i] = raised;
        let (x, placement) = SymbolicAlgebra::with_placement(raw).expect("valid blocks");
        let mut markers = Markers::zero(&x);
        markers.0[placement.slots()[i].expect("nonempty block")] = Marker::Sub(vec![killed]);
        if let Ok(q) = SymMorphism::quotient(&x, &markers) {
            if q.cod() == b {
                out.push(SymMorphism::epsilon_p(&x).then(&q).expect("composable"));
                out.push(q);
            }
        }
    }
    out
}

/// Vocabulary morphisms out of `b`: the identity, `η`, the map to the
/// one-element algebra, every quotient with and without a following `η`,
/// projections onto single blocks, and `χ` when `b` is perfect.
pub fn symbolic_probes_from(b: &SymbolicAlgebra) -> Vec<SymMorphism> {
    let mut out = vec![SymMorphism::identity(b), SymMorphism::eta(b), SymMorphism::to_terminal(b)];
    for i in Markers::all(b).into_iter().take(64) {
        let q = SymMorphism::quotient(b, &i).expect("valid markers");
        out.push(q.then(&SymMorphism::eta(q.cod())).expect("composable"));
        out.push(q);
    }
    if b.blocks().len() > 1 {
        for i in 0..b.blocks().len() {
            out.push(SymMorphism::projection(b, vec![i]).expect("valid position"));
        }
    }
    if let Ok(chi) = SymMorphism::chi(b) {
        out.push(chi.then(&SymMorphism::from_initial(&SymbolicAlgebra::chain(2))).expect("composable"));
        out.push(chi);
    }
    out
}

/// Every `g: A → B` with `B` semisimple factors through `η_A` exactly once.
/// Returns the number of homomorphisms checked.
pub fn unit_universal_property(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Result<usize> {
    if !is_semisimple(&Algebra::Finite(b.clone())) {
        return Err(Error::Precondition("target is not semisimple".into()));
    }
    let eta = unit_finite(a);
    let homs = crate::homs::enumerate_homs(a, b);
    for g in &homs {
        let n = count_factorisations(&eta.cod, b, |d| eta.map.iter().map(|&v| d[v]).eq(g.map.iter().copied()));
        if n != 1 {
            return Err(Error::Mismatch(format!("{:?} factors through the unit {n} ways", g.map)));
        }
    }
    Ok(homs.len())
}

/// Every `g: A → B` with `A` perfect factors through `ε_B` exactly once.
pub fn counit_universal_property(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Result<usize> {
    if !is_perfect(&Algebra::Finite(a.clone())) {
        return Err(Error::Precondition("source is not perfect".into()));
    }
    let eps = counit_finite(b);
    let homs = crate::homs::enumerate_homs(a, b);
    for g in &homs {
        let n = count_factorisations(a, &eps.dom, |d| d.iter().map(|&v| eps.at(v)).eq(g.map.iter().copied()));
        if n != 1 {
            return Err(Error::Mismatch(format!("{:?} factors through the counit {n} ways", g.map)));
        }
    }
    Ok(homs.len())
}

/// `S(A ×_B C) ≅ S(A) ×_{S(B)} S(C)` for a split epimorphism `p: A → B`
/// with section `s` and any `g: C → B`.
pub fn protoadditivity_finite(p: &FiniteMorphism, s: &FiniteMorphism, g: &FiniteMorphism) -> Result<bool> {
    if p.after(s)? != FiniteMorphism::identity(&p.cod) {
        return Err(Error::Precondition("section does not split the epimorphism".into()));
    }
    let pb = Pullback::new(p, g)?;
    let (ea, eb, ec) = (unit_finite(&p.dom), unit_finite(&p.cod), unit_finite(&g.dom));
    let sp = match map_s(&Morphism::Finite(p.clone()))? {
        Morphism::Finite(f) => f,
        Morphism::Symbolic(_) => unreachable!(),
    };
    let sg = match map_s(&Morphism::Finite(g.clone()))? {
        Morphism::Finite(f) => f,
        Morphism::Symbolic(_) => unreachable!(),
    };
    debug_assert_eq!(sp.cod, eb.cod);
    let target = Pullback::new(&sp, &sg)?;
    let phi = target.comparison(&ea.after(&pb.left)?, &ec.after(&pb.right)?)?;
    // φ descends to an isomorphism on S(pullback) iff it is onto and its
    // kernel is exactly the radical of the pullback.
    let rad = radical_finite(&pb.algebra, RadicalMethod::Infinitesimal);
    Ok(phi.is_surjective() && phi.kernel() == rad)
}

/// The symbolic instances: `p` a block projection `B × E → B` (or the
/// identity), whose pullback along `g: C → B` is `C × E`.
pub fn protoadditivity_symbolic(p: &SymMorphism, s: &SymMorphism, g: &SymMorphism, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if !s.then(p)?.agrees_sampled(&SymMorphism::identity(p.cod()), &mut rng, PROBE_SAMPLES, PROBE_BOUND)? {
        return Err(Error::Precondition("section does not split the epimorphism".into()));
    }
    if g.cod() != p.cod() {
        return Err(Error::Mismatch("pullback legs have different codomains".into()));
    }
    let a = p.dom();
    let dropped: Vec<Block> = match p.body() {
        Body::Identity => Vec::new(),
        Body::Projection { kept } => (0..a.blocks().len()).filter(|i| !kept.contains(i)).map(|i| a.blocks()[i]).collect(),
        _ => return Err(Error::Unsupported("pullback along this epimorphism".into())),
    };
    let e = SymbolicAlgebra::new(dropped)?;
    let pullback = SymbolicAlgebra::product(&[g.dom(), &e]);
    let s_of = |x: &SymbolicAlgebra| SymMorphism::eta(x).cod().clone();
    // S(p) must again be the projection S(B) × S(E) → S(B).
    if s_of(a) != SymbolicAlgebra::product(&[&s_of(p.cod()), &s_of(&e)]) {
        return Ok(false);
    }
    Ok(s_of(&pullback) == SymbolicAlgebra::product(&[&s_of(g.dom()), &s_of(&e)]))
}

/// Named pass/fail line of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: Option<String>) -> Self {
        Check { name: name.to_string(), passed, detail }
    }
}

/// All pretorsion checks for one algebra. Finite probes range over the
/// homomorphisms to and from `probe_algebras`; symbolic probes over the
/// canonical vocabulary.
pub fn pretorsion_report(b: &Algebra, probe_algebras: &[Arc<FiniteAlgebra>], seed: u64) -> Result<Vec<Check>> {
    let seq = pre_exact(b);
    let reflect = functor_s(b);
    let coreflect = functor_p(b);
    let mut checks = vec![
        Check::new("S(B) is semisimple", is_semisimple(&reflect.algebra), None),
        Check::new("P(B) is perfect", is_perfect(&coreflect.algebra), None),
    ];
    let composite = seq.kernel.then(&seq.cokernel)?;
    checks.push(Check::new("eta after epsilon is trivial", is_trivial_morphism(&composite)?.is_some(), None));
    let (pre, post) = match (&seq.kernel, &seq.cokernel, b) {
        (Morphism::Finite(k), Morphism::Finite(g), Algebra::Finite(bf)) => (
            is_prekernel_finite(k, g, &finite_probes_into(bf, probe_algebras))?,
            is_precokernel_finite(g, k, &finite_probes_from(bf, probe_algebras))?,
        ),
        (Morphism::Symbolic(k), Morphism::Symbolic(g), Algebra::Symbolic(bs)) => (
            is_prekernel_symbolic(k, g, &symbolic_probes_into(bs), seed)?,
            is_precokernel_symbolic(g, k, &symbolic_probes_from(bs), seed)?,
        ),
        _ => unreachable!("pre_exact stays in one regime"),
    };
    let describe = |r: &ProbeReport| {
        Some(format!("{} probes, {} relevant{}", r.probes, r.relevant, r.failures.first().map(|f| format!(", {f}")).unwrap_or_default()))
    };
    checks.push(Check::new("epsilon is a prekernel of eta", pre.passed(), describe(&pre)));
    checks.push(Check::new("eta is a precokernel of epsilon", post.passed(), describe(&post)));
    if let Algebra::Finite(_) = b {
        // Every map from a perfect algebra to a semisimple one is trivial.
        let perfect: Vec<&Arc<FiniteAlgebra>> =
            probe_algebras.iter().filter(|x| is_perfect(&Algebra::Finite((*x).clone()))).collect();
        let target = reflect.algebra.as_finite()?.clone();
        let mut bad = None;
        for x in perfect {
            for f in crate::homs::enumerate_homs(x, &target) {
                if is_trivial_morphism(&Morphism::Finite(f.clone()))?.is_none() {
                    bad = Some(format!("{:?}", f.map));
                }
            }
        }
        checks.push(Check::new("perfect to semisimple maps are trivial", bad.is_none(), bad));
    } else {
        let f = seq.kernel.then(&seq.cokernel)?;
        checks.push(Check::new(
            "perfect to semisimple maps are trivial",
            is_trivial_morphism(&f)?.is_some(),
            None,
        ));
    }
    Ok(checks)
}

/// Set of elements of `a` as a bitset, for tests and reports.
pub fn members(a: &FiniteAlgebra, xs: &[usize]) -> crate::finite::ElemSet {
    elem_set(a.size(), xs.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::catalog;
    use crate::symbolic::{BlockElem, SymElem};

    fn sym(a: SymbolicAlgebra) -> Algebra {
        Algebra::Symbolic(a)
    }

    fn k(m: u32, r: u32) -> SymbolicAlgebra {
        SymbolicAlgebra::komori(m, r).unwrap()
    }

    #[test]
    fn semisimple_and_perfect_examples() {
        assert!(is_semisimple(&sym(SymbolicAlgebra::chain(5))));
        assert!(!is_semisimple(&sym(k(1, 1))));
        assert!(is_perfect(&sym(k(1, 1))));
        assert!(!is_perfect(&sym(SymbolicAlgebra::chain(2))));
        for m in [0, 1] {
            let c = sym(SymbolicAlgebra::chain(m));
            assert!(is_semisimple(&c) && is_perfect(&c));
        }
        // Products of perfect blocks are not perfect.
        let kk = SymbolicAlgebra::product(&[&k(1, 1), &k(1, 1)]);
        assert!(!is_perfect(&sym(kk.clone())));
        let fin = Algebra::finite(SymbolicAlgebra::product(&[&SymbolicAlgebra::chain(1), &SymbolicAlgebra::chain(1)]).to_finite().unwrap());
        assert!(!is_perfect(&fin));
    }

    #[test]
    fn reflector_examples() {
        assert_eq!(functor_s(&sym(k(1, 1))).algebra, sym(SymbolicAlgebra::chain(1)));
        let a = SymbolicAlgebra::product(&[&k(2, 1), &SymbolicAlgebra::chain(2)]);
        let expected = SymbolicAlgebra::product(&[&SymbolicAlgebra::chain(2), &SymbolicAlgebra::chain(2)]);
        assert_eq!(functor_s(&sym(a)).algebra, sym(expected));
    }

    #[test]
    fn coreflector_examples() {
        let c2 = Algebra::finite(SymbolicAlgebra::chain(2).to_finite().unwrap());
        let p = functor_p(&c2);
        assert_eq!(p.algebra.cardinality(), Some(2));
        assert_eq!(p.counit.as_finite().unwrap().map, vec![0, 2]);
        let kk = SymbolicAlgebra::product(&[&k(1, 1), &k(1, 1)]);
        assert_eq!(functor_p(&sym(kk)).algebra, sym(k(1, 2)));
    }

    #[test]
    fn chi_examples() {
        let chi = chi_neg_rad(&sym(k(1, 1))).unwrap();
        let f = chi.as_symbolic().unwrap();
        assert_eq!(f.apply(&SymElem(vec![BlockElem::komori(0, &[5])])).unwrap(), SymElem::chain(&[0]));
        assert_eq!(f.apply(&SymElem(vec![BlockElem::komori(1, &[-3])])).unwrap(), SymElem::chain(&[1]));
        assert_eq!(chi_neg_rad(&sym(SymbolicAlgebra::chain(2))).unwrap_err(), Error::NotPerfect);
    }

    #[test]
    fn trivial_morphism_examples() {
        let chi = SymMorphism::chi(&k(1, 1)).unwrap();
        let f = chi.then(&SymMorphism::from_initial(&SymbolicAlgebra::chain(2))).unwrap();
        let w = is_trivial_morphism(&Morphism::Symbolic(f)).unwrap().unwrap();
        assert_eq!(w.through, Through::Initial);
        let id = Morphism::Symbolic(SymMorphism::identity(&SymbolicAlgebra::chain(2)));
        assert!(is_trivial_morphism(&id).unwrap().is_none());
    }

    #[test]
    fn witnesses_compose_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = SymbolicAlgebra::product(&[&k(1, 2), &SymbolicAlgebra::chain(2)]);
        let f = SymMorphism::epsilon_p(&a).then(&SymMorphism::eta(&a)).unwrap();
        let w = is_trivial_morphism(&Morphism::Symbolic(f.clone())).unwrap().unwrap();
        let back = w.left.then(&w.right).unwrap();
        assert!(back.as_symbolic().unwrap().agrees_sampled(&f, &mut rng, 100, 4).unwrap());
    }

    #[test]
    fn pre_exact_for_komori_two_one() {
        let seq = pre_exact(&sym(k(2, 1)));
        assert_eq!(seq.kernel.dom(), sym(k(1, 1)));
        assert_eq!(seq.cokernel.cod(), sym(SymbolicAlgebra::chain(2)));
    }

    #[test]
    fn finite_prekernel_for_chain_two() {
        let b = Arc::new(SymbolicAlgebra::chain(2).to_finite().unwrap());
        let small: Vec<Arc<FiniteAlgebra>> = catalog(4).into_iter().map(|e| e.finite).collect();
        let seq = pre_exact(&Algebra::Finite(b.clone()));
        let (k, g) = (seq.kernel.as_finite().unwrap(), seq.cokernel.as_finite().unwrap());
        let pre = is_prekernel_finite(k, g, &finite_probes_into(&b, &small)).unwrap();
        assert!(pre.passed(), "{pre:?}");
        assert!(pre.relevant > 0);
        let post = is_precokernel_finite(g, k, &finite_probes_from(&b, &small)).unwrap();
        assert!(post.passed(), "{post:?}");
        // The identity is not a prekernel of eta.
        let id = FiniteMorphism::identity(&b);
        assert!(!is_prekernel_finite(&id, g, &finite_probes_into(&b, &small)).unwrap().passed());
    }

    #[test]
    fn symbolic_probes_pass() {
        for b in [k(2, 1), SymbolicAlgebra::product(&[&k(1, 1), &SymbolicAlgebra::chain(2)]), k(1, 2)] {
            let seq = pre_exact(&sym(b.clone()));
            let (kk, g) = (seq.kernel.as_symbolic().unwrap(), seq.cokernel.as_symbolic().unwrap());
            let pre = is_prekernel_symbolic(kk, g, &symbolic_probes_into(&b), 3).unwrap();
            assert!(pre.passed() && pre.relevant > 0, "{b}: {pre:?}");
            let post = is_precokernel_symbolic(g, kk, &symbolic_probes_from(&b), 3).unwrap();
            assert!(post.passed() && post.relevant > 0, "{b}: {post:?}");
        }
    }

    #[test]
    fn adjunction_properties_on_small_catalog() {
        let c: Vec<Arc<FiniteAlgebra>> = catalog(6).into_iter().map(|e| e.finite).collect();
        let mut checked = 0;
        for a in &c {
            for b in &c {
                checked += unit_universal_property(a, b).unwrap();
                if is_perfect(&Algebra::Finite(a.clone())) {
                    checked += counit_universal_property(a, b).unwrap();
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn protoadditivity_examples() {
        let a = SymbolicAlgebra::product(&[&k(1, 1), &SymbolicAlgebra::chain(2)]);
        let p = SymMorphism::projection(&a, vec![0]).unwrap();
        let lift = SymMorphism::chi(&k(1, 1)).unwrap().then(&SymMorphism::from_initial(&SymbolicAlgebra::chain(2))).unwrap();
        let s = SymMorphism::pair(&k(1, 1), vec![SymMorphism::identity(&k(1, 1)), lift]).unwrap();
        assert_eq!(*s.cod(), a);
        let g = SymMorphism::identity(&k(1, 1));
        assert!(protoadditivity_symbolic(&p, &s, &g, 2).unwrap());
        let c = SymbolicAlgebra::product(&[&k(1, 1), &SymbolicAlgebra::chain(3)]);
        let g = SymMorphism::projection(&c, vec![0]).unwrap();
        assert!(protoadditivity_symbolic(&p, &s, &g, 2).unwrap());

        let c = catalog(4);
        let b = c[1].finite.clone();
        let ab = Arc::new(FiniteAlgebra::product(&[&b, &c[2].finite]));
        let proj = FiniteMorphism::checked(ab.clone(), b.clone(), (0..ab.size()).map(|i| i / 3).collect()).unwrap();
        let sec = FiniteMorphism::checked(b.clone(), ab.clone(), vec![0, 5]).unwrap();
        for src in [&b, &ab] {
            for g in crate::homs::enumerate_homs(src, &b) {
                assert!(protoadditivity_finite(&proj, &sec, &g).unwrap());
            }
        }
    }
}
