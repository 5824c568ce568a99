//! Trivial, normal and central extensions relative to the semisimple
//! reflector, the subalgebra `K[f]` and its commutator, and the factorisation
//! system `(E, M)` with `E` the surjections whose kernel lies in the radical
//! and `M` the maps whose kernel meets the radical only in 0.

use std::ops::ControlFlow;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, MvAlgebra};
use crate::double::IdealSubalgebra;
use crate::error::{Error, Result};
use crate::finite::{FiniteAlgebra, FiniteMorphism, Pullback};
use crate::homs::for_each_hom;
use crate::ideals::{kernel, polar, quotient, radical, radical_finite, IdealDesc, RadicalMethod};
use crate::markers::{Marker, Markers};
use crate::morphism::{sample_pool, Body, Morphism, SymMorphism};
use crate::pretorsion::{functor_p, functor_s, map_p, map_s};
use crate::symbolic::{Block, BlockElem, Placement, SymElem, SymbolicAlgebra};

fn rad(a: &Algebra) -> IdealDesc {
    radical(a, RadicalMethod::Infinitesimal)
}

/// How the perfect parts behave under a trivial extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `P(f)` is an isomorphism.
    PIso,
    /// `P(dom)` is the two-element chain and `P(cod)` the one-element algebra.
    Degenerate,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionClassification {
    pub is_surjective: bool,
    pub trivial: bool,
    pub normal: bool,
    pub central: bool,
    pub radical_restriction_injective: bool,
    /// `f(Rad A) = Rad B`; undecided for symbolic maps that are not onto.
    pub radical_restriction_surjective: Option<bool>,
    pub branch: Branch,
    pub kernel: IdealDesc,
    /// `ker f ∩ Rad A`.
    pub radical_meet: IdealDesc,
    /// Finite regime: agreement of `trivial` with the literal pullback test.
    pub pullback_agrees: Option<bool>,
}

fn p_branch(f: &Morphism) -> Result<Branch> {
    let pf = map_p(f)?;
    let iso = match &pf {
        Morphism::Finite(g) => g.is_bijective(),
        Morphism::Symbolic(g) => g.is_injective() && g.is_surjective(),
    };
    if iso {
        return Ok(Branch::PIso);
    }
    let (pa, pb) = (pf.dom(), pf.cod());
    Ok(if pa.is_trivial_object() && !pa.is_terminal() && pb.is_terminal() { Branch::Degenerate } else { Branch::Neither })
}

/// Trivial extensions are the surjections restricting to a bijection of
/// radicals; normal and central extensions are the surjections restricting
/// to an injection. Maps that are not onto are not extensions and get
/// `false` throughout.
pub fn classify_extension(f: &Morphism) -> Result<ExtensionClassification> {
    let (a, b) = (f.dom(), f.cod());
    let surjective = f.is_surjective();
    let ker = kernel(f);
    let (rad_a, rad_b) = (rad(&a), rad(&b));
    let meet = ker.meet(&rad_a)?;
    let injective = meet.is_zero();
    let onto = match f {
        Morphism::Finite(g) => Some(g.image_of(rad_a.as_finite()?) == *rad_b.as_finite()?),
        Morphism::Symbolic(g) if surjective => {
            // For a surjection, f(Rad A) = Rad B iff f⁻¹(Rad B) = Rad A ∨ ker f.
            let back = g.preimage(rad_b.as_symbolic()?)?;
            Some(back == rad_a.as_symbolic()?.join(ker.as_symbolic()?))
        }
        Morphism::Symbolic(_) => None,
    };
    let trivial = surjective && injective && onto == Some(true);
    let pullback_agrees = match f {
        Morphism::Finite(g) if surjective => Some(trivial_via_pullback(g)? == trivial),
        _ => None,
    };
    Ok(ExtensionClassification {
        is_surjective: surjective,
        trivial,
        normal: surjective && injective,
        central: surjective && injective,
        radical_restriction_injective: injective,
        radical_restriction_surjective: onto,
        branch: p_branch(f)?,
        kernel: ker,
        radical_meet: meet,
        pullback_agrees,
    })
}

/// `ker f ⊆ ⊥Rad(A)`.
pub fn kernel_in_radical_polar(f: &Morphism) -> Result<bool> {
    let a = f.dom();
    kernel(f).leq(&polar(&a, &rad(&a))?)
}

/// Whether the square `top: A → B`, `left: A → C`, `right: B → D`,
/// `bottom: C → D` is a pullback. A square that does not commute is not.
pub fn square_is_pullback(
    top: &FiniteMorphism,
    left: &FiniteMorphism,
    right: &FiniteMorphism,
    bottom: &FiniteMorphism,
) -> Result<bool> {
    let pb = Pullback::new(right, bottom)?;
    match pb.comparison(top, left) {
        Ok(phi) => Ok(phi.is_bijective()),
        Err(Error::NotCommuting) => Ok(false),
        Err(e) => Err(e),
    }
}

/// The naturality square of the unit at `f`, built literally and tested for
/// being a pullback.
pub fn trivial_via_pullback(f: &FiniteMorphism) -> Result<bool> {
    let eta_a = functor_s(&Algebra::Finite(f.dom.clone())).unit;
    trivial_via_pullback_with(f, eta_a.as_finite()?)
}

/// As [`trivial_via_pullback`], with the unit at the domain replaced by
/// `unit_a`; used as a negative control.
pub fn trivial_via_pullback_with(f: &FiniteMorphism, unit_a: &FiniteMorphism) -> Result<bool> {
    let eta_b = functor_s(&Algebra::Finite(f.cod.clone())).unit;
    let sf = map_s(&Morphism::Finite(f.clone()))?;
    square_is_pullback(f, unit_a, eta_b.as_finite()?, sf.as_finite()?)
}

/// `K[f] = ker f ∪ ¬ker f`, the whole algebra when the codomain is terminal.
pub fn k_of(f: &Morphism) -> IdealSubalgebra {
    IdealSubalgebra::new(f.dom(), kernel(f)).expect("kernels live in the domain")
}

/// `K[f] ∩ P(A)`, which is the ideal subalgebra of `ker f ∩ Rad A`, and
/// whether it is one of the trivial objects.
#[derive(Debug, Clone)]
pub struct Commutator {
    pub subalgebra: IdealSubalgebra,
    pub in_z: bool,
}

pub fn commutator_kf(f: &Morphism) -> Result<Commutator> {
    let a = f.dom();
    let theta = kernel(f).meet(&rad(&a))?;
    let subalgebra = IdealSubalgebra::new(a, theta)?;
    let in_z = subalgebra.is_trivial_object();
    Ok(Commutator { subalgebra, in_z })
}

/// `θ_f = ker f ∩ Rad A`.
pub fn theta(f: &Morphism) -> Result<IdealDesc> {
    kernel(f).meet(&rad(&f.dom()))
}

pub fn e_member(f: &Morphism) -> Result<bool> {
    Ok(f.is_surjective() && kernel(f).leq(&rad(&f.dom()))?)
}

pub fn m_member(f: &Morphism) -> Result<bool> {
    Ok(theta(f)?.is_zero())
}

/// `f = i ∘ q` with `q ∈ E`, `i ∈ M`.
#[derive(Debug, Clone)]
pub struct Factorisation {
    pub theta: IdealDesc,
    pub q: Morphism,
    pub i: Morphism,
}

pub fn em_factorize(f: &Morphism) -> Result<Factorisation> {
    let th = theta(f)?;
    let (_, q) = quotient(&f.dom(), &th)?;
    let i = Morphism::induced(&q, f)?;
    if !theta(&i)?.is_zero() {
        return Err(Error::Mismatch("induced map meets the radical of the middle algebra".into()));
    }
    Ok(Factorisation { theta: th, q, i })
}

fn count_finite_diagonals(e: &FiniteMorphism, m: &FiniteMorphism, g: &FiniteMorphism, h: &FiniteMorphism) -> usize {
    let mut n = 0;
    for_each_hom(&e.cod, &g.cod, false, |d| {
        let lower = e.map.iter().map(|&x| d[x]).eq(g.map.iter().copied());
        let upper = d.iter().map(|&y| m.at(y)).eq(h.map.iter().copied());
        if lower && upper {
            n += 1;
        }
        ControlFlow::Continue(())
    });
    n
}

/// The diagonal of a square `m ∘ g = h ∘ e` with `e: A → B` in `E` and
/// `m: C → D` in `M`; the unique `d: B → C` with `d ∘ e = g` and `m ∘ d = h`.
pub fn fill_diagonal(e: &Morphism, m: &Morphism, g: &Morphism, h: &Morphism, seed: u64) -> Result<Morphism> {
    if !e_member(e)? {
        return Err(Error::Precondition("left arrow is not in E".into()));
    }
    if !m_member(m)? {
        return Err(Error::Precondition("right arrow is not in M".into()));
    }
    if !g.then(m)?.agrees(&e.then(h)?, seed)? {
        return Err(Error::NotCommuting);
    }
    let d = Morphism::induced(e, g)?;
    if !d.then(m)?.agrees(h, seed)? {
        return Err(Error::NotCommuting);
    }
    Ok(d)
}

/// Number of diagonals of a finite square, by enumeration.
pub fn finite_diagonal_count(e: &FiniteMorphism, m: &FiniteMorphism, g: &FiniteMorphism, h: &FiniteMorphism) -> usize {
    count_finite_diagonals(e, m, g, h)
}

/// Stability of `E` at one instance: if `e` is in `E`, so is its pullback
/// along `g`. Vacuously true for `e` outside `E`.
pub fn stability_check(e: &Morphism, g: &Morphism) -> Result<bool> {
    Ok(!e_member(e)? || pullback_in_e(e, g)?)
}

/// Whether the pullback of `e: A → B` along `g: C → B` lies in `E`. Finite
/// pullbacks are built literally; symbolic ones are supported when `g` is
/// `e` itself (the kernel pair) or a block projection `B × C' → B` (the
/// pullback is then `A × C'`).
pub fn pullback_in_e(e: &Morphism, g: &Morphism) -> Result<bool> {
    match (e, g) {
        (Morphism::Finite(e), Morphism::Finite(g)) => {
            let pb = Pullback::new(e, g)?;
            let rad_p = radical_finite(&pb.algebra, RadicalMethod::Infinitesimal);
            Ok(pb.right.is_surjective() && pb.right.kernel().is_subset(&rad_p))
        }
        (Morphism::Symbolic(es), Morphism::Symbolic(gs)) => {
            let pulled = symbolic_pullback_leg(es, gs)?;
            e_member(&Morphism::Symbolic(pulled))
        }
        _ => Err(Error::MixedRegimes("pullback".into())),
    }
}

fn symbolic_pullback_leg(e: &SymMorphism, g: &SymMorphism) -> Result<SymMorphism> {
    if e.cod() != g.cod() {
        return Err(Error::Mismatch("pullback legs have different codomains".into()));
    }
    if e == g {
        return Ok(KernelPair::new(e)?.first);
    }
    let Body::Projection { kept } = g.body() else {
        return Err(Error::Unsupported("symbolic pullback along this map".into()));
    };
    let c = g.dom();
    let rest: Vec<usize> = (0..c.blocks().len()).filter(|i| !kept.contains(i)).collect();
    let extra = SymbolicAlgebra::new(rest.iter().map(|&i| c.blocks()[i]).collect())?;
    let (p, placement) = SymbolicAlgebra::product_with_placement(&[e.dom(), &extra]);
    let mut raw = kernel(&Morphism::Symbolic(e.clone())).as_symbolic()?.0.clone();
    raw.extend(std::iter::repeat_n(Marker::Zero, extra.blocks().len()));
    SymMorphism::quotient(&p, &Markers(placement.place(raw)))
}

/// The kernel pair `A ×_B A` of a symbolic quotient map. A Komori block
/// whose kernel marker is `Sub(S)` becomes `Komori(m, r + |S|)`: the pair
/// `((a, b), (a, b'))` is stored as `(a, b, b'|S)`. A block with marker
/// `Full` is doubled and a block with marker `Zero` is kept.
#[derive(Debug, Clone)]
pub struct KernelPair {
    pub algebra: SymbolicAlgebra,
    /// The first projection, a quotient map.
    pub first: SymMorphism,
    base: SymbolicAlgebra,
    ker: Markers,
    placement: Placement,
}

impl KernelPair {
    pub fn new(e: &SymMorphism) -> Result<Self> {
        if !e.is_surjective() {
            return Err(Error::Precondition("kernel pairs are built for surjections".into()));
        }
        let base = e.dom().clone();
        let ker = e.kernel();
        let mut raw = Vec::new();
        let mut first_ker = Vec::new();
        for (blk, mk) in base.blocks().iter().zip(&ker.0) {
            match (mk, *blk) {
                (Marker::Zero, _) => {
                    raw.push(*blk);
                    first_ker.push(Marker::Zero);
                }
                (Marker::Full, _) => {
                    raw.extend([*blk, *blk]);
                    first_ker.extend([Marker::Zero, Marker::Full]);
                }
                (Marker::Sub(s), Block::Komori { m, r }) => {
                    raw.push(Block::Komori { m, r: r + s.len() as u32 });
                    first_ker.push(Marker::sub((r as usize..r as usize + s.len()).collect()));
                }
                (Marker::Sub(_), Block::Chain(_)) => unreachable!("chain markers are Zero or Full"),
            }
        }
        let (algebra, placement) = SymbolicAlgebra::with_placement(raw)?;
        let first = SymMorphism::quotient(&algebra, &Markers(placement.place(first_ker)))?;
        Ok(KernelPair { algebra, first, base, ker, placement })
    }

    /// The element representing `(x, y)`, or an error when `e(x) ≠ e(y)`.
    pub fn pair_of(&self, x: &SymElem, y: &SymElem) -> Result<SymElem> {
        if !self.base.contains(x) || !self.base.contains(y) {
            return Err(Error::NotInCarrier(format!("({x}, {y})")));
        }
        let mut raw = Vec::new();
        for (i, mk) in self.ker.0.iter().enumerate() {
            let (u, v) = (&x.0[i], &y.0[i]);
            match mk {
                Marker::Zero if u == v => raw.push(u.clone()),
                Marker::Full => raw.extend([u.clone(), v.clone()]),
                Marker::Sub(s) if u.a == v.a && (0..u.b.len()).all(|c| s.contains(&c) || u.b[c] == v.b[c]) => {
                    let mut b = u.b.clone();
                    b.extend(s.iter().map(|&c| v.b[c]));
                    raw.push(BlockElem { a: u.a, b });
                }
                _ => return Err(Error::NotInCarrier(format!("({x}, {y}) is not in the kernel pair"))),
            }
        }
        Ok(SymElem(self.placement.place(raw)))
    }

    pub fn from_pair(&self, z: &SymElem) -> Result<(SymElem, SymElem)> {
        if !self.algebra.contains(z) {
            return Err(Error::NotInCarrier(z.to_string()));
        }
        let raw: Vec<BlockElem> = self
            .placement
            .unplace(&z.0)
            .into_iter()
            .zip(self.algebra_raw_zeros())
            .map(|(v, zero)| v.unwrap_or(zero))
            .collect();
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        let mut it = raw.into_iter();
        for (blk, mk) in self.base.blocks().iter().zip(&self.ker.0) {
            match mk {
                Marker::Zero => {
                    let u = it.next().expect("one slot");
                    xs.push(u.clone());
                    ys.push(u);
                }
                Marker::Full => {
                    xs.push(it.next().expect("first copy"));
                    ys.push(it.next().expect("second copy"));
                }
                Marker::Sub(s) => {
                    let u = it.next().expect("one slot");
                    let r = blk.rank();
                    let x = BlockElem { a: u.a, b: u.b[..r].to_vec() };
                    let mut y = x.clone();
                    for (p, &c) in s.iter().enumerate() {
                        y.b[c] = u.b[r + p];
                    }
                    xs.push(x);
                    ys.push(y);
                }
            }
        }
        Ok((SymElem(xs), SymElem(ys)))
    }

    fn algebra_raw_zeros(&self) -> Vec<BlockElem> {
        let mut out = Vec::new();
        for (blk, mk) in self.base.blocks().iter().zip(&self.ker.0) {
            match mk {
                Marker::Full => out.extend([blk.zero(), blk.zero()]),
                _ => out.push(blk.zero()),
            }
        }
        out
    }
}

/// Sampled check that the kernel pair represents exactly the pairs
/// identified by `e`.
pub fn kernel_pair_sampled(e: &SymMorphism, seed: u64, count: usize) -> Result<bool> {
    let kp = KernelPair::new(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for z in sample_pool(&kp.algebra, &mut rng, count, 6) {
        let (x, y) = kp.from_pair(&z)?;
        if e.apply(&x)? != e.apply(&y)? || kp.first.apply(&z)? != x || kp.pair_of(&x, &y)? != z {
            return Ok(false);
        }
    }
    let ker = e.kernel();
    let pool = sample_pool(e.dom(), &mut rng, count, 6);
    for (x, k) in pool.iter().zip(pool.iter().rev()) {
        // Keep only the part of k inside the kernel.
        let k = SymElem(
            k.0.iter()
                .zip(e.dom().blocks())
                .zip(&ker.0)
                .map(|((v, blk), mk)| match mk {
                    Marker::Full => v.clone(),
                    Marker::Zero => blk.zero(),
                    Marker::Sub(s) => BlockElem {
                        a: 0,
                        b: (0..v.b.len()).map(|c| if s.contains(&c) { v.b[c].abs() } else { 0 }).collect(),
                    },
                })
                .collect(),
        );
        let y = e.dom().plus(x, &k);
        let z = kp.pair_of(x, &y)?;
        if kp.from_pair(&z)? != (x.clone(), y) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every finite surjection out of `a`, as quotient maps by each ideal.
pub fn finite_quotients(a: &Arc<FiniteAlgebra>) -> Vec<FiniteMorphism> {
    crate::ideals::all_ideals_finite(a)
        .into_iter()
        .map(|i| crate::ideals::quotient_finite(a, &i).expect("listed ideals are ideals").projection)
        .collect()
}

/// `P` applied to the factorisation, for reports.
pub fn perfect_part_of(a: &Algebra) -> Algebra {
    functor_p(a).algebra
}
