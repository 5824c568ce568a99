//! Morphisms of both regimes.
//!
//! Symbolic morphisms come from a closed vocabulary of canonical maps. Each
//! variant knows how to evaluate itself, pull an ideal back along itself and,
//! when surjective, push an ideal forward and pick a preimage of an element.
//! Kernels are preimages of the zero ideal.

use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, MvAlgebra};
use crate::error::{Error, Result};
use crate::finite::FiniteMorphism;
use crate::markers::{Marker, Markers};
use crate::symbolic::{Block, BlockElem, Placement, SymElem, SymbolicAlgebra};

/// The perfect subalgebra `Rad ∪ ¬Rad` of a block product, as an algebra:
/// `Komori(1, R)` with `R` the total rank, the two-element chain when there
/// are no Komori blocks, and the one-element algebra for the one-element
/// algebra.
pub fn perfect_part(a: &SymbolicAlgebra) -> SymbolicAlgebra {
    if a.is_terminal() {
        return SymbolicAlgebra::terminal();
    }
    match a.total_rank() {
        0 => SymbolicAlgebra::initial(),
        r => SymbolicAlgebra::komori(1, r as u32).expect("rank is positive"),
    }
}

/// The quotient of `a` by an ideal, with the block placement of the quotient.
pub fn quotient_algebra(a: &SymbolicAlgebra, ideal: &Markers) -> (SymbolicAlgebra, Placement) {
    SymbolicAlgebra::with_placement(ideal.quotient_blocks(a)).expect("quotient blocks are valid")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Identity,
    /// Canonical projection onto a quotient.
    Quotient { ideal: Markers, placement: Placement },
    /// Projection onto the quotient by the radical.
    Eta { ideal: Markers, placement: Placement },
    /// Inclusion of the perfect subalgebra.
    EpsilonP,
    /// Characteristic map of the co-infinitesimals on a perfect algebra.
    Chi,
    /// The unique map out of the two-element chain.
    FromInitial,
    ToTerminal,
    /// Projection onto a subsequence of blocks.
    Projection { kept: Vec<usize> },
    /// Tupling into the product of the component codomains.
    Pair { parts: Vec<SymMorphism>, placement: Placement },
    /// Applied left to right.
    Composite(Vec<SymMorphism>),
    /// `[a] ↦ map(a)` on the codomain of a surjection whose kernel `map` kills.
    Induced { quotient: Box<SymMorphism>, map: Box<SymMorphism> },
    /// Corestriction of a map whose image lies in the perfect subalgebra.
    IntoP { map: Box<SymMorphism> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMorphism {
    dom: SymbolicAlgebra,
    cod: SymbolicAlgebra,
    body: Body,
}

impl SymMorphism {
    pub fn dom(&self) -> &SymbolicAlgebra {
        &self.dom
    }

    pub fn cod(&self) -> &SymbolicAlgebra {
        &self.cod
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn identity(a: &SymbolicAlgebra) -> Self {
        SymMorphism { dom: a.clone(), cod: a.clone(), body: Body::Identity }
    }

    pub fn quotient(a: &SymbolicAlgebra, ideal: &Markers) -> Result<Self> {
        let ideal = Markers::new(a, ideal.0.clone())?;
        let (cod, placement) = quotient_algebra(a, &ideal);
        Ok(SymMorphism { dom: a.clone(), cod, body: Body::Quotient { ideal, placement } })
    }

    pub fn eta(a: &SymbolicAlgebra) -> Self {
        let ideal = Markers::radical(a);
        let (cod, placement) = quotient_algebra(a, &ideal);
        SymMorphism { dom: a.clone(), cod, body: Body::Eta { ideal, placement } }
    }

    /// `P(a) → a`.
    pub fn epsilon_p(a: &SymbolicAlgebra) -> Self {
        SymMorphism { dom: perfect_part(a), cod: a.clone(), body: Body::EpsilonP }
    }

    pub fn chi(a: &SymbolicAlgebra) -> Result<Self> {
        if a.is_terminal() || a.blocks().len() != 1 || a.blocks()[0].height() != 1 {
            return Err(Error::NotPerfect);
        }
        Ok(SymMorphism { dom: a.clone(), cod: SymbolicAlgebra::initial(), body: Body::Chi })
    }

    pub fn from_initial(a: &SymbolicAlgebra) -> Self {
        SymMorphism { dom: SymbolicAlgebra::initial(), cod: a.clone(), body: Body::FromInitial }
    }

    pub fn to_terminal(a: &SymbolicAlgebra) -> Self {
        SymMorphism { dom: a.clone(), cod: SymbolicAlgebra::terminal(), body: Body::ToTerminal }
    }

    /// Projection onto the blocks at strictly increasing positions `kept`.
    pub fn projection(a: &SymbolicAlgebra, kept: Vec<usize>) -> Result<Self> {
        if kept.windows(2).any(|w| w[0] >= w[1]) || kept.iter().any(|&i| i >= a.blocks().len()) {
            return Err(Error::Precondition("projection needs increasing block positions".into()));
        }
        let cod = SymbolicAlgebra::new(kept.iter().map(|&i| a.blocks()[i]).collect())?;
        Ok(SymMorphism { dom: a.clone(), cod, body: Body::Projection { kept } })
    }

    pub fn pair(dom: &SymbolicAlgebra, parts: Vec<SymMorphism>) -> Result<Self> {
        if parts.iter().any(|p| p.dom != *dom) {
            return Err(Error::Mismatch("pair components must share a domain".into()));
        }
        let cods: Vec<&SymbolicAlgebra> = parts.iter().map(|p| &p.cod).collect();
        let (cod, placement) = SymbolicAlgebra::product_with_placement(&cods);
        Ok(SymMorphism { dom: dom.clone(), cod, body: Body::Pair { parts, placement } })
    }

    /// The composite applying `steps` left to right.
    pub fn compose(steps: Vec<SymMorphism>) -> Result<Self> {
        let first = steps.first().ok_or_else(|| Error::Mismatch("empty composite".into()))?;
        if steps.windows(2).any(|w| w[0].cod != w[1].dom) {
            return Err(Error::Mismatch("consecutive arrows do not compose".into()));
        }
        let mut flat = Vec::new();
        for s in steps.iter() {
            match &s.body {
                Body::Composite(inner) => flat.extend(inner.iter().cloned()),
                Body::Identity => {}
                _ => flat.push(s.clone()),
            }
        }
        let (dom, cod) = (first.dom.clone(), steps.last().unwrap().cod.clone());
        Ok(match flat.len() {
            0 => SymMorphism::identity(&dom),
            1 => flat.pop().unwrap(),
            _ => SymMorphism { dom, cod, body: Body::Composite(flat) },
        })
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &SymMorphism) -> Result<Self> {
        Self::compose(vec![self.clone(), next.clone()])
    }

    /// The map `[a] ↦ map(a)` on the codomain of the surjection `quotient`.
    pub fn induced(quotient: &SymMorphism, map: &SymMorphism) -> Result<Self> {
        if quotient.dom != map.dom {
            return Err(Error::Mismatch("induced map needs a common domain".into()));
        }
        if !quotient.is_liftable() {
            return Err(Error::Unsupported("inducing along a map without a section".into()));
        }
        if !quotient.kernel().leq(&map.kernel()) {
            return Err(Error::Precondition("map does not kill the kernel of the quotient".into()));
        }
        Ok(SymMorphism {
            dom: quotient.cod.clone(),
            cod: map.cod.clone(),
            body: Body::Induced { quotient: Box::new(quotient.clone()), map: Box::new(map.clone()) },
        })
    }

    /// Corestriction of `map` to the perfect subalgebra of its codomain.
    pub fn into_p(map: &SymMorphism) -> Self {
        SymMorphism {
            dom: map.dom.clone(),
            cod: perfect_part(&map.cod),
            body: Body::IntoP { map: Box::new(map.clone()) },
        }
    }

    pub fn apply(&self, x: &SymElem) -> Result<SymElem> {
        if !self.dom.contains(x) {
            return Err(Error::NotInCarrier(x.to_string()));
        }
        self.eval(x)
    }

    fn eval(&self, x: &SymElem) -> Result<SymElem> {
        let (a, b) = (&self.dom, &self.cod);
        Ok(match &self.body {
            Body::Identity => x.clone(),
            Body::Quotient { ideal, placement } | Body::Eta { ideal, placement } => {
                let raw = a
                    .blocks()
                    .iter()
                    .zip(&ideal.0)
                    .zip(&x.0)
                    .map(|((blk, m), v)| BlockElem {
                        a: v.a,
                        b: m.surviving_coords(blk).iter().map(|&i| v.b[i]).collect(),
                    })
                    .collect();
                SymElem(placement.place(raw))
            }
            Body::EpsilonP => epsilon_apply(b, x),
            Body::Chi => SymElem(vec![BlockElem::chain(x.0[0].a)]),
            Body::FromInitial => {
                if x.0[0].a == 0 {
                    b.zero()
                } else {
                    b.one()
                }
            }
            Body::ToTerminal => SymElem(Vec::new()),
            Body::Projection { kept } => SymElem(kept.iter().map(|&i| x.0[i].clone()).collect()),
            Body::Pair { parts, placement } => {
                let mut raw = Vec::new();
                for p in parts {
                    raw.extend(p.eval(x)?.0);
                }
                SymElem(placement.place(raw))
            }
            Body::Composite(steps) => {
                let mut y = x.clone();
                for s in steps {
                    y = s.eval(&y)?;
                }
                y
            }
            Body::Induced { quotient, map } => map.eval(&quotient.lift(x)?)?,
            Body::IntoP { map } => epsilon_inverse(&map.cod, &map.eval(x)?)?,
        })
    }

    /// The ideal `f⁻¹(J)` of the domain.
    pub fn preimage(&self, j: &Markers) -> Result<Markers> {
        let (a, b) = (&self.dom, &self.cod);
        if j.0.len() != b.blocks().len() {
            return Err(Error::InvalidIdeal("marker count does not match the codomain".into()));
        }
        Ok(match &self.body {
            Body::Identity => j.clone(),
            Body::Quotient { ideal, placement } | Body::Eta { ideal, placement } => {
                quotient_preimage(a, ideal, placement, j)
            }
            Body::EpsilonP => epsilon_preimage(a, b, j),
            Body::Chi => {
                if j.is_full() {
                    Markers::full(a)
                } else {
                    Markers::radical(a)
                }
            }
            Body::FromInitial => {
                if j.is_full() {
                    Markers::full(a)
                } else {
                    Markers::zero(a)
                }
            }
            Body::ToTerminal => Markers::full(a),
            Body::Projection { kept } => {
                let mut out = Markers::full(a);
                for (p, &i) in kept.iter().enumerate() {
                    out.0[i] = j.0[p].clone();
                }
                out
            }
            Body::Pair { parts, placement } => {
                let raw: Vec<Marker> = placement
                    .unplace(&j.0)
                    .into_iter()
                    .map(|m| m.unwrap_or(Marker::Full))
                    .collect();
                let mut out = Markers::full(a);
                let mut offset = 0;
                for p in parts {
                    let n = p.cod.blocks().len();
                    let piece = Markers(raw[offset..offset + n].to_vec());
                    offset += n;
                    out = out.meet(&p.preimage(&piece)?);
                }
                out
            }
            Body::Composite(steps) => {
                let mut m = j.clone();
                for s in steps.iter().rev() {
                    m = s.preimage(&m)?;
                }
                m
            }
            Body::Induced { quotient, map } => quotient.image(&map.preimage(j)?)?,
            Body::IntoP { map } => {
                if j.is_full() {
                    Markers::full(a)
                } else {
                    map.preimage(&radical_piece(&map.cod, j))?
                }
            }
        })
    }

    pub fn kernel(&self) -> Markers {
        self.preimage(&Markers::zero(&self.cod)).expect("zero ideal matches the codomain")
    }

    /// The ideal `f(K)` of the codomain; defined for the surjective variants.
    pub fn image(&self, k: &Markers) -> Result<Markers> {
        let (a, b) = (&self.dom, &self.cod);
        if k.0.len() != a.blocks().len() {
            return Err(Error::InvalidIdeal("marker count does not match the domain".into()));
        }
        Ok(match &self.body {
            Body::Identity => k.clone(),
            Body::EpsilonP if a == b => k.clone(),
            Body::Quotient { ideal, placement } | Body::Eta { ideal, placement } => {
                quotient_image(a, b, ideal, placement, k)
            }
            Body::Chi => Markers(vec![if k.is_full() { Marker::Full } else { Marker::Zero }]),
            Body::FromInitial if b.is_terminal() => Markers(Vec::new()),
            Body::FromInitial if b.is_trivial_object() => k.clone(),
            Body::ToTerminal => Markers(Vec::new()),
            Body::Projection { kept } => Markers(kept.iter().map(|&i| k.0[i].clone()).collect()),
            Body::Composite(steps) => {
                let mut m = k.clone();
                for s in steps {
                    m = s.image(&m)?;
                }
                m
            }
            Body::Induced { quotient, map } => map.image(&quotient.preimage(k)?)?,
            _ => return Err(Error::Unsupported("image of an ideal along a non-surjective map".into())),
        })
    }

    /// Some preimage of `y`; defined for the surjective variants.
    pub fn lift(&self, y: &SymElem) -> Result<SymElem> {
        if !self.cod.contains(y) {
            return Err(Error::NotInCarrier(y.to_string()));
        }
        let (a, b) = (&self.dom, &self.cod);
        Ok(match &self.body {
            Body::Identity => y.clone(),
            Body::EpsilonP if a == b => y.clone(),
            Body::Quotient { ideal, placement } | Body::Eta { ideal, placement } => SymElem(
                placement
                    .unplace(&y.0)
                    .into_iter()
                    .enumerate()
                    .map(|(i, v)| match v {
                        Some(v) => ideal.lift_block(i, &a.blocks()[i], &v),
                        None => a.blocks()[i].zero(),
                    })
                    .collect(),
            ),
            Body::Chi => {
                if y.0[0].a == 0 {
                    a.zero()
                } else {
                    a.one()
                }
            }
            Body::FromInitial if b.is_terminal() => a.zero(),
            Body::FromInitial if b.is_trivial_object() => y.clone(),
            Body::ToTerminal => a.zero(),
            Body::Projection { kept } => {
                let mut x = a.zero();
                for (p, &i) in kept.iter().enumerate() {
                    x.0[i] = y.0[p].clone();
                }
                x
            }
            Body::Composite(steps) => {
                let mut x = y.clone();
                for s in steps.iter().rev() {
                    x = s.lift(&x)?;
                }
                x
            }
            Body::Induced { quotient, map } => quotient.eval(&map.lift(y)?)?,
            _ => return Err(Error::Unsupported("lifting along a non-surjective map".into())),
        })
    }

    fn is_liftable(&self) -> bool {
        match &self.body {
            Body::Composite(steps) => steps.iter().all(SymMorphism::is_liftable),
            Body::Induced { map, .. } => map.is_liftable(),
            Body::Pair { .. } | Body::IntoP { .. } => false,
            Body::EpsilonP => self.dom == self.cod,
            Body::FromInitial => self.cod.is_trivial_object(),
            _ => true,
        }
    }

    /// Surjectivity. For tuples and corestrictions, whose images the
    /// vocabulary does not describe directly, the test compares the domain
    /// modulo the kernel with the codomain; the vocabulary acts on
    /// infinitesimal coordinates only by selecting, dropping or duplicating
    /// them, so equal shapes mean the injective part is onto.
    pub fn is_surjective(&self) -> bool {
        if self.is_liftable() {
            return true;
        }
        match &self.body {
            Body::FromInitial | Body::EpsilonP => false,
            _ => quotient_algebra(&self.dom, &self.kernel()).0 == self.cod,
        }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    /// First homomorphism-law violation over sampled elements.
    pub fn hom_violation_sampled(&self, rng: &mut ChaCha8Rng, count: usize, bound: i64) -> Result<Option<String>> {
        let (a, b) = (&self.dom, &self.cod);
        if self.apply(&a.zero())? != b.zero() {
            return Ok(Some("f(0) != 0".into()));
        }
        let pool = sample_pool(a, rng, count, bound);
        for (i, x) in pool.iter().enumerate() {
            let y = &pool[(i * 7 + 3) % pool.len()];
            let fx = self.apply(x)?;
            if !b.contains(&fx) {
                return Ok(Some(format!("f({x}) leaves the codomain")));
            }
            if self.apply(&a.neg(x))? != b.neg(&fx) {
                return Ok(Some(format!("f(neg {x}) != neg f({x})")));
            }
            if self.apply(&a.plus(x, y))? != b.plus(&fx, &self.apply(y)?) {
                return Ok(Some(format!("f({x} + {y}) != f({x}) + f({y})")));
            }
        }
        Ok(None)
    }

    /// Do two parallel arrows agree on sampled elements?
    pub fn agrees_sampled(&self, other: &SymMorphism, rng: &mut ChaCha8Rng, count: usize, bound: i64) -> Result<bool> {
        if self.dom != other.dom || self.cod != other.cod {
            return Ok(false);
        }
        for x in sample_pool(&self.dom, rng, count, bound) {
            if self.apply(&x)? != other.apply(&x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Forced boundary elements followed by random ones.
pub fn sample_pool(a: &SymbolicAlgebra, rng: &mut ChaCha8Rng, count: usize, bound: i64) -> Vec<SymElem> {
    let mut pool = a.forced_elements();
    let target = count.max(pool.len() + 1);
    while pool.len() < target {
        pool.push(a.random_element(rng, bound));
    }
    pool
}

fn epsilon_apply(a: &SymbolicAlgebra, x: &SymElem) -> SymElem {
    if a.is_terminal() {
        return SymElem(Vec::new());
    }
    let top = x.0[0].a == 1;
    let c = &x.0[0].b;
    let mut offset = 0;
    SymElem(
        a.blocks()
            .iter()
            .map(|blk| {
                let r = blk.rank();
                let b = if c.is_empty() { vec![0; r] } else { c[offset..offset + r].to_vec() };
                offset += r;
                BlockElem { a: if top { i64::from(blk.height()) } else { 0 }, b }
            })
            .collect(),
    )
}

/// The element of `P(a)` that `ε` sends to `y`.
pub fn epsilon_inverse(a: &SymbolicAlgebra, y: &SymElem) -> Result<SymElem> {
    if a.is_terminal() {
        return Ok(SymElem(Vec::new()));
    }
    let top = if a.is_radical(y) {
        0
    } else if a.is_radical(&a.neg(y)) {
        1
    } else {
        return Err(Error::NotInCarrier(format!("{y} is outside the perfect subalgebra")));
    };
    if a.total_rank() == 0 {
        return Ok(SymElem(vec![BlockElem::chain(top)]));
    }
    let b = y.0.iter().flat_map(|v| v.b.iter().copied()).collect();
    Ok(SymElem(vec![BlockElem { a: top, b }]))
}

/// Coordinate ranges of each block inside the concatenated rank vector.
fn rank_offsets(a: &SymbolicAlgebra) -> Vec<usize> {
    a.blocks()
        .iter()
        .scan(0, |acc, b| {
            let start = *acc;
            *acc += b.rank();
            Some(start)
        })
        .collect()
}

fn epsilon_preimage(p: &SymbolicAlgebra, a: &SymbolicAlgebra, j: &Markers) -> Markers {
    if j.is_full() {
        return Markers::full(p);
    }
    if a.total_rank() == 0 {
        return Markers::zero(p);
    }
    let offsets = rank_offsets(a);
    let coords = a
        .blocks()
        .iter()
        .zip(&j.0)
        .zip(offsets)
        .flat_map(|((blk, m), off)| {
            let local: Vec<usize> = match m {
                Marker::Full => (0..blk.rank()).collect(),
                Marker::Sub(s) => s.clone(),
                Marker::Zero => Vec::new(),
            };
            local.into_iter().map(move |i| i + off)
        })
        .collect();
    Markers(vec![Marker::sub(coords)])
}

/// `ε(J)` for a proper ideal `J` of `P(a)`: an ideal of `a` inside the radical.
fn radical_piece(a: &SymbolicAlgebra, j: &Markers) -> Markers {
    let coords: Vec<usize> = match j.0.first() {
        Some(Marker::Sub(s)) => s.clone(),
        _ => Vec::new(),
    };
    let offsets = rank_offsets(a);
    Markers(
        a.blocks()
            .iter()
            .zip(offsets)
            .map(|(blk, off)| Marker::sub(coords.iter().filter(|&&c| c >= off && c < off + blk.rank()).map(|c| c - off).collect()))
            .collect(),
    )
}

fn quotient_preimage(a: &SymbolicAlgebra, ideal: &Markers, placement: &Placement, j: &Markers) -> Markers {
    Markers(
        a.blocks()
            .iter()
            .enumerate()
            .map(|(i, blk)| {
                let here = &ideal.0[i];
                let Some(slot) = placement.slots()[i] else {
                    return Marker::Full;
                };
                let there = &j.0[slot];
                match blk {
                    Block::Chain(_) => there.clone(),
                    Block::Komori { .. } => {
                        let keep = here.surviving_coords(blk);
                        let mut base: Vec<usize> = (0..blk.rank()).filter(|c| !keep.contains(c)).collect();
                        match there {
                            Marker::Full => return Marker::Full,
                            Marker::Zero => {}
                            Marker::Sub(t) => base.extend(t.iter().map(|&k| keep[k])),
                        }
                        Marker::sub(base)
                    }
                }
            })
            .collect(),
    )
}

fn quotient_image(
    a: &SymbolicAlgebra,
    b: &SymbolicAlgebra,
    ideal: &Markers,
    placement: &Placement,
    k: &Markers,
) -> Markers {
    let mut out = Markers::zero(b);
    for (i, blk) in a.blocks().iter().enumerate() {
        let Some(slot) = placement.slots()[i] else { continue };
        out.0[slot] = match (&k.0[i], blk) {
            (Marker::Full, _) => Marker::Full,
            (m, Block::Chain(_)) => m.clone(),
            (Marker::Zero, _) => Marker::Zero,
            (Marker::Sub(t), Block::Komori { .. }) => {
                let keep = ideal.0[i].surviving_coords(blk);
                Marker::sub(keep.iter().enumerate().filter(|(_, c)| t.contains(c)).map(|(p, _)| p).collect())
            }
        };
    }
    out
}

/// A morphism of either regime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Morphism {
    Finite(FiniteMorphism),
    Symbolic(SymMorphism),
}

impl Morphism {
    pub fn dom(&self) -> Algebra {
        match self {
            Morphism::Finite(f) => Algebra::Finite(f.dom.clone()),
            Morphism::Symbolic(f) => Algebra::Symbolic(f.dom.clone()),
        }
    }

    pub fn cod(&self) -> Algebra {
        match self {
            Morphism::Finite(f) => Algebra::Finite(f.cod.clone()),
            Morphism::Symbolic(f) => Algebra::Symbolic(f.cod.clone()),
        }
    }

    pub fn is_surjective(&self) -> bool {
        match self {
            Morphism::Finite(f) => f.is_surjective(),
            Morphism::Symbolic(f) => f.is_surjective(),
        }
    }

    pub fn as_finite(&self) -> Result<&FiniteMorphism> {
        match self {
            Morphism::Finite(f) => Ok(f),
            Morphism::Symbolic(_) => Err(Error::MixedRegimes("expected a finite morphism".into())),
        }
    }

    pub fn as_symbolic(&self) -> Result<&SymMorphism> {
        match self {
            Morphism::Symbolic(f) => Ok(f),
            Morphism::Finite(_) => Err(Error::MixedRegimes("expected a symbolic morphism".into())),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        match (self, next) {
            (Morphism::Finite(f), Morphism::Finite(g)) => Ok(Morphism::Finite(g.after(f)?)),
            (Morphism::Symbolic(f), Morphism::Symbolic(g)) => Ok(Morphism::Symbolic(f.then(g)?)),
            _ => Err(Error::MixedRegimes("composite of finite and symbolic arrows".into())),
        }
    }

    /// The map `[a] ↦ map(a)` on the codomain of the surjection `quotient`.
    pub fn induced(quotient: &Morphism, map: &Morphism) -> Result<Morphism> {
        match (quotient, map) {
            (Morphism::Finite(q), Morphism::Finite(f)) => {
                if q.dom != f.dom {
                    return Err(Error::Mismatch("induced map needs a common domain".into()));
                }
                if !q.is_surjective() {
                    return Err(Error::Precondition("inducing along a non-surjective map".into()));
                }
                let mut table = vec![usize::MAX; q.cod.size()];
                for x in 0..q.dom.size() {
                    let slot = &mut table[q.at(x)];
                    if *slot != usize::MAX && *slot != f.at(x) {
                        return Err(Error::Precondition("map does not kill the kernel of the quotient".into()));
                    }
                    *slot = f.at(x);
                }
                Ok(Morphism::Finite(FiniteMorphism::new(q.cod.clone(), f.cod.clone(), table)?))
            }
            (Morphism::Symbolic(q), Morphism::Symbolic(f)) => Ok(Morphism::Symbolic(SymMorphism::induced(q, f)?)),
            _ => Err(Error::MixedRegimes("induced map".into())),
        }
    }

    /// Equality of maps: exact for finite morphisms, on a seeded sample pool
    /// for symbolic ones.
    pub fn agrees(&self, other: &Morphism, seed: u64) -> Result<bool> {
        match (self, other) {
            (Morphism::Finite(f), Morphism::Finite(g)) => Ok(f == g),
            (Morphism::Symbolic(f), Morphism::Symbolic(g)) => {
                let mut rng = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
                Ok(f.cod == g.cod && f.agrees_sampled(g, &mut rng, 128, 6)?)
            }
            _ => Err(Error::MixedRegimes("comparing finite and symbolic arrows".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn k11() -> SymbolicAlgebra {
        SymbolicAlgebra::komori(1, 1).unwrap()
    }

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(11)
    }

    fn all_vocabulary(a: &SymbolicAlgebra) -> Vec<SymMorphism> {
        let mut v = vec![SymMorphism::identity(a), SymMorphism::eta(a), SymMorphism::to_terminal(a)];
        for i in Markers::all(a) {
            v.push(SymMorphism::quotient(a, &i).unwrap());
        }
        v.push(SymMorphism::epsilon_p(a));
        v.push(SymMorphism::from_initial(a));
        if a.blocks().len() > 1 {
            v.push(SymMorphism::projection(a, vec![0]).unwrap());
            v.push(SymMorphism::projection(a, vec![1]).unwrap());
        }
        v
    }

    #[test]
    fn vocabulary_maps_are_homomorphisms() {
        let a = SymbolicAlgebra::product(&[&k11(), &SymbolicAlgebra::komori(2, 2).unwrap(), &SymbolicAlgebra::chain(2)]);
        let mut r = rng();
        for f in all_vocabulary(&a) {
            assert_eq!(f.hom_violation_sampled(&mut r, 300, 5).unwrap(), None, "{f:?}");
        }
    }

    #[test]
    fn kernels_agree_with_evaluation() {
        let a = SymbolicAlgebra::product(&[&SymbolicAlgebra::komori(2, 2).unwrap(), &SymbolicAlgebra::chain(1)]);
        let mut r = rng();
        for f in all_vocabulary(&a) {
            let k = f.kernel();
            let zero = f.cod().zero();
            for x in sample_pool(f.dom(), &mut r, 200, 4) {
                assert_eq!(k.contains(f.dom(), &x), f.apply(&x).unwrap() == zero, "{f:?} at {x}");
            }
        }
    }

    #[test]
    fn lifts_are_preimages() {
        let a = SymbolicAlgebra::product(&[&SymbolicAlgebra::komori(2, 3).unwrap(), &SymbolicAlgebra::chain(3)]);
        let mut r = rng();
        for ideal in Markers::all(&a) {
            let q = SymMorphism::quotient(&a, &ideal).unwrap();
            for y in sample_pool(q.cod(), &mut r, 50, 4) {
                assert_eq!(q.apply(&q.lift(&y).unwrap()).unwrap(), y);
            }
        }
    }

    #[test]
    fn quotient_of_komori_by_its_radical_is_chain() {
        let q = SymMorphism::quotient(&SymbolicAlgebra::komori(2, 1).unwrap(), &Markers(vec![Marker::Sub(vec![0])])).unwrap();
        assert_eq!(*q.cod(), SymbolicAlgebra::chain(2));
    }

    #[test]
    fn eta_kernel_is_radical() {
        let e = SymMorphism::eta(&k11());
        assert_eq!(e.kernel(), Markers(vec![Marker::Sub(vec![0])]));
        assert_eq!(*e.cod(), SymbolicAlgebra::initial());
    }

    #[test]
    fn epsilon_round_trip_and_kernel() {
        let a = SymbolicAlgebra::product(&[&k11(), &SymbolicAlgebra::komori(3, 2).unwrap(), &SymbolicAlgebra::chain(2)]);
        let e = SymMorphism::epsilon_p(&a);
        assert_eq!(*e.dom(), SymbolicAlgebra::komori(1, 3).unwrap());
        assert!(e.kernel().is_zero());
        let mut r = rng();
        for x in sample_pool(e.dom(), &mut r, 100, 5) {
            assert_eq!(epsilon_inverse(&a, &e.apply(&x).unwrap()).unwrap(), x);
        }
    }

    #[test]
    fn preimages_match_membership_for_composites() {
        let a = SymbolicAlgebra::product(&[&SymbolicAlgebra::komori(1, 2).unwrap(), &SymbolicAlgebra::chain(2)]);
        let p = SymMorphism::epsilon_p(&a);
        let eps_then_eta = p.then(&SymMorphism::eta(&a)).unwrap();
        let corestrict = SymMorphism::into_p(&SymMorphism::identity(&a));
        let pair = SymMorphism::pair(&a, vec![SymMorphism::eta(&a), SymMorphism::identity(&a)]).unwrap();
        let mut r = rng();
        for f in [eps_then_eta, pair] {
            for j in Markers::all(f.cod()) {
                let pre = f.preimage(&j).unwrap();
                for x in sample_pool(f.dom(), &mut r, 100, 3) {
                    assert_eq!(pre.contains(f.dom(), &x), j.contains(f.cod(), &f.apply(&x).unwrap()));
                }
            }
        }
        let round = p.then(&corestrict).unwrap();
        assert!(round.agrees_sampled(&SymMorphism::identity(p.dom()), &mut r, 50, 3).unwrap());
        assert!(corestrict.apply(&SymElem(vec![BlockElem::komori(0, &[1, 0]), BlockElem::chain(1)])).is_err());
        let inner = SymMorphism::into_p(&p);
        for x in sample_pool(inner.dom(), &mut r, 50, 3) {
            assert_eq!(inner.apply(&x).unwrap(), x);
        }
        assert!(inner.is_surjective());
    }

    #[test]
    fn induced_map_factors_the_original() {
        let a = SymbolicAlgebra::product(&[&k11(), &SymbolicAlgebra::chain(2)]);
        let q = SymMorphism::quotient(&a, &Markers(vec![Marker::Sub(vec![0]), Marker::Zero])).unwrap();
        let f = SymMorphism::to_terminal(&a);
        let d = SymMorphism::induced(&q, &f).unwrap();
        assert!(q.then(&d).unwrap().agrees_sampled(&f, &mut rng(), 50, 3).unwrap());
        let bad = SymMorphism::induced(&SymMorphism::to_terminal(&a), &q);
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }

    #[test]
    fn diagonal_is_not_surjective() {
        let a = k11();
        let d = SymMorphism::pair(&a, vec![SymMorphism::identity(&a), SymMorphism::identity(&a)]).unwrap();
        assert!(!d.is_surjective());
        assert!(d.is_injective());
        assert!(!SymMorphism::from_initial(&a).is_surjective());
        assert!(SymMorphism::chi(&a).unwrap().is_surjective());
    }
}
