//! Double extensions: squares of surjections, regular pushouts, the
//! reflection onto central extensions, ideal subalgebras `I ∪ ¬I` and the
//! commutator of two of them.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, MvAlgebra};
use crate::error::{Error, Result};
use crate::finite::{ElemSet, FiniteMorphism, Pullback};
use crate::ideals::{ideal_join, image_ideal, kernel, quotient, radical, IdealDesc, RadicalMethod};
use crate::markers::{Marker, Markers};
use crate::morphism::Morphism;
use crate::symbolic::{Block, BlockElem, Placement, SymElem, SymbolicAlgebra};

const SEED: u64 = 0x5eed;

/// The subalgebra `I ∪ ¬I` of `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSubalgebra {
    pub base: Algebra,
    pub ideal: IdealDesc,
}

impl IdealSubalgebra {
    pub fn new(base: Algebra, ideal: IdealDesc) -> Result<Self> {
        let fits = match (&base, &ideal) {
            (Algebra::Finite(a), IdealDesc::Finite(s)) => s.len() == a.size(),
            (Algebra::Symbolic(a), IdealDesc::Symbolic(m)) => m.0.len() == a.blocks().len(),
            _ => return Err(Error::MixedRegimes("ideal subalgebra".into())),
        };
        if !fits {
            return Err(Error::InvalidIdeal("ideal does not match the algebra".into()));
        }
        Ok(IdealSubalgebra { base, ideal })
    }

    /// `{0, 1}` or the one-element algebra.
    pub fn is_trivial_object(&self) -> bool {
        self.base.is_terminal() || self.ideal.is_zero()
    }

    pub fn carrier_finite(&self) -> Result<ElemSet> {
        let a = self.base.as_finite()?;
        let i = self.ideal.as_finite()?;
        let mut out = i.clone();
        out.union_with(&a.neg_set(i));
        Ok(out)
    }

    pub fn contains(&self, x: &Element) -> Result<bool> {
        match (&self.base, &self.ideal, x) {
            (Algebra::Finite(a), IdealDesc::Finite(i), Element::Finite(x)) if *x < a.size() => {
                Ok(i.contains(*x) || i.contains(a.not(*x)))
            }
            (Algebra::Symbolic(a), IdealDesc::Symbolic(m), Element::Symbolic(x)) if a.contains(x) => {
                Ok(m.contains(a, x) || m.contains(a, &a.neg(x)))
            }
            _ => Err(Error::NotInCarrier(format!("{x:?}"))),
        }
    }

    /// The subalgebra as an algebra of its own.
    pub fn algebra(&self) -> Result<Algebra> {
        match &self.base {
            Algebra::Finite(a) => Ok(Algebra::Finite(a.subalgebra(&self.carrier_finite()?)?.0)),
            Algebra::Symbolic(_) => Ok(Algebra::Symbolic(self.representation()?.algebra)),
        }
    }

    /// The inclusion into the base, for finite bases.
    pub fn inclusion_finite(&self) -> Result<FiniteMorphism> {
        Ok(self.base.as_finite()?.subalgebra(&self.carrier_finite()?)?.1)
    }

    pub fn representation(&self) -> Result<SymbolicIdealSubalgebra> {
        SymbolicIdealSubalgebra::new(self.base.as_symbolic()?, self.ideal.as_symbolic()?)
    }
}

/// `K ∪ ¬K` for a symbolic ideal `K`, as the block product `F × Q` where `F`
/// collects the blocks on which `K` is full and `Q` is `Komori(1, R)` over
/// the `R` infinitesimal coordinates that `K` allows on the other blocks
/// (`Chain(1)` for `R = 0`). `Q` is absent when `K` is the whole algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicIdealSubalgebra {
    pub algebra: SymbolicAlgebra,
    base: SymbolicAlgebra,
    ideal: Markers,
    full_blocks: Vec<usize>,
    /// `(block, coordinate)` of each coordinate of `Q`.
    coords: Vec<(usize, usize)>,
    has_q: bool,
    placement: Placement,
}

impl SymbolicIdealSubalgebra {
    pub fn new(base: &SymbolicAlgebra, ideal: &Markers) -> Result<Self> {
        let ideal = Markers::new(base, ideal.0.clone())?;
        let full_blocks: Vec<usize> = (0..base.blocks().len()).filter(|&j| ideal.0[j] == Marker::Full).collect();
        let mut coords = Vec::new();
        for (j, mk) in ideal.0.iter().enumerate() {
            if let Marker::Sub(s) = mk {
                coords.extend(s.iter().map(|&c| (j, c)));
            }
        }
        let has_q = full_blocks.len() < base.blocks().len();
        let mut raw: Vec<Block> = full_blocks.iter().map(|&j| base.blocks()[j]).collect();
        if has_q {
            raw.push(match coords.len() {
                0 => Block::Chain(1),
                r => Block::Komori { m: 1, r: r as u32 },
            });
        }
        let (algebra, placement) = SymbolicAlgebra::with_placement(raw)?;
        Ok(SymbolicIdealSubalgebra { algebra, base: base.clone(), ideal, full_blocks, coords, has_q, placement })
    }

    fn raw(&self, x: &SymElem) -> Vec<BlockElem> {
        let mut zeros: Vec<BlockElem> = self.full_blocks.iter().map(|&j| self.base.blocks()[j].zero()).collect();
        if self.has_q {
            zeros.push(BlockElem { a: 0, b: vec![0; self.coords.len()] });
        }
        self.placement.unplace(&x.0).into_iter().zip(zeros).map(|(v, z)| v.unwrap_or(z)).collect()
    }

    /// The element of the base represented by `x`.
    pub fn embed(&self, x: &SymElem) -> Result<SymElem> {
        if !self.algebra.contains(x) {
            return Err(Error::NotInCarrier(x.to_string()));
        }
        let raw = self.raw(x);
        let mut out = self.base.zero();
        for (p, &j) in self.full_blocks.iter().enumerate() {
            out.0[j] = raw[p].clone();
        }
        if self.has_q {
            let q = raw.last().expect("perfect factor");
            for (j, blk) in self.base.blocks().iter().enumerate() {
                if self.ideal.0[j] != Marker::Full {
                    let mut v = BlockElem { a: q.a * blk.height() as i64, b: vec![0; blk.rank()] };
                    for (p, &(jj, c)) in self.coords.iter().enumerate() {
                        if jj == j {
                            v.b[c] = q.b[p];
                        }
                    }
                    out.0[j] = v;
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`embed`](Self::embed) on `K ∪ ¬K`.
    pub fn restrict(&self, y: &SymElem) -> Result<SymElem> {
        let (a, k) = (&self.base, &self.ideal);
        let top = if k.contains(a, y) {
            0
        } else if k.contains(a, &a.neg(y)) {
            1
        } else {
            return Err(Error::NotInCarrier(format!("{y} is outside the ideal subalgebra")));
        };
        let mut raw: Vec<BlockElem> = self.full_blocks.iter().map(|&j| y.0[j].clone()).collect();
        if self.has_q {
            raw.push(BlockElem { a: top, b: self.coords.iter().map(|&(j, c)| y.0[j].b[c]).collect() });
        }
        Ok(SymElem(self.placement.place(raw)))
    }

    /// An ideal `I ⊆ K` of the base as an ideal of the subalgebra.
    pub fn transport(&self, i: &Markers) -> Result<Markers> {
        if !i.leq(&self.ideal) {
            return Err(Error::Precondition("ideal is not contained in the generating ideal".into()));
        }
        let mut raw: Vec<Marker> = self.full_blocks.iter().map(|&j| i.0[j].clone()).collect();
        if self.has_q {
            let picked = self
                .coords
                .iter()
                .enumerate()
                .filter(|(_, &(j, c))| matches!(&i.0[j], Marker::Sub(s) if s.contains(&c)))
                .map(|(p, _)| p)
                .collect();
            raw.push(Marker::sub(picked));
        }
        Markers::new(&self.algebra, self.placement.place(raw))
    }
}

pub fn ideal_subalgebra(a: &Algebra, i: &IdealDesc) -> Result<IdealSubalgebra> {
    IdealSubalgebra::new(a.clone(), i.clone())
}

/// `M ∨ N = K ∪ ¬K` with `K = I ∨ J`.
pub fn subalgebra_join(m: &IdealSubalgebra, n: &IdealSubalgebra) -> Result<IdealSubalgebra> {
    if m.base != n.base {
        return Err(Error::Mismatch("ideal subalgebras of different algebras".into()));
    }
    IdealSubalgebra::new(m.base.clone(), ideal_join(&m.base, &m.ideal, &n.ideal)?)
}

/// A commuting square of surjections `k ∘ f = g ∘ h` with `f: A → B`,
/// `h: A → C`, `k: B → D`, `g: C → D`.
#[derive(Debug, Clone)]
pub struct ExtensionSquare {
    pub f: Morphism,
    pub h: Morphism,
    pub k: Morphism,
    pub g: Morphism,
    /// The ideals `(I, J)` when built as `A → A/I`, `A → A/J`.
    pub ideals: Option<(IdealDesc, IdealDesc)>,
}

impl ExtensionSquare {
    pub fn new(f: Morphism, h: Morphism, k: Morphism, g: Morphism) -> Result<Self> {
        if f.dom() != h.dom() || f.cod() != k.dom() || h.cod() != g.dom() || k.cod() != g.cod() {
            return Err(Error::Mismatch("square arrows do not compose".into()));
        }
        for (name, arrow) in [("f", &f), ("h", &h), ("k", &k), ("g", &g)] {
            if !arrow.is_surjective() {
                return Err(Error::Precondition(format!("{name} is not surjective")));
            }
        }
        if !f.then(&k)?.agrees(&h.then(&g)?, SEED)? {
            return Err(Error::NotCommuting);
        }
        Ok(ExtensionSquare { f, h, k, g, ideals: None })
    }

    /// `A → A/I`, `A → A/J`, both completed to `A/(I ∨ J)`.
    pub fn from_ideals(a: &Algebra, i: &IdealDesc, j: &IdealDesc) -> Result<Self> {
        let (_, f) = quotient(a, i)?;
        let (_, h) = quotient(a, j)?;
        let (_, top) = quotient(a, &ideal_join(a, i, j)?)?;
        let k = Morphism::induced(&f, &top)?;
        let g = Morphism::induced(&h, &top)?;
        let mut sq = ExtensionSquare::new(f, h, k, g)?;
        sq.ideals = Some((i.clone(), j.clone()));
        Ok(sq)
    }

    pub fn dom(&self) -> Algebra {
        self.f.dom()
    }
}

/// `h(ker f) = ker g`, with the two sides.
pub fn regular_pushout_sides(sq: &ExtensionSquare) -> Result<(IdealDesc, IdealDesc)> {
    Ok((image_ideal(&sq.h, &kernel(&sq.f))?, kernel(&sq.g)))
}

pub fn is_regular_pushout(sq: &ExtensionSquare) -> Result<bool> {
    let (lhs, rhs) = regular_pushout_sides(sq)?;
    Ok(lhs == rhs)
}

/// Finite cross-check: the comparison `⟨h, f⟩: A → C ×_D B` is onto.
pub fn comparison_is_surjective(sq: &ExtensionSquare) -> Result<bool> {
    let pb = Pullback::new(sq.k.as_finite()?, sq.g.as_finite()?)?;
    Ok(pb.comparison(sq.f.as_finite()?, sq.h.as_finite()?)?.is_surjective())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleClassification {
    pub normal: bool,
    pub central: bool,
    /// `ker h ∩ ker f ∩ Rad A`.
    pub meet: IdealDesc,
}

pub fn classify_double(sq: &ExtensionSquare) -> Result<DoubleClassification> {
    let (lhs, rhs) = regular_pushout_sides(sq)?;
    if lhs != rhs {
        return Err(Error::NotRegularPushout(format!("h(ker f) = {lhs} differs from ker g = {rhs}")));
    }
    let a = sq.dom();
    let meet = kernel(&sq.h).meet(&kernel(&sq.f))?.meet(&radical(&a, RadicalMethod::Infinitesimal))?;
    let central = meet.is_zero();
    Ok(DoubleClassification { normal: central, central, meet })
}

/// The reflection of a surjection `f: A → B` onto central extensions:
/// `f̄: A/θ → B` with `θ = ker f ∩ Rad A`, and the unit square
/// `(f, π; id_B, f̄)`.
#[derive(Debug, Clone)]
pub struct S1Reflection {
    pub theta: IdealDesc,
    pub central: Morphism,
    pub unit: Morphism,
    pub square: ExtensionSquare,
}

pub fn s1_reflect(f: &Morphism) -> Result<S1Reflection> {
    if !f.is_surjective() {
        return Err(Error::Precondition("reflection needs a surjection".into()));
    }
    let a = f.dom();
    let theta = kernel(f).meet(&radical(&a, RadicalMethod::Infinitesimal))?;
    let (_, unit) = quotient(&a, &theta)?;
    let central = Morphism::induced(&unit, f)?;
    let id_b = identity(&f.cod());
    let square = ExtensionSquare::new(f.clone(), unit.clone(), id_b, central.clone())?;
    Ok(S1Reflection { theta, central, unit, square })
}

fn identity(a: &Algebra) -> Morphism {
    match a {
        Algebra::Finite(f) => Morphism::Finite(FiniteMorphism::identity(f)),
        Algebra::Symbolic(s) => Morphism::Symbolic(crate::morphism::SymMorphism::identity(s)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SquareShape {
    /// `I ∨ J` is the whole algebra; the square ends in the one-element algebra.
    Club,
    /// `I ∨ J` is proper; the square lives on `M ∨ N` and ends in `{0, 1}`.
    Spade,
}

#[derive(Debug, Clone)]
pub struct CommutatorSquare {
    /// `P(A) ∩ M ∩ N`, the ideal subalgebra of `Rad A ∩ I ∩ J`.
    pub subalgebra: IdealSubalgebra,
    pub in_z: bool,
    pub shape: SquareShape,
    pub square: ExtensionSquare,
    pub regular_pushout: bool,
    /// Whether the square is central for the double-extension structure.
    pub square_central: bool,
}

pub fn commutator_subalgebras(a: &Algebra, i: &IdealDesc, j: &IdealDesc) -> Result<CommutatorSquare> {
    let rad = radical(a, RadicalMethod::Infinitesimal);
    let subalgebra = IdealSubalgebra::new(a.clone(), rad.meet(i)?.meet(j)?)?;
    let in_z = subalgebra.ideal.is_zero() || a.is_terminal();
    let k = ideal_join(a, i, j)?;
    let (shape, square) = if k.is_full() {
        (SquareShape::Club, ExtensionSquare::from_ideals(a, i, j)?)
    } else {
        let join = IdealSubalgebra::new(a.clone(), k)?;
        let (sub, i2, j2) = match a {
            Algebra::Finite(_) => {
                let incl = join.inclusion_finite()?;
                let sub = Algebra::Finite(incl.dom.clone());
                (sub, IdealDesc::Finite(incl.preimage(i.as_finite()?)), IdealDesc::Finite(incl.preimage(j.as_finite()?)))
            }
            Algebra::Symbolic(_) => {
                let rep = join.representation()?;
                (
                    Algebra::Symbolic(rep.algebra.clone()),
                    IdealDesc::Symbolic(rep.transport(i.as_symbolic()?)?),
                    IdealDesc::Symbolic(rep.transport(j.as_symbolic()?)?),
                )
            }
        };
        (SquareShape::Spade, ExtensionSquare::from_ideals(&sub, &i2, &j2)?)
    };
    let regular_pushout = is_regular_pushout(&square)?;
    let square_central = classify_double(&square)?.central;
    Ok(CommutatorSquare { subalgebra, in_z, shape, square, regular_pushout, square_central })
}

/// `Rad A ∩ ¬I = ∅` for a proper ideal `I`. Symbolically, a proper ideal is
/// not full on some block, where every element of `¬I` has top coordinate
/// equal to the block height, while radical elements have top coordinate 0.
pub fn rad_not_i_disjoint(a: &Algebra, i: &IdealDesc) -> Result<bool> {
    if i.is_full() {
        return Err(Error::Precondition("ideal is not proper".into()));
    }
    match (a, i) {
        (Algebra::Finite(f), IdealDesc::Finite(s)) => {
            let rad = radical(a, RadicalMethod::Infinitesimal);
            Ok(rad.as_finite()?.is_disjoint(&f.neg_set(s)))
        }
        (Algebra::Symbolic(s), IdealDesc::Symbolic(m)) => {
            Ok(s.blocks().iter().zip(&m.0).any(|(b, mk)| *mk != Marker::Full && b.height() >= 1))
        }
        _ => Err(Error::MixedRegimes("radical against an ideal".into())),
    }
}

/// For a proper finite ideal `K`: `K ∩ ¬K = ∅` and `(K ∪ ¬K)/K` has exactly
/// the two classes `K` and `¬K`, so `[x] ↦ 0 or 1` is well defined.
pub fn spade_well_defined_finite(a: &Algebra, k: &IdealDesc) -> Result<bool> {
    let join = IdealSubalgebra::new(a.clone(), k.clone())?;
    let fa = a.as_finite()?;
    let ks = k.as_finite()?;
    if !ks.is_disjoint(&fa.neg_set(ks)) {
        return Ok(false);
    }
    let incl = join.inclusion_finite()?;
    let q = crate::ideals::quotient_finite(&incl.dom, &incl.preimage(ks))?;
    Ok(q.algebra.size() == 2
        && (0..incl.dom.size()).all(|x| (q.projection.at(x) == q.algebra.zero()) == ks.contains(incl.at(x))))
}
