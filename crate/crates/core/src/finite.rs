//! Finite algebras given by tables, their morphisms, and literal pullbacks.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, MvAlgebra};
use crate::error::{Error, Result};

/// A subset of a finite carrier, indexed by element.
pub type ElemSet = FixedBitSet;

/// Build an [`ElemSet`] of capacity `n` from indices.
pub fn elem_set(n: usize, members: impl IntoIterator<Item = usize>) -> ElemSet {
    let mut s = FixedBitSet::with_capacity(n);
    for x in members {
        s.insert(x);
    }
    s
}

/// A finite algebra on `{0, …, size-1}`. Only the table shapes are
/// validated; the axioms are checked separately.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    size: usize,
    zero: usize,
    neg: Vec<usize>,
    plus: Vec<usize>,
}

impl FiniteAlgebra {
    pub fn from_tables(size: usize, zero: usize, neg: Vec<usize>, plus: Vec<Vec<usize>>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidTable("empty carrier".into()));
        }
        if zero >= size {
            return Err(Error::InvalidTable(format!("zero {zero} out of range")));
        }
        if neg.len() != size || plus.len() != size || plus.iter().any(|row| row.len() != size) {
            return Err(Error::InvalidTable(format!("tables must be {size} and {size}x{size}")));
        }
        let flat: Vec<usize> = plus.into_iter().flatten().collect();
        if let Some(v) = neg.iter().chain(&flat).find(|&&v| v >= size) {
            return Err(Error::InvalidTable(format!("entry {v} out of range")));
        }
        Ok(FiniteAlgebra { size, zero, neg, plus: flat })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }

    pub fn plus_rows(&self) -> Vec<Vec<usize>> {
        self.plus.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.plus[x * self.size + y]
    }

    #[inline]
    pub fn not(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn terminal() -> Self {
        FiniteAlgebra { size: 1, zero: 0, neg: vec![0], plus: vec![0] }
    }

    pub fn full_set(&self) -> ElemSet {
        elem_set(self.size, 0..self.size)
    }

    pub fn zero_set(&self) -> ElemSet {
        elem_set(self.size, [self.zero])
    }

    pub fn neg_set(&self, s: &ElemSet) -> ElemSet {
        elem_set(self.size, (0..self.size).filter(|&x| s.contains(self.not(x))))
    }

    /// The product algebra, elements in mixed radix with the first factor most
    /// significant.
    pub fn product(parts: &[&FiniteAlgebra]) -> Self {
        let sizes: Vec<usize> = parts.iter().map(|p| p.size).collect();
        let n: usize = sizes.iter().product();
        let decode = |mut i: usize| {
            let mut c = vec![0; sizes.len()];
            for k in (0..sizes.len()).rev() {
                c[k] = i % sizes[k];
                i /= sizes[k];
            }
            c
        };
        let encode = |c: &[usize]| c.iter().zip(&sizes).fold(0, |acc, (v, s)| acc * s + v);
        let coords: Vec<Vec<usize>> = (0..n).map(decode).collect();
        let zero = encode(&parts.iter().map(|p| p.zero).collect::<Vec<_>>());
        let neg = coords
            .iter()
            .map(|c| encode(&c.iter().zip(parts).map(|(&v, p)| p.not(v)).collect::<Vec<_>>()))
            .collect();
        let mut plus = Vec::with_capacity(n * n);
        for x in &coords {
            for y in &coords {
                let s: Vec<usize> = parts.iter().enumerate().map(|(k, p)| p.add(x[k], y[k])).collect();
                plus.push(encode(&s));
            }
        }
        FiniteAlgebra { size: n, zero, neg, plus }
    }

    /// Is the subset closed under `0`, `⊕` and `¬`?
    pub fn is_subalgebra(&self, s: &ElemSet) -> bool {
        s.contains(self.zero)
            && s.ones().all(|x| s.contains(self.not(x)) && s.ones().all(|y| s.contains(self.add(x, y))))
    }

    /// Materialise a subalgebra with its inclusion; elements keep their
    /// relative order.
    pub fn subalgebra(self: &Arc<Self>, s: &ElemSet) -> Result<(Arc<FiniteAlgebra>, FiniteMorphism)> {
        if !self.is_subalgebra(s) {
            return Err(Error::Precondition("subset is not closed under the operations".into()));
        }
        let members: Vec<usize> = s.ones().collect();
        let mut pos = vec![usize::MAX; self.size];
        for (i, &x) in members.iter().enumerate() {
            pos[x] = i;
        }
        let k = members.len();
        let neg = members.iter().map(|&x| pos[self.not(x)]).collect();
        let plus = members
            .iter()
            .flat_map(|&x| members.iter().map(move |&y| (x, y)))
            .map(|(x, y)| pos[self.add(x, y)])
            .collect();
        let sub = Arc::new(FiniteAlgebra { size: k, zero: pos[self.zero], neg, plus });
        let incl = FiniteMorphism::new(sub.clone(), self.clone(), members)?;
        Ok((sub, incl))
    }
}

impl MvAlgebra for FiniteAlgebra {
    type Elem = usize;

    fn zero(&self) -> usize {
        self.zero
    }

    fn plus(&self, x: &usize, y: &usize) -> usize {
        self.add(*x, *y)
    }

    fn neg(&self, x: &usize) -> usize {
        self.not(*x)
    }

    fn contains(&self, x: &usize) -> bool {
        *x < self.size
    }

    fn elements(&self) -> Option<Vec<usize>> {
        Some((0..self.size).collect())
    }

    fn forced_elements(&self) -> Vec<usize> {
        vec![self.zero, self.not(self.zero)]
    }

    fn random_element(&self, rng: &mut ChaCha8Rng, _bound: i64) -> usize {
        rng.gen_range(0..self.size)
    }

    fn to_element(&self, x: &usize) -> Element {
        Element::Finite(*x)
    }
}

/// A map between finite algebras given by its table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteMorphism {
    pub dom: Arc<FiniteAlgebra>,
    pub cod: Arc<FiniteAlgebra>,
    pub map: Vec<usize>,
}

impl fmt::Debug for FiniteMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteMorphism({} -> {}: {:?})", self.dom.size, self.cod.size, self.map)
    }
}

impl FiniteMorphism {
    /// Validates shape only; see [`FiniteMorphism::hom_violation`].
    pub fn new(dom: Arc<FiniteAlgebra>, cod: Arc<FiniteAlgebra>, map: Vec<usize>) -> Result<Self> {
        if map.len() != dom.size || map.iter().any(|&v| v >= cod.size) {
            return Err(Error::NotAMorphism("map table has the wrong shape".into()));
        }
        Ok(FiniteMorphism { dom, cod, map })
    }

    /// Like [`FiniteMorphism::new`] but also checks the homomorphism laws.
    pub fn checked(dom: Arc<FiniteAlgebra>, cod: Arc<FiniteAlgebra>, map: Vec<usize>) -> Result<Self> {
        let f = Self::new(dom, cod, map)?;
        match f.hom_violation() {
            None => Ok(f),
            Some(w) => Err(Error::NotAMorphism(w)),
        }
    }

    pub fn identity(a: &Arc<FiniteAlgebra>) -> Self {
        FiniteMorphism { dom: a.clone(), cod: a.clone(), map: (0..a.size).collect() }
    }

    #[inline]
    pub fn at(&self, x: usize) -> usize {
        self.map[x]
    }

    /// First violated law among `f(0)=0`, `f(x⊕y)=f(x)⊕f(y)`, `f(¬x)=¬f(x)`.
    pub fn hom_violation(&self) -> Option<String> {
        let (a, b) = (&self.dom, &self.cod);
        if self.at(a.zero) != b.zero {
            return Some("f(0) != 0".into());
        }
        for x in 0..a.size {
            if self.at(a.not(x)) != b.not(self.at(x)) {
                return Some(format!("f(neg {x}) != neg f({x})"));
            }
            for y in 0..a.size {
                if self.at(a.add(x, y)) != b.add(self.at(x), self.at(y)) {
                    return Some(format!("f({x} + {y}) != f({x}) + f({y})"));
                }
            }
        }
        None
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &FiniteMorphism) -> Result<FiniteMorphism> {
        if *first.cod != *self.dom {
            return Err(Error::Mismatch("codomain of the first arrow is not the domain of the second".into()));
        }
        Ok(FiniteMorphism {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            map: first.map.iter().map(|&x| self.at(x)).collect(),
        })
    }

    pub fn image(&self) -> ElemSet {
        elem_set(self.cod.size, self.map.iter().copied())
    }

    pub fn image_of(&self, s: &ElemSet) -> ElemSet {
        elem_set(self.cod.size, s.ones().map(|x| self.at(x)))
    }

    pub fn preimage(&self, s: &ElemSet) -> ElemSet {
        elem_set(self.dom.size, (0..self.dom.size).filter(|&x| s.contains(self.at(x))))
    }

    pub fn kernel(&self) -> ElemSet {
        self.preimage(&self.cod.zero_set())
    }

    pub fn is_surjective(&self) -> bool {
        self.image().count_ones(..) == self.cod.size
    }

    pub fn is_injective(&self) -> bool {
        self.image().count_ones(..) == self.dom.size
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// The pullback `B ×_D C` of `f: B → D` and `g: C → D` as a set of pairs.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub algebra: Arc<FiniteAlgebra>,
    /// Projection onto the domain of `f`.
    pub left: FiniteMorphism,
    /// Projection onto the domain of `g`.
    pub right: FiniteMorphism,
    pairs: Vec<(usize, usize)>,
    index: Vec<Option<usize>>,
    width: usize,
}

impl Pullback {
    pub fn new(f: &FiniteMorphism, g: &FiniteMorphism) -> Result<Self> {
        if *f.cod != *g.cod {
            return Err(Error::Mismatch("pullback legs have different codomains".into()));
        }
        let (b, c) = (&f.dom, &g.dom);
        let width = c.size;
        let mut pairs = Vec::new();
        let mut index = vec![None; b.size * c.size];
        for x in 0..b.size {
            for y in 0..c.size {
                if f.at(x) == g.at(y) {
                    index[x * width + y] = Some(pairs.len());
                    pairs.push((x, y));
                }
            }
        }
        let lookup = |x: usize, y: usize| -> Result<usize> {
            index[x * width + y].ok_or_else(|| Error::NotAMorphism("pullback legs are not homomorphisms".into()))
        };
        let n = pairs.len();
        let zero = lookup(b.zero, c.zero)?;
        let neg = pairs.iter().map(|&(x, y)| lookup(b.not(x), c.not(y))).collect::<Result<Vec<_>>>()?;
        let mut plus = Vec::with_capacity(n);
        for &(x, y) in &pairs {
            let row = pairs
                .iter()
                .map(|&(u, v)| lookup(b.add(x, u), c.add(y, v)))
                .collect::<Result<Vec<_>>>()?;
            plus.push(row);
        }
        let algebra = Arc::new(FiniteAlgebra::from_tables(n, zero, neg, plus)?);
        let left = FiniteMorphism::new(algebra.clone(), b.clone(), pairs.iter().map(|p| p.0).collect())?;
        let right = FiniteMorphism::new(algebra.clone(), c.clone(), pairs.iter().map(|p| p.1).collect())?;
        Ok(Pullback { algebra, left, right, pairs, index, width })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn index_of(&self, x: usize, y: usize) -> Option<usize> {
        self.index.get(x * self.width + y).copied().flatten()
    }

    /// The comparison `a ↦ (to_left(a), to_right(a))`; errors if some pair
    /// falls outside the pullback, i.e. the outer square does not commute.
    pub fn comparison(&self, to_left: &FiniteMorphism, to_right: &FiniteMorphism) -> Result<FiniteMorphism> {
        if to_left.dom != to_right.dom || to_left.cod != self.left.cod || to_right.cod != self.right.cod {
            return Err(Error::Mismatch("comparison legs do not match the pullback".into()));
        }
        let map = (0..to_left.dom.size)
            .map(|a| self.index_of(to_left.at(a), to_right.at(a)).ok_or(Error::NotCommuting))
            .collect::<Result<Vec<_>>>()?;
        FiniteMorphism::new(to_left.dom.clone(), self.algebra.clone(), map)
    }
}
