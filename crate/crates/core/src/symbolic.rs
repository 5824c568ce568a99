//! Finite products of chains and Komori blocks, kept in canonical form.
//!
//! A block of height `m` and rank `r` is the unit interval `[0, (m, 0⃗)]` of
//! `ℤ ×lex ℤʳ`, where `ℤʳ` carries the coordinatewise order. Rank 0 is the
//! finite chain `{0, …, m}`; rank ≥ 1 is a Komori block. Both are handled by
//! the same lexicographic formulas.
//!
//! Canonical form: one-element blocks are dropped, Komori blocks come first
//! in descending `(m, r)`, then chains in descending `m`. The empty product is
//! the one-element algebra.

use std::cmp::Reverse;
use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{Element, MvAlgebra};
use crate::error::{Error, Result};
use crate::finite::FiniteAlgebra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Block {
    Chain(u32),
    Komori { m: u32, r: u32 },
}

impl Block {
    pub fn height(&self) -> u32 {
        match *self {
            Block::Chain(m) | Block::Komori { m, .. } => m,
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            Block::Chain(_) => 0,
            Block::Komori { r, .. } => r as usize,
        }
    }

    pub fn is_komori(&self) -> bool {
        matches!(self, Block::Komori { .. })
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Block::Komori { m: 0, .. } => Err(Error::InvalidBlock("Komori block needs m >= 1".into())),
            Block::Komori { r: 0, .. } => Err(Error::InvalidBlock("Komori block needs r >= 1".into())),
            _ => Ok(()),
        }
    }

    fn sort_key(&self) -> (u8, Reverse<u32>, Reverse<usize>) {
        (u8::from(!self.is_komori()), Reverse(self.height()), Reverse(self.rank()))
    }

    fn is_singleton(&self) -> bool {
        *self == Block::Chain(0)
    }

    pub fn zero(&self) -> BlockElem {
        BlockElem { a: 0, b: vec![0; self.rank()] }
    }

    pub fn one(&self) -> BlockElem {
        BlockElem { a: i64::from(self.height()), b: vec![0; self.rank()] }
    }

    pub fn plus(&self, x: &BlockElem, y: &BlockElem) -> BlockElem {
        let m = i64::from(self.height());
        let a = x.a + y.a;
        if a < m {
            BlockElem { a, b: x.b.iter().zip(&y.b).map(|(p, q)| p + q).collect() }
        } else if a > m {
            self.one()
        } else {
            BlockElem { a, b: x.b.iter().zip(&y.b).map(|(p, q)| (p + q).min(0)).collect() }
        }
    }

    pub fn neg(&self, x: &BlockElem) -> BlockElem {
        BlockElem {
            a: i64::from(self.height()) - x.a,
            b: x.b.iter().map(|v| -v).collect(),
        }
    }

    pub fn contains(&self, x: &BlockElem) -> bool {
        let m = i64::from(self.height());
        x.b.len() == self.rank()
            && (0..=m).contains(&x.a)
            && (x.a != 0 || x.b.iter().all(|&v| v >= 0))
            && (x.a != m || x.b.iter().all(|&v| v <= 0))
    }

    /// Membership in the block radical: `(0, b⃗)` with `b⃗ ≥ 0`.
    pub fn is_infinitesimal(&self, x: &BlockElem) -> bool {
        x.a == 0 && x.b.iter().all(|&v| v >= 0)
    }

    fn random(&self, rng: &mut ChaCha8Rng, bound: i64) -> BlockElem {
        let m = i64::from(self.height());
        let a = rng.gen_range(0..=m);
        let b = (0..self.rank())
            .map(|_| {
                let v: i64 = rng.gen_range(-bound..=bound);
                if a == 0 {
                    v.abs()
                } else if a == m {
                    -v.abs()
                } else {
                    v
                }
            })
            .collect();
        BlockElem { a, b }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Chain(m) => write!(f, "Chain({m})"),
            Block::Komori { m, r } => write!(f, "Komori({m},{r})"),
        }
    }
}

/// A block coordinate: the integer part `a` and the infinitesimal part `b⃗`
/// (empty for chains).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockElem {
    pub a: i64,
    pub b: Vec<i64>,
}

impl BlockElem {
    pub fn chain(a: i64) -> Self {
        BlockElem { a, b: Vec::new() }
    }

    pub fn komori(a: i64, b: &[i64]) -> Self {
        BlockElem { a, b: b.to_vec() }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BlockElemRepr {
    Chain(i64),
    Komori(i64, Vec<i64>),
}

impl Serialize for BlockElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.b.is_empty() {
            BlockElemRepr::Chain(self.a).serialize(s)
        } else {
            BlockElemRepr::Komori(self.a, self.b.clone()).serialize(s)
        }
    }
}

impl<'de> Deserialize<'de> for BlockElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(match BlockElemRepr::deserialize(d)? {
            BlockElemRepr::Chain(a) => BlockElem::chain(a),
            BlockElemRepr::Komori(a, b) => BlockElem { a, b },
        })
    }
}

impl fmt::Display for BlockElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_empty() {
            write!(f, "{}", self.a)
        } else {
            let b: Vec<String> = self.b.iter().map(i64::to_string).collect();
            write!(f, "({};{})", self.a, b.join(","))
        }
    }
}

/// An element of a symbolic algebra: one coordinate per canonical block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SymElem(pub Vec<BlockElem>);

impl SymElem {
    /// Element of a chain product from its integer coordinates.
    pub fn chain(coords: &[i64]) -> Self {
        SymElem(coords.iter().map(|&a| BlockElem::chain(a)).collect())
    }
}

impl fmt::Display for SymElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Where each block of a raw (unnormalised) block list ends up after
/// canonicalisation; `None` marks a dropped one-element block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub(crate) slots: Vec<Option<usize>>,
    pub(crate) len: usize,
}

impl Placement {
    pub fn slots(&self) -> &[Option<usize>] {
        &self.slots
    }

    /// Arrange raw coordinates into canonical order, dropping one-element blocks.
    pub fn place<T: Clone + Default>(&self, raw: Vec<T>) -> Vec<T> {
        let mut out = vec![T::default(); self.len];
        for (value, slot) in raw.into_iter().zip(&self.slots) {
            if let Some(j) = slot {
                out[*j] = value;
            }
        }
        out
    }

    /// The canonical coordinate assigned to each raw block.
    pub fn unplace<T: Clone>(&self, canonical: &[T]) -> Vec<Option<T>> {
        self.slots.iter().map(|s| s.map(|j| canonical[j].clone())).collect()
    }
}

impl Default for BlockElem {
    fn default() -> Self {
        BlockElem::chain(0)
    }
}

/// A finite product of blocks in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymbolicAlgebra {
    blocks: Vec<Block>,
}

impl SymbolicAlgebra {
    /// Canonicalise a raw block list.
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        Ok(Self::with_placement(blocks)?.0)
    }

    /// Canonicalise, also reporting where every raw block went.
    pub fn with_placement(blocks: Vec<Block>) -> Result<(Self, Placement)> {
        for b in &blocks {
            b.validate()?;
        }
        let mut order: Vec<usize> = (0..blocks.len()).filter(|&i| !blocks[i].is_singleton()).collect();
        order.sort_by_key(|&i| blocks[i].sort_key());
        let mut slots = vec![None; blocks.len()];
        for (pos, &i) in order.iter().enumerate() {
            slots[i] = Some(pos);
        }
        let canonical = order.iter().map(|&i| blocks[i]).collect();
        Ok((SymbolicAlgebra { blocks: canonical }, Placement { slots, len: order.len() }))
    }

    pub fn chain(m: u32) -> Self {
        Self::new(vec![Block::Chain(m)]).expect("chains are always valid")
    }

    pub fn komori(m: u32, r: u32) -> Result<Self> {
        Self::new(vec![Block::Komori { m, r }])
    }

    pub fn terminal() -> Self {
        SymbolicAlgebra { blocks: Vec::new() }
    }

    pub fn initial() -> Self {
        Self::chain(1)
    }

    pub fn product(parts: &[&SymbolicAlgebra]) -> Self {
        Self::product_with_placement(parts).0
    }

    pub fn product_with_placement(parts: &[&SymbolicAlgebra]) -> (Self, Placement) {
        let raw = parts.iter().flat_map(|p| p.blocks.iter().copied()).collect();
        Self::with_placement(raw).expect("canonical blocks are valid")
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn is_terminal(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_trivial_object(&self) -> bool {
        self.blocks.is_empty() || self.blocks == [Block::Chain(1)]
    }

    pub fn is_chain_product(&self) -> bool {
        self.blocks.iter().all(|b| !b.is_komori())
    }

    /// Sum of the Komori ranks.
    pub fn total_rank(&self) -> usize {
        self.blocks.iter().map(Block::rank).sum()
    }

    pub fn cardinality(&self) -> Option<usize> {
        if !self.is_chain_product() {
            return None;
        }
        self.blocks
            .iter()
            .try_fold(1usize, |acc, b| acc.checked_mul(b.height() as usize + 1))
    }

    pub fn element(&self, coords: Vec<BlockElem>) -> Result<SymElem> {
        let x = SymElem(coords);
        if self.contains(&x) {
            Ok(x)
        } else {
            Err(Error::NotInCarrier(x.to_string()))
        }
    }

    /// Index of an element in the enumeration order of [`MvAlgebra::elements`]
    /// (mixed radix, first block most significant).
    pub fn index_of(&self, x: &SymElem) -> Option<usize> {
        if !self.is_chain_product() || !self.contains(x) {
            return None;
        }
        Some(
            self.blocks
                .iter()
                .zip(&x.0)
                .fold(0usize, |acc, (b, v)| acc * (b.height() as usize + 1) + v.a as usize),
        )
    }

    /// Tables for a chain product; errors on Komori blocks.
    pub fn to_finite(&self) -> Result<FiniteAlgebra> {
        let elems = self.elements().ok_or(Error::InfiniteCarrier)?;
        let idx = |x: &SymElem| self.index_of(x).expect("closed under operations");
        let neg = elems.iter().map(|x| idx(&self.neg(x))).collect();
        let plus = elems
            .iter()
            .map(|x| elems.iter().map(|y| idx(&self.plus(x, y))).collect())
            .collect();
        FiniteAlgebra::from_tables(elems.len(), 0, neg, plus)
    }

    /// Radical membership: every Komori coordinate infinitesimal, every chain
    /// coordinate zero.
    pub fn is_radical(&self, x: &SymElem) -> bool {
        self.blocks.iter().zip(&x.0).all(|(b, v)| b.is_infinitesimal(v))
    }
}

impl fmt::Display for SymbolicAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "Chain(0)");
        }
        let parts: Vec<String> = self.blocks.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl MvAlgebra for SymbolicAlgebra {
    type Elem = SymElem;

    fn zero(&self) -> SymElem {
        SymElem(self.blocks.iter().map(Block::zero).collect())
    }

    fn one(&self) -> SymElem {
        SymElem(self.blocks.iter().map(Block::one).collect())
    }

    fn plus(&self, x: &SymElem, y: &SymElem) -> SymElem {
        SymElem(
            self.blocks
                .iter()
                .zip(x.0.iter().zip(&y.0))
                .map(|(b, (p, q))| b.plus(p, q))
                .collect(),
        )
    }

    fn neg(&self, x: &SymElem) -> SymElem {
        SymElem(self.blocks.iter().zip(&x.0).map(|(b, p)| b.neg(p)).collect())
    }

    fn contains(&self, x: &SymElem) -> bool {
        x.0.len() == self.blocks.len() && self.blocks.iter().zip(&x.0).all(|(b, v)| b.contains(v))
    }

    fn elements(&self) -> Option<Vec<SymElem>> {
        let n = self.cardinality()?;
        let heights: Vec<usize> = self.blocks.iter().map(|b| b.height() as usize + 1).collect();
        Some(
            (0..n)
                .map(|mut i| {
                    let mut coords = vec![BlockElem::chain(0); heights.len()];
                    for (k, h) in heights.iter().enumerate().rev() {
                        coords[k] = BlockElem::chain((i % h) as i64);
                        i /= h;
                    }
                    SymElem(coords)
                })
                .collect(),
        )
    }

    fn forced_elements(&self) -> Vec<SymElem> {
        let mut out = vec![self.zero(), self.one()];
        for (i, block) in self.blocks.iter().enumerate() {
            for j in 0..block.rank() {
                let mut x = self.zero();
                x.0[i].b[j] = 1;
                out.push(self.neg(&x));
                out.push(x);
            }
        }
        out
    }

    fn random_element(&self, rng: &mut ChaCha8Rng, bound: i64) -> SymElem {
        SymElem(self.blocks.iter().map(|b| b.random(rng, bound)).collect())
    }

    fn to_element(&self, x: &SymElem) -> Element {
        Element::Symbolic(x.clone())
    }
}
