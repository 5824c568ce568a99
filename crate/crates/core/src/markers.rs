//! Ideals of symbolic algebras, one marker per block.
//!
//! The ideals of a finite product are exactly the products of block ideals.
//! A chain block has two ideals, `Zero` and `Full`. A Komori block of rank `r`
//! has `Full` and, for every coordinate set `S ⊆ {0..r}`, the ideal `Sub(S)` of
//! infinitesimals supported in `S`; `Sub(∅)` is `Zero` and `Sub(all)` is the
//! block radical. Coordinates are 0-based here and 1-based in files.

use std::fmt;

use crate::algebra::MvAlgebra;
use crate::error::{Error, Result};
use crate::symbolic::{Block, BlockElem, SymElem, SymbolicAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Marker {
    #[default]
    Zero,
    /// Nonempty, sorted, 0-based coordinate set.
    Sub(Vec<usize>),
    Full,
}

impl Marker {
    /// Normalising constructor for Komori coordinate sets.
    pub fn sub(mut coords: Vec<usize>) -> Marker {
        coords.sort_unstable();
        coords.dedup();
        if coords.is_empty() {
            Marker::Zero
        } else {
            Marker::Sub(coords)
        }
    }

    fn coords(&self, block: &Block) -> Vec<usize> {
        match self {
            Marker::Zero => Vec::new(),
            Marker::Sub(s) => s.clone(),
            Marker::Full => (0..block.rank()).collect(),
        }
    }

    pub fn meet(&self, other: &Marker) -> Marker {
        match (self, other) {
            (Marker::Full, x) | (x, Marker::Full) => x.clone(),
            (Marker::Zero, _) | (_, Marker::Zero) => Marker::Zero,
            (Marker::Sub(s), Marker::Sub(t)) => Marker::sub(s.iter().filter(|i| t.contains(i)).copied().collect()),
        }
    }

    pub fn join(&self, other: &Marker) -> Marker {
        match (self, other) {
            (Marker::Full, _) | (_, Marker::Full) => Marker::Full,
            (Marker::Zero, x) | (x, Marker::Zero) => x.clone(),
            (Marker::Sub(s), Marker::Sub(t)) => Marker::sub(s.iter().chain(t).copied().collect()),
        }
    }

    pub fn leq(&self, other: &Marker) -> bool {
        self.meet(other) == *self
    }

    /// The block radical: `Sub(all)` on Komori blocks, `Zero` on chains.
    pub fn block_radical(block: &Block) -> Marker {
        Marker::sub((0..block.rank()).collect())
    }

    pub fn block_contains(&self, block: &Block, x: &BlockElem) -> bool {
        match self {
            Marker::Full => true,
            Marker::Zero => *x == block.zero(),
            Marker::Sub(s) => {
                block.is_infinitesimal(x) && x.b.iter().enumerate().all(|(i, &v)| v == 0 || s.contains(&i))
            }
        }
    }

    /// Generator of the block ideal as a principal ideal.
    pub fn block_generator(&self, block: &Block) -> BlockElem {
        match self {
            Marker::Full => block.one(),
            Marker::Zero => block.zero(),
            Marker::Sub(s) => {
                let mut g = block.zero();
                for &i in s {
                    g.b[i] = 1;
                }
                g
            }
        }
    }

    /// The block of the quotient by this marker; `Chain(0)` when killed.
    pub fn quotient_block(&self, block: &Block) -> Block {
        match (self, *block) {
            (Marker::Full, _) => Block::Chain(0),
            (Marker::Zero, b) => b,
            (Marker::Sub(s), Block::Komori { m, r }) if s.len() == r as usize => Block::Chain(m),
            (Marker::Sub(s), Block::Komori { m, r }) => Block::Komori { m, r: r - s.len() as u32 },
            (Marker::Sub(_), Block::Chain(_)) => unreachable!("validated markers"),
        }
    }

    /// Coordinates of the block that survive in the quotient.
    pub fn surviving_coords(&self, block: &Block) -> Vec<usize> {
        let killed = self.coords(block);
        (0..block.rank()).filter(|i| !killed.contains(i)).collect()
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Marker::Zero => write!(f, "Zero"),
            Marker::Full => write!(f, "Full"),
            Marker::Sub(s) => {
                let s: Vec<String> = s.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, "Sub{{{}}}", s.join(","))
            }
        }
    }
}

/// An ideal of a symbolic algebra, one marker per canonical block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Markers(pub Vec<Marker>);

impl Markers {
    /// Validate against `a`, normalising `Sub(∅)` to `Zero`.
    pub fn new(a: &SymbolicAlgebra, markers: Vec<Marker>) -> Result<Self> {
        if markers.len() != a.blocks().len() {
            return Err(Error::InvalidIdeal(format!(
                "{} markers for {} blocks",
                markers.len(),
                a.blocks().len()
            )));
        }
        let mut out = Vec::with_capacity(markers.len());
        for (m, b) in markers.into_iter().zip(a.blocks()) {
            let m = match m {
                Marker::Sub(s) => Marker::sub(s),
                other => other,
            };
            if let Marker::Sub(s) = &m {
                if !b.is_komori() {
                    return Err(Error::InvalidIdeal(format!("Sub marker on {b}")));
                }
                if s.iter().any(|&i| i >= b.rank()) {
                    return Err(Error::InvalidIdeal(format!("coordinate out of range for {b}")));
                }
            }
            out.push(m);
        }
        Ok(Markers(out))
    }

    pub fn zero(a: &SymbolicAlgebra) -> Self {
        Markers(vec![Marker::Zero; a.blocks().len()])
    }

    pub fn full(a: &SymbolicAlgebra) -> Self {
        Markers(vec![Marker::Full; a.blocks().len()])
    }

    pub fn radical(a: &SymbolicAlgebra) -> Self {
        Markers(a.blocks().iter().map(Marker::block_radical).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|m| *m == Marker::Zero)
    }

    pub fn is_full(&self) -> bool {
        self.0.iter().all(|m| *m == Marker::Full)
    }

    pub fn meet(&self, other: &Markers) -> Markers {
        Markers(self.0.iter().zip(&other.0).map(|(x, y)| x.meet(y)).collect())
    }

    pub fn join(&self, other: &Markers) -> Markers {
        Markers(self.0.iter().zip(&other.0).map(|(x, y)| x.join(y)).collect())
    }

    pub fn leq(&self, other: &Markers) -> bool {
        self.0.iter().zip(&other.0).all(|(x, y)| x.leq(y))
    }

    pub fn contains(&self, a: &SymbolicAlgebra, x: &SymElem) -> bool {
        a.blocks()
            .iter()
            .zip(&self.0)
            .zip(&x.0)
            .all(|((b, m), v)| m.block_contains(b, v))
    }

    /// `g` with `I = {x : x ≤ n·g for some n}`.
    pub fn generator(&self, a: &SymbolicAlgebra) -> SymElem {
        SymElem(a.blocks().iter().zip(&self.0).map(|(b, m)| m.block_generator(b)).collect())
    }

    /// Raw (uncanonicalised) blocks of the quotient algebra.
    pub fn quotient_blocks(&self, a: &SymbolicAlgebra) -> Vec<Block> {
        a.blocks().iter().zip(&self.0).map(|(b, m)| m.quotient_block(b)).collect()
    }

    /// Every ideal of `a`, in a fixed order.
    pub fn all(a: &SymbolicAlgebra) -> Vec<Markers> {
        let per_block: Vec<Vec<Marker>> = a.blocks().iter().map(block_ideals).collect();
        let mut out = vec![Vec::new()];
        for options in per_block {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Marker>| {
                    options.iter().map(move |m| {
                        let mut p = prefix.clone();
                        p.push(m.clone());
                        p
                    })
                })
                .collect();
        }
        out.into_iter().map(Markers).collect()
    }

    /// The maximal ideals: the block radical in one coordinate, `Full`
    /// everywhere else.
    pub fn maximal(a: &SymbolicAlgebra) -> Vec<Markers> {
        (0..a.blocks().len())
            .map(|i| {
                let mut m = Markers::full(a);
                m.0[i] = Marker::block_radical(&a.blocks()[i]);
                m
            })
            .collect()
    }

    /// `{x : x ∧ s = 0 for all s ∈ I}`: `Zero` and `Full` swap, `Sub(S)`
    /// becomes `Sub` of the complement.
    pub fn polar(&self, a: &SymbolicAlgebra) -> Markers {
        Markers(
            a.blocks()
                .iter()
                .zip(&self.0)
                .map(|(b, m)| match m {
                    Marker::Zero => Marker::Full,
                    Marker::Full => Marker::Zero,
                    Marker::Sub(s) => Marker::sub((0..b.rank()).filter(|i| !s.contains(i)).collect()),
                })
                .collect(),
        )
    }

    /// Pad a block coordinate by reinserting zeros at killed coordinates.
    pub(crate) fn lift_block(&self, block_index: usize, block: &Block, y: &BlockElem) -> BlockElem {
        let keep = self.0[block_index].surviving_coords(block);
        let mut b = vec![0; block.rank()];
        for (pos, &i) in keep.iter().enumerate() {
            if let Some(&v) = y.b.get(pos) {
                b[i] = v;
            }
        }
        BlockElem { a: y.a, b }
    }
}

fn block_ideals(b: &Block) -> Vec<Marker> {
    match *b {
        Block::Chain(_) => vec![Marker::Zero, Marker::Full],
        Block::Komori { r, .. } => {
            let r = r as usize;
            let mut v: Vec<Marker> = (0u64..1 << r)
                .map(|mask| Marker::sub((0..r).filter(|i| mask >> i & 1 == 1).collect()))
                .collect();
            v.push(Marker::Full);
            v
        }
    }
}

impl fmt::Display for Markers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "Full");
        }
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Definitional membership: `x ≤ n·g` for some `n ≤ max_n`, using only the
/// algebra operations. Independent of [`Markers::contains`].
pub fn principal_member(a: &SymbolicAlgebra, g: &SymElem, x: &SymElem, max_n: u32) -> bool {
    let mut acc = a.zero();
    for _ in 0..=max_n {
        if a.leq(x, &acc) {
            return true;
        }
        acc = a.plus(&acc, g);
    }
    false
}
