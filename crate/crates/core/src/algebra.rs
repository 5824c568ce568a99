//! The MV-algebra signature and the operations derived from it.
//!
//! Both regimes implement [`MvAlgebra`]: finite algebras given by tables and
//! symbolic block products. Everything above the primitive `⊕`, `¬`, `0`
//! is defined once here as a provided method.

use std::fmt::Debug;
use std::hash::Hash;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite::FiniteAlgebra;
use crate::symbolic::{SymElem, SymbolicAlgebra};

pub trait MvAlgebra {
    type Elem: Clone + Eq + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn plus(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn contains(&self, x: &Self::Elem) -> bool;

    /// Every element, when the carrier is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>>;
    /// Boundary elements every sampled check must visit.
    fn forced_elements(&self) -> Vec<Self::Elem>;
    /// A random carrier element; infinitesimal coordinates lie in `[-bound, bound]`.
    fn random_element(&self, rng: &mut ChaCha8Rng, bound: i64) -> Self::Elem;
    fn to_element(&self, x: &Self::Elem) -> Element;

    fn one(&self) -> Self::Elem {
        self.neg(&self.zero())
    }

    fn odot(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.neg(&self.plus(&self.neg(x), &self.neg(y)))
    }

    fn arrow(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.plus(&self.neg(x), y)
    }

    fn ominus(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.neg(&self.plus(&self.neg(x), y))
    }

    fn dist(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.plus(&self.ominus(x, y), &self.ominus(y, x))
    }

    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.plus(&self.ominus(x, y), y)
    }

    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.odot(x, &self.plus(&self.neg(x), y))
    }

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.arrow(x, y) == self.one()
    }

    /// `n·x = x ⊕ … ⊕ x`, with `0·x = 0`.
    fn times(&self, n: u32, x: &Self::Elem) -> Self::Elem {
        (0..n).fold(self.zero(), |acc, _| self.plus(&acc, x))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }

    fn eval(&self, op: Op, args: &[Self::Elem]) -> Result<Self::Elem> {
        if args.len() != op.arity() {
            return Err(Error::Arity {
                op: op.name(),
                expected: op.arity(),
                got: args.len(),
            });
        }
        if let Some(bad) = args.iter().find(|x| !self.contains(x)) {
            return Err(Error::NotInCarrier(format!("{bad:?}")));
        }
        Ok(match op {
            Op::Zero => self.zero(),
            Op::One => self.one(),
            Op::Plus => self.plus(&args[0], &args[1]),
            Op::Neg => self.neg(&args[0]),
            Op::Odot => self.odot(&args[0], &args[1]),
            Op::Arrow => self.arrow(&args[0], &args[1]),
            Op::Ominus => self.ominus(&args[0], &args[1]),
            Op::Dist => self.dist(&args[0], &args[1]),
            Op::Join => self.join(&args[0], &args[1]),
            Op::Meet => self.meet(&args[0], &args[1]),
        })
    }
}

/// Named operations for [`MvAlgebra::eval`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Zero,
    One,
    Plus,
    Neg,
    Odot,
    Arrow,
    Ominus,
    Dist,
    Join,
    Meet,
}

impl Op {
    pub fn arity(self) -> usize {
        match self {
            Op::Zero | Op::One => 0,
            Op::Neg => 1,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Op::Zero => "zero",
            Op::One => "one",
            Op::Plus => "plus",
            Op::Neg => "neg",
            Op::Odot => "odot",
            Op::Arrow => "arrow",
            Op::Ominus => "ominus",
            Op::Dist => "dist",
            Op::Join => "join",
            Op::Meet => "meet",
        }
    }
}

/// An element of either regime, used where results are reported.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Element {
    Finite(usize),
    Symbolic(SymElem),
}

/// An algebra of either regime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Algebra {
    Finite(std::sync::Arc<FiniteAlgebra>),
    Symbolic(SymbolicAlgebra),
}

impl Algebra {
    pub fn finite(a: FiniteAlgebra) -> Self {
        Algebra::Finite(std::sync::Arc::new(a))
    }

    pub fn is_finite_regime(&self) -> bool {
        matches!(self, Algebra::Finite(_))
    }

    /// Number of elements, if the carrier is finite.
    pub fn cardinality(&self) -> Option<usize> {
        match self {
            Algebra::Finite(a) => Some(a.size()),
            Algebra::Symbolic(s) => s.cardinality(),
        }
    }

    /// One-element or two-element algebra.
    pub fn is_trivial_object(&self) -> bool {
        match self {
            Algebra::Finite(a) => a.size() <= 2,
            Algebra::Symbolic(s) => s.is_trivial_object(),
        }
    }

    pub fn is_terminal(&self) -> bool {
        match self {
            Algebra::Finite(a) => a.size() == 1,
            Algebra::Symbolic(s) => s.is_terminal(),
        }
    }

    pub fn as_finite(&self) -> Result<&std::sync::Arc<FiniteAlgebra>> {
        match self {
            Algebra::Finite(a) => Ok(a),
            Algebra::Symbolic(_) => Err(Error::MixedRegimes("expected a finite algebra".into())),
        }
    }

    pub fn as_symbolic(&self) -> Result<&SymbolicAlgebra> {
        match self {
            Algebra::Symbolic(s) => Ok(s),
            Algebra::Finite(_) => Err(Error::MixedRegimes("expected a symbolic algebra".into())),
        }
    }
}
