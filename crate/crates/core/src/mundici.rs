//! Lattice-ordered abelian groups with order unit built from lexicographic
//! blocks, the unit-interval functor, and the semidirect pair operations.
//!
//! A block of rank `1 + r` is `ℤ ×lex ℤʳ`: positive when the first
//! coordinate is positive, or when it is zero and the rest is componentwise
//! non-negative.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::MvAlgebra;
use crate::error::{Error, Result};
use crate::symbolic::{Block, BlockElem, Placement, SymElem, SymbolicAlgebra};

/// One block of the group with its share of the unit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupBlockRepr", into = "GroupBlockRepr")]
pub struct GroupBlock {
    pub unit: Vec<i64>,
}

impl GroupBlock {
    pub fn rank(&self) -> usize {
        self.unit.len()
    }
}

#[derive(Serialize, Deserialize)]
struct GroupBlockRepr {
    rank: usize,
    unit: UnitRepr,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum UnitRepr {
    Scalar(i64),
    Vector(Vec<i64>),
}

impl TryFrom<GroupBlockRepr> for GroupBlock {
    type Error = Error;

    fn try_from(r: GroupBlockRepr) -> Result<Self> {
        let unit = match r.unit {
            UnitRepr::Scalar(m) => vec![m],
            UnitRepr::Vector(v) => v,
        };
        if r.rank == 0 || unit.len() != r.rank {
            return Err(Error::InvalidGroup(format!("rank {} does not match the unit", r.rank)));
        }
        Ok(GroupBlock { unit })
    }
}

impl From<GroupBlock> for GroupBlockRepr {
    fn from(b: GroupBlock) -> Self {
        let unit = if b.unit.len() == 1 { UnitRepr::Scalar(b.unit[0]) } else { UnitRepr::Vector(b.unit.clone()) };
        GroupBlockRepr { rank: b.unit.len(), unit }
    }
}

/// Element of a group: one integer vector per block.
pub type GroupElem = Vec<Vec<i64>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitalLexGroup {
    pub blocks: Vec<GroupBlock>,
}

fn block_cmp(x: &[i64], y: &[i64]) -> Option<Ordering> {
    match x[0].cmp(&y[0]) {
        Ordering::Equal => {
            let le = x[1..].iter().zip(&y[1..]).all(|(a, b)| a <= b);
            let ge = x[1..].iter().zip(&y[1..]).all(|(a, b)| a >= b);
            match (le, ge) {
                (true, true) => Some(Ordering::Equal),
                (true, false) => Some(Ordering::Less),
                (false, true) => Some(Ordering::Greater),
                (false, false) => None,
            }
        }
        o => Some(o),
    }
}

fn block_join(x: &[i64], y: &[i64]) -> Vec<i64> {
    match x[0].cmp(&y[0]) {
        Ordering::Greater => x.to_vec(),
        Ordering::Less => y.to_vec(),
        Ordering::Equal => std::iter::once(x[0]).chain(x[1..].iter().zip(&y[1..]).map(|(a, b)| *a.max(b))).collect(),
    }
}

fn block_meet(x: &[i64], y: &[i64]) -> Vec<i64> {
    match x[0].cmp(&y[0]) {
        Ordering::Less => x.to_vec(),
        Ordering::Greater => y.to_vec(),
        Ordering::Equal => std::iter::once(x[0]).chain(x[1..].iter().zip(&y[1..]).map(|(a, b)| *a.min(b))).collect(),
    }
}

impl UnitalLexGroup {
    pub fn new(blocks: Vec<GroupBlock>) -> Result<Self> {
        if blocks.iter().any(|b| b.rank() == 0) {
            return Err(Error::InvalidGroup("blocks need rank at least 1".into()));
        }
        Ok(UnitalLexGroup { blocks })
    }

    /// `(ℤ, m)`.
    pub fn integers(m: i64) -> Self {
        UnitalLexGroup { blocks: vec![GroupBlock { unit: vec![m] }] }
    }

    /// `(ℤ ×lex ℤʳ, unit)`.
    pub fn lex(unit: Vec<i64>) -> Result<Self> {
        UnitalLexGroup::new(vec![GroupBlock { unit }])
    }

    /// Blockwise concatenation.
    pub fn product(&self, other: &UnitalLexGroup) -> Self {
        UnitalLexGroup { blocks: self.blocks.iter().chain(&other.blocks).cloned().collect() }
    }

    pub fn unit(&self) -> GroupElem {
        self.blocks.iter().map(|b| b.unit.clone()).collect()
    }

    pub fn contains(&self, x: &GroupElem) -> bool {
        x.len() == self.blocks.len() && x.iter().zip(&self.blocks).all(|(v, b)| v.len() == b.rank())
    }

    pub fn zero(&self) -> GroupElem {
        self.blocks.iter().map(|b| vec![0; b.rank()]).collect()
    }

    pub fn add(&self, x: &GroupElem, y: &GroupElem) -> GroupElem {
        x.iter().zip(y).map(|(u, v)| u.iter().zip(v).map(|(a, b)| a + b).collect()).collect()
    }

    pub fn negate(&self, x: &GroupElem) -> GroupElem {
        x.iter().map(|u| u.iter().map(|a| -a).collect()).collect()
    }

    pub fn sub(&self, x: &GroupElem, y: &GroupElem) -> GroupElem {
        self.add(x, &self.negate(y))
    }

    pub fn scale(&self, n: i64, x: &GroupElem) -> GroupElem {
        x.iter().map(|u| u.iter().map(|a| n * a).collect()).collect()
    }

    pub fn join(&self, x: &GroupElem, y: &GroupElem) -> GroupElem {
        x.iter().zip(y).map(|(u, v)| block_join(u, v)).collect()
    }

    pub fn meet(&self, x: &GroupElem, y: &GroupElem) -> GroupElem {
        x.iter().zip(y).map(|(u, v)| block_meet(u, v)).collect()
    }

    pub fn leq(&self, x: &GroupElem, y: &GroupElem) -> bool {
        x.iter().zip(y).all(|(u, v)| matches!(block_cmp(u, v), Some(Ordering::Less | Ordering::Equal)))
    }

    /// `|x| = x ∨ −x`.
    pub fn abs(&self, x: &GroupElem) -> GroupElem {
        self.join(x, &self.negate(x))
    }

    /// Element with entries in `[-bound, bound]`.
    pub fn random(&self, rng: &mut ChaCha8Rng, bound: i64) -> GroupElem {
        self.blocks.iter().map(|b| (0..b.rank()).map(|_| rng.gen_range(-bound..=bound)).collect()).collect()
    }

    /// Signed unit vectors, always part of a sample.
    pub fn basis(&self) -> Vec<GroupElem> {
        let mut out = Vec::new();
        for (i, b) in self.blocks.iter().enumerate() {
            for c in 0..b.rank() {
                for s in [1, -1] {
                    let mut x = self.zero();
                    x[i][c] = s;
                    out.push(x);
                }
            }
        }
        out
    }
}

/// `Γ(G, u)`. Each block needs a unit `(m, 0, …, 0)` with `m ≥ 1`; `(ℤ, m)`
/// gives `Chain(m)` and `(ℤ ×lex ℤʳ, (m, 0⃗))` gives `Komori(m, r)`.
pub fn gamma(g: &UnitalLexGroup) -> Result<SymbolicAlgebra> {
    Ok(gamma_with_placement(g)?.0)
}

/// `Γ(G, u)` with the position of each group block among the canonical
/// algebra blocks.
pub fn gamma_with_placement(g: &UnitalLexGroup) -> Result<(SymbolicAlgebra, Placement)> {
    let blocks = g
        .blocks
        .iter()
        .map(|b| {
            let m = b.unit[0];
            if m < 1 || b.unit[1..].iter().any(|&c| c != 0) {
                return Err(Error::InvalidGroup(format!("unit {:?} is not of the form (m, 0, ..., 0) with m >= 1", b.unit)));
            }
            let m = u32::try_from(m).map_err(|_| Error::InvalidGroup("unit too large".into()))?;
            Ok(match b.rank() {
                1 => Block::Chain(m),
                r => Block::Komori { m, r: r as u32 - 1 },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SymbolicAlgebra::with_placement(blocks)
}

/// The interval element `x` as an element of `Γ(G, u)`.
pub fn to_interval(g: &UnitalLexGroup, x: &GroupElem) -> Result<SymElem> {
    if !g.contains(x) || !g.leq(&g.zero(), x) || !g.leq(x, &g.unit()) {
        return Err(Error::NotInCarrier(format!("{x:?} is outside [0, u]")));
    }
    let (_, placement) = gamma_with_placement(g)?;
    Ok(SymElem(placement.place(x.iter().map(|v| BlockElem { a: v[0], b: v[1..].to_vec() }).collect())))
}

/// The group element under an element of `Γ(G, u)`.
pub fn from_interval(g: &UnitalLexGroup, x: &SymElem) -> Result<GroupElem> {
    let (a, placement) = gamma_with_placement(g)?;
    if !a.contains(x) {
        return Err(Error::NotInCarrier(x.to_string()));
    }
    Ok(placement
        .unplace(&x.0)
        .into_iter()
        .map(|v| {
            let v = v.expect("every group block has positive height");
            std::iter::once(v.a).chain(v.b).collect()
        })
        .collect())
}

/// `x ⊕ y = (x + y) ∧ u`.
pub fn interval_plus(g: &UnitalLexGroup, x: &GroupElem, y: &GroupElem) -> GroupElem {
    g.meet(&g.add(x, y), &g.unit())
}

/// `¬x = u − x`.
pub fn interval_neg(g: &UnitalLexGroup, x: &GroupElem) -> GroupElem {
    g.sub(&g.unit(), x)
}

/// Outcome of the order-unit search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderUnitCheck {
    pub passed: bool,
    pub sampled: usize,
    /// An `x` with `|x| ≰ n·u` for every `n` up to the bound.
    pub witness: Option<GroupElem>,
}

/// For every sampled `x`, look for `n` with `|x| ≤ n·u`, trying `n` up to
/// one more than the largest first coordinate of `|x|`.
pub fn order_unit_check(g: &UnitalLexGroup, seed: u64, count: usize, bound: i64) -> OrderUnitCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool = g.basis();
    pool.extend((0..count).map(|_| g.random(&mut rng, bound)));
    let u = g.unit();
    let unit_ok = g.leq(&g.zero(), &u);
    for x in &pool {
        let ax = g.abs(x);
        let limit = ax.iter().map(|v| v[0].abs()).max().unwrap_or(0) + 1;
        if !unit_ok || !(0..=limit).any(|n| g.leq(&ax, &g.scale(n, &u))) {
            return OrderUnitCheck { passed: false, sampled: pool.len(), witness: Some(x.clone()) };
        }
    }
    OrderUnitCheck { passed: true, sampled: pool.len(), witness: None }
}

/// An element `(k, b)` of `K ⋊ B` with `K = B = ℤᵖ` ordered componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SemidirectPair {
    pub k: Vec<i64>,
    pub b: Vec<i64>,
}

impl SemidirectPair {
    pub fn new(k: Vec<i64>, b: Vec<i64>) -> Result<Self> {
        if k.len() != b.len() {
            return Err(Error::Mismatch(format!("dimensions {} and {} differ", k.len(), b.len())));
        }
        Ok(SemidirectPair { k, b })
    }
}

fn zip_with(x: &[i64], y: &[i64], f: impl Fn(i64, i64) -> i64) -> Vec<i64> {
    x.iter().zip(y).map(|(a, b)| f(*a, *b)).collect()
}

fn same_dims(x: &SemidirectPair, y: &SemidirectPair) -> Result<()> {
    if x.k.len() != x.b.len() || y.k.len() != x.k.len() || y.b.len() != x.k.len() {
        return Err(Error::Mismatch("pairs have different dimensions".into()));
    }
    Ok(())
}

pub fn semidirect_sum(x: &SemidirectPair, y: &SemidirectPair) -> Result<SemidirectPair> {
    same_dims(x, y)?;
    Ok(SemidirectPair { k: zip_with(&x.k, &y.k, |a, b| a + b), b: zip_with(&x.b, &y.b, |a, b| a + b) })
}

/// `(((k₁ + b₁) ∨ (k₂ + b₂)) − (b₁ ∨ b₂), b₁ ∨ b₂)`.
pub fn semidirect_join(x: &SemidirectPair, y: &SemidirectPair) -> Result<SemidirectPair> {
    same_dims(x, y)?;
    let top = zip_with(&zip_with(&x.k, &x.b, |a, b| a + b), &zip_with(&y.k, &y.b, |a, b| a + b), i64::max);
    let b = zip_with(&x.b, &y.b, i64::max);
    Ok(SemidirectPair { k: zip_with(&top, &b, |a, c| a - c), b })
}

/// `(((k₁ + b₁) ∧ (k₂ + b₂)) − (b₁ ∧ b₂), b₁ ∧ b₂)`.
pub fn semidirect_meet(x: &SemidirectPair, y: &SemidirectPair) -> Result<SemidirectPair> {
    same_dims(x, y)?;
    let bottom = zip_with(&zip_with(&x.k, &x.b, |a, b| a + b), &zip_with(&y.k, &y.b, |a, b| a + b), i64::min);
    let b = zip_with(&x.b, &y.b, i64::min);
    Ok(SemidirectPair { k: zip_with(&bottom, &b, |a, c| a - c), b })
}

/// `(k, b) ↦ (k + b, b)` into the direct sum ordered componentwise.
pub fn phi(x: &SemidirectPair) -> (Vec<i64>, Vec<i64>) {
    (zip_with(&x.k, &x.b, |a, b| a + b), x.b.clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupLaw {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub witness: Option<Vec<SemidirectPair>>,
}

/// Sampled ℓ-group laws for the pair operations, and the transport `φ`.
pub fn semidirect_laws(dim: usize, count: usize, bound: i64, seed: u64) -> Result<Vec<GroupLaw>> {
    type Law = (&'static str, fn(&SemidirectPair, &SemidirectPair, &SemidirectPair) -> Result<bool>);
    let laws: [Law; 10] = [
        ("sum associative", |x, y, z| Ok(semidirect_sum(&semidirect_sum(x, y)?, z)? == semidirect_sum(x, &semidirect_sum(y, z)?)?)),
        ("sum commutative", |x, y, _| Ok(semidirect_sum(x, y)? == semidirect_sum(y, x)?)),
        ("join idempotent", |x, _, _| Ok(semidirect_join(x, x)? == *x)),
        ("join commutative", |x, y, _| Ok(semidirect_join(x, y)? == semidirect_join(y, x)?)),
        ("join associative", |x, y, z| Ok(semidirect_join(&semidirect_join(x, y)?, z)? == semidirect_join(x, &semidirect_join(y, z)?)?)),
        ("meet associative", |x, y, z| Ok(semidirect_meet(&semidirect_meet(x, y)?, z)? == semidirect_meet(x, &semidirect_meet(y, z)?)?)),
        ("absorption", |x, y, _| Ok(semidirect_join(x, &semidirect_meet(x, y)?)? == *x && semidirect_meet(x, &semidirect_join(x, y)?)? == *x)),
        ("sum distributes over join", |x, y, z| {
            Ok(semidirect_sum(x, &semidirect_join(y, z)?)? == semidirect_join(&semidirect_sum(x, y)?, &semidirect_sum(x, z)?)?)
        }),
        ("phi additive", |x, y, _| {
            let (s, t) = (phi(&semidirect_sum(x, y)?), (phi(x), phi(y)));
            Ok(s.0 == zip_with(&t.0 .0, &t.1 .0, |a, b| a + b) && s.1 == zip_with(&t.0 .1, &t.1 .1, |a, b| a + b))
        }),
        ("phi preserves join", |x, y, _| {
            let (s, t) = (phi(&semidirect_join(x, y)?), (phi(x), phi(y)));
            Ok(s.0 == zip_with(&t.0 .0, &t.1 .0, i64::max) && s.1 == zip_with(&t.0 .1, &t.1 .1, i64::max))
        }),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| SemidirectPair {
        k: (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect(),
        b: (0..dim).map(|_| rng.gen_range(-bound..=bound)).collect(),
    };
    let triples: Vec<[SemidirectPair; 3]> = (0..count).map(|_| [draw(&mut rng), draw(&mut rng), draw(&mut rng)]).collect();
    let mut out = Vec::new();
    for (name, law) in laws {
        let mut witness = None;
        let mut checked = 0;
        for [x, y, z] in &triples {
            checked += 1;
            if !law(x, y, z)? {
                witness = Some(vec![x.clone(), y.clone(), z.clone()]);
                break;
            }
        }
        out.push(GroupLaw { name: name.to_string(), passed: witness.is_none(), checked, witness });
    }
    Ok(out)
}

/// Pointwise agreement of the interval operations with the algebra
/// operations of `Γ(G, u)` on sampled interval elements.
pub fn gamma_agrees_sampled(g: &UnitalLexGroup, seed: u64, count: usize, bound: i64) -> Result<bool> {
    let a = gamma(g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = crate::morphism::sample_pool(&a, &mut rng, count, bound);
    for (x, y) in pool.iter().zip(pool.iter().rev()) {
        let (gx, gy) = (from_interval(g, x)?, from_interval(g, y)?);
        if to_interval(g, &gx)? != *x {
            return Ok(false);
        }
        if from_interval(g, &a.plus(x, y))? != interval_plus(g, &gx, &gy) || from_interval(g, &a.neg(x))? != interval_neg(g, &gx) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteAlgebra;

    /// Tables of `Γ(ℤ, m)` straight from the group formulas.
    fn interval_tables(m: i64) -> FiniteAlgebra {
        let g = UnitalLexGroup::integers(m);
        let n = (m + 1) as usize;
        let neg = (0..=m).map(|x| interval_neg(&g, &vec![vec![x]])[0][0] as usize).collect();
        let plus = (0..=m)
            .map(|x| (0..=m).map(|y| interval_plus(&g, &vec![vec![x]], &vec![vec![y]])[0][0] as usize).collect())
            .collect();
        FiniteAlgebra::from_tables(n, 0, neg, plus).unwrap()
    }

    #[test]
    fn gamma_of_integers_is_the_chain() {
        for m in 1..=10 {
            let g = UnitalLexGroup::integers(m);
            assert_eq!(gamma(&g).unwrap(), SymbolicAlgebra::chain(m as u32));
            assert_eq!(interval_tables(m), SymbolicAlgebra::chain(m as u32).to_finite().unwrap());
        }
    }

    #[test]
    fn gamma_of_lex_block_is_chang() {
        let g = UnitalLexGroup::lex(vec![1, 0]).unwrap();
        assert_eq!(gamma(&g).unwrap(), SymbolicAlgebra::komori(1, 1).unwrap());
        assert!(gamma_agrees_sampled(&g, 1, 500, 6).unwrap());
        let prod = g.product(&UnitalLexGroup::integers(3));
        assert_eq!(
            gamma(&prod).unwrap(),
            SymbolicAlgebra::product(&[&gamma(&g).unwrap(), &SymbolicAlgebra::chain(3)])
        );
        assert!(gamma_agrees_sampled(&prod, 2, 500, 6).unwrap());
        assert!(gamma(&UnitalLexGroup::lex(vec![0, 1]).unwrap()).is_err());
    }

    #[test]
    fn order_units() {
        assert!(order_unit_check(&UnitalLexGroup::lex(vec![1, 0]).unwrap(), 1, 200, 20).passed);
        let bad = order_unit_check(&UnitalLexGroup::lex(vec![0, 1]).unwrap(), 1, 200, 20);
        assert!(!bad.passed);
        assert_eq!(bad.witness, Some(vec![vec![1, 0]]));
        assert!(order_unit_check(&UnitalLexGroup::integers(1), 1, 200, 20).passed);
    }

    #[test]
    fn semidirect_examples() {
        let x = SemidirectPair::new(vec![1], vec![2]).unwrap();
        let y = SemidirectPair::new(vec![3], vec![4]).unwrap();
        assert_eq!(semidirect_sum(&x, &y).unwrap(), SemidirectPair::new(vec![4], vec![6]).unwrap());
        let p = SemidirectPair::new(vec![1], vec![0]).unwrap();
        let q = SemidirectPair::new(vec![0], vec![2]).unwrap();
        assert_eq!(semidirect_join(&p, &q).unwrap(), SemidirectPair::new(vec![0], vec![2]).unwrap());
        assert_eq!(semidirect_join(&x, &x).unwrap(), x);
        assert!(SemidirectPair::new(vec![1, 2], vec![1]).is_err());
    }

    #[test]
    fn semidirect_laws_hold() {
        for law in semidirect_laws(2, 2_000, 9, 4).unwrap() {
            assert!(law.passed, "{law:?}");
        }
    }

    #[test]
    fn group_file_round_trip() {
        let text = r#"{"blocks":[{"rank":2,"unit":[1,0]},{"rank":1,"unit":3}]}"#;
        let g: UnitalLexGroup = serde_json::from_str(text).unwrap();
        assert_eq!(g.blocks[1].unit, vec![3]);
        assert_eq!(serde_json::to_string(&g).unwrap(), text);
        assert!(serde_json::from_str::<UnitalLexGroup>(r#"{"blocks":[{"rank":2,"unit":3}]}"#).is_err());
    }
}
