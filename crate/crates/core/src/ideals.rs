//! Ideals, quotients, radicals, polars and filters.

use std::sync::Arc;

use crate::algebra::{Algebra, MvAlgebra};
use crate::error::{Error, Result};
use crate::finite::{elem_set, ElemSet, FiniteAlgebra, FiniteMorphism};
use crate::markers::{Marker, Markers};
use crate::morphism::{Morphism, SymMorphism};
use crate::symbolic::{SymElem, SymbolicAlgebra};

/// An ideal of either regime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IdealDesc {
    Finite(ElemSet),
    Symbolic(Markers),
}

impl std::fmt::Display for IdealDesc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IdealDesc::Finite(s) => {
                let members: Vec<String> = s.ones().map(|x| x.to_string()).collect();
                write!(f, "{{{}}}", members.join(", "))
            }
            IdealDesc::Symbolic(m) => write!(f, "{m}"),
        }
    }
}

impl IdealDesc {
    pub fn is_zero(&self) -> bool {
        match self {
            IdealDesc::Finite(s) => s.count_ones(..) == 1,
            IdealDesc::Symbolic(m) => m.is_zero(),
        }
    }

    pub fn is_full(&self) -> bool {
        match self {
            IdealDesc::Finite(s) => s.is_full(),
            IdealDesc::Symbolic(m) => m.is_full(),
        }
    }

    pub fn as_finite(&self) -> Result<&ElemSet> {
        match self {
            IdealDesc::Finite(s) => Ok(s),
            IdealDesc::Symbolic(_) => Err(Error::MixedRegimes("expected an element set".into())),
        }
    }

    pub fn as_symbolic(&self) -> Result<&Markers> {
        match self {
            IdealDesc::Symbolic(m) => Ok(m),
            IdealDesc::Finite(_) => Err(Error::MixedRegimes("expected block markers".into())),
        }
    }

    pub fn meet(&self, other: &IdealDesc) -> Result<IdealDesc> {
        match (self, other) {
            (IdealDesc::Finite(a), IdealDesc::Finite(b)) => Ok(IdealDesc::Finite(a.intersection(b).collect_set(a.len()))),
            (IdealDesc::Symbolic(a), IdealDesc::Symbolic(b)) => Ok(IdealDesc::Symbolic(a.meet(b))),
            _ => Err(Error::MixedRegimes("meet of ideals".into())),
        }
    }

    pub fn leq(&self, other: &IdealDesc) -> Result<bool> {
        match (self, other) {
            (IdealDesc::Finite(a), IdealDesc::Finite(b)) => Ok(a.is_subset(b)),
            (IdealDesc::Symbolic(a), IdealDesc::Symbolic(b)) => Ok(a.leq(b)),
            _ => Err(Error::MixedRegimes("comparison of ideals".into())),
        }
    }
}

trait CollectSet {
    fn collect_set(self, n: usize) -> ElemSet;
}

impl<I: Iterator<Item = usize>> CollectSet for I {
    fn collect_set(self, n: usize) -> ElemSet {
        elem_set(n, self)
    }
}

/// Contains 0, closed under `⊕`, downward closed.
pub fn is_ideal(a: &FiniteAlgebra, s: &ElemSet) -> bool {
    s.contains(a.zero())
        && s.ones().all(|x| s.ones().all(|y| s.contains(a.add(x, y))))
        && s.ones().all(|x| (0..a.size()).all(|y| !a.leq(&y, &x) || s.contains(y)))
}

fn check_members(a: &FiniteAlgebra, xs: &[usize]) -> Result<()> {
    match xs.iter().find(|&&x| x >= a.size()) {
        Some(x) => Err(Error::NotInCarrier(x.to_string())),
        None => Ok(()),
    }
}

/// The least ideal containing `gens`: elements below a finite sum of generators.
pub fn generated_ideal(a: &FiniteAlgebra, gens: &[usize]) -> Result<ElemSet> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    check_members(a, gens)?;
    let mut sums = elem_set(a.size(), gens.iter().copied().chain([a.zero()]));
    loop {
        let grown = elem_set(
            a.size(),
            sums.ones().flat_map(|x| sums.ones().map(move |y| a.add(x, y))).collect::<Vec<_>>(),
        );
        let mut next = sums.clone();
        next.union_with(&grown);
        if next == sums {
            break;
        }
        sums = next;
    }
    Ok(elem_set(a.size(), (0..a.size()).filter(|&y| sums.ones().any(|s| a.leq(&y, &s)))))
}

/// Every ideal of a finite algebra. Each is principal, generated by the sum of
/// its elements, so generating from single elements reaches all of them.
pub fn all_ideals_finite(a: &FiniteAlgebra) -> Vec<ElemSet> {
    let mut out: Vec<ElemSet> = (0..a.size())
        .map(|x| generated_ideal(a, &[x]).expect("one generator in range"))
        .collect();
    out.sort_by_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
    out.dedup();
    out
}

pub fn all_ideals(a: &Algebra) -> Vec<IdealDesc> {
    match a {
        Algebra::Finite(f) => all_ideals_finite(f).into_iter().map(IdealDesc::Finite).collect(),
        Algebra::Symbolic(s) => Markers::all(s).into_iter().map(IdealDesc::Symbolic).collect(),
    }
}

pub fn kernel(f: &Morphism) -> IdealDesc {
    match f {
        Morphism::Finite(f) => IdealDesc::Finite(f.kernel()),
        Morphism::Symbolic(f) => IdealDesc::Symbolic(f.kernel()),
    }
}

/// Is the restriction of `f` to the ideal `i` injective, i.e. `ker f ∩ I = 0`?
pub fn injective_on(f: &Morphism, i: &IdealDesc) -> Result<bool> {
    Ok(kernel(f).meet(i)?.is_zero())
}

/// A finite quotient with its projection.
#[derive(Debug, Clone)]
pub struct FiniteQuotient {
    pub algebra: Arc<FiniteAlgebra>,
    pub projection: FiniteMorphism,
}

/// `A/I` under `x ~ y ⟺ d(x, y) ∈ I`; classes are numbered by their least
/// member.
pub fn quotient_finite(a: &Arc<FiniteAlgebra>, i: &ElemSet) -> Result<FiniteQuotient> {
    if i.len() != a.size() || !is_ideal(a, i) {
        return Err(Error::InvalidIdeal("not an ideal of this algebra".into()));
    }
    let n = a.size();
    let mut class = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for y in x..n {
            if i.contains(a.dist(&x, &y)) {
                class[y] = id;
            }
        }
    }
    let k = reps.len();
    let neg = reps.iter().map(|&x| class[a.not(x)]).collect();
    let plus = reps.iter().map(|&x| reps.iter().map(|&y| class[a.add(x, y)]).collect()).collect();
    let q = Arc::new(FiniteAlgebra::from_tables(k, class[a.zero()], neg, plus)?);
    let projection = FiniteMorphism::new(a.clone(), q.clone(), class)?;
    Ok(FiniteQuotient { algebra: q, projection })
}

pub fn quotient(a: &Algebra, i: &IdealDesc) -> Result<(Algebra, Morphism)> {
    match (a, i) {
        (Algebra::Finite(f), IdealDesc::Finite(s)) => {
            let q = quotient_finite(f, s)?;
            Ok((Algebra::Finite(q.algebra), Morphism::Finite(q.projection)))
        }
        (Algebra::Symbolic(s), IdealDesc::Symbolic(m)) => {
            let p = SymMorphism::quotient(s, m)?;
            Ok((Algebra::Symbolic(p.cod().clone()), Morphism::Symbolic(p)))
        }
        _ => Err(Error::MixedRegimes("quotient".into())),
    }
}

/// Three independent characterisations of the radical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RadicalMethod {
    /// Intersection of the maximal ideals.
    Maximal,
    /// Zero together with the elements whose multiples all stay below their
    /// negation.
    Infinitesimal,
    /// Join of the nilpotent ideals.
    Nilpotent,
}

impl RadicalMethod {
    pub const ALL: [RadicalMethod; 3] = [RadicalMethod::Maximal, RadicalMethod::Infinitesimal, RadicalMethod::Nilpotent];

    pub fn name(self) -> &'static str {
        match self {
            RadicalMethod::Maximal => "maximal",
            RadicalMethod::Infinitesimal => "infinitesimal",
            RadicalMethod::Nilpotent => "nilpotent",
        }
    }
}

pub fn maximal_ideals_finite(a: &FiniteAlgebra) -> Vec<ElemSet> {
    let proper: Vec<ElemSet> = all_ideals_finite(a).into_iter().filter(|s| !s.is_full()).collect();
    proper
        .iter()
        .filter(|s| !proper.iter().any(|t| t != *s && s.is_subset(t)))
        .cloned()
        .collect()
}

pub fn maximal_ideals(a: &Algebra) -> Vec<IdealDesc> {
    match a {
        Algebra::Finite(f) => maximal_ideals_finite(f).into_iter().map(IdealDesc::Finite).collect(),
        Algebra::Symbolic(s) => Markers::maximal(s).into_iter().map(IdealDesc::Symbolic).collect(),
    }
}

fn is_infinitesimal<A: MvAlgebra>(a: &A, x: &A::Elem, max_n: Option<u32>) -> bool {
    if a.is_zero(x) {
        return true;
    }
    let bound = a.neg(x);
    let mut acc = x.clone();
    let mut n = 1;
    loop {
        if !a.leq(&acc, &bound) {
            return false;
        }
        let next = a.plus(&acc, x);
        if next == acc || max_n.is_some_and(|m| n >= m) {
            return true;
        }
        acc = next;
        n += 1;
    }
}

pub fn is_nilpotent_finite(a: &FiniteAlgebra, i: &ElemSet) -> bool {
    i.ones().all(|x| i.ones().all(|y| a.odot(&x, &y) == a.zero()))
}

/// `x ⊙ y = 0` throughout the ideal. Every pair lies below some `n·g` for the
/// generator `g`, and `⊙` is monotone, so it suffices to test `(n·g)⊙(n·g)`.
pub fn is_nilpotent_symbolic(a: &SymbolicAlgebra, i: &Markers) -> bool {
    let g = i.generator(a);
    (1..=8).all(|n| {
        let ng = a.times(n, &g);
        a.is_zero(&a.odot(&ng, &ng))
    })
}

pub fn radical_finite(a: &FiniteAlgebra, method: RadicalMethod) -> ElemSet {
    match method {
        RadicalMethod::Maximal => maximal_ideals_finite(a).into_iter().fold(a.full_set(), |mut acc, m| {
            acc.intersect_with(&m);
            acc
        }),
        RadicalMethod::Infinitesimal => elem_set(a.size(), (0..a.size()).filter(|x| is_infinitesimal(a, x, None))),
        RadicalMethod::Nilpotent => {
            let gens: Vec<usize> = all_ideals_finite(a)
                .into_iter()
                .filter(|i| is_nilpotent_finite(a, i))
                .flat_map(|i| i.ones().collect::<Vec<_>>())
                .collect();
            generated_ideal(a, &gens).expect("the zero ideal is always nilpotent")
        }
    }
}

pub fn radical_symbolic(a: &SymbolicAlgebra, method: RadicalMethod) -> Markers {
    match method {
        RadicalMethod::Maximal => Markers::maximal(a).iter().fold(Markers::full(a), |acc, m| acc.meet(m)),
        RadicalMethod::Infinitesimal => {
            // Test the predicate on the atoms of each block: the unit step of the
            // integer part and each pure infinitesimal.
            let markers = a
                .blocks()
                .iter()
                .enumerate()
                .map(|(i, blk)| {
                    let mut step = a.zero();
                    step.0[i].a = 1;
                    if is_infinitesimal(a, &step, Some(64)) {
                        return Marker::Full;
                    }
                    let coords = (0..blk.rank())
                        .filter(|&j| {
                            let mut e = a.zero();
                            e.0[i].b[j] = 1;
                            is_infinitesimal(a, &e, Some(64))
                        })
                        .collect();
                    Marker::sub(coords)
                })
                .collect();
            Markers(markers)
        }
        RadicalMethod::Nilpotent => Markers::all(a)
            .into_iter()
            .filter(|i| is_nilpotent_symbolic(a, i))
            .fold(Markers::zero(a), |acc, i| acc.join(&i)),
    }
}

pub fn radical(a: &Algebra, method: RadicalMethod) -> IdealDesc {
    match a {
        Algebra::Finite(f) => IdealDesc::Finite(radical_finite(f, method)),
        Algebra::Symbolic(s) => IdealDesc::Symbolic(radical_symbolic(s, method)),
    }
}

/// Membership in the radical by the infinitesimal predicate.
pub fn is_radical_element<A: MvAlgebra>(a: &A, x: &A::Elem) -> bool {
    is_infinitesimal(a, x, Some(256))
}

/// `I ∨ J = {i ⊕ j}`.
pub fn ideal_join(a: &Algebra, i: &IdealDesc, j: &IdealDesc) -> Result<IdealDesc> {
    match (a, i, j) {
        (Algebra::Finite(f), IdealDesc::Finite(x), IdealDesc::Finite(y)) => Ok(IdealDesc::Finite(elem_set(
            f.size(),
            x.ones().flat_map(|u| y.ones().map(move |v| f.add(u, v))).collect::<Vec<_>>(),
        ))),
        (Algebra::Symbolic(_), IdealDesc::Symbolic(x), IdealDesc::Symbolic(y)) => Ok(IdealDesc::Symbolic(x.join(y))),
        _ => Err(Error::MixedRegimes("join of ideals".into())),
    }
}

/// `f⁻¹(J)`.
pub fn preimage_ideal(f: &Morphism, j: &IdealDesc) -> Result<IdealDesc> {
    match (f, j) {
        (Morphism::Finite(f), IdealDesc::Finite(s)) => Ok(IdealDesc::Finite(f.preimage(s))),
        (Morphism::Symbolic(f), IdealDesc::Symbolic(m)) => Ok(IdealDesc::Symbolic(f.preimage(m)?)),
        _ => Err(Error::MixedRegimes("preimage of an ideal".into())),
    }
}

/// `f(I)`, an ideal when `f` is surjective.
pub fn image_ideal(f: &Morphism, i: &IdealDesc) -> Result<IdealDesc> {
    match (f, i) {
        (Morphism::Finite(f), IdealDesc::Finite(s)) => {
            if !f.is_surjective() {
                return Err(Error::Precondition("image of an ideal along a non-surjective map".into()));
            }
            Ok(IdealDesc::Finite(f.image_of(s)))
        }
        (Morphism::Symbolic(f), IdealDesc::Symbolic(m)) => Ok(IdealDesc::Symbolic(f.image(m)?)),
        _ => Err(Error::MixedRegimes("image of an ideal".into())),
    }
}

/// For `x ≤ y ⊕ z`, the pieces `y₁ = x ∧ y ≤ y` and `z₁ = x ⊖ y₁ ≤ z` with
/// `x = y₁ ⊕ z₁`.
pub fn riesz_split<A: MvAlgebra>(a: &A, x: &A::Elem, y: &A::Elem, z: &A::Elem) -> Result<(A::Elem, A::Elem)> {
    for e in [x, y, z] {
        if !a.contains(e) {
            return Err(Error::NotInCarrier(format!("{e:?}")));
        }
    }
    if !a.leq(x, &a.plus(y, z)) {
        return Err(Error::Precondition("x is not below y + z".into()));
    }
    let y1 = a.meet(x, y);
    let z1 = a.ominus(x, &y1);
    Ok((y1, z1))
}

/// `{x : x ∧ s = 0 for every s ∈ S}`.
pub fn polar_finite(a: &FiniteAlgebra, s: &ElemSet) -> ElemSet {
    elem_set(a.size(), (0..a.size()).filter(|x| s.ones().all(|y| a.is_zero(&a.meet(x, &y)))))
}

/// Polar of an ideal.
pub fn polar(a: &Algebra, i: &IdealDesc) -> Result<IdealDesc> {
    match (a, i) {
        (Algebra::Finite(f), IdealDesc::Finite(s)) => Ok(IdealDesc::Finite(polar_finite(f, s))),
        (Algebra::Symbolic(s), IdealDesc::Symbolic(m)) => Ok(IdealDesc::Symbolic(m.polar(s))),
        _ => Err(Error::MixedRegimes("polar".into())),
    }
}

/// Contains 1, closed under `⊙`, upward closed.
pub fn is_filter(a: &FiniteAlgebra, f: &ElemSet) -> bool {
    f.contains(a.not(a.zero()))
        && f.ones().all(|x| f.ones().all(|y| f.contains(a.odot(&x, &y))))
        && f.ones().all(|x| (0..a.size()).all(|y| !a.leq(&x, &y) || f.contains(y)))
}

/// Membership of a symbolic element in an ideal.
pub fn symbolic_member(a: &SymbolicAlgebra, i: &Markers, x: &SymElem) -> bool {
    i.contains(a, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(blocks: &[u32]) -> Arc<FiniteAlgebra> {
        let parts: Vec<SymbolicAlgebra> = blocks.iter().map(|&m| SymbolicAlgebra::chain(m)).collect();
        let refs: Vec<&SymbolicAlgebra> = parts.iter().collect();
        Arc::new(SymbolicAlgebra::product(&refs).to_finite().unwrap())
    }

    /// All subsets passing the definition.
    fn brute_force_ideals(a: &FiniteAlgebra) -> Vec<ElemSet> {
        let n = a.size();
        let mut out: Vec<ElemSet> = (0u32..1 << n)
            .map(|mask| elem_set(n, (0..n).filter(|i| mask >> i & 1 == 1)))
            .filter(|s| is_ideal(a, s))
            .collect();
        out.sort_by_key(|s| (s.count_ones(..), s.ones().collect::<Vec<_>>()));
        out
    }

    #[test]
    fn ideals_match_subset_enumeration() {
        for blocks in [&[][..], &[1], &[3], &[1, 1], &[2, 1], &[1, 1, 1], &[3, 2], &[5, 1]] {
            let a = fin(blocks);
            assert_eq!(all_ideals_finite(&a), brute_force_ideals(&a), "{blocks:?}");
        }
    }

    #[test]
    fn ideal_examples() {
        // Canonical order puts Chain(2) before Chain(1).
        let a = fin(&[2, 1]);
        assert_eq!(all_ideals_finite(&a).len(), 4);
        assert!(!is_ideal(&fin(&[3]), &elem_set(4, [0, 1])));
        assert_eq!(generated_ideal(&fin(&[3]), &[1]).unwrap(), fin(&[3]).full_set());
        // (0 in Chain(1), 1 in Chain(2)) is index 1*2 + 0.
        let g = generated_ideal(&a, &[2]).unwrap();
        assert_eq!(g.ones().collect::<Vec<_>>(), vec![0, 2, 4]);
        assert_eq!(generated_ideal(&a, &[]), Err(Error::EmptyGenerators));
    }

    #[test]
    fn quotient_by_one_factor() {
        let a = fin(&[2, 1]);
        // Kill the Chain(1) factor: keep Chain(2).
        let i = elem_set(6, [0, 1]);
        let q = quotient_finite(&a, &i).unwrap();
        assert!(crate::homs::find_isomorphism(&q.algebra, &fin(&[2])).is_some());
        assert!(quotient_finite(&a, &elem_set(6, [0, 2])).is_err());
    }

    #[test]
    fn symbolic_quotient_examples() {
        let k = SymbolicAlgebra::komori(2, 1).unwrap();
        let (q, _) = quotient(&Algebra::Symbolic(k), &IdealDesc::Symbolic(Markers(vec![Marker::Sub(vec![0])]))).unwrap();
        assert_eq!(q, Algebra::Symbolic(SymbolicAlgebra::chain(2)));
        let eta = SymMorphism::eta(&SymbolicAlgebra::komori(1, 1).unwrap());
        assert_eq!(eta.kernel(), Markers(vec![Marker::Sub(vec![0])]));
    }

    #[test]
    fn maximal_ideal_counts() {
        assert_eq!(maximal_ideals_finite(&fin(&[2, 1])).len(), 2);
        let c5 = fin(&[5]);
        assert_eq!(maximal_ideals_finite(&c5), vec![c5.zero_set()]);
    }

    #[test]
    fn radical_methods_agree_on_small_tables() {
        for blocks in [&[][..], &[1], &[4], &[2, 1], &[1, 1, 1]] {
            let a = fin(blocks);
            let r: Vec<ElemSet> = RadicalMethod::ALL.iter().map(|&m| radical_finite(&a, m)).collect();
            assert!(r.iter().all(|x| *x == r[0]));
            let expected = if a.size() == 1 { a.full_set() } else { a.zero_set() };
            assert_eq!(r[0], expected);
        }
    }

    #[test]
    fn radical_methods_agree_symbolically() {
        let a = SymbolicAlgebra::product(&[
            &SymbolicAlgebra::komori(2, 2).unwrap(),
            &SymbolicAlgebra::komori(1, 1).unwrap(),
            &SymbolicAlgebra::chain(3),
        ]);
        for m in RadicalMethod::ALL {
            assert_eq!(radical_symbolic(&a, m), Markers::radical(&a), "{}", m.name());
        }
        for m in RadicalMethod::ALL {
            assert!(radical_symbolic(&SymbolicAlgebra::terminal(), m).is_full());
        }
    }

    #[test]
    fn riesz_examples() {
        let c3 = SymbolicAlgebra::chain(3);
        let e = |v| SymElem::chain(&[v]);
        assert_eq!(riesz_split(&c3, &e(2), &e(1), &e(2)).unwrap(), (e(1), e(1)));
        let k = SymbolicAlgebra::komori(1, 1).unwrap();
        let kk = |a, b| SymElem(vec![crate::symbolic::BlockElem::komori(a, &[b])]);
        assert_eq!(riesz_split(&k, &kk(0, 3), &kk(0, 2), &kk(0, 2)).unwrap(), (kk(0, 2), kk(0, 1)));
        assert!(matches!(riesz_split(&c3, &e(3), &e(1), &e(1)), Err(Error::Precondition(_))));
    }

    #[test]
    fn polar_and_filter_examples() {
        let a = fin(&[1, 1]);
        // (1, 0) is index 2; its polar is {0} x {0, 1} = {0, 1}.
        assert_eq!(polar_finite(&a, &elem_set(4, [2])).ones().collect::<Vec<_>>(), vec![0, 1]);
        for i in all_ideals_finite(&a) {
            assert!(is_filter(&a, &a.neg_set(&i)));
        }
    }

    #[test]
    fn nilpotency_examples() {
        let c2 = fin(&[2]);
        assert!(!is_nilpotent_finite(&c2, &c2.full_set()));
        let k = SymbolicAlgebra::komori(1, 1).unwrap();
        assert!(is_nilpotent_symbolic(&k, &Markers::radical(&k)));
        assert!(!is_nilpotent_symbolic(&k, &Markers::full(&k)));
    }
}
