//! Homomorphism enumeration between finite algebras, and isomorphism tests.
//!
//! The search assigns images to generators one at a time and propagates each
//! choice through the subalgebra generated by the assigned elements, so a
//! branch fails as soon as two forced values disagree.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::Result;
use crate::finite::{FiniteAlgebra, FiniteMorphism};

const UNSET: usize = usize::MAX;

struct Search<'a> {
    a: &'a FiniteAlgebra,
    b: &'a FiniteAlgebra,
    injective: bool,
    img: Vec<usize>,
    used: Vec<bool>,
    assigned: Vec<usize>,
}

impl Search<'_> {
    /// Assign `x ↦ y` and close under the operations; on conflict, undo and
    /// report failure.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let mark = self.assigned.len();
        let mut work = vec![(x, y)];
        while let Some((u, v)) = work.pop() {
            if self.img[u] != UNSET {
                if self.img[u] != v {
                    self.undo(mark);
                    return false;
                }
                continue;
            }
            if self.injective && self.used[v] {
                self.undo(mark);
                return false;
            }
            self.img[u] = v;
            self.used[v] = true;
            self.assigned.push(u);
            work.push((self.a.not(u), self.b.not(v)));
            for &w in &self.assigned {
                work.push((self.a.add(u, w), self.b.add(v, self.img[w])));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for u in self.assigned.drain(mark..) {
            self.used[self.img[u]] = false;
            self.img[u] = UNSET;
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) -> ControlFlow<()> {
        let Some(x) = self.img.iter().position(|&v| v == UNSET) else {
            return visit(&self.img);
        };
        for y in 0..self.b.size() {
            let mark = self.assigned.len();
            if self.assign(x, y) {
                let flow = self.run(visit);
                self.undo(mark);
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Visit every homomorphism `a → b` (every injective one if `injective`), in
/// lexicographic order of the image tables.
pub fn for_each_hom(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    injective: bool,
    mut visit: impl FnMut(&[usize]) -> ControlFlow<()>,
) {
    let mut s = Search {
        a,
        b,
        injective,
        img: vec![UNSET; a.size()],
        used: vec![false; b.size()],
        assigned: Vec::new(),
    };
    use crate::algebra::MvAlgebra;
    if s.assign(a.zero(), b.zero()) {
        let _ = s.run(&mut visit);
    }
}

pub fn enumerate_homs(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> Vec<FiniteMorphism> {
    let mut out = Vec::new();
    for_each_hom(a, b, false, |m| {
        out.push(FiniteMorphism { dom: a.clone(), cod: b.clone(), map: m.to_vec() });
        ControlFlow::Continue(())
    });
    out
}

pub fn count_homs(a: &FiniteAlgebra, b: &FiniteAlgebra) -> usize {
    let mut n = 0;
    for_each_hom(a, b, false, |_| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

/// An isomorphism `a → b`, if one exists.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let mut found = None;
    for_each_hom(a, b, true, |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    });
    found
}

/// Isomorphism across regimes: symbolic algebras compare by canonical form,
/// finite ones by search, and a chain product against a table by search on
/// its tables.
pub fn are_isomorphic(a: &Algebra, b: &Algebra) -> Result<bool> {
    Ok(match (a, b) {
        (Algebra::Symbolic(x), Algebra::Symbolic(y)) => x == y,
        (Algebra::Finite(x), Algebra::Finite(y)) => find_isomorphism(x, y).is_some(),
        (Algebra::Symbolic(s), Algebra::Finite(f)) | (Algebra::Finite(f), Algebra::Symbolic(s)) => {
            s.is_chain_product() && find_isomorphism(&s.to_finite()?, f).is_some()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MvAlgebra;
    use crate::symbolic::SymbolicAlgebra;

    fn fin(blocks: &[u32]) -> Arc<FiniteAlgebra> {
        let parts: Vec<SymbolicAlgebra> = blocks.iter().map(|&m| SymbolicAlgebra::chain(m)).collect();
        let refs: Vec<&SymbolicAlgebra> = parts.iter().collect();
        Arc::new(SymbolicAlgebra::product(&refs).to_finite().unwrap())
    }

    /// Every map, filtered by the homomorphism laws.
    fn brute_force_homs(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Vec<Vec<usize>> {
        let (n, m) = (a.size(), b.size());
        let mut out = Vec::new();
        for code in 0..m.pow(n as u32) {
            let map: Vec<usize> = (0..n).map(|i| code / m.pow(i as u32) % m).collect();
            let ok = map[a.zero()] == b.zero()
                && (0..n).all(|x| map[a.neg(&x)] == b.neg(&map[x]))
                && (0..n).all(|x| (0..n).all(|y| map[a.plus(&x, &y)] == b.plus(&map[x], &map[y])));
            if ok {
                out.push(map);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn hom_counts_between_small_chains() {
        assert_eq!(count_homs(&fin(&[1]), &fin(&[2])), 1);
        assert_eq!(count_homs(&fin(&[2]), &fin(&[1])), 0);
        for a in [fin(&[3]), fin(&[1, 1]), fin(&[2, 1])] {
            assert_eq!(count_homs(&a, &FiniteAlgebra::terminal()), 1);
        }
    }

    #[test]
    fn search_matches_brute_force() {
        let algebras = [fin(&[]), fin(&[1]), fin(&[2]), fin(&[3]), fin(&[1, 1]), fin(&[4]), fin(&[2, 1])];
        for a in &algebras {
            for b in &algebras {
                if b.size().pow(a.size() as u32) > 200_000 {
                    continue;
                }
                let mut got: Vec<Vec<usize>> = enumerate_homs(a, b).into_iter().map(|f| f.map).collect();
                got.sort();
                assert_eq!(got, brute_force_homs(a, b), "{} -> {}", a.size(), b.size());
            }
        }
    }

    #[test]
    fn chain_three_is_not_the_four_element_boolean_algebra() {
        assert!(find_isomorphism(&fin(&[3]), &fin(&[1, 1])).is_none());
        assert!(find_isomorphism(&fin(&[2, 1]), &fin(&[2, 1])).is_some());
        let a = Algebra::Symbolic(SymbolicAlgebra::chain(3));
        let b = Algebra::Finite(fin(&[1, 1]));
        assert!(!are_isomorphic(&a, &b).unwrap());
    }
}
