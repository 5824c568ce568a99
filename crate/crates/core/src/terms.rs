//! Term identities and the kernel-restriction lemma for squares.
//!
//! Protomodularity terms: `t₁(x, y) = x ⊖ y`, `t₂(x, y) = x ⊕ ¬y`,
//! `t(x, y, z) = x ⊕ (y ⊙ z)`, with `t(t₁(x, y), t₂(x, y), y) = x`.
//!
//! Pixley term: `r = p ∧ s` with `p(x, y, z) = ((x → y) → z) ∧ ((z → y) → x)`
//! and `s(x, y, z) = (y → (x ∧ z)) ∧ (x ∨ z)`. The meet with `x ⊕ (y ⊙ z)`
//! in place of `s` already fails `r(x, x, z) = z` at `x = 0`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::MvAlgebra;
use crate::axioms::{tuples, Mode};
use crate::catalog::catalog;
use crate::error::Result;
use crate::finite::{FiniteAlgebra, FiniteMorphism, Pullback};
use crate::homs::enumerate_homs;
use crate::ideals::{all_ideals_finite, quotient_finite};
use crate::morphism::Morphism;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermReport {
    pub identity: String,
    pub mode: String,
    pub tuples_checked: u64,
    pub passed: bool,
    pub witness: Option<Vec<crate::algebra::Element>>,
}

pub fn t1<A: MvAlgebra>(a: &A, x: &A::Elem, y: &A::Elem) -> A::Elem {
    a.ominus(x, y)
}

pub fn t2<A: MvAlgebra>(a: &A, x: &A::Elem, y: &A::Elem) -> A::Elem {
    a.plus(x, &a.neg(y))
}

pub fn t<A: MvAlgebra>(a: &A, x: &A::Elem, y: &A::Elem, z: &A::Elem) -> A::Elem {
    a.plus(x, &a.odot(y, z))
}

pub fn pixley_p<A: MvAlgebra>(a: &A, x: &A::Elem, y: &A::Elem, z: &A::Elem) -> A::Elem {
    a.meet(&a.arrow(&a.arrow(x, y), z), &a.arrow(&a.arrow(z, y), x))
}

pub fn pixley_s<A: MvAlgebra>(a: &A, x: &A::Elem, y: &A::Elem, z: &A::Elem) -> A::Elem {
    a.meet(&a.arrow(y, &a.meet(x, z)), &a.join(x, z))
}

pub fn pixley_r<A: MvAlgebra>(a: &A, x: &A::Elem, y: &A::Elem, z: &A::Elem) -> A::Elem {
    a.meet(&pixley_p(a, x, y, z), &pixley_s(a, x, y, z))
}

type Identity<A> = (&'static str, usize, fn(&A, &[<A as MvAlgebra>::Elem]) -> bool);

fn run<A: MvAlgebra>(a: &A, mode: Mode, identities: &[Identity<A>]) -> Result<Vec<TermReport>> {
    let mut out = Vec::new();
    for &(name, arity, holds) in identities {
        let mut checked = 0;
        let mut witness = None;
        for tup in tuples(a, mode, arity)? {
            checked += 1;
            if !holds(a, &tup) {
                witness = Some(tup.iter().map(|x| a.to_element(x)).collect());
                break;
            }
        }
        out.push(TermReport {
            identity: name.to_string(),
            mode: mode.name().to_string(),
            tuples_checked: checked,
            passed: witness.is_none(),
            witness,
        });
    }
    Ok(out)
}

pub fn verify_protomodularity<A: MvAlgebra>(a: &A, mode: Mode) -> Result<Vec<TermReport>> {
    let ids: [Identity<A>; 3] = [
        ("t1(x,x) = 0", 1, |a, v| a.is_zero(&t1(a, &v[0], &v[0]))),
        ("t2(x,x) = 1", 1, |a, v| t2(a, &v[0], &v[0]) == a.one()),
        ("t(t1(x,y),t2(x,y),y) = x", 2, |a, v| t(a, &t1(a, &v[0], &v[1]), &t2(a, &v[0], &v[1]), &v[1]) == v[0]),
    ];
    run(a, mode, &ids)
}

pub fn verify_pixley<A: MvAlgebra>(a: &A, mode: Mode) -> Result<Vec<TermReport>> {
    let ids: [Identity<A>; 3] = [
        ("r(x,x,z) = z", 2, |a, v| pixley_r(a, &v[0], &v[0], &v[1]) == v[1]),
        ("r(x,y,y) = x", 2, |a, v| pixley_r(a, &v[0], &v[1], &v[1]) == v[0]),
        ("r(x,y,x) = x", 2, |a, v| pixley_r(a, &v[0], &v[1], &v[0]) == v[0]),
    ];
    run(a, mode, &ids)
}

/// Both families of identities.
pub fn verify_terms<A: MvAlgebra>(a: &A, mode: Mode) -> Result<Vec<TermReport>> {
    let mut out = verify_protomodularity(a, mode)?;
    out.extend(verify_pixley(a, mode)?);
    Ok(out)
}

/// A commuting square `k ∘ f = g ∘ h` with `f: A ↠ B`, `g: C ↠ D`,
/// `h: A → C` and `k: B → D`.
#[derive(Debug, Clone)]
pub struct LemmaSquare {
    pub f: FiniteMorphism,
    pub h: FiniteMorphism,
    pub k: FiniteMorphism,
    pub g: FiniteMorphism,
}

/// The two sides of the lemma for one square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub restriction_injective: bool,
    pub restriction_surjective: bool,
    pub comparison_injective: bool,
    pub comparison_surjective: bool,
}

impl LemmaCheck {
    pub fn consistent(&self) -> bool {
        self.restriction_injective == self.comparison_injective && self.restriction_surjective == self.comparison_surjective
    }

    pub fn is_pullback(&self) -> bool {
        self.comparison_injective && self.comparison_surjective
    }
}

pub fn check_lemma_square(sq: &LemmaSquare) -> Result<LemmaCheck> {
    let (ker_f, ker_g) = (sq.f.kernel(), sq.g.kernel());
    let image: Vec<usize> = ker_f.ones().map(|x| sq.h.at(x)).collect();
    let mut distinct = image.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let restriction_injective = distinct.len() == image.len();
    let restriction_surjective = ker_g.ones().eq(distinct.iter().copied());
    let pb = Pullback::new(&sq.g, &sq.k)?;
    let phi = pb.comparison(&sq.h, &sq.f)?;
    Ok(LemmaCheck {
        restriction_injective,
        restriction_surjective,
        comparison_injective: phi.is_injective(),
        comparison_surjective: phi.is_surjective(),
    })
}

/// Squares over the catalog up to `max_size`: `f` and `g` range over the
/// quotient maps of `A` and `C`, `h` over every homomorphism `A → C`, and
/// `k` is induced whenever `g ∘ h` kills `ker f`.
pub fn lemma_squares(max_size: usize) -> Vec<LemmaSquare> {
    let algebras: Vec<Arc<FiniteAlgebra>> = catalog(max_size).into_iter().map(|e| e.finite).collect();
    let quotients: Vec<Vec<FiniteMorphism>> = algebras
        .iter()
        .map(|a| all_ideals_finite(a).iter().map(|i| quotient_finite(a, i).expect("ideal").projection).collect())
        .collect();
    let mut out = Vec::new();
    for (ai, a) in algebras.iter().enumerate() {
        for (ci, c) in algebras.iter().enumerate() {
            for h in enumerate_homs(a, c) {
                for f in &quotients[ai] {
                    for g in &quotients[ci] {
                        let gh = g.after(&h).expect("composable");
                        let k = Morphism::induced(&Morphism::Finite(f.clone()), &Morphism::Finite(gh));
                        if let Ok(Morphism::Finite(k)) = k {
                            out.push(LemmaSquare { f: f.clone(), h: h.clone(), k, g: g.clone() });
                        }
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub squares: usize,
    /// Squares whose restriction is not bijective.
    pub negatives: usize,
    pub pullbacks: usize,
    pub violations: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn pullback_lemma_harness(max_size: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::default();
    for sq in lemma_squares(max_size) {
        let c = check_lemma_square(&sq)?;
        report.squares += 1;
        if !(c.restriction_injective && c.restriction_surjective) {
            report.negatives += 1;
        }
        if c.is_pullback() {
            report.pullbacks += 1;
        }
        if !c.consistent() {
            report.violations.push(format!("f = {:?}, h = {:?}, g = {:?}: {c:?}", sq.f.map, sq.h.map, sq.g.map));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteAlgebra;
    use crate::symbolic::SymbolicAlgebra;

    fn chain(m: u32) -> FiniteAlgebra {
        SymbolicAlgebra::chain(m).to_finite().unwrap()
    }

    #[test]
    fn identities_on_small_chains() {
        let r = verify_protomodularity(&chain(3), Mode::Exhaustive).unwrap();
        assert!(r.iter().all(|t| t.passed));
        assert_eq!(r[2].tuples_checked, 16);
        let r = verify_pixley(&chain(4), Mode::Exhaustive).unwrap();
        assert!(r.iter().all(|t| t.passed));
        let p = SymbolicAlgebra::product(&[&SymbolicAlgebra::chain(2), &SymbolicAlgebra::chain(3)]).to_finite().unwrap();
        assert!(verify_pixley(&p, Mode::Exhaustive).unwrap().iter().all(|t| t.passed));
    }

    #[test]
    fn pixley_oracle_by_hand() {
        // Brute-force the three identities on a triple loop over Chain(4).
        let a = chain(4);
        for x in 0..5 {
            for y in 0..5 {
                for z in 0..5 {
                    assert_eq!(pixley_r(&a, &x, &x, &z), z);
                    assert_eq!(pixley_r(&a, &x, &y, &y), x);
                    assert_eq!(pixley_r(&a, &x, &y, &x), x);
                }
            }
        }
        // The meet with the protomodularity t does not work.
        assert_ne!(a.meet(&pixley_p(&a, &0, &0, &4), &t(&a, &0, &0, &4)), 4);
    }

    #[test]
    fn sampled_identities_on_komori() {
        let k = SymbolicAlgebra::komori(1, 1).unwrap();
        let r = verify_terms(&k, Mode::sample(10_000, 6, 1)).unwrap();
        assert!(r.iter().all(|t| t.passed), "{r:?}");
        assert!(r.iter().all(|t| t.tuples_checked == 10_000));
    }

    #[test]
    fn corrupted_table_fails() {
        let a = chain(3);
        let mut plus = a.plus_rows();
        plus[1][1] = 3;
        let bad = FiniteAlgebra::from_tables(4, 0, a.neg_table().to_vec(), plus).unwrap();
        let r = verify_terms(&bad, Mode::Exhaustive).unwrap();
        let failed: Vec<&TermReport> = r.iter().filter(|t| !t.passed).collect();
        assert!(!failed.is_empty());
        for t in failed {
            assert!(t.witness.is_some());
        }
    }

    #[test]
    fn lemma_examples() {
        let c1 = Arc::new(chain(1));
        let one = Arc::new(FiniteAlgebra::terminal());
        let id = FiniteMorphism::identity(&c1);
        let g = FiniteMorphism::new(c1.clone(), one, vec![0, 0]).unwrap();
        let sq = LemmaSquare { f: id.clone(), h: id, k: g.clone(), g };
        let c = check_lemma_square(&sq).unwrap();
        assert!(!c.restriction_surjective && !c.comparison_surjective && c.consistent());
    }

    #[test]
    fn harness_counts() {
        let r = pullback_lemma_harness(6).unwrap();
        assert!(r.passed(), "{:?}", r.violations.first());
        assert!(r.squares >= 200 && r.negatives >= 20, "{r:?}");
        assert!(r.pullbacks > 0);
    }
}
