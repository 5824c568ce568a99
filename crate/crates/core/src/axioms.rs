//! Law checking: the defining axioms, their first consequences, and the
//! lattice laws, either exhaustively or on seeded samples.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, MvAlgebra};
use crate::error::{Error, Result};

/// How tuples of elements are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sample { count: usize, bound: i64, seed: u64 },
}

impl Mode {
    pub fn sample(count: usize, bound: i64, seed: u64) -> Self {
        Mode::Sample { count, bound, seed }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Sample { .. } => "sample",
        }
    }
}

/// All `arity`-tuples over the carrier, or `count` seeded random tuples in
/// which roughly one coordinate in eight is a forced boundary element.
pub fn tuples<A: MvAlgebra>(a: &A, mode: Mode, arity: usize) -> Result<Box<dyn Iterator<Item = Vec<A::Elem>> + '_>> {
    match mode {
        Mode::Exhaustive => {
            let elems = a.elements().ok_or(Error::InfiniteCarrier)?;
            let n = elems.len();
            let total = n.checked_pow(arity as u32).ok_or(Error::InfiniteCarrier)?;
            Ok(Box::new((0..total).map(move |mut code| {
                let mut t = Vec::with_capacity(arity);
                for _ in 0..arity {
                    t.push(elems[code % n].clone());
                    code /= n;
                }
                t.reverse();
                t
            })))
        }
        Mode::Sample { count, bound, seed } => {
            let forced = a.forced_elements();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok(Box::new((0..count).map(move |_| {
                (0..arity)
                    .map(|_| {
                        if rng.gen_ratio(1, 8) {
                            forced[rng.gen_range(0..forced.len())].clone()
                        } else {
                            a.random_element(&mut rng, bound)
                        }
                    })
                    .collect()
            })))
        }
    }
}

/// Outcome of checking one law.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawResult {
    pub name: String,
    pub passed: bool,
    pub checked: u64,
    pub witness: Option<Vec<Element>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub mode: String,
    pub laws: Vec<LawResult>,
}

impl LawReport {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.name == name)
    }
}

type Law<A> = (&'static str, usize, fn(&A, &[<A as MvAlgebra>::Elem]) -> bool);

pub(crate) fn run_laws<A: MvAlgebra>(a: &A, mode: Mode, laws: &[Law<A>]) -> Result<LawReport> {
    let mut out = Vec::with_capacity(laws.len());
    for (name, arity, law) in laws {
        let mut checked = 0u64;
        let mut witness = None;
        for t in tuples(a, mode, *arity)? {
            checked += 1;
            if !law(a, &t) {
                witness = Some(t.iter().map(|x| a.to_element(x)).collect());
                break;
            }
        }
        out.push(LawResult { name: (*name).to_string(), passed: witness.is_none(), checked, witness });
    }
    Ok(LawReport { mode: mode.name().to_string(), laws: out })
}

fn axiom_laws<A: MvAlgebra>() -> Vec<Law<A>> {
    vec![
        ("M1 associativity", 3, |a, t| {
            a.plus(&t[0], &a.plus(&t[1], &t[2])) == a.plus(&a.plus(&t[0], &t[1]), &t[2])
        }),
        ("M2 commutativity", 2, |a, t| a.plus(&t[0], &t[1]) == a.plus(&t[1], &t[0])),
        ("M3 zero is neutral", 1, |a, t| a.plus(&t[0], &a.zero()) == t[0]),
        ("M4 involution", 1, |a, t| a.neg(&a.neg(&t[0])) == t[0]),
        ("M5 one is absorbing", 1, |a, t| a.plus(&t[0], &a.neg(&a.zero())) == a.neg(&a.zero())),
        ("M6 symmetric join", 2, |a, t| {
            let (x, y) = (&t[0], &t[1]);
            a.plus(&a.neg(&a.plus(&a.neg(x), y)), y) == a.plus(&a.neg(&a.plus(&a.neg(y), x)), x)
        }),
        ("D1 not one is zero", 1, |a, _| a.neg(&a.one()) == a.zero()),
        ("D2 de Morgan", 2, |a, t| a.plus(&t[0], &t[1]) == a.neg(&a.odot(&a.neg(&t[0]), &a.neg(&t[1])))),
        ("D3 x plus one", 1, |a, t| a.plus(&t[0], &a.one()) == a.one()),
        ("D4 difference join", 2, |a, t| {
            a.plus(&a.ominus(&t[0], &t[1]), &t[1]) == a.plus(&a.ominus(&t[1], &t[0]), &t[0])
        }),
        ("D5 excluded middle", 1, |a, t| a.plus(&a.neg(&t[0]), &t[0]) == a.one()),
        ("D6 distance separates", 2, |a, t| a.is_zero(&a.dist(&t[0], &t[1])) == (t[0] == t[1])),
    ]
}

fn lattice_laws<A: MvAlgebra>() -> Vec<Law<A>> {
    vec![
        ("order reflexive", 1, |a, t| a.leq(&t[0], &t[0])),
        ("order antisymmetric", 2, |a, t| !(a.leq(&t[0], &t[1]) && a.leq(&t[1], &t[0])) || t[0] == t[1]),
        ("order transitive", 3, |a, t| {
            !(a.leq(&t[0], &t[1]) && a.leq(&t[1], &t[2])) || a.leq(&t[0], &t[2])
        }),
        ("join is least upper bound", 3, |a, t| {
            let j = a.join(&t[0], &t[1]);
            a.leq(&t[0], &j) && a.leq(&t[1], &j) && (!(a.leq(&t[0], &t[2]) && a.leq(&t[1], &t[2])) || a.leq(&j, &t[2]))
        }),
        ("meet is greatest lower bound", 3, |a, t| {
            let m = a.meet(&t[0], &t[1]);
            a.leq(&m, &t[0]) && a.leq(&m, &t[1]) && (!(a.leq(&t[2], &t[0]) && a.leq(&t[2], &t[1])) || a.leq(&t[2], &m))
        }),
        ("lattice distributive", 3, |a, t| {
            a.meet(&t[0], &a.join(&t[1], &t[2])) == a.join(&a.meet(&t[0], &t[1]), &a.meet(&t[0], &t[2]))
        }),
        ("odot over join", 3, |a, t| {
            a.odot(&t[0], &a.join(&t[1], &t[2])) == a.join(&a.odot(&t[0], &t[1]), &a.odot(&t[0], &t[2]))
        }),
        ("plus over meet", 3, |a, t| {
            a.plus(&t[0], &a.meet(&t[1], &t[2])) == a.meet(&a.plus(&t[0], &t[1]), &a.plus(&t[0], &t[2]))
        }),
        ("odot over meet", 3, |a, t| {
            a.odot(&t[0], &a.meet(&t[1], &t[2])) == a.meet(&a.odot(&t[0], &t[1]), &a.odot(&t[0], &t[2]))
        }),
        ("plus over join", 3, |a, t| {
            a.plus(&t[0], &a.join(&t[1], &t[2])) == a.join(&a.plus(&t[0], &t[1]), &a.plus(&t[0], &t[2]))
        }),
        ("plus monotone", 3, |a, t| !a.leq(&t[0], &t[1]) || a.leq(&a.plus(&t[0], &t[2]), &a.plus(&t[1], &t[2]))),
    ]
}

/// The six axioms and six derived identities.
pub fn check_axioms<A: MvAlgebra>(a: &A, mode: Mode) -> Result<LawReport> {
    run_laws(a, mode, &axiom_laws::<A>())
}

/// Partial-order, lattice and distributivity laws of the derived structure.
pub fn check_lattice_laws<A: MvAlgebra>(a: &A, mode: Mode) -> Result<LawReport> {
    run_laws(a, mode, &lattice_laws::<A>())
}
