//! JSON file formats for algebras, ideals, morphisms, squares and groups.
//!
//! Algebras: `{"blocks":[{"chain":2},{"komori":{"m":1,"r":1}}]}` or
//! `{"finite":{"size":3,"zero":0,"neg":[..],"plus":[[..],..]}}`.
//! Ideals: `{"elements":[0,3]}` or `{"markers":["zero",{"sub":[1]},"full"]}`
//! with 1-based coordinates, aligned with the canonical block order.
//! Morphisms: `{"on": A, "map": M}` where `M` names a canonical map attached
//! to `A` (`"identity"`, `"eta"`, `"epsilon_p"`, `"chi"`, `"from_initial"`,
//! `"to_terminal"`, `{"quotient": I}`, `{"projection": [1-based blocks]}`,
//! `{"table": {"cod": B, "values": [..]}}`), or one of the compound forms
//! `{"composite": [..]}`, `{"pair": [..]}`, `{"induced": {"quotient": .., "map": ..}}`,
//! `{"into_p": ..}`. The algebra under `"on"` is the domain except for
//! `epsilon_p` and `from_initial`, where it is the codomain.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, MvAlgebra};
use crate::error::{Error, Result};
use crate::finite::{elem_set, FiniteAlgebra, FiniteMorphism};
use crate::ideals::{is_ideal, quotient_finite, IdealDesc};
use crate::markers::{Marker, Markers};
use crate::morphism::{Body, Morphism, SymMorphism};
use crate::pretorsion::{chi_neg_rad, functor_p, functor_s};
use crate::symbolic::{Block, SymbolicAlgebra};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteTables {
    pub size: usize,
    pub zero: usize,
    pub neg: Vec<usize>,
    pub plus: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraFile {
    Symbolic { blocks: Vec<Block> },
    Finite { finite: FiniteTables },
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<Algebra> {
        match self {
            AlgebraFile::Symbolic { blocks } => Ok(Algebra::Symbolic(SymbolicAlgebra::new(blocks.clone())?)),
            AlgebraFile::Finite { finite: t } => {
                Ok(Algebra::finite(FiniteAlgebra::from_tables(t.size, t.zero, t.neg.clone(), t.plus.clone())?))
            }
        }
    }

    pub fn from_algebra(a: &Algebra) -> Self {
        match a {
            Algebra::Symbolic(s) => AlgebraFile::Symbolic { blocks: s.blocks().to_vec() },
            Algebra::Finite(f) => AlgebraFile::Finite {
                finite: FiniteTables { size: f.size(), zero: f.zero(), neg: f.neg_table().to_vec(), plus: f.plus_rows() },
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MarkerFile {
    Zero,
    Full,
    Sub(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealFile {
    Elements { elements: Vec<usize> },
    Markers { markers: Vec<MarkerFile> },
}

impl IdealFile {
    pub fn to_ideal(&self, a: &Algebra) -> Result<IdealDesc> {
        match (self, a) {
            (IdealFile::Elements { elements }, Algebra::Finite(f)) => {
                if let Some(x) = elements.iter().find(|&&x| x >= f.size()) {
                    return Err(Error::NotInCarrier(x.to_string()));
                }
                let s = elem_set(f.size(), elements.iter().copied());
                if !is_ideal(f, &s) {
                    return Err(Error::InvalidIdeal(format!("{elements:?} is not an ideal")));
                }
                Ok(IdealDesc::Finite(s))
            }
            (IdealFile::Markers { markers }, Algebra::Symbolic(s)) => {
                let parsed = markers
                    .iter()
                    .map(|m| match m {
                        MarkerFile::Zero => Ok(Marker::Zero),
                        MarkerFile::Full => Ok(Marker::Full),
                        MarkerFile::Sub(c) => c
                            .iter()
                            .map(|&i| i.checked_sub(1).ok_or_else(|| Error::InvalidIdeal("coordinates are 1-based".into())))
                            .collect::<Result<Vec<_>>>()
                            .map(Marker::sub),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(IdealDesc::Symbolic(Markers::new(s, parsed)?))
            }
            _ => Err(Error::MixedRegimes("ideal file does not match the algebra".into())),
        }
    }

    pub fn from_ideal(i: &IdealDesc) -> Self {
        match i {
            IdealDesc::Finite(s) => IdealFile::Elements { elements: s.ones().collect() },
            IdealDesc::Symbolic(m) => IdealFile::Markers {
                markers: m
                    .0
                    .iter()
                    .map(|mk| match mk {
                        Marker::Zero => MarkerFile::Zero,
                        Marker::Full => MarkerFile::Full,
                        Marker::Sub(c) => MarkerFile::Sub(c.iter().map(|i| i + 1).collect()),
                    })
                    .collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub cod: AlgebraFile,
    pub values: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapFile {
    Identity,
    Eta,
    EpsilonP,
    Chi,
    FromInitial,
    ToTerminal,
    Quotient(IdealFile),
    Projection(Vec<usize>),
    Table(TableFile),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedFile {
    pub quotient: Box<MorphismFile>,
    pub map: Box<MorphismFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MorphismFile {
    Named { on: AlgebraFile, map: MapFile },
    Composite { composite: Vec<MorphismFile> },
    Pair { pair: Vec<MorphismFile> },
    Induced { induced: InducedFile },
    IntoP { into_p: Box<MorphismFile> },
}

fn named_finite(a: &Arc<FiniteAlgebra>, map: &MapFile) -> Result<Morphism> {
    let alg = Algebra::Finite(a.clone());
    Ok(match map {
        MapFile::Identity => Morphism::Finite(FiniteMorphism::identity(a)),
        MapFile::Eta => functor_s(&alg).unit,
        MapFile::EpsilonP => functor_p(&alg).counit,
        MapFile::Chi => chi_neg_rad(&alg)?,
        MapFile::Quotient(i) => {
            let s = i.to_ideal(&alg)?;
            Morphism::Finite(quotient_finite(a, s.as_finite()?)?.projection)
        }
        MapFile::Table(t) => {
            let cod = t.cod.to_algebra()?;
            Morphism::Finite(FiniteMorphism::checked(a.clone(), cod.as_finite()?.clone(), t.values.clone())?)
        }
        MapFile::ToTerminal => {
            Morphism::Finite(FiniteMorphism::new(a.clone(), Arc::new(FiniteAlgebra::terminal()), vec![0; a.size()])?)
        }
        MapFile::FromInitial | MapFile::Projection(_) => {
            return Err(Error::Unsupported("this named map needs a symbolic algebra; use a table".into()))
        }
    })
}

fn named_symbolic(a: &SymbolicAlgebra, map: &MapFile) -> Result<SymMorphism> {
    Ok(match map {
        MapFile::Identity => SymMorphism::identity(a),
        MapFile::Eta => SymMorphism::eta(a),
        MapFile::EpsilonP => SymMorphism::epsilon_p(a),
        MapFile::Chi => SymMorphism::chi(a)?,
        MapFile::FromInitial => SymMorphism::from_initial(a),
        MapFile::ToTerminal => SymMorphism::to_terminal(a),
        MapFile::Quotient(i) => {
            let m = i.to_ideal(&Algebra::Symbolic(a.clone()))?;
            SymMorphism::quotient(a, m.as_symbolic()?)?
        }
        MapFile::Projection(kept) => {
            let kept = kept
                .iter()
                .map(|&i| i.checked_sub(1).ok_or_else(|| Error::Parse("block positions are 1-based".into())))
                .collect::<Result<Vec<_>>>()?;
            SymMorphism::projection(a, kept)?
        }
        MapFile::Table(_) => return Err(Error::Unsupported("tables describe finite morphisms".into())),
    })
}

impl MorphismFile {
    pub fn to_morphism(&self) -> Result<Morphism> {
        match self {
            MorphismFile::Named { on, map } => match on.to_algebra()? {
                Algebra::Finite(a) => named_finite(&a, map),
                Algebra::Symbolic(a) => Ok(Morphism::Symbolic(named_symbolic(&a, map)?)),
            },
            MorphismFile::Composite { composite } => {
                let steps = composite.iter().map(MorphismFile::to_morphism).collect::<Result<Vec<_>>>()?;
                let (first, rest) = steps.split_first().ok_or_else(|| Error::Parse("empty composite".into()))?;
                rest.iter().try_fold(first.clone(), |acc, s| acc.then(s))
            }
            MorphismFile::Pair { pair } => {
                let parts = pair
                    .iter()
                    .map(|p| p.to_morphism()?.as_symbolic().cloned())
                    .collect::<Result<Vec<_>>>()?;
                let dom = parts.first().ok_or_else(|| Error::Parse("empty pair".into()))?.dom().clone();
                Ok(Morphism::Symbolic(SymMorphism::pair(&dom, parts)?))
            }
            MorphismFile::Induced { induced } => {
                Morphism::induced(&induced.quotient.to_morphism()?, &induced.map.to_morphism()?)
            }
            MorphismFile::IntoP { into_p } => {
                Ok(Morphism::Symbolic(SymMorphism::into_p(into_p.to_morphism()?.as_symbolic()?)))
            }
        }
    }

    pub fn from_morphism(f: &Morphism) -> Self {
        match f {
            Morphism::Finite(f) => MorphismFile::Named {
                on: AlgebraFile::from_algebra(&Algebra::Finite(f.dom.clone())),
                map: MapFile::Table(TableFile {
                    cod: AlgebraFile::from_algebra(&Algebra::Finite(f.cod.clone())),
                    values: f.map.clone(),
                }),
            },
            Morphism::Symbolic(f) => Self::from_symbolic(f),
        }
    }

    fn from_symbolic(f: &SymMorphism) -> Self {
        let on = |a: &SymbolicAlgebra| AlgebraFile::from_algebra(&Algebra::Symbolic(a.clone()));
        let named = |a: &SymbolicAlgebra, map| MorphismFile::Named { on: on(a), map };
        match f.body() {
            Body::Identity => named(f.dom(), MapFile::Identity),
            Body::Eta { .. } => named(f.dom(), MapFile::Eta),
            Body::Quotient { ideal, .. } => {
                named(f.dom(), MapFile::Quotient(IdealFile::from_ideal(&IdealDesc::Symbolic(ideal.clone()))))
            }
            Body::EpsilonP => named(f.cod(), MapFile::EpsilonP),
            Body::Chi => named(f.dom(), MapFile::Chi),
            Body::FromInitial => named(f.cod(), MapFile::FromInitial),
            Body::ToTerminal => named(f.dom(), MapFile::ToTerminal),
            Body::Projection { kept } => named(f.dom(), MapFile::Projection(kept.iter().map(|i| i + 1).collect())),
            Body::Pair { parts, .. } => MorphismFile::Pair { pair: parts.iter().map(Self::from_symbolic).collect() },
            Body::Composite(steps) => MorphismFile::Composite { composite: steps.iter().map(Self::from_symbolic).collect() },
            Body::Induced { quotient, map } => MorphismFile::Induced {
                induced: InducedFile {
                    quotient: Box::new(Self::from_symbolic(quotient)),
                    map: Box::new(Self::from_symbolic(map)),
                },
            },
            Body::IntoP { map } => MorphismFile::IntoP { into_p: Box::new(Self::from_symbolic(map)) },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SquareFile {
    Ideals { algebra: AlgebraFile, ideal_i: IdealFile, ideal_j: IdealFile },
    Arrows { f: MorphismFile, h: MorphismFile, k: MorphismFile, g: MorphismFile },
}

/// Parsed square input.
#[derive(Debug, Clone)]
pub enum SquareInput {
    Ideals { algebra: Algebra, i: IdealDesc, j: IdealDesc },
    Arrows { f: Morphism, h: Morphism, k: Morphism, g: Morphism },
}

impl SquareFile {
    pub fn to_input(&self) -> Result<SquareInput> {
        match self {
            SquareFile::Ideals { algebra, ideal_i, ideal_j } => {
                let a = algebra.to_algebra()?;
                let (i, j) = (ideal_i.to_ideal(&a)?, ideal_j.to_ideal(&a)?);
                Ok(SquareInput::Ideals { algebra: a, i, j })
            }
            SquareFile::Arrows { f, h, k, g } => {
                let arrows = [f, h, k, g].map(|m| m.to_morphism());
                let [f, h, k, g] = arrows;
                let (f, h, k, g) = (f?, h?, k?, g?);
                if [&f, &h, &k, &g].iter().any(|m| m.as_finite().is_err()) {
                    return Err(Error::Unsupported("explicit squares are finite; give symbolic squares by ideals".into()));
                }
                Ok(SquareInput::Arrows { f, h, k, g })
            }
        }
    }

    pub fn from_input(s: &SquareInput) -> Self {
        match s {
            SquareInput::Ideals { algebra, i, j } => SquareFile::Ideals {
                algebra: AlgebraFile::from_algebra(algebra),
                ideal_i: IdealFile::from_ideal(i),
                ideal_j: IdealFile::from_ideal(j),
            },
            SquareInput::Arrows { f, h, k, g } => SquareFile::Arrows {
                f: MorphismFile::from_morphism(f),
                h: MorphismFile::from_morphism(h),
                k: MorphismFile::from_morphism(k),
                g: MorphismFile::from_morphism(g),
            },
        }
    }
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn render<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("file types serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_files() {
        let a: AlgebraFile = parse(r#"{"blocks":[{"chain":2},{"komori":{"m":1,"r":1}}]}"#).unwrap();
        let alg = a.to_algebra().unwrap();
        assert_eq!(alg.as_symbolic().unwrap().to_string(), "Komori(1,1) x Chain(2)");
        let back = AlgebraFile::from_algebra(&alg);
        assert_eq!(parse::<AlgebraFile>(&render(&back)).unwrap().to_algebra().unwrap(), alg);

        let f: AlgebraFile =
            parse(r#"{"finite":{"size":3,"zero":0,"neg":[2,1,0],"plus":[[0,1,2],[1,2,2],[2,2,2]]}}"#).unwrap();
        let alg = f.to_algebra().unwrap();
        assert_eq!(alg.cardinality(), Some(3));
        assert_eq!(AlgebraFile::from_algebra(&alg), f);
    }

    #[test]
    fn ideal_files() {
        let a = Algebra::Symbolic(SymbolicAlgebra::product(&[&SymbolicAlgebra::komori(1, 2).unwrap(), &SymbolicAlgebra::chain(2)]));
        let i: IdealFile = parse(r#"{"markers":[{"sub":[2]},"full"]}"#).unwrap();
        let d = i.to_ideal(&a).unwrap();
        assert_eq!(d, IdealDesc::Symbolic(Markers(vec![Marker::Sub(vec![1]), Marker::Full])));
        assert_eq!(IdealFile::from_ideal(&d), i);
        assert!(parse::<IdealFile>(r#"{"markers":[{"sub":[0]},"full"]}"#).unwrap().to_ideal(&a).is_err());

        let c = Algebra::finite(SymbolicAlgebra::product(&[&SymbolicAlgebra::chain(1), &SymbolicAlgebra::chain(1)]).to_finite().unwrap());
        assert!(parse::<IdealFile>(r#"{"elements":[0,1]}"#).unwrap().to_ideal(&c).is_ok());
        assert!(parse::<IdealFile>(r#"{"elements":[0,3]}"#).unwrap().to_ideal(&c).is_err());
    }

    #[test]
    fn morphism_files_round_trip() {
        let texts = [
            r#"{"on":{"blocks":[{"komori":{"m":1,"r":1}}]},"map":"eta"}"#,
            r#"{"on":{"blocks":[{"komori":{"m":2,"r":1}}]},"map":"epsilon_p"}"#,
            r#"{"on":{"blocks":[{"komori":{"m":1,"r":1}},{"chain":2}]},"map":{"quotient":{"markers":["zero","full"]}}}"#,
            r#"{"on":{"blocks":[{"komori":{"m":1,"r":1}},{"chain":2}]},"map":{"projection":[2]}}"#,
            r#"{"composite":[{"on":{"blocks":[{"komori":{"m":1,"r":1}}]},"map":"chi"},{"on":{"blocks":[{"chain":3}]},"map":"from_initial"}]}"#,
            r#"{"on":{"finite":{"size":3,"zero":0,"neg":[2,1,0],"plus":[[0,1,2],[1,2,2],[2,2,2]]}},"map":"eta"}"#,
        ];
        for t in texts {
            let f = parse::<MorphismFile>(t).unwrap().to_morphism().unwrap();
            let again = parse::<MorphismFile>(&render(&MorphismFile::from_morphism(&f))).unwrap().to_morphism().unwrap();
            assert_eq!(again, f, "{t}");
        }
    }

    #[test]
    fn square_files() {
        let t = r#"{"algebra":{"blocks":[{"komori":{"m":1,"r":1}},{"komori":{"m":1,"r":1}}]},"ideal_i":{"markers":[{"sub":[1]},"zero"]},"ideal_j":{"markers":["zero",{"sub":[1]}]}}"#;
        let s: SquareFile = parse(t).unwrap();
        let input = s.to_input().unwrap();
        assert_eq!(SquareFile::from_input(&input), s);
    }
}
