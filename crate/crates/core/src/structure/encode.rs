use std::collections::BTreeMap;

use thiserror::Error;

use super::{Function, MultiSortedStructure, Relation, Sort, StructureError};
use crate::groupoid::{
    validate_groupoid, FiniteGroupoid, GroupoidAxiom, GroupoidError, RawGroupoid, RawMorphism,
};

/// Where the sorts of an encoded groupoid live in point space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupoidLayout {
    pub objects: usize,
    pub morphisms: usize,
    pub cover: bool,
}

impl GroupoidLayout {
    pub fn of(s: &MultiSortedStructure) -> Result<Self, StructureError> {
        Ok(GroupoidLayout {
            objects: s.sort_size("O")?,
            morphisms: s.sort_size("M")?,
            cover: s.sort_id("I").is_ok(),
        })
    }

    pub fn object(&self, o: usize) -> usize {
        o
    }

    pub fn morphism(&self, m: usize) -> usize {
        self.objects + m
    }

    /// Point of fibre element `i` of the sort `I`.
    pub fn fibre(&self, i: usize) -> usize {
        debug_assert!(self.cover);
        self.objects + self.morphisms + i
    }

    pub fn is_object(&self, p: usize) -> bool {
        p < self.objects
    }

    pub fn is_morphism(&self, p: usize) -> bool {
        (self.objects..self.objects + self.morphisms).contains(&p)
    }

    pub fn morphism_of(&self, p: usize) -> Option<usize> {
        self.is_morphism(p).then(|| p - self.objects)
    }

    /// The tuple standing for object `o`: `[o]`, or `[i₀, i₁, o]` with the
    /// fibre over `o` in the double cover.
    pub fn object_tuple(&self, o: usize) -> Vec<usize> {
        if self.cover {
            vec![self.fibre(2 * o), self.fibre(2 * o + 1), self.object(o)]
        } else {
            vec![self.object(o)]
        }
    }
}

fn sort(name: &str, size: usize) -> Sort {
    Sort {
        name: name.into(),
        size,
    }
}

fn unary(name: &str, from: &str, to: &str, values: Vec<usize>) -> Function {
    Function {
        name: name.into(),
        domain: vec![from.into()],
        codomain: to.into(),
        values,
    }
}

/// Sorts `O`, `M`; functions `init`, `ter`, `inverse`; relation
/// `comp(f, g, h)` iff `h` is "first `f`, then `g`".
pub fn encode_groupoid(gpd: &FiniteGroupoid) -> MultiSortedStructure {
    let m = gpd.morphism_count();
    MultiSortedStructure::new(
        vec![sort("O", gpd.object_count()), sort("M", m)],
        vec![
            unary("init", "M", "O", (0..m).map(|f| gpd.init(f)).collect()),
            unary("ter", "M", "O", (0..m).map(|f| gpd.ter(f)).collect()),
            unary(
                "inverse",
                "M",
                "M",
                (0..m).map(|f| gpd.inverse(f)).collect(),
            ),
        ],
        vec![Relation {
            name: "comp".into(),
            sorts: vec!["M".into(), "M".into(), "M".into()],
            tuples: gpd
                .composition_triples()
                .into_iter()
                .map(|t| t.to_vec())
                .collect(),
        }],
        vec![],
    )
    .expect("encoding of a valid groupoid")
}

/// [`encode_groupoid`] plus a sort `I` of size `2|O|` with an equivalence
/// relation `E` whose classes `{2o, 2o+1}` are the fibres of `pi: I → O`.
pub fn encode_double_cover(gpd: &FiniteGroupoid) -> MultiSortedStructure {
    let plain = encode_groupoid(gpd);
    let n = gpd.object_count();
    let mut sorts = plain.sorts().to_vec();
    sorts.push(sort("I", 2 * n));
    let mut functions = plain.functions().to_vec();
    functions.push(unary("pi", "I", "O", (0..2 * n).map(|i| i / 2).collect()));
    let mut relations = plain.relations().to_vec();
    relations.push(Relation {
        name: "E".into(),
        sorts: vec!["I".into(), "I".into()],
        tuples: (0..2 * n)
            .flat_map(|i| {
                let base = i / 2 * 2;
                [vec![i, base], vec![i, base + 1]]
            })
            .collect(),
    });
    MultiSortedStructure::new(sorts, functions, relations, vec![]).expect("cover encoding")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error("structure has no symbol `{0}`")]
    Missing(String),
}

/// Reads a groupoid back from an encoded structure and validates it.
/// Identities are the idempotent loops.
pub fn decode_groupoid(s: &MultiSortedStructure) -> Result<FiniteGroupoid, DecodeError> {
    let n = s.sort_size("O")?;
    let m = s.sort_size("M")?;
    let get = |name: &str| {
        s.function(name)
            .ok_or_else(|| DecodeError::Missing(name.into()))
    };
    let init = &get("init")?.values;
    let ter = &get("ter")?.values;
    let comp = s
        .relation("comp")
        .ok_or_else(|| DecodeError::Missing("comp".into()))?;
    let composition: Vec<[usize; 3]> = comp.tuples.iter().map(|t| [t[0], t[1], t[2]]).collect();
    let mut idempotent: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for t in &composition {
        if t[0] == t[1] && t[1] == t[2] && init[t[0]] == ter[t[0]] {
            idempotent.entry(init[t[0]]).or_default().push(t[0]);
        }
    }
    let mut identities = Vec::with_capacity(n);
    for o in 0..n {
        match idempotent.get(&o).map(Vec::as_slice) {
            Some([e]) => identities.push(*e),
            Some(many) => {
                let mut witness = vec![o];
                witness.extend_from_slice(many);
                return Err(GroupoidError::AxiomViolation {
                    kind: GroupoidAxiom::Identity,
                    witness,
                }
                .into());
            }
            None => {
                return Err(GroupoidError::AxiomViolation {
                    kind: GroupoidAxiom::Identity,
                    witness: vec![o],
                }
                .into())
            }
        }
    }
    let raw = RawGroupoid {
        objects: n,
        morphisms: (0..m)
            .map(|id| RawMorphism {
                id,
                init: init[id],
                ter: ter[id],
            })
            .collect(),
        composition,
        identities,
        labels: None,
    };
    Ok(validate_groupoid(&raw)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::groupoid::build_standard_groupoid;

    fn standard(spec: &str, n: usize) -> FiniteGroupoid {
        build_standard_groupoid(&GroupSpec::parse(spec).unwrap().build().unwrap(), n)
    }

    #[test]
    fn carrier_sizes() {
        let s = encode_groupoid(&standard("cyclic:2", 2));
        assert_eq!(s.sort_size("O").unwrap(), 2);
        assert_eq!(s.sort_size("M").unwrap(), 8);
        let c = encode_double_cover(&standard("cyclic:2", 3));
        assert_eq!(c.sort_size("I").unwrap(), 6);
        assert_eq!(c.carrier_size(), 3 + 18 + 6);
    }

    #[test]
    fn comp_triple_count_s3() {
        let s = encode_groupoid(&standard("symmetric:3", 3));
        // one triple per composable pair: n³ endpoint choices, |G|² labels
        assert_eq!(s.relation("comp").unwrap().tuples.len(), 27 * 36);
    }

    #[test]
    fn decode_round_trips() {
        for spec in ["trivial", "cyclic:3", "symmetric:3"] {
            let gpd = standard(spec, 3);
            let back = decode_groupoid(&encode_groupoid(&gpd)).unwrap();
            assert_eq!(back.composition_triples(), gpd.composition_triples());
            for f in 0..gpd.morphism_count() {
                assert_eq!(back.inverse(f), gpd.inverse(f));
            }
        }
    }

    #[test]
    fn fibres_have_size_two() {
        let c = encode_double_cover(&standard("cyclic:2", 3));
        let pi = &c.function("pi").unwrap().values;
        for o in 0..3 {
            assert_eq!(pi.iter().filter(|&&x| x == o).count(), 2);
        }
        let e = &c.relation("E").unwrap().tuples;
        // reflexive, symmetric, classes of size two
        assert_eq!(e.len(), 12);
        for t in e {
            assert!(e.contains(&vec![t[1], t[0]]));
            assert_eq!(pi[t[0]], pi[t[1]]);
        }
    }

    #[test]
    fn decode_reports_corruption() {
        let gpd = standard("cyclic:2", 2);
        let mut raw = encode_groupoid(&gpd);
        let mut rel = raw.relation("comp").unwrap().clone();
        // swap the result of one non-identity product
        let t = rel.tuples.iter_mut().find(|t| t[0] != t[1]).unwrap();
        t[2] = gpd
            .hom(gpd.init(t[2]), gpd.ter(t[2]))
            .iter()
            .copied()
            .find(|&h| h != t[2])
            .unwrap();
        let relations = vec![rel];
        raw = MultiSortedStructure::new(
            raw.sorts().to_vec(),
            raw.functions().to_vec(),
            relations,
            vec![],
        )
        .unwrap();
        assert!(matches!(
            decode_groupoid(&raw),
            Err(DecodeError::Groupoid(_))
        ));
    }
}
