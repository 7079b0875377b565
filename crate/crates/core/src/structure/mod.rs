//! Finite multi-sorted structures and their automorphism groups.
//!
//! Elements are addressed either as [`Element`] (sort name plus index) or as
//! global *points*: sorts are laid out consecutively in declaration order,
//! so point `offset(sort) + index` names an element. All search code works
//! on points.

mod encode;
mod engine;
mod refine;

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use encode::{
    decode_groupoid, encode_double_cover, encode_groupoid, DecodeError, GroupoidLayout,
};
pub use engine::{automorphism_group, AutEngine, AutomorphismGroup, RestrictedGroup};

/// Largest total carrier the automorphism engine accepts.
pub const MAX_CARRIER: usize = 300;

/// Relations and function graphs are packed into 16-bit coordinates.
const MAX_POINTS: usize = 1 << 16;
const MAX_ARITY: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("`{name}` has arity {arity}, at most {MAX_ARITY} is supported")]
    ArityTooLarge { name: String, arity: usize },
    #[error("`{name}`: expected {expected} entries, found {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("`{name}`: value {value} outside carrier of sort `{sort}`")]
    OutOfCarrier {
        name: String,
        sort: String,
        value: usize,
    },
    #[error("carrier size {size} exceeds the budget of {limit}")]
    BudgetExceeded { size: usize, limit: usize },
    #[error("set is not invariant: automorphism {automorphism:?} moves {element:?} outside it")]
    NotInvariant {
        automorphism: Vec<usize>,
        element: Vec<usize>,
    },
    #[error("point {0} does not exist")]
    UnknownPoint(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element {
    pub sort: String,
    pub index: usize,
}

impl Element {
    pub fn new(sort: &str, index: usize) -> Self {
        Element {
            sort: sort.to_string(),
            index,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sort {
    pub name: String,
    pub size: usize,
}

/// A total function; `values` is indexed in mixed radix over `domain`
/// with the first argument most significant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Function {
    pub name: String,
    pub domain: Vec<String>,
    pub codomain: String,
    pub values: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub name: String,
    pub sorts: Vec<String>,
    pub tuples: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constant {
    pub name: String,
    pub element: Element,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct RawStructure {
    sorts: Vec<Sort>,
    #[serde(default)]
    functions: Vec<Function>,
    #[serde(default)]
    relations: Vec<Relation>,
    #[serde(default)]
    constants: Vec<Constant>,
}

/// A validated finite multi-sorted structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStructure", into = "RawStructure")]
pub struct MultiSortedStructure {
    sorts: Vec<Sort>,
    functions: Vec<Function>,
    relations: Vec<Relation>,
    constants: Vec<Constant>,
    offsets: Vec<usize>,
}

impl TryFrom<RawStructure> for MultiSortedStructure {
    type Error = StructureError;

    fn try_from(raw: RawStructure) -> Result<Self, Self::Error> {
        MultiSortedStructure::new(raw.sorts, raw.functions, raw.relations, raw.constants)
    }
}

impl From<MultiSortedStructure> for RawStructure {
    fn from(s: MultiSortedStructure) -> Self {
        RawStructure {
            sorts: s.sorts,
            functions: s.functions,
            relations: s.relations,
            constants: s.constants,
        }
    }
}

/// A relation over global points, the common form of relations and
/// function graphs used by the search.
#[derive(Debug, Clone)]
pub(crate) struct PointRelation {
    pub arity: usize,
    pub tuples: Vec<Vec<usize>>,
}

impl MultiSortedStructure {
    pub fn new(
        sorts: Vec<Sort>,
        functions: Vec<Function>,
        relations: Vec<Relation>,
        constants: Vec<Constant>,
    ) -> Result<Self, StructureError> {
        let mut names = HashSet::new();
        for name in sorts
            .iter()
            .map(|s| &s.name)
            .chain(functions.iter().map(|f| &f.name))
            .chain(relations.iter().map(|r| &r.name))
            .chain(constants.iter().map(|c| &c.name))
        {
            if !names.insert(name.clone()) {
                return Err(StructureError::DuplicateName(name.clone()));
            }
        }
        let mut offsets = Vec::with_capacity(sorts.len());
        let mut total = 0;
        for s in &sorts {
            offsets.push(total);
            total += s.size;
        }
        if total >= MAX_POINTS {
            return Err(StructureError::BudgetExceeded {
                size: total,
                limit: MAX_POINTS - 1,
            });
        }
        let s = MultiSortedStructure {
            sorts,
            functions,
            relations,
            constants,
            offsets,
        };
        for f in &s.functions {
            if f.domain.len() + 1 > MAX_ARITY {
                return Err(StructureError::ArityTooLarge {
                    name: f.name.clone(),
                    arity: f.domain.len(),
                });
            }
            let mut expected = 1;
            for d in &f.domain {
                expected *= s.sort_size(d)?;
            }
            if f.values.len() != expected {
                return Err(StructureError::ArityMismatch {
                    name: f.name.clone(),
                    expected,
                    found: f.values.len(),
                });
            }
            let size = s.sort_size(&f.codomain)?;
            if let Some(&value) = f.values.iter().find(|&&v| v >= size) {
                return Err(StructureError::OutOfCarrier {
                    name: f.name.clone(),
                    sort: f.codomain.clone(),
                    value,
                });
            }
        }
        for r in &s.relations {
            if r.sorts.len() > MAX_ARITY {
                return Err(StructureError::ArityTooLarge {
                    name: r.name.clone(),
                    arity: r.sorts.len(),
                });
            }
            let sizes = r
                .sorts
                .iter()
                .map(|x| s.sort_size(x))
                .collect::<Result<Vec<_>, _>>()?;
            for t in &r.tuples {
                if t.len() != sizes.len() {
                    return Err(StructureError::ArityMismatch {
                        name: r.name.clone(),
                        expected: sizes.len(),
                        found: t.len(),
                    });
                }
                for (i, (&v, &size)) in t.iter().zip(&sizes).enumerate() {
                    if v >= size {
                        return Err(StructureError::OutOfCarrier {
                            name: r.name.clone(),
                            sort: r.sorts[i].clone(),
                            value: v,
                        });
                    }
                }
            }
        }
        for c in &s.constants {
            s.point(&c.element)?;
        }
        Ok(s)
    }

    pub fn sorts(&self) -> &[Sort] {
        &self.sorts
    }

    pub fn functions(&self) -> &[Function] {
        &self.functions
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn constants(&self) -> &[Constant] {
        &self.constants
    }

    pub fn sort_id(&self, name: &str) -> Result<usize, StructureError> {
        self.sorts
            .iter()
            .position(|s| s.name == name)
            .ok_or_else(|| StructureError::UnknownSort(name.to_string()))
    }

    pub fn sort_size(&self, name: &str) -> Result<usize, StructureError> {
        Ok(self.sorts[self.sort_id(name)?].size)
    }

    pub fn offset(&self, name: &str) -> Result<usize, StructureError> {
        Ok(self.offsets[self.sort_id(name)?])
    }

    /// Total carrier size, i.e. the number of points.
    pub fn carrier_size(&self) -> usize {
        self.sorts.iter().map(|s| s.size).sum()
    }

    pub fn point(&self, e: &Element) -> Result<usize, StructureError> {
        let id = self.sort_id(&e.sort)?;
        if e.index >= self.sorts[id].size {
            return Err(StructureError::OutOfCarrier {
                name: e.sort.clone(),
                sort: e.sort.clone(),
                value: e.index,
            });
        }
        Ok(self.offsets[id] + e.index)
    }

    pub fn element(&self, point: usize) -> Result<Element, StructureError> {
        let id = self.sort_of(point)?;
        Ok(Element {
            sort: self.sorts[id].name.clone(),
            index: point - self.offsets[id],
        })
    }

    pub fn sort_of(&self, point: usize) -> Result<usize, StructureError> {
        if point >= self.carrier_size() {
            return Err(StructureError::UnknownPoint(point));
        }
        Ok(self.offsets.partition_point(|&o| o <= point) - 1)
    }

    /// Looks up a relation by name.
    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.name == name)
    }

    pub fn function(&self, name: &str) -> Option<&Function> {
        self.functions.iter().find(|f| f.name == name)
    }

    /// Points of all constants.
    pub fn constant_points(&self) -> Vec<usize> {
        self.constants
            .iter()
            .map(|c| self.point(&c.element).expect("validated"))
            .collect()
    }

    /// Returns a copy with one more relation.
    pub fn with_relation(&self, relation: Relation) -> Result<Self, StructureError> {
        let mut relations = self.relations.clone();
        relations.push(relation);
        MultiSortedStructure::new(
            self.sorts.clone(),
            self.functions.clone(),
            relations,
            self.constants.clone(),
        )
    }

    /// Relations and function graphs as point tuples.
    pub(crate) fn point_relations(&self) -> Vec<PointRelation> {
        let offs = |names: &[String]| -> Vec<usize> {
            names
                .iter()
                .map(|n| self.offset(n).expect("validated"))
                .collect()
        };
        let mut out = Vec::new();
        for f in &self.functions {
            let dom = offs(&f.domain);
            let sizes: Vec<usize> = f
                .domain
                .iter()
                .map(|d| self.sort_size(d).expect("validated"))
                .collect();
            let cod = self.offset(&f.codomain).expect("validated");
            let tuples = f
                .values
                .iter()
                .enumerate()
                .map(|(mut i, &v)| {
                    let mut t = vec![0; dom.len() + 1];
                    for k in (0..dom.len()).rev() {
                        t[k] = dom[k] + i % sizes[k];
                        i /= sizes[k];
                    }
                    t[dom.len()] = cod + v;
                    t
                })
                .collect();
            out.push(PointRelation {
                arity: dom.len() + 1,
                tuples,
            });
        }
        for r in &self.relations {
            let o = offs(&r.sorts);
            let set: BTreeSet<Vec<usize>> = r
                .tuples
                .iter()
                .map(|t| t.iter().zip(&o).map(|(v, off)| v + off).collect())
                .collect();
            out.push(PointRelation {
                arity: r.sorts.len(),
                tuples: set.into_iter().collect(),
            });
        }
        out
    }

    /// Sort id of every point.
    pub(crate) fn point_sorts(&self) -> Vec<usize> {
        self.sorts
            .iter()
            .enumerate()
            .flat_map(|(i, s)| std::iter::repeat_n(i, s.size))
            .collect()
    }
}
