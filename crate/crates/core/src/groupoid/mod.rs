//! Finite groupoids with a partial composition relation.
//!
//! Composition is written in diagrammatic order in the API:
//! `compose(f, g)` is "first `f`, then `g`" and is defined exactly when
//! `ter(f) = init(g)`. In the usual right-to-left notation this is `g∘f`.

mod binding;
mod standard;

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{validate_group, FiniteGroup};

pub use binding::{bind_act, binding_group, BindingGroup};
pub use standard::{build_standard_groupoid, StandardLayout};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupoidAxiom {
    Range,
    Composability,
    Ambiguity,
    Identity,
    Inverse,
    Associativity,
}

impl fmt::Display for GroupoidAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupoidAxiom::Range => "range",
            GroupoidAxiom::Composability => "composability",
            GroupoidAxiom::Ambiguity => "ambiguity",
            GroupoidAxiom::Identity => "identity",
            GroupoidAxiom::Inverse => "inverse",
            GroupoidAxiom::Associativity => "associativity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupoidError {
    #[error("groupoid axiom violation ({kind}) witnessed by {witness:?}")]
    AxiomViolation {
        kind: GroupoidAxiom,
        witness: Vec<usize>,
    },
    #[error("groupoid is not connected: Mor({from}, {to}) is empty")]
    NotConnected { from: usize, to: usize },
    #[error("vertex group at object {object} is not abelian")]
    NonAbelianVertex { object: usize },
    #[error(
        "transport of {sigma} to object {object} differs along morphisms {first} and {second}"
    )]
    TransportAmbiguity {
        sigma: usize,
        object: usize,
        first: usize,
        second: usize,
    },
    #[error("object {0} does not exist")]
    UnknownObject(usize),
    #[error("morphisms {0} and {1} are not parallel")]
    NotParallel(usize, usize),
}

fn violation(kind: GroupoidAxiom, witness: Vec<usize>) -> GroupoidError {
    GroupoidError::AxiomViolation { kind, witness }
}

/// Raw groupoid tables as they appear on disk, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGroupoid {
    pub objects: usize,
    pub morphisms: Vec<RawMorphism>,
    /// Triples `[f, g, h]` meaning `h` is "first `f`, then `g`".
    pub composition: Vec<[usize; 3]>,
    pub identities: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub id: usize,
    pub init: usize,
    pub ter: usize,
}

/// A validated finite groupoid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroupoid {
    objects: usize,
    init: Vec<usize>,
    ter: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    inverse: Vec<usize>,
    identities: Vec<usize>,
    hom: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
}

/// Checks every groupoid axiom exhaustively. Inverses are derived.
pub fn validate_groupoid(raw: &RawGroupoid) -> Result<FiniteGroupoid, GroupoidError> {
    let n = raw.objects;
    let m = raw.morphisms.len();
    let mut init = vec![usize::MAX; m];
    let mut ter = vec![usize::MAX; m];
    for mor in &raw.morphisms {
        if mor.id >= m || init[mor.id] != usize::MAX || mor.init >= n || mor.ter >= n {
            return Err(violation(GroupoidAxiom::Range, vec![mor.id]));
        }
        init[mor.id] = mor.init;
        ter[mor.id] = mor.ter;
    }
    if raw.identities.len() != n || raw.identities.iter().any(|&i| i >= m) {
        return Err(violation(GroupoidAxiom::Range, raw.identities.clone()));
    }
    if let Some(labels) = &raw.labels {
        if labels.len() != m {
            return Err(violation(GroupoidAxiom::Range, vec![labels.len(), m]));
        }
    }
    let mut compose = HashMap::with_capacity(raw.composition.len());
    for &[f, g, h] in &raw.composition {
        if f >= m || g >= m || h >= m {
            return Err(violation(GroupoidAxiom::Range, vec![f, g, h]));
        }
        if ter[f] != init[g] || init[h] != init[f] || ter[h] != ter[g] {
            return Err(violation(GroupoidAxiom::Composability, vec![f, g, h]));
        }
        if let Some(prev) = compose.insert((f, g), h) {
            if prev != h {
                return Err(violation(GroupoidAxiom::Ambiguity, vec![f, g, prev, h]));
            }
        }
    }
    let mut hom = vec![Vec::new(); n * n];
    for f in 0..m {
        hom[init[f] * n + ter[f]].push(f);
    }
    let outgoing: Vec<Vec<usize>> = (0..n).map(|a| hom_from(&hom, n, a)).collect();
    for f in 0..m {
        for &g in &outgoing[ter[f]] {
            if !compose.contains_key(&(f, g)) {
                return Err(violation(GroupoidAxiom::Composability, vec![f, g]));
            }
        }
    }
    let c = |f: usize, g: usize| compose[&(f, g)];
    for (o, &id) in raw.identities.iter().enumerate() {
        if init[id] != o || ter[id] != o {
            return Err(violation(GroupoidAxiom::Identity, vec![o, id]));
        }
    }
    for f in 0..m {
        let left = raw.identities[init[f]];
        let right = raw.identities[ter[f]];
        if c(left, f) != f || c(f, right) != f {
            return Err(violation(GroupoidAxiom::Identity, vec![f]));
        }
    }
    let mut inverse = vec![0; m];
    for f in 0..m {
        let back = &hom[ter[f] * n + init[f]];
        let found = back
            .iter()
            .copied()
            .find(|&g| c(f, g) == raw.identities[init[f]] && c(g, f) == raw.identities[ter[f]]);
        match found {
            Some(g) => inverse[f] = g,
            None => return Err(violation(GroupoidAxiom::Inverse, vec![f])),
        }
    }
    for f in 0..m {
        for &g in &outgoing[ter[f]] {
            let fg = c(f, g);
            for &h in &outgoing[ter[g]] {
                if c(fg, h) != c(f, c(g, h)) {
                    return Err(violation(GroupoidAxiom::Associativity, vec![f, g, h]));
                }
            }
        }
    }
    Ok(FiniteGroupoid {
        objects: n,
        init,
        ter,
        compose,
        inverse,
        identities: raw.identities.clone(),
        hom,
        labels: raw.labels.clone(),
    })
}

fn hom_from(hom: &[Vec<usize>], n: usize, a: usize) -> Vec<usize> {
    (0..n)
        .flat_map(|b| hom[a * n + b].iter().copied())
        .collect()
}

impl FiniteGroupoid {
    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.init.len()
    }

    pub fn init(&self, f: usize) -> usize {
        self.init[f]
    }

    pub fn ter(&self, f: usize) -> usize {
        self.ter[f]
    }

    pub fn inverse(&self, f: usize) -> usize {
        self.inverse[f]
    }

    pub fn identity(&self, o: usize) -> usize {
        self.identities[o]
    }

    pub fn label(&self, f: usize) -> String {
        match &self.labels {
            Some(l) => l[f].clone(),
            None => f.to_string(),
        }
    }

    /// "First `f`, then `g`", if composable.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.compose.get(&(f, g)).copied()
    }

    /// `Mor(a, b)` in increasing index order.
    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a * self.objects + b]
    }

    pub fn is_connected(&self) -> bool {
        self.hom.iter().all(|h| !h.is_empty())
    }

    /// All defined composition triples `[f, g, h]`, sorted.
    pub fn composition_triples(&self) -> Vec<[usize; 3]> {
        let mut v: Vec<[usize; 3]> = self.compose.iter().map(|(&(f, g), &h)| [f, g, h]).collect();
        v.sort_unstable();
        v
    }

    pub fn to_raw(&self) -> RawGroupoid {
        RawGroupoid {
            objects: self.objects,
            morphisms: (0..self.morphism_count())
                .map(|id| RawMorphism {
                    id,
                    init: self.init[id],
                    ter: self.ter[id],
                })
                .collect(),
            composition: self.composition_triples(),
            identities: self.identities.clone(),
            labels: self.labels.clone(),
        }
    }

    /// The vertex group `Mor(a, a)`.
    pub fn vertex_group(&self, a: usize) -> Result<VertexGroup, GroupoidError> {
        if a >= self.objects {
            return Err(GroupoidError::UnknownObject(a));
        }
        let members = self.hom(a, a).to_vec();
        let pos = |f: usize| members.binary_search(&f).expect("closed under composition");
        // x·y is "first y, then x"
        let table = members
            .iter()
            .map(|&x| {
                members
                    .iter()
                    .map(|&y| pos(self.compose(y, x).expect("loops compose")))
                    .collect()
            })
            .collect();
        let labels = members.iter().map(|&f| self.label(f)).collect();
        let group = validate_group(table, pos(self.identity(a)))
            .expect("vertex group of a valid groupoid")
            .with_labels(labels)
            .expect("label count");
        Ok(VertexGroup {
            object: a,
            members,
            group,
        })
    }
}

/// `Mor(a, a)` as a group; element `i` of `group` is morphism `members[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexGroup {
    pub object: usize,
    pub members: Vec<usize>,
    pub group: FiniteGroup,
}

impl VertexGroup {
    pub fn element_of(&self, morphism: usize) -> Option<usize> {
        self.members.binary_search(&morphism).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{isomorphism_search, GroupSpec};

    fn standard(spec: &str, n: usize) -> FiniteGroupoid {
        build_standard_groupoid(&GroupSpec::parse(spec).unwrap().build().unwrap(), n)
    }

    #[test]
    fn standard_groupoid_counts() {
        let g = standard("cyclic:2", 3);
        assert_eq!(g.object_count(), 3);
        assert_eq!(g.morphism_count(), 18);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(g.hom(a, b).len(), 2);
            }
        }
        let indiscrete = standard("trivial", 4);
        assert_eq!(indiscrete.morphism_count(), 16);
        assert!(indiscrete.is_connected());
    }

    #[test]
    fn standard_output_revalidates() {
        let g = standard("cyclic:2", 3);
        assert_eq!(validate_groupoid(&g.to_raw()).unwrap(), g);
    }

    #[test]
    fn s3_vertex_groups_are_s3() {
        let g = standard("symmetric:3", 2);
        let s3 = GroupSpec::Symmetric(3).build().unwrap();
        for a in 0..2 {
            let v = g.vertex_group(a).unwrap();
            assert!(isomorphism_search(&v.group, &s3).unwrap().is_some());
        }
        assert!(!g.vertex_group(1).unwrap().group.is_abelian());
    }

    #[test]
    fn vertex_group_orders() {
        assert_eq!(
            standard("cyclic:3", 2)
                .vertex_group(0)
                .unwrap()
                .group
                .order(),
            3
        );
        assert_eq!(
            standard("trivial", 3)
                .vertex_group(2)
                .unwrap()
                .group
                .order(),
            1
        );
        assert_eq!(
            standard("cyclic:3", 2).vertex_group(5),
            Err(GroupoidError::UnknownObject(5))
        );
    }

    #[test]
    fn composition_with_mismatched_endpoints_is_rejected() {
        let mut raw = standard("cyclic:2", 2).to_raw();
        // Mor(0,0) after Mor(1,1): endpoints do not chain
        let f = raw
            .morphisms
            .iter()
            .find(|m| m.init == 0 && m.ter == 0)
            .unwrap()
            .id;
        let g = raw
            .morphisms
            .iter()
            .find(|m| m.init == 1 && m.ter == 1)
            .unwrap()
            .id;
        raw.composition.push([f, g, f]);
        assert!(matches!(
            validate_groupoid(&raw),
            Err(GroupoidError::AxiomViolation {
                kind: GroupoidAxiom::Composability,
                ..
            })
        ));
    }

    #[test]
    fn broken_associativity_is_located() {
        let gpd = standard("cyclic:3", 2);
        let mut raw = gpd.to_raw();
        // redirect one non-identity product to the other parallel morphism
        let layout = StandardLayout::new(2, 3);
        let f = layout.index(0, 1, 1);
        let g = layout.index(1, 1, 0);
        let entry = raw
            .composition
            .iter_mut()
            .find(|t| t[0] == f && t[1] == g)
            .unwrap();
        let wrong = layout.index(0, 0, 0);
        assert_ne!(entry[2], wrong);
        entry[2] = wrong;
        match validate_groupoid(&raw).unwrap_err() {
            GroupoidError::AxiomViolation {
                kind: GroupoidAxiom::Associativity,
                witness,
            } => {
                assert_eq!(witness.len(), 3);
                // the reported triple really fails in the corrupted table
                let table: HashMap<(usize, usize), usize> = raw
                    .composition
                    .iter()
                    .map(|t| ((t[0], t[1]), t[2]))
                    .collect();
                let c = |a: usize, b: usize| table[&(a, b)];
                let [x, y, z] = [witness[0], witness[1], witness[2]];
                assert_ne!(c(c(x, y), z), c(x, c(y, z)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_composite_is_reported() {
        let mut raw = standard("cyclic:2", 2).to_raw();
        raw.composition.pop();
        assert!(matches!(
            validate_groupoid(&raw),
            Err(GroupoidError::AxiomViolation {
                kind: GroupoidAxiom::Composability,
                ..
            })
        ));
    }

    #[test]
    fn connected_vertex_groups_are_pairwise_isomorphic() {
        let g = standard("quaternion8", 3);
        let groups: Vec<_> = (0..3).map(|a| g.vertex_group(a).unwrap().group).collect();
        for a in &groups {
            for b in &groups {
                assert!(isomorphism_search(a, b).unwrap().is_some());
            }
        }
    }
}
