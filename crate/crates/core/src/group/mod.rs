//! Exact finite groups stored as full Cayley tables.
//!
//! Every group in this crate is small (order at most 64), so all checks are
//! exhaustive scans over the table. Elements are plain indices `0..order`.

mod action;
mod constructors;
mod iso;
mod perm;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use action::{regular_action, GroupAction};
pub use constructors::{GroupSpec, MAX_GROUP_ORDER};
pub use iso::{is_isomorphism, isomorphism_search};
pub use perm::{compose, invert, permutation_group, PermutationGroup};

/// Which group axiom a table failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupAxiom {
    Identity,
    NoInverse,
    LatinSquare,
    Associativity,
}

impl fmt::Display for GroupAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupAxiom::Identity => "identity",
            GroupAxiom::NoInverse => "no-inverse",
            GroupAxiom::LatinSquare => "latin-square",
            GroupAxiom::Associativity => "associativity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table is empty or not square")]
    NotSquare,
    #[error("table entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("axiom violation ({kind}) witnessed by {witness:?}")]
    AxiomViolation {
        kind: GroupAxiom,
        witness: Vec<usize>,
    },
    #[error("group orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("unsupported group size: {0}")]
    UnsupportedSize(String),
    #[error("cannot parse group spec `{0}`")]
    BadSpec(String),
    #[error("labels length {labels} does not match order {order}")]
    LabelMismatch { labels: usize, order: usize },
}

/// A finite group given by its multiplication table.
///
/// `table[i][j]` is the index of `g_i · g_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Option<Vec<String>>,
}

/// On-disk form of a group: `{"order", "identity", "table", "labels"?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGroupTable {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl RawGroupTable {
    pub fn validate(self) -> Result<FiniteGroup, GroupError> {
        if let Some(order) = self.order {
            if order != self.table.len() {
                return Err(GroupError::OrderMismatch {
                    left: order,
                    right: self.table.len(),
                });
            }
        }
        let g = validate_group(self.table, self.identity)?;
        match self.labels {
            Some(labels) => g.with_labels(labels),
            None => Ok(g),
        }
    }
}

/// A group given either by a spec string (`cyclic:4`) or by a table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Spec(String),
    Table(RawGroupTable),
}

impl GroupRef {
    pub fn resolve(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupRef::Spec(s) => GroupSpec::parse(s)?.build(),
            GroupRef::Table(t) => t.clone().validate(),
        }
    }
}

/// Checks every group axiom exhaustively and returns the group.
pub fn validate_group(table: Vec<Vec<usize>>, identity: usize) -> Result<FiniteGroup, GroupError> {
    let n = table.len();
    if n == 0 || table.iter().any(|row| row.len() != n) || identity >= n {
        return Err(GroupError::NotSquare);
    }
    for (row, r) in table.iter().enumerate() {
        for (col, &value) in r.iter().enumerate() {
            if value >= n {
                return Err(GroupError::EntryOutOfRange { row, col, value });
            }
        }
    }
    for x in 0..n {
        if table[identity][x] != x || table[x][identity] != x {
            return Err(GroupError::AxiomViolation {
                kind: GroupAxiom::Identity,
                witness: vec![identity, x],
            });
        }
    }
    let mut inverses = vec![0; n];
    for x in 0..n {
        match (0..n).find(|&y| table[x][y] == identity && table[y][x] == identity) {
            Some(y) => inverses[x] = y,
            None => {
                return Err(GroupError::AxiomViolation {
                    kind: GroupAxiom::NoInverse,
                    witness: vec![x],
                })
            }
        }
    }
    for x in 0..n {
        let mut row_seen = vec![false; n];
        let mut col_seen = vec![false; n];
        for y in 0..n {
            let r = table[x][y];
            let c = table[y][x];
            if row_seen[r] || col_seen[c] {
                return Err(GroupError::AxiomViolation {
                    kind: GroupAxiom::LatinSquare,
                    witness: vec![x, y],
                });
            }
            row_seen[r] = true;
            col_seen[c] = true;
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Err(GroupError::AxiomViolation {
                        kind: GroupAxiom::Associativity,
                        witness: vec![a, b, c],
                    });
                }
            }
        }
    }
    Ok(FiniteGroup {
        table,
        identity,
        inverses,
        labels: None,
    })
}

impl FiniteGroup {
    pub fn to_raw(&self) -> RawGroupTable {
        RawGroupTable {
            order: Some(self.order()),
            identity: self.identity,
            table: self.table.clone(),
            labels: self.labels.clone(),
        }
    }

    pub fn trivial() -> Self {
        validate_group(vec![vec![0]], 0).expect("trivial group")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GroupError> {
        if labels.len() != self.order() {
            return Err(GroupError::LabelMismatch {
                labels: labels.len(),
                order: self.order(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn commutes(&self, a: usize, b: usize) -> bool {
        self.table[a][b] == self.table[b][a]
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order()).all(|b| self.commutes(a, b)))
    }

    /// Smallest `k ≥ 1` with `x^k = e`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders; an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().map(|x| self.element_order(x)).collect();
        v.sort_unstable();
        v
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|x| self.element_order(x)).fold(1, lcm)
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `{x : x·y = y·x for all y}`.
    pub fn center(&self) -> Subgroup<'_> {
        let members = self
            .elements()
            .filter(|&x| self.elements().all(|y| self.commutes(x, y)))
            .collect();
        Subgroup {
            parent: self,
            members,
        }
    }

    /// Subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Subgroup<'_> {
        let mut set = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Subgroup {
            parent: self,
            members: set.into_iter().collect(),
        }
    }

    /// Wraps `members` as a subgroup after checking closure.
    pub fn subgroup(&self, members: &[usize]) -> Option<Subgroup<'_>> {
        let set: BTreeSet<usize> = members.iter().copied().collect();
        if !set.contains(&self.identity) || set.iter().any(|&x| x >= self.order()) {
            return None;
        }
        for &a in &set {
            if !set.contains(&self.inv(a)) {
                return None;
            }
            for &b in &set {
                if !set.contains(&self.mul(a, b)) {
                    return None;
                }
            }
        }
        Some(Subgroup {
            parent: self,
            members: set.into_iter().collect(),
        })
    }

    /// A deterministic generating set: repeatedly adds the least element
    /// outside the subgroup generated so far.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order()];
        span[self.identity] = true;
        while let Some(x) = span.iter().position(|&inside| !inside) {
            gens.push(x);
            for m in self.generated(&gens).members {
                span[m] = true;
            }
        }
        gens
    }

    /// Direct product; element `(a, b)` has index `a * |h| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (m, n) = (self.order(), other.order());
        let mut table = vec![vec![0; m * n]; m * n];
        for a1 in 0..m {
            for b1 in 0..n {
                for a2 in 0..m {
                    for b2 in 0..n {
                        table[a1 * n + b1][a2 * n + b2] = self.mul(a1, a2) * n + other.mul(b1, b2);
                    }
                }
            }
        }
        let labels = (0..m * n)
            .map(|i| format!("({},{})", self.label(i / n), other.label(i % n)))
            .collect();
        validate_group(table, self.identity * n + other.identity)
            .expect("product of groups is a group")
            .with_labels(labels)
            .expect("label count")
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A subgroup of a borrowed parent group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup<'g> {
    parent: &'g FiniteGroup,
    members: Vec<usize>,
}

impl<'g> Subgroup<'g> {
    pub fn parent(&self) -> &'g FiniteGroup {
        self.parent
    }

    /// Sorted member indices.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_normal(&self) -> bool {
        self.parent.elements().all(|g| {
            self.members
                .iter()
                .all(|&x| self.contains(self.parent.conjugate(g, x)))
        })
    }

    /// The subgroup as a standalone group, elements renumbered in member order.
    pub fn to_group(&self) -> FiniteGroup {
        let pos = |x: usize| self.members.binary_search(&x).expect("closed subgroup");
        let table = self
            .members
            .iter()
            .map(|&a| {
                self.members
                    .iter()
                    .map(|&b| pos(self.parent.mul(a, b)))
                    .collect()
            })
            .collect();
        let labels = self.members.iter().map(|&x| self.parent.label(x)).collect();
        validate_group(table, pos(self.parent.identity()))
            .expect("subgroup is a group")
            .with_labels(labels)
            .expect("label count")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn commuting_center_order(g: &FiniteGroup) -> usize {
        // independent route: count x with |{y : xy = yx}| = |G|
        g.elements()
            .filter(|&x| g.elements().filter(|&y| g.mul(x, y) == g.mul(y, x)).count() == g.order())
            .count()
    }

    #[test]
    fn trivial_table_is_a_group() {
        let g = validate_group(vec![vec![0]], 0).unwrap();
        assert_eq!(g.order(), 1);
        assert!(g.is_abelian());
    }

    #[test]
    fn z2_table_is_a_group() {
        let g = validate_group(vec![vec![0, 1], vec![1, 0]], 0).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.element_order(1), 2);
    }

    #[test]
    fn missing_inverse_is_reported() {
        let err = validate_group(vec![vec![0, 1], vec![1, 1]], 0).unwrap_err();
        assert_eq!(
            err,
            GroupError::AxiomViolation {
                kind: GroupAxiom::NoInverse,
                witness: vec![1]
            }
        );
    }

    #[test]
    fn broken_associativity_is_reported() {
        // Latin square of order 5 with identity 0 that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match validate_group(t, 0) {
            Err(GroupError::AxiomViolation {
                kind: GroupAxiom::Associativity,
                witness,
            }) => assert_eq!(witness.len(), 3),
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn non_square_and_out_of_range_tables() {
        assert_eq!(
            validate_group(vec![vec![0, 1]], 0),
            Err(GroupError::NotSquare)
        );
        assert!(matches!(
            validate_group(vec![vec![0, 2], vec![1, 0]], 0),
            Err(GroupError::EntryOutOfRange { .. })
        ));
    }

    #[test]
    fn centers_of_standard_groups() {
        let z4 = GroupSpec::Cyclic(4).build().unwrap();
        assert_eq!(z4.center().order(), 4);
        let s3 = GroupSpec::Symmetric(3).build().unwrap();
        assert_eq!(s3.center().members(), &[s3.identity()]);
        assert_eq!(commuting_center_order(&s3), 1);
        let d4 = GroupSpec::Dihedral(4).build().unwrap();
        assert_eq!(d4.center().order(), 2);
        assert_eq!(commuting_center_order(&d4), 2);
        let q8 = GroupSpec::Quaternion8.build().unwrap();
        assert_eq!(q8.center().order(), 2);
    }

    #[test]
    fn center_is_normal_and_closed() {
        for spec in [
            "symmetric:3",
            "dihedral:4",
            "quaternion8",
            "dihedral:6",
            "symmetric:4",
        ] {
            let g = GroupSpec::parse(spec).unwrap().build().unwrap();
            let z = g.center();
            assert!(z.is_normal(), "{spec}");
            assert!(g.subgroup(z.members()).is_some(), "{spec}");
        }
    }

    #[test]
    fn generators_span_the_group() {
        for spec in [
            "cyclic:12",
            "symmetric:4",
            "quaternion8",
            "product:cyclic:2,cyclic:4",
        ] {
            let g = GroupSpec::parse(spec).unwrap().build().unwrap();
            assert_eq!(g.generated(&g.generators()).order(), g.order(), "{spec}");
        }
    }

    #[test]
    fn subgroup_to_group_keeps_structure() {
        let d4 = GroupSpec::Dihedral(4).build().unwrap();
        let z = d4.center().to_group();
        assert_eq!(z.order(), 2);
        assert!(z.is_abelian());
        // r has order 4, so {e, r} is not closed
        assert!(d4.subgroup(&[0, 1]).is_none());
        assert_eq!(d4.subgroup(&[0, 2]).map(|s| s.order()), Some(2));
    }

    #[test]
    fn raw_table_round_trips_and_checks_order() {
        let g = GroupSpec::parse("dihedral:3").unwrap().build().unwrap();
        let text = serde_json::to_string(&g.to_raw()).unwrap();
        let back: RawGroupTable = serde_json::from_str(&text).unwrap();
        assert_eq!(back.clone().validate().unwrap().table(), g.table());
        let lying = RawGroupTable {
            order: Some(5),
            ..back
        };
        assert!(matches!(
            lying.validate(),
            Err(GroupError::OrderMismatch { .. })
        ));
        let r: GroupRef = serde_json::from_str("\"cyclic:4\"").unwrap();
        assert_eq!(r.resolve().unwrap().order(), 4);
    }
}
