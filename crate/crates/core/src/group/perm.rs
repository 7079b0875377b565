use std::collections::{BTreeSet, HashMap};

use super::{validate_group, FiniteGroup, GroupAction};

/// A permutation group on `0..degree` together with its abstract Cayley
/// table. Element `i` of the group is `elements[i]`; elements are sorted
/// lexicographically, so the identity permutation is element 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    elements: Vec<Vec<usize>>,
    group: FiniteGroup,
}

/// Closes `generators` under composition. Product convention:
/// `(σ·τ)(x) = σ(τ(x))`.
pub fn permutation_group(degree: usize, generators: &[Vec<usize>]) -> PermutationGroup {
    let identity: Vec<usize> = (0..degree).collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in generators {
            debug_assert_eq!(g.len(), degree);
            let q: Vec<usize> = p.iter().map(|&x| g[x]).collect();
            if seen.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    PermutationGroup::from_closed(degree, seen.into_iter().collect())
}

impl PermutationGroup {
    /// `elements` must be sorted, duplicate-free and closed.
    fn from_closed(degree: usize, elements: Vec<Vec<usize>>) -> Self {
        let index: HashMap<&[usize], usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let table = elements
            .iter()
            .map(|s| {
                elements
                    .iter()
                    .map(|t| {
                        let st: Vec<usize> = t.iter().map(|&x| s[x]).collect();
                        index[st.as_slice()]
                    })
                    .collect()
            })
            .collect();
        let group = validate_group(table, 0).expect("closed permutation set is a group");
        PermutationGroup {
            degree,
            elements,
            group,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &[usize] {
        &self.elements[i]
    }

    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.elements
            .binary_search_by(|p| p.as_slice().cmp(perm))
            .ok()
    }

    pub fn contains(&self, perm: &[usize]) -> bool {
        self.index_of(perm).is_some()
    }

    /// `other ⊆ self` as permutation sets.
    pub fn contains_group(&self, other: &PermutationGroup) -> bool {
        other.elements.iter().all(|p| self.contains(p))
    }

    /// `other` is normalized by every element of `self`.
    pub fn normalizes(&self, other: &PermutationGroup) -> bool {
        self.elements.iter().all(|g| {
            let g_inv = invert(g);
            other.elements.iter().all(|x| {
                let conj = compose(g, &compose(x, &g_inv));
                other.contains(&conj)
            })
        })
    }

    /// Every element of `other` commutes with every element of `self`.
    pub fn centralizes(&self, other: &PermutationGroup) -> bool {
        self.elements.iter().all(|g| {
            other
                .elements
                .iter()
                .all(|x| compose(g, x) == compose(x, g))
        })
    }

    pub fn action(&self) -> GroupAction {
        let act = self.elements.clone();
        GroupAction::new(self.group.clone(), self.degree, act).expect("permutation action")
    }

    /// Transitive with trivial stabilizers, i.e. exactly one element maps
    /// `x` to `y` for every pair.
    pub fn is_regular(&self) -> bool {
        if self.degree == 0 {
            return self.order() == 1;
        }
        if self.order() != self.degree {
            return false;
        }
        let mut images = vec![false; self.degree];
        for p in &self.elements {
            if images[p[0]] {
                return false;
            }
            images[p[0]] = true;
        }
        images.iter().all(|&b| b)
    }
}

/// `(a∘b)(x) = a(b(x))`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}
