use std::collections::BTreeSet;

use super::FiniteGroup;

/// A left action of a finite group on `0..points`, stored as a table
/// `act[g][x]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    points: usize,
    act: Vec<Vec<usize>>,
}

impl GroupAction {
    /// Builds an action after checking `e·x = x` and `(gh)·x = g·(h·x)`.
    pub fn new(group: FiniteGroup, points: usize, act: Vec<Vec<usize>>) -> Option<Self> {
        if act.len() != group.order() || act.iter().any(|row| row.len() != points) {
            return None;
        }
        if act.iter().flatten().any(|&y| y >= points) {
            return None;
        }
        if (0..points).any(|x| act[group.identity()][x] != x) {
            return None;
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if (0..points).any(|x| act[gh][x] != act[g][act[h][x]]) {
                    return None;
                }
            }
        }
        Some(GroupAction { group, points, act })
    }

    /// Left translation of the group on itself.
    pub fn regular(group: &FiniteGroup) -> Self {
        let act = group
            .elements()
            .map(|g| group.elements().map(|x| group.mul(g, x)).collect())
            .collect();
        GroupAction {
            group: group.clone(),
            points: group.order(),
            act,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g][x]
    }

    pub fn orbit(&self, x: usize) -> BTreeSet<usize> {
        self.group.elements().map(|g| self.act(g, x)).collect()
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        self.group
            .elements()
            .filter(|&g| self.act(g, x) == x)
            .collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.points == 0 || self.orbit(0).len() == self.points
    }

    /// Transitive with trivial point stabilizers.
    pub fn is_regular(&self) -> bool {
        self.is_transitive()
            && (0..self.points).all(|x| self.stabilizer(x) == vec![self.group.identity()])
    }
}

/// Left translation action of `g` on itself.
pub fn regular_action(g: &FiniteGroup) -> GroupAction {
    GroupAction::regular(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    #[test]
    fn trivial_group_acts_on_one_point() {
        let a = regular_action(&FiniteGroup::trivial());
        assert_eq!(a.points(), 1);
        assert!(a.is_regular());
    }

    #[test]
    fn z3_translation_has_trivial_stabilizers() {
        let g = GroupSpec::Cyclic(3).build().unwrap();
        let a = regular_action(&g);
        for x in 0..3 {
            assert_eq!(a.stabilizer(x), vec![0]);
        }
        assert!(a.is_regular());
    }

    #[test]
    fn s3_translation_is_transitive() {
        let g = GroupSpec::Symmetric(3).build().unwrap();
        let a = regular_action(&g);
        assert_eq!(a.orbit(0).len(), 6);
        assert!(a.is_transitive());
        // the table passes the action axioms when re-validated
        let rebuilt = GroupAction::new(g.clone(), 6, a.act.clone());
        assert!(rebuilt.is_some());
    }

    #[test]
    fn right_translation_is_not_a_left_action_for_nonabelian_groups() {
        let g = GroupSpec::Symmetric(3).build().unwrap();
        let act = g
            .elements()
            .map(|h| g.elements().map(|x| g.mul(x, h)).collect())
            .collect();
        assert!(GroupAction::new(g, 6, act).is_none());
    }
}
