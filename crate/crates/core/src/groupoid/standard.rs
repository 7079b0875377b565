use std::collections::HashMap;

use super::FiniteGroupoid;
use crate::group::FiniteGroup;

/// Index layout of the standard groupoid: morphism `(a, x, b)` from `a` to
/// `b` labelled by group element `x` has index `(a·n + b)·|G| + x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardLayout {
    pub objects: usize,
    pub order: usize,
}

impl StandardLayout {
    pub fn new(objects: usize, order: usize) -> Self {
        StandardLayout { objects, order }
    }

    pub fn index(&self, a: usize, x: usize, b: usize) -> usize {
        (a * self.objects + b) * self.order + x
    }

    /// `(a, x, b)` for a morphism index.
    pub fn triple(&self, m: usize) -> (usize, usize, usize) {
        let x = m % self.order;
        let pair = m / self.order;
        (pair / self.objects, x, pair % self.objects)
    }

    pub fn morphism_count(&self) -> usize {
        self.objects * self.objects * self.order
    }
}

/// The connected groupoid on `n` objects whose morphisms are triples
/// `(a, x, b)` with `x ∈ G`, composed by
/// `(b, y, c) ∘ (a, x, b) = (a, y·x, c)`.
pub fn build_standard_groupoid(g: &FiniteGroup, n: usize) -> FiniteGroupoid {
    assert!(n >= 1, "a standard groupoid needs at least one object");
    let layout = StandardLayout::new(n, g.order());
    let m = layout.morphism_count();
    let mut init = Vec::with_capacity(m);
    let mut ter = Vec::with_capacity(m);
    let mut inverse = Vec::with_capacity(m);
    let mut labels = Vec::with_capacity(m);
    for idx in 0..m {
        let (a, x, b) = layout.triple(idx);
        init.push(a);
        ter.push(b);
        inverse.push(layout.index(b, g.inv(x), a));
        labels.push(format!("({a},{},{b})", g.label(x)));
    }
    let mut compose = HashMap::with_capacity(n * n * n * g.order() * g.order());
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for x in g.elements() {
                    for y in g.elements() {
                        compose.insert(
                            (layout.index(a, x, b), layout.index(b, y, c)),
                            layout.index(a, g.mul(y, x), c),
                        );
                    }
                }
            }
        }
    }
    let mut hom = vec![Vec::new(); n * n];
    for f in 0..m {
        hom[init[f] * n + ter[f]].push(f);
    }
    FiniteGroupoid {
        objects: n,
        init,
        ter,
        compose,
        inverse,
        identities: (0..n).map(|a| layout.index(a, g.identity(), a)).collect(),
        hom,
        labels: Some(labels),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::groupoid::validate_groupoid;

    #[test]
    fn layout_round_trips() {
        let l = StandardLayout::new(4, 6);
        for m in 0..l.morphism_count() {
            let (a, x, b) = l.triple(m);
            assert_eq!(l.index(a, x, b), m);
        }
    }

    #[test]
    fn composition_rule_matches_triples() {
        let g = GroupSpec::Symmetric(3).build().unwrap();
        let gpd = build_standard_groupoid(&g, 3);
        let l = StandardLayout::new(3, 6);
        let f = l.index(0, 1, 2);
        let h = l.index(2, 4, 1);
        assert_eq!(gpd.compose(f, h), Some(l.index(0, g.mul(4, 1), 1)));
        assert_eq!(gpd.compose(h, f), None);
        assert!(validate_groupoid(&gpd.to_raw()).is_ok());
    }
}
