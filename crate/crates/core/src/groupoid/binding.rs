use super::{FiniteGroupoid, GroupoidError};
use crate::group::FiniteGroup;

/// The binding group of a connected groupoid with abelian vertex groups:
/// the union of all vertex groups modulo transport `σ ↦ f∘σ∘f⁻¹`.
///
/// Class `s` is element `s` of `group`; `classes[s][o]` is its unique
/// representative in `Mor(o, o)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BindingGroup {
    pub group: FiniteGroup,
    pub classes: Vec<Vec<usize>>,
}

/// Transport of a loop `sigma` at `init(f)` along `f`, i.e. `f∘σ∘f⁻¹`.
fn transport(gpd: &FiniteGroupoid, sigma: usize, f: usize) -> usize {
    let back = gpd.inverse(f);
    let step = gpd.compose(back, sigma).expect("f⁻¹ then σ");
    gpd.compose(step, f).expect("then f")
}

pub fn binding_group(gpd: &FiniteGroupoid) -> Result<BindingGroup, GroupoidError> {
    let n = gpd.object_count();
    for a in 0..n {
        for b in 0..n {
            if gpd.hom(a, b).is_empty() {
                return Err(GroupoidError::NotConnected { from: a, to: b });
            }
        }
    }
    for o in 0..n {
        if !gpd.vertex_group(o)?.group.is_abelian() {
            return Err(GroupoidError::NonAbelianVertex { object: o });
        }
    }
    // transport must not depend on the connecting morphism
    for a in 0..n {
        for b in 0..n {
            let hom = gpd.hom(a, b);
            for &sigma in gpd.hom(a, a) {
                let first = transport(gpd, sigma, hom[0]);
                for &f in &hom[1..] {
                    if transport(gpd, sigma, f) != first {
                        return Err(GroupoidError::TransportAmbiguity {
                            sigma,
                            object: b,
                            first: hom[0],
                            second: f,
                        });
                    }
                }
            }
        }
    }
    let base = gpd.vertex_group(0)?;
    let classes = base
        .members
        .iter()
        .map(|&sigma| {
            (0..n)
                .map(|o| transport(gpd, sigma, gpd.hom(0, o)[0]))
                .collect()
        })
        .collect();
    Ok(BindingGroup {
        group: base.group,
        classes,
    })
}

impl BindingGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Representative of class `s` in `Mor(o, o)`.
    pub fn at(&self, s: usize, o: usize) -> usize {
        self.classes[s][o]
    }

    /// Class of a loop, if it is one.
    pub fn class_of(&self, loop_morphism: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&loop_morphism))
    }

    /// Left action `σ.f = σ_ter(f) ∘ f`.
    pub fn act(&self, gpd: &FiniteGroupoid, s: usize, f: usize) -> usize {
        gpd.compose(f, self.at(s, gpd.ter(f))).expect("f then σ")
    }

    /// Right action `f.σ = f ∘ σ_init(f)`; equal to [`Self::act`].
    pub fn act_right(&self, gpd: &FiniteGroupoid, s: usize, f: usize) -> usize {
        gpd.compose(self.at(s, gpd.init(f)), f).expect("σ then f")
    }

    /// The unique class `s` with `s.f = g`.
    pub fn bracket(
        &self,
        gpd: &FiniteGroupoid,
        f: usize,
        g: usize,
    ) -> Result<usize, GroupoidError> {
        if gpd.init(f) != gpd.init(g) || gpd.ter(f) != gpd.ter(g) {
            return Err(GroupoidError::NotParallel(f, g));
        }
        Ok(self
            .group
            .elements()
            .find(|&s| self.act(gpd, s, f) == g)
            .expect("binding action is transitive on each hom-set"))
    }
}

/// Left action of a binding class on a morphism.
pub fn bind_act(b: &BindingGroup, gpd: &FiniteGroupoid, s: usize, f: usize) -> usize {
    b.act(gpd, s, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::groupoid::{build_standard_groupoid, StandardLayout};

    fn standard(spec: &str, n: usize) -> FiniteGroupoid {
        build_standard_groupoid(&GroupSpec::parse(spec).unwrap().build().unwrap(), n)
    }

    #[test]
    fn z2_binding_group_has_classes_of_size_three() {
        let gpd = standard("cyclic:2", 3);
        let b = binding_group(&gpd).unwrap();
        assert_eq!(b.order(), 2);
        for class in &b.classes {
            assert_eq!(class.len(), 3);
        }
        // identity class consists of identities
        let e = b.group.identity();
        assert_eq!(
            b.classes[e],
            (0..3).map(|o| gpd.identity(o)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn trivial_binding_group() {
        let b = binding_group(&standard("trivial", 5)).unwrap();
        assert_eq!(b.order(), 1);
    }

    #[test]
    fn nonabelian_vertex_is_rejected() {
        assert_eq!(
            binding_group(&standard("symmetric:3", 2)),
            Err(GroupoidError::NonAbelianVertex { object: 0 })
        );
    }

    #[test]
    fn each_class_meets_each_vertex_group_once() {
        let gpd = standard("product:cyclic:2,cyclic:2", 3);
        let b = binding_group(&gpd).unwrap();
        for o in 0..3 {
            let mut reps: Vec<usize> = (0..b.order()).map(|s| b.at(s, o)).collect();
            reps.sort_unstable();
            assert_eq!(reps, gpd.hom(o, o));
        }
    }

    #[test]
    fn action_on_identity_labelled_morphism() {
        let gpd = standard("cyclic:2", 2);
        let b = binding_group(&gpd).unwrap();
        let l = StandardLayout::new(2, 2);
        let f = l.index(0, 0, 1);
        let x = b.class_of(l.index(0, 1, 0)).unwrap();
        assert_eq!(bind_act(&b, &gpd, x, f), l.index(0, 1, 1));
        assert_eq!(bind_act(&b, &gpd, b.group.identity(), f), f);
    }

    #[test]
    fn left_and_right_actions_agree_and_are_regular() {
        let gpd = standard("cyclic:4", 3);
        let b = binding_group(&gpd).unwrap();
        for a in 0..3 {
            for c in 0..3 {
                for &f in gpd.hom(a, c) {
                    for s in 0..b.order() {
                        assert_eq!(b.act(&gpd, s, f), b.act_right(&gpd, s, f));
                    }
                    for &g in gpd.hom(a, c) {
                        let hits = (0..b.order()).filter(|&s| b.act(&gpd, s, f) == g).count();
                        assert_eq!(hits, 1);
                    }
                }
            }
        }
    }

    #[test]
    fn bracket_values() {
        let gpd = standard("cyclic:4", 2);
        let b = binding_group(&gpd).unwrap();
        let l = StandardLayout::new(2, 4);
        let f = l.index(0, 1, 1);
        assert_eq!(b.bracket(&gpd, f, f).unwrap(), b.group.identity());
        let s = b.bracket(&gpd, f, l.index(0, 3, 1)).unwrap();
        assert_eq!(b.at(s, 0), l.index(0, 2, 0));
        assert_eq!(
            b.bracket(&gpd, f, l.index(1, 1, 0)),
            Err(GroupoidError::NotParallel(f, l.index(1, 1, 0)))
        );
    }

    #[test]
    fn bracket_cocycle_on_klein_hom_set() {
        let gpd = standard("klein", 2);
        let b = binding_group(&gpd).unwrap();
        let hom = gpd.hom(0, 1);
        for &f in hom {
            for &g in hom {
                for &h in hom {
                    let fg = b.bracket(&gpd, f, g).unwrap();
                    let gh = b.bracket(&gpd, g, h).unwrap();
                    assert_eq!(b.group.mul(fg, gh), b.bracket(&gpd, f, h).unwrap());
                }
            }
        }
    }
}
