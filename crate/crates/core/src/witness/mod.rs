//! Y-sets, the groups `F_ab`, composition on Y-sets, directed paths and the
//! quotient groupoid ℱ built from them.
//!
//! A [`GroupoidModel`] decodes an encoded groupoid (plain or double cover)
//! and precomputes everything the path machinery needs. The binding group is
//! named in the structure (one unary relation per class), which plays the
//! role of working over `acl(∅)`: automorphisms may not twist the binding
//! group by an outer automorphism.

mod check;
mod paths;
mod verify;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::group::{FiniteGroup, PermutationGroup};
use crate::groupoid::{binding_group, BindingGroup, FiniteGroupoid, GroupoidError};
use crate::structure::{
    decode_groupoid, AutEngine, DecodeError, GroupoidLayout, MultiSortedStructure, Relation,
    RestrictedGroup, StructureError,
};

pub use check::{check_witness, witness_from_model, WitnessInstance, WitnessReport};
pub use paths::{DirectedPath, FGroupoid, PathClasses, Probe, Reduction};
pub use verify::{
    all_paths, verify_construction_claims, verify_f_groupoid_claims, verify_path_claims,
    verify_standard_claims,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Groupoid(#[from] GroupoidError),
    #[error("need at least {need} objects, have {have}")]
    NotEnoughObjects { need: usize, have: usize },
    #[error("F-action on Y({from}, {to}) is not regular")]
    RegularityFailure { from: usize, to: usize },
    #[error("Y-sets have different sizes: {0:?}")]
    UnevenYSets(Vec<usize>),
    #[error("no automorphism carries the pair (0, 1) to ({0}, {1}) compatibly")]
    TransportFailure(usize, usize),
    #[error("composite of a decomposition of Y-elements left Y({0}, {1})")]
    DecompositionFailure(usize, usize),
    #[error("objects {0:?} are not pairwise distinct")]
    RepeatedObjects(Vec<usize>),
    #[error("path is malformed: {0}")]
    BadPath(String),
    #[error("no probe object avoids {0:?}")]
    NoProbeAvailable(Vec<usize>),
    #[error("probes disagree on paths {0:?} and {1:?}")]
    ProbeDisagreement(Vec<usize>, Vec<usize>),
    #[error("path {0:?} matches {1} classes instead of exactly one")]
    ClassificationFailure(Vec<usize>, usize),
}

/// Solution set of a reference morphism tuple over a base, with its groups.
///
/// `members` is sorted and equals the domain of both restricted groups, so
/// an index into `members` is also a point of their actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YSet {
    pub source_base: Vec<usize>,
    pub target_base: Vec<usize>,
    pub members: Vec<Vec<usize>>,
    pub reference: usize,
    /// Indices of the members forming the X-orbit (over both bases).
    pub x: Vec<usize>,
    /// Elements fixed in position across all members.
    pub support: Vec<usize>,
    /// `F = Aut(Y / source base)`, realised as the stabiliser of the
    /// common support.
    pub f_group: RestrictedGroup,
    /// Restrictions of `Aut(· / source base ∪ target base)`.
    pub g_group: RestrictedGroup,
}

impl YSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, tuple: &[usize]) -> Option<usize> {
        self.f_group.position(tuple)
    }

    pub fn f(&self) -> &PermutationGroup {
        &self.f_group.group
    }

    pub fn g(&self) -> &PermutationGroup {
        &self.g_group.group
    }

    /// The unique element of `F` sending member `from` to member `to`.
    pub fn f_element(&self, from: usize, to: usize) -> usize {
        self.f()
            .elements()
            .iter()
            .position(|p| p[from] == to)
            .expect("F acts transitively on Y")
    }
}

/// `{g ≡ f over base : g interdefinable with f over base}`, sorted.
pub fn y_members(engine: &AutEngine, base: &[usize], f: &[usize]) -> Vec<Vec<usize>> {
    let mut members: Vec<Vec<usize>> = engine
        .orbit_of(base, f)
        .into_iter()
        .filter(|g| engine.interdefinable(base, f, g))
        .collect();
    members.sort_unstable();
    members
}

/// Entries of `f` sitting at a coordinate where every member agrees.
pub fn common_support(members: &[Vec<usize>], f: &[usize]) -> Vec<usize> {
    (0..f.len())
        .filter(|&i| members.iter().all(|g| g[i] == f[i]))
        .map(|i| f[i])
        .collect()
}

/// Computes `Y = {g ≡ f over source base : g interdefinable with f}` and the
/// groups acting on it.
pub fn compute_y(
    engine: &AutEngine,
    source_base: &[usize],
    target_base: &[usize],
    f: &[usize],
) -> Result<YSet, WitnessError> {
    let both: Vec<usize> = source_base.iter().chain(target_base).copied().collect();
    let x_orbit = engine.orbit_of(&both, f);
    let members = y_members(engine, source_base, f);
    let support = common_support(&members, f);
    let mut f_base = source_base.to_vec();
    f_base.extend(&support);
    let f_group = engine.restricted_group(&f_base, &members)?;
    let g_group = engine.restricted_group(&both, &members)?;
    let x = x_orbit
        .iter()
        .map(|t| f_group.position(t).expect("X lies inside Y"))
        .collect();
    let reference = f_group.position(f).expect("reference lies in Y");
    Ok(YSet {
        source_base: source_base.to_vec(),
        target_base: target_base.to_vec(),
        members: f_group.domain.clone(),
        reference,
        x,
        support,
        f_group,
        g_group,
    })
}

/// An encoded connected groupoid with abelian vertex groups, decoded and
/// prepared for the Y-set constructions.
#[derive(Debug)]
pub struct GroupoidModel {
    engine: AutEngine,
    layout: GroupoidLayout,
    gpd: FiniteGroupoid,
    binding: BindingGroup,
    n: usize,
    ysets: Vec<Option<YSet>>,
    /// `rho[c·n+d][μ]`: index in `F_cd` of the transport of `μ ∈ F_01`.
    rho: Vec<Option<Vec<usize>>>,
    rho_inv: Vec<Option<Vec<usize>>>,
    /// `tables[(a·n+b)·n+c][h][g]` = index in `Y_ac` of `h.g`.
    tables: Vec<Option<Vec<Vec<usize>>>>,
}

/// Adds one unary relation per binding class on the morphism sort.
pub fn name_binding_classes(
    s: &MultiSortedStructure,
    binding: &BindingGroup,
) -> Result<MultiSortedStructure, StructureError> {
    let mut out = s.clone();
    for (k, class) in binding.classes.iter().enumerate() {
        out = out.with_relation(Relation {
            name: format!("binding_{k}"),
            sorts: vec!["M".into()],
            tuples: class.iter().map(|&m| vec![m]).collect(),
        })?;
    }
    Ok(out)
}

impl GroupoidModel {
    pub fn new(structure: &MultiSortedStructure) -> Result<Self, WitnessError> {
        let layout = GroupoidLayout::of(structure)?;
        let gpd = decode_groupoid(structure)?;
        let n = gpd.object_count();
        if n < 2 {
            return Err(WitnessError::NotEnoughObjects { need: 2, have: n });
        }
        let binding = binding_group(&gpd)?;
        let engine = AutEngine::new(name_binding_classes(structure, &binding)?)?;
        let mut model = GroupoidModel {
            engine,
            layout,
            gpd,
            binding,
            n,
            ysets: Vec::new(),
            rho: Vec::new(),
            rho_inv: Vec::new(),
            tables: Vec::new(),
        };
        model.ysets = (0..n * n)
            .map(|k| {
                let (c, d) = (k / n, k % n);
                (c != d)
                    .then(|| {
                        let reference = model.morphism_tuple(model.gpd.hom(c, d)[0]);
                        let y =
                            compute_y(&model.engine, &model.base(c), &model.base(d), &reference)?;
                        if !y.f().is_regular() {
                            return Err(WitnessError::RegularityFailure { from: c, to: d });
                        }
                        Ok(y)
                    })
                    .transpose()
            })
            .collect::<Result<_, _>>()?;
        let sizes: BTreeSet<usize> = model.ysets.iter().flatten().map(YSet::len).collect();
        if sizes.len() != 1 {
            return Err(WitnessError::UnevenYSets(sizes.into_iter().collect()));
        }
        for k in 0..n * n {
            let (c, d) = (k / n, k % n);
            let (fwd, back) = if c == d {
                (None, None)
            } else {
                let fwd = model.transport(c, d)?;
                let mut back = vec![0; fwd.len()];
                for (mu, &image) in fwd.iter().enumerate() {
                    back[image] = mu;
                }
                (Some(fwd), Some(back))
            };
            model.rho.push(fwd);
            model.rho_inv.push(back);
        }
        model.tables = vec![None; n * n * n];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a != b && b != c && a != c {
                        let table = model.build_table(a, b, c)?;
                        model.tables[(a * n + b) * n + c] = Some(table);
                    }
                }
            }
        }
        Ok(model)
    }

    pub fn engine(&self) -> &AutEngine {
        &self.engine
    }

    pub fn layout(&self) -> &GroupoidLayout {
        &self.layout
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.gpd
    }

    pub fn binding(&self) -> &BindingGroup {
        &self.binding
    }

    pub fn object_count(&self) -> usize {
        self.n
    }

    pub fn object_tuple(&self, c: usize) -> Vec<usize> {
        self.layout.object_tuple(c)
    }

    /// Surrogate for `c̄`: the object tuple and the vertex group at `c`.
    pub fn base(&self, c: usize) -> Vec<usize> {
        let mut b = self.object_tuple(c);
        b.extend(self.gpd.hom(c, c).iter().map(|&m| self.layout.morphism(m)));
        b
    }

    /// A morphism as a tuple carrying its endpoint tuples.
    pub fn morphism_tuple(&self, m: usize) -> Vec<usize> {
        let mut t = self.object_tuple(self.gpd.init(m));
        t.extend(self.object_tuple(self.gpd.ter(m)));
        t.push(self.layout.morphism(m));
        t
    }

    /// The groupoid morphism underlying a Y-member.
    pub fn underlying(&self, tuple: &[usize]) -> usize {
        let last = *tuple.last().expect("non-empty tuple");
        self.layout
            .morphism_of(last)
            .expect("last coordinate is a morphism")
    }

    pub fn y(&self, c: usize, d: usize) -> &YSet {
        self.ysets[c * self.n + d]
            .as_ref()
            .expect("Y-sets exist between distinct objects")
    }

    pub fn y_size(&self) -> usize {
        self.y(0, 1).len()
    }

    /// The extended binding group `F = F_01`.
    pub fn f(&self) -> &PermutationGroup {
        self.y(0, 1).f()
    }

    pub fn f_abstract(&self) -> &FiniteGroup {
        self.f().group()
    }

    /// `ρ_cd(μ)` as an element index of `F_cd`.
    pub fn rho(&self, c: usize, d: usize, mu: usize) -> usize {
        self.rho[c * self.n + d].as_ref().expect("distinct objects")[mu]
    }

    pub fn rho_inverse(&self, c: usize, d: usize, element: usize) -> usize {
        self.rho_inv[c * self.n + d]
            .as_ref()
            .expect("distinct objects")[element]
    }

    fn transport(&self, c: usize, d: usize) -> Result<Vec<usize>, WitnessError> {
        let y01 = self.y(0, 1);
        let ycd = self.y(c, d);
        let pairs: Vec<(usize, usize)> = self
            .object_tuple(0)
            .into_iter()
            .zip(self.object_tuple(c))
            .chain(self.object_tuple(1).into_iter().zip(self.object_tuple(d)))
            .collect();
        let alpha = self
            .engine
            .find_automorphism(&[], &pairs)
            .ok_or(WitnessError::TransportFailure(c, d))?;
        let image = |t: &[usize]| -> Vec<usize> { t.iter().map(|&x| alpha[x]).collect() };
        // α maps Y_01 onto Y_cd
        let carry: Vec<usize> = y01
            .members
            .iter()
            .map(|t| ycd.position(&image(t)))
            .collect::<Option<_>>()
            .ok_or(WitnessError::TransportFailure(c, d))?;
        let mut back = vec![0; carry.len()];
        for (i, &j) in carry.iter().enumerate() {
            back[j] = i;
        }
        y01.f()
            .elements()
            .iter()
            .map(|mu| {
                let conj: Vec<usize> = (0..ycd.len()).map(|j| carry[mu[back[j]]]).collect();
                ycd.f()
                    .index_of(&conj)
                    .ok_or(WitnessError::TransportFailure(c, d))
            })
            .collect()
    }

    /// All decompositions `g = ρ_ab(τ)(g₀)` with `g₀ ∈ X_ab`, as
    /// `(τ, g₀)`.
    pub fn decompositions(&self, a: usize, b: usize, g: usize) -> Vec<(usize, usize)> {
        let y = self.y(a, b);
        y.x.iter()
            .map(|&g0| (self.rho_inverse(a, b, y.f_element(g0, g)), g0))
            .collect()
    }

    /// `h.g` computed from the given decompositions of `g ∈ Y_ab` and
    /// `h ∈ Y_bc`: `ρ_ac(σ·τ)(h₀.g₀)`.
    pub fn compose_decomposed(
        &self,
        (a, b, c): (usize, usize, usize),
        (tau, g0): (usize, usize),
        (sigma, h0): (usize, usize),
    ) -> Result<usize, WitnessError> {
        let m_g0 = self.underlying(&self.y(a, b).members[g0]);
        let m_h0 = self.underlying(&self.y(b, c).members[h0]);
        let m = self
            .gpd
            .compose(m_g0, m_h0)
            .expect("composable by construction");
        let yac = self.y(a, c);
        let start = yac
            .position(&self.morphism_tuple(m))
            .ok_or(WitnessError::DecompositionFailure(a, c))?;
        let st = self.f_abstract().mul(sigma, tau);
        let perm = yac.f().element(self.rho(a, c, st));
        Ok(perm[start])
    }

    fn build_table(&self, a: usize, b: usize, c: usize) -> Result<Vec<Vec<usize>>, WitnessError> {
        let yab = self.y(a, b);
        let ybc = self.y(b, c);
        let dec_g: Vec<(usize, usize)> = (0..yab.len())
            .map(|g| self.decompositions(a, b, g)[0])
            .collect();
        (0..ybc.len())
            .map(|h| {
                let dh = self.decompositions(b, c, h)[0];
                dec_g
                    .iter()
                    .map(|&dg| self.compose_decomposed((a, b, c), dg, dh))
                    .collect()
            })
            .collect()
    }

    /// `h.g` for `g ∈ Y_ab`, `h ∈ Y_bc` with `a, b, c` distinct.
    pub fn compose_y(&self, (a, b, c): (usize, usize, usize), h: usize, g: usize) -> usize {
        self.tables[(a * self.n + b) * self.n + c]
            .as_ref()
            .expect("composition is defined for distinct objects")[h][g]
    }

    /// Every decomposition pair gives the same composite. Returns the first
    /// disagreeing `(h, g)` otherwise.
    pub fn decomposition_independence(
        &self,
        (a, b, c): (usize, usize, usize),
    ) -> Result<Option<(usize, usize)>, WitnessError> {
        for h in 0..self.y(b, c).len() {
            for g in 0..self.y(a, b).len() {
                let expected = self.compose_y((a, b, c), h, g);
                for dg in self.decompositions(a, b, g) {
                    for dh in self.decompositions(b, c, h) {
                        if self.compose_decomposed((a, b, c), dg, dh)? != expected {
                            return Ok(Some((h, g)));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    /// For each `f ∈ Y_ac` and `g ∈ Y_ab` exactly one `h ∈ Y_bc` has
    /// `h.g = f`. Returns a violating `(f, g)` otherwise.
    pub fn unique_divisors(&self, (a, b, c): (usize, usize, usize)) -> Option<(usize, usize)> {
        for g in 0..self.y(a, b).len() {
            let mut hits = vec![0usize; self.y(a, c).len()];
            for h in 0..self.y(b, c).len() {
                hits[self.compose_y((a, b, c), h, g)] += 1;
            }
            if let Some(f) = hits.iter().position(|&k| k != 1) {
                return Some((f, g));
            }
        }
        None
    }

    /// Conjugation by automorphisms fixing the tuples of objects 0 and 1
    /// acts trivially on `F_01`, so transports do not depend on the
    /// carrying automorphism. Returns an offending automorphism otherwise.
    pub fn transport_independence(&self) -> Option<Vec<usize>> {
        let mut fixed = self.object_tuple(0);
        fixed.extend(self.object_tuple(1));
        let y = self.y(0, 1);
        let stab = self.engine.group(&fixed);
        for beta in stab.generators() {
            let Some(r) = y.f_group.restrict(beta) else {
                return Some(beta.clone());
            };
            let r_inv = crate::group::invert(&r);
            for mu in y.f().elements() {
                let conj = crate::group::compose(&r, &crate::group::compose(mu, &r_inv));
                if &conj != mu {
                    return Some(beta.clone());
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::groupoid::build_standard_groupoid;
    use crate::structure::{encode_double_cover, encode_groupoid};

    pub(crate) fn model(spec: &str, n: usize, cover: bool) -> GroupoidModel {
        let gpd = build_standard_groupoid(&GroupSpec::parse(spec).unwrap().build().unwrap(), n);
        let s = if cover {
            encode_double_cover(&gpd)
        } else {
            encode_groupoid(&gpd)
        };
        GroupoidModel::new(&s).unwrap()
    }

    #[test]
    fn y_set_sizes() {
        assert_eq!(model("cyclic:2", 3, false).y_size(), 2);
        assert_eq!(model("cyclic:2", 3, true).y_size(), 4);
        assert_eq!(model("trivial", 3, true).y_size(), 2);
        assert_eq!(model("cyclic:3", 3, true).y_size(), 6);
    }

    #[test]
    fn f_groups() {
        let plain = model("cyclic:2", 3, false);
        assert_eq!(plain.f().order(), 2);
        let cover = model("cyclic:2", 3, true);
        assert_eq!(cover.f().order(), 4);
        assert!(cover.f_abstract().is_abelian());
        let z3 = model("cyclic:3", 3, true);
        assert_eq!(z3.f().order(), 6);
        assert!(z3.f_abstract().is_abelian());
        let y = z3.y(0, 1);
        assert_eq!(y.g().order(), 3);
        assert!(y.f().contains_group(y.g()));
        assert!(y.f().centralizes(y.g()));
    }

    #[test]
    fn y_set_does_not_depend_on_the_reference() {
        let m = model("cyclic:2", 3, true);
        let y = m.y(0, 1);
        for &x in &y.x {
            let other = compute_y(m.engine(), &m.base(0), &m.base(1), &y.members[x]).unwrap();
            assert_eq!(other.members, y.members);
        }
    }

    #[test]
    fn transports_are_isomorphisms() {
        let m = model("cyclic:3", 3, true);
        let f = m.f_abstract();
        for (c, d) in [(1, 2), (2, 0), (1, 0)] {
            let fcd = m.y(c, d).f().group();
            for x in f.elements() {
                for y in f.elements() {
                    assert_eq!(
                        m.rho(c, d, f.mul(x, y)),
                        fcd.mul(m.rho(c, d, x), m.rho(c, d, y))
                    );
                }
            }
        }
        assert!(m.transport_independence().is_none());
    }

    #[test]
    fn composition_extends_the_groupoid_on_x() {
        let m = model("cyclic:2", 3, true);
        let (a, b, c) = (0, 1, 2);
        for &g in &m.y(a, b).x {
            for &h in &m.y(b, c).x {
                let f = m.compose_y((a, b, c), h, g);
                let mg = m.underlying(&m.y(a, b).members[g]);
                let mh = m.underlying(&m.y(b, c).members[h]);
                let expected = m.morphism_tuple(m.groupoid().compose(mg, mh).unwrap());
                assert_eq!(m.y(a, c).members[f], expected);
            }
        }
    }

    #[test]
    fn decomposition_independence_and_divisors() {
        let m = model("cyclic:2", 3, true);
        assert_eq!(m.decomposition_independence((0, 1, 2)).unwrap(), None);
        assert_eq!(m.unique_divisors((2, 0, 1)), None);
    }

    #[test]
    fn nonabelian_vertex_groups_are_rejected() {
        let gpd = build_standard_groupoid(
            &GroupSpec::parse("symmetric:3").unwrap().build().unwrap(),
            3,
        );
        assert!(matches!(
            GroupoidModel::new(&encode_groupoid(&gpd)),
            Err(WitnessError::Groupoid(
                GroupoidError::NonAbelianVertex { .. }
            ))
        ));
    }
}
