use serde::{Deserialize, Serialize};

use super::{GroupoidModel, WitnessError};
use crate::group::{isomorphism_search, FiniteGroup};
use crate::groupoid::{validate_groupoid, FiniteGroupoid, RawGroupoid, RawMorphism};

/// `(c₀, g₁, c₁, …, gₖ, cₖ)` with `gᵢ` an index into `Y_{c_{i-1} c_i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DirectedPath {
    pub objects: Vec<usize>,
    pub steps: Vec<usize>,
}

impl DirectedPath {
    pub fn new(objects: Vec<usize>, steps: Vec<usize>) -> Self {
        DirectedPath { objects, steps }
    }

    pub fn one(c: usize, g: usize, d: usize) -> Self {
        DirectedPath::new(vec![c, d], vec![g])
    }

    pub fn two(c: usize, g: usize, e: usize, h: usize, d: usize) -> Self {
        DirectedPath::new(vec![c, e, d], vec![g, h])
    }

    pub fn source(&self) -> usize {
        self.objects[0]
    }

    pub fn target(&self) -> usize {
        *self.objects.last().expect("non-empty path")
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Concatenation: first `self`, then `other`.
    pub fn then(&self, other: &DirectedPath) -> DirectedPath {
        debug_assert_eq!(self.target(), other.source());
        let mut objects = self.objects.clone();
        objects.extend_from_slice(&other.objects[1..]);
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        DirectedPath { objects, steps }
    }

    pub fn object_set(&self) -> Vec<usize> {
        let mut o = self.objects.clone();
        o.sort_unstable();
        o.dedup();
        o
    }
}

/// How a path was shown equivalent to its representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reduction {
    /// Compared under every probe avoiding the paths involved.
    Direct,
    /// The path visits every object; a prefix was replaced by an equivalent
    /// 2-step path before comparing, using compatibility of `∼` with
    /// concatenation.
    Substituted,
    /// The comparison came out unequal.
    Failed,
}

/// A fresh object `c*` with `g* ∈ Y_{c* c₀}` to fold paths against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Probe {
    pub object: usize,
    pub element: usize,
}

impl GroupoidModel {
    pub fn check_path(&self, q: &DirectedPath) -> Result<(), WitnessError> {
        let bad = |why: &str| Err(WitnessError::BadPath(format!("{why}: {q:?}")));
        if q.steps.is_empty() || q.objects.len() != q.steps.len() + 1 {
            return bad("need k ≥ 1 steps between k+1 objects");
        }
        if q.objects.iter().any(|&c| c >= self.n) {
            return bad("unknown object");
        }
        for (w, &g) in q.objects.windows(2).zip(&q.steps) {
            if w[0] == w[1] {
                return bad("consecutive objects coincide");
            }
            if g >= self.y(w[0], w[1]).len() {
                return bad("step outside its Y-set");
            }
        }
        Ok(())
    }

    /// All probes avoiding `avoid` for paths starting at `start`.
    pub fn probes(&self, avoid: &[usize], start: usize) -> Vec<Probe> {
        (0..self.n)
            .filter(|c| !avoid.contains(c) && *c != start)
            .flat_map(|c| {
                (0..self.y(c, start).len()).map(move |g| Probe {
                    object: c,
                    element: g,
                })
            })
            .collect()
    }

    fn first_probe(&self, avoid: &[usize], start: usize) -> Result<Probe, WitnessError> {
        (0..self.n)
            .find(|c| !avoid.contains(c) && *c != start)
            .map(|c| Probe {
                object: c,
                element: 0,
            })
            .ok_or_else(|| WitnessError::NoProbeAvailable(avoid.to_vec()))
    }

    /// `g*ₖ` where `g*₀ = g*` and `g*ᵢ = gᵢ.g*ᵢ₋₁`; an index into
    /// `Y_{c* cₖ}`.
    pub fn fold(&self, q: &DirectedPath, probe: Probe) -> Result<usize, WitnessError> {
        self.check_path(q)?;
        let star = probe.object;
        if q.objects.contains(&star) || probe.element >= self.y(star, q.source()).len() {
            return Err(WitnessError::BadPath(format!(
                "probe {probe:?} is not fresh for {q:?}"
            )));
        }
        let mut cur = probe.element;
        for (w, &g) in q.objects.windows(2).zip(&q.steps) {
            cur = self.compose_y((star, w[0], w[1]), g, cur);
        }
        Ok(cur)
    }

    pub fn path_equivalent(
        &self,
        q: &DirectedPath,
        r: &DirectedPath,
        probe: Probe,
    ) -> Result<bool, WitnessError> {
        if q.source() != r.source() || q.target() != r.target() {
            return Err(WitnessError::BadPath(format!(
                "{q:?} and {r:?} are not parallel"
            )));
        }
        Ok(self.fold(q, probe)? == self.fold(r, probe)?)
    }

    /// Compares under every valid probe; disagreement between probes is an
    /// error rather than an answer.
    pub fn path_equivalent_all_probes(
        &self,
        q: &DirectedPath,
        r: &DirectedPath,
    ) -> Result<bool, WitnessError> {
        let mut avoid = q.object_set();
        avoid.extend(r.object_set());
        avoid.sort_unstable();
        avoid.dedup();
        let probes = self.probes(&avoid, q.source());
        let mut verdict = None;
        for p in probes {
            let v = self.path_equivalent(q, r, p)?;
            if *verdict.get_or_insert(v) != v {
                return Err(WitnessError::ProbeDisagreement(
                    q.objects.clone(),
                    r.objects.clone(),
                ));
            }
        }
        verdict.ok_or(WitnessError::NoProbeAvailable(avoid))
    }

    /// Class tables for `D²/∼`. Needs four objects so that 2-step loops
    /// through two different intermediates can be compared.
    pub fn path_classes(&self) -> Result<PathClasses<'_>, WitnessError> {
        if self.n < 4 {
            return Err(WitnessError::NotEnoughObjects {
                need: 4,
                have: self.n,
            });
        }
        let n = self.n;
        let size = self.y_size();
        let mut classes = PathClasses {
            model: self,
            loop_via: vec![Vec::new(); n],
            reps: vec![Vec::new(); n * n],
        };
        for c in 0..n {
            let e0 = classes.default_intermediate(c, c);
            let reference: Vec<DirectedPath> = (0..size)
                .map(|k| DirectedPath::two(c, 0, e0, k, c))
                .collect();
            let probe = self.first_probe(&[c, e0], c)?;
            let folds: Vec<usize> = reference
                .iter()
                .map(|p| self.fold(p, probe))
                .collect::<Result<_, _>>()?;
            let mut seen = folds.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != size {
                return Err(WitnessError::ClassificationFailure(
                    reference[0].objects.clone(),
                    seen.len(),
                ));
            }
            let mut via = vec![Vec::new(); n];
            for e in (0..n).filter(|&e| e != c) {
                if e == e0 {
                    via[e] = (0..size).collect();
                    continue;
                }
                let probe = self.first_probe(&[c, e0, e], c)?;
                let targets: Vec<usize> = reference
                    .iter()
                    .map(|p| self.fold(p, probe))
                    .collect::<Result<_, _>>()?;
                let mut slot = vec![None; size];
                for h in 0..size {
                    let v = self.fold(&DirectedPath::two(c, 0, e, h, c), probe)?;
                    let hits: Vec<usize> = (0..size).filter(|&k| targets[k] == v).collect();
                    match hits.as_slice() {
                        [k] if slot[*k].is_none() => slot[*k] = Some(h),
                        _ => {
                            return Err(WitnessError::ClassificationFailure(
                                vec![c, e, c],
                                hits.len(),
                            ))
                        }
                    }
                }
                via[e] = slot.into_iter().map(|h| h.expect("bijective")).collect();
            }
            classes.loop_via[c] = via;
        }
        for c in 0..n {
            for d in 0..n {
                let reps = if c == d {
                    (0..size)
                        .map(|k| classes.loop_through(c, classes.default_intermediate(c, c), k))
                        .collect()
                } else {
                    let e = classes.default_intermediate(c, d);
                    let mut slot: Vec<Option<DirectedPath>> = vec![None; size];
                    for h in 0..size {
                        let p = DirectedPath::two(c, 0, e, h, d);
                        let k = classes.classify(&p)?;
                        if slot[k].is_some() {
                            return Err(WitnessError::ClassificationFailure(p.objects, 2));
                        }
                        slot[k] = Some(p);
                    }
                    slot.into_iter().map(|p| p.expect("bijective")).collect()
                };
                classes.reps[c * n + d] = reps;
            }
        }
        Ok(classes)
    }
}

/// Classification of directed paths into `Mor_ℱ(c, d)`, indexed
/// `0..|Y|`. Between distinct objects class `k` contains the one-step path
/// through `Y_cd` member `k`; at `c` it contains the loop
/// `(c, 0, e₀, k, c)` through the least other object `e₀`.
#[derive(Debug)]
pub struct PathClasses<'m> {
    model: &'m GroupoidModel,
    /// `loop_via[c][e][k]`: the `h` with `(c, 0, e, h, c)` in loop class `k`.
    loop_via: Vec<Vec<Vec<usize>>>,
    reps: Vec<Vec<DirectedPath>>,
}

impl<'m> PathClasses<'m> {
    pub fn model(&self) -> &'m GroupoidModel {
        self.model
    }

    pub fn class_count(&self) -> usize {
        self.model.y_size()
    }

    fn default_intermediate(&self, c: usize, d: usize) -> usize {
        (0..self.model.n)
            .find(|&e| e != c && e != d)
            .expect("at least three objects")
    }

    fn loop_through(&self, c: usize, e: usize, k: usize) -> DirectedPath {
        DirectedPath::two(c, 0, e, self.loop_via[c][e][k], c)
    }

    /// The class of `q` in `Mor_ℱ(source, target)`.
    pub fn classify(&self, q: &DirectedPath) -> Result<usize, WitnessError> {
        let m = self.model;
        m.check_path(q)?;
        let (c, d) = (q.source(), q.target());
        let objs = q.object_set();
        let probe = m.first_probe(&objs, c)?;
        let v = m.fold(q, probe)?;
        let size = self.class_count();
        let hits: Vec<usize> = if c != d {
            (0..size)
                .map(|k| m.fold(&DirectedPath::one(c, k, d), probe))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .enumerate()
                .filter(|&(_, w)| w == v)
                .map(|(k, _)| k)
                .collect()
        } else {
            let e = *objs
                .iter()
                .find(|&&e| e != c)
                .expect("a loop visits another object");
            let mut hits = Vec::new();
            for k in 0..size {
                if m.fold(&self.loop_through(c, e, k), probe)? == v {
                    hits.push(k);
                }
            }
            hits
        };
        match hits.as_slice() {
            [k] => Ok(*k),
            _ => Err(WitnessError::ClassificationFailure(
                q.objects.clone(),
                hits.len(),
            )),
        }
    }

    /// Canonical 2-step representative: least intermediate object, then
    /// least Y-indices.
    pub fn representative(&self, c: usize, d: usize, k: usize) -> &DirectedPath {
        &self.reps[c * self.model.n + d][k]
    }

    /// The 2-step member of class `k` through intermediate `e` with first
    /// step 0.
    pub fn member_through(
        &self,
        c: usize,
        d: usize,
        k: usize,
        e: usize,
    ) -> Result<DirectedPath, WitnessError> {
        if c == d {
            return Ok(self.loop_through(c, e, k));
        }
        for h in 0..self.class_count() {
            let p = DirectedPath::two(c, 0, e, h, d);
            if self.classify(&p)? == k {
                return Ok(p);
            }
        }
        Err(WitnessError::ClassificationFailure(vec![c, e, d], 0))
    }

    /// Checks that `q` is equivalent to `reduce_path(q)`.
    ///
    /// Paths that leave no probe free are first shortened: the prefix
    /// without the last step is replaced by an equivalent 2-step path on
    /// its own objects.
    pub fn verify_reduction(&self, q: &DirectedPath) -> Result<Reduction, WitnessError> {
        let Some((r, substituted)) = self.reduce_inside(q)? else {
            return Ok(Reduction::Failed);
        };
        let rep = self.reduce_path(&r)?;
        Ok(
            match (r == rep || self.equivalent_two_step(&r, &rep)?, substituted) {
                (false, _) => Reduction::Failed,
                (true, false) => Reduction::Direct,
                (true, true) => Reduction::Substituted,
            },
        )
    }

    /// A 2-step path on the objects of `q` equivalent to `q`, and whether a
    /// prefix substitution was needed; `None` if a comparison fails.
    fn reduce_inside(
        &self,
        q: &DirectedPath,
    ) -> Result<Option<(DirectedPath, bool)>, WitnessError> {
        let m = self.model;
        let (c, d) = (q.source(), q.target());
        let objs = q.object_set();
        if objs.len() < m.n {
            let k = self.classify(q)?;
            let r = match objs.iter().find(|&&e| e != c && e != d) {
                Some(&e) => self.member_through(c, d, k, e)?,
                None => self.representative(c, d, k).clone(),
            };
            if r == *q {
                return Ok(Some((r, false)));
            }
            return Ok(m.path_equivalent_all_probes(q, &r)?.then_some((r, false)));
        }
        let last = q.len() - 1;
        if last < 2 {
            return Err(WitnessError::NoProbeAvailable(objs));
        }
        let prefix = DirectedPath::new(q.objects[..=last].to_vec(), q.steps[..last].to_vec());
        let Some((head, _)) = self.reduce_inside(&prefix)? else {
            return Ok(None);
        };
        let shorter = head.then(&DirectedPath::one(q.objects[last], q.steps[last], d));
        if shorter.object_set().len() == m.n {
            return Err(WitnessError::NoProbeAvailable(objs));
        }
        Ok(self.reduce_inside(&shorter)?.map(|(r, _)| (r, true)))
    }

    /// `r ∼ s` for parallel 2-step paths, through the 1-step path of the
    /// class of `r` when no probe avoids both.
    fn equivalent_two_step(
        &self,
        r: &DirectedPath,
        s: &DirectedPath,
    ) -> Result<bool, WitnessError> {
        let m = self.model;
        match m.path_equivalent_all_probes(r, s) {
            Err(WitnessError::NoProbeAvailable(_)) if r.source() != r.target() => {
                let short = DirectedPath::one(r.source(), self.classify(r)?, r.target());
                Ok(m.path_equivalent_all_probes(r, &short)?
                    && m.path_equivalent_all_probes(&short, s)?)
            }
            other => other,
        }
    }

    pub fn reduce_path(&self, q: &DirectedPath) -> Result<DirectedPath, WitnessError> {
        let k = self.classify(q)?;
        Ok(self.representative(q.source(), q.target(), k).clone())
    }

    /// A short member of class `k` using no objects beyond `c`, `d` and
    /// `via` (used for loops; ignored otherwise).
    fn short(&self, c: usize, d: usize, k: usize, via: usize) -> DirectedPath {
        if c != d {
            DirectedPath::one(c, k, d)
        } else {
            self.loop_through(c, via, k)
        }
    }

    /// `ℱ = D²/∼` as a finite groupoid. Morphism `(c·n+d)·|Y|+k` is class
    /// `k` of `Mor_ℱ(c, d)`; composition is concatenation.
    pub fn build_f_groupoid(&self) -> Result<FGroupoid, WitnessError> {
        let m = self.model;
        let n = m.n;
        let size = self.class_count();
        let id = |c: usize, d: usize, k: usize| (c * n + d) * size + k;
        let mut morphisms = Vec::with_capacity(n * n * size);
        let mut labels = Vec::with_capacity(n * n * size);
        for c in 0..n {
            for d in 0..n {
                for k in 0..size {
                    morphisms.push(RawMorphism {
                        id: id(c, d, k),
                        init: c,
                        ter: d,
                    });
                    labels.push(format!("[{c}->{d} #{k}]"));
                }
            }
        }
        let mut composition = Vec::new();
        for c in 0..n {
            for d in 0..n {
                for e in 0..n {
                    // keep every concatenation within three objects
                    let via = |x: usize, other: usize| {
                        if other != x {
                            other
                        } else {
                            self.default_intermediate(x, x)
                        }
                    };
                    let first_via = via(c, if d != c { d } else { e });
                    let second_via = via(d, if c != d { c } else { e });
                    let second_via = if c == d && d == e {
                        first_via
                    } else {
                        second_via
                    };
                    for k in 0..size {
                        let p = self.short(c, d, k, first_via);
                        for l in 0..size {
                            let q = p.then(&self.short(d, e, l, second_via));
                            let r = self.classify(&q)?;
                            composition.push([id(c, d, k), id(d, e, l), id(c, e, r)]);
                        }
                    }
                }
            }
        }
        let identities = (0..n)
            .map(|c| {
                let e = self.default_intermediate(c, c);
                let y = m.y(c, e);
                let x = m.underlying(&y.members[y.reference]);
                let back = m
                    .y(e, c)
                    .position(&m.morphism_tuple(m.gpd.inverse(x)))
                    .expect("inverse of X lies in Y");
                Ok(id(
                    c,
                    c,
                    self.classify(&DirectedPath::two(c, y.reference, e, back, c))?,
                ))
            })
            .collect::<Result<Vec<_>, WitnessError>>()?;
        let raw = RawGroupoid {
            objects: n,
            morphisms,
            composition,
            identities,
            labels: Some(labels),
        };
        let groupoid = validate_groupoid(&raw)?;
        Ok(FGroupoid {
            groupoid,
            classes: size,
            representatives: (0..n * n)
                .flat_map(|cd| self.reps[cd].iter().cloned())
                .collect(),
        })
    }

    /// The image in `Mor_ℱ` of a morphism of the underlying groupoid.
    pub fn embed(&self, f: &FGroupoid, morphism: usize) -> Result<usize, WitnessError> {
        let m = self.model;
        let (c, d) = (m.gpd.init(morphism), m.gpd.ter(morphism));
        let k = if c != d {
            m.y(c, d)
                .position(&m.morphism_tuple(morphism))
                .ok_or(WitnessError::DecompositionFailure(c, d))?
        } else {
            let e = self.default_intermediate(c, c);
            let y = m.y(c, e);
            let bridge = m.underlying(&y.members[y.reference]);
            let out = m.gpd.compose(morphism, bridge).expect("composable");
            let first = y
                .position(&m.morphism_tuple(out))
                .ok_or(WitnessError::DecompositionFailure(c, e))?;
            let second = m
                .y(e, c)
                .position(&m.morphism_tuple(m.gpd.inverse(bridge)))
                .ok_or(WitnessError::DecompositionFailure(e, c))?;
            self.classify(&DirectedPath::two(c, first, e, second, c))?
        };
        Ok(f.morphism(c, d, k))
    }

    /// Checks that embedding the underlying groupoid is injective and
    /// preserves composition. Returns an offending pair of morphisms.
    pub fn embedding_failure(&self, f: &FGroupoid) -> Result<Option<(usize, usize)>, WitnessError> {
        let g = &self.model.gpd;
        let image: Vec<usize> = (0..g.morphism_count())
            .map(|x| self.embed(f, x))
            .collect::<Result<_, _>>()?;
        let mut sorted = image.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                let a = image.iter().position(|&v| v == w[0]).expect("present");
                let b = image.iter().rposition(|&v| v == w[0]).expect("present");
                return Ok(Some((a, b)));
            }
        }
        for x in 0..g.morphism_count() {
            for y in (0..g.morphism_count()).filter(|&y| g.init(y) == g.ter(x)) {
                let xy = g.compose(x, y).expect("composable");
                if f.groupoid.compose(image[x], image[y]) != Some(image[xy]) {
                    return Ok(Some((x, y)));
                }
            }
        }
        Ok(None)
    }
}

/// The groupoid `ℱ` of path classes.
#[derive(Debug, Clone)]
pub struct FGroupoid {
    pub groupoid: FiniteGroupoid,
    pub classes: usize,
    /// Canonical 2-step representative of each morphism, by id.
    pub representatives: Vec<DirectedPath>,
}

impl FGroupoid {
    pub fn morphism(&self, c: usize, d: usize, k: usize) -> usize {
        (c * self.groupoid.object_count() + d) * self.classes + k
    }

    pub fn vertex_group(&self, c: usize) -> FiniteGroup {
        self.groupoid
            .vertex_group(c)
            .expect("validated groupoid")
            .group
    }

    /// An isomorphism from the vertex group at `c` onto `target`, if any.
    pub fn vertex_isomorphism(&self, c: usize, target: &FiniteGroup) -> Option<Vec<usize>> {
        isomorphism_search(&self.vertex_group(c), target)
            .ok()
            .flatten()
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::model;
    use super::*;

    #[test]
    fn fold_rejects_stale_probes() {
        let m = model("cyclic:2", 4, false);
        let q = DirectedPath::one(0, 0, 1);
        assert!(m
            .fold(
                &q,
                Probe {
                    object: 0,
                    element: 0
                }
            )
            .is_err());
        assert!(m
            .fold(
                &q,
                Probe {
                    object: 2,
                    element: 0
                }
            )
            .is_ok());
    }

    #[test]
    fn equivalence_examples() {
        let m = model("cyclic:2", 4, true);
        let gpd = m.groupoid();
        let b = m.binding();
        let (g, h) = (gpd.hom(0, 1)[0], gpd.hom(1, 2)[0]);
        let step = |x: usize| {
            m.y(gpd.init(x), gpd.ter(x))
                .position(&m.morphism_tuple(x))
                .unwrap()
        };
        let q = DirectedPath::two(0, step(g), 1, step(h), 2);
        assert!(m.path_equivalent_all_probes(&q, &q).unwrap());
        for s in (0..b.order()).filter(|&s| s != b.group.identity()) {
            let sigma = b.at(s, 1);
            let sigma_inv = gpd.inverse(sigma);
            let g_sigma = gpd.compose(g, sigma).unwrap();
            let h_over = gpd.compose(sigma_inv, h).unwrap();
            let balanced = DirectedPath::two(0, step(g_sigma), 1, step(h_over), 2);
            assert!(m.path_equivalent_all_probes(&q, &balanced).unwrap());
            let unbalanced = DirectedPath::two(0, step(g_sigma), 1, step(h), 2);
            assert!(!m.path_equivalent_all_probes(&q, &unbalanced).unwrap());
        }
    }

    #[test]
    fn too_few_objects_for_a_probe() {
        let m = model("cyclic:2", 3, false);
        let q = DirectedPath::two(0, 0, 1, 0, 2);
        assert!(matches!(
            m.path_equivalent_all_probes(&q, &q),
            Err(WitnessError::NoProbeAvailable(_))
        ));
    }

    #[test]
    fn reduction_is_idempotent_on_representatives() {
        let m = model("cyclic:2", 4, true);
        let cls = m.path_classes().unwrap();
        for c in 0..4 {
            for d in 0..4 {
                for k in 0..cls.class_count() {
                    let r = cls.representative(c, d, k);
                    assert_eq!(r.len(), 2);
                    assert_eq!(&cls.reduce_path(r).unwrap(), r);
                }
            }
        }
        let one = DirectedPath::one(0, 3, 2);
        let red = cls.reduce_path(&one).unwrap();
        assert!(m.path_equivalent_all_probes(&one, &red).unwrap());
    }

    #[test]
    fn f_groupoid_of_plain_z2_matches_the_groupoid() {
        let m = model("cyclic:2", 4, false);
        let cls = m.path_classes().unwrap();
        let f = cls.build_f_groupoid().unwrap();
        assert_eq!(f.groupoid.morphism_count(), m.groupoid().morphism_count());
        assert_eq!(f.vertex_group(0).order(), 2);
        assert_eq!(cls.embedding_failure(&f).unwrap(), None);
    }

    #[test]
    fn f_groupoid_of_the_cover() {
        let m = model("cyclic:2", 4, true);
        let cls = m.path_classes().unwrap();
        let f = cls.build_f_groupoid().unwrap();
        let v = f.vertex_group(0);
        assert_eq!(v.order(), 4);
        assert!(v.is_abelian());
        assert!(f.vertex_isomorphism(0, m.f_abstract()).is_some());
        assert_eq!(cls.embedding_failure(&f).unwrap(), None);
        let t = model("trivial", 4, true);
        let tf = t.path_classes().unwrap().build_f_groupoid().unwrap();
        assert_eq!(tf.vertex_group(2).order(), 2);
    }
}
