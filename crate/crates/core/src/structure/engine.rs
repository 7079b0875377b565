use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::sync::{Arc, Mutex};

use super::refine::{pack, Index, HOLE};
use super::{Element, MultiSortedStructure, StructureError, MAX_CARRIER};
use crate::group::{compose, invert, permutation_group, PermutationGroup};

const NONE: usize = usize::MAX;

/// Automorphism search over one structure, with stabilizer chains cached
/// per base.
#[derive(Debug)]
pub struct AutEngine {
    structure: MultiSortedStructure,
    index: Index,
    constants: Vec<usize>,
    cache: Mutex<HashMap<Vec<usize>, Arc<AutomorphismGroup>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Level {
    point: usize,
    /// orbit point → an element carrying `point` to it
    transversal: BTreeMap<usize, Vec<usize>>,
}

/// `Aut(s/base)`, held as a stabilizer chain with a generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismGroup {
    base: Vec<usize>,
    degree: usize,
    generators: Vec<Vec<usize>>,
    levels: Vec<Level>,
    order: u128,
}

impl AutomorphismGroup {
    /// The pointwise-fixed base (constants included), sorted.
    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Membership by sifting through the chain.
    pub fn contains(&self, perm: &[usize]) -> bool {
        if perm.len() != self.degree || self.base.iter().any(|&b| perm[b] != b) {
            return false;
        }
        let mut g = perm.to_vec();
        for level in &self.levels {
            match level.transversal.get(&g[level.point]) {
                Some(u) => g = compose(&invert(u), &g),
                None => return false,
            }
        }
        g.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// All members in lexicographic order, refused above `cap`.
    pub fn members(&self, cap: usize) -> Result<Vec<Vec<usize>>, StructureError> {
        if self.order > cap as u128 {
            return Err(StructureError::BudgetExceeded {
                size: usize::try_from(self.order).unwrap_or(usize::MAX),
                limit: cap,
            });
        }
        let mut out = vec![(0..self.degree).collect::<Vec<_>>()];
        for level in self.levels.iter().rev() {
            out = level
                .transversal
                .values()
                .flat_map(|u| out.iter().map(move |g| compose(u, g)))
                .collect();
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Orbit of a tuple, sorted.
    pub fn orbit(&self, tuple: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::from([tuple.to_vec()]);
        let mut queue = VecDeque::from([tuple.to_vec()]);
        while let Some(t) = queue.pop_front() {
            for g in &self.generators {
                let image: Vec<usize> = t.iter().map(|&x| g[x]).collect();
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Points fixed by every member.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree)
            .filter(|&x| self.generators.iter().all(|g| g[x] == x))
            .collect()
    }
}

/// The group of restrictions of `Aut(s/base)` to an invariant tuple set.
/// Element `i` of `group` permutes `domain` by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedGroup {
    pub domain: Vec<Vec<usize>>,
    pub group: PermutationGroup,
}

impl RestrictedGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn position(&self, tuple: &[usize]) -> Option<usize> {
        self.domain
            .binary_search_by(|t| t.as_slice().cmp(tuple))
            .ok()
    }

    /// Restriction of a structure automorphism, if it preserves the domain.
    pub fn restrict(&self, perm: &[usize]) -> Option<Vec<usize>> {
        self.domain
            .iter()
            .map(|t| {
                let image: Vec<usize> = t.iter().map(|&x| perm[x]).collect();
                self.position(&image)
            })
            .collect()
    }

    /// Group element induced by a structure automorphism.
    pub fn element_of(&self, perm: &[usize]) -> Option<usize> {
        self.group.index_of(&self.restrict(perm)?)
    }
}

struct Search<'a> {
    index: &'a Index,
    left: &'a [u32],
    right: &'a [u32],
    img: Vec<usize>,
    pre: Vec<usize>,
    free: Vec<usize>,
    trail: Vec<usize>,
    queue: Vec<usize>,
}

impl Search<'_> {
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if self.img[x] == y {
            return true;
        }
        if self.img[x] != NONE || self.pre[y] != NONE || self.left[x] != self.right[y] {
            return false;
        }
        self.img[x] = y;
        self.pre[y] = x;
        self.free[self.left[x] as usize] -= 1;
        self.trail.push(x);
        self.queue.push(x);
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().expect("trail above mark");
            self.pre[self.img[x]] = NONE;
            self.free[self.left[x] as usize] += 1;
            self.img[x] = NONE;
        }
        self.queue.clear();
    }

    fn propagate(&mut self) -> bool {
        while let Some(x) = self.queue.pop() {
            for occ in &self.index.occurs[x] {
                let rel = &self.index.rels[occ.rel as usize];
                let t = &rel.tuples[occ.tuple as usize];
                let mut open = None;
                let mut count = 0;
                for (i, &y) in t.iter().enumerate() {
                    if self.img[y] == NONE {
                        count += 1;
                        open = Some(i);
                    }
                }
                match (count, open) {
                    (0, _) => {
                        if !rel.members.contains(&pack(t.iter().map(|&y| self.img[y]))) {
                            return false;
                        }
                    }
                    (1, Some(i)) => {
                        if let Some(map) = &rel.functional[i] {
                            let key = pack(t.iter().enumerate().map(|(j, &y)| {
                                if j == i {
                                    HOLE
                                } else {
                                    self.img[y]
                                }
                            }));
                            match map.get(&key) {
                                Some(&v) => {
                                    if !self.assign(t[i], v) {
                                        return false;
                                    }
                                }
                                None => return false,
                            }
                        }
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn dfs(&mut self, cells: &HashMap<u32, Vec<usize>>) -> bool {
        let mut best: Option<(usize, usize)> = None;
        for x in 0..self.index.points {
            if self.img[x] == NONE {
                let n = self.free[self.left[x] as usize];
                if best.is_none_or(|(_, m)| n < m) {
                    best = Some((x, n));
                }
            }
        }
        let Some((x, _)) = best else {
            return true;
        };
        for &y in &cells[&self.left[x]] {
            if self.pre[y] != NONE {
                continue;
            }
            let mark = self.trail.len();
            if self.assign(x, y) && self.propagate() && self.dfs(cells) {
                return true;
            }
            self.undo(mark);
        }
        false
    }
}

impl AutEngine {
    pub fn new(structure: MultiSortedStructure) -> Result<Self, StructureError> {
        let size = structure.carrier_size();
        if size > MAX_CARRIER {
            return Err(StructureError::BudgetExceeded {
                size,
                limit: MAX_CARRIER,
            });
        }
        let index = Index::new(&structure);
        let constants = structure.constant_points();
        Ok(AutEngine {
            structure,
            index,
            constants,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn structure(&self) -> &MultiSortedStructure {
        &self.structure
    }

    pub fn degree(&self) -> usize {
        self.index.points
    }

    fn normalise(&self, base: &[usize]) -> Vec<usize> {
        let mut b: Vec<usize> = base.iter().chain(&self.constants).copied().collect();
        b.sort_unstable();
        b.dedup();
        b
    }

    /// Some automorphism fixing `base` pointwise and sending each `x` to
    /// `y` for the given pairs, if one exists. Branches are tried in
    /// increasing point order, so the answer is deterministic.
    pub fn find_automorphism(
        &self,
        base: &[usize],
        pairs: &[(usize, usize)],
    ) -> Option<Vec<usize>> {
        let base = self.normalise(base);
        let mut forced: BTreeMap<usize, usize> = base.iter().map(|&b| (b, b)).collect();
        for &(x, y) in pairs {
            if x >= self.degree() || y >= self.degree() {
                return None;
            }
            if *forced.entry(x).or_insert(y) != y {
                return None;
            }
        }
        let mut seen = vec![false; self.degree()];
        for &y in forced.values() {
            if std::mem::replace(&mut seen[y], true) {
                return None;
            }
        }
        let (xs, ys): (Vec<usize>, Vec<usize>) = forced.iter().map(|(&x, &y)| (x, y)).unzip();
        let mut cols = vec![self.index.initial(&xs), self.index.initial(&ys)];
        self.index.refine(&mut cols);
        let mut histogram: HashMap<u32, isize> = HashMap::new();
        for (&l, &r) in cols[0].iter().zip(&cols[1]) {
            *histogram.entry(l).or_default() += 1;
            *histogram.entry(r).or_default() -= 1;
        }
        if histogram.values().any(|&v| v != 0) {
            return None;
        }
        let mut cells: HashMap<u32, Vec<usize>> = HashMap::new();
        for (y, &c) in cols[1].iter().enumerate() {
            cells.entry(c).or_default().push(y);
        }
        let colours = cells.keys().max().map_or(0, |&m| m as usize + 1);
        let mut free = vec![0; colours];
        for (&c, cell) in &cells {
            free[c as usize] = cell.len();
        }
        let mut search = Search {
            index: &self.index,
            left: &cols[0],
            right: &cols[1],
            img: vec![NONE; self.degree()],
            pre: vec![NONE; self.degree()],
            free,
            trail: Vec::new(),
            queue: Vec::new(),
        };
        for (&x, &y) in &forced {
            if !search.assign(x, y) {
                return None;
            }
        }
        if !search.propagate() || !search.dfs(&cells) {
            return None;
        }
        let perm = search.img;
        debug_assert!(self.is_automorphism(&perm));
        Some(perm)
    }

    /// `Aut(s/base)`; cached per base.
    pub fn group(&self, base: &[usize]) -> Arc<AutomorphismGroup> {
        let base = self.normalise(base);
        if let Some(g) = self.cache.lock().expect("cache lock").get(&base) {
            return Arc::clone(g);
        }
        let g = Arc::new(self.build(&base));
        self.cache
            .lock()
            .expect("cache lock")
            .entry(base)
            .or_insert(g)
            .clone()
    }

    fn build(&self, base: &[usize]) -> AutomorphismGroup {
        let degree = self.degree();
        let mut cols = vec![self.index.initial(base)];
        self.index.refine(&mut cols);
        let colours = &cols[0];
        let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (x, &c) in colours.iter().enumerate() {
            cells.entry(c).or_default().push(x);
        }
        // smallest non-trivial cell, ties broken by least point
        let pick = cells
            .values()
            .filter(|c| c.len() > 1)
            .min_by_key(|c| (c.len(), c[0]));
        let Some(cell) = pick else {
            // a discrete equitable partition admits only the identity
            return AutomorphismGroup {
                base: base.to_vec(),
                degree,
                generators: Vec::new(),
                levels: Vec::new(),
                order: 1,
            };
        };
        let p = cell[0];
        let mut deeper_base = base.to_vec();
        deeper_base.push(p);
        let deeper = self.group(&deeper_base);
        let mut generators = deeper.generators.clone();
        let mut orbit = orbit_of_point(p, &generators);
        for &q in cell {
            if orbit.contains_key(&q) {
                continue;
            }
            if let Some(sigma) = self.find_automorphism(base, &[(p, q)]) {
                generators.push(sigma);
                orbit = orbit_of_point(p, &generators);
            }
        }
        let mut levels = vec![Level {
            point: p,
            transversal: orbit,
        }];
        levels.extend(deeper.levels.iter().cloned());
        let order = (levels[0].transversal.len() as u128)
            .checked_mul(deeper.order)
            .expect("group order fits in u128");
        AutomorphismGroup {
            base: base.to_vec(),
            degree,
            generators,
            levels,
            order,
        }
    }

    pub fn orbit_of(&self, base: &[usize], tuple: &[usize]) -> Vec<Vec<usize>> {
        self.group(base).orbit(tuple)
    }

    /// Finite surrogate for definable closure: the fixed points of
    /// `Aut(s/base)`.
    pub fn dcl_of(&self, base: &[usize]) -> Vec<usize> {
        self.group(base).fixed_points()
    }

    pub fn interdefinable(&self, base: &[usize], x: &[usize], y: &[usize]) -> bool {
        let over = |extra: &[usize]| {
            let mut b = base.to_vec();
            b.extend_from_slice(extra);
            self.group(&b)
        };
        let gy = over(y);
        if !x.iter().all(|&p| gy.generators.iter().all(|g| g[p] == p)) {
            return false;
        }
        let gx = over(x);
        y.iter().all(|&p| gx.generators.iter().all(|g| g[p] == p))
    }

    /// Restrictions of `Aut(s/base)` to the tuple set `y`.
    pub fn restricted_group(
        &self,
        base: &[usize],
        y: &[Vec<usize>],
    ) -> Result<RestrictedGroup, StructureError> {
        let mut domain = y.to_vec();
        domain.sort_unstable();
        domain.dedup();
        let group = self.group(base);
        let mut perms = Vec::with_capacity(group.generators.len());
        for g in &group.generators {
            let mut perm = Vec::with_capacity(domain.len());
            for t in &domain {
                let image: Vec<usize> = t.iter().map(|&x| g[x]).collect();
                match domain.binary_search(&image) {
                    Ok(i) => perm.push(i),
                    Err(_) => {
                        return Err(StructureError::NotInvariant {
                            automorphism: g.clone(),
                            element: t.clone(),
                        })
                    }
                }
            }
            perms.push(perm);
        }
        Ok(RestrictedGroup {
            group: permutation_group(domain.len(), &perms),
            domain,
        })
    }

    /// Independent check against the raw structure: a sort-preserving
    /// bijection commuting with every function, preserving every relation
    /// and fixing every constant.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        is_automorphism(&self.structure, perm)
    }
}

pub(crate) fn is_automorphism(s: &MultiSortedStructure, perm: &[usize]) -> bool {
    let n = s.carrier_size();
    if perm.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for (x, &y) in perm.iter().enumerate() {
        if y >= n || hit[y] || s.sort_of(x).ok() != s.sort_of(y).ok() {
            return false;
        }
        hit[y] = true;
    }
    let local = |sort: &str, i: usize| -> usize {
        let off = s.offset(sort).expect("validated");
        perm[off + i] - off
    };
    for f in s.functions() {
        let sizes: Vec<usize> = f
            .domain
            .iter()
            .map(|d| s.sort_size(d).expect("validated"))
            .collect();
        for (idx, &v) in f.values.iter().enumerate() {
            let mut args = vec![0; sizes.len()];
            let mut rest = idx;
            for k in (0..sizes.len()).rev() {
                args[k] = rest % sizes[k];
                rest /= sizes[k];
            }
            let image_idx = args
                .iter()
                .enumerate()
                .fold(0, |acc, (k, &a)| acc * sizes[k] + local(&f.domain[k], a));
            if f.values[image_idx] != local(&f.codomain, v) {
                return false;
            }
        }
    }
    for r in s.relations() {
        let set: BTreeSet<&Vec<usize>> = r.tuples.iter().collect();
        for t in &r.tuples {
            let image: Vec<usize> = t
                .iter()
                .enumerate()
                .map(|(k, &x)| local(&r.sorts[k], x))
                .collect();
            if !set.contains(&image) {
                return false;
            }
        }
    }
    s.constant_points().iter().all(|&c| perm[c] == c)
}

/// BFS orbit of a point, with a carrying element for each orbit point.
fn orbit_of_point(p: usize, generators: &[Vec<usize>]) -> BTreeMap<usize, Vec<usize>> {
    let degree = generators.first().map_or(p + 1, Vec::len);
    let mut orbit = BTreeMap::from([(p, (0..degree).collect::<Vec<_>>())]);
    let mut queue = VecDeque::from([p]);
    while let Some(x) = queue.pop_front() {
        let u = orbit[&x].clone();
        for g in generators {
            let y = g[x];
            if let std::collections::btree_map::Entry::Vacant(e) = orbit.entry(y) {
                e.insert(compose(g, &u));
                queue.push_back(y);
            }
        }
    }
    orbit
}

/// `Aut(s/base)` for a one-off query.
pub fn automorphism_group(
    s: &MultiSortedStructure,
    base: &[Element],
) -> Result<AutomorphismGroup, StructureError> {
    let engine = AutEngine::new(s.clone())?;
    let points = base
        .iter()
        .map(|e| s.point(e))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((*engine.group(&points)).clone())
}
