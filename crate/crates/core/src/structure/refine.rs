use std::collections::{BTreeMap, HashMap, HashSet};

use super::MultiSortedStructure;

/// A colour together with its sorted incidence entries.
type Signature = (u32, Vec<(u32, u32, u64)>);

pub(crate) const HOLE: usize = 0xFFFF;

/// Packs up to four 16-bit coordinates into one key.
pub(crate) fn pack(coords: impl IntoIterator<Item = usize>) -> u64 {
    coords
        .into_iter()
        .fold(0u64, |acc, x| (acc << 16) | x as u64)
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Occurrence {
    pub rel: u32,
    pub tuple: u32,
}

#[derive(Debug, Clone)]
pub(crate) struct RelIndex {
    pub tuples: Vec<Vec<usize>>,
    pub members: HashSet<u64>,
    /// For each coordinate that is a function of the others: the map from
    /// the packed tuple (with that coordinate replaced by [`HOLE`]) to the
    /// value.
    pub functional: Vec<Option<HashMap<u64, usize>>>,
}

/// Search-side view of a structure: all relations and function graphs as
/// point tuples, with incidence lists.
#[derive(Debug, Clone)]
pub(crate) struct Index {
    pub points: usize,
    pub sort: Vec<usize>,
    pub sort_count: usize,
    pub rels: Vec<RelIndex>,
    pub occurs: Vec<Vec<Occurrence>>,
}

fn with_hole(t: &[usize], i: usize) -> u64 {
    pack(
        t.iter()
            .enumerate()
            .map(|(j, &x)| if j == i { HOLE } else { x }),
    )
}

impl Index {
    pub fn new(s: &MultiSortedStructure) -> Self {
        let points = s.carrier_size();
        let mut occurs = vec![Vec::new(); points];
        let mut rels = Vec::new();
        for (r, rel) in s.point_relations().into_iter().enumerate() {
            let members = rel.tuples.iter().map(|t| pack(t.iter().copied())).collect();
            let functional = (0..rel.arity)
                .map(|i| {
                    let mut map = HashMap::with_capacity(rel.tuples.len());
                    for t in &rel.tuples {
                        if let Some(prev) = map.insert(with_hole(t, i), t[i]) {
                            if prev != t[i] {
                                return None;
                            }
                        }
                    }
                    Some(map)
                })
                .collect();
            for (k, t) in rel.tuples.iter().enumerate() {
                for &x in t {
                    occurs[x].push(Occurrence {
                        rel: r as u32,
                        tuple: k as u32,
                    });
                }
            }
            rels.push(RelIndex {
                tuples: rel.tuples,
                members,
                functional,
            });
        }
        Index {
            points,
            sort: s.point_sorts(),
            sort_count: s.sorts().len(),
            rels,
            occurs,
        }
    }

    /// Initial colouring: the sort, with each listed point in its own
    /// colour. Listing order matters: the k-th point gets the k-th fresh
    /// colour, so two colourings built from corresponding lists are
    /// comparable.
    pub fn initial(&self, individual: &[usize]) -> Vec<u32> {
        let mut c: Vec<u32> = self.sort.iter().map(|&s| s as u32).collect();
        for (k, &p) in individual.iter().enumerate() {
            c[p] = (self.sort_count + k) as u32;
        }
        c
    }

    /// Jointly refines several colourings to the coarsest common equitable
    /// partition. Colour ids are assigned from sorted signatures, so they do
    /// not depend on how points are labelled.
    pub fn refine(&self, colourings: &mut [Vec<u32>]) {
        let mut classes = distinct(colourings);
        loop {
            let mut keys: Vec<Vec<Signature>> = Vec::new();
            let mut ids: BTreeMap<Signature, u32> = BTreeMap::new();
            for c in colourings.iter() {
                let mut sigs: Vec<Vec<(u32, u32, u64)>> = vec![Vec::new(); self.points];
                for (r, rel) in self.rels.iter().enumerate() {
                    for t in &rel.tuples {
                        let colours = pack(t.iter().map(|&x| c[x] as usize));
                        for (pos, &x) in t.iter().enumerate() {
                            sigs[x].push((r as u32, pos as u32, colours));
                        }
                    }
                }
                let side: Vec<_> = sigs
                    .into_iter()
                    .enumerate()
                    .map(|(x, mut sig)| {
                        sig.sort_unstable();
                        (c[x], sig)
                    })
                    .collect();
                for key in &side {
                    ids.entry(key.clone()).or_insert(0);
                }
                keys.push(side);
            }
            for (i, v) in ids.values_mut().enumerate() {
                *v = i as u32;
            }
            for (c, side) in colourings.iter_mut().zip(keys) {
                for (x, key) in side.into_iter().enumerate() {
                    c[x] = ids[&key];
                }
            }
            if ids.len() == classes {
                return;
            }
            classes = ids.len();
        }
    }
}

fn distinct(colourings: &[Vec<u32>]) -> usize {
    colourings.iter().flatten().collect::<HashSet<_>>().len()
}
