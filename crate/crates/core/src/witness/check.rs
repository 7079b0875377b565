use serde::{Deserialize, Serialize};
use serde_json::json;

use super::WitnessError;
use crate::report::ClaimRecord;
use crate::structure::{decode_groupoid, AutEngine, Element, GroupoidLayout, MultiSortedStructure};

fn default_relation() -> String {
    "comp".into()
}

/// Three objects with morphism tuples between them, plus the ternary
/// relation standing for composition.
///
/// `morphisms` are `[f01, f12, f02]`; coordinate `slot` of each holds the
/// element the relation is evaluated on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessInstance {
    pub structure: MultiSortedStructure,
    pub objects: [Vec<Element>; 3],
    pub morphisms: [Vec<Element>; 3],
    #[serde(default = "default_relation")]
    pub relation: String,
    pub slot: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precondition_violation: Option<String>,
    pub conditions: Vec<ClaimRecord>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.precondition_violation.is_none() && self.conditions.iter().all(|c| !c.is_failure())
    }
}

const ENDPOINTS: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];

/// Checks the finitely checkable witness conditions: endpoint containment,
/// conjugacy of the three endpoint/morphism tuples, and unique realisation
/// of each morphism from the other two.
pub fn check_witness(w: &WitnessInstance) -> Result<WitnessReport, WitnessError> {
    let s = &w.structure;
    let points = |tuple: &[Element]| -> Result<Vec<usize>, WitnessError> {
        tuple.iter().map(|e| Ok(s.point(e)?)).collect()
    };
    let b: Vec<Vec<usize>> = w
        .objects
        .iter()
        .map(|t| points(t))
        .collect::<Result<_, _>>()?;
    let f: Vec<Vec<usize>> = w
        .morphisms
        .iter()
        .map(|t| points(t))
        .collect::<Result<_, _>>()?;
    for i in 0..3 {
        for j in i + 1..3 {
            if b[i] == b[j] {
                return Ok(WitnessReport {
                    precondition_violation: Some(format!(
                        "objects {i} and {j} coincide; objects must be distinct"
                    )),
                    conditions: Vec::new(),
                });
            }
        }
    }
    let engine = AutEngine::new(s.clone())?;
    let mut conditions = Vec::new();

    let missing = ENDPOINTS.iter().enumerate().find_map(|(k, &(i, j))| {
        b[i].iter()
            .chain(&b[j])
            .find(|p| !f[k].contains(p))
            .map(|&p| json!({"morphism": k, "missing": s.element(p).ok()}))
    });
    conditions.push(
        ClaimRecord::new(
            "witness-endpoints-contained",
            "endpoints of each morphism lie in its tuple",
        )
        .outcome(missing),
    );

    let tuple = |k: usize| -> Vec<usize> {
        let (i, j) = ENDPOINTS[k];
        b[i].iter().chain(&b[j]).chain(&f[k]).copied().collect()
    };
    let t0 = tuple(0);
    let unmatched = (1..3).find(|&k| {
        let tk = tuple(k);
        tk.len() != t0.len() || {
            let pairs: Vec<(usize, usize)> = t0.iter().copied().zip(tk).collect();
            engine.find_automorphism(&[], &pairs).is_none()
        }
    });
    conditions.push(
        ClaimRecord::new("witness-morphisms-conjugate", "a01 f01 ≡ a12 f12 ≡ a02 f02")
            .outcome(unmatched.map(|k| json!({"tuples": [0, k]})))
            .surrogate("type equality replaced by a common automorphism orbit"),
    );

    let rel = s
        .relation(&w.relation)
        .ok_or_else(|| WitnessError::BadPath(format!("no relation `{}`", w.relation)))?;
    let slot: Option<Vec<usize>> = w
        .morphisms
        .iter()
        .map(|t| t.get(w.slot).map(|e| e.index))
        .collect();
    let comp_failure = match slot {
        None => Some(json!({"slot": w.slot, "reason": "slot outside a morphism tuple"})),
        Some(triple) => {
            if !rel.tuples.contains(&triple) {
                Some(json!({"triple": triple, "reason": "not in relation"}))
            } else {
                (0..3).find_map(|pos| {
                    let count = rel
                        .tuples
                        .iter()
                        .filter(|t| (0..3).all(|q| q == pos || t[q] == triple[q]))
                        .count();
                    (count != 1).then(
                        || json!({"triple": triple, "coordinate": pos, "realisations": count}),
                    )
                })
            }
        }
    };
    conditions.push(
        ClaimRecord::new(
            "witness-unique-realisation",
            "each morphism is the unique realisation given the other two",
        )
        .outcome(comp_failure),
    );

    conditions.push(
        ClaimRecord::new(
            "witness-isolation",
            "type of each morphism over its endpoints is isolated",
        )
        .surrogate("isolation replaced by orbit determination"),
    );
    Ok(WitnessReport {
        precondition_violation: None,
        conditions,
    })
}

/// The canonical witness of an encoded standard groupoid: objects 0, 1, 2,
/// reference morphisms `0 → 1`, `1 → 2` and their composite, each carrying
/// its endpoint tuples.
pub fn witness_from_model(s: &MultiSortedStructure) -> Result<WitnessInstance, WitnessError> {
    let layout = GroupoidLayout::of(s)?;
    let gpd = decode_groupoid(s)?;
    if gpd.object_count() < 3 {
        return Err(WitnessError::NotEnoughObjects {
            need: 3,
            have: gpd.object_count(),
        });
    }
    let elements = |points: Vec<usize>| -> Result<Vec<Element>, WitnessError> {
        points.into_iter().map(|p| Ok(s.element(p)?)).collect()
    };
    let f01 = gpd.hom(0, 1)[0];
    let f12 = gpd.hom(1, 2)[0];
    let f02 = gpd.compose(f01, f12).expect("composable");
    let tuple = |m: usize| {
        let mut t = layout.object_tuple(gpd.init(m));
        t.extend(layout.object_tuple(gpd.ter(m)));
        t.push(layout.morphism(m));
        t
    };
    let slot = tuple(f01).len() - 1;
    Ok(WitnessInstance {
        structure: s.clone(),
        objects: [
            elements(layout.object_tuple(0))?,
            elements(layout.object_tuple(1))?,
            elements(layout.object_tuple(2))?,
        ],
        morphisms: [
            elements(tuple(f01))?,
            elements(tuple(f12))?,
            elements(tuple(f02))?,
        ],
        relation: "comp".into(),
        slot,
    })
}
