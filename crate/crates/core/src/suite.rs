//! Verification suites over one instance, assembled into a [`Report`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde_json::json;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupRef, GroupSpec};
use crate::groupoid::{build_standard_groupoid, FiniteGroupoid};
use crate::limits::{
    check_pi2_gamma2, constant_system, cyclic_chain, inverse_limit_stage, restriction_epimorphism,
    validate_system, LimitError, Pi2Instance,
};
use crate::report::{ClaimRecord, Instance, Report, Timing};
use crate::structure::{
    decode_groupoid, encode_double_cover, encode_groupoid, MultiSortedStructure, StructureError,
    MAX_CARRIER,
};
use crate::witness::{
    check_witness, verify_construction_claims, verify_f_groupoid_claims, verify_path_claims,
    verify_standard_claims, witness_from_model, GroupoidModel, WitnessError,
};

pub const TOOL: &str = "groupoid-lab";
pub const MIN_OBJECTS: usize = 2;
pub const MAX_OBJECTS: usize = 6;
/// Largest vertex group accepted by the full suites.
pub const MAX_SUITE_GROUP: usize = 8;
/// Paths of length 4 are enumerated only up to this many.
pub const PATH_BUDGET: usize = 400_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Section2,
    Section3,
    Witness,
    FGroupoid,
    Limits,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Section2,
        Suite::Section3,
        Suite::Witness,
        Suite::FGroupoid,
        Suite::Limits,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Section2 => "section2",
            Suite::Section3 => "section3",
            Suite::Witness => "witness",
            Suite::FGroupoid => "fgroupoid",
            Suite::Limits => "limits",
        }
    }

    /// Claim ids and anchors of the suite, in report order.
    pub fn claims(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Suite::Section2 => &[
                ("orbit-is-center-translate", "f0.x ∈ X iff x ∈ Z(G_a)"),
                ("gamma2-is-center", "Γ₂(p) ≅ Z(G)"),
                ("hom-set-automorphisms-are-g", "Aut(Mor(a,b)/ā) ≅ G with centre Z(G)"),
                (
                    "choice-family-automorphisms",
                    "each choice family induces an automorphism fixing O and G_a",
                ),
            ],
            Suite::Section3 => &[
                ("f-action-regular", "F_ab acts regularly on Y_ab"),
                ("y-set-reference-independent", "Y_ab depends only on a and b"),
                ("g-central-in-f", "G_ab ≤ Z(F_ab)"),
                (
                    "f-transport-independent",
                    "transport of F_ab along automorphisms does not depend on the automorphism",
                ),
                (
                    "binding-multiplication-automorphism",
                    "multiplying designated morphisms by σ is induced by an automorphism over the bases",
                ),
                ("composition-well-defined", "h.g does not depend on decompositions"),
                ("composite-in-y", "h = f.g lies in Y_cb"),
            ],
            Suite::Witness => &[
                ("witness-endpoints-contained", "endpoints of each morphism lie in its tuple"),
                ("witness-morphisms-conjugate", "a01 f01 ≡ a12 f12 ≡ a02 f02"),
                (
                    "witness-unique-realisation",
                    "each morphism is the unique realisation given the other two",
                ),
                ("witness-isolation", "type of each morphism over its endpoints is isolated"),
            ],
            Suite::FGroupoid => &[
                (
                    "path-equivalence-relation",
                    "∼ is an equivalence relation on D²(c,d), independent of the probe",
                ),
                (
                    "paths-reduce-to-two-steps",
                    "every q ∈ Dⁿ(c,d) is equivalent to some r ∈ D²(c,d)",
                ),
                ("f-groupoid-axioms", "D²/∼ with concatenation is a groupoid"),
                ("f-vertex-group-is-f", "Mor_ℱ(a,a) ≅ F_ab"),
                (
                    "x-embedding-preserves-composition",
                    "ℱ extends the composition of the groupoid",
                ),
                ("mor-f-matches-y", "|Mor_ℱ(a,b)| = |Y_ab|"),
            ],
            Suite::Limits => &[
                (
                    "cyclic-chain-limit",
                    "the finite-stage limit of Z/8 → Z/4 → Z/2 is Z/8",
                ),
                ("constant-system-limit", "the limit of a constant system is the group"),
                (
                    "restriction-epimorphism",
                    "restriction from the full tuple onto the plain morphism is an epimorphism",
                ),
                ("gamma-pi-f-chain", "G_f ≤ Π_f ≤ F_f"),
                ("gamma-central-in-pi", "G_f ≤ Z(Π_f)"),
                ("gamma-pi-normal-in-f", "G_f and Π_f are normal in F_f"),
                ("gamma-stages-abelian", "finite Γ₂ stages are abelian"),
                ("family-system-limits", "limits of the systems over {G_f} and {Π_f}"),
            ],
        }
    }

    fn skipped(self, reason: &str) -> Vec<ClaimRecord> {
        self.claims()
            .iter()
            .map(|&(id, anchor)| ClaimRecord::new(id, anchor).skipped(reason))
            .collect()
    }

    /// The first claim fails with the error; the rest are skipped.
    fn aborted(self, error: &str) -> Vec<ClaimRecord> {
        let mut claims = self.skipped("an earlier computation in the suite failed");
        let (id, anchor) = self.claims()[0];
        claims[0] = ClaimRecord::new(id, anchor).failed(json!({"error": error}));
        claims
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = RunError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| RunError::Input(format!("unknown suite `{s}`")))
    }
}

pub const GROUPOID_AXIOMS: (&str, &str) = (
    "groupoid-axioms",
    "the structure encodes a connected groupoid",
);

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RunError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

/// Where the instance comes from.
#[derive(Debug, Clone)]
pub enum Source {
    /// The standard groupoid of a group on `objects` objects.
    Group {
        group: GroupRef,
        objects: usize,
        cover: bool,
    },
    /// An encoded structure read from `path`.
    Structure {
        path: String,
        structure: MultiSortedStructure,
    },
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source: Source,
    pub suites: Vec<Suite>,
    /// Longest paths checked by the fgroupoid suite; chosen from
    /// [`PATH_BUDGET`] when absent.
    pub max_path_steps: Option<usize>,
}

fn label(group: &GroupRef) -> String {
    match group {
        GroupRef::Spec(s) => s.clone(),
        GroupRef::Table(t) => format!("table:{}", t.table.len()),
    }
}

/// Resolves a group reference within the suite budget.
pub fn resolve_group(group: &GroupRef) -> Result<FiniteGroup, RunError> {
    if let GroupRef::Spec(s) = group {
        let spec = GroupSpec::parse(s).map_err(|e| RunError::Input(e.to_string()))?;
        if let Some(order) = spec.order().filter(|&o| o > MAX_SUITE_GROUP) {
            return Err(RunError::Budget(format!(
                "group `{s}` has order {order}, the limit is {MAX_SUITE_GROUP}"
            )));
        }
    }
    let g = group
        .resolve()
        .map_err(|e| RunError::Input(e.to_string()))?;
    if g.order() > MAX_SUITE_GROUP {
        return Err(RunError::Budget(format!(
            "group has order {}, the limit is {MAX_SUITE_GROUP}",
            g.order()
        )));
    }
    Ok(g)
}

fn check_carrier(s: &MultiSortedStructure) -> Result<(), RunError> {
    let size = s.carrier_size();
    if size > MAX_CARRIER {
        return Err(RunError::Budget(format!(
            "carrier size {size} exceeds the budget of {MAX_CARRIER}"
        )));
    }
    Ok(())
}

/// Builds the encoded standard groupoid, enforcing the object range and the
/// budgets.
pub fn build_structure(
    group: &GroupRef,
    objects: usize,
    cover: bool,
) -> Result<MultiSortedStructure, RunError> {
    if !(MIN_OBJECTS..=MAX_OBJECTS).contains(&objects) {
        return Err(RunError::Input(format!(
            "object count {objects} outside [{MIN_OBJECTS}, {MAX_OBJECTS}]"
        )));
    }
    let g = resolve_group(group)?;
    let points = objects + objects * objects * g.order() + if cover { 2 * objects } else { 0 };
    if points > MAX_CARRIER {
        return Err(RunError::Budget(format!(
            "carrier size {points} exceeds the budget of {MAX_CARRIER}"
        )));
    }
    let gpd = build_standard_groupoid(&g, objects);
    let s = if cover {
        encode_double_cover(&gpd)
    } else {
        encode_groupoid(&gpd)
    };
    check_carrier(&s)?;
    Ok(s)
}

/// Failure of a suite computation, as opposed to a failed claim.
enum Abort {
    Budget(String),
    Error(String),
}

impl From<WitnessError> for Abort {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::Structure(StructureError::BudgetExceeded { .. }) => {
                Abort::Budget(e.to_string())
            }
            _ => Abort::Error(e.to_string()),
        }
    }
}

impl From<LimitError> for Abort {
    fn from(e: LimitError) -> Self {
        match e {
            LimitError::Structure(StructureError::BudgetExceeded { .. }) => {
                Abort::Budget(e.to_string())
            }
            _ => Abort::Error(e.to_string()),
        }
    }
}

struct Prepared<'a> {
    structure: &'a MultiSortedStructure,
    groupoid: FiniteGroupoid,
    vertex: FiniteGroup,
    model: Option<Result<GroupoidModel, String>>,
}

impl Prepared<'_> {
    fn objects(&self) -> usize {
        self.groupoid.object_count()
    }

    /// The model, or the claims to report in its place.
    fn model(&self, suite: Suite, need: usize) -> Result<&GroupoidModel, Vec<ClaimRecord>> {
        if self.objects() < need {
            return Err(suite.skipped(&format!("needs at least {need} objects")));
        }
        match &self.model {
            None => Err(suite.skipped("the vertex group is not abelian")),
            Some(Err(e)) => Err(suite.aborted(e)),
            Some(Ok(m)) => Ok(m),
        }
    }
}

fn path_steps(objects: usize, y: usize) -> usize {
    let count = |steps: u32| objects * (objects - 1).pow(steps) * y.pow(steps);
    if count(4) <= PATH_BUDGET {
        4
    } else {
        3
    }
}

fn run_suite(
    p: &Prepared<'_>,
    suite: Suite,
    max_steps: Option<usize>,
) -> Result<Vec<ClaimRecord>, Abort> {
    let claims = match suite {
        Suite::Section2 => {
            // the standard claims concern the plain encoding
            verify_standard_claims(&encode_groupoid(&p.groupoid))?
        }
        Suite::Section3 => match p.model(suite, 4) {
            Ok(m) => verify_construction_claims(m)?,
            Err(claims) => claims,
        },
        Suite::Witness => {
            if p.objects() < 3 {
                return Ok(suite.skipped("needs at least 3 objects"));
            }
            let report = check_witness(&witness_from_model(p.structure)?)?;
            match report.precondition_violation {
                Some(v) => suite.aborted(&v),
                None => report.conditions,
            }
        }
        Suite::FGroupoid => match p.model(suite, 4) {
            Ok(m) => {
                let classes = m.path_classes()?;
                let steps = max_steps.unwrap_or_else(|| path_steps(p.objects(), m.y_size()));
                let mut claims = verify_path_claims(&classes, steps)?;
                claims.extend(verify_f_groupoid_claims(&classes)?);
                claims
            }
            Err(claims) => claims,
        },
        Suite::Limits => limits_suite(p)?,
    };
    Ok(claims)
}

fn limits_suite(p: &Prepared<'_>) -> Result<Vec<ClaimRecord>, Abort> {
    let catalogue = Suite::Limits.claims();
    let record = |k: usize| ClaimRecord::new(catalogue[k].0, catalogue[k].1);
    let mut claims = Vec::new();

    let chain = validate_system(&cyclic_chain())?;
    let limit = inverse_limit_stage(&chain, &[0, 1, 2])?;
    let z8 = GroupSpec::parse("cyclic:8")
        .and_then(|s| s.build())
        .expect("cyclic:8");
    let onto = (0..3).all(|k| limit.projection_is_onto(&chain, k));
    let chain_ok = onto
        && matches!(
            crate::group::isomorphism_search(&limit.group, &z8),
            Ok(Some(_))
        );
    claims.push(
        record(0)
            .outcome(
                (!chain_ok)
                    .then(|| json!({"limit_order": limit.group.order(), "projections_onto": onto})),
            )
            .with_detail(json!({"limit_order": limit.group.order()})),
    );

    let constant = validate_system(&constant_system(GroupRef::Table(p.vertex.to_raw()), 3))?;
    let limit = inverse_limit_stage(&constant, &[0, 1, 2])?;
    let same = matches!(
        crate::group::isomorphism_search(&limit.group, &p.vertex),
        Ok(Some(_))
    );
    claims.push(
        record(1)
            .outcome((!same).then(
                || json!({"limit_order": limit.group.order(), "group_order": p.vertex.order()}),
            ))
            .with_detail(json!({"limit_order": limit.group.order()})),
    );

    let model = match &p.model {
        Some(Ok(m)) => m,
        Some(Err(e)) => {
            claims.push(record(2).failed(json!({"error": e})));
            claims.extend(
                Suite::Limits
                    .skipped("the groupoid model could not be built")
                    .drain(3..),
            );
            return Ok(claims);
        }
        None => {
            claims.extend(
                Suite::Limits
                    .skipped("the vertex group is not abelian")
                    .drain(2..),
            );
            return Ok(claims);
        }
    };
    let layout = model.layout();
    let f = model.groupoid().hom(0, 1)[0];
    let full = model.morphism_tuple(f);
    let plain = vec![layout.object(0), layout.object(1), layout.morphism(f)];
    if full == plain {
        claims.push(record(2).skipped("the plain encoding has no fibre above the morphism"));
    } else {
        let epi = restriction_epimorphism(model.engine(), &model.base(0), &plain, &full)?;
        let ok = epi.is_surjective() && epi.is_homomorphism();
        claims.push(
            record(2)
                .outcome((!ok).then(|| {
                    json!({"surjective": epi.is_surjective(), "homomorphism": epi.is_homomorphism()})
                }))
                .with_detail(json!({
                    "source_order": epi.source.order(),
                    "target_order": epi.target.order(),
                    "kernel_order": epi.kernel().len(),
                })),
        );
    }
    claims.extend(check_pi2_gamma2(&[Pi2Instance {
        name: "0 → 1".into(),
        model,
        pair: (0, 1),
    }])?);
    Ok(claims)
}

fn unix_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

/// Runs the selected suites. Claims fail inside the report; only input and
/// budget problems are errors.
pub fn run(config: &RunConfig) -> Result<Report, RunError> {
    let started = unix_ms();
    let (structure, instance) = match &config.source {
        Source::Group {
            group,
            objects,
            cover,
        } => (
            build_structure(group, *objects, *cover)?,
            Instance {
                group: label(group),
                objects: *objects,
                cover: *cover,
                structure_file: None,
            },
        ),
        Source::Structure { path, structure } => {
            check_carrier(structure)?;
            let objects = structure
                .sort_size("O")
                .map_err(|e| RunError::Input(e.to_string()))?;
            if !(MIN_OBJECTS..=MAX_OBJECTS).contains(&objects) {
                return Err(RunError::Input(format!(
                    "object count {objects} outside [{MIN_OBJECTS}, {MAX_OBJECTS}]"
                )));
            }
            (
                structure.clone(),
                Instance {
                    group: "structure".into(),
                    objects,
                    cover: structure.sort_id("I").is_ok(),
                    structure_file: Some(path.clone()),
                },
            )
        }
    };
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();

    let mut timing = Timing {
        started_unix_ms: started,
        suite_ms: BTreeMap::new(),
    };
    let (id, anchor) = GROUPOID_AXIOMS;
    let groupoid = match decode_groupoid(&structure) {
        Ok(g) => g,
        Err(e) => {
            let mut claims =
                vec![ClaimRecord::new(id, anchor).failed(json!({"error": e.to_string()}))];
            for suite in &suites {
                claims.extend(suite.skipped("the structure does not encode a groupoid"));
            }
            return Ok(Report {
                tool: TOOL.into(),
                version: env!("CARGO_PKG_VERSION").into(),
                instance,
                suites: suites.iter().map(|s| s.name().to_string()).collect(),
                claims,
                timestamp: timing,
            });
        }
    };
    let connected = groupoid.is_connected();
    let mut claims = vec![ClaimRecord::new(id, anchor)
        .outcome((!connected).then(|| json!({"error": "groupoid is not connected"})))
        .with_detail(json!({
            "objects": groupoid.object_count(),
            "morphisms": groupoid.morphism_count(),
        }))];
    let vertex = groupoid
        .vertex_group(0)
        .map_err(|e| RunError::Input(e.to_string()))?
        .group;
    if vertex.order() > MAX_SUITE_GROUP {
        return Err(RunError::Budget(format!(
            "vertex group has order {}, the limit is {MAX_SUITE_GROUP}",
            vertex.order()
        )));
    }

    let started_model = Instant::now();
    let needs_model = suites
        .iter()
        .any(|s| matches!(s, Suite::Section3 | Suite::FGroupoid | Suite::Limits));
    let model = if connected && needs_model && vertex.is_abelian() {
        match GroupoidModel::new(&structure).map_err(Abort::from) {
            Ok(m) => Some(Ok(m)),
            Err(Abort::Budget(message)) => return Err(RunError::Budget(message)),
            Err(Abort::Error(message)) => Some(Err(message)),
        }
    } else {
        None
    };
    if needs_model {
        timing
            .suite_ms
            .insert("model".into(), started_model.elapsed().as_secs_f64() * 1e3);
    }
    let prepared = Prepared {
        structure: &structure,
        groupoid,
        vertex,
        model,
    };

    let outcomes: Vec<(Suite, Result<Vec<ClaimRecord>, Abort>, f64)> = if connected {
        std::thread::scope(|scope| {
            let handles: Vec<_> = suites
                .iter()
                .map(|&suite| {
                    let prepared = &prepared;
                    scope.spawn(move || {
                        let t = Instant::now();
                        let out = run_suite(prepared, suite, config.max_path_steps);
                        (suite, out, t.elapsed().as_secs_f64() * 1e3)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("suite thread"))
                .collect()
        })
    } else {
        suites
            .iter()
            .map(|&s| (s, Ok(s.skipped("the groupoid is not connected")), 0.0))
            .collect()
    };
    for (suite, outcome, ms) in outcomes {
        let records = match outcome {
            Ok(records) => records,
            Err(Abort::Budget(message)) => return Err(RunError::Budget(message)),
            Err(Abort::Error(message)) => suite.aborted(&message),
        };
        claims.extend(records);
        timing.suite_ms.insert(suite.name().into(), ms);
    }
    Ok(Report {
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        instance,
        suites: suites.iter().map(|s| s.name().to_string()).collect(),
        claims,
        timestamp: timing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::ClaimStatus;

    fn config(group: &str, objects: usize, cover: bool, suites: &[Suite]) -> RunConfig {
        RunConfig {
            source: Source::Group {
                group: GroupRef::Spec(group.into()),
                objects,
                cover,
            },
            suites: suites.to_vec(),
            max_path_steps: Some(2),
        }
    }

    fn assert_catalogue(report: &Report) {
        let mut expected = vec![GROUPOID_AXIOMS];
        for s in &report.suites {
            expected.extend_from_slice(s.parse::<Suite>().unwrap().claims());
        }
        let got: Vec<(&str, &str)> = report
            .claims
            .iter()
            .map(|c| (c.id.as_str(), c.anchor.as_str()))
            .collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn every_suite_reports_its_catalogue() {
        let report = run(&config("cyclic:2", 4, true, &Suite::ALL)).unwrap();
        assert_catalogue(&report);
        assert!(!report.failed(), "{:#?}", report.claims);
        assert!(report
            .claims
            .iter()
            .all(|c| c.status != ClaimStatus::Skipped));
    }

    #[test]
    fn plain_instances_skip_the_restriction() {
        let report = run(&config("cyclic:3", 4, false, &[Suite::Limits])).unwrap();
        assert_catalogue(&report);
        let r = report
            .claims
            .iter()
            .find(|c| c.id == "restriction-epimorphism")
            .unwrap();
        assert_eq!(r.status, ClaimStatus::Skipped);
        assert!(!report.failed());
    }

    #[test]
    fn nonabelian_and_small_instances_skip_with_reasons() {
        let report = run(&config("symmetric:3", 2, false, &Suite::ALL)).unwrap();
        assert_catalogue(&report);
        assert!(!report.failed(), "{:#?}", report.claims);
        for c in &report.claims {
            if c.status == ClaimStatus::Skipped {
                assert!(c.reason.is_some());
            }
        }
        let skipped = |id: &str| {
            report.claims.iter().find(|c| c.id == id).unwrap().status == ClaimStatus::Skipped
        };
        assert!(skipped("f-action-regular"));
        assert!(skipped("witness-isolation"));
        assert!(skipped("gamma-pi-f-chain"));
        assert!(!skipped("gamma2-is-center"));
        assert!(!skipped("constant-system-limit"));
    }

    #[test]
    fn budgets_and_ranges() {
        let err = |group: &str, n: usize, cover: bool| {
            run(&config(group, n, cover, &[Suite::Section2])).unwrap_err()
        };
        assert!(matches!(err("cyclic:2", 1, false), RunError::Input(_)));
        assert!(matches!(err("cyclic:2", 7, false), RunError::Input(_)));
        assert!(matches!(err("cyclic:9", 2, false), RunError::Budget(_)));
        assert!(matches!(err("symmetric:4", 2, false), RunError::Budget(_)));
        assert!(matches!(err("cyclic:8", 6, true), RunError::Budget(_)));
        assert!(matches!(err("nonsense", 2, false), RunError::Input(_)));
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("all".parse::<Suite>().is_err());
    }

    #[test]
    fn path_steps_follow_the_budget() {
        assert_eq!(path_steps(5, 4), 4);
        assert_eq!(path_steps(6, 4), 3);
        assert_eq!(path_steps(4, 2), 4);
    }
}
