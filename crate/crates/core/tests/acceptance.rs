//! Acceptance criteria, each checked exactly on finite instances. Every test
//! prints one `PASS`/`FAIL` line; expected values come from direct
//! computations in this file rather than from the library under test.

use std::io::Write;
use std::process::Command;

use serde_json::Value;

use groupoid_lab::group::{isomorphism_search, FiniteGroup, GroupRef, GroupSpec};
use groupoid_lab::groupoid::build_standard_groupoid;
use groupoid_lab::limits::{
    check_pi2_gamma2, constant_system, cyclic_chain, inverse_limit_stage, restriction_epimorphism,
    validate_system, Pi2Instance,
};
use groupoid_lab::report::{ClaimRecord, ClaimStatus};
use groupoid_lab::structure::{encode_double_cover, encode_groupoid, MultiSortedStructure};
use groupoid_lab::witness::{
    verify_construction_claims, verify_f_groupoid_claims, verify_path_claims,
    verify_standard_claims, GroupoidModel,
};

type Outcome = Result<String, String>;

/// Writes past the test harness capture so the line always shows.
fn verdict(number: u32, title: &str, outcome: Outcome) {
    let line = match &outcome {
        Ok(summary) => format!("criterion {number:>2} PASS  {title}: {summary}"),
        Err(why) => format!("criterion {number:>2} FAIL  {title}: {why}"),
    };
    let mut out = std::io::stdout().lock();
    writeln!(out, "{line}").unwrap();
    out.flush().unwrap();
    if let Err(why) = outcome {
        panic!("criterion {number} failed: {why}");
    }
}

fn group(spec: &str) -> FiniteGroup {
    GroupSpec::parse(spec).unwrap().build().unwrap()
}

fn structure(spec: &str, n: usize, cover: bool) -> MultiSortedStructure {
    let gpd = build_standard_groupoid(&group(spec), n);
    if cover {
        encode_double_cover(&gpd)
    } else {
        encode_groupoid(&gpd)
    }
}

fn model(spec: &str, n: usize, cover: bool) -> GroupoidModel {
    GroupoidModel::new(&structure(spec, n, cover)).unwrap()
}

fn center_order(g: &FiniteGroup) -> usize {
    g.elements()
        .filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z)))
        .count()
}

fn claim<'a>(claims: &'a [ClaimRecord], id: &str) -> Result<&'a ClaimRecord, String> {
    claims
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| format!("claim {id} missing"))
}

fn passed(c: &ClaimRecord) -> Result<(), String> {
    match c.status {
        ClaimStatus::Pass | ClaimStatus::SurrogatePass => Ok(()),
        _ => Err(format!(
            "{} is {:?}: {:?} {:?}",
            c.id, c.status, c.witness, c.reason
        )),
    }
}

fn detail_u64(c: &ClaimRecord, key: &str) -> Result<u64, String> {
    let v = &c
        .detail
        .as_ref()
        .ok_or_else(|| format!("{} has no detail", c.id))?[key];
    v.as_u64()
        .or_else(|| v.as_str().and_then(|s| s.parse().ok()))
        .ok_or_else(|| format!("{}: detail {key} missing", c.id))
}

fn expect(what: &str, got: u64, want: u64) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got}, expected {want}"))
    }
}

const SMALL: [&str; 7] = [
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "klein",
    "symmetric:3",
    "dihedral:4",
    "quaternion8",
];

fn standard_instances() -> Vec<(&'static str, usize, Vec<ClaimRecord>)> {
    let mut out = Vec::new();
    for spec in SMALL {
        for n in [2, 3] {
            out.push((
                spec,
                n,
                verify_standard_claims(&structure(spec, n, false)).unwrap(),
            ));
        }
    }
    out
}

#[test]
fn criterion_01_gamma2_is_the_center() {
    let outcome = (|| {
        for (spec, n, claims) in standard_instances() {
            let c = claim(&claims, "gamma2-is-center")?;
            passed(c).map_err(|e| format!("{spec} n={n}: {e}"))?;
            expect(
                &format!("{spec} n={n} |Γ₂|"),
                detail_u64(c, "order")?,
                center_order(&group(spec)) as u64,
            )?;
        }
        Ok("restricted group over X ≅ Z(G) for 7 groups, n ∈ {2,3}".to_string())
    })();
    verdict(1, "Γ₂ equals the centre", outcome);
}

#[test]
fn criterion_02_orbit_membership_is_centrality() {
    let outcome = (|| {
        let mut checked = 0;
        for (spec, n, claims) in standard_instances() {
            let c = claim(&claims, "orbit-is-center-translate")?;
            passed(c).map_err(|e| format!("{spec} n={n}: {e}"))?;
            expect(
                &format!("{spec} n={n} |X|"),
                detail_u64(c, "x_size")?,
                center_order(&group(spec)) as u64,
            )?;
            checked += group(spec).order();
        }
        Ok(format!(
            "f₀.x ∈ X iff x central, {checked} elements checked"
        ))
    })();
    verdict(2, "orbit of f₀ is the centre translate", outcome);
}

#[test]
fn criterion_03_hom_set_automorphisms() {
    let outcome = (|| {
        for (spec, n, claims) in standard_instances() {
            let c = claim(&claims, "hom-set-automorphisms-are-g")?;
            passed(c).map_err(|e| format!("{spec} n={n}: {e}"))?;
            expect(
                &format!("{spec} n={n} |Aut|"),
                detail_u64(c, "order")?,
                group(spec).order() as u64,
            )?;
        }
        Ok("Aut(Mor(a,b)/ā) ≅ G with centre Z(G)".to_string())
    })();
    verdict(3, "hom-set automorphisms are G", outcome);
}

#[test]
fn criterion_04_choice_families() {
    let outcome = (|| {
        for spec in ["cyclic:2", "symmetric:3"] {
            for n in [2usize, 3] {
                let claims = verify_standard_claims(&structure(spec, n, false)).unwrap();
                let c = claim(&claims, "choice-family-automorphisms")?;
                if c.status != ClaimStatus::Pass {
                    return Err(format!("{spec} n={n}: {:?} {:?}", c.status, c.witness));
                }
                let want = (group(spec).order() as u64).pow(n as u32 - 1);
                expect(
                    &format!("{spec} n={n} families"),
                    detail_u64(c, "families_checked")?,
                    want,
                )?;
                expect(
                    &format!("{spec} n={n} stabiliser"),
                    detail_u64(c, "stabiliser_order")?,
                    want,
                )?;
            }
        }
        Ok(
            "every family is an automorphism; stabiliser of O ∪ G_a has order |G|^(n-1)"
                .to_string(),
        )
    })();
    verdict(4, "choice families give automorphisms", outcome);
}

#[test]
fn criterion_05_regular_action_and_central_g() {
    let outcome = (|| {
        for spec in ["trivial", "cyclic:2", "cyclic:3"] {
            for cover in [false, true] {
                let m = model(spec, 4, cover);
                let claims = verify_construction_claims(&m).unwrap();
                let tag = format!("{spec} n=4 cover={cover}");
                for id in ["f-action-regular", "g-central-in-f"] {
                    passed(claim(&claims, id)?).map_err(|e| format!("{tag}: {e}"))?;
                }
                let order = group(spec).order() as u64;
                let f = if cover { 2 * order } else { order };
                let regular = claim(&claims, "f-action-regular")?;
                expect(&format!("{tag} |F|"), detail_u64(regular, "f_order")?, f)?;
                expect(&format!("{tag} |Y|"), detail_u64(regular, "y_size")?, f)?;
                expect(
                    &format!("{tag} |G|"),
                    detail_u64(regular, "g_order")?,
                    order,
                )?;
            }
        }
        Ok("F acts regularly on Y and G ≤ Z(F) on 6 instances".to_string())
    })();
    verdict(5, "regular F-action, central G", outcome);
}

#[test]
fn criterion_06_composition_is_well_defined() {
    let outcome = (|| {
        let m = model("cyclic:2", 4, true);
        let n = 4;
        let mut triples = 0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    triples += 1;
                    if let Some(bad) = m.decomposition_independence((a, b, c)).unwrap() {
                        return Err(format!(
                            "decompositions disagree on {:?}: {bad:?}",
                            (a, b, c)
                        ));
                    }
                    if let Some(bad) = m.unique_divisors((a, b, c)) {
                        return Err(format!("divisor not unique on {:?}: {bad:?}", (a, b, c)));
                    }
                }
            }
        }
        expect("triples", triples, 24)?;
        let claims = verify_construction_claims(&m).unwrap();
        passed(claim(&claims, "composition-well-defined")?)?;
        Ok(format!(
            "{triples} object triples, all decompositions agree, divisors unique"
        ))
    })();
    verdict(6, "composition well-defined", outcome);
}

#[test]
fn criterion_07_path_machinery() {
    let outcome = (|| {
        let m = model("cyclic:2", 5, true);
        let classes = m.path_classes().unwrap();
        let claims = verify_path_claims(&classes, 4).unwrap();
        let relation = claim(&claims, "path-equivalence-relation")?;
        if relation.status != ClaimStatus::Pass {
            return Err(format!(
                "equivalence: {:?} {:?}",
                relation.status, relation.witness
            ));
        }
        let reduce = claim(&claims, "paths-reduce-to-two-steps")?;
        passed(reduce)?;
        let detail = reduce.detail.as_ref().unwrap();
        let (n, y) = (5u64, 4u64);
        for steps in [3u32, 4] {
            let at = |key: &str| detail[key][steps as usize].as_u64().unwrap();
            expect(
                &format!("{steps}-step paths without probe"),
                at("without_probe_by_length"),
                0,
            )?;
            let total = n * (n - 1).pow(steps) * y.pow(steps);
            expect(
                &format!("{steps}-step paths reduced"),
                at("reduced_by_length") + at("substituted_by_length"),
                total,
            )?;
        }
        Ok(format!(
            "∼ is a probe-independent equivalence; 3-step {} and 4-step {} paths reduce ({} after prefix substitution)",
            detail["reduced_by_length"][3],
            detail["reduced_by_length"][4].as_u64().unwrap() + detail["substituted_by_length"][4].as_u64().unwrap(),
            detail["substituted_by_length"][4],
        ))
    })();
    verdict(7, "path equivalence and reduction", outcome);
}

#[test]
fn criterion_08_f_groupoid() {
    let outcome = (|| {
        for (spec, n, cover) in [
            ("cyclic:2", 4, false),
            ("cyclic:2", 5, true),
            ("cyclic:3", 4, true),
        ] {
            let m = model(spec, n, cover);
            let classes = m.path_classes().unwrap();
            let claims = verify_f_groupoid_claims(&classes).unwrap();
            let tag = format!("{spec} n={n} cover={cover}");
            for c in &claims {
                if c.status != ClaimStatus::Pass {
                    return Err(format!("{tag}: {} is {:?} {:?}", c.id, c.status, c.witness));
                }
            }
            let f = classes.build_f_groupoid().unwrap();
            let y = m.y(0, 1).len();
            expect(
                &format!("{tag} |Mor_ℱ|"),
                f.groupoid.morphism_count() as u64,
                (n * n * y) as u64,
            )?;
            let order = group(spec).order() as u64;
            expect(
                &format!("{tag} |Mor_ℱ(a,a)|"),
                detail_u64(&claims[0], "vertex_order")?,
                if cover { 2 * order } else { order },
            )?;
        }
        Ok("ℱ is a groupoid with vertex group F, |Mor_ℱ(a,b)| = |Y_ab|, X embeds".to_string())
    })();
    verdict(8, "path-class groupoid", outcome);
}

#[test]
fn criterion_09_g_proper_in_abelian_f() {
    let outcome = (|| {
        for spec in ["cyclic:2", "cyclic:3"] {
            let m = model(spec, 4, true);
            let y = m.y(0, 1);
            let order = group(spec).order();
            expect(
                &format!("{spec} |F|"),
                y.f().order() as u64,
                2 * order as u64,
            )?;
            expect(&format!("{spec} |G|"), y.g().order() as u64, order as u64)?;
            if !y.f().group().is_abelian() {
                return Err(format!("{spec}: F is not abelian"));
            }
            if !y.f().contains_group(y.g()) {
                return Err(format!("{spec}: G is not contained in F"));
            }
        }
        Ok("double cover: |F| = 2|G|, F abelian, G < F = Z(F)".to_string())
    })();
    verdict(9, "G properly inside Z(F) = F", outcome);
}

#[test]
fn criterion_10_limits() {
    let outcome = (|| {
        let chain = validate_system(&cyclic_chain()).map_err(|e| e.to_string())?;
        let limit = inverse_limit_stage(&chain, &[0, 1, 2]).map_err(|e| e.to_string())?;
        if isomorphism_search(&limit.group, &group("cyclic:8"))
            .unwrap()
            .is_none()
        {
            return Err("chain limit is not Z/8".into());
        }
        for spec in ["symmetric:3", "cyclic:2"] {
            let sys = validate_system(&constant_system(GroupRef::Spec(spec.into()), 3))
                .map_err(|e| e.to_string())?;
            let limit = inverse_limit_stage(&sys, &[0, 1, 2]).map_err(|e| e.to_string())?;
            if isomorphism_search(&limit.group, &group(spec))
                .unwrap()
                .is_none()
            {
                return Err(format!("constant {spec} limit differs from the group"));
            }
        }

        let m = model("cyclic:2", 4, true);
        let layout = m.layout();
        let f = m.groupoid().hom(0, 1)[0];
        let plain = vec![layout.object(0), layout.object(1), layout.morphism(f)];
        let epi = restriction_epimorphism(m.engine(), &m.base(0), &plain, &m.morphism_tuple(f))
            .map_err(|e| e.to_string())?;
        if !epi.is_surjective() || !epi.is_homomorphism() {
            return Err("restriction is not an epimorphism".into());
        }
        expect("restriction source", epi.source.order() as u64, 4)?;
        expect("restriction target", epi.target.order() as u64, 2)?;
        expect("restriction kernel", epi.kernel().len() as u64, 2)?;

        let mut instances = 0;
        for spec in ["trivial", "cyclic:2", "cyclic:3"] {
            for cover in [false, true] {
                let m = model(spec, 4, cover);
                let claims = check_pi2_gamma2(&[Pi2Instance {
                    name: spec.into(),
                    model: &m,
                    pair: (0, 1),
                }])
                .map_err(|e| e.to_string())?;
                for c in &claims {
                    passed(c).map_err(|e| format!("{spec} cover={cover}: {e}"))?;
                }
                instances += 1;
            }
        }
        Ok(format!(
            "Z/8 chain, constant systems, cover restriction with kernel 2, Γ₂/Π₂ checks on {instances} instances"
        ))
    })();
    verdict(10, "directed systems and limits", outcome);
}

fn verify_all(out: &std::path::Path) -> Value {
    let status = Command::new(env!("CARGO_BIN_EXE_groupoid-lab"))
        .args([
            "verify",
            "--suite",
            "all",
            "--group",
            "cyclic:2",
            "--objects",
            "4",
            "--cover",
            "--out",
        ])
        .arg(out)
        .output()
        .unwrap();
    assert_eq!(
        status.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&status.stderr)
    );
    let mut report: Value = serde_json::from_str(&std::fs::read_to_string(out).unwrap()).unwrap();
    report.as_object_mut().unwrap().remove("timestamp");
    report
}

#[test]
fn criterion_11_determinism() {
    let outcome = (|| {
        let dir = tempfile::TempDir::new().unwrap();
        let a = verify_all(&dir.path().join("a.json"));
        let b = verify_all(&dir.path().join("b.json"));
        let (ta, tb) = (
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap(),
        );
        if ta != tb {
            return Err("reports differ outside the timestamp".into());
        }
        Ok(format!(
            "two `verify --suite all` runs agree on {} claims",
            a["claims"].as_array().unwrap().len()
        ))
    })();
    verdict(11, "deterministic reports", outcome);
}
