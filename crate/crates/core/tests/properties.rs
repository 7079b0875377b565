use proptest::prelude::*;
use proptest::sample::select;

use groupoid_lab::group::{
    compose, invert, is_isomorphism, isomorphism_search, permutation_group, validate_group,
    FiniteGroup, GroupRef, GroupSpec,
};
use groupoid_lab::groupoid::build_standard_groupoid;
use groupoid_lab::limits::{inverse_limit_stage, validate_system, RawSystem, RawTransition};
use groupoid_lab::report::{ClaimRecord, ClaimStatus};
use groupoid_lab::structure::{decode_groupoid, encode_double_cover, encode_groupoid};

const SPECS: [&str; 9] = [
    "trivial",
    "cyclic:2",
    "cyclic:3",
    "cyclic:4",
    "klein",
    "symmetric:3",
    "dihedral:4",
    "quaternion8",
    "product:cyclic:2,cyclic:3",
];

fn group(spec: &str) -> FiniteGroup {
    GroupSpec::parse(spec).unwrap().build().unwrap()
}

fn small_group() -> impl Strategy<Value = FiniteGroup> {
    select(&SPECS[..]).prop_map(group)
}

fn permutation(k: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..k).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_axioms_hold_on_random_triples(g in small_group(), a in 0usize..8, b in 0usize..8, c in 0usize..8) {
        let n = g.order();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), g.identity());
        prop_assert_eq!(g.mul(g.identity(), a), a);
    }

    #[test]
    fn center_matches_brute_force(g in small_group()) {
        let brute: Vec<usize> = g
            .elements()
            .filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z)))
            .collect();
        let center = g.center();
        prop_assert_eq!(center.members(), &brute[..]);
    }

    #[test]
    fn relabelled_tables_are_isomorphic(g in small_group(), seed in any::<u64>()) {
        let n = g.order();
        // a relabelling fixing the identity, derived from the seed
        let mut relabel: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (2..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = 1 + (s >> 33) as usize % i;
            relabel.swap(i, j);
        }
        let mut back = vec![0; n];
        for (x, &y) in relabel.iter().enumerate() {
            back[y] = x;
        }
        let table: Vec<Vec<usize>> = (0..n)
            .map(|y| (0..n).map(|z| relabel[g.mul(back[y], back[z])]).collect())
            .collect();
        let h = validate_group(table, relabel[g.identity()]).unwrap();
        let phi = isomorphism_search(&g, &h).unwrap().expect("relabelling is an isomorphism");
        prop_assert!(is_isomorphism(&g, &h, &phi));
    }

    #[test]
    fn permutation_groups_are_closed(a in permutation(5), b in permutation(5)) {
        let pg = permutation_group(5, &[a.clone(), b.clone()]);
        prop_assert_eq!(120 % pg.order(), 0);
        prop_assert!(pg.contains(&compose(&a, &b)));
        prop_assert!(pg.contains(&invert(&a)));
        for x in pg.elements() {
            prop_assert!(pg.contains(&compose(x, &b)));
        }
    }

    #[test]
    fn standard_groupoids_round_trip(g in small_group(), n in 2usize..=4, cover in any::<bool>()) {
        let gpd = build_standard_groupoid(&g, n);
        prop_assert_eq!(gpd.morphism_count(), n * n * g.order());
        for f in 0..gpd.morphism_count() {
            let back = gpd.compose(f, gpd.inverse(f)).unwrap();
            prop_assert_eq!(back, gpd.identity(gpd.init(f)));
        }
        let s = if cover { encode_double_cover(&gpd) } else { encode_groupoid(&gpd) };
        let decoded = decode_groupoid(&s).unwrap();
        let mut left = gpd.composition_triples();
        let mut right = decoded.composition_triples();
        left.sort_unstable();
        right.sort_unstable();
        prop_assert_eq!(left, right);
        let vertex = decoded.vertex_group(0).unwrap().group;
        prop_assert!(isomorphism_search(&vertex, &g).unwrap().is_some());
    }

    #[test]
    fn cyclic_chain_limits_are_the_top(exponents in prop::collection::vec(0u32..=1, 3)) {
        // orders 1 | d1 | d2 | d3 with each step a factor 1 or 2
        let mut orders = vec![1usize];
        for e in &exponents {
            orders.push(orders.last().unwrap() * 2usize.pow(*e));
        }
        let raw = RawSystem {
            indices: orders.iter().map(|d| format!("Z/{d}")).collect(),
            order: (1..orders.len()).map(|i| [i - 1, i]).collect(),
            groups: orders.iter().map(|d| GroupRef::Spec(format!("cyclic:{d}"))).collect(),
            transitions: (1..orders.len())
                .map(|i| RawTransition { from: i, to: i - 1, map: (0..orders[i]).map(|x| x % orders[i - 1]).collect() })
                .collect(),
        };
        let sys = validate_system(&raw).unwrap();
        let limit = inverse_limit_stage(&sys, &[0, 1, 2, 3]).unwrap();
        prop_assert_eq!(limit.group.order(), *orders.last().unwrap());
        for p in 0..4 {
            prop_assert!(limit.projection_is_onto(&sys, p));
        }
    }

    #[test]
    fn claim_records_round_trip(
        id in "[a-z]{1,8}(-[a-z]{1,8}){0,3}",
        status in select(vec![ClaimStatus::Pass, ClaimStatus::Fail, ClaimStatus::SurrogatePass, ClaimStatus::Skipped]),
        note in proptest::option::of("[ -~]{0,20}"),
    ) {
        let mut c = ClaimRecord::new(&id, "anchor");
        c.status = status;
        c.reason = note;
        let back: ClaimRecord = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        prop_assert_eq!(back, c);
    }
}
