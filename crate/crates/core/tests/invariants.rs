use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use regioncalc_core::families::{planar_zoo, random_surgered};
use regioncalc_core::homology::verify_theorem4;
use regioncalc_core::moves::{apply_move, enumerate_sites, random_walk};
use regioncalc_core::region::{apply_region_changes, corner_counts, incidence_matrix, CountingRule};
use regioncalc_core::SurfaceDiagram;

fn surgered(seed: u64) -> SurfaceDiagram {
    random_surgered(&mut ChaCha8Rng::seed_from_u64(seed), 10)
}

fn walked(seed: u64, steps: usize) -> SurfaceDiagram {
    let zoo = planar_zoo();
    let start = &zoo[seed as usize % zoo.len()].1;
    random_walk(start, steps, 10, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn any_diagram() -> impl Strategy<Value = SurfaceDiagram> {
    prop_oneof![
        any::<u64>().prop_map(surgered),
        (any::<u64>(), 0usize..20).prop_map(|(s, n)| walked(s, n)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn corners_per_crossing_sum_to_four(d in any_diagram()) {
        let counts = corner_counts(&d);
        for j in 0..d.crossing_count() {
            let total: u32 = counts.iter().map(|row| row[j] as u32).sum();
            prop_assert_eq!(total, 4);
        }
    }

    #[test]
    fn modified_columns_sum_to_zero(d in any_diagram()) {
        let m = incidence_matrix(&d, CountingRule::Modified).matrix;
        for j in 0..m.cols() {
            let ones = (0..m.rows()).filter(|&i| m.get(i, j)).count();
            prop_assert_eq!(ones % 2, 0);
        }
    }

    #[test]
    fn deleting_two_components(d in any_diagram(), a in any::<usize>(), b in any::<usize>()) {
        let n = d.components().len();
        prop_assume!(n >= 2);
        let once = d.delete_component(a % n).unwrap();
        prop_assert!(once.validate().is_empty());
        let twice = once.delete_component(b % (n - 1)).unwrap();
        prop_assert!(twice.validate().is_empty());
        prop_assert_eq!(twice.components().len(), n - 2);
        prop_assert_eq!(twice.genus(), d.genus());
    }

    #[test]
    fn region_change_is_an_involution(d in any_diagram(), pick in proptest::collection::vec(any::<usize>(), 0..4)) {
        let r = d.regions().len();
        let regions: Vec<usize> = pick.iter().map(|x| x % r).collect();
        for rule in CountingRule::ALL {
            let once = apply_region_changes(&d, &regions, rule);
            prop_assert!(once.same_projection(&d));
            let back = apply_region_changes(&once, &regions, rule);
            prop_assert_eq!(back.over_bits(), d.over_bits());
        }
    }

    #[test]
    fn moves_keep_the_surface(d in any_diagram(), k in any::<usize>()) {
        let sites = enumerate_sites(&d);
        prop_assume!(!sites.is_empty());
        let site = &sites[k % sites.len()];
        let e = apply_move(&d, site).unwrap();
        prop_assert!(e.validate().is_empty());
        prop_assert_eq!(e.genus(), d.genus());
        prop_assert_eq!(e.components().len(), d.components().len());
        prop_assert_eq!(
            e.crossing_count() as i64 - d.crossing_count() as i64,
            site.kind().crossing_delta()
        );
    }

    #[test]
    fn rank_identity(d in any_diagram()) {
        let rep = verify_theorem4(&d);
        prop_assert!(rep.holds, "{:?}", rep);
        prop_assert!(rep.rank_modified <= rep.r.min(rep.c));
    }
}
