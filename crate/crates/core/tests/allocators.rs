mod support;

use meshalloc::allocators::{mc1x1_allocate, mm_allocate, mm_inc_allocate};
use meshalloc::geometry::pairwise_sum;
use meshalloc::instances::{gen_random_mesh, Lcg64};
use meshalloc::optimal::{brute_force_opt, exact_k3};
use meshalloc::ptas::{ptas_select, ptas_select_d};
use meshalloc::{Algorithm, Mesh};
use proptest::prelude::*;

use support::*;

#[test]
fn oracle_matches_naive_enumeration() {
    let mut rng = Lcg64::new(11);
    for _ in 0..60 {
        let k = 1 + rng.below(5) as usize;
        let n = k + rng.below(6) as usize;
        let dim = 1 + rng.below(3) as usize;
        let set = seeded_points(&mut rng, n, dim);
        let opt = brute_force_opt(&set, k).unwrap();
        assert_eq!(opt.total_distance, naive_opt(&coords(&set), k));
        assert_eq!(pairwise_sum(&opt.selected), opt.total_distance);
    }
}

#[test]
fn mm_inc_improves_on_half_occupied_mesh() {
    for seed in 0..20 {
        let mesh = gen_random_mesh(vec![10, 10], 0.5, seed).unwrap();
        let free = mesh.free_points();
        let mm = mm_allocate(&free, 6).unwrap();
        let inc = mm_inc_allocate(&free, 6).unwrap();
        assert!(inc.total_distance <= mm.total_distance, "seed {seed}");
    }
}

#[test]
fn mc1x1_fills_a_square_on_an_empty_mesh() {
    let mesh = Mesh::new(vec![16, 16]).unwrap();
    let (alloc, shells) = mc1x1_allocate(&mesh, 9).unwrap();
    assert_eq!(shells.sigma, 8);
    assert_eq!(alloc.total_distance, 72);
}

#[test]
fn exact_k3_on_clustered_inputs() {
    let mut rng = Lcg64::new(12);
    for _ in 0..100 {
        let n = 3 + rng.below(20) as usize;
        let set = seeded_points(&mut rng, n, 2);
        assert_eq!(exact_k3(&set).unwrap().total_distance, naive_opt(&coords(&set), 3));
    }
}

#[test]
fn ptas_in_three_dimensions_stays_near_optimum() {
    let mut rng = Lcg64::new(13);
    for _ in 0..10 {
        let set = seeded_points(&mut rng, 7, 3);
        let opt = brute_force_opt(&set, 3).unwrap().total_distance;
        let out = ptas_select_d(&set, 3, 3).unwrap();
        let total = out.allocation.total_distance;
        assert!(opt <= total && total <= 2 * opt, "ptas {total}, opt {opt}");
        assert_eq!(out.plan.counts.len(), 27);
        assert!(out.plan.has_margins(1));
    }
}

#[test]
fn planar_ptas_agrees_with_general_dimension_path() {
    let mut rng = Lcg64::new(14);
    for _ in 0..5 {
        let set = seeded_points(&mut rng, 9, 2);
        let a = ptas_select(&set, 5, 5).unwrap();
        let b = ptas_select_d(&set, 5, 5).unwrap();
        assert_eq!(a.allocation, b.allocation);
        assert_eq!(a.strips, b.strips);
        assert_eq!(a.plan, b.plan);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn allocations_are_free_and_consistent(
        occupancy in 0.0f64..0.9,
        seed in 0u64..1000,
        frac in 0.0f64..1.0,
    ) {
        let mesh = gen_random_mesh(vec![7, 9], occupancy, seed).unwrap();
        prop_assume!(mesh.free_count() > 0);
        let k = 1 + ((mesh.free_count() - 1) as f64 * frac) as usize;
        for algo in Algorithm::ALL {
            let a = algo.allocate(&mesh, k).unwrap();
            prop_assert_eq!(a.k(), k);
            prop_assert!(a.selected.iter().all(|p| mesh.is_free(p).unwrap()));
            prop_assert_eq!(a.total_distance, direct_sum(&coords(&a.selected)));
        }
    }

    #[test]
    fn mm_inc_never_worse_than_mm(seed in 0u64..10_000, n in 3usize..30, k_frac in 0.0f64..1.0) {
        let mut rng = Lcg64::new(seed);
        let set = seeded_points(&mut rng, n, 2);
        let k = 1 + ((n - 1) as f64 * k_frac) as usize;
        prop_assert!(
            mm_inc_allocate(&set, k).unwrap().total_distance
                <= mm_allocate(&set, k).unwrap().total_distance
        );
    }
}
