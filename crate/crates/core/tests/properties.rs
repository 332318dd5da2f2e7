mod common;

use common::grid_hypervolume;
use nemoea::algorithms::sms_emoa_update;
use nemoea::indicators::{contributions_2d, hypervolume_2d};
use nemoea::pareto::{dominance, Archive, BitString, Dominance, ObjectiveVector, Solution};
use nemoea::problems::{KnapsackInstance, Problem};
use nemoea::stats::wilcoxon_rank_sum;
use nemoea::RandomSource;
use proptest::prelude::*;

fn coarse_point(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((0u8..5).prop_map(f64::from), m)
}

fn population(max: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(coarse_point(2), 0..max)
}

fn solutions(points: &[Vec<f64>]) -> Vec<Solution> {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let genome = BitString::from_bits((0..10).map(|b| i >> b & 1 == 1).collect());
            Solution::new(genome, ObjectiveVector::new(p.clone()).unwrap())
        })
        .collect()
}

fn sorted_objectives(a: &Archive) -> Vec<Vec<f64>> {
    let mut v = a.objective_vectors();
    v.sort_by(|x, y| x.partial_cmp(y).unwrap());
    v
}

proptest! {
    #[test]
    fn dominance_is_a_strict_partial_order(a in coarse_point(3), b in coarse_point(3), c in coarse_point(3)) {
        let d = |x: &Vec<f64>, y: &Vec<f64>| dominance(x, y).unwrap();
        prop_assert_eq!(d(&a, &a), Dominance::Neither);
        prop_assert_eq!(d(&a, &b), d(&b, &a).reverse());
        if d(&a, &b) == Dominance::Dominates && d(&b, &c) == Dominance::Dominates {
            prop_assert_eq!(d(&a, &c), Dominance::Dominates);
        }
    }

    #[test]
    fn archive_ignores_insertion_order(points in population(30), seed in any::<u64>()) {
        let sols = solutions(&points);
        let mut forward = Archive::new();
        forward.extend(sols.iter().cloned());
        let mut shuffled = sols.clone();
        use rand::seq::SliceRandom;
        shuffled.shuffle(&mut RandomSource::new(seed));
        let mut other = Archive::new();
        other.extend(shuffled);
        prop_assert_eq!(sorted_objectives(&forward), sorted_objectives(&other));
    }

    #[test]
    fn archive_insert_is_idempotent(points in population(30)) {
        let sols = solutions(&points);
        let mut archive = Archive::new();
        archive.extend(sols.iter().cloned());
        let before = archive.clone();
        prop_assert_eq!(archive.extend(before.members().iter().cloned()), 0);
        prop_assert_eq!(archive, before);
    }

    #[test]
    fn repair_is_idempotent_and_removes_only(seed in any::<u64>(), bits in prop::collection::vec(any::<bool>(), 25)) {
        let kp = KnapsackInstance::generate(25, 2, &mut RandomSource::new(seed)).unwrap();
        let g = BitString::from_bits(bits);
        let r = kp.repair(&g);
        prop_assert!(kp.is_feasible(&r));
        prop_assert_eq!(kp.repair(&r), r.clone());
        prop_assert!((0..25).all(|i| !r.get(i) || g.get(i)));
        if kp.is_feasible(&g) {
            prop_assert_eq!(r, g.clone());
        }
        prop_assert_eq!(kp.evaluate(&g).objectives, kp.evaluate(&kp.repair(&g)).objectives);
    }

    #[test]
    fn hypervolume_invariants(points in prop::collection::vec((0.0f64..1.0, 0.0f64..1.0), 0..20), extra in (0.0f64..1.0, 0.0f64..1.0)) {
        let pts: Vec<Vec<f64>> = points.iter().map(|&(x, y)| vec![x, y]).collect();
        let hv = hypervolume_2d(&pts, [0.0, 0.0]).unwrap();
        prop_assert!((hv - grid_hypervolume(&pts, [0.0, 0.0])).abs() < 1e-12);
        let mut more = pts.clone();
        more.push(vec![extra.0, extra.1]);
        prop_assert!(hypervolume_2d(&more, [0.0, 0.0]).unwrap() >= hv - 1e-15);
        let mut rev = pts.clone();
        rev.reverse();
        prop_assert!((hypervolume_2d(&rev, [0.0, 0.0]).unwrap() - hv).abs() < 1e-15);
        let front = common::nondominated_unique(&pts);
        let front_hv = hypervolume_2d(&front, [0.0, 0.0]).unwrap();
        prop_assert!((front_hv - hv).abs() < 1e-12);
        for (i, c) in contributions_2d(&front, [0.0, 0.0]).iter().enumerate() {
            let mut without = front.clone();
            without.remove(i);
            let loss = front_hv - hypervolume_2d(&without, [0.0, 0.0]).unwrap();
            prop_assert!((loss - c).abs() < 1e-12);
        }
    }

    #[test]
    fn sms_emoa_never_loses_hypervolume(points in prop::collection::vec(coarse_point(2), 2..15), child in coarse_point(2)) {
        let pop = solutions(&points);
        let before = hypervolume_2d(&points, [0.0, 0.0]).unwrap();
        let child = solutions(&[child]).pop().unwrap();
        let next = sms_emoa_update(pop, child, [0.0, 0.0]).unwrap();
        prop_assert_eq!(next.len(), points.len());
        let after: Vec<Vec<f64>> = next.iter().map(|s| s.objectives.as_slice().to_vec()).collect();
        prop_assert!(hypervolume_2d(&after, [0.0, 0.0]).unwrap() >= before - 1e-12);
    }

    #[test]
    fn rank_sum_depends_only_on_ranks(a in prop::collection::vec(-5.0f64..5.0, 2..12), b in prop::collection::vec(-5.0f64..5.0, 2..12)) {
        let t = wilcoxon_rank_sum(&a, &b).unwrap();
        let warp = |v: &f64| v.powi(3) * 10.0 + 7.0;
        let t2 = wilcoxon_rank_sum(&a.iter().map(warp).collect::<Vec<_>>(), &b.iter().map(warp).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(t.p_value, t2.p_value);
        let swapped = wilcoxon_rank_sum(&b, &a).unwrap();
        prop_assert!((swapped.p_value - t.p_value).abs() < 1e-12);
        prop_assert!(t.p_value > 0.0 && t.p_value <= 1.0);
    }
}
