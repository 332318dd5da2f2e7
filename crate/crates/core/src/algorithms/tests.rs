use super::*;
use crate::indicators::hypervolume_2d;
use crate::operators::MutationConfig;
use crate::pareto::{nondominated_sort, ObjectiveVector};
use crate::problems::{KnapsackInstance, NkInstance, Problem, ProblemInstance};

fn sol(tag: usize, objs: &[f64]) -> Solution {
    let mut g = BitString::zeros(16);
    for bit in 0..16 {
        g.set(bit, (tag >> bit) & 1 == 1);
    }
    Solution::new(g, ObjectiveVector::new(objs.to_vec()).unwrap())
}

fn objective_set(pop: &[Solution]) -> Vec<Vec<f64>> {
    let mut v: Vec<Vec<f64>> = pop.iter().map(|s| s.objectives.as_slice().to_vec()).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

fn nk(n: usize, seed: u64) -> ProblemInstance {
    ProblemInstance::Nk(NkInstance::generate(n, 3, 2, &mut RandomSource::new(seed)).unwrap())
}

fn kp(n: usize, seed: u64) -> ProblemInstance {
    ProblemInstance::Knapsack(KnapsackInstance::generate(n, 2, &mut RandomSource::new(seed)).unwrap())
}

// NE-MOEA

#[test]
fn ne_moea_population_is_exactly_the_offspring() {
    let problem = nk(20, 1);
    let config = AlgorithmConfig::preset(AlgorithmKind::NeMoea, 30, 5);
    let mut rng = RandomSource::new(2);
    let mut state = RunState::initialize(&problem, 30, &mut rng);
    for _ in 0..5 {
        let offspring = ne_moea_step(&mut state, &problem, &config, &mut rng).unwrap();
        assert_eq!(offspring.len(), 30);
        assert_eq!(state.population, offspring);
    }
}

#[test]
fn ne_moea_without_mutation_copies_rank_one_members() {
    // Eight of ten members are non-dominated, so ten draws all miss the
    // first front with probability 0.2^10 per offspring.
    struct Lookup(Vec<(BitString, Vec<f64>)>);
    impl Problem for Lookup {
        fn num_bits(&self) -> usize {
            16
        }
        fn num_objectives(&self) -> usize {
            2
        }
        fn evaluate(&self, genome: &BitString) -> crate::problems::Evaluation {
            let objs = self.0.iter().find(|(g, _)| g == genome).map(|(_, o)| o.clone()).unwrap();
            crate::problems::Evaluation {
                objectives: ObjectiveVector::new(objs).unwrap(),
                feasible: true,
                repaired_genome: None,
            }
        }
    }
    let mut pop: Vec<Solution> = (0..8).map(|i| sol(i, &[i as f64, 7.0 - i as f64])).collect();
    pop.push(sol(100, &[0.0, 0.0]));
    pop.push(sol(101, &[1.0, 1.0]));
    let table = Lookup(pop.iter().map(|s| (s.genome.clone(), s.objectives.as_slice().to_vec())).collect());
    let config = AlgorithmConfig {
        tournament_size: 10,
        mutation: MutationConfig::Fixed(0.0),
        ..AlgorithmConfig::preset(AlgorithmKind::NeMoea, 10, 1)
    };
    let mut rng = RandomSource::new(3);
    let front_one: Vec<BitString> = pop[..8].iter().map(|s| s.genome.clone()).collect();
    let mut state = RunState { population: pop, generation: 0, archive: Archive::new(), evaluations: 0 };
    for _ in 0..20 {
        ne_moea_step(&mut state, &table, &config, &mut rng).unwrap();
        assert!(state.population.iter().all(|s| front_one.contains(&s.genome)));
    }
}

#[test]
fn dominated_offspring_enters_population_not_archive() {
    // A tiny NK landscape where most offspring are dominated by the archive.
    let problem = nk(8, 5);
    let config = AlgorithmConfig::preset(AlgorithmKind::NeMoea, 20, 30);
    let mut saw_dominated = false;
    run_observed(&problem, &config, &mut RandomSource::new(1), |state, offspring| {
        for child in offspring {
            let dominated = state.archive.members().iter().any(|a| a.objectives.dominates(&child.objectives));
            if dominated {
                saw_dominated = true;
                assert!(!state
                    .archive
                    .members()
                    .iter()
                    .any(|a| a.objectives == child.objectives && a.genome == child.genome));
            }
        }
        assert_eq!(&state.population[..], offspring);
    })
    .unwrap();
    assert!(saw_dominated);
}

// NSGA-II

#[test]
fn crowding_distance_hand_values() {
    let pts = [[0.0, 10.0], [2.0, 7.0], [3.0, 6.0], [7.0, 3.0], [10.0, 0.0]];
    let d = crowding_distance(&pts, &[0, 1, 2, 3, 4]);
    assert!(d[0].is_infinite() && d[4].is_infinite());
    assert!((d[1] - 0.7).abs() < 1e-12);
    assert!((d[2] - 0.9).abs() < 1e-12);
    assert!((d[3] - 1.3).abs() < 1e-12);
}

#[test]
fn nsga2_hand_traced_truncation() {
    let parents = vec![sol(0, &[0.0, 10.0]), sol(1, &[2.0, 7.0]), sol(2, &[1.0, 1.0]), sol(3, &[1.0, 5.0])];
    let offspring = vec![sol(4, &[3.0, 6.0]), sol(5, &[7.0, 3.0]), sol(6, &[10.0, 0.0]), sol(7, &[2.0, 2.0])];
    let next = nsga2_update(parents, offspring);
    assert_eq!(objective_set(&next), vec![vec![0.0, 10.0], vec![3.0, 6.0], vec![7.0, 3.0], vec![10.0, 0.0]]);
}

#[test]
fn nsga2_keeps_dominating_parents() {
    let parents = vec![sol(0, &[1.0, 4.0]), sol(1, &[2.0, 3.0]), sol(2, &[3.0, 2.0]), sol(3, &[4.0, 1.0])];
    let offspring = vec![sol(4, &[0.5, 0.5]), sol(5, &[1.0, 1.0]), sol(6, &[0.0, 3.0]), sol(7, &[2.0, 0.0])];
    assert_eq!(nsga2_update(parents.clone(), offspring), parents);
}

#[test]
fn nsga2_single_full_front() {
    let parents = vec![sol(0, &[1.0, 6.0]), sol(1, &[2.0, 5.0]), sol(2, &[0.0, 0.0])];
    let offspring = vec![sol(3, &[3.0, 4.0]), sol(4, &[0.0, 1.0]), sol(5, &[1.0, 0.0])];
    assert_eq!(objective_set(&nsga2_update(parents, offspring)), vec![vec![1.0, 6.0], vec![2.0, 5.0], vec![3.0, 4.0]]);
}

#[test]
fn nsga2_preserves_best_single_objective_values() {
    let problem = nk(30, 8);
    let config = AlgorithmConfig::preset(AlgorithmKind::Nsga2, 20, 15);
    let mut previous: Option<Vec<Solution>> = None;
    run_observed(&problem, &config, &mut RandomSource::new(4), |state, offspring| {
        if let Some(parents) = &previous {
            for obj in 0..2 {
                let best = parents.iter().chain(offspring).map(|s| s.objectives[obj]).fold(f64::MIN, f64::max);
                assert!(state.population.iter().any(|s| s.objectives[obj] == best));
            }
        }
        previous = Some(state.population.clone());
    })
    .unwrap();
}

// SMS-EMOA

#[test]
fn sms_emoa_removes_dominated_offspring() {
    let pop = vec![sol(0, &[1.0, 3.0]), sol(1, &[2.0, 2.0]), sol(2, &[3.0, 1.0])];
    let next = sms_emoa_update(pop.clone(), sol(3, &[0.5, 0.5]), [0.0, 0.0]).unwrap();
    assert_eq!(next, pop);
}

#[test]
fn sms_emoa_removes_least_contributor() {
    // Contributions with ref (0,0): (1,4) -> 0.5, (2,3.5) -> 2.5, (4,1) -> 2.
    let pop = vec![sol(0, &[4.0, 1.0]), sol(1, &[2.0, 3.5])];
    let next = sms_emoa_update(pop, sol(2, &[1.0, 4.0]), [0.0, 0.0]).unwrap();
    assert_eq!(objective_set(&next), vec![vec![2.0, 3.5], vec![4.0, 1.0]]);

    // Staircase: all three contribute 1; the tie removes the newest member.
    let pop = vec![sol(0, &[1.0, 3.0]), sol(1, &[3.0, 1.0])];
    let next = sms_emoa_update(pop.clone(), sol(2, &[2.0, 2.0]), [0.0, 0.0]).unwrap();
    assert_eq!(next, pop);
}

#[test]
fn sms_emoa_is_bi_objective_only() {
    let pop = vec![sol(0, &[1.0, 2.0, 3.0])];
    assert!(matches!(
        sms_emoa_update(pop, sol(1, &[1.0, 1.0, 1.0]), [0.0, 0.0]),
        Err(crate::Error::UnsupportedDimension(3))
    ));
    let nk3 = NkInstance::generate(10, 2, 3, &mut RandomSource::new(1)).unwrap();
    let cfg = AlgorithmConfig::preset(AlgorithmKind::SmsEmoa, 10, 1);
    assert!(run(&nk3, &cfg, &mut RandomSource::new(0)).is_err());
}

// NSGA-III

#[test]
fn das_dennis_lattice() {
    let d = das_dennis(2, 2);
    assert_eq!(d, vec![vec![0.0, 1.0], vec![0.5, 0.5], vec![1.0, 0.0]]);
    assert_eq!(das_dennis(3, 12).len(), 91);
    assert!(das_dennis(3, 4).iter().all(|w| (w.iter().sum::<f64>() - 1.0).abs() < 1e-12));
    assert_eq!(direction_count(2, 200), 199);
    assert_eq!(das_dennis(2, direction_count(2, 200)).len(), 200);
    assert_eq!(direction_count(3, 91), 12);
    assert_eq!(direction_count(3, 90), 11);
}

#[test]
fn association_on_the_ray() {
    let dirs = vec![vec![1.0, 0.0], vec![0.5, 0.5], vec![0.0, 1.0]];
    let a = associate(&[0.5, 0.5], &dirs);
    assert_eq!(a.direction, 1);
    assert!(a.distance.abs() < 1e-12);
    let a = associate(&[0.1, 1.3], &dirs);
    assert_eq!(a.direction, 2);
    assert!((a.distance - 0.1).abs() < 1e-12);
}

#[test]
fn nsga3_single_full_front() {
    let parents = vec![sol(0, &[1.0, 6.0]), sol(1, &[0.0, 0.0]), sol(2, &[2.0, 5.0])];
    let offspring = vec![sol(3, &[1.0, 0.0]), sol(4, &[3.0, 4.0]), sol(5, &[0.0, 1.0])];
    let dirs = das_dennis(2, 2);
    let next = nsga3_update(parents, offspring, &dirs, &mut RandomSource::new(0));
    assert_eq!(objective_set(&next), vec![vec![1.0, 6.0], vec![2.0, 5.0], vec![3.0, 4.0]]);
}

/// Union of ten points given in translated minimisation coordinates `t`
/// (objectives are `2 - t`), chosen so that the ideal point is the origin and
/// the extreme-point intercepts are 1: normalisation is the identity on `t`.
///
/// Front 1: (0,1) (0.5,0.5) (1,0) -> directions 0, 2, 4 with N=5 (H=4).
/// Front 2: Q=(0.3,1.0) -> direction 1, P2=(0.55,0.8) and P3=(0.8,0.55) ->
/// direction 2, P4=(1.3,0.1) -> direction 4. Front 3 is never reached.
/// Niching needs two members of front 2. Directions 1 and 3 have count 0;
/// 3 has no members and is dropped, 1 takes Q. Then every live direction
/// has count 1 and exactly one of P2, P3, P4 is drawn.
#[test]
fn nsga3_hand_traced_niching() {
    let t = |tag: usize, a: f64, b: f64| sol(tag, &[2.0 - a, 2.0 - b]);
    let parents = vec![t(0, 0.0, 1.0), t(1, 0.3, 1.0), t(2, 0.8, 0.55), t(3, 1.4, 1.5), t(4, 1.45, 1.45)];
    let offspring = vec![t(5, 0.5, 0.5), t(6, 1.0, 0.0), t(7, 0.55, 0.8), t(8, 1.3, 0.1), t(9, 1.5, 1.4)];
    let dirs = das_dennis(2, 4);
    let mut seen_last = std::collections::BTreeSet::new();
    for seed in 0..200 {
        let next = nsga3_update(parents.clone(), offspring.clone(), &dirs, &mut RandomSource::new(seed));
        let tags: Vec<usize> =
            next.iter().map(|s| s.genome.bits().iter().enumerate().map(|(i, &b)| (b as usize) << i).sum()).collect();
        assert_eq!(&tags[..3], &[0, 5, 6], "front 1 first, in union order");
        assert_eq!(tags[3], 1, "the empty niche's only member comes first");
        assert!([7, 2, 8].contains(&tags[4]));
        seen_last.insert(tags[4]);
    }
    assert_eq!(seen_last.len(), 3);
}

// Shared reproduction

#[test]
fn no_crossover_means_single_parent_mutants() {
    let pop: Vec<Solution> = (0..6).map(|i| sol(i * 37 + 1, &[i as f64, 5.0 - i as f64])).collect();
    let ranks = vec![1; 6];
    let config = AlgorithmConfig {
        crossover_rate: 0.0,
        mutation: MutationConfig::Fixed(0.0),
        ..AlgorithmConfig::preset(AlgorithmKind::Nsga2, 6, 1)
    };
    let kids = elitist_reproduce(&pop, &ranks, None, &config, 50, &mut RandomSource::new(1)).unwrap();
    assert_eq!(kids.len(), 50);
    assert!(kids.iter().all(|k| pop.iter().any(|p| &p.genome == k)));
}

#[test]
fn crossover_of_identical_parents_without_mutation() {
    let pop = vec![sol(0b1011, &[1.0, 1.0]); 4];
    let ranks = vec![1; 4];
    let config = AlgorithmConfig {
        crossover_rate: 1.0,
        mutation: MutationConfig::Fixed(0.0),
        ..AlgorithmConfig::preset(AlgorithmKind::Nsga3, 4, 1)
    };
    let kids = elitist_reproduce(&pop, &ranks, None, &config, 7, &mut RandomSource::new(1)).unwrap();
    assert!(kids.iter().all(|k| *k == pop[0].genome));
}

// Whole runs

#[test]
fn one_generation_costs_two_populations() {
    let problem = kp(20, 3);
    for kind in AlgorithmKind::ALL {
        let out = run(&problem, &AlgorithmConfig::preset(kind, 12, 1), &mut RandomSource::new(0)).unwrap();
        assert_eq!(out.evaluations, 24, "{kind}");
        assert_eq!(out.population.len(), 12);
    }
}

#[test]
fn budget_parity_and_constant_population() {
    let problem = nk(16, 2);
    for kind in AlgorithmKind::ALL {
        let config = AlgorithmConfig::preset(kind, 15, 7);
        let mut gens = 0;
        let out = run_observed(&problem, &config, &mut RandomSource::new(9), |state, offspring| {
            gens += 1;
            assert_eq!(state.population.len(), 15);
            assert_eq!(offspring.len(), 15);
            assert_eq!(state.evaluations, 15 * (state.generation as u64 + 1));
        })
        .unwrap();
        assert_eq!(gens, 7);
        assert_eq!(out.evaluations, 15 * 8, "{kind}");
    }
}

#[test]
fn runs_are_deterministic() {
    let problem = kp(25, 4);
    for kind in AlgorithmKind::ALL {
        let config = AlgorithmConfig::preset(kind, 16, 10);
        let a = run(&problem, &config, &mut RandomSource::new(5)).unwrap();
        let b = run(&problem, &config, &mut RandomSource::new(5)).unwrap();
        assert_eq!(a, b, "{kind}");
    }
}

#[test]
fn archive_is_the_non_dominated_subset_of_everything_evaluated() {
    for (problem, kind) in [
        (kp(12, 1), AlgorithmKind::NeMoea),
        (nk(10, 2), AlgorithmKind::Nsga2),
        (kp(12, 3), AlgorithmKind::SmsEmoa),
        (nk(10, 4), AlgorithmKind::Nsga3),
    ] {
        let config = AlgorithmConfig::preset(kind, 10, 12);
        let mut rng = RandomSource::new(6);
        let mut seen: Vec<Vec<f64>> = Vec::new();
        // The initial population is drawn first from the same stream.
        let mut probe = rng.clone();
        let init = RunState::initialize(&problem, 10, &mut probe);
        seen.extend(init.population.iter().map(|s| s.objectives.as_slice().to_vec()));
        run_observed(&problem, &config, &mut rng, |state, offspring| {
            seen.extend(offspring.iter().map(|s| s.objectives.as_slice().to_vec()));
            let ranks = nondominated_sort(&seen).ranks;
            let mut expected: Vec<Vec<f64>> =
                seen.iter().zip(&ranks).filter(|(_, &r)| r == 1).map(|(p, _)| p.clone()).collect();
            expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
            expected.dedup();
            let mut got = state.archive.objective_vectors();
            got.sort_by(|a, b| a.partial_cmp(b).unwrap());
            got.dedup();
            assert_eq!(got, expected, "{kind} generation {}", state.generation);
        })
        .unwrap();
    }
}

#[test]
fn knapsack_archive_holds_feasible_genomes() {
    let problem = KnapsackInstance::generate(30, 2, &mut RandomSource::new(7)).unwrap();
    let out =
        run(&problem, &AlgorithmConfig::preset(AlgorithmKind::NeMoea, 20, 20), &mut RandomSource::new(1)).unwrap();
    for s in out.archive.members() {
        assert!(problem.is_feasible(&s.genome));
        assert_eq!(problem.evaluate(&s.genome).objectives, s.objectives);
    }
    let hv = hypervolume_2d(out.archive.members(), [0.0, 0.0]).unwrap();
    assert_eq!(out.hypervolume, Some(hv));
}

#[test]
fn config_validation() {
    let problem = kp(10, 1);
    let bad = [
        AlgorithmConfig { population_size: 1, ..AlgorithmConfig::preset(AlgorithmKind::Nsga2, 1, 1) },
        AlgorithmConfig { generations: 0, ..AlgorithmConfig::preset(AlgorithmKind::Nsga2, 4, 0) },
        AlgorithmConfig { crossover_rate: 1.5, ..AlgorithmConfig::preset(AlgorithmKind::Nsga2, 4, 1) },
        AlgorithmConfig { tournament_size: 9, ..AlgorithmConfig::preset(AlgorithmKind::NeMoea, 8, 1) },
        AlgorithmConfig { tournament_size: 1, ..AlgorithmConfig::preset(AlgorithmKind::NeMoea, 8, 1) },
    ];
    for cfg in bad {
        assert!(run(&problem, &cfg, &mut RandomSource::new(0)).is_err(), "{cfg:?}");
    }
}

#[test]
fn algorithm_ids_parse() {
    for kind in AlgorithmKind::ALL {
        assert_eq!(kind.id().parse::<AlgorithmKind>().unwrap(), kind);
    }
    assert_eq!("nsga2".parse::<AlgorithmKind>().unwrap(), AlgorithmKind::Nsga2);
    assert!("moead".parse::<AlgorithmKind>().is_err());
}
