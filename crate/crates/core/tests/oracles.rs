mod common;

use approx::assert_abs_diff_eq;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seedhawk::baselines::{degree_rank, enc_rank, kshell, pagerank, top_k};
use seedhawk::community::{louvain, modularity, BudgetPlan};
use seedhawk::diffusion::fis;
use seedhawk::graph::{gnp, planted_partition};
use seedhawk::hho::{
    choose_dive, dive_candidates, explore_update, hard_besiege, jump_strength, mantegna_sigma, neighbor_scout,
    random_position, soft_besiege, Bounds, DiveChoice, DiveMode, Hawk, LevyFlight, PerchDraws,
};
use seedhawk::influence::{edv, lie, EstimatorParams, LieFitness, SeedFitness};
use seedhawk::stats::{friedman_ranks, friedman_statistic, holm_adjust, ResultMatrix};
use seedhawk::Graph;

use common::*;

fn params(p: f64) -> EstimatorParams {
    EstimatorParams::new(p).unwrap()
}

#[test]
fn estimators_match_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..60 {
        let n = rng.random_range(2..=20);
        let g = gnp(n, rng.random_range(0.05..0.5), case);
        let k = rng.random_range(1..=n.min(4));
        let mut seeds: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = rng.random_range(i..n);
            seeds.swap(i, j);
        }
        seeds.truncate(k);
        for p in [0.1, 0.5] {
            let fast = lie(&g, &seeds, params(p)).unwrap();
            assert!(rel_err(fast, oracle_lie(&g, &seeds, p)) < 1e-9, "lie case {case}");
            let fast = edv(&g, &seeds, params(p)).unwrap();
            assert!(rel_err(fast, oracle_edv(&g, &seeds, p)) < 1e-9, "edv case {case}");
        }
    }
}

#[test]
fn khop_matches_distances() {
    for seed in 0..20 {
        let g = gnp(18, 0.12, seed);
        let d = distance_matrix(&g);
        for hops in 0..4 {
            let sources = [0, 5];
            let got = g.khop_neighborhood(&sources, hops).unwrap();
            let want: Vec<usize> = (0..18).filter(|&v| sources.iter().any(|&s| d[s][v] <= hops)).collect();
            assert_eq!(got, want);
        }
    }
}

#[test]
fn ic_on_k4_matches_enumeration() {
    let g = complete_graph(4);
    let expected = exhaustive_ic_spread(&g, 0, 0.5) / 4.0;
    let r = fis(&g, &[0], 0.5, 40_000, 3).unwrap();
    assert_abs_diff_eq!(r.fis, expected, epsilon = 0.01);
}

#[test]
fn ic_on_path_matches_enumeration() {
    let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
    // spread from an end of a path is 1 + p + p² + p³ + p⁴
    let closed: f64 = (0..5).map(|i| 0.3f64.powi(i)).sum();
    assert_abs_diff_eq!(exhaustive_ic_spread(&g, 0, 0.3), closed, epsilon = 1e-12);
    let r = fis(&g, &[0], 0.3, 40_000, 9).unwrap();
    assert_abs_diff_eq!(r.mean_infected, closed, epsilon = 0.02);
}

#[test]
fn levy_sigma_and_tails() {
    assert_abs_diff_eq!(mantegna_sigma(1.5), 0.6966, epsilon = 1e-3);
    let levy = LevyFlight::new(1.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let xs: Vec<f64> = (0..100_000).map(|_| levy.unscaled_step(&mut rng)).collect();
    assert!(kurtosis(&xs) > 3.0);
}

#[test]
fn init_is_uniform_over_degree_levels() {
    // node 0 has degree 6, node 7 has degree 3
    let g = Graph::from_edges(
        8,
        [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (7, 1), (7, 2), (7, 3)],
    )
    .unwrap();
    let plan = BudgetPlan::whole_graph(&g, 1).unwrap();
    let j = plan.pool_index(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let draws = 30_000;
    let mut counts = [0usize; 3];
    for _ in 0..draws {
        let x = random_position(&g, &plan, &mut rng)[j];
        let level = (x * 6.0).round() as usize;
        assert!((1..=3).contains(&level), "value {x}");
        assert_abs_diff_eq!(x, level as f64 / 6.0, epsilon = 1e-12);
        counts[level - 1] += 1;
    }
    for c in counts {
        assert_abs_diff_eq!(c as f64 / draws as f64, 1.0 / 3.0, epsilon = 0.02);
    }
}

#[test]
fn jump_strength_mean_is_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let n = 100_000;
    let mean = (0..n).map(|_| jump_strength(&mut rng)).sum::<f64>() / n as f64;
    assert_abs_diff_eq!(mean, 1.0, epsilon = 0.05);
}

#[test]
fn update_rules_match_scalar_formulas() {
    let b = Bounds::default();
    let x = [0.2, 0.9, 0.5];
    let rabbit = [0.7, 0.1, 0.5];
    let rand = [0.4, 0.4, 0.95];
    let mean = [0.3, 0.6, 0.45];
    let clamp = |v: f64| v.clamp(0.0, 1.0);

    let d = PerchDraws {
        q: 0.7,
        r1: 0.3,
        r2: 0.6,
        r3: 0.0,
        r4: 0.0,
    };
    let got = explore_update(&x, &rand, &rabbit, &mean, d, b);
    for i in 0..3 {
        assert_abs_diff_eq!(
            got[i],
            clamp(rand[i] - 0.3 * (rand[i] - 1.2 * x[i]).abs()),
            epsilon = 1e-15
        );
    }
    let d = PerchDraws {
        q: 0.2,
        r1: 0.0,
        r2: 0.0,
        r3: 0.5,
        r4: 0.4,
    };
    let got = explore_update(&x, &rand, &rabbit, &mean, d, b);
    for i in 0..3 {
        assert_abs_diff_eq!(got[i], clamp(rabbit[i] - mean[i] - 0.5 * 0.4), epsilon = 1e-15);
    }

    let got = soft_besiege(&x, &rabbit, 0.8, 1.3, b);
    for i in 0..3 {
        let want = clamp((rabbit[i] - x[i]) - 0.8 * (1.3 * rabbit[i] - x[i]).abs());
        assert_abs_diff_eq!(got[i], want, epsilon = 1e-15);
    }
    let got = hard_besiege(&x, &rabbit, 0.3, b);
    for i in 0..3 {
        assert_abs_diff_eq!(
            got[i],
            clamp(rabbit[i] - 0.3 * (rabbit[i] - x[i]).abs()),
            epsilon = 1e-15
        );
    }

    let levy = [0.05, -0.2, 0.01];
    let spread = [0.5, 0.5, 1.0];
    for (mode, reference) in [(DiveMode::Soft, x), (DiveMode::Hard, mean)] {
        let (y, z) = dive_candidates(&x, &rabbit, &mean, 0.6, 1.1, mode, &levy, &spread, b);
        for i in 0..3 {
            let yi = clamp(rabbit[i] - 0.6 * (1.1 * rabbit[i] - reference[i]).abs());
            assert_abs_diff_eq!(y[i], yi, epsilon = 1e-15);
            assert_abs_diff_eq!(z[i], clamp(yi + spread[i] * levy[i]), epsilon = 1e-15);
        }
    }
}

#[test]
fn dive_acceptance_table() {
    assert_eq!(choose_dive(1.0, 0.5, 0.7), DiveChoice::Keep);
    assert_eq!(choose_dive(1.0, 1.0, 1.0), DiveChoice::Keep);
    assert_eq!(choose_dive(1.0, 2.0, 0.5), DiveChoice::Y);
    assert_eq!(choose_dive(1.0, 0.5, 2.0), DiveChoice::Z);
    assert_eq!(choose_dive(1.0, 2.0, 3.0), DiveChoice::Z);
    assert_eq!(choose_dive(1.0, 3.0, 2.0), DiveChoice::Y);
    assert_eq!(choose_dive(1.0, 2.0, 2.0), DiveChoice::Z);
}

#[test]
fn scout_moves_leaf_seed_to_hub() {
    let g = Graph::from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
    let plan = BudgetPlan::from_groups(vec![(0, 1, (0..5).map(|v| (v, g.degree(v))).collect())]).unwrap();
    let mut fit = LieFitness::new(&g, params(0.1));
    let hub = fit.evaluate(&[0]);
    let leaf = fit.evaluate(&[1]);
    assert!(hub > leaf);

    let mut moved = 0;
    for s in 0..32 {
        let idx = plan.pool_index(1).unwrap();
        let mut position = vec![0.1; 5];
        position[idx] = 0.9;
        let mut hawk = Hawk {
            position,
            seeds: vec![1],
            fitness: leaf,
        };
        neighbor_scout(&mut hawk, &g, 0, &plan, &mut fit, &mut ChaCha8Rng::seed_from_u64(s));
        if hawk.seeds == vec![0] {
            moved += 1;
            assert_abs_diff_eq!(hawk.fitness, hub, epsilon = 1e-12);
            assert_eq!(hawk.position[plan.pool_index(0).unwrap()], 0.9);
        } else {
            assert_eq!(hawk.seeds, vec![1]);
        }
    }
    assert!(moved > 0);

    // a degree threshold at the leaf degree blocks every attempt
    let mut position = vec![0.1; 5];
    position[plan.pool_index(1).unwrap()] = 0.9;
    let mut hawk = Hawk {
        position,
        seeds: vec![1],
        fitness: leaf,
    };
    for s in 0..8 {
        neighbor_scout(&mut hawk, &g, 1, &plan, &mut fit, &mut ChaCha8Rng::seed_from_u64(s));
    }
    assert_eq!(hawk.seeds, vec![1]);
}

#[test]
fn kshell_matches_core_definition() {
    for seed in 0..15 {
        let g = gnp(25, 0.18, seed);
        let ks = kshell(&g);
        for c in 0..=g.max_degree() {
            // c-core: drop nodes of degree < c until stable
            let mut alive = [true; 25];
            loop {
                let drop: Vec<usize> = (0..25)
                    .filter(|&v| alive[v] && g.neighbors(v).iter().filter(|&&u| alive[u]).count() < c)
                    .collect();
                if drop.is_empty() {
                    break;
                }
                drop.into_iter().for_each(|v| alive[v] = false);
            }
            for v in 0..25 {
                assert_eq!(alive[v], ks[v] >= c, "node {v} core {c}");
            }
        }
    }
}

#[test]
fn enc_matches_nested_sums() {
    let g = gnp(20, 0.2, 4);
    let ks = kshell(&g);
    let r = enc_rank(&g);
    for v in 0..20 {
        let want: usize = g
            .neighbors(v)
            .iter()
            .map(|&u| g.neighbors(u).iter().map(|&w| ks[w]).sum::<usize>())
            .sum();
        assert_abs_diff_eq!(r.scores()[v], want as f64);
    }
}

#[test]
fn pagerank_matches_dense_power_iteration() {
    let g = gnp(15, 0.2, 2);
    let n = 15;
    let d = 0.85;
    let mut x = vec![1.0 / n as f64; n];
    for _ in 0..500 {
        let dangling: f64 = (0..n).filter(|&v| g.degree(v) == 0).map(|v| x[v]).sum();
        let mut next = vec![(1.0 - d) / n as f64 + d * dangling / n as f64; n];
        for (u, v) in g.edges() {
            next[v] += d * x[u] / g.degree(u) as f64;
            next[u] += d * x[v] / g.degree(v) as f64;
        }
        x = next;
    }
    let r = pagerank(&g, d, 1e-12, 1000).unwrap();
    for (got, want) in r.scores().iter().zip(&x) {
        assert_abs_diff_eq!(*got, *want, epsilon = 1e-8);
    }
}

#[test]
fn degree_top_k_prefers_low_ids_on_ties() {
    let g = complete_graph(5);
    assert_eq!(top_k(&degree_rank(&g), 3).unwrap().nodes(), &[0, 1, 2]);
}

#[test]
fn louvain_recovers_planted_blocks() {
    let g = planted_partition(4, 25, 0.5, 0.01, 7);
    let part = louvain(&g, 0);
    assert_eq!(part.len(), 4);
    for block in 0..4 {
        let c = part.community_of(block * 25);
        assert!((block * 25..(block + 1) * 25).all(|v| part.community_of(v) == c));
    }
    let truth: Vec<usize> = (0..100).map(|v| v / 25).collect();
    assert_abs_diff_eq!(part.modularity(), modularity(&g, &truth), epsilon = 1e-12);
}

#[test]
fn friedman_hand_cases() {
    let consistent = ResultMatrix::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec!["x".into(), "y".into(), "z".into()],
        vec![vec![3.0, 2.0, 1.0]; 3],
        true,
    )
    .unwrap();
    let r = friedman_ranks(&consistent).unwrap();
    assert_eq!(r, vec![1.0, 2.0, 3.0]);
    assert_abs_diff_eq!(friedman_statistic(&r, 3), 6.0, epsilon = 1e-12);

    let tied = ResultMatrix::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec!["x".into(), "y".into(), "z".into()],
        vec![vec![0.5; 3]; 3],
        true,
    )
    .unwrap();
    let r = friedman_ranks(&tied).unwrap();
    assert_abs_diff_eq!(friedman_statistic(&r, 3), 0.0, epsilon = 1e-12);
}

#[test]
fn holm_reference_values() {
    let p = [9.89e-13, 1.56e-12, 2.12e-09, 1.20e-07];
    let apv = holm_adjust(&p, 7).unwrap();
    for (got, want) in apv.iter().zip([6.92e-12, 9.36e-12, 1.06e-08, 4.80e-07]) {
        assert!(rel_err(*got, want) < 5e-3, "{got} vs {want}");
    }
}
