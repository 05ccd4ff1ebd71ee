use std::collections::HashMap;

use pgnet::infer::{mcmc_graph_visit, GraphChainConfig, StepSizes};
use pgnet::{
    generate_pg, log_prob_network, McmcConfig, ModelParams, MultiGraph, Permutation, RngSpec,
};

/// Arrival-labeled three-node network: `m01` copies of 0-1 from the first
/// step, then `m02` and `m12` from the second.
fn triple(m01: u32, m02: u32, m12: u32) -> MultiGraph {
    let mut g = MultiGraph::with_nodes(3);
    g.add_edges(0, 1, m01).unwrap();
    g.add_edges(0, 2, m02).unwrap();
    g.add_edges(1, 2, m12).unwrap();
    g
}

/// A three-node network together with its arrival order.
type State = ((u32, u32, u32), Vec<usize>);

fn key(g: &MultiGraph) -> (u32, u32, u32) {
    (
        g.multiplicity(0, 1),
        g.multiplicity(0, 2),
        g.multiplicity(1, 2),
    )
}

#[test]
fn enumerated_likelihood_sums_to_one() {
    let id = Permutation::identity(3);
    for (a, b, lambda) in [(0.0, 0.0, 1.0), (-0.9, 0.1, 1.0), (0.5, 0.5, 0.7)] {
        let p = ModelParams::new(a, b, lambda).unwrap();
        let mut total = 0.0;
        for m01 in 0..=8 {
            for m02 in 0..=8 {
                for m12 in 0..=8 - m02 {
                    total += log_prob_network(&triple(m01, m02, m12), &p, &id)
                        .unwrap()
                        .exp();
                }
            }
        }
        assert!(total <= 1.0 + 1e-12 && total > 1.0 - 1e-5, "{p}: {total}");
    }
}

#[test]
fn generator_frequencies_match_likelihood() {
    let p = ModelParams::new(-0.9, 0.1, 1.0).unwrap();
    let runs = 200_000u64;
    let seed = MultiGraph::with_nodes(1);
    let mut counts: HashMap<(u32, u32, u32), u64> = HashMap::new();
    for r in 0..runs {
        let g = generate_pg(&seed, &p, 3, RngSpec::new(31, r)).unwrap();
        *counts.entry(key(&g)).or_insert(0) += 1;
    }
    let id = Permutation::identity(3);
    let mut checked = 0;
    for (&(m01, m02, m12), &c) in &counts {
        let prob = log_prob_network(&triple(m01, m02, m12), &p, &id)
            .unwrap()
            .exp();
        assert!(
            prob > 0.0,
            "observed an impossible outcome {:?}",
            (m01, m02, m12)
        );
        let expect = prob * runs as f64;
        if expect < 10.0 {
            continue;
        }
        let se = (expect * (1.0 - prob)).sqrt();
        assert!(
            (c as f64 - expect).abs() < 4.0 * se,
            "{:?}: {c} vs {expect:.1}",
            (m01, m02, m12)
        );
        checked += 1;
    }
    assert!(checked >= 10);
}

fn fixed_theta_chain(n_iter: usize, seed: u64) -> GraphChainConfig {
    GraphChainConfig {
        mcmc: McmcConfig {
            n_iter,
            burn_in: 0,
            theta_step: StepSizes {
                a: 0.0,
                b: 0.0,
                lambda: 0.0,
            },
            swap_moves_per_iter: 1,
            init: Some(ModelParams::new(0.5, 0.5, 1.0).unwrap()),
            rng: RngSpec::new(seed, 0),
            ..McmcConfig::default()
        },
        graph_moves_per_iter: 1,
    }
}

#[test]
fn graph_chain_recovers_prior_edge_mean() {
    let n_iter = 200_000;
    let mut edges = 0u64;
    let mut n = 0u64;
    let flat = |_: &MultiGraph| -> Result<f64, String> { Ok(0.0) };
    mcmc_graph_visit(
        flat,
        MultiGraph::with_nodes(4),
        &fixed_theta_chain(n_iter, 4),
        |s| {
            edges += s.graph.edge_count();
            n += 1;
        },
    )
    .unwrap();
    let mean = edges as f64 / n as f64;
    assert!((mean / 3.0 - 1.0).abs() < 0.1, "mean edge count {mean}");
}

#[test]
fn graph_chain_is_stationary_on_truncated_space() {
    let p = ModelParams::new(0.5, 0.5, 1.0).unwrap();
    let max_edges = 3;
    let truncate = move |g: &MultiGraph| -> Result<f64, String> {
        Ok(if g.edge_count() > max_edges {
            f64::NEG_INFINITY
        } else {
            0.0
        })
    };

    let orders: Vec<Vec<usize>> = vec![
        vec![0, 1, 2],
        vec![0, 2, 1],
        vec![1, 0, 2],
        vec![1, 2, 0],
        vec![2, 0, 1],
        vec![2, 1, 0],
    ];
    let mut target: HashMap<State, f64> = HashMap::new();
    for m01 in 0..=3u32 {
        for m02 in 0..=3 - m01 {
            for m12 in 0..=3 - m01 - m02 {
                let g = triple(m01, m02, m12);
                for o in &orders {
                    let sigma = Permutation::from_order(o.clone()).unwrap();
                    let w = log_prob_network(&g, &p, &sigma).unwrap().exp();
                    target.insert(((m01, m02, m12), o.clone()), w);
                }
            }
        }
    }
    let z: f64 = target.values().sum();

    let n_iter = 1_000_000;
    let mut visits: HashMap<State, u64> = HashMap::new();
    mcmc_graph_visit(
        truncate,
        MultiGraph::with_nodes(3),
        &fixed_theta_chain(n_iter, 12),
        |s| {
            *visits
                .entry((key(s.graph), s.sigma.order().to_vec()))
                .or_insert(0) += 1;
        },
    )
    .unwrap();

    let mut tv = 0.0;
    for (state, w) in &target {
        let emp = *visits.get(state).unwrap_or(&0) as f64 / n_iter as f64;
        tv += (emp - w / z).abs();
    }
    for state in visits.keys() {
        assert!(
            target.contains_key(state),
            "chain left the support: {state:?}"
        );
    }
    tv *= 0.5;
    assert!(tv < 0.02, "total variation {tv}");
}
