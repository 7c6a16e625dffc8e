mod common;

use clique_explain::graph::{planted_clique, Graph};
use clique_explain::scorer::*;
use common::*;
use rand::Rng;

fn random_point(r: &mut rand_chacha::ChaCha8Rng, n: usize) -> Vec<f64> {
    // keep away from the box edges so central differences stay inside
    (0..n).map(|_| r.random_range(0.01..0.99)).collect()
}

#[test]
fn loss_matches_pairwise_sum() {
    let mut r = rng(31);
    for _ in 0..200 {
        let n = r.random_range(1..=12);
        let p = r.random_range(0.0..1.0);
        let g = random_graph(&mut r, n, p);
        let beta = r.random_range(0.01..2.0);
        let x: Vec<f64> = (0..n).map(|_| r.random_range(0.0..=1.0)).collect();
        let loss = mcp_loss(&g, &x, beta).unwrap();
        let (l1, l2) = loss_oracle(&g, &x);
        assert!((loss.connectivity - l1).abs() < 1e-10);
        assert!((loss.violation - l2).abs() < 1e-10);
        assert!((loss.total - (l1 + beta * l2)).abs() < 1e-10);
    }
}

#[test]
fn clique_indicator_loss_is_exact() {
    for k in 1..=8usize {
        // k-clique plus a pendant path hanging off node 0
        let mut edges = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                edges.push((u, v));
            }
        }
        edges.push((0, k));
        edges.push((k, k + 1));
        let g = Graph::from_edges(k + 2, edges).unwrap();
        let mut p = vec![0.0; k + 2];
        p[..k].iter_mut().for_each(|x| *x = 1.0);
        let loss = mcp_loss(&g, &p, 0.06).unwrap();
        assert_eq!(loss.connectivity, -((k * (k - 1)) as f64));
        assert_eq!(loss.violation, 0.0);
    }
}

#[test]
fn gradient_matches_central_differences() {
    let mut r = rng(32);
    let h = 1e-6;
    for _ in 0..30 {
        let n = r.random_range(1..=12);
        let p = r.random_range(0.1..0.9);
        let g = random_graph(&mut r, n, p);
        let beta = r.random_range(0.01..1.0);
        for _ in 0..20 {
            let x = random_point(&mut r, n);
            let grad = mcp_loss_gradient(&g, &x, beta).unwrap();
            for i in 0..n {
                let (mut up, mut down) = (x.clone(), x.clone());
                up[i] += h;
                down[i] -= h;
                let fd = (mcp_loss(&g, &up, beta).unwrap().total - mcp_loss(&g, &down, beta).unwrap().total) / (2.0 * h);
                let scale = grad[i].abs().max(fd.abs()).max(1.0);
                assert!((grad[i] - fd).abs() / scale < 1e-6, "{} vs {fd}", grad[i]);
            }
        }
    }
}

#[test]
fn descent_never_increases_loss_with_auto_step() {
    let mut r = rng(33);
    for seed in 0..30u64 {
        let n = r.random_range(2..=40);
        let p = r.random_range(0.05..0.8);
        let g = random_graph(&mut r, n, p);
        for init in [Init::DegreeProportional, Init::Uniform] {
            let cfg = ScorerConfig { iterations: 50, seed, init, ..Default::default() };
            let (_, losses) = descend(&g, None, &cfg).unwrap();
            for w in losses.windows(2) {
                assert!(w[1] <= w[0] + 1e-12 * w[0].abs().max(1.0), "{} -> {}", w[0], w[1]);
            }
        }
    }
}

#[test]
fn planted_nodes_score_higher_on_average() {
    let (g, planted) = planted_clique(30, 0.1, 6, 4).unwrap();
    let p = optimize_probabilities(&g, None, &ScorerConfig::default()).unwrap();
    let inside: f64 = planted.iter().map(|&v| p.values[v]).sum::<f64>() / planted.len() as f64;
    let outside: f64 = (0..30).filter(|v| !planted.contains(v)).map(|v| p.values[v]).sum::<f64>() / 24.0;
    assert!(inside > outside, "{inside} vs {outside}");
}

#[test]
fn larger_clique_dominates_smaller() {
    let mut edges = Vec::new();
    for u in 0..5 {
        for v in u + 1..5 {
            edges.push((u, v));
        }
    }
    edges.extend([(5, 6), (5, 7), (6, 7)]);
    let g = Graph::from_edges(8, edges).unwrap();
    for iterations in [1, 5, 50] {
        let cfg = ScorerConfig { iterations, ..Default::default() };
        let p = optimize_probabilities(&g, None, &cfg).unwrap();
        let low5 = p.values[..5].iter().cloned().fold(f64::INFINITY, f64::min);
        let high3 = p.values[5..].iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(low5 >= high3, "{:?}", p.values);
    }
}

#[test]
fn outputs_are_scaled_and_deterministic() {
    let mut r = rng(34);
    for seed in 0..10u64 {
        let g = random_graph(&mut r, 25, 0.3);
        let cfg = ScorerConfig { seed, init: Init::Uniform, iterations: 4, ..Default::default() };
        let a = optimize_probabilities(&g, None, &cfg).unwrap();
        let b = optimize_probabilities(&g, None, &cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.values.iter().all(|v| (0.0..=1.0).contains(v)));
        if !a.degenerate {
            assert!(a.values.contains(&0.0) && a.values.contains(&1.0));
        }
    }
    let k = optimize_probabilities(&Graph::complete(5), None, &ScorerConfig::default()).unwrap();
    assert!(k.degenerate);
    assert_eq!(k.values, vec![0.5; 5]);
}
