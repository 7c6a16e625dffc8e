//! Independent reference implementations used as test oracles. Each one is
//! written from the definition, favouring obviousness over speed, and shares
//! no code with the library beyond the `Graph` accessors.
#![allow(dead_code)]

use clique_explain::fpgrowth::AssociationRule;
use clique_explain::graph::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random simple graph with its own edge sampling.
pub fn random_graph(r: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.node_count();
    if n == 0 {
        return true;
    }
    let a = adjacency(g);
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if a[v][w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub const INF: usize = usize::MAX / 4;

pub fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let a = adjacency(g);
    let mut d = vec![vec![INF; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                d[i][j] = 0;
            } else if a[i][j] {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Max finite distance per node.
pub fn eccentricity_oracle(g: &Graph) -> Vec<f64> {
    floyd_warshall(g)
        .into_iter()
        .map(|row| row.into_iter().filter(|&d| d < INF).max().unwrap_or(0) as f64)
        .collect()
}

/// Triangles through each node by checking every triple.
pub fn triangle_oracle(g: &Graph) -> Vec<u64> {
    let n = g.node_count();
    let a = adjacency(g);
    let mut t = vec![0u64; n];
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if a[i][j] && a[j][k] && a[i][k] {
                    t[i] += 1;
                    t[j] += 1;
                    t[k] += 1;
                }
            }
        }
    }
    t
}

/// Betweenness by listing every shortest path between every ordered pair,
/// divided by `(n-1)(n-2)`.
pub fn betweenness_oracle(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut b = vec![0.0; n];
    if n < 3 {
        return b;
    }
    let d = floyd_warshall(g);
    let a = adjacency(g);
    for s in 0..n {
        for t in 0..n {
            if s == t || d[s][t] >= INF {
                continue;
            }
            let mut paths = Vec::new();
            let mut path = vec![s];
            enumerate_paths(&a, &d, t, &mut path, &mut paths);
            let total = paths.len() as f64;
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    b[v] += 1.0 / total;
                }
            }
        }
    }
    let scale = ((n - 1) * (n - 2)) as f64;
    b.into_iter().map(|x| x / scale).collect()
}

fn enumerate_paths(a: &[Vec<bool>], d: &[Vec<usize>], t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let v = *path.last().unwrap();
    if v == t {
        out.push(path.clone());
        return;
    }
    for w in 0..a.len() {
        if a[v][w] && d[w][t] + 1 == d[v][t] {
            path.push(w);
            enumerate_paths(a, d, t, path, out);
            path.pop();
        }
    }
}

/// Dense lazy walk `P = (I + W D^-1) / 2` with `D^-1 = 0` on isolated nodes.
pub fn dense_lazy_walk(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let a = adjacency(g);
    let deg: Vec<usize> = (0..n).map(|j| a[j].iter().filter(|&&x| x).count()).collect();
    let mut p = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let walk = if a[i][j] { 1.0 / deg[j] as f64 } else { 0.0 };
            p[i][j] = 0.5 * (if i == j { 1.0 } else { 0.0 } + walk);
        }
    }
    p
}

/// Dense `(D+I)^-1/2 (W+I) (D+I)^-1/2`.
pub fn dense_lowpass(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.node_count();
    let a = adjacency(g);
    let s: Vec<f64> = (0..n).map(|j| 1.0 / ((a[j].iter().filter(|&&x| x).count() + 1) as f64).sqrt()).collect();
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || a[i][j] {
                m[i][j] = s[i] * s[j];
            }
        }
    }
    m
}

pub fn identity(n: usize) -> Vec<Vec<f64>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect()
}

pub fn matmul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let m = b[0].len();
    let mut c = vec![vec![0.0; m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            for j in 0..m {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

pub fn matpow(a: &[Vec<f64>], e: usize) -> Vec<Vec<f64>> {
    let mut acc = identity(a.len());
    for _ in 0..e {
        acc = matmul(&acc, a);
    }
    acc
}

pub fn matsub(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

/// Dense `Psi_0 = I - P`, `Psi_k = P^(2^(k-1)) - P^(2^k)`.
pub fn dense_wavelet(g: &Graph, k: u32) -> Vec<Vec<f64>> {
    let p = dense_lazy_walk(g);
    if k == 0 {
        return matsub(&identity(p.len()), &p);
    }
    let half = 1usize << (k - 1);
    matsub(&matpow(&p, half), &matpow(&p, 2 * half))
}

/// `(L1, L2)` by summing over all ordered pairs.
pub fn loss_oracle(g: &Graph, p: &[f64]) -> (f64, f64) {
    let n = g.node_count();
    let a = adjacency(g);
    let (mut l1, mut l2) = (0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if a[i][j] {
                l1 -= p[i] * p[j];
            } else {
                l2 += p[i] * p[j];
            }
        }
    }
    (l1, l2)
}

/// Every itemset (as sorted symbol lists) with count at least `min_count`,
/// by checking every subset of the item universe.
pub fn exhaustive_itemsets(transactions: &[Vec<String>], min_count: u64) -> BTreeMap<Vec<String>, u64> {
    let mut universe: Vec<String> = transactions.iter().flatten().cloned().collect();
    universe.sort();
    universe.dedup();
    assert!(universe.len() <= 16);
    let mut out = BTreeMap::new();
    for mask in 1u32..(1 << universe.len()) {
        let set: Vec<String> = (0..universe.len()).filter(|i| mask >> i & 1 == 1).map(|i| universe[i].clone()).collect();
        let count = transactions.iter().filter(|t| set.iter().all(|s| t.contains(s))).count() as u64;
        if count >= min_count {
            out.insert(set, count);
        }
    }
    out
}

/// Smallest count reaching `min_support` as a fraction of `n`.
pub fn min_count_oracle(n: usize, min_support: f64) -> u64 {
    (1..=n as u64).find(|&c| c as f64 / n as f64 >= min_support).unwrap_or(n as u64 + 1)
}

pub fn count_containing(transactions: &[Vec<String>], set: &[String]) -> u64 {
    transactions.iter().filter(|t| set.iter().all(|s| t.contains(s))).count() as u64
}

/// Random transaction DB over `items` symbols `i0..`.
pub fn random_transactions(r: &mut ChaCha8Rng, items: usize, count: usize) -> Vec<Vec<String>> {
    let weights: Vec<f64> = (0..items).map(|_| r.random_range(0.05..0.9)).collect();
    (0..count)
        .map(|_| {
            let mut t: Vec<String> =
                (0..items).filter(|&i| r.random_bool(weights[i])).map(|i| format!("i{i:02}")).collect();
            if t.is_empty() {
                t.push(format!("i{:02}", r.random_range(0..items)));
            }
            t
        })
        .collect()
}

/// A direct line-by-line transcription of the greedy selection procedure:
///
/// ```text
/// R <- { r in R | r.consequents = c* }
/// sort R descending by m (ties: antecedent text, then input order)
/// S <- [], I_S <- []
/// for r in R:
///     I <- ParseAntecedents(r.antecedents)
///     if I = {} : continue
///     ok <- true
///     for J in I_S:
///         for (f, a, b) in I, (g, c, d) in J with f = g:
///             if min(b, d) - max(a, c) > eps: ok <- false
///     if ok: S.append(r); I_S.append(I)
/// return S
/// ```
pub fn greedy_reference(rules: &[AssociationRule], target: &str, metric: &str, eps: f64) -> Vec<AssociationRule> {
    let value = |r: &AssociationRule| match metric {
        "support" => r.support,
        "confidence" => r.confidence,
        "lift" => r.lift,
        _ => unreachable!(),
    };
    let mut candidates: Vec<(usize, &AssociationRule)> = Vec::new();
    for (i, r) in rules.iter().enumerate() {
        if r.consequents == vec![target.to_string()] {
            candidates.push((i, r));
        }
    }
    candidates.sort_by(|(ia, a), (ib, b)| {
        if value(a) != value(b) {
            return value(b).partial_cmp(&value(a)).unwrap();
        }
        let (ta, tb) = (a.antecedents.join(" AND "), b.antecedents.join(" AND "));
        if ta != tb {
            return ta.cmp(&tb);
        }
        ia.cmp(ib)
    });
    let mut selected = Vec::new();
    let mut kept: Vec<Vec<(String, f64, f64)>> = Vec::new();
    for (_, r) in candidates {
        let mut intervals = Vec::new();
        for item in &r.antecedents {
            let pos = item.rfind(" in [").unwrap();
            let name = item[..pos].to_string();
            let body = &item[pos + 5..item.len() - 1];
            let mut parts = body.split(", ");
            let lo: f64 = parts.next().unwrap().trim_end_matches('%').parse().unwrap();
            let hi: f64 = parts.next().unwrap().trim_end_matches('%').parse().unwrap();
            intervals.push((name, lo, hi));
        }
        if intervals.is_empty() {
            continue;
        }
        let mut ok = true;
        for other in &kept {
            for (f, a, b) in &intervals {
                for (g, c, d) in other {
                    if f == g && b.min(*d) - a.max(*c) > eps {
                        ok = false;
                    }
                }
            }
        }
        if ok {
            selected.push(r.clone());
            kept.push(intervals);
        }
    }
    selected
}

const INTERVALS: [(&str, &str); 9] = [
    ("0%", "20%"),
    ("20%", "40%"),
    ("40%", "60%"),
    ("60%", "80%"),
    ("80%", "100%"),
    ("0%", "19.99%"),
    ("20%", "39.99%"),
    ("0%", "40%"),
    ("20%", "60%"),
];

/// Random rules over a handful of features with coarse metric values, so that
/// ties and overlaps are common.
pub fn random_rules(r: &mut ChaCha8Rng, count: usize) -> Vec<AssociationRule> {
    let features = ["Log Degree", "Clustering Coefficient", "Eccentricity", "F"];
    let targets = ["MC_Prob_Top_20P", "MC_Prob_Bottom_20P"];
    (0..count)
        .map(|_| {
            let k = r.random_range(0..=3);
            let mut antecedents: Vec<String> = Vec::new();
            for _ in 0..k {
                let f = features[r.random_range(0..features.len())];
                let (lo, hi) = INTERVALS[r.random_range(0..INTERVALS.len())];
                antecedents.push(format!("{f} in [{lo}, {hi}]"));
            }
            antecedents.sort();
            antecedents.dedup();
            let support = r.random_range(1..6) as f64 / 20.0;
            let confidence = r.random_range(1..6) as f64 / 5.0;
            let lift = r.random_range(1..8) as f64 / 2.0;
            AssociationRule {
                antecedents,
                consequents: vec![targets[r.random_range(0..2)].to_string()],
                support,
                confidence,
                lift,
                antecedent_support: support / confidence,
                consequent_support: confidence / lift,
            }
        })
        .collect()
}

/// Small loader fixtures with known outcomes. Returns a description of the
/// first mismatch.
pub fn loader_fixture_suite() -> Result<usize, String> {
    use clique_explain::graph::{load_dimacs_clq, load_edge_list};
    let mut passed = 0;
    let mut check = |name: &str, ok: bool| -> Result<(), String> {
        if ok {
            passed += 1;
            Ok(())
        } else {
            Err(format!("fixture `{name}` failed"))
        }
    };

    let tri = load_dimacs_clq("p edge 3 3\ne 1 2\ne 2 3\ne 1 3").map_err(|e| e.to_string())?;
    check("dimacs triangle size", tri.node_count() == 3 && tri.edge_count() == 3)?;
    check("dimacs triangle density", tri.stats().density == 1.0)?;
    check("dimacs triangle is complete", tri.has_edge(0, 1) && tri.has_edge(1, 2) && tri.has_edge(0, 2))?;
    check("dimacs out of range", load_dimacs_clq("p edge 2 1\ne 1 3").is_err())?;

    let path = load_edge_list("0 1\n1 2").map_err(|e| e.to_string())?;
    check("edge list path", path.node_count() == 3 && path.edge_count() == 2 && !path.has_edge(0, 2))?;
    check("edge list path density", (path.stats().density - 2.0 / 3.0).abs() < 1e-15)?;
    let dup = load_edge_list("5 9\n9 5").map_err(|e| e.to_string())?;
    check("edge list reversed duplicate", dup.node_count() == 2 && dup.edge_count() == 1)?;
    check("edge list labels", dup.labels() == [5, 9])?;
    check("edge list self loop", load_edge_list("1 1").is_err())?;

    let single = Graph::from_edges(1, []).map_err(|e| e.to_string())?;
    check("single node density", single.stats().density == 0.0)?;
    Ok(passed)
}
