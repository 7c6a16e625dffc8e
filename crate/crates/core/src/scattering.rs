//! Matrix-free diffusion operators on a graph: the lazy random walk
//! `P = (I + W D^-1) / 2`, dyadic diffusion wavelets
//! `Psi_0 = I - P`, `Psi_k = P^(2^(k-1)) - P^(2^k)`, and the normalized
//! low-pass operator `A = (D + I)^-1/2 (W + I) (D + I)^-1/2`.
//!
//! Operators act on `n x c` matrices, one graph signal per column. Isolated
//! nodes use `D^-1 = 0`, so `P` keeps half of their value.

use crate::error::{Error, Result};
use crate::features::FeatureMatrix;
use crate::graph::Graph;
use crate::par;
use ndarray::{Array1, Array2, ArrayView2, Axis};
use std::cell::Cell;

/// Largest graph for which [`DiffusionOperator::to_dense`] materializes a matrix.
pub const DEFAULT_DENSE_LIMIT: usize = 2000;

fn check_rows(g: &Graph, x: &ArrayView2<f64>) -> Result<()> {
    if x.nrows() != g.node_count() {
        return Err(Error::DimensionMismatch { expected: g.node_count(), actual: x.nrows() });
    }
    Ok(())
}

/// The lazy random walk bound to one graph. Counts its applications.
pub struct LazyWalk<'g> {
    graph: &'g Graph,
    inv_degree: Vec<f64>,
    applications: Cell<usize>,
}

impl<'g> LazyWalk<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let inv_degree = (0..graph.node_count())
            .map(|v| match graph.degree(v) {
                0 => 0.0,
                d => 1.0 / d as f64,
            })
            .collect();
        LazyWalk { graph, inv_degree, applications: Cell::new(0) }
    }

    /// Number of times `P` has been applied so far.
    pub fn applications(&self) -> usize {
        self.applications.get()
    }

    /// `P x = (x + W (D^-1 x)) / 2`.
    pub fn apply(&self, x: ArrayView2<f64>) -> Result<Array2<f64>> {
        check_rows(self.graph, &x)?;
        self.applications.set(self.applications.get() + 1);
        let mut scaled = x.to_owned();
        for (mut row, &inv) in scaled.axis_iter_mut(Axis(0)).zip(&self.inv_degree) {
            row *= inv;
        }
        let mut out = x.to_owned();
        for (v, mut row) in out.axis_iter_mut(Axis(0)).enumerate() {
            for &u in self.graph.neighbors(v) {
                row += &scaled.row(u);
            }
            row *= 0.5;
        }
        Ok(out)
    }

    /// `P^times x`.
    pub fn power(&self, times: usize, x: ArrayView2<f64>) -> Result<Array2<f64>> {
        check_rows(self.graph, &x)?;
        let mut y = x.to_owned();
        for _ in 0..times {
            y = self.apply(y.view())?;
        }
        Ok(y)
    }

    /// `Psi_k x` using exactly `2^k` applications of `P`.
    pub fn wavelet(&self, k: u32, x: ArrayView2<f64>) -> Result<Array2<f64>> {
        if k == 0 {
            let px = self.apply(x)?;
            return Ok(&x - &px);
        }
        let half = 1usize << (k - 1);
        let coarse = self.power(half, x)?;
        let coarser = self.power(half, coarse.view())?;
        Ok(coarse - coarser)
    }
}

/// `P x`.
pub fn lazy_walk_apply(g: &Graph, x: ArrayView2<f64>) -> Result<Array2<f64>> {
    LazyWalk::new(g).apply(x)
}

/// `Psi_k x`.
pub fn wavelet_apply(g: &Graph, k: u32, x: ArrayView2<f64>) -> Result<Array2<f64>> {
    LazyWalk::new(g).wavelet(k, x)
}

/// `A^r x` by `r` matrix-free applications.
pub fn lowpass_apply(g: &Graph, r: u32, x: ArrayView2<f64>) -> Result<Array2<f64>> {
    check_rows(g, &x)?;
    if r == 0 {
        return Err(Error::invalid("low-pass power must be at least 1"));
    }
    let s: Vec<f64> = (0..g.node_count()).map(|v| 1.0 / ((g.degree(v) + 1) as f64).sqrt()).collect();
    let mut y = x.to_owned();
    for _ in 0..r {
        let mut scaled = y.clone();
        for (mut row, &sv) in scaled.axis_iter_mut(Axis(0)).zip(&s) {
            row *= sv;
        }
        let mut next = scaled.clone();
        for (v, mut row) in next.axis_iter_mut(Axis(0)).enumerate() {
            for &u in g.neighbors(v) {
                row += &scaled.row(u);
            }
            row *= s[v];
        }
        y = next;
    }
    Ok(y)
}

/// Which diffusion operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiffusionKind {
    LazyWalk,
    /// `Psi_k`.
    Wavelet(u32),
    /// `A^r`, `r >= 1`.
    LowPass(u32),
}

/// A diffusion operator bound to a graph.
#[derive(Clone, Copy, Debug)]
pub struct DiffusionOperator<'g> {
    pub graph: &'g Graph,
    pub kind: DiffusionKind,
}

impl<'g> DiffusionOperator<'g> {
    pub fn new(graph: &'g Graph, kind: DiffusionKind) -> Self {
        DiffusionOperator { graph, kind }
    }

    pub fn apply(&self, x: ArrayView2<f64>) -> Result<Array2<f64>> {
        match self.kind {
            DiffusionKind::LazyWalk => lazy_walk_apply(self.graph, x),
            DiffusionKind::Wavelet(k) => wavelet_apply(self.graph, k, x),
            DiffusionKind::LowPass(r) => lowpass_apply(self.graph, r, x),
        }
    }

    /// Dense `n x n` matrix of the operator, built entrywise from the
    /// adjacency and multiplied out densely. Intended for cross-checks on
    /// small graphs; refuses graphs above `dense_limit` nodes.
    pub fn to_dense(&self, dense_limit: usize) -> Result<Array2<f64>> {
        let g = self.graph;
        let n = g.node_count();
        if n > dense_limit {
            return Err(Error::NodeLimitExceeded { node_count: n, limit: dense_limit });
        }
        let mut p = Array2::<f64>::eye(n) * 0.5;
        for (u, v) in g.edges() {
            p[[u, v]] += 0.5 / g.degree(v) as f64;
            p[[v, u]] += 0.5 / g.degree(u) as f64;
        }
        let dense_power = |m: &Array2<f64>, e: usize| {
            let mut acc = Array2::<f64>::eye(n);
            for _ in 0..e {
                acc = acc.dot(m);
            }
            acc
        };
        Ok(match self.kind {
            DiffusionKind::LazyWalk => p,
            DiffusionKind::Wavelet(0) => Array2::<f64>::eye(n) - p,
            DiffusionKind::Wavelet(k) => {
                let half = 1usize << (k - 1);
                dense_power(&p, half) - dense_power(&p, 2 * half)
            }
            DiffusionKind::LowPass(r) => {
                if r == 0 {
                    return Err(Error::invalid("low-pass power must be at least 1"));
                }
                let s = Array1::from_iter((0..n).map(|v| 1.0 / ((g.degree(v) + 1) as f64).sqrt()));
                let mut a = Array2::<f64>::eye(n);
                for (u, v) in g.edges() {
                    a[[u, v]] = 1.0;
                    a[[v, u]] = 1.0;
                }
                for i in 0..n {
                    for j in 0..n {
                        a[[i, j]] *= s[i] * s[j];
                    }
                }
                dense_power(&a, r as usize)
            }
        })
    }
}

/// Appends `|Psi_k c|` for `k = 0..=k_max` and `A^r c` for `r = 1..=r_max` for
/// every input column `c`, labeled `<name>@Psi<k>` and `<name>@A<r>`.
pub fn scattering_augment(g: &Graph, f: &FeatureMatrix, k_max: u32, r_max: u32) -> Result<FeatureMatrix> {
    if f.node_count() != g.node_count() {
        return Err(Error::DimensionMismatch { expected: g.node_count(), actual: f.node_count() });
    }
    if r_max == 0 {
        return Err(Error::invalid("r_max must be at least 1"));
    }
    let channels = par::map_slice(f.columns(), |col| -> Result<Vec<(String, Vec<f64>)>> {
        let x = Array2::from_shape_vec((col.values.len(), 1), col.values.clone())
            .expect("column shape");
        let mut out = Vec::new();
        for k in 0..=k_max {
            let y = wavelet_apply(g, k, x.view())?;
            out.push((format!("{}@Psi{k}", col.name), y.column(0).iter().map(|v| v.abs()).collect()));
        }
        for r in 1..=r_max {
            let y = lowpass_apply(g, r, x.view())?;
            out.push((format!("{}@A{r}", col.name), y.column(0).to_vec()));
        }
        Ok(out)
    });
    let mut result = f.clone();
    for group in channels {
        for (name, values) in group? {
            result.push(name, values)?;
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::{compute_features, FeatureName};
    use ndarray::array;

    #[test]
    fn k2_lazy_walk() {
        let g = Graph::complete(2);
        let y = lazy_walk_apply(&g, array![[1.0], [0.0]].view()).unwrap();
        assert_eq!(y, array![[0.5], [0.5]]);
    }

    #[test]
    fn isolated_node_keeps_half() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        let y = lazy_walk_apply(&g, array![[0.0], [0.0], [4.0]].view()).unwrap();
        assert_eq!(y[[2, 0]], 2.0);
    }

    #[test]
    fn wavelet_zero_is_identity_minus_walk() {
        let g = Graph::path(4);
        let x = array![[1.0, 0.0], [2.0, 1.0], [0.5, 0.0], [3.0, -1.0]];
        let px = lazy_walk_apply(&g, x.view()).unwrap();
        assert_eq!(wavelet_apply(&g, 0, x.view()).unwrap(), &x - &px);
    }

    #[test]
    fn uniform_is_fixed_point_on_complete_graph() {
        let g = Graph::complete(6);
        let x = Array2::from_elem((6, 1), 0.7);
        for k in 0..4 {
            let y = wavelet_apply(&g, k, x.view()).unwrap();
            assert!(y.iter().all(|v| v.abs() < 1e-15));
        }
    }

    #[test]
    fn wavelet_uses_two_to_the_k_walks() {
        let g = Graph::cycle(7);
        let x = Array2::from_elem((7, 1), 1.0);
        for k in 0..5 {
            let walk = LazyWalk::new(&g);
            walk.wavelet(k, x.view()).unwrap();
            assert_eq!(walk.applications(), 1 << k);
        }
    }

    #[test]
    fn lowpass_basics() {
        let g = Graph::complete(2);
        let y = lowpass_apply(&g, 1, array![[1.0], [1.0]].view()).unwrap();
        assert!((y[[0, 0]] - 1.0).abs() < 1e-15 && (y[[1, 0]] - 1.0).abs() < 1e-15);

        let g = Graph::star(5);
        let x = array![[1.0], [0.0], [2.0], [0.0], [1.0]];
        let twice = lowpass_apply(&g, 2, x.view()).unwrap();
        let once = lowpass_apply(&g, 1, x.view()).unwrap();
        assert_eq!(twice, lowpass_apply(&g, 1, once.view()).unwrap());
        assert!(lowpass_apply(&g, 0, x.view()).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let g = Graph::path(3);
        let x = Array2::<f64>::zeros((2, 1));
        assert!(matches!(lazy_walk_apply(&g, x.view()), Err(Error::DimensionMismatch { .. })));
        assert!(wavelet_apply(&g, 2, x.view()).is_err());
        assert!(lowpass_apply(&g, 1, x.view()).is_err());
    }

    #[test]
    fn dense_limit_enforced() {
        let g = Graph::path(5);
        assert!(DiffusionOperator::new(&g, DiffusionKind::LazyWalk).to_dense(4).is_err());
        assert!(DiffusionOperator::new(&g, DiffusionKind::LazyWalk).to_dense(5).is_ok());
    }

    #[test]
    fn augment_counts_and_labels() {
        let g = Graph::complete(5);
        let f = compute_features(&g, &[FeatureName::LogDegree]).unwrap();
        let aug = scattering_augment(&g, &f, 0, 1).unwrap();
        assert_eq!(aug.names(), vec!["Log Degree", "Log Degree@Psi0", "Log Degree@A1"]);
        let aug = scattering_augment(&g, &f, 3, 2).unwrap();
        assert_eq!(aug.columns().len(), 1 + 4 + 2);
        for k in 0..=3 {
            let col = aug.column(&format!("Log Degree@Psi{k}")).unwrap();
            assert!(col.iter().all(|v| v.abs() < 1e-14));
        }
    }

    #[test]
    fn augment_rejects_collisions() {
        let g = Graph::path(3);
        let mut f = FeatureMatrix::new(3);
        f.push("x", vec![1.0, 2.0, 3.0]).unwrap();
        f.push("x@Psi0", vec![0.0; 3]).unwrap();
        assert!(matches!(scattering_augment(&g, &f, 0, 1), Err(Error::DuplicateColumn(_))));
    }
}
