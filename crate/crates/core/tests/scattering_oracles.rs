mod common;

use clique_explain::scattering::*;
use common::*;
use ndarray::Array2;
use rand::Rng;

fn random_signal(r: &mut rand_chacha::ChaCha8Rng, n: usize, c: usize) -> Array2<f64> {
    Array2::from_shape_fn((n, c), |_| r.random_range(-1.0..1.0))
}

fn assert_matches(got: &Array2<f64>, want: &[Vec<f64>], x: &Array2<f64>, tol: f64) {
    for i in 0..got.nrows() {
        for c in 0..got.ncols() {
            let expect: f64 = (0..x.nrows()).map(|k| want[i][k] * x[[k, c]]).sum();
            assert!((got[[i, c]] - expect).abs() <= tol, "row {i}: {} vs {expect}", got[[i, c]]);
        }
    }
}

#[test]
fn matrix_free_matches_dense_oracle() {
    let mut r = rng(21);
    for _ in 0..40 {
        let n = r.random_range(1..=16);
        let p = r.random_range(0.0..0.8);
        let g = random_graph(&mut r, n, p);
        let x = random_signal(&mut r, n, 3);
        assert_matches(&lazy_walk_apply(&g, x.view()).unwrap(), &dense_lazy_walk(&g), &x, 1e-12);
        for k in 0..=4 {
            assert_matches(&wavelet_apply(&g, k, x.view()).unwrap(), &dense_wavelet(&g, k), &x, 1e-12);
        }
        let a = dense_lowpass(&g);
        for rr in 1..=3 {
            assert_matches(&lowpass_apply(&g, rr, x.view()).unwrap(), &matpow(&a, rr as usize), &x, 1e-12);
        }
    }
}

#[test]
fn library_dense_form_agrees_with_oracle() {
    let mut r = rng(22);
    for _ in 0..20 {
        let n = r.random_range(1..=12);
        let g = random_graph(&mut r, n, 0.4);
        for (kind, want) in [
            (DiffusionKind::LazyWalk, dense_lazy_walk(&g)),
            (DiffusionKind::Wavelet(2), dense_wavelet(&g, 2)),
            (DiffusionKind::LowPass(2), matpow(&dense_lowpass(&g), 2)),
        ] {
            let got = DiffusionOperator::new(&g, kind).to_dense(DEFAULT_DENSE_LIMIT).unwrap();
            for i in 0..n {
                for j in 0..n {
                    assert!((got[[i, j]] - want[i][j]).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn lazy_walk_preserves_column_sums_without_isolated_nodes() {
    let mut r = rng(23);
    let mut checked = 0;
    while checked < 50 {
        let n = r.random_range(2..=200);
        let p = r.random_range(0.02..0.3);
        let g = random_graph(&mut r, n, p);
        if (0..n).any(|v| g.degree(v) == 0) {
            continue;
        }
        checked += 1;
        let x = random_signal(&mut r, n, 2);
        let y = lazy_walk_apply(&g, x.view()).unwrap();
        for c in 0..2 {
            let before: f64 = x.column(c).sum();
            let after: f64 = y.column(c).sum();
            assert!((before - after).abs() < 1e-12, "{before} vs {after}");
        }
    }
}

#[test]
fn wavelets_telescope() {
    let mut r = rng(24);
    for _ in 0..50 {
        let n = r.random_range(1..=200);
        let p = r.random_range(0.0..0.2);
        let g = random_graph(&mut r, n, p);
        let x = random_signal(&mut r, n, 1);
        let kmax = r.random_range(0..=4u32);
        let mut sum = Array2::<f64>::zeros((n, 1));
        for k in 0..=kmax {
            sum = sum + wavelet_apply(&g, k, x.view()).unwrap();
        }
        let walk = LazyWalk::new(&g);
        let tail = walk.power(1 << kmax, x.view()).unwrap();
        let want = &x - &tail;
        for i in 0..n {
            assert!((sum[[i, 0]] - want[[i, 0]]).abs() < 1e-12);
        }
    }
}

#[test]
fn wavelet_uses_exactly_two_to_the_k_applications() {
    let g = clique_explain::graph::Graph::petersen();
    let x = Array2::<f64>::ones((10, 1));
    for k in 1..=4u32 {
        let walk = LazyWalk::new(&g);
        walk.wavelet(k, x.view()).unwrap();
        assert_eq!(walk.applications(), 1 << k);
    }
}
