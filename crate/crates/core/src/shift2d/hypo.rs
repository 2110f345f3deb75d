//! Floating-point compression of the self-commutator of a weighted pair.
//! A necessary condition for subnormality only.

use nalgebra::{DMatrix, SymmetricEigen};

use super::diagram::{Lattice, WeightDiagram, Window};
use crate::certificate::Certificate;
use crate::measures::Axis;
use crate::numerics::to_f64;

fn weight(d: &WeightDiagram, axis: Axis, k: Lattice) -> f64 {
    to_f64(&d.weight_sq(axis, k)).sqrt()
}

fn step(k: Lattice, axis: Axis) -> Lattice {
    match axis {
        Axis::X => (k.0 + 1, k.1),
        Axis::Y => (k.0, k.1 + 1),
    }
}

fn back(k: Lattice, axis: Axis) -> Option<Lattice> {
    match axis {
        Axis::X => k.0.checked_sub(1).map(|a| (a, k.1)),
        Axis::Y => k.1.checked_sub(1).map(|b| (k.0, b)),
    }
}

/// Block matrix `[[T_j^*, T_i]]_{i,j}` compressed to the span of `e_k`,
/// `k` in the window. Row block `i`, column block `j`.
pub fn self_commutator_window(d: &WeightDiagram, window: Window) -> DMatrix<f64> {
    let points = window.points();
    let n = points.len();
    let index = |k: Lattice| -> Option<usize> {
        window
            .contains(k)
            .then(|| (k.1 * window.width + k.0) as usize)
    };
    let axes = [Axis::X, Axis::Y];
    let mut m = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for (bi, &ai) in axes.iter().enumerate() {
        for (bj, &aj) in axes.iter().enumerate() {
            for (col, &k) in points.iter().enumerate() {
                if ai == aj {
                    let here = weight(d, ai, k).powi(2);
                    let before = back(k, ai).map_or(0.0, |p| weight(d, ai, p).powi(2));
                    m[(bi * n + col, bj * n + col)] = here - before;
                    continue;
                }
                // [T_j^*, T_i] e_k lands on k + e_i - e_j
                let Some(below) = back(k, aj) else { continue };
                let target = step(below, ai);
                let Some(row) = index(target) else { continue };
                let forward = weight(d, ai, k) * weight(d, aj, target);
                let backward = weight(d, aj, below) * weight(d, ai, below);
                m[(bi * n + row, bj * n + col)] = forward - backward;
            }
        }
    }
    m
}

/// PSD-within-tolerance check of the windowed self-commutator.
pub fn joint_hyponormality_window(d: &WeightDiagram, window: Window, tolerance: f64) -> Certificate {
    let m = self_commutator_window(d, window);
    let eig = SymmetricEigen::new(m);
    let (pos, min) = eig
        .eigenvalues
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc });
    let ok = min >= -tolerance;
    let cert = Certificate::new("joint_hyponormality", crate::Verdict::from_bool(ok))
        .with_value("window", window)
        .with_value("tolerance", tolerance)
        .with_value("min_eigenvalue_float", min);
    if ok {
        cert
    } else {
        let v = eig.eigenvectors.column(pos);
        let n = window.len();
        let (at, _) = v
            .iter()
            .enumerate()
            .fold((0, 0.0_f64), |acc, (i, x)| if x.abs() > acc.1 { (i, x.abs()) } else { acc });
        let k = window.points()[at % n];
        let block = if at < n { "T1" } else { "T2" };
        cert.with_witness(
            format!("{block} component at k=({},{})", k.0, k.1),
            [("min_eigenvalue_float", min.to_string())],
        )
    }
}
