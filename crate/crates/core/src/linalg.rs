//! Thin helpers over `faer` for the dense complex matrices used everywhere
//! in this crate.

use faer::{Mat, Side};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMat = Mat<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn real(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(n: usize) -> CMat {
    Mat::from_fn(n, n, |i, j| if i == j { ONE } else { ZERO })
}

pub fn to_complex(m: &Mat<f64>) -> CMat {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| real(m[(i, j)]))
}

pub fn scale(m: &CMat, z: Complex64) -> CMat {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * z)
}

/// `alpha * I + beta * m` for square `m`.
pub fn shifted(m: &CMat, alpha: Complex64, beta: Complex64) -> CMat {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| {
        let diag = if i == j { alpha } else { ZERO };
        diag + beta * m[(i, j)]
    })
}

pub fn adjoint(m: &CMat) -> CMat {
    Mat::from_fn(m.ncols(), m.nrows(), |i, j| m[(j, i)].conj())
}

pub fn eigenvalues(m: &CMat) -> Result<Vec<Complex64>> {
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    m.eigenvalues().map_err(|e| Error::Eigen(format!("{e:?}")))
}

/// Eigenvalues of a Hermitian matrix, ascending. Only the lower triangle is read.
pub fn hermitian_eigenvalues(m: &CMat) -> Result<Vec<f64>> {
    if m.nrows() == 0 {
        return Ok(Vec::new());
    }
    m.self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::Eigen(format!("{e:?}")))
}

pub fn determinant(m: &CMat) -> Complex64 {
    if m.nrows() == 0 {
        return ONE;
    }
    m.determinant()
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    assert_eq!((a.nrows(), a.ncols()), (b.nrows(), b.ncols()));
    let mut worst = 0.0f64;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            worst = worst.max((a[(i, j)] - b[(i, j)]).norm());
        }
    }
    worst
}

pub fn trace(m: &CMat) -> Complex64 {
    (0..m.nrows().min(m.ncols())).map(|i| m[(i, i)]).sum()
}

/// Pairwise (cascade) summation. The split points depend only on the length,
/// so the result is independent of how the terms were produced.
pub fn pairwise_sum(xs: &[Complex64]) -> Complex64 {
    const BLOCK: usize = 8;
    if xs.len() <= BLOCK {
        return xs.iter().fold(ZERO, |acc, x| acc + x);
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

fn grid_key(z: &Complex64, grid: f64) -> (i64, i64) {
    ((z.re / grid).round() as i64, (z.im / grid).round() as i64)
}

/// Sorts a multiset of complex numbers by (real, imaginary) after rounding
/// each component to a grid of spacing `grid`.
pub fn sort_multiset(xs: &mut [Complex64], grid: f64) {
    xs.sort_by(|a, b| {
        grid_key(a, grid)
            .cmp(&grid_key(b, grid))
            .then(a.re.total_cmp(&b.re))
            .then(a.im.total_cmp(&b.im))
    });
}

/// Distance between two multisets of equal size: the largest gap between
/// paired elements. Elements are paired by rounded sort order; if that
/// pairing is worse than `grid` (an element sat on a rounding boundary) a
/// nearest-unmatched pairing is used instead. Returns `f64::INFINITY` for
/// multisets of different sizes.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64], grid: f64) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sort_multiset(&mut sa, grid);
    sort_multiset(&mut sb, grid);
    let sorted = sa
        .iter()
        .zip(&sb)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max);
    if sorted <= grid {
        return sorted;
    }
    sorted.min(greedy_matching_distance(&sa, &sb))
}

fn greedy_matching_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for x in a {
        let (k, d) = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, y)| (k, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .expect("equal sizes");
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}

/// Removes from `from` one element within `tol` of each element of `take`
/// (nearest first). Returns the remainder and the number of elements of
/// `take` that found no partner.
pub fn multiset_remove(from: &[Complex64], take: &[Complex64], tol: f64) -> (Vec<Complex64>, usize) {
    let mut rest: Vec<Option<Complex64>> = from.iter().copied().map(Some).collect();
    let mut missing = 0;
    for x in take {
        let best = rest
            .iter()
            .enumerate()
            .filter_map(|(k, y)| y.map(|y| (k, (x - y).norm())))
            .min_by(|p, q| p.1.total_cmp(&q.1));
        match best {
            Some((k, d)) if d <= tol => rest[k] = None,
            _ => missing += 1,
        }
    }
    (rest.into_iter().flatten().collect(), missing)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_sum_matches_naive_on_small_input() {
        let xs: Vec<_> = (0..100).map(|k| c(k as f64, -(k as f64))).collect();
        assert_eq!(pairwise_sum(&xs), c(4950.0, -4950.0));
    }

    #[test]
    fn multiset_distance_is_order_free() {
        let a = [c(1.0, 0.0), c(-0.5, 0.8), c(-0.5, -0.8)];
        let b = [c(-0.5, -0.8), c(1.0, 1e-12), c(-0.5, 0.8)];
        assert!(multiset_distance(&a, &b, 1e-8) < 1e-11);
        assert_eq!(multiset_distance(&a, &b[..2], 1e-8), f64::INFINITY);
    }

    #[test]
    fn multiset_distance_survives_rounding_boundary() {
        // 0.5e-8 sits exactly between two grid cells.
        let a = [c(0.5e-8 - 1e-17, 1.0), c(0.5e-8, -1.0)];
        let b = [c(0.5e-8 + 1e-17, 1.0), c(0.5e-8, -1.0)];
        assert!(multiset_distance(&a, &b, 1e-8) < 1e-15);
    }

    #[test]
    fn multiset_remove_reports_leftovers() {
        let from = [ONE, ONE, -ONE, c(0.0, 1.0)];
        let (rest, missing) = multiset_remove(&from, &[ONE, c(0.0, 1.0), c(5.0, 0.0)], 1e-9);
        assert_eq!(missing, 1);
        assert_eq!(rest.len(), 2);
    }

    #[test]
    fn determinant_of_empty_matrix_is_one() {
        assert_eq!(determinant(&identity(0)), ONE);
    }
}
