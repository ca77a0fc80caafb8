//! Exact power series of `log Z(G, t)` from the Bass determinant.
//!
//! `Z(G,t)^{-1} = (1 - t^2)^{r-1} det(I - B(t))` with `B(t) = tA - t^2 (D - I)`,
//! so `log Z = (r - 1) sum_j t^{2j}/j + sum_k tr(B(t)^k)/k`. `B` has no
//! constant term, so only `k <= L` contributes through degree `L`. Everything
//! is carried in integers and rationals; no floating point is involved.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::graph::Graph;

/// Square matrix whose entries are integer polynomials truncated at a fixed degree.
#[derive(Clone)]
struct PolyMatrix {
    n: usize,
    order: usize,
    // entries[(i * n + j) * (order + 1) + k] = coefficient of t^k in entry (i, j)
    entries: Vec<BigInt>,
}

impl PolyMatrix {
    fn zeros(n: usize, order: usize) -> Self {
        PolyMatrix { n, order, entries: vec![BigInt::zero(); n * n * (order + 1)] }
    }

    fn at(&self, i: usize, j: usize, k: usize) -> &BigInt {
        &self.entries[(i * self.n + j) * (self.order + 1) + k]
    }

    fn at_mut(&mut self, i: usize, j: usize, k: usize) -> &mut BigInt {
        &mut self.entries[(i * self.n + j) * (self.order + 1) + k]
    }

    fn mul(&self, rhs: &PolyMatrix) -> PolyMatrix {
        let (n, order) = (self.n, self.order);
        let mut out = PolyMatrix::zeros(n, order);
        for i in 0..n {
            for l in 0..n {
                for p in 0..=order {
                    let a = self.at(i, l, p);
                    if a.is_zero() {
                        continue;
                    }
                    for j in 0..n {
                        for q in 0..=order - p {
                            let b = rhs.at(l, j, q);
                            if !b.is_zero() {
                                *out.at_mut(i, j, p + q) += a * b;
                            }
                        }
                    }
                }
            }
        }
        out
    }

    fn trace_coeff(&self, k: usize) -> BigInt {
        (0..self.n).map(|i| self.at(i, i, k)).sum()
    }
}

/// Coefficients of `t^1 .. t^L` in `log Z(G, t)`, computed from the Bass
/// determinant formula.
pub fn bass_log_series(g: &Graph, max_degree: usize) -> Vec<BigRational> {
    let n = g.vertex_count();
    let mut b = PolyMatrix::zeros(n, max_degree);
    if max_degree >= 1 {
        for arc in g.arcs() {
            *b.at_mut(arc.origin, arc.terminal, 1) += 1;
        }
    }
    if max_degree >= 2 {
        for v in 0..n {
            *b.at_mut(v, v, 2) -= BigInt::from(g.degree(v)) - 1;
        }
    }

    let mut series = vec![BigRational::zero(); max_degree + 1];
    let r_minus_one = BigInt::from(g.betti_number() as i64 - 1);
    for j in 1..=max_degree / 2 {
        series[2 * j] += BigRational::new(r_minus_one.clone(), BigInt::from(j));
    }

    let mut power = b.clone();
    for k in 1..=max_degree {
        if k > 1 {
            power = power.mul(&b);
        }
        for (m, coeff) in series.iter_mut().enumerate().skip(k) {
            let tr = power.trace_coeff(m);
            if !tr.is_zero() {
                *coeff += BigRational::new(tr, BigInt::from(k));
            }
        }
    }
    series.remove(0);
    series
}

/// `m` times the coefficient of `t^m` in the Bass log series. The Euler
/// product says these are the reduced cycle counts `N_m`.
pub fn bass_cycle_counts(g: &Graph, max_degree: usize) -> Vec<BigRational> {
    bass_log_series(g, max_degree)
        .into_iter()
        .enumerate()
        .map(|(k, q)| q * BigRational::from_integer(BigInt::from(k + 1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cycle, path};

    fn ratio(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn triangle_series() {
        let s = bass_log_series(&cycle(3), 6);
        let expected = [0, 0, 2, 0, 0, 1].map(|x| ratio(x, 1));
        assert_eq!(s, expected);
    }

    #[test]
    fn square_series() {
        // Z(C4, t) = (1 - t^4)^{-2}: log Z = 2 t^4 + t^8 + ...
        let s = bass_log_series(&cycle(4), 8);
        assert_eq!(s[3], ratio(2, 1));
        assert_eq!(s[7], ratio(1, 1));
        assert!(s.iter().enumerate().all(|(k, q)| k == 3 || k == 7 || q.is_zero()));
    }

    #[test]
    fn tree_series_vanishes() {
        assert!(bass_log_series(&path(5), 9).iter().all(Zero::is_zero));
    }
}
