//! Zeta functions of graphs induced by general coined quantum walks.
//!
//! A coined walk on a graph `G` with `n` vertices and `m` edges evolves by
//! `U = S C` on the `2m`-dimensional arc space, where `S` reverses arcs and
//! the coin `C = a d* d + b (I - d* d)` has eigenvalue `a` on the range of
//! the boundary isometry `d*` and `b` on its complement. The walk zeta is
//! `zeta(G, u) = det(I - uU)^{-1}`; for `a = 1, b = -1` `U` is the Grover
//! matrix.
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`graph`] | simple graphs with paired arcs, transition matrix, exact reduced cycle counts |
//! | [`operators`] | `S`, `d`, `C`, `U`, the Grover matrix, positive supports |
//! | [`zeta`] | Bass formula, walk zeta (direct and reduced), characteristic polynomials, spectra |
//! | [`series`] | exact power series of `log Z` from the Bass determinant |
//! | [`periodic`] | `Z^d`-periodic graphs, Bloch fibers, `Gamma`-determinants |
//! | [`crosscheck`] | the identity suite behind `qwzeta cross-check` |
//! | [`cli`] | the command-line surface |
//!
//! ```
//! use qwzeta::{generators, zeta, CoinParams};
//! use num_complex::Complex64;
//!
//! let triangle = generators::cycle(3);
//! let z = zeta::qw_zeta(&triangle, &CoinParams::grover(), Complex64::new(0.5, 0.0), zeta::ZetaMethod::Reduced)?;
//! assert!((z.re - 64.0 / 49.0).abs() < 1e-12);
//! # Ok::<(), qwzeta::Error>(())
//! ```

pub mod cli;
pub mod crosscheck;
pub mod error;
pub mod generators;
pub mod graph;
pub mod json;
pub mod linalg;
pub mod operators;
pub mod periodic;
pub mod poly;
pub mod series;
pub mod zeta;

pub use error::{Error, Result};
pub use graph::{reduced_cycle_counts, CycleCountSeries, Graph};
pub use operators::{CoinParams, OperatorBundle};
pub use periodic::{DetGammaResult, FiberKernel, VoltageGraph};
pub use poly::ComplexPolynomial;
pub use zeta::{CharpolyMethod, SpectrumMethod, SpectrumResult, ZetaMethod};
