//! The Grover walk on K4: the evolution operator for a = 1, b = -1 is the
//! Grover matrix, it is unitary, and its spectrum comes from the random-walk
//! transition matrix.
//!
//! cargo run --example grover_walk

use qwzeta::generators::complete;
use qwzeta::linalg::{adjoint, identity, max_abs_diff};
use qwzeta::operators::{evolution_matrix, grover_matrix};
use qwzeta::{zeta, CoinParams, SpectrumMethod};

fn main() -> qwzeta::Result<()> {
    let g = complete(4);
    let u = evolution_matrix(&g, &CoinParams::grover());
    println!("|U - Grover|_max = {:e}", max_abs_diff(&u, &grover_matrix(&g)));
    println!("|U*U - I|_max    = {:e}", max_abs_diff(&(adjoint(&u) * &u), &identity(g.arc_count())));

    let s = zeta::qw_spectrum(&g, &CoinParams::grover(), SpectrumMethod::Direct)?;
    println!("spectrum of U ({} arcs):", g.arc_count());
    for z in &s.eigenvalues {
        println!("  {:+.6} {:+.6}i", z.re, z.im);
    }
    println!("extra eigenvalues at +b: {}, at -b: {} (m - n = {})", s.multiplicity_of_plus_b, s.multiplicity_of_minus_b, g.edge_count() - g.vertex_count());
    Ok(())
}
