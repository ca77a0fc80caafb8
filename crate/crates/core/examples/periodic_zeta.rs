//! Zeta functions of the integer line, the square lattice and the honeycomb
//! lattice, by quadrature over the Brillouin torus.
//!
//! cargo run --release --example periodic_zeta

use num_complex::Complex64;
use qwzeta::generators::{grid2d, honeycomb, line};
use qwzeta::periodic::{periodic_ihara_zeta, periodic_qw_zeta, periodic_qw_zeta_arc};
use qwzeta::CoinParams;

fn main() -> qwzeta::Result<()> {
    let t = Complex64::new(0.1, 0.0);
    let u = Complex64::new(0.2, 0.0);
    let p = CoinParams::grover();
    for (name, vg) in [("line", line()), ("square", grid2d()), ("honeycomb", honeycomb())] {
        let traces = vg.gamma_traces();
        println!("{name}: Tr I_V = {}, Tr I_R = {}, chi = {}", traces.vertices, traces.arcs, vg.l2_euler_characteristic());
        for grid in [16, 32, 64] {
            println!(
                "  N={grid:<3} Z(t=0.1) = {:.14}  zeta(u=0.2) = {:.14}  arc route {:.14}",
                periodic_ihara_zeta(&vg, t, grid)?.re,
                periodic_qw_zeta(&vg, &p, u, grid)?.re,
                periodic_qw_zeta_arc(&vg, &p, u, grid)?.re,
            );
        }
    }
    Ok(())
}
