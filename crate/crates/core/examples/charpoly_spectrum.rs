//! Characteristic polynomial of U three ways (eigenvalues, vertex-space
//! reduction, and for Grover the transition-matrix form), and the spectrum
//! mapped from the eigenvalues of dSd*.
//!
//! cargo run --example charpoly_spectrum

use qwzeta::generators::cycle;
use qwzeta::linalg::multiset_distance;
use qwzeta::zeta::{self, CLUSTER_TOLERANCE};
use qwzeta::{CharpolyMethod, CoinParams, SpectrumMethod};

fn main() -> qwzeta::Result<()> {
    let g = cycle(5);
    let grover = CoinParams::grover();
    let direct = zeta::qw_charpoly(&g, &grover, CharpolyMethod::Direct)?;
    let reduced = zeta::qw_charpoly(&g, &grover, CharpolyMethod::Reduced)?;
    let ks = zeta::konno_sato_charpoly(&g);
    println!("C5 Grover charpoly coefficients (ascending):");
    for (k, z) in ks.coefficients().iter().enumerate() {
        println!("  x^{k:<2} {:+.10}", z.re);
    }
    println!("max |direct - reduced| = {:e}", direct.max_coeff_diff(&reduced));
    println!("max |direct - konno-sato| = {:e}", direct.max_coeff_diff(&ks));

    let p = CoinParams::unimodular(0.9, -1.7);
    let d = zeta::qw_spectrum(&g, &p, SpectrumMethod::Direct)?;
    let m = zeta::qw_spectrum(&g, &p, SpectrumMethod::Mapped)?;
    println!(
        "unimodular coin: spectra differ by {:e}",
        multiset_distance(&d.eigenvalues, &m.eigenvalues, CLUSTER_TOLERANCE)
    );
    Ok(())
}
