//! Ihara zeta of a few small graphs: the Bass determinant value, and the
//! power series of log Z checked against counted reduced cycles.
//!
//! cargo run --example ihara_bass

use num_complex::Complex64;
use qwzeta::generators::{complete, cycle, petersen};
use qwzeta::series::bass_log_series;
use qwzeta::{reduced_cycle_counts, zeta};

fn main() -> qwzeta::Result<()> {
    let t = Complex64::new(0.5, 0.0);
    println!("Z(C3, 1/2) = {:.12} (64/49 = {:.12})", zeta::ihara_zeta_bass(&cycle(3), t)?.re, 64.0 / 49.0);

    for (name, g) in [("K4", complete(4)), ("Petersen", petersen())] {
        let counts = reduced_cycle_counts(&g, 10)?;
        let series = bass_log_series(&g, 10);
        println!("{name}: betti number {}", g.betti_number());
        for (k, q) in series.iter().enumerate() {
            let m = k + 1;
            println!("  t^{m:<2} Bass {q:>12}   N_m/m = {}/{m}", counts.get(m));
        }
    }
    Ok(())
}
