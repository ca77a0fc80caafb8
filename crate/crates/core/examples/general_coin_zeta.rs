//! Walk zeta for a general coin: det(I - uU) on the arc space against the
//! vertex-space reduction (1 - b^2 u^2)^{m-n} det((1 - ab u^2) I - cu dSd*).
//!
//! cargo run --example general_coin_zeta

use num_complex::Complex64;
use qwzeta::generators::petersen;
use qwzeta::{zeta, CoinParams, ZetaMethod};

fn main() -> qwzeta::Result<()> {
    let g = petersen();
    let coins = [
        ("Grover", CoinParams::grover()),
        ("unimodular", CoinParams::unimodular(0.4, 2.1)),
        ("non-unitary", CoinParams::new(Complex64::new(1.3, 0.2), Complex64::new(-0.4, 0.7))),
    ];
    let u = Complex64::new(0.21, -0.08);
    for (name, p) in coins {
        let direct = zeta::qw_zeta(&g, &p, u, ZetaMethod::Direct)?;
        let reduced = zeta::qw_zeta(&g, &p, u, ZetaMethod::Reduced)?;
        println!("{name:<12} direct {direct:.12}  reduced {reduced:.12}  |diff| {:e}", (direct - reduced).norm());
    }
    Ok(())
}
