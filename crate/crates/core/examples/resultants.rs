//! Eliminating a variable with resultants.
//!
//! cargo run --release --example resultants

use cyclicity::polyalg::{parse_poly, Ring};
use cyclicity::realroots::resultant_in;

fn main() -> cyclicity::Result<()> {
    let ring = Ring::new(vec!["x", "a", "b"])?;
    let p = parse_poly(&ring, "x^2 - a")?;
    let q = parse_poly(&ring, "x^3 - b")?;
    // common root x forces a^3 = b^2
    println!("Res_x = {}", resultant_in(&p, &q, 0)?);
    Ok(())
}
