//! Gröbner bases, normal forms and radical membership from a generator file.
//!
//! cargo run --release --example ideal_membership

use cyclicity::ideals::{groebner, io::read_polys, power_member};
use cyclicity::polyalg::{parse_poly, MonomialOrder};

const GENERATORS: &str = "# ring: x,y
# order: grevlex
x^2 - y
x*y - 1
";

fn main() -> cyclicity::Result<()> {
    let (ring, gens) = read_polys(GENERATORS)?;
    let gb = groebner(&gens, MonomialOrder::Grevlex)?;
    for g in gb.generators() {
        println!("  {g}");
    }
    let p = parse_poly(&ring, "x^5 + y^3")?;
    println!("NF(x^5 + y^3) = {}", gb.normal_form(&p)?);
    let q = parse_poly(&ring, "x^3 - 1")?;
    println!("x^3 - 1 member with exponent {:?}", power_member(&q, &gb, 3)?);
    Ok(())
}
