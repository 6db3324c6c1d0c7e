//! Gradient certificates at weak points, over Q and Q(sqrt 55).
//!
//! cargo run --release --example weak_point_certificates

use cyclicity::certify::certify_lower;
use cyclicity::polyalg::parse_point;
use cyclicity::Budget;

fn main() -> cyclicity::Result<()> {
    let budget = Budget::from_env();
    let cases = [
        (3, "1,-1"),
        (5, "1,-1,(9+sqrt(55))/2,-(23+3*sqrt(55))/2"),
        (7, "0,0,1,0,0,-2"),
    ];
    for (d, point) in cases {
        let cert = certify_lower(&parse_point(point)?, d, &budget)?;
        println!("d = {d} at ({point})");
        println!("  {}: V{} = {}, det = {}", cert.verdict, cert.witness_index, cert.witness_value, cert.determinant);
    }
    Ok(())
}
