//! Explicit families: even degree 2n at (0,..,0,1) and the degree 4m+3 maps.
//!
//! cargo run --release --example constructions

use cyclicity::certify::{even_construction, odd_4m3_construction};

fn main() -> cyclicity::Result<()> {
    for n in 1..=3 {
        let c = even_construction(n)?;
        println!("d = {}: {} (witness {}, det {})", 2 * n, c.verdict, c.witness_value, c.determinant);
    }
    for m in 0..=2 {
        let c = odd_4m3_construction(m)?;
        println!("d = {}: {} (x^{} coefficient {})", 4 * m + 3, c.verdict, c.witness_index, c.witness_value);
    }
    Ok(())
}
