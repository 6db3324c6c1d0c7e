//! Coefficients of g(-g^{-1}(x)) for g = x + b2 x^2 + .., and b7 from W_11 = 0.
//!
//! cargo run --release --example involution

use cyclicity::certify::{involution_coefficients, solve_b7};

fn main() -> cyclicity::Result<()> {
    for (j, b) in involution_coefficients(5)?.iter().enumerate() {
        println!("B{} = {b}", j + 2);
    }
    let (_, sol) = solve_b7(&[])?;
    println!("b7 = ({}) / ({})", sol.numerator, sol.denominator);
    Ok(())
}
