//! Upper-bound hypotheses on the chain of reduced-constant ideals.
//!
//! cargo run --release --example upper_bounds -- 3 4

use cyclicity::ideals::{check_lrad, check_upper_hypotheses};
use cyclicity::Budget;

fn main() -> cyclicity::Result<()> {
    let budget = Budget::from_env();
    let degrees: Vec<usize> = std::env::args().skip(1).filter_map(|s| s.parse().ok()).collect();
    for d in if degrees.is_empty() { vec![3, 4] } else { degrees } {
        let up = check_upper_hypotheses(d, &budget)?;
        match up.m {
            Some(m) => println!("d = {d}: m = {m}, at most {} small 2-periodic orbits", m - 1),
            None => println!("d = {d}: chain hypotheses fail at {:?}", up.failed_at),
        }
        let lr = check_lrad(d, 4, &budget)?;
        println!("        radical profile ell = {:?}, exponents {:?}", lr.ell, lr.exponents);
    }
    Ok(())
}
