//! Reduced stability constants V_3..V_kmax of the generic family.
//!
//! cargo run --release --example golden_constants -- 15

use std::time::Instant;

use cyclicity::stability::{constants_table, render_reduced};
use cyclicity::Budget;

fn main() -> cyclicity::Result<()> {
    let kmax: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(11);
    let start = Instant::now();
    let table = constants_table(kmax, kmax, &Budget::from_env())?;
    print!("{}", render_reduced(&table));
    eprintln!("computed in {:.2?}", start.elapsed());
    Ok(())
}
