//! Realize the orbits of a certified weak point one at a time.
//!
//! cargo run --release --example staircase -- 7

use cyclicity::certify::certify_lower;
use cyclicity::dynamics::{staircase, StaircaseOptions};
use cyclicity::polyalg::parse_point;
use cyclicity::Budget;

fn main() -> cyclicity::Result<()> {
    let d: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let point = match d {
        3 => "1,-1",
        4 => "0,0,1",
        7 => "0,0,1,0,0,-2",
        _ => panic!("no rational base point stored for d = {d}"),
    };
    let budget = Budget::from_env();
    let cert = certify_lower(&parse_point(point)?, d, &budget)?;
    let report = staircase(&cert, &StaircaseOptions::default(), &budget)?;
    for s in &report.steps {
        let xs: Vec<String> = s.orbits.orbits.iter().map(|o| format!("{:.3e}", o.x)).collect();
        println!("{} roots on: {} orbits [{}]", s.roots, s.orbits.count(), xs.join(", "));
    }
    println!("expected {}, found {}", report.order, report.final_count());
    Ok(())
}
