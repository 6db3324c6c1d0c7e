//! 2-periodic orbits of concrete maps, globally and near 0.
//!
//! cargo run --release --example orbit_count

use cyclicity::dynamics::{count_2periodic, orientation_preserving_null, ConcreteMap, ScanOptions, Window};
use cyclicity::polyalg::rat::int;
use cyclicity::polyalg::Rat;

fn main() -> cyclicity::Result<()> {
    let f = ConcreteMap::reversing(&[int(-7), int(0), int(10)]);
    let r = count_2periodic(&f, Window::Global, &ScanOptions::default())?;
    println!("{}: {} orbits, fixed points {:?}", f.poly(), r.count(), r.fixed_points);
    for o in &r.orbits {
        println!("  {{{:.12}, {:.12}}}  residual {:.1e}", o.x, o.y, o.residual);
    }
    let g = ConcreteMap::with_linear(Rat::from_integer(1.into()), &[int(-5), int(1)]);
    let null = orientation_preserving_null(&g, 1.0)?;
    println!("{}: {} orbits on {:?}", g.poly(), null.orbits, null.window);
    Ok(())
}
