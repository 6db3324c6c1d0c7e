//! Sturm count and isolation of the bundled degree-16 polynomial.
//!
//! cargo run --release --example real_roots

use cyclicity::realroots::{isolate_roots, p16, sturm_count};

fn main() {
    let p = p16();
    println!("degree {:?}, {} distinct real roots", p.degree(), sturm_count(&p, None));
    for iv in isolate_roots(&p) {
        println!("  {:.10e}", iv.to_f64());
    }
}
