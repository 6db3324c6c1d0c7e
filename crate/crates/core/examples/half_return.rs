//! Half-return map of the polar model and its Taylor coefficients.
//!
//! cargo run --release --example half_return

use cyclicity::dynamics::{geometric_grid, HalfReturnProbe};

fn main() -> cyclicity::Result<()> {
    for (ell, sigma, c) in [(1, 1.0, 0.0), (1, -1.0, 2.0), (2, 1.0, -1.0)] {
        let probe = HalfReturnProbe::new(ell, sigma, c)?;
        let fit = probe.fit_default()?;
        let gap = probe.crosscheck(&geometric_grid(0.03, 0.2, 10))?;
        println!(
            "ell={ell} sigma={sigma} c={c}: fitted {:.10} {:.10} {:.10}, max error {:.1e}, quadrature gap {gap:.1e}",
            fit.coefficients[0], fit.coefficients[1], fit.coefficients[2], fit.max_error()
        );
    }
    Ok(())
}
