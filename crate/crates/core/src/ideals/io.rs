//! Basis files: a header naming the ring and order, then one generator per line.
//!
//! ```text
//! # ring: a2,a3,a4
//! # order: grevlex
//! -2 * a2^2 - 2 * a3
//! ```

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyalg::{parse_poly, MultiPoly, Ring};

use super::GroebnerBasis;

pub fn write_polys(ring: &Ring, polys: &[MultiPoly]) -> String {
    let mut s = format!("# ring: {}\n# order: grevlex\n", ring.vars().join(","));
    for p in polys {
        s.push_str(&p.to_string());
        s.push('\n');
    }
    s
}

pub fn write_basis(gb: &GroebnerBasis) -> String {
    write_polys(gb.ring(), gb.generators())
}

/// Parse a basis file, returning its ring and generators.
pub fn read_polys(text: &str) -> Result<(Arc<Ring>, Vec<MultiPoly>)> {
    let mut ring = None;
    let mut polys = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(h) = line.strip_prefix('#') {
            let h = h.trim();
            if let Some(vars) = h.strip_prefix("ring:") {
                let names: Vec<&str> =
                    vars.split(',').map(str::trim).filter(|v| !v.is_empty()).collect();
                ring = Some(Ring::new(names)?);
            } else if let Some(order) = h.strip_prefix("order:") {
                if order.trim() != "grevlex" {
                    return Err(Error::Parse(format!("unsupported order {:?}", order.trim())));
                }
            }
            continue;
        }
        let r = ring
            .as_ref()
            .ok_or_else(|| Error::Parse("basis file needs a '# ring:' header".into()))?;
        polys.push(parse_poly(r, line)?);
    }
    let ring = ring.ok_or_else(|| Error::Parse("basis file needs a '# ring:' header".into()))?;
    Ok((ring, polys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::groebner;
    use crate::polyalg::MonomialOrder;

    #[test]
    fn round_trip() {
        let r = Ring::a_family(4);
        let gens = vec![parse_poly(&r, "-2*a2^2 - 2*a3").unwrap(), parse_poly(&r, "a4*a2 - 1/3*a3^2").unwrap()];
        let gb = groebner(&gens, MonomialOrder::Grevlex).unwrap();
        let text = write_basis(&gb);
        let (r2, polys) = read_polys(&text).unwrap();
        assert_eq!(r2, r);
        assert_eq!(polys, gb.generators());
    }
}
