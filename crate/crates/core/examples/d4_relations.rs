//! Express W_4..W_16 of the degree-4 family through V_3, V_5, V_7.
//!
//! cargo run --release --example d4_relations

use cyclicity::ideals::groebner;
use cyclicity::polyalg::MonomialOrder;
use cyclicity::stability::{stability_constants_to, Reducer};
use cyclicity::Budget;

fn main() -> cyclicity::Result<()> {
    let budget = Budget::from_env();
    let table = stability_constants_to(4, 16)?;
    let mut reducer = Reducer::new(&table);
    reducer.extend_to(7, &budget)?;
    let t = reducer.table();
    for j in 4..=7 {
        match t.relation(j)? {
            Some(parts) => {
                let terms: Vec<String> = parts.iter().map(|(k, q)| format!("({q})*V{k}")).collect();
                println!("W{j} = {}{}", if j % 2 == 1 { format!("V{j} + ") } else { String::new() }, terms.join(" + "));
            }
            None => println!("W{j}: no relation"),
        }
    }
    let gens: Vec<_> = t.vs().values().cloned().collect();
    let gb = groebner(&gens, MonomialOrder::Grevlex)?;
    for j in 8..=16 {
        println!("W{j} in <V3,V5,V7>: {}", gb.contains(table.w(j).expect("computed"))?);
    }
    Ok(())
}
