//! The fixed-point constants c(r) solving c = 1 − e^{−cr}: the asymptotic
//! fraction of states inside the unique closed class of a random DFA.
//!
//! Run with `cargo run --example grusho_table`.

use ergodfa::bounds::{grusho_constant, truncate3};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(" r   c(r)                truncated   residual");
    for r in 2..=10 {
        let c = grusho_constant(r)?;
        let residual = (c - 1.0 + (-c * r as f64).exp()).abs();
        println!(" {r:<3} {c:<19.15} {:<11.3} {residual:.2e}", truncate3(c));
    }
    Ok(())
}
