//! The Futaki invariant vanishes exactly when every toric prime divisor has
//! β ≥ 0, in which case β vanishes identically.
//!
//! `cargo run --example futaki_theorem`

use num_traits::Signed;
use torstab::cli::validate_document;
use torstab::{gallery, Polarised};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in gallery::DEFAULT_INSTANCES {
        let (fan, divisor) = validate_document(&gallery::example(name)?)?;
        let pol = Polarised::new(fan, divisor)?;
        let betas: Vec<String> = pol
            .fan()
            .rays()
            .iter()
            .map(|u| pol.beta_barycentre(u).map(|b| b.to_string()))
            .collect::<Result<_, _>>()?;
        let unstable = pol
            .fan()
            .rays()
            .iter()
            .any(|u| pol.beta_barycentre(u).is_ok_and(|b| b.is_negative()));
        println!(
            "{name:<20} futaki vanishes: {:<5}  destabilised by a ray: {:<5}  ray beta_hat [{}]",
            pol.futaki_vanishes(),
            unstable,
            betas.join(", ")
        );
    }
    Ok(())
}
