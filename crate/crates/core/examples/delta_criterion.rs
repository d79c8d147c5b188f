//! Toric δ against its brute-force value, the destabiliser search, and the
//! sufficient criterion `t_min < mu + gamma`.
//!
//! `cargo run --release --example delta_criterion`

use torstab::cli::validate_document;
use torstab::invariants::default_radius;
use torstab::{gallery, Polarised};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["p2_anticanonical", "p1xp1:1,1", "blowup_p2:3,1", "p112_anticanonical"] {
        let (fan, divisor) = validate_document(&gallery::example(name)?)?;
        let pol = Polarised::new(fan, divisor)?;
        let (delta, ray) = pol.delta_toric()?;
        let brute = pol.delta_toric_brute(5)?;
        let crit = pol.sufficient_criterion()?;
        println!("{name}");
        println!("  delta_toric = {delta} (ray {ray}), brute force at R = 5: {brute}");
        println!(
            "  mu = {}, gamma = {}, target mu + gamma = {}, t_min = {}: {}",
            crit.mu,
            crit.gamma,
            crit.target,
            crit.t_min,
            crit.verdict.as_str()
        );
        let search = pol.destabilizer_search(default_radius(pol.dim()))?;
        match search.best {
            Some(c) => println!("  most destabilising nu = {} with beta_hat/j_hat = {}", c.nu, c.ratio),
            None => println!("  no destabiliser within R = {}", search.radius),
        }
    }
    Ok(())
}
