//! Donaldson–Futaki invariant of a toric test configuration from lattice
//! point counts, checked against β.
//!
//! `cargo run --release --example df_oracle`

use torstab::cli::validate_document;
use torstab::oracle::{df_from_counts, verify_df_equals_beta};
use torstab::{gallery, LatticeVector, Polarised};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (fan, divisor) = validate_document(&gallery::example("blowup_p2:3,1")?)?;
    let pol = Polarised::new(fan, divisor)?;
    let e = LatticeVector::new(vec![1, 1]);

    let report = df_from_counts(&pol, &e, 8)?;
    println!("{:>3} {:>6} {:>8} {:>8}", "k", "h(k)", "w(k)", "f(k)");
    for s in &report.samples {
        println!("{:>3} {:>6} {:>8} {:>8}", s.k, s.h, s.w, s.f);
    }
    let c = &report.coefficients;
    println!("h(k) = {}", c.hilbert);
    println!("w(k) = {}", c.weight);
    println!("a0 = {}, a1 = {}, b0 = {}, b1 = {}", c.a0, c.a1, c.b0, c.b1);
    println!("DF = {} (from the filtration: {})", report.df, report.df_from_filtration);

    let v = verify_df_equals_beta(&pol, &e, 8)?;
    println!("DF * L^n = {}, beta = {}: {}", v.df_times_volume, v.beta, if v.pass { "pass" } else { "fail" });
    Ok(())
}
