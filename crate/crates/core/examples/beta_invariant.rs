//! β of the exceptional divisor on Bl_p P^2 along the family `3H - yE`,
//! computed by both routes and compared with `-4 (y-3)^2 y / (3 (y+3))`.
//!
//! `cargo run --example beta_invariant`

use torstab::exact::{parse_rational, rat};
use torstab::{gallery, LatticeVector, Polarised};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let e = LatticeVector::new(vec![1, 1]);
    println!("{:>5} {:>12} {:>12} {:>12}  agree", "y", "beta", "barycentre", "closed form");
    for y in ["1/2", "1", "3/2", "2", "5/2"] {
        let doc = gallery::example(&format!("blowup_p2:3,{y}"))?;
        let (fan, divisor) = torstab::cli::validate_document(&doc)?;
        let pol = Polarised::new(fan, divisor)?;
        let integral = rat(2) * pol.beta_integral(&e)?;
        let barycentre = rat(2) * pol.beta_barycentre(&e)?;
        let yq = parse_rational(y)?;
        let closed = rat(-4) * (&yq - rat(3)) * (&yq - rat(3)) * &yq / (rat(3) * (&yq + rat(3)));
        println!(
            "{y:>5} {:>12} {:>12} {:>12}  {}",
            integral.to_string(),
            barycentre.to_string(),
            closed.to_string(),
            integral == barycentre && barycentre == closed
        );
    }

    let pol = Polarised::new(
        torstab::cli::validate_document(&gallery::example("blowup_p2:3,1")?)?.0,
        torstab::ToricDivisor::from_ints(&[1, 1, 1, 1]),
    )?;
    let report = pol.report(&LatticeVector::new(vec![2, 2]))?;
    println!("\nfull report for nu = (2,2) on -K:");
    println!("  nu {} tau {} S {} j {}", report.nu, report.tau, report.s, report.j);
    println!("  beta {} (routes agree: {})", report.beta, report.beta_routes_agree);
    for c in &report.caveats {
        println!("  caveat: {c}");
    }
    Ok(())
}
