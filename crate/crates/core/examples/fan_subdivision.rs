//! Validates a fan, locates a valuation in it and blows it up.
//!
//! `cargo run --example fan_subdivision`

use torstab::{Fan, LatticeVector};

fn main() -> torstab::Result<()> {
    let rays = [[1, 0], [0, 1], [-1, -1]].map(|r| LatticeVector::new(r.to_vec())).to_vec();
    let p2 = Fan::new(2, rays, vec![vec![0, 1], vec![1, 2], vec![2, 0]])?;

    for nu in [[1, 1], [-1, -2], [1, 0]] {
        let nu = LatticeVector::new(nu.to_vec());
        let v = p2.minimal_cone_containing(&nu)?;
        let coeffs: Vec<String> = v.coefficients.iter().map(|c| c.to_string()).collect();
        println!(
            "nu = {nu}: cone {:?}, coefficients [{}], log discrepancy {}",
            v.minimal_cone,
            coeffs.join(", "),
            v.log_discrepancy
        );
    }

    let blown_up = p2.star_subdivision(&LatticeVector::new(vec![1, 1]))?;
    println!("\nstar subdivision at (1,1):");
    for (i, u) in blown_up.rays().iter().enumerate() {
        println!("  ray {i}: {u}");
    }
    println!("  maximal cones: {:?}", blown_up.max_cones());

    let bad = Fan::new(2, vec![LatticeVector::new(vec![2, 0]), LatticeVector::new(vec![0, 1])], vec![vec![0, 1]]);
    println!("\nrejected input: {}", bad.unwrap_err());
    Ok(())
}
