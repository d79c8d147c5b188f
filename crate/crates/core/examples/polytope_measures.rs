//! Moment polytope of `3H - E` on the blow-up of P^2: vertices, volume,
//! barycentres, facet measures and the slice-volume profile.
//!
//! `cargo run --example polytope_measures`

use torstab::polytope::polytope_of;
use torstab::{Fan, LatticeVector, ToricDivisor};

fn show(v: &[torstab::Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn main() -> torstab::Result<()> {
    let rays = [[1, 0], [0, 1], [-1, -1], [1, 1]].map(|r| LatticeVector::new(r.to_vec())).to_vec();
    let fan = Fan::new(2, rays, vec![vec![0, 3], vec![1, 3], vec![1, 2], vec![0, 2]])?;
    let p = polytope_of(&fan, &ToricDivisor::from_ints(&[0, 0, 3, -1]))?;

    println!("ample: {}", p.is_ample());
    for v in p.vertices() {
        println!("vertex {}", show(v));
    }
    let (vol, bary) = p.measure()?;
    println!("Vol_M = {vol}, barycentre {}", show(&bary));

    let boundary = p.boundary_measure()?;
    for f in &boundary.facets {
        println!("facet of ray {}: lattice length {}", f.ray, f.volume);
    }
    println!("boundary measure {}, boundary barycentre {}", boundary.total, show(&boundary.barycentre));

    let e = LatticeVector::new(vec![1, 1]);
    let profile = p.slice_profile(&e)?;
    println!("\nslices along {e}, width {}:", p.width(&e)?);
    for (i, piece) in profile.volume.pieces.iter().enumerate() {
        println!(
            "  on [{}, {}]: Vol_M(P_x) = {piece}",
            profile.volume.breakpoints[i],
            profile.volume.breakpoints[i + 1]
        );
    }
    println!("  integral {}", profile.volume.integrate());
    Ok(())
}
