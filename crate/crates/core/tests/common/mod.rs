#![allow(dead_code)]

use torstab::cli::validate_document;
use torstab::gallery;
use torstab::Polarised;

pub fn polarised(name: &str) -> Polarised {
    let doc = gallery::example(name).unwrap_or_else(|e| panic!("{name}: {e}"));
    let (fan, divisor) = validate_document(&doc).unwrap();
    Polarised::new(fan, divisor).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn gallery_polarised() -> Vec<(String, Polarised)> {
    gallery::DEFAULT_INSTANCES
        .iter()
        .map(|n| (n.to_string(), polarised(n)))
        .collect()
}

/// Gallery instances of dimension at most two, for the denser sweeps.
pub fn planar_gallery() -> Vec<(String, Polarised)> {
    gallery_polarised()
        .into_iter()
        .filter(|(_, p)| p.dim() <= 2)
        .collect()
}
