//! Ready-to-run input documents for standard polarised toric varieties.
//!
//! Line bundles written as `xH - yE` or bidegrees are translated here into
//! per-ray coefficients `a_rho`, so that `P = {m : <m,u_rho> >= -a_rho}`.

use crate::cli::InputDocument;
use crate::exact::{parse_rational, Rational};
use num_traits::Signed;

/// Gallery names and parameter syntax.
pub const NAMES: &[&str] = &[
    "p2_anticanonical",
    "p2:d",
    "p1:d",
    "p1xp1:a,b",
    "blowup_p2:x,y",
    "hirzebruch:a[,p,q]",
    "p112_anticanonical",
    "p3_anticanonical",
];

/// Concrete instances exercised by the test suites.
pub const DEFAULT_INSTANCES: &[&str] = &[
    "p2_anticanonical",
    "p2:2",
    "p1:2",
    "p1:3",
    "p1xp1:1,1",
    "p1xp1:2,3",
    "blowup_p2:3,1",
    "blowup_p2:3,2",
    "hirzebruch:2",
    "hirzebruch:1,2,1",
    "p112_anticanonical",
    "p3_anticanonical",
];

fn doc(
    name: &str,
    dim: usize,
    rays: &[&[i64]],
    cones: &[&[usize]],
    divisor: Vec<Rational>,
    labels: &[&str],
) -> InputDocument {
    InputDocument {
        name: Some(name.to_string()),
        dim,
        rays: rays.iter().map(|r| r.to_vec()).collect(),
        max_cones: cones.iter().map(|c| c.to_vec()).collect(),
        divisor: divisor.iter().map(|c| c.to_string()).collect(),
        labels: Some(labels.iter().map(|s| s.to_string()).collect()),
    }
}

fn params(name: &str, text: &str, count: std::ops::RangeInclusive<usize>) -> Result<Vec<Rational>, String> {
    let values = text
        .split(',')
        .map(parse_rational)
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("{name}: {e}"))?;
    if !count.contains(&values.len()) {
        return Err(format!("{name}: expected {count:?} parameters, got {}", values.len()));
    }
    Ok(values)
}

fn positive(name: &str, values: &[Rational]) -> Result<(), String> {
    if values.iter().all(|v| v.is_positive()) {
        Ok(())
    } else {
        Err(format!("{name}: parameters must be positive"))
    }
}

fn unknown(name: &str) -> String {
    format!("unknown example {name:?}; valid names: {}", NAMES.join(", "))
}

/// Builds the document for `name` (e.g. `"blowup_p2:3,1"`).
pub fn example(name: &str) -> Result<InputDocument, String> {
    let (base, args) = match name.split_once(':') {
        Some((b, a)) => (b, Some(a)),
        None => (name, None),
    };
    let int = |v: i64| Rational::from_integer(v.into());
    match (base, args) {
        ("p2_anticanonical", None) => Ok(doc(
            name,
            2,
            &[&[1, 0], &[0, 1], &[-1, -1]],
            &[&[0, 1], &[1, 2], &[2, 0]],
            vec![int(1); 3],
            &["D0", "D1", "D2"],
        )),
        ("p2", Some(a)) => {
            let p = params(name, a, 1..=1)?;
            positive(name, &p)?;
            Ok(doc(
                name,
                2,
                &[&[1, 0], &[0, 1], &[-1, -1]],
                &[&[0, 1], &[1, 2], &[2, 0]],
                vec![int(0), int(0), p[0].clone()],
                &["D0", "D1", "D2"],
            ))
        }
        ("p1", Some(a)) => {
            let p = params(name, a, 1..=1)?;
            positive(name, &p)?;
            Ok(doc(
                name,
                1,
                &[&[1], &[-1]],
                &[&[0], &[1]],
                vec![int(0), p[0].clone()],
                &["0", "inf"],
            ))
        }
        ("p1xp1", Some(a)) => {
            let p = params(name, a, 2..=2)?;
            positive(name, &p)?;
            // [0,a] x [0,b]
            Ok(doc(
                name,
                2,
                &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
                &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
                vec![int(0), int(0), p[0].clone(), p[1].clone()],
                &["F1", "F2", "F1'", "F2'"],
            ))
        }
        ("blowup_p2", Some(a)) => {
            let p = params(name, a, 2..=2)?;
            let (x, y) = (&p[0], &p[1]);
            if !(y.is_positive() && y < x) {
                return Err(format!("{name}: xH - yE is ample only for 0 < y < x"));
            }
            // xH - yE: P = {m1 >= 0, m2 >= 0, m1 + m2 <= x, m1 + m2 >= y}
            Ok(doc(
                name,
                2,
                &[&[1, 0], &[0, 1], &[-1, -1], &[1, 1]],
                &[&[0, 3], &[1, 3], &[1, 2], &[0, 2]],
                vec![int(0), int(0), x.clone(), -y.clone()],
                &["D0", "D1", "H", "E"],
            ))
        }
        ("hirzebruch", Some(a)) => {
            let p = params(name, a, 1..=3)?;
            let twist = &p[0];
            if !twist.is_integer() || twist.is_negative() {
                return Err(format!("{name}: twist must be a nonnegative integer"));
            }
            let t: i64 = twist.to_integer().try_into().map_err(|_| unknown(name))?;
            let (pp, qq) = match p.len() {
                1 => (int(1), int(1)),
                3 => (p[1].clone(), p[2].clone()),
                _ => return Err(format!("{name}: give a or a,p,q")),
            };
            positive(name, &[pp.clone(), qq.clone()])?;
            // P = {m1 >= 0, m2 >= 0, m1 - a m2 <= p, m2 <= q}
            Ok(doc(
                name,
                2,
                &[&[1, 0], &[0, 1], &[-1, t], &[0, -1]],
                &[&[0, 1], &[1, 2], &[2, 3], &[3, 0]],
                vec![int(0), int(0), pp, qq],
                &["F", "S", "F'", "S'"],
            ))
        }
        ("p112_anticanonical", None) => Ok(doc(
            name,
            2,
            &[&[-1, -2], &[1, 0], &[0, 1]],
            &[&[0, 1], &[1, 2], &[2, 0]],
            vec![int(1); 3],
            &["D0", "D1", "D2"],
        )),
        ("p3_anticanonical", None) => Ok(doc(
            name,
            3,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
            &[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]],
            vec![int(1); 4],
            &["D0", "D1", "D2", "D3"],
        )),
        _ => Err(unknown(name)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_examples() {
        let d = example("p2_anticanonical").unwrap();
        assert_eq!(d.rays, vec![vec![1, 0], vec![0, 1], vec![-1, -1]]);
        assert_eq!(d.divisor, vec!["1", "1", "1"]);
        let d = example("blowup_p2:3,1").unwrap();
        assert_eq!(d.rays.len(), 4);
        assert_eq!(d.divisor, vec!["0", "0", "3", "-1"]);
        assert!(NAMES.len() >= 4);
        let err = example("nope").unwrap_err();
        assert!(err.contains("p2_anticanonical"));
        assert!(example("blowup_p2:3,3").is_err());
        assert!(example("p1xp1:1").is_err());
    }
}
