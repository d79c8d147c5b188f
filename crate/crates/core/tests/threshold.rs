mod common;

use num_traits::One;
use torstab::exact::{rat, ratio};
use torstab::polytope::{effective_threshold, polytope_of, Threshold};
use torstab::{Rational, ToricDivisor};

fn nonempty(pol: &torstab::Polarised, d: &ToricDivisor, t: &Rational) -> bool {
    let div = pol.divisor().scale(t).add(d);
    !polytope_of(pol.fan(), &div).unwrap().is_empty()
}

fn probes(n_rays: usize) -> Vec<ToricDivisor> {
    let patterns: [&[i64]; 4] = [&[-1], &[0], &[2, -3, 1], &[-2, 0, 1, -1]];
    patterns
        .iter()
        .map(|p| ToricDivisor::from_ints(&(0..n_rays).map(|i| p[i % p.len()]).collect::<Vec<_>>()))
        .collect()
}

/// Feasibility probes on both sides of the eliminated threshold, then a
/// bisection from a feasible and an infeasible end that must bracket it.
#[test]
fn threshold_matches_feasibility() {
    let eps = ratio(1, 1000);
    for (name, pol) in common::gallery_polarised() {
        for d in probes(pol.fan().rays().len()) {
            match effective_threshold(pol.fan(), pol.divisor(), &d).unwrap() {
                Threshold::Finite(t) => {
                    assert!(nonempty(&pol, &d, &t), "{name} {:?}: empty at t_min", d.coeffs);
                    assert!(!nonempty(&pol, &d, &(&t - &eps)), "{name}: nonempty below t_min");
                    let (mut lo, mut hi) = (&t - rat(64), &t + rat(64));
                    assert!(!nonempty(&pol, &d, &lo) && nonempty(&pol, &d, &hi));
                    for _ in 0..20 {
                        let mid = (&lo + &hi) / rat(2);
                        if nonempty(&pol, &d, &mid) {
                            hi = mid;
                        } else {
                            lo = mid;
                        }
                    }
                    assert!(lo < t && t <= hi, "{name}: bisection misses t_min");
                }
                other => panic!("{name}: ample L gives a finite threshold, got {other:?}"),
            }
        }
    }
}

#[test]
fn anticanonical_threshold_is_one() {
    for name in ["p2_anticanonical", "p112_anticanonical", "p3_anticanonical"] {
        let pol = common::polarised(name);
        let t = effective_threshold(pol.fan(), pol.divisor(), &pol.fan().canonical_divisor()).unwrap();
        assert_eq!(t, Threshold::Finite(Rational::one()), "{name}");
    }
}
