//! Independent check of `DF = β / L^n` by counting lattice points and
//! filtration weights of `kP`.
//!
//! For a toric valuation `ν` the filtration of `H^0(X, kL)` is spanned by the
//! characters `m ∈ kP ∩ M` graded by `ℓ_k(m) = <m,u_ν> - k min_P <.,u_ν>`.
//! Counting these exactly for `k = 1..k_max` and interpolating gives the
//! Hilbert and weight polynomials, whose leading coefficients determine the
//! Donaldson–Futaki invariant of the associated test configuration.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, LatticeVector, Polynomial, Rational};
use crate::invariants::{factorial, Polarised};
use crate::polytope::LatticePolytope;

/// Counts at one dilation factor `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSample {
    pub k: u64,
    /// `#(kP ∩ M) = dim H^0(X, kL)`.
    pub h: Rational,
    /// Total weight `sum_m ℓ_k(m)`.
    pub w: Rational,
    /// Filtration sum `sum_{j >= 0} dim F^j V_k = sum_m (floor(ℓ_k(m)) + 1)`.
    pub f: Rational,
    pub max_weight: Rational,
    pub min_weight: Rational,
}

/// Leading coefficients of `h(k) = a0 k^n + a1 k^{n-1} + …`,
/// `w(k) = b0 k^{n+1} + b1 k^n + …` and `f(k) = f_top k^{n+1} + f_sub k^n + …`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittedCoefficients {
    pub a0: Rational,
    pub a1: Rational,
    pub b0: Rational,
    pub b1: Rational,
    pub f_top: Rational,
    pub f_sub: Rational,
    pub hilbert: Polynomial,
    pub weight: Polynomial,
    pub filtration: Polynomial,
    pub fit_verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfReport {
    pub samples: Vec<CountSample>,
    pub coefficients: FittedCoefficients,
    /// `(b0 a1 - b1 a0) / a0`, unnormalised.
    pub df_raw: Rational,
    /// `2 (b0 a1 - b1 a0) / a0^2`.
    pub df: Rational,
    /// `n!/L^n (-2 g_n + n mu g_{n+1})` with `g = f - h` the filtration sum
    /// over `j >= 1`, `mu` taken from the polytope's boundary measure.
    pub df_from_filtration: Rational,
    pub routes_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DfVerification {
    pub nu: LatticeVector,
    pub df: Rational,
    /// `L^n * DF`.
    pub df_times_volume: Rational,
    /// `n! * beta_hat` from the integral route.
    pub beta: Rational,
    /// `max ℓ_k = k τ` and `min ℓ_k = 0` for every sampled `k`.
    pub weight_extremes_ok: bool,
    pub df_routes_agree: bool,
    pub pass: bool,
}

/// Lattice points of `kP`, by bounding-box enumeration with H-representation
/// membership tests.
pub fn lattice_points(p: &LatticePolytope, k: u64) -> Result<Vec<Vec<i64>>> {
    if p.is_empty() {
        return Err(Error::EmptyPolytope);
    }
    if !p.is_lattice() {
        return Err(Error::NotLatticePolytope);
    }
    let n = p.dim();
    let k_int = k as i64;
    let bound = |i: usize, pick: fn(i64, i64) -> i64| {
        p.vertices()
            .iter()
            .map(|v| v[i].to_integer().to_i64().expect("coordinate fits i64") * k_int)
            .reduce(pick)
            .unwrap()
    };
    let lo: Vec<i64> = (0..n).map(|i| bound(i, i64::min)).collect();
    let hi: Vec<i64> = (0..n).map(|i| bound(i, i64::max)).collect();
    let k_rat = rat(k_int);
    let scaled: Vec<(&LatticeVector, Rational)> = p
        .constraints()
        .iter()
        .map(|h| (&h.normal, &h.offset * &k_rat))
        .collect();
    let mut out = Vec::new();
    let mut cur = lo.clone();
    loop {
        if scaled
            .iter()
            .all(|(u, off)| rat(u.pair_int(&cur)) >= *off)
        {
            out.push(cur.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if cur[i] < hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = lo[i];
        }
    }
}

/// `#(kP ∩ M)`.
pub fn count_points(p: &LatticePolytope, k: u64) -> Result<u64> {
    Ok(lattice_points(p, k)?.len() as u64)
}

/// Weight and filtration sums at dilation `k` for the valuation along `nu`.
pub fn filtration_sums(p: &LatticePolytope, nu: &LatticeVector, k: u64) -> Result<CountSample> {
    if !nu.is_primitive() {
        return Err(Error::NotPrimitive(nu.0.clone()));
    }
    let base_min = lattice_points(p, 1)?
        .iter()
        .map(|m| nu.pair_int(m))
        .min()
        .ok_or(Error::EmptyPolytope)?;
    let shift = k as i64 * base_min;
    let points = lattice_points(p, k)?;
    let weights: Vec<i64> = points.iter().map(|m| nu.pair_int(m) - shift).collect();
    let w: i64 = weights.iter().sum();
    let f: i64 = weights.iter().map(|l| l + 1).sum();
    Ok(CountSample {
        k,
        h: rat(points.len() as i64),
        w: rat(w),
        f: rat(f),
        max_weight: rat(*weights.iter().max().unwrap()),
        min_weight: rat(*weights.iter().min().unwrap()),
    })
}

fn fit_one(
    samples: &[CountSample],
    degree: usize,
    value: impl Fn(&CountSample) -> &Rational,
) -> Result<Polynomial> {
    let pts: Vec<(Rational, Rational)> = samples[..=degree]
        .iter()
        .map(|s| (rat(s.k as i64), value(s).clone()))
        .collect();
    let poly = Polynomial::interpolate(&pts);
    for s in &samples[degree + 1..] {
        if poly.eval(&rat(s.k as i64)) != *value(s) {
            return Err(Error::NotPolynomial(s.k));
        }
    }
    Ok(poly)
}

/// Exact interpolation of `h` (degree `n`) and `w`, `f` (degree `n+1`) with
/// at least two held-out samples checked.
pub fn fit_coefficients(samples: &[CountSample], n: usize) -> Result<FittedCoefficients> {
    let needed = n + 4;
    if samples.len() < needed {
        return Err(Error::TooFewSamples {
            needed,
            found: samples.len(),
        });
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by_key(|s| s.k);
    let hilbert = fit_one(&sorted, n, |s| &s.h)?;
    let weight = fit_one(&sorted, n + 1, |s| &s.w)?;
    let filtration = fit_one(&sorted, n + 1, |s| &s.f)?;
    let a1 = if n == 0 { Rational::zero() } else { hilbert.coeff(n - 1) };
    Ok(FittedCoefficients {
        a0: hilbert.coeff(n),
        a1,
        b0: weight.coeff(n + 1),
        b1: weight.coeff(n),
        f_top: filtration.coeff(n + 1),
        f_sub: filtration.coeff(n),
        hilbert,
        weight,
        filtration,
        fit_verified: true,
    })
}

/// Normalised Donaldson–Futaki invariant `2 (b0 a1 - b1 a0) / a0^2`.
pub fn df_from_coefficients(a0: &Rational, a1: &Rational, b0: &Rational, b1: &Rational) -> Rational {
    rat(2) * (b0 * a1 - b1 * a0) / (a0 * a0)
}

/// Samples `k = 1..=k_max`, fits, and evaluates DF two ways.
pub fn df_from_counts(pol: &Polarised, nu: &LatticeVector, k_max: u64) -> Result<DfReport> {
    let n = pol.dim();
    let samples = (1..=k_max)
        .map(|k| filtration_sums(pol.polytope(), nu, k))
        .collect::<Result<Vec<_>>>()?;
    let c = fit_coefficients(&samples, n)?;
    let df_raw = (&c.b0 * &c.a1 - &c.b1 * &c.a0) / &c.a0;
    let df = df_from_coefficients(&c.a0, &c.a1, &c.b0, &c.b1);
    let g_top = c.f_top.clone();
    let g_sub = &c.f_sub - &c.a0;
    let n_rat = rat(n as i64);
    let df_from_filtration = factorial(n) / pol.volume()
        * (rat(-2) * g_sub + n_rat * pol.slope() * g_top);
    let routes_agree = df == df_from_filtration;
    Ok(DfReport {
        samples,
        coefficients: c,
        df_raw,
        df,
        df_from_filtration,
        routes_agree,
    })
}

/// Checks `L^n DF = β(ν)` against the integral route for β.
pub fn verify_df_equals_beta(pol: &Polarised, nu: &LatticeVector, k_max: u64) -> Result<DfVerification> {
    let report = df_from_counts(pol, nu, k_max)?;
    let tau = pol.polytope().width(nu)?;
    let weight_extremes_ok = report
        .samples
        .iter()
        .all(|s| s.max_weight == rat(s.k as i64) * &tau && s.min_weight.is_zero());
    let df_times_volume = &report.df * pol.volume();
    let beta = factorial(pol.dim()) * pol.beta_integral(nu)?;
    let pass = df_times_volume == beta && weight_extremes_ok && report.routes_agree;
    Ok(DfVerification {
        nu: nu.clone(),
        df: report.df,
        df_times_volume,
        beta,
        weight_extremes_ok,
        df_routes_agree: report.routes_agree,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::fan::Fan;
    use crate::polytope::{polytope_of, ToricDivisor};

    fn lv(c: &[i64]) -> LatticeVector {
        LatticeVector::new(c)
    }

    fn p2() -> Fan {
        Fan::new(
            2,
            vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap()
    }

    fn p1xp1() -> Fan {
        Fan::new(
            2,
            vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, 0]), lv(&[0, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
    }

    #[test]
    fn count_examples() {
        let simplex = polytope_of(&p2(), &ToricDivisor::from_ints(&[0, 0, 1])).unwrap();
        for k in 1..6u64 {
            assert_eq!(count_points(&simplex, k).unwrap(), (k + 1) * (k + 2) / 2);
        }
        assert_eq!(count_points(&simplex, 3).unwrap(), 10);
        let tri = polytope_of(&p2(), &ToricDivisor::from_ints(&[1, 1, 1])).unwrap();
        assert_eq!(count_points(&tri, 1).unwrap(), 10);
        let square = polytope_of(&p1xp1(), &ToricDivisor::from_ints(&[0, 0, 1, 1])).unwrap();
        assert_eq!(count_points(&square, 2).unwrap(), 9);
        let rational = polytope_of(&p2(), &ToricDivisor::new(vec![rat(0), rat(0), ratio(1, 2)])).unwrap();
        assert_eq!(count_points(&rational, 1), Err(Error::NotLatticePolytope));
    }

    #[test]
    fn filtration_examples() {
        let tri = polytope_of(&p2(), &ToricDivisor::from_ints(&[1, 1, 1])).unwrap();
        let s = filtration_sums(&tri, &lv(&[1, 1]), 1).unwrap();
        // levels of m1+m2+2 over the 10 points: 0 (1 pt), 1 (2), 2 (3), 3 (4)
        assert_eq!(s.w, rat(2 + 6 + 12));
        assert_eq!(s.f, &s.w + &s.h);
        let square = polytope_of(&p1xp1(), &ToricDivisor::from_ints(&[0, 0, 1, 1])).unwrap();
        let s = filtration_sums(&square, &lv(&[1, 0]), 1).unwrap();
        assert_eq!((s.w.clone(), s.f.clone()), (rat(2), rat(6)));
    }

    #[test]
    fn fit_examples() {
        let simplex = polytope_of(&p2(), &ToricDivisor::from_ints(&[0, 0, 1])).unwrap();
        let samples: Vec<_> = (1..=7)
            .map(|k| filtration_sums(&simplex, &lv(&[1, 0]), k).unwrap())
            .collect();
        let c = fit_coefficients(&samples, 2).unwrap();
        assert_eq!((c.a0.clone(), c.a1.clone()), (ratio(1, 2), ratio(3, 2)));
        assert_eq!(c.f_top, c.b0);
        assert_eq!(c.f_sub, &c.b1 + &c.a0);

        let square = polytope_of(&p1xp1(), &ToricDivisor::from_ints(&[0, 0, 1, 1])).unwrap();
        let samples: Vec<_> = (1..=7)
            .map(|k| filtration_sums(&square, &lv(&[1, 0]), k).unwrap())
            .collect();
        let c = fit_coefficients(&samples, 2).unwrap();
        // sum of m1 over the (k+1)^2 grid is k (k+1)^2 / 2
        assert_eq!(c.b0, ratio(1, 2));
        assert_eq!(c.weight, Polynomial::new(vec![rat(0), ratio(1, 2), rat(1), ratio(1, 2)]));

        assert!(matches!(
            fit_coefficients(&samples[..5], 2),
            Err(Error::TooFewSamples { .. })
        ));
        let mut broken = samples.clone();
        broken[6].h += rat(1);
        assert_eq!(fit_coefficients(&broken, 2), Err(Error::NotPolynomial(7)));
    }

    #[test]
    fn df_examples() {
        let fan = p2();
        let l = fan.anticanonical_divisor();
        let p = Polarised::new(fan, l).unwrap();
        assert_eq!(df_from_counts(&p, &lv(&[1, 1]), 8).unwrap().df, rat(0));

        let fan = p2().star_subdivision(&lv(&[1, 1])).unwrap();
        let l = fan.anticanonical_divisor();
        let b = Polarised::new(fan, l).unwrap();
        let r = df_from_counts(&b, &lv(&[1, 1]), 8).unwrap();
        assert_eq!(r.df, ratio(-1, 6));
        assert_eq!(r.df_raw, ratio(-1, 3));
        assert!(r.routes_agree);

        let line = Polarised::new(
            Fan::new(1, vec![lv(&[1]), lv(&[-1])], vec![vec![0], vec![1]]).unwrap(),
            ToricDivisor::from_ints(&[1, 1]),
        )
        .unwrap();
        assert_eq!(df_from_counts(&line, &lv(&[1]), 8).unwrap().df, rat(0));
    }

    #[test]
    fn verification_examples() {
        let fan = p2().star_subdivision(&lv(&[1, 1])).unwrap();
        let l = fan.anticanonical_divisor();
        let b = Polarised::new(fan, l).unwrap();
        let v = verify_df_equals_beta(&b, &lv(&[1, 1]), 8).unwrap();
        assert!(v.pass);
        assert_eq!(v.beta, ratio(-4, 3));
        assert_eq!(v.df_times_volume, ratio(-4, 3));

        let fan = p2();
        let l = fan.anticanonical_divisor();
        let p = Polarised::new(fan, l).unwrap();
        let v = verify_df_equals_beta(&p, &lv(&[1, 1]), 8).unwrap();
        assert!(v.pass);
        assert_eq!(v.beta, rat(0));

        let q = Polarised::new(p1xp1(), ToricDivisor::from_ints(&[0, 0, 1, 1])).unwrap();
        assert!(verify_df_equals_beta(&q, &lv(&[1, 1]), 8).unwrap().pass);
    }
}
