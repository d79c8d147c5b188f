//! Stability invariants of a polarised toric variety and of its toric
//! divisorial valuations.
//!
//! All β values are reported in two normalisations: `beta_hat` is the
//! polytope-level quantity (volumes measured by `Vol_M`) and
//! `beta = n! * beta_hat` matches the intersection-theoretic definition.

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::exact::{primitivize, rat, LatticeVector, Rational};
use crate::fan::{Fan, ValuationData};
use crate::polytope::{
    effective_threshold, polytope_of, BoundaryMeasure, LatticePolytope, Threshold, ToricDivisor,
};

pub const TORIC_DELTA_CAVEAT: &str = "toric δ: infimum over toric valuations only";

/// Default search radius for ratio optimisation over primitive vectors.
pub fn default_radius(dim: usize) -> i64 {
    match dim {
        0..=2 => 10,
        3 => 5,
        _ => 3,
    }
}

pub(crate) fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * rat(k))
}

/// Default radius for the brute-force δ enumeration, whose slice integrals
/// grow quickly with dimension.
pub fn default_delta_radius(dim: usize) -> i64 {
    match dim {
        0..=2 => 10,
        3 => 3,
        _ => 1,
    }
}

/// Primitive vectors of `Z^n` with `|v|_inf <= radius`, in lexicographic order.
pub fn primitive_vectors(n: usize, radius: i64) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    let mut cur = vec![-radius; n];
    loop {
        let v = LatticeVector(cur.clone());
        if v.is_primitive() {
            out.push(v);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < radius {
                cur[i] += 1;
                break;
            }
            cur[i] = -radius;
        }
    }
}

/// τ, S and j of a valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Norms {
    pub tau: Rational,
    pub s: Rational,
    pub j: Rational,
}

/// Best ratio `beta_hat / j_hat` found over a box of primitive vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DestabilizerSearch {
    pub radius: i64,
    pub best: Option<Candidate>,
    pub any_negative: bool,
    /// `any_negative` agrees with the barycentres being different.
    pub consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub nu: LatticeVector,
    pub beta_hat: Rational,
    pub ratio: Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Satisfied,
    Boundary,
    NotSatisfied,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Satisfied => "SATISFIED",
            Verdict::Boundary => "BOUNDARY",
            Verdict::NotSatisfied => "NOT_SATISFIED",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub mu: Rational,
    pub delta_toric: Rational,
    pub gamma: Rational,
    /// `mu + gamma`, the coefficient required of `L` in `c L + K_X`.
    pub target: Rational,
    pub t_min: Threshold,
    pub verdict: Verdict,
    pub caveats: Vec<String>,
}

/// Per-valuation summary with both β routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub nu: LatticeVector,
    pub mu: Rational,
    pub vol: Rational,
    pub lattice_volume: Rational,
    pub tau: Rational,
    pub s: Rational,
    pub j: Rational,
    pub beta: Rational,
    pub beta_hat: Rational,
    pub beta_routes_agree: bool,
    pub futaki_pairing: Rational,
    pub log_discrepancy: Rational,
    pub delta_toric: Rational,
    pub caveats: Vec<String>,
}

/// An ample toric divisor on a validated fan, with its moment polytope and
/// measures computed once.
#[derive(Clone, Debug)]
pub struct Polarised {
    fan: Fan,
    divisor: ToricDivisor,
    polytope: LatticePolytope,
    lattice_volume: Rational,
    barycentre: Vec<Rational>,
    boundary: BoundaryMeasure,
}

impl Polarised {
    pub fn new(fan: Fan, divisor: ToricDivisor) -> Result<Polarised> {
        let polytope = polytope_of(&fan, &divisor)?;
        if polytope.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        if !polytope.is_ample() {
            return Err(Error::NotAmple);
        }
        let (lattice_volume, barycentre) = polytope.measure()?;
        let boundary = polytope.boundary_measure()?;
        Ok(Polarised {
            fan,
            divisor,
            polytope,
            lattice_volume,
            barycentre,
            boundary,
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn divisor(&self) -> &ToricDivisor {
        &self.divisor
    }

    pub fn polytope(&self) -> &LatticePolytope {
        &self.polytope
    }

    pub fn dim(&self) -> usize {
        self.fan.dim()
    }

    /// `(X, kL)`.
    pub fn scaled(&self, k: &Rational) -> Result<Polarised> {
        Polarised::new(self.fan.clone(), self.divisor.scale(k))
    }

    /// `Vol_M(P)`.
    pub fn lattice_volume(&self) -> &Rational {
        &self.lattice_volume
    }

    /// `L^n = n! Vol_M(P)`.
    pub fn volume(&self) -> Rational {
        factorial(self.dim()) * &self.lattice_volume
    }

    pub fn barycentre(&self) -> &[Rational] {
        &self.barycentre
    }

    pub fn boundary(&self) -> &BoundaryMeasure {
        &self.boundary
    }

    pub fn boundary_barycentre(&self) -> &[Rational] {
        &self.boundary.barycentre
    }

    /// `mu = -K_X . L^{n-1} / L^n = Vol(∂P) / (n Vol_M(P))`.
    pub fn slope(&self) -> Rational {
        &self.boundary.total / (rat(self.dim() as i64) * &self.lattice_volume)
    }

    fn valuation(&self, nu: &LatticeVector) -> Result<ValuationData> {
        self.fan.minimal_cone_containing(nu)
    }

    pub fn log_discrepancy(&self, nu: &LatticeVector) -> Result<Rational> {
        Ok(self.valuation(nu)?.log_discrepancy)
    }

    /// τ (width), S (mean of `ℓ_ν` from the volume profile) and
    /// `j = L^n (τ - S)`.
    pub fn tau_s_j(&self, nu: &LatticeVector) -> Result<Norms> {
        if nu.is_zero() {
            return Err(Error::ZeroVector);
        }
        let tau = self.polytope.width(nu)?;
        let s = self.polytope.piecewise_volume(nu)?.integrate() / &self.lattice_volume;
        let j = self.volume() * (&tau - &s);
        Ok(Norms { tau, s, j })
    }

    /// `beta_hat` from the defining integrals: the volume of the slices, the
    /// boundary of the slices along the original rays and the cut facet
    /// weighted by the log discrepancy of `ν`.
    pub fn beta_integral(&self, nu: &LatticeVector) -> Result<Rational> {
        let a = self.log_discrepancy(nu)?;
        let profile = self.polytope.slice_profile(nu)?;
        let vol = &self.lattice_volume;
        Ok(&a * vol + &self.boundary.total / vol * profile.volume.integrate()
            - profile.sigma_only.integrate()
            - &a * profile.slice_facet.integrate())
    }

    /// `beta_hat = Vol(∂P) <b_P - b_∂P, u_ν>`.
    pub fn beta_barycentre(&self, nu: &LatticeVector) -> Result<Rational> {
        self.valuation(nu)?;
        Ok(-&self.boundary.total * self.futaki(nu))
    }

    /// The barycentre expression with an additional `(A - 1) Vol_M(P)` term.
    /// Differs from [`Self::beta_integral`] whenever `A != 1`; reported for
    /// comparison only.
    pub fn beta_with_discrepancy_term(&self, nu: &LatticeVector) -> Result<Rational> {
        let a = self.log_discrepancy(nu)?;
        Ok((a - Rational::one()) * &self.lattice_volume + self.beta_barycentre(nu)?)
    }

    /// Futaki invariant of the linear function `<., u>`, up to a positive
    /// factor: `<b_∂P - b_P, u>`.
    pub fn futaki(&self, u: &LatticeVector) -> Rational {
        let diff: Vec<Rational> = self
            .boundary
            .barycentre
            .iter()
            .zip(&self.barycentre)
            .map(|(b, p)| b - p)
            .collect();
        u.pair(&diff)
    }

    pub fn futaki_vanishes(&self) -> bool {
        self.boundary.barycentre == self.barycentre
    }

    /// `S(ν) = <b_P, u_ν> - min_P <., u_ν>`.
    fn s_closed_form(&self, nu: &LatticeVector) -> Result<Rational> {
        let (lo, _) = self.polytope.linear_range(nu)?;
        Ok(nu.pair(&self.barycentre) - lo)
    }

    /// Minimum of `A/S` over the rays (where `A = 1`), with the first
    /// minimising ray.
    pub fn delta_toric(&self) -> Result<(Rational, usize)> {
        let mut best: Option<(Rational, usize)> = None;
        for (i, u) in self.fan.rays().iter().enumerate() {
            let value = Rational::one() / self.s_closed_form(u)?;
            if best.as_ref().is_none_or(|(b, _)| &value < b) {
                best = Some((value, i));
            }
        }
        best.ok_or(Error::EmptyPolytope)
    }

    /// Minimum of `A(ν)/S(ν)` over all primitive `|ν|_inf <= radius`, with
    /// `S` taken from the integral of the volume profile.
    pub fn delta_toric_brute(&self, radius: i64) -> Result<Rational> {
        let mut best: Option<Rational> = None;
        for nu in primitive_vectors(self.dim(), radius.max(1)) {
            let a = self.log_discrepancy(&nu)?;
            let s = self.tau_s_j(&nu)?.s;
            let value = a / s;
            if best.as_ref().is_none_or(|b| &value < b) {
                best = Some(value);
            }
        }
        best.ok_or(Error::EmptyPolytope)
    }

    /// Minimises `beta_hat / j_hat` over primitive `|ν|_inf <= radius`
    /// (`j_hat = j / n!`). Ties go to the lexicographically smallest ν.
    pub fn destabilizer_search(&self, radius: i64) -> Result<DestabilizerSearch> {
        let radius = radius.max(1);
        let mut best: Option<Candidate> = None;
        let mut any_negative = false;
        for nu in primitive_vectors(self.dim(), radius) {
            let beta_hat = self.beta_barycentre(&nu)?;
            let tau = self.polytope.width(&nu)?;
            let j_hat = &self.lattice_volume * (tau - self.s_closed_form(&nu)?);
            let ratio = &beta_hat / j_hat;
            if beta_hat.is_negative() {
                any_negative = true;
            }
            if best.as_ref().is_none_or(|b| ratio < b.ratio) {
                best = Some(Candidate {
                    nu,
                    beta_hat,
                    ratio,
                });
            }
        }
        let best = best.filter(|b| b.beta_hat.is_negative());
        Ok(DestabilizerSearch {
            radius,
            best,
            any_negative,
            consistent: any_negative != self.futaki_vanishes(),
        })
    }

    /// Checks whether `(mu + gamma) L + K_X` is effective with room to spare,
    /// where `delta - mu = (n+1) gamma` and δ is the toric δ.
    pub fn sufficient_criterion(&self) -> Result<CriterionReport> {
        let mu = self.slope();
        let (delta, _) = self.delta_toric()?;
        let gamma = (&delta - &mu) / rat(self.dim() as i64 + 1);
        let target = &mu + &gamma;
        let t_min = effective_threshold(&self.fan, &self.divisor, &self.fan.canonical_divisor())?;
        let verdict = match &t_min {
            Threshold::Unbounded => Verdict::Satisfied,
            Threshold::Infeasible => Verdict::NotSatisfied,
            Threshold::Finite(t) if t < &target => Verdict::Satisfied,
            Threshold::Finite(t) if t == &target => Verdict::Boundary,
            Threshold::Finite(_) => Verdict::NotSatisfied,
        };
        Ok(CriterionReport {
            mu,
            delta_toric: delta,
            gamma,
            target,
            t_min,
            verdict,
            caveats: vec![TORIC_DELTA_CAVEAT.to_string()],
        })
    }

    /// `mu / (n+1)` and whether the Futaki invariant vanishes (the
    /// semistability hypothesis under which it bounds α from below).
    pub fn alpha_lower_bound_constant(&self) -> (Rational, bool) {
        (
            self.slope() / rat(self.dim() as i64 + 1),
            self.futaki_vanishes(),
        )
    }

    /// Every invariant attached to `ν`; non-primitive input is primitivised
    /// with a caveat.
    pub fn report(&self, nu: &LatticeVector) -> Result<InvariantReport> {
        let (prim, g) = primitivize(nu)?;
        let mut caveats = Vec::new();
        if g != 1 {
            caveats.push(format!("nu {nu} is not primitive; using {prim}"));
        }
        let norms = self.tau_s_j(&prim)?;
        let beta_hat = self.beta_integral(&prim)?;
        let routes = self.beta_barycentre(&prim)?;
        let (delta_toric, _) = self.delta_toric()?;
        caveats.push(TORIC_DELTA_CAVEAT.to_string());
        Ok(InvariantReport {
            mu: self.slope(),
            vol: self.volume(),
            lattice_volume: self.lattice_volume.clone(),
            tau: norms.tau,
            s: norms.s,
            j: norms.j,
            beta: factorial(self.dim()) * &beta_hat,
            beta_routes_agree: beta_hat == routes,
            beta_hat,
            futaki_pairing: self.futaki(&prim),
            log_discrepancy: self.log_discrepancy(&prim)?,
            delta_toric,
            nu: prim,
            caveats,
        })
    }
}

/// Convenience for callers holding fan and divisor separately.
pub fn slope_mu(fan: &Fan, l: &ToricDivisor) -> Result<Rational> {
    Ok(Polarised::new(fan.clone(), l.clone())?.slope())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

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

    fn p1() -> Fan {
        Fan::new(1, vec![lv(&[1]), lv(&[-1])], vec![vec![0], vec![1]]).unwrap()
    }

    fn p1xp1() -> Fan {
        Fan::new(
            2,
            vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, 0]), lv(&[0, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
    }

    fn blowup(x: Rational, y: Rational) -> Polarised {
        let fan = p2().star_subdivision(&lv(&[1, 1])).unwrap();
        let l = ToricDivisor::new(vec![rat(0), rat(0), x, -y]);
        Polarised::new(fan, l).unwrap()
    }

    fn p2_anticanonical() -> Polarised {
        let fan = p2();
        let l = fan.anticanonical_divisor();
        Polarised::new(fan, l).unwrap()
    }

    #[test]
    fn slope_examples() {
        assert_eq!(p2_anticanonical().slope(), rat(1));
        let h = Polarised::new(p2(), ToricDivisor::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(h.slope(), rat(3));
        // mu = (3x - y)/(x^2 - y^2); anticanonical at y = 1
        assert_eq!(blowup(rat(3), rat(1)).slope(), rat(1));
        assert_eq!(blowup(rat(3), rat(2)).slope(), ratio(7, 5));
        for d in 1..5 {
            let p = Polarised::new(p1(), ToricDivisor::from_ints(&[0, d])).unwrap();
            assert_eq!(p.slope(), ratio(2, d));
        }
    }

    #[test]
    fn tau_s_j_examples() {
        let n = p2_anticanonical().tau_s_j(&lv(&[1, 1])).unwrap();
        assert_eq!(n, Norms { tau: rat(3), s: rat(2), j: rat(9) });
        assert_eq!(blowup(rat(3), rat(1)).tau_s_j(&lv(&[1, 1])).unwrap().tau, rat(2));
        for d in 1..5 {
            let p = Polarised::new(p1(), ToricDivisor::from_ints(&[0, d])).unwrap();
            let n = p.tau_s_j(&lv(&[1])).unwrap();
            assert_eq!(n.tau, rat(d));
            assert_eq!(n.s, ratio(d, 2));
            assert_eq!(n.j, ratio(d * d, 2));
        }
        assert_eq!(
            p2_anticanonical().tau_s_j(&lv(&[0, 0])),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn beta_examples() {
        let e = lv(&[1, 1]);
        let b = blowup(rat(3), rat(1));
        assert_eq!(b.beta_integral(&e).unwrap(), ratio(-2, 3));
        assert_eq!(b.beta_barycentre(&e).unwrap(), ratio(-2, 3));
        let b = blowup(rat(3), rat(2));
        assert_eq!(b.beta_integral(&e).unwrap(), ratio(-4, 15));
        let p = p2_anticanonical();
        assert_eq!(p.beta_integral(&e).unwrap(), rat(0));
        assert_eq!(p.beta_barycentre(&e).unwrap(), rat(0));
        // the extra discrepancy term would give (A - 1) Vol_M = 9/2 here
        assert_eq!(p.beta_with_discrepancy_term(&e).unwrap(), ratio(9, 2));
        let q = Polarised::new(p1xp1(), ToricDivisor::from_ints(&[1, 1, 2, 3])).unwrap();
        for nu in [lv(&[1, 0]), lv(&[2, -3]), lv(&[1, 1])] {
            assert_eq!(q.beta_barycentre(&nu).unwrap(), rat(0));
        }
    }

    #[test]
    fn futaki_examples() {
        let p = p2_anticanonical();
        assert_eq!(p.futaki(&lv(&[1, 0])), rat(0));
        assert!(p.futaki_vanishes());
        let b = blowup(rat(3), rat(1));
        assert_eq!(b.futaki(&lv(&[1, 1])), ratio(1, 12));
        assert_eq!(b.futaki(&lv(&[0, 0])), rat(0));
        for y in [ratio(1, 2), rat(1), rat(2), ratio(5, 2)] {
            assert!(!blowup(rat(3), y).futaki_vanishes());
        }
        let q = Polarised::new(p1xp1(), ToricDivisor::from_ints(&[2, 0, 1, 3])).unwrap();
        assert!(q.futaki_vanishes());
    }

    #[test]
    fn delta_examples() {
        let p = p2_anticanonical();
        let (d, _) = p.delta_toric().unwrap();
        assert_eq!(d, rat(1));
        assert_eq!(p.delta_toric_brute(5).unwrap(), rat(1));
        assert_eq!(p.delta_toric_brute(1).unwrap(), rat(1));
        let line = Polarised::new(p1(), ToricDivisor::from_ints(&[1, 1])).unwrap();
        assert_eq!(line.delta_toric().unwrap().0, rat(1));
        // S over the four rays of Bl_p P^2 with b_P = (13/12, 13/12):
        // 13/12, 13/12, 5/6, 7/6
        let b = blowup(rat(3), rat(1));
        assert_eq!(b.delta_toric().unwrap(), (ratio(6, 7), 3));
        let q = Polarised::new(p1xp1(), ToricDivisor::from_ints(&[1, 1, 1, 1])).unwrap();
        assert_eq!(q.delta_toric().unwrap().0, q.delta_toric_brute(3).unwrap());
    }

    #[test]
    fn destabilizer_examples() {
        let s = blowup(rat(3), rat(1)).destabilizer_search(2).unwrap();
        assert!(s.any_negative && s.consistent);
        assert!(s.best.unwrap().beta_hat.is_negative());
        let s = p2_anticanonical().destabilizer_search(3).unwrap();
        assert!(!s.any_negative && s.consistent);
        assert_eq!(s.best, None);
        let q = Polarised::new(p1xp1(), ToricDivisor::from_ints(&[1, 1, 1, 1])).unwrap();
        assert_eq!(q.destabilizer_search(2).unwrap().best, None);
    }

    #[test]
    fn criterion_examples() {
        let c = p2_anticanonical().sufficient_criterion().unwrap();
        assert_eq!(c.verdict, Verdict::Boundary);
        assert_eq!(c.t_min, Threshold::Finite(rat(1)));
        assert_eq!(c.target, rat(1));
        let c = blowup(rat(3), rat(1)).sufficient_criterion().unwrap();
        assert_eq!(c.gamma, ratio(-1, 21));
        assert_eq!(c.verdict, Verdict::NotSatisfied);
        let line = Polarised::new(p1(), ToricDivisor::from_ints(&[1, 1])).unwrap();
        let c = line.sufficient_criterion().unwrap();
        assert_eq!((c.mu.clone(), c.delta_toric.clone()), (rat(1), rat(1)));
        assert_eq!(c.verdict, Verdict::Boundary);
    }

    #[test]
    fn alpha_constant_examples() {
        assert_eq!(p2_anticanonical().alpha_lower_bound_constant(), (ratio(1, 3), true));
        assert_eq!(blowup(rat(3), rat(1)).alpha_lower_bound_constant(), (ratio(1, 3), false));
        for d in 1..4 {
            let p = Polarised::new(p1(), ToricDivisor::from_ints(&[0, d])).unwrap();
            assert_eq!(p.alpha_lower_bound_constant(), (ratio(1, d), true));
        }
    }

    #[test]
    fn primitive_box() {
        assert_eq!(primitive_vectors(2, 1).len(), 8);
        assert_eq!(primitive_vectors(1, 5), vec![lv(&[-1]), lv(&[1])]);
        let v = primitive_vectors(2, 2);
        assert!(v.iter().all(|x| x.is_primitive()));
        assert_eq!(v.len(), 16);
    }
}
