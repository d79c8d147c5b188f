//! Complete simplicial fans, minimal cones, log discrepancies and star
//! subdivisions.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{determinant_int, solve_linear, LatticeVector, Matrix, Rational};
use crate::polytope::ToricDivisor;

/// A complete simplicial fan in `N_R`, given by primitive ray generators and
/// maximal cones as sorted index sets of size `dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Vec<usize>>,
}

/// A toric divisorial valuation: the primitive vector `u_nu`, the cone of
/// the fan containing it in its relative interior and its coordinates there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationData {
    pub u_nu: LatticeVector,
    /// Ray indices spanning the minimal cone.
    pub minimal_cone: Vec<usize>,
    /// Strictly positive coefficients with `u_nu = sum c_i u_i`.
    pub coefficients: Vec<Rational>,
    /// Log discrepancy `A = sum c_i`.
    pub log_discrepancy: Rational,
    pub is_ray: bool,
}

impl Fan {
    /// Builds and validates a fan.
    pub fn new(dim: usize, rays: Vec<LatticeVector>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        let max_cones = max_cones
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        Fan {
            dim,
            rays,
            max_cones,
        }
        .validate()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVector {
        &self.rays[i]
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn ray_index(&self, u: &LatticeVector) -> Option<usize> {
        self.rays.iter().position(|r| r == u)
    }

    /// Checks primitivity, simpliciality, completeness and that no two
    /// maximal cones overlap.
    pub fn validate(self) -> Result<Fan> {
        let n = self.dim;
        for (i, r) in self.rays.iter().enumerate() {
            if r.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: r.dim(),
                });
            }
            if !r.is_primitive() {
                return Err(Error::NonPrimitiveRay(i));
            }
            if self.rays[..i].contains(r) {
                return Err(Error::DuplicateRay(i));
            }
        }
        for (ci, cone) in self.max_cones.iter().enumerate() {
            if let Some(&index) = cone.iter().find(|&&j| j >= self.rays.len()) {
                return Err(Error::InvalidConeIndex { cone: ci, index });
            }
            if cone.len() != n || cone.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::DegenerateCone(ci));
            }
            if self.generator_det(cone, None)?.is_zero() {
                return Err(Error::DegenerateCone(ci));
            }
        }
        if self.max_cones.is_empty() {
            return Err(Error::Incomplete {
                cone: 0,
                facet: Vec::new(),
            });
        }
        self.check_facet_pairing()?;
        self.check_overlaps()?;
        Ok(self)
    }

    /// Determinant of the cone's generators, optionally replacing position
    /// `swap.0` by the vector `swap.1`.
    fn generator_det(&self, cone: &[usize], swap: Option<(usize, &LatticeVector)>) -> Result<Rational> {
        let rows: Vec<Vec<i64>> = cone
            .iter()
            .enumerate()
            .map(|(pos, &j)| match swap {
                Some((p, v)) if p == pos => v.0.clone(),
                _ => self.rays[j].0.clone(),
            })
            .collect();
        determinant_int(&rows)
    }

    fn check_facet_pairing(&self) -> Result<()> {
        for (ci, cone) in self.max_cones.iter().enumerate() {
            for drop in 0..cone.len() {
                let facet: Vec<usize> = cone
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != drop)
                    .map(|(_, &j)| j)
                    .collect();
                let partners: Vec<usize> = self
                    .max_cones
                    .iter()
                    .enumerate()
                    .filter(|&(cj, other)| cj != ci && facet.iter().all(|f| other.contains(f)))
                    .map(|(cj, _)| cj)
                    .collect();
                let incomplete = || Error::Incomplete {
                    cone: ci,
                    facet: facet.clone(),
                };
                match partners.as_slice() {
                    [cj] => {
                        let other = &self.max_cones[*cj];
                        let apex = other.iter().find(|j| !facet.contains(j)).unwrap();
                        // same hyperplane functional evaluated at both apexes
                        let own = self.generator_det(cone, None)?;
                        let theirs =
                            self.generator_det(cone, Some((drop, &self.rays[*apex])))?;
                        if own.is_positive() == theirs.is_positive() || theirs.is_zero() {
                            return Err(Error::OverlappingCones(ci, *cj));
                        }
                    }
                    [] => return Err(incomplete()),
                    [a, ..] => return Err(Error::OverlappingCones(ci, *a)),
                }
            }
        }
        Ok(())
    }

    fn check_overlaps(&self) -> Result<()> {
        for (ci, cone) in self.max_cones.iter().enumerate() {
            let mut interior = vec![0i64; self.dim];
            for &j in cone {
                for (x, r) in interior.iter_mut().zip(&self.rays[j].0) {
                    *x += r;
                }
            }
            let interior = LatticeVector(interior);
            for (cj, _) in self.max_cones.iter().enumerate() {
                if cj == ci {
                    continue;
                }
                let coords = self.cone_coordinates(cj, &interior)?;
                if coords.iter().all(|c| !c.is_negative()) {
                    return Err(Error::OverlappingCones(ci.min(cj), ci.max(cj)));
                }
            }
        }
        Ok(())
    }

    /// Coordinates of `v` in the generators of maximal cone `cone`.
    pub fn cone_coordinates(&self, cone: usize, v: &LatticeVector) -> Result<Vec<Rational>> {
        let gens = &self.max_cones[cone];
        // columns are generators: A[i][k] = u_k[i]
        let a: Matrix = (0..self.dim)
            .map(|i| gens.iter().map(|&k| crate::exact::rat(self.rays[k].0[i])).collect())
            .collect();
        solve_linear(&a, &v.to_rational())
    }

    /// Finds the cone with `nu` in its relative interior and the barycentric
    /// coefficients of `nu` there.
    pub fn minimal_cone_containing(&self, nu: &LatticeVector) -> Result<ValuationData> {
        if nu.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: nu.dim(),
            });
        }
        if nu.is_zero() {
            return Err(Error::ZeroVector);
        }
        if !nu.is_primitive() {
            return Err(Error::NotPrimitive(nu.0.clone()));
        }
        for (ci, cone) in self.max_cones.iter().enumerate() {
            let coords = self.cone_coordinates(ci, nu)?;
            if coords.iter().any(|c| c.is_negative()) {
                continue;
            }
            let (minimal_cone, coefficients): (Vec<usize>, Vec<Rational>) = cone
                .iter()
                .zip(coords)
                .filter(|(_, c)| c.is_positive())
                .map(|(&j, c)| (j, c))
                .unzip();
            let log_discrepancy = coefficients.iter().sum::<Rational>();
            let is_ray = minimal_cone.len() == 1 && coefficients[0].is_one();
            return Ok(ValuationData {
                u_nu: nu.clone(),
                minimal_cone,
                coefficients,
                log_discrepancy,
                is_ray,
            });
        }
        Err(Error::OutsideSupport)
    }

    /// Log discrepancy of the toric valuation along primitive `nu`.
    pub fn log_discrepancy(&self, nu: &LatticeVector) -> Result<Rational> {
        Ok(self.minimal_cone_containing(nu)?.log_discrepancy)
    }

    /// Star subdivision at `nu`: adds `nu` as a ray and replaces each maximal
    /// cone containing the minimal cone of `nu` by the cones spanned by `nu`
    /// and the facets not containing that minimal cone.
    pub fn star_subdivision(&self, nu: &LatticeVector) -> Result<Fan> {
        let val = self.minimal_cone_containing(nu)?;
        if val.is_ray {
            return Err(Error::AlreadyRay);
        }
        let new_ray = self.rays.len();
        let mut rays = self.rays.clone();
        rays.push(nu.clone());
        let mut cones = Vec::new();
        for cone in &self.max_cones {
            if val.minimal_cone.iter().all(|j| cone.contains(j)) {
                for &i in &val.minimal_cone {
                    let mut c: Vec<usize> = cone.iter().copied().filter(|&j| j != i).collect();
                    c.push(new_ray);
                    c.sort_unstable();
                    cones.push(c);
                }
            } else {
                cones.push(cone.clone());
            }
        }
        Fan::new(self.dim, rays, cones)
    }

    /// `-K_X = sum_rho D_rho`.
    pub fn anticanonical_divisor(&self) -> ToricDivisor {
        ToricDivisor::new(vec![Rational::one(); self.rays.len()])
    }

    pub fn canonical_divisor(&self) -> ToricDivisor {
        ToricDivisor::new(vec![-Rational::one(); self.rays.len()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, ratio};

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
    fn validate_examples() {
        p2();
        let err = Fan::new(
            2,
            vec![lv(&[1, 0]), lv(&[0, 1]), lv(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::Incomplete { .. }));
        assert!(err.to_string().starts_with("incomplete"));
        let err = Fan::new(
            2,
            vec![lv(&[2, 0]), lv(&[0, 1]), lv(&[-1, -1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap_err();
        assert_eq!(err.to_string(), "non-primitive ray 0");
    }

    #[test]
    fn validate_rejects_degenerate_and_overlapping() {
        let err = Fan::new(
            2,
            vec![lv(&[1, 0]), lv(&[-1, 0]), lv(&[0, 1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap_err();
        assert_eq!(err, Error::DegenerateCone(0));
        // a fan wrapping twice around the origin
        let rays = vec![
            lv(&[1, 0]),
            lv(&[0, 1]),
            lv(&[-1, 0]),
            lv(&[0, -1]),
            lv(&[1, 1]),
            lv(&[-1, 1]),
            lv(&[-1, -1]),
            lv(&[1, -1]),
        ];
        let cones = vec![
            vec![0, 4],
            vec![4, 1],
            vec![1, 5],
            vec![5, 2],
            vec![2, 6],
            vec![6, 3],
            vec![3, 7],
            vec![7, 0],
        ];
        Fan::new(2, rays.clone(), cones).unwrap();
        let double = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0], vec![4, 5], vec![5, 6], vec![6, 7], vec![7, 4]];
        assert!(matches!(
            Fan::new(2, rays, double),
            Err(Error::OverlappingCones(..))
        ));
    }

    #[test]
    fn minimal_cone_examples() {
        let fan = p2();
        let v = fan.minimal_cone_containing(&lv(&[1, 1])).unwrap();
        assert_eq!(v.minimal_cone, vec![0, 1]);
        assert_eq!(v.coefficients, vec![rat(1), rat(1)]);
        assert_eq!(v.log_discrepancy, rat(2));
        assert!(!v.is_ray);

        let v = fan.minimal_cone_containing(&lv(&[1, 0])).unwrap();
        assert_eq!(v.minimal_cone, vec![0]);
        assert_eq!(v.log_discrepancy, rat(1));
        assert!(v.is_ray);

        // only cone{(-1,-1),(1,0)} gives a nonnegative solution: 2*(-1,-1) + 1*(1,0)
        let v = fan.minimal_cone_containing(&lv(&[-1, -2])).unwrap();
        assert_eq!(v.minimal_cone, vec![0, 2]);
        assert_eq!(v.coefficients, vec![rat(1), rat(2)]);
        assert_eq!(v.log_discrepancy, rat(3));

        assert_eq!(fan.minimal_cone_containing(&lv(&[0, 0])), Err(Error::ZeroVector));
        assert!(matches!(
            fan.minimal_cone_containing(&lv(&[2, 2])),
            Err(Error::NotPrimitive(_))
        ));
    }

    #[test]
    fn rational_coefficients_on_singular_cone() {
        // P(1,1,2): cone {(-1,-2),(1,0)} has determinant 2
        let fan = Fan::new(
            2,
            vec![lv(&[-1, -2]), lv(&[1, 0]), lv(&[0, 1])],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap();
        let v = fan.minimal_cone_containing(&lv(&[0, -1])).unwrap();
        assert_eq!(v.coefficients, vec![ratio(1, 2), ratio(1, 2)]);
        assert_eq!(v.log_discrepancy, rat(1));
        assert!(!v.is_ray);
    }

    #[test]
    fn star_subdivision_examples() {
        let blown = p2().star_subdivision(&lv(&[1, 1])).unwrap();
        assert_eq!(blown.rays().len(), 4);
        assert_eq!(blown.ray(3), &lv(&[1, 1]));
        let mut cones = blown.max_cones().to_vec();
        cones.sort();
        assert_eq!(cones, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
        assert_eq!(blown.minimal_cone_containing(&lv(&[1, 1])).unwrap().log_discrepancy, rat(1));

        let q = p1xp1().star_subdivision(&lv(&[1, 1])).unwrap();
        assert_eq!(q.rays().len(), 5);
        assert_eq!(q.max_cones().len(), 5);

        assert_eq!(p2().star_subdivision(&lv(&[0, 1])), Err(Error::AlreadyRay));
        assert_eq!(
            Error::AlreadyRay.to_string(),
            "already a ray; subdivision is identity"
        );
    }

    #[test]
    fn anticanonical_has_unit_coefficients() {
        assert_eq!(p2().anticanonical_divisor().coeffs, vec![rat(1); 3]);
        assert_eq!(p1xp1().anticanonical_divisor().coeffs, vec![rat(1); 4]);
        let blown = p2().star_subdivision(&lv(&[1, 1])).unwrap();
        assert_eq!(blown.anticanonical_divisor().coeffs, vec![rat(1); 4]);
    }
}
