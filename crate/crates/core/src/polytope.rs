//! Moment polytopes of toric divisors: exact lattice volumes, boundary
//! measures, barycentres, slicing by a linear functional, and the
//! effectivity threshold of a pencil of divisors.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    determinant, rank, rat, solve_linear, unimodular_completion, LatticeVector, Matrix,
    Polynomial, Rational,
};
use crate::fan::Fan;

/// `D = sum_rho a_rho D_rho`, one coefficient per ray in ray order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricDivisor {
    pub coeffs: Vec<Rational>,
}

impl ToricDivisor {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        ToricDivisor { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        ToricDivisor::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn scale(&self, s: &Rational) -> ToricDivisor {
        ToricDivisor::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &ToricDivisor) -> ToricDivisor {
        ToricDivisor::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstraintOrigin {
    Ray(usize),
    Slice,
}

/// Half-space `<m, normal> >= offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: LatticeVector,
    pub offset: Rational,
    pub origin: ConstraintOrigin,
}

impl HalfSpace {
    pub fn slack(&self, m: &[Rational]) -> Rational {
        self.normal.pair(m) - &self.offset
    }
}

/// H-representation together with its exact vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    dim: usize,
    constraints: Vec<HalfSpace>,
    vertices: Vec<Vec<Rational>>,
    ample: bool,
}

/// Lattice `(n-1)`-volume and centroid of one facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetMeasure {
    pub ray: usize,
    pub volume: Rational,
    /// `None` for facets of dimension below `n - 1`.
    pub centroid: Option<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMeasure {
    pub total: Rational,
    pub barycentre: Vec<Rational>,
    pub facets: Vec<FacetMeasure>,
}

/// Continuous piecewise polynomial on `[x_0, x_m]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    pub breakpoints: Vec<Rational>,
    pub pieces: Vec<Polynomial>,
}

impl PiecewisePolynomial {
    pub fn domain_end(&self) -> &Rational {
        self.breakpoints.last().expect("nonempty breakpoints")
    }

    /// Value at `x`; interior breakpoints use the piece on their right.
    pub fn eval(&self, x: &Rational) -> Rational {
        let m = self.pieces.len();
        if m == 0 {
            return Rational::zero();
        }
        let idx = (0..m)
            .find(|&i| x < &self.breakpoints[i + 1])
            .unwrap_or(m - 1);
        self.pieces[idx].eval(x)
    }

    /// Exact integral over the whole domain.
    pub fn integrate(&self) -> Rational {
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, p)| p.integrate(&self.breakpoints[i], &self.breakpoints[i + 1]))
            .sum()
    }

    pub fn add(&self, other: &PiecewisePolynomial) -> PiecewisePolynomial {
        assert_eq!(self.breakpoints, other.breakpoints, "breakpoints differ");
        PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            pieces: self
                .pieces
                .iter()
                .zip(&other.pieces)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> PiecewisePolynomial {
        PiecewisePolynomial {
            breakpoints: self.breakpoints.clone(),
            pieces: self.pieces.iter().map(|p| p.scale(s)).collect(),
        }
    }
}

/// Profiles of the slices `P_x = P ∩ {<m,u> >= min + x}` for `x in [0, tau]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceProfile {
    pub volume: PiecewisePolynomial,
    /// Boundary measure of `P_x` over the original rays only.
    pub sigma_only: PiecewisePolynomial,
    /// Lattice measure of the cut facet `P ∩ {<m,u> = min + x}`.
    pub slice_facet: PiecewisePolynomial,
}

/// Result of minimising `t` subject to `t L + D` being effective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Threshold {
    Finite(Rational),
    /// Effective for all sufficiently negative `t`.
    Unbounded,
    Infeasible,
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite(t) => write!(f, "{t}"),
            Threshold::Unbounded => f.write_str("unbounded"),
            Threshold::Infeasible => f.write_str("infeasible"),
        }
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn enumerate_vertices(dim: usize, constraints: &[HalfSpace]) -> Vec<Vec<Rational>> {
    let mut found = BTreeSet::new();
    for subset in combinations(constraints.len(), dim) {
        let a: Matrix = subset
            .iter()
            .map(|&i| constraints[i].normal.to_rational())
            .collect();
        let b: Vec<Rational> = subset.iter().map(|&i| constraints[i].offset.clone()).collect();
        let Ok(m) = solve_linear(&a, &b) else {
            continue;
        };
        if constraints.iter().all(|h| !h.slack(&m).is_negative()) {
            found.insert(m);
        }
    }
    found.into_iter().collect()
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| acc * rat(k))
}

fn weighted_average(dim: usize, items: &[(Rational, Vec<Rational>)]) -> Vec<Rational> {
    let total: Rational = items.iter().map(|(w, _)| w.clone()).sum();
    if total.is_zero() {
        return vec![Rational::zero(); dim];
    }
    (0..dim)
        .map(|i| items.iter().map(|(w, c)| w * &c[i]).sum::<Rational>() / &total)
        .collect()
}

fn centroid(points: &[&Vec<Rational>]) -> Vec<Rational> {
    let k = rat(points.len() as i64);
    (0..points[0].len())
        .map(|i| points.iter().map(|p| p[i].clone()).sum::<Rational>() / &k)
        .collect()
}

/// Builds the moment polytope `{m : <m, u_rho> >= -a_rho}` of a divisor.
pub fn polytope_of(fan: &Fan, divisor: &ToricDivisor) -> Result<LatticePolytope> {
    if divisor.coeffs.len() != fan.rays().len() {
        return Err(Error::DivisorLength {
            expected: fan.rays().len(),
            found: divisor.coeffs.len(),
        });
    }
    let constraints: Vec<HalfSpace> = fan
        .rays()
        .iter()
        .zip(&divisor.coeffs)
        .enumerate()
        .map(|(i, (u, a))| HalfSpace {
            normal: u.clone(),
            offset: -a.clone(),
            origin: ConstraintOrigin::Ray(i),
        })
        .collect();
    let vertices = enumerate_vertices(fan.dim(), &constraints);
    let ample = ample_vertex_map(fan, &constraints).is_some();
    Ok(LatticePolytope {
        dim: fan.dim(),
        constraints,
        vertices,
        ample,
    })
}

/// Vertices `m_sigma` indexed by maximal cones, when the divisor is ample:
/// all distinct and strictly inside every off-cone half-space.
fn ample_vertex_map(fan: &Fan, constraints: &[HalfSpace]) -> Option<Vec<Vec<Rational>>> {
    let mut out = Vec::with_capacity(fan.max_cones().len());
    for cone in fan.max_cones() {
        let a: Matrix = cone.iter().map(|&i| constraints[i].normal.to_rational()).collect();
        let b: Vec<Rational> = cone.iter().map(|&i| constraints[i].offset.clone()).collect();
        let m = solve_linear(&a, &b).ok()?;
        let strict = constraints
            .iter()
            .enumerate()
            .filter(|(i, _)| !cone.contains(i))
            .all(|(_, h)| h.slack(&m).is_positive());
        if !strict || out.contains(&m) {
            return None;
        }
        out.push(m);
    }
    Some(out)
}

impl LatticePolytope {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constraints(&self) -> &[HalfSpace] {
        &self.constraints
    }

    pub fn vertices(&self) -> &[Vec<Rational>] {
        &self.vertices
    }

    pub fn is_ample(&self) -> bool {
        self.ample
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_lattice(&self) -> bool {
        self.vertices.iter().flatten().all(|c| c.is_integer())
    }

    fn affine_dim(&self, idx: &[usize]) -> Option<usize> {
        let first = idx.first()?;
        let diffs: Vec<Vec<Rational>> = idx[1..]
            .iter()
            .map(|&i| sub(&self.vertices[i], &self.vertices[*first]))
            .collect();
        Some(if diffs.is_empty() { 0 } else { rank(&diffs) })
    }

    /// Affine dimension, `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        self.affine_dim(&all)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dimension() == Some(self.dim)
    }

    /// Vertex indices on the hyperplane of constraint `c`.
    pub fn tight_vertices(&self, c: usize) -> Vec<usize> {
        let h = &self.constraints[c];
        (0..self.vertices.len())
            .filter(|&i| h.slack(&self.vertices[i]).is_zero())
            .collect()
    }

    /// Whether constraint `c` cuts out a facet (otherwise it is redundant).
    pub fn is_supporting(&self, c: usize) -> bool {
        self.affine_dim(&self.tight_vertices(c)) == Some(self.dim - 1)
    }

    /// Constraints tight at vertex `v`: the normal cone of that vertex.
    pub fn normal_cone(&self, v: usize) -> Vec<usize> {
        (0..self.constraints.len())
            .filter(|&c| self.constraints[c].slack(&self.vertices[v]).is_zero())
            .collect()
    }

    /// Pulling triangulation of the face spanned by `face` (of affine
    /// dimension `d`) into simplices given as vertex index lists.
    fn triangulate(&self, face: &[usize], d: usize) -> Vec<Vec<usize>> {
        if d == 0 {
            return vec![vec![face[0]]];
        }
        let apex = face[0];
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for c in 0..self.constraints.len() {
            let h = &self.constraints[c];
            let sub_face: Vec<usize> = face
                .iter()
                .copied()
                .filter(|&i| h.slack(&self.vertices[i]).is_zero())
                .collect();
            if sub_face.contains(&apex) || sub_face.len() < d || !seen.insert(sub_face.clone()) {
                continue;
            }
            if self.affine_dim(&sub_face) != Some(d - 1) {
                continue;
            }
            for mut simplex in self.triangulate(&sub_face, d - 1) {
                simplex.push(apex);
                out.push(simplex);
            }
        }
        out
    }

    /// Lattice volume (unit cell has volume 1); zero when not full-dimensional.
    pub fn volume(&self) -> Rational {
        self.measure().map(|(v, _)| v).unwrap_or_else(|_| Rational::zero())
    }

    /// Lattice volume and barycentre.
    pub fn measure(&self) -> Result<(Rational, Vec<Rational>)> {
        if self.is_empty() {
            return Err(Error::EmptyPolytope);
        }
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let n_fact = factorial(self.dim);
        let mut items = Vec::new();
        for simplex in self.triangulate(&all, self.dim) {
            let base = &self.vertices[simplex[0]];
            let rows: Matrix = simplex[1..]
                .iter()
                .map(|&i| sub(&self.vertices[i], base))
                .collect();
            let vol = determinant(&rows)?.abs() / &n_fact;
            let pts: Vec<&Vec<Rational>> = simplex.iter().map(|&i| &self.vertices[i]).collect();
            items.push((vol, centroid(&pts)));
        }
        let total: Rational = items.iter().map(|(w, _)| w.clone()).sum();
        Ok((total, weighted_average(self.dim, &items)))
    }

    /// Lattice `(n-1)`-volume and centroid of the face cut out by constraint
    /// `c`, measured by the form `ϖ_u` with `u ∧ ϖ_u = -ϖ^M`. Faces of lower
    /// dimension give zero.
    pub fn facet_measure(&self, c: usize) -> Result<(Rational, Option<Vec<Rational>>)> {
        let face = self.tight_vertices(c);
        if face.is_empty() || self.affine_dim(&face) != Some(self.dim - 1) {
            return Ok((Rational::zero(), None));
        }
        let u = &self.constraints[c].normal;
        // m0 with <m0,u> = 1 followed by a basis of u^⊥ ∩ M is unimodular, so
        // det[m0; w_1..w_{n-1}] is the determinant of the w's in that basis
        let m0 = unimodular_completion(u)?.swap_remove(0).to_rational();
        let n1_fact = factorial(self.dim - 1);
        let mut items = Vec::new();
        for simplex in self.triangulate(&face, self.dim - 1) {
            let base = &self.vertices[simplex[0]];
            let mut rows: Matrix = vec![m0.clone()];
            rows.extend(simplex[1..].iter().map(|&i| sub(&self.vertices[i], base)));
            let vol = determinant(&rows)?.abs() / &n1_fact;
            let pts: Vec<&Vec<Rational>> = simplex.iter().map(|&i| &self.vertices[i]).collect();
            items.push((vol, centroid(&pts)));
        }
        let total: Rational = items.iter().map(|(w, _)| w.clone()).sum();
        Ok((total, Some(weighted_average(self.dim, &items))))
    }

    /// Boundary measure over the facets coming from the fan's rays.
    pub fn boundary_measure(&self) -> Result<BoundaryMeasure> {
        let mut facets = Vec::new();
        let mut items = Vec::new();
        for (c, h) in self.constraints.iter().enumerate() {
            let ConstraintOrigin::Ray(ray) = h.origin else {
                continue;
            };
            let (volume, centroid) = self.facet_measure(c)?;
            if let Some(ctr) = &centroid {
                items.push((volume.clone(), ctr.clone()));
            }
            facets.push(FacetMeasure {
                ray,
                volume,
                centroid,
            });
        }
        let total = items.iter().map(|(w, _)| w.clone()).sum();
        Ok(BoundaryMeasure {
            total,
            barycentre: weighted_average(self.dim, &items),
            facets,
        })
    }

    /// Exact `(min, max)` of `<., u>` over the polytope.
    pub fn linear_range(&self, u: &LatticeVector) -> Result<(Rational, Rational)> {
        let mut values = self.vertices.iter().map(|v| u.pair(v));
        let first = values.next().ok_or(Error::EmptyPolytope)?;
        Ok(values.fold((first.clone(), first), |(lo, hi), x| {
            (lo.min(x.clone()), hi.max(x))
        }))
    }

    /// Width of the polytope in direction `u`.
    pub fn width(&self, u: &LatticeVector) -> Result<Rational> {
        let (lo, hi) = self.linear_range(u)?;
        Ok(hi - lo)
    }

    /// `P ∩ {<m,u> >= min_P <.,u> + x}` for `x in [0, tau]`.
    pub fn truncate(&self, u: &LatticeVector, x: &Rational) -> Result<LatticePolytope> {
        let (lo, hi) = self.linear_range(u)?;
        let tau = &hi - &lo;
        if x.is_negative() || x > &tau {
            return Err(Error::SliceOutOfRange(x.to_string(), tau.to_string()));
        }
        let mut constraints = self.constraints.clone();
        constraints.push(HalfSpace {
            normal: u.clone(),
            offset: lo + x,
            origin: ConstraintOrigin::Slice,
        });
        let vertices = enumerate_vertices(self.dim, &constraints);
        Ok(LatticePolytope {
            dim: self.dim,
            constraints,
            vertices,
            ample: false,
        })
    }

    /// Breakpoints `<v,u> - min` over the vertices, sorted and distinct.
    fn breakpoints(&self, u: &LatticeVector) -> Result<Vec<Rational>> {
        let (lo, _) = self.linear_range(u)?;
        let set: BTreeSet<Rational> = self.vertices.iter().map(|v| u.pair(v) - &lo).collect();
        Ok(set.into_iter().collect())
    }

    /// Volume, boundary and cut-facet profiles of the slices in direction
    /// `u`, each recovered piece by piece by exact interpolation at `n + 1`
    /// interior sample points.
    pub fn slice_profile(&self, u: &LatticeVector) -> Result<SliceProfile> {
        if !self.is_full_dimensional() {
            return Err(Error::NotFullDimensional);
        }
        let breakpoints = self.breakpoints(u)?;
        let n = self.dim;
        let mut volume = Vec::new();
        let mut sigma_only = Vec::new();
        let mut slice_facet = Vec::new();
        for w in breakpoints.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let mut pv = Vec::new();
            let mut ps = Vec::new();
            let mut pf = Vec::new();
            for j in 1..=n + 1 {
                let x = a + (b - a) * rat(j as i64) / rat(n as i64 + 2);
                let cut = self.truncate(u, &x)?;
                let slice_idx = cut.constraints.len() - 1;
                pv.push((x.clone(), cut.volume()));
                ps.push((x.clone(), cut.boundary_measure()?.total));
                pf.push((x, cut.facet_measure(slice_idx)?.0));
            }
            volume.push(Polynomial::interpolate(&pv));
            sigma_only.push(Polynomial::interpolate(&ps));
            slice_facet.push(Polynomial::interpolate(&pf));
        }
        let wrap = |pieces| PiecewisePolynomial {
            breakpoints: breakpoints.clone(),
            pieces,
        };
        Ok(SliceProfile {
            volume: wrap(volume),
            sigma_only: wrap(sigma_only),
            slice_facet: wrap(slice_facet),
        })
    }

    /// `x ↦ Vol_M(P_x)` on `[0, tau]`.
    pub fn piecewise_volume(&self, u: &LatticeVector) -> Result<PiecewisePolynomial> {
        Ok(self.slice_profile(u)?.volume)
    }

    /// `(sigma_only, slice_facet)` on `[0, tau]`.
    pub fn piecewise_boundary(
        &self,
        u: &LatticeVector,
    ) -> Result<(PiecewisePolynomial, PiecewisePolynomial)> {
        let p = self.slice_profile(u)?;
        Ok((p.sigma_only, p.slice_facet))
    }
}

/// Largest dimension accepted by [`effective_threshold`].
pub const MAX_ELIMINATION_DIM: usize = 4;

/// Inequality `sum coeffs_i x_i + constant >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Row {
    coeffs: Vec<Rational>,
    constant: Rational,
}

impl Row {
    fn normalized(mut self) -> Row {
        let scale = self
            .coeffs
            .iter()
            .chain(std::iter::once(&self.constant))
            .find(|c| !c.is_zero())
            .map(|c| c.abs());
        if let Some(s) = scale {
            for c in self.coeffs.iter_mut() {
                *c /= &s;
            }
            self.constant /= &s;
        }
        self
    }
}

/// Fourier–Motzkin elimination of variable `j`.
fn eliminate(rows: &BTreeSet<Row>, j: usize) -> BTreeSet<Row> {
    let (mut pos, mut neg, mut out) = (Vec::new(), Vec::new(), BTreeSet::new());
    for r in rows {
        if r.coeffs[j].is_positive() {
            pos.push(r);
        } else if r.coeffs[j].is_negative() {
            neg.push(r);
        } else {
            out.insert(r.clone());
        }
    }
    for p in &pos {
        for q in &neg {
            let (a, b) = (-q.coeffs[j].clone(), p.coeffs[j].clone());
            let row = Row {
                coeffs: p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(x, y)| x * &a + y * &b)
                    .collect(),
                constant: &p.constant * &a + &q.constant * &b,
            };
            out.insert(row.normalized());
        }
    }
    out
}

/// `inf { t : P_{tL + D} nonempty }` by exact Fourier–Motzkin elimination of
/// the `m` variables from `<m,u_rho> + t a_rho + d_rho >= 0`.
pub fn effective_threshold(fan: &Fan, l: &ToricDivisor, d: &ToricDivisor) -> Result<Threshold> {
    let n = fan.dim();
    if n > MAX_ELIMINATION_DIM {
        return Err(Error::DimensionTooLarge {
            dim: n,
            max: MAX_ELIMINATION_DIM,
        });
    }
    for div in [l, d] {
        if div.coeffs.len() != fan.rays().len() {
            return Err(Error::DivisorLength {
                expected: fan.rays().len(),
                found: div.coeffs.len(),
            });
        }
    }
    if !polytope_of(fan, l)?.is_ample() {
        return Err(Error::NotAmple);
    }
    let mut rows: BTreeSet<Row> = fan
        .rays()
        .iter()
        .enumerate()
        .map(|(i, u)| {
            let mut coeffs = u.to_rational();
            coeffs.push(l.coeffs[i].clone());
            Row {
                coeffs,
                constant: d.coeffs[i].clone(),
            }
            .normalized()
        })
        .collect();
    for j in 0..n {
        rows = eliminate(&rows, j);
    }
    let mut lower: Option<Rational> = None;
    let mut upper: Option<Rational> = None;
    for r in &rows {
        let (alpha, beta) = (&r.coeffs[n], &r.constant);
        if alpha.is_zero() {
            if beta.is_negative() {
                return Ok(Threshold::Infeasible);
            }
        } else {
            let bound = -beta / alpha;
            if alpha.is_positive() {
                lower = Some(lower.map_or(bound.clone(), |b| b.max(bound)));
            } else {
                upper = Some(upper.map_or(bound.clone(), |b| b.min(bound)));
            }
        }
    }
    Ok(match (lower, upper) {
        (Some(lo), Some(hi)) if lo > hi => Threshold::Infeasible,
        (Some(lo), _) => Threshold::Finite(lo),
        (None, _) => Threshold::Unbounded,
    })
}
