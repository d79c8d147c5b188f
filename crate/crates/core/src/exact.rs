//! Exact rational and integer-lattice linear algebra.
//!
//! Every scalar in the crate is a [`Rational`]; lattice vectors in `N` and `M`
//! are integer [`LatticeVector`]s. Matrices are tiny (dimension at most four in
//! practice) so elimination is plain Gauss–Jordan with exact pivots.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical `p` / `p/q` rendering.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"p"` or `"p/q"` with optional surrounding whitespace and sign.
pub fn parse_rational(text: &str) -> std::result::Result<Rational, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational literal {text:?}"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational literal {text:?}"))?;
    if den.is_zero() {
        return Err("zero denominator".to_string());
    }
    Ok(Rational::new(num, den))
}

/// Integer vector in the cocharacter lattice `N` or the character lattice `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn new(coords: impl Into<Vec<i64>>) -> Self {
        LatticeVector(coords.into())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn content(&self) -> i64 {
        self.0.iter().fold(0i64, |g, &c| g.gcd(&c))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn infinity_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }

    pub fn scaled(&self, k: i64) -> LatticeVector {
        LatticeVector(self.0.iter().map(|c| c * k).collect())
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|&c| rat(c)).collect()
    }

    /// Pairing `<m, self>` with a rational point of the dual space.
    pub fn pair(&self, m: &[Rational]) -> Rational {
        debug_assert_eq!(m.len(), self.0.len());
        self.0
            .iter()
            .zip(m)
            .filter(|(c, _)| **c != 0)
            .fold(Rational::zero(), |acc, (&c, x)| acc + x * rat(c))
    }

    pub fn pair_int(&self, m: &[i64]) -> i64 {
        self.0.iter().zip(m).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Splits `v` into its primitive direction and the gcd of its coordinates.
pub fn primitivize(v: &LatticeVector) -> Result<(LatticeVector, i64)> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = v.content();
    Ok((LatticeVector(v.0.iter().map(|c| c / g).collect()), g))
}

pub type Matrix = Vec<Vec<Rational>>;

fn check_square(m: &Matrix) -> Result<usize> {
    let n = m.len();
    for row in m {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    Ok(n)
}

pub fn determinant(m: &Matrix) -> Result<Rational> {
    let n = check_square(m)?;
    let mut a = m.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(Rational::zero());
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            let pivot_row = a[col].clone();
            subtract_multiple(&mut a[r][col..], &pivot_row[col..], &factor);
        }
    }
    Ok(det)
}

fn subtract_multiple(target: &mut [Rational], row: &[Rational], factor: &Rational) {
    for (x, y) in target.iter_mut().zip(row) {
        *x -= factor * y;
    }
}

/// Integer determinant via the rational routine.
pub fn determinant_int(rows: &[Vec<i64>]) -> Result<Rational> {
    let m: Matrix = rows
        .iter()
        .map(|r| r.iter().map(|&x| rat(x)).collect())
        .collect();
    determinant(&m)
}

/// Unique solution of `a · x = b` for square invertible `a`.
pub fn solve_linear(a: &Matrix, b: &[Rational]) -> Result<Vec<Rational>> {
    let n = check_square(a)?;
    if b.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or(Error::Singular)?;
        aug.swap(pivot, col);
        let p = aug[col][col].clone();
        for x in &mut aug[col][col..] {
            *x /= &p;
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            subtract_multiple(&mut row[col..], &pivot_row[col..], &factor);
        }
    }
    Ok(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Rank of a list of rational row vectors.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(pivot, rank);
        let p = a[rank][col].clone();
        for r in rank + 1..a.len() {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] / &p;
            let pivot_row = a[rank].clone();
            subtract_multiple(&mut a[r][col..], &pivot_row[col..], &factor);
        }
        rank += 1;
    }
    rank
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = ext_gcd(b, a % b);
        (g, t, s - (a / b) * t)
    }
}

/// Unimodular integer matrix (returned as columns) whose first column `m0`
/// satisfies `<m0, u> = 1` and whose remaining columns span `u^⊥ ∩ M`.
/// Orientation is fixed so the matrix has determinant `+1`.
pub fn unimodular_completion(u: &LatticeVector) -> Result<Vec<LatticeVector>> {
    if u.is_zero() {
        return Err(Error::ZeroVector);
    }
    if !u.is_primitive() {
        return Err(Error::NotPrimitive(u.0.clone()));
    }
    let n = u.dim();
    let mut cols: Vec<Vec<i64>> = (0..n)
        .map(|j| (0..n).map(|i| i64::from(i == j)).collect())
        .collect();
    let mut a = u.0.clone();
    for j in 1..n {
        if a[j] == 0 {
            continue;
        }
        let (g, s, t) = ext_gcd(a[0], a[j]);
        let (p, q) = (a[0] / g, a[j] / g);
        let c0 = cols[0].clone();
        let cj = cols[j].clone();
        cols[0] = c0.iter().zip(&cj).map(|(x, y)| s * x + t * y).collect();
        cols[j] = c0.iter().zip(&cj).map(|(x, y)| -q * x + p * y).collect();
        a[0] = g;
        a[j] = 0;
    }
    if a[0] == -1 {
        cols[0] = cols[0].iter().map(|x| -x).collect();
    }
    debug_assert_eq!(u.pair_int(&cols[0]), 1);
    let rows: Vec<Vec<i64>> = (0..n).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
    if determinant_int(&rows)?.is_negative() && n >= 2 {
        cols[1] = cols[1].iter().map(|x| -x).collect();
    }
    Ok(cols.into_iter().map(LatticeVector).collect())
}

/// Basis `e_2, …, e_n` of the sublattice `u^⊥ ∩ M`, completing any `m0`
/// with `<m0, u> = 1` to a basis of `M`.
pub fn facet_lattice_basis(u: &LatticeVector) -> Result<Vec<LatticeVector>> {
    let mut cols = unimodular_completion(u)?;
    cols.remove(0);
    Ok(cols)
}

/// Dense univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    pub coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn antiderivative(&self) -> Polynomial {
        let mut coeffs = vec![Rational::zero()];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c / rat(i as i64 + 1));
        }
        Polynomial::new(coeffs)
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn integrate(&self, a: &Rational, b: &Rational) -> Rational {
        let anti = self.antiderivative();
        anti.eval(b) - anti.eval(a)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn scale(&self, s: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Lagrange interpolation through points with distinct abscissae.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Polynomial {
        let mut result = vec![Rational::zero(); points.len()];
        for (i, (xi, yi)) in points.iter().enumerate() {
            // basis numerator prod_{j != i} (x - xj), built incrementally
            let mut basis = vec![Rational::one()];
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut next = vec![Rational::zero(); basis.len() + 1];
                for (k, b) in basis.iter().enumerate() {
                    next[k + 1] += b;
                    next[k] -= b * xj;
                }
                basis = next;
                denom *= xi - xj;
            }
            let w = yi / denom;
            for (k, b) in basis.iter().enumerate() {
                result[k] += b * &w;
            }
        }
        Polynomial::new(result)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}
