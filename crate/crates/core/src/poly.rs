//! Exact rational polynomials in a few counters and Newton forward-difference
//! fitting on tensor grids.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;

/// Univariate polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPolynomial {
    coeffs: Vec<BigRational>,
}

impl UniPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        UniPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `n + shift`
    pub fn linear(shift: BigRational) -> Self {
        Self::new(vec![shift, BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, n: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * n + c)
    }

    pub fn eval_int(&self, n: i64) -> BigRational {
        self.eval(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn mul(&self, other: &UniPolynomial) -> UniPolynomial {
        if self.is_zero() || other.is_zero() {
            return UniPolynomial::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPolynomial::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> UniPolynomial {
        UniPolynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `C(n - base, j)` as a polynomial in `n`.
    pub fn shifted_binomial(base: i64, j: u32) -> UniPolynomial {
        let mut acc = UniPolynomial::constant(BigRational::one());
        for r in 0..j {
            let shift = BigRational::from_integer(BigInt::from(-base - i64::from(r)));
            acc = acc.mul(&UniPolynomial::linear(shift));
        }
        let fact: BigInt = (1..=u64::from(j)).map(BigInt::from).product();
        acc.scale(&BigRational::new(BigInt::one(), fact))
    }
}

impl fmt::Display for UniPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Vec<u32>, BigRational)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (vec![k as u32], c.clone()))
            .collect();
        write_terms(f, &terms, &["n"])
    }
}

/// Polynomial in `d` counters with exact rational coefficients, together
/// with the grid it was fitted on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPolynomial {
    counters: usize,
    coeffs: BTreeMap<Vec<u32>, BigRational>,
    base: Vec<u32>,
    window: u32,
}

impl MultiPolynomial {
    pub fn new(
        counters: usize,
        coeffs: BTreeMap<Vec<u32>, BigRational>,
        base: Vec<u32>,
        window: u32,
    ) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MultiPolynomial {
            counters,
            coeffs,
            base,
            window,
        }
    }

    pub fn counters(&self) -> usize {
        self.counters
    }

    pub fn coefficients(&self) -> &BTreeMap<Vec<u32>, BigRational> {
        &self.coeffs
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.coeffs.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Point at and beyond which the polynomial was validated.
    pub fn base(&self) -> &[u32] {
        &self.base
    }

    pub fn validated_window(&self) -> u32 {
        self.window
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|k| k.iter().sum()).max()
    }

    pub fn eval(&self, point: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for (exps, c) in &self.coeffs {
            let mut term = c.clone();
            for (&p, &e) in point.iter().zip(exps) {
                term *= BigRational::from_integer(BigInt::from(p).pow(e));
            }
            acc += term;
        }
        acc
    }

    /// Restriction to the diagonal `(n, ..., n)`.
    pub fn diagonal(&self) -> UniPolynomial {
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut out = vec![BigRational::zero(); deg + 1];
        for (exps, c) in &self.coeffs {
            let k: u32 = exps.iter().sum();
            out[k as usize] += c;
        }
        UniPolynomial::new(out)
    }
}

impl fmt::Display for MultiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(Vec<u32>, BigRational)> = self
            .coeffs
            .iter()
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(&a.0))
        });
        let names: Vec<String> = (1..=self.counters).map(|i| format!("n{i}")).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        write_terms(f, &terms, &names)
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: &[(Vec<u32>, BigRational)],
    names: &[&str],
) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (exps, c)) in terms.iter().enumerate() {
        let mono: Vec<String> = exps
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{n}^{e}") })
            .collect();
        let abs = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if i == 0 {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        if mono.is_empty() {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{}", mono.join("*"))?;
        } else {
            write!(f, "{abs}*{}", mono.join("*"))?;
        }
    }
    Ok(())
}

/// Iterates the points of the box `base + [0, extent]^d` in lexicographic order.
pub fn grid_points(base: &[u32], extent: u32) -> Vec<Vec<u32>> {
    let d = base.len();
    let side = extent as usize + 1;
    let total = side.pow(d as u32);
    let mut out = Vec::with_capacity(total);
    let mut idx = vec![0u32; d];
    for _ in 0..total {
        out.push(base.iter().zip(&idx).map(|(b, i)| b + i).collect());
        for k in (0..d).rev() {
            idx[k] += 1;
            if idx[k] as usize == side {
                idx[k] = 0;
            } else {
                break;
            }
        }
    }
    out
}

/// Fits the unique polynomial of degree at most `degree` in each counter that
/// interpolates `f` on `base + [0, degree]^d`, via tensor Newton forward
/// differences.
pub fn fit_tensor_grid<F>(base: &[u32], degree: u32, mut f: F) -> Result<BTreeMap<Vec<u32>, BigRational>>
where
    F: FnMut(&[u32]) -> Result<BigInt>,
{
    let d = base.len();
    let side = degree as usize + 1;
    let points = grid_points(base, degree);
    let mut values: Vec<BigInt> = Vec::with_capacity(points.len());
    for p in &points {
        values.push(f(p)?);
    }
    // Forward differences along each axis; afterwards values[j] = Δ^j f(base).
    let stride = |axis: usize| side.pow((d - 1 - axis) as u32);
    for axis in 0..d {
        let s = stride(axis);
        for level in 1..side {
            for flat in (0..values.len()).rev() {
                let pos = (flat / s) % side;
                if pos >= level {
                    let prev = values[flat - s].clone();
                    values[flat] -= prev;
                }
            }
        }
    }
    // Convert the binomial basis prod_i C(n_i - base_i, j_i) to monomials.
    let basis: Vec<Vec<UniPolynomial>> = base
        .iter()
        .map(|&b| {
            (0..side as u32)
                .map(|j| UniPolynomial::shifted_binomial(i64::from(b), j))
                .collect()
        })
        .collect();
    let mut coeffs: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
    for (flat, delta) in values.iter().enumerate() {
        if delta.is_zero() {
            continue;
        }
        let js: Vec<usize> = (0..d).map(|axis| (flat / stride(axis)) % side).collect();
        let mut terms: Vec<(Vec<u32>, BigRational)> =
            vec![(Vec::new(), BigRational::from_integer(delta.clone()))];
        for (axis, &j) in js.iter().enumerate() {
            let poly = &basis[axis][j];
            let mut next = Vec::new();
            for (exps, c) in &terms {
                for (k, pc) in poly.coefficients().iter().enumerate() {
                    if pc.is_zero() {
                        continue;
                    }
                    let mut e = exps.clone();
                    e.push(k as u32);
                    next.push((e, c * pc));
                }
            }
            terms = next;
        }
        for (exps, c) in terms {
            *coeffs.entry(exps).or_insert_with(BigRational::zero) += c;
        }
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok(coeffs)
}

/// Fits a univariate polynomial of degree at most `degree` through
/// `f(base), ..., f(base + degree)`.
pub fn fit_univariate<F>(base: u32, degree: u32, mut f: F) -> Result<UniPolynomial>
where
    F: FnMut(u32) -> Result<BigInt>,
{
    let coeffs = fit_tensor_grid(&[base], degree, |p| f(p[0]))?;
    let deg = coeffs.keys().map(|k| k[0]).max().unwrap_or(0) as usize;
    let mut out = vec![BigRational::zero(); deg + 1];
    for (k, c) in coeffs {
        out[k[0] as usize] = c;
    }
    Ok(UniPolynomial::new(out))
}

pub fn factorial(k: u32) -> BigUint {
    (1..=u64::from(k)).map(BigUint::from).product()
}

/// `c` as a non-negative integer, if it is one.
pub fn as_natural(c: &BigRational) -> Option<BigUint> {
    if c.is_integer() && !c.is_negative() {
        c.to_integer().to_biguint()
    } else {
        None
    }
}

pub fn rational_to_string(c: &BigRational) -> String {
    if c.is_integer() {
        c.to_integer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}
