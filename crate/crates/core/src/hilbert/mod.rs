//! Hilbert functions, Hilbert polynomials and mixed multiplicities of
//! `M = R/I` for a monomial ideal `I` in a block-graded ring `R`.
//!
//! For large `n` the count `dim_k M_n` agrees with a polynomial `P` of total
//! degree `ℓ - 1`, where `ℓ` is the dimension of the diagonal module. Its
//! top-degree part is `Σ e(M; k) n^k / k!` and the `e(M; k)` are the mixed
//! multiplicities. Everything here is exact.

mod counting;

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

pub use counting::{
    Auto, BruteForce, CounterRegistry, GradedCounter, InclusionExclusion, LcmPlan, PieceCounter,
    DEFAULT_ENUMERATION_LIMIT, MAX_INCLUSION_EXCLUSION_GENERATORS,
};

use crate::error::{Error, Result};
use crate::kernel::{compositions, irrelevant_products, BlockRingSpec, MonomialIdeal, MultiDegree};
use crate::poly::{as_natural, factorial, fit_tensor_grid, fit_univariate, grid_points, MultiPolynomial, UniPolynomial};

/// `M = R/I` with its grading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedQuotient {
    spec: Arc<BlockRingSpec>,
    ideal: MonomialIdeal,
}

impl GradedQuotient {
    pub fn new(spec: Arc<BlockRingSpec>, ideal: MonomialIdeal) -> Result<Self> {
        if ideal.num_vars() != spec.num_vars() {
            return Err(Error::Validation(format!(
                "ideal lives in {} variables but the ring has {}",
                ideal.num_vars(),
                spec.num_vars()
            )));
        }
        Ok(GradedQuotient { spec, ideal })
    }

    pub fn free(spec: Arc<BlockRingSpec>) -> Self {
        let ideal = MonomialIdeal::zero(spec.num_vars());
        GradedQuotient { spec, ideal }
    }

    pub fn spec(&self) -> &BlockRingSpec {
        &self.spec
    }

    pub fn shared_spec(&self) -> &Arc<BlockRingSpec> {
        &self.spec
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn num_blocks(&self) -> usize {
        self.spec.num_blocks()
    }

    pub fn with_ideal(&self, ideal: MonomialIdeal) -> GradedQuotient {
        GradedQuotient {
            spec: Arc::clone(&self.spec),
            ideal,
        }
    }

    /// `R / (I : S_{++}^∞)`.
    pub fn saturated(&self) -> GradedQuotient {
        let q = irrelevant_products(&self.spec);
        let sat = self
            .ideal
            .saturate_by_ideal(&q)
            .expect("irrelevant products are never zero");
        self.with_ideal(sat)
    }

    /// Componentwise maximal generator degree plus one.
    pub fn initial_base(&self) -> Vec<u32> {
        let mut base = vec![0u32; self.num_blocks()];
        for g in self.ideal.generators() {
            let deg = self.spec.multidegree_of(g).expect("same ring");
            for (b, d) in base.iter_mut().zip(deg.entries()) {
                *b = (*b).max(*d);
            }
        }
        base.iter().map(|b| b + 1).collect()
    }

    /// A point beyond which the Hilbert function provably equals its
    /// polynomial: `deg_i lcm(gens) - b_i + 1` per block, clamped at zero.
    pub fn polynomiality_bound(&self) -> MultiDegree {
        let lcm = self.ideal.lcm_of_generators();
        let deg = self.spec.multidegree_of(&lcm).expect("same ring");
        MultiDegree(
            deg.entries()
                .iter()
                .zip(self.spec.block_sizes())
                .map(|(&a, b)| (i64::from(a) - b as i64 + 1).max(0) as u32)
                .collect(),
        )
    }
}

/// Stabilization-search settings shared by every polynomial fit.
#[derive(Debug, Clone)]
pub struct HilbertOptions {
    /// Fixed starting base on every axis; `None` picks one from the generators.
    pub base: Option<u32>,
    pub window: u32,
    pub max_base: u32,
    pub counter: Arc<dyn GradedCounter>,
}

impl Default for HilbertOptions {
    fn default() -> Self {
        HilbertOptions {
            base: None,
            window: 3,
            max_base: 64,
            counter: Arc::new(Auto),
        }
    }
}

/// `dim_k M_n`, by inclusion-exclusion over the lcm lattice when the
/// generating set is small and by enumeration otherwise.
pub fn graded_count(m: &GradedQuotient, n: &MultiDegree) -> Result<BigUint> {
    check_arity(m, n)?;
    Auto.count(m, n)
}

/// Enumerates the piece and counts non-members of `I`.
pub fn brute_force_count(m: &GradedQuotient, n: &MultiDegree) -> Result<BigUint> {
    check_arity(m, n)?;
    BruteForce::default().count(m, n)
}

fn check_arity(m: &GradedQuotient, n: &MultiDegree) -> Result<()> {
    if n.len() != m.num_blocks() {
        return Err(Error::Validation(format!(
            "multidegree {n} has {} entries but the ring has {} blocks",
            n.len(),
            m.num_blocks()
        )));
    }
    Ok(())
}

/// True iff every one-variable-per-block product lies in `√I`, i.e. all
/// large graded pieces vanish.
pub fn vanishing_test(m: &GradedQuotient) -> bool {
    let radical = m.ideal().radical();
    irrelevant_products(m.spec())
        .generators()
        .iter()
        .all(|g| radical.contains(g))
}

/// Univariate Hilbert polynomial of the diagonal module `M^Δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalProfile {
    pub ell: u32,
    pub poly: UniPolynomial,
    pub base: u32,
    pub window: u32,
    /// Bases that failed validation before `base` was accepted.
    pub escalations: Vec<u32>,
}

pub fn diagonal_profile(m: &GradedQuotient, opts: &HilbertOptions) -> Result<DiagonalProfile> {
    require_non_vanishing(m)?;
    let counter = opts.counter.prepare(m)?;
    let mut base = opts
        .base
        .unwrap_or_else(|| m.initial_base().into_iter().max().unwrap_or(1));
    let mut escalations = Vec::new();
    loop {
        if base > opts.max_base {
            return Err(Error::Guard(format!(
                "diagonal Hilbert function did not stabilize below base {}",
                opts.max_base
            )));
        }
        if let Some(profile) = fit_diagonal(m, counter.as_ref(), base, opts.window)? {
            return Ok(DiagonalProfile {
                escalations,
                ..profile
            });
        }
        escalations.push(base);
        base = (base * 2).max(1);
    }
}

fn require_non_vanishing(m: &GradedQuotient) -> Result<()> {
    if vanishing_test(m) {
        return Err(Error::Degenerate(
            "all large graded pieces vanish, so there is no Hilbert polynomial to fit".into(),
        ));
    }
    Ok(())
}

/// One stabilization attempt on the diagonal; `None` when validation fails.
fn fit_diagonal(
    m: &GradedQuotient,
    counter: &dyn PieceCounter,
    base: u32,
    window: u32,
) -> Result<Option<DiagonalProfile>> {
    let d = m.num_blocks();
    // Total degree never exceeds that of the free ring, sum_i (b_i - 1).
    let max_degree = (m.spec().num_vars() - d) as u32;
    let count_at = |n: u32| -> Result<BigInt> { Ok(BigInt::from(counter.count(&vec![n; d])?)) };
    let poly = fit_univariate(base, max_degree, count_at)?;
    for n in base + max_degree + 1..=base + max_degree + window {
        if poly.eval_int(i64::from(n)) != BigRational::from_integer(count_at(n)?) {
            return Ok(None);
        }
    }
    let Some(deg) = poly.degree() else {
        return Ok(None);
    };
    if poly.leading_coefficient() <= BigRational::zero() {
        return Ok(None);
    }
    Ok(Some(DiagonalProfile {
        ell: deg as u32 + 1,
        poly,
        base,
        window,
        escalations: Vec::new(),
    }))
}

/// Mixed multiplicities `e(M; k)` for all types with `|k| = ℓ - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedMultiplicityTable {
    pub ell: u32,
    entries: Vec<(Vec<u32>, BigUint)>,
}

impl MixedMultiplicityTable {
    pub fn new(ell: u32, entries: Vec<(Vec<u32>, BigUint)>) -> Self {
        MixedMultiplicityTable { ell, entries }
    }

    /// Entries in lexicographically decreasing type order.
    pub fn entries(&self) -> &[(Vec<u32>, BigUint)] {
        &self.entries
    }

    pub fn get(&self, ty: &[u32]) -> Option<&BigUint> {
        self.entries.iter().find(|(k, _)| k == ty).map(|(_, e)| e)
    }

    pub fn sum(&self) -> BigUint {
        self.entries.iter().map(|(_, e)| e).sum()
    }

    /// `Σ (ℓ-1)!/(k_1!...k_d!) e(M; k)`, which equals `(ℓ-1)!` times the
    /// leading coefficient of the diagonal polynomial.
    pub fn multinomial_weighted_sum(&self) -> BigUint {
        let top = factorial(self.ell.saturating_sub(1));
        self.entries
            .iter()
            .map(|(k, e)| {
                let denom: BigUint = k.iter().map(|&ki| factorial(ki)).product();
                &top / denom * e
            })
            .sum()
    }

    pub fn positive_types(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.entries.iter().filter(|(_, e)| !e.is_zero()).map(|(k, _)| k)
    }
}

/// Hilbert polynomial together with the diagonal profile and table it implies.
#[derive(Debug, Clone)]
pub struct HilbertAnalysis {
    pub profile: DiagonalProfile,
    pub polynomial: MultiPolynomial,
    pub table: MixedMultiplicityTable,
    /// Bases that failed multivariate validation.
    pub escalations: Vec<Vec<u32>>,
}

/// Fits the diagonal profile and the multivariate Hilbert polynomial on a
/// common base, doubling the base until both validate and agree.
pub fn analyze(m: &GradedQuotient, opts: &HilbertOptions) -> Result<HilbertAnalysis> {
    require_non_vanishing(m)?;
    let counter = opts.counter.prepare(m)?;
    let mut base: Vec<u32> = match opts.base {
        Some(b) => vec![b; m.num_blocks()],
        None => m.initial_base(),
    };
    let mut escalations = Vec::new();
    loop {
        if base.iter().any(|&b| b > opts.max_base) {
            return Err(Error::Guard(format!(
                "Hilbert function did not stabilize below base {}",
                opts.max_base
            )));
        }
        let scalar = base.iter().copied().max().unwrap_or(0);
        if let Some(profile) = fit_diagonal(m, counter.as_ref(), scalar, opts.window)? {
            let degree = profile.ell - 1;
            let coeffs =
                fit_tensor_grid(&base, degree, |p| Ok(BigInt::from(counter.count(p)?)))?;
            let poly = MultiPolynomial::new(m.num_blocks(), coeffs, base.clone(), opts.window);
            let consistent =
                poly.total_degree() == Some(degree) && poly.diagonal() == profile.poly;
            if consistent && validates(&poly, &base, degree, opts.window, counter.as_ref())? {
                let table = table_from(&poly, profile.ell)?;
                let profile = DiagonalProfile {
                    escalations: escalations.iter().map(|b: &Vec<u32>| b.iter().copied().max().unwrap_or(0)).collect(),
                    ..profile
                };
                return Ok(HilbertAnalysis {
                    profile,
                    polynomial: poly,
                    table,
                    escalations,
                });
            }
        }
        escalations.push(base.clone());
        base = base.iter().map(|b| (b * 2).max(1)).collect();
    }
}

fn validates(
    poly: &MultiPolynomial,
    base: &[u32],
    degree: u32,
    window: u32,
    counter: &dyn PieceCounter,
) -> Result<bool> {
    for p in grid_points(base, degree + window) {
        let inside = p.iter().zip(base).all(|(x, b)| x - b <= degree);
        if inside {
            continue;
        }
        let point: Vec<i64> = p.iter().map(|&x| i64::from(x)).collect();
        if poly.eval(&point) != BigRational::from_integer(BigInt::from(counter.count(&p)?)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn table_from(poly: &MultiPolynomial, ell: u32) -> Result<MixedMultiplicityTable> {
    let mut entries = Vec::new();
    for k in compositions(ell - 1, poly.counters()) {
        let weight: BigUint = k.iter().map(|&ki| factorial(ki)).product();
        let value = poly.coefficient(&k) * BigRational::from_integer(BigInt::from(weight));
        let e = as_natural(&value).ok_or_else(|| {
            Error::Internal(format!(
                "mixed multiplicity of type {k:?} is {value}, not a non-negative integer"
            ))
        })?;
        entries.push((k, e));
    }
    let table = MixedMultiplicityTable::new(ell, entries);
    if table.sum().is_zero() {
        return Err(Error::Internal("all mixed multiplicities vanish".into()));
    }
    Ok(table)
}

pub fn hilbert_polynomial(m: &GradedQuotient, opts: &HilbertOptions) -> Result<MultiPolynomial> {
    Ok(analyze(m, opts)?.polynomial)
}

pub fn mixed_multiplicity_table(
    m: &GradedQuotient,
    opts: &HilbertOptions,
) -> Result<MixedMultiplicityTable> {
    Ok(analyze(m, opts)?.table)
}

/// `(ℓ-1)!` times the leading coefficient of the diagonal polynomial.
pub fn scaled_diagonal_leading_coefficient(profile: &DiagonalProfile) -> BigRational {
    profile.poly.leading_coefficient()
        * BigRational::from_integer(BigInt::from(factorial(profile.ell - 1)))
}


#[cfg(test)]
mod tests {
    use super::*;

    fn quotient(blocks: Vec<Vec<&str>>, gens: &[&[(&str, u32)]]) -> GradedQuotient {
        let spec = BlockRingSpec::new(blocks).unwrap();
        let ideal = MonomialIdeal::new(
            spec.num_vars(),
            gens.iter().map(|g| spec.monomial(g).unwrap()),
        );
        GradedQuotient::new(Arc::new(spec), ideal).unwrap()
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn counts() {
        let m = quotient(vec![vec!["x", "y"]], &[&[("x", 2)]]);
        assert_eq!(graded_count(&m, &MultiDegree(vec![3])).unwrap(), BigUint::from(2u32));
        let free = quotient(vec![vec!["a", "b", "c"]; 1], &[]);
        assert_eq!(
            brute_force_count(&free, &MultiDegree(vec![2])).unwrap(),
            BigUint::from(6u32)
        );
        let unit = GradedQuotient::new(
            Arc::new(BlockRingSpec::new(vec![vec!["x"], vec!["y"]]).unwrap()),
            MonomialIdeal::unit(2),
        )
        .unwrap();
        assert!(brute_force_count(&unit, &MultiDegree(vec![3, 1])).unwrap().is_zero());
        assert!(graded_count(&unit, &MultiDegree(vec![0])).is_err());
    }

    #[test]
    fn vanishing() {
        assert!(vanishing_test(&quotient(vec![vec!["x"], vec!["y"]], &[&[("x", 1), ("y", 1)]])));
        let unit = GradedQuotient::new(
            Arc::new(BlockRingSpec::new(vec![vec!["x"]]).unwrap()),
            MonomialIdeal::unit(1),
        )
        .unwrap();
        assert!(vanishing_test(&unit));
        assert!(!vanishing_test(&quotient(vec![vec!["x1", "x2"], vec!["y"]], &[&[("x1", 1), ("y", 1)]])));
        let m = quotient(vec![vec!["x"], vec!["y"]], &[&[("x", 1), ("y", 1)]]);
        assert!(matches!(
            diagonal_profile(&m, &HilbertOptions::default()),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn diagonal_profiles() {
        let opts = HilbertOptions::default();
        let p = diagonal_profile(&quotient(vec![vec!["x", "y"]], &[]), &opts).unwrap();
        assert_eq!(p.ell, 2);
        assert_eq!(p.poly.coefficients(), &[q(1), q(1)]);
        let p = diagonal_profile(
            &quotient(vec![vec!["x1", "x2"], vec!["y"]], &[&[("x1", 1), ("y", 1)]]),
            &opts,
        )
        .unwrap();
        assert_eq!(p.ell, 1);
        assert_eq!(p.poly.coefficients(), &[q(1)]);
    }

    #[test]
    fn polynomials_and_tables() {
        let opts = HilbertOptions::default();
        let a = analyze(&quotient(vec![vec!["x1", "x2"], vec!["y1"]], &[]), &opts).unwrap();
        assert_eq!(a.polynomial.to_string(), "n1 + 1");
        assert_eq!(a.table.get(&[1, 0]), Some(&BigUint::from(1u32)));
        assert_eq!(a.table.get(&[0, 1]), Some(&BigUint::zero()));

        let a = analyze(&quotient(vec![vec!["x"], vec!["y"]], &[]), &opts).unwrap();
        assert_eq!(a.polynomial.to_string(), "1");
        assert_eq!(a.table.entries(), &[(vec![0, 0], BigUint::from(1u32))]);

        for t in 1..=5usize {
            let names: Vec<String> = (1..=t).map(|i| format!("X{i}")).collect();
            let spec = BlockRingSpec::single_block(names).unwrap();
            let m = GradedQuotient::free(Arc::new(spec));
            let table = mixed_multiplicity_table(&m, &opts).unwrap();
            assert_eq!(table.ell, t as u32);
            assert_eq!(table.entries(), &[(vec![t as u32 - 1], BigUint::from(1u32))]);
        }
    }

    #[test]
    fn escalation_is_recorded_and_guarded() {
        // (x^3 y^3) in k[x,y | z]: the count is n1 + 1 up to n1 = 5 and 6 afterwards.
        let m = quotient(vec![vec!["x", "y"], vec!["z"]], &[&[("x", 3), ("y", 3)]]);
        let opts = HilbertOptions {
            base: Some(1),
            window: 5,
            ..HilbertOptions::default()
        };
        let a = analyze(&m, &opts).unwrap();
        assert_eq!(a.polynomial.to_string(), "6");
        assert_eq!(a.escalations, vec![vec![1, 1], vec![2, 2], vec![4, 4]]);
        let p = diagonal_profile(&m, &opts).unwrap();
        assert_eq!((p.ell, p.base, p.escalations), (1, 8, vec![1, 2, 4]));
        let tight = HilbertOptions {
            max_base: 4,
            ..opts
        };
        assert!(matches!(analyze(&m, &tight), Err(Error::Guard(_))));
    }
}
