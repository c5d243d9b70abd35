//! Mixed multiplicities of an `m`-primary ideal `J` and ideals `I_1, ..., I_s`
//! of a polynomial ring `R`, read from the lengths of
//! `J^n I_1^{n_1}...I_s^{n_s} / J^{n+1} I_1^{n_1}...I_s^{n_s}`.
//!
//! All ideals are monomial and `R` is viewed locally at the homogeneous
//! maximal ideal `m`. Since `R` is a domain and every `I_i` is nonzero,
//! `0 : I^∞ = 0` and `q` is the number of variables.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hilbert::MixedMultiplicityTable;
use crate::kernel::{compositions, monomials_of_degree, BlockRingSpec, Monomial, MonomialIdeal, Var};
use crate::poly::{as_natural, factorial, fit_tensor_grid, fit_univariate, grid_points, MultiPolynomial};

pub const DEFAULT_DEGREE_CAP: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealOptions {
    /// Initial grid base for every counter; defaults per counter to the
    /// maximal generator degree plus one.
    pub base: Option<u32>,
    pub window: u32,
    pub max_base: u32,
    /// Largest monomial degree ever enumerated.
    pub degree_cap: u32,
}

impl Default for IdealOptions {
    fn default() -> Self {
        IdealOptions {
            base: None,
            window: 3,
            max_base: 64,
            degree_cap: DEFAULT_DEGREE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSystem {
    spec: Arc<BlockRingSpec>,
    j: MonomialIdeal,
    ideals: Vec<MonomialIdeal>,
    primary_exponent: u32,
}

/// Whether `ideal` contains a pure power of every variable.
pub fn is_m_primary(ideal: &MonomialIdeal) -> bool {
    (0..ideal.num_vars()).all(|v| {
        ideal
            .generators()
            .iter()
            .any(|g| g.support().eq([v]))
            || ideal.is_unit()
    })
}

fn degree_u32(ideal: &MonomialIdeal) -> u32 {
    u32::try_from(ideal.max_generator_degree()).unwrap_or(u32::MAX)
}

/// Least `c` with `m^c ⊆ ideal`; the ideal must be `m`-primary.
fn primary_exponent(ideal: &MonomialIdeal, cap: u32) -> Result<u32> {
    for c in 0..=cap {
        if monomials_of_degree(ideal.num_vars(), c)
            .iter()
            .all(|m| ideal.contains(m))
        {
            return Ok(c);
        }
    }
    Err(Error::Resource(format!(
        "primary exponent exceeds the degree cap {cap}"
    )))
}

pub fn validate_system(
    spec: Arc<BlockRingSpec>,
    j: MonomialIdeal,
    ideals: Vec<MonomialIdeal>,
) -> Result<IdealSystem> {
    let nvars = spec.num_vars();
    if j.num_vars() != nvars || ideals.iter().any(|i| i.num_vars() != nvars) {
        return Err(Error::Validation("ideal arity does not match the ring".into()));
    }
    if j.is_unit() || !is_m_primary(&j) {
        return Err(Error::Validation(format!(
            "{} is not primary to the maximal ideal",
            j.format(&spec)
        )));
    }
    if let Some(i) = ideals.iter().position(MonomialIdeal::is_zero) {
        return Err(Error::Validation(format!("ideal I{} is zero", i + 1)));
    }
    let primary_exponent = primary_exponent(&j, DEFAULT_DEGREE_CAP)?;
    Ok(IdealSystem {
        spec,
        j,
        ideals,
        primary_exponent,
    })
}

impl IdealSystem {
    pub fn spec(&self) -> &BlockRingSpec {
        &self.spec
    }

    pub fn shared_spec(&self) -> Arc<BlockRingSpec> {
        Arc::clone(&self.spec)
    }

    pub fn j(&self) -> &MonomialIdeal {
        &self.j
    }

    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    /// `I_0 = J`, `I_i` for `i ≥ 1`.
    pub fn member(&self, i: usize) -> &MonomialIdeal {
        if i == 0 {
            &self.j
        } else {
            &self.ideals[i - 1]
        }
    }

    pub fn s(&self) -> usize {
        self.ideals.len()
    }

    pub fn q(&self) -> u32 {
        self.spec.num_vars() as u32
    }

    /// Least `c` with `m^c ⊆ J`.
    pub fn primary_exponent(&self) -> u32 {
        self.primary_exponent
    }

    /// `I = I_1 ... I_s`.
    pub fn product_ideal(&self) -> Result<MonomialIdeal> {
        let mut acc = MonomialIdeal::unit(self.spec.num_vars());
        for i in &self.ideals {
            acc = acc.product(i)?;
        }
        Ok(acc)
    }

    /// `I_0^{n_0} I_1^{n_1} ... I_s^{n_s}`.
    pub fn power_product(&self, n: &[u32]) -> Result<MonomialIdeal> {
        self.check_tuple(n)?;
        let mut acc = MonomialIdeal::unit(self.spec.num_vars());
        for (i, &k) in n.iter().enumerate() {
            if k > 0 {
                acc = acc.product(&self.member(i).power(k)?)?;
            }
        }
        Ok(acc)
    }

    fn check_tuple(&self, n: &[u32]) -> Result<()> {
        if n.len() != self.s() + 1 {
            return Err(Error::Validation(format!(
                "expected {} exponents, got {}",
                self.s() + 1,
                n.len()
            )));
        }
        Ok(())
    }

    pub fn format(&self) -> String {
        let spec = &self.spec;
        let rest: Vec<String> = self.ideals.iter().map(|i| i.format(spec)).collect();
        format!("({}; {})", self.j.format(spec), rest.join(", "))
    }
}

/// `dim_k J^n ΠI_i^{n_i} / J^{n+1} ΠI_i^{n_i}`.
pub fn t_length(sys: &IdealSystem, n: &[u32], opts: &IdealOptions) -> Result<BigUint> {
    let a = sys.power_product(n)?;
    let b = a.product(sys.j())?;
    let c = sys.primary_exponent();
    // Every monomial of A outside B is g*w with g a generator of A and deg w < c.
    let top = a.max_generator_degree() + u64::from(c);
    if top > u64::from(opts.degree_cap) {
        return Err(Error::Resource(format!(
            "enumeration up to degree {top} exceeds the cap {}",
            opts.degree_cap
        )));
    }
    let tails: Vec<Monomial> = (0..c)
        .flat_map(|t| monomials_of_degree(a.num_vars(), t))
        .collect();
    let mut seen: HashSet<Monomial> = HashSet::new();
    for g in a.generators() {
        for w in &tails {
            let m = g.try_mul(w)?;
            if !b.contains(&m) {
                seen.insert(m);
            }
        }
    }
    Ok(BigUint::from(seen.len()))
}

/// Number of monomials outside an `m`-primary monomial ideal.
pub fn colength(ideal: &MonomialIdeal, cap: u32) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for t in 0..=cap {
        let outside = monomials_of_degree(ideal.num_vars(), t)
            .iter()
            .filter(|m| !ideal.contains(m))
            .count();
        if outside == 0 {
            return Ok(total);
        }
        total += outside;
    }
    Err(Error::Resource(format!(
        "colength enumeration exceeds the degree cap {cap}"
    )))
}

/// `dim_k R / J^{n_0} ΠI_i^{n_i}` by enumeration.
pub fn direct_colength(sys: &IdealSystem, n: &[u32], opts: &IdealOptions) -> Result<BigUint> {
    sys.check_tuple(n)?;
    for (i, &k) in n.iter().enumerate().skip(1) {
        if k > 0 && !is_m_primary(sys.member(i)) {
            return Err(Error::Precondition(format!(
                "I{i} is not primary to the maximal ideal but has exponent {k}"
            )));
        }
    }
    colength(&sys.power_product(n)?, opts.degree_cap)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BhattacharyaTable {
    pub q: u32,
    pub polynomial: MultiPolynomial,
    /// Types `(k_0, ..., k_s)` with `Σ = q - 1` mapped to
    /// `e(J^[k_0+1], I_1^[k_1], ..., I_s^[k_s]; R)`.
    pub table: MixedMultiplicityTable,
    /// Grid bases tried before the accepted one.
    pub escalations: Vec<Vec<u32>>,
}

impl BhattacharyaTable {
    pub fn get(&self, ty: &[u32]) -> Option<&BigUint> {
        self.table.get(ty)
    }
}

fn initial_ideal_base(sys: &IdealSystem, opts: &IdealOptions) -> Vec<u32> {
    (0..=sys.s())
        .map(|i| {
            opts.base
                .unwrap_or_else(|| degree_u32(sys.member(i)) + 1)
        })
        .collect()
}

pub fn bhattacharya_table(sys: &IdealSystem, opts: &IdealOptions) -> Result<BhattacharyaTable> {
    let q = sys.q();
    let degree = q - 1;
    let mut base = initial_ideal_base(sys, opts);
    let mut escalations = Vec::new();
    loop {
        if let Some(b) = base.iter().find(|&&b| b > opts.max_base) {
            return Err(Error::Guard(format!(
                "T-algebra lengths not stabilized below base {b} (max base {})",
                opts.max_base
            )));
        }
        let coeffs = fit_tensor_grid(&base, degree, |p| Ok(BigInt::from(t_length(sys, p, opts)?)))?;
        let poly = MultiPolynomial::new(sys.s() + 1, coeffs, base.clone(), opts.window);
        let mut valid = poly.total_degree() == Some(degree);
        if valid {
            for p in grid_points(&base, degree + opts.window) {
                if p.iter().zip(&base).all(|(x, b)| x - b <= degree) {
                    continue;
                }
                let point: Vec<i64> = p.iter().map(|&x| i64::from(x)).collect();
                let value = BigRational::from_integer(BigInt::from(t_length(sys, &p, opts)?));
                if poly.eval(&point) != value {
                    valid = false;
                    break;
                }
            }
        }
        if !valid {
            escalations.push(base.clone());
            base = base.iter().map(|&b| (2 * b).max(1)).collect();
            continue;
        }
        let mut entries = Vec::new();
        for k in compositions(degree, sys.s() + 1) {
            let weight: BigUint = k.iter().map(|&ki| factorial(ki)).product();
            let value = poly.coefficient(&k) * BigRational::from_integer(BigInt::from(weight));
            let e = as_natural(&value).ok_or_else(|| {
                Error::Internal(format!(
                    "mixed multiplicity of type {k:?} is {value}, not a non-negative integer"
                ))
            })?;
            entries.push((k, e));
        }
        let table = MixedMultiplicityTable::new(q, entries);
        let mut top = vec![0u32; sys.s() + 1];
        top[0] = degree;
        let expected = hilbert_samuel(sys.j(), &MonomialIdeal::zero(sys.spec().num_vars()), opts)?;
        if table.get(&top) != Some(&expected.multiplicity) {
            return Err(Error::Internal(format!(
                "e(J^[q], I^[0]) = {:?} differs from e(J; R) = {}",
                table.get(&top),
                expected.multiplicity
            )));
        }
        return Ok(BhattacharyaTable {
            q,
            polynomial: poly,
            table,
            escalations,
        });
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertSamuel {
    /// `e(J; R/A)`.
    pub multiplicity: BigUint,
    /// `dim R/A`, the degree of `n ↦ dim_k R/(A + J^{n+1})`.
    pub dimension: u32,
    pub base: u32,
}

/// `e(J; R/A)` from a fit of `n ↦ dim_k R/(A + J^{n+1})`.
pub fn hilbert_samuel(j: &MonomialIdeal, a: &MonomialIdeal, opts: &IdealOptions) -> Result<HilbertSamuel> {
    if a.is_unit() {
        return Err(Error::Degenerate("R/A is the zero ring".into()));
    }
    if !is_m_primary(&j.sum(a)) {
        return Err(Error::Precondition(
            "J is not primary to the maximal ideal modulo A".into(),
        ));
    }
    let q = j.num_vars() as u32;
    let mut base = opts.base.unwrap_or_else(|| degree_u32(j)).max(1);
    let colength_at = |n: u32| -> Result<BigInt> {
        let power = j.power(n + 1)?;
        Ok(BigInt::from(colength(&a.sum(&power), opts.degree_cap)?))
    };
    loop {
        if base > opts.max_base {
            return Err(Error::Guard(format!(
                "Hilbert-Samuel function not stabilized below base {base} (max base {})",
                opts.max_base
            )));
        }
        let poly = fit_univariate(base, q, colength_at)?;
        let mut valid = !poly.is_zero();
        for n in base + q + 1..=base + q + opts.window {
            if !valid {
                break;
            }
            valid = poly.eval_int(i64::from(n)) == BigRational::from_integer(colength_at(n)?);
        }
        if valid {
            let dimension = poly.degree().unwrap_or(0) as u32;
            let value = poly.leading_coefficient()
                * BigRational::from_integer(BigInt::from(factorial(dimension)));
            let multiplicity = as_natural(&value)
                .filter(|e| !e.is_zero())
                .ok_or_else(|| {
                    Error::Internal(format!("Hilbert-Samuel multiplicity {value} is not a positive integer"))
                })?;
            return Ok(HilbertSamuel {
                multiplicity,
                dimension,
                base,
            });
        }
        base *= 2;
    }
}

/// Which equality of the superficial-element definition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuperficialCondition {
    /// `(J I^{n+e_i} : x) ∩ I^n = J I^n`
    Colon,
    /// `(x) ∩ I^{n+e_i} = x I^n`
    Intersection,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuperficialOutcome {
    /// Both equalities hold for every tuple in `[low, high]^{s+1}`.
    Verified { low: u32, high: u32 },
    FailedAt {
        tuple: Vec<u32>,
        condition: SuperficialCondition,
    },
}

impl SuperficialOutcome {
    pub fn is_verified(&self) -> bool {
        matches!(self, SuperficialOutcome::Verified { .. })
    }
}

/// Default low corner: the maximal generator degree among `J, I_1, ..., I_s`.
pub fn default_window_start(sys: &IdealSystem) -> u32 {
    (0..=sys.s())
        .map(|i| degree_u32(sys.member(i)))
        .max()
        .unwrap_or(0)
}

fn window_tuples(sys: &IdealSystem, low: u32, high: u32) -> Vec<Vec<u32>> {
    grid_points(&vec![low; sys.s() + 1], high - low)
}

fn membership(sys: &IdealSystem, modulo: &MonomialIdeal, x: Var, i: usize) -> Result<Monomial> {
    if x >= sys.spec().num_vars() {
        return Err(Error::Validation(format!("variable index {x} out of range")));
    }
    if i > sys.s() {
        return Err(Error::Validation(format!("index {i} exceeds s = {}", sys.s())));
    }
    let xm = sys.spec().variable(x);
    if !sys.member(i).sum(modulo).contains(&xm) {
        return Err(Error::Precondition(format!(
            "{} is not in I{i}",
            sys.spec().var_name(x)
        )));
    }
    Ok(xm)
}

fn colon_condition(sys: &IdealSystem, modulo: &MonomialIdeal, xm: &Monomial, i: usize, n: &[u32]) -> Result<bool> {
    let mut up = n.to_vec();
    up[i] += 1;
    let p = sys.power_product(n)?;
    let jp_up = sys.j().product(&sys.power_product(&up)?)?;
    let lhs = jp_up.sum(modulo).colon_by_monomial(xm).intersect(&p.sum(modulo));
    Ok(lhs == sys.j().product(&p)?.sum(modulo))
}

fn intersection_condition(
    sys: &IdealSystem,
    modulo: &MonomialIdeal,
    xm: &Monomial,
    i: usize,
    n: &[u32],
) -> Result<bool> {
    let mut up = n.to_vec();
    up[i] += 1;
    let x_ideal = MonomialIdeal::new(sys.spec().num_vars(), [xm.clone()]);
    let lhs = x_ideal.sum(modulo).intersect(&sys.power_product(&up)?.sum(modulo));
    Ok(lhs == x_ideal.product(&sys.power_product(n)?)?.sum(modulo))
}

/// Superficial-element test for `x ∈ I_i` in `R/K`, with every ideal replaced
/// by its preimage `+ K`, on the window `[low, low + 2]^{s+1}`.
pub fn superficial_modulo(
    sys: &IdealSystem,
    modulo: &MonomialIdeal,
    x: Var,
    i: usize,
    low: Option<u32>,
) -> Result<SuperficialOutcome> {
    let xm = membership(sys, modulo, x, i)?;
    let low = low.unwrap_or_else(|| default_window_start(sys));
    let high = low + 2;
    for n in window_tuples(sys, low, high) {
        if !colon_condition(sys, modulo, &xm, i, &n)? {
            return Ok(SuperficialOutcome::FailedAt {
                tuple: n,
                condition: SuperficialCondition::Colon,
            });
        }
        if !intersection_condition(sys, modulo, &xm, i, &n)? {
            return Ok(SuperficialOutcome::FailedAt {
                tuple: n,
                condition: SuperficialCondition::Intersection,
            });
        }
    }
    Ok(SuperficialOutcome::Verified { low, high })
}

/// First tuple of the window where the colon equality alone fails.
pub fn colon_condition_failure(
    sys: &IdealSystem,
    x: Var,
    i: usize,
    low: Option<u32>,
) -> Result<Option<Vec<u32>>> {
    let zero = MonomialIdeal::zero(sys.spec().num_vars());
    let xm = membership(sys, &zero, x, i)?;
    let low = low.unwrap_or_else(|| default_window_start(sys));
    for n in window_tuples(sys, low, low + 2) {
        if !colon_condition(sys, &zero, &xm, i, &n)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

pub fn is_superficial(sys: &IdealSystem, x: Var, i: usize, low: Option<u32>) -> Result<SuperficialOutcome> {
    superficial_modulo(sys, &MonomialIdeal::zero(sys.spec().num_vars()), x, i, low)
}

/// Classical `I_i`-superficial test with respect to `(J, I_1, ..., I_s)`:
/// `(I^{n+e_i} : x) ∩ I^{n|n_i=c} = I^n` for tuples of the window with
/// `n_i ≥ c`. Returns the first failing tuple.
pub fn classical_superficial_failure(
    sys: &IdealSystem,
    x: Var,
    i: usize,
    c: u32,
    low: Option<u32>,
) -> Result<Option<Vec<u32>>> {
    let xm = membership(sys, &MonomialIdeal::zero(sys.spec().num_vars()), x, i)?;
    let low = low.unwrap_or_else(|| default_window_start(sys));
    for n in window_tuples(sys, low, low + 2) {
        if n[i] < c {
            continue;
        }
        let mut up = n.clone();
        up[i] += 1;
        let mut capped = n.clone();
        capped[i] = c;
        let lhs = sys
            .power_product(&up)?
            .colon_by_monomial(&xm)
            .intersect(&sys.power_product(&capped)?);
        if lhs != sys.power_product(&n)? {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem45Report {
    pub type_vector: Vec<u32>,
    /// `(variable, index)` pairs in order.
    pub sequence: Vec<(Var, usize)>,
    pub steps: Vec<SuperficialOutcome>,
    pub table_entry: BigUint,
    /// `(x_1, ..., x_t) : I^∞`
    pub saturated: MonomialIdeal,
    pub expected_dimension: u32,
    pub hilbert_samuel: HilbertSamuel,
}

impl Theorem45Report {
    pub fn holds(&self) -> bool {
        self.table_entry == self.hilbert_samuel.multiplicity
    }
}

/// Compares `e(J^[k_0+1], I_1^[k_1], ..., I_s^[k_s]; R)` with
/// `e(J; R/(x_1, ..., x_t) : I^∞)` for a superficial variable sequence.
pub fn theorem45_check(
    sys: &IdealSystem,
    ty: &[u32],
    seq: &[(Var, usize)],
    opts: &IdealOptions,
) -> Result<Theorem45Report> {
    sys.check_tuple(ty)?;
    let table = bhattacharya_table(sys, opts)?;
    let entry = table
        .get(ty)
        .cloned()
        .ok_or_else(|| Error::Validation(format!("type {ty:?} does not sum to q - 1")))?;
    if entry.is_zero() {
        return Err(Error::Precondition(format!(
            "mixed multiplicity of type {ty:?} is zero"
        )));
    }
    let mut counts = vec![0u32; sys.s() + 1];
    for &(_, i) in seq {
        if i == 0 || i > sys.s() {
            return Err(Error::Precondition(format!(
                "sequence index {i} must lie in 1..={}",
                sys.s()
            )));
        }
        counts[i] += 1;
    }
    if counts[1..] != ty[1..] {
        return Err(Error::Precondition(format!(
            "sequence has {:?} members per ideal, type asks for {:?}",
            &counts[1..],
            &ty[1..]
        )));
    }
    let nvars = sys.spec().num_vars();
    let mut modulo = MonomialIdeal::zero(nvars);
    let mut steps = Vec::with_capacity(seq.len());
    for (step, &(x, i)) in seq.iter().enumerate() {
        let outcome = superficial_modulo(sys, &modulo, x, i, None)?;
        if let SuperficialOutcome::FailedAt { tuple, condition } = &outcome {
            return Err(Error::Precondition(format!(
                "{} is not superficial at step {} ({condition:?} fails at {tuple:?})",
                sys.spec().var_name(x),
                step + 1
            )));
        }
        steps.push(outcome);
        modulo = modulo.add_generators([sys.spec().variable(x)]);
    }
    let saturated = modulo.saturate_by_ideal(&sys.product_ideal()?)?;
    let expected_dimension = sys.q() - seq.len() as u32;
    let hs = hilbert_samuel(sys.j(), &saturated, opts)?;
    if hs.dimension != expected_dimension {
        return Err(Error::Precondition(format!(
            "dim R/(x_1..x_t) : I^∞ = {} but q - t = {expected_dimension}",
            hs.dimension
        )));
    }
    Ok(Theorem45Report {
        type_vector: ty.to_vec(),
        sequence: seq.to_vec(),
        steps,
        table_entry: entry,
        saturated,
        expected_dimension,
        hilbert_samuel: hs,
    })
}
