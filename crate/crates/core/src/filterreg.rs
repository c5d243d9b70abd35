//! Filter-regular variables with respect to `S_{++}`, sequence search, and the
//! positivity pipeline that reads a mixed multiplicity off a cut quotient.
//!
//! For `M = R/I`, a variable `x` is filter-regular when `(I : x) ⊆ I : Q^∞`
//! with `Q` the ideal of one-variable-per-block products. Only variables are
//! ever tried, so every quotient stays monomial; failing to find a variable
//! sequence says nothing about the mixed multiplicity itself.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::hilbert::{analyze, diagonal_profile, graded_count, vanishing_test, GradedQuotient, HilbertOptions};
use crate::kernel::{MonomialIdeal, MultiDegree, Var};
use crate::poly::as_natural;

pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Debug, Clone)]
pub struct FilterRegOptions {
    /// Maximum number of filter-regularity tests per search.
    pub budget: usize,
    pub hilbert: HilbertOptions,
}

impl Default for FilterRegOptions {
    fn default() -> Self {
        FilterRegOptions {
            budget: DEFAULT_BUDGET,
            hilbert: HilbertOptions::default(),
        }
    }
}

/// Evidence for one step `x` applied to the current quotient `R/I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterRegularStep {
    pub variable: Var,
    pub block: usize,
    /// `I : x`
    pub colon: MonomialIdeal,
    /// `I : Q^∞`
    pub saturation: MonomialIdeal,
    pub inclusion_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterRegularCertificate {
    pub steps: Vec<FilterRegularStep>,
    pub type_vector: Vec<u32>,
    pub final_quotient: GradedQuotient,
}

impl FilterRegularCertificate {
    pub fn variables(&self) -> Vec<Var> {
        self.steps.iter().map(|s| s.variable).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

fn type_vector_of(m: &GradedQuotient, vars: &[Var]) -> Vec<u32> {
    let mut ty = vec![0u32; m.num_blocks()];
    for &v in vars {
        ty[m.spec().block_of(v)] += 1;
    }
    ty
}

fn check_var(m: &GradedQuotient, x: Var) -> Result<()> {
    if x >= m.spec().num_vars() {
        return Err(Error::Validation(format!("variable index {x} out of range")));
    }
    Ok(())
}

/// Colon, saturation and inclusion for `x` on `m`.
pub fn filter_regular_evidence(m: &GradedQuotient, x: Var) -> Result<FilterRegularStep> {
    check_var(m, x)?;
    if vanishing_test(m) {
        return Err(Error::Degenerate(format!(
            "filter-regularity of `{}` is undefined: S_(1,...,1) lies in the radical of the annihilator",
            m.spec().var_name(x)
        )));
    }
    let colon = m.ideal().colon_by_monomial(&m.spec().variable(x));
    let saturation = m.saturated().ideal().clone();
    let inclusion_holds = colon.is_subset_of(&saturation);
    Ok(FilterRegularStep {
        variable: x,
        block: m.spec().block_of(x),
        colon,
        saturation,
        inclusion_holds,
    })
}

pub fn is_filter_regular(m: &GradedQuotient, x: Var) -> Result<bool> {
    Ok(filter_regular_evidence(m, x)?.inclusion_holds)
}

/// `M / (xs) M`, i.e. `R / (I + (xs))`.
pub fn cut(m: &GradedQuotient, xs: &[Var]) -> GradedQuotient {
    let spec = m.spec();
    m.with_ideal(m.ideal().add_generators(xs.iter().map(|&v| spec.variable(v))))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceCheck {
    Verified(FilterRegularCertificate),
    /// Step `index` (0-based) failed the saturation inclusion.
    NotFilterRegular {
        index: usize,
        evidence: FilterRegularStep,
    },
    /// The quotient before step `index` already has vanishing large pieces.
    VanishingBefore { index: usize },
}

/// Checks a given sequence step by step on the successive cuts.
pub fn verify_sequence(m: &GradedQuotient, xs: &[Var]) -> Result<SequenceCheck> {
    let mut current = m.clone();
    let mut steps = Vec::with_capacity(xs.len());
    for (index, &x) in xs.iter().enumerate() {
        check_var(m, x)?;
        if vanishing_test(&current) {
            return Ok(SequenceCheck::VanishingBefore { index });
        }
        let evidence = filter_regular_evidence(&current, x)?;
        if !evidence.inclusion_holds {
            return Ok(SequenceCheck::NotFilterRegular { index, evidence });
        }
        current = cut(&current, &[x]);
        steps.push(evidence);
    }
    Ok(SequenceCheck::Verified(FilterRegularCertificate {
        steps,
        type_vector: type_vector_of(m, xs),
        final_quotient: current,
    }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceSearch {
    Found(FilterRegularCertificate),
    /// The whole search space was explored without success.
    NotFound,
    BudgetExhausted,
}

/// Depth-first search shared by the sequence, witness and exploration modes.
/// The quotient after a step depends only on the set of variables cut, so
/// sets are memoized.
struct Walker<'a> {
    root: &'a GradedQuotient,
    budget: usize,
    tests: usize,
    exhausted: bool,
    dead: HashSet<Vec<Var>>,
}

impl<'a> Walker<'a> {
    fn new(root: &'a GradedQuotient, budget: usize) -> Self {
        Walker {
            root,
            budget,
            tests: 0,
            exhausted: false,
            dead: HashSet::new(),
        }
    }

    fn key(chosen: &[FilterRegularStep], v: Var) -> Vec<Var> {
        let mut k: Vec<Var> = chosen.iter().map(|s| s.variable).chain([v]).collect();
        k.sort_unstable();
        k
    }

    /// Candidate steps in block-major, ascending-index order.
    fn candidates(&self, chosen: &[FilterRegularStep], allowed: &[u32]) -> Vec<Var> {
        let spec = self.root.spec();
        let used: BTreeSet<Var> = chosen.iter().map(|s| s.variable).collect();
        (0..spec.num_blocks())
            .filter(|&b| allowed[b] > 0)
            .flat_map(|b| spec.block_range(b))
            .filter(|v| !used.contains(v))
            .collect()
    }

    fn test(&mut self, current: &GradedQuotient, v: Var) -> Result<Option<FilterRegularStep>> {
        if self.tests >= self.budget {
            self.exhausted = true;
            return Ok(None);
        }
        self.tests += 1;
        let step = filter_regular_evidence(current, v)?;
        Ok(step.inclusion_holds.then_some(step))
    }

    /// Looks for a sequence using exactly `remaining[b]` variables of block `b`.
    fn exact(
        &mut self,
        current: &GradedQuotient,
        chosen: &mut Vec<FilterRegularStep>,
        remaining: &mut [u32],
    ) -> Result<Option<GradedQuotient>> {
        if remaining.iter().all(|&r| r == 0) {
            return Ok(Some(current.clone()));
        }
        if vanishing_test(current) {
            return Ok(None);
        }
        for v in self.candidates(chosen, remaining) {
            let key = Self::key(chosen, v);
            if self.dead.contains(&key) {
                continue;
            }
            let Some(step) = self.test(current, v)? else {
                if self.exhausted {
                    return Ok(None);
                }
                continue;
            };
            let b = step.block;
            let next = cut(current, &[v]);
            chosen.push(step);
            remaining[b] -= 1;
            let found = self.exact(&next, chosen, remaining)?;
            remaining[b] += 1;
            if found.is_some() {
                return Ok(found);
            }
            chosen.pop();
            if self.exhausted {
                return Ok(None);
            }
            self.dead.insert(key);
        }
        Ok(None)
    }

    /// Looks for a non-empty sequence using at most `allowed[b]` variables of
    /// block `b` whose cut has vanishing large pieces.
    fn blocking(
        &mut self,
        current: &GradedQuotient,
        chosen: &mut Vec<FilterRegularStep>,
        allowed: &mut [u32],
    ) -> Result<Option<GradedQuotient>> {
        for v in self.candidates(chosen, allowed) {
            let key = Self::key(chosen, v);
            if self.dead.contains(&key) {
                continue;
            }
            let Some(step) = self.test(current, v)? else {
                if self.exhausted {
                    return Ok(None);
                }
                continue;
            };
            let b = step.block;
            let next = cut(current, &[v]);
            chosen.push(step);
            if vanishing_test(&next) {
                return Ok(Some(next));
            }
            allowed[b] -= 1;
            let found = self.blocking(&next, chosen, allowed)?;
            allowed[b] += 1;
            if found.is_some() {
                return Ok(found);
            }
            chosen.pop();
            if self.exhausted {
                return Ok(None);
            }
            self.dead.insert(key);
        }
        Ok(None)
    }

    /// Visits every reachable set once, recording lengths of maximal sequences.
    fn explore(
        &mut self,
        current: &GradedQuotient,
        chosen: &mut Vec<FilterRegularStep>,
        found: &mut BTreeMap<usize, Vec<Var>>,
    ) -> Result<()> {
        let all = vec![1u32; self.root.num_blocks()];
        for v in self.candidates(chosen, &all) {
            let key = Self::key(chosen, v);
            if self.dead.contains(&key) {
                continue;
            }
            let Some(step) = self.test(current, v)? else {
                if self.exhausted {
                    return Ok(());
                }
                continue;
            };
            self.dead.insert(key);
            let next = cut(current, &[v]);
            chosen.push(step);
            if vanishing_test(&next) {
                found
                    .entry(chosen.len())
                    .or_insert_with(|| chosen.iter().map(|s| s.variable).collect());
            } else {
                self.explore(&next, chosen, found)?;
            }
            chosen.pop();
            if self.exhausted {
                return Ok(());
            }
        }
        Ok(())
    }
}

fn check_type(m: &GradedQuotient, ty: &[u32]) -> Result<()> {
    if ty.len() != m.num_blocks() {
        return Err(Error::Validation(format!(
            "type has {} entries but the ring has {} blocks",
            ty.len(),
            m.num_blocks()
        )));
    }
    Ok(())
}

/// Backtracking search for a filter-regular variable sequence with `ty[b]`
/// members in block `b`.
pub fn find_sequence(m: &GradedQuotient, ty: &[u32], opts: &FilterRegOptions) -> Result<SequenceSearch> {
    check_type(m, ty)?;
    let length: u32 = ty.iter().sum();
    if length > 0 {
        let ell = diagonal_profile(m, &opts.hilbert)?.ell;
        if length > ell - 1 {
            return Err(Error::Precondition(format!(
                "type of length {length} exceeds ℓ - 1 = {}",
                ell - 1
            )));
        }
    }
    let mut walker = Walker::new(m, opts.budget);
    let mut chosen = Vec::new();
    let mut remaining = ty.to_vec();
    match walker.exact(m, &mut chosen, &mut remaining)? {
        Some(final_quotient) => Ok(SequenceSearch::Found(FilterRegularCertificate {
            steps: chosen,
            type_vector: ty.to_vec(),
            final_quotient,
        })),
        None if walker.exhausted => Ok(SequenceSearch::BudgetExhausted),
        None => Ok(SequenceSearch::NotFound),
    }
}

/// A filter-regular sequence with at most `ty[b]` members in block `b` whose
/// cut has vanishing large pieces. Its existence forces `e(M; ty) = 0`.
pub fn find_blocking_sequence(
    m: &GradedQuotient,
    ty: &[u32],
    opts: &FilterRegOptions,
) -> Result<SequenceSearch> {
    check_type(m, ty)?;
    if vanishing_test(m) {
        return Err(Error::Degenerate("module is eventually zero".into()));
    }
    let mut walker = Walker::new(m, opts.budget);
    let mut chosen = Vec::new();
    let mut allowed = ty.to_vec();
    match walker.blocking(m, &mut chosen, &mut allowed)? {
        Some(final_quotient) => {
            let vars: Vec<Var> = chosen.iter().map(|s| s.variable).collect();
            Ok(SequenceSearch::Found(FilterRegularCertificate {
                type_vector: type_vector_of(m, &vars),
                steps: chosen,
                final_quotient,
            }))
        }
        None if walker.exhausted => Ok(SequenceSearch::BudgetExhausted),
        None => Ok(SequenceSearch::NotFound),
    }
}

/// Lengths of maximal variable filter-regular sequences met within the budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalLengths {
    /// One example sequence per length.
    pub examples: BTreeMap<usize, Vec<Var>>,
    pub exhausted: bool,
    pub tests: usize,
}

impl MaximalLengths {
    pub fn lengths(&self) -> BTreeSet<usize> {
        self.examples.keys().copied().collect()
    }

    pub fn max(&self) -> Option<usize> {
        self.examples.keys().next_back().copied()
    }
}

pub fn explore_maximal_lengths(m: &GradedQuotient, budget: usize) -> Result<MaximalLengths> {
    if vanishing_test(m) {
        return Err(Error::Degenerate("module is eventually zero".into()));
    }
    let mut walker = Walker::new(m, budget);
    let mut examples = BTreeMap::new();
    walker.explore(m, &mut Vec::new(), &mut examples)?;
    Ok(MaximalLengths {
        examples,
        exhausted: walker.exhausted,
        tests: walker.tests,
    })
}

/// `dim_k` of the diagonal piece `n` of `M / (0 :_M S_{++}^∞)`.
pub fn saturated_diagonal_length(m: &GradedQuotient, n: u32) -> Result<BigUint> {
    graded_count(&m.saturated(), &MultiDegree::diagonal(m.num_blocks(), n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stabilization {
    /// Earliest index from which the saturated diagonal length is constant.
    pub index: u32,
    pub value: BigUint,
    /// Last index checked.
    pub checked_through: u32,
}

/// Earliest `n_0` with the saturated diagonal length equal to its eventual
/// constant on `[n_0, base + window]`. Requires a one-dimensional diagonal.
pub fn stabilization_index(m: &GradedQuotient, opts: &HilbertOptions) -> Result<Stabilization> {
    let sat = m.saturated();
    let profile = diagonal_profile(&sat, opts)?;
    if profile.ell != 1 {
        return Err(Error::Precondition(format!(
            "stabilization index needs a one-dimensional diagonal module, got ℓ = {}",
            profile.ell
        )));
    }
    let value = as_natural(&profile.poly.coefficient(0))
        .ok_or_else(|| Error::Internal("constant diagonal length is not a natural number".into()))?;
    let last = profile.base + profile.window;
    let mut index = last;
    for n in (0..=last).rev() {
        let len = graded_count(&sat, &MultiDegree::diagonal(m.num_blocks(), n))?;
        if len != value {
            break;
        }
        index = n;
    }
    if graded_count(&sat, &MultiDegree::diagonal(m.num_blocks(), last))? != value {
        return Err(Error::Internal("saturated diagonal length is not stable".into()));
    }
    Ok(Stabilization {
        index,
        value,
        checked_through: last,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `e` computed as a saturated diagonal length after cutting by `certificate`.
    Positive {
        e: BigUint,
        certificate: FilterRegularCertificate,
        stabilization: Stabilization,
    },
    /// `e = 0`; `witness`, when present, is a filter-regular sequence of
    /// smaller or equal type whose cut vanishes.
    Zero {
        witness: Option<FilterRegularCertificate>,
    },
    /// The coefficient is positive but no variable sequence of this type was
    /// found; `exhausted` tells whether the search ran out of budget.
    PositiveWithoutVariableSequence { exhausted: bool },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityReport {
    pub type_vector: Vec<u32>,
    pub ell: u32,
    /// Value read from the Hilbert polynomial; authoritative.
    pub coefficient_e: BigUint,
    pub verdict: Verdict,
}

pub fn positivity_certificate(
    m: &GradedQuotient,
    ty: &[u32],
    opts: &FilterRegOptions,
) -> Result<PositivityReport> {
    check_type(m, ty)?;
    let analysis = analyze(m, &opts.hilbert)?;
    positivity_with_table(m, ty, analysis.profile.ell, &analysis.table, opts)
}

/// As [`positivity_certificate`], reusing an already computed table.
pub fn positivity_with_table(
    m: &GradedQuotient,
    ty: &[u32],
    ell: u32,
    table: &crate::hilbert::MixedMultiplicityTable,
    opts: &FilterRegOptions,
) -> Result<PositivityReport> {
    check_type(m, ty)?;
    let length: u32 = ty.iter().sum();
    if length != ell - 1 {
        return Err(Error::Precondition(format!(
            "type {ty:?} has length {length}, expected ℓ - 1 = {}",
            ell - 1
        )));
    }
    let coefficient_e = table
        .get(ty)
        .cloned()
        .ok_or_else(|| Error::Internal(format!("type {ty:?} missing from table")))?;
    let verdict = if coefficient_e.is_zero() {
        let witness = match find_blocking_sequence(m, ty, opts)? {
            SequenceSearch::Found(cert) => Some(cert),
            _ => None,
        };
        Verdict::Zero { witness }
    } else {
        match find_sequence(m, ty, opts)? {
            SequenceSearch::Found(certificate) => {
                let cut_module = &certificate.final_quotient;
                let stabilization = stabilization_index(cut_module, &opts.hilbert).map_err(|e| match e {
                    Error::Precondition(msg) => Error::Internal(format!(
                        "cut by a full filter-regular sequence is not one-dimensional: {msg}"
                    )),
                    other => other,
                })?;
                let e = stabilization.value.clone();
                if e != coefficient_e {
                    return Err(Error::Internal(format!(
                        "length pipeline gives e = {e} but the Hilbert polynomial gives {coefficient_e}"
                    )));
                }
                Verdict::Positive {
                    e,
                    certificate,
                    stabilization,
                }
            }
            SequenceSearch::NotFound => Verdict::PositiveWithoutVariableSequence { exhausted: false },
            SequenceSearch::BudgetExhausted => {
                Verdict::PositiveWithoutVariableSequence { exhausted: true }
            }
        }
    };
    Ok(PositivityReport {
        type_vector: ty.to_vec(),
        ell,
        coefficient_e,
        verdict,
    })
}

/// Base of a window on which the Hilbert functions of all given quotients
/// provably agree with their polynomials.
pub fn common_polynomiality_bound(ms: &[&GradedQuotient]) -> Vec<u32> {
    let d = ms.first().map_or(0, |m| m.num_blocks());
    let mut base = vec![0u32; d];
    for m in ms {
        for (b, v) in base.iter_mut().zip(m.polynomiality_bound().entries()) {
            *b = (*b).max(*v);
        }
    }
    base
}

/// Box `base + [0, b_i - 1 + extra]` per axis; enough points to certify that
/// a difference of Hilbert polynomials vanishes identically.
fn certifying_window(m: &GradedQuotient, base: &[u32], extra: u32) -> Vec<Vec<u32>> {
    let sizes = m.spec().block_sizes();
    let mut points = vec![Vec::new()];
    for (axis, &b) in base.iter().enumerate() {
        let top = b + sizes[axis] as u32 - 1 + extra;
        points = points
            .into_iter()
            .flat_map(|p: Vec<u32>| {
                (b..=top).map(move |n| {
                    let mut q = p.clone();
                    q.push(n);
                    q
                })
            })
            .collect();
    }
    points
}

/// Counting-side test that `(0 :_M x)` has vanishing large pieces: the
/// difference `dim (R/I)_n - dim (R/(I:x))_n` must be zero on a window
/// beyond the polynomiality bound of both quotients.
pub fn colon_vanishes_on_window(m: &GradedQuotient, x: Var, extra: u32) -> Result<bool> {
    check_var(m, x)?;
    let colon = m.with_ideal(m.ideal().colon_by_monomial(&m.spec().variable(x)));
    let base = common_polynomiality_bound(&[m, &colon]);
    for p in certifying_window(m, &base, extra) {
        let n = MultiDegree(p);
        if graded_count(m, &n)? != graded_count(&colon, &n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Same test for `0 :_M S_{++}^∞`, which always has vanishing large pieces.
pub fn saturation_vanishes_on_window(m: &GradedQuotient, extra: u32) -> Result<bool> {
    let sat = m.saturated();
    let base = common_polynomiality_bound(&[m, &sat]);
    for p in certifying_window(m, &base, extra) {
        let n = MultiDegree(p);
        if graded_count(m, &n)? != graded_count(&sat, &n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Points of the certifying window where
/// `dim (M/xM)_n = dim M_n - dim M_{n - e_i}` fails, for `x` in block `i`.
pub fn length_drop_mismatches(m: &GradedQuotient, x: Var, extra: u32) -> Result<Vec<MultiDegree>> {
    check_var(m, x)?;
    let block = m.spec().block_of(x);
    let cut_module = cut(m, &[x]);
    let colon = m.with_ideal(m.ideal().colon_by_monomial(&m.spec().variable(x)));
    let mut base = common_polynomiality_bound(&[m, &cut_module, &colon]);
    base[block] += 1;
    let mut bad = Vec::new();
    for p in certifying_window(m, &base, extra) {
        let n = MultiDegree(p.clone());
        let mut prev = p;
        prev[block] -= 1;
        let lhs = graded_count(&cut_module, &n)?;
        let full = graded_count(m, &n)?;
        let shifted = graded_count(m, &MultiDegree(prev))?;
        if full < shifted || lhs != full - shifted {
            bad.push(n);
        }
    }
    Ok(bad)
}
