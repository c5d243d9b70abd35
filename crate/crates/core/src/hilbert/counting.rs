//! Interchangeable strategies for counting standard monomials in a graded
//! piece, registered by name.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use super::GradedQuotient;
use crate::error::{Error, Result};
use crate::kernel::{count_free_monomials, monomials_of_multidegree, Monomial, MultiDegree};

/// Above this many generators the subset-lcm expansion is not attempted.
pub const MAX_INCLUSION_EXCLUSION_GENERATORS: usize = 22;
/// Cap on distinct lcms kept during the expansion.
const MAX_LCM_TERMS: usize = 1 << 22;
/// Default cap on the number of monomials enumerated for one piece.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 4_000_000;

/// A counter bound to one quotient, ready to evaluate many pieces.
pub trait PieceCounter {
    fn count(&self, n: &[u32]) -> Result<BigUint>;
}

/// A way of computing `dim_k (R/I)_n` for monomial `I`.
pub trait GradedCounter: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    fn prepare<'a>(&self, m: &'a GradedQuotient) -> Result<Box<dyn PieceCounter + 'a>>;

    fn count(&self, m: &GradedQuotient, n: &MultiDegree) -> Result<BigUint> {
        self.prepare(m)?.count(n.entries())
    }
}

/// Signed sum over generator subsets of free counts shifted by the subset lcm.
#[derive(Debug, Clone, Copy, Default)]
pub struct InclusionExclusion;

/// Enumerates every monomial of the piece and tests membership.
#[derive(Debug, Clone, Copy)]
pub struct BruteForce {
    pub limit: u64,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce {
            limit: DEFAULT_ENUMERATION_LIMIT,
        }
    }
}

/// Inclusion-exclusion for small generating sets, enumeration otherwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct Auto;

/// Möbius coefficients of the lcm lattice aggregated by multidegree.
#[derive(Debug, Clone)]
pub struct LcmPlan<'a> {
    quotient: &'a GradedQuotient,
    terms: Vec<(Vec<u32>, i64)>,
}

impl<'a> LcmPlan<'a> {
    pub fn build(quotient: &'a GradedQuotient) -> Result<Self> {
        let ideal = quotient.ideal();
        if ideal.len() > MAX_INCLUSION_EXCLUSION_GENERATORS {
            return Err(Error::Resource(format!(
                "inclusion-exclusion over {} generators (limit {})",
                ideal.len(),
                MAX_INCLUSION_EXCLUSION_GENERATORS
            )));
        }
        let mut lattice: HashMap<Monomial, i64> = HashMap::new();
        lattice.insert(Monomial::one(ideal.num_vars()), 1);
        for g in ideal.generators() {
            let deltas: Vec<(Monomial, i64)> =
                lattice.iter().map(|(m, c)| (m.lcm(g), -c)).collect();
            for (m, c) in deltas {
                *lattice.entry(m).or_insert(0) += c;
            }
            lattice.retain(|_, c| *c != 0);
            if lattice.len() > MAX_LCM_TERMS {
                return Err(Error::Resource(format!(
                    "lcm lattice exceeds {MAX_LCM_TERMS} terms"
                )));
            }
        }
        let spec = quotient.spec();
        let mut by_degree: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for (m, c) in lattice {
            let deg = spec.multidegree_of(&m)?.0;
            *by_degree.entry(deg).or_insert(0) += c;
        }
        let terms = by_degree.into_iter().filter(|(_, c)| *c != 0).collect();
        Ok(LcmPlan { quotient, terms })
    }

    /// `(multidegree, coefficient)` pairs with nonzero coefficient.
    pub fn terms(&self) -> &[(Vec<u32>, i64)] {
        &self.terms
    }
}

impl PieceCounter for LcmPlan<'_> {
    fn count(&self, n: &[u32]) -> Result<BigUint> {
        let spec = self.quotient.spec();
        let mut total = BigInt::zero();
        'terms: for (deg, c) in &self.terms {
            let mut shifted = Vec::with_capacity(n.len());
            for (&ni, &ai) in n.iter().zip(deg) {
                if ai > ni {
                    continue 'terms;
                }
                shifted.push(ni - ai);
            }
            total += BigInt::from(*c) * BigInt::from(count_free_monomials(spec, &MultiDegree(shifted)));
        }
        if total.is_negative() {
            return Err(Error::Internal(format!(
                "negative standard-monomial count at {n:?}"
            )));
        }
        Ok(total.magnitude().clone())
    }
}

struct Enumerator<'a> {
    quotient: &'a GradedQuotient,
    limit: u64,
}

impl PieceCounter for Enumerator<'_> {
    fn count(&self, n: &[u32]) -> Result<BigUint> {
        let spec = self.quotient.spec();
        let n = MultiDegree(n.to_vec());
        let size = count_free_monomials(spec, &n);
        if size > BigUint::from(self.limit) {
            return Err(Error::Resource(format!(
                "piece {n} has {size} monomials (enumeration limit {})",
                self.limit
            )));
        }
        let ideal = self.quotient.ideal();
        let outside = monomials_of_multidegree(spec, &n)
            .iter()
            .filter(|m| !ideal.contains(m))
            .count();
        Ok(BigUint::from(outside))
    }
}

impl GradedCounter for InclusionExclusion {
    fn name(&self) -> &'static str {
        "inclusion-exclusion"
    }

    fn prepare<'a>(&self, m: &'a GradedQuotient) -> Result<Box<dyn PieceCounter + 'a>> {
        Ok(Box::new(LcmPlan::build(m)?))
    }
}

impl GradedCounter for BruteForce {
    fn name(&self) -> &'static str {
        "brute-force"
    }

    fn prepare<'a>(&self, m: &'a GradedQuotient) -> Result<Box<dyn PieceCounter + 'a>> {
        Ok(Box::new(Enumerator {
            quotient: m,
            limit: self.limit,
        }))
    }
}

impl GradedCounter for Auto {
    fn name(&self) -> &'static str {
        "auto"
    }

    fn prepare<'a>(&self, m: &'a GradedQuotient) -> Result<Box<dyn PieceCounter + 'a>> {
        if m.ideal().len() <= MAX_INCLUSION_EXCLUSION_GENERATORS {
            match LcmPlan::build(m) {
                Ok(plan) => return Ok(Box::new(plan)),
                Err(Error::Resource(_)) => {}
                Err(e) => return Err(e),
            }
        }
        BruteForce::default().prepare(m)
    }
}

/// Counting strategies addressable by name.
#[derive(Debug, Clone)]
pub struct CounterRegistry {
    counters: BTreeMap<&'static str, Arc<dyn GradedCounter>>,
}

impl CounterRegistry {
    pub fn empty() -> Self {
        CounterRegistry {
            counters: BTreeMap::new(),
        }
    }

    pub fn with_builtins() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(Auto));
        r.register(Arc::new(InclusionExclusion));
        r.register(Arc::new(BruteForce::default()));
        r
    }

    pub fn register(&mut self, counter: Arc<dyn GradedCounter>) {
        self.counters.insert(counter.name(), counter);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn GradedCounter>> {
        self.counters.get(name).cloned().ok_or_else(|| {
            Error::Validation(format!(
                "unknown counting strategy `{name}` (known: {})",
                self.names().join(", ")
            ))
        })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.counters.keys().copied().collect()
    }
}

impl Default for CounterRegistry {
    fn default() -> Self {
        Self::with_builtins()
    }
}
