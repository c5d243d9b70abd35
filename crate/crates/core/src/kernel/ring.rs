use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use num_bigint::BigUint;
use num_traits::One;

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Index of a variable in the flattened (block-major) variable order.
pub type Var = usize;

/// Multidegree `(n_1, ..., n_d)` of a graded piece.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn zeros(d: usize) -> Self {
        MultiDegree(vec![0; d])
    }

    pub fn diagonal(d: usize, n: u32) -> Self {
        MultiDegree(vec![n; d])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }
}

impl From<Vec<u32>> for MultiDegree {
    fn from(v: Vec<u32>) -> Self {
        MultiDegree(v)
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Variable layout of a standard `d`-graded polynomial ring.
///
/// Block `i` holds the variables of multidegree `e_i`. Variables are stored
/// block-major, so block `i` occupies a contiguous index range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockRingSpec {
    blocks: Vec<Vec<String>>,
    names: Vec<String>,
    block_of: Vec<usize>,
    ranges: Vec<Range<usize>>,
    index: HashMap<String, Var>,
}

impl BlockRingSpec {
    pub fn new<S: Into<String>>(blocks: Vec<Vec<S>>) -> Result<Self> {
        let blocks: Vec<Vec<String>> = blocks
            .into_iter()
            .map(|b| b.into_iter().map(Into::into).collect())
            .collect();
        if blocks.is_empty() {
            return Err(Error::Validation("a ring needs at least one block".into()));
        }
        let mut names = Vec::new();
        let mut block_of = Vec::new();
        let mut ranges = Vec::with_capacity(blocks.len());
        let mut index = HashMap::new();
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Validation(format!("block {} is empty", i + 1)));
            }
            let start = names.len();
            for name in block {
                if index.insert(name.clone(), names.len()).is_some() {
                    return Err(Error::Validation(format!(
                        "variable `{name}` declared twice"
                    )));
                }
                names.push(name.clone());
                block_of.push(i);
            }
            ranges.push(start..names.len());
        }
        Ok(BlockRingSpec {
            blocks,
            names,
            block_of,
            ranges,
            index,
        })
    }

    /// Standard (singly) graded ring on the given variables.
    pub fn single_block<S: Into<String>>(names: Vec<S>) -> Result<Self> {
        Self::new(vec![names])
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn block_range(&self, block: usize) -> Range<usize> {
        self.ranges[block].clone()
    }

    pub fn block_of(&self, var: Var) -> usize {
        self.block_of[var]
    }

    pub fn var_name(&self, var: Var) -> &str {
        &self.names[var]
    }

    pub fn var_names(&self) -> &[String] {
        &self.names
    }

    pub fn var(&self, name: &str) -> Result<Var> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.num_vars())
    }

    pub fn variable(&self, var: Var) -> Monomial {
        let mut exps = vec![0; self.num_vars()];
        exps[var] = 1;
        Monomial::from_exponents(exps)
    }

    /// Builds a monomial from `(name, exponent)` factors; repeated names add up.
    pub fn monomial(&self, factors: &[(&str, u32)]) -> Result<Monomial> {
        let mut exps = vec![0u32; self.num_vars()];
        for &(name, e) in factors {
            let v = self.var(name)?;
            exps[v] = exps[v].checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial::from_exponents(exps))
    }

    pub fn multidegree_of(&self, m: &Monomial) -> Result<MultiDegree> {
        if m.num_vars() != self.num_vars() {
            return Err(Error::Validation(format!(
                "monomial has {} variables but the ring has {}",
                m.num_vars(),
                self.num_vars()
            )));
        }
        let exps = m.exponents();
        Ok(MultiDegree(
            self.ranges
                .iter()
                .map(|r| exps[r.clone()].iter().sum())
                .collect(),
        ))
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (v, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[v].clone()),
                _ => parts.push(format!("{}^{}", self.names[v], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Blockwise exponent sum of `m`.
pub fn multidegree_of(m: &Monomial, spec: &BlockRingSpec) -> Result<MultiDegree> {
    spec.multidegree_of(m)
}

/// Number of monomials of multidegree `n` in the free ring:
/// `prod_i C(n_i + b_i - 1, b_i - 1)`.
pub fn count_free_monomials(spec: &BlockRingSpec, n: &MultiDegree) -> BigUint {
    let mut total = BigUint::one();
    for (i, &ni) in n.entries().iter().enumerate() {
        let b = spec.ranges[i].len() as u64;
        total *= binomial(u64::from(ni) + b - 1, b - 1);
    }
    total
}

/// `C(n, k)` in arbitrary precision.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}
