use std::collections::BTreeSet;

use super::monomial::Monomial;
use super::ring::BlockRingSpec;
use crate::error::{Error, Result};

/// Monomial ideal stored by its minimal generators.
///
/// The generator list is sorted (degree, then reverse-lex) and forms an
/// antichain under divisibility, so structural equality is ideal equality.
/// The zero ideal has no generators; the unit ideal is generated by `1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

/// Reduces `gens` to the minimal generators of the ideal they generate.
pub fn minimalize<I>(nvars: usize, gens: I) -> MonomialIdeal
where
    I: IntoIterator<Item = Monomial>,
{
    let mut all: Vec<Monomial> = gens.into_iter().collect();
    all.sort();
    all.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
    for g in all {
        debug_assert_eq!(g.num_vars(), nvars);
        // `all` is sorted by degree, so a divisor of g is already in `kept`.
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    MonomialIdeal { nvars, gens: kept }
}

impl MonomialIdeal {
    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    pub fn new<I>(nvars: usize, gens: I) -> Self
    where
        I: IntoIterator<Item = Monomial>,
    {
        minimalize(nvars, gens)
    }

    /// Ideal generated by the given variables.
    pub fn from_vars(spec: &BlockRingSpec, vars: &[usize]) -> Self {
        minimalize(spec.num_vars(), vars.iter().map(|&v| spec.variable(v)))
    }

    pub fn num_vars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn max_generator_degree(&self) -> u64 {
        self.gens.iter().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn lcm_of_generators(&self) -> Monomial {
        self.gens
            .iter()
            .fold(Monomial::one(self.nvars), |acc, g| acc.lcm(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        minimalize(
            self.nvars,
            self.gens.iter().chain(&other.gens).cloned(),
        )
    }

    pub fn add_generators<I>(&self, extra: I) -> MonomialIdeal
    where
        I: IntoIterator<Item = Monomial>,
    {
        minimalize(self.nvars, self.gens.iter().cloned().chain(extra))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        let mut out = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.try_mul(b)?);
            }
        }
        Ok(minimalize(self.nvars, out))
    }

    pub fn power(&self, k: u32) -> Result<MonomialIdeal> {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for _ in 0..k {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut out = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.lcm(b));
            }
        }
        minimalize(self.nvars, out)
    }

    /// Intersection of a non-empty family; the empty family gives the unit ideal.
    pub fn intersect_all<'a, I>(nvars: usize, ideals: I) -> MonomialIdeal
    where
        I: IntoIterator<Item = &'a MonomialIdeal>,
    {
        ideals
            .into_iter()
            .fold(MonomialIdeal::unit(nvars), |acc, i| acc.intersect(i))
    }

    pub fn colon_by_monomial(&self, m: &Monomial) -> MonomialIdeal {
        minimalize(self.nvars, self.gens.iter().map(|g| g.colon(m)))
    }

    /// `self : m^∞`.
    pub fn saturate_by_monomial(&self, m: &Monomial) -> MonomialIdeal {
        minimalize(self.nvars, self.gens.iter().map(|g| g.strip_support_of(m)))
    }

    /// `self : q^∞`, the intersection of the saturations by the generators of `q`.
    pub fn saturate_by_ideal(&self, q: &MonomialIdeal) -> Result<MonomialIdeal> {
        if q.is_zero() {
            return Err(Error::Validation(
                "cannot saturate by the zero ideal".into(),
            ));
        }
        let parts: Vec<MonomialIdeal> = q
            .gens
            .iter()
            .map(|g| self.saturate_by_monomial(g))
            .collect();
        Ok(MonomialIdeal::intersect_all(self.nvars, &parts))
    }

    pub fn radical(&self) -> MonomialIdeal {
        minimalize(self.nvars, self.gens.iter().map(Monomial::squarefree))
    }

    /// `m ∈ √self`.
    pub fn radical_contains(&self, m: &Monomial) -> bool {
        let sq = m.squarefree();
        self.gens.iter().any(|g| g.squarefree().divides(&sq))
    }

    pub fn variables_in_support(&self) -> BTreeSet<usize> {
        self.gens.iter().flat_map(|g| g.support()).collect()
    }

    pub fn format(&self, spec: &BlockRingSpec) -> String {
        if self.is_zero() {
            return "(0)".to_string();
        }
        let parts: Vec<String> = self.gens.iter().map(|g| spec.format_monomial(g)).collect();
        format!("({})", parts.join(", "))
    }
}

/// All products of one variable from each block; its saturation agrees with
/// saturation by the ideal of elements of positive degree in every block.
pub fn irrelevant_products(spec: &BlockRingSpec) -> MonomialIdeal {
    let mut gens = vec![spec.one()];
    for b in 0..spec.num_blocks() {
        let mut next = Vec::with_capacity(gens.len() * spec.block_range(b).len());
        for g in &gens {
            for v in spec.block_range(b) {
                let mut e = g.exponents().to_vec();
                e[v] += 1;
                next.push(Monomial::from_exponents(e));
            }
        }
        gens = next;
    }
    minimalize(spec.num_vars(), gens)
}
