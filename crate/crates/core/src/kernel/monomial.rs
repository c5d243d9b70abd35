use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Dense exponent vector over a fixed number of variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(v, _)| v)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Monomial { exps })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.min(b))
                .collect(),
        }
    }

    /// `self / gcd(self, m)`: the generator of `(self) : m`.
    pub fn colon(&self, m: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&m.exps)
                .map(|(a, b)| a.saturating_sub(*b))
                .collect(),
        }
    }

    /// `self / other`, assuming `other | self`.
    pub fn div_exact(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        self.colon(other)
    }

    pub fn squarefree(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| e.min(1)).collect(),
        }
    }

    /// Sets the exponents of every variable in `supp(m)` to zero.
    pub fn strip_support_of(&self, m: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&m.exps)
                .map(|(&a, &b)| if b > 0 { 0 } else { a })
                .collect(),
        }
    }
}

/// Degree first, then exponent vector in reverse-lex order; used to keep
/// generator lists canonical.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn arithmetic() {
        assert!(m(&[1, 0]).divides(&m(&[2, 1])));
        assert!(!m(&[1, 2]).divides(&m(&[2, 1])));
        assert_eq!(m(&[1, 2]).lcm(&m(&[2, 1])), m(&[2, 2]));
        assert_eq!(m(&[1, 2]).gcd(&m(&[2, 1])), m(&[1, 1]));
        assert_eq!(m(&[2, 1]).colon(&m(&[0, 1])), m(&[2, 0]));
        assert_eq!(m(&[2, 1]).try_mul(&m(&[1, 1])).unwrap(), m(&[3, 2]));
        assert_eq!(m(&[3, 1]).squarefree(), m(&[1, 1]));
        assert_eq!(m(&[3, 1, 2]).strip_support_of(&m(&[0, 4, 1])), m(&[3, 0, 0]));
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(
            m(&[u32::MAX]).try_mul(&m(&[1])),
            Err(Error::ExponentOverflow)
        );
    }
}
