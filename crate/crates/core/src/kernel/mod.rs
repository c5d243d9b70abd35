//! Monomials and monomial ideals over a block-graded polynomial ring.
//!
//! Coefficients live in an abstract field and are never stored: lengths of
//! graded pieces are counts of standard monomials.

mod enumerate;
mod ideal;
mod monomial;
mod ring;

pub use enumerate::{compositions, monomials_of_degree, monomials_of_multidegree};
pub use ideal::{irrelevant_products, minimalize, MonomialIdeal};
pub use monomial::Monomial;
pub use ring::{binomial, count_free_monomials, multidegree_of, BlockRingSpec, MultiDegree, Var};
